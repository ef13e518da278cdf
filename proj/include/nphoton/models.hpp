#pragma once

#include "nphoton/fockspace.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace nphoton {

struct QubitSpec {
    double omega_q = 1.0;
    int n = 1;
    double g = 0.0;
};

struct OscillatorSpec {
    double omega = 1.0;
    std::size_t trunc = 2;
};

enum class StabilizerForm { number_power, full_position_power };

struct StabilizerSpec {
    double eta = 0.02;
    StabilizerForm form = StabilizerForm::number_power;
    int m = 0;  // 0 selects floor(n/2)+1 for number_power

    int order(int n) const;
};

enum class Topology { single, multiqubit, multimode };

struct Coupling {
    std::size_t qubit = 0;
    std::size_t oscillator = 0;
    int n = 1;
    double g = 0.0;
};

struct SystemSpec {
    std::vector<QubitSpec> qubits;
    std::vector<OscillatorSpec> oscillators;
    Topology topology = Topology::single;
    std::vector<Coupling> couplings;  // multimode only
    std::optional<StabilizerSpec> stabilizer;

    static SystemSpec single(double omega_q, int n, double g, std::size_t trunc, double omega = 1.0);

    // Throws config errors on inconsistent lists, indices, or out-of-domain numbers.
    void validate() const;
    HilbertLayout layout() const;

    // Resolved qubit-oscillator edges: qubits' (n, g) for single/multiqubit, couplings for multimode.
    std::vector<Coupling> edges() const;
    double delta(const Coupling& c) const;  // ω_q − n ω_k
    double sigma(const Coupling& c) const;  // ω_q + n ω_k
};

enum class Regime { rwa, nonrwa };

struct DispersiveOptions {
    Regime regime = Regime::rwa;
    bool include_squeezing = false;
    bool cross_k0 = true;         // C⁻_{n,0} term in qubit-qubit cross couplings
    bool constant_offset = true;  // C⁻_{n,0} term in single-qubit Kerr polynomials
};

SparseOperator build_nR(const SystemSpec& spec);
SparseOperator build_nJC(const SystemSpec& spec);
// ω N + ω_q/2 σz + g σx (a+a†)^n + η g (a+a†)^m, m even and m > n.
SparseOperator build_full_nR(const SystemSpec& spec);

SparseOperator build_dispersive(const SystemSpec& spec, Regime regime, bool include_squeezing);
SparseOperator build_dispersive(const SystemSpec& spec, const DispersiveOptions& opt);

SparseOperator build_nDicke(const SystemSpec& spec, bool rwa);
SparseOperator build_multiqubit_dispersive(const SystemSpec& spec, Regime regime, bool cross_k0);
SparseOperator build_multiqubit_dispersive(const SystemSpec& spec, const DispersiveOptions& opt);

// 4×4 block in the joint qubit basis {ee, eg, ge, gg} at oscillator Fock index j.
using Block4 = std::array<std::array<double, 4>, 4>;
Block4 two_qubit_block(std::size_t j, const SystemSpec& spec, const DispersiveOptions& opt = {});

enum class MultimodeVariant { mmr, mmjc, dispersive_rwa, dispersive_nonrwa };
SparseOperator build_multimode(const SystemSpec& spec, MultimodeVariant variant,
                               const DispersiveOptions& opt = {});

// Ĉ = N̂_total + Σ_l n_l |e⟩⟨e|_l, conserved by the RWA models.
SparseOperator excitation_number(const SystemSpec& spec);

}  // namespace nphoton
