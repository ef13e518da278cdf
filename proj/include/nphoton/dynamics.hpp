#pragma once

#include "nphoton/fockspace.hpp"
#include "nphoton/linalg.hpp"
#include "nphoton/models.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace nphoton {

class StateVector {
  public:
    // Requires ‖amplitudes‖ = 1 within 1e-12.
    StateVector(HilbertLayout layout, std::vector<cplx> amplitudes);
    static StateVector normalized(HilbertLayout layout, std::vector<cplx> amplitudes);
    // No norm check; used for propagated states whose drift is bounded separately.
    static StateVector unchecked(HilbertLayout layout, std::vector<cplx> amplitudes);

    const HilbertLayout& layout() const noexcept { return layout_; }
    const std::vector<cplx>& amplitudes() const noexcept { return amps_; }
    double norm() const;

  private:
    StateVector() = default;
    HilbertLayout layout_;
    std::vector<cplx> amps_;
};

StateVector basis_state(const HilbertLayout& layout, std::span<const std::size_t> digits);
StateVector product_state(const StateVector& a, const StateVector& b);
// Normalized Σ c_i |ψ_i⟩.
StateVector superpose(const std::vector<std::pair<cplx, StateVector>>& terms);
StateVector coherent_state(cplx alpha, std::size_t trunc);

cplx expectation(const SparseOperator& op, const StateVector& psi);
cplx overlap(const StateVector& a, const StateVector& b);

struct DensityMatrix {
    HilbertLayout layout;
    CMatrix matrix;

    static DensityMatrix pure(const StateVector& psi);
};

DensityMatrix partial_trace(const StateVector& psi, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
// Uhlmann fidelity (Tr√(√ρ σ √ρ))².
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

struct EvolveOptions {
    std::size_t krylov_dim = 30;
    double tol = 1e-10;            // local error per substep
    std::size_t spectral_limit = 64;
    bool split_blocks = true;
};

// e^{-iHt} on connected components: exact phases for 1×1 blocks, spectral decomposition up to
// spectral_limit, Krylov (Lanczos) propagation with adaptive substeps beyond.
class Propagator {
  public:
    explicit Propagator(const SparseOperator& h, EvolveOptions opt = {});
    ~Propagator();
    Propagator(Propagator&&) noexcept;
    Propagator& operator=(Propagator&&) noexcept;

    StateVector evolve(const StateVector& psi0, double t) const;

  private:
    struct Block;
    HilbertLayout layout_;
    EvolveOptions opt_;
    std::vector<std::unique_ptr<Block>> blocks_;
};

StateVector evolve(const SparseOperator& h, const StateVector& psi0, double t, const EvolveOptions& opt = {});

enum class DynamicsPreset { bell, plus_coherent_1, plus_coherent_2 };
std::string to_string(DynamicsPreset p);

struct FidelitySample {
    double t_chi = 0.0;
    double fid_qubit = 0.0;
    double fid_osc = 0.0;
};

// Exact nR vs RWA dispersive evolution from a preset initial state; times in units of 1/χ_n.
StateVector preset_state(const SystemSpec& spec, DynamicsPreset preset);
std::vector<FidelitySample> dispersive_fidelity_run(const SystemSpec& spec, DynamicsPreset preset,
                                                    std::span<const double> t_chi,
                                                    const EvolveOptions& opt = {});

}  // namespace nphoton
