#pragma once

#include "nphoton/models.hpp"

#include <cstddef>
#include <utility>

namespace nphoton {

struct DispersiveParams {
    int n = 1;
    double g = 0.0;
    double omega_q = 1.0;
    double omega_o = 1.0;
    double delta = 0.0;       // Δ_n = ω_q − n ω_o
    double sigma = 0.0;       // Σ_n = ω_q + n ω_o
    double chi = 0.0;         // g²/Δ_n
    double xi = 0.0;          // g²/Σ_n
    double lambda = 0.0;      // g/Δ_n
    double lambda_bar = 0.0;  // g/Σ_n
    double zeta = 0.0;        // g λ̄_n / (2 n ω_o)

    static DispersiveParams make(int n, double g, double omega_q, double omega_o = 1.0);
    static DispersiveParams from_spec(const SystemSpec& spec, std::size_t edge = 0);
};

enum class QubitState { e, g };

// E = ω_o j ± ω_q/2 ± (χ+ξ)/2 ΣC⁺j^k + (χ−ξ)/2 ΣC⁻j^k, with ξ = 0 for rwa.
double dispersive_level(const DispersiveParams& p, QubitState q, std::size_t j, Regime regime,
                        bool constant_offset = true);

// Exact nJC doublet on {|e,l⟩, |g,l+n⟩}: (E_plus, E_minus).
std::pair<double, double> njc_doublet(const DispersiveParams& p, std::size_t l);

// Δ²/(4g²) for n = 1, (|Δ|/g)^{2/n} otherwise; +∞ when g = 0.
double critical_photon_number(int n, double g, double delta);

enum class MomentConvention { paper_literal, coherent_exact };

// ⟨(a†a)^k⟩ in a coherent state built from normal-ordered moments.
double coherent_number_moment(int k, double alpha_abs, MomentConvention conv);

double dressed_qubit_frequency(const DispersiveParams& p, double alpha_abs,
                               MomentConvention conv = MomentConvention::coherent_exact,
                               Regime regime = Regime::rwa);

struct TwoQubitParams {
    double omega_bar_1 = 0.0;
    double omega_bar_2 = 0.0;
    double g_bar = 0.0;
};

TwoQubitParams effective_two_qubit_params(const SystemSpec& spec, double alpha_abs,
                                          MomentConvention conv = MomentConvention::coherent_exact,
                                          bool cross_k0 = true);

}  // namespace nphoton
