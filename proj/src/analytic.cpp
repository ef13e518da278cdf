#include "nphoton/analytic.hpp"

#include "nphoton/combinatorics.hpp"
#include "nphoton/errors.hpp"

#include <cmath>
#include <limits>

namespace nphoton {

DispersiveParams DispersiveParams::make(int n, double g, double omega_q, double omega_o) {
    require(n >= 1, ErrorKind::domain, "order n must be >= 1");
    DispersiveParams p;
    p.n = n;
    p.g = g;
    p.omega_q = omega_q;
    p.omega_o = omega_o;
    p.delta = omega_q - n * omega_o;
    p.sigma = omega_q + n * omega_o;
    const double g2 = g * g;
    p.chi = g2 / p.delta;
    p.xi = g2 / p.sigma;
    p.lambda = g / p.delta;
    p.lambda_bar = g / p.sigma;
    p.zeta = g * p.lambda_bar / (2.0 * n * omega_o);
    return p;
}

DispersiveParams DispersiveParams::from_spec(const SystemSpec& spec, std::size_t edge) {
    const auto edges = spec.edges();
    require(edge < edges.size(), ErrorKind::usage, "edge index out of range");
    const auto& c = edges[edge];
    return make(c.n, c.g, spec.qubits[c.qubit].omega_q, spec.oscillators[c.oscillator].omega);
}

namespace {

void check_resonance(const DispersiveParams& p, Regime regime) {
    const double scale = 1.0 + std::abs(p.omega_q);
    require(std::abs(p.delta) > 1e-12 * scale, ErrorKind::resonance, "Δ_n = 0: dispersive regime undefined");
    if (regime == Regime::nonrwa)
        require(std::abs(p.sigma) > 1e-12 * scale, ErrorKind::resonance, "Σ_n = 0: non-RWA shifts undefined");
}

// Σ_{k>=k0} c_k x^k, accumulated in ascending k.
double poly_at(const std::vector<BigInt>& c, double x, std::size_t k0) {
    double s = 0.0, xk = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k, xk *= x)
        if (k >= k0) s += c[k].convert_to<double>() * xk;
    return s;
}

}  // namespace

double dispersive_level(const DispersiveParams& p, QubitState q, std::size_t j, Regime regime, bool constant_offset) {
    check_resonance(p, regime);
    const double g2 = p.g * p.g;
    const double chi = g2 / p.delta;
    const double xi = regime == Regime::nonrwa ? g2 / p.sigma : 0.0;
    const double cp = (chi + xi) / 2.0;
    const double cm = (chi - xi) / 2.0;
    const auto poly = commutator_poly(p.n);
    const double jd = static_cast<double>(j);
    const double s = q == QubitState::e ? 1.0 : -1.0;
    const double bare = p.omega_o * jd + (p.omega_q / 2.0) * s;
    const double shift = cp * (s * poly_at(poly.cplus, jd, 0)) + cm * poly_at(poly.cminus, jd, constant_offset ? 0 : 1);
    return bare + shift;
}

std::pair<double, double> njc_doublet(const DispersiveParams& p, std::size_t l) {
    double ratio = 1.0;
    for (int i = 1; i <= p.n; ++i) ratio *= static_cast<double>(l) + i;
    const double centre = (static_cast<double>(l) + p.n / 2.0) * p.omega_o;
    const double half = std::sqrt(p.g * p.g * ratio + p.delta * p.delta / 4.0);
    return {centre + half, centre - half};
}

double critical_photon_number(int n, double g, double delta) {
    require(n >= 1, ErrorKind::domain, "order n must be >= 1");
    require(g >= 0.0, ErrorKind::domain, "coupling must be non-negative");
    if (g == 0.0) return std::numeric_limits<double>::infinity();
    if (n == 1) return delta * delta / (4.0 * g * g);
    return std::pow(std::abs(delta) / g, 2.0 / n);
}

double coherent_number_moment(int k, double alpha_abs, MomentConvention conv) {
    require(k >= 0, ErrorKind::domain, "moment order must be >= 0");
    require(alpha_abs >= 0.0, ErrorKind::domain, "|alpha| must be >= 0");
    const auto& t = coeff_table(k);
    const double base = conv == MomentConvention::coherent_exact ? alpha_abs * alpha_abs : alpha_abs;
    double s = 0.0, m = 1.0;
    for (int l = 0; l <= k; ++l, m *= base) s += t.s2(k, l).convert_to<double>() * m;
    return s;
}

double dressed_qubit_frequency(const DispersiveParams& p, double alpha_abs, MomentConvention conv, Regime regime) {
    check_resonance(p, regime);
    const double c = regime == Regime::rwa ? p.chi : p.chi + p.xi;
    const auto poly = commutator_poly(p.n);
    double s = 0.0;
    for (int k = 0; k <= p.n; ++k)
        s += poly.cplus[k].convert_to<double>() * coherent_number_moment(k, alpha_abs, conv);
    return p.omega_q + c * s;
}

TwoQubitParams effective_two_qubit_params(const SystemSpec& spec, double alpha_abs, MomentConvention conv,
                                          bool cross_k0) {
    spec.validate();
    require(spec.topology == Topology::multiqubit && spec.qubits.size() == 2, ErrorKind::usage,
            "effective two-qubit parameters need two qubits sharing one oscillator");
    const auto p1 = DispersiveParams::from_spec(spec, 0);
    const auto p2 = DispersiveParams::from_spec(spec, 1);
    require(p1.n == p2.n, ErrorKind::usage, "qubits must share the interaction order");
    TwoQubitParams out;
    out.omega_bar_1 = dressed_qubit_frequency(p1, alpha_abs, conv);
    out.omega_bar_2 = dressed_qubit_frequency(p2, alpha_abs, conv);
    const double chit = p1.g * p2.g * (1.0 / p1.delta + 1.0 / p2.delta);
    const auto poly = commutator_poly(p1.n);
    double s = 0.0;
    for (int k = cross_k0 ? 0 : 1; k < p1.n; ++k)
        s += poly.cminus[k].convert_to<double>() * coherent_number_moment(k, alpha_abs, conv);
    out.g_bar = chit / 2.0 * s;
    return out;
}

}  // namespace nphoton
