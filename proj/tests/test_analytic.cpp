#include <doctest.h>

#include "nphoton/analytic.hpp"
#include "nphoton/dynamics.hpp"
#include "nphoton/errors.hpp"
#include "nphoton/linalg.hpp"

#include <cmath>

using namespace nphoton;

namespace {

SystemSpec two_qubit(double wq1, double wq2, int n, double g1, double g2, std::size_t nt) {
    SystemSpec s;
    s.qubits = {{wq1, n, g1}, {wq2, n, g2}};
    s.oscillators = {{1.0, nt}};
    s.topology = Topology::multiqubit;
    return s;
}

double poisson(double nbar, std::size_t j) {
    return std::exp(-nbar + j * std::log(nbar) - std::lgamma(j + 1.0));
}

}  // namespace

TEST_CASE("parameter bundle") {
    const auto p = DispersiveParams::make(2, 0.02, 8.0);
    CHECK(p.delta == 6.0);
    CHECK(p.sigma == 10.0);
    CHECK(p.chi == doctest::Approx(0.0004 / 6.0));
    CHECK(p.xi == doctest::Approx(0.0004 / 10.0));
    CHECK(p.lambda == doctest::Approx(0.02 / 6.0));
}

TEST_CASE("one-photon levels reduce to the textbook dispersive shifts") {
    const auto p = DispersiveParams::make(1, 0.05, 2.0);
    for (std::size_t j = 0; j < 10; ++j) {
        CHECK(dispersive_level(p, QubitState::e, j, Regime::rwa) == doctest::Approx(j + 1.0 + p.chi * (j + 1.0)));
        CHECK(dispersive_level(p, QubitState::g, j, Regime::rwa) == doctest::Approx(j - 1.0 - p.chi * j));
    }
}

TEST_CASE("constant offset toggles C⁻_{n,0}") {
    const auto p = DispersiveParams::make(3, 0.01, 5.0);
    const double d = dispersive_level(p, QubitState::g, 4, Regime::nonrwa, true) -
                     dispersive_level(p, QubitState::g, 4, Regime::nonrwa, false);
    CHECK(d == doctest::Approx((p.chi - p.xi) / 2.0 * 6.0));
}

TEST_CASE("njc doublet equals the exact 2x2 eigenvalues") {
    for (int n = 1; n <= 4; ++n)
        for (std::size_t l : {0u, 3u, 17u}) {
            const auto p = DispersiveParams::make(n, 0.13, n + 0.7);
            double amp = 1.0;
            for (int i = 1; i <= n; ++i) amp *= std::sqrt(static_cast<double>(l + i));
            CMatrix h(2, 2);
            h(0, 0) = l + p.omega_q / 2.0;
            h(1, 1) = (l + n) - p.omega_q / 2.0;
            h(0, 1) = h(1, 0) = p.g * amp;
            const auto ev = eigh(h, false);
            const auto [ep, em] = njc_doublet(p, l);
            CHECK(ep == doctest::Approx(ev.values[1]).epsilon(1e-13));
            CHECK(em == doctest::Approx(ev.values[0]).epsilon(1e-13));
        }
}

TEST_CASE("doublet expansion agrees with the rwa dispersive level to second order") {
    const int n = 2;
    const auto p = DispersiveParams::make(n, 0.002, 8.0);
    for (std::size_t l = 0; l < 5; ++l) {
        const auto [ep, em] = njc_doublet(p, l);
        (void)em;
        // Δ > 0: the upper branch is the dressed |e,l⟩
        const double err = std::abs(ep - dispersive_level(p, QubitState::e, l, Regime::rwa));
        const double scale = std::pow(p.lambda, 4) * std::abs(p.delta) * std::pow(l + n + 1.0, 2 * n);
        CHECK(err < 10.0 * scale + 1e-14);
    }
}

TEST_CASE("critical photon number") {
    CHECK(critical_photon_number(1, 0.1, 2.0) == doctest::Approx(100.0));
    CHECK(critical_photon_number(2, 0.02, 6.0) == doctest::Approx(300.0));
    CHECK(critical_photon_number(4, 0.01, 1.0) == doctest::Approx(10.0));
    CHECK(std::isinf(critical_photon_number(3, 0.0, 1.0)));
    for (double r : {2.0, 10.0, 300.0})
        for (int n = 2; n < 6; ++n)
            CHECK(critical_photon_number(n + 1, 1.0, r) < critical_photon_number(n, 1.0, r));
}

TEST_CASE("coherent number moments match the truncated coherent state") {
    const double a = 1.3;
    const auto psi = coherent_state(a, 40);
    const auto nop = number(40);
    for (int k = 0; k <= 4; ++k) {
        const double num = expectation(op_pow(nop, k), psi).real();
        CHECK(coherent_number_moment(k, a, MomentConvention::coherent_exact) == doctest::Approx(num).epsilon(1e-9));
    }
    // paper_literal uses |α|^l in place of |α|^{2l}
    CHECK(coherent_number_moment(2, 2.0, MomentConvention::paper_literal) == doctest::Approx(2.0 + 4.0));
}

TEST_CASE("dressed frequency at zero amplitude is the |e,0>-|g,0> splitting") {
    for (int n = 1; n <= 3; ++n)
        for (Regime r : {Regime::rwa, Regime::nonrwa}) {
            const auto p = DispersiveParams::make(n, 0.02, n + 1.0);
            const double split = dispersive_level(p, QubitState::e, 0, r) - dispersive_level(p, QubitState::g, 0, r);
            CHECK(dressed_qubit_frequency(p, 0.0, MomentConvention::coherent_exact, r) == doctest::Approx(split));
        }
}

TEST_CASE("dressed frequency is the Poisson average of level splittings") {
    const auto p = DispersiveParams::make(2, 0.03, 3.0);
    const double a = 1.1;
    double avg = 0.0;
    for (std::size_t j = 0; j < 60; ++j)
        avg += poisson(a * a, j) *
               (dispersive_level(p, QubitState::e, j, Regime::rwa) - dispersive_level(p, QubitState::g, j, Regime::rwa));
    CHECK(dressed_qubit_frequency(p, a) == doctest::Approx(avg).epsilon(1e-12));
}

TEST_CASE("effective exchange coupling is the Poisson average of the block element") {
    const auto s = two_qubit(3.0, 3.2, 2, 0.02, 0.03, 60);
    for (bool k0 : {true, false}) {
        DispersiveOptions opt;
        opt.cross_k0 = k0;
        const double a = 0.9;
        double avg = 0.0;
        for (std::size_t j = 0; j < 50; ++j) avg += poisson(a * a, j) * two_qubit_block(j, s, opt)[1][2];
        const auto t = effective_two_qubit_params(s, a, MomentConvention::coherent_exact, k0);
        CHECK(t.g_bar == doctest::Approx(avg).epsilon(1e-12));
    }
    const auto t0 = effective_two_qubit_params(s, 0.0);
    CHECK(t0.g_bar == doctest::Approx(two_qubit_block(0, s)[1][2]));
}

TEST_CASE("analytic domain errors") {
    const auto p = DispersiveParams::make(2, 0.02, 2.0);
    CHECK_THROWS_AS(dispersive_level(p, QubitState::e, 0, Regime::rwa), Error);
    CHECK_THROWS_AS(coherent_number_moment(-1, 1.0, MomentConvention::coherent_exact), Error);
}
