#include <doctest.h>

#include "nphoton/dynamics.hpp"
#include "nphoton/errors.hpp"

#include <cmath>
#include <random>

using namespace nphoton;

namespace {

SparseOperator random_hermitian(std::size_t n, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0), p(0.0, 1.0);
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back({i, i, u(rng) * 2.0});
        for (std::size_t j = i + 1; j < n; ++j)
            if (p(rng) < density) {
                const cplx v(u(rng), u(rng));
                t.push_back({i, j, v});
                t.push_back({j, i, std::conj(v)});
            }
    }
    return SparseOperator(HilbertLayout::generic(n), std::move(t)).certified();
}

StateVector random_state(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    for (auto& x : v) x = cplx(g(rng), g(rng));
    return StateVector::normalized(HilbertLayout::generic(n), std::move(v));
}

// e^{-iHt}ψ through a full dense eigendecomposition.
std::vector<cplx> reference_evolve(const SparseOperator& h, const StateVector& psi, double t) {
    const auto ed = eigh(to_dense(h), true);
    std::vector<cplx> out(h.dim(), 0.0);
    for (std::size_t k = 0; k < ed.values.size(); ++k) {
        cplx c = 0.0;
        for (std::size_t i = 0; i < h.dim(); ++i) c += std::conj(ed.vectors[k][i]) * psi.amplitudes()[i];
        c *= std::exp(cplx(0.0, -ed.values[k] * t));
        for (std::size_t i = 0; i < h.dim(); ++i) out[i] += c * ed.vectors[k][i];
    }
    return out;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("state construction") {
    CHECK_THROWS_AS(StateVector(HilbertLayout::qubit(), {1.0, 1.0}), Error);
    const auto s = StateVector::normalized(HilbertLayout::qubit(), {1.0, 1.0});
    CHECK(s.norm() == doctest::Approx(1.0));
    HilbertLayout l({{SubsystemKind::qubit, 2}, {SubsystemKind::oscillator, 5}});
    const std::size_t d[] = {1, 3};
    CHECK(basis_state(l, d).amplitudes()[8] == cplx(1.0));
}

TEST_CASE("coherent state") {
    const cplx alpha(0.8, -0.6);
    const auto c = coherent_state(alpha, 30);
    CHECK(c.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(expectation(destroy(30), c) - alpha) < 1e-9);
    CHECK(expectation(number(30), c).real() == doctest::Approx(1.0).epsilon(1e-9));
    try {
        coherent_state(3.0, 20);
        FAIL("expected truncation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::truncation_insufficient);
    }
}

TEST_CASE("partial trace and fidelity") {
    const auto plus = StateVector::normalized(HilbertLayout::qubit(), {1.0, 1.0});
    const auto prod = product_state(plus, coherent_state(1.0, 20));
    const std::size_t keep_q[] = {0}, keep_o[] = {1};
    const auto rq = partial_trace(prod, keep_q);
    CHECK(std::abs(rq.matrix(0, 1) - cplx(0.5)) < 1e-12);
    CHECK(std::abs(trace(partial_trace(prod, keep_o).matrix) - 1.0) < 1e-12);

    HilbertLayout l({{SubsystemKind::qubit, 2}, {SubsystemKind::oscillator, 4}});
    const std::size_t e0[] = {0, 0}, g2[] = {1, 2};
    const auto bell = superpose({{1.0, basis_state(l, e0)}, {1.0, basis_state(l, g2)}});
    const auto mixed = partial_trace(bell, keep_q);
    CHECK(std::abs(mixed.matrix(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(mixed.matrix(0, 1)) < 1e-15);
    // density-matrix route agrees with the state-vector route
    CHECK(max_abs_diff(partial_trace(DensityMatrix::pure(bell), keep_q).matrix, mixed.matrix) < 1e-15);

    CHECK(fidelity(rq, rq) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(mixed, rq) == doctest::Approx(0.5).epsilon(1e-12));
    const std::size_t e[] = {0}, g[] = {1};
    const auto pe = DensityMatrix::pure(basis_state(HilbertLayout::qubit(), e));
    const auto pg = DensityMatrix::pure(basis_state(HilbertLayout::qubit(), g));
    CHECK(fidelity(pe, pg) == doctest::Approx(0.0));
    // commuting states: (Σ√(p q))²
    DensityMatrix a{HilbertLayout::qubit(), CMatrix(2, 2)}, b{HilbertLayout::qubit(), CMatrix(2, 2)};
    a.matrix(0, 0) = 0.3, a.matrix(1, 1) = 0.7, b.matrix(0, 0) = 0.6, b.matrix(1, 1) = 0.4;
    const double expect = std::pow(std::sqrt(0.18) + std::sqrt(0.28), 2);
    CHECK(fidelity(a, b) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("propagation matches dense exponentiation on every path") {
    const auto h = random_hermitian(150, 0.03, 5);
    const auto psi = random_state(150, 9);
    const auto ref = reference_evolve(h, psi, 3.7);
    for (std::size_t limit : {0u, 64u, 1000u})
        for (bool split : {true, false}) {
            EvolveOptions opt;
            opt.spectral_limit = limit;
            opt.split_blocks = split;
            const auto out = Propagator(h, opt).evolve(psi, 3.7);
            CHECK(max_diff(out.amplitudes(), ref) < 1e-8);
            CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-10));
        }
}

TEST_CASE("Krylov propagation is reversible over long times") {
    const auto h = random_hermitian(200, 0.02, 2);
    const auto psi = random_state(200, 4);
    EvolveOptions opt;
    opt.spectral_limit = 0;
    const Propagator p(h, opt);
    const auto fwd = p.evolve(psi, 40.0);
    const auto back = p.evolve(StateVector::normalized(fwd.layout(), fwd.amplitudes()), -40.0);
    CHECK(max_diff(back.amplitudes(), psi.amplitudes()) < 1e-7);
}

TEST_CASE("propagation of an eigenstate is a phase") {
    std::vector<double> d{0.5, -1.0, 2.0};
    const auto h = diagonal_operator(HilbertLayout::generic(3), d).certified();
    const std::size_t i[] = {1};
    const auto out = evolve(h, basis_state(HilbertLayout::generic(3), i), 2.0);
    CHECK(std::abs(out.amplitudes()[1] - std::exp(cplx(0.0, 2.0))) < 1e-15);
}

TEST_CASE("propagator rejects non-Hermitian generators") {
    SparseOperator nh(HilbertLayout::generic(2), {{0, 1, 1.0}});
    CHECK_THROWS_AS(Propagator{nh}, Error);
}

TEST_CASE("Bell preset stays close to the dispersive evolution") {
    const auto s = SystemSpec::single(8.0, 2, 0.02, 40);
    const double ts[] = {0.0, 1.0, 2.0};
    for (const auto& f : dispersive_fidelity_run(s, DynamicsPreset::bell, ts)) {
        CHECK(f.fid_qubit > 0.99);
        CHECK(f.fid_osc > 0.99);
    }
    const double t0[] = {0.0};
    const auto f0 = dispersive_fidelity_run(s, DynamicsPreset::plus_coherent_1, t0);
    CHECK(f0[0].fid_qubit == doctest::Approx(1.0).epsilon(1e-12));
}
