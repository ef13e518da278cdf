// Acceptance criteria 1-8: one PASS/FAIL line each, details indented below.
#include "nphoton/analytic.hpp"
#include "nphoton/commands.hpp"
#include "nphoton/combinatorics.hpp"
#include "nphoton/dynamics.hpp"
#include "nphoton/eigensolve.hpp"
#include "nphoton/models.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace nphoton;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.check(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(dt < budget_s, fmt("runtime %.2f s < %.0f s", dt, budget_s));
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, title);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

double poly(const std::vector<BigInt>& c, double j) {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * j + c[k].convert_to<double>();
    return s;
}

// Largest |A_ij − B_ij| / max(1, |B_ij|) over rows and columns whose Fock index is below nt − guard.
double guarded_rel_diff(const SparseOperator& a, const SparseOperator& b, std::size_t nt, std::size_t guard) {
    double worst = 0.0;
    const std::size_t dim = a.dim();
    for (std::size_t r = 0; r < dim; ++r) {
        if (r % nt >= nt - guard) continue;
        for (std::size_t c = 0; c < dim; ++c) {
            if (c % nt >= nt - guard) continue;
            const cplx x = a.at(r, c), y = b.at(r, c);
            if (x == y) continue;
            worst = std::max(worst, std::abs(x - y) / std::max(1.0, std::abs(y)));
        }
    }
    return worst;
}

SparseOperator number_poly(std::size_t nt, const std::vector<BigInt>& c) {
    std::vector<double> d(nt);
    for (std::size_t j = 0; j < nt; ++j) d[j] = poly(c, static_cast<double>(j));
    return diagonal_operator(HilbertLayout::oscillator(nt), d);
}

std::size_t find_label(const SpectrumResult& r, std::size_t q, std::size_t j) {
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r.labels[i].digits[0] == q && r.labels[i].digits[1] == j) return i;
    return r.size();
}

SparseOperator random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> col(0, n - 1);
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back({i, i, 4.0 * u(rng)});
        for (int k = 0; k < 4; ++k) {
            const std::size_t j = col(rng);
            if (j == i) continue;
            const cplx v(u(rng), u(rng));
            t.push_back({i, j, v});
            t.push_back({j, i, std::conj(v)});
        }
    }
    return SparseOperator(HilbertLayout::generic(n), std::move(t)).certified();
}

void criterion1(Outcome& o) {
    // Table I as printed, k = 0..n for both signs.
    const long cp[4][5] = {{1, 2}, {2, 2, 2}, {6, 13, 3, 2}, {24, 44, 46, 4, 2}};
    const long cm[4][5] = {{1, 0}, {2, 4, 0}, {6, 9, 9, 0}, {24, 56, 24, 16, 0}};
    int checked = 0, wrong = 0;
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= n; ++k) {
            wrong += c_coeff(n, k, CoeffSign::plus) != cp[n - 1][k];
            wrong += c_coeff(n, k, CoeffSign::minus) != cm[n - 1][k];
            checked += 2;
        }
    o.check(wrong == 0, fmt("%d printed entries of Table I reproduced exactly (%d mismatches)", checked, wrong));
}

void criterion2(Outcome& o) {
    double worst_xx = 0.0, worst_yy = 0.0, worst_xy = 0.0, worst_xy_plus = 0.0;
    for (int n = 1; n <= 6; ++n) {
        const std::size_t nt = 8 * n, guard = 2 * n;
        const auto an = op_pow(destroy(nt), n), adn = op_pow(create(nt), n);
        const auto sp = pauli(Pauli::plus), sm = pauli(Pauli::minus), sz = pauli(Pauli::z);
        const auto xp = kron(sm, adn) + kron(sp, an), xm = kron(sm, adn) - kron(sp, an);
        const auto yp = kron(sm, an) + kron(sp, adn), ym = kron(sm, an) - kron(sp, adn);
        const auto cp = commutator_poly(n);
        const auto pplus = kron(sz, number_poly(nt, cp.cplus));
        const auto pminus = kron(identity(2), number_poly(nt, cp.cminus));
        worst_xx = std::max(worst_xx, guarded_rel_diff(commutator(xp, xm), pplus + pminus, nt, guard));
        worst_yy = std::max(worst_yy, guarded_rel_diff(commutator(yp, ym), pplus - pminus, nt, guard));
        const auto a2 = op_pow(destroy(nt), 2 * n), ad2 = op_pow(create(nt), 2 * n);
        const auto printed = kron(sz, ad2 - a2), hermitian = kron(sz, ad2 + a2);
        worst_xy = std::max({worst_xy, guarded_rel_diff(commutator(xp, ym), printed, nt, guard),
                             guarded_rel_diff(commutator(yp, xm), printed, nt, guard)});
        worst_xy_plus = std::max({worst_xy_plus, guarded_rel_diff(commutator(xp, ym), hermitian, nt, guard),
                                  guarded_rel_diff(commutator(yp, xm), hermitian, nt, guard)});
    }
    o.check(worst_xx < 1e-10, fmt("[X+,X-] = sz SUM C+ N^k + SUM C- N^k: max rel diff %.2e", worst_xx));
    o.check(worst_yy < 1e-10, fmt("[Y+,Y-] = sz SUM C+ N^k - SUM C- N^k: max rel diff %.2e", worst_yy));
    o.check(worst_xy < 1e-10, fmt("[X+,Y-] = [Y+,X-] = sz(a+^2n - a^2n): max rel diff %.2e", worst_xy));
    o.notes.push_back(fmt("info [X+,Y-] = [Y+,X-] = sz(a+^2n + a^2n) holds with max rel diff %.2e", worst_xy_plus));
}

void criterion3(Outcome& o) {
    const std::size_t nt = 300, lmax = 20;
    const Grid g{0.0, 0.3, 301};
    double worst = 0.0;
    std::size_t compared = 0, lost = 0;
    for (int n = 1; n <= 4; ++n) {
        const double wq = n + 0.5;
        std::vector<SpectrumResult> sweep;
        for (std::size_t i = 0; i < g.steps; ++i) {
            const auto s = SystemSpec::single(wq, n, g.at(i), nt);
            auto r = eigh_dense(build_nJC(s));
            if (i == 0) r = label_by_overlap(std::move(r), s.layout());
            sweep.push_back(std::move(r));
        }
        const auto curves = track_levels(sweep);
        for (const auto& c : curves) {
            const std::size_t q = c.seed.digits[0], j = c.seed.digits[1];
            const bool upper = q == 0 && j <= lmax;
            const bool lower = q == 1 && j >= static_cast<std::size_t>(n) && j - n <= lmax;
            if (!upper && !lower) continue;
            if (c.terminated_at) {
                ++lost;
                continue;
            }
            const std::size_t l = upper ? j : j - n;
            for (std::size_t i = 0; i < g.steps; ++i) {
                const auto [ep, em] = njc_doublet(DispersiveParams::make(n, g.at(i), wq), l);
                worst = std::max(worst, std::abs(c.energies[i] - (upper ? ep : em)));
                ++compared;
            }
        }
    }
    o.check(lost == 0, fmt("all doublet curves tracked over g in [0, 0.3] (%zu lost)", lost));
    o.check(compared == 4 * 21 * 2 * 301, fmt("%zu tracked energies compared", compared));
    o.check(worst <= 1e-10, fmt("max |numeric - closed form| = %.2e (n<=4, l<=20, N_T=300)", worst));
}

void criterion4(Outcome& o) {
    const std::size_t nt = 300;
    auto errors = [&](double delta, std::vector<double>& er, std::vector<double>& en) {
        const auto s = SystemSpec::single(2.0 + delta, 2, 0.02, nt);
        const auto r = label_by_overlap(eigh_dense(build_nR(s)), s.layout());
        const auto p = DispersiveParams::from_spec(s);
        for (std::size_t q = 0; q < 2; ++q)
            for (std::size_t l = 0; l <= 3; ++l) {
                const std::size_t i = find_label(r, q, l);
                if (i == r.size()) throw std::runtime_error("missing label");
                const QubitState qs = q == 0 ? QubitState::e : QubitState::g;
                er.push_back(std::abs(r.energies[i] - dispersive_level(p, qs, l, Regime::rwa)));
                en.push_back(std::abs(r.energies[i] - dispersive_level(p, qs, l, Regime::nonrwa)));
            }
    };
    std::vector<double> er6, en6, er05, en05;
    errors(6.0, er6, en6);
    errors(0.5, er05, en05);
    const double max_n6 = *std::max_element(en6.begin(), en6.end());
    const double max_r6 = *std::max_element(er6.begin(), er6.end());
    o.check(max_n6 <= 5e-4, fmt("Delta=6: max nonrwa error %.2e <= 5e-4 over |e/g,l>, l=0..3", max_n6));
    o.check(max_r6 <= 1e-3, fmt("Delta=6: max rwa error %.2e <= 1e-3", max_r6));
    const char* names[8] = {"e0", "e1", "e2", "e3", "g0", "g1", "g2", "g3"};
    std::string detail;
    bool all = true;
    for (int i = 0; i < 8; ++i) {
        const bool better = en05[i] < er05[i];
        all = all && better;
        detail += fmt(" %s:%s", names[i], better ? "<" : ">=");
    }
    o.check(all, "Delta=0.5: nonrwa error strictly below rwa on every label;" + detail);
}

void criterion5(Outcome& o) {
    const double wq = 3.1;
    auto lowest = [&](std::size_t nt, double g, bool stab) {
        auto s = SystemSpec::single(wq, 3, g, nt);
        if (stab) s.stabilizer = StabilizerSpec{};
        return eigh_dense(build_nR(s), {.vectors = false, .dense_limit = 2 * nt}).energies.front();
    };
    const double u300 = lowest(300, 0.01, false), u600 = lowest(600, 0.01, false);
    o.check(std::abs(u600 - u300) > 0.1,
            fmt("unstabilized g3=0.01: |E0(600) - E0(300)| = %.2e > 0.1", std::abs(u600 - u300)));
    const double w300 = lowest(300, 0.03, false), w600 = lowest(600, 0.03, false);
    o.notes.push_back(fmt("info unstabilized g3=0.03: |E0(600) - E0(300)| = %.3f", std::abs(w600 - w300)));
    const double s2000 = lowest(2000, 0.01, true), s4000 = lowest(4000, 0.01, true);
    o.check(std::abs(s4000 - s2000) < 1e-6,
            fmt("stabilized g3=0.01: E0 = %.13f, doubling drift %.2e < 1e-6", s2000, std::abs(s4000 - s2000)));

    std::vector<std::size_t> counts;
    const Grid g{0.0, 0.03, 31};
    for (std::size_t i = 0; i < g.steps; ++i) {
        auto s = SystemSpec::single(wq, 3, g.at(i), 2000);
        s.stabilizer = StabilizerSpec{};
        counts.push_back(filter_by_mean_photon(with_mean_photons(eigh_dense(build_nR(s))), 20.0).size());
    }
    bool monotone = true;
    for (std::size_t i = 1; i < counts.size(); ++i) monotone = monotone && counts[i] <= counts[i - 1];
    std::string seq;
    for (std::size_t i = 0; i < counts.size(); i += 5) seq += fmt(" g=%.3f:%zu", g.at(i), counts[i]);
    o.check(monotone, "nbar<20 count non-increasing on g3 in [0, 0.03];" + seq);
    o.check(2 * counts.back() <= counts.front(),
            fmt("collapse by g3=0.03: count %zu <= %zu/2", counts.back(), counts.front()));
}

void criterion6(Outcome& o) {
    const auto s = SystemSpec::single(8.0, 2, 0.02, 60);
    const auto ts = Grid{0.0, 2.0, 41}.values();
    double min_q = 1.0, min_o = 1.0;
    for (const auto& f : dispersive_fidelity_run(s, DynamicsPreset::bell, ts)) {
        min_q = std::min(min_q, f.fid_qubit);
        min_o = std::min(min_o, f.fid_osc);
    }
    o.check(min_q > 0.99 && min_o > 0.99,
            fmt("Bell preset, chi t in [0,2]: min qubit fidelity %.6f, min oscillator fidelity %.6f", min_q, min_o));
    const double t1[] = {1.0};
    const auto c = dispersive_fidelity_run(s, DynamicsPreset::plus_coherent_2, t1).front();
    o.check(c.fid_osc < c.fid_qubit,
            fmt("|alpha|^2=2 preset at chi t=1: oscillator %.4f < qubit %.4f", c.fid_osc, c.fid_qubit));
}

void criterion7(Outcome& o) {
    double worst = 0.0;
    int sectors = 0;
    for (int n = 1; n <= 3; ++n) {
        SystemSpec s;
        s.qubits = {{n + 0.7, n, 0.03}, {n + 1.1, n, 0.02}};
        s.oscillators = {{1.0, 16}};
        s.topology = Topology::multiqubit;
        for (Regime r : {Regime::rwa, Regime::nonrwa})
            for (bool k0 : {true, false}) {
                DispersiveOptions opt;
                opt.regime = r;
                opt.cross_k0 = k0;
                const auto h = build_multiqubit_dispersive(s, opt);
                const auto layout = s.layout();
                for (std::size_t j = 0; j <= 10; ++j) {
                    const auto b = two_qubit_block(j, s, opt);
                    CMatrix sector(4, 4), block(4, 4);
                    for (std::size_t a = 0; a < 4; ++a)
                        for (std::size_t c = 0; c < 4; ++c) {
                            const std::size_t da[] = {a / 2, a % 2, j}, dc[] = {c / 2, c % 2, j};
                            sector(a, c) = h.at(layout.encode(da), layout.encode(dc));
                            block(a, c) = b[a][c];
                        }
                    const auto ev_h = eigh(sector, false).values, ev_b = eigh(block, false).values;
                    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(ev_h[k] - ev_b[k]));
                    ++sectors;
                }
            }
    }
    o.check(worst <= 1e-12, fmt("%d sectors (n=1..3, j<=10, both regimes, both cross_k0): max eigenvalue diff %.2e",
                                sectors, worst));
}

void criterion8(Outcome& o) {
    std::mt19937_64 rng(20240607);
    std::uniform_int_distribution<std::size_t> dim(16, 1024);
    double worst_ev = 0.0, worst_res = 0.0, worst_orth = 0.0, worst_dense_res = 0.0, worst_unit = 0.0;
    bool deterministic = true;
    for (int inst = 0; inst < 50; ++inst) {
        const std::size_t n = dim(rng);
        const auto h = random_hermitian(n, rng);
        const auto d = eigh_dense(h, {.vectors = inst % 10 == 0});
        const std::size_t k = std::min<std::size_t>(6, n);
        const auto l = eigs_lowest(h, k);
        const auto l2 = eigs_lowest(h, k);
        deterministic = deterministic && l.energies == l2.energies;
        const double scale = h.norm1();
        for (std::size_t i = 0; i < k; ++i) {
            worst_ev = std::max(worst_ev, std::abs(l.energies[i] - d.energies[i]));
            worst_res = std::max(worst_res, residual_norm(h, l.energies[i], l.states[i]) / scale);
            for (std::size_t j = i; j < k; ++j)
                worst_orth = std::max(worst_orth, std::abs(inner(l.states[i], l.states[j]) - (i == j ? 1.0 : 0.0)));
        }
        if (d.has_states()) {
            for (std::size_t i = 0; i < n; i += std::max<std::size_t>(1, n / 16))
                worst_dense_res = std::max(worst_dense_res, residual_norm(h, d.energies[i], d.states[i]) / scale);
            std::normal_distribution<double> gauss;
            std::vector<cplx> v(n);
            for (auto& x : v) x = cplx(gauss(rng), gauss(rng));
            const auto psi = StateVector::normalized(h.layout(), v);
            const auto out = Propagator(h).evolve(psi, 5.0);
            worst_unit = std::max(worst_unit, std::abs(out.norm() - 1.0));
        }
    }
    o.check(worst_ev <= 1e-9, fmt("50 random Hermitian instances (16..1024): dense vs Lanczos max diff %.2e", worst_ev));
    o.check(worst_res <= 1e-10, fmt("Lanczos relative residual max %.2e", worst_res));
    o.check(worst_orth <= 1e-10, fmt("Lanczos orthonormality defect max %.2e", worst_orth));
    o.check(worst_dense_res <= 1e-12, fmt("dense relative residual max %.2e", worst_dense_res));
    o.check(worst_unit <= 1e-9, fmt("propagator norm drift max %.2e", worst_unit));
    o.check(deterministic, "repeated Lanczos runs bitwise identical");
}

}  // namespace

int main() {
    run(1, "Table I regression", 1.0, criterion1);
    run(2, "commutator identity suite", 10.0, criterion2);
    run(3, "exact nJC doublets vs closed form", 60.0, criterion3);
    run(4, "dispersive accuracy (n=2)", 120.0, criterion4);
    run(5, "stabilization (n=3)", 600.0, criterion5);
    run(6, "dynamics fidelities", 120.0, criterion6);
    run(7, "two-qubit block oracle", 10.0, criterion7);
    run(8, "numerics hygiene", 300.0, criterion8);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
