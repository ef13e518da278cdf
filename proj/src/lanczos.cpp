#include "nphoton/eigensolve.hpp"
#include "nphoton/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace nphoton {

namespace {

using Vec = std::vector<cplx>;

cplx dot(const Vec& a, const Vec& b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double nrm(const Vec& a) { return std::sqrt(std::real(dot(a, a))); }

void orthogonalize(Vec& w, const std::vector<Vec>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& v : basis) {
            const cplx c = dot(v, w);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * v[i];
        }
}

// Lower eigenpairs of the tridiagonal (alpha, beta), ascending, with the requested components of each vector.
struct Ritz {
    std::vector<double> values;
    std::vector<double> comps;  // values.size() × ncomp, row-major
};

Ritz tridiag_eigs(const std::vector<double>& alpha, const std::vector<double>& beta, std::size_t ncomp,
                  bool last_only) {
    const std::size_t m = alpha.size();
    std::vector<double> d = alpha, e(m, 0.0);
    for (std::size_t i = 0; i + 1 < m; ++i) e[i] = beta[i];
    std::vector<double> zt(m * ncomp, 0.0);
    if (last_only) {
        for (std::size_t i = 0; i < m; ++i) zt[i] = i == m - 1 ? 1.0 : 0.0;
    } else {
        for (std::size_t i = 0; i < m; ++i) zt[i * ncomp + i] = 1.0;
    }
    tridiagonal_ql(d, e, &zt, ncomp);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    Ritz r;
    r.values.resize(m);
    r.comps.resize(m * ncomp);
    for (std::size_t i = 0; i < m; ++i) {
        r.values[i] = d[order[i]];
        std::copy_n(zt.begin() + static_cast<std::ptrdiff_t>(order[i] * ncomp), ncomp,
                    r.comps.begin() + static_cast<std::ptrdiff_t>(i * ncomp));
    }
    return r;
}

// Eigenvector of the tridiagonal for eigenvalue theta by inverse iteration (pivoted tridiagonal LU).
std::vector<double> tridiag_inverse_iteration(const std::vector<double>& alpha, const std::vector<double>& beta,
                                              double theta, const std::vector<std::vector<double>>& against) {
    const std::size_t m = alpha.size();
    double tnorm = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        tnorm = std::max(tnorm, std::abs(alpha[i]) + (i > 0 ? std::abs(beta[i - 1]) : 0.0) +
                                    (i + 1 < m ? std::abs(beta[i]) : 0.0));
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(tnorm, 1e-300);
    std::vector<double> d(m), dl(m, 0.0), du(m, 0.0), du2(m, 0.0);
    std::vector<bool> swapped(m, false);
    for (std::size_t i = 0; i < m; ++i) d[i] = alpha[i] - theta;
    for (std::size_t i = 0; i + 1 < m; ++i) dl[i] = du[i] = beta[i];
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) d[i] = tiny;
            const double f = dl[i] / d[i];
            dl[i] = f;
            d[i + 1] -= f * du[i];
        } else {
            const double f = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = f;
            const double t = du[i];
            du[i] = d[i + 1];
            d[i + 1] = t - f * d[i + 1];
            if (i + 2 < m) {
                du2[i] = du[i + 1];
                du[i + 1] = -f * du[i + 1];
            }
            swapped[i] = true;
        }
    }
    if (d[m - 1] == 0.0) d[m - 1] = tiny;
    std::vector<double> x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = 1.0 + 0.37 * std::sin(1.0 + static_cast<double>(i));
    for (int it = 0; it < 3; ++it) {
        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (swapped[i]) std::swap(x[i], x[i + 1]);
            x[i + 1] -= dl[i] * x[i];
        }
        for (std::size_t i = m; i-- > 0;) {
            double v = x[i];
            if (i + 1 < m) v -= du[i] * x[i + 1];
            if (i + 2 < m) v -= du2[i] * x[i + 2];
            x[i] = v / d[i];
        }
        for (const auto& y : against) {
            double c = 0.0;
            for (std::size_t i = 0; i < m; ++i) c += y[i] * x[i];
            for (std::size_t i = 0; i < m; ++i) x[i] -= c * y[i];
        }
        double nx = 0.0;
        for (double v : x) nx += v * v;
        nx = std::sqrt(nx);
        for (double& v : x) v /= nx;
    }
    return x;
}

// Eigenvectors (length m) of the tridiagonal for its lowest k eigenvalues.
std::vector<std::vector<double>> tridiag_lowest_vectors(const std::vector<double>& alpha,
                                                        const std::vector<double>& beta, std::size_t k,
                                                        std::vector<double>& values) {
    const std::size_t m = alpha.size();
    std::vector<std::vector<double>> out;
    if (m <= 200) {
        const Ritz r = tridiag_eigs(alpha, beta, m, false);
        values.assign(r.values.begin(), r.values.begin() + static_cast<std::ptrdiff_t>(std::min(k, m)));
        for (std::size_t i = 0; i < values.size(); ++i)
            out.emplace_back(r.comps.begin() + static_cast<std::ptrdiff_t>(i * m),
                             r.comps.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
        return out;
    }
    std::vector<double> d = alpha, e(m, 0.0);
    for (std::size_t i = 0; i + 1 < m; ++i) e[i] = beta[i];
    tridiagonal_ql(d, e, nullptr);
    std::sort(d.begin(), d.end());
    values.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(std::min(k, m)));
    const double scale = std::max(std::abs(d.front()), std::abs(d.back()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::vector<std::vector<double>> cluster;
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(values[j] - values[i]) <= 1e-9 * std::max(scale, 1.0)) cluster.push_back(out[j]);
        out.push_back(tridiag_inverse_iteration(alpha, beta, values[i], cluster));
    }
    return out;
}

struct BlockResult {
    std::vector<double> values;
    std::vector<Vec> vectors;
    bool converged = true;
};

BlockResult lanczos_block(const SparseOperator& h, std::size_t k, double thresh, const LanczosOptions& opt,
                          std::mt19937_64& rng) {
    const std::size_t n = h.dim();
    std::size_t maxit = opt.max_iters ? opt.max_iters : std::min<std::size_t>(n, 2000);
    maxit = std::min(maxit, n);
    const double breakdown = 1e-13 * std::max(1.0, h.norm1());

    std::vector<Vec> basis;
    std::vector<double> alpha, beta;
    Vec v(n, cplx(1.0 / std::sqrt(static_cast<double>(n))));
    basis.push_back(v);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Vec w(n);
    std::size_t next_check = std::max<std::size_t>(k, 1);
    bool done = false;
    while (!done) {
        const std::size_t m = basis.size() - 1;
        h.apply(basis[m], w);
        const double a = std::real(dot(basis[m], w));
        for (std::size_t i = 0; i < n; ++i) w[i] -= a * basis[m][i];
        if (m > 0)
            for (std::size_t i = 0; i < n; ++i) w[i] -= beta[m - 1] * basis[m - 1][i];
        orthogonalize(w, basis);
        const double b = nrm(w);
        alpha.push_back(a);
        const std::size_t size = alpha.size();
        const bool invariant = b <= breakdown;
        const bool exhausted = size >= n;
        if (invariant && !exhausted) {
            // Degenerate partners may live outside the current Krylov space: restart before judging.
            next_check = size + std::min(n - size, std::max<std::size_t>(2 * k + 20, opt.check_every));
        } else if (size >= k && (size >= next_check || exhausted || size >= maxit)) {
            next_check = size + std::max<std::size_t>(opt.check_every, size / 10);
            const Ritz r = tridiag_eigs(alpha, beta, 1, true);
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i) ok = b * std::abs(r.comps[i]) <= thresh;
            if (ok || exhausted) done = true;
        }
        if (done) break;
        if (size >= maxit) {
            done = true;
            BlockResult partial;
            partial.converged = false;
            std::vector<double> vals;
            const auto vecs = tridiag_lowest_vectors(alpha, beta, k, vals);
            for (std::size_t i = 0; i < vals.size(); ++i) {
                partial.values.push_back(vals[i]);
                Vec y(n, 0.0);
                for (std::size_t j = 0; j < size; ++j)
                    for (std::size_t t = 0; t < n; ++t) y[t] += vecs[i][j] * basis[j][t];
                partial.vectors.push_back(std::move(y));
            }
            return partial;
        }
        if (invariant) {
            Vec fresh(n);
            double fn = 0.0;
            for (int attempt = 0; attempt < 8 && fn <= 1e-8; ++attempt) {
                for (auto& x : fresh) x = cplx(uni(rng), 0.0);
                orthogonalize(fresh, basis);
                fn = nrm(fresh);
            }
            if (fn <= 1e-8) break;
            for (auto& x : fresh) x /= fn;
            beta.push_back(0.0);
            basis.push_back(std::move(fresh));
        } else {
            beta.push_back(b);
            for (auto& x : w) x /= b;
            basis.push_back(w);
        }
    }
    const std::size_t size = alpha.size();
    basis.resize(size);
    std::vector<double> vals;
    const auto vecs = tridiag_lowest_vectors(alpha, beta, k, vals);
    BlockResult out;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        out.values.push_back(vals[i]);
        if (!opt.vectors) continue;
        Vec y(n, 0.0);
        for (std::size_t j = 0; j < size; ++j) {
            const double c = vecs[i][j];
            if (c == 0.0) continue;
            for (std::size_t t = 0; t < n; ++t) y[t] += c * basis[j][t];
        }
        const double yn = nrm(y);
        for (auto& x : y) x /= yn;
        out.vectors.push_back(std::move(y));
    }
    return out;
}

SparseOperator submatrix(const SparseOperator& h, const std::vector<std::size_t>& comp) {
    std::vector<std::size_t> local(h.dim(), 0);
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
    auto rp = h.row_ptr();
    auto ci = h.col_idx();
    auto vals = h.values();
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < comp.size(); ++i)
        for (std::size_t p = rp[comp[i]]; p < rp[comp[i] + 1]; ++p) t.push_back({i, local[ci[p]], vals[p]});
    return SparseOperator(HilbertLayout::generic(comp.size()), std::move(t));
}

}  // namespace

SpectrumResult eigs_lowest(const SparseOperator& h, std::size_t k, double tol, const LanczosOptions& opt) {
    require(h.hermitian() || h.is_hermitian_exact(), ErrorKind::contract_violation,
            "eigensolver input must be Hermitian");
    require(k >= 1 && k <= h.dim(), ErrorKind::usage, "k must lie in [1, dim]");
    require(tol > 0.0, ErrorKind::usage, "tolerance must be positive");
    const double norm = h.norm1();
    const double thresh = tol * (norm > 0.0 ? norm : 1.0);
    std::mt19937_64 rng(opt.seed);

    struct Pair {
        double e;
        EigenState s;
    };
    std::vector<Pair> pairs;
    bool converged = true;
    auto comps = connected_components(h);
    for (auto& comp : comps) {
        const auto sub = submatrix(h, comp);
        const std::size_t kk = std::min(k, comp.size());
        auto br = lanczos_block(sub, kk, thresh, opt, rng);
        converged = converged && br.converged;
        auto support = std::make_shared<const std::vector<std::size_t>>(std::move(comp));
        for (std::size_t i = 0; i < br.values.size(); ++i) {
            Pair p{br.values[i], {}};
            if (!br.vectors.empty()) {
                p.s.support = support;
                p.s.amps = std::move(br.vectors[i]);
            }
            pairs.push_back(std::move(p));
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.e < b.e; });
    if (pairs.size() > k) pairs.resize(k);
    SpectrumResult out;
    out.layout = h.layout();
    for (auto& p : pairs) {
        out.energies.push_back(p.e);
        if (opt.vectors && !p.s.amps.empty()) out.states.push_back(std::move(p.s));
    }
    if (!converged) throw IterationLimitError("Lanczos did not converge within max_iters", std::move(out));
    return out;
}

}  // namespace nphoton
