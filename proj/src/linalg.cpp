#include "nphoton/linalg.hpp"

#include "nphoton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nphoton {

CMatrix to_dense(const SparseOperator& a) {
    CMatrix m(a.dim(), a.dim());
    auto rp = a.row_ptr();
    auto ci = a.col_idx();
    auto v = a.values();
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) m(r, ci[p]) = v[p];
    return m;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    require(a.cols == b.rows, ErrorKind::layout, "matmul shape mismatch");
    CMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMatrix adjoint(const CMatrix& a) {
    CMatrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

cplx trace(const CMatrix& a) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < std::min(a.rows, a.cols); ++i) s += a(i, i);
    return s;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require(a.rows == b.rows && a.cols == b.cols, ErrorKind::layout, "shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>* zt, std::size_t ncomp) {
    const std::size_t n = d.size();
    if (n == 0) return;
    if (ncomp == 0) ncomp = n;
    if (zt) require(zt->size() == n * ncomp, ErrorKind::usage, "eigenvector tracking buffer has wrong size");
    require(e.size() >= n, ErrorKind::usage, "subdiagonal storage too short");
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    double tnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) tnorm = std::max(tnorm, std::abs(d[i]) + std::abs(e[i]) + (i ? std::abs(e[i - 1]) : 0.0));
    const double floor_abs = eps * tnorm;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= floor_abs) break;
            }
            if (m != l) {
                if (++iter > 200) throw Error(ErrorKind::iteration_limit, "tridiagonal QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (zt) {
                        double* zi = zt->data() + i * ncomp;
                        double* zi1 = zt->data() + (i + 1) * ncomp;
                        for (std::size_t k = 0; k < ncomp; ++k) {
                            f = zi1[k];
                            zi1[k] = s * zi[k] + c * f;
                            zi[k] = c * zi[k] - s * f;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

namespace {

inline double conj_of(double x) { return x; }
inline cplx conj_of(cplx x) { return std::conj(x); }
inline double abs2(double x) { return x * x; }
inline double abs2(cplx x) { return std::norm(x); }
inline double real_of(double x) { return x; }
inline double real_of(cplx x) { return x.real(); }

template <class T>
EigenDecompT<T> eigh_impl(std::vector<T> a, std::size_t n, bool want_vectors) {
    EigenDecompT<T> out;
    if (n == 0) return out;
    auto A = [&](std::size_t i, std::size_t j) -> T& { return a[i * n + j]; };

    std::vector<std::vector<T>> hv;
    std::vector<double> hbeta;
    std::vector<T> p(n), q(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        std::vector<T> v(m);
        double scale = 0.0, tail = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = A(k + 1 + i, k);
            scale = std::max(scale, std::abs(v[i]));
            if (i > 0) tail = std::max(tail, std::abs(v[i]));
        }
        if (tail == 0.0) {
            hv.emplace_back();
            hbeta.push_back(0.0);
            continue;
        }
        // The reflector is invariant under scaling v; work on v/max|v_i| so squares cannot underflow.
        double xnorm2 = 0.0;
        for (auto& x : v) {
            x /= scale;
            xnorm2 += abs2(x);
        }
        const double xnorm = std::sqrt(xnorm2);
        const double ax0 = std::abs(v[0]);
        const T phase = ax0 > 0.0 ? v[0] / ax0 : T(1.0);
        const T alpha_s = -phase * xnorm;
        const T alpha = alpha_s * scale;
        v[0] -= alpha_s;
        double vnorm2 = 0.0;
        for (const auto& x : v) vnorm2 += abs2(x);
        const double beta = 2.0 / vnorm2;

        for (std::size_t i = 0; i < m; ++i) {
            const T* row = &A(k + 1 + i, k + 1);
            T s = 0.0;
            for (std::size_t j = 0; j < m; ++j) s += row[j] * v[j];
            p[i] = beta * s;
        }
        T vp = 0.0;
        for (std::size_t i = 0; i < m; ++i) vp += conj_of(v[i]) * p[i];
        const T kk = 0.5 * beta * vp;
        for (std::size_t i = 0; i < m; ++i) q[i] = p[i] - kk * v[i];
        for (std::size_t i = 0; i < m; ++i) {
            T* row = &A(k + 1 + i, k + 1);
            const T vi = v[i], qi = q[i];
            for (std::size_t j = 0; j < m; ++j) row[j] -= vi * conj_of(q[j]) + qi * conj_of(v[j]);
        }
        A(k + 1, k) = alpha;
        A(k, k + 1) = conj_of(alpha);
        for (std::size_t i = 1; i < m; ++i) A(k + 1 + i, k) = A(k, k + 1 + i) = 0.0;
        hv.push_back(std::move(v));
        hbeta.push_back(beta);
    }

    std::vector<double> d(n), e(n, 0.0);
    std::vector<T> phi(n, T(1.0));
    for (std::size_t i = 0; i < n; ++i) d[i] = real_of(A(i, i));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const T sub = A(i + 1, i);
        const double mag = std::abs(sub);
        e[i] = mag;
        phi[i + 1] = mag > 0.0 ? phi[i] * (sub / mag) : phi[i];
    }

    std::vector<double> zt;
    if (want_vectors) {
        zt.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) zt[i * n + i] = 1.0;
    }
    tridiagonal_ql(d, e, want_vectors ? &zt : nullptr);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = d[order[i]];
    if (!want_vectors) return out;

    // Reuse a as X = D Z: rows are components, columns are eigenvectors.
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) A(r, c) = phi[r] * zt[c * n + r];
    zt.clear();
    zt.shrink_to_fit();
    std::vector<T> w(n);
    for (std::size_t kk = hv.size(); kk-- > 0;) {
        if (hbeta[kk] == 0.0) continue;
        const auto& v = hv[kk];
        const std::size_t off = kk + 1;
        std::fill(w.begin(), w.end(), T(0.0));
        for (std::size_t i = 0; i < v.size(); ++i) {
            const T cv = conj_of(v[i]);
            const T* row = &A(off + i, 0);
            for (std::size_t c = 0; c < n; ++c) w[c] += cv * row[c];
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            const T bv = hbeta[kk] * v[i];
            T* row = &A(off + i, 0);
            for (std::size_t c = 0; c < n; ++c) row[c] -= bv * w[c];
        }
    }
    out.vectors.assign(n, std::vector<T>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = order[i];
        for (std::size_t r = 0; r < n; ++r) out.vectors[i][r] = A(r, c);
    }
    return out;
}

}  // namespace

EigenDecomp eigh(CMatrix a, bool want_vectors) {
    require(a.rows == a.cols, ErrorKind::layout, "eigh requires a square matrix");
    const std::size_t n = a.rows;
    return eigh_impl<cplx>(std::move(a.data), n, want_vectors);
}

RealEigenDecomp eigh_real(std::vector<double> a, std::size_t n, bool want_vectors) {
    require(a.size() == n * n, ErrorKind::layout, "eigh_real buffer must hold n*n entries");
    return eigh_impl<double>(std::move(a), n, want_vectors);
}

}  // namespace nphoton
