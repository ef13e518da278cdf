#include "nphoton/dynamics.hpp"

#include "nphoton/eigensolve.hpp"
#include "nphoton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nphoton {

namespace {

double l2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

}  // namespace

StateVector::StateVector(HilbertLayout layout, std::vector<cplx> amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    require(amps_.size() == layout_.total_dim(), ErrorKind::layout, "amplitude count does not match layout");
    require(std::abs(l2(amps_) - 1.0) <= 1e-12, ErrorKind::usage, "state vector must be normalized");
}

StateVector StateVector::normalized(HilbertLayout layout, std::vector<cplx> amplitudes) {
    const double n = l2(amplitudes);
    require(n > 0.0, ErrorKind::usage, "cannot normalize a zero vector");
    for (auto& a : amplitudes) a /= n;
    return StateVector::unchecked(std::move(layout), std::move(amplitudes));
}

StateVector StateVector::unchecked(HilbertLayout layout, std::vector<cplx> amplitudes) {
    require(amplitudes.size() == layout.total_dim(), ErrorKind::layout, "amplitude count does not match layout");
    StateVector s;
    s.layout_ = std::move(layout);
    s.amps_ = std::move(amplitudes);
    return s;
}

double StateVector::norm() const { return l2(amps_); }

StateVector basis_state(const HilbertLayout& layout, std::span<const std::size_t> digits) {
    std::vector<cplx> a(layout.total_dim(), 0.0);
    a[layout.encode(digits)] = 1.0;
    return StateVector(layout, std::move(a));
}

StateVector product_state(const StateVector& a, const StateVector& b) {
    const auto& x = a.amplitudes();
    const auto& y = b.amplitudes();
    std::vector<cplx> out(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i * y.size() + j] = x[i] * y[j];
    return StateVector::normalized(concat(a.layout(), b.layout()), std::move(out));
}

StateVector superpose(const std::vector<std::pair<cplx, StateVector>>& terms) {
    require(!terms.empty(), ErrorKind::usage, "superposition needs at least one term");
    const auto& layout = terms.front().second.layout();
    std::vector<cplx> out(layout.total_dim(), 0.0);
    for (const auto& [c, s] : terms) {
        require(s.layout() == layout, ErrorKind::layout, "superposed states must share a layout");
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * s.amplitudes()[i];
    }
    return StateVector::normalized(layout, std::move(out));
}

StateVector coherent_state(cplx alpha, std::size_t trunc) {
    const double a = std::abs(alpha);
    require(a * a + 6.0 * a + 9.0 <= static_cast<double>(trunc), ErrorKind::truncation_insufficient,
            "truncation too small for the coherent amplitude");
    std::vector<cplx> c(trunc);
    c[0] = std::exp(-a * a / 2.0);
    for (std::size_t j = 1; j < trunc; ++j) c[j] = c[j - 1] * alpha / std::sqrt(static_cast<double>(j));
    double mass = 0.0;
    for (const auto& x : c) mass += std::norm(x);
    require(1.0 - mass < 1e-10, ErrorKind::truncation_insufficient, "coherent-state tail mass exceeds 1e-10");
    return StateVector::normalized(HilbertLayout::oscillator(trunc), std::move(c));
}

cplx expectation(const SparseOperator& op, const StateVector& psi) {
    require(op.dim() == psi.layout().total_dim(), ErrorKind::layout, "operator and state dimensions differ");
    const auto y = op.apply(psi.amplitudes());
    cplx s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += std::conj(psi.amplitudes()[i]) * y[i];
    return s;
}

cplx overlap(const StateVector& a, const StateVector& b) {
    require(a.amplitudes().size() == b.amplitudes().size(), ErrorKind::layout, "state dimensions differ");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i) s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    return s;
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    const auto& v = psi.amplitudes();
    DensityMatrix d{psi.layout(), CMatrix(v.size(), v.size())};
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) d.matrix(i, j) = v[i] * std::conj(v[j]);
    return d;
}

namespace {

// Splits each composite index into (kept index, traced index).
struct Split {
    HilbertLayout kept;
    std::vector<std::size_t> k, t;
    std::size_t tdim = 1;
};

Split split(const HilbertLayout& layout, std::span<const std::size_t> keep) {
    require(!keep.empty(), ErrorKind::usage, "partial trace needs a non-empty keep set");
    Split s;
    s.kept = layout.reduced(keep);
    std::vector<bool> is_kept(layout.size(), false);
    for (auto i : keep) is_kept[i] = true;
    std::vector<std::size_t> traced;
    for (std::size_t i = 0; i < layout.size(); ++i)
        if (!is_kept[i]) traced.push_back(i), s.tdim *= layout[i].dim;
    const std::size_t n = layout.total_dim();
    s.k.resize(n);
    s.t.resize(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        const auto d = layout.decode(idx);
        std::size_t ki = 0, ti = 0;
        for (std::size_t i = 0; i < layout.size(); ++i) {
            if (is_kept[i]) ki = ki * layout[i].dim + d[i];
            else ti = ti * layout[i].dim + d[i];
        }
        s.k[idx] = ki;
        s.t[idx] = ti;
    }
    return s;
}

}  // namespace

DensityMatrix partial_trace(const StateVector& psi, std::span<const std::size_t> keep) {
    const auto sp = split(psi.layout(), keep);
    const std::size_t kd = sp.kept.total_dim();
    CMatrix m(kd, sp.tdim);
    for (std::size_t i = 0; i < psi.amplitudes().size(); ++i) m(sp.k[i], sp.t[i]) = psi.amplitudes()[i];
    DensityMatrix out{sp.kept, CMatrix(kd, kd)};
    for (std::size_t a = 0; a < kd; ++a)
        for (std::size_t b = 0; b < kd; ++b) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < sp.tdim; ++t) s += m(a, t) * std::conj(m(b, t));
            out.matrix(a, b) = s;
        }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
    const auto sp = split(rho.layout, keep);
    const std::size_t kd = sp.kept.total_dim();
    DensityMatrix out{sp.kept, CMatrix(kd, kd)};
    const std::size_t n = rho.layout.total_dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (sp.t[i] == sp.t[j]) out.matrix(sp.k[i], sp.k[j]) += rho.matrix(i, j);
    return out;
}

namespace {

CMatrix hermitian_sqrt(const CMatrix& a) {
    const auto ed = eigh(a, true);
    const std::size_t n = a.rows;
    CMatrix r(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double s = std::sqrt(std::max(ed.values[k], 0.0));
        if (s == 0.0) continue;
        const auto& v = ed.vectors[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r(i, j) += s * v[i] * std::conj(v[j]);
    }
    return r;
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require(rho.matrix.rows == sigma.matrix.rows && rho.layout == sigma.layout, ErrorKind::usage,
            "fidelity needs density matrices on the same space");
    const CMatrix sr = hermitian_sqrt(rho.matrix);
    CMatrix m = matmul(matmul(sr, sigma.matrix), sr);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i + 1; j < m.cols; ++j) {
            const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    for (std::size_t i = 0; i < m.rows; ++i) m(i, i) = m(i, i).real();
    const auto ev = eigh(m, false);
    double s = 0.0;
    for (double v : ev.values) s += std::sqrt(std::max(v, 0.0));
    return std::clamp(s * s, 0.0, 1.0);
}

struct Propagator::Block {
    enum class Kind { phase, spectral, krylov } kind;
    std::vector<std::size_t> support;
    double energy = 0.0;                   // phase
    std::vector<double> values;            // spectral
    std::vector<std::vector<cplx>> vecs;   // spectral
    SparseOperator h;                      // krylov
    double hnorm = 0.0;
};

Propagator::Propagator(const SparseOperator& h, EvolveOptions opt) : layout_(h.layout()), opt_(opt) {
    require(h.hermitian() || h.is_hermitian_exact(), ErrorKind::contract_violation,
            "propagation needs a Hermitian generator");
    require(opt_.krylov_dim >= 2, ErrorKind::usage, "Krylov dimension must be >= 2");
    std::vector<std::vector<std::size_t>> comps;
    if (opt_.split_blocks) {
        comps = connected_components(h);
    } else {
        comps.emplace_back(h.dim());
        std::iota(comps[0].begin(), comps[0].end(), 0);
    }
    std::vector<std::size_t> local(h.dim());
    auto rp = h.row_ptr();
    auto ci = h.col_idx();
    auto vals = h.values();
    for (auto& comp : comps) {
        auto b = std::make_unique<Block>();
        const std::size_t m = comp.size();
        for (std::size_t i = 0; i < m; ++i) local[comp[i]] = i;
        std::vector<Triplet> t;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t p = rp[comp[i]]; p < rp[comp[i] + 1]; ++p) t.push_back({i, local[ci[p]], vals[p]});
        SparseOperator sub(HilbertLayout::generic(m), std::move(t));
        if (m == 1) {
            b->kind = Block::Kind::phase;
            b->energy = sub.at(0, 0).real();
        } else if (m <= opt_.spectral_limit) {
            b->kind = Block::Kind::spectral;
            auto ed = eigh(to_dense(sub), true);
            b->values = std::move(ed.values);
            b->vecs = std::move(ed.vectors);
        } else {
            b->kind = Block::Kind::krylov;
            b->hnorm = sub.norm1();
            b->h = std::move(sub);
        }
        b->support = std::move(comp);
        blocks_.push_back(std::move(b));
    }
}

Propagator::~Propagator() = default;
Propagator::Propagator(Propagator&&) noexcept = default;
Propagator& Propagator::operator=(Propagator&&) noexcept = default;

namespace {

using Vec = std::vector<cplx>;

cplx vdot(const Vec& a, const Vec& b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// One Krylov propagation over total time t with adaptive substeps.
void krylov_evolve(const SparseOperator& h, double hnorm, Vec& v, double t, const EvolveOptions& opt) {
    const std::size_t n = h.dim();
    const std::size_t mmax = std::min(opt.krylov_dim, n);
    double remaining = t;
    double tau = t;
    const double min_step = 1e-14 * std::max(std::abs(t), 1.0);
    std::vector<Vec> basis;
    Vec w(n);
    while (remaining != 0.0) {
        const double beta0 = l2(v);
        if (beta0 == 0.0) return;
        basis.assign(1, v);
        for (auto& x : basis[0]) x /= beta0;
        std::vector<double> alpha, beta;
        bool happy = false;
        double beta_last = 0.0;
        for (std::size_t j = 0; j < mmax; ++j) {
            h.apply(basis[j], w);
            const double a = vdot(basis[j], w).real();
            alpha.push_back(a);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : basis) {
                    const cplx c = vdot(q, w);
                    for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
                }
            const double b = l2(w);
            if (b <= 1e-14 * std::max(hnorm, 1.0)) {
                happy = true;
                break;
            }
            if (j + 1 == mmax) {
                beta_last = b;
                break;
            }
            beta.push_back(b);
            for (auto& x : w) x /= b;
            basis.push_back(w);
        }
        const std::size_t m = alpha.size();
        std::vector<double> d = alpha, e(m, 0.0), zt(m * m, 0.0);
        for (std::size_t i = 0; i + 1 < m; ++i) e[i] = beta[i];
        for (std::size_t i = 0; i < m; ++i) zt[i * m + i] = 1.0;
        tridiagonal_ql(d, e, &zt, m);
        // zt row k = eigenvector k of T; coefficients of exp(-iτT) e1.
        auto coeffs = [&](double step) {
            Vec c(m, 0.0);
            for (std::size_t k = 0; k < m; ++k) {
                const cplx ph = std::exp(cplx(0.0, -d[k] * step)) * zt[k * m];
                for (std::size_t i = 0; i < m; ++i) c[i] += ph * zt[k * m + i];
            }
            return c;
        };
        double step = std::abs(remaining) < std::abs(tau) ? remaining : std::copysign(std::abs(tau), remaining);
        if (happy) step = remaining;
        Vec c;
        bool first = true;
        while (true) {
            c = coeffs(step);
            const double err = happy ? 0.0 : beta0 * beta_last * std::abs(c[m - 1]);
            if (err <= opt.tol) break;
            step /= 2.0;
            first = false;
            if (std::abs(step) < min_step) throw Error(ErrorKind::propagation, "Krylov step size underflow");
        }
        std::fill(v.begin(), v.end(), cplx(0.0));
        for (std::size_t i = 0; i < m; ++i) {
            const cplx ci = beta0 * c[i];
            for (std::size_t r = 0; r < n; ++r) v[r] += ci * basis[i][r];
        }
        remaining -= step;
        if (std::abs(remaining) < min_step) remaining = 0.0;
        tau = first ? 2.0 * std::abs(step) : std::abs(step);
    }
}

}  // namespace

StateVector Propagator::evolve(const StateVector& psi0, double t) const {
    require(psi0.layout().total_dim() == layout_.total_dim(), ErrorKind::layout,
            "state and Hamiltonian dimensions differ");
    require(std::isfinite(t), ErrorKind::usage, "time must be finite");
    const auto& in = psi0.amplitudes();
    std::vector<cplx> out(in.size(), 0.0);
    for (const auto& bp : blocks_) {
        const auto& b = *bp;
        const std::size_t m = b.support.size();
        Vec x(m);
        bool nonzero = false;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] = in[b.support[i]];
            nonzero = nonzero || x[i] != cplx(0.0);
        }
        if (!nonzero) continue;
        switch (b.kind) {
            case Block::Kind::phase:
                x[0] *= std::exp(cplx(0.0, -b.energy * t));
                break;
            case Block::Kind::spectral: {
                Vec y(m, 0.0);
                for (std::size_t k = 0; k < m; ++k) {
                    const auto& v = b.vecs[k];
                    const cplx c = vdot(v, x) * std::exp(cplx(0.0, -b.values[k] * t));
                    for (std::size_t i = 0; i < m; ++i) y[i] += c * v[i];
                }
                x = std::move(y);
                break;
            }
            case Block::Kind::krylov:
                if (t != 0.0) krylov_evolve(b.h, b.hnorm, x, t, opt_);
                break;
        }
        for (std::size_t i = 0; i < m; ++i) out[b.support[i]] = x[i];
    }
    return StateVector::unchecked(psi0.layout(), std::move(out));
}

StateVector evolve(const SparseOperator& h, const StateVector& psi0, double t, const EvolveOptions& opt) {
    return Propagator(h, opt).evolve(psi0, t);
}

std::string to_string(DynamicsPreset p) {
    switch (p) {
        case DynamicsPreset::bell: return "bell";
        case DynamicsPreset::plus_coherent_1: return "plus_coherent_1";
        case DynamicsPreset::plus_coherent_2: return "plus_coherent_2";
    }
    return "?";
}

StateVector preset_state(const SystemSpec& spec, DynamicsPreset preset) {
    spec.validate();
    require(spec.topology == Topology::single, ErrorKind::usage, "dynamics presets need a single qubit and oscillator");
    const auto layout = spec.layout();
    const std::size_t nt = spec.oscillators[0].trunc;
    if (preset == DynamicsPreset::bell) {
        const std::size_t n = static_cast<std::size_t>(spec.qubits[0].n);
        require(n < nt, ErrorKind::degenerate_truncation, "truncation too small for the preset");
        const std::size_t g_n[] = {1, n};
        const std::size_t e_0[] = {0, 0};
        return superpose({{1.0, basis_state(layout, g_n)}, {1.0, basis_state(layout, e_0)}});
    }
    const double nbar = preset == DynamicsPreset::plus_coherent_1 ? 1.0 : 2.0;
    const auto plus = StateVector::normalized(HilbertLayout::qubit(), {1.0, 1.0});
    return product_state(plus, coherent_state(std::sqrt(nbar), nt));
}

std::vector<FidelitySample> dispersive_fidelity_run(const SystemSpec& spec, DynamicsPreset preset,
                                                    std::span<const double> t_chi, const EvolveOptions& opt) {
    const auto psi0 = preset_state(spec, preset);
    const Propagator exact(build_nR(spec), opt);
    const Propagator disp(build_dispersive(spec, Regime::rwa, false), opt);
    const auto& q = spec.qubits[0];
    const double chi = q.g * q.g / spec.delta(spec.edges().front());
    require(chi != 0.0, ErrorKind::usage, "dispersive fidelity needs g > 0");
    const std::size_t keep_q[] = {0};
    const std::size_t keep_o[] = {1};
    std::vector<FidelitySample> out;
    for (double tc : t_chi) {
        const double t = tc / std::abs(chi);
        const auto a = exact.evolve(psi0, t);
        const auto b = disp.evolve(psi0, t);
        FidelitySample s;
        s.t_chi = tc;
        s.fid_qubit = fidelity(partial_trace(a, keep_q), partial_trace(b, keep_q));
        s.fid_osc = fidelity(partial_trace(a, keep_o), partial_trace(b, keep_o));
        out.push_back(s);
    }
    return out;
}

}  // namespace nphoton
