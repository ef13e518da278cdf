#include "nphoton/eigensolve.hpp"

#include "nphoton/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace nphoton {

std::vector<cplx> EigenState::dense(std::size_t dim) const {
    std::vector<cplx> v(dim, 0.0);
    for (std::size_t i = 0; i < amps.size(); ++i) v[basis_index(i)] = amps[i];
    return v;
}

cplx inner(const EigenState& a, const EigenState& b) {
    cplx s = 0.0;
    if (a.support == b.support) {
        for (std::size_t i = 0; i < a.amps.size(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
        return s;
    }
    std::size_t i = 0, j = 0;
    while (i < a.amps.size() && j < b.amps.size()) {
        const std::size_t ia = a.basis_index(i), jb = b.basis_index(j);
        if (ia == jb) s += std::conj(a.amps[i++]) * b.amps[j++];
        else if (ia < jb) ++i;
        else ++j;
    }
    return s;
}

IterationLimitError::IterationLimitError(const std::string& what, SpectrumResult partial)
    : Error(ErrorKind::iteration_limit, what), partial_(std::move(partial)) {}

std::vector<std::vector<std::size_t>> connected_components(const SparseOperator& h) {
    const std::size_t n = h.dim();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto rp = h.row_ptr();
    auto ci = h.col_idx();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) {
            std::size_t a = find(r), b = find(ci[p]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<std::size_t> slot(n, n);
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (slot[root] == n) {
            slot[root] = comps.size();
            comps.emplace_back();
        }
        comps[slot[root]].push_back(i);
    }
    return comps;
}

namespace {

void require_hermitian(const SparseOperator& h) {
    require(h.hermitian() || h.is_hermitian_exact(), ErrorKind::contract_violation,
            "eigensolver input must be Hermitian");
}

}  // namespace

SpectrumResult eigh_dense(const SparseOperator& h, const DenseOptions& opt) {
    require_hermitian(h);
    require(h.dim() <= opt.dense_limit, ErrorKind::capacity,
            "dimension " + std::to_string(h.dim()) + " exceeds dense_limit; use eigs_lowest");
    const std::size_t n = h.dim();
    std::vector<std::vector<std::size_t>> comps;
    if (opt.split_blocks) {
        comps = connected_components(h);
    } else {
        comps.emplace_back(n);
        std::iota(comps[0].begin(), comps[0].end(), 0);
    }

    struct Pair {
        double e;
        EigenState s;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n);
    std::vector<std::size_t> local(n);
    auto rp = h.row_ptr();
    auto ci = h.col_idx();
    auto vals = h.values();
    for (auto& comp : comps) {
        const std::size_t m = comp.size();
        for (std::size_t i = 0; i < m; ++i) local[comp[i]] = i;
        bool real = true;
        for (auto r : comp)
            for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) real = real && vals[p].imag() == 0.0;
        auto support = std::make_shared<const std::vector<std::size_t>>(std::move(comp));
        const bool full = !opt.split_blocks;
        if (real) {
            std::vector<double> a(m * m, 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                const std::size_t r = (*support)[i];
                for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) a[i * m + local[ci[p]]] = vals[p].real();
            }
            auto ed = eigh_real(std::move(a), m, opt.vectors);
            for (std::size_t i = 0; i < m; ++i) {
                Pair pr{ed.values[i], {}};
                if (opt.vectors) {
                    pr.s.support = full ? nullptr : support;
                    pr.s.amps.assign(ed.vectors[i].begin(), ed.vectors[i].end());
                }
                pairs.push_back(std::move(pr));
            }
        } else {
            CMatrix a(m, m);
            for (std::size_t i = 0; i < m; ++i) {
                const std::size_t r = (*support)[i];
                for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) a(i, local[ci[p]]) = vals[p];
            }
            auto ed = eigh(std::move(a), opt.vectors);
            for (std::size_t i = 0; i < m; ++i) {
                Pair pr{ed.values[i], {}};
                if (opt.vectors) {
                    pr.s.support = full ? nullptr : support;
                    pr.s.amps = std::move(ed.vectors[i]);
                }
                pairs.push_back(std::move(pr));
            }
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.e < b.e; });
    SpectrumResult out;
    out.layout = h.layout();
    out.energies.reserve(n);
    for (auto& p : pairs) {
        out.energies.push_back(p.e);
        if (opt.vectors) out.states.push_back(std::move(p.s));
    }
    return out;
}

double residual_norm(const SparseOperator& h, double energy, const EigenState& v) {
    const auto x = v.dense(h.dim());
    auto y = h.apply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += std::norm(y[i] - energy * x[i]);
    return std::sqrt(s);
}

SpectrumResult label_by_overlap(SpectrumResult result, const HilbertLayout& layout) {
    require(result.has_states(), ErrorKind::usage, "labeling needs eigenvectors");
    const std::size_t n = result.size();
    const std::size_t dim = layout.total_dim();
    struct Cand {
        double w;
        std::size_t eig, bare;
    };
    constexpr double kScreen = 1e-3;
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = result.states[i];
        for (std::size_t p = 0; p < s.amps.size(); ++p) {
            const double w = std::norm(s.amps[p]);
            if (w >= kScreen) cands.push_back({w, i, s.basis_index(p)});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return std::tie(b.w, a.eig, a.bare) < std::tie(a.w, b.eig, b.bare);
    });
    std::vector<bool> eig_done(n, false), bare_used(dim, false);
    result.labels.assign(n, {});
    std::size_t assigned = 0;
    for (const auto& c : cands) {
        if (eig_done[c.eig] || bare_used[c.bare]) continue;
        eig_done[c.eig] = true;
        bare_used[c.bare] = true;
        result.labels[c.eig] = {c.bare, layout.decode(c.bare), c.w};
        ++assigned;
    }
    // States with no unused component above the screen take their largest unused overlap.
    for (std::size_t i = 0; i < n && assigned < n; ++i) {
        if (eig_done[i]) continue;
        const auto& s = result.states[i];
        double best = -1.0;
        std::size_t bi = dim;
        for (std::size_t p = 0; p < s.amps.size(); ++p) {
            const std::size_t b = s.basis_index(p);
            const double w = std::norm(s.amps[p]);
            if (!bare_used[b] && w > best) best = w, bi = b;
        }
        if (bi == dim)
            for (std::size_t b = 0; b < dim; ++b)
                if (!bare_used[b]) {
                    bi = b, best = 0.0;
                    break;
                }
        if (bi == dim) continue;
        eig_done[i] = true;
        bare_used[bi] = true;
        result.labels[i] = {bi, layout.decode(bi), best};
        ++assigned;
    }
    return result;
}

SpectrumResult with_mean_photons(SpectrumResult result) {
    require(result.has_states(), ErrorKind::usage, "mean photon numbers need eigenvectors");
    const auto& layout = result.layout;
    const auto oscs = layout.indices_of(SubsystemKind::oscillator);
    const std::size_t dim = layout.total_dim();
    std::vector<double> photons(dim, 0.0);
    for (std::size_t b = 0; b < dim; ++b) {
        const auto d = layout.decode(b);
        double s = 0.0;
        for (auto k : oscs) s += static_cast<double>(d[k]);
        photons[b] = s;
    }
    result.mean_photons.resize(result.size());
    for (std::size_t i = 0; i < result.size(); ++i) {
        const auto& s = result.states[i];
        double m = 0.0;
        for (std::size_t p = 0; p < s.amps.size(); ++p) m += std::norm(s.amps[p]) * photons[s.basis_index(p)];
        result.mean_photons[i] = m;
    }
    return result;
}

SpectrumResult filter_by_mean_photon(const SpectrumResult& result, double nbar_max) {
    SpectrumResult src = result.mean_photons.empty() ? with_mean_photons(result) : result;
    SpectrumResult out;
    out.layout = src.layout;
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (!(src.mean_photons[i] < nbar_max)) continue;
        out.energies.push_back(src.energies[i]);
        out.states.push_back(src.states[i]);
        out.mean_photons.push_back(src.mean_photons[i]);
        if (!src.labels.empty()) out.labels.push_back(src.labels[i]);
    }
    return out;
}

}  // namespace nphoton
