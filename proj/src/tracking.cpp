#include "nphoton/eigensolve.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace nphoton {

std::vector<LevelCurve> track_levels(const std::vector<SpectrumResult>& sweep, const TrackOptions& opt) {
    std::vector<LevelCurve> curves;
    if (sweep.empty()) return curves;
    for (const auto& r : sweep) require(r.has_states(), ErrorKind::usage, "tracking needs eigenvectors");
    const SpectrumResult first = sweep[0].labels.empty() ? label_by_overlap(sweep[0], sweep[0].layout) : sweep[0];
    const std::size_t nseed = std::min(opt.max_levels, first.size());
    std::vector<const EigenState*> current(nseed);
    for (std::size_t i = 0; i < nseed; ++i) {
        LevelCurve c;
        c.seed = first.labels[i];
        c.energies.push_back(first.energies[i]);
        c.overlaps.push_back(1.0);
        c.eig_index.push_back(i);
        curves.push_back(std::move(c));
        current[i] = &sweep[0].states[i];
    }

    for (std::size_t p = 1; p < sweep.size(); ++p) {
        const auto& res = sweep[p];
        require(res.layout.total_dim() == sweep[0].layout.total_dim(), ErrorKind::layout,
                "sweep results must share a layout");
        const std::size_t dim = res.layout.total_dim();
        // Group states by shared support so each curve only meets states it can overlap.
        std::map<const void*, std::size_t> group_id;
        std::vector<std::vector<std::size_t>> groups;
        std::vector<std::size_t> group_of(dim, static_cast<std::size_t>(-1));
        for (std::size_t s = 0; s < res.size(); ++s) {
            const void* key = res.states[s].support.get();
            auto [it, fresh] = group_id.try_emplace(key, groups.size());
            if (fresh) {
                groups.emplace_back();
                const auto& st = res.states[s];
                for (std::size_t q = 0; q < st.amps.size(); ++q) group_of[st.basis_index(q)] = it->second;
            }
            groups[it->second].push_back(s);
        }

        struct Cand {
            double w;
            std::size_t curve, state;
        };
        std::vector<Cand> cands;
        for (std::size_t c = 0; c < curves.size(); ++c) {
            if (curves[c].terminated_at) continue;
            const auto& a = *current[c];
            std::vector<std::size_t> touched;
            for (std::size_t q = 0; q < a.amps.size(); ++q) {
                if (a.amps[q] == cplx(0.0)) continue;
                const std::size_t gid = group_of[a.basis_index(q)];
                if (gid != static_cast<std::size_t>(-1)) touched.push_back(gid);
            }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            for (auto gid : touched)
                for (auto s : groups[gid]) cands.push_back({std::norm(inner(a, res.states[s])), c, s});
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
            return std::tie(y.w, x.curve, x.state) < std::tie(x.w, y.curve, y.state);
        });
        std::vector<bool> curve_done(curves.size(), false), state_used(res.size(), false);
        for (const auto& cd : cands) {
            if (curve_done[cd.curve] || state_used[cd.state]) continue;
            if (cd.w < opt.continuity_floor) break;
            curve_done[cd.curve] = true;
            state_used[cd.state] = true;
            auto& cv = curves[cd.curve];
            cv.energies.push_back(res.energies[cd.state]);
            cv.overlaps.push_back(cd.w);
            cv.eig_index.push_back(cd.state);
            current[cd.curve] = &res.states[cd.state];
        }
        for (std::size_t c = 0; c < curves.size(); ++c)
            if (!curves[c].terminated_at && !curve_done[c]) curves[c].terminated_at = p;
    }
    return curves;
}

}  // namespace nphoton
