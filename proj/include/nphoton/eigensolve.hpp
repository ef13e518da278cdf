#pragma once

#include "nphoton/errors.hpp"
#include "nphoton/fockspace.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

namespace nphoton {

// Eigenvector stored over its support (a sorted basis-index list shared by a block).
// A null support means the full space [0, dim).
struct EigenState {
    std::shared_ptr<const std::vector<std::size_t>> support;
    std::vector<cplx> amps;

    std::vector<cplx> dense(std::size_t dim) const;
    std::size_t basis_index(std::size_t i) const { return support ? (*support)[i] : i; }
};

// ⟨a|b⟩
cplx inner(const EigenState& a, const EigenState& b);

struct BareLabel {
    std::size_t index = 0;            // composite bare index
    std::vector<std::size_t> digits;  // per-subsystem indices (qubit digit 0 = |e⟩)
    double weight = 0.0;              // |⟨bare|v⟩|²
};

struct SpectrumResult {
    HilbertLayout layout;
    std::vector<double> energies;        // ascending
    std::vector<EigenState> states;      // empty when vectors were not requested
    std::vector<BareLabel> labels;       // empty until label_by_overlap
    std::vector<double> mean_photons;    // empty until computed

    std::size_t size() const noexcept { return energies.size(); }
    bool has_states() const noexcept { return !states.empty(); }
};

class IterationLimitError : public Error {
  public:
    IterationLimitError(const std::string& what, SpectrumResult partial);
    const SpectrumResult& partial() const noexcept { return partial_; }

  private:
    SpectrumResult partial_;
};

struct DenseOptions {
    bool vectors = true;
    std::size_t dense_limit = 4096;
    bool split_blocks = true;  // solve connected components of the sparsity graph separately
};

SpectrumResult eigh_dense(const SparseOperator& h, const DenseOptions& opt = {});

struct LanczosOptions {
    std::size_t max_iters = 0;  // 0 selects min(dim, 2000)
    std::size_t check_every = 10;
    std::uint64_t seed = 20240607;  // restart vectors after an invariant subspace
    bool vectors = true;
};

SpectrumResult eigs_lowest(const SparseOperator& h, std::size_t k, double tol = 1e-12,
                           const LanczosOptions& opt = {});

// Connected components of the off-diagonal sparsity pattern, each sorted; ordered by first index.
std::vector<std::vector<std::size_t>> connected_components(const SparseOperator& h);

double residual_norm(const SparseOperator& h, double energy, const EigenState& v);

SpectrumResult label_by_overlap(SpectrumResult result, const HilbertLayout& layout);
// ⟨v|N̂|v⟩ with N̂ the total photon number over all oscillator subsystems.
SpectrumResult with_mean_photons(SpectrumResult result);
SpectrumResult filter_by_mean_photon(const SpectrumResult& result, double nbar_max);

struct LevelCurve {
    BareLabel seed;
    std::vector<double> energies;          // one per grid point reached
    std::vector<double> overlaps;          // continuity overlap with the previous point (1 at the seed)
    std::vector<std::size_t> eig_index;    // eigen index at each grid point
    std::optional<std::size_t> terminated_at;  // first grid index where continuity failed
};

struct TrackOptions {
    double continuity_floor = 0.5;
    std::size_t max_levels = std::numeric_limits<std::size_t>::max();  // seeds: lowest eigenstates at the first point
};

std::vector<LevelCurve> track_levels(const std::vector<SpectrumResult>& sweep, const TrackOptions& opt = {});

}  // namespace nphoton
