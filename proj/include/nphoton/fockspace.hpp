#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace nphoton {

using cplx = std::complex<double>;

enum class SubsystemKind { qubit, oscillator, generic };

struct Subsystem {
    SubsystemKind kind;
    std::size_t dim;
    bool operator==(const Subsystem&) const = default;
};

// Ordered tensor structure; composite index is row-major over the subsystem list.
class HilbertLayout {
  public:
    HilbertLayout() = default;
    explicit HilbertLayout(std::vector<Subsystem> subsystems);

    static HilbertLayout qubit();
    static HilbertLayout oscillator(std::size_t trunc);
    static HilbertLayout generic(std::size_t dim);

    const std::vector<Subsystem>& subsystems() const noexcept { return subs_; }
    std::size_t size() const noexcept { return subs_.size(); }
    const Subsystem& operator[](std::size_t i) const { return subs_.at(i); }
    std::size_t total_dim() const noexcept { return total_; }

    std::vector<std::size_t> decode(std::size_t index) const;
    std::size_t encode(std::span<const std::size_t> digits) const;

    // Layout of the kept subsystems, in original order.
    HilbertLayout reduced(std::span<const std::size_t> keep) const;
    std::vector<std::size_t> indices_of(SubsystemKind kind) const;

    bool operator==(const HilbertLayout& o) const { return subs_ == o.subs_; }

  private:
    std::vector<Subsystem> subs_;
    std::size_t total_ = 1;
};

HilbertLayout concat(const HilbertLayout& a, const HilbertLayout& b);

struct Triplet {
    std::size_t row;
    std::size_t col;
    cplx value;
};

// Compressed-row complex matrix. Immutable after construction.
class SparseOperator {
  public:
    SparseOperator() = default;
    // Canonicalizes: sorts, sums duplicates in input order, drops exact zeros.
    SparseOperator(HilbertLayout layout, std::vector<Triplet> triplets);

    const HilbertLayout& layout() const noexcept { return layout_; }
    std::size_t dim() const noexcept { return layout_.total_dim(); }
    std::size_t nnz() const noexcept { return vals_.size(); }
    bool hermitian() const noexcept { return hermitian_; }

    std::span<const std::size_t> row_ptr() const noexcept { return rowptr_; }
    std::span<const std::size_t> col_idx() const noexcept { return cols_; }
    std::span<const cplx> values() const noexcept { return vals_; }

    cplx at(std::size_t row, std::size_t col) const;
    std::vector<Triplet> triplets() const;

    // y = A x
    void apply(std::span<const cplx> x, std::span<cplx> y) const;
    std::vector<cplx> apply(std::span<const cplx> x) const;

    SparseOperator dagger() const;
    bool is_hermitian_exact() const;
    // Sets the hermitian flag after an exact entrywise check; throws contract-violation otherwise.
    SparseOperator certified() const;

    double norm1() const;
    bool is_diagonal() const;
    std::vector<cplx> diagonal() const;
    double max_abs_diff(const SparseOperator& other) const;

    // Same entries, relabeled tensor structure (total dims must agree).
    SparseOperator relabeled(HilbertLayout layout) const;

  private:
    HilbertLayout layout_;
    std::vector<std::size_t> rowptr_{0};
    std::vector<std::size_t> cols_;
    std::vector<cplx> vals_;
    bool hermitian_ = false;

    friend SparseOperator operator+(const SparseOperator&, const SparseOperator&);
    friend SparseOperator operator*(const SparseOperator&, const SparseOperator&);
    friend SparseOperator operator*(cplx, const SparseOperator&);
    friend SparseOperator kron(const SparseOperator&, const SparseOperator&);
};

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
SparseOperator operator*(cplx s, const SparseOperator& a);
SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);

SparseOperator identity(const HilbertLayout& layout);
SparseOperator identity(std::size_t dim);
SparseOperator zero(const HilbertLayout& layout);
SparseOperator diagonal_operator(const HilbertLayout& layout, std::span<const double> diag);

SparseOperator destroy(std::size_t dim);
SparseOperator create(std::size_t dim);
SparseOperator number(std::size_t dim);

enum class Pauli { x, y, z, plus, minus };
SparseOperator pauli(Pauli which);

SparseOperator kron(const SparseOperator& a, const SparseOperator& b);
SparseOperator op_pow(const SparseOperator& a, unsigned n);
SparseOperator embed(const HilbertLayout& layout,
                     std::vector<std::pair<std::size_t, SparseOperator>> factors);

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);
SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b);
// t + t†, exactly Hermitian by construction.
SparseOperator plus_dagger(const SparseOperator& t);

}  // namespace nphoton
