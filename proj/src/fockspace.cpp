#include "nphoton/fockspace.hpp"

#include "nphoton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nphoton {

HilbertLayout::HilbertLayout(std::vector<Subsystem> subsystems) : subs_(std::move(subsystems)) {
    total_ = 1;
    for (const auto& s : subs_) {
        if (s.kind == SubsystemKind::qubit)
            require(s.dim == 2, ErrorKind::invalid_dimension, "qubit subsystem must have dim 2");
        else if (s.kind == SubsystemKind::oscillator)
            require(s.dim >= 2, ErrorKind::invalid_dimension, "oscillator truncation must be >= 2");
        else
            require(s.dim >= 1, ErrorKind::invalid_dimension, "subsystem dim must be positive");
        if (s.dim != 0 && total_ > std::numeric_limits<std::size_t>::max() / s.dim)
            throw Error(ErrorKind::capacity, "total dimension overflows the index type");
        total_ *= s.dim;
    }
}

HilbertLayout HilbertLayout::qubit() { return HilbertLayout({{SubsystemKind::qubit, 2}}); }
HilbertLayout HilbertLayout::oscillator(std::size_t trunc) {
    return HilbertLayout({{SubsystemKind::oscillator, trunc}});
}
HilbertLayout HilbertLayout::generic(std::size_t dim) {
    return HilbertLayout({{SubsystemKind::generic, dim}});
}

std::vector<std::size_t> HilbertLayout::decode(std::size_t index) const {
    require(index < total_, ErrorKind::usage, "composite index out of range");
    std::vector<std::size_t> digits(subs_.size());
    for (std::size_t i = subs_.size(); i-- > 0;) {
        digits[i] = index % subs_[i].dim;
        index /= subs_[i].dim;
    }
    return digits;
}

std::size_t HilbertLayout::encode(std::span<const std::size_t> digits) const {
    require(digits.size() == subs_.size(), ErrorKind::layout, "digit count does not match layout");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < subs_.size(); ++i) {
        require(digits[i] < subs_[i].dim, ErrorKind::usage, "digit out of range");
        idx = idx * subs_[i].dim + digits[i];
    }
    return idx;
}

HilbertLayout HilbertLayout::reduced(std::span<const std::size_t> keep) const {
    std::vector<std::size_t> k(keep.begin(), keep.end());
    std::sort(k.begin(), k.end());
    require(std::adjacent_find(k.begin(), k.end()) == k.end(), ErrorKind::usage,
            "duplicate subsystem index");
    std::vector<Subsystem> out;
    for (auto i : k) {
        require(i < subs_.size(), ErrorKind::usage, "subsystem index out of range");
        out.push_back(subs_[i]);
    }
    return HilbertLayout(std::move(out));
}

std::vector<std::size_t> HilbertLayout::indices_of(SubsystemKind kind) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < subs_.size(); ++i)
        if (subs_[i].kind == kind) out.push_back(i);
    return out;
}

HilbertLayout concat(const HilbertLayout& a, const HilbertLayout& b) {
    auto s = a.subsystems();
    s.insert(s.end(), b.subsystems().begin(), b.subsystems().end());
    return HilbertLayout(std::move(s));
}

SparseOperator::SparseOperator(HilbertLayout layout, std::vector<Triplet> triplets)
    : layout_(std::move(layout)) {
    const std::size_t n = layout_.total_dim();
    for (const auto& t : triplets)
        require(t.row < n && t.col < n, ErrorKind::usage, "entry index outside total_dim");
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& x, const Triplet& y) {
        return x.row != y.row ? x.row < y.row : x.col < y.col;
    });
    rowptr_.assign(n + 1, 0);
    cols_.reserve(triplets.size());
    vals_.reserve(triplets.size());
    std::size_t i = 0;
    while (i < triplets.size()) {
        std::size_t j = i;
        cplx sum = 0.0;
        while (j < triplets.size() && triplets[j].row == triplets[i].row &&
               triplets[j].col == triplets[i].col)
            sum += triplets[j++].value;
        if (sum != cplx(0.0)) {
            cols_.push_back(triplets[i].col);
            vals_.push_back(sum);
            ++rowptr_[triplets[i].row + 1];
        }
        i = j;
    }
    for (std::size_t r = 0; r < n; ++r) rowptr_[r + 1] += rowptr_[r];
}

cplx SparseOperator::at(std::size_t row, std::size_t col) const {
    require(row < dim() && col < dim(), ErrorKind::usage, "index out of range");
    auto b = cols_.begin() + static_cast<std::ptrdiff_t>(rowptr_[row]);
    auto e = cols_.begin() + static_cast<std::ptrdiff_t>(rowptr_[row + 1]);
    auto it = std::lower_bound(b, e, col);
    if (it == e || *it != col) return 0.0;
    return vals_[static_cast<std::size_t>(it - cols_.begin())];
}

std::vector<Triplet> SparseOperator::triplets() const {
    std::vector<Triplet> out;
    out.reserve(nnz());
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t p = rowptr_[r]; p < rowptr_[r + 1]; ++p) out.push_back({r, cols_[p], vals_[p]});
    return out;
}

void SparseOperator::apply(std::span<const cplx> x, std::span<cplx> y) const {
    require(x.size() == dim() && y.size() == dim(), ErrorKind::layout, "vector length mismatch");
    const std::size_t n = dim();
    for (std::size_t r = 0; r < n; ++r) {
        cplx acc = 0.0;
        for (std::size_t p = rowptr_[r]; p < rowptr_[r + 1]; ++p) acc += vals_[p] * x[cols_[p]];
        y[r] = acc;
    }
}

std::vector<cplx> SparseOperator::apply(std::span<const cplx> x) const {
    std::vector<cplx> y(dim());
    apply(x, y);
    return y;
}

SparseOperator SparseOperator::dagger() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t p = rowptr_[r]; p < rowptr_[r + 1]; ++p)
            t.push_back({cols_[p], r, std::conj(vals_[p])});
    SparseOperator out(layout_, std::move(t));
    out.hermitian_ = hermitian_;
    return out;
}

bool SparseOperator::is_hermitian_exact() const {
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t p = rowptr_[r]; p < rowptr_[r + 1]; ++p)
            if (at(cols_[p], r) != std::conj(vals_[p])) return false;
    return true;
}

SparseOperator SparseOperator::certified() const {
    require(is_hermitian_exact(), ErrorKind::contract_violation, "operator is not exactly Hermitian");
    SparseOperator out = *this;
    out.hermitian_ = true;
    return out;
}

double SparseOperator::norm1() const {
    std::vector<double> colsum(dim(), 0.0);
    for (std::size_t p = 0; p < nnz(); ++p) colsum[cols_[p]] += std::abs(vals_[p]);
    double m = 0.0;
    for (double v : colsum) m = std::max(m, v);
    return m;
}

bool SparseOperator::is_diagonal() const {
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t p = rowptr_[r]; p < rowptr_[r + 1]; ++p)
            if (cols_[p] != r) return false;
    return true;
}

std::vector<cplx> SparseOperator::diagonal() const {
    std::vector<cplx> d(dim(), 0.0);
    for (std::size_t r = 0; r < dim(); ++r) d[r] = at(r, r);
    return d;
}

double SparseOperator::max_abs_diff(const SparseOperator& other) const {
    require(dim() == other.dim(), ErrorKind::layout, "dimension mismatch");
    double m = 0.0;
    for (const auto& t : (*this - other).triplets()) m = std::max(m, std::abs(t.value));
    return m;
}

SparseOperator SparseOperator::relabeled(HilbertLayout layout) const {
    require(layout.total_dim() == dim(), ErrorKind::layout, "relabel must preserve total_dim");
    SparseOperator out = *this;
    out.layout_ = std::move(layout);
    return out;
}

namespace {

SparseOperator combine(const SparseOperator& a, const SparseOperator& b, double sb) {
    require(a.dim() == b.dim(), ErrorKind::layout, "operand dimensions differ");
    auto ta = a.triplets();
    for (const auto& t : b.triplets()) ta.push_back({t.row, t.col, sb * t.value});
    return SparseOperator(a.layout(), std::move(ta));
}

}  // namespace

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
    SparseOperator out = combine(a, b, 1.0);
    out.hermitian_ = a.hermitian_ && b.hermitian_ && out.is_hermitian_exact();
    return out;
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
    SparseOperator out = combine(a, b, -1.0);
    return out.is_hermitian_exact() && a.hermitian() && b.hermitian() ? out.certified() : out;
}

SparseOperator operator*(cplx s, const SparseOperator& a) {
    SparseOperator out = a;
    for (auto& v : out.vals_) v *= s;
    if (s == cplx(0.0)) return zero(a.layout());
    out.hermitian_ = a.hermitian_ && s.imag() == 0.0;
    return out;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    require(a.dim() == b.dim(), ErrorKind::layout, "operand dimensions differ");
    const std::size_t n = a.dim();
    std::vector<cplx> acc(n, 0.0);
    std::vector<std::size_t> mark(n, std::numeric_limits<std::size_t>::max());
    std::vector<std::size_t> touched;
    std::vector<Triplet> out;
    for (std::size_t r = 0; r < n; ++r) {
        touched.clear();
        for (std::size_t p = a.rowptr_[r]; p < a.rowptr_[r + 1]; ++p) {
            const std::size_t k = a.cols_[p];
            for (std::size_t q = b.rowptr_[k]; q < b.rowptr_[k + 1]; ++q) {
                const std::size_t c = b.cols_[q];
                if (mark[c] != r) {
                    mark[c] = r;
                    acc[c] = 0.0;
                    touched.push_back(c);
                }
                acc[c] += a.vals_[p] * b.vals_[q];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (auto c : touched) out.push_back({r, c, acc[c]});
    }
    return SparseOperator(a.layout(), std::move(out));
}

SparseOperator identity(const HilbertLayout& layout) {
    std::vector<Triplet> t;
    t.reserve(layout.total_dim());
    for (std::size_t i = 0; i < layout.total_dim(); ++i) t.push_back({i, i, 1.0});
    return SparseOperator(layout, std::move(t)).certified();
}

SparseOperator identity(std::size_t dim) {
    require(dim >= 1, ErrorKind::invalid_dimension, "identity dim must be positive");
    return identity(HilbertLayout::generic(dim));
}

SparseOperator zero(const HilbertLayout& layout) { return SparseOperator(layout, {}).certified(); }

SparseOperator diagonal_operator(const HilbertLayout& layout, std::span<const double> diag) {
    require(diag.size() == layout.total_dim(), ErrorKind::layout, "diagonal length mismatch");
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < diag.size(); ++i) t.push_back({i, i, diag[i]});
    return SparseOperator(layout, std::move(t)).certified();
}

SparseOperator destroy(std::size_t dim) {
    require(dim >= 2, ErrorKind::invalid_dimension, "oscillator dim must be >= 2");
    std::vector<Triplet> t;
    for (std::size_t j = 1; j < dim; ++j) t.push_back({j - 1, j, std::sqrt(static_cast<double>(j))});
    return SparseOperator(HilbertLayout::oscillator(dim), std::move(t));
}

SparseOperator create(std::size_t dim) { return destroy(dim).dagger(); }

SparseOperator number(std::size_t dim) {
    require(dim >= 2, ErrorKind::invalid_dimension, "oscillator dim must be >= 2");
    std::vector<Triplet> t;
    for (std::size_t j = 1; j < dim; ++j) t.push_back({j, j, static_cast<double>(j)});
    return SparseOperator(HilbertLayout::oscillator(dim), std::move(t)).certified();
}

SparseOperator pauli(Pauli which) {
    const auto q = HilbertLayout::qubit();
    const cplx i(0.0, 1.0);
    switch (which) {
        case Pauli::x: return SparseOperator(q, {{0, 1, 1.0}, {1, 0, 1.0}}).certified();
        case Pauli::y: return SparseOperator(q, {{0, 1, -i}, {1, 0, i}}).certified();
        case Pauli::z: return SparseOperator(q, {{0, 0, 1.0}, {1, 1, -1.0}}).certified();
        case Pauli::plus: return SparseOperator(q, {{0, 1, 1.0}});
        case Pauli::minus: return SparseOperator(q, {{1, 0, 1.0}});
    }
    throw Error(ErrorKind::usage, "unknown Pauli operator");
}

SparseOperator kron(const SparseOperator& a, const SparseOperator& b) {
    HilbertLayout layout = concat(a.layout(), b.layout());
    const std::size_t nb = b.dim();
    std::vector<Triplet> t;
    t.reserve(a.nnz() * b.nnz());
    for (std::size_t ra = 0; ra < a.dim(); ++ra)
        for (std::size_t rb = 0; rb < nb; ++rb)
            for (std::size_t p = a.rowptr_[ra]; p < a.rowptr_[ra + 1]; ++p)
                for (std::size_t q = b.rowptr_[rb]; q < b.rowptr_[rb + 1]; ++q)
                    t.push_back({ra * nb + rb, a.cols_[p] * nb + b.cols_[q], a.vals_[p] * b.vals_[q]});
    SparseOperator out(std::move(layout), std::move(t));
    out.hermitian_ = a.hermitian_ && b.hermitian_ && out.is_hermitian_exact();
    return out;
}

SparseOperator op_pow(const SparseOperator& a, unsigned n) {
    SparseOperator out = identity(a.layout());
    for (unsigned i = 0; i < n; ++i) out = out * a;
    return out;
}

SparseOperator embed(const HilbertLayout& layout,
                     std::vector<std::pair<std::size_t, SparseOperator>> factors) {
    std::vector<const SparseOperator*> slot(layout.size(), nullptr);
    for (const auto& [idx, op] : factors) {
        require(idx < layout.size(), ErrorKind::usage, "subsystem index out of range");
        require(slot[idx] == nullptr, ErrorKind::usage, "duplicate subsystem index in embed");
        require(op.dim() == layout[idx].dim, ErrorKind::layout,
                "factor dim " + std::to_string(op.dim()) + " does not match subsystem " +
                    std::to_string(idx));
        slot[idx] = &op;
    }
    if (layout.size() == 0) return identity(layout);
    auto piece = [&](std::size_t i) {
        HilbertLayout li({layout[i]});
        return slot[i] ? slot[i]->relabeled(li) : identity(li);
    };
    SparseOperator out = piece(0);
    for (std::size_t i = 1; i < layout.size(); ++i) out = kron(out, piece(i));
    return out;
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) { return a * b - b * a; }
SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b) {
    return a * b + b * a;
}

SparseOperator plus_dagger(const SparseOperator& t) { return (t + t.dagger()).certified(); }

}  // namespace nphoton
