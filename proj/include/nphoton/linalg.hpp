#pragma once

#include "nphoton/fockspace.hpp"

#include <cstddef>
#include <vector>

namespace nphoton {

// Row-major dense complex matrix.
struct CMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;

    CMatrix() = default;
    CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    cplx& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

CMatrix to_dense(const SparseOperator& a);
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
cplx trace(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

template <class T>
struct EigenDecompT {
    std::vector<double> values;           // ascending
    std::vector<std::vector<T>> vectors;  // vectors[i] pairs with values[i]; empty if not requested
};
using EigenDecomp = EigenDecompT<cplx>;
using RealEigenDecomp = EigenDecompT<double>;

// Hermitian eigendecomposition: Householder tridiagonalization + implicit-shift QL.
// The input is assumed Hermitian; callers certify it.
EigenDecomp eigh(CMatrix a, bool want_vectors = true);
// Real symmetric variant on a row-major n×n buffer.
RealEigenDecomp eigh_real(std::vector<double> a, std::size_t n, bool want_vectors = true);

// Implicit QL on a real symmetric tridiagonal matrix.
// d: diagonal (size n), e: subdiagonal with e[i] = T(i+1,i), size n (e[n-1] ignored).
// If zt is non-null it holds n rows of ncomp entries; row i is rotated alongside eigenvector i,
// so seeding row i with selected components of e_i tracks those components of every eigenvector.
// ncomp = 0 means n. Eigenvalues are returned unsorted in d.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>* zt,
                    std::size_t ncomp = 0);

}  // namespace nphoton
