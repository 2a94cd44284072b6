#pragma once

#include <span>
#include <vector>

#include "mca/matrix.hpp"

// Independent numerical oracles for the test suite. The dense eigensolver and
// pseudoinverse delegate to LAPACK so the checks share no code with the
// production path (one-sided Jacobi SVD + secular-equation solver).

namespace mca::testing {

struct SymEig {
  Vector values;   // descending
  Matrix vectors;  // column i belongs to values[i]
};

SymEig dense_symmetric_eig(const Matrix& a);

Matrix explicit_gram(const Matrix& x);        // X'X
Matrix explicit_modularity(const Matrix& x);  // X'X - dd'/(2m), formed densely
Matrix explicit_pinv(const Matrix& x);        // Moore-Penrose inverse via LAPACK SVD

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_transposed(const Matrix& a, const Matrix& b);  // a * b'
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Copy of v flipped so that its inner product with reference is nonnegative.
Vector aligned_to(std::span<const double> reference, std::span<const double> v);

/// Multiset equality after sorting, entrywise within tol.
bool multiset_close(Vector a, Vector b, double tol);

/// Best fraction of matching labels over all permutations of label values.
double label_agreement(const std::vector<int>& predicted, const std::vector<int>& truth,
                       int num_labels);

}  // namespace mca::testing
