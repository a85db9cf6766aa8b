#pragma once

#include <Eigen/Dense>
#include <complex>

#include "entbound/common.hpp"

namespace entbound {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class Subsystem { A, B };

bool all_finite(const Matrix& a);
bool all_finite(const Vector& v);
bool is_hermitian(const Matrix& a, double tol = kStructuralTol);

// Throws DimensionError if a rows x cols matrix would exceed the guard.
void check_dim_guard(Index rows, Index cols);

// Kronecker product, row-major index convention: the entry at
// (i*b.rows()+k, j*b.cols()+l) equals a(i,j)*b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

// Reduced operator of a bipartite rho (side dimA*dimB, index a*dimB+b).
Matrix partial_trace(const Matrix& rho, Index dimA, Index dimB, Subsystem keep);

struct EigenSystem {
  RealVector values;  // descending
  Matrix vectors;     // column k pairs with values[k]
};

// Hermitian eigendecomposition; input checked against kStructuralTol.
EigenSystem herm_eig(const Matrix& h);

// Singular values, descending, nonnegative.
RealVector singular_values(const Matrix& a);

Matrix dagger(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);
Complex trace(const Matrix& a);
double frobenius_norm(const Matrix& a);

Matrix identity(Index d);

}  // namespace entbound
