#include "entbound/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace entbound {

std::size_t max_matrix_dim() {
  static const std::size_t cached = [] {
    if (const char* env = std::getenv("ENTBOUND_MAX_DIM")) {
      const long v = std::atol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{4096};
  }();
  return cached;
}

bool all_finite(const Matrix& a) { return a.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void check_dim_guard(Index rows, Index cols) {
  const auto cap = static_cast<Index>(max_matrix_dim());
  if (rows > cap || cols > cap) {
    throw DimensionError("matrix dimension " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " exceeds guard " +
                         std::to_string(cap));
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  check_dim_guard(a.rows() * b.rows(), a.cols() * b.cols());
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  check_dim_guard(a.size() * b.size(), 1);
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix partial_trace(const Matrix& rho, Index dimA, Index dimB,
                     Subsystem keep) {
  if (rho.rows() != rho.cols() || rho.rows() != dimA * dimB) {
    throw DimensionError("partial_trace: operator side " +
                         std::to_string(rho.rows()) + " does not match " +
                         std::to_string(dimA) + "x" + std::to_string(dimB));
  }
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dimA, dimA);
    for (Index a = 0; a < dimA; ++a)
      for (Index c = 0; c < dimA; ++c)
        for (Index b = 0; b < dimB; ++b)
          out(a, c) += rho(a * dimB + b, c * dimB + b);
    return out;
  }
  Matrix out = Matrix::Zero(dimB, dimB);
  for (Index b = 0; b < dimB; ++b)
    for (Index d = 0; d < dimB; ++d)
      for (Index a = 0; a < dimA; ++a)
        out(b, d) += rho(a * dimB + b, a * dimB + d);
  return out;
}

EigenSystem herm_eig(const Matrix& h) {
  if (h.rows() != h.cols())
    throw DimensionError("herm_eig: matrix is not square");
  if (!is_hermitian(h))
    throw ContractError("herm_eig: input is not Hermitian within 1e-10");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw NumericalError("herm_eig: eigensolver did not converge");
  // Eigen sorts ascending; flip to descending.
  EigenSystem out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

RealVector singular_values(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

Matrix dagger(const Matrix& a) { return a.adjoint(); }

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimensions disagree");
  return a * b;
}

Complex trace(const Matrix& a) {
  if (a.rows() != a.cols())
    throw DimensionError("trace: matrix is not square");
  return a.trace();
}

double frobenius_norm(const Matrix& a) { return a.norm(); }

Matrix identity(Index d) { return Matrix::Identity(d, d); }

}  // namespace entbound
