#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entbound {

// Structural checks: hermiticity, normalization, orthonormality.
inline constexpr double kStructuralTol = 1e-10;
// Default tolerance for equality assertions in verification reports.
inline constexpr double kReportTol = 1e-9;
// Eigenvalues at or below this are treated as numerical zeros when an
// eigen-ensemble is consumed downstream (T-matrix construction).
inline constexpr double kEigenvalueCutoff = 1e-12;

// Shape mismatches and oversized constructions.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside its documented range (bad pair index, rank, weight...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A precondition on the value itself is violated (non-Hermitian input,
// wrong basis tag, non-PSD matrix).
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerical failure at run time (positivity loss, trace drift).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input files.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Largest allowed matrix side. Two-copy constructions square the working
// dimension, so this guard catches accidental dimension explosions early.
// Overridable through the ENTBOUND_MAX_DIM environment variable.
std::size_t max_matrix_dim();

}  // namespace entbound
