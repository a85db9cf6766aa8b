#include "entbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace entbound {

void validate_pair(PairIndex pair, Index dim) {
  if (pair.lo < 0 || pair.lo >= pair.hi || pair.hi >= dim)
    throw DomainError("pair (" + std::to_string(pair.lo) + "," +
                      std::to_string(pair.hi) + ") invalid for dimension " +
                      std::to_string(dim));
}

namespace {

void validate_basis_block(const Matrix& basis, Index dim, const char* side) {
  if (basis.rows() != dim || basis.cols() != dim)
    throw DimensionError(std::string("basis") + side + " must be " +
                         std::to_string(dim) + "x" + std::to_string(dim));
  const Matrix gram = basis.adjoint() * basis;
  if ((gram - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() >
      kStructuralTol)
    throw ContractError(std::string("basis") + side +
                        " columns are not orthonormal within 1e-10");
}

void validate_basis(const LocalBasisPair& basis, Index dimA, Index dimB) {
  validate_basis_block(basis.basisA, dimA, "A");
  validate_basis_block(basis.basisB, dimB, "B");
}

// Canonical two-copy index of |a>_A |b>_B |a'>_A' |b'>_B'.
inline Index canonical_index(Index a, Index b, Index ap, Index bp, Index dimA,
                             Index dimB) {
  return (a * dimB + b) * (dimA * dimB) + (ap * dimB + bp);
}

// Index map: grouped (AA')(BB') position -> canonical (AB)(A'B') position.
std::vector<Index> grouped_to_canonical_map(Index dimA, Index dimB) {
  std::vector<Index> map(
      static_cast<std::size_t>(dimA * dimA * dimB * dimB));
  for (Index a = 0; a < dimA; ++a)
    for (Index ap = 0; ap < dimA; ++ap)
      for (Index b = 0; b < dimB; ++b)
        for (Index bp = 0; bp < dimB; ++bp) {
          const Index grouped = (a * dimA + ap) * (dimB * dimB) + b * dimB + bp;
          map[static_cast<std::size_t>(grouped)] =
              canonical_index(a, b, ap, bp, dimA, dimB);
        }
  return map;
}

Matrix permute_grouped_operator(const Matrix& grouped, Index dimA,
                                Index dimB) {
  const auto map = grouped_to_canonical_map(dimA, dimB);
  const Index n = grouped.rows();
  Matrix out(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c)
      out(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]) =
          grouped(r, c);
  return out;
}

// Antisymmetric projector (I - SWAP)/2 on H_d (x) H_d.
Matrix antisymmetric_projector(Index d) {
  Matrix swap = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
  return 0.5 * (Matrix::Identity(d * d, d * d) - swap);
}

struct PairProjectors {
  Matrix minus;  // P-_{ij}
  Matrix plus;   // P+_{ij}, including the |ii><ii| and |jj><jj| terms
};

PairProjectors pair_projectors(const Matrix& basis, PairIndex pair) {
  const Vector lo = basis.col(pair.lo);
  const Vector hi = basis.col(pair.hi);
  const Vector asym = kron(lo, hi) - kron(hi, lo);
  const Vector sym = kron(lo, hi) + kron(hi, lo);
  const Vector ll = kron(lo, lo);
  const Vector hh = kron(hi, hi);
  PairProjectors out;
  out.minus = 0.5 * (asym * asym.adjoint());
  out.plus = 0.5 * (sym * sym.adjoint()) + ll * ll.adjoint() +
             hh * hh.adjoint();
  return out;
}

}  // namespace

LocalBasisPair LocalBasisPair::computational(Index dimA, Index dimB) {
  return {Matrix::Identity(dimA, dimA), Matrix::Identity(dimB, dimB),
          kComputationalTag};
}

LocalBasisPair LocalBasisPair::schmidt(const SchmidtDecomposition& schmidt) {
  return {schmidt.basisA, schmidt.basisB, kSchmidtTag};
}

double concurrence_pure(const PureState& psi) {
  const Matrix m = psi.as_matrix();
  // tr(rho_A^2) = ||m^dag m||_F^2; use the smaller Gram matrix.
  const Matrix gram = (psi.dimA() <= psi.dimB()) ? Matrix(m * m.adjoint())
                                                 : Matrix(m.adjoint() * m);
  const double purity = gram.squaredNorm();
  const double value = 2.0 * (psi.norm2() * psi.norm2() - purity);
  return std::sqrt(std::max(0.0, value));
}

Matrix grouped_to_canonical_permutation(Index dimA, Index dimB) {
  const auto map = grouped_to_canonical_map(dimA, dimB);
  const Index n = static_cast<Index>(map.size());
  Matrix perm = Matrix::Zero(n, n);
  for (Index g = 0; g < n; ++g) perm(map[static_cast<std::size_t>(g)], g) = 1.0;
  return perm;
}

Vector chi_vector(PairIndex pairA, PairIndex pairB,
                  const LocalBasisPair& basis, Index dimA, Index dimB) {
  validate_pair(pairA, dimA);
  validate_pair(pairB, dimB);
  validate_basis(basis, dimA, dimB);
  check_dim_guard(dimA * dimB * dimA * dimB, 1);
  const Vector ui = basis.basisA.col(pairA.lo);
  const Vector uj = basis.basisA.col(pairA.hi);
  const Vector vm = basis.basisB.col(pairB.lo);
  const Vector vn = basis.basisB.col(pairB.hi);
  // Expanded into (AB)(A'B') product terms; no permutation needed.
  return kron(kron(ui, vm), kron(uj, vn)) - kron(kron(ui, vn), kron(uj, vm)) -
         kron(kron(uj, vm), kron(ui, vn)) + kron(kron(uj, vn), kron(ui, vm));
}

Matrix a_operator(Index dimA, Index dimB) {
  check_dim_guard(dimA * dimB * dimA * dimB, dimA * dimB * dimA * dimB);
  const Matrix grouped =
      4.0 * kron(antisymmetric_projector(dimA), antisymmetric_projector(dimB));
  return permute_grouped_operator(grouped, dimA, dimB);
}

Matrix v_operator(int k, PairIndex pairA, PairIndex pairB,
                  const LocalBasisPair& basis, Index dimA, Index dimB) {
  if (k != 1 && k != 2) throw DomainError("v_operator: k must be 1 or 2");
  validate_pair(pairA, dimA);
  validate_pair(pairB, dimB);
  validate_basis(basis, dimA, dimB);
  check_dim_guard(dimA * dimB * dimA * dimB, dimA * dimB * dimA * dimB);
  const PairProjectors pa = pair_projectors(basis.basisA, pairA);
  const PairProjectors pb = pair_projectors(basis.basisB, pairB);
  const Matrix grouped =
      (k == 1) ? Matrix(4.0 * kron(pa.minus, Matrix(pb.minus - pb.plus)))
               : Matrix(4.0 * kron(Matrix(pa.minus - pa.plus), pb.minus));
  return permute_grouped_operator(grouped, dimA, dimB);
}

BoundValue alb_from_eigensystem(const EigenSystem& eig, Index dimA, Index dimB,
                                PairIndex pairA, PairIndex pairB,
                                const LocalBasisPair& basis) {
  validate_pair(pairA, dimA);
  validate_pair(pairB, dimB);
  validate_basis(basis, dimA, dimB);
  std::vector<Index> kept;
  for (Index r = 0; r < eig.values.size(); ++r)
    if (eig.values(r) > kEigenvalueCutoff) kept.push_back(r);

  BoundValue out;
  out.pairA = pairA;
  out.pairB = pairB;
  out.basis_tag = basis.tag;
  if (kept.empty()) return out;

  // <chi|Phi_r>|Phi_s> through the four product components of chi:
  // chi = |u_i v_m>|u_j v_n> - |u_i v_n>|u_j v_m>
  //     - |u_j v_m>|u_i v_n> + |u_j v_n>|u_i v_m>.
  const Vector im = kron(Vector(basis.basisA.col(pairA.lo)),
                         Vector(basis.basisB.col(pairB.lo)));
  const Vector in = kron(Vector(basis.basisA.col(pairA.lo)),
                         Vector(basis.basisB.col(pairB.hi)));
  const Vector jm = kron(Vector(basis.basisA.col(pairA.hi)),
                         Vector(basis.basisB.col(pairB.lo)));
  const Vector jn = kron(Vector(basis.basisA.col(pairA.hi)),
                         Vector(basis.basisB.col(pairB.hi)));

  const Index r_count = static_cast<Index>(kept.size());
  Vector oim(r_count), oin(r_count), ojm(r_count), ojn(r_count);
  for (Index r = 0; r < r_count; ++r) {
    const auto col = eig.vectors.col(kept[static_cast<std::size_t>(r)]);
    oim(r) = im.dot(col);
    oin(r) = in.dot(col);
    ojm(r) = jm.dot(col);
    ojn(r) = jn.dot(col);
  }

  Matrix t(r_count, r_count);
  for (Index r = 0; r < r_count; ++r) {
    const double lr = eig.values(kept[static_cast<std::size_t>(r)]);
    for (Index s = 0; s < r_count; ++s) {
      const double ls = eig.values(kept[static_cast<std::size_t>(s)]);
      const Complex overlap =
          oim(r) * ojn(s) + ojn(r) * oim(s) - oin(r) * ojm(s) - ojm(r) * oin(s);
      t(r, s) = std::sqrt(lr * ls) * overlap;
    }
  }

  const RealVector sv = singular_values(t);
  double value = sv.size() > 0 ? sv(0) : 0.0;
  for (Index l = 1; l < sv.size(); ++l) value -= sv(l);
  value = std::max(0.0, value);
  out.raw = value;
  out.bound = value;
  return out;
}

BoundValue alb(const DensityOperator& rho, PairIndex pairA, PairIndex pairB,
               const LocalBasisPair& basis) {
  return alb_from_eigensystem(herm_eig(rho.matrix()), rho.dimA(), rho.dimB(),
                              pairA, pairB, basis);
}

BoundValue mlb_squared(const DensityOperator& sigma, int k, PairIndex pairA,
                       PairIndex pairB, const LocalBasisPair& basis) {
  const Matrix v =
      v_operator(k, pairA, pairB, basis, sigma.dimA(), sigma.dimB());
  const Matrix two_copy = kron(sigma.matrix(), sigma.matrix());
  const Complex value = (two_copy.transpose().cwiseProduct(v)).sum();
  BoundValue out;
  out.raw = value.real();
  out.bound = std::max(0.0, out.raw);
  out.pairA = pairA;
  out.pairB = pairB;
  out.basis_tag = basis.tag;
  return out;
}

Matrix so_generator(PairIndex pair, Index dim) {
  validate_pair(pair, dim);
  Matrix l = Matrix::Zero(dim, dim);
  l(pair.lo, pair.hi) = 1.0;
  l(pair.hi, pair.lo) = -1.0;
  return l;
}

double tau(const DensityOperator& rho, const LocalBasisPair& basis) {
  const EigenSystem eig = herm_eig(rho.matrix());
  double sum = 0.0;
  for (Index i = 0; i < rho.dimA(); ++i)
    for (Index j = i + 1; j < rho.dimA(); ++j)
      for (Index m = 0; m < rho.dimB(); ++m)
        for (Index n = m + 1; n < rho.dimB(); ++n) {
          const BoundValue b = alb_from_eigensystem(
              eig, rho.dimA(), rho.dimB(), {i, j}, {m, n}, basis);
          sum += b.bound * b.bound;
        }
  return sum;
}

double wootters_concurrence(const DensityOperator& rho) {
  if (rho.dimA() != 2 || rho.dimB() != 2)
    throw DomainError("wootters_concurrence: requires a 2x2 system");
  Matrix flip = Matrix::Zero(4, 4);
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  // The mu_k are the square roots of the eigenvalues of
  // rho (YxY) rho^* (YxY). That product is similar to K K^dag with
  // K = sqrt(rho) (YxY) sqrt(rho)^*, so the mu_k are the singular values
  // of K; the SVD route keeps the near-zero ones at machine accuracy
  // where the non-normal eigensolve loses them.
  const EigenSystem eig = herm_eig(rho.matrix());
  Matrix sqrt_rho = Matrix::Zero(4, 4);
  for (Index k = 0; k < 4; ++k)
    sqrt_rho += std::sqrt(std::max(0.0, eig.values(k))) *
                (eig.vectors.col(k) * eig.vectors.col(k).adjoint());
  const Matrix kmat = sqrt_rho * flip * sqrt_rho.conjugate();
  const RealVector mu = singular_values(kmat);
  return std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
}

}  // namespace entbound
