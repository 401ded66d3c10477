#pragma once

// Complex Hermitian matrix algebra on positive-definite matrices of order n+1.
//
// Index convention: all minors are TRAILING. det_i(P) is the determinant of
// the lower-right block P[i..n, i..n], and mu_i(P) = det_i(P) / det_{i+1}(P)
// with det_{n+1} = 1. The factorization P = L^* diag(d) L with L lower
// unitriangular therefore has d = mu(P), and is computed by eliminating from
// the last row upward.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace chebfs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Relative pivot threshold for positive definiteness.
inline constexpr double kPivotTolerance = 1e-12;
// Relative threshold for entrywise Hermitian symmetry.
inline constexpr double kHermitianTolerance = 1e-12;

// (M + M^*) / 2.
Matrix hermitian_part(const Matrix& m);

// Max-row-sum norm.
double norm_inf(const Matrix& m);

class PosDefHermitian {
 public:
  // Validates symmetry and definiteness; throws InvalidInputError or
  // DefinitenessError.
  explicit PosDefHermitian(Matrix entries);

  // Replaces the input by its Hermitian part before validation. Use for
  // products whose asymmetry is pure roundoff.
  static PosDefHermitian symmetrized(const Matrix& entries);

  static PosDefHermitian identity(int order);
  static PosDefHermitian diagonal(std::span<const double> diag);

  int order() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  Matrix m_;
};

// Throws InvalidInputError unless m is square and Hermitian to tolerance.
void require_hermitian(const Matrix& m);

// det of the trailing (order-i) block, i in [0, order]; 1 when i == order.
double trailing_minor_det(const Matrix& p, int i);
double trailing_minor_det(const PosDefHermitian& p, int i);

// mu_i = det_i / det_{i+1}, computed as ratios of trailing minors.
RVector mu_vector(const Matrix& p);
RVector mu_vector(const PosDefHermitian& p);

struct LdlFactor {
  Matrix unit_lower;  // L, lower unitriangular
  RVector d;          // P = L^* diag(d) L
};

LdlFactor ldl_unitriangular(const Matrix& p);
LdlFactor ldl_unitriangular(const PosDefHermitian& p);

// Lower-triangular C with positive real diagonal and P = C^* C.
Matrix trailing_cholesky(const PosDefHermitian& p);

// A^* P A, Hermitian-symmetrized. Throws InvalidInputError for singular A.
PosDefHermitian congruence(const PosDefHermitian& p, const Matrix& a);

// |det A| divided by the product of the row norms of A (Hadamard ratio, in
// [0, 1]). Invertibility is judged on this scale-free quantity.
double hadamard_ratio(const Matrix& a);

// P(t) = A^* e^{tD} A.
class FSGeodesicPath {
 public:
  FSGeodesicPath(Matrix a, RVector d);

  int order() const { return static_cast<int>(a_.rows()); }
  const Matrix& a() const { return a_; }
  const RVector& d() const { return d_; }

 private:
  Matrix a_;
  RVector d_;
};

PosDefHermitian path_eval(const FSGeodesicPath& path, double t);

// A with A^*A = P0 and A^* e^D A = P1. D is sorted descending.
FSGeodesicPath simultaneous_diagonalize(const PosDefHermitian& p0,
                                        const PosDefHermitian& p1);

struct TriangularDecomposition {
  Matrix l;   // lower triangular, positive real diagonal
  RVector k;  // P(t) = L^* e^{tK} L
};

struct AffineDecomposition {
  bool accepted = false;
  // Per index i: max |second divided difference| of log mu_i(P(t)).
  std::vector<double> defects;
  std::optional<TriangularDecomposition> decomposition;
};

// Decides whether every log mu_i(P(t)) is affine over sample_ts and, if so,
// returns the unique (L, K) with P(t) = L^* e^{tK} L.
AffineDecomposition affine_mu_decompose(const FSGeodesicPath& path,
                                        std::vector<double> sample_ts,
                                        double tol);

// Second divided difference of f over three distinct abscissae, times 2.
// Equals f'' for quadratics; for uniform spacing h it is
// (f0 - 2 f1 + f2) / h^2.
double second_divided_difference(double t0, double f0, double t1, double f1,
                                 double t2, double f2);

}  // namespace chebfs
