#pragma once

// Fubini-Study potentials phi_P(z) = log (z^* P z) on the chart {Z_n != 0},
// with the homogeneous lift z = (z_0, ..., z_{n-1}, 1).

#include <vector>

#include "chebfs/linalg_hermitian.hpp"

namespace chebfs {

struct ChartPoint {
  std::vector<Complex> z;

  int n() const { return static_cast<int>(z.size()); }
  // (z_0, ..., z_{n-1}, 1)
  CVector lift() const;
};

// z^* P z for the lifted point. Throws InvalidInputError on size mismatch.
double fs_quadratic(const PosDefHermitian& p, const ChartPoint& z);

// log z^* P z. Throws DefinitenessError if the form is not positive at z.
double fs_eval(const PosDefHermitian& p, const ChartPoint& z);

// Complex Hessian d^2 phi_P / dz_j dzbar_k on the chart, an n x n Hermitian
// positive-definite matrix: P'/q - (P z)(P z)^* / q^2 restricted to the
// chart block, q = z^* P z. Its determinant is det P / q^{n+1}.
Matrix fs_hessian(const PosDefHermitian& p, const ChartPoint& z);

// The homogeneous point A (z, 1) written as c (w, 1). Throws DomainError if
// it leaves the chart (last coordinate zero).
struct ChartImage {
  ChartPoint w;
  Complex scale;
};
ChartImage chart_image(const Matrix& a, const ChartPoint& z);

// Delegates to simultaneous_diagonalize: path_eval(0) = P0, path_eval(1) = P1.
FSGeodesicPath geodesic_from_endpoints(const PosDefHermitian& p0,
                                       const PosDefHermitian& p1);

// The order-2 geodesic P(t) = [[cosh t, sinh t], [sinh t, cosh t]] written as
// A^* e^{tD} A with A = [[s, s], [-s, s]], s = sqrt(2)/2, D = (1, -1).
FSGeodesicPath counterexample_path();

}  // namespace chebfs
