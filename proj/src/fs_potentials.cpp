#include "chebfs/fs_potentials.hpp"

#include <cmath>

#include "chebfs/errors.hpp"

namespace chebfs {

CVector ChartPoint::lift() const {
  CVector v(z.size() + 1);
  for (std::size_t i = 0; i < z.size(); ++i) v(i) = z[i];
  v(z.size()) = 1.0;
  return v;
}

double fs_quadratic(const PosDefHermitian& p, const ChartPoint& z) {
  if (z.n() + 1 != p.order()) {
    throw InvalidInputError("chart point dimension does not match the matrix");
  }
  const CVector v = z.lift();
  return v.dot(p.matrix() * v).real();
}

double fs_eval(const PosDefHermitian& p, const ChartPoint& z) {
  const double q = fs_quadratic(p, z);
  if (!(q > 0.0)) throw DefinitenessError("z^* P z is not positive");
  return std::log(q);
}

Matrix fs_hessian(const PosDefHermitian& p, const ChartPoint& z) {
  const int n = z.n();
  const double q = fs_quadratic(p, z);
  const CVector pz = (p.matrix() * z.lift()).head(n);
  // d/dz_j d/dzbar_k log q = P_kj / q - (Pz)_k conj((Pz)_j) / q^2; the matrix
  // below is indexed (k, j).
  return p.matrix().topLeftCorner(n, n) / q - pz * pz.adjoint() / (q * q);
}

ChartImage chart_image(const Matrix& a, const ChartPoint& z) {
  if (a.rows() != z.n() + 1 || a.cols() != z.n() + 1) {
    throw InvalidInputError("chart_image: size mismatch");
  }
  const CVector image = a * z.lift();
  const Complex last = image(z.n());
  if (std::abs(last) == 0.0) throw DomainError("image lies off the chart");
  ChartImage out{ChartPoint{std::vector<Complex>(z.n())}, last};
  for (int i = 0; i < z.n(); ++i) out.w.z[i] = image(i) / last;
  return out;
}

FSGeodesicPath geodesic_from_endpoints(const PosDefHermitian& p0,
                                       const PosDefHermitian& p1) {
  return simultaneous_diagonalize(p0, p1);
}

FSGeodesicPath counterexample_path() {
  const double s = std::sqrt(2.0) / 2.0;
  Matrix a(2, 2);
  a << s, s, -s, s;
  RVector d(2);
  d << 1.0, -1.0;
  return FSGeodesicPath(std::move(a), std::move(d));
}

}  // namespace chebfs
