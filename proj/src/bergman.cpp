#include "chebfs/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chebfs/errors.hpp"

namespace chebfs {

GramMatrix hilb_endpoint_gram(const PosDefHermitian& p, int m) {
  GramMatrix g = gram_exact(p, m);
  const double log_det = ldl_unitriangular(p).d.array().log().sum();
  g.entries *= std::exp(g.n * std::log(2 * std::numbers::pi) + log_det);
  return g;
}

BergmanSpectrum bergman_spectrum(const PosDefHermitian& p0,
                                 const PosDefHermitian& p1, int m) {
  if (p0.order() != p1.order()) {
    throw InvalidInputError("bergman_spectrum: endpoint orders differ");
  }
  const GramMatrix h0 = hilb_endpoint_gram(p0, m);
  const GramMatrix h1 = hilb_endpoint_gram(p1, m);
  // A^* A = H0 and A^* e^D A = H1, so the rows of A^{-*} are H0-orthonormal
  // with H1-norms e^{D}.
  const FSGeodesicPath pencil =
      simultaneous_diagonalize(PosDefHermitian::symmetrized(h0.entries),
                               PosDefHermitian::symmetrized(h1.entries));
  const Eigen::Index size = pencil.order();
  const Matrix a_inv = pencil.a().partialPivLu().solve(Matrix::Identity(size, size));
  const Matrix rows = a_inv.adjoint();

  BergmanSpectrum spec;
  spec.n = h0.n;
  spec.m = m;
  spec.basis = h0.basis;
  spec.sections.resize(size, size);
  spec.lambdas.resize(size);
  // D is descending, so lambda = -D is ascending; reverse it.
  for (Eigen::Index j = 0; j < size; ++j) {
    spec.sections.row(j) = rows.row(size - 1 - j);
    spec.lambdas(j) = -pencil.d()(size - 1 - j);
  }
  return spec;
}

double bergman_geodesic_eval(const BergmanSpectrum& spec, double t,
                             const ChartPoint& z) {
  if (z.n() != spec.n) throw InvalidInputError("chart point dimension mismatch");
  const std::size_t size = spec.basis.size();
  CVector monomials(size);
  for (std::size_t i = 0; i < size; ++i) {
    Complex v = 1.0;
    for (int k = 0; k < spec.n; ++k) {
      for (int e = 0; e < spec.basis[i][k]; ++e) v *= z.z[k];
    }
    monomials(i) = v;
  }
  const CVector values = spec.sections * monomials;
  std::vector<double> logs;
  logs.reserve(size);
  for (std::size_t j = 0; j < size; ++j) {
    const double mag = std::norm(values(j));
    if (mag > 0.0) logs.push_back(spec.lambdas(j) * t + std::log(mag));
  }
  if (logs.empty()) throw DomainError("all Bergman sections vanish at z");
  const double top = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double v : logs) sum += std::exp(v - top);
  return (top + std::log(sum)) / spec.m;
}

double bergman_offset(int n, int m) {
  return (std::lgamma(n + m + 1.0) - std::lgamma(m + 1.0)) / m -
         n * std::log(2 * std::numbers::pi) / m;
}

std::vector<ChartPoint> chart_grid_points(int n, const ChartGrid& grid) {
  if (n < 1 || grid.z_count < 1) throw InvalidInputError("empty chart grid");
  constexpr double kGoldenAngle = 2.399963229728653;
  std::vector<ChartPoint> out;
  for (int k = 0; k < grid.z_count; ++k) {
    const double rho =
        grid.z_count == 1 ? grid.radius : grid.radius * k / (grid.z_count - 1);
    ChartPoint z{std::vector<Complex>(n)};
    for (int j = 0; j < n; ++j) {
      z.z[j] = std::polar(rho / std::sqrt(static_cast<double>(n)),
                          kGoldenAngle * (k * n + j + 1));
    }
    out.push_back(std::move(z));
  }
  return out;
}

BergmanExactness bergman_exactness(const RVector& d, int m, const ChartGrid& grid) {
  if (d.size() < 2) throw InvalidInputError("D must have length n + 1 >= 2");
  if (grid.t_count < 1) throw InvalidInputError("empty time grid");
  const int n = static_cast<int>(d.size()) - 1;
  const RVector e_d = d.array().exp();
  const BergmanSpectrum spec = bergman_spectrum(
      PosDefHermitian::identity(n + 1),
      PosDefHermitian::diagonal({e_d.data(), static_cast<std::size_t>(e_d.size())}),
      m);

  BergmanExactness out;
  out.expected_offset = bergman_offset(n, m);
  const std::vector<ChartPoint> points = chart_grid_points(n, grid);
  int count = 0;
  for (int it = 0; it < grid.t_count; ++it) {
    const double t = grid.t_count == 1 ? 0.0 : static_cast<double>(it) / (grid.t_count - 1);
    for (const auto& z : points) {
      double q = std::exp(d(n) * t);
      for (int j = 0; j < n; ++j) q += std::exp(d(j) * t) * std::norm(z.z[j]);
      const double gap = bergman_geodesic_eval(spec, t, z) - std::log(q);
      out.max_defect = std::max(out.max_defect, std::abs(gap - out.expected_offset));
      out.mean_offset += gap;
      ++count;
    }
  }
  out.mean_offset /= count;
  return out;
}

double bergman_exactness_defect(const RVector& d, int m, const ChartGrid& grid) {
  return bergman_exactness(d, m, grid).max_defect;
}

}  // namespace chebfs
