#include "chebfs/mabuchi_energy.hpp"

#include <cmath>
#include <numbers>

#include "chebfs/errors.hpp"
#include "chebfs/fs_potentials.hpp"

namespace chebfs {

std::vector<double> mixed_discriminants(const Matrix& m0, const Matrix& m1) {
  if (m0.rows() != m1.rows() || m0.rows() < 1 || m0.rows() > 2) {
    throw InvalidInputError("mixed discriminants need matching 1x1 or 2x2 matrices");
  }
  const double det0 = m0.determinant().real();
  const double det1 = m1.determinant().real();
  if (m0.rows() == 1) return {det1, det0};
  const double det_sum = (m0 + m1).determinant().real();
  return {det1, 0.5 * (det_sum - det0 - det1), det0};
}

ChartEnergy energy_chart(const PosDefHermitian& p0, const PosDefHermitian& p1,
                         const ChartScheme& scheme) {
  if (p0.order() != p1.order()) throw InvalidInputError("energy: order mismatch");
  const int n = p0.order() - 1;
  if (n > 2) throw InvalidInputError("energy_chart supports n <= 2");

  // Total mass of (dd^c phi)^n before normalization: pi^n / n!.
  const double volume = std::pow(std::numbers::pi, n) / std::tgamma(n + 1.0);
  const PosDefHermitian identity = PosDefHermitian::identity(n + 1);

  auto integrand = [&](const ChartNode& node, std::span<Complex> acc) {
    const Matrix h0 = fs_hessian(p0, node.z);
    const Matrix h1 = fs_hessian(p1, node.z);
    const std::vector<double> mixed = mixed_discriminants(h0, h1);
    double density = 0.0;
    for (double v : mixed) density += v;
    density /= (n + 1) * volume;
    const double gap = std::log(fs_quadratic(p0, node.z) / fs_quadratic(p1, node.z));
    acc[0] += node.weight * gap * density;
    acc[1] += node.weight *
              fs_hessian(identity, node.z).determinant().real() / volume;
  };

  const ChartIntegral integral = integrate_chart_estimated(n, scheme, 2, integrand);
  const double mass = integral.value[1].real();
  if (std::abs(mass - 1.0) > std::max(scheme.tolerance, integral.error_estimate)) {
    throw AccuracyError("Monge-Ampere mass of the reference potential is not 1");
  }
  return {integral.value[0].real(), integral.error_estimate};
}

double energy_okounkov(const PosDefHermitian& p0, const PosDefHermitian& p1) {
  if (p0.order() != p1.order()) throw InvalidInputError("energy: order mismatch");
  const RVector diff =
      mu_vector(p1).array().log() - mu_vector(p0).array().log();
  return diff.sum() / p0.order();
}

int calibrate_energy_sign(int n, const ChartScheme& scheme) {
  const PosDefHermitian p = PosDefHermitian::identity(n + 1);
  const PosDefHermitian scaled(std::exp(1.0) * p.matrix());
  const ChartEnergy chart = energy_chart(p, scaled, scheme);
  const double ratio = chart.value / energy_okounkov(p, scaled);
  if (std::abs(std::abs(ratio) - 1.0) > std::max(1e-3, 10 * chart.error_estimate)) {
    throw AccuracyError("energy sign probe did not return +-1");
  }
  return ratio < 0 ? -1 : 1;
}

EnergyReport energy_report(const PosDefHermitian& p0, const PosDefHermitian& p1,
                           const ChartScheme& scheme) {
  EnergyReport report;
  const ChartEnergy chart = energy_chart(p0, p1, scheme);
  report.chart_value = chart.value;
  report.quadrature_error_estimate = chart.error_estimate;
  report.okounkov_value = energy_okounkov(p0, p1);
  report.sign = calibrate_energy_sign(p0.order() - 1, scheme);
  report.gap = std::abs(report.chart_value - report.sign * report.okounkov_value);
  return report;
}

double energy_affine_along_geodesic(const FSGeodesicPath& path,
                                    const std::vector<double>& ts) {
  if (ts.size() < 3) throw InvalidInputError("need at least three times");
  const double h = ts[1] - ts[0];
  if (!(h > 0.0)) throw InvalidInputError("times must be increasing");
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if (std::abs((ts[k] - ts[k - 1]) - h) > 1e-9 * h) {
      throw InvalidInputError("times must be uniformly spaced");
    }
  }
  const PosDefHermitian start = path_eval(path, 0.0);
  std::vector<double> e;
  for (double t : ts) e.push_back(energy_okounkov(start, path_eval(path, t)));
  double defect = 0.0;
  for (std::size_t k = 1; k + 1 < e.size(); ++k) {
    defect = std::max(defect, std::abs(e[k + 1] - 2 * e[k] + e[k - 1]) / (h * h));
  }
  return defect;
}

}  // namespace chebfs
