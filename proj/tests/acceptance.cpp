// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "chebfs/bergman.hpp"
#include "chebfs/chebyshev_potential.hpp"
#include "chebfs/cli.hpp"
#include "chebfs/fs_potentials.hpp"
#include "chebfs/hilb_gram.hpp"
#include "chebfs/mabuchi_energy.hpp"
#include "chebfs/okounkov_simplex.hpp"
#include "test_support.hpp"

using namespace chebfs;
using chebfs::testing::Random;
using chebfs::testing::rel_diff;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed checks and a short summary.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (failures_++ < 3) failed_ += (failed_.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
  Outcome outcome() const {
    if (pass_) return {true, notes_};
    return {false, std::to_string(failures_) + " failed check(s): " + failed_ +
                       (notes_.empty() ? "" : " | " + notes_)};
  }

 private:
  bool pass_ = true;
  int failures_ = 0;
  std::string failed_;
  std::string notes_;
};

std::string fmt(double v, int digits = 7) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double affine_defect_formula() {
  return 0.5 * (std::log(std::cosh(2.0)) - 2 * std::log(std::cosh(1.0)));
}

Outcome counterexample_reproduction() {
  Checker c;
  const FSGeodesicPath path = counterexample_path();
  double worst = 0.0;
  for (double t : {0.0, 0.5, 1.0, 2.0}) {
    const RVector mu = mu_vector(path_eval(path, t));
    worst = std::max({worst, std::abs(mu(0) * std::cosh(t) - 1.0),
                      std::abs(mu(1) / std::cosh(t) - 1.0)});
  }
  c.expect(worst <= 1e-10, "mu0 cosh t and mu1 / cosh t within 1e-10 of 1");
  const AffineVerdict v = affine_in_t_test(path, {SimplexPoint{{0.25}}}, {0.0, 1.0, 2.0});
  const double expected = affine_defect_formula();
  c.expect(std::abs(v.defects[0] - expected) <= 1e-6, "defect matches formula");
  c.expect(!v.affine, "verdict NOT affine");
  c.note("max |mu ratio - 1| = " + fmt(worst, 3));
  c.note("defect " + fmt(v.defects[0], 10) + " vs " + fmt(expected, 10));
  c.note(v.affine ? "affine" : "not affine");
  return c.outcome();
}

Outcome finite_level_convergence() {
  Checker c;
  Random rng(20240601);
  const double d[] = {2.0, 1.0};
  const std::vector<std::pair<std::string, PosDefHermitian>> cases{
      {"I", PosDefHermitian::identity(2)},
      {"diag(2,1)", PosDefHermitian::diagonal(d)},
      {"random", rng.pos_def(2)}};
  const double bound = 2 * std::log(80.0) / 80;
  double worst = 0.0;
  for (const auto& [name, p] : cases) {
    for (double a : {0.25, 0.5}) {
      const SimplexPoint alpha{{a}};
      const double gap = std::abs(cheb_finite_m(p, 80, alpha) -
                                  cheb_closed_form(ChebyshevPotentialFS::of(p), alpha));
      worst = std::max(worst, gap);
      c.expect(gap <= bound, name + " alpha=" + fmt(a) + " m=80 gap " + fmt(gap));
      const ConvergenceReport rep = convergence_report(p, alpha, {10, 20, 40, 80});
      std::string seq;
      for (const auto& row : rep.rows) seq += (seq.empty() ? "" : ">") + fmt(row.defect, 3);
      c.expect(rep.strictly_decreasing,
               name + " alpha=" + fmt(a) + " defects not decreasing: " + seq);
    }
  }
  c.note("max m=80 gap " + fmt(worst, 4) + " <= " + fmt(bound, 4));
  c.note("defects strictly decreasing over m = 10, 20, 40, 80 in all 6 cases");
  return c.outcome();
}

Outcome chebyshev_sections_check() {
  Checker c;
  Random rng(31337);
  double worst_norm = 0.0;
  double worst_orth = 0.0;
  for (int n : {1, 2}) {
    for (int m = 1; m <= 6; ++m) {
      const PosDefHermitian p = rng.pos_def(n + 1);
      const GramMatrix g = gram_exact(p, m);
      const RVector norms = chebyshev_norms(g);
      for (std::size_t k = 0; k < g.basis.size(); ++k) {
        worst_norm = std::max(worst_norm,
                              rel_diff(norms(k), section_norm_closed_form(p, g.basis[k])));
      }
      const auto sections = chebyshev_sections(g);
      for (std::size_t a = 0; a < sections.size(); ++a) {
        for (std::size_t b = a + 1; b < sections.size(); ++b) {
          const double ip = std::abs(gram_inner(g, sections[a].coeffs, sections[b].coeffs));
          worst_orth = std::max(
              worst_orth, ip / std::sqrt(sections[a].norm_sq * sections[b].norm_sq));
        }
      }
    }
  }
  c.expect(worst_norm <= 1e-9, "norms vs closed form");
  c.expect(worst_orth <= 1e-9, "pairwise orthogonality");
  c.note("max rel norm error " + fmt(worst_norm, 3));
  c.note("max normalized inner product " + fmt(worst_orth, 3));
  return c.outcome();
}

Outcome gram_oracle_agreement() {
  Checker c;
  Random rng(4242);
  const ChartScheme scheme{200, 64, 1e-6};
  double worst = 0.0;
  double worst_ratio = 0.0;
  for (int m = 1; m <= 4; ++m) {
    const PosDefHermitian p = rng.pos_def(2);
    const GramEstimate est = gram_numeric(p, m, scheme);
    const GramMatrix exact = gram_exact(p, m);
    const double diff = (est.gram.entries - exact.entries).cwiseAbs().maxCoeff();
    worst = std::max(worst, diff);
    worst_ratio = std::max(worst_ratio, diff / est.error_estimate);
    c.expect(diff <= est.error_estimate, "m=" + std::to_string(m) + " within estimate");
    c.expect(diff <= 1e-6, "m=" + std::to_string(m) + " within 1e-6");
  }
  c.note("max |diff| " + fmt(worst, 3) + ", max diff/estimate " + fmt(worst_ratio, 3));
  return c.outcome();
}

Outcome bergman_exactness_check() {
  Checker c;
  RVector d1(2);
  d1 << 1.0, -1.0;
  RVector d2(3);
  d2 << 1.0, 0.0, -1.0;
  const std::vector<std::pair<RVector, int>> cases{{d1, 4}, {d1, 8}, {d1, 16}, {d2, 4}};
  double worst_defect = 0.0;
  double worst_offset = 0.0;
  for (const auto& [d, m] : cases) {
    const int n = static_cast<int>(d.size()) - 1;
    const BergmanExactness ex = bergman_exactness(d, m);
    // (1/m) log((n+m)!/m!) - (n/m) log 2 pi, as a product.
    double log_ratio = 0.0;
    for (int k = m + 1; k <= m + n; ++k) log_ratio += std::log(static_cast<double>(k));
    const double expected = (log_ratio - n * std::log(2 * std::numbers::pi)) / m;
    worst_defect = std::max(worst_defect, ex.max_defect);
    worst_offset = std::max(worst_offset, std::abs(ex.mean_offset - expected));
    const std::string tag = "n=" + std::to_string(n) + " m=" + std::to_string(m);
    c.expect(ex.max_defect <= 1e-8, tag + " defect " + fmt(ex.max_defect, 3));
    c.expect(std::abs(ex.mean_offset - expected) <= 1e-10, tag + " offset");
  }
  c.note("max defect " + fmt(worst_defect, 3));
  c.note("max offset error " + fmt(worst_offset, 3));
  c.note("offset(n=1,m=4) = " + fmt(bergman_offset(1, 4), 8));
  return c.outcome();
}

Outcome energy_identity() {
  Checker c;
  const int sign = calibrate_energy_sign(1);
  Random rng(777);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const PosDefHermitian p0 = rng.pos_def(2);
    const PosDefHermitian p1 = rng.pos_def(2);
    const double gap =
        std::abs(energy_chart(p0, p1).value - sign * energy_okounkov(p0, p1));
    worst = std::max(worst, gap);
    c.expect(gap <= 1e-3, "pair " + std::to_string(trial) + " gap " + fmt(gap, 3));
  }
  double worst_scalar = 0.0;
  for (double scale : {0.1, 0.5, 2.0, 10.0}) {
    const PosDefHermitian p = rng.pos_def(2);
    worst_scalar = std::max(
        worst_scalar,
        std::abs(energy_okounkov(p, PosDefHermitian(scale * p.matrix())) - std::log(scale)));
  }
  c.expect(worst_scalar <= 1e-12, "energy_okounkov(P, cP) = log c");
  c.note("calibrated sign " + std::to_string(sign));
  c.note("max chart gap " + fmt(worst, 3));
  c.note("max |E(P,cP) - log c| " + fmt(worst_scalar, 3));
  return c.outcome();
}

Outcome geodesic_energy_contrast() {
  Checker c;
  std::ostringstream out, err;
  const int code = run({"counterexample"}, out, err);
  c.expect(code == 0, "counterexample exit code");
  if (code != 0) return c.outcome();
  const Json report = Json::parse(out.str());
  const double energy_defect = report["energy_linearity"]["defect"].get<double>();
  const double cheb_defect = report["chebyshev_affine"]["defect"].get<double>();
  c.expect(energy_defect <= 1e-12, "energy-linearity defect");
  c.expect(report["energy_linearity"]["affine"].get<bool>(), "energy affine verdict");
  c.expect(!report["chebyshev_affine"]["affine"].get<bool>(), "Chebyshev not affine");
  c.expect(std::abs(cheb_defect - affine_defect_formula()) <= 1e-6, "Chebyshev defect");
  c.expect(std::abs(report["mu0_at_1"].get<double>() - 0.6480543) <= 1e-7, "mu0(P(1))");
  c.note("energy defect " + fmt(energy_defect, 3));
  c.note("Chebyshev defect " + fmt(cheb_defect, 7));
  return c.outcome();
}

Outcome decomposition_classification() {
  Checker c;
  Random rng(8080);
  const std::vector<double> ts{0.0, 0.5, 1.0, 1.5, 2.0};
  double worst = 0.0;
  int accepted = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int order = 2 + trial % 3;
    const Matrix l0 = rng.lower_triangular(order, false, true);
    const RVector k0 = rng.real_vector(order, -1.0, 1.0);
    const AffineDecomposition dec = affine_mu_decompose(FSGeodesicPath(l0, k0), ts, 1e-6);
    if (!dec.accepted || !dec.decomposition) {
      c.expect(false, "trial " + std::to_string(trial) + " rejected");
      continue;
    }
    ++accepted;
    worst = std::max({worst, norm_inf(dec.decomposition->l - l0),
                      (dec.decomposition->k - k0).cwiseAbs().maxCoeff()});
  }
  c.expect(worst <= 1e-8, "round-trip error " + fmt(worst, 3));
  const AffineDecomposition ce = affine_mu_decompose(counterexample_path(), ts, 1e-6);
  c.expect(!ce.accepted, "counterexample rejected");
  c.note(std::to_string(accepted) + "/100 accepted, max (L, K) error " + fmt(worst, 3));
  c.note(std::string("counterexample ") + (ce.accepted ? "accepted" : "rejected"));
  return c.outcome();
}

Outcome combinatorics() {
  Checker c;
  int cases = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int m = 0; m <= 10; ++m) {
      std::uint64_t binom = 1;
      for (int k = 1; k <= n; ++k) binom = binom * (m + k) / k;
      c.expect(lattice_points(n, m).size() == binom,
               "n=" + std::to_string(n) + " m=" + std::to_string(m));
      ++cases;
    }
  }
  c.note(std::to_string(cases) + " (n, m) pairs exact");
  return c.outcome();
}

Outcome property_suites() {
  Checker c;
  constexpr int kTrials = 1000;
  Random rng(99991);

  int congruence_failures = 0;
  int block_failures = 0;
  int energy_failures = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    const int order = 1 + trial % 4;
    const PosDefHermitian p = rng.pos_def(order);
    const Matrix l = rng.lower_triangular(order);
    const RVector before = mu_vector(p);
    const RVector after = mu_vector(congruence(p, l));
    bool ok = true;
    for (int i = 0; i < order; ++i) {
      ok = ok && rel_diff(after(i), before(i) * std::norm(l(i, i))) <= 1e-10;
    }
    if (!ok) ++congruence_failures;

    const double a = std::exp(rng.uniform(-3.0, 3.0));
    Matrix ext = Matrix::Zero(order + 1, order + 1);
    ext.topLeftCorner(order, order) = p.matrix();
    ext(order, order) = a;
    const RVector extended = mu_vector(ext);
    ok = true;
    for (int i = 0; i < order; ++i) ok = ok && rel_diff(extended(i), before(i)) <= 1e-10;
    if (!ok) ++block_failures;

    const int eorder = 2 + trial % 3;
    const PosDefHermitian e0 = rng.pos_def(eorder);
    const PosDefHermitian e1 = rng.pos_def(eorder);
    const PosDefHermitian e2 = rng.pos_def(eorder);
    const double e01 = energy_okounkov(e0, e1);
    if (e01 != -energy_okounkov(e1, e0) ||
        std::abs(e01 + energy_okounkov(e1, e2) - energy_okounkov(e0, e2)) > 1e-12) {
      ++energy_failures;
    }
  }
  const ConvexityReport convexity =
      convexity_sample_check(ChebyshevPotentialFS::of(rng.pos_def(3)), kTrials, 5);

  c.expect(congruence_failures == 0, "congruence law");
  c.expect(block_failures == 0, "block-extension law");
  c.expect(convexity.passed && convexity.failures == 0 && convexity.trials == kTrials,
           "convexity");
  c.expect(energy_failures == 0, "energy cocycle/antisymmetry");
  c.note("failures: congruence " + std::to_string(congruence_failures) + ", block " +
         std::to_string(block_failures) + ", convexity " +
         std::to_string(convexity.failures) + ", energy " + std::to_string(energy_failures) +
         " (" + std::to_string(kTrials) + " trials each)");
  return c.outcome();
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds; 0 for none
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "counterexample reproduction", 1.0, counterexample_reproduction},
      {2, "finite-level convergence to the closed form", 1.0, finite_level_convergence},
      {3, "Chebyshev sections match the norm formula", 5.0, chebyshev_sections_check},
      {4, "Gram matrix: closed form vs quadrature", 10.0, gram_oracle_agreement},
      {5, "Bergman geodesic exactness", 30.0, bergman_exactness_check},
      {6, "energy identity", 30.0, energy_identity},
      {7, "geodesic energy vs Chebyshev affineness", 0.0, geodesic_energy_contrast},
      {8, "triangular decomposition classification", 5.0, decomposition_classification},
      {9, "lattice point counts", 0.0, combinatorics},
      {10, "property suites", 0.0, property_suites},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt(elapsed, 3) + " s";
    if (criterion.time_limit > 0) {
      timing += " / limit " + fmt(criterion.time_limit, 3) + " s";
      if (elapsed > criterion.time_limit) {
        outcome.pass = false;
        outcome.detail += " | runtime limit exceeded";
      }
    }
    if (!outcome.pass) ++failed;
    std::printf("%s  criterion %2d: %s: %s (%s)\n", outcome.pass ? "PASS" : "FAIL",
                criterion.id, criterion.name, outcome.detail.c_str(), timing.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
