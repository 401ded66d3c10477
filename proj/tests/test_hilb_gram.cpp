#include <cmath>

#include <doctest.h>

#include "chebfs/errors.hpp"
#include "chebfs/hilb_gram.hpp"
#include "test_support.hpp"

using namespace chebfs;
using chebfs::testing::Random;
using chebfs::testing::rel_diff;

TEST_CASE("gram examples") {
  const GramMatrix g = gram_exact(PosDefHermitian::identity(2), 1);
  REQUIRE(g.basis.size() == 2);
  CHECK(norm_inf(g.entries - 0.5 * Matrix::Identity(2, 2)) < 1e-15);

  const double d[] = {2.0, 1.0};
  const GramMatrix gd = gram_exact(PosDefHermitian::diagonal(d), 1);
  CHECK(gd.basis[0] == MultiIndex({0, 1}));
  CHECK(gd.entries(0, 0).real() == doctest::Approx(0.25));
  CHECK(gd.entries(1, 1).real() == doctest::Approx(0.125));
  CHECK(std::abs(gd.entries(0, 1)) == 0.0);

  CHECK(gd.position(MultiIndex({1, 0})) == 1);
  CHECK_THROWS_AS(gd.position(MultiIndex({2, 0})), InvalidInputError);
  CHECK_THROWS_AS(gram_exact(PosDefHermitian::identity(4), 40), InvalidInputError);
}

TEST_CASE("closed-form section norms") {
  CHECK(section_norm_closed_form(PosDefHermitian::identity(2), MultiIndex({0, 1})) ==
        doctest::Approx(0.5));
  CHECK(section_norm_closed_form(PosDefHermitian::identity(3), MultiIndex({1, 1, 0})) ==
        doctest::Approx(1.0 / 24));
  const double d[] = {2.0, 1.0};
  CHECK(section_norm_closed_form(PosDefHermitian::diagonal(d), MultiIndex({1, 0})) ==
        doctest::Approx(0.125));
  CHECK_THROWS_AS(section_norm_closed_form(PosDefHermitian::identity(2), MultiIndex({1, 0, 0})),
                  InvalidInputError);
}

TEST_CASE("diagonal P gives the closed form at every m") {
  const double d[] = {0.7, 2.0, 1.3};
  const PosDefHermitian p = PosDefHermitian::diagonal(d);
  for (int m = 1; m <= 5; ++m) {
    const GramMatrix g = gram_exact(p, m);
    const RVector norms = chebyshev_norms(g);
    for (std::size_t k = 0; k < g.basis.size(); ++k) {
      CHECK(rel_diff(norms(k), section_norm_closed_form(p, g.basis[k])) < 1e-12);
      CHECK(rel_diff(g.entries(k, k).real(), norms(k)) < 1e-12);
    }
    CHECK(norm_inf(g.entries - Matrix(g.entries.diagonal().asDiagonal())) == 0.0);
  }
}

TEST_CASE("Chebyshev norms match the closed form for random P") {
  Random rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 2;
    const int m = 1 + trial % 6;
    const PosDefHermitian p = rng.pos_def(n + 1);
    const GramMatrix g = gram_exact(p, m);
    const RVector norms = chebyshev_norms(g);
    for (std::size_t k = 0; k < g.basis.size(); ++k) {
      CHECK(rel_diff(norms(k), section_norm_closed_form(p, g.basis[k])) < 1e-9);
    }
  }
}

TEST_CASE("Chebyshev sections") {
  Random rng(55);
  const PosDefHermitian p = rng.pos_def(3);
  const int m = 3;
  const GramMatrix g = gram_exact(p, m);
  const auto sections = chebyshev_sections(g);
  REQUIRE(sections.size() == g.basis.size());

  SUBCASE("monic, triangular, orthogonal") {
    for (std::size_t a = 0; a < sections.size(); ++a) {
      const auto& s = sections[a];
      CHECK(s.alpha_index == g.basis[a]);
      CHECK(std::abs(s.coeffs(a) - Complex(1.0)) < 1e-14);
      for (std::size_t j = 0; j < a; ++j) CHECK(s.coeffs(j) == Complex(0.0));
      CHECK(rel_diff(gram_inner(g, s.coeffs, s.coeffs).real(), s.norm_sq) < 1e-10);
      for (std::size_t b = a + 1; b < sections.size(); ++b) {
        const Complex ip = gram_inner(g, s.coeffs, sections[b].coeffs);
        CHECK(std::abs(ip) <= 1e-9 * std::sqrt(s.norm_sq * sections[b].norm_sq));
      }
    }
  }

  SUBCASE("sections are (Lz)^I for the unitriangular factor of P") {
    const Matrix t = monomial_transition(ldl_unitriangular(p).unit_lower, m);
    for (std::size_t a = 0; a < sections.size(); ++a) {
      const CVector expected = t.row(a).transpose();
      CHECK((sections[a].coeffs - expected).cwiseAbs().maxCoeff() < 1e-9);
    }
  }

  SUBCASE("local minimality") {
    for (std::size_t a = 0; a < sections.size(); ++a) {
      const auto& s = sections[a];
      for (std::size_t j = a + 1; j < sections.size(); ++j) {
        for (Complex delta : {Complex(1e-3), Complex(-1e-3), Complex(0, 1e-3),
                              Complex(0, -1e-3)}) {
          CVector perturbed = s.coeffs;
          perturbed(j) += delta;
          CHECK(gram_inner(g, perturbed, perturbed).real() > s.norm_sq);
        }
      }
    }
  }

  CHECK(chebyshev_section_coeffs(g, g.basis[2]).coeffs == sections[2].coeffs);
}

TEST_CASE("monomial transition") {
  Matrix l = Matrix::Identity(2, 2);
  l(1, 0) = Complex(2.0, 1.0);
  // (L z)_0 = z_0, (L z)_1 = (2 + i) z_0 + z_1 in the chart z_1 = 1.
  const Matrix t = monomial_transition(l, 2);
  // basis (0,2), (1,1), (2,0): (Lz)^(0,2) = ((2+i) z0 + z1)^2.
  const Complex c(2.0, 1.0);
  CHECK(std::abs(t(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(t(0, 1) - 2.0 * c) < 1e-15);
  CHECK(std::abs(t(0, 2) - c * c) < 1e-15);
  CHECK(std::abs(t(1, 2) - c) < 1e-15);
  CHECK(std::abs(t(1, 0)) == 0.0);
  CHECK(std::abs(t(2, 2) - 1.0) < 1e-15);
}

TEST_CASE("multivariate beta against half-line quadrature") {
  const double x[] = {2.0, 2.0, 1.0};
  CHECK(std::exp(log_multivariate_beta(x)) == doctest::Approx(1.0 / 24));
  // B(a, b) = \int_0^inf r^{a-1} / (1 + r)^{a+b} dr.
  const QuadratureRule rule = half_line_rule(400);
  for (auto [a, b] : {std::pair{2.0, 3.0}, std::pair{2.5, 1.5}, std::pair{1.0, 1.0},
                      std::pair{4.0, 1.5}}) {
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double r = rule.nodes[k];
      sum += rule.weights[k] * std::pow(r, a - 1) / std::pow(1 + r, a + b);
    }
    const double xs[] = {a, b};
    CHECK(std::exp(log_multivariate_beta(xs)) == doctest::Approx(sum).epsilon(1e-9));
  }
  const double bad[] = {1.0, 0.0};
  CHECK_THROWS_AS(log_multivariate_beta(bad), InvalidInputError);
}

TEST_CASE("gram_numeric agrees with gram_exact") {
  SUBCASE("identity, m = 1") {
    const GramEstimate est = gram_numeric(PosDefHermitian::identity(2), 1);
    CHECK(norm_inf(est.gram.entries - 0.5 * Matrix::Identity(2, 2)) < 1e-8);
  }
  SUBCASE("random n = 1") {
    Random rng(73);
    for (int m = 1; m <= 4; ++m) {
      const PosDefHermitian p = rng.pos_def(2);
      const GramEstimate est = gram_numeric(p, m);
      const GramMatrix exact = gram_exact(p, m);
      const double diff = (est.gram.entries - exact.entries).cwiseAbs().maxCoeff();
      CHECK(diff <= std::max(est.error_estimate, 1e-13));
      CHECK(diff <= 1e-6);
    }
  }
  SUBCASE("random n = 2") {
    Random rng(74);
    const PosDefHermitian p = rng.pos_def(3, 1.0);
    const GramEstimate est = gram_numeric(p, 2, ChartScheme{60, 16, 1e-5});
    const GramMatrix exact = gram_exact(p, 2);
    const double diff = (est.gram.entries - exact.entries).cwiseAbs().maxCoeff();
    CHECK(diff <= std::max(est.error_estimate, 1e-12));
    CHECK(diff <= 1e-5);
  }
  CHECK_THROWS_AS(gram_numeric(PosDefHermitian::identity(4), 1), InvalidInputError);
}
