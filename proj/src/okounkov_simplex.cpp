#include "chebfs/okounkov_simplex.hpp"

#include <cmath>
#include <numeric>

#include "chebfs/errors.hpp"

namespace chebfs {

MultiIndex::MultiIndex(std::vector<int> exponents)
    : exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw InvalidInputError("empty multi-index");
  for (int e : exponents_) {
    if (e < 0) throw InvalidInputError("multi-index has a negative entry");
  }
  degree_ = std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

double MultiIndex::log_factorial() const {
  double acc = 0.0;
  for (int e : exponents_) acc += std::lgamma(e + 1.0);
  return acc;
}

double SimplexPoint::remainder() const {
  return 1.0 - std::accumulate(alpha.begin(), alpha.end(), 0.0);
}

std::strong_ordering lex_compare(const MultiIndex& a, const MultiIndex& b) {
  if (a.n() != b.n() || a.degree() != b.degree()) {
    throw InvalidInputError("lex_compare: indices differ in dimension or degree");
  }
  for (int i = 0; i < a.n(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {

void enumerate(int n, int m, int pos, int used, std::vector<int>& current,
               std::vector<MultiIndex>& out) {
  if (pos == n) {
    current[n] = m - used;
    out.emplace_back(current);
    return;
  }
  for (int e = 0; e <= m - used; ++e) {
    current[pos] = e;
    enumerate(n, m, pos + 1, used + e, current, out);
  }
}

}  // namespace

std::vector<MultiIndex> lattice_points(int n, int m) {
  if (n < 1 || m < 0) throw InvalidInputError("lattice_points: need n >= 1, m >= 0");
  std::vector<MultiIndex> out;
  out.reserve(dim_h0(n, m));
  std::vector<int> current(n + 1, 0);
  enumerate(n, m, 0, 0, current, out);
  return out;
}

std::uint64_t dim_h0(int n, int m) {
  if (n < 0 || m < 0) throw InvalidInputError("dim_h0: negative argument");
  // C(m+n, n) by the multiplicative formula; each partial product is an
  // integer binomial coefficient.
  std::uint64_t c = 1;
  for (int k = 1; k <= n; ++k) {
    c = c * static_cast<std::uint64_t>(m + k) / static_cast<std::uint64_t>(k);
  }
  return c;
}

bool simplex_interior_contains(const SimplexPoint& alpha, double eps) {
  double sum = 0.0;
  for (double a : alpha.alpha) {
    if (!(a >= eps)) return false;
    sum += a;
  }
  return sum <= 1.0 - eps;
}

bool simplex_closed_contains(const SimplexPoint& alpha, double slack) {
  double sum = 0.0;
  for (double a : alpha.alpha) {
    if (!(a >= -slack)) return false;
    sum += a;
  }
  return sum <= 1.0 + slack;
}

}  // namespace chebfs
