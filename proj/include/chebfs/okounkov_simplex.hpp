#pragma once

// Lattice points of the Okounkov body of the hyperplane bundle on P^n with the
// flag Y_i = V(Z_0, ..., Z_{i-1}): degree-m monomials Z^I, I = (I_0..I_n),
// ordered lexicographically on (I_0, ..., I_{n-1}).

#include <compare>
#include <cstdint>
#include <vector>

namespace chebfs {

class MultiIndex {
 public:
  MultiIndex() = default;
  // Throws InvalidInputError for negative entries or an empty vector.
  explicit MultiIndex(std::vector<int> exponents);

  // Number of chart coordinates; exponents().size() == n() + 1.
  int n() const { return static_cast<int>(exponents_.size()) - 1; }
  int degree() const { return degree_; }
  const std::vector<int>& exponents() const { return exponents_; }
  int operator[](int j) const { return exponents_[j]; }

  // log(I_0! ... I_n!)
  double log_factorial() const;

  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

struct SimplexPoint {
  std::vector<double> alpha;  // (alpha_0, ..., alpha_{n-1})

  int n() const { return static_cast<int>(alpha.size()); }
  // 1 - sum(alpha), the implied last barycentric coordinate.
  double remainder() const;
};

// Lex order on the first n coordinates. Throws InvalidInputError on
// mismatched dimension or degree.
std::strong_ordering lex_compare(const MultiIndex& a, const MultiIndex& b);

// All degree-m multi-indices in n+1 variables, lex-sorted; C(m+n, n) entries.
std::vector<MultiIndex> lattice_points(int n, int m);

// C(m+n, n).
std::uint64_t dim_h0(int n, int m);

// alpha_i >= eps for all i and sum(alpha) <= 1 - eps.
bool simplex_interior_contains(const SimplexPoint& alpha, double eps = 1e-6);

// Closed simplex membership with a roundoff allowance.
bool simplex_closed_contains(const SimplexPoint& alpha, double slack = 1e-12);

}  // namespace chebfs
