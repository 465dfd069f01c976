#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quasiform/rational.hpp"

namespace quasiform {

/// Exponent vector; its length is the variable count of the owning polynomial.
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

/// Graded lexicographic order with y1 > y2 > ... ; `operator()` is "a precedes b",
/// i.e. a is the larger monomial, so iteration starts at the leading term.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All exponent vectors of total degree `degree` in `nvars` variables, leading first.
std::vector<Monomial> monomials_of_degree(int nvars, int degree);

/// Homogeneous polynomial with rational coefficients.
///
/// Every stored term has total degree `degree()`; zero coefficients are never
/// stored. The zero polynomial keeps its degree tag so that sums of homogeneous
/// inputs stay well defined.
class HomPoly {
 public:
  using Terms = std::map<Monomial, Rat, GrlexDescending>;

  HomPoly() : HomPoly(1, 0) {}
  HomPoly(int nvars, int degree);

  static HomPoly constant(int nvars, const Rat& c);
  static HomPoly variable(int nvars, int index);
  static HomPoly monomial(const Monomial& exponents, const Rat& c);
  /// Linear form sum_i coeffs[i] * y_i.
  static HomPoly linear(std::span<const Rat> coeffs);
  /// Sums the given terms; all must share the same length and total degree.
  static HomPoly from_terms(int nvars, int degree, const std::vector<std::pair<Monomial, Rat>>& terms);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }

  Rat coefficient(const Monomial& m) const;
  /// Requires a nonzero polynomial.
  const Monomial& leading_monomial() const;
  const Rat& leading_coefficient() const;

  /// Largest exponent of variable `var` over all terms (0 for the zero polynomial).
  int degree_in(int var) const;

  friend bool operator==(const HomPoly& a, const HomPoly& b);

 private:
  void accumulate(const Monomial& m, const Rat& c);

  friend HomPoly add(const HomPoly&, const HomPoly&);
  friend HomPoly scale(const HomPoly&, const Rat&);
  friend HomPoly mul(const HomPoly&, const HomPoly&);

  int nvars_;
  int degree_;
  Terms terms_;
};

HomPoly add(const HomPoly& p, const HomPoly& q);
HomPoly sub(const HomPoly& p, const HomPoly& q);
HomPoly scale(const HomPoly& p, const Rat& c);
HomPoly mul(const HomPoly& p, const HomPoly& q);
HomPoly pow(const HomPoly& p, int exponent);

inline HomPoly operator+(const HomPoly& p, const HomPoly& q) { return add(p, q); }
inline HomPoly operator-(const HomPoly& p, const HomPoly& q) { return sub(p, q); }
inline HomPoly operator-(const HomPoly& p) { return scale(p, Rat(-1)); }
inline HomPoly operator*(const HomPoly& p, const HomPoly& q) { return mul(p, q); }
inline HomPoly operator*(const Rat& c, const HomPoly& p) { return scale(p, c); }

Rat evaluate(const HomPoly& p, std::span<const Rat> point);
double evaluate(const HomPoly& p, std::span<const double> point);

std::vector<HomPoly> gradient(const HomPoly& p);
/// Symmetric matrix of second partials, stored row-major (nvars x nvars).
std::vector<HomPoly> hessian(const HomPoly& p);

/// r with q * r == p, or nullopt when q does not divide p.
std::optional<HomPoly> divide_exact(const HomPoly& p, const HomPoly& q);

/// q with q * q == p and positive leading coefficient, or nullopt.
std::optional<HomPoly> perfect_square_root(const HomPoly& p);

/// (c, r) with p == c * r^2, c > 0 and r monic; this is the test for being the
/// square of a real polynomial when p has rational coefficients.
std::optional<std::pair<Rat, HomPoly>> square_up_to_scale(const HomPoly& p);

/// Monic greatest common divisor (leading coefficient 1 in grlex order).
HomPoly gcd(const HomPoly& p, const HomPoly& q);

/// Scales p so its leading coefficient is 1 (zero stays zero).
HomPoly make_monic(const HomPoly& p);

/// Returns p(A y) for a nonsingular nvars x nvars matrix A (row-major).
HomPoly equivalence_transform(const HomPoly& p, std::span<const Rat> matrix);

/// Canonical text form, e.g. "y1^4 y2^2 - 3 * y1^2 y2^2 y3^2".
std::string to_string(const HomPoly& p, std::string_view var_prefix = "y");

}  // namespace quasiform
