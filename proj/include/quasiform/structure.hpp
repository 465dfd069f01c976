#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "quasiform/forms.hpp"

namespace quasiform {

/// a_ij = b_i * c_j.
struct RankOneFactorization {
  std::vector<HomPoly> b;
  std::vector<HomPoly> c;
};

/// Factors a polynomial matrix whose 2x2 minors all vanish identically.
///
/// Zero rows and columns get zero factors. On the remaining block the b-vector
/// is a column divided by the gcd of its entries, so gcd(b_1, ..., b_m) = 1 and
/// every c_j follows by exact division. Returns nullopt when some minor is a
/// nonzero polynomial. Entries must share one degree (zero entries excepted).
std::optional<RankOneFactorization> rank_one_factor(const PolyMatrix& a);

/// True when every 2x2 minor of `a` is the zero polynomial.
bool all_minors_vanish(const PolyMatrix& a);

enum class CofactorShape { ScaledRankOne, PerfectSquares, LinearSquaresTimesS, NotRankOne };

const char* to_string(CofactorShape shape);

/// Tagged description of a symmetric 3x3 polynomial matrix of rank <= 1.
///
///   ScaledRankOne:        M = P * v v^T with v rational and v_pivot = 1
///                         (pivot 0 gives v = (1, alpha, beta))
///   PerfectSquares:       M = w w^T with w = (P1, Q1, R1)
///   LinearSquaresTimesS:  M = S * l l^T with l linear
struct CofactorStructure {
  CofactorShape shape = CofactorShape::NotRankOne;
  HomPoly p;                    ///< ScaledRankOne
  std::array<Rat, 3> v{};       ///< ScaledRankOne
  int pivot = 0;                ///< ScaledRankOne
  std::array<HomPoly, 3> w;     ///< PerfectSquares
  std::array<HomPoly, 3> l;     ///< LinearSquaresTimesS
  HomPoly s;                    ///< LinearSquaresTimesS

  Rat alpha() const { return v[1]; }
  Rat beta() const { return v[2]; }

  /// Re-expands the tagged data; NotRankOne has nothing to rebuild.
  PolyMatrix reconstruct() const;
};

/// Matches a symmetric 3x3 matrix against the three rank-one shapes in the
/// order ScaledRankOne, PerfectSquares, LinearSquaresTimesS; the first match
/// whose reconstruction is exact wins.
CofactorStructure classify_cofactor_structure(const PolyMatrix& tc);

/// Symmetric Gram matrix A of a quadratic form q(y) = y^T A y.
RatMatrix quadratic_gram(const HomPoly& q);

/// Two rational points within `radius` (max-norm) of the zero xi0 with
/// q(p_neg) < 0 < q(p_pos). q must be an indefinite quadratic form.
struct SignWitnesses {
  RatVector negative;
  RatVector positive;
};
SignWitnesses sign_witnesses(const HomPoly& q, std::span<const Rat> xi0, const Rat& radius);

/// True when P^2 - t Q is the square of a real quadratic form for every t in
/// `samples`. Rational data can only certify c * r^2 with c > 0 rational, which
/// is exactly the real-square condition for polynomials with rational coefficients.
bool square_family_check(const HomPoly& p, const HomPoly& q, std::span<const Rat> samples);

/// The constant c >= 0 with Q = c * P^2, if there is one.
std::optional<Rat> square_multiple(const HomPoly& p, const HomPoly& q);

}  // namespace quasiform
