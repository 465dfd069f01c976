#include "quasiform/structure.hpp"

namespace quasiform {

namespace {

int common_degree(const PolyMatrix& a) {
  int degree = -1;
  for (const HomPoly& e : a.entries()) {
    if (e.is_zero()) continue;
    if (degree < 0) {
      degree = e.degree();
    } else if (e.degree() != degree) {
      throw Error(ErrorCode::DegreeMismatch, "matrix entries have different degrees");
    }
  }
  return degree < 0 ? 0 : degree;
}

bool row_is_zero(const PolyMatrix& a, int i) {
  for (int j = 0; j < a.cols(); ++j) {
    if (!a(i, j).is_zero()) return false;
  }
  return true;
}

bool col_is_zero(const PolyMatrix& a, int j) {
  for (int i = 0; i < a.rows(); ++i) {
    if (!a(i, j).is_zero()) return false;
  }
  return true;
}

HomPoly negate(const HomPoly& p) { return scale(p, Rat(-1)); }

}  // namespace

bool all_minors_vanish(const PolyMatrix& a) {
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = i + 1; k < a.rows(); ++k) {
      for (int j = 0; j < a.cols(); ++j) {
        for (int l = j + 1; l < a.cols(); ++l) {
          if (!(mul(a(i, j), a(k, l)) == mul(a(i, l), a(k, j)))) return false;
        }
      }
    }
  }
  return true;
}

std::optional<RankOneFactorization> rank_one_factor(const PolyMatrix& a) {
  const int degree = common_degree(a);
  const int n = a.nvars();
  if (!all_minors_vanish(a)) return std::nullopt;

  RankOneFactorization out;
  if (a.is_zero()) {
    out.b.assign(a.rows(), HomPoly(n, degree));
    out.c.assign(a.cols(), HomPoly(n, 0));
    return out;
  }

  std::vector<int> live_rows, live_cols;
  for (int i = 0; i < a.rows(); ++i) {
    if (!row_is_zero(a, i)) live_rows.push_back(i);
  }
  for (int j = 0; j < a.cols(); ++j) {
    if (!col_is_zero(a, j)) live_cols.push_back(j);
  }

  // On the live block every entry is nonzero, so any live column works.
  const int j0 = live_cols.front();
  HomPoly g = a(live_rows.front(), j0);
  for (int i : live_rows) g = gcd(g, a(i, j0));
  g = make_monic(g);

  const int b_degree = degree - g.degree();
  out.b.assign(a.rows(), HomPoly(n, b_degree));
  out.c.assign(a.cols(), HomPoly(n, g.degree()));
  for (int i : live_rows) out.b[i] = *divide_exact(a(i, j0), g);

  const int i0 = live_rows.front();
  for (int j : live_cols) {
    auto cj = divide_exact(a(i0, j), out.b[i0]);
    if (!cj) return std::nullopt;
    out.c[j] = *cj;
  }
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (!(mul(out.b[i], out.c[j]) == a(i, j))) return std::nullopt;
    }
  }
  return out;
}

const char* to_string(CofactorShape shape) {
  switch (shape) {
    case CofactorShape::ScaledRankOne: return "ScaledRankOne";
    case CofactorShape::PerfectSquares: return "PerfectSquares";
    case CofactorShape::LinearSquaresTimesS: return "LinearSquaresTimesS";
    case CofactorShape::NotRankOne: return "NotRankOne";
  }
  return "?";
}

PolyMatrix CofactorStructure::reconstruct() const {
  std::vector<HomPoly> entries;
  entries.reserve(9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      switch (shape) {
        case CofactorShape::ScaledRankOne:
          entries.push_back(scale(p, v[i] * v[j]));
          break;
        case CofactorShape::PerfectSquares:
          entries.push_back(mul(w[i], w[j]));
          break;
        case CofactorShape::LinearSquaresTimesS:
          entries.push_back(mul(s, mul(l[i], l[j])));
          break;
        case CofactorShape::NotRankOne:
          throw Error(ErrorCode::InvalidArgument, "NotRankOne carries no reconstruction data");
      }
    }
  }
  return PolyMatrix(3, 3, std::move(entries));
}

namespace {

std::optional<CofactorStructure> match_scaled(const PolyMatrix& tc) {
  CofactorStructure out;
  out.shape = CofactorShape::ScaledRankOne;
  int pivot = -1;
  for (int k = 0; k < 3 && pivot < 0; ++k) {
    if (!tc(k, k).is_zero()) pivot = k;
  }
  if (pivot < 0) {
    // A symmetric rank <= 1 matrix with zero diagonal is zero.
    if (!tc.is_zero()) return std::nullopt;
    out.p = tc(0, 0);
    out.v = {Rat(1), Rat(0), Rat(0)};
    return out;
  }
  out.pivot = pivot;
  out.p = tc(pivot, pivot);
  for (int j = 0; j < 3; ++j) {
    auto q = divide_exact(tc(pivot, j), out.p);
    if (!q || q->degree() != 0) return std::nullopt;
    out.v[j] = q->is_zero() ? Rat(0) : q->leading_coefficient();
  }
  return out;
}

/// Orients a vector of square roots so that off-diagonal entries match:
/// given u_i with u_i^2 = (i,i), fixes signs so that u_i u_j = (i,j).
bool orient_roots(const PolyMatrix& tc, std::array<HomPoly, 3>& u, const HomPoly& weight) {
  int anchor = -1;
  for (int k = 0; k < 3 && anchor < 0; ++k) {
    if (!u[k].is_zero()) anchor = k;
  }
  if (anchor < 0) return false;
  for (int j = 0; j < 3; ++j) {
    if (j == anchor || u[j].is_zero()) continue;
    if (!(mul(weight, mul(u[anchor], u[j])) == tc(anchor, j))) u[j] = negate(u[j]);
  }
  return true;
}

std::optional<CofactorStructure> match_squares(const PolyMatrix& tc) {
  CofactorStructure out;
  out.shape = CofactorShape::PerfectSquares;
  const int half = tc(0, 0).degree() / 2;
  for (int i = 0; i < 3; ++i) {
    const HomPoly& e = tc(i, i);
    if (e.is_zero()) {
      out.w[i] = HomPoly(tc.nvars(), half);
      continue;
    }
    if (e.degree() % 2 != 0) return std::nullopt;
    auto r = perfect_square_root(e);
    if (!r) return std::nullopt;
    out.w[i] = *r;
  }
  if (!orient_roots(tc, out.w, HomPoly::constant(tc.nvars(), Rat(1)))) return std::nullopt;
  return out;
}

std::optional<CofactorStructure> match_linear_times_s(const PolyMatrix& tc) {
  const int n = tc.nvars();
  std::optional<HomPoly> g;
  for (int i = 0; i < 3; ++i) {
    if (tc(i, i).is_zero()) continue;
    g = g ? gcd(*g, tc(i, i)) : make_monic(tc(i, i));
  }
  if (!g || g->degree() + 2 != tc(0, 0).degree()) return std::nullopt;

  for (Rat sign : {Rat(1), Rat(-1)}) {
    CofactorStructure out;
    out.shape = CofactorShape::LinearSquaresTimesS;
    HomPoly s0 = scale(*g, sign);
    int anchor = -1;
    Rat anchor_scale;
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      if (tc(i, i).is_zero()) {
        out.l[i] = HomPoly(n, 1);
        continue;
      }
      auto residue = divide_exact(tc(i, i), s0);
      auto sq = residue ? square_up_to_scale(*residue) : std::nullopt;
      if (!sq) {
        ok = false;
        break;
      }
      if (anchor < 0) {
        anchor = i;
        anchor_scale = sq->first;
        out.l[i] = sq->second;
        continue;
      }
      auto ratio = rational_sqrt(sq->first / anchor_scale);
      if (!ratio) {
        ok = false;
        break;
      }
      out.l[i] = scale(sq->second, *ratio);
    }
    if (!ok || anchor < 0) continue;
    out.s = scale(s0, anchor_scale);
    if (!orient_roots(tc, out.l, out.s)) continue;
    return out;
  }
  return std::nullopt;
}

}  // namespace

CofactorStructure classify_cofactor_structure(const PolyMatrix& tc) {
  if (tc.rows() != 3 || tc.cols() != 3) throw Error(ErrorCode::DimensionMismatch, "cofactor structure needs a 3x3 matrix");
  if (!tc.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "cofactor structure needs a symmetric matrix");
  common_degree(tc);

  CofactorStructure none;
  if (!all_minors_vanish(tc)) return none;

  for (auto matcher : {match_scaled, match_squares, match_linear_times_s}) {
    auto found = matcher(tc);
    if (found && found->reconstruct() == tc) return *found;
  }
  return none;
}

RatMatrix quadratic_gram(const HomPoly& q) {
  if (q.degree() != 2) throw Error(ErrorCode::DegreeMismatch, "quadratic_gram: expected a quadratic form");
  const int n = q.nvars();
  RatMatrix a(n, n);
  for (const auto& [m, c] : q.terms()) {
    int first = -1, second = -1;
    for (int i = 0; i < n; ++i) {
      for (int e = 0; e < m[i]; ++e) (first < 0 ? first : second) = i;
    }
    if (first == second) {
      a(first, first) += c;
    } else {
      a(first, second) += c / 2;
      a(second, first) += c / 2;
    }
  }
  return a;
}

SignWitnesses sign_witnesses(const HomPoly& q, std::span<const Rat> xi0, const Rat& radius) {
  const int n = q.nvars();
  if (static_cast<int>(xi0.size()) != n) throw Error(ErrorCode::DimensionMismatch, "sign_witnesses: point length");
  if (radius <= 0) throw Error(ErrorCode::InvalidArgument, "sign_witnesses: radius must be positive");
  RatMatrix a = quadratic_gram(q);
  if (!inertia_descartes(a).is_indefinite()) throw Error(ErrorCode::Precondition, "sign_witnesses: form is not indefinite");
  if (evaluate(q, xi0) != 0) throw Error(ErrorCode::Precondition, "sign_witnesses: q(xi0) != 0");

  // Canonical coordinates: q(S z) = sum_k d_k z_k^2, xi0 = S z0.
  CongruenceDiagonalization cd = diagonalize_congruence(a);
  const RatMatrix& s = cd.transform;
  RatVector z0 = inverse(s) * xi0;

  Rat s1 = 0, s2 = 0;
  for (int k = 0; k < n; ++k) {
    if (cd.diagonal[k] > 0) s1 += cd.diagonal[k] * z0[k];
    if (cd.diagonal[k] < 0) s2 += cd.diagonal[k] * z0[k];
  }

  // Perturb the positive directions by eps, the negative ones by delta.
  auto point = [&](const Rat& eps, const Rat& delta) {
    RatVector z = z0;
    for (int k = 0; k < n; ++k) {
      if (cd.diagonal[k] > 0) z[k] += eps;
      if (cd.diagonal[k] < 0) z[k] += delta;
    }
    return s * std::span<const Rat>(z);
  };
  auto within = [&](const RatVector& p) {
    for (int i = 0; i < n; ++i) {
      if (abs(p[i] - xi0[i]) > radius) return false;
    }
    return true;
  };

  Rat h = 1;
  for (int k = 1; k <= 400; ++k) {
    h /= 2;
    std::vector<RatVector> candidates;
    if (s1 != 0) {
      candidates = {point(h, h * h), point(-h, h * h)};
    } else if (s2 != 0) {
      candidates = {point(h * h, h), point(h * h, -h)};
    } else {
      candidates = {point(h, h * h), point(h * h, h)};
    }
    std::optional<RatVector> neg, pos;
    for (const RatVector& c : candidates) {
      if (!within(c)) continue;
      Rat v = evaluate(q, c);
      if (v < 0 && !neg) neg = c;
      if (v > 0 && !pos) pos = c;
    }
    if (neg && pos) return {*neg, *pos};
  }
  throw Error(ErrorCode::Precondition, "sign_witnesses: no witnesses found");
}

bool square_family_check(const HomPoly& p, const HomPoly& q, std::span<const Rat> samples) {
  if (p.nvars() != q.nvars()) throw Error(ErrorCode::DimensionMismatch, "square_family_check: variable counts differ");
  if (p.degree() != 2 || q.degree() != 4) throw Error(ErrorCode::DegreeMismatch, "square_family_check: need P quadratic, Q quartic");
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "square_family_check: no samples");
  const HomPoly p2 = mul(p, p);
  for (const Rat& t : samples) {
    HomPoly r = sub(p2, scale(q, t));
    if (r.is_zero()) continue;
    if (!square_up_to_scale(r)) return false;
  }
  return true;
}

std::optional<Rat> square_multiple(const HomPoly& p, const HomPoly& q) {
  if (q.is_zero()) return Rat(0);
  if (p.is_zero()) return std::nullopt;
  auto c = divide_exact(q, mul(p, p));
  if (!c || c->degree() != 0) return std::nullopt;
  Rat value = c->leading_coefficient();
  if (value < 0) return std::nullopt;
  return value;
}

}  // namespace quasiform
