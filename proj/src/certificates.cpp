#include "quasiform/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "quasiform/structure.hpp"

namespace quasiform {

// ---------------------------------------------------------------------------
// Names and JSON
// ---------------------------------------------------------------------------

namespace {

constexpr std::pair<CertificateKind, const char*> kKindNames[] = {
    {CertificateKind::QuasiconvexNumeric, "QuasiconvexNumeric"},
    {CertificateKind::NotQuasiconvexWitness, "NotQuasiconvexWitness"},
    {CertificateKind::PolyconvexGram, "PolyconvexGram"},
    {CertificateKind::NotPolyconvexByExtremality, "NotPolyconvexByExtremality"},
    {CertificateKind::ExtremalFormZeroSet, "ExtremalFormZeroSet"},
    {CertificateKind::ExtremalPolyZeroSet, "ExtremalPolyZeroSet"},
    {CertificateKind::NotExtremalWitness, "NotExtremalWitness"},
    {CertificateKind::Inconclusive, "Inconclusive"},
};

constexpr std::pair<CertificateStatus, const char*> kStatusNames[] = {
    {CertificateStatus::Certified, "Certified"},
    {CertificateStatus::Refuted, "Refuted"},
    {CertificateStatus::Inconclusive, "Inconclusive"},
};

}  // namespace

const char* to_string(CertificateKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

const char* to_string(CertificateStatus status) {
  for (const auto& [s, name] : kStatusNames) {
    if (s == status) return name;
  }
  return "?";
}

CertificateKind certificate_kind_from_string(const std::string& s) {
  for (const auto& [k, name] : kKindNames) {
    if (s == name) return k;
  }
  throw Error(ErrorCode::Parse, "unknown certificate kind '" + s + "'");
}

CertificateStatus certificate_status_from_string(const std::string& s) {
  for (const auto& [st, name] : kStatusNames) {
    if (s == name) return st;
  }
  throw Error(ErrorCode::Parse, "unknown certificate status '" + s + "'");
}

json rat_vector_json(const RatVector& v) {
  json out = json::array();
  for (const Rat& r : v) out.push_back(to_string(r));
  return out;
}

RatVector rat_vector_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "expected an array of rational strings");
  RatVector out;
  for (const auto& e : j) {
    if (!e.is_string()) throw Error(ErrorCode::Parse, "rational values must be strings");
    out.push_back(parse_rat(e.get<std::string>()));
  }
  return out;
}

json rat_matrix_json(const RatMatrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) out.push_back(rat_vector_json(m.row(i)));
  return out;
}

RatMatrix rat_matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "expected a matrix (array of rows)");
  RatMatrix out;
  int cols = -1;
  for (const auto& row : j) {
    RatVector r = rat_vector_from_json(row);
    if (cols >= 0 && static_cast<int>(r.size()) != cols) throw Error(ErrorCode::Parse, "ragged matrix");
    if (cols < 0) {
      cols = static_cast<int>(r.size());
      out = RatMatrix(0, cols);
    }
    out.append_row(r);
  }
  return out;
}

json to_json(const Certificate& c) {
  return json{{"schema", "1"},
              {"kind", to_string(c.kind)},
              {"status", to_string(c.status)},
              {"numeric", c.numeric},
              {"note", c.note},
              {"payload", c.payload}};
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  try {
    c.kind = certificate_kind_from_string(j.at("kind").get<std::string>());
    c.status = certificate_status_from_string(j.at("status").get<std::string>());
    c.numeric = j.value("numeric", false);
    c.note = j.value("note", std::string());
    c.payload = j.value("payload", json::object());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("certificate: ") + e.what());
  }
  return c;
}

json to_json(const CertifyOptions& o) {
  return json{{"restarts", o.restarts},       {"zero_restarts", o.zero_restarts},
              {"seed", o.seed},               {"tol", o.tol},
              {"max_iter", o.max_iter},       {"ap_max_iter", o.ap_max_iter},
              {"sos_residual", o.sos_residual}, {"probe_tol", o.probe_tol},
              {"probe_min_step", o.probe_min_step}, {"probe_bisections", o.probe_bisections},
              {"probe_random_dirs", o.probe_random_dirs}};
}

namespace {

CertifyOptions options_from_json(const json& j) {
  CertifyOptions o;
  o.restarts = j.value("restarts", o.restarts);
  o.zero_restarts = j.value("zero_restarts", o.zero_restarts);
  o.seed = j.value("seed", o.seed);
  o.tol = j.value("tol", o.tol);
  o.max_iter = j.value("max_iter", o.max_iter);
  o.ap_max_iter = j.value("ap_max_iter", o.ap_max_iter);
  o.sos_residual = j.value("sos_residual", o.sos_residual);
  o.probe_tol = j.value("probe_tol", o.probe_tol);
  o.probe_min_step = j.value("probe_min_step", o.probe_min_step);
  o.probe_bisections = j.value("probe_bisections", o.probe_bisections);
  o.probe_random_dirs = j.value("probe_random_dirs", o.probe_random_dirs);
  return o;
}

json form_json(const QuadFormTensor& f) { return json{{"d", f.d()}, {"gram", rat_matrix_json(f.gram())}}; }

QuadFormTensor form_from_payload(const json& j) {
  return QuadFormTensor(j.at("d").get<int>(), rat_matrix_from_json(j.at("gram")));
}

json poly_json(const HomPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back(json{{"exponents", m}, {"coefficient", to_string(c)}});
  return json{{"nvars", p.nvars()}, {"degree", p.degree()}, {"text", to_string(p)}, {"terms", terms}};
}

HomPoly poly_from_payload(const json& j) {
  std::vector<std::pair<Monomial, Rat>> terms;
  for (const auto& t : j.at("terms")) {
    terms.emplace_back(t.at("exponents").get<Monomial>(), parse_rat(t.at("coefficient").get<std::string>()));
  }
  return HomPoly::from_terms(j.at("nvars").get<int>(), j.at("degree").get<int>(), terms);
}

double gram_scale(const QuadFormTensor& f) {
  double s = 1.0;
  for (int a = 0; a < f.d() * f.d(); ++a) {
    for (int b = 0; b < f.d() * f.d(); ++b) s = std::max(s, std::fabs(f.gram(a, b).get_d()));
  }
  return s;
}

double poly_scale(const HomPoly& p) {
  double s = 1.0;
  for (const auto& [m, c] : p.terms()) s = std::max(s, std::fabs(c.get_d()));
  return s;
}

std::vector<double> unit(std::vector<double> v) {
  double n = 0.0;
  for (double e : v) n += e * e;
  n = std::sqrt(n);
  if (n > 0) {
    for (double& e : v) e /= n;
  }
  return v;
}

/// |cos| of the angle between two vectors.
double abs_cos(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::fabs(dot) / std::sqrt(na * nb);
}

/// Rational direction with its first nonzero component positive.
RatVector positive_direction(const std::vector<double>& v, long cap) {
  RatVector r = rationalize_direction(v, cap);
  for (const Rat& e : r) {
    if (e == 0) continue;
    if (e < 0) {
      for (Rat& x : r) x = -x;
    }
    break;
  }
  return r;
}

/// Directions with entries in {-1, 0, 1}, first nonzero entry positive.
std::vector<RatVector> small_integer_directions(int n) {
  std::vector<RatVector> out;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    RatVector v(n);
    int c = code;
    for (int i = 0; i < n; ++i, c /= 3) v[i] = (c % 3) - 1;
    auto first = std::find_if(v.begin(), v.end(), [](const Rat& e) { return e != 0; });
    if (first != v.end() && *first > 0) out.push_back(std::move(v));
  }
  return out;
}

constexpr int kScanMaxDim = 4;
constexpr long kZeroDenominatorCap = 64;
constexpr double kZeroCandidate = 1e-6;   // relative value admitting a rationalization attempt
constexpr double kZeroNumeric = 1e-9;     // relative value kept without an exact representative
constexpr double kZeroDedupeAngle = 1e-4;
constexpr double kRationalizeAngle = 5e-2;  // slow convergence at flat zeros; exactness is re-checked

}  // namespace

// ---------------------------------------------------------------------------
// Quasiconvexity
// ---------------------------------------------------------------------------

BiquadraticMinimum minimize_biquadratic(const QuadFormTensor& f, int restarts, std::uint64_t seed, int max_iter,
                                        double grad_tol) {
  const int d = f.d();
  BiquadraticEvaluator ev(f);
  SphereObjective obj = [&](std::span<const double> p, std::span<double> g) {
    return ev.value(p.subspan(0, d), p.subspan(d, d), g.subspan(0, d), g.subspan(d, d));
  };
  const int blocks[] = {d, d};
  MultistartOptions mo;
  mo.restarts = restarts;
  mo.seed = seed;
  mo.max_iter = max_iter;
  mo.grad_tol = grad_tol;
  LocalMinimum best = multistart_minimize(obj, blocks, mo);
  BiquadraticMinimum out;
  out.value = best.value;
  out.x.assign(best.point.begin(), best.point.begin() + d);
  out.y.assign(best.point.begin() + d, best.point.end());
  return out;
}

std::optional<std::pair<RatVector, RatVector>> rationalize_negative_point(const QuadFormTensor& f,
                                                                          std::span<const double> x,
                                                                          std::span<const double> y) {
  std::vector<double> xv(x.begin(), x.end()), yv(y.begin(), y.end());
  for (long cap = 1; cap <= (1L << 30); cap *= 2) {
    RatVector xr = rationalize_direction(xv, cap);
    RatVector yr = rationalize_direction(yv, cap);
    if (f.biquadratic(xr, yr) < 0) return std::make_pair(xr, yr);
  }
  return std::nullopt;
}

std::optional<std::pair<int, RatVector>> diagonal_negative_direction(const AcousticMatrix& t) {
  for (int i = 0; i < t.d(); ++i) {
    const HomPoly& q = t(i, i);
    RatMatrix a = q.is_zero() ? RatMatrix(t.d(), t.d()) : quadratic_gram(q);
    CongruenceDiagonalization cd = diagonalize_congruence(a);
    for (int k = 0; k < t.d(); ++k) {
      if (cd.diagonal[k] < 0) {
        RatVector y(t.d());
        for (int r = 0; r < t.d(); ++r) y[r] = cd.transform(r, k);
        return std::make_pair(i, y);
      }
    }
  }
  return std::nullopt;
}

double quartic_sos_residual(const HomPoly& q, int max_iter) {
  if (q.degree() != 4) throw Error(ErrorCode::DegreeMismatch, "quartic_sos_residual: expected a quartic");
  const int n = q.nvars();
  const auto half = monomials_of_degree(n, 2);
  const int all = static_cast<int>(half.size());
  const double s = poly_scale(q);

  // Pairs (a, b) grouped by the product monomial they multiply.
  std::map<Monomial, std::vector<std::pair<int, int>>, GrlexDescending> classes;
  for (int a = 0; a < all; ++a) {
    for (int b = 0; b < all; ++b) {
      Monomial prod(n);
      for (int i = 0; i < n; ++i) prod[i] = half[a][i] + half[b][i];
      classes[prod].emplace_back(a, b);
    }
  }

  // A diagonal entry that is alone in a class with zero target must vanish,
  // and with it the whole row of a PSD Gram matrix.
  std::vector<bool> dead(all, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [mono, pairs] : classes) {
      if (q.coefficient(mono) != 0) continue;
      std::vector<std::pair<int, int>> live;
      for (auto [a, b] : pairs) {
        if (!dead[a] && !dead[b]) live.emplace_back(a, b);
      }
      if (live.size() == 1 && live[0].first == live[0].second) {
        dead[live[0].first] = true;
        changed = true;
      }
    }
  }
  std::vector<int> index(all, -1);
  int m = 0;
  for (int a = 0; a < all; ++a) {
    if (!dead[a]) index[a] = m++;
  }

  std::vector<std::pair<double, std::vector<int>>> constraints;
  for (const auto& [mono, pairs] : classes) {
    std::vector<int> idx;
    for (auto [a, b] : pairs) {
      if (!dead[a] && !dead[b]) idx.push_back(index[a] * m + index[b]);
    }
    double target = q.coefficient(mono).get_d() / s;
    if (idx.empty()) {
      if (target != 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    constraints.emplace_back(target, std::move(idx));
  }
  if (m == 0) return 0.0;

  auto project = [&](const SymMatF& x) {
    std::vector<double> a = x.data();
    for (const auto& [target, idx] : constraints) {
      double sum = 0.0;
      for (int k : idx) sum += a[k];
      double shift = (target - sum) / static_cast<double>(idx.size());
      for (int k : idx) a[k] += shift;
    }
    return SymMatF(m, std::move(a));
  };
  AlternatingProjectionOptions ao;
  ao.max_iter = max_iter;
  return alternating_projections(SymMatF(m), project, ao).residual;
}

namespace {

Certificate negative_witness(const QuadFormTensor& f, const RatVector& x, const RatVector& y, const std::string& note) {
  Certificate c;
  c.kind = CertificateKind::NotQuasiconvexWitness;
  c.status = CertificateStatus::Refuted;
  c.note = note;
  c.payload = json{{"form", form_json(f)},
                   {"x", rat_vector_json(x)},
                   {"y", rat_vector_json(y)},
                   {"value", to_string(f.biquadratic(x, y))}};
  return c;
}

}  // namespace

Certificate check_quasiconvex(const QuadFormTensor& f, const CertifyOptions& options) {
  if (!(options.tol > 0) || options.restarts < 1 || options.max_iter < 1) {
    throw Error(ErrorCode::InvalidArgument, "check_quasiconvex: invalid tolerances or iteration counts");
  }
  const int d = f.d();
  const AcousticMatrix t = acoustic_matrix(f);

  if (auto diag = diagonal_negative_direction(t)) {
    RatVector x(d);
    x[diag->first] = 1;
    return negative_witness(f, x, diag->second, "a diagonal entry of the acoustic matrix is not positive semidefinite");
  }

  const double threshold = options.tol * gram_scale(f);
  BiquadraticMinimum m = minimize_biquadratic(f, options.restarts, options.seed, options.max_iter);
  if (m.value < -threshold) {
    if (auto w = rationalize_negative_point(f, m.x, m.y)) {
      return negative_witness(f, w->first, w->second, "negative value of f(x (x) y) at a rationalized minimizer");
    }
    Certificate c;
    c.kind = CertificateKind::Inconclusive;
    c.numeric = true;
    c.note = "numeric minimum is negative but no exact negative point was found";
    c.payload = json{{"form", form_json(f)}, {"minimum", m.value}, {"options", to_json(options)}};
    return c;
  }

  json sos = json::array();
  bool sos_ok = true;
  if (d == 3) {
    PolyMatrix cof = cofactor_matrix(t);
    for (int i = 0; i < 3; ++i) {
      double r = cof(i, i).is_zero() ? 0.0 : quartic_sos_residual(cof(i, i), options.ap_max_iter);
      sos.push_back(r);
      if (!(r <= options.sos_residual)) sos_ok = false;
    }
  }

  Certificate c;
  c.numeric = true;
  c.payload = json{{"form", form_json(f)},
                   {"minimum", m.value},
                   {"argmin_x", m.x},
                   {"argmin_y", m.y},
                   {"threshold", threshold},
                   {"diagonal_psd", true},
                   {"cofactor_sos_residuals", sos},
                   {"options", to_json(options)}};
  if (!sos_ok) {
    c.kind = CertificateKind::Inconclusive;
    c.note = "numeric minimum is nonnegative but a principal cofactor quartic failed the SOS feasibility check";
    return c;
  }
  c.kind = CertificateKind::QuasiconvexNumeric;
  c.status = CertificateStatus::Certified;
  c.note = "numeric minimum of lambda_min(T(y)) over the sphere is above -tol; exact diagonal check passed";
  return c;
}

// ---------------------------------------------------------------------------
// Polyconvexity
// ---------------------------------------------------------------------------

RatMatrix polyconvex_gram(const QuadFormTensor& f, std::span<const Rat> c) {
  if (f.d() != 3 || c.size() != 9) throw Error(ErrorCode::InvalidArgument, "polyconvex_gram: d = 3 and 9 coefficients");
  return add_null_lagrangian(f, c).gram();
}

namespace {

/// Rows of G(c) with zero diagonal must vanish; each such entry pins at most
/// one coefficient because the nine lifts have disjoint supports.
struct Presolve {
  std::vector<int> zero_rows;
  std::array<std::optional<Rat>, 9> fixed;
  bool infeasible = false;
  std::string reason;
};

Presolve presolve_polyconvex(const QuadFormTensor& f) {
  const auto& basis = null_lagrangian_basis();
  Presolve ps;
  for (int a = 0; a < 9; ++a) {
    if (f.gram(a, a) == 0) ps.zero_rows.push_back(a);
  }
  for (int a : ps.zero_rows) {
    for (int b = 0; b < 9; ++b) {
      int owner = -1;
      for (int k = 0; k < 9; ++k) {
        if (basis.forms[k].gram(a, b) != 0) owner = k;
      }
      if (owner < 0) {
        if (f.gram(a, b) != 0) {
          ps.infeasible = true;
          ps.reason = "entry (" + std::to_string(a) + "," + std::to_string(b) +
                      ") of a zero-diagonal row cannot be cancelled by null Lagrangians";
          return ps;
        }
        continue;
      }
      Rat value = -f.gram(a, b) / basis.forms[owner].gram(a, b);
      if (ps.fixed[owner] && *ps.fixed[owner] != value) {
        ps.infeasible = true;
        ps.reason = "zero-diagonal rows force conflicting values of null-Lagrangian coefficient " + std::to_string(owner);
        return ps;
      }
      ps.fixed[owner] = value;
    }
  }
  return ps;
}

json presolve_json(const Presolve& ps) {
  json fixed = json::array();
  for (const auto& v : ps.fixed) fixed.push_back(v ? json(to_string(*v)) : json(nullptr));
  return json{{"zero_rows", ps.zero_rows}, {"fixed", fixed}, {"infeasible", ps.infeasible}, {"reason", ps.reason}};
}

bool presolve_refutes(const QuadFormTensor& f, const Presolve& ps) {
  if (ps.infeasible) return true;
  RatVector c(9);
  for (int k = 0; k < 9; ++k) {
    if (!ps.fixed[k]) return false;
    c[k] = *ps.fixed[k];
  }
  return !is_psd_exact(polyconvex_gram(f, c));
}

Certificate gram_certified(const QuadFormTensor& f, const RatVector& c, const std::string& note) {
  Certificate out;
  out.kind = CertificateKind::PolyconvexGram;
  out.status = CertificateStatus::Certified;
  out.note = note;
  out.payload = json{{"form", form_json(f)}, {"c", rat_vector_json(c)}, {"gram_c", rat_matrix_json(polyconvex_gram(f, c))}};
  return out;
}

}  // namespace

Certificate check_polyconvex(const QuadFormTensor& f, const CertifyOptions& options) {
  if (f.d() != 3) throw Error(ErrorCode::InvalidArgument, "check_polyconvex: requires d = 3");
  if (options.ap_max_iter < 1) throw Error(ErrorCode::InvalidArgument, "check_polyconvex: invalid iteration count");
  const auto& basis = null_lagrangian_basis();
  Presolve ps = presolve_polyconvex(f);

  if (presolve_refutes(f, ps)) {
    Certificate c;
    c.kind = CertificateKind::PolyconvexGram;
    c.status = CertificateStatus::Refuted;
    c.note = ps.infeasible ? ps.reason
                           : "zero-diagonal rows pin every null-Lagrangian coefficient and the forced Gram "
                             "matrix is not positive semidefinite";
    c.payload = json{{"form", form_json(f)}, {"presolve", presolve_json(ps)}};
    return c;
  }

  RatVector c0(9);
  std::vector<int> free;
  for (int k = 0; k < 9; ++k) {
    if (ps.fixed[k]) {
      c0[k] = *ps.fixed[k];
    } else {
      free.push_back(k);
    }
  }
  if (is_psd_exact(polyconvex_gram(f, c0))) return gram_certified(f, c0, "Gram matrix is positive semidefinite");
  if (free.empty()) {
    // Unreachable: presolve_refutes covers this case.
    throw Error(ErrorCode::Precondition, "check_polyconvex: inconsistent presolve");
  }

  // Work on the rows that are not forced to zero.
  std::vector<int> live;
  for (int a = 0; a < 9; ++a) {
    if (std::find(ps.zero_rows.begin(), ps.zero_rows.end(), a) == ps.zero_rows.end()) live.push_back(a);
  }
  const int n = static_cast<int>(live.size());
  RatMatrix base_exact = polyconvex_gram(f, c0);
  SymMatF base(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) base.set(i, j, base_exact(live[i], live[j]).get_d());
  }
  std::vector<SymMatF> dirs;
  std::vector<double> norms;
  for (int k : free) {
    SymMatF nk(n);
    double nn = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        double v = basis.forms[k].gram(live[i], live[j]).get_d();
        nk.set(i, j, v);
      }
    }
    for (double v : nk.data()) nn += v * v;
    dirs.push_back(nk);
    norms.push_back(nn);
  }
  auto coefficients = [&](const SymMatF& x) {
    std::vector<double> c(free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
      double dot = 0.0;
      for (std::size_t e = 0; e < x.data().size(); ++e) dot += (x.data()[e] - base.data()[e]) * dirs[k].data()[e];
      c[k] = dot / norms[k];
    }
    return c;
  };
  auto project = [&](const SymMatF& x) {
    std::vector<double> c = coefficients(x);
    std::vector<double> out = base.data();
    for (std::size_t k = 0; k < free.size(); ++k) {
      for (std::size_t e = 0; e < out.size(); ++e) out[e] += c[k] * dirs[k].data()[e];
    }
    return SymMatF(n, std::move(out));
  };

  const double scale = gram_scale(f);
  json runs = json::array();
  bool numeric_feasible = false;
  bool all_stalled = true;
  for (double floor : {1e-2, 1e-4, 1e-6, 0.0}) {
    AlternatingProjectionOptions ao;
    ao.max_iter = options.ap_max_iter;
    ao.psd_floor = floor * scale;
    AlternatingProjectionResult r = alternating_projections(base, project, ao);
    runs.push_back(json{{"floor", ao.psd_floor},
                        {"residual", r.residual},
                        {"iterations", r.iterations},
                        {"converged", r.converged},
                        {"stalled", r.stalled}});
    if (!r.stalled) all_stalled = false;
    if (!r.converged) continue;
    numeric_feasible = true;
    std::vector<double> c = coefficients(r.point);
    for (long cap = 16; cap <= (1L << 20); cap *= 4) {
      RatVector cr = c0;
      for (std::size_t k = 0; k < free.size(); ++k) cr[free[k]] = rationalize(c[k], cap);
      if (is_psd_exact(polyconvex_gram(f, cr))) {
        Certificate out = gram_certified(f, cr, "rationalized null-Lagrangian shift gives a positive semidefinite Gram matrix");
        out.payload["runs"] = runs;
        return out;
      }
    }
  }

  Certificate out;
  out.kind = CertificateKind::PolyconvexGram;
  out.status = CertificateStatus::Inconclusive;
  out.numeric = numeric_feasible;
  out.note = numeric_feasible ? "numerically feasible but no rationalized Gram matrix verified exactly"
             : all_stalled    ? "alternating projections stalled"
                              : "alternating projections did not converge";
  out.payload = json{{"form", form_json(f)}, {"presolve", presolve_json(ps)}, {"runs", runs}};
  return out;
}

// ---------------------------------------------------------------------------
// Rank-one zeros and the form certificate
// ---------------------------------------------------------------------------

std::vector<ZeroPoint> find_rank_one_zeros(const QuadFormTensor& f, int restarts, std::uint64_t seed, int max_iter) {
  const int d = f.d();
  BiquadraticEvaluator ev(f);
  SphereObjective obj = [&](std::span<const double> p, std::span<double> g) {
    return ev.value(p.subspan(0, d), p.subspan(d, d), g.subspan(0, d), g.subspan(d, d));
  };
  const int blocks[] = {d, d};
  MultistartOptions mo;
  mo.restarts = restarts;
  mo.seed = seed;
  mo.max_iter = max_iter;
  mo.grad_tol = 1e-14;
  const double scale = gram_scale(f);

  std::vector<ZeroPoint> out;
  for (const LocalMinimum& lm : multistart_local_minima(obj, blocks, mo)) {
    if (lm.value > kZeroCandidate * scale) continue;
    ZeroPoint z;
    z.x.assign(lm.point.begin(), lm.point.begin() + d);
    z.y.assign(lm.point.begin() + d, lm.point.end());
    z.value = lm.value;
    for (long cap = 1; cap <= kZeroDenominatorCap; cap *= 2) {
      RatVector xr = positive_direction(z.x, cap);
      RatVector yr = positive_direction(z.y, cap);
      std::vector<double> xd = to_double(xr), yd = to_double(yr);
      if (abs_cos(xd, z.x) < std::cos(kRationalizeAngle) || abs_cos(yd, z.y) < std::cos(kRationalizeAngle)) continue;
      if (f.biquadratic(xr, yr) == 0) {
        z.xr = std::move(xr);
        z.yr = std::move(yr);
        z.x = unit(xd);
        z.y = unit(yd);
        z.value = 0.0;
        z.rationalized = true;
        break;
      }
    }
    if (!z.rationalized && z.value > kZeroNumeric * scale) continue;

    bool duplicate = false;
    for (const ZeroPoint& o : out) {
      if (z.rationalized && o.rationalized) {
        if (z.xr == o.xr && z.yr == o.yr) duplicate = true;
      } else if (abs_cos(z.x, o.x) > std::cos(kZeroDedupeAngle) && abs_cos(z.y, o.y) > std::cos(kZeroDedupeAngle)) {
        duplicate = true;
      }
      if (duplicate) break;
    }
    if (!duplicate) out.push_back(std::move(z));
  }
  // Exact scan of small integer points catches zeros whose basins are flat.
  if (d <= kScanMaxDim) {
    const auto dirs = small_integer_directions(d);
    for (const RatVector& xr : dirs) {
      for (const RatVector& yr : dirs) {
        if (f.biquadratic(xr, yr) != 0) continue;
        bool seen = std::any_of(out.begin(), out.end(),
                                [&](const ZeroPoint& o) { return o.rationalized && o.xr == xr && o.yr == yr; });
        if (seen) continue;
        ZeroPoint z;
        z.xr = xr;
        z.yr = yr;
        z.x = unit(to_double(xr));
        z.y = unit(to_double(yr));
        z.rationalized = true;
        out.push_back(std::move(z));
      }
    }
  }
  return out;
}

HomPoly biquadratic_polynomial(const QuadFormTensor& f) {
  const int d = f.d();
  std::vector<std::pair<Monomial, Rat>> terms;
  for (int a = 0; a < d * d; ++a) {
    for (int b = 0; b < d * d; ++b) {
      const Rat& g = f.gram(a, b);
      if (g == 0) continue;
      Monomial m(2 * d, 0);
      m[a / d] += 1;
      m[d + a % d] += 1;
      m[b / d] += 1;
      m[d + b % d] += 1;
      terms.emplace_back(std::move(m), g);
    }
  }
  return HomPoly::from_terms(2 * d, 4, terms);
}

namespace {

RatMatrix evaluate_matrix(const std::vector<HomPoly>& entries, int n, std::span<const Rat> point) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = evaluate(entries[i * n + j], point);
  }
  return m;
}

}  // namespace

RatMatrix form_zero_conditions(const QuadFormTensor& f, const std::vector<std::pair<RatVector, RatVector>>& zeros) {
  const int d = f.d();
  RatMatrix rows(0, d * d);
  if (zeros.empty()) return rows;
  const std::vector<HomPoly> hess = hessian(biquadratic_polynomial(f));
  for (const auto& [x, y] : zeros) {
    if (static_cast<int>(x.size()) != d || static_cast<int>(y.size()) != d) {
      throw Error(ErrorCode::DimensionMismatch, "zero point has the wrong length");
    }
    if (f.biquadratic(x, y) != 0) throw Error(ErrorCode::Precondition, "claimed zero is not a zero of f(x (x) y)");
    RatVector row(d * d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) row[i * d + j] = x[i] * y[j];
    }
    rows.append_row(row);

    RatVector z(x);
    z.insert(z.end(), y.begin(), y.end());
    for (const RatVector& v : nullspace_rational(evaluate_matrix(hess, 2 * d, z)).basis) {
      // Derivative of x B y^T at (x, y) along (u, w).
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) row[i * d + j] = v[i] * y[j] + x[i] * v[d + j];
      }
      rows.append_row(row);
    }
  }
  return rows;
}

namespace {

json zeros_json(const std::vector<std::pair<RatVector, RatVector>>& zeros) {
  json out = json::array();
  for (const auto& [x, y] : zeros) out.push_back(json{{"x", rat_vector_json(x)}, {"y", rat_vector_json(y)}});
  return out;
}

std::vector<std::pair<RatVector, RatVector>> zeros_from_json(const json& j) {
  std::vector<std::pair<RatVector, RatVector>> out;
  for (const auto& z : j) out.emplace_back(rat_vector_from_json(z.at("x")), rat_vector_from_json(z.at("y")));
  return out;
}

json basis_json(const std::vector<RatVector>& basis) {
  json out = json::array();
  for (const RatVector& v : basis) out.push_back(rat_vector_json(v));
  return out;
}

}  // namespace

Certificate extremal_form_certificate(const QuadFormTensor& f, const std::vector<ZeroPoint>& zeros) {
  std::vector<std::pair<RatVector, RatVector>> exact;
  for (const ZeroPoint& z : zeros) {
    if (!z.rationalized) throw Error(ErrorCode::InvalidArgument, "extremal_form_certificate: zeros must be rationalized");
    exact.emplace_back(z.xr, z.yr);
  }
  RatMatrix cond = form_zero_conditions(f, exact);
  NullspaceResult ns = nullspace_rational(cond);

  Certificate c;
  c.kind = CertificateKind::ExtremalFormZeroSet;
  c.payload = json{{"form", form_json(f)},
                   {"zeros", zeros_json(exact)},
                   {"conditions", cond.rows()},
                   {"rank", ns.rank},
                   {"nullity", ns.basis.size()},
                   {"surviving", basis_json(ns.basis)}};
  if (ns.basis.empty()) {
    c.status = CertificateStatus::Certified;
    c.note = "first- and second-order zero conditions leave no rank-one direction";
  } else {
    c.status = CertificateStatus::Inconclusive;
    c.note = std::to_string(ns.basis.size()) + "-dimensional space of rank-one directions survives the zero conditions";
  }
  return c;
}

// ---------------------------------------------------------------------------
// Polynomial zeros and the polynomial certificate
// ---------------------------------------------------------------------------

namespace {

SphereObjective polynomial_objective(const HomPoly& p, std::vector<HomPoly>& grad) {
  grad = gradient(p);
  return [&p, &grad](std::span<const double> y, std::span<double> g) {
    for (std::size_t i = 0; i < grad.size(); ++i) g[i] = evaluate(grad[i], y);
    return evaluate(p, y);
  };
}

}  // namespace

double polynomial_sphere_minimum(const HomPoly& p, int restarts, std::uint64_t seed, int max_iter) {
  std::vector<HomPoly> grad;
  SphereObjective obj = polynomial_objective(p, grad);
  const int blocks[] = {p.nvars()};
  MultistartOptions mo;
  mo.restarts = restarts;
  mo.seed = seed;
  mo.max_iter = max_iter;
  return multistart_minimize(obj, blocks, mo).value;
}

std::vector<RatVector> find_polynomial_zeros(const HomPoly& p, int restarts, std::uint64_t seed, int max_iter) {
  std::vector<HomPoly> grad;
  SphereObjective obj = polynomial_objective(p, grad);
  const int blocks[] = {p.nvars()};
  MultistartOptions mo;
  mo.restarts = restarts;
  mo.seed = seed;
  mo.max_iter = max_iter;
  mo.grad_tol = 1e-14;
  const double scale = poly_scale(p);

  std::vector<RatVector> out;
  for (const LocalMinimum& lm : multistart_local_minima(obj, blocks, mo)) {
    if (lm.value > kZeroCandidate * scale) continue;
    for (long cap = 1; cap <= kZeroDenominatorCap; cap *= 2) {
      RatVector yr = positive_direction(lm.point, cap);
      if (abs_cos(to_double(yr), lm.point) < std::cos(kRationalizeAngle)) continue;
      if (evaluate(p, yr) == 0) {
        if (std::find(out.begin(), out.end(), yr) == out.end()) out.push_back(yr);
        break;
      }
    }
  }
  if (p.nvars() <= kScanMaxDim) {
    for (const RatVector& yr : small_integer_directions(p.nvars())) {
      if (evaluate(p, yr) == 0 && std::find(out.begin(), out.end(), yr) == out.end()) out.push_back(yr);
    }
  }
  return out;
}

RatMatrix poly_zero_conditions(const HomPoly& p, const std::vector<RatVector>& zeros) {
  const int n = p.nvars();
  const auto monos = monomials_of_degree(n, p.degree());
  const int cols = static_cast<int>(monos.size());
  RatMatrix rows(0, cols);
  if (zeros.empty()) return rows;
  const std::vector<HomPoly> hess = hessian(p);

  // Value at y of the partial derivative of y^e along the listed variables.
  auto partial = [](const Monomial& e, std::span<const Rat> y, std::initializer_list<int> vars) {
    Monomial m = e;
    Rat c = 1;
    for (int v : vars) {
      if (m[v] == 0) return Rat(0);
      c *= m[v];
      m[v] -= 1;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int k = 0; k < m[i]; ++k) c *= y[i];
    }
    return c;
  };

  for (const RatVector& y : zeros) {
    if (static_cast<int>(y.size()) != n) throw Error(ErrorCode::DimensionMismatch, "zero point has the wrong length");
    if (evaluate(p, y) != 0) throw Error(ErrorCode::Precondition, "claimed zero is not a zero of P");
    RatVector row(cols);
    for (int c = 0; c < cols; ++c) row[c] = partial(monos[c], y, {});
    rows.append_row(row);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < cols; ++c) row[c] = partial(monos[c], y, {i});
      rows.append_row(row);
    }
    for (const RatVector& v : nullspace_rational(evaluate_matrix(hess, n, y)).basis) {
      for (int i = 0; i < n; ++i) {
        for (int c = 0; c < cols; ++c) {
          Rat s = 0;
          for (int j = 0; j < n; ++j) {
            if (v[j] != 0) s += partial(monos[c], y, {i, j}) * v[j];
          }
          row[c] = s;
        }
        rows.append_row(row);
      }
    }
  }
  return rows;
}

namespace {

json poly_zeros_json(const std::vector<RatVector>& zeros) {
  json out = json::array();
  for (const RatVector& y : zeros) out.push_back(rat_vector_json(y));
  return out;
}

HomPoly poly_from_coefficients(int nvars, int degree, const RatVector& coeffs) {
  const auto monos = monomials_of_degree(nvars, degree);
  std::vector<std::pair<Monomial, Rat>> terms;
  for (std::size_t k = 0; k < monos.size(); ++k) {
    if (coeffs[k] != 0) terms.emplace_back(monos[k], coeffs[k]);
  }
  return HomPoly::from_terms(nvars, degree, terms);
}

bool proportional(const HomPoly& a, const HomPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return make_monic(a) == make_monic(b);
}

}  // namespace

Certificate extremal_poly_certificate(const HomPoly& p, const std::vector<RatVector>& zeros, const CertifyOptions& options) {
  if (p.nvars() != 3) throw Error(ErrorCode::DimensionMismatch, "extremal_poly_certificate: expected 3 variables");
  if (p.degree() != 6) throw Error(ErrorCode::DegreeMismatch, "extremal_poly_certificate: expected a sextic");
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "extremal_poly_certificate: zero polynomial");
  const double min = polynomial_sphere_minimum(p, options.restarts, options.seed, options.max_iter);
  if (min < -options.tol * poly_scale(p)) {
    throw Error(ErrorCode::Precondition, "extremal_poly_certificate: polynomial is negative somewhere on the sphere");
  }

  RatMatrix cond = poly_zero_conditions(p, zeros);
  NullspaceResult ns = nullspace_rational(cond);
  json surviving = json::array();
  for (const RatVector& v : ns.basis) surviving.push_back(to_string(poly_from_coefficients(3, 6, v)));

  Certificate c;
  c.kind = CertificateKind::ExtremalPolyZeroSet;
  c.payload = json{{"polynomial", poly_json(p)},
                   {"zeros", poly_zeros_json(zeros)},
                   {"conditions", cond.rows()},
                   {"rank", ns.rank},
                   {"nullity", ns.basis.size()},
                   {"surviving", surviving},
                   {"sphere_minimum", min}};
  if (ns.basis.size() == 1 && proportional(poly_from_coefficients(3, 6, ns.basis[0]), p)) {
    c.status = CertificateStatus::Certified;
    c.note = "zero conditions leave only multiples of P";
  } else {
    c.status = CertificateStatus::Inconclusive;
    c.note = std::to_string(ns.basis.size()) + "-dimensional space of sextics survives the zero conditions";
  }
  return c;
}

// ---------------------------------------------------------------------------
// Rank-one subtraction probe
// ---------------------------------------------------------------------------

namespace {

bool numerically_quasiconvex(const QuadFormTensor& g, const CertifyOptions& options, double tol,
                             std::span<const std::vector<double>> warm_starts = {}) {
  const double threshold = -tol * gram_scale(g);
  BiquadraticMinimum m = minimize_biquadratic(g, options.restarts, options.seed, options.max_iter);
  if (m.value < threshold) return false;
  if (warm_starts.empty()) return true;
  const int d = g.d();
  BiquadraticEvaluator ev(g);
  SphereObjective obj = [&](std::span<const double> p, std::span<double> gr) {
    return ev.value(p.subspan(0, d), p.subspan(d, d), gr.subspan(0, d), gr.subspan(d, d));
  };
  const int blocks[] = {d, d};
  std::vector<double> values(warm_starts.size());
  parallel_for(static_cast<int>(warm_starts.size()), [&](int k) {
    values[k] = sphere_descent(obj, blocks, warm_starts[k], 1e-12, options.max_iter).value;
  });
  return std::all_of(values.begin(), values.end(), [&](double v) { return v >= threshold; });
}

QuadFormTensor subtract(const QuadFormTensor& f, const RankOneForm& b, const Rat& t) { return f - t * b.form(); }

RatVector random_integer_vector(CounterRng& rng, int n, int range) {
  RatVector v(n);
  for (auto& e : v) e = static_cast<long>(rng() % (2 * range + 1)) - range;
  return v;
}

bool is_zero_vector(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& e) { return e == 0; });
}

}  // namespace

std::vector<std::vector<double>> probe_warm_starts(const std::vector<ZeroPoint>& zeros, std::uint64_t seed) {
  constexpr std::size_t kMaxZeros = 16;
  constexpr int kPerZero = 2;
  constexpr double kRadius = 1e-2;
  std::vector<std::vector<double>> out;
  CounterRng rng(seed, 0x7761726dULL);
  for (std::size_t k = 0; k < zeros.size() && k < kMaxZeros; ++k) {
    for (int r = 0; r < kPerZero; ++r) {
      std::vector<double> p(zeros[k].x);
      p.insert(p.end(), zeros[k].y.begin(), zeros[k].y.end());
      for (double& e : p) e += kRadius * rng.normal();
      out.push_back(std::move(p));
    }
  }
  return out;
}

double max_subtractable_step(const QuadFormTensor& f, const RankOneForm& b, const CertifyOptions& options,
                             std::span<const std::vector<double>> warm_starts) {
  if (b.is_zero()) return 0.0;
  auto ok = [&](double t) {
    return numerically_quasiconvex(subtract(f, b, Rat(t)), options, options.probe_tol, warm_starts);
  };
  double lo = 0.0, hi = options.probe_min_step;
  int bisections = 10;
  if (ok(hi)) {
    lo = hi;
    hi *= 2;
    while (hi < 1e9 && ok(hi)) {
      lo = hi;
      hi *= 2;
    }
    if (hi >= 1e9) return lo;
    bisections = options.probe_bisections;
  }
  for (int k = 0; k < bisections; ++k) {
    double mid = 0.5 * (lo + hi);
    if (ok(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

namespace {

std::vector<RankOneForm> probe_directions_from_zeros(const QuadFormTensor& f, const std::vector<ZeroPoint>& zeros,
                                                     const CertifyOptions& options) {
  const int d = f.d();
  std::vector<std::pair<RatVector, RatVector>> exact;
  for (const ZeroPoint& z : zeros) {
    if (z.rationalized) exact.emplace_back(z.xr, z.yr);
  }
  std::vector<RatVector> surviving = nullspace_rational(form_zero_conditions(f, exact)).basis;
  std::vector<RankOneForm> out;
  for (const RatVector& v : surviving) out.emplace_back(d, v);
  CounterRng rng(options.seed, 0x70726f6265ULL);
  if (surviving.size() > 1) {
    for (int k = 0; k < options.probe_random_dirs; ++k) {
      RatVector w = random_integer_vector(rng, static_cast<int>(surviving.size()), 3);
      RatVector v(d * d);
      for (std::size_t s = 0; s < surviving.size(); ++s) {
        for (int e = 0; e < d * d; ++e) v[e] += w[s] * surviving[s][e];
      }
      if (!is_zero_vector(v)) out.emplace_back(d, v);
    }
  }
  for (int k = 0; k < options.probe_random_dirs; ++k) {
    RatVector v = random_integer_vector(rng, d * d, 3);
    if (!is_zero_vector(v)) out.emplace_back(d, v);
  }
  return out;
}

}  // namespace

std::vector<RankOneForm> default_probe_directions(const QuadFormTensor& f, const CertifyOptions& options) {
  return probe_directions_from_zeros(f, find_rank_one_zeros(f, options.zero_restarts, options.seed), options);
}

Certificate subtract_probe(const QuadFormTensor& f, const std::vector<RankOneForm>& candidate_dirs,
                           const CertifyOptions& options) {
  const std::vector<ZeroPoint> zeros = find_rank_one_zeros(f, options.zero_restarts, options.seed);
  const auto warm = probe_warm_starts(zeros, options.seed);
  std::vector<RankOneForm> dirs =
      candidate_dirs.empty() ? probe_directions_from_zeros(f, zeros, options) : candidate_dirs;
  json trials = json::array();
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    if (dirs[k].d() != f.d()) throw Error(ErrorCode::DimensionMismatch, "subtract_probe: direction dimension");
    double t = max_subtractable_step(f, dirs[k], options, warm);
    trials.push_back(json{{"B", rat_vector_json(dirs[k].b())}, {"t", t}});
    order.emplace_back(-t, k);
  }
  std::stable_sort(order.begin(), order.end());

  const AcousticMatrix tf = acoustic_matrix(f);
  for (const auto& [neg_t, k] : order) {
    double t = -neg_t;
    if (t < options.probe_min_step) break;
    Rat tr = rationalize_below(t * (1.0 - 1e-6), 4096);
    if (tr < Rat(options.probe_min_step)) continue;
    QuadFormTensor g = subtract(f, dirs[k], tr);
    if (diagonal_negative_direction(acoustic_matrix(g))) continue;
    if (!numerically_quasiconvex(g, options, options.probe_tol, warm)) continue;
    HomPoly det_g = determinant(acoustic_matrix(g));
    bool consistent = det_g == det_update(tf, dirs[k], tr);

    Certificate c;
    c.kind = CertificateKind::NotExtremalWitness;
    c.status = CertificateStatus::Refuted;
    c.numeric = true;
    c.note = "a rank-one form can be subtracted while f stays numerically quasiconvex (optimization-based probe)";
    c.payload = json{{"form", form_json(f)},
                     {"B", rat_vector_json(dirs[k].b())},
                     {"t", to_string(tr)},
                     {"remainder", form_json(g)},
                     {"remainder_det", to_string(det_g)},
                     {"det_update_consistent", consistent},
                     {"trials", trials},
                     {"options", to_json(options)}};
    return c;
  }

  Certificate c;
  c.kind = CertificateKind::NotExtremalWitness;
  c.status = CertificateStatus::Inconclusive;
  c.note = "no direction admits a subtraction step above the probe threshold";
  c.payload = json{{"form", form_json(f)}, {"trials", trials}, {"options", to_json(options)}};
  return c;
}

std::optional<RankOneDecomposition> decompose_rank_one_plus_extremal(const QuadFormTensor& f,
                                                                     const CertifyOptions& options) {
  if (f.d() != 3) throw Error(ErrorCode::InvalidArgument, "decompose: requires d = 3");
  const AcousticMatrix t = acoustic_matrix(f);
  const HomPoly det = determinant(t);
  if (det.is_zero() || !perfect_square_root(det)) {
    throw Error(ErrorCode::Precondition, "decompose: det T must be a nonzero perfect square");
  }
  const PolyMatrix cof = cofactor_matrix(t);

  std::vector<RankOneForm> dirs = default_probe_directions(f, options);
  const std::size_t surviving = dirs.size();
  for (std::size_t a = 0; a < surviving; ++a) {
    for (std::size_t b = a + 1; b < surviving; ++b) {
      RatVector sum(9), diff(9);
      for (int e = 0; e < 9; ++e) {
        sum[e] = dirs[a].b()[e] + dirs[b].b()[e];
        diff[e] = dirs[a].b()[e] - dirs[b].b()[e];
      }
      if (!is_zero_vector(sum)) dirs.emplace_back(3, sum);
      if (!is_zero_vector(diff)) dirs.emplace_back(3, diff);
    }
  }
  for (int e = 0; e < 9; ++e) {
    RatVector v(9);
    v[e] = 1;
    dirs.emplace_back(3, v);
  }

  for (const RankOneForm& b : dirs) {
    std::vector<HomPoly> s = b.s();
    HomPoly q(3, det.degree());
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (!s[i].is_zero() && !s[j].is_zero()) q = add(q, mul(mul(s[i], s[j]), cof(i, j)));
      }
    }
    if (q.is_zero()) continue;
    auto k = divide_exact(det, q);
    if (!k || k->degree() != 0 || k->is_zero() || k->leading_coefficient() <= 0) continue;
    Rat step = k->leading_coefficient();
    QuadFormTensor g = subtract(f, b, step);
    if (!determinant(acoustic_matrix(g)).is_zero()) continue;
    if (diagonal_negative_direction(acoustic_matrix(g))) continue;
    if (!numerically_quasiconvex(g, options, options.tol)) continue;
    return RankOneDecomposition{b, step, g};
  }
  return std::nullopt;
}

Certificate not_polyconvex_by_extremality(const QuadFormTensor& f, const Certificate& extremal) {
  if (extremal.kind != CertificateKind::ExtremalFormZeroSet || extremal.status != CertificateStatus::Certified) {
    throw Error(ErrorCode::Precondition, "not_polyconvex_by_extremality: needs a certified zero-set certificate");
  }
  Certificate c;
  c.kind = CertificateKind::NotPolyconvexByExtremality;
  bool rank_one = square_up_to_scale(biquadratic_polynomial(f)).has_value();
  c.status = rank_one ? CertificateStatus::Inconclusive : CertificateStatus::Refuted;
  c.note = rank_one ? "f(x (x) y) is a square, so extremality does not exclude polyconvexity"
                    : "extremal and f(x (x) y) is not a square of a bilinear form, hence not polyconvex";
  c.payload = json{{"form", form_json(f)}, {"extremal", to_json(extremal)}, {"biquadratic_is_square", rank_one}};
  return c;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

namespace {

bool verify_impl(const Certificate& c) {
  const json& p = c.payload;
  switch (c.kind) {
    case CertificateKind::NotQuasiconvexWitness: {
      QuadFormTensor f = form_from_payload(p.at("form"));
      return c.status == CertificateStatus::Refuted &&
             f.biquadratic(rat_vector_from_json(p.at("x")), rat_vector_from_json(p.at("y"))) < 0;
    }
    case CertificateKind::QuasiconvexNumeric: {
      QuadFormTensor f = form_from_payload(p.at("form"));
      CertifyOptions o = options_from_json(p.at("options"));
      if (diagonal_negative_direction(acoustic_matrix(f))) return false;
      BiquadraticMinimum m = minimize_biquadratic(f, o.restarts, o.seed, o.max_iter);
      return m.value >= -o.tol * gram_scale(f);
    }
    case CertificateKind::PolyconvexGram: {
      QuadFormTensor f = form_from_payload(p.at("form"));
      if (c.status == CertificateStatus::Certified) {
        const RatMatrix g = polyconvex_gram(f, rat_vector_from_json(p.at("c")));
        if (p.contains("gram_c") && rat_matrix_json(g) != p.at("gram_c")) return false;
        return is_psd_exact(g);
      }
      return presolve_refutes(f, presolve_polyconvex(f));
    }
    case CertificateKind::NotPolyconvexByExtremality: {
      QuadFormTensor f = form_from_payload(p.at("form"));
      Certificate inner = certificate_from_json(p.at("extremal"));
      return inner.kind == CertificateKind::ExtremalFormZeroSet && inner.status == CertificateStatus::Certified &&
             verify_impl(inner) && form_from_payload(inner.payload.at("form")) == f &&
             !square_up_to_scale(biquadratic_polynomial(f));
    }
    case CertificateKind::ExtremalFormZeroSet: {
      QuadFormTensor f = form_from_payload(p.at("form"));
      return nullspace_rational(form_zero_conditions(f, zeros_from_json(p.at("zeros")))).basis.empty();
    }
    case CertificateKind::ExtremalPolyZeroSet: {
      HomPoly poly = poly_from_payload(p.at("polynomial"));
      std::vector<RatVector> zeros;
      for (const auto& z : p.at("zeros")) zeros.push_back(rat_vector_from_json(z));
      NullspaceResult ns = nullspace_rational(poly_zero_conditions(poly, zeros));
      return ns.basis.size() == 1 &&
             proportional(poly_from_coefficients(poly.nvars(), poly.degree(), ns.basis[0]), poly);
    }
    case CertificateKind::NotExtremalWitness: {
      QuadFormTensor f = form_from_payload(p.at("form"));
      CertifyOptions o = options_from_json(p.at("options"));
      RankOneForm b(f.d(), rat_vector_from_json(p.at("B")));
      Rat t = parse_rat(p.at("t").get<std::string>());
      if (b.is_zero() || t <= 0) return false;
      QuadFormTensor g = subtract(f, b, t);
      if (!(g == form_from_payload(p.at("remainder")))) return false;
      if (diagonal_negative_direction(acoustic_matrix(g))) return false;
      if (!(determinant(acoustic_matrix(g)) == det_update(acoustic_matrix(f), b, t))) return false;
      return numerically_quasiconvex(g, o, o.probe_tol);
    }
    case CertificateKind::Inconclusive:
      return false;
  }
  return false;
}

}  // namespace

bool verify(const Certificate& c) {
  if (c.status == CertificateStatus::Inconclusive) return false;
  try {
    return verify_impl(c);
  } catch (const Error&) {
    return false;
  } catch (const json::exception&) {
    return false;
  }
}

}  // namespace quasiform
