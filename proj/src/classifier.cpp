#include "quasiform/classifier.hpp"

#include <cmath>

#include "quasiform/random.hpp"

namespace quasiform {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NotQuasiconvex: return "NotQuasiconvex";
    case Verdict::Polyconvex: return "Polyconvex";
    case Verdict::Extremal: return "Extremal";
    case Verdict::RankOnePlusExtremal: return "RankOnePlusExtremal";
    case Verdict::ConjecturedNotExtremal: return "ConjecturedNotExtremal";
    case Verdict::Unresolved: return "Unresolved";
  }
  return "?";
}

const char* to_string(DetCase c) {
  switch (c) {
    case DetCase::ExtremalNotSquare: return "ExtremalNotSquare";
    case DetCase::IdenticallyZero: return "IdenticallyZero";
    case DetCase::ExtremalPerfectSquare: return "ExtremalPerfectSquare";
    case DetCase::NotExtremal: return "NotExtremal";
    case DetCase::Unknown: return "Unknown";
  }
  return "?";
}

json to_json(const ClassificationReport& r) {
  json evidence = json::array();
  for (const Certificate& c : r.evidence) evidence.push_back(to_json(c));
  return json{{"schema", "1"},
              {"verdict", to_string(r.verdict)},
              {"det_case", to_string(r.det_case)},
              {"theorem_basis", r.theorem_basis},
              {"gate_flags", r.gate_flags},
              {"determinant",
               json{{"polynomial", to_string(r.determinant)},
                    {"identically_zero", r.determinant.is_zero()},
                    {"square_root", r.determinant_root ? json(to_string(*r.determinant_root)) : json(nullptr)}}},
              {"note", r.note},
              {"config", to_json(r.options)},
              {"evidence", evidence}};
}

namespace {

bool certified(const Certificate& c) { return c.status == CertificateStatus::Certified; }

std::vector<ZeroPoint> exact_zeros(const QuadFormTensor& f, const CertifyOptions& o) {
  std::vector<ZeroPoint> out;
  for (ZeroPoint& z : find_rank_one_zeros(f, o.zero_restarts, o.seed)) {
    if (z.rationalized) out.push_back(std::move(z));
  }
  return out;
}

/// Runs the zero-set certificate and, when it certifies a form that is not a
/// single square, records the resulting non-polyconvexity.
Certificate form_extremality(const QuadFormTensor& f, const CertifyOptions& o, ClassificationReport& r) {
  Certificate ext = extremal_form_certificate(f, exact_zeros(f, o));
  r.evidence.push_back(ext);
  if (certified(ext)) r.evidence.push_back(not_polyconvex_by_extremality(f, ext));
  return ext;
}

Certificate poly_extremality(const HomPoly& det, const CertifyOptions& o, ClassificationReport& r) {
  Certificate c;
  try {
    c = extremal_poly_certificate(det, find_polynomial_zeros(det, o.zero_restarts, o.seed), o);
  } catch (const Error& e) {
    c.kind = CertificateKind::ExtremalPolyZeroSet;
    c.status = CertificateStatus::Inconclusive;
    c.note = std::string("polynomial certificate not applicable: ") + e.what();
  }
  r.evidence.push_back(c);
  return c;
}

/// Numeric evidence that det T is not extremal: a surviving direction Q with
/// P + sQ and P - sQ both nonnegative on the sphere.
std::optional<Certificate> non_extremal_det_evidence(const HomPoly& det, const Certificate& poly_cert,
                                                     const CertifyOptions& o) {
  if (!poly_cert.payload.contains("surviving")) return std::nullopt;
  const auto monos = monomials_of_degree(det.nvars(), det.degree());
  double pscale = 0.0;
  for (const auto& [m, c] : det.terms()) pscale = std::max(pscale, std::fabs(c.get_d()));

  // Re-derive the basis exactly; the payload only stores text.
  std::vector<RatVector> zeros;
  for (const auto& z : poly_cert.payload.at("zeros")) zeros.push_back(rat_vector_from_json(z));
  for (const RatVector& v : nullspace_rational(poly_zero_conditions(det, zeros)).basis) {
    std::vector<std::pair<Monomial, Rat>> terms;
    Rat vmax = 0;
    for (std::size_t k = 0; k < monos.size(); ++k) {
      if (v[k] != 0) terms.emplace_back(monos[k], v[k]);
      vmax = std::max(vmax, Rat(abs(v[k])));
    }
    HomPoly q = HomPoly::from_terms(det.nvars(), det.degree(), terms);
    if (make_monic(q) == make_monic(det)) continue;
    for (int k = 1; k <= 20; ++k) {
      Rat s = Rat(1, 1L << k) * Rat(pscale) / vmax;
      HomPoly plus = add(det, scale(q, s));
      HomPoly minus = sub(det, scale(q, s));
      double mp = polynomial_sphere_minimum(plus, o.restarts, o.seed, o.max_iter);
      double mm = polynomial_sphere_minimum(minus, o.restarts, o.seed, o.max_iter);
      if (mp >= -o.tol * pscale && mm >= -o.tol * pscale) {
        Certificate c;
        c.kind = CertificateKind::Inconclusive;
        c.numeric = true;
        c.note = "det T = (P + sQ)/2 + (P - sQ)/2 with both parts numerically nonnegative; det T is not extremal";
        c.payload = json{{"Q", to_string(q)}, {"s", to_string(s)}, {"min_plus", mp}, {"min_minus", mm}};
        return c;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

ClassificationReport classify(const QuadFormTensor& f, const CertifyOptions& options) {
  if (f.d() != 3) throw Error(ErrorCode::InvalidArgument, "classify: requires d = 3 (use classify_generic)");
  ClassificationReport r;
  r.options = options;
  const AcousticMatrix t = acoustic_matrix(f);
  r.determinant = determinant(t);

  // (1) quasiconvexity gate
  Certificate gate = check_quasiconvex(f, options);
  r.evidence.push_back(gate);
  if (gate.status == CertificateStatus::Refuted) {
    r.verdict = Verdict::NotQuasiconvex;
    r.det_case = r.determinant.is_zero() ? DetCase::IdenticallyZero : DetCase::Unknown;
    r.theorem_basis = basis::kQuasiconvexityGate;
    r.note = "exact rational point with f(x (x) y) < 0";
    return r;
  }
  r.gate_flags.push_back(gate.status == CertificateStatus::Certified ? "numeric_gate" : "gate_inconclusive");

  // (2)-(3) identically zero determinant
  if (r.determinant.is_zero()) {
    r.det_case = DetCase::IdenticallyZero;
    r.theorem_basis = basis::kZeroDetDichotomy;
    Certificate poly = check_polyconvex(f, options);
    r.evidence.push_back(poly);
    if (certified(poly)) {
      r.verdict = Verdict::Polyconvex;
      r.note = "exact Gram certificate";
      return r;
    }
    Certificate ext = form_extremality(f, options, r);
    if (certified(ext)) {
      r.verdict = Verdict::Extremal;
      r.note = "zero-set certificate leaves no subtractable rank-one direction";
      return r;
    }
    if (poly.status == CertificateStatus::Refuted) {
      r.verdict = Verdict::Extremal;
      r.note = "not polyconvex (exact), and a quasiconvex form with zero determinant is extremal or polyconvex";
      return r;
    }
    r.verdict = Verdict::Unresolved;
    r.note = "the form is extremal or polyconvex; neither certificate was conclusive (certificate incompleteness, "
             "not mathematical ambiguity)";
    return r;
  }

  r.determinant_root = perfect_square_root(r.determinant);

  // (4) perfect-square determinant
  if (r.determinant_root) {
    r.theorem_basis = basis::kSquareDetTrichotomy;
    Certificate det_cert = poly_extremality(r.determinant, options, r);
    r.det_case = certified(det_cert) ? DetCase::ExtremalPerfectSquare : DetCase::Unknown;
    Certificate poly = check_polyconvex(f, options);
    r.evidence.push_back(poly);
    if (certified(poly)) {
      r.verdict = Verdict::Polyconvex;
      r.note = "exact Gram certificate";
      return r;
    }
    Certificate ext = form_extremality(f, options, r);
    if (certified(ext)) {
      r.verdict = Verdict::Extremal;
      r.note = "zero-set certificate leaves no subtractable rank-one direction";
      return r;
    }
    if (auto dec = decompose_rank_one_plus_extremal(f, options)) {
      Certificate split;
      split.kind = CertificateKind::NotExtremalWitness;
      split.status = CertificateStatus::Refuted;
      split.numeric = true;
      split.note = "f = t (x B y^T)^2 + g with det of g's acoustic matrix identically zero";
      split.payload = json{{"B", rat_vector_json(dec->b.b())},
                           {"t", to_string(dec->t)},
                           {"remainder_gram", rat_matrix_json(dec->remainder.gram())}};
      r.evidence.push_back(split);
      Certificate rem = extremal_form_certificate(dec->remainder, exact_zeros(dec->remainder, options));
      r.evidence.push_back(rem);
      if (certified(rem)) {
        r.verdict = Verdict::RankOnePlusExtremal;
        r.note = "rank-one summand plus a remainder with a certified zero-set extremality certificate";
        return r;
      }
      r.verdict = Verdict::Unresolved;
      r.note = "rank-one split found but the remainder's extremality is not certified";
      return r;
    }
    r.verdict = Verdict::Unresolved;
    r.note = "extremal, polyconvex or rank-one plus extremal; no certificate was conclusive";
    return r;
  }

  // (5) nonzero determinant that is not a perfect square
  Certificate det_cert = poly_extremality(r.determinant, options, r);
  if (certified(det_cert)) {
    r.verdict = Verdict::Extremal;
    r.det_case = DetCase::ExtremalNotSquare;
    r.theorem_basis = basis::kExtremalDetNotSquare;
    r.note = "det T is extremal (zero-set certificate) and has no polynomial square root";
    return r;
  }
  auto non_extremal = non_extremal_det_evidence(r.determinant, det_cert, options);
  if (non_extremal) {
    r.det_case = DetCase::NotExtremal;
    r.evidence.push_back(*non_extremal);
  }
  Certificate poly = check_polyconvex(f, options);
  r.evidence.push_back(poly);
  if (certified(poly)) {
    r.verdict = Verdict::Polyconvex;
    r.theorem_basis = basis::kGramCertificate;
    r.note = "exact Gram certificate";
    return r;
  }
  if (non_extremal) {
    r.evidence.push_back(subtract_probe(f, {}, options));
    r.verdict = Verdict::ConjecturedNotExtremal;
    r.theorem_basis = basis::kConjecturalNonExtremalDet;
    r.note = "det T is not extremal; the form is conjectured not extremal (status: inconclusive as a theorem)";
    return r;
  }
  r.verdict = Verdict::Unresolved;
  r.note = "extremality of det T could not be decided by the available certificates";
  return r;
}

ClassificationReport classify_generic(const QuadFormTensor& f, bool assert_irreducible_extremal_det,
                                      const CertifyOptions& options) {
  ClassificationReport r;
  r.options = options;
  r.determinant = determinant(acoustic_matrix(f));
  Certificate gate = check_quasiconvex(f, options);
  r.evidence.push_back(gate);
  if (gate.status == CertificateStatus::Refuted) {
    r.verdict = Verdict::NotQuasiconvex;
    r.det_case = r.determinant.is_zero() ? DetCase::IdenticallyZero : DetCase::Unknown;
    r.theorem_basis = basis::kQuasiconvexityGate;
    return r;
  }
  r.gate_flags.push_back(gate.status == CertificateStatus::Certified ? "numeric_gate" : "gate_inconclusive");
  if (r.determinant.is_zero()) {
    r.det_case = DetCase::IdenticallyZero;
  } else {
    r.determinant_root = perfect_square_root(r.determinant);
  }
  if (assert_irreducible_extremal_det && !r.determinant.is_zero() && f.d() >= 3) {
    r.verdict = Verdict::Extremal;
    r.theorem_basis = basis::kIrreducibleExtremalDet;
    r.gate_flags.push_back("irreducibility_asserted");
    r.note = "det T asserted irreducible and extremal by the caller; not verified";
    return r;
  }
  r.verdict = Verdict::Unresolved;
  r.note = "generic mode only runs the quasiconvexity gate and the determinant";
  return r;
}

json to_json(const EquivalenceReport& r) {
  return json{{"trials", r.trials},
              {"reflexive_failures", r.reflexive_failures},
              {"symmetric_failures", r.symmetric_failures},
              {"transitive_failures", r.transitive_failures},
              {"passed", r.passed()}};
}

namespace {

RatVector flat(const RatMatrix& a) {
  RatVector out;
  for (int i = 0; i < a.rows(); ++i) {
    RatVector r = a.row(i);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace

EquivalenceReport equivalence_suite(const HomPoly& p, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "equivalence_suite: trials must be >= 1");
  const int n = p.nvars();
  EquivalenceReport r;
  r.trials = trials;
  const RatVector id = flat(RatMatrix::identity(n));
  for (int k = 0; k < trials; ++k) {
    CounterRng rng(seed, static_cast<std::uint64_t>(k));
    RatMatrix a = random_nonsingular(rng, n);
    RatMatrix b = random_nonsingular(rng, n);
    if (!(equivalence_transform(p, id) == p)) ++r.reflexive_failures;
    HomPoly pa = equivalence_transform(p, flat(a));
    if (!(equivalence_transform(pa, flat(inverse(a))) == p)) ++r.symmetric_failures;
    if (!(equivalence_transform(pa, flat(b)) == equivalence_transform(p, flat(a * b)))) ++r.transitive_failures;
  }
  return r;
}

}  // namespace quasiform
