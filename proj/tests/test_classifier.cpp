#include <doctest.h>

#include "helpers.hpp"

using namespace qt;

TEST_SUITE("classifier") {

TEST_CASE("fixture verdicts") {
  ClassificationReport r4 = classify(catalog("example4"));
  CHECK(r4.verdict == Verdict::Extremal);
  CHECK(r4.det_case == DetCase::ExtremalNotSquare);
  CHECK(r4.theorem_basis == basis::kExtremalDetNotSquare);
  CHECK_FALSE(r4.determinant_root.has_value());
  bool poly_cert = false;
  for (const Certificate& c : r4.evidence) {
    if (c.kind == CertificateKind::ExtremalPolyZeroSet && c.status == CertificateStatus::Certified) poly_cert = verify(c);
  }
  CHECK(poly_cert);

  ClassificationReport r1 = classify(catalog("example1"));
  CHECK(r1.verdict == Verdict::Polyconvex);
  CHECK(r1.det_case == DetCase::ExtremalPerfectSquare);
  CHECK(r1.theorem_basis == basis::kSquareDetTrichotomy);
  REQUIRE(r1.determinant_root.has_value());
  CHECK(*r1.determinant_root == y(1) * y(2) * y(3));

  for (const char* name : {"example2", "example3"}) {
    ClassificationReport r = classify(catalog(name));
    CHECK(r.verdict == Verdict::Polyconvex);
    CHECK(r.det_case == DetCase::IdenticallyZero);
    CHECK(r.theorem_basis == basis::kZeroDetDichotomy);
    CHECK(r.determinant.is_zero());
  }
}

TEST_CASE("every decided verdict rests on a verified certificate") {
  for (const std::string& name : catalog_names()) {
    ClassificationReport r = classify(catalog(name));
    REQUIRE(r.verdict != Verdict::Unresolved);
    bool backed = false;
    for (const Certificate& c : r.evidence) {
      if (c.status != CertificateStatus::Inconclusive && !c.numeric) backed = backed || verify(c);
    }
    CHECK(backed);
    CHECK(std::find(r.gate_flags.begin(), r.gate_flags.end(), "numeric_gate") != r.gate_flags.end());
  }
}

TEST_CASE("quasiconvexity gate") {
  using T = QuadFormTensor::Term;
  ClassificationReport r = classify(QuadFormTensor::from_terms(3, {T{0, 0, 0, 0, 1}, T{1, 1, 1, 1, -1}}));
  CHECK(r.verdict == Verdict::NotQuasiconvex);
  CHECK(r.theorem_basis == basis::kQuasiconvexityGate);
  REQUIRE(r.evidence.size() == 1);
  CHECK(verify(r.evidence[0]));
}

TEST_CASE("deterministic reports") {
  CertifyOptions o;
  o.seed = 7;
  CHECK(to_json(classify(catalog("example4"), o)) == to_json(classify(catalog("example4"), o)));
}

TEST_CASE("report JSON") {
  json j = to_json(classify(catalog("example2")));
  for (const char* key : {"schema", "verdict", "det_case", "theorem_basis", "gate_flags", "evidence", "config"}) {
    CHECK(j.contains(key));
  }
  CHECK(j.at("verdict") == "Polyconvex");
  CHECK(j.at("config").at("seed") == 0);
  CHECK(j.at("determinant").at("identically_zero") == true);
}

TEST_CASE("conjectural basis is labelled") {
  CHECK(std::string(basis::kConjecturalNonExtremalDet).find("conjecture, not a proof") != std::string::npos);
}

TEST_CASE("dimension handling") {
  CHECK_THROWS_AS(classify(QuadFormTensor::zero(2)), Error);
  using T = QuadFormTensor::Term;
  QuadFormTensor f4 = QuadFormTensor::from_terms(4, {T{0, 0, 0, 0, 1}, T{1, 1, 1, 1, 1}, T{2, 2, 2, 2, 1}, T{3, 3, 3, 3, 1}});
  ClassificationReport g = classify_generic(f4, false);
  CHECK(g.verdict == Verdict::Unresolved);
  CHECK(g.determinant_root.has_value());
  ClassificationReport a = classify_generic(f4, true);
  CHECK(a.verdict == Verdict::Extremal);
  CHECK(a.theorem_basis == basis::kIrreducibleExtremalDet);
  CHECK(a.note.find("not verified") != std::string::npos);
}

TEST_CASE("equivalence suite") {
  EquivalenceReport r = equivalence_suite(p4(), 8, 1);
  CHECK(r.trials == 8);
  CHECK(r.passed());
  CHECK(to_json(r).at("passed") == true);
  CHECK_THROWS_AS(equivalence_suite(p4(), 0), Error);
}

}
