#include <doctest.h>

#include "helpers.hpp"

using namespace qt;

namespace {

using T = QuadFormTensor::Term;

QuadFormTensor diff_form() { return QuadFormTensor::from_terms(3, {T{0, 0, 0, 0, 1}, T{1, 1, 1, 1, -1}}); }

QuadFormTensor frobenius() {
  std::vector<T> terms;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) terms.push_back(T{i, j, i, j, 1});
  }
  return QuadFormTensor::from_terms(3, terms);
}

std::vector<ZeroPoint> exact_zeros(const QuadFormTensor& f) {
  std::vector<ZeroPoint> out;
  for (ZeroPoint& z : find_rank_one_zeros(f, 64, 0)) {
    if (z.rationalized) out.push_back(std::move(z));
  }
  return out;
}

bool has_zero(const std::vector<ZeroPoint>& zs, const RatVector& x, const RatVector& yv) {
  auto proportional = [](const RatVector& a, const RatVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[i] * b[j] != a[j] * b[i]) return false;
      }
    }
    return true;
  };
  for (const ZeroPoint& z : zs) {
    if (proportional(z.xr, x) && proportional(z.yr, yv)) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("certificates") {

TEST_CASE("quasiconvexity") {
  Certificate c4 = check_quasiconvex(catalog("example4"));
  CHECK(c4.kind == CertificateKind::QuasiconvexNumeric);
  CHECK(c4.status == CertificateStatus::Certified);
  CHECK(c4.numeric);
  CHECK(std::fabs(c4.payload.at("minimum").get<double>()) < 1e-8);

  Certificate cd = check_quasiconvex(diff_form());
  CHECK(cd.kind == CertificateKind::NotQuasiconvexWitness);
  CHECK(cd.status == CertificateStatus::Refuted);
  CHECK(verify(cd));
  RatVector x = rat_vector_from_json(cd.payload.at("x")), yv = rat_vector_from_json(cd.payload.at("y"));
  CHECK(diff_form().biquadratic(x, yv) < 0);

  CHECK(check_quasiconvex(frobenius()).status == CertificateStatus::Certified);

  CertifyOptions bad;
  bad.tol = -1;
  CHECK_THROWS_AS(check_quasiconvex(frobenius(), bad), Error);
}

TEST_CASE("polyconvexity") {
  Certificate c1 = check_polyconvex(catalog("example1"));
  CHECK(c1.status == CertificateStatus::Certified);
  CHECK(verify(c1));
  for (const auto& v : c1.payload.at("c")) CHECK(v == "0");

  Certificate c4 = check_polyconvex(catalog("example4"));
  CHECK(c4.status != CertificateStatus::Certified);
  CHECK(c4.status == CertificateStatus::Refuted);
  CHECK(verify(c4));

  // null Lagrangians do not change polyconvexity
  CounterRng rng(51, 0);
  Certificate shifted = check_polyconvex(add_null_lagrangian(catalog("example1"), random_rat_vector(rng, 9)));
  CHECK(shifted.status == CertificateStatus::Certified);
  CHECK(verify(shifted));
  CHECK_THROWS_AS(check_polyconvex(QuadFormTensor::zero(2)), Error);
}

TEST_CASE("tampered certificates fail verification") {
  Certificate c = check_polyconvex(catalog("example1"));
  json j = to_json(c);
  j["payload"]["gram_c"][0][0] = "-1";
  CHECK_FALSE(verify(certificate_from_json(j)));
  Certificate w = check_quasiconvex(diff_form());
  json jw = to_json(w);
  jw["payload"]["x"] = json::array({"1", "0", "0"});
  jw["payload"]["y"] = json::array({"1", "0", "0"});
  CHECK_FALSE(verify(certificate_from_json(jw)));
  CHECK(verify(certificate_from_json(to_json(w))));
  Certificate none;
  CHECK_FALSE(verify(none));
}

TEST_CASE("zeros of the example4 form") {
  auto zs = exact_zeros(catalog("example4"));
  const RatVector ones{1, 1, 1}, e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  CHECK(has_zero(zs, ones, ones));
  CHECK(has_zero(zs, RatVector{1, -1, 1}, RatVector{1, -1, 1}));
  CHECK(has_zero(zs, e2, e1));
  CHECK(has_zero(zs, e3, e2));
  CHECK(has_zero(zs, e1, e3));
  for (const ZeroPoint& z : zs) CHECK(catalog("example4").biquadratic(z.xr, z.yr) == 0);
  // the eight sign vectors pair up to four classes up to sign of x and y
  int sign_classes = 0;
  for (const ZeroPoint& z : zs) {
    bool all_nonzero = true;
    for (const Rat& v : z.xr) all_nonzero = all_nonzero && v != 0;
    sign_classes += all_nonzero ? 1 : 0;
  }
  CHECK(sign_classes >= 4);
}

TEST_CASE("zero harvesting on other forms") {
  CHECK(find_rank_one_zeros(frobenius(), 32, 0).empty());
  RankOneForm e11(3, {1, 0, 0, 0, 0, 0, 0, 0, 0});
  auto zs = find_rank_one_zeros(e11.form(), 64, 0);
  CHECK(zs.size() >= 8);
  for (const ZeroPoint& z : zs) {
    if (z.rationalized) CHECK((z.xr[0] == 0 || z.yr[0] == 0));
  }
}

TEST_CASE("form extremality certificate") {
  Certificate c = extremal_form_certificate(catalog("example4"), exact_zeros(catalog("example4")));
  CHECK(c.status == CertificateStatus::Certified);
  CHECK(c.payload.at("nullity") == 0);
  CHECK(verify(c));

  Certificate d = extremal_form_certificate(catalog("example1"), exact_zeros(catalog("example1")));
  CHECK(d.status == CertificateStatus::Inconclusive);
  CHECK(d.payload.at("nullity").get<int>() > 0);

  RankOneForm b(3, {1, 2, 0, -1, 1, 1, 0, 1, 3});
  Certificate r = extremal_form_certificate(b.form(), exact_zeros(b.form()));
  CHECK(r.status == CertificateStatus::Inconclusive);
  // B itself survives its own conditions
  std::vector<std::pair<RatVector, RatVector>> pts;
  for (const ZeroPoint& z : exact_zeros(b.form())) pts.emplace_back(z.xr, z.yr);
  for (const Rat& v : form_zero_conditions(b.form(), pts) * b.b()) CHECK(v == 0);

  ZeroPoint loose;
  loose.x = {1, 0, 0};
  loose.y = {0, 1, 0};
  CHECK_THROWS_AS(extremal_form_certificate(catalog("example4"), {loose}), Error);
}

TEST_CASE("polynomial extremality certificate") {
  const HomPoly det4 = determinant(acoustic_matrix(catalog("example4")));
  Certificate c = extremal_poly_certificate(det4, find_polynomial_zeros(det4, 64, 0));
  CHECK(c.status == CertificateStatus::Certified);
  CHECK(c.payload.at("nullity") == 1);
  CHECK(verify(c));

  Certificate cp = extremal_poly_certificate(p4(), find_polynomial_zeros(p4(), 64, 0));
  CHECK(cp.status == CertificateStatus::Certified);
  CHECK(cp.payload.at("nullity") == 1);

  const HomPoly e1 = pow(y(1) * y(2) * y(3), 2);
  Certificate c1 = extremal_poly_certificate(e1, find_polynomial_zeros(e1, 64, 0));
  CHECK(c1.status == CertificateStatus::Certified);

  const HomPoly sixes = pow(y(1), 6) + pow(y(2), 6);
  CHECK(extremal_poly_certificate(sixes, find_polynomial_zeros(sixes, 64, 0)).status ==
        CertificateStatus::Inconclusive);

  CHECK_THROWS_AS(extremal_poly_certificate(pow(y(1), 4), {}), Error);
  CHECK_THROWS_AS(extremal_poly_certificate(pow(y(1), 6) - pow(y(2), 6), {}), Error);
}

TEST_CASE("non-polyconvexity from extremality") {
  Certificate ext = extremal_form_certificate(catalog("example4"), exact_zeros(catalog("example4")));
  Certificate np = not_polyconvex_by_extremality(catalog("example4"), ext);
  CHECK(np.kind == CertificateKind::NotPolyconvexByExtremality);
  CHECK(np.status == CertificateStatus::Refuted);
  CHECK(verify(np));
}

TEST_CASE("decomposition preconditions") {
  CHECK_THROWS_AS(decompose_rank_one_plus_extremal(catalog("example4")), Error);
  CHECK_THROWS_AS(decompose_rank_one_plus_extremal(catalog("example2")), Error);
  auto dec = decompose_rank_one_plus_extremal(catalog("example1"));
  REQUIRE(dec.has_value());
  CHECK(determinant(acoustic_matrix(dec->remainder)).is_zero());
  CHECK(dec->t * dec->b.form() + dec->remainder == catalog("example1"));
}

}

TEST_SUITE("probe") {

TEST_CASE("probe finds the rank-one summand of sum xi_ii^2") {
  Certificate c = subtract_probe(catalog("example1"), {});
  CHECK(c.kind == CertificateKind::NotExtremalWitness);
  CHECK(c.status == CertificateStatus::Refuted);
  CHECK(parse_rat(c.payload.at("t").get<std::string>()) >= R(1, 2));
  CHECK(c.payload.at("det_update_consistent") == true);
  CHECK(verify(c));
}

TEST_CASE("probe on the example4 form stays inconclusive") {
  Certificate c = subtract_probe(catalog("example4"), {});
  CHECK(c.status == CertificateStatus::Inconclusive);
  CHECK_FALSE(verify(c));
}

TEST_CASE("probe recovers an added rank-one form") {
  RankOneForm e11(3, {1, 0, 0, 0, 0, 0, 0, 0, 0});
  QuadFormTensor f = catalog("example4") + e11.form();
  Certificate c = subtract_probe(f, {e11});
  CHECK(c.status == CertificateStatus::Refuted);
  CHECK(parse_rat(c.payload.at("t").get<std::string>()) >= R(9, 10));
  CHECK(parse_rat(c.payload.at("t").get<std::string>()) <= 1);
  CHECK(verify(c));
}

}
