#include <doctest.h>

#include "helpers.hpp"
#include "quasiform/io.hpp"
#include "quasiform/selftest.hpp"

using namespace qt;

TEST_SUITE("io") {

TEST_CASE("tensor4 documents") {
  FormDocument d = parse_form_text((R"({"schema":"1","d":3,"format":"tensor4","name":"t",
    "coefficients":[{"i":1,"j":1,"k":1,"l":1,"value":"1"},{"i":1,"j":1,"k":2,"l":2,"value":"-2"},
                    {"i":2,"j":2,"k":2,"l":2,"value":1}]})"));
  CHECK(d.name == "t");
  const RatVector xi{2, 0, 0, 0, 3, 0, 0, 0, 0};
  CHECK(d.form.value(xi) == 4 - 12 + 9);
}

TEST_CASE("gram documents") {
  json g = form_document_json(catalog("example4"), "ex4", "gram");
  CHECK(parse_form_document(g).form == catalog("example4"));
  g["gram"][0].erase(0);
  CHECK_THROWS_AS(parse_form_document(g), Error);
}

TEST_CASE("catalog documents round trip") {
  for (const std::string& name : catalog_names()) {
    json doc = form_document_json(catalog(name), name);
    FormDocument back = parse_form_text((doc.dump()));
    CHECK(back.form == catalog(name));
    CHECK(back.name == name);
  }
}

TEST_CASE("parse errors") {
  auto fails = [](std::string_view text) {
    try {
      parse_form_text(text);
    } catch (const Error& e) {
      return e.code() == ErrorCode::Parse;
    }
    return false;
  };
  CHECK(fails("{not json"));
  CHECK(fails("[]"));
  CHECK(fails(R"({"d":3})"));
  CHECK(fails(R"({"d":3,"coefficients":[{"i":4,"j":1,"k":1,"l":1,"value":"1"}]})"));
  CHECK(fails(R"({"d":3,"coefficients":[{"i":1,"j":1,"k":1,"l":1,"value":"1/0"}]})"));
  CHECK(fails(R"({"d":3,"coefficients":[{"i":1,"j":1,"k":1,"l":1,"value":0.1}]})"));
  CHECK(fails(R"({"d":3,"format":"sparse","coefficients":[]})"));
  CHECK(fails(R"({"schema":"2","d":3,"coefficients":[]})"));
}

TEST_CASE("acoustic reports") {
  std::string t4 = acoustic_report_text(catalog("example4"));
  CHECK(t4.find("det = " + to_string(example4_det()) + "\n") != std::string::npos);
  CHECK(t4.find("T11 = y1^2 + y2^2\n") != std::string::npos);
  CHECK(acoustic_report_text(catalog("example2")).find("det ≡ 0") != std::string::npos);
  json j1 = acoustic_report_json(catalog("example1"));
  CHECK(j1.at("determinant") == "y1^2 y2^2 y3^2");
  CHECK(j1.at("determinant_square_root") == "y1 y2 y3");
  CHECK(parse_rat("3/2") == R(3, 2));
}

TEST_CASE("rational strings in reports re-parse") {
  Certificate c = check_polyconvex(catalog("example1"));
  for (const auto& row : to_json(c).at("payload").at("gram_c")) {
    for (const auto& v : row) CHECK(to_string(parse_rat(v.get<std::string>())) == v.get<std::string>());
  }
}

TEST_CASE("self-test passes") {
  SelfTestReport r = run_selftest(0);
  for (const SuiteResult& s : r.suites) {
    INFO(s.name << ": " << s.detail);
    CHECK(s.passed());
  }
}

}
