#include "quasiform/io.hpp"

#include <sstream>

namespace quasiform {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

Rat value_of(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rat(v.get<std::string>());
    } catch (const Error& e) {
      parse_fail(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rat(v.get<long>());
  parse_fail(where + ": expected a rational string such as \"-3/2\"");
}

int index_of(const json& entry, const char* key, int d, const std::string& where) {
  if (!entry.contains(key) || !entry.at(key).is_number_integer()) {
    parse_fail(where + ": missing integer index '" + key + "'");
  }
  const long v = entry.at(key).get<long>();
  if (v < 1 || v > d) parse_fail(where + ": index '" + key + "' = " + std::to_string(v) + " outside 1.." + std::to_string(d));
  return static_cast<int>(v) - 1;
}

}  // namespace

FormDocument parse_form_document(const json& doc) {
  if (!doc.is_object()) parse_fail("form document must be a JSON object");
  if (doc.contains("schema") && doc.at("schema") != "1") parse_fail("unsupported schema (expected \"1\")");
  if (!doc.contains("d") || !doc.at("d").is_number_integer()) parse_fail("missing integer field 'd'");
  const long dl = doc.at("d").get<long>();
  if (dl < 2 || dl > 8) parse_fail("'d' must be between 2 and 8");
  const int d = static_cast<int>(dl);
  const std::string format = doc.value("format", std::string("tensor4"));

  FormDocument out;
  out.name = doc.contains("name") && doc.at("name").is_string() ? doc.at("name").get<std::string>() : "";
  if (format == "tensor4") {
    if (!doc.contains("coefficients") || !doc.at("coefficients").is_array()) {
      parse_fail("tensor4 document needs a 'coefficients' array");
    }
    std::vector<QuadFormTensor::Term> terms;
    int n = 0;
    for (const json& e : doc.at("coefficients")) {
      const std::string where = "coefficients[" + std::to_string(n++) + "]";
      if (!e.is_object() || !e.contains("value")) parse_fail(where + ": expected {i, j, k, l, value}");
      terms.push_back({index_of(e, "i", d, where), index_of(e, "j", d, where), index_of(e, "k", d, where),
                       index_of(e, "l", d, where), value_of(e.at("value"), where + ".value")});
    }
    out.form = QuadFormTensor::from_terms(d, terms);
  } else if (format == "gram") {
    const int n = d * d;
    if (!doc.contains("gram") || !doc.at("gram").is_array() || static_cast<int>(doc.at("gram").size()) != n) {
      parse_fail("gram document needs a " + std::to_string(n) + "x" + std::to_string(n) + " 'gram' array");
    }
    RatMatrix g(n, n);
    for (int a = 0; a < n; ++a) {
      const json& row = doc.at("gram").at(a);
      if (!row.is_array() || static_cast<int>(row.size()) != n) parse_fail("gram row " + std::to_string(a + 1) + " has wrong length");
      for (int b = 0; b < n; ++b) g(a, b) = value_of(row.at(b), "gram[" + std::to_string(a) + "][" + std::to_string(b) + "]");
    }
    out.form = QuadFormTensor(d, g);
  } else {
    parse_fail("unknown format '" + format + "' (expected tensor4 or gram)");
  }
  return out;
}

FormDocument parse_form_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
  return parse_form_document(doc);
}

json form_document_json(const QuadFormTensor& f, const std::string& name, const std::string& format) {
  const int d = f.d();
  const int n = d * d;
  json doc{{"schema", "1"}, {"d", d}, {"format", format}};
  if (!name.empty()) doc["name"] = name;
  if (format == "gram") {
    doc["gram"] = rat_matrix_json(f.gram());
    return doc;
  }
  if (format != "tensor4") throw Error(ErrorCode::InvalidArgument, "unknown format '" + format + "'");
  json coeffs = json::array();
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      Rat v = a == b ? f.gram(a, b) : Rat(2 * f.gram(a, b));
      if (v == 0) continue;
      coeffs.push_back(json{{"i", a / d + 1}, {"j", a % d + 1}, {"k", b / d + 1}, {"l", b % d + 1}, {"value", to_string(v)}});
    }
  }
  doc["coefficients"] = coeffs;
  return doc;
}

json acoustic_report_json(const QuadFormTensor& f) {
  const AcousticMatrix t = acoustic_matrix(f);
  const PolyMatrix cof = cofactor_matrix(t);
  const HomPoly det = determinant(t);
  json tm = json::array();
  json cm = json::array();
  for (int i = 0; i < t.d(); ++i) {
    json tr = json::array();
    json cr = json::array();
    for (int j = 0; j < t.d(); ++j) {
      tr.push_back(to_string(t(i, j)));
      cr.push_back(to_string(cof(i, j)));
    }
    tm.push_back(tr);
    cm.push_back(cr);
  }
  auto root = det.is_zero() ? std::nullopt : perfect_square_root(det);
  return json{{"schema", "1"},
              {"d", f.d()},
              {"acoustic", tm},
              {"determinant", to_string(det)},
              {"determinant_identically_zero", det.is_zero()},
              {"determinant_square_root", root ? json(to_string(*root)) : json(nullptr)},
              {"cofactors", cm}};
}

std::string acoustic_report_text(const QuadFormTensor& f) {
  const AcousticMatrix t = acoustic_matrix(f);
  const PolyMatrix cof = cofactor_matrix(t);
  const HomPoly det = determinant(t);
  std::ostringstream os;
  for (int i = 0; i < t.d(); ++i) {
    for (int j = i; j < t.d(); ++j) os << "T" << i + 1 << j + 1 << " = " << to_string(t(i, j)) << "\n";
  }
  if (det.is_zero()) {
    os << "det ≡ 0\n";
  } else {
    os << "det = " << to_string(det) << "\n";
    if (auto root = perfect_square_root(det)) os << "det = (" << to_string(*root) << ")^2\n";
  }
  for (int i = 0; i < t.d(); ++i) {
    for (int j = 0; j < t.d(); ++j) os << "cof" << i + 1 << j + 1 << " = " << to_string(cof(i, j)) << "\n";
  }
  return os.str();
}

std::string certificate_text(const Certificate& c) {
  std::ostringstream os;
  os << to_string(c.kind) << ": " << to_string(c.status) << (c.numeric ? " (numeric)" : "") << "\n";
  if (!c.note.empty()) os << "  " << c.note << "\n";
  return os.str();
}

std::string classification_text(const ClassificationReport& r) {
  std::ostringstream os;
  os << "verdict: " << to_string(r.verdict) << "\n"
     << "det_case: " << to_string(r.det_case) << "\n"
     << "basis: " << (r.theorem_basis.empty() ? "-" : r.theorem_basis) << "\n"
     << "det: " << (r.determinant.is_zero() ? "≡ 0" : to_string(r.determinant)) << "\n";
  if (r.determinant_root) os << "det root: " << to_string(*r.determinant_root) << "\n";
  if (!r.gate_flags.empty()) {
    os << "flags:";
    for (const auto& g : r.gate_flags) os << " " << g;
    os << "\n";
  }
  if (!r.note.empty()) os << "note: " << r.note << "\n";
  os << "evidence:\n";
  for (const Certificate& c : r.evidence) os << "  " << certificate_text(c);
  return os.str();
}

}  // namespace quasiform
