#pragma once

#include <string>
#include <string_view>

#include "quasiform/classifier.hpp"

namespace quasiform {

/// A form as read from or written to the JSON input format.
///
///   {"schema": "1", "d": 3, "format": "tensor4", "name": "...",
///    "coefficients": [{"i": 1, "j": 1, "k": 2, "l": 2, "value": "-2"}, ...]}
///   {"schema": "1", "d": 3, "format": "gram", "gram": [["1", "0", ...], ...]}
///
/// tensor4 entries are 1-based and contribute value * xi_ij * xi_kl; repeated
/// index tuples add up. Values are exact rational strings (integers allowed).
struct FormDocument {
  std::string name;
  QuadFormTensor form;
};

/// Throws Error(Parse) with a diagnostic on any malformed input.
FormDocument parse_form_document(const json& doc);
FormDocument parse_form_text(std::string_view text);

/// tensor4 lists each unordered pair once, with the full coefficient of xi_a xi_b.
json form_document_json(const QuadFormTensor& f, const std::string& name, const std::string& format = "tensor4");

json acoustic_report_json(const QuadFormTensor& f);
std::string acoustic_report_text(const QuadFormTensor& f);

std::string certificate_text(const Certificate& c);
std::string classification_text(const ClassificationReport& r);

}  // namespace quasiform
