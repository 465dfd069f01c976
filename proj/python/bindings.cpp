#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quasiform/io.hpp"
#include "quasiform/selftest.hpp"

namespace py = pybind11;
using namespace quasiform;

namespace {

CertifyOptions options_from(std::uint64_t seed, int restarts, double tol, int max_iter) {
  CertifyOptions o;
  o.seed = seed;
  o.restarts = restarts;
  o.tol = tol;
  o.max_iter = max_iter;
  return o;
}

QuadFormTensor form_of(const std::string& doc) { return parse_form_text(doc).form; }

}  // namespace

// Documents and reports cross the boundary as JSON text; the Python package
// turns them into dicts.
PYBIND11_MODULE(_core, m) {
  m.doc() = "exact analysis of quadratic forms on 3x3 matrices";

  py::register_exception<Error>(m, "QuasiformError", PyExc_ValueError);

  m.def("catalog_names", &catalog_names);
  m.def("catalog", [](const std::string& name, const std::string& format) {
    return form_document_json(catalog(name), name, format).dump();
  }, py::arg("name"), py::arg("format") = "tensor4");
  m.def("acoustic", [](const std::string& doc) { return acoustic_report_json(form_of(doc)).dump(); });
  m.def("determinant", [](const std::string& doc) { return to_string(determinant(acoustic_matrix(form_of(doc)))); });

  m.def("classify", [](const std::string& doc, std::uint64_t seed, int restarts, double tol, int max_iter) {
    QuadFormTensor f = form_of(doc);
    py::gil_scoped_release release;
    return to_json(classify(f, options_from(seed, restarts, tol, max_iter))).dump();
  }, py::arg("doc"), py::arg("seed") = 0, py::arg("restarts") = 16, py::arg("tol") = 1e-9, py::arg("max_iter") = 3000);

  m.def("certify", [](const std::string& doc, const std::string& what, std::uint64_t seed, int restarts, double tol,
                      int max_iter) {
    QuadFormTensor f = form_of(doc);
    CertifyOptions o = options_from(seed, restarts, tol, max_iter);
    py::gil_scoped_release release;
    if (what == "quasiconvex") return to_json(check_quasiconvex(f, o)).dump();
    if (what == "polyconvex") return to_json(check_polyconvex(f, o)).dump();
    if (what == "extremal") {
      std::vector<ZeroPoint> zeros;
      for (ZeroPoint& z : find_rank_one_zeros(f, o.zero_restarts, o.seed)) {
        if (z.rationalized) zeros.push_back(std::move(z));
      }
      return to_json(extremal_form_certificate(f, zeros)).dump();
    }
    throw Error(ErrorCode::InvalidArgument, "what must be quasiconvex, polyconvex or extremal");
  }, py::arg("doc"), py::arg("what"), py::arg("seed") = 0, py::arg("restarts") = 16, py::arg("tol") = 1e-9,
     py::arg("max_iter") = 3000);

  m.def("probe", [](const std::string& doc, std::uint64_t seed) {
    QuadFormTensor f = form_of(doc);
    CertifyOptions o;
    o.seed = seed;
    py::gil_scoped_release release;
    return to_json(subtract_probe(f, {}, o)).dump();
  }, py::arg("doc"), py::arg("seed") = 0);

  m.def("verify", [](const std::string& certificate) {
    return verify(certificate_from_json(json::parse(certificate)));
  });

  m.def("selftest", [](std::uint64_t seed) { return to_json(run_selftest(seed)).dump(); }, py::arg("seed") = 0);
}
