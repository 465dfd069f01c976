#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "quasiform/io.hpp"
#include "quasiform/selftest.hpp"

using namespace quasiform;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNotQuasiconvex = 3;
constexpr int kExitUnresolved = 4;

struct Common {
  std::string input;
  std::string format = "text";
  CertifyOptions options;
};

void add_common(CLI::App* cmd, Common& c, bool with_input = true) {
  if (with_input) cmd->add_option("input", c.input, "form document (JSON file, or - for stdin)")->required();
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--tol", c.options.tol, "negativity tolerance for f(x (x) y)");
  cmd->add_option("--restarts", c.options.restarts, "multistart restarts");
  cmd->add_option("--seed", c.options.seed, "random seed");
  cmd->add_option("--max-iter", c.options.max_iter, "descent iterations per restart");
}

FormDocument load(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  return parse_form_text(buf.str());
}

void print(const json& j, const std::string& text, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int verdict_exit(Verdict v) {
  if (v == Verdict::NotQuasiconvex) return kExitNotQuasiconvex;
  if (v == Verdict::Unresolved) return kExitUnresolved;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasiconvex quadratic forms on 3x3 matrices: acoustic tensor, determinant structure, certificates"};
  app.require_subcommand(1);

  Common acoustic, classify_args, certify_args, probe_args;
  std::string what;
  std::string catalog_name, catalog_format = "tensor4";
  std::uint64_t selftest_seed = 0;
  std::string selftest_format = "text";

  auto* acoustic_cmd = app.add_subcommand("acoustic", "print T(y), det T and the cofactor matrix");
  acoustic_cmd->add_option("input", acoustic.input, "form document (JSON file, or - for stdin)")->required();
  acoustic_cmd->add_option("--format", acoustic.format, "output format")->check(CLI::IsMember({"text", "json"}));

  auto* classify_cmd = app.add_subcommand("classify", "run the determinant-based classification");
  add_common(classify_cmd, classify_args);

  auto* certify_cmd = app.add_subcommand("certify", "produce a single certificate");
  add_common(certify_cmd, certify_args);
  certify_cmd->add_option("--what", what, "certificate to produce")
      ->required()
      ->check(CLI::IsMember({"quasiconvex", "polyconvex", "extremal"}));

  auto* probe_cmd = app.add_subcommand("probe", "search for a subtractable rank-one form");
  add_common(probe_cmd, probe_args);

  auto* catalog_cmd = app.add_subcommand("catalog", "print a fixture form document");
  catalog_cmd->add_option("name", catalog_name, "example1 | example2 | example3 | example4")->required();
  catalog_cmd->add_option("--format", catalog_format, "document format")->check(CLI::IsMember({"tensor4", "gram"}));

  auto* selftest_cmd = app.add_subcommand("selftest", "run the exact property suites");
  selftest_cmd->add_option("--seed", selftest_seed, "random seed");
  selftest_cmd->add_option("--format", selftest_format, "output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*acoustic_cmd) {
      FormDocument doc = load(acoustic.input);
      print(acoustic_report_json(doc.form), acoustic_report_text(doc.form), acoustic.format);
      return kExitOk;
    }
    if (*classify_cmd) {
      FormDocument doc = load(classify_args.input);
      if (doc.form.d() != 3) {
        std::cerr << "error: classify requires d = 3 (got " << doc.form.d() << ")\n";
        return kExitInput;
      }
      ClassificationReport r = classify(doc.form, classify_args.options);
      print(to_json(r), classification_text(r), classify_args.format);
      return verdict_exit(r.verdict);
    }
    if (*certify_cmd) {
      FormDocument doc = load(certify_args.input);
      const CertifyOptions& o = certify_args.options;
      Certificate c;
      if (what == "quasiconvex") {
        c = check_quasiconvex(doc.form, o);
      } else if (what == "polyconvex") {
        if (doc.form.d() != 3) {
          std::cerr << "error: polyconvexity certificates require d = 3\n";
          return kExitInput;
        }
        c = check_polyconvex(doc.form, o);
      } else {
        std::vector<ZeroPoint> zeros;
        for (ZeroPoint& z : find_rank_one_zeros(doc.form, o.zero_restarts, o.seed)) {
          if (z.rationalized) zeros.push_back(std::move(z));
        }
        c = extremal_form_certificate(doc.form, zeros);
      }
      print(to_json(c), certificate_text(c), certify_args.format);
      return kExitOk;
    }
    if (*probe_cmd) {
      FormDocument doc = load(probe_args.input);
      Certificate c = subtract_probe(doc.form, {}, probe_args.options);
      print(to_json(c), certificate_text(c), probe_args.format);
      return kExitOk;
    }
    if (*catalog_cmd) {
      std::cout << form_document_json(catalog(catalog_name), catalog_name, catalog_format).dump(2) << "\n";
      return kExitOk;
    }
    if (*selftest_cmd) {
      SelfTestReport r = run_selftest(selftest_seed);
      if (selftest_format == "json") {
        std::cout << to_json(r).dump(2) << "\n";
      } else {
        for (const SuiteResult& s : r.suites) {
          std::cout << (s.passed() ? "PASS " : "FAIL ") << s.name << " (" << s.cases << " cases)";
          if (!s.passed()) std::cout << ": " << s.detail;
          std::cout << "\n";
        }
      }
      return r.passed() ? kExitOk : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
