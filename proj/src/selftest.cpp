#include "quasiform/selftest.hpp"

#include <cmath>
#include <functional>

#include "quasiform/classifier.hpp"
#include "quasiform/random.hpp"
#include "quasiform/structure.hpp"

namespace quasiform {

bool SelfTestReport::passed() const {
  for (const SuiteResult& s : suites) {
    if (!s.passed()) return false;
  }
  return true;
}

nlohmann::json to_json(const SelfTestReport& r) {
  nlohmann::json suites = nlohmann::json::array();
  for (const SuiteResult& s : r.suites) {
    suites.push_back({{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}, {"passed", s.passed()},
                      {"detail", s.detail}});
  }
  return {{"schema", "1"}, {"passed", r.passed()}, {"suites", suites}};
}

namespace {

/// Runs `check(rng, k)` for k < cases; a false return or an exception counts as a failure.
SuiteResult run_suite(const std::string& name, int cases, std::uint64_t seed,
                      const std::function<bool(CounterRng&, int)>& check) {
  SuiteResult s;
  s.name = name;
  s.cases = cases;
  for (int k = 0; k < cases; ++k) {
    CounterRng rng(seed, static_cast<std::uint64_t>(k));
    bool ok = false;
    std::string why = "property violated";
    try {
      ok = check(rng, k);
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (!ok) {
      if (s.failures++ == 0) s.detail = "case " + std::to_string(k) + ": " + why;
    }
  }
  return s;
}

Rat quadratic_value(const RatMatrix& m, const RatVector& x) {
  Rat v = 0;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) v += x[i] * m(i, j) * x[j];
  }
  return v;
}

}  // namespace

SelfTestReport run_selftest(std::uint64_t seed) {
  SelfTestReport r;

  r.suites.push_back(run_suite("rational_roundtrip", 50, seed, [](CounterRng& rng, int) {
    Rat q = random_rat(rng, 1000, 97);
    return parse_rat(to_string(q)) == q;
  }));

  r.suites.push_back(run_suite("catalog_determinants", 1, seed, [](CounterRng&, int) {
    const HomPoly d1 = determinant(acoustic_matrix(catalog("example1")));
    return d1 == HomPoly::monomial({2, 2, 2}, Rat(1)) && determinant(acoustic_matrix(catalog("example2"))).is_zero() &&
           determinant(acoustic_matrix(catalog("example3"))).is_zero();
  }));

  r.suites.push_back(run_suite("acoustic_identity", 20, seed, [](CounterRng& rng, int k) {
    const int d = 2 + k % 3;
    QuadFormTensor f = random_form(rng, d);
    AcousticMatrix t = acoustic_matrix(f);
    for (int trial = 0; trial < 5; ++trial) {
      RatVector x = random_rat_vector(rng, d), y = random_rat_vector(rng, d);
      if (quadratic_value(t.at(std::span<const Rat>(y)), x) != f.biquadratic(x, y)) return false;
    }
    return t.matrix().is_symmetric();
  }));

  r.suites.push_back(run_suite("cofactor_identity", 10, seed, [](CounterRng& rng, int k) {
    const int d = 2 + k % 3;
    AcousticMatrix t = acoustic_matrix(random_form(rng, d));
    const HomPoly det = determinant(t);
    const PolyMatrix prod = t.matrix() * transpose(cofactor_matrix(t));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const HomPoly& e = prod(i, j);
        if (i == j ? !(e == det) : !e.is_zero()) return false;
      }
    }
    return true;
  }));

  r.suites.push_back(run_suite("det_update", 10, seed, [](CounterRng& rng, int) {
    QuadFormTensor f = random_form(rng, 3);
    RankOneForm b(3, random_rat_vector(rng, 9));
    Rat t = random_rat(rng);
    return det_update(acoustic_matrix(f), b, t) == determinant(acoustic_matrix(f - t * b.form()));
  }));

  r.suites.push_back(run_suite("null_lagrangians", 9, seed, [](CounterRng& rng, int k) {
    const auto& basis = null_lagrangian_basis();
    if (!biquadratic_polynomial(basis.forms[k]).is_zero()) return false;
    QuadFormTensor f = random_form(rng, 3);
    return acoustic_matrix(add_null_lagrangian(f, random_rat_vector(rng, 9))) == acoustic_matrix(f);
  }));

  r.suites.push_back(run_suite("rank_one_factor", 20, seed, [](CounterRng& rng, int k) {
    const int m = 1 + k % 3, n = 1 + (k / 3) % 3;
    std::vector<HomPoly> b, c;
    for (int i = 0; i < m; ++i) b.push_back(random_poly(rng, 3, 2));
    for (int j = 0; j < n; ++j) c.push_back(random_poly(rng, 3, 1));
    PolyMatrix a(m, n, 3, 3);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = b[i] * c[j];
    }
    auto fac = rank_one_factor(a);
    if (!fac) return false;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!(fac->b[i] * fac->c[j] == a(i, j))) return false;
      }
    }
    return true;
  }));

  r.suites.push_back(run_suite("eigensolver", 20, seed, [](CounterRng& rng, int k) {
    const int n = 2 + k % 8;
    SymMatF m(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) m.set(i, j, rng.normal());
    }
    EigenDecomposition e = eig_sym(m);
    double scale = 1.0;
    for (double v : m.data()) scale = std::max(scale, std::fabs(v));
    for (int i = 0; i < n; ++i) {
      for (int k2 = 0; k2 < n; ++k2) {
        double mv = 0.0;
        for (int j = 0; j < n; ++j) mv += m(i, j) * e.vector_entry(j, k2);
        if (std::fabs(mv - e.values[k2] * e.vector_entry(i, k2)) > 1e-10 * scale) return false;
      }
    }
    return true;
  }));

  r.suites.push_back(run_suite("equivalence", 1, seed, [seed](CounterRng&, int) {
    return equivalence_suite(determinant(acoustic_matrix(catalog("example4"))), 10, seed).passed() &&
           equivalence_suite(HomPoly::from_terms(2, 4, {{{4, 0}, 1}, {{1, 3}, -2}}), 10, seed).passed();
  }));

  return r;
}

}  // namespace quasiform
