// One PASS/FAIL line per acceptance criterion. Exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "helpers.hpp"

using namespace qt;

namespace {

// Pinned tolerances and budgets.
constexpr double kBrunnMinkowskiTol = 1e-9;
constexpr long kWitnessRadiusDen = 1000;  // radius 1e-3
constexpr int kZeroRestarts = 64;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void run(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << std::fixed;
  line.precision(2);
  line << secs << " s / " << budget_s << " s)";
  if (!in_time) line << " over budget;";
  if (!o.detail.empty()) line << " " << o.detail;
  std::cout << line.str() << std::endl;
}

bool some_minor_nonzero(const PolyMatrix& a) {
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = i + 1; k < a.rows(); ++k) {
      for (int j = 0; j < a.cols(); ++j) {
        for (int l = j + 1; l < a.cols(); ++l) {
          if (!(a(i, j) * a(k, l) - a(i, l) * a(k, j)).is_zero()) return true;
        }
      }
    }
  }
  return false;
}

HomPoly nonzero_poly(CounterRng& rng, int nvars, int degree) {
  for (;;) {
    HomPoly p = random_poly(rng, nvars, degree, 0.7, 3);
    if (!p.is_zero()) return p;
  }
}

PolyMatrix sym_outer(const HomPoly& s, const std::array<HomPoly, 3>& v) {
  PolyMatrix m(3, 3, 3, s.degree() + 2 * v[0].degree());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = s * v[i] * v[j];
  }
  return m;
}

std::vector<ZeroPoint> exact_zeros(const QuadFormTensor& f) {
  std::vector<ZeroPoint> out;
  for (ZeroPoint& z : find_rank_one_zeros(f, kZeroRestarts, 0)) {
    if (z.rationalized) out.push_back(std::move(z));
  }
  return out;
}

/// Convex form (PSD Gram on the given monomials) plus a random null Lagrangian.
QuadFormTensor random_polyconvex(CounterRng& rng, const std::vector<int>& monomials, const std::vector<int>& minors) {
  const int m = static_cast<int>(monomials.size());
  RatMatrix small = random_psd(rng, m, m, Rat(1, 2));
  RatMatrix g(9, 9);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) g(monomials[a], monomials[b]) = small(a, b);
  }
  RatVector c(9);
  for (int k : minors) c[k] = random_rat(rng, 4, 2);
  return add_null_lagrangian(QuadFormTensor(3, g), c);
}

}  // namespace

int main() {
  run(1, "example4 determinant equals the printed sextic", 1.0, [] {
    const HomPoly det = determinant(acoustic_matrix(catalog("example4")));
    const bool literal = det == p4();
    const bool swapped = equivalence_transform(det, flat(swap12())) == p4();
    std::string detail = "det = " + to_string(det) + "; printed P = " + to_string(p4());
    detail += swapped ? "; equal after swapping y1 and y2 (orientation conflict, see decisions ledger)" : "";
    return Outcome{literal, detail};
  });

  run(2, "example1/2/3 determinants", 1.0, [] {
    const bool e1 = determinant(acoustic_matrix(catalog("example1"))) == pow(y(1) * y(2) * y(3), 2);
    const bool e2 = determinant(acoustic_matrix(catalog("example2"))).is_zero();
    const bool e3 = determinant(acoustic_matrix(catalog("example3"))).is_zero();
    return Outcome{e1 && e2 && e3, ""};
  });

  run(3, "determinant update identity (100 at d=3, 20 at d=4)", 60.0, [] {
    int bad = 0;
    for (int k = 0; k < 120; ++k) {
      CounterRng rng(1003, k);
      const int d = k < 100 ? 3 : 4;
      QuadFormTensor f = random_form(rng, d);
      RankOneForm b(d, random_rat_vector(rng, d * d));
      Rat t = random_rat(rng, 7, 5);
      if (!(det_update(acoustic_matrix(f), b, t) == determinant(acoustic_matrix(f - t * b.form())))) ++bad;
    }
    return Outcome{bad == 0, std::to_string(bad) + " mismatches"};
  });

  run(4, "Brunn-Minkowski determinant inequality (1000 PSD pairs)", 5.0, [] {
    int bad = 0;
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      CounterRng rng(1004, k);
      RatMatrix a = random_psd(rng, 3, 1 + k % 3), b = random_psd(rng, 3, 1 + (k / 3) % 3);
      RatMatrix s(3, 3);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) s(i, j) = a(i, j) + b(i, j);
      }
      const double lhs = std::cbrt(determinant(s).get_d());
      const double rhs = std::cbrt(determinant(a).get_d()) + std::cbrt(determinant(b).get_d());
      const double gap = lhs - rhs;
      worst = std::min(worst, gap);
      if (gap < -kBrunnMinkowskiTol * std::max(1.0, std::fabs(lhs))) ++bad;
    }
    std::ostringstream os;
    os << bad << " violations, worst gap " << worst;
    return Outcome{bad == 0, os.str()};
  });

  run(5, "rank-one factorization (200 round trips, 50 rejections)", 60.0, [] {
    int bad = 0;
    for (int k = 0; k < 200; ++k) {
      CounterRng rng(1005, k);
      const int m = 1 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 4);
      const int db = static_cast<int>(rng() % 3), dc = static_cast<int>(rng() % (5 - db));
      std::vector<HomPoly> b, c;
      for (int i = 0; i < m; ++i) b.push_back(random_poly(rng, 3, db, 0.7, 3));
      for (int j = 0; j < n; ++j) c.push_back(random_poly(rng, 3, dc, 0.7, 3));
      PolyMatrix a(m, n, 3, db + dc);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = b[i] * c[j];
      }
      auto f = rank_one_factor(a);
      bool ok = f.has_value();
      for (int i = 0; ok && i < m; ++i) {
        for (int j = 0; ok && j < n; ++j) ok = f->b[i] * f->c[j] == a(i, j);
      }
      if (!ok) ++bad;
    }
    int rejected = 0, tested = 0;
    for (int k = 0; tested < 50; ++k) {
      CounterRng rng(2005, k);
      const int m = 2 + static_cast<int>(rng() % 3), n = 2 + static_cast<int>(rng() % 3);
      const int deg = 1 + static_cast<int>(rng() % 4);
      PolyMatrix a(m, n, 3, deg);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = nonzero_poly(rng, 3, deg);
      }
      if (!some_minor_nonzero(a)) continue;
      ++tested;
      if (!rank_one_factor(a).has_value()) ++rejected;
    }
    return Outcome{bad == 0 && rejected == 50,
                   std::to_string(200 - bad) + "/200 factored, " + std::to_string(rejected) + "/50 rejected"};
  });

  run(6, "cofactor structure classification (20 per shape)", 30.0, [] {
    int ok[3] = {0, 0, 0};
    for (int k = 0; k < 20; ++k) {
      CounterRng rng(1006, k);
      HomPoly p = nonzero_poly(rng, 3, 4);
      Rat alpha = random_rat(rng), beta = random_rat(rng);
      PolyMatrix m1 = sym_outer(p, {HomPoly::constant(3, 1), HomPoly::constant(3, alpha), HomPoly::constant(3, beta)});
      CofactorStructure s1 = classify_cofactor_structure(m1);
      if (s1.shape == CofactorShape::ScaledRankOne && s1.reconstruct() == m1) ++ok[0];

      std::array<HomPoly, 3> w{nonzero_poly(rng, 3, 2), nonzero_poly(rng, 3, 2), nonzero_poly(rng, 3, 2)};
      PolyMatrix m2 = sym_outer(HomPoly::constant(3, 1), w);
      CofactorStructure s2 = classify_cofactor_structure(m2);
      if (s2.shape == CofactorShape::PerfectSquares && s2.reconstruct() == m2) ++ok[1];

      std::array<HomPoly, 3> l{nonzero_poly(rng, 3, 1), nonzero_poly(rng, 3, 1), nonzero_poly(rng, 3, 1)};
      HomPoly s = nonzero_poly(rng, 3, 2);
      PolyMatrix m3 = sym_outer(s, l);
      CofactorStructure s3 = classify_cofactor_structure(m3);
      if (s3.shape == CofactorShape::LinearSquaresTimesS && s3.reconstruct() == m3) ++ok[2];
    }
    return Outcome{ok[0] == 20 && ok[1] == 20 && ok[2] == 20,
                   std::to_string(ok[0]) + "/" + std::to_string(ok[1]) + "/" + std::to_string(ok[2]) + " of 20"};
  });

  run(7, "sign witnesses near a zero (100 indefinite ternary quadratics)", 10.0, [] {
    const Rat radius(1, kWitnessRadiusDen);
    int good = 0;
    for (int k = 0; k < 100; ++k) {
      for (int attempt = 0;; ++attempt) {
        CounterRng rng(1007, static_cast<std::uint64_t>(k) * 1000 + attempt);
        RatVector xi0 = random_nonzero_int_vector(rng, 3, 3);
        for (Rat& v : xi0) v /= 1 + static_cast<long>(rng() % 3);
        HomPoly q = random_poly(rng, 3, 2, 1.0, 4);
        HomPoly lin = HomPoly::linear(random_nonzero_int_vector(rng, 3, 3));
        const Rat lv = evaluate(lin, xi0);
        if (lv == 0) continue;
        q = q - (evaluate(q, xi0) / (lv * lv)) * (lin * lin);
        if (!inertia_descartes(quadratic_gram(q)).is_indefinite()) continue;
        SignWitnesses w = sign_witnesses(q, xi0, radius);
        bool ok = evaluate(q, w.negative) < 0 && evaluate(q, w.positive) > 0;
        for (int i = 0; i < 3; ++i) {
          ok = ok && abs(w.negative[i] - xi0[i]) <= radius && abs(w.positive[i] - xi0[i]) <= radius;
        }
        good += ok ? 1 : 0;
        break;
      }
    }
    return Outcome{good == 100, std::to_string(good) + "/100"};
  });

  run(8, "square family check (50 multiples, 50 non-multiples)", 30.0, [] {
    int pos = 0, neg = 0, neg_tested = 0;
    for (int k = 0; k < 50; ++k) {
      CounterRng rng(1008, k);
      HomPoly p = nonzero_poly(rng, 3, 2);
      Rat alpha = random_rat(rng, 5, 3);
      if (alpha == 0) alpha = 1;
      HomPoly q = (alpha * alpha) * p * p;
      const Rat delta = 1 / (2 * alpha * alpha);
      const Rat ts[] = {delta, delta / 2, delta / 4, delta / 8};
      if (square_family_check(p, q, ts) && square_multiple(p, q) == alpha * alpha) ++pos;
    }
    for (int k = 0; neg_tested < 50; ++k) {
      CounterRng rng(2008, k);
      HomPoly p = nonzero_poly(rng, 3, 2);
      HomPoly q(3, 4);
      for (int s = 0; s < 2; ++s) {
        HomPoly r = nonzero_poly(rng, 3, 2);
        q = q + r * r;
      }
      auto ratio = divide_exact(q, p * p);
      if (ratio && ratio->degree() == 0) continue;
      ++neg_tested;
      const Rat ts[] = {Rat(1, 8), Rat(1, 16), Rat(1, 32), Rat(1, 64)};
      if (!square_family_check(p, q, ts)) ++neg;
    }
    return Outcome{pos == 50 && neg == 50, std::to_string(pos) + "/50 accepted, " + std::to_string(neg) + "/50 rejected"};
  });

  run(9, "classifier fixtures", 120.0, [] {
    ClassificationReport r4 = classify(catalog("example4"));
    ClassificationReport r1 = classify(catalog("example1"));
    ClassificationReport r2 = classify(catalog("example2"));
    ClassificationReport r3 = classify(catalog("example3"));
    ClassificationReport again = classify(catalog("example4"));
    const bool ok = r4.verdict == Verdict::Extremal && r4.det_case == DetCase::ExtremalNotSquare &&
                    r4.theorem_basis == basis::kExtremalDetNotSquare && r1.verdict == Verdict::Polyconvex &&
                    r2.verdict == Verdict::Polyconvex && r3.verdict == Verdict::Polyconvex &&
                    to_json(again) == to_json(r4);
    return Outcome{ok, std::string("example4 ") + to_string(r4.verdict) + ", example1 " + to_string(r1.verdict) +
                           ", example2 " + to_string(r2.verdict) + ", example3 " + to_string(r3.verdict)};
  });

  run(10, "zero-set extremality certificate for example4", 30.0, [] {
    Certificate c = extremal_form_certificate(catalog("example4"), exact_zeros(catalog("example4")));
    const int nullity = c.payload.at("nullity").get<int>();
    return Outcome{c.status == CertificateStatus::Certified && nullity == 0 && verify(c),
                   "nullity " + std::to_string(nullity) + ", rank " + std::to_string(c.payload.at("rank").get<int>())};
  });

  run(11, "extremal-polynomial certificate for the example4 sextic", 30.0, [] {
    Certificate c = extremal_poly_certificate(p4(), find_polynomial_zeros(p4(), kZeroRestarts, 0));
    const int nullity = c.payload.at("nullity").get<int>();
    return Outcome{c.status == CertificateStatus::Certified && nullity == 1 && verify(c),
                   "nullity " + std::to_string(nullity) + ", surviving " + c.payload.at("surviving").dump()};
  });

  run(12, "polyconvexity certificates (50 convex, 50 embedded 2x3, example4 over 5 seeds)", 300.0, [] {
    int convex = 0, embedded = 0, eq11 = 0;
    const std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7, 8};
    const std::vector<int> rows12{0, 1, 2, 3, 4, 5};
    std::vector<int> minors12;
    const auto& basis = null_lagrangian_basis();
    for (int k = 0; k < 9; ++k) {
      if (basis.minors[k].i == 0 && basis.minors[k].k == 1) minors12.push_back(k);
    }
    for (int k = 0; k < 50; ++k) {
      CounterRng rng(1012, k);
      Certificate c = check_polyconvex(random_polyconvex(rng, all, all));
      if (c.status == CertificateStatus::Certified && verify(c)) ++convex;
    }
    for (int k = 0; k < 50; ++k) {
      CounterRng rng(2012, k);
      QuadFormTensor f = random_polyconvex(rng, rows12, minors12);
      Certificate c = check_polyconvex(f);
      if (c.status == CertificateStatus::Certified && verify(c)) ++embedded;
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      CertifyOptions o;
      o.seed = seed;
      if (check_polyconvex(catalog("example4"), o).status != CertificateStatus::Certified) ++eq11;
    }
    return Outcome{convex == 50 && embedded == 50 && eq11 == 5,
                   std::to_string(convex) + "/50 convex, " + std::to_string(embedded) + "/50 embedded, example4 " +
                       std::to_string(eq11) + "/5 not certified"};
  });

  run(13, "quasiconvexity refutation (100 indefinite forms)", 60.0, [] {
    int good = 0;
    for (int k = 0; k < 100; ++k) {
      CounterRng rng(1013, k);
      QuadFormTensor f = random_form(rng, 3);
      RatVector x = random_nonzero_int_vector(rng, 3), yv = random_nonzero_int_vector(rng, 3);
      Rat nx = 0, ny = 0;
      for (int i = 0; i < 3; ++i) {
        nx += x[i] * x[i];
        ny += yv[i] * yv[i];
      }
      // f - k |xi|^2 with f(x (x) y) - k |x|^2 |y|^2 = -1
      const Rat shift = (f.biquadratic(x, yv) + 1) / (nx * ny);
      RatMatrix g = f.gram();
      for (int a = 0; a < 9; ++a) g(a, a) -= shift;
      QuadFormTensor h(3, g);
      Certificate c = check_quasiconvex(h);
      if (c.status != CertificateStatus::Refuted) continue;
      RatVector wx = rat_vector_from_json(c.payload.at("x")), wy = rat_vector_from_json(c.payload.at("y"));
      if (h.biquadratic(wx, wy) < 0 && verify(c)) ++good;
    }
    return Outcome{good == 100, std::to_string(good) + "/100 refuted with exact witnesses"};
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
