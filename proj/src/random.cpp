#include "quasiform/random.hpp"

namespace quasiform {

namespace {

long uniform_int(CounterRng& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

Rat random_rat(CounterRng& rng, int range, int max_den) {
  Rat r(uniform_int(rng, -range, range), uniform_int(rng, 1, max_den));
  r.canonicalize();
  return r;
}

RatVector random_rat_vector(CounterRng& rng, int n, int range, int max_den) {
  RatVector v(n);
  for (Rat& x : v) x = random_rat(rng, range, max_den);
  return v;
}

RatVector random_nonzero_int_vector(CounterRng& rng, int n, int range) {
  for (;;) {
    RatVector v(n);
    bool nonzero = false;
    for (Rat& x : v) {
      x = uniform_int(rng, -range, range);
      nonzero = nonzero || x != 0;
    }
    if (nonzero) return v;
  }
}

QuadFormTensor random_form(CounterRng& rng, int d, int range, int max_den) {
  const int n = d * d;
  RatMatrix g(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) g(a, b) = g(b, a) = random_rat(rng, range, max_den);
  }
  return QuadFormTensor(d, g);
}

RatMatrix random_psd(CounterRng& rng, int n, int rank, const Rat& shift, int range) {
  RatMatrix m(n, n);
  for (int k = 0; k < rank; ++k) {
    RatVector v = random_nonzero_int_vector(rng, n, range);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) += v[i] * v[j];
    }
  }
  for (int i = 0; i < n; ++i) m(i, i) += shift;
  return m;
}

HomPoly random_poly(CounterRng& rng, int nvars, int degree, double density, int range) {
  std::vector<std::pair<Monomial, Rat>> terms;
  for (const Monomial& m : monomials_of_degree(nvars, degree)) {
    if (rng.uniform() >= density) continue;
    Rat c(uniform_int(rng, -range, range));
    if (c != 0) terms.emplace_back(m, c);
  }
  return HomPoly::from_terms(nvars, degree, terms);
}

RatMatrix random_nonsingular(CounterRng& rng, int n) {
  for (;;) {
    RatMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = random_rat(rng, 3, 3);
    }
    if (determinant(a) != 0) return a;
  }
}

}  // namespace quasiform
