#include "quasiform/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "quasiform/numerics.hpp"

namespace quasiform {

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  int da = total_degree(a);
  int db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
  std::vector<Monomial> out;
  Monomial m(nvars, 0);
  // Recursive fill in lex-descending order: largest exponent for y1 first.
  auto rec = [&](auto& self, int var, int remaining) -> void {
    if (var == nvars - 1) {
      m[var] = remaining;
      out.push_back(m);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      m[var] = e;
      self(self, var + 1, remaining - e);
    }
  };
  if (nvars == 0) {
    if (degree == 0) out.push_back(m);
    return out;
  }
  rec(rec, 0, degree);
  return out;
}

HomPoly::HomPoly(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 0 || degree < 0) throw Error(ErrorCode::InvalidArgument, "negative variable count or degree");
}

HomPoly HomPoly::constant(int nvars, const Rat& c) {
  HomPoly p(nvars, 0);
  p.accumulate(Monomial(nvars, 0), c);
  return p;
}

HomPoly HomPoly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  Monomial m(nvars, 0);
  m[index] = 1;
  HomPoly p(nvars, 1);
  p.accumulate(m, Rat(1));
  return p;
}

HomPoly HomPoly::monomial(const Monomial& exponents, const Rat& c) {
  for (int e : exponents) {
    if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  }
  HomPoly p(static_cast<int>(exponents.size()), total_degree(exponents));
  p.accumulate(exponents, c);
  return p;
}

HomPoly HomPoly::linear(std::span<const Rat> coeffs) {
  int n = static_cast<int>(coeffs.size());
  HomPoly p(n, 1);
  for (int i = 0; i < n; ++i) {
    Monomial m(n, 0);
    m[i] = 1;
    p.accumulate(m, coeffs[i]);
  }
  return p;
}

HomPoly HomPoly::from_terms(int nvars, int degree, const std::vector<std::pair<Monomial, Rat>>& terms) {
  HomPoly p(nvars, degree);
  for (const auto& [m, c] : terms) {
    if (static_cast<int>(m.size()) != nvars) {
      throw Error(ErrorCode::DimensionMismatch, "monomial length does not match variable count");
    }
    if (total_degree(m) != degree) {
      throw Error(ErrorCode::DegreeMismatch, "monomial degree does not match polynomial degree");
    }
    for (int e : m) {
      if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    }
    p.accumulate(m, c);
  }
  return p;
}

void HomPoly::accumulate(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat HomPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

const Monomial& HomPoly::leading_monomial() const {
  if (terms_.empty()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no leading term");
  return terms_.begin()->first;
}

const Rat& HomPoly::leading_coefficient() const {
  if (terms_.empty()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no leading term");
  return terms_.begin()->second;
}

int HomPoly::degree_in(int var) const {
  int best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, m[var]);
  return best;
}

bool operator==(const HomPoly& a, const HomPoly& b) {
  if (a.nvars_ != b.nvars_) return false;
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

HomPoly add(const HomPoly& p, const HomPoly& q) {
  if (p.nvars_ != q.nvars_) throw Error(ErrorCode::DimensionMismatch, "add: variable counts differ");
  if (p.degree_ != q.degree_) {
    // A zero operand adopts the other's degree; otherwise the sum is inhomogeneous.
    if (p.is_zero()) return q;
    if (q.is_zero()) return p;
    throw Error(ErrorCode::DegreeMismatch, "add: degrees differ");
  }
  HomPoly r = p;
  for (const auto& [m, c] : q.terms_) r.accumulate(m, c);
  return r;
}

HomPoly sub(const HomPoly& p, const HomPoly& q) { return add(p, scale(q, Rat(-1))); }

HomPoly scale(const HomPoly& p, const Rat& c) {
  HomPoly r(p.nvars_, p.degree_);
  if (c == 0) return r;
  for (const auto& [m, v] : p.terms_) r.terms_.emplace_hint(r.terms_.end(), m, v * c);
  return r;
}

HomPoly mul(const HomPoly& p, const HomPoly& q) {
  if (p.nvars_ != q.nvars_) throw Error(ErrorCode::DimensionMismatch, "mul: variable counts differ");
  HomPoly r(p.nvars_, p.degree_ + q.degree_);
  Monomial m(p.nvars_);
  for (const auto& [mp, cp] : p.terms_) {
    for (const auto& [mq, cq] : q.terms_) {
      for (int i = 0; i < p.nvars_; ++i) m[i] = mp[i] + mq[i];
      r.accumulate(m, cp * cq);
    }
  }
  return r;
}

HomPoly pow(const HomPoly& p, int exponent) {
  if (exponent < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
  HomPoly result = HomPoly::constant(p.nvars(), Rat(1));
  HomPoly base = p;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, base);
    exponent >>= 1;
    if (exponent > 0) base = mul(base, base);
  }
  return result;
}

Rat evaluate(const HomPoly& p, std::span<const Rat> point) {
  if (static_cast<int>(point.size()) != p.nvars()) {
    throw Error(ErrorCode::DimensionMismatch, "evaluate: point length does not match variable count");
  }
  Rat total = 0;
  Rat term;
  for (const auto& [m, c] : p.terms()) {
    term = c;
    for (int i = 0; i < p.nvars(); ++i) {
      for (int e = 0; e < m[i]; ++e) term *= point[i];
    }
    total += term;
  }
  return total;
}

double evaluate(const HomPoly& p, std::span<const double> point) {
  if (static_cast<int>(point.size()) != p.nvars()) {
    throw Error(ErrorCode::DimensionMismatch, "evaluate: point length does not match variable count");
  }
  double total = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double term = c.get_d();
    for (int i = 0; i < p.nvars(); ++i) {
      for (int e = 0; e < m[i]; ++e) term *= point[i];
    }
    total += term;
  }
  return total;
}

namespace {

HomPoly partial(const HomPoly& p, int var) {
  std::vector<std::pair<Monomial, Rat>> terms;
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    terms.emplace_back(std::move(d), c * m[var]);
  }
  return HomPoly::from_terms(p.nvars(), p.degree() - 1, terms);
}

}  // namespace

std::vector<HomPoly> gradient(const HomPoly& p) {
  if (p.degree() < 1) throw Error(ErrorCode::DegreeTooSmall, "gradient requires degree >= 1");
  std::vector<HomPoly> g;
  g.reserve(p.nvars());
  for (int i = 0; i < p.nvars(); ++i) g.push_back(partial(p, i));
  return g;
}

std::vector<HomPoly> hessian(const HomPoly& p) {
  if (p.degree() < 2) throw Error(ErrorCode::DegreeTooSmall, "hessian requires degree >= 2");
  int n = p.nvars();
  std::vector<HomPoly> g = gradient(p);
  std::vector<HomPoly> h(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      h[i * n + j] = partial(g[i], j);
      h[j * n + i] = h[i * n + j];
    }
  }
  return h;
}

std::optional<HomPoly> divide_exact(const HomPoly& p, const HomPoly& q) {
  if (q.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "divide_exact: divisor is identically zero");
  if (p.nvars() != q.nvars()) throw Error(ErrorCode::DimensionMismatch, "divide_exact: variable counts differ");
  if (q.degree() > p.degree()) return std::nullopt;
  const int n = p.nvars();
  HomPoly quotient(n, p.degree() - q.degree());
  if (p.is_zero()) return quotient;

  // Leading-term division; a single divisor leaves no remainder exactly when q | p.
  const Monomial& lm_q = q.leading_monomial();
  const Rat& lc_q = q.leading_coefficient();
  HomPoly rem = p;
  std::vector<std::pair<Monomial, Rat>> qterms;
  while (!rem.is_zero()) {
    const Monomial& lm_r = rem.leading_monomial();
    Monomial t(n);
    for (int i = 0; i < n; ++i) {
      t[i] = lm_r[i] - lm_q[i];
      if (t[i] < 0) return std::nullopt;
    }
    Rat c = rem.leading_coefficient() / lc_q;
    HomPoly step = HomPoly::monomial(t, c);
    qterms.emplace_back(t, c);
    rem = sub(rem, mul(step, q));
  }
  return HomPoly::from_terms(n, p.degree() - q.degree(), qterms);
}

std::optional<HomPoly> perfect_square_root(const HomPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "perfect_square_root: zero input");
  if (p.degree() % 2 != 0) throw Error(ErrorCode::OddDegree, "perfect_square_root: odd degree");
  const int n = p.nvars();
  const int half = p.degree() / 2;

  const Monomial& lm = p.leading_monomial();
  Monomial lead(n);
  for (int i = 0; i < n; ++i) {
    if (lm[i] % 2 != 0) return std::nullopt;
    lead[i] = lm[i] / 2;
  }
  auto lead_coeff = rational_sqrt(p.leading_coefficient());
  if (!lead_coeff) return std::nullopt;

  HomPoly root = HomPoly::monomial(lead, *lead_coeff);
  HomPoly twice_lead = HomPoly::monomial(lead, 2 * *lead_coeff);
  HomPoly rem = sub(p, mul(root, root));
  const std::size_t max_terms = monomials_of_degree(n, half).size();

  // Each step fixes the next term of the root from the leading term of the
  // residual; terms arrive in strictly decreasing order when a root exists.
  while (!rem.is_zero()) {
    if (root.size() >= max_terms) return std::nullopt;
    auto next = divide_exact(HomPoly::monomial(rem.leading_monomial(), rem.leading_coefficient()), twice_lead);
    if (!next) return std::nullopt;
    if (!GrlexDescending{}(lead, next->leading_monomial())) return std::nullopt;
    rem = sub(rem, mul(*next, add(add(root, root), *next)));
    root = add(root, *next);
  }
  if (!(mul(root, root) == p)) return std::nullopt;
  return root;
}

std::optional<std::pair<Rat, HomPoly>> square_up_to_scale(const HomPoly& p) {
  if (p.is_zero()) return std::make_pair(Rat(0), HomPoly(p.nvars(), p.degree() / 2));
  if (p.degree() % 2 != 0) return std::nullopt;
  Rat c = p.leading_coefficient();
  if (c < 0) return std::nullopt;
  auto root = perfect_square_root(scale(p, 1 / c));
  if (!root) return std::nullopt;
  return std::make_pair(c, *root);
}

HomPoly make_monic(const HomPoly& p) {
  if (p.is_zero()) return p;
  return scale(p, 1 / p.leading_coefficient());
}

namespace {

/// Coefficients of p viewed as a polynomial in `var`; entry j multiplies var^j.
std::vector<HomPoly> coefficients_in(const HomPoly& p, int var) {
  int top = p.degree_in(var);
  std::vector<std::vector<std::pair<Monomial, Rat>>> buckets(top + 1);
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    rest[var] = 0;
    buckets[m[var]].emplace_back(std::move(rest), c);
  }
  std::vector<HomPoly> out;
  out.reserve(top + 1);
  for (int j = 0; j <= top; ++j) out.push_back(HomPoly::from_terms(p.nvars(), p.degree() - j, buckets[j]));
  return out;
}

HomPoly var_power(int nvars, int var, int e) {
  Monomial m(nvars, 0);
  m[var] = e;
  return HomPoly::monomial(m, Rat(1));
}

HomPoly content_in(const HomPoly& p, int var) {
  std::optional<HomPoly> g;
  for (const HomPoly& c : coefficients_in(p, var)) {
    if (c.is_zero()) continue;
    g = g ? gcd(*g, c) : make_monic(c);
    if (g->degree() == 0) break;
  }
  return *g;
}

HomPoly primitive_part_in(const HomPoly& p, int var) {
  if (p.is_zero()) return p;
  return *divide_exact(p, content_in(p, var));
}

/// Pseudo-remainder of a by b with respect to `var`.
HomPoly pseudo_remainder(const HomPoly& a, const HomPoly& b, int var) {
  const int n = a.nvars();
  const int db = b.degree_in(var);
  const HomPoly lb = coefficients_in(b, var).back();
  int slack = a.degree_in(var) - db + 1;
  HomPoly r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    int dr = r.degree_in(var);
    HomPoly lr = coefficients_in(r, var).back();
    r = sub(mul(lb, r), mul(mul(lr, var_power(n, var, dr - db)), b));
    --slack;
  }
  if (slack > 0 && !r.is_zero()) r = mul(pow(lb, slack), r);
  return r;
}

HomPoly gcd_without_monomial_factor(const HomPoly& p, const HomPoly& q) {
  const int n = p.nvars();
  if (p.degree() == 0 || q.degree() == 0) return HomPoly::constant(n, Rat(1));

  int main_var = -1;
  for (int v = n - 1; v >= 0 && main_var < 0; --v) {
    if (p.degree_in(v) > 0 || q.degree_in(v) > 0) main_var = v;
  }
  if (p.degree_in(main_var) == 0) return gcd(p, content_in(q, main_var));
  if (q.degree_in(main_var) == 0) return gcd(content_in(p, main_var), q);

  HomPoly c = gcd(content_in(p, main_var), content_in(q, main_var));
  HomPoly a = primitive_part_in(p, main_var);
  HomPoly b = primitive_part_in(q, main_var);
  if (a.degree_in(main_var) < b.degree_in(main_var)) std::swap(a, b);

  HomPoly g;
  for (;;) {
    HomPoly r = pseudo_remainder(a, b, main_var);
    if (r.is_zero()) {
      g = b;
      break;
    }
    if (r.degree_in(main_var) == 0) {
      g = HomPoly::constant(n, Rat(1));
      break;
    }
    a = b;
    b = primitive_part_in(r, main_var);
  }
  return make_monic(mul(c, primitive_part_in(g, main_var)));
}

}  // namespace

HomPoly gcd(const HomPoly& p, const HomPoly& q) {
  if (p.nvars() != q.nvars()) throw Error(ErrorCode::DimensionMismatch, "gcd: variable counts differ");
  if (p.is_zero() && q.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "gcd: both inputs are zero");
  if (p.is_zero()) return make_monic(q);
  if (q.is_zero()) return make_monic(p);

  const int n = p.nvars();
  Monomial common(n, std::numeric_limits<int>::max());
  for (const HomPoly* poly : {&p, &q}) {
    for (const auto& [m, c] : poly->terms()) {
      for (int i = 0; i < n; ++i) common[i] = std::min(common[i], m[i]);
    }
  }
  HomPoly mono = HomPoly::monomial(common, Rat(1));
  HomPoly g = gcd_without_monomial_factor(*divide_exact(p, mono), *divide_exact(q, mono));
  return make_monic(mul(g, mono));
}

HomPoly equivalence_transform(const HomPoly& p, std::span<const Rat> matrix) {
  const int n = p.nvars();
  if (static_cast<int>(matrix.size()) != n * n) {
    throw Error(ErrorCode::DimensionMismatch, "equivalence_transform: matrix must be nvars x nvars");
  }
  RatMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = matrix[i * n + j];
  }
  if (determinant(a) == 0) throw Error(ErrorCode::Singular, "equivalence_transform: matrix is singular");

  // powers[i][e] = (sum_j A_ij y_j)^e
  std::vector<std::vector<HomPoly>> powers(n);
  for (int i = 0; i < n; ++i) {
    RatVector row(matrix.begin() + i * n, matrix.begin() + (i + 1) * n);
    HomPoly li = HomPoly::linear(row);
    powers[i].push_back(HomPoly::constant(n, Rat(1)));
    for (int e = 1; e <= p.degree(); ++e) powers[i].push_back(mul(powers[i].back(), li));
  }
  HomPoly out(n, p.degree());
  for (const auto& [m, c] : p.terms()) {
    HomPoly term = HomPoly::constant(n, c);
    for (int i = 0; i < n; ++i) {
      if (m[i] > 0) term = mul(term, powers[i][m[i]]);
    }
    out = add(out, term);
  }
  return out;
}

std::string to_string(const HomPoly& p, std::string_view var_prefix) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rat mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant_term = total_degree(m) == 0;
    if (mag != 1 || constant_term) {
      os << to_string(mag);
      if (!constant_term) os << " * ";
    }
    bool first_var = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!first_var) os << " ";
      first_var = false;
      os << var_prefix << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

}  // namespace quasiform
