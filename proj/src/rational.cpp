#include "quasiform/rational.hpp"

#include <cctype>
#include <cmath>

namespace quasiform {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::DegreeMismatch: return "degree_mismatch";
    case ErrorCode::DegreeTooSmall: return "degree_too_small";
    case ErrorCode::ZeroPolynomial: return "zero_polynomial";
    case ErrorCode::OddDegree: return "odd_degree";
    case ErrorCode::Singular: return "singular";
    case ErrorCode::NonFinite: return "non_finite";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(ErrorCode::Parse, "not a rational literal: '" + std::string(whole) + "'");
  }
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::Parse, "empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) {
      throw Error(ErrorCode::Parse, "not a rational literal: '" + std::string(text) + "'");
    }
    mpz_class den(std::string(den_text), 10);
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw Error(ErrorCode::Parse, "not a rational literal: '" + std::string(text) + "'");
    }
    mpz_class whole = int_part.empty() ? mpz_class(0) : mpz_class(std::string(int_part), 10);
    mpz_class frac = frac_part.empty() ? mpz_class(0) : mpz_class(std::string(frac_part), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Rat r(whole * scale + frac, scale);
    r.canonicalize();
    return negative ? Rat(-r) : r;
  }

  return Rat(parse_integer(text, text));
}

std::string to_string(const Rat& value) { return value.get_str(10); }

double to_double(const Rat& value) { return value.get_d(); }

std::optional<Rat> rational_sqrt(const Rat& value) {
  if (sgn(value) < 0) return std::nullopt;
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

std::vector<Rat> convergents(double value, long max_den) {
  if (!std::isfinite(value)) throw Error(ErrorCode::NonFinite, "cannot rationalize a non-finite value");
  if (max_den < 1) throw Error(ErrorCode::InvalidArgument, "denominator cap must be positive");

  std::vector<Rat> out;
  Rat x(value);  // exact binary value of the double
  mpz_class h_prev = 1, h_prev2 = 0;
  mpz_class k_prev = 0, k_prev2 = 1;
  for (int iter = 0; iter < 128; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpz_class h = a * h_prev + h_prev2;
    mpz_class k = a * k_prev + k_prev2;
    if (k > max_den) break;
    Rat c(h, k);
    c.canonicalize();
    out.push_back(c);
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    Rat frac = x - Rat(a);
    if (frac == 0) break;
    x = 1 / frac;
  }
  return out;
}

Rat rationalize(double value, long max_den) {
  auto cs = convergents(value, max_den);
  return cs.empty() ? Rat(0) : cs.back();
}

Rat rationalize_below(double value, long max_den) {
  Rat exact(value);
  mpz_class fl;
  Rat scaled = exact * max_den;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rat best(fl, max_den);
  best.canonicalize();
  for (const Rat& c : convergents(value, max_den)) {
    if (c <= exact && c > best) best = c;
  }
  return best;
}

RatVector rationalize_direction(const std::vector<double>& v, long max_den) {
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::fabs(v[i]) > std::fabs(v[pivot])) pivot = i;
  }
  RatVector out(v.size());
  if (v.empty() || v[pivot] == 0.0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = (i == pivot) ? Rat(v[i] > 0 ? 1 : -1) : rationalize(v[i] / std::fabs(v[pivot]), max_den);
  }
  return out;
}

std::vector<double> to_double(const RatVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const Rat& r : v) out.push_back(r.get_d());
  return out;
}

}  // namespace quasiform
