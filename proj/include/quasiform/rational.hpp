#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quasiform/error.hpp"

namespace quasiform {

/// Exact rational number. GMP keeps every value canonical (reduced, den >= 1).
using Rat = mpq_class;
using RatVector = std::vector<Rat>;

/// Parses "n", "-n", "n/d" or a finite decimal literal such as "0.125".
Rat parse_rat(std::string_view text);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rat& value);

double to_double(const Rat& value);

/// Exact square root when `value` is the square of a rational.
std::optional<Rat> rational_sqrt(const Rat& value);

/// Continued-fraction convergents of `value` whose denominators do not exceed
/// `max_den`, coarsest first.
std::vector<Rat> convergents(double value, long max_den);

/// Closest convergent with denominator at most `max_den`.
Rat rationalize(double value, long max_den);

/// Largest rational with denominator at most `max_den` that does not exceed
/// `value`, chosen among the convergents and floor(value * max_den) / max_den.
Rat rationalize_below(double value, long max_den);

/// Rationalizes a direction: the vector is rescaled so its largest-magnitude
/// component is +-1 and every other component is replaced by a convergent.
RatVector rationalize_direction(const std::vector<double>& v, long max_den);

std::vector<double> to_double(const RatVector& v);

}  // namespace quasiform
