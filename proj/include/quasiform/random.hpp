#pragma once

#include "quasiform/forms.hpp"

namespace quasiform {

/// Seeded random exact data for property tests and the self-test.

/// Integer numerator in [-range, range] over a denominator in [1, max_den].
Rat random_rat(CounterRng& rng, int range = 5, int max_den = 3);
RatVector random_rat_vector(CounterRng& rng, int n, int range = 5, int max_den = 3);
/// Random integer vector, never all zero.
RatVector random_nonzero_int_vector(CounterRng& rng, int n, int range = 3);

/// Symmetric Gram matrix with random rational entries.
QuadFormTensor random_form(CounterRng& rng, int d, int range = 5, int max_den = 3);

/// sum_k v_k v_k^T over `rank` random integer vectors, plus `shift` * I.
RatMatrix random_psd(CounterRng& rng, int n, int rank, const Rat& shift = 0, int range = 3);

/// Homogeneous polynomial with each monomial present with probability `density`.
HomPoly random_poly(CounterRng& rng, int nvars, int degree, double density = 0.6, int range = 4);

/// Nonsingular n x n matrix with small rational entries.
RatMatrix random_nonsingular(CounterRng& rng, int n);

}  // namespace quasiform
