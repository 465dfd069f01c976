#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "quasiform/forms.hpp"

namespace quasiform {

using json = nlohmann::json;

enum class CertificateKind {
  QuasiconvexNumeric,
  NotQuasiconvexWitness,
  PolyconvexGram,
  NotPolyconvexByExtremality,
  ExtremalFormZeroSet,
  ExtremalPolyZeroSet,
  NotExtremalWitness,
  Inconclusive,
};

enum class CertificateStatus { Certified, Refuted, Inconclusive };

const char* to_string(CertificateKind kind);
const char* to_string(CertificateStatus status);
CertificateKind certificate_kind_from_string(const std::string& s);
CertificateStatus certificate_status_from_string(const std::string& s);

/// Evidence record. `numeric` marks results that rest on floating-point search
/// (a numeric Certified is weaker than an exact one).
struct Certificate {
  CertificateKind kind = CertificateKind::Inconclusive;
  CertificateStatus status = CertificateStatus::Inconclusive;
  bool numeric = false;
  std::string note;
  json payload = json::object();
};

json to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

/// Re-derives a Certified or Refuted claim from the payload alone.
/// Inconclusive certificates carry no claim and never verify.
bool verify(const Certificate& c);

struct CertifyOptions {
  int restarts = 16;          ///< multistart runs for minimization
  int zero_restarts = 64;     ///< multistart runs when harvesting zeros
  std::uint64_t seed = 0;
  double tol = 1e-9;          ///< negativity threshold for f(x (x) y)
  int max_iter = 3000;        ///< descent iterations per restart
  int ap_max_iter = 20000;    ///< alternating-projection iterations
  double sos_residual = 1e-7; ///< accepted relative residual for SOS feasibility
  double probe_tol = 1e-12;   ///< negativity threshold inside probe trials
  double probe_min_step = 1e-3;
  int probe_bisections = 40;
  int probe_random_dirs = 4;
};

json to_json(const CertifyOptions& o);

// ---------------------------------------------------------------------------
// Quasiconvexity
// ---------------------------------------------------------------------------

/// Numeric minimum of f(x (x) y) over unit x, y; equals min_y lambda_min(T(y)).
struct BiquadraticMinimum {
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> y;
};
BiquadraticMinimum minimize_biquadratic(const QuadFormTensor& f, int restarts, std::uint64_t seed, int max_iter,
                                        double grad_tol = 1e-12);

/// Exact rational (x, y) with f(x (x) y) < 0 near a numeric point, if one is found.
std::optional<std::pair<RatVector, RatVector>> rationalize_negative_point(const QuadFormTensor& f,
                                                                          std::span<const double> x,
                                                                          std::span<const double> y);

/// Index i and rational y with T_ii(y) < 0, when some diagonal entry is not PSD.
std::optional<std::pair<int, RatVector>> diagonal_negative_direction(const AcousticMatrix& t);

/// SOS feasibility of a ternary quartic via a 6x6 Gram matrix; returns the
/// final relative residual of the alternating projections.
double quartic_sos_residual(const HomPoly& q, int max_iter);

Certificate check_quasiconvex(const QuadFormTensor& f, const CertifyOptions& options = {});

// ---------------------------------------------------------------------------
// Polyconvexity
// ---------------------------------------------------------------------------

/// Gram matrix G(c) = G_f + sum_k c_k N_k over the nine null-Lagrangian lifts.
RatMatrix polyconvex_gram(const QuadFormTensor& f, std::span<const Rat> c);

Certificate check_polyconvex(const QuadFormTensor& f, const CertifyOptions& options = {});

// ---------------------------------------------------------------------------
// Zero sets and extremality
// ---------------------------------------------------------------------------

struct ZeroPoint {
  std::vector<double> x, y;  ///< unit vectors
  RatVector xr, yr;          ///< exact rational representatives when rationalized
  double value = 0.0;
  bool rationalized = false;
};

/// Deduplicated zeros of f(x (x) y) on the product of unit spheres, up to the
/// signs of x and y.
std::vector<ZeroPoint> find_rank_one_zeros(const QuadFormTensor& f, int restarts, std::uint64_t seed,
                                           int max_iter = 5000);

/// The quartic (x, y) -> f(x (x) y) as a polynomial in 2d variables (x first).
HomPoly biquadratic_polynomial(const QuadFormTensor& f);

/// Exact conditions on vec(B) from first- and second-order behaviour at the zeros.
RatMatrix form_zero_conditions(const QuadFormTensor& f, const std::vector<std::pair<RatVector, RatVector>>& zeros);

Certificate extremal_form_certificate(const QuadFormTensor& f, const std::vector<ZeroPoint>& zeros);

/// Rational zeros of a nonnegative polynomial on the unit sphere, deduplicated up to sign.
std::vector<RatVector> find_polynomial_zeros(const HomPoly& p, int restarts, std::uint64_t seed, int max_iter = 5000);

/// Numeric minimum of p on the unit sphere.
double polynomial_sphere_minimum(const HomPoly& p, int restarts, std::uint64_t seed, int max_iter = 3000);

/// Exact conditions on the coefficients of a candidate Q (monomials_of_degree order).
RatMatrix poly_zero_conditions(const HomPoly& p, const std::vector<RatVector>& zeros);

Certificate extremal_poly_certificate(const HomPoly& p, const std::vector<RatVector>& zeros,
                                      const CertifyOptions& options = {});

// ---------------------------------------------------------------------------
// Rank-one subtraction
// ---------------------------------------------------------------------------

/// Perturbed copies of the zeros of f; negative dips of f - t (x B y^T)^2 for
/// small t sit next to them, where random restarts rarely land.
std::vector<std::vector<double>> probe_warm_starts(const std::vector<ZeroPoint>& zeros, std::uint64_t seed);

/// Largest t found by doubling and bisection with f - t (x B y^T)^2 numerically
/// quasiconvex (tolerance options.probe_tol).
double max_subtractable_step(const QuadFormTensor& f, const RankOneForm& b, const CertifyOptions& options,
                             std::span<const std::vector<double>> warm_starts = {});

/// Default probe directions: surviving B-space of the zero-set conditions,
/// random combinations inside it and random directions in the full space.
std::vector<RankOneForm> default_probe_directions(const QuadFormTensor& f, const CertifyOptions& options);

Certificate subtract_probe(const QuadFormTensor& f, const std::vector<RankOneForm>& candidate_dirs,
                           const CertifyOptions& options = {});

struct RankOneDecomposition {
  RankOneForm b;
  Rat t;                      ///< f = t (x B y^T)^2 + remainder
  QuadFormTensor remainder;   ///< det of its acoustic matrix vanishes identically
};

/// Precondition: det T is a nonzero perfect square. Returns nullopt when no
/// tested direction gives a constant ratio det T / (s^T T_cof s) whose
/// remainder is numerically quasiconvex.
std::optional<RankOneDecomposition> decompose_rank_one_plus_extremal(const QuadFormTensor& f,
                                                                     const CertifyOptions& options = {});

/// Refuted when `extremal` certifies f and f(x (x) y) is not a square: a
/// polyconvex f is a sum of squares on rank-one matrices, so some square could
/// be subtracted.
Certificate not_polyconvex_by_extremality(const QuadFormTensor& f, const Certificate& extremal);

// ---------------------------------------------------------------------------
// JSON helpers shared with io
// ---------------------------------------------------------------------------

json rat_vector_json(const RatVector& v);
RatVector rat_vector_from_json(const json& j);
json rat_matrix_json(const RatMatrix& m);
RatMatrix rat_matrix_from_json(const json& j);

}  // namespace quasiform
