#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "quasiform/rational.hpp"

namespace quasiform {

// ---------------------------------------------------------------------------
// Floating-point symmetric matrices
// ---------------------------------------------------------------------------

/// Dense symmetric matrix of doubles. Construction mirrors the upper triangle
/// onto the lower one, so the stored matrix is always exactly symmetric.
class SymMatF {
 public:
  SymMatF() = default;
  explicit SymMatF(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}
  SymMatF(int n, std::vector<double> row_major);

  static SymMatF identity(int n);
  static SymMatF diagonal(std::span<const double> d);

  int size() const { return n_; }
  double operator()(int i, int j) const { return a_[i * n_ + j]; }
  /// Sets both (i, j) and (j, i).
  void set(int i, int j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }
  const std::vector<double>& data() const { return a_; }
  double max_abs() const;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

struct EigenDecomposition {
  std::vector<double> values;   ///< ascending
  std::vector<double> vectors;  ///< column k (row-major n x n) is the k-th eigenvector
  int n = 0;

  double vector_entry(int row, int k) const { return vectors[row * n + k]; }
  std::vector<double> column(int k) const;
};

/// Cyclic Jacobi eigensolver for n <= 64.
EigenDecomposition eig_sym(const SymMatF& m);

/// Nearest PSD matrix in Frobenius norm (eigenvalues clipped at `floor`, 0 by default).
SymMatF project_psd(const SymMatF& m, double floor = 0.0);

double min_eigenvalue(const SymMatF& m);

// ---------------------------------------------------------------------------
// Exact rational matrices
// ---------------------------------------------------------------------------

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static RatMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  void append_row(std::span<const Rat> row);
  RatVector row(int i) const;
  bool is_symmetric() const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rat> a_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatVector operator*(const RatMatrix& a, std::span<const Rat> v);
RatMatrix transpose(const RatMatrix& a);

struct NullspaceResult {
  int rank = 0;
  std::vector<RatVector> basis;  ///< primitive integer vectors, one per free column
};

/// Exact right nullspace by fraction-free elimination on integer-scaled rows.
NullspaceResult nullspace_rational(const RatMatrix& m);

Rat determinant(const RatMatrix& m);
/// Throws Error(Singular) for singular input.
RatMatrix inverse(const RatMatrix& m);

/// Coefficients c_0..c_n of det(lambda I - A), with c_n == 1 (Faddeev-LeVerrier).
RatVector characteristic_polynomial(const RatMatrix& a);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool is_psd() const { return negative == 0; }
  bool is_indefinite() const { return positive > 0 && negative > 0; }
};

/// Inertia of a symmetric rational matrix from Descartes' rule of signs on its
/// (real-rooted) characteristic polynomial.
Inertia inertia_descartes(const RatMatrix& sym);

/// Congruence diagonalization: returns S nonsingular and d with S^T A S = diag(d).
struct CongruenceDiagonalization {
  RatMatrix transform;  ///< S
  RatVector diagonal;   ///< d
};
CongruenceDiagonalization diagonalize_congruence(const RatMatrix& sym);

/// Exact PSD test via congruence diagonalization (Sylvester's law of inertia).
bool is_psd_exact(const RatMatrix& sym);

// ---------------------------------------------------------------------------
// Deterministic randomness and parallel restarts
// ---------------------------------------------------------------------------

/// Counter-based generator: output k of stream (seed, stream) is a SplitMix64
/// hash of the triple, so streams are independent of evaluation order.
class CounterRng {
 public:
  using result_type = std::uint64_t;
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  double uniform();  ///< [0, 1)
  double normal();   ///< standard normal (Box-Muller)

 private:
  static std::uint64_t mix(std::uint64_t z);
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Worker count from QUASIFORM_THREADS (default: hardware concurrency, >= 1).
int worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads.
void parallel_for(int count, const std::function<void(int)>& body);

// ---------------------------------------------------------------------------
// Optimization on products of spheres
// ---------------------------------------------------------------------------

/// Objective over a product of unit spheres whose block sizes are given by the
/// caller. It returns the value and writes the ambient gradient into `grad`.
using SphereObjective = std::function<double(std::span<const double> point, std::span<double> grad)>;

struct MultistartOptions {
  int restarts = 16;
  std::uint64_t seed = 0;
  double grad_tol = 1e-12;
  int max_iter = 3000;
};

struct LocalMinimum {
  double value = 0.0;
  std::vector<double> point;
  int restart = 0;
};

/// One projected-gradient run per restart, all results in restart order.
std::vector<LocalMinimum> multistart_local_minima(const SphereObjective& objective, std::span<const int> blocks,
                                                  const MultistartOptions& options);

/// Best of multistart_local_minima (ties broken by the lowest restart index).
LocalMinimum multistart_minimize(const SphereObjective& objective, std::span<const int> blocks,
                                 const MultistartOptions& options);

/// Projected gradient descent with backtracking from a given start.
LocalMinimum sphere_descent(const SphereObjective& objective, std::span<const int> blocks,
                            std::vector<double> start, double grad_tol, int max_iter);

// ---------------------------------------------------------------------------
// PSD feasibility by alternating projections
// ---------------------------------------------------------------------------

struct AlternatingProjectionOptions {
  int max_iter = 20000;
  double psd_floor = 0.0;          ///< project onto {X >= floor * I}
  double tol = 1e-10;              ///< relative residual declared converged
  int stall_window = 500;
  double stall_improvement = 1e-12;
};

struct AlternatingProjectionResult {
  SymMatF point;  ///< last affine iterate
  double residual = 0.0;  ///< ||P_psd(X) - X||_F / scale
  int iterations = 0;
  bool converged = false;
  bool stalled = false;
};

/// Dykstra's alternating projections between the (shifted) PSD cone and an
/// affine set given by its orthogonal projector.
AlternatingProjectionResult alternating_projections(const SymMatF& start,
                                                    const std::function<SymMatF(const SymMatF&)>& project_affine,
                                                    const AlternatingProjectionOptions& options);

}  // namespace quasiform
