#pragma once

#include <array>
#include <string>
#include <vector>

#include "quasiform/numerics.hpp"
#include "quasiform/polynomial.hpp"

namespace quasiform {

/// Matrix of homogeneous polynomials sharing one variable count, row-major.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols, int nvars, int degree);
  PolyMatrix(int rows, int cols, std::vector<HomPoly> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nvars() const { return nvars_; }
  const HomPoly& operator()(int i, int j) const { return entries_[i * cols_ + j]; }
  HomPoly& operator()(int i, int j) { return entries_[i * cols_ + j]; }
  const std::vector<HomPoly>& entries() const { return entries_; }

  bool is_zero() const;
  bool is_symmetric() const;

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int nvars_ = 0;
  std::vector<HomPoly> entries_;
};

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix transpose(const PolyMatrix& a);

/// Determinant by cofactor expansion (intended for d <= 4).
HomPoly determinant(const PolyMatrix& m);

/// Cofactor matrix C with C_ij = (-1)^(i+j) * minor_ij, so that M * C^T == det(M) * I.
PolyMatrix cofactor_matrix(const PolyMatrix& m);

/// Quadratic form f(xi) = vec(xi)^T G vec(xi) on d x d matrices, xi flattened
/// row-major (xi_ij sits at index i*d + j). G is stored symmetrized.
class QuadFormTensor {
 public:
  QuadFormTensor() = default;
  /// Symmetrizes `gram` (d^2 x d^2); the quadratic form only sees the symmetric part.
  QuadFormTensor(int d, const RatMatrix& gram);

  struct Term {
    int i, j, k, l;  ///< zero-based; contributes value * xi_ij * xi_kl
    Rat value;
  };
  static QuadFormTensor from_terms(int d, const std::vector<Term>& terms);
  static QuadFormTensor zero(int d);

  int d() const { return d_; }
  const RatMatrix& gram() const { return gram_; }
  const Rat& gram(int a, int b) const { return gram_(a, b); }

  /// f(xi) for a flattened d x d matrix.
  Rat value(std::span<const Rat> xi) const;
  /// f(x (x) y), i.e. f evaluated at the rank-one matrix xi_ij = x_i y_j.
  Rat biquadratic(std::span<const Rat> x, std::span<const Rat> y) const;

  friend QuadFormTensor operator+(const QuadFormTensor& a, const QuadFormTensor& b);
  friend QuadFormTensor operator-(const QuadFormTensor& a, const QuadFormTensor& b);
  friend QuadFormTensor operator*(const Rat& c, const QuadFormTensor& f);
  friend bool operator==(const QuadFormTensor&, const QuadFormTensor&) = default;

 private:
  int d_ = 0;
  RatMatrix gram_;
};

Rat biquadratic_eval(const QuadFormTensor& f, std::span<const Rat> x, std::span<const Rat> y);

/// The d x d symmetric matrix T(y) of quadratic forms with x T(y) x^T = f(x (x) y).
class AcousticMatrix {
 public:
  AcousticMatrix() = default;
  explicit AcousticMatrix(PolyMatrix entries);

  int d() const { return m_.rows(); }
  const HomPoly& operator()(int i, int j) const { return m_(i, j); }
  const PolyMatrix& matrix() const { return m_; }

  /// Numeric T(y).
  SymMatF at(std::span<const double> y) const;
  RatMatrix at(std::span<const Rat> y) const;

  friend bool operator==(const AcousticMatrix&, const AcousticMatrix&) = default;

 private:
  PolyMatrix m_;
};

AcousticMatrix acoustic_matrix(const QuadFormTensor& f);

inline HomPoly determinant(const AcousticMatrix& t) { return determinant(t.matrix()); }
inline PolyMatrix cofactor_matrix(const AcousticMatrix& t) { return cofactor_matrix(t.matrix()); }

/// The rank-one form (x B y^T)^2 = (sum_ij B_ij xi_ij)^2.
class RankOneForm {
 public:
  RankOneForm() = default;
  RankOneForm(int d, RatVector b_row_major);

  int d() const { return d_; }
  const RatVector& b() const { return b_; }
  const Rat& b(int i, int j) const { return b_[i * d_ + j]; }
  bool is_zero() const;

  /// s_i(y) = sum_j B_ij y_j.
  std::vector<HomPoly> s() const;
  /// Gram matrix vec(B) vec(B)^T of the form.
  QuadFormTensor form() const;

  friend bool operator==(const RankOneForm&, const RankOneForm&) = default;

 private:
  int d_ = 0;
  RatVector b_;
};

/// det(T) - t * sum_ij s_i s_j (T_cof)_ij, the determinant of the acoustic
/// matrix of f - t (x B y^T)^2 expressed through T and its cofactors.
HomPoly det_update(const AcousticMatrix& t, const RankOneForm& b, const Rat& step);

/// The nine 2x2 minors xi_ij xi_kl - xi_il xi_kj (i < k, j < l) of a 3x3 matrix.
struct NullLagrangianBasis {
  struct Minor {
    int i, k, j, l;  ///< rows i < k, columns j < l (zero-based)
  };
  std::array<Minor, 9> minors;
  std::array<QuadFormTensor, 9> forms;
};

const NullLagrangianBasis& null_lagrangian_basis();

/// f + sum_k c_k M_k for the nine basis minors; requires d == 3.
QuadFormTensor add_null_lagrangian(const QuadFormTensor& f, std::span<const Rat> coefficients);

/// Fixture forms: "example1", "example2", "example3" (rank-one form for a fixed
/// B) and "example4" (the quasiconvex, non-polyconvex form with
/// det T = y1^4 y3^2 + y1^2 y2^4 + y2^2 y3^4 - 3 y1^2 y2^2 y3^2 under xi_ij = x_i y_j).
std::vector<std::string> catalog_names();
QuadFormTensor catalog(const std::string& name);
/// Rank-one fixture for a caller-chosen B.
QuadFormTensor catalog_example3(const RankOneForm& b);

// ---------------------------------------------------------------------------
// Floating-point evaluation of f(x (x) y) for the optimizers
// ---------------------------------------------------------------------------

class BiquadraticEvaluator {
 public:
  explicit BiquadraticEvaluator(const QuadFormTensor& f);

  int d() const { return d_; }
  /// f(x (x) y) and its gradient with respect to (x, y).
  double value(std::span<const double> x, std::span<const double> y, std::span<double> grad_x,
               std::span<double> grad_y) const;
  SymMatF acoustic(std::span<const double> y) const;
  /// Gradient in y of v^T T(y) v.
  void acoustic_quadratic_gradient(std::span<const double> v, std::span<const double> y, std::span<double> grad) const;

 private:
  int d_;
  std::vector<double> g_;  ///< dense d^2 x d^2 gram
};

}  // namespace quasiform
