#include "quasiform/forms.hpp"

#include <cmath>

namespace quasiform {

// ---------------------------------------------------------------------------
// PolyMatrix
// ---------------------------------------------------------------------------

PolyMatrix::PolyMatrix(int rows, int cols, int nvars, int degree)
    : rows_(rows), cols_(cols), nvars_(nvars),
      entries_(static_cast<std::size_t>(rows) * cols, HomPoly(nvars, degree)) {}

PolyMatrix::PolyMatrix(int rows, int cols, std::vector<HomPoly> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (static_cast<int>(entries_.size()) != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "PolyMatrix: ragged entry list");
  }
  nvars_ = entries_.empty() ? 0 : entries_.front().nvars();
  for (const auto& e : entries_) {
    if (e.nvars() != nvars_) throw Error(ErrorCode::DimensionMismatch, "PolyMatrix: entries differ in variable count");
  }
}

bool PolyMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

bool PolyMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      if (!((*this)(i, j) == (*this)(j, i))) return false;
    }
  }
  return true;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "PolyMatrix product: inner dimensions differ");
  std::vector<HomPoly> out;
  out.reserve(static_cast<std::size_t>(a.rows()) * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      HomPoly acc(a.nvars(), 0);
      for (int k = 0; k < a.cols(); ++k) acc = add(acc, mul(a(i, k), b(k, j)));
      out.push_back(std::move(acc));
    }
  }
  return PolyMatrix(a.rows(), b.cols(), std::move(out));
}

PolyMatrix transpose(const PolyMatrix& a) {
  std::vector<HomPoly> out;
  out.reserve(a.entries().size());
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) out.push_back(a(i, j));
  }
  return PolyMatrix(a.cols(), a.rows(), std::move(out));
}

namespace {

HomPoly laplace(const PolyMatrix& m, std::vector<int>& rows, std::vector<int>& cols) {
  const std::size_t n = rows.size();
  if (n == 1) return m(rows[0], cols[0]);
  if (n == 2) {
    return sub(mul(m(rows[0], cols[0]), m(rows[1], cols[1])), mul(m(rows[0], cols[1]), m(rows[1], cols[0])));
  }
  HomPoly acc(m.nvars(), 0);
  int r0 = rows.front();
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < n; ++c) {
    const HomPoly& entry = m(r0, cols[c]);
    if (entry.is_zero()) continue;
    std::vector<int> sub_cols;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != c) sub_cols.push_back(cols[k]);
    }
    HomPoly term = mul(entry, laplace(m, sub_rows, sub_cols));
    acc = (c % 2 == 0) ? add(acc, term) : sub(acc, term);
  }
  return acc;
}

}  // namespace

HomPoly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant: matrix not square");
  if (m.rows() == 0) return HomPoly::constant(0, Rat(1));
  std::vector<int> rows(m.rows()), cols(m.cols());
  for (int i = 0; i < m.rows(); ++i) rows[i] = cols[i] = i;
  HomPoly det = laplace(m, rows, cols);
  // Keep the degree tag meaningful when the determinant cancels to zero.
  if (det.is_zero()) {
    int degree = 0;
    for (int i = 0; i < m.rows(); ++i) degree += m(i, i).degree();
    return HomPoly(m.nvars(), degree);
  }
  return det;
}

PolyMatrix cofactor_matrix(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "cofactor_matrix: matrix not square");
  const int n = m.rows();
  int minor_degree = 0;
  for (int i = 1; i < n; ++i) minor_degree += m(i, i).degree();
  std::vector<HomPoly> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (n == 1) {
        out.push_back(HomPoly::constant(m.nvars(), Rat(1)));
        continue;
      }
      std::vector<int> rows, cols;
      for (int k = 0; k < n; ++k) {
        if (k != i) rows.push_back(k);
        if (k != j) cols.push_back(k);
      }
      HomPoly minor = laplace(m, rows, cols);
      if (minor.is_zero()) minor = HomPoly(m.nvars(), minor_degree);
      out.push_back((i + j) % 2 == 0 ? minor : scale(minor, Rat(-1)));
    }
  }
  return PolyMatrix(n, n, std::move(out));
}

// ---------------------------------------------------------------------------
// QuadFormTensor
// ---------------------------------------------------------------------------

QuadFormTensor::QuadFormTensor(int d, const RatMatrix& gram) : d_(d), gram_(d * d, d * d) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "quadratic form needs d >= 2");
  if (gram.rows() != d * d || gram.cols() != d * d) {
    throw Error(ErrorCode::DimensionMismatch, "gram matrix must be d^2 x d^2");
  }
  for (int a = 0; a < d * d; ++a) {
    for (int b = 0; b < d * d; ++b) gram_(a, b) = (gram(a, b) + gram(b, a)) / 2;
  }
}

QuadFormTensor QuadFormTensor::zero(int d) { return QuadFormTensor(d, RatMatrix(d * d, d * d)); }

QuadFormTensor QuadFormTensor::from_terms(int d, const std::vector<Term>& terms) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "quadratic form needs d >= 2");
  RatMatrix g(d * d, d * d);
  for (const Term& t : terms) {
    for (int idx : {t.i, t.j, t.k, t.l}) {
      if (idx < 0 || idx >= d) throw Error(ErrorCode::InvalidArgument, "coefficient index out of range");
    }
    int a = t.i * d + t.j;
    int b = t.k * d + t.l;
    g(a, b) += t.value / 2;
    g(b, a) += t.value / 2;
  }
  return QuadFormTensor(d, g);
}

Rat QuadFormTensor::value(std::span<const Rat> xi) const {
  const int n = d_ * d_;
  if (static_cast<int>(xi.size()) != n) throw Error(ErrorCode::DimensionMismatch, "value: xi must have d^2 entries");
  Rat total = 0;
  for (int a = 0; a < n; ++a) {
    if (xi[a] == 0) continue;
    Rat row = 0;
    for (int b = 0; b < n; ++b) row += gram_(a, b) * xi[b];
    total += xi[a] * row;
  }
  return total;
}

Rat QuadFormTensor::biquadratic(std::span<const Rat> x, std::span<const Rat> y) const {
  if (static_cast<int>(x.size()) != d_ || static_cast<int>(y.size()) != d_) {
    throw Error(ErrorCode::DimensionMismatch, "biquadratic: x and y must have length d");
  }
  RatVector xi(static_cast<std::size_t>(d_) * d_);
  for (int i = 0; i < d_; ++i) {
    for (int j = 0; j < d_; ++j) xi[i * d_ + j] = x[i] * y[j];
  }
  return value(xi);
}

Rat biquadratic_eval(const QuadFormTensor& f, std::span<const Rat> x, std::span<const Rat> y) {
  return f.biquadratic(x, y);
}

QuadFormTensor operator+(const QuadFormTensor& a, const QuadFormTensor& b) {
  if (a.d_ != b.d_) throw Error(ErrorCode::DimensionMismatch, "form sum: dimensions differ");
  RatMatrix g = a.gram_;
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) g(i, j) += b.gram_(i, j);
  }
  return QuadFormTensor(a.d_, g);
}

QuadFormTensor operator*(const Rat& c, const QuadFormTensor& f) {
  RatMatrix g = f.gram_;
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) g(i, j) *= c;
  }
  return QuadFormTensor(f.d_, g);
}

QuadFormTensor operator-(const QuadFormTensor& a, const QuadFormTensor& b) { return a + Rat(-1) * b; }

// ---------------------------------------------------------------------------
// Acoustic matrix
// ---------------------------------------------------------------------------

AcousticMatrix::AcousticMatrix(PolyMatrix entries) : m_(std::move(entries)) {
  if (!m_.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "acoustic matrix must be symmetric");
}

SymMatF AcousticMatrix::at(std::span<const double> y) const {
  const int d = m_.rows();
  SymMatF out(d);
  for (int i = 0; i < d; ++i) {
    for (int k = i; k < d; ++k) out.set(i, k, evaluate(m_(i, k), y));
  }
  return out;
}

RatMatrix AcousticMatrix::at(std::span<const Rat> y) const {
  const int d = m_.rows();
  RatMatrix out(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) out(i, k) = evaluate(m_(i, k), y);
  }
  return out;
}

AcousticMatrix acoustic_matrix(const QuadFormTensor& f) {
  const int d = f.d();
  std::vector<HomPoly> entries;
  entries.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      std::vector<std::pair<Monomial, Rat>> terms;
      for (int j = 0; j < d; ++j) {
        for (int l = 0; l < d; ++l) {
          const Rat& c = f.gram(i * d + j, k * d + l);
          if (c == 0) continue;
          Monomial m(d, 0);
          m[j] += 1;
          m[l] += 1;
          terms.emplace_back(std::move(m), c);
        }
      }
      entries.push_back(HomPoly::from_terms(d, 2, terms));
    }
  }
  return AcousticMatrix(PolyMatrix(d, d, std::move(entries)));
}

// ---------------------------------------------------------------------------
// Rank-one forms and the determinant update
// ---------------------------------------------------------------------------

RankOneForm::RankOneForm(int d, RatVector b_row_major) : d_(d), b_(std::move(b_row_major)) {
  if (static_cast<int>(b_.size()) != d * d) throw Error(ErrorCode::DimensionMismatch, "rank-one form: B must be d x d");
}

bool RankOneForm::is_zero() const {
  for (const Rat& v : b_) {
    if (v != 0) return false;
  }
  return true;
}

std::vector<HomPoly> RankOneForm::s() const {
  std::vector<HomPoly> out;
  out.reserve(d_);
  for (int i = 0; i < d_; ++i) {
    RatVector row(b_.begin() + i * d_, b_.begin() + (i + 1) * d_);
    out.push_back(HomPoly::linear(row));
  }
  return out;
}

QuadFormTensor RankOneForm::form() const {
  const int n = d_ * d_;
  RatMatrix g(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) g(a, b) = b_[a] * b_[b];
  }
  return QuadFormTensor(d_, g);
}

HomPoly det_update(const AcousticMatrix& t, const RankOneForm& b, const Rat& step) {
  if (t.d() != b.d()) throw Error(ErrorCode::DimensionMismatch, "det_update: dimensions differ");
  const int d = t.d();
  HomPoly det = determinant(t);
  if (step == 0) return det;
  PolyMatrix cof = cofactor_matrix(t);
  std::vector<HomPoly> s = b.s();
  HomPoly quad(d, det.degree());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (cof(i, j).is_zero() || s[i].is_zero() || s[j].is_zero()) continue;
      quad = add(quad, mul(mul(s[i], s[j]), cof(i, j)));
    }
  }
  return sub(det, scale(quad, step));
}

// ---------------------------------------------------------------------------
// Null Lagrangians
// ---------------------------------------------------------------------------

const NullLagrangianBasis& null_lagrangian_basis() {
  static const NullLagrangianBasis basis = [] {
    NullLagrangianBasis out;
    int idx = 0;
    for (int i = 0; i < 3; ++i) {
      for (int k = i + 1; k < 3; ++k) {
        for (int j = 0; j < 3; ++j) {
          for (int l = j + 1; l < 3; ++l) {
            out.minors[idx] = {i, k, j, l};
            out.forms[idx] = QuadFormTensor::from_terms(3, {{i, j, k, l, Rat(1)}, {i, l, k, j, Rat(-1)}});
            ++idx;
          }
        }
      }
    }
    return out;
  }();
  return basis;
}

QuadFormTensor add_null_lagrangian(const QuadFormTensor& f, std::span<const Rat> coefficients) {
  if (f.d() != 3) throw Error(ErrorCode::InvalidArgument, "null Lagrangian basis is defined for d = 3");
  if (coefficients.size() != 9) throw Error(ErrorCode::InvalidArgument, "expected 9 null-Lagrangian coefficients");
  QuadFormTensor out = f;
  const auto& basis = null_lagrangian_basis();
  for (int k = 0; k < 9; ++k) {
    if (coefficients[k] != 0) out = out + coefficients[k] * basis.forms[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

std::vector<std::string> catalog_names() { return {"example1", "example2", "example3", "example4"}; }

QuadFormTensor catalog_example3(const RankOneForm& b) { return b.form(); }

QuadFormTensor catalog(const std::string& name) {
  using T = QuadFormTensor::Term;
  if (name == "example1") {
    return QuadFormTensor::from_terms(3, {T{0, 0, 0, 0, 1}, T{1, 1, 1, 1, 1}, T{2, 2, 2, 2, 1}});
  }
  if (name == "example2") {
    return QuadFormTensor::from_terms(3, {T{0, 0, 0, 0, 1}, T{1, 1, 1, 1, 1}});
  }
  if (name == "example3") {
    return catalog_example3(RankOneForm(3, {1, 2, 0, -1, 1, 1, 0, 1, 3}));
  }
  if (name == "example4") {
    // xi11^2 + xi22^2 + xi33^2 + xi12^2 + xi23^2 + xi31^2 - 2 (xi11 xi22 + xi22 xi33 + xi33 xi11)
    return QuadFormTensor::from_terms(3, {T{0, 0, 0, 0, 1}, T{1, 1, 1, 1, 1}, T{2, 2, 2, 2, 1},
                                          T{0, 1, 0, 1, 1}, T{1, 2, 1, 2, 1}, T{2, 0, 2, 0, 1},
                                          T{0, 0, 1, 1, -2}, T{1, 1, 2, 2, -2}, T{2, 2, 0, 0, -2}});
  }
  throw Error(ErrorCode::InvalidArgument, "unknown catalog form '" + name + "'");
}

// ---------------------------------------------------------------------------
// BiquadraticEvaluator
// ---------------------------------------------------------------------------

BiquadraticEvaluator::BiquadraticEvaluator(const QuadFormTensor& f) : d_(f.d()) {
  const int n = d_ * d_;
  g_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) g_[a * n + b] = f.gram(a, b).get_d();
  }
}

double BiquadraticEvaluator::value(std::span<const double> x, std::span<const double> y, std::span<double> grad_x,
                                   std::span<double> grad_y) const {
  const int d = d_;
  const int n = d * d;
  double xi[256];
  double gxi[256];
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) xi[i * d + j] = x[i] * y[j];
  }
  double total = 0.0;
  for (int a = 0; a < n; ++a) {
    double row = 0.0;
    for (int b = 0; b < n; ++b) row += g_[a * n + b] * xi[b];
    gxi[a] = 2.0 * row;
    total += xi[a] * row;
  }
  if (!grad_x.empty()) {
    for (int i = 0; i < d; ++i) {
      double s = 0.0;
      for (int j = 0; j < d; ++j) s += gxi[i * d + j] * y[j];
      grad_x[i] = s;
    }
  }
  if (!grad_y.empty()) {
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += gxi[i * d + j] * x[i];
      grad_y[j] = s;
    }
  }
  return total;
}

SymMatF BiquadraticEvaluator::acoustic(std::span<const double> y) const {
  const int d = d_;
  const int n = d * d;
  SymMatF t(d);
  for (int i = 0; i < d; ++i) {
    for (int k = i; k < d; ++k) {
      double s = 0.0;
      for (int j = 0; j < d; ++j) {
        for (int l = 0; l < d; ++l) s += g_[(i * d + j) * n + (k * d + l)] * y[j] * y[l];
      }
      t.set(i, k, s);
    }
  }
  return t;
}

void BiquadraticEvaluator::acoustic_quadratic_gradient(std::span<const double> v, std::span<const double> y,
                                                       std::span<double> grad) const {
  value(v, y, {}, grad);
}

}  // namespace quasiform
