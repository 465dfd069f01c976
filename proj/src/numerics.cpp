#include "quasiform/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

namespace quasiform {

// ---------------------------------------------------------------------------
// SymMatF / eigen
// ---------------------------------------------------------------------------

SymMatF::SymMatF(int n, std::vector<double> row_major) : n_(n), a_(std::move(row_major)) {
  if (static_cast<int>(a_.size()) != n * n) throw Error(ErrorCode::DimensionMismatch, "SymMatF: wrong entry count");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) a_[j * n + i] = a_[i * n + j];
  }
}

SymMatF SymMatF::identity(int n) {
  SymMatF m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatF SymMatF::diagonal(std::span<const double> d) {
  SymMatF m(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m.set(static_cast<int>(i), static_cast<int>(i), d[i]);
  return m;
}

double SymMatF::max_abs() const {
  double best = 0.0;
  for (double v : a_) best = std::max(best, std::fabs(v));
  return best;
}

std::vector<double> EigenDecomposition::column(int k) const {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = vectors[i * n + k];
  return v;
}

EigenDecomposition eig_sym(const SymMatF& m) {
  const int n = m.size();
  if (n > 64) throw Error(ErrorCode::InvalidArgument, "eig_sym: dimension above 64");
  for (double v : m.data()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "eig_sym: non-finite entry");
  }
  std::vector<double> a = m.data();
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    }
    return std::sqrt(s);
  };
  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::fabs(x));

  for (int sweep = 0; sweep < 100 && off_norm() > 1e-15 * std::max(scale, 1e-300); ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (std::fabs(apq) < 1e-300) continue;
        double app = a[p * n + p];
        double aqq = a[q * n + q];
        double theta = (aqq - app) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k * n + p];
          double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p * n + k];
          double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (int k = 0; k < n; ++k) {
          double vkp = v[k * n + p];
          double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a[i * n + i] < a[j * n + j]; });

  EigenDecomposition out;
  out.n = n;
  out.values.resize(n);
  out.vectors.resize(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a[order[k] * n + order[k]];
    for (int i = 0; i < n; ++i) out.vectors[i * n + k] = v[i * n + order[k]];
  }
  return out;
}

SymMatF project_psd(const SymMatF& m, double floor) {
  const int n = m.size();
  EigenDecomposition e = eig_sym(m);
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < n; ++k) {
    double lam = std::max(e.values[k], floor);
    if (lam == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      double vi = e.vector_entry(i, k) * lam;
      for (int j = i; j < n; ++j) out[i * n + j] += vi * e.vector_entry(j, k);
    }
  }
  return SymMatF(n, std::move(out));
}

double min_eigenvalue(const SymMatF& m) { return eig_sym(m).values.front(); }

// ---------------------------------------------------------------------------
// RatMatrix
// ---------------------------------------------------------------------------

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void RatMatrix::append_row(std::span<const Rat> row) {
  if (rows_ == 0 && cols_ == 0) cols_ = static_cast<int>(row.size());
  if (static_cast<int>(row.size()) != cols_) throw Error(ErrorCode::DimensionMismatch, "append_row: wrong length");
  a_.insert(a_.end(), row.begin(), row.end());
  ++rows_;
}

RatVector RatMatrix::row(int i) const { return RatVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product: inner dimensions differ");
  RatMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

RatVector operator*(const RatMatrix& a, std::span<const Rat> v) {
  if (a.cols() != static_cast<int>(v.size())) throw Error(ErrorCode::DimensionMismatch, "matrix-vector: length mismatch");
  RatVector out(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  }
  return out;
}

RatMatrix transpose(const RatMatrix& a) {
  RatMatrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

namespace {

using IntRow = std::vector<mpz_class>;

void remove_content(IntRow& row) {
  mpz_class g = 0;
  for (const auto& x : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

IntRow integer_row(const RatMatrix& m, int i) {
  mpz_class l = 1;
  for (int j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
  IntRow row(m.cols());
  for (int j = 0; j < m.cols(); ++j) row[j] = m(i, j).get_num() * (l / m(i, j).get_den());
  remove_content(row);
  return row;
}

}  // namespace

NullspaceResult nullspace_rational(const RatMatrix& m) {
  const int cols = m.cols();
  std::vector<IntRow> rows;
  rows.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i) rows.push_back(integer_row(m, i));

  // Fraction-free reduction to reduced echelon form; rows are kept primitive.
  std::vector<int> pivot_cols;
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i][c] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      mpz_class p = rows[r][c];
      mpz_class a = rows[i][c];
      for (int j = 0; j < cols; ++j) rows[i][j] = p * rows[i][j] - a * rows[r][j];
      remove_content(rows[i]);
    }
    pivot_cols.push_back(c);
    ++r;
  }

  NullspaceResult out;
  out.rank = r;
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_cols) is_pivot[c] = true;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(cols);
    v[f] = 1;
    for (int k = 0; k < r; ++k) {
      int pc = pivot_cols[k];
      v[pc] = Rat(-rows[k][f], rows[k][pc]);
      v[pc].canonicalize();
    }
    mpz_class l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (auto& x : v) x *= l;
    out.basis.push_back(std::move(v));
  }
  return out;
}

Rat determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant: matrix not square");
  const int n = m.rows();
  RatMatrix a = m;
  Rat det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int i = c; i < n; ++i) {
      if (a(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(c, c);
      for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse: matrix not square");
  const int n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int i = c; i < n; ++i) {
      if (a(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) throw Error(ErrorCode::Singular, "inverse: matrix is singular");
    for (int j = 0; j < n; ++j) {
      std::swap(a(pivot, j), a(c, j));
      std::swap(inv(pivot, j), inv(c, j));
    }
    Rat p = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RatVector characteristic_polynomial(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "characteristic_polynomial: not square");
  const int n = a.rows();
  RatVector c(n + 1);
  c[n] = 1;
  RatMatrix mk(n, n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    RatMatrix next = a * mk;
    for (int i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    RatMatrix am = a * next;
    Rat trace = 0;
    for (int i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / k;
    mk = std::move(next);
  }
  return c;
}

Inertia inertia_descartes(const RatMatrix& sym) {
  if (!sym.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "inertia: matrix not symmetric");
  const int n = sym.rows();
  RatVector c = characteristic_polynomial(sym);
  Inertia out;
  while (out.zero < n && c[out.zero] == 0) ++out.zero;
  int last_sign = 0;
  for (int k = n; k >= 0; --k) {
    int s = sgn(c[k]);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++out.positive;
    last_sign = s;
  }
  out.negative = n - out.positive - out.zero;
  return out;
}

CongruenceDiagonalization diagonalize_congruence(const RatMatrix& sym) {
  if (!sym.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "diagonalize_congruence: not symmetric");
  const int n = sym.rows();
  RatMatrix a = sym;
  RatMatrix s = RatMatrix::identity(n);

  // Column operation col_j += f * col_k applied as a congruence on a, tracked in s.
  auto add_multiple = [&](int j, int k, const Rat& f) {
    for (int i = 0; i < n; ++i) a(i, j) += f * a(i, k);
    for (int i = 0; i < n; ++i) a(j, i) += f * a(k, i);
    for (int i = 0; i < n; ++i) s(i, j) += f * s(i, k);
  };
  auto swap_index = [&](int i, int j) {
    for (int k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (int k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
    for (int k = 0; k < n; ++k) std::swap(s(k, i), s(k, j));
  };

  for (int k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      int diag = -1;
      for (int i = k + 1; i < n && diag < 0; ++i) {
        if (a(i, i) != 0) diag = i;
      }
      if (diag >= 0) {
        swap_index(k, diag);
      } else {
        int partner = -1;
        for (int j = k + 1; j < n && partner < 0; ++j) {
          if (a(k, j) != 0) partner = j;
        }
        if (partner < 0) {
          // Row k may be zero while a later off-diagonal pair is not; bring it forward.
          int pi = -1, pj = -1;
          for (int i = k + 1; i < n && pi < 0; ++i) {
            for (int j = i + 1; j < n; ++j) {
              if (a(i, j) != 0) {
                pi = i;
                pj = j;
                break;
              }
            }
          }
          if (pi < 0) continue;  // trailing block is zero
          swap_index(k, pi);
          partner = pj;
        }
        add_multiple(k, partner, Rat(1));  // a(k,k) becomes 2 a(k,partner)
      }
    }
    for (int j = k + 1; j < n; ++j) {
      if (a(k, j) == 0) continue;
      add_multiple(j, k, -a(k, j) / a(k, k));
    }
  }
  CongruenceDiagonalization out{s, RatVector(n)};
  for (int i = 0; i < n; ++i) out.diagonal[i] = a(i, i);
  return out;
}

bool is_psd_exact(const RatMatrix& sym) {
  for (const Rat& d : diagonalize_congruence(sym).diagonal) {
    if (d < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// RNG and parallelism
// ---------------------------------------------------------------------------

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
  double u1 = uniform();
  double u2 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

int worker_count() {
  if (const char* env = std::getenv("QUASIFORM_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int count, const std::function<void(int)>& body) {
  int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (int i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------------------
// Sphere optimization
// ---------------------------------------------------------------------------

namespace {

void normalize_blocks(std::span<double> x, std::span<const int> blocks) {
  std::size_t off = 0;
  for (int b : blocks) {
    double s = 0.0;
    for (int i = 0; i < b; ++i) s += x[off + i] * x[off + i];
    s = std::sqrt(s);
    if (s > 0) {
      for (int i = 0; i < b; ++i) x[off + i] /= s;
    } else {
      x[off] = 1.0;
    }
    off += b;
  }
}

/// Removes the radial component of g in every block; returns the tangent norm.
double tangent_project(std::span<const double> x, std::span<double> g, std::span<const int> blocks) {
  std::size_t off = 0;
  double norm2 = 0.0;
  for (int b : blocks) {
    double dot = 0.0;
    for (int i = 0; i < b; ++i) dot += x[off + i] * g[off + i];
    for (int i = 0; i < b; ++i) {
      g[off + i] -= dot * x[off + i];
      norm2 += g[off + i] * g[off + i];
    }
    off += b;
  }
  return std::sqrt(norm2);
}

double checked(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "objective returned a non-finite value");
  return v;
}

}  // namespace

LocalMinimum sphere_descent(const SphereObjective& objective, std::span<const int> blocks, std::vector<double> start,
                            double grad_tol, int max_iter) {
  const std::size_t dim = std::accumulate(blocks.begin(), blocks.end(), std::size_t{0});
  if (start.size() != dim) throw Error(ErrorCode::DimensionMismatch, "sphere_descent: start has wrong length");
  std::vector<double> x = std::move(start);
  normalize_blocks(x, blocks);
  std::vector<double> g(dim), trial(dim), gtrial(dim);

  double f = checked(objective(x, g));
  double step = 1.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    double gnorm = tangent_project(x, g, blocks);
    if (gnorm <= grad_tol) break;
    bool accepted = false;
    while (step > 1e-20) {
      for (std::size_t i = 0; i < dim; ++i) trial[i] = x[i] - step * g[i];
      normalize_blocks(trial, blocks);
      double ft = checked(objective(trial, gtrial));
      if (ft <= f - 1e-4 * step * gnorm * gnorm) {
        x.swap(trial);
        g.swap(gtrial);
        f = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    step = std::min(step * 2.0, 1e6);
  }
  return LocalMinimum{f, std::move(x), 0};
}

std::vector<LocalMinimum> multistart_local_minima(const SphereObjective& objective, std::span<const int> blocks,
                                                  const MultistartOptions& options) {
  if (options.restarts < 1) throw Error(ErrorCode::InvalidArgument, "multistart: restarts must be >= 1");
  const std::size_t dim = std::accumulate(blocks.begin(), blocks.end(), std::size_t{0});
  std::vector<LocalMinimum> results(options.restarts);
  parallel_for(options.restarts, [&](int r) {
    CounterRng rng(options.seed, static_cast<std::uint64_t>(r));
    std::vector<double> start(dim);
    for (auto& s : start) s = rng.normal();
    results[r] = sphere_descent(objective, blocks, std::move(start), options.grad_tol, options.max_iter);
    results[r].restart = r;
  });
  return results;
}

LocalMinimum multistart_minimize(const SphereObjective& objective, std::span<const int> blocks,
                                 const MultistartOptions& options) {
  auto all = multistart_local_minima(objective, blocks, options);
  std::size_t best = 0;
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].value < all[best].value) best = i;
  }
  return all[best];
}

// ---------------------------------------------------------------------------
// Alternating projections
// ---------------------------------------------------------------------------

namespace {

double frobenius_distance(const SymMatF& a, const SymMatF& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    double d = a.data()[i] - b.data()[i];
    s += d * d;
  }
  return std::sqrt(s);
}

SymMatF combine(const SymMatF& a, const SymMatF& b, double sign) {
  std::vector<double> out(a.data());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += sign * b.data()[i];
  return SymMatF(a.size(), std::move(out));
}

}  // namespace

AlternatingProjectionResult alternating_projections(const SymMatF& start,
                                                    const std::function<SymMatF(const SymMatF&)>& project_affine,
                                                    const AlternatingProjectionOptions& options) {
  const int n = start.size();
  const double scale = std::max(1.0, start.max_abs());
  SymMatF x = project_affine(start);
  SymMatF p(n), q(n);
  AlternatingProjectionResult out;
  double window_start = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    SymMatF xp = combine(x, p, 1.0);
    SymMatF y = project_psd(xp, options.psd_floor);
    p = combine(xp, y, -1.0);
    SymMatF yq = combine(y, q, 1.0);
    SymMatF next = project_affine(yq);
    q = combine(yq, next, -1.0);
    x = std::move(next);

    out.iterations = iter;
    out.residual = frobenius_distance(y, x) / scale;
    if (out.residual <= options.tol) {
      out.converged = true;
      break;
    }
    if (iter % options.stall_window == 0) {
      if (std::isfinite(window_start) && (window_start - out.residual) < options.stall_improvement * window_start) {
        out.stalled = true;
        break;
      }
      window_start = out.residual;
    }
  }
  out.point = x;
  return out;
}

}  // namespace quasiform
