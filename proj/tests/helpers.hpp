#pragma once

#include "quasiform/classifier.hpp"
#include "quasiform/random.hpp"
#include "quasiform/structure.hpp"

namespace qt {

using namespace quasiform;

/// y_i (1-based) in n variables.
inline HomPoly y(int i, int n = 3) { return HomPoly::variable(n, i - 1); }

inline Rat R(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// The example4 sextic as printed: y1^4 y2^2 + y2^4 y3^2 + y3^4 y1^2 - 3 y1^2 y2^2 y3^2.
inline HomPoly p4() {
  return pow(y(1), 4) * pow(y(2), 2) + pow(y(2), 4) * pow(y(3), 2) + pow(y(3), 4) * pow(y(1), 2) -
         R(3) * pow(y(1) * y(2) * y(3), 2);
}

/// det T of the example4 form under xi_ij = x_i y_j (hand expansion of the 3x3 determinant).
inline HomPoly example4_det() {
  return pow(y(1), 4) * pow(y(3), 2) + pow(y(1), 2) * pow(y(2), 4) + pow(y(2), 2) * pow(y(3), 4) -
         R(3) * pow(y(1) * y(2) * y(3), 2);
}

inline RatMatrix swap12() {
  RatMatrix a(3, 3);
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(2, 2) = 1;
  return a;
}

inline RatVector flat(const RatMatrix& a) {
  RatVector out;
  for (int i = 0; i < a.rows(); ++i) {
    RatVector r = a.row(i);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

/// vec(xi) for xi = x (x) y.
inline RatVector outer(const RatVector& x, const RatVector& yv) {
  RatVector out;
  for (const Rat& a : x) {
    for (const Rat& b : yv) out.push_back(a * b);
  }
  return out;
}

}  // namespace qt
