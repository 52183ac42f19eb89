#include <cmath>

#include "blockfade/jacobian.hpp"

namespace blockfade {

namespace {

struct GaussInt {
  BigInt re, im;
  bool is_zero() const { return re == 0 && im == 0; }
};

GaussInt operator*(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

// exact quotient; Bareiss guarantees divisibility
GaussInt exact_div(const GaussInt& a, const GaussInt& b) {
  const BigInt norm = b.re * b.re + b.im * b.im;
  const BigInt re = a.re * b.re + a.im * b.im;
  const BigInt im = a.im * b.re - a.re * b.im;
  if (re % norm != 0 || im % norm != 0) throw std::logic_error("inexact division in Bareiss step");
  return {re / norm, im / norm};
}

BigInt to_integer(double v) {
  if (!std::isfinite(v) || v != std::nearbyint(v)) throw InvalidInput("matrix entry is not a Gaussian integer");
  return BigInt(static_cast<long long>(v));
}

}  // namespace

ExactDeterminant exact_determinant(const CMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("determinant needs a square matrix");
  const Index n = m.rows();
  std::vector<std::vector<GaussInt>> a(n, std::vector<GaussInt>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a[i][j] = {to_integer(m(i, j).real()), to_integer(m(i, j).imag())};

  ExactDeterminant out;
  if (n == 0) {
    out.re = "1";
    out.im = "0";
    out.nonzero = true;
    return out;
  }
  bool negate = false;
  GaussInt prev{1, 0};
  for (Index k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      Index p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) {
        out.re = out.im = "0";
        return out;
      }
      std::swap(a[k], a[p]);
      negate = !negate;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
      a[i][k] = {0, 0};
    }
    prev = a[k][k];
  }
  GaussInt det = a[n - 1][n - 1];
  if (negate) det = {-det.re, -det.im};
  out.re = det.re.str();
  out.im = det.im.str();
  out.nonzero = !det.is_zero();
  if (out.nonzero) {
    BigInt norm = det.re * det.re + det.im * det.im;
    const unsigned bits = boost::multiprecision::msb(norm);
    unsigned shift = bits > 900 ? bits - 900 : 0;
    norm >>= shift;
    out.log10_abs = 0.5 * (std::log10(norm.convert_to<double>()) + shift * std::log10(2.0));
  }
  return out;
}

}  // namespace blockfade
