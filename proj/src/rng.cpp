#include "blockfade/rng.hpp"

#include <cmath>
#include <numbers>

#include "blockfade/parallel.hpp"

namespace blockfade {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  // (k + 1) / 2^53, never zero
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

Complex Rng::complex_gaussian() {
  // |xi|^2 ~ Exp(1), uniform phase
  const double radius = std::sqrt(-std::log(uniform()));
  const double phase = 2.0 * std::numbers::pi * uniform();
  return {radius * std::cos(phase), radius * std::sin(phase)};
}

CVector Rng::complex_gaussian(Index n) {
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = complex_gaussian();
  return v;
}

CMatrix Rng::complex_gaussian(Index rows, Index cols) {
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_gaussian();
  return m;
}

CMatrix Rng::random_unitary(Index n) {
  Eigen::HouseholderQR<CMatrix> qr(complex_gaussian(n, n));
  CMatrix q = qr.householderQ();
  // fix the phase of each column so the distribution does not depend on QR conventions
  const CMatrix& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace blockfade
