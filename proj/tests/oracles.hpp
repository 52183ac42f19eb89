#pragma once
// Test-side reference computations, written independently of the library code.

#include <algorithm>
#include <complex>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

inline Q lower_bound_at(long te, long R, long N, long q) {
  return std::min(Q(te) * Q(N - 1, N), Q(R) * Q(N - te * q, N));
}

// max over T_eff in [1, min(T,R)] by plain enumeration
inline Q best_lower_bound(long T, long R, long N, long q) {
  Q best = lower_bound_at(1, R, N, q);
  for (long te = 2; te <= std::min(T, R); ++te) best = std::max(best, lower_bound_at(te, R, N, q));
  return best;
}

// the card-dealing rule, restated: card j goes to antenna ((j-1) + floor((j-1)/lcm)) % T + 1
// and slot (j-1) % N + 1
inline std::pair<int, int> deal(long j, long T, long N) {
  const long L = std::lcm(T, N);
  return {static_cast<int>((j - 1 + (j - 1) / L) % T + 1), static_cast<int>((j - 1) % N + 1)};
}

inline std::vector<std::set<int>> pilot_sets(long T, long R, long N, long q) {
  const long theta = std::max(T, R * T * q - (R - T) * N);
  std::vector<std::set<int>> P(T);
  for (long j = 1; j <= theta; ++j) {
    auto [t, i] = deal(j, T, N);
    P[t - 1].insert(i);
  }
  return P;
}

}  // namespace oracle
