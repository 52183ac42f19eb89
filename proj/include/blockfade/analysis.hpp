#pragma once

#include <cstdint>
#include <span>

#include "blockfade/dof.hpp"
#include "blockfade/jacobian.hpp"

namespace blockfade {

// natural-log floor for log|det|^2; draws at or below it are counted as clipped
inline constexpr double kLogDetFloor = -700.0;

struct LogDetEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  long samples = 0;
  double clipped_fraction = 0.0;
};

// values are summed in a fixed pairwise tree
LogDetEstimate summarize(std::span<const double> values, long clipped);

// log|det|^2 = 2 sum log sigma_i; a numerically singular matrix
// (sigma_min <= kNonsingularTol sigma_max) is treated as det = 0
double log_abs_det_squared(const CMatrix& m, bool* clipped = nullptr);

// E[log|det J|^2] over (s, x) ~ CN(0, I) for fixed Z
LogDetEstimate mc_logdet(const ColoringMatrix& Z, const Dims& d, const PilotAssignment& pilots,
                         long samples, std::uint64_t seed, Execution ex = Execution::Parallel);

// E[log|xi|], xi ~ CN(0,1); exact value -gamma/2. The Lebesgue integral
// of exp(-|xi|^2) log|xi| over C is pi times this.
LogDetEstimate mc_log_abs_gaussian(long samples, std::uint64_t seed,
                                   Execution ex = Execution::Parallel);

struct EntropyChainReport {
  Dims dims;
  long coefficient = 0;          // min{RN - R T_eff Q, T_eff N - T_eff}
  long coefficient_via_ell = 0;  // RN - ell - R T_eff Q
  Rational per_symbol;           // coefficient / N
  Rational chi_low;
  bool trivial = false;          // coefficient <= 0
  long useful_outputs = 0;       // |I| = RN - ell
  long bezout_exponent = 0;      // log2 of the Bezout count, equals |I|
};

EntropyChainReport entropy_chain_report(const Dims& d);

}  // namespace blockfade
