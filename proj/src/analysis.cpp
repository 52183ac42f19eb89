#include "blockfade/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "blockfade/rng.hpp"

namespace blockfade {

LogDetEstimate summarize(std::span<const double> values, long clipped) {
  LogDetEstimate est;
  est.samples = static_cast<long>(values.size());
  if (values.empty()) return est;
  const double n = static_cast<double>(values.size());
  est.mean = pairwise_sum(values) / n;
  std::vector<double> dev(values.size());
  std::transform(values.begin(), values.end(), dev.begin(),
                 [&](double v) { return (v - est.mean) * (v - est.mean); });
  const double var = values.size() > 1 ? pairwise_sum(dev) / (n - 1.0) : 0.0;
  est.std_error = std::sqrt(var / n);
  est.clipped_fraction = static_cast<double>(clipped) / n;
  return est;
}

double log_abs_det_squared(const CMatrix& m, bool* clipped) {
  const SpectralSummary sp = spectral_summary(m);
  const bool singular = !(sp.sigma_min > kNonsingularTol * sp.sigma_max);
  double v = 2.0 * sp.log_abs_det;
  const bool clip = singular || !(v > kLogDetFloor);
  if (clip) v = kLogDetFloor;
  if (clipped) *clipped = clip;
  return v;
}

LogDetEstimate mc_logdet(const ColoringMatrix& Z, const Dims& d, const PilotAssignment& pilots,
                         long samples, std::uint64_t seed, Execution ex) {
  if (samples < 0) throw InvalidInput("samples must be non-negative");
  Z.require_conforms(d);
  std::vector<double> values(static_cast<std::size_t>(samples));
  std::vector<char> clipped(values.size(), 0);
  for_each_index(values.size(), ex, [&](std::size_t k) {
    Rng rng(seed, k);
    const CVector s = rng.complex_gaussian(d.unknowns());
    const CVector x = rng.complex_gaussian(d.input_length());
    bool c = false;
    values[k] = log_abs_det_squared(jacobian_matrix(Z, s, x, d, pilots.D, pilots.useful()), &c);
    clipped[k] = c;
  });
  return summarize(values, std::count(clipped.begin(), clipped.end(), 1));
}

LogDetEstimate mc_log_abs_gaussian(long samples, std::uint64_t seed, Execution ex) {
  if (samples < 0) throw InvalidInput("samples must be non-negative");
  // blocks of draws share one engine so the per-draw cost stays small
  constexpr long kBlock = 4096;
  std::vector<double> values(static_cast<std::size_t>(samples));
  const std::size_t blocks = static_cast<std::size_t>((samples + kBlock - 1) / kBlock);
  for_each_index(blocks, ex, [&](std::size_t b) {
    Rng rng(seed, b);
    const long lo = static_cast<long>(b) * kBlock, hi = std::min(samples, lo + kBlock);
    for (long k = lo; k < hi; ++k) values[k] = std::log(std::abs(rng.complex_gaussian()));
  });
  return summarize(values, 0);
}

EntropyChainReport entropy_chain_report(const Dims& d) {
  EntropyChainReport rep;
  rep.dims = d;
  const long RN = d.output_length();
  const long RTQ = d.unknowns();
  rep.coefficient = std::min(RN - RTQ, static_cast<long>(d.T_eff) * d.N - d.T_eff);
  const long ell = unused_outputs(d.T_eff, d.R, d.N, d.Q);
  rep.coefficient_via_ell = RN - ell - RTQ;
  rep.per_symbol = Rational(rep.coefficient, d.N);
  rep.chi_low = chi_low(d.T_eff, d.R, d.N, d.Q);
  rep.trivial = rep.coefficient <= 0;
  rep.useful_outputs = RN - ell;
  rep.bezout_exponent = rep.useful_outputs;
  return rep;
}

}  // namespace blockfade
