#include "blockfade/dof.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "blockfade/rng.hpp"

namespace blockfade {

namespace mp = boost::multiprecision;

BigInt floor_of(const Rational& q) {
  const BigInt n = mp::numerator(q), d = mp::denominator(q);  // d > 0
  BigInt f = n / d;                                           // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

BigInt ceil_of(const Rational& q) { return -floor_of(-q); }

std::string to_fraction(const Rational& q) {
  const BigInt d = mp::denominator(q);
  if (d == 1) return mp::numerator(q).str();
  return mp::numerator(q).str() + "/" + d.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int constant_model_rank(int T, int R, int N) { return std::min({T, R, N / 2}); }

Rational chi_const(int T, int R, int N) {
  const int M = constant_model_rank(T, R, N);
  return Rational(M) * (1 - Rational(M, N));
}

Rational chi_gen(int T, int N) { return Rational(T) * (1 - Rational(1, N)); }

Rational chi_upper(int T, int N) { return Rational(T) * (1 - Rational(1, N)); }

Rational chi_low(int T_eff, int R, int N, int Q) {
  const Rational a = Rational(T_eff) * (1 - Rational(1, N));
  const Rational b = Rational(R) * (1 - Rational(static_cast<long>(T_eff) * Q, N));
  return std::min(a, b);
}

Rational t_opt(int R, int N, int Q) {
  return Rational(static_cast<long>(R) * N, static_cast<long>(N) + static_cast<long>(R) * Q - 1);
}

Rational eta(int R, int N, int Q) {
  const Rational to = t_opt(R, N, Q);
  const Rational a = Rational(R) * (1 - Rational(ceil_of(to) * Q, N));
  const Rational b = Rational(floor_of(to)) * (1 - Rational(1, N));
  return std::max(a, b);
}

Rational chi_low_star(int T, int R, int N, int Q) {
  if (Rational(T) <= t_opt(R, N, Q)) return Rational(T) * (1 - Rational(1, N));
  return eta(R, N, Q);
}

Rational chi_low_star_bruteforce(int T, int R, int N, int Q) {
  Rational best = chi_low(1, R, N, Q);
  for (int te = 2; te <= std::min(T, R); ++te) best = std::max(best, chi_low(te, R, N, Q));
  return best;
}

long unused_outputs(int T_eff, int R, int N, int Q) {
  const long used = static_cast<long>(R) * T_eff * Q + static_cast<long>(T_eff) * N - T_eff;
  return std::max(0L, static_cast<long>(R) * N - used);
}

long pilot_count(int T_eff, int R, int N, int Q) {
  return std::max(static_cast<long>(T_eff),
                  static_cast<long>(R) * T_eff * Q - static_cast<long>(R - T_eff) * N);
}

DofReport dof_report(const Dims& d) {
  DofReport rep;
  rep.dims = d;
  rep.M = constant_model_rank(d.T, d.R, d.N);
  rep.chi_const = chi_const(d.T, d.R, d.N);
  rep.chi_gen_upper = chi_upper(d.T, d.N);
  if (d.T < d.N) rep.chi_gen = chi_gen(d.T, d.N);
  rep.chi_low_of_teff = chi_low(d.T_eff, d.R, d.N, d.Q);
  rep.chi_low_star = chi_low_star(d.T, d.R, d.N, d.Q);
  rep.T_opt = t_opt(d.R, d.N, d.Q);
  rep.eta = eta(d.R, d.N, d.Q);
  rep.ell = unused_outputs(d.T_eff, d.R, d.N, d.Q);
  rep.theta = pilot_count(d.T_eff, d.R, d.N, d.Q);
  rep.in_proof_regime = d.in_proof_regime();
  return rep;
}

std::vector<Figure1Row> figure1_curves(int n_min, int n_max, std::optional<int> cap,
                                       Execution ex) {
  n_min = std::max(n_min, 2);
  if (cap && *cap < 1) throw InvalidConfiguration("figure1 cap must be positive");
  if (n_max < n_min) return {};
  std::vector<Figure1Row> rows(static_cast<std::size_t>(n_max - n_min + 1));
  for_each_index(rows.size(), ex, [&](std::size_t k) {
    const int N = n_min + static_cast<int>(k);
    Figure1Row& row = rows[k];
    row.N = N;
    const Rational best_const = chi_const(N / 2, N / 2, N);
    row.unconstrained = Rational(static_cast<long>(N - 1) * (N - 1), N) / best_const;
    if (!cap) return;
    const int A = *cap;
    const Rational capped_const = chi_const(A, A, N);
    // chi_low_star is nondecreasing in R, so R = A is enough
    Rational lower = 0;
    for (int T = 1; T <= A; ++T) lower = std::max(lower, chi_low_star(T, A, N, 1));
    row.lower = lower / capped_const;
    row.upper = chi_upper(A, N) / capped_const;
  });
  return rows;
}

void write_figure1_csv(std::ostream& os, const std::vector<Figure1Row>& rows, bool exact) {
  os << "N,ratio_unconstrained,ratio_lower,ratio_upper";
  if (exact) os << ",ratio_unconstrained_exact,ratio_lower_exact,ratio_upper_exact";
  os << '\n';
  // uncapped rows leave the constrained columns empty
  auto dec = [](const std::optional<Rational>& q) { return q ? format_double(to_double(*q)) : ""; };
  auto frac = [](const std::optional<Rational>& q) { return q ? to_fraction(*q) : ""; };
  for (const auto& r : rows) {
    os << r.N << ',' << format_double(to_double(r.unconstrained)) << ',' << dec(r.lower) << ','
       << dec(r.upper);
    if (exact) os << ',' << to_fraction(r.unconstrained) << ',' << frac(r.lower) << ',' << frac(r.upper);
    os << '\n';
  }
}

SimoDecomposition virtual_simo_K(const ColoringMatrix& Z, const Dims& d, double eps) {
  Z.require_conforms(d);
  const int N = d.N, T = Z.transmit();
  // row sums of |Z|^2 across the whole transmit grid
  const Eigen::VectorXd row_energy = Z.stacked().cwiseAbs2().rowwise().sum();
  const double peak = row_energy.maxCoeff();
  if (!(peak > 0.0)) throw InvalidInput("coloring matrix is identically zero; K is undefined");
  SimoDecomposition out;
  out.K = (1.0 + eps) * peak;
  out.residual_variance.resize(N, d.R);
  for (int r = 0; r < d.R; ++r)
    for (int i = 0; i < N; ++i)
      out.residual_variance(i, r) = 1.0 - row_energy(r * N + i) / (out.K * T);
  out.min_residual = out.residual_variance.minCoeff();
  if (!(out.min_residual > 0.0)) throw InvalidInput("virtual SIMO residual variance is not positive");
  return out;
}

double virtual_simo_snr(double K, double rho, const Dims& d, long samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("need at least one sample");
  Rng rng(seed);
  std::vector<double> signal(static_cast<std::size_t>(samples)), noise(signal.size());
  const double gain = std::sqrt(K * rho);
  for (long k = 0; k < samples; ++k) {
    const Complex s = rng.complex_gaussian();
    const CVector x = rng.complex_gaussian(d.N);
    const CVector w = rng.complex_gaussian(d.N);
    signal[k] = (gain * s * x).squaredNorm();
    noise[k] = w.squaredNorm();
  }
  return pairwise_sum(signal) / pairwise_sum(noise);
}

}  // namespace blockfade
