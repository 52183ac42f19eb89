#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "blockfade/model.hpp"
#include "blockfade/parallel.hpp"

namespace blockfade {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);
// "p/q" (or "p" when q = 1)
std::string to_fraction(const Rational& q);
double to_double(const Rational& q);

// M = min{T, R, floor(N/2)}
int constant_model_rank(int T, int R, int N);
// M (1 - M/N)
Rational chi_const(int T, int R, int N);
// T (1 - 1/N), the generic value for T < N
Rational chi_gen(int T, int N);
// T (1 - 1/N), valid for every T
Rational chi_upper(int T, int N);
// min{T_eff (1 - 1/N), R (1 - T_eff Q / N)}
Rational chi_low(int T_eff, int R, int N, int Q);
// R N / (N + R Q - 1)
Rational t_opt(int R, int N, int Q);
// max{R (1 - ceil(T_opt) Q/N), floor(T_opt) (1 - 1/N)}
Rational eta(int R, int N, int Q);
// max over T_eff of chi_low, closed form
Rational chi_low_star(int T, int R, int N, int Q);
// same maximum by enumerating T_eff in [1, min(T,R)]
Rational chi_low_star_bruteforce(int T, int R, int N, int Q);

// max{0, R N - (R T_eff Q + T_eff N - T_eff)}: receive slots left unused
long unused_outputs(int T_eff, int R, int N, int Q);
// max{T_eff, R T_eff Q - (R - T_eff) N}: number of pilot symbols
long pilot_count(int T_eff, int R, int N, int Q);

struct DofReport {
  Dims dims;
  int M = 0;
  Rational chi_const;
  Rational chi_gen_upper;
  std::optional<Rational> chi_gen;  // set when T < N
  Rational chi_low_of_teff;
  Rational chi_low_star;
  Rational T_opt;
  Rational eta;
  long ell = 0;
  long theta = 0;
  bool in_proof_regime = false;
};

DofReport dof_report(const Dims& d);

struct Figure1Row {
  int N = 0;
  Rational unconstrained;
  // only with an antenna cap A: T and R range over [1, A]
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

// ratio of generic DoF to the best constant-model DoF; rows with N < 2 are skipped
std::vector<Figure1Row> figure1_curves(int n_min, int n_max, std::optional<int> cap,
                                       Execution ex = Execution::Parallel);
void write_figure1_csv(std::ostream& os, const std::vector<Figure1Row>& rows, bool exact);

// shortest round-trip decimal
std::string format_double(double v);

struct SimoDecomposition {
  double K = 0.0;
  // 1 - sum_{t,q} |[Z_{r,t}]_{i,q}|^2 / (K T), shaped N x R
  Eigen::MatrixXd residual_variance;
  double min_residual = 0.0;
};

// K = (1 + eps) max_{r,i} sum_{t,q} |Z|^2 over the full T grid
SimoDecomposition virtual_simo_K(const ColoringMatrix& Z, const Dims& d, double eps = 1e-6);

// Monte Carlo estimate of E||sqrt(K rho) s x_t||^2 / E||w_tilde||^2 for the
// virtual SIMO channel with x_t ~ CN(0, I_N), s ~ CN(0,1), unit-variance noise.
double virtual_simo_snr(double K, double rho, const Dims& d, long samples, std::uint64_t seed);

}  // namespace blockfade
