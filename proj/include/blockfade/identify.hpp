#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "blockfade/jacobian.hpp"

namespace blockfade {

struct Unknowns {
  CVector s;    // length R T_eff Q
  CVector x_D;  // length |D|
};

// full x from data and pilot entries (both ordered by ascending flat index)
CVector assemble_input(const CVector& x_D, const CVector& x_P, const PilotAssignment& pilots);
CVector pilot_part(const CVector& x, const PilotAssignment& pilots);
CVector data_part(const CVector& x, const PilotAssignment& pilots);

// [B s]_I with x assembled from (x_D, x_P)
CVector forward_map(const CVector& s, const CVector& x_D, const CVector& x_P,
                    const PilotAssignment& pilots, const ColoringMatrix& Z);

struct RecoveryOptions {
  int max_iterations = 200;
  double tolerance = 1e-12;        // stop once the relative residual falls below
  double success_residual = 1e-9;  // success iff final residual is at most this
  int max_halvings = 30;
};

struct RecoveryResult {
  bool success = false;
  double residual = 0.0;  // ||phi(u) - ybar_I|| / ||ybar_I||
  std::optional<double> param_error;  // ||u - u_true|| / ||u_true||, when truth is known
  int iterations = 0;
  Unknowns solution;
};

// Complex Gauss-Newton on phi(s, x_D) = ybar_I with halving line search. A
// singular linearization falls back to a damped least-squares step.
RecoveryResult recover(const CVector& y_I, const CVector& x_P, const PilotAssignment& pilots,
                       const ColoringMatrix& Z, const Unknowns& init,
                       const RecoveryOptions& opts = {}, const Unknowns* truth = nullptr);

// output for (c_t x_t, s_{r,t} / c_t); with scale_s = false only x is scaled
CVector scaled_output(const CVector& s, const CVector& x, const ColoringMatrix& Z, const Dims& d,
                      std::span<const Complex> c, bool scale_s = true);
bool scaling_ambiguity_check(const CVector& s, const CVector& x, const ColoringMatrix& Z,
                             const Dims& d, std::span<const Complex> c, double tol = 1e-12);
// random c_t drawn from the seed
bool scaling_ambiguity_check(const CVector& s, const CVector& x, const ColoringMatrix& Z,
                             const Dims& d, std::uint64_t seed, double tol = 1e-12);

// singular values above rel_tol * sigma_max
int numerical_rank(const CMatrix& m, double rel_tol = kRankTol);

struct RankGap {
  int constant = 0;
  int generic = 0;
};

// rank of the N x R matrix (ybar_1 ... ybar_R) for the constant and a Gaussian Z
RankGap rank_gap_demo(const Dims& d, std::uint64_t seed);

struct TrialSummary {
  long trials = 0;
  long converged = 0;   // residual <= success threshold
  long identified = 0;  // converged and param_error < 1e-6
  double median_residual = 0.0;
  double median_param_error = 0.0;
  double success_rate() const { return trials ? double(identified) / double(trials) : 0.0; }
  double converged_rate() const { return trials ? double(converged) / double(trials) : 0.0; }
};

inline constexpr double kIdentifiedParamError = 1e-6;

// Per trial: draw Z (or the constant model), s, x; start Gauss-Newton from the
// truth perturbed by `perturbation` relative to its norm.
TrialSummary run_recovery_trials(const Dims& d, const PilotAssignment& pilots, long trials,
                                 std::uint64_t seed, ColoringSource source = ColoringSource::Generic,
                                 double perturbation = 1e-2, Execution ex = Execution::Parallel);

struct MultiplicityReport {
  long restarts = 0;
  long converged = 0;
  long distinct = 0;  // clusters of converged solutions at 1e-6 relative distance
  BigInt bezout_bound;
};

// cold starts from Gaussian initial points
MultiplicityReport count_solutions(const CVector& y_I, const CVector& x_P,
                                   const PilotAssignment& pilots, const ColoringMatrix& Z,
                                   long restarts, std::uint64_t seed, double cluster_tol = 1e-6,
                                   Execution ex = Execution::Parallel);

}  // namespace blockfade
