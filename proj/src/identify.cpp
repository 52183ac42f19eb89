#include "blockfade/identify.hpp"

#include <algorithm>
#include <cmath>

#include "blockfade/rng.hpp"

namespace blockfade {

namespace {

CVector gather(const CVector& x, const IndexSet& idx) {
  CVector out(static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out(static_cast<Index>(k)) = x(idx[k] - 1);
  return out;
}

CVector stack(const Unknowns& u) {
  CVector v(u.s.size() + u.x_D.size());
  v << u.s, u.x_D;
  return v;
}

Unknowns split(const CVector& v, Index ns) { return {v.head(ns), v.tail(v.size() - ns)}; }

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double relative_distance(const CVector& a, const CVector& b) {
  const double scale = b.norm();
  return scale > 0.0 ? (a - b).norm() / scale : (a - b).norm();
}

}  // namespace

CVector pilot_part(const CVector& x, const PilotAssignment& pilots) { return gather(x, pilots.P); }
CVector data_part(const CVector& x, const PilotAssignment& pilots) { return gather(x, pilots.D); }

CVector assemble_input(const CVector& x_D, const CVector& x_P, const PilotAssignment& pilots) {
  if (x_D.size() != static_cast<Index>(pilots.D.size()) ||
      x_P.size() != static_cast<Index>(pilots.P.size()))
    throw ShapeError("x_D / x_P lengths do not match the pilot assignment");
  CVector x(pilots.dims.input_length());
  for (std::size_t k = 0; k < pilots.D.size(); ++k) x(pilots.D[k] - 1) = x_D(static_cast<Index>(k));
  for (std::size_t k = 0; k < pilots.P.size(); ++k) x(pilots.P[k] - 1) = x_P(static_cast<Index>(k));
  return x;
}

CVector forward_map(const CVector& s, const CVector& x_D, const CVector& x_P,
                    const PilotAssignment& pilots, const ColoringMatrix& Z) {
  const CVector x = assemble_input(x_D, x_P, pilots);
  return noiseless_output(Z, s, x, pilots.dims).head(pilots.useful());
}

RecoveryResult recover(const CVector& y_I, const CVector& x_P, const PilotAssignment& pilots,
                       const ColoringMatrix& Z, const Unknowns& init, const RecoveryOptions& opts,
                       const Unknowns* truth) {
  const Dims& d = pilots.dims;
  if (y_I.size() != pilots.useful()) throw ShapeError("ybar_I has the wrong length");
  if (init.s.size() != d.unknowns() || init.x_D.size() != static_cast<Index>(pilots.D.size()))
    throw ShapeError("initial point has the wrong shape");
  const double scale = y_I.norm() > 0.0 ? y_I.norm() : 1.0;
  const Index ns = d.unknowns();

  CVector u = stack(init);
  auto residual_of = [&](const CVector& v) {
    return (forward_map(v.head(ns), v.tail(v.size() - ns), x_P, pilots, Z) - y_I).norm() / scale;
  };
  double res = residual_of(u);

  RecoveryResult out;
  while (res >= opts.tolerance && out.iterations < opts.max_iterations) {
    const CVector x = assemble_input(u.tail(u.size() - ns), x_P, pilots);
    const CMatrix J = jacobian_matrix(Z, u.head(ns), x, d, pilots.D, pilots.useful());
    const CVector F = forward_map(u.head(ns), u.tail(u.size() - ns), x_P, pilots, Z) - y_I;

    Eigen::FullPivLU<CMatrix> lu(J);
    CVector step;
    if (lu.isInvertible()) {
      step = lu.solve(-F);
    } else {
      // Levenberg-style step along the range of J
      const double lambda = 1e-8 * std::max(1.0, J.squaredNorm());
      const CMatrix H = J.adjoint() * J + lambda * CMatrix::Identity(J.cols(), J.cols());
      step = H.ldlt().solve(-(J.adjoint() * F));
    }

    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= opts.max_halvings; ++h, t *= 0.5) {
      const CVector trial = u + t * step;
      const double r = residual_of(trial);
      if (r < res) {
        u = trial;
        res = r;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    ++out.iterations;
  }

  out.residual = res;
  out.success = res <= opts.success_residual;
  out.solution = split(u, ns);
  if (truth) out.param_error = relative_distance(u, stack(*truth));
  return out;
}

CVector scaled_output(const CVector& s, const CVector& x, const ColoringMatrix& Z, const Dims& d,
                      std::span<const Complex> c, bool scale_s) {
  if (static_cast<int>(c.size()) != d.T_eff) throw ShapeError("need one scale factor per transmit antenna");
  CVector s2 = s, x2 = x;
  for (int t = 0; t < d.T_eff; ++t) {
    if (c[t] == Complex(0.0)) throw InvalidInput("scale factors must be nonzero");
    x2.segment(static_cast<Index>(t) * d.N, d.N) *= c[t];
    if (!scale_s) continue;
    for (int r = 0; r < d.R; ++r) s2.segment((static_cast<Index>(r) * d.T_eff + t) * d.Q, d.Q) /= c[t];
  }
  return noiseless_output(Z, s2, x2, d);
}

bool scaling_ambiguity_check(const CVector& s, const CVector& x, const ColoringMatrix& Z,
                             const Dims& d, std::span<const Complex> c, double tol) {
  const CVector y = noiseless_output(Z, s, x, d);
  const CVector y2 = scaled_output(s, x, Z, d, c, true);
  return (y2 - y).norm() <= tol * y.norm();
}

bool scaling_ambiguity_check(const CVector& s, const CVector& x, const ColoringMatrix& Z,
                             const Dims& d, std::uint64_t seed, double tol) {
  Rng rng(seed);
  std::vector<Complex> c(d.T_eff);
  for (auto& v : c) v = rng.complex_gaussian();
  return scaling_ambiguity_check(s, x, Z, d, c, tol);
}

int numerical_rank(const CMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<CMatrix> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = rel_tol * sv.maxCoeff();
  int rank = 0;
  for (Index k = 0; k < sv.size(); ++k)
    if (sv(k) > cut) ++rank;
  return rank;
}

RankGap rank_gap_demo(const Dims& d, std::uint64_t seed) {
  Rng rng(seed);
  const ColoringMatrix Zc = constant_model(d);
  const ColoringMatrix Zg(rng.complex_gaussian(d.output_length(), static_cast<Index>(d.T) * d.Q), d.R, d.T);
  const CVector s = rng.complex_gaussian(d.unknowns());
  const CVector x = rng.complex_gaussian(d.input_length());
  auto as_columns = [&](const CVector& y) {
    return CMatrix(Eigen::Map<const CMatrix>(y.data(), d.N, d.R));
  };
  return {numerical_rank(as_columns(noiseless_output(Zc, s, x, d))),
          numerical_rank(as_columns(noiseless_output(Zg, s, x, d)))};
}

TrialSummary run_recovery_trials(const Dims& d, const PilotAssignment& pilots, long trials,
                                 std::uint64_t seed, ColoringSource source, double perturbation,
                                 Execution ex) {
  if (trials < 0) throw InvalidInput("trials must be non-negative");
  std::vector<RecoveryResult> results(static_cast<std::size_t>(trials));
  for_each_index(results.size(), ex, [&](std::size_t k) {
    Rng rng(seed, k);
    const ColoringMatrix Z =
        source == ColoringSource::Constant
            ? constant_model(d)
            : ColoringMatrix(rng.complex_gaussian(d.output_length(), static_cast<Index>(d.T) * d.Q),
                             d.R, d.T);
    const CVector s = rng.complex_gaussian(d.unknowns());
    const CVector x = rng.complex_gaussian(d.input_length());
    const Unknowns truth{s, data_part(x, pilots)};
    const CVector x_P = pilot_part(x, pilots);
    const CVector y_I = forward_map(s, truth.x_D, x_P, pilots, Z);

    CVector u = stack(truth);
    const double amp = perturbation * u.norm() / std::sqrt(static_cast<double>(u.size()));
    u += amp * rng.complex_gaussian(u.size());
    results[k] = recover(y_I, x_P, pilots, Z, split(u, d.unknowns()), {}, &truth);
  });

  TrialSummary sum;
  sum.trials = trials;
  std::vector<double> res, err;
  for (const auto& r : results) {
    res.push_back(r.residual);
    err.push_back(*r.param_error);
    if (r.success) {
      ++sum.converged;
      if (*r.param_error < kIdentifiedParamError) ++sum.identified;
    }
  }
  sum.median_residual = median(res);
  sum.median_param_error = median(err);
  return sum;
}

MultiplicityReport count_solutions(const CVector& y_I, const CVector& x_P,
                                   const PilotAssignment& pilots, const ColoringMatrix& Z,
                                   long restarts, std::uint64_t seed, double cluster_tol,
                                   Execution ex) {
  const Dims& d = pilots.dims;
  std::vector<RecoveryResult> results(static_cast<std::size_t>(std::max(0L, restarts)));
  for_each_index(results.size(), ex, [&](std::size_t k) {
    Rng rng(seed, k);
    const Unknowns init{rng.complex_gaussian(d.unknowns()),
                        rng.complex_gaussian(static_cast<Index>(pilots.D.size()))};
    results[k] = recover(y_I, x_P, pilots, Z, init);
  });

  MultiplicityReport rep;
  rep.restarts = restarts;
  rep.bezout_bound = bezout_bound(d, pilots);
  std::vector<CVector> reps;
  for (const auto& r : results) {
    if (!r.success) continue;
    ++rep.converged;
    const CVector u = stack(r.solution);
    const bool known = std::any_of(reps.begin(), reps.end(), [&](const CVector& c) {
      return (u - c).norm() <= cluster_tol * std::max(1.0, c.norm());
    });
    if (!known) reps.push_back(u);
  }
  rep.distinct = static_cast<long>(reps.size());
  return rep;
}

}  // namespace blockfade
