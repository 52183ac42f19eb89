#include "blockfade/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "blockfade/rng.hpp"

namespace blockfade {

SpectralSummary spectral_summary(const CMatrix& m) {
  SpectralSummary out;
  if (m.size() == 0) return out;
  Eigen::BDCSVD<CMatrix> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  out.sigma_max = sv.maxCoeff();
  out.sigma_min = sv.minCoeff();
  double acc = 0.0;
  for (Index k = 0; k < sv.size(); ++k) acc += std::log(sv(k));
  out.log_abs_det = acc;
  return out;
}

CMatrix jacobian_matrix(const ColoringMatrix& Z, const CVector& s, const CVector& x, const Dims& d,
                        const IndexSet& D, long rows) {
  if (rows < 0 || rows > d.output_length()) throw ShapeError("row count outside [0, RN]");
  const CMatrix B = build_B(Z, x, d);
  const CMatrix a = colored_symbols(Z, s, d);
  const int N = d.N;
  CMatrix J = CMatrix::Zero(rows, d.unknowns() + static_cast<Index>(D.size()));
  J.leftCols(d.unknowns()) = B.topRows(rows);
  for (std::size_t k = 0; k < D.size(); ++k) {
    const int flat = D[k] - 1;
    if (flat < 0 || flat >= d.input_length()) throw ShapeError("data index outside [1:T_eff N]");
    const int t = flat / N, i = flat % N;
    const Index col = d.unknowns() + static_cast<Index>(k);
    // d ybar_r[i] / d x_t[i] = a_{r,t}[i]
    for (int r = 0; r < d.R; ++r) {
      const long row = static_cast<long>(r) * N + i;
      if (row < rows) J(row, col) = a(row, t);
    }
  }
  return J;
}

BigInt bezout_bound(const Dims& d, const PilotAssignment& pilots) {
  BigInt one = 1;
  return one << static_cast<unsigned>(d.unknowns() + static_cast<long>(pilots.D.size()));
}

JacobianMatrix assemble_jacobian(const ColoringMatrix& Z, const CVector& s, const CVector& x,
                                 const PilotAssignment& pilots) {
  const Dims& d = pilots.dims;
  JacobianMatrix out;
  out.dims = d;
  out.pilots = pilots;
  out.matrix = jacobian_matrix(Z, s, x, d, pilots.D, pilots.useful());
  if (out.matrix.rows() != out.matrix.cols()) throw ShapeError("pilot assignment does not give a square system");
  out.spectrum = spectral_summary(out.matrix);
  out.det_abs = std::exp(out.spectrum.log_abs_det);
  out.bezout_bound = bezout_bound(d, pilots);
  return out;
}

namespace {

// sets [Z_{r,t}]_i (1-based i) to a row vector
void set_row(ColoringMatrix& Z, int r, int t, int i, const Eigen::RowVectorXcd& v) {
  Z.block(r, t).row(i - 1) = v;
}

}  // namespace

WitnessTriple witness_construct(const Dims& d, const PilotAssignment& pilots, WitnessFill fill,
                                std::uint64_t seed) {
  d.require_proof_regime();
  if (!(pilots.dims == d)) throw ShapeError("pilot assignment built for different dims");
  const int Te = d.T_eff, N = d.N, Q = d.Q;
  const bool exact = fill == WitnessFill::Integer;
  Rng rng(seed);

  WitnessTriple w{ColoringMatrix(d.R, d.T, N, Q), CVector::Zero(d.unknowns()),
                  CVector::Ones(d.input_length())};
  auto s_block = [&](int r, int t) { return w.s.segment((static_cast<Index>(r) * Te + t) * Q, Q); };
  auto free_fill = [&](Index rows, Index cols) -> CMatrix {
    return exact ? CMatrix::Zero(rows, cols) : rng.complex_gaussian(rows, cols);
  };

  // R = T_eff: each receive antenna r listens to transmit antenna r only
  const PilotAssignment base = build_pilot_sets(d.with_receive(Te));
  for (int r = 0; r < Te; ++r) {
    for (int t = 0; t < Te; ++t) w.Z.block(r, t) = free_fill(N, Q);
    const IndexSet& P = base.P_t[r];  // |P| = T_eff Q
    const Index k = static_cast<Index>(Te) * Q;
    const CMatrix fill_block = exact ? CMatrix(CMatrix::Identity(k, k)) : rng.random_unitary(k);
    for (Index row = 0; row < k; ++row)
      for (int t = 0; t < Te; ++t) set_row(w.Z, r, t, P[row], fill_block.block(row, t * Q, 1, Q));
    CVector srr = exact ? CVector(CVector::Ones(Q)) : rng.complex_gaussian(Q);
    if (!exact) srr /= srr.norm();
    s_block(r, r) = srr;
    for (int i : base.D_t[r]) set_row(w.Z, r, r, i, srr.adjoint());
  }

  // add receive antennas one at a time
  for (int level = Te + 1; level <= d.R; ++level) {
    const PilotAssignment pa = build_pilot_sets(d.with_receive(level));
    const ReceivePartition& part = *pa.partition;
    const int r = level - 1;
    for (int t = 0; t < Te; ++t) {
      auto Zrt = w.Z.block(r, t);
      Zrt = free_fill(N, Q);  // rows beyond N - ell stay free
      for (int i : part.G) Zrt.row(i - 1).setZero();
      for (int i : part.L_all) Zrt.row(i - 1).setZero();
      const CMatrix U = exact ? CMatrix(CMatrix::Identity(Q, Q)) : rng.random_unitary(Q);
      const IndexSet& Gt = part.G_t[t];
      const auto pos = std::find(Gt.begin(), Gt.end(), part.g[t]) - Gt.begin();
      for (int k = 0; k < Q; ++k) Zrt.row(Gt[k] - 1) = U.row(k);
      // orthogonal to the other rows of G_t, unit product with row g_t
      const CVector srt = U.row(pos).adjoint();
      s_block(r, t) = srt;
      for (int i : part.L[t]) Zrt.row(i - 1) = srt.adjoint();
    }
  }
  return w;
}

ProbeStats genericity_probe(const Dims& d, const PilotAssignment& pilots, long trials,
                            std::uint64_t seed, ColoringSource source, Execution ex) {
  if (trials < 0) throw InvalidInput("trials must be non-negative");
  ProbeStats stats;
  stats.trials = trials;
  if (trials == 0) return stats;
  std::vector<SpectralSummary> spec(static_cast<std::size_t>(trials));
  for_each_index(spec.size(), ex, [&](std::size_t k) {
    Rng rng(seed, k);
    const ColoringMatrix Z =
        source == ColoringSource::Constant
            ? constant_model(d)
            : ColoringMatrix(rng.complex_gaussian(d.output_length(), static_cast<Index>(d.T) * d.Q),
                             d.R, d.T);
    const CVector s = rng.complex_gaussian(d.unknowns());
    const CVector x = rng.complex_gaussian(d.input_length());
    spec[k] = spectral_summary(jacobian_matrix(Z, s, x, d, pilots.D, pilots.useful()));
  });
  double min_det = std::numeric_limits<double>::infinity();
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& sp : spec) {
    min_det = std::min(min_det, std::exp(sp.log_abs_det));
    min_ratio = std::min(min_ratio, sp.ratio());
    if (sp.sigma_min > kNonsingularTol * sp.sigma_max) ++stats.nonsingular;
  }
  stats.min_det_abs = min_det;
  stats.min_sigma_ratio = min_ratio;
  return stats;
}

CMatrix reduce_by_block(const CMatrix& M, const std::vector<int>& E, const std::vector<int>& F) {
  using C = ReductionError::Condition;
  const Index n = M.rows();
  if (M.cols() != n) throw ReductionError(C::SizeMismatch, "matrix is not square");
  if (E.size() != F.size()) throw ReductionError(C::SizeMismatch, "|E| != |F|");
  std::vector<char> inE(n, 0), inF(n, 0);
  for (int e : E) {
    if (e < 0 || e >= n || inE[e]) throw ReductionError(C::IndexOutOfRange, "bad row index in E");
    inE[e] = 1;
  }
  for (int f : F) {
    if (f < 0 || f >= n || inF[f]) throw ReductionError(C::IndexOutOfRange, "bad column index in F");
    inF[f] = 1;
  }
  std::vector<int> rows_out, cols_out;
  for (int k = 0; k < n; ++k) {
    if (!inE[k]) rows_out.push_back(k);
    if (!inF[k]) cols_out.push_back(k);
  }
  const double zero_tol = 1e-14 * std::max(1.0, M.cwiseAbs().maxCoeff());
  auto block_is_zero = [&](const std::vector<int>& rs, const std::vector<int>& cs) {
    for (int r : rs)
      for (int c : cs)
        if (std::abs(M(r, c)) > zero_tol) return false;
    return true;
  };
  if (!block_is_zero(rows_out, F) && !block_is_zero(E, cols_out))
    throw ReductionError(C::NoZeroBlock, "neither off-diagonal block vanishes");

  CMatrix pivot(E.size(), F.size());
  for (std::size_t a = 0; a < E.size(); ++a)
    for (std::size_t b = 0; b < F.size(); ++b) pivot(a, b) = M(E[a], F[b]);
  if (pivot.size() > 0) {
    const SpectralSummary sp = spectral_summary(pivot);
    if (!(sp.sigma_min > 1e-12 * sp.sigma_max))
      throw ReductionError(C::SingularPivotBlock, "[M]_E^F is singular");
  }
  CMatrix out(rows_out.size(), cols_out.size());
  for (std::size_t a = 0; a < rows_out.size(); ++a)
    for (std::size_t b = 0; b < cols_out.size(); ++b) out(a, b) = M(rows_out[a], cols_out[b]);
  return out;
}

std::string sparsity_pattern(const CMatrix& m) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.rows() * (m.cols() + 1)));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out += m(i, j) == Complex(0.0) ? '.' : 'x';
    out += '\n';
  }
  return out;
}

}  // namespace blockfade
