#include "blockfade/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blockfade/rng.hpp"

namespace blockfade {

Dims Dims::make(int T, int R, int N, int Q, std::optional<int> T_eff) {
  std::ostringstream why;
  if (T < 1 || R < 1 || N < 1 || Q < 1) {
    why << "T, R, N, Q must be positive (got " << T << "," << R << "," << N << "," << Q << ")";
    throw InvalidConfiguration(why.str());
  }
  if (Q > N) {
    why << "Q=" << Q << " exceeds N=" << N;
    throw InvalidConfiguration(why.str());
  }
  const int te = T_eff.value_or(std::min(T, R));
  if (te < 1 || te > std::min(T, R)) {
    why << "T_eff=" << te << " must lie in [1, min(T,R)=" << std::min(T, R) << "]";
    throw InvalidConfiguration(why.str());
  }
  return Dims{T, R, N, Q, te};
}

int Dims::regime_teff(int T, int R, int N, int Q) {
  int te = std::min(T, R);
  while (te > 1 && te * Q >= N) --te;
  return std::max(te, 1);
}

int Dims::receive_cap() const {
  if (T_eff * Q >= N) throw InvalidConfiguration("receive cap needs T_eff*Q < N");
  const long num = static_cast<long>(T_eff) * (N - 1);
  const long den = N - static_cast<long>(T_eff) * Q;
  return static_cast<int>((num + den - 1) / den);
}

std::string Dims::regime_violation() const {
  std::ostringstream why;
  if (static_cast<long>(T_eff) * Q >= N) {
    why << "T_eff*Q=" << T_eff * Q << " must be < N=" << N;
  } else if (R < T_eff) {
    why << "R=" << R << " must be >= T_eff=" << T_eff;
  } else if (R > receive_cap()) {
    why << "R=" << R << " exceeds ceil(T_eff(N-1)/(N-T_eff Q))=" << receive_cap()
        << "; switch off receive antennas to R=" << receive_cap();
  }
  return why.str();
}

bool Dims::in_proof_regime() const { return regime_violation().empty(); }

void Dims::require_proof_regime() const {
  const std::string why = regime_violation();
  if (!why.empty()) throw InvalidConfiguration(to_string() + ": " + why);
}

Dims Dims::with_receive(int r) const { return Dims::make(T, r, N, Q, T_eff); }

std::string Dims::to_string() const {
  std::ostringstream os;
  os << "(T=" << T << ",R=" << R << ",N=" << N << ",Q=" << Q << ",T_eff=" << T_eff << ")";
  return os.str();
}

ColoringMatrix::ColoringMatrix(int R, int T, int N, int Q)
    : R_(R), T_(T), N_(N), Q_(Q), stacked_(CMatrix::Zero(R * N, T * Q)) {
  if (R < 1 || T < 1 || N < 1 || Q < 1) throw ShapeError("coloring grid dimensions must be positive");
}

ColoringMatrix::ColoringMatrix(CMatrix stacked, int R, int T) : R_(R), T_(T) {
  if (R < 1 || T < 1 || stacked.rows() % R != 0 || stacked.cols() % T != 0 || stacked.rows() == 0 ||
      stacked.cols() == 0) {
    throw ShapeError("stacked coloring matrix is not an R x T grid of equal blocks");
  }
  N_ = static_cast<int>(stacked.rows() / R);
  Q_ = static_cast<int>(stacked.cols() / T);
  stacked_ = std::move(stacked);
}

void ColoringMatrix::require_conforms(const Dims& d) const {
  if (R_ != d.R || N_ != d.N || Q_ != d.Q || T_ < d.T_eff) {
    std::ostringstream os;
    os << "coloring grid " << R_ << "x" << T_ << " of " << N_ << "x" << Q_
       << " blocks does not conform to " << d.to_string();
    throw ShapeError(os.str());
  }
}

ColoringMatrix constant_model(const Dims& d) {
  if (d.Q != 1) throw InvalidConfiguration("constant model requires Q = 1");
  ColoringMatrix Z(d.R, d.T, d.N, 1);
  Z.stacked().setOnes();
  return Z;
}

ColoringMatrix gaussian_coloring(const Dims& d, std::uint64_t seed) {
  Rng rng(seed);
  return ColoringMatrix(rng.complex_gaussian(static_cast<Index>(d.R) * d.N,
                                             static_cast<Index>(d.T) * d.Q),
                        d.R, d.T);
}

namespace {

void require_vectors(const Dims& d, const CVector* s, const CVector& x) {
  if (x.size() != d.input_length()) throw ShapeError("x must have length T_eff*N");
  if (s && s->size() != d.unknowns()) throw ShapeError("s must have length R*T_eff*Q");
}

}  // namespace

CMatrix build_B(const ColoringMatrix& Z, const CVector& x, const Dims& d) {
  Z.require_conforms(d);
  require_vectors(d, nullptr, x);
  const int N = d.N, Q = d.Q, Te = d.T_eff;
  CMatrix B = CMatrix::Zero(d.output_length(), d.unknowns());
  for (int r = 0; r < d.R; ++r)
    for (int t = 0; t < Te; ++t)
      B.block(r * N, (r * Te + t) * Q, N, Q) = x.segment(t * N, N).asDiagonal() * Z.block(r, t);
  return B;
}

CMatrix colored_symbols(const ColoringMatrix& Z, const CVector& s, const Dims& d) {
  Z.require_conforms(d);
  if (s.size() != d.unknowns()) throw ShapeError("s must have length R*T_eff*Q");
  const int N = d.N, Q = d.Q, Te = d.T_eff;
  CMatrix a(d.output_length(), Te);
  for (int r = 0; r < d.R; ++r)
    for (int t = 0; t < Te; ++t)
      a.block(r * N, t, N, 1) = Z.block(r, t) * s.segment((r * Te + t) * Q, Q);
  return a;
}

CVector noiseless_output(const ColoringMatrix& Z, const CVector& s, const CVector& x,
                         const Dims& d) {
  require_vectors(d, &s, x);
  const CMatrix a = colored_symbols(Z, s, d);
  const int N = d.N;
  CVector y = CVector::Zero(d.output_length());
  for (int r = 0; r < d.R; ++r)
    for (int t = 0; t < d.T_eff; ++t)
      y.segment(r * N, N) += a.block(r * N, t, N, 1).cwiseProduct(x.segment(t * N, N));
  return y;
}

ChannelRealization sample_realization(const ColoringMatrix& Z, const Dims& d, double rho,
                                      std::uint64_t seed) {
  if (!(rho >= 0.0)) throw InvalidInput("rho must be non-negative");
  Z.require_conforms(d);
  Rng rng(seed);
  ChannelRealization out;
  out.dims = d;
  out.rho = rho;
  out.s = rng.complex_gaussian(d.unknowns());
  out.x = rng.complex_gaussian(d.input_length());
  out.w = rng.complex_gaussian(d.output_length());
  out.B = build_B(Z, out.x, d);
  out.y_bar = out.B * out.s;
  out.y = std::sqrt(rho / d.T_eff) * out.y_bar + out.w;
  return out;
}

}  // namespace blockfade
