#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "blockfade/types.hpp"

namespace blockfade {

// T transmit, R receive, N coherence length, Q = rank of each coloring block,
// T_eff = number of transmit antennas actually used.
struct Dims {
  int T = 1;
  int R = 1;
  int N = 1;
  int Q = 1;
  int T_eff = 1;

  // throws InvalidConfiguration; T_eff defaults to min(T, R)
  static Dims make(int T, int R, int N, int Q, std::optional<int> T_eff = std::nullopt);

  // largest T_eff <= min(T, R) with T_eff*Q < N (at least 1)
  static int regime_teff(int T, int R, int N, int Q);

  // ceil(T_eff (N-1) / (N - T_eff Q)); requires T_eff*Q < N
  int receive_cap() const;
  // T_eff Q < N and T_eff <= R <= receive_cap()
  bool in_proof_regime() const;
  // empty if in regime, otherwise a human-readable reason
  std::string regime_violation() const;
  void require_proof_regime() const;

  Dims with_receive(int r) const;

  long unknowns() const { return static_cast<long>(R) * T_eff * Q; }  // length of s
  long input_length() const { return static_cast<long>(T_eff) * N; }  // length of x
  long output_length() const { return static_cast<long>(R) * N; }     // length of y

  std::string to_string() const;
  bool operator==(const Dims&) const = default;
};

// R x T grid of N x Q blocks, stored stacked as (R N) x (T Q), r-major.
class ColoringMatrix {
 public:
  ColoringMatrix() = default;
  ColoringMatrix(int R, int T, int N, int Q);
  ColoringMatrix(CMatrix stacked, int R, int T);

  int receive() const { return R_; }
  int transmit() const { return T_; }
  int coherence() const { return N_; }
  int rank() const { return Q_; }

  // 0-based block indices
  auto block(int r, int t) { return stacked_.block(r * N_, t * Q_, N_, Q_); }
  auto block(int r, int t) const { return stacked_.block(r * N_, t * Q_, N_, Q_); }

  const CMatrix& stacked() const { return stacked_; }
  CMatrix& stacked() { return stacked_; }

  // throws ShapeError unless R, N, Q match and the grid covers T_eff
  void require_conforms(const Dims& d) const;

 private:
  int R_ = 0, T_ = 0, N_ = 0, Q_ = 0;
  CMatrix stacked_;
};

// all-ones N x 1 blocks; the constant-channel special case (Q must be 1)
ColoringMatrix constant_model(const Dims& d);
// i.i.d. CN(0,1) entries
ColoringMatrix gaussian_coloring(const Dims& d, std::uint64_t seed);

// B = blockdiag(B_r), B_r = (X_1 Z_{r,1} ... X_{T_eff} Z_{r,T_eff}); (R N) x (R T_eff Q)
CMatrix build_B(const ColoringMatrix& Z, const CVector& x, const Dims& d);

// ybar = B s without forming B
CVector noiseless_output(const ColoringMatrix& Z, const CVector& s, const CVector& x,
                         const Dims& d);

// a_{r,t} = Z_{r,t} s_{r,t}, returned stacked as (R N) x T_eff
CMatrix colored_symbols(const ColoringMatrix& Z, const CVector& s, const Dims& d);

struct ChannelRealization {
  Dims dims;
  double rho = 0.0;
  CVector s, x, w;
  CMatrix B;
  CVector y_bar, y;
};

// s, x, w i.i.d. CN(0,1); y = sqrt(rho/T_eff) ybar + w
ChannelRealization sample_realization(const ColoringMatrix& Z, const Dims& d, double rho,
                                      std::uint64_t seed);

}  // namespace blockfade
