#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blockfade/dof.hpp"
#include "blockfade/model.hpp"
#include "blockfade/parallel.hpp"
#include "blockfade/pilots.hpp"

namespace blockfade {

// relative thresholds on sigma_min / sigma_max
inline constexpr double kNonsingularTol = 1e-10;
inline constexpr double kRankTol = 1e-8;

struct SpectralSummary {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double log_abs_det = 0.0;  // sum of log sigma_i; -inf if some sigma is 0
  double ratio() const { return sigma_max > 0.0 ? sigma_min / sigma_max : 0.0; }
};

SpectralSummary spectral_summary(const CMatrix& m);

struct JacobianMatrix {
  Dims dims;
  PilotAssignment pilots;
  CMatrix matrix;
  double det_abs = 0.0;
  SpectralSummary spectrum;
  BigInt bezout_bound;

  double sigma_min() const { return spectrum.sigma_min; }
  bool nonsingular(double tol = kNonsingularTol) const {
    return spectrum.sigma_min > tol * spectrum.sigma_max;
  }
};

// Derivative of the first `rows` outputs of ybar with respect to (s, [x]_D),
// D given as 1-based flat indices. Columns: s in stacked order, then D ascending.
CMatrix jacobian_matrix(const ColoringMatrix& Z, const CVector& s, const CVector& x, const Dims& d,
                        const IndexSet& D, long rows);

JacobianMatrix assemble_jacobian(const ColoringMatrix& Z, const CVector& s, const CVector& x,
                                 const PilotAssignment& pilots);

// 2^(R T_eff Q + |D|)
BigInt bezout_bound(const Dims& d, const PilotAssignment& pilots);

struct WitnessTriple {
  ColoringMatrix Z;
  CVector s;
  CVector x;
};

enum class WitnessFill {
  RandomUnitary,  // seeded unitary blocks, Gaussian free entries
  Integer         // identity blocks, zero free entries; entries stay Gaussian integers
};

// Builds (Z, s, x) with x = 1 whose Jacobian is nonsingular, receive antenna by
// receive antenna starting from R = T_eff.
WitnessTriple witness_construct(const Dims& d, const PilotAssignment& pilots,
                                WitnessFill fill = WitnessFill::RandomUnitary,
                                std::uint64_t seed = 0);

enum class ColoringSource { Generic, Constant };

struct ProbeStats {
  long trials = 0;
  long nonsingular = 0;
  std::optional<double> min_det_abs;
  std::optional<double> min_sigma_ratio;  // min over trials of sigma_min / sigma_max
  double fraction_nonsingular() const {
    return trials ? static_cast<double>(nonsingular) / static_cast<double>(trials) : 0.0;
  }
};

ProbeStats genericity_probe(const Dims& d, const PilotAssignment& pilots, long trials,
                            std::uint64_t seed, ColoringSource source = ColoringSource::Generic,
                            Execution ex = Execution::Parallel);

class ReductionError : public std::invalid_argument {
 public:
  enum class Condition { IndexOutOfRange, SizeMismatch, NoZeroBlock, SingularPivotBlock };
  ReductionError(Condition c, const std::string& what) : std::invalid_argument(what), condition(c) {}
  Condition condition;
};

// If [M]_{not E}^{F} = 0 or [M]_{E}^{not F} = 0 and [M]_E^F is nonsingular, det M != 0
// iff the complementary block is nonsingular. Returns that block. 0-based indices.
CMatrix reduce_by_block(const CMatrix& M, const std::vector<int>& E, const std::vector<int>& F);

// rows of '.' (zero) and 'x' (nonzero)
std::string sparsity_pattern(const CMatrix& m);

// Exact determinant of a matrix whose entries are Gaussian integers, by
// fraction-free elimination. Throws InvalidInput on non-integral entries.
struct ExactDeterminant {
  std::string re;
  std::string im;
  bool nonzero = false;
  double log10_abs = 0.0;  // only meaningful when nonzero
};
ExactDeterminant exact_determinant(const CMatrix& m);

}  // namespace blockfade
