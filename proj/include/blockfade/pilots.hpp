#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockfade/model.hpp"

namespace blockfade {

// a - b floor((a-1)/b), residue in [1:b]
long mod_star(long a, long b);

struct CardPosition {
  int t = 0;  // antenna, [1:T_eff]
  int i = 0;  // symbol slot, [1:N]
  bool operator==(const CardPosition&) const = default;
};

// card-dealing map [1:T_eff N] -> [1:T_eff] x [1:N]
CardPosition beta(long j, int T_eff, int N);

// Sets needed to step from R-1 to R receive antennas (only when R > T_eff).
struct ReceivePartition {
  long theta_prev = 0;                 // pilot count with R-1 antennas
  std::vector<IndexSet> P_prev;        // pilot sets with R-1 antennas
  std::vector<IndexSet> L;             // L_t = P_prev_t \ P_t
  IndexSet L_all;                      // union of L_t
  IndexSet G;                          // [1:N-ell] \ L_all
  std::vector<int> g;                  // g_t in P_t
  std::vector<IndexSet> G_t;           // partition of G, |G_t| = Q, g_t in G_t
};

struct PilotAssignment {
  Dims dims;
  long theta = 0;               // number of pilot symbols
  long ell = 0;                 // unused outputs in the last receive block
  std::vector<IndexSet> P_t;    // per antenna, subsets of [1:N]
  std::vector<IndexSet> D_t;    // [1:N] \ P_t
  IndexSet P;                   // flat i + (t-1)N
  IndexSet D;
  IndexSet I;                   // useful outputs [1:RN-ell]
  IndexSet J;                   // dropped outputs
  std::optional<ReceivePartition> partition;

  long useful() const { return static_cast<long>(I.size()); }
};

// throws InvalidConfiguration outside the proof regime
PilotAssignment build_pilot_sets(const Dims& d);

struct PropertyCheck {
  std::string name;
  bool passed = true;
  std::string detail;  // counterexample on failure
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool all_passed() const;
  const PropertyCheck* find(const std::string& name) const;
};

// Checks the stored sets as they are (so corrupted assignments are caught).
PropertyReport verify_pilot_properties(const PilotAssignment& pa);
PropertyReport verify_pilot_properties(const Dims& d);

// exhaustive: beta hits every (t, i) exactly once
bool beta_is_bijective(int T_eff, int N);
// beta_1^{-1}(t), t in [1:T_eff], partition [1:T_eff N]
bool beta1_fibers_partition(int T_eff, int N);
// beta_2 is one-to-one on every run of at most N consecutive integers in [1:T_eff N]
bool beta2_window_injective(int T_eff, int N);
// |{j in [p+1:q] : (j+a) mod* b = c}|
long residue_hits(long p, long q, long a, long b, long c);

// card table: row t lists the card number j dealt to each slot i,
// pilot cards in brackets
std::string card_table(const PilotAssignment& pa);

}  // namespace blockfade
