#include "blockfade/pilots.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include "blockfade/dof.hpp"

namespace blockfade {

long mod_star(long a, long b) {
  if (b < 1) throw InvalidInput("mod* needs a positive modulus");
  // floor division that also holds for a < 1
  const long q = a - 1 >= 0 ? (a - 1) / b : -((b - a) / b);
  return a - b * q;
}

CardPosition beta(long j, int T_eff, int N) {
  if (j < 1 || j > static_cast<long>(T_eff) * N) throw InvalidInput("beta: j outside [1:T_eff N]");
  const long L = std::lcm(static_cast<long>(T_eff), static_cast<long>(N));
  return {static_cast<int>(mod_star(j + (j - 1) / L, T_eff)), static_cast<int>(mod_star(j, N))};
}

namespace {

IndexSet range_set(long lo, long hi) {
  IndexSet s;
  for (long k = lo; k <= hi; ++k) s.push_back(static_cast<int>(k));
  return s;
}

IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const IndexSet& a, int v) { return std::binary_search(a.begin(), a.end(), v); }

// beta_2 images of the cards in [lo:hi] dealt to each antenna
std::vector<IndexSet> deal(long lo, long hi, int T_eff, int N) {
  std::vector<IndexSet> sets(T_eff);
  for (long j = lo; j <= hi; ++j) {
    const CardPosition c = beta(j, T_eff, N);
    sets[c.t - 1].push_back(c.i);
  }
  for (auto& s : sets) std::sort(s.begin(), s.end());
  return sets;
}

std::string show(const IndexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < s.size(); ++k) os << (k ? "," : "") << s[k];
  os << '}';
  return os.str();
}

ReceivePartition build_partition(const Dims& d, long theta, long ell,
                                 const std::vector<IndexSet>& P_t) {
  const int Te = d.T_eff, N = d.N, Q = d.Q;
  ReceivePartition part;
  part.theta_prev = pilot_count(Te, d.R - 1, N, Q);
  part.P_prev = deal(1, part.theta_prev, Te, N);
  part.L.resize(Te);
  for (int t = 0; t < Te; ++t) part.L[t] = set_minus(part.P_prev[t], P_t[t]);
  for (const auto& l : part.L) part.L_all.insert(part.L_all.end(), l.begin(), l.end());
  std::sort(part.L_all.begin(), part.L_all.end());
  part.G = set_minus(range_set(1, N - ell), part.L_all);

  // witnesses from the last T_eff pilot cards; around a multiple of lcm the
  // antenna index is read off the card one period earlier
  const long L = std::lcm(static_cast<long>(Te), static_cast<long>(N));
  const long lo = theta - Te + 1;
  long wrap = 0;
  for (long m = L; m <= theta - 1; m += L)
    if (m >= lo) wrap = m;
  part.g.assign(Te, 0);
  for (long j = lo; j <= theta; ++j) {
    const long jt = (wrap && j > wrap) ? j - L : j;
    const int t = beta(jt, Te, N).t;
    // a collision leaves some g_t = 0, which verify_pilot_properties reports
    if (part.g[t - 1] == 0) part.g[t - 1] = beta(j, Te, N).i;
  }

  IndexSet spare = part.G;
  for (int g : part.g) spare.erase(std::remove(spare.begin(), spare.end(), g), spare.end());
  part.G_t.resize(Te);
  std::size_t next = 0;
  for (int t = 0; t < Te; ++t) {
    if (part.g[t] != 0) part.G_t[t].push_back(part.g[t]);
    while (static_cast<int>(part.G_t[t].size()) < Q && next < spare.size())
      part.G_t[t].push_back(spare[next++]);
    std::sort(part.G_t[t].begin(), part.G_t[t].end());
  }
  return part;
}

}  // namespace

PilotAssignment build_pilot_sets(const Dims& d) {
  d.require_proof_regime();
  const int Te = d.T_eff, N = d.N, Q = d.Q;
  PilotAssignment pa;
  pa.dims = d;
  pa.theta = pilot_count(Te, d.R, N, Q);
  pa.ell = unused_outputs(Te, d.R, N, Q);
  pa.P_t = deal(1, pa.theta, Te, N);
  pa.D_t.resize(Te);
  const IndexSet all = range_set(1, N);
  for (int t = 0; t < Te; ++t) {
    pa.D_t[t] = set_minus(all, pa.P_t[t]);
    for (int i : pa.P_t[t]) pa.P.push_back(i + t * N);
    for (int i : pa.D_t[t]) pa.D.push_back(i + t * N);
  }
  const long rn = static_cast<long>(d.R) * N;
  pa.I = range_set(1, rn - pa.ell);
  pa.J = range_set(rn - pa.ell + 1, rn);
  if (d.R > Te) pa.partition = build_partition(d, pa.theta, pa.ell, pa.P_t);
  return pa;
}

bool PropertyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const PropertyCheck* PropertyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

PropertyReport verify_pilot_properties(const PilotAssignment& pa) {
  const Dims& d = pa.dims;
  const int Te = d.T_eff, N = d.N, Q = d.Q;
  PropertyReport rep;
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, ok ? std::string() : std::move(detail)});
  };

  long total = 0;
  for (const auto& p : pa.P_t) total += static_cast<long>(p.size());
  add("i:pilot-total", total == pa.theta,
      "sum |P_t| = " + std::to_string(total) + ", theta = " + std::to_string(pa.theta));

  {
    std::string bad;
    for (int t = 0; t < Te; ++t)
      if (static_cast<long>(pa.P_t[t].size()) > static_cast<long>(Te) * Q)
        bad = "P_" + std::to_string(t + 1) + " = " + show(pa.P_t[t]);
    add("ii:pilots-per-antenna", bad.empty(), bad + " exceeds T_eff Q");
  }

  {
    IndexSet flat;
    for (int t = 0; t < Te; ++t)
      for (int i : pa.P_t[t]) flat.push_back(i + t * N);
    std::sort(flat.begin(), flat.end());
    add("flat-pilots", flat == pa.P, "P = " + show(pa.P) + ", expected " + show(flat));
  }

  const long size_I = static_cast<long>(pa.I.size());
  const long expect_I = d.unknowns() + static_cast<long>(pa.D.size());
  add("useful-outputs", size_I == expect_I,
      "|I| = " + std::to_string(size_I) + ", R T_eff Q + |D| = " + std::to_string(expect_I));

  if (!pa.partition) return rep;
  const ReceivePartition& part = *pa.partition;

  add("theta-step", part.theta_prev - pa.theta == N - static_cast<long>(Te) * Q - pa.ell,
      "theta_{R-1} - theta_R = " + std::to_string(part.theta_prev - pa.theta));

  {
    std::string bad;
    for (int a = 0; a < Te && bad.empty(); ++a)
      for (int b = a + 1; b < Te && bad.empty(); ++b)
        for (int v : part.L[a])
          if (contains(part.L[b], v))
            bad = "L_" + std::to_string(a + 1) + " and L_" + std::to_string(b + 1) + " share " +
                  std::to_string(v);
    add("iii:L-disjoint", bad.empty(), bad);
  }

  {
    std::string bad;
    for (int t = 0; t < Te; ++t)
      for (int v : part.L[t])
        if (v < 1 || v > N - pa.ell) bad = "L_" + std::to_string(t + 1) + " contains " + std::to_string(v);
    add("iv:L-in-range", bad.empty(), bad + " outside [1:N-ell]");
  }

  {
    std::string bad;
    for (int t = 0; t < Te; ++t)
      if (static_cast<int>(part.G_t[t].size()) != Q)
        bad = "|G_" + std::to_string(t + 1) + "| = " + std::to_string(part.G_t[t].size());
    add("v-a:G-size", bad.empty(), bad);
  }
  {
    std::string bad;
    for (int a = 0; a < Te && bad.empty(); ++a)
      for (int b = a + 1; b < Te && bad.empty(); ++b)
        for (int v : part.G_t[a])
          if (contains(part.G_t[b], v))
            bad = "G_" + std::to_string(a + 1) + " and G_" + std::to_string(b + 1) + " share " +
                  std::to_string(v);
    add("v-b:G-disjoint", bad.empty(), bad);
  }
  {
    std::string bad;
    for (int t = 0; t < Te; ++t) {
      IndexSet common;
      std::set_intersection(part.G_t[t].begin(), part.G_t[t].end(), pa.P_t[t].begin(),
                            pa.P_t[t].end(), std::back_inserter(common));
      if (common.empty()) bad = "G_" + std::to_string(t + 1) + " misses P_" + std::to_string(t + 1);
      if (!contains(part.G_t[t], part.g[t]) || !contains(pa.P_t[t], part.g[t]))
        bad = "g_" + std::to_string(t + 1) + " = " + std::to_string(part.g[t]) + " misplaced";
    }
    add("v-c:G-meets-P", bad.empty(), bad);
  }
  {
    IndexSet uni;
    for (const auto& g : part.G_t) uni.insert(uni.end(), g.begin(), g.end());
    std::sort(uni.begin(), uni.end());
    const IndexSet expect = set_minus(range_set(1, N - pa.ell), part.L_all);
    add("v-d:G-cover", uni == expect, "union G_t = " + show(uni) + ", expected " + show(expect));
  }
  return rep;
}

PropertyReport verify_pilot_properties(const Dims& d) { return verify_pilot_properties(build_pilot_sets(d)); }

bool beta_is_bijective(int T_eff, int N) {
  std::vector<char> seen(static_cast<std::size_t>(T_eff) * N, 0);
  for (long j = 1; j <= static_cast<long>(T_eff) * N; ++j) {
    const CardPosition c = beta(j, T_eff, N);
    char& slot = seen[static_cast<std::size_t>(c.t - 1) * N + (c.i - 1)];
    if (slot) return false;
    slot = 1;
  }
  return true;
}

bool beta1_fibers_partition(int T_eff, int N) {
  std::vector<int> owner(static_cast<std::size_t>(T_eff) * N, 0);
  for (int t = 1; t <= T_eff; ++t)
    for (long j = 1; j <= static_cast<long>(T_eff) * N; ++j)
      if (beta(j, T_eff, N).t == t) {
        if (owner[j - 1]) return false;
        owner[j - 1] = t;
      }
  return std::all_of(owner.begin(), owner.end(), [](int o) { return o != 0; });
}

bool beta2_window_injective(int T_eff, int N) {
  const long n = static_cast<long>(T_eff) * N;
  for (long lo = 1; lo <= n; ++lo) {
    std::vector<char> seen(N, 0);
    for (long j = lo; j <= std::min(n, lo + N - 1); ++j) {
      char& slot = seen[beta(j, T_eff, N).i - 1];
      if (slot) return false;
      slot = 1;
    }
  }
  return true;
}

long residue_hits(long p, long q, long a, long b, long c) {
  long count = 0;
  for (long j = p + 1; j <= q; ++j)
    if (mod_star(j + a, b) == c) ++count;
  return count;
}

std::string card_table(const PilotAssignment& pa) {
  const int Te = pa.dims.T_eff, N = pa.dims.N;
  std::vector<std::vector<long>> card(Te, std::vector<long>(N, 0));
  for (long j = 1; j <= static_cast<long>(Te) * N; ++j) {
    const CardPosition c = beta(j, Te, N);
    card[c.t - 1][c.i - 1] = j;
  }
  const int width = static_cast<int>(std::to_string(static_cast<long>(Te) * N).size()) + 2;
  std::ostringstream os;
  os << "pilots " << pa.theta << " of " << static_cast<long>(Te) * N << " cards, [j] = pilot\n";
  os << std::setw(4) << "t\\i";
  for (int i = 1; i <= N; ++i) os << std::setw(width + 1) << i;
  os << '\n';
  for (int t = 0; t < Te; ++t) {
    os << std::setw(4) << t + 1;
    for (int i = 0; i < N; ++i) {
      const long j = card[t][i];
      const std::string cell = j <= pa.theta ? "[" + std::to_string(j) + "]" : std::to_string(j);
      os << std::setw(width + 1) << cell;
    }
    os << "   P_" << t + 1 << " = " << show(pa.P_t[t]) << '\n';
  }
  return os.str();
}

}  // namespace blockfade
