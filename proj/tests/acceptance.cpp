// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "blockfade/analysis.hpp"
#include "blockfade/cli.hpp"
#include "blockfade/identify.hpp"
#include "blockfade/rng.hpp"
#include "blockfade/serialization.hpp"
#include "oracles.hpp"

using namespace blockfade;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::vector<Dims> regime_cells(int n_max, int q_max) {
  std::vector<Dims> out;
  for (int N = 2; N <= n_max; ++N)
    for (int Q = 1; Q <= std::min(q_max, N); ++Q)
      for (int te = 1; te * Q < N; ++te) {
        const int cap = Dims::make(te, te, N, Q, te).receive_cap();
        for (int R = te; R <= cap; ++R) out.push_back(Dims::make(te, R, N, Q, te));
      }
  return out;
}

Verdict dof_values() {
  Verdict v;
  std::ostringstream out, err;
  if (cli::run({"dof", "--dims", "2,3,4,1"}, out, err) != 0) {
    v.fail("dof exited nonzero: " + err.str());
    return v;
  }
  const json j = json::parse(out.str());
  if (j["chi_const"]["exact"] != "1") v.fail("chi_const = " + j["chi_const"]["exact"].get<std::string>());
  if (j["chi_gen_upper"]["exact"] != "3/2") v.fail("upper = " + j["chi_gen_upper"]["exact"].get<std::string>());
  if (j["chi_low_star"]["exact"] != "3/2") v.fail("lower = " + j["chi_low_star"]["exact"].get<std::string>());
  const DofReport r = dof_report(Dims::make(2, 3, 4, 1));
  if (r.chi_const != 1 || r.chi_gen_upper != Rational(3, 2) || r.chi_low_star != Rational(3, 2))
    v.fail("library values differ from the CLI");
  v.detail = v.pass ? "chi_const=1, upper=lower=3/2" : v.detail;
  return v;
}

Verdict figure1_asymptote() {
  Verdict v;
  const auto rows = figure1_curves(2, 1000, std::nullopt);
  if (rows.size() != 999 || rows.back().N != 1000) v.fail("unexpected row count");
  if (rows.back().unconstrained != Rational(998001, 250000))
    v.fail("ratio at N=1000 is " + to_fraction(rows.back().unconstrained));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].unconstrained >= 4) v.fail("ratio reaches 4 at N=" + std::to_string(rows[k].N));
    if (k && rows[k].unconstrained <= rows[k - 1].unconstrained)
      v.fail("not increasing at N=" + std::to_string(rows[k].N));
  }
  if (v.pass) v.detail = "N=1000 ratio 998001/250000, increasing below 4";
  return v;
}

Verdict optimal_grid_point() {
  Verdict v;
  const int G = 200;
  long cells = 0;
  for (int Q = 1; Q <= 2; ++Q)
    for (int N = 3; N <= 12; ++N) {
      // max over T, R of the best lower bound = max over T_eff <= R of the plain bound
      oracle::Q brute = 0;
      for (int R = 1; R <= G; ++R)
        for (int te = 1; te <= R; ++te) brute = std::max(brute, oracle::lower_bound_at(te, R, N, Q));
      Rational closed = 0;
      for (int T = 1; T <= G; ++T)
        for (int R = 1; R <= G; ++R, ++cells) closed = std::max(closed, chi_low_star(T, R, N, Q));
      const int Ts = (N - 1) / Q;
      const int Rs = ((N - 1) * (N - 1) + Q - 1) / Q;
      const Rational expect = Rational(Ts) * Rational(N - 1, N);
      const std::string at = " at N=" + std::to_string(N) + ", Q=" + std::to_string(Q);
      if (brute != expect) v.fail("brute-force maximum differs" + at);
      if (closed != expect) v.fail("closed-form maximum differs" + at);
      if (chi_low_star(Ts, Rs, N, Q) != expect) v.fail("maximum not attained at the stated point" + at);
      if (chi_low_star_bruteforce(Ts, Rs, N, Q) != expect) v.fail("enumeration disagrees" + at);
    }
  if (v.pass) v.detail = std::to_string(cells) + " grid points";
  return v;
}

Verdict pilot_combinatorics() {
  Verdict v;
  for (int te = 1; te <= 16; ++te)
    for (int N = 1; N <= 16; ++N) {
      if (!beta_is_bijective(te, N)) v.fail("beta not bijective at " + std::to_string(te) + "," + std::to_string(N));
      for (long j = 1; j <= static_cast<long>(te) * N; ++j) {
        const CardPosition c = beta(j, te, N);
        if (std::pair<int, int>{c.t, c.i} != oracle::deal(j, te, N)) v.fail("beta differs from the dealing rule");
      }
    }
  long cells = 0;
  for (const Dims& d : regime_cells(12, 12)) {
    ++cells;
    const PilotAssignment pa = build_pilot_sets(d);
    const PropertyReport rep = verify_pilot_properties(pa);
    if (!rep.all_passed()) v.fail("property failure at " + d.to_string());
    const auto P = oracle::pilot_sets(d.T_eff, d.R, d.N, d.Q);
    for (int t = 0; t < d.T_eff; ++t)
      if (IndexSet(P[t].begin(), P[t].end()) != pa.P_t[t]) v.fail("pilot set differs at " + d.to_string());
  }
  const PilotAssignment fig = build_pilot_sets(Dims::make(4, 5, 6, 1, 4));
  const std::vector<IndexSet> expect{{1, 3, 5}, {1, 2, 4, 6}, {1, 2, 3, 5}, {2, 4, 6}};
  if (fig.theta != 14 || fig.P_t != expect) v.fail("four-antenna example differs");
  if (v.pass) v.detail = "256 dealing maps, " + std::to_string(cells) + " regime cells, example reproduced";
  return v;
}

Verdict witness_nonsingularity() {
  Verdict v;
  long cells = 0;
  double worst = 1.0;
  for (const Dims& d : regime_cells(8, 2)) {
    ++cells;
    const PilotAssignment pa = build_pilot_sets(d);
    const WitnessTriple w = witness_construct(d, pa);
    const JacobianMatrix J = assemble_jacobian(w.Z, w.s, w.x, pa);
    worst = std::min(worst, J.spectrum.ratio());
    if (!J.nonsingular()) v.fail("singular witness at " + d.to_string());
  }
  const Dims d = Dims::make(2, 3, 4, 1);
  const WitnessTriple w = witness_construct(d, build_pilot_sets(d));
  const auto z = [&](int t, int i) { return w.Z.block(2, t - 1)(i - 1, 0); };
  if (z(2, 1) != 0.0 || z(1, 2) != 0.0 || z(2, 3) != 0.0 || z(1, 4) != 0.0) v.fail("zero pattern differs");
  if (z(1, 1) == 0.0 || z(2, 2) == 0.0 || z(1, 3) == 0.0 || z(2, 4) == 0.0) v.fail("unexpected zero in the pattern");
  if (v.pass) {
    std::ostringstream os;
    os << cells << " cells, worst sigma ratio " << worst;
    v.detail = os.str();
  }
  return v;
}

Verdict genericity() {
  Verdict v;
  const Dims d = Dims::make(2, 3, 4, 1);
  const PilotAssignment pa = build_pilot_sets(d);
  const ProbeStats g = genericity_probe(d, pa, 100, 2024);
  const ProbeStats c = genericity_probe(d, pa, 100, 2024, ColoringSource::Constant);
  if (g.nonsingular != 100) v.fail("generic: " + std::to_string(g.nonsingular) + "/100");
  if (c.nonsingular != 0) v.fail("constant: " + std::to_string(c.nonsingular) + "/100");
  if (v.pass) v.detail = "generic 100/100, constant 0/100";
  return v;
}

Verdict identifiability() {
  Verdict v;
  const Dims d = Dims::make(2, 3, 4, 1);
  const TrialSummary t = run_recovery_trials(d, build_pilot_sets(d), 100, 2024);
  if (t.identified < 99) v.fail("identified " + std::to_string(t.identified) + "/100");
  long gaps = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RankGap g = rank_gap_demo(d, seed);
    gaps += g.constant == 2 && g.generic == 3;
  }
  if (gaps != 100) v.fail("rank gap (2,3) in " + std::to_string(gaps) + "/100 seeds");
  if (v.pass) v.detail = "identified " + std::to_string(t.identified) + "/100, rank gap 100/100";
  return v;
}

Verdict finite_differences() {
  Verdict v;
  long cells = 0;
  double worst = 0.0;
  for (const Dims& d : regime_cells(6, 2)) {
    ++cells;
    const PilotAssignment pa = build_pilot_sets(d);
    for (int trial = 0; trial < 20; ++trial) {
      Rng rng(derive_seed(cells, trial));
      const ColoringMatrix Z(rng.complex_gaussian(d.output_length(), static_cast<Index>(d.T) * d.Q), d.R, d.T);
      const CVector s = rng.complex_gaussian(d.unknowns()), x = rng.complex_gaussian(d.input_length());
      const CVector xP = pilot_part(x, pa), xD = data_part(x, pa);
      const CMatrix J = jacobian_matrix(Z, s, x, d, pa.D, pa.useful());
      const double h = 1e-5;
      for (Index k = 0; k < J.cols(); ++k) {
        CVector sp = s, sm = s, dp = xD, dm = xD;
        if (k < d.unknowns()) {
          sp(k) += h;
          sm(k) -= h;
        } else {
          dp(k - d.unknowns()) += h;
          dm(k - d.unknowns()) -= h;
        }
        const CVector fd = (forward_map(sp, dp, xP, pa, Z) - forward_map(sm, dm, xP, pa, Z)) / (2 * h);
        const double rel = (fd - J.col(k)).norm() / J.col(k).norm();
        worst = std::max(worst, rel);
        if (!(rel <= 1e-6)) v.fail("column mismatch at " + d.to_string());
      }
    }
  }
  if (v.pass) {
    std::ostringstream os;
    os << cells << " cells x 20, worst relative error " << worst;
    v.detail = os.str();
  }
  return v;
}

Verdict logdet_integrability() {
  Verdict v;
  const LogDetEstimate toy = mc_log_abs_gaussian(1'000'000, 2024);
  // polar quadrature: 1/2 int_0^inf log(u) e^-u du after u = e^w, Simpson's rule
  const double a = -40.0, b = 4.0;
  const int n = 200000;
  const double h = (b - a) / n;
  const auto f = [](double w) { return 0.5 * w * std::exp(w - std::exp(w)); };
  double sum = f(a) + f(b);
  for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  const double oracle_value = sum * h / 3.0;
  if (std::abs(oracle_value + std::numbers::egamma / 2) > 1e-9) v.fail("quadrature oracle off");
  if (std::abs(toy.mean - oracle_value) > 1e-2) v.fail("toy mean " + std::to_string(toy.mean));

  const Dims d = Dims::make(2, 3, 4, 1);
  const LogDetEstimate g = mc_logdet(gaussian_coloring(d, 2024), d, build_pilot_sets(d), 10'000, 2024);
  if (!std::isfinite(g.mean) || !std::isfinite(g.std_error)) v.fail("non-finite estimate");
  if (g.clipped_fraction != 0.0) v.fail("clipped fraction " + std::to_string(g.clipped_fraction));
  if (v.pass) {
    std::ostringstream os;
    os << "toy " << toy.mean << " vs " << oracle_value << ", E log|det|^2 = " << g.mean << " +- " << g.std_error;
    v.detail = os.str();
  }
  return v;
}

Verdict bound_ordering() {
  Verdict v;
  long cells = 0, region = 0;
  for (int N = 1; N <= 12; ++N)
    for (int Q = 1; Q <= std::min(3, N); ++Q)
      for (int T = 1; T <= 20; ++T)
        for (int R = 1; R <= 20; ++R, ++cells) {
          const Rational lo = chi_low_star(T, R, N, Q), up = chi_upper(T, N);
          const std::string at = " at (" + std::to_string(T) + "," + std::to_string(R) + "," + std::to_string(N) + "," +
                                 std::to_string(Q) + ")";
          if (lo > up) v.fail("lower exceeds upper" + at);
          if (lo != oracle::best_lower_bound(T, R, N, Q)) v.fail("closed form differs from enumeration" + at);
          if (N < 2) continue;  // both bounds vanish at N = 1
          const bool in_region = T * Q < N && R * (N - T * Q) >= T * (N - 1);
          region += in_region;
          if (in_region != (lo == up)) v.fail("equality region mismatch" + at);
        }
  if (v.pass) v.detail = std::to_string(cells) + " cells, " + std::to_string(region) + " with equality";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "dof values", 1, dof_values},
      {2, "figure-1 asymptote", 5, figure1_asymptote},
      {3, "optimal grid point", 30, optimal_grid_point},
      {4, "pilot combinatorics", 30, pilot_combinatorics},
      {5, "witness nonsingularity", 120, witness_nonsingularity},
      {6, "generic nonsingularity probe", 60, genericity},
      {7, "identifiability", 120, identifiability},
      {8, "jacobian finite differences", 60, finite_differences},
      {9, "log-det integrability", 120, logdet_integrability},
      {10, "bound ordering", 30, bound_ordering},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) v.fail("over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget");
    all = all && v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.name << "  ["
              << std::fixed << std::setprecision(2) << secs << " s]  " << std::defaultfloat << v.detail << '\n';
  }
  return all ? 0 : 1;
}
