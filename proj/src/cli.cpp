#include "blockfade/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "blockfade/analysis.hpp"
#include "blockfade/identify.hpp"
#include "blockfade/rng.hpp"
#include "blockfade/serialization.hpp"

namespace blockfade::cli {

namespace {

// stream index reserved for drawing Z so it never collides with per-trial streams
constexpr std::uint64_t kColoringStream = 0xC0105ULL;

bool parse_long(const std::string& s, long& v) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    v = std::stol(s, &pos);
  } catch (...) {
    return false;
  }
  return pos == s.size();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& part : split(text, '|')) {
    const auto colon = part.find(':');
    long lo = 0, hi = 0;
    if (colon == std::string::npos) {
      if (!parse_long(part, lo)) throw UsageError("not an integer: '" + part + "'");
      hi = lo;
    } else if (!parse_long(part.substr(0, colon), lo) || !parse_long(part.substr(colon + 1), hi) || hi < lo) {
      throw UsageError("bad range: '" + part + "'");
    }
    for (long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const std::string& part : split(text, ',')) {
    const auto colon = part.find(':');
    long lo = 0, hi = 0;
    if (colon == std::string::npos) {
      if (!parse_long(part, lo)) throw UsageError("bad seed: '" + part + "'");
      hi = lo;
    } else if (!parse_long(part.substr(0, colon), lo) || !parse_long(part.substr(colon + 1), hi) || hi < lo) {
      throw UsageError("bad seed range: '" + part + "'");
    }
    if (lo < 0) throw UsageError("seeds must be non-negative");
    for (long v = lo; v <= hi; ++v) out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

void parse_dims(const std::string& text, SweepConfig& cfg) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw UsageError("--dims expects T,R,N,Q");
  cfg.T = parse_int_list(parts[0]);
  cfg.R = parse_int_list(parts[1]);
  cfg.N = parse_int_list(parts[2]);
  cfg.Q = parse_int_list(parts[3]);
}

bool SweepConfig::is_sweep() const {
  return T.size() * R.size() * N.size() * Q.size() * std::max<std::size_t>(seeds.size(), 1) > 1;
}

std::vector<Cell> expand(const SweepConfig& cfg) {
  std::vector<Cell> cells;
  for (int T : cfg.T)
    for (int R : cfg.R)
      for (int N : cfg.N)
        for (int Q : cfg.Q) {
          Cell c{T, R, N, Q, std::nullopt, {}};
          try {
            const int te = cfg.T_eff.value_or(T >= 1 && R >= 1 && N >= 1 && Q >= 1
                                                  ? Dims::regime_teff(T, R, N, Q)
                                                  : 1);
            c.dims = Dims::make(T, R, N, Q, te);
          } catch (const InvalidConfiguration& e) {
            c.error = e.what();
          }
          cells.push_back(std::move(c));
        }
  return cells;
}

namespace {

// ---- record emission ----

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    return;
  }
  std::string v;
  if (j.is_null()) v = "";
  else if (j.is_string()) v = j.get<std::string>();
  else v = j.dump();
  out.emplace_back(prefix, v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_records(const std::vector<json>& records, Format format, bool pretty_single, std::ostream& os) {
  if (format == Format::Json) {
    for (const auto& r : records) os << ((pretty_single && records.size() == 1) ? r.dump(2) : r.dump()) << '\n';
    return;
  }
  std::vector<std::vector<std::pair<std::string, std::string>>> rows;
  std::vector<std::string> columns;
  for (const auto& r : records) {
    rows.emplace_back();
    flatten(r, "", rows.back());
    for (const auto& kv : rows.back())
      if (std::find(columns.begin(), columns.end(), kv.first) == columns.end()) columns.push_back(kv.first);
  }
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << csv_field(columns[c]);
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      auto it = std::find_if(row.begin(), row.end(), [&](const auto& kv) { return kv.first == columns[c]; });
      os << (c ? "," : "") << (it == row.end() ? "" : csv_field(it->second));
    }
    os << '\n';
  }
}

struct Output {
  std::ofstream file;
  std::ostream* os;
  Output(const std::string& path, std::ostream& fallback) : os(&fallback) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    os = &file;
  }
};

json dims_tuple(const Cell& c) { return {{"T", c.T}, {"R", c.R}, {"N", c.N}, {"Q", c.Q}}; }

using CellFn = std::function<json(const Dims&, std::uint64_t)>;

// Runs fn on every (cell, seed); invalid cells become records, not silent gaps.
int run_cells(const SweepConfig& cfg, bool needs_regime, bool seeded, const CellFn& fn, std::ostream& out,
              std::ostream& err) {
  const std::vector<Cell> cells = expand(cfg);
  const std::vector<std::uint64_t> seeds = seeded ? cfg.seeds : std::vector<std::uint64_t>{0};
  struct Task {
    const Cell* cell;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& c : cells)
    for (auto s : seeds) tasks.push_back({&c, s});

  std::vector<json> records(tasks.size());
  std::vector<std::string> failures(tasks.size());
  for_each_index(tasks.size(), Execution::Parallel, [&](std::size_t k) {
    const Cell& c = *tasks[k].cell;
    std::string why = c.error;
    if (why.empty() && needs_regime) why = c.dims->regime_violation();
    if (why.empty()) {
      try {
        json rec = fn(*c.dims, tasks[k].seed);
        if (cfg.is_sweep()) {
          rec["status"] = "ok";
          if (seeded) rec["seed"] = tasks[k].seed;
        }
        records[k] = std::move(rec);
        return;
      } catch (const InvalidConfiguration& e) {
        why = e.what();
      }
    }
    failures[k] = why;
    records[k] = {{"dims", dims_tuple(c)}, {"status", "invalid"}, {"reason", why}};
    if (seeded) records[k]["seed"] = tasks[k].seed;
  });

  if (!cfg.is_sweep() && !failures.empty() && !failures[0].empty()) {
    err << "invalid configuration: " << failures[0] << '\n';
    return kInvalidRegime;
  }
  Output o(cfg.output, out);
  write_records(records, cfg.format, !cfg.is_sweep(), *o.os);
  return kOk;
}

// ---- verify-all ----

struct Tally {
  std::ostream& os;
  bool ok = true;
  void report(const std::string& name, long cases, const std::string& failure) {
    const bool pass = failure.empty();
    ok = ok && pass;
    os << (pass ? "PASS " : "FAIL ") << name << " (" << cases << " cases)";
    if (!pass) os << ": " << failure;
    os << '\n';
  }
};

std::vector<Dims> regime_cells(int n_max, int q_max = -1) {
  std::vector<Dims> out;
  for (int N = 2; N <= n_max; ++N)
    for (int Q = 1; Q <= (q_max < 0 ? N : std::min(q_max, N)); ++Q)
      for (int Te = 1; Te * Q < N; ++Te) {
        const Dims base = Dims::make(Te, Te, N, Q, Te);
        for (int R = Te; R <= base.receive_cap(); ++R) out.push_back(Dims::make(Te, R, N, Q, Te));
      }
  return out;
}

bool verify_all(int n_max, std::ostream& os) {
  Tally tally{os};
  {
    long cases = 0;
    std::string bad;
    for (int Te = 1; Te <= n_max; ++Te)
      for (int N = 1; N <= n_max; ++N, ++cases) {
        if (!beta_is_bijective(Te, N)) bad = "beta not bijective at T_eff=" + std::to_string(Te) + ", N=" + std::to_string(N);
        if (!beta1_fibers_partition(Te, N)) bad = "beta_1 fibers overlap at T_eff=" + std::to_string(Te);
        if (!beta2_window_injective(Te, N)) bad = "beta_2 repeats in a window at N=" + std::to_string(N);
      }
    tally.report("card-dealing map", cases, bad);
  }
  {
    long cases = 0;
    std::string bad;
    for (long b = 2; b <= 7; ++b)
      for (long a = 0; a <= 6; ++a)
        for (long c = 1; c <= b; ++c)
          for (long p = 0; p <= 12; ++p)
            for (long q = p; q <= p + 20; ++q, ++cases)
              if (residue_hits(p, q, a, b, c) > (q - p + b - 1) / b)
                bad = "count bound fails at p=" + std::to_string(p) + ", q=" + std::to_string(q);
    tally.report("residue counting bound", cases, bad);
  }
  const std::vector<Dims> cells = regime_cells(n_max);
  {
    std::string bad;
    for (const Dims& d : cells) {
      const PropertyReport rep = verify_pilot_properties(d);
      for (const auto& c : rep.checks)
        if (!c.passed) bad = d.to_string() + " " + c.name + ": " + c.detail;
    }
    tally.report("pilot-set properties", static_cast<long>(cells.size()), bad);
  }
  {
    std::string bad;
    for (const Dims& d : cells)
      if (unused_outputs(d.T_eff, d.R, d.N, d.Q) >= d.N - static_cast<long>(d.T_eff) * d.Q) bad = d.to_string();
    tally.report("unused outputs below N - T_eff Q", static_cast<long>(cells.size()), bad);
  }
  {
    long cases = 0;
    std::string bad;
    for (int N = 1; N <= n_max; ++N)
      for (int Q = 1; Q <= N; ++Q)
        for (int T = 1; T <= 2 * n_max; ++T)
          for (int R = 1; R <= 2 * n_max; ++R, ++cases) {
            const Rational star = chi_low_star(T, R, N, Q);
            const std::string at = "(" + std::to_string(T) + "," + std::to_string(R) + "," + std::to_string(N) + "," + std::to_string(Q) + ")";
            if (star != chi_low_star_bruteforce(T, R, N, Q)) bad = "closed form differs from enumeration at " + at;
            if (star > chi_upper(T, N)) bad = "lower bound exceeds upper bound at " + at;
            if (R > 1 && star < chi_low_star(T, R - 1, N, Q)) bad = "not monotone in R at " + at;
            if (N >= 2) {
              const bool region = static_cast<long>(T) * Q < N &&
                                  Rational(R) >= Rational(static_cast<long>(T) * (N - 1), N - static_cast<long>(T) * Q);
              if (region != (star == chi_upper(T, N))) bad = "equality region mismatch at " + at;
              if (t_opt(R, N, Q) >= Rational(N, Q)) bad = "T_opt >= N/Q at " + at;
            }
          }
    tally.report("dof bounds", cases, bad);
  }
  {
    long cases = 0;
    std::string bad;
    for (int N = 1; N <= n_max; ++N)
      for (int Q = 1; Q <= N; ++Q)
        for (int R = 1; R <= 2 * n_max; ++R)
          for (int Te = 1; Te <= R; ++Te, ++cases) {
            const EntropyChainReport rep = entropy_chain_report(Dims::make(Te, R, N, Q, Te));
            if (rep.per_symbol != rep.chi_low || rep.coefficient != rep.coefficient_via_ell)
              bad = rep.dims.to_string();
          }
    tally.report("pre-log coefficient", cases, bad);
  }
  {
    // witness sizes grow like N^3; N <= 7 keeps the suite quick
    const std::vector<Dims> small = regime_cells(std::min(n_max, 7), 2);
    std::vector<std::string> bad(small.size());
    for_each_index(small.size(), Execution::Parallel, [&](std::size_t k) {
      const Dims& d = small[k];
      const PilotAssignment pa = build_pilot_sets(d);
      const WitnessTriple w = witness_construct(d, pa);
      if (!assemble_jacobian(w.Z, w.s, w.x, pa).nonsingular()) bad[k] = d.to_string();
    });
    std::string first;
    for (const auto& b : bad)
      if (!b.empty() && first.empty()) first = "singular witness at " + b;
    tally.report("witness nonsingularity", static_cast<long>(small.size()), first);
  }
  return tally.ok;
}

// ---- subcommands ----

json witness_json(const Dims& d, bool exact, std::uint64_t seed, bool with_matrices) {
  const PilotAssignment pa = build_pilot_sets(d);
  const WitnessTriple w = witness_construct(d, pa, exact ? WitnessFill::Integer : WitnessFill::RandomUnitary, seed);
  const JacobianMatrix J = assemble_jacobian(w.Z, w.s, w.x, pa);
  json j = {{"dims", d},
            {"size", J.matrix.rows()},
            {"sigma_min", J.spectrum.sigma_min},
            {"sigma_max", J.spectrum.sigma_max},
            {"sigma_ratio", J.spectrum.ratio()},
            {"det_abs", J.det_abs},
            {"nonsingular", J.nonsingular()},
            {"bezout_bound", J.bezout_bound.str()}};
  if (exact) {
    const ExactDeterminant ed = exact_determinant(J.matrix);
    j["exact_det"] = {{"re", ed.re}, {"im", ed.im}, {"nonzero", ed.nonzero}, {"log10_abs", ed.log10_abs}};
  }
  if (with_matrices) {
    j["Z"] = w.Z;
    j["s"] = matrix_to_json(w.s);
    j["x"] = matrix_to_json(w.x);
    j["jacobian"] = matrix_to_json(J.matrix);
  }
  return j;
}

ColoringMatrix coloring_for(const Dims& d, bool constant, std::uint64_t seed) {
  return constant ? constant_model(d) : gaussian_coloring(d, derive_seed(seed, kColoringStream));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degrees-of-freedom bounds, pilot sets and identifiability checks for generic block-fading MIMO channels",
               "blockfade"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  SweepConfig cfg;
  std::string dims_text, seed_text, format_text = "json";
  int teff = 0;
  auto add_dims = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--dims", dims_text, "T,R,N,Q; each entry may be a:b or a|b|c for sweeps");
    if (required) o->required();
    sub->add_option("--teff", teff, "effective transmit antennas (default min(T,R) capped to the regime)");
    sub->add_option("--format", format_text, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.output, "write to this file instead of stdout");
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_text, "seed, or list/range such as 1,2,5:9")->required();
  };

  auto* dof = app.add_subcommand("dof", "exact DoF values and bounds");
  add_dims(dof, true);

  int nmin = 2, nmax = 0, cap = 0;
  bool exact = false;
  auto* fig = app.add_subcommand("figure1", "generic / constant DoF ratio versus N as CSV");
  fig->add_option("--nmin", nmin, "first N (rows with N < 2 are skipped)");
  fig->add_option("--nmax", nmax, "last N")->required();
  auto* cap_opt = fig->add_option("--cap", cap, "antenna cap A for the constrained series");
  fig->add_flag("--exact", exact, "append exact fractions");
  fig->add_option("--out", cfg.output, "write to this file instead of stdout");

  bool as_json = false;
  auto* pil = app.add_subcommand("pilots", "pilot sets and the card-dealing table");
  add_dims(pil, true);
  pil->add_flag("--json", as_json, "dump the full assignment as JSON");

  std::uint64_t witness_seed = 0;
  auto* wit = app.add_subcommand("jacobian-witness", "build a nonsingular Jacobian witness");
  add_dims(wit, true);
  wit->add_flag("--exact", exact, "integer fill and exact determinant");
  wit->add_option("--seed", witness_seed, "seed for the unitary fill blocks (default 0)");
  wit->add_flag("--json", as_json, "JSON output including Z, s, x and the Jacobian");

  bool constant = false;
  long trials = 100;
  auto* gen = app.add_subcommand("genericity", "Jacobian nonsingularity over random draws");
  add_dims(gen, true);
  add_seed(gen);
  gen->add_option("--trials", trials, "number of draws");
  gen->add_flag("--constant-model", constant, "use the all-ones coloring matrix");

  double perturbation = 1e-2;
  auto* idf = app.add_subcommand("identify", "Gauss-Newton recovery from a perturbed truth");
  add_dims(idf, true);
  add_seed(idf);
  idf->add_option("--trials", trials, "number of trials");
  idf->add_option("--perturbation", perturbation, "relative size of the initial perturbation");
  idf->add_flag("--constant-model", constant, "use the all-ones coloring matrix");

  long samples = 10000;
  auto* mcl = app.add_subcommand("mc-logdet", "Monte Carlo estimate of E log|det J|^2");
  add_dims(mcl, true);
  add_seed(mcl);
  mcl->add_option("--samples", samples, "number of samples");
  mcl->add_flag("--constant-model", constant, "use the all-ones coloring matrix");

  int verify_nmax = 10;
  auto* ver = app.add_subcommand("verify-all", "run the property suite");
  ver->add_option("--nmax", verify_nmax, "largest N in the grid");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    cfg.format = format_text == "csv" ? Format::Csv : Format::Json;
    if (!dims_text.empty()) parse_dims(dims_text, cfg);
    if (teff > 0) cfg.T_eff = teff;
    if (!seed_text.empty()) cfg.seeds = parse_seed_list(seed_text);
    cfg.trials = trials;

    if (dof->parsed()) {
      return run_cells(cfg, false, false, [](const Dims& d, std::uint64_t) { return json(dof_report(d)); }, out, err);
    }
    if (fig->parsed()) {
      std::optional<int> c;
      if (cap_opt->count()) c = cap;
      Output o(cfg.output, out);
      write_figure1_csv(*o.os, figure1_curves(nmin, nmax, c), exact);
      return kOk;
    }
    if (pil->parsed()) {
      if (as_json || cfg.is_sweep() || cfg.format == Format::Csv)
        return run_cells(cfg, true, false, [](const Dims& d, std::uint64_t) {
          const PilotAssignment pa = build_pilot_sets(d);
          return json{{"assignment", pa}, {"properties", verify_pilot_properties(pa)}};
        }, out, err);
      const Cell cell = expand(cfg).front();
      const std::string why = cell.dims ? cell.dims->regime_violation() : cell.error;
      if (!why.empty()) {
        err << "invalid configuration: " << why << '\n';
        return kInvalidRegime;
      }
      const PilotAssignment pa = build_pilot_sets(*cell.dims);
      Output o(cfg.output, out);
      std::ostream& os = *o.os;
      os << cell.dims->to_string() << "  theta_R=" << pa.theta << "  ell=" << pa.ell << "  |I|=" << pa.useful() << '\n';
      os << card_table(pa);
      if (pa.partition) {
        const ReceivePartition& p = *pa.partition;
        os << "step from R-1: theta_{R-1}=" << p.theta_prev << "  L=" << json(p.L_all).dump() << "  G=" << json(p.G).dump()
           << '\n';
        for (int t = 0; t < cell.dims->T_eff; ++t)
          os << "  t=" << t + 1 << "  L_t=" << json(p.L[t]).dump() << "  g_t=" << p.g[t] << "  G_t=" << json(p.G_t[t]).dump()
             << '\n';
      }
      const PropertyReport rep = verify_pilot_properties(pa);
      for (const auto& c : rep.checks) os << (c.passed ? "  ok   " : "  FAIL ") << c.name << (c.passed ? "" : ": " + c.detail) << '\n';
      return rep.all_passed() ? kOk : kPropertyFailure;
    }
    if (wit->parsed()) {
      if (as_json || cfg.is_sweep() || cfg.format == Format::Csv)
        return run_cells(cfg, true, false, [&](const Dims& d, std::uint64_t) {
          return witness_json(d, exact, witness_seed, as_json && !cfg.is_sweep());
        }, out, err);
      const Cell cell = expand(cfg).front();
      const std::string why = cell.dims ? cell.dims->regime_violation() : cell.error;
      if (!why.empty()) {
        err << "invalid configuration: " << why << '\n';
        return kInvalidRegime;
      }
      const Dims d = *cell.dims;
      const PilotAssignment pa = build_pilot_sets(d);
      const WitnessTriple w = witness_construct(d, pa, exact ? WitnessFill::Integer : WitnessFill::RandomUnitary, witness_seed);
      const JacobianMatrix J = assemble_jacobian(w.Z, w.s, w.x, pa);
      Output o(cfg.output, out);
      std::ostream& os = *o.os;
      os << d.to_string() << "  size " << J.matrix.rows() << "x" << J.matrix.cols() << '\n';
      os << "sigma_min " << format_double(J.spectrum.sigma_min) << "  sigma_max " << format_double(J.spectrum.sigma_max)
         << "  ratio " << format_double(J.spectrum.ratio()) << '\n';
      os << "|det| " << format_double(J.det_abs) << "  nonsingular " << (J.nonsingular() ? "yes" : "no") << '\n';
      bool ok = J.nonsingular();
      if (exact) {
        const ExactDeterminant ed = exact_determinant(J.matrix);
        os << "exact det " << ed.re << (ed.im.front() == '-' ? " - " : " + ") << (ed.im.front() == '-' ? ed.im.substr(1) : ed.im)
           << "i\n";
        ok = ed.nonzero;
      }
      os << sparsity_pattern(J.matrix);
      return ok ? kOk : kPropertyFailure;
    }
    if (gen->parsed()) {
      return run_cells(cfg, true, true, [&](const Dims& d, std::uint64_t seed) {
        const PilotAssignment pa = build_pilot_sets(d);
        // trials inside one cell run serially; cells are the parallel unit
        const ProbeStats st = genericity_probe(d, pa, trials, seed, constant ? ColoringSource::Constant : ColoringSource::Generic,
                                               cfg.is_sweep() ? Execution::Serial : Execution::Parallel);
        json j = st;
        j["dims"] = d;
        j["coloring"] = constant ? "constant" : "generic";
        return j;
      }, out, err);
    }
    if (idf->parsed()) {
      return run_cells(cfg, true, true, [&](const Dims& d, std::uint64_t seed) {
        const PilotAssignment pa = build_pilot_sets(d);
        const TrialSummary st = run_recovery_trials(d, pa, trials, seed, constant ? ColoringSource::Constant : ColoringSource::Generic,
                                                    perturbation, cfg.is_sweep() ? Execution::Serial : Execution::Parallel);
        json j = st;
        j["dims"] = d;
        j["coloring"] = constant ? "constant" : "generic";
        return j;
      }, out, err);
    }
    if (mcl->parsed()) {
      return run_cells(cfg, true, true, [&](const Dims& d, std::uint64_t seed) {
        const PilotAssignment pa = build_pilot_sets(d);
        const LogDetEstimate est = mc_logdet(coloring_for(d, constant, seed), d, pa, samples, seed,
                                             cfg.is_sweep() ? Execution::Serial : Execution::Parallel);
        json j = est;
        j["dims"] = d;
        j["coloring"] = constant ? "constant" : "generic";
        return j;
      }, out, err);
    }
    if (ver->parsed()) {
      if (verify_nmax < 2) throw UsageError("--nmax must be at least 2");
      return verify_all(verify_nmax, out) ? kOk : kPropertyFailure;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidConfiguration& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kInvalidRegime;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace blockfade::cli
