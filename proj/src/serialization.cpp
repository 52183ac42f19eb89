#include "blockfade/serialization.hpp"

namespace blockfade {

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("matrix must be an array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows ? static_cast<Index>(j[0].size()) : 0;
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (static_cast<Index>(j[i].size()) != cols) throw ShapeError("ragged matrix rows");
    for (Index k = 0; k < cols; ++k) {
      const json& e = j[i][k];
      if (!e.is_array() || e.size() != 2) throw InvalidInput("complex entry must be [re, im]");
      m(i, k) = {e[0].get<double>(), e[1].get<double>()};
    }
  }
  return m;
}

json rational_to_json(const Rational& q) { return {{"exact", to_fraction(q)}, {"decimal", to_double(q)}}; }

void to_json(json& j, const Dims& d) {
  j = {{"T", d.T}, {"R", d.R}, {"N", d.N}, {"Q", d.Q}, {"T_eff", d.T_eff}};
}

void from_json(const json& j, Dims& d) {
  d = Dims::make(j.at("T").get<int>(), j.at("R").get<int>(), j.at("N").get<int>(),
                 j.at("Q").get<int>(), j.at("T_eff").get<int>());
}

void to_json(json& j, const ColoringMatrix& z) {
  j = {{"R", z.receive()}, {"T", z.transmit()}, {"N", z.coherence()}, {"Q", z.rank()},
       {"stacked", matrix_to_json(z.stacked())}};
}

void from_json(const json& j, ColoringMatrix& z) {
  ColoringMatrix out(matrix_from_json(j.at("stacked")), j.at("R").get<int>(), j.at("T").get<int>());
  if (out.coherence() != j.at("N").get<int>() || out.rank() != j.at("Q").get<int>())
    throw ShapeError("stacked matrix does not match the declared block size");
  z = std::move(out);
}

void to_json(json& j, const PilotAssignment& pa) {
  j = {{"dims", pa.dims}, {"theta_R", pa.theta}, {"ell", pa.ell}, {"P_t", pa.P_t},
       {"D_t", pa.D_t},   {"P", pa.P},           {"D", pa.D},     {"I", pa.I},
       {"J", pa.J}};
  if (pa.partition) {
    const ReceivePartition& p = *pa.partition;
    j["partition"] = {{"theta_prev", p.theta_prev}, {"P_prev_t", p.P_prev}, {"L_t", p.L},
                      {"L", p.L_all},               {"G", p.G},             {"g_t", p.g},
                      {"G_t", p.G_t}};
  }
}

void from_json(const json& j, PilotAssignment& pa) {
  pa.dims = j.at("dims").get<Dims>();
  pa.theta = j.at("theta_R").get<long>();
  pa.ell = j.at("ell").get<long>();
  j.at("P_t").get_to(pa.P_t);
  j.at("D_t").get_to(pa.D_t);
  j.at("P").get_to(pa.P);
  j.at("D").get_to(pa.D);
  j.at("I").get_to(pa.I);
  j.at("J").get_to(pa.J);
  pa.partition.reset();
  if (j.contains("partition")) {
    const json& p = j.at("partition");
    ReceivePartition part;
    part.theta_prev = p.at("theta_prev").get<long>();
    p.at("P_prev_t").get_to(part.P_prev);
    p.at("L_t").get_to(part.L);
    p.at("L").get_to(part.L_all);
    p.at("G").get_to(part.G);
    p.at("g_t").get_to(part.g);
    p.at("G_t").get_to(part.G_t);
    pa.partition = std::move(part);
  }
}

void to_json(json& j, const PropertyReport& rep) {
  j = json::array();
  for (const auto& c : rep.checks) {
    json e = {{"property", c.name}, {"passed", c.passed}};
    if (!c.passed) e["counterexample"] = c.detail;
    j.push_back(std::move(e));
  }
}

void to_json(json& j, const DofReport& rep) {
  j = {{"dims", rep.dims},
       {"M", rep.M},
       {"chi_const", rational_to_json(rep.chi_const)},
       {"chi_gen_upper", rational_to_json(rep.chi_gen_upper)},
       {"chi_low_of_Teff", rational_to_json(rep.chi_low_of_teff)},
       {"chi_low_star", rational_to_json(rep.chi_low_star)},
       {"T_opt", rational_to_json(rep.T_opt)},
       {"eta", rational_to_json(rep.eta)},
       {"ell", rep.ell},
       {"theta_R", rep.theta},
       {"in_proof_regime", rep.in_proof_regime}};
  j["chi_gen"] = rep.chi_gen ? rational_to_json(*rep.chi_gen) : json(nullptr);
}

void to_json(json& j, const ProbeStats& st) {
  j = {{"trials", st.trials},
       {"nonsingular", st.nonsingular},
       {"fraction_nonsingular", st.fraction_nonsingular()},
       {"min_det_abs", st.min_det_abs ? json(*st.min_det_abs) : json(nullptr)},
       {"min_sigma_ratio", st.min_sigma_ratio ? json(*st.min_sigma_ratio) : json(nullptr)}};
}

void to_json(json& j, const TrialSummary& st) {
  j = {{"trials", st.trials},
       {"success_rate", st.success_rate()},
       {"converged_rate", st.converged_rate()},
       {"median_residual", st.median_residual},
       {"median_param_error", st.median_param_error}};
}

void to_json(json& j, const LogDetEstimate& est) {
  j = {{"mean", est.mean},
       {"stderr", est.std_error},
       {"samples", est.samples},
       {"clipped_fraction", est.clipped_fraction}};
}

void to_json(json& j, const EntropyChainReport& rep) {
  j = {{"dims", rep.dims},
       {"coefficient", rep.coefficient},
       {"coefficient_via_ell", rep.coefficient_via_ell},
       {"per_symbol", rational_to_json(rep.per_symbol)},
       {"chi_low", rational_to_json(rep.chi_low)},
       {"trivial", rep.trivial},
       {"useful_outputs", rep.useful_outputs},
       {"bezout_exponent", rep.bezout_exponent}};
}

}  // namespace blockfade
