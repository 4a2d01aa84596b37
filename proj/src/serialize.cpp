#include "coax/serialize.hpp"

#include <iomanip>
#include <sstream>

namespace coax {

json toJson(const SymMatrix& m) { return json(m.upper()); }

SymMatrix symMatrixFromJson(const json& j) {
  if (!j.is_array() || (j.size() != 6 && j.size() != 3))
    throw std::invalid_argument("symmetric matrix: expected 6 (dim 3) or 3 (dim 2) scalars");
  std::vector<double> vals = j.get<std::vector<double>>();
  return SymMatrix::fromUpper(vals.size() == 6 ? 3 : 2, vals);
}

json toJson(const Invariants& inv) {
  return json{{"i1", inv.i1}, {"i2", inv.i2}, {"i3", inv.i3}};
}

json toJson(const GammaCoefficients& g) {
  return json{{"gamma_0", g.gamma[0]},
              {"gamma_1", g.gamma[1]},
              {"gamma_2", g.gamma[2]},
              {"ill_conditioned", g.illConditioned},
              {"condition_estimate", g.conditionEstimate}};
}

json toJson(const BetaCoefficients& b) {
  return json{{"beta_m1", b.betaMinus1}, {"beta_0", b.beta0}, {"beta_1", b.beta1}};
}

json toJson(const PsiCoefficients& p) {
  return json{{"psi_0", p.psi0},
              {"psi_1", p.psi1},
              {"psi_2", p.psi2},
              {"closed_form_agrees", p.printedFormulaAgrees},
              {"closed_form_residual", p.printedFormulaResidual}};
}

json toJson(const Witness& w) {
  return json{{"b", toJson(w.b)},
              {"sigma", toJson(w.sigma)},
              {"margins", w.margins},
              {"note", w.note}};
}

Witness witnessFromJson(const json& j) {
  Witness w;
  w.b = symMatrixFromJson(j.at("b"));
  w.sigma = symMatrixFromJson(j.at("sigma"));
  w.margins = j.value("margins", std::vector<double>{});
  w.note = j.value("note", std::string{});
  return w;
}

json toJson(const SampleSpec& spec) {
  return json{{"count", spec.count},
              {"lambda_low", spec.lambdaLow},
              {"lambda_high", spec.lambdaHigh},
              {"log_uniform", spec.logUniform},
              {"seed", spec.seed},
              {"exclude_spherical", spec.excludeSpherical}};
}

json toJson(const CheckReport& r) {
  json j{{"check", inequalityTag(r.inequality)},
         {"model", r.model},
         {"verdict", r.holds ? "holds-on-sample" : "fails"},
         {"samples_tested", r.samplesTested},
         {"samples_skipped", r.samplesSkipped},
         {"seed", r.seed}};
  json ws = json::array();
  for (const Witness& w : r.witnesses) ws.push_back(toJson(w));
  j["witnesses"] = ws;
  if (r.hasUniformInfo)
    j["uniform_strictness"] = json{{"beta_m1", r.uniformStrictMinus},
                                   {"beta_1", r.uniformStrictPlus}};
  return j;
}

json toJson(const ChainReport& r) {
  json props = json::array();
  for (const PropertySummary& p : r.properties) {
    json pj{{"check", inequalityTag(p.inequality)},
            {"verdict", p.holds ? "holds-on-sample" : "fails"},
            {"failures", p.failures},
            {"skipped", p.skipped}};
    if (p.witness) pj["witness"] = toJson(*p.witness);
    props.push_back(pj);
  }
  json viols = json::array();
  for (const ChainViolation& v : r.violations)
    viols.push_back(json{{"link", v.link}, {"witness", toJson(v.witness)}});
  return json{{"model", r.model},
              {"samples_tested", r.samplesTested},
              {"seed", r.seed},
              {"chain_sound", r.violations.empty()},
              {"violations", viols},
              {"properties", props},
              {"notes", r.notes}};
}

json toJson(const SsliResult& r) {
  return json{{"hypotheses_hold", r.hypothesesHold},
              {"conclusion_holds", r.conclusionHolds},
              {"strict", r.strict},
              {"conclusion_margin", r.conclusionMargin}};
}

json toJson(const SsliFuzzReport& r) {
  return json{{"trials", r.trials},
              {"hypothesis_holds", r.hypothesisHolds},
              {"conclusion_violations", r.conclusionViolations},
              {"strictness_misses", r.strictnessMisses},
              {"worst_margin", r.worstMargin}};
}

json toJson(const VolumetricProbeReport& r) {
  json samples = json::array();
  for (const auto& [l, g] : r.samples) samples.push_back(json::array({l, g}));
  json j{{"bound", r.bound},
         {"pressure_monotone", r.pressureMonotone},
         {"samples", samples}};
  if (r.firstExceeded)
    j["first_exceeded"] = *r.firstExceeded;
  else
    j["first_exceeded"] = nullptr;
  return j;
}

json toJson(const RegressionReport& r) {
  json cases = json::array();
  for (const RegressionCase& c : r.cases)
    cases.push_back(json{{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}});
  return json{{"all_pass", r.allPass}, {"cases", cases}};
}

// ---- model specs ---------------------------------------------------------------

namespace {

json toJson(const VolumetricPart& v) {
  if (v.kind == VolumetricPart::Kind::None) return json{{"kind", "none"}};
  return json{{"kind", "quadratic-log"}, {"kappa", v.kappa}};
}

VolumetricPart volumetricFromJson(const json& j, VolumetricPart fallback) {
  if (j.is_null()) return fallback;
  VolumetricPart v;
  const std::string kind = j.value("kind", std::string("quadratic-log"));
  if (kind == "none") {
    v.kind = VolumetricPart::Kind::None;
  } else if (kind == "quadratic-log") {
    v.kind = VolumetricPart::Kind::QuadraticLog;
    v.kappa = j.value("kappa", 1.0);
  } else {
    throw std::invalid_argument("unknown volumetric kind: " + kind);
  }
  return v;
}

} // namespace

json modelToJson(const ResponseModel& model) {
  json params = json::object();
  std::string tag;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, QuadraticHencky>) {
          tag = "quadratic-hencky";
          params = {{"mu", m.mu}, {"lambda", m.lambda}};
        } else if constexpr (std::is_same_v<T, ExponentialHencky>) {
          tag = "exponential-hencky";
          params = {{"mu", m.mu}, {"k", m.k}, {"kappa", m.kappa}, {"khat", m.khat}};
        } else if constexpr (std::is_same_v<T, LogNormSquared>) {
          tag = "log-norm-squared";
        } else if constexpr (std::is_same_v<T, MonotoneOfLogNorm>) {
          tag = "monotone-log-norm";
          params = {{"f", m.name}};
        } else if constexpr (std::is_same_v<T, HenckyType>) {
          tag = "hencky-type";
          params = {{"w", m.name}};
        } else if constexpr (std::is_same_v<T, NeoHookeCompressible>) {
          tag = "neo-hooke";
          params = {{"mu", m.mu}, {"f", toJson(m.vol)}};
        } else if constexpr (std::is_same_v<T, MooneyRivlinCompressible>) {
          tag = "mooney-rivlin";
          params = {{"c1", m.c1}, {"c2", m.c2}, {"f", toJson(m.vol)}};
        } else if constexpr (std::is_same_v<T, IsoVolSplit>) {
          tag = "iso-vol-split";
          params = {{"c1", m.c1}, {"c2", m.c2}, {"f", toJson(m.vol)}};
        } else if constexpr (std::is_same_v<T, DirectDev3>) {
          tag = "dev3";
        } else if constexpr (std::is_same_v<T, DirectIdMinusB>) {
          tag = "id-minus-b";
        } else {
          tag = "marzano";
        }
      },
      model);
  return json{{"model", tag}, {"params", params}};
}

ResponseModel makeModel(const std::string& tag, const json& params) {
  auto get = [&](const char* key, double dflt) {
    return params.is_object() ? params.value(key, dflt) : dflt;
  };
  auto vol = [&](VolumetricPart fallback) {
    if (!params.is_object() || !params.contains("f")) return fallback;
    return volumetricFromJson(params.at("f"), fallback);
  };
  const VolumetricPart qlog{VolumetricPart::Kind::QuadraticLog, 1.0};
  const VolumetricPart none{};

  ResponseModel model;
  if (tag == "quadratic-hencky") {
    model = QuadraticHencky{get("mu", 1.0), get("lambda", 0.0)};
  } else if (tag == "exponential-hencky") {
    model = ExponentialHencky{get("mu", 1.0), get("k", 1.0), get("kappa", 1.0),
                              get("khat", 1.0)};
  } else if (tag == "log-norm-squared") {
    model = LogNormSquared{};
  } else if (tag == "monotone-log-norm") {
    const std::string f =
        params.is_object() ? params.value("f", std::string("exp")) : "exp";
    if (f != "exp")
      throw std::invalid_argument("monotone-log-norm: unknown f '" + f + "'");
    model = makeExpOfLogNorm();
  } else if (tag == "hencky-type") {
    const std::string w =
        params.is_object() ? params.value("w", std::string("poly")) : "poly";
    if (w != "poly")
      throw std::invalid_argument("hencky-type: unknown w '" + w + "'");
    model = makePolyHenckyType();
  } else if (tag == "neo-hooke") {
    model = NeoHookeCompressible{get("mu", 1.0), vol(qlog)};
  } else if (tag == "mooney-rivlin") {
    model = MooneyRivlinCompressible{get("c1", 1.0), get("c2", 1.0), vol(none)};
  } else if (tag == "iso-vol-split") {
    model = IsoVolSplit{get("c1", 1.0), get("c2", 1.0), vol(qlog)};
  } else if (tag == "dev3") {
    model = DirectDev3{};
  } else if (tag == "id-minus-b") {
    model = DirectIdMinusB{};
  } else if (tag == "marzano") {
    model = MarzanoCounterexample{};
  } else {
    throw std::invalid_argument("unknown model tag: " + tag);
  }
  validateModel(model);
  return model;
}

ResponseModel modelFromJson(const json& j) {
  if (!j.is_object() || !j.contains("model"))
    throw std::invalid_argument("model spec: expected {\"model\": tag, \"params\": {...}}");
  return makeModel(j.at("model").get<std::string>(),
                   j.value("params", json::object()));
}

std::vector<ResponseModel> catalogModels() {
  return {
      QuadraticHencky{1.0, 0.0},
      ExponentialHencky{1.0, 1.0, 1.0, 1.0},
      LogNormSquared{},
      makeExpOfLogNorm(),
      makePolyHenckyType(),
      NeoHookeCompressible{1.0, {VolumetricPart::Kind::QuadraticLog, 1.0}},
      MooneyRivlinCompressible{1.0, 1.0, {}},
      IsoVolSplit{1.0, 1.0, {VolumetricPart::Kind::QuadraticLog, 1.0}},
      DirectDev3{},
      DirectIdMinusB{},
      MarzanoCounterexample{},
  };
}

// ---- text rendering ------------------------------------------------------------

namespace {

std::string fmt6(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string matrixOneLine(const SymMatrix& m) {
  std::ostringstream os;
  os << "[";
  const std::vector<double> u = m.upper();
  for (std::size_t i = 0; i < u.size(); ++i)
    os << (i ? ", " : "") << fmt6(u[i]);
  os << "]";
  return os.str();
}

} // namespace

std::string summaryTable(const std::vector<ChainReport>& reports) {
  const std::vector<std::string> rows{"be",     "be+",    "etss", "wetss",
                                      "bicoax", "semi",   "chain"};
  const std::vector<std::string> rowLabels{
      "BE", "BE+", "E-TSS", "WE-TSS", "bi-coaxial", "semi-invertible", "chain"};

  std::vector<std::string> witnessLegend;
  auto cell = [&](const ChainReport& r, std::size_t row) -> std::string {
    if (row == 6) return r.violations.empty() ? "ok" : "VIOLATED";
    // properties order matches the rows: BE, BE+, E-TSS, WE-TSS, bicoax, semi
    const PropertySummary& ps = r.properties[row];
    if (ps.holds) return "holds";
    std::string id = "f" + std::to_string(witnessLegend.size() + 1);
    if (ps.witness)
      witnessLegend.push_back(id + ": " + r.model + " " +
                              inequalityTag(ps.inequality) + " at B = " +
                              matrixOneLine(ps.witness->b) + " (" +
                              ps.witness->note + ")");
    return "fails(" + id + ")";
  };

  std::size_t labelWidth = 0;
  for (const auto& l : rowLabels) labelWidth = std::max(labelWidth, l.size());
  std::vector<std::size_t> colWidth(reports.size());
  std::vector<std::vector<std::string>> cells(rows.size(),
                                              std::vector<std::string>(reports.size()));
  for (std::size_t c = 0; c < reports.size(); ++c) {
    colWidth[c] = reports[c].model.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      cells[r][c] = cell(reports[c], r);
      colWidth[c] = std::max(colWidth[c], cells[r][c].size());
    }
  }

  std::ostringstream os;
  os << std::string(labelWidth, ' ');
  for (std::size_t c = 0; c < reports.size(); ++c)
    os << "  " << reports[c].model
       << std::string(colWidth[c] - reports[c].model.size(), ' ');
  os << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << rowLabels[r] << std::string(labelWidth - rowLabels[r].size(), ' ');
    for (std::size_t c = 0; c < reports.size(); ++c)
      os << "  " << cells[r][c]
         << std::string(colWidth[c] - cells[r][c].size(), ' ');
    os << "\n";
  }
  if (!witnessLegend.empty()) {
    os << "\n";
    for (const auto& l : witnessLegend) os << l << "\n";
  }
  return os.str();
}

std::string renderText(const CheckReport& r) {
  std::ostringstream os;
  os << "check " << inequalityTag(r.inequality) << " on " << r.model << ": "
     << (r.holds ? "holds-on-sample" : "FAILS") << "\n";
  os << "  samples tested " << r.samplesTested << ", skipped "
     << r.samplesSkipped << ", seed " << r.seed << "\n";
  if (r.hasUniformInfo)
    os << "  uniform strictness: beta_m1 "
       << (r.uniformStrictMinus ? "strict" : "not uniform") << ", beta_1 "
       << (r.uniformStrictPlus ? "strict" : "not uniform") << "\n";
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    const Witness& w = r.witnesses[i];
    os << "  witness " << i + 1 << " (" << w.note << "): B = "
       << matrixOneLine(w.b) << ", sigma = " << matrixOneLine(w.sigma)
       << ", margins = [";
    for (std::size_t k = 0; k < w.margins.size(); ++k)
      os << (k ? ", " : "") << fmt6(w.margins[k]);
    os << "]\n";
  }
  return os.str();
}

std::string renderText(const RegressionReport& r) {
  std::ostringstream os;
  std::size_t idWidth = 0;
  for (const RegressionCase& c : r.cases) idWidth = std::max(idWidth, c.id.size());
  for (const RegressionCase& c : r.cases)
    os << (c.pass ? "PASS  " : "FAIL  ") << c.id
       << std::string(idWidth - c.id.size(), ' ') << "  " << c.detail << "\n";
  os << (r.allPass ? "all cases confirmed" : "SOME CASES FAILED") << "\n";
  return os.str();
}

} // namespace coax
