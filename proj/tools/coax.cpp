// Command-line front end: constitutive-inequality checks, stress
// evaluation, uniaxial inversion, the fixed counterexample suite and the
// sum-of-squared-logarithms fuzzer.

#include "coax/serialize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using coax::json;

struct ModelFlags {
  std::string tag;
  std::optional<double> mu, lambda, kappa, k, khat, c1, c2, volKappa;
  std::optional<std::string> vol; // none | quadratic-log
  std::optional<std::string> f;   // monotone-log-norm choice

  void attach(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--model", tag, "model tag");
    if (required) opt->required();
    cmd->add_option("--mu", mu, "shear modulus");
    cmd->add_option("--lambda", lambda, "first Lame parameter");
    cmd->add_option("--kappa", kappa, "bulk modulus");
    cmd->add_option("--k", k, "deviatoric exponent weight");
    cmd->add_option("--khat", khat, "volumetric exponent weight");
    cmd->add_option("--c1", c1, "first invariant weight");
    cmd->add_option("--c2", c2, "second invariant weight");
    cmd->add_option("--vol", vol, "volumetric part kind (none, quadratic-log)");
    cmd->add_option("--vol-kappa", volKappa, "volumetric part stiffness");
    cmd->add_option("--f", f, "scalar function choice for monotone-log-norm");
  }

  json paramsJson() const {
    json p = json::object();
    if (mu) p["mu"] = *mu;
    if (lambda) p["lambda"] = *lambda;
    if (kappa) p["kappa"] = *kappa;
    if (k) p["k"] = *k;
    if (khat) p["khat"] = *khat;
    if (c1) p["c1"] = *c1;
    if (c2) p["c2"] = *c2;
    if (f) p["f"] = *f;
    if (vol || volKappa) {
      json v = json::object();
      v["kind"] = vol.value_or("quadratic-log");
      if (volKappa) v["kappa"] = *volKappa;
      p["f"] = v;
    }
    return p;
  }
};

// flags override config-file values override defaults
json mergedParams(const ModelFlags& flags, const json& configModel) {
  json params = json::object();
  if (configModel.is_object() && configModel.contains("params"))
    params = configModel.at("params");
  const json fromFlags = flags.paramsJson();
  for (auto it = fromFlags.begin(); it != fromFlags.end(); ++it)
    params[it.key()] = it.value();
  return params;
}

std::string resolveModelTag(const ModelFlags& flags, const json& configModel) {
  if (!flags.tag.empty()) return flags.tag;
  if (configModel.is_object() && configModel.contains("model"))
    return configModel.at("model").get<std::string>();
  if (configModel.is_string()) return configModel.get<std::string>();
  throw std::invalid_argument("no model given (flag --model or config)");
}

json loadConfig(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument("malformed config JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  return j;
}

std::uint64_t resolveSeed(const std::optional<std::uint64_t>& flagSeed,
                          const json& config) {
  if (flagSeed) return *flagSeed;
  if (config.contains("sample") && config.at("sample").contains("seed"))
    return config.at("sample").at("seed").get<std::uint64_t>();
  if (const char* env = std::getenv("COAXIAL_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("COAXIAL_SEED is not an integer");
    }
  }
  return 0;
}

void emit(const std::string& text, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(outPath, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + outPath);
  out << text;
}

std::string fmtLambda(const std::array<double, 3>& l) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << l[0] << ", " << l[1] << ", " << l[2] << ")";
  return os.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"isotropic stress-stretch constitutive checks"};
  app.require_subcommand(1);
  app.fallthrough(); // global flags may follow the subcommand

  std::string configPath, outPath;
  bool jsonOut = false;
  std::optional<std::uint64_t> seedFlag;
  app.add_option("--config", configPath, "JSON config file")->expected(1);
  app.add_flag("--json", jsonOut, "machine-readable output");
  app.add_option("--seed", seedFlag, "sampling seed");
  app.add_option("--out", outPath, "write the report to this path");

  // check ---------------------------------------------------------------
  auto* cmdCheck = app.add_subcommand("check", "run constitutive checks on a sampled sweep");
  ModelFlags checkModel;
  checkModel.attach(cmdCheck, false);
  std::vector<std::string> checkTags;
  long sampleCount = 10000;
  std::vector<double> lambdaRange;
  bool excludeSpherical = false, linearSampling = false, serialExec = false;
  cmdCheck->add_option("--checks", checkTags, "checks to run (be, be+, etss, wetss, bicoax, semi, chain)");
  cmdCheck->add_option("--n", sampleCount, "number of random samples");
  cmdCheck->add_option("--lambda-range", lambdaRange, "stretch range lo,hi")
      ->delimiter(',')
      ->expected(2);
  cmdCheck->add_flag("--exclude-spherical", excludeSpherical, "skip spherical stretches");
  cmdCheck->add_flag("--linear", linearSampling, "uniform instead of log-uniform stretches");
  cmdCheck->add_flag("--serial", serialExec, "serial sweep (reference kernel)");

  // stress --------------------------------------------------------------
  auto* cmdStress = app.add_subcommand("stress", "evaluate stress and coefficients at one state");
  ModelFlags stressModel;
  stressModel.attach(cmdStress, false);
  std::vector<double> bEntries, lambdaEntries;
  cmdStress->add_option("--b", bEntries, "stretch tensor entries xx,yy,zz,xy,xz,yz")
      ->delimiter(',')
      ->expected(6);
  cmdStress->add_option("--lambdas", lambdaEntries, "principal stretches l1,l2,l3")
      ->delimiter(',')
      ->expected(3);

  // invert --------------------------------------------------------------
  auto* cmdInvert = app.add_subcommand("invert", "solve a uniaxial-tension stress for the stretch");
  ModelFlags invertModel;
  invertModel.attach(cmdInvert, false);
  double uniaxialS = 0.0;
  cmdInvert->add_option("--s", uniaxialS, "uniaxial stress magnitude (>= 0)");

  // counterexamples -------------------------------------------------------
  auto* cmdCounter = app.add_subcommand("counterexamples", "run the fixed literature example suite");
  std::string onlyCase;
  cmdCounter->add_option("--only", onlyCase, "run a single case by id");

  // ssli ------------------------------------------------------------------
  auto* cmdSsli = app.add_subcommand("ssli", "sum-of-squared-logarithms inequality");
  std::vector<double> ssliA, ssliB;
  long ssliTrials = 100000;
  cmdSsli->add_option("--a", ssliA, "first triple a1,a2,a3")->delimiter(',')->expected(3);
  cmdSsli->add_option("--b", ssliB, "second triple b1,b2,b3")->delimiter(',')->expected(3);
  cmdSsli->add_option("--n", ssliTrials, "fuzz trial count (when no explicit pair)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return 2;
  }

  try {
    const json config = loadConfig(configPath);
    if (config.contains("output") && !jsonOut)
      jsonOut = config.at("output").get<std::string>() == "json";
    if (config.contains("out") && outPath.empty())
      outPath = config.at("out").get<std::string>();

    const json configModel = config.value("model", json());

    auto buildSpec = [&](bool forceExcludeSpherical) {
      coax::SampleSpec spec;
      const json cs = config.value("sample", json::object());
      spec.count = cs.value("count", spec.count);
      spec.lambdaLow = cs.value("lambda_low", spec.lambdaLow);
      spec.lambdaHigh = cs.value("lambda_high", spec.lambdaHigh);
      spec.logUniform = cs.value("log_uniform", spec.logUniform);
      spec.excludeSpherical = cs.value("exclude_spherical", spec.excludeSpherical);
      if (cmdCheck->count("--n")) spec.count = sampleCount;
      if (!lambdaRange.empty()) {
        spec.lambdaLow = lambdaRange[0];
        spec.lambdaHigh = lambdaRange[1];
      }
      if (linearSampling) spec.logUniform = false;
      if (excludeSpherical || forceExcludeSpherical) spec.excludeSpherical = true;
      spec.seed = resolveSeed(seedFlag, config);
      spec.validate();
      return spec;
    };

    if (*cmdCheck) {
      std::vector<std::string> tags = checkTags;
      if (tags.empty() && config.contains("checks"))
        tags = config.at("checks").get<std::vector<std::string>>();
      if (tags.empty())
        throw std::invalid_argument("no checks requested (--checks)");

      const coax::SampleSpec spec = buildSpec(false);
      const coax::Exec exec = serialExec ? coax::Exec::Serial : coax::Exec::OpenMP;

      std::vector<coax::ResponseModel> models;
      const std::string tag = resolveModelTag(checkModel, configModel);
      if (tag == "all")
        models = coax::catalogModels();
      else
        models.push_back(coax::makeModel(tag, mergedParams(checkModel, configModel)));

      bool allHold = true;
      json out = json::array();
      std::ostringstream text;
      std::vector<coax::ChainReport> chains;
      for (const coax::ResponseModel& model : models) {
        json perModel{{"model", coax::modelTag(model)},
                      {"sample", coax::toJson(spec)},
                      {"reports", json::array()}};
        for (const std::string& t : tags) {
          if (t == "chain") {
            const coax::ChainReport chain = coax::implicationAudit(model, spec, exec);
            allHold = allHold && chain.violations.empty();
            perModel["chain"] = coax::toJson(chain);
            chains.push_back(chain);
            continue;
          }
          const auto ineq = coax::inequalityFromTag(t);
          if (!ineq) throw std::invalid_argument("unknown check tag: " + t);
          const coax::CheckReport rep = coax::runInequalitySweep(model, *ineq, spec, exec);
          allHold = allHold && rep.holds;
          perModel["reports"].push_back(coax::toJson(rep));
          text << coax::renderText(rep);
        }
        out.push_back(perModel);
      }
      if (!chains.empty()) text << coax::summaryTable(chains);
      const json result = models.size() == 1 ? out[0] : json{{"models", out}};
      emit(jsonOut ? result.dump(2) + "\n" : text.str(), outPath);
      return allHold ? 0 : 1;
    }

    if (*cmdStress) {
      const std::string tag = resolveModelTag(stressModel, configModel);
      const coax::ResponseModel model =
          coax::makeModel(tag, mergedParams(stressModel, configModel));

      coax::SymMatrix b;
      if (!bEntries.empty())
        b = coax::SymMatrix::fromUpper(3, bEntries);
      else if (!lambdaEntries.empty())
        b = coax::SymMatrix::diagonal(std::array{
            lambdaEntries[0] * lambdaEntries[0], lambdaEntries[1] * lambdaEntries[1],
            lambdaEntries[2] * lambdaEntries[2]});
      else
        throw std::invalid_argument("stress: give --b or --lambdas");

      const coax::SymMatrix sigma = coax::cauchyStress(model, b);
      const coax::Invariants inv = coax::invariants(b);
      const coax::BetaCoefficients beta = coax::betaCoefficients(model, b);

      json j{{"model", coax::modelTag(model)},
             {"b", coax::toJson(b)},
             {"invariants", coax::toJson(inv)},
             {"sigma", coax::toJson(sigma)},
             {"beta", coax::toJson(beta)}};
      std::ostringstream text;
      text.precision(6);
      text << "model " << coax::modelTag(model) << "\n"
           << "invariants: i1 = " << inv.i1 << ", i2 = " << inv.i2
           << ", i3 = " << inv.i3 << "\n"
           << "sigma upper = " << coax::toJson(sigma).dump() << "\n"
           << "beta: beta_m1 = " << beta.betaMinus1 << ", beta_0 = " << beta.beta0
           << ", beta_1 = " << beta.beta1 << "\n";
      try {
        const coax::PsiCoefficients psi = coax::psiDirect(b, sigma);
        j["psi"] = coax::toJson(psi);
        text << "psi: psi_0 = " << psi.psi0 << ", psi_1 = " << psi.psi1
             << ", psi_2 = " << psi.psi2 << "\n";
      } catch (const coax::NotCoaxialError& e) {
        j["psi"] = nullptr;
        j["psi_error"] = e.what();
        text << "psi: unavailable (" << e.what() << ")\n";
      }
      emit(jsonOut ? j.dump(2) + "\n" : text.str(), outPath);
      return 0;
    }

    if (*cmdInvert) {
      const std::string tag = resolveModelTag(invertModel, configModel);
      const coax::ResponseModel model =
          coax::makeModel(tag, mergedParams(invertModel, configModel));
      if (uniaxialS < 0) throw std::invalid_argument("invert: --s must be >= 0");

      coax::PrincipalState state;
      try {
        state = coax::solveUniaxialTension(model, uniaxialS);
      } catch (const coax::ConvergenceError& e) {
        std::cerr << e.what() << "\n";
        return 1;
      }
      const double residual = coax::uniaxialResidual(model, state.lambdas, uniaxialS);
      const bool simpleExtension =
          std::abs(state.lambdas[1] - state.lambdas[2]) <=
          coax::clusterBand(state.lambdas[1], state.lambdas[2]);
      json j{{"model", coax::modelTag(model)},
             {"s", uniaxialS},
             {"lambdas", state.lambdas},
             {"residual", residual},
             {"simple_extension", simpleExtension}};
      std::ostringstream text;
      text.precision(6);
      text << "V = diag" << fmtLambda(state.lambdas) << ", residual = " << residual
           << (simpleExtension ? " (simple extension: lambda_2 = lambda_3)" : "")
           << "\n";
      emit(jsonOut ? j.dump(2) + "\n" : text.str(), outPath);
      return 0;
    }

    if (*cmdCounter) {
      coax::RegressionReport report = coax::counterexampleSuite();
      if (!onlyCase.empty()) {
        std::vector<coax::RegressionCase> filtered;
        for (const auto& c : report.cases)
          if (c.id == onlyCase) filtered.push_back(c);
        if (filtered.empty())
          throw std::invalid_argument("unknown case id: " + onlyCase);
        report.cases = filtered;
        report.allPass = filtered.front().pass;
      }
      emit(jsonOut ? coax::toJson(report).dump(2) + "\n" : coax::renderText(report),
           outPath);
      return report.allPass ? 0 : 1;
    }

    if (*cmdSsli) {
      if (!ssliA.empty() || !ssliB.empty()) {
        if (ssliA.size() != 3 || ssliB.size() != 3)
          throw std::invalid_argument("ssli: give both --a and --b triples");
        const coax::SsliResult r = coax::ssliCheck(
            {ssliA[0], ssliA[1], ssliA[2]}, {ssliB[0], ssliB[1], ssliB[2]});
        std::ostringstream text;
        text << "hypotheses " << (r.hypothesesHold ? "hold" : "do not hold")
             << ", conclusion " << (r.conclusionHolds ? "holds" : "VIOLATED")
             << ", margin " << r.conclusionMargin
             << (r.strict ? " (strict)" : "") << "\n";
        emit(jsonOut ? coax::toJson(r).dump(2) + "\n" : text.str(), outPath);
        return (r.hypothesesHold && !r.conclusionHolds) ? 1 : 0;
      }
      const std::uint64_t seed = resolveSeed(seedFlag, config);
      const coax::SsliFuzzReport r = coax::ssliFuzz(ssliTrials, seed);
      std::ostringstream text;
      text << "trials " << r.trials << ", hypothesis-satisfying "
           << r.hypothesisHolds << ", conclusion violations "
           << r.conclusionViolations << ", strictness misses "
           << r.strictnessMisses << ", worst margin " << r.worstMargin << "\n";
      emit(jsonOut ? coax::toJson(r).dump(2) + "\n" : text.str(), outPath);
      return (r.conclusionViolations == 0 && r.strictnessMisses == 0) ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
