#ifndef COAX_SERIALIZE_HPP
#define COAX_SERIALIZE_HPP

#include "coax/checks.hpp"

#include <json.hpp>

namespace coax {

using json = nlohmann::ordered_json;

// Symmetric matrices travel as flat arrays of the stored upper triangle:
// (xx, yy, zz, xy, xz, yz) for dim 3, (xx, yy, xy) for dim 2.
json toJson(const SymMatrix& m);
SymMatrix symMatrixFromJson(const json& j);

json toJson(const Invariants& inv);
json toJson(const GammaCoefficients& g);
json toJson(const BetaCoefficients& b);
json toJson(const PsiCoefficients& p);
json toJson(const Witness& w);
Witness witnessFromJson(const json& j);
json toJson(const SampleSpec& spec);
json toJson(const CheckReport& r);
json toJson(const ChainReport& r);
json toJson(const SsliResult& r);
json toJson(const SsliFuzzReport& r);
json toJson(const VolumetricProbeReport& r);
json toJson(const RegressionReport& r);

/// {"model": tag, "params": {...}}, parameter names matching the model
/// fields. Unknown tags or malformed parameters throw std::invalid_argument.
json modelToJson(const ResponseModel& model);
ResponseModel modelFromJson(const json& j);
ResponseModel makeModel(const std::string& tag, const json& params);

/// The canonical model instances the audits and the benchmark run over.
std::vector<ResponseModel> catalogModels();

/// Plain-text summary across models: one row per property of the
/// implication chain, one column per model, cells holds/fails(witness id).
std::string summaryTable(const std::vector<ChainReport>& reports);

/// Aligned-text renderings (6 significant digits).
std::string renderText(const CheckReport& r);
std::string renderText(const RegressionReport& r);

} // namespace coax

#endif
