#pragma once

#include "sumsetlab/bohr.hpp"
#include "sumsetlab/freiman.hpp"
#include "sumsetlab/pipelines.hpp"
#include "sumsetlab/sampling.hpp"

#include <json.hpp>

namespace sumsetlab {

using nlohmann::json;

// JSON encodings of library results. Doubles that are not finite become null.

json element_json(const GroupSpec &g, Index x);
json set_json(const ElementSet &s);

void to_json(json &j, const ConstantsConfig &c);
void to_json(json &j, const ProgressionWitness &w);
void to_json(json &j, const BohrDescriptor &b);
void to_json(json &j, const PeriodicityReport &r);
void to_json(json &j, const ChangReduction &c);
void to_json(json &j, const BootstrapReport &r);
void to_json(json &j, const ProgressionReport &r);
void to_json(json &j, const BogolyubovReport &r);
void to_json(json &j, const LongestAp &a);
void to_json(json &j, const BoundTable &t);
void to_json(json &j, const XiChoice &c);
void to_json(json &j, const IsoCheck &c);
void to_json(json &j, const EmbeddingCertificate &c);
void to_json(json &j, const SampleReport &r);
void to_json(json &j, const FailureReport &r);
void to_json(json &j, const Rational &r);

} // namespace sumsetlab
