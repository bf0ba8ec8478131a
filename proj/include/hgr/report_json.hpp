#pragma once

#include "hgr/expansion.hpp"
#include "hgr/gadget.hpp"
#include "hgr/kahale.hpp"
#include "hgr/linkage.hpp"
#include "hgr/spectral.hpp"
#include "json.hpp"

namespace hgr {

using Json = nlohmann::json;

void to_json(Json& j, const PipelineReport& r);
void to_json(Json& j, const SpectrumReport& r);
void to_json(Json& j, const MultisetMatch& r);
void to_json(Json& j, const IharaBassReport& r);
void to_json(Json& j, const XRadiusReport& r);
void to_json(Json& j, const TraceBoundReport& r);
void to_json(Json& j, const SubsolutionReport& r);
void to_json(Json& j, const LemmaReport& r);
void to_json(Json& j, const ExpansionReport& r);
void to_json(Json& j, const MixingAudit& r);
void to_json(Json& j, const MooreReport& r);
void to_json(Json& j, const SmallSetAudit& r);
void to_json(Json& j, const LayerMass& r);

/// Kahale vector summary: per-layer sums and branch counts, not every entry.
Json kahale_summary(const KahaleVector& s);

}  // namespace hgr
