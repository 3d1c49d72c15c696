#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "orbivol/covolume.hpp"
#include "orbivol/sieve.hpp"
#include "orbivol/zeta.hpp"

namespace orbivol {

using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings; intervals as exact hex endpoints plus a
// decimal annotation that is ignored on input.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const RealInterval& x);
RealInterval interval_from_json(const Json& j);

Json to_json(const LocalPlaceData& v);
LocalPlaceData place_from_json(const Json& j, int rank);
Json to_json(const ZetaValue& z);
ZetaValue zeta_value_from_json(const Json& j);
Json to_json(const ChiResult& c);
Json to_json(const CandidateReport& r, int rank);
CandidateReport candidate_from_json(const Json& j, int rank);
Json to_json(const ManifoldCandidate& m);
ManifoldCandidate manifold_candidate_from_json(const Json& j);

// short decimal annotation of a rational, e.g. "1.3888888889e-04"
std::string decimal(const Rational& q, int digits = 10);

// Text table with left-aligned columns separated by two spaces.
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

std::string render_sieve_text(const SieveOutcome& outcome, const std::vector<ManifoldCandidate>& candidates);
// one JSON object per line: a summary line, one line per report, one per candidate
std::string render_sieve_jsonl(const SieveOutcome& outcome, const std::vector<ManifoldCandidate>& candidates, int rank);

}  // namespace orbivol
