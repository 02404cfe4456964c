#pragma once

// JSON report builders shared by the command-line tool and the python
// bindings.  JSON is the single interchange format; the *_text renderers
// parse a JSON report and format it for humans, so the two views can never
// disagree.  Every report carries "format": 1.

#include <string>
#include <vector>

#include "gq/codegraph.hpp"
#include "gq/constructions.hpp"
#include "gq/groupaction.hpp"
#include "gq/search.hpp"
#include "gq/verify.hpp"

namespace gq {

// Metric report for a code: size, side, distance partition, classification,
// and the counting identities where they apply (unmixed, minimum distance 4).
// The "metrics" sub-object {classification, delta, rho, size} uses exactly
// the same keys and value conventions as a construction's claimed block, so
// claim/measurement comparisons are byte-exact.
std::string analyze_report_json(const Code& code, int indent = 2);
std::string analyze_report_text(const std::string& report_json);

// Construction description: name, parameters, and the claimed metrics block.
std::string construct_report_json(const ConstructionResult& r, int indent = 2);
std::string construct_report_text(const std::string& report_json);

// Exact transitivity decision.
std::string decide_report_json(const NTDecision& d, int indent = 2);
std::string decide_report_text(const std::string& report_json);

// Certificate replay outcome: the stored orbit data plus whether an
// independent recomputation reproduces it.
std::string certify_report_json(const NTCertificate& cert, bool replay_ok, int indent = 2);
std::string certify_report_text(const std::string& report_json);

// Aggregate search outcome with one analysis entry per equivalence class.
std::string search_summary_json(const SearchReport& report, int indent = 2);
std::string search_summary_text(const std::string& report_json);

// Verification catalogue results.
std::string claims_report_json(const std::vector<ClaimResult>& results, int indent = 2);
std::string claims_report_text(const std::string& report_json);

} // namespace gq
