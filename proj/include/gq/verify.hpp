#pragma once

// One-shot verification catalogue.  Each claim re-derives, from scratch, a
// quantitative property the library's constructions and searches are expected
// to satisfy — metric values, classification counts, group orders, divisibility
// facts — and is timed against a pinned wall-clock budget.  The CLI's verify
// subcommand and the acceptance binary both run this catalogue; nothing in
// here feeds results back into the library.

#include <string>
#include <vector>

namespace gq {

struct ClaimResult {
    std::string tag;     // stable identifier, e.g. "spread-metrics"
    std::string summary; // what the claim asserts
    std::string detail;  // what was established, or the first failure
    bool pass = false;
    double seconds = 0.0;
    double budget_seconds = 0.0; // wall-clock budget for the whole claim
    bool within_budget = true;
    bool ok() const { return pass && within_budget; }
};

// Tags in catalogue order.
std::vector<std::string> claim_tags();

// Summary line for one tag; Error on unknown tag.
std::string claim_summary(const std::string& tag);

// Run one claim.  `workers` is forwarded to the search-based claims; it never
// changes results, only wall-clock time.  Error on unknown tag; computational
// failures are recorded in the result, not thrown.
ClaimResult verify_claim(const std::string& tag, int workers = 1);

// Run several claims (empty list: the whole catalogue, in order).
std::vector<ClaimResult> verify_claims(const std::vector<std::string>& tags = {},
                                       int workers = 1);

} // namespace gq
