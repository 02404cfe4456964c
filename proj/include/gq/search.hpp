#pragma once

// Isomorph-free exhaustive search for codes in the incidence graph: orderly
// generation of all codes with a prescribed side, size range and minimum
// distance up to the full automorphism group of the graph (duality included
// when the field size is even), optional maximality and transitivity filters,
// and an exact branch-and-bound maximum-size search for distance >= 3 codes.
//
// Equivalence is decided by brute force against the fully enumerated group,
// which keeps every result exact but limits the supported field sizes: q <= 3
// is the designed range; q = 4, 5 work on the same code path when the group
// enumeration fits the element cap and available memory.

#include <cstdint>
#include <string>
#include <vector>

#include "gq/codegraph.hpp"
#include "gq/groupaction.hpp"

namespace gq {

struct SearchSpec {
    int q = 2;
    Side side = Side::Lines;
    int size_min = 1;              // inclusive
    int size_max = 1;              // inclusive; equal to size_min for a single target
    int delta_min = 4;             // 3 or 4; pairwise graph distance >= delta_min
    bool nt_filter = false;        // keep only neighbour-transitive classes
    bool maximal_only = false;     // keep only non-extendable codes (rho <= 3)
    int workers = 1;               // threads over top-level branches
    // Optional alternative total order of the vertices (a permutation of
    // 0..n-1; vertex_order[i] is the vertex at position i).  Lexicographic
    // comparisons and the extension order follow this order; the identity is
    // used when empty.  Class counts are independent of the choice.
    std::vector<int> vertex_order;
};

// Per-representative analysis, recomputed from scratch for every survivor.
struct CodeAnalysis {
    Code code;
    int delta = 0;                 // 0 when |C| < 2
    int rho = -1;
    std::string classification;    // classify().describe(); empty for mixed codes
    bool is_nt = false;
    std::uint64_t stabiliser_order = 0;
    std::string family;            // matched catalogue family, empty when unmatched
    int completions = -1;          // spread_completion_search: number of closing lines
    bool completion_regular = false;
};

struct SearchReport {
    std::vector<CodeAnalysis> representatives; // sorted by (size, members)
    std::uint64_t aut_order = 0;   // order of the equivalence group
    std::uint64_t nodes = 0;       // orbit-minimality tests performed
    double seconds = 0.0;
    bool all_classified = true;    // enumerate_nt_maximal: every survivor matched
    int max_size = 0;              // max_delta3_code: exact maximum
    int target_size = 0;           // max_delta3_code: the bound under test
    bool reaches_target = false;
    bool witness_mixed_distance3 = false; // witness attains distance 3 on a mixed pair
};

// The full automorphism group of the standard graph for this q, cached for
// the lifetime of the process (the expensive element enumeration inside the
// group object is shared by all users).
const PermGroup& ambient_group(int q);

// Lexicographically least sorted image of the member set over the whole
// group.  Two codes on the same graph are equivalent iff their canonical
// forms agree; a side-swapping group merges point and line codes.
std::vector<int> canonical_form(const Code& code, const PermGroup& group);

// The canonical prefixes (of size min(2, size_max)) that root independent
// search branches.  Exploring every branch reaches each equivalence class
// exactly once; branches can be distributed or resumed freely.
std::vector<std::vector<int>> search_branches(const SearchSpec& spec);

// Exhaustive exploration of one branch: every representative whose canonical
// prefix equals `branch`, fully filtered and analysed.
SearchReport explore_branch(const SearchSpec& spec, const std::vector<int>& branch);

// Orderly generation over all branches: exactly one representative per
// equivalence class of codes matching the given SearchSpec.  Mixed side requires
// delta_min = 3 (an even-girth bipartite graph has no mixed code with all
// pairwise distances 4).
SearchReport enumerate_codes(const SearchSpec& spec);

// All maximal partial ovoids and maximal partial spreads up to equivalence
// (q <= 3), the exact transitivity decision for each, and a comparison of
// every neighbour-transitive survivor against the constructed catalogue
// (regular spread, the q^2-1 family, the hyperbolic line, and the five-line
// code at q = 3).  all_classified reports whether every survivor matched.
SearchReport enumerate_nt_maximal(int q);

// Exact maximum size of a code with all pairwise distances >= 3 (mixed codes
// allowed), by branch-and-bound maximum clique over the compatibility graph
// on all 2(q+1)(q^2+1) vertices; q in {2, 3}.  target <= 0 selects the bound
// 2(q^2-q+1).  The witness is re-verified and reported.
SearchReport max_delta3_code(int q, int target = 0);

// Neighbour-transitive line codes of size q^2 with minimum distance 4, up to
// equivalence (q <= 3), each tested for completion: the number of lines at
// distance 4 from every member is reported, and when that completion is
// unique the completed size-(q^2+1) spread is compared against the regular
// spread (completion_regular).
SearchReport spread_completion_search(int q);

} // namespace gq
