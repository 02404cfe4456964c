#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gq/constructions.hpp"
#include "gq/search.hpp"

using namespace gq;

namespace {

// Number of k-subsets of one side with all pairwise distances >= 4, counted
// by plain depth-first enumeration without any symmetry reduction.
long long naive_count(const GraphPtr& g, bool points, int k,
                      std::vector<int>& chosen, int from) {
    if (static_cast<int>(chosen.size()) == k) return 1;
    long long total = 0;
    const int lo = points ? from : std::max(from, g->num_points);
    const int hi = points ? g->num_points : g->n;
    for (int v = lo; v < hi; ++v) {
        bool ok = true;
        for (int u : chosen)
            if (g->distance(u, v) < 4) {
                ok = false;
                break;
            }
        if (!ok) continue;
        chosen.push_back(v);
        total += naive_count(g, points, k, chosen, v + 1);
        chosen.pop_back();
    }
    return total;
}

long long naive_count(const GraphPtr& g, bool points, int k) {
    std::vector<int> chosen;
    return naive_count(g, points, k, chosen, 0);
}

// Exhaustive maximum size of a set with pairwise distances >= 3 (both sides
// admitted), pruned only by the remaining-vertex count.
void naive_max3(const GraphPtr& g, std::vector<int>& chosen, int from, int& best) {
    if (static_cast<int>(chosen.size()) > best) best = static_cast<int>(chosen.size());
    for (int v = from; v < g->n; ++v) {
        if (static_cast<int>(chosen.size()) + (g->n - v) <= best) return;
        bool ok = true;
        for (int u : chosen)
            if (g->distance(u, v) < 3) {
                ok = false;
                break;
            }
        if (!ok) continue;
        chosen.push_back(v);
        naive_max3(g, chosen, v + 1, best);
        chosen.pop_back();
    }
}

Code image_code(const Code& code, const VertexPerm& g) {
    std::vector<int> members;
    members.reserve(code.members.size());
    for (int v : code.members) members.push_back(g[v]);
    return Code(code.graph, members);
}

std::multiset<std::vector<int>> canonical_multiset(const SearchReport& report,
                                                   const PermGroup& group) {
    std::multiset<std::vector<int>> forms;
    for (const CodeAnalysis& a : report.representatives)
        forms.insert(canonical_form(a.code, group));
    return forms;
}

SearchSpec line_spec(int q, int size_min, int size_max) {
    SearchSpec s;
    s.q = q;
    s.side = Side::Lines;
    s.size_min = size_min;
    s.size_max = size_max;
    return s;
}

} // namespace

TEST_CASE("search: specification validation") {
    SearchSpec s = line_spec(2, 1, 5);
    CHECK_NOTHROW(enumerate_codes(s));

    s = line_spec(7, 1, 2);
    CHECK_THROWS_AS(enumerate_codes(s), Error);
    s = line_spec(1, 1, 2);
    CHECK_THROWS_AS(enumerate_codes(s), Error);

    s = line_spec(2, 1, 2);
    s.delta_min = 2;
    CHECK_THROWS_AS(enumerate_codes(s), Error);

    s = line_spec(2, 1, 2);
    s.side = Side::Mixed;
    CHECK_THROWS_AS(enumerate_codes(s), Error); // bipartite parity: no mixed distance-4 code
    s.delta_min = 3;
    CHECK_NOTHROW(enumerate_codes(s));

    s = line_spec(2, 0, 2);
    CHECK_THROWS_AS(enumerate_codes(s), Error);
    s = line_spec(2, 3, 2);
    CHECK_THROWS_AS(enumerate_codes(s), Error);

    s = line_spec(2, 1, 2);
    s.workers = 0;
    CHECK_THROWS_AS(enumerate_codes(s), Error);

    s = line_spec(2, 1, 2);
    s.vertex_order = {0, 1, 2};
    CHECK_THROWS_AS(enumerate_codes(s), Error);
    s.vertex_order.assign(30, 0);
    CHECK_THROWS_AS(enumerate_codes(s), Error);

    s = line_spec(2, 2, 3);
    CHECK_THROWS_AS(explore_branch(s, {}), Error);
    CHECK_THROWS_AS(explore_branch(s, {0, 1}), Error); // points, not lines

    CHECK_THROWS_AS(enumerate_nt_maximal(4), Error);
    CHECK_THROWS_AS(max_delta3_code(4), Error);
    CHECK_THROWS_AS(spread_completion_search(4), Error);
}

TEST_CASE("search: single classes of pairs at q=2") {
    for (Side side : {Side::Points, Side::Lines}) {
        SearchSpec s = line_spec(2, 2, 2);
        s.side = side;
        const SearchReport r = enumerate_codes(s);
        INFO("side ", side == Side::Points ? "points" : "lines");
        REQUIRE(r.representatives.size() == 1);
        const CodeAnalysis& a = r.representatives.front();
        CHECK(a.code.size() == 2);
        CHECK(a.code.side() == side);
        CHECK(a.delta == 4);
        CHECK(a.is_nt);
        CHECK(r.aut_order == 1440);
        CHECK(r.aut_order % a.stabiliser_order == 0);

        // every reported quantity is reproduced from scratch
        CHECK(min_distance(a.code) == a.delta);
        CHECK(covering_radius(a.code) == a.rho);
        CHECK(classify(a.code).describe() == a.classification);
        const NTDecision d = decide_nt(a.code);
        CHECK(d.is_nt == a.is_nt);
        CHECK(d.stabiliser_order == a.stabiliser_order);
        const NTDecision d2 = decide_nt(a.code, ambient_group(2));
        CHECK(d2.is_nt == d.is_nt);
        CHECK(d2.stabiliser_order == d.stabiliser_order);
        CHECK(d2.aut_order == d.aut_order);
    }
}

TEST_CASE("search: all spreads of the q=2 quadrangle form one class") {
    const SearchReport r = enumerate_codes(line_spec(2, 5, 5));
    REQUIRE(r.representatives.size() == 1);
    const CodeAnalysis& a = r.representatives.front();
    CHECK(a.classification == "spread");
    CHECK(a.rho == 2);
    CHECK(a.is_nt);
    CHECK(a.stabiliser_order == 120);

    // orbit-stabiliser: the class orbit covers the spreads and (through the
    // duality) the same number of ovoids
    const long long spreads = naive_count(a.code.graph, false, 5);
    const long long ovoids = naive_count(a.code.graph, true, 5);
    CHECK(spreads == 6);
    CHECK(ovoids == 6);
    CHECK(r.aut_order / a.stabiliser_order ==
          static_cast<std::uint64_t>(spreads + ovoids));

    // the ovoid enumeration lands in the same equivalence class
    SearchSpec s = line_spec(2, 5, 5);
    s.side = Side::Points;
    const SearchReport dual = enumerate_codes(s);
    REQUIRE(dual.representatives.size() == 1);
    const PermGroup& group = ambient_group(2);
    CHECK(canonical_form(dual.representatives.front().code, group) ==
          canonical_form(a.code, group));
}

TEST_CASE("search: representative orbits add up to the naive counts at q=2") {
    const SearchReport r = enumerate_codes(line_spec(2, 1, 5));
    const GraphPtr g = r.representatives.front().code.graph;
    std::map<int, std::uint64_t> orbit_sum;
    for (const CodeAnalysis& a : r.representatives) {
        CHECK(r.aut_order % a.stabiliser_order == 0);
        orbit_sum[a.code.size()] += r.aut_order / a.stabiliser_order;
    }
    for (int k = 1; k <= 5; ++k) {
        INFO("size ", k);
        // a full-group orbit spans both sides at q=2 (the duality), so the
        // orbit total counts the point codes and the line codes together
        const long long both = naive_count(g, true, k) + naive_count(g, false, k);
        CHECK(orbit_sum[k] == static_cast<std::uint64_t>(both));
    }
}

TEST_CASE("search: class counts are independent of the vertex order") {
    const SearchReport base = enumerate_codes(line_spec(2, 1, 5));
    const PermGroup& group = ambient_group(2);
    const auto base_forms = canonical_multiset(base, group);

    std::mt19937 rng(20260816);
    for (int trial = 0; trial < 3; ++trial) {
        SearchSpec s = line_spec(2, 1, 5);
        s.vertex_order.resize(30);
        std::iota(s.vertex_order.begin(), s.vertex_order.end(), 0);
        std::shuffle(s.vertex_order.begin(), s.vertex_order.end(), rng);
        const SearchReport shuffled = enumerate_codes(s);
        CHECK(shuffled.representatives.size() == base.representatives.size());
        CHECK(canonical_multiset(shuffled, group) == base_forms);
    }

    // same at q=3 for the size-5 transitive search
    SearchSpec s;
    s.q = 3;
    s.side = Side::Lines;
    s.size_min = s.size_max = 5;
    s.nt_filter = true;
    s.vertex_order.resize(80);
    std::iota(s.vertex_order.begin(), s.vertex_order.end(), 0);
    std::shuffle(s.vertex_order.begin(), s.vertex_order.end(), rng);
    const SearchReport r = enumerate_codes(s);
    REQUIRE(r.representatives.size() == 1);
    CHECK(canonical_form(r.representatives.front().code, ambient_group(3)) ==
          canonical_form(w33_five_code().code, ambient_group(3)));
}

TEST_CASE("search: branches partition the space and workers change nothing") {
    const SearchSpec s = line_spec(2, 3, 5);
    const std::vector<std::vector<int>> branches = search_branches(s);
    CHECK(!branches.empty());
    const std::set<std::vector<int>> unique(branches.begin(), branches.end());
    CHECK(unique.size() == branches.size());
    for (const std::vector<int>& b : branches) CHECK(b.size() == 2);

    const SearchReport whole = enumerate_codes(s);
    const PermGroup& group = ambient_group(2);
    std::multiset<std::vector<int>> merged;
    for (const std::vector<int>& b : branches) {
        const SearchReport part = explore_branch(s, b);
        for (const CodeAnalysis& a : part.representatives)
            merged.insert(canonical_form(a.code, group));
    }
    CHECK(merged == canonical_multiset(whole, group));

    SearchSpec parallel = s;
    parallel.workers = 4;
    const SearchReport threaded = enumerate_codes(parallel);
    REQUIRE(threaded.representatives.size() == whole.representatives.size());
    for (std::size_t i = 0; i < whole.representatives.size(); ++i)
        CHECK(threaded.representatives[i].code.members ==
              whole.representatives[i].code.members);
    CHECK(threaded.nodes == whole.nodes);
}

TEST_CASE("search: the five-line class is the unique transitive size-5 class at q=3") {
    SearchSpec s;
    s.q = 3;
    s.side = Side::Lines;
    s.size_min = s.size_max = 5;
    const SearchReport all = enumerate_codes(s);
    CHECK(all.representatives.size() > 1);
    int transitive = 0;
    for (const CodeAnalysis& a : all.representatives) transitive += a.is_nt;
    CHECK(transitive == 1);

    s.nt_filter = true;
    const SearchReport r = enumerate_codes(s);
    REQUIRE(r.representatives.size() == 1);
    const CodeAnalysis& a = r.representatives.front();
    CHECK(a.rho == 3);
    CHECK(a.stabiliser_order == 120);
    CHECK(a.classification == "maximal partial spread");
    CHECK(canonical_form(a.code, ambient_group(3)) ==
          canonical_form(w33_five_code().code, ambient_group(3)));
}

TEST_CASE("search: spreads form a single transitive class at q=3") {
    SearchSpec s;
    s.q = 3;
    s.side = Side::Lines;
    s.size_min = s.size_max = 10;
    s.nt_filter = true;
    const SearchReport r = enumerate_codes(s);
    REQUIRE(r.representatives.size() == 1);
    const CodeAnalysis& a = r.representatives.front();
    CHECK(a.classification == "spread");
    CHECK(canonical_form(a.code, ambient_group(3)) ==
          canonical_form(regular_spread(3).code, ambient_group(3)));
}

TEST_CASE("search: maximal transitive codes at q=2 match the catalogue") {
    const SearchReport r = enumerate_nt_maximal(2);
    CHECK(r.all_classified);
    REQUIRE(r.representatives.size() == 2);
    std::set<int> sizes;
    for (const CodeAnalysis& a : r.representatives) {
        sizes.insert(a.code.size());
        CHECK(a.is_nt);
        CHECK(a.rho <= 3);
        CHECK(!a.family.empty());
        CHECK(classify(a.code).maximal);
    }
    CHECK(sizes == std::set<int>{3, 5});
    CHECK(r.representatives.front().family.find("hyperbolic-line") != std::string::npos);
    CHECK(r.representatives.back().family == "regular-spread");
}

TEST_CASE("search: maximal transitive codes at q=3 match the catalogue") {
    const SearchReport r = enumerate_nt_maximal(3);
    CHECK(r.all_classified);
    REQUIRE(r.representatives.size() == 4);
    std::map<int, const CodeAnalysis*> by_size;
    for (const CodeAnalysis& a : r.representatives) by_size[a.code.size()] = &a;
    REQUIRE(by_size.size() == 4);
    REQUIRE(by_size.count(4));
    REQUIRE(by_size.count(5));
    REQUIRE(by_size.count(8));
    REQUIRE(by_size.count(10));
    CHECK(by_size[4]->family == "hyperbolic-line");
    CHECK(by_size[4]->rho == 3);
    CHECK(by_size[5]->family == "five-lines");
    CHECK(by_size[5]->stabiliser_order == 120);
    CHECK(by_size[8]->family == "coolsaet");
    CHECK(by_size[8]->classification == "maximal partial spread");
    CHECK(by_size[10]->family == "regular-spread");
    CHECK(by_size[10]->classification == "spread");
}

TEST_CASE("search: every transitive near-spread completes to a regular spread") {
    for (int q : {2, 3}) {
        INFO("q = ", q);
        const SearchReport r = spread_completion_search(q);
        REQUIRE(!r.representatives.empty());
        const PermGroup& group = ambient_group(q);
        const std::vector<int> minus_line =
            canonical_form(spread_minus_line(q).code, group);
        bool minus_line_found = false;
        for (const CodeAnalysis& a : r.representatives) {
            CHECK(a.code.size() == q * q);
            CHECK(a.is_nt);
            CHECK(a.completions == 1);
            CHECK(a.completion_regular);
            if (canonical_form(a.code, group) == minus_line) {
                minus_line_found = true;
                CHECK(a.family == "spread-minus-line");
            }
        }
        CHECK(minus_line_found);
    }
}

TEST_CASE("search: exact distance-3 maximum at q=2 equals the naive search") {
    const SearchReport r = max_delta3_code(2);
    CHECK(r.target_size == 6);

    const GraphPtr g = standard_graph(2);
    int naive_best = 0;
    std::vector<int> chosen;
    naive_max3(g, chosen, 0, naive_best);
    CHECK(r.max_size == naive_best);
    CHECK(r.max_size == 6);
    CHECK(r.reaches_target);

    REQUIRE(r.representatives.size() == 1);
    const CodeAnalysis& w = r.representatives.front();
    CHECK(w.code.size() == r.max_size);
    CHECK(min_distance(w.code) >= 3);
    CHECK(w.code.side() == Side::Mixed);
    CHECK(r.witness_mixed_distance3);
    CHECK(min_distance(w.code) == 3);
}

TEST_CASE("search: exact distance-3 maximum at q=3 misses the open bound") {
    const SearchReport r = max_delta3_code(3);
    CHECK(r.target_size == 14);

    // greedy lower bound and sphere-packing upper bound bracket the answer
    const GraphPtr g = standard_graph(3);
    std::vector<int> greedy;
    for (int v = 0; v < g->n; ++v) {
        bool ok = true;
        for (int u : greedy)
            if (g->distance(u, v) < 3) {
                ok = false;
                break;
            }
        if (ok) greedy.push_back(v);
    }
    CHECK(r.max_size >= static_cast<int>(greedy.size()));
    CHECK(r.max_size <= 16); // |C| (1 + valency) <= vertex count
    CHECK(r.max_size >= 10); // a spread is a distance-4 witness

    CHECK(r.max_size == 12);
    CHECK(!r.reaches_target);
    REQUIRE(r.representatives.size() == 1);
    const CodeAnalysis& w = r.representatives.front();
    CHECK(w.code.size() == 12);
    CHECK(min_distance(w.code) == 3);
    CHECK(r.witness_mixed_distance3);

    // custom target: the found maximum itself is reachable
    const SearchReport pinned = max_delta3_code(3, 12);
    CHECK(pinned.target_size == 12);
    CHECK(pinned.reaches_target);
}

TEST_CASE("search: canonical forms are invariant, idempotent and separating") {
    const PermGroup& group = ambient_group(3);
    const Code spread = regular_spread(3).code;
    const Code hyper = hyperbolic_line_code(3).code;
    const Code five = w33_five_code().code;

    const std::vector<int> spread_form = canonical_form(spread, group);
    const std::vector<int> hyper_form = canonical_form(hyper, group);
    const std::vector<int> five_form = canonical_form(five, group);
    CHECK(spread_form != hyper_form);
    CHECK(spread_form != five_form);
    CHECK(hyper_form != five_form);

    // idempotence: the canonical form is its own representative
    CHECK(canonical_form(Code(spread.graph, spread_form), group) == spread_form);
    CHECK(canonical_form(Code(five.graph, five_form), group) == five_form);

    // invariance along the orbit
    const std::vector<VertexPerm>& elements = group.elements();
    for (std::size_t gi = 0; gi < elements.size(); gi += 5000) {
        CHECK(canonical_form(image_code(five, elements[gi]), group) == five_form);
        CHECK(canonical_form(image_code(hyper, elements[gi]), group) == hyper_form);
    }

    CHECK(canonical_form(Code(spread.graph, {}), group).empty());
    CHECK_THROWS_AS(canonical_form(spread, ambient_group(2)), Error);
}

TEST_CASE("search: ambient group is cached and consistent") {
    const PermGroup& a = ambient_group(2);
    const PermGroup& b = ambient_group(2);
    CHECK(&a == &b);
    CHECK(a.order() == 1440);
    CHECK(ambient_group(3).order() == 51840);
}
