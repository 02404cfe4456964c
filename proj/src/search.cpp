#include "gq/search.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "gq/constructions.hpp"
#include "gq/errors.hpp"

namespace gq {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Shared read-only state for one search: the graph, the fully enumerated
// equivalence group, the working vertex order (key = position in that order)
// and the per-element image tables used by the orbit-minimality test.
struct Ctx {
    SearchSpec spec;
    GraphPtr graph;
    const PermGroup* group = nullptr;
    const std::vector<VertexPerm>* elements = nullptr;
    int n = 0;
    std::vector<int> vert_of; // key -> vertex
    std::vector<int> key_of;  // vertex -> key
    std::vector<char> domain; // by key: vertex belongs to the searched side
    std::vector<char> swaps;  // per element: exchanges the two sides
    bool skip_swapping = false;
    // flat[gi*n + key] = key of the image vertex; empty when the table would
    // be too large, in which case images are translated on the fly
    std::vector<std::uint16_t> flat;

    int vertex(int key) const { return vert_of[static_cast<std::size_t>(key)]; }

    int image_key(std::size_t gi, int key) const {
        if (!flat.empty()) return flat[gi * static_cast<std::size_t>(n) + key];
        const VertexPerm& g = (*elements)[gi];
        return key_of[static_cast<std::size_t>(g[vert_of[static_cast<std::size_t>(key)]])];
    }

    bool compatible(int key, const std::vector<int>& keys) const {
        const int v = vertex(key);
        for (int k : keys)
            if (graph->distance(vertex(k), v) < spec.delta_min) return false;
        return true;
    }

    // True iff `keys` (sorted ascending) is the lexicographically least
    // member of its orbit, comparing only images that stay in the searched
    // side.  Testing the least image element first skips almost every group
    // element without sorting.
    bool canonical(const std::vector<int>& keys, std::vector<int>& tmp) const {
        const int s0 = keys.front();
        const std::size_t count = elements->size();
        for (std::size_t gi = 0; gi < count; ++gi) {
            if (skip_swapping && swaps[gi]) continue;
            int least = n;
            for (int k : keys) {
                const int img = image_key(gi, k);
                if (img < least) least = img;
            }
            if (least > s0) continue;
            if (least < s0) return false;
            tmp.clear();
            for (int k : keys) tmp.push_back(image_key(gi, k));
            std::sort(tmp.begin(), tmp.end());
            if (std::lexicographical_compare(tmp.begin(), tmp.end(), keys.begin(),
                                             keys.end()))
                return false;
        }
        return true;
    }

    std::vector<int> to_vertices(const std::vector<int>& keys) const {
        std::vector<int> verts;
        verts.reserve(keys.size());
        for (int k : keys) verts.push_back(vertex(k));
        std::sort(verts.begin(), verts.end());
        return verts;
    }

    std::vector<int> to_keys(const std::vector<int>& verts) const {
        std::vector<int> keys;
        keys.reserve(verts.size());
        for (int v : verts) keys.push_back(key_of[static_cast<std::size_t>(v)]);
        std::sort(keys.begin(), keys.end());
        return keys;
    }
};

void validate_spec(const SearchSpec& spec) {
    if (spec.q < 2 || spec.q > 5)
        throw Error("search supports q in 2..5 (q <= 3 for exhaustive classification)");
    if (spec.delta_min != 3 && spec.delta_min != 4)
        throw Error("delta_min must be 3 or 4");
    if (spec.side == Side::Mixed && spec.delta_min == 4)
        throw Error("mixed codes cannot have all pairwise distances 4 in a "
                    "bipartite graph; use delta_min = 3");
    if (spec.size_min < 1 || spec.size_max < spec.size_min)
        throw Error("size range must satisfy 1 <= size_min <= size_max");
    if (spec.workers < 1) throw Error("workers must be >= 1");
}

Ctx make_ctx(const SearchSpec& spec) {
    validate_spec(spec);
    Ctx ctx;
    ctx.spec = spec;
    ctx.graph = standard_graph(spec.q);
    ctx.group = &ambient_group(spec.q);
    ctx.elements = &ctx.group->elements();
    ctx.n = ctx.graph->n;

    const std::size_t n = static_cast<std::size_t>(ctx.n);
    if (spec.vertex_order.empty()) {
        ctx.vert_of.resize(n);
        std::iota(ctx.vert_of.begin(), ctx.vert_of.end(), 0);
        ctx.key_of = ctx.vert_of;
    } else {
        if (spec.vertex_order.size() != n)
            throw Error("vertex_order must list every vertex exactly once");
        ctx.vert_of = spec.vertex_order;
        ctx.key_of.assign(n, -1);
        for (std::size_t k = 0; k < n; ++k) {
            const int v = ctx.vert_of[k];
            if (v < 0 || v >= ctx.n || ctx.key_of[static_cast<std::size_t>(v)] != -1)
                throw Error("vertex_order must list every vertex exactly once");
            ctx.key_of[static_cast<std::size_t>(v)] = static_cast<int>(k);
        }
    }

    ctx.domain.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const bool point = ctx.graph->is_point(ctx.vert_of[k]);
        ctx.domain[k] = spec.side == Side::Mixed || (spec.side == Side::Points) == point;
    }

    ctx.skip_swapping = spec.side != Side::Mixed;
    ctx.swaps.resize(ctx.elements->size());
    for (std::size_t gi = 0; gi < ctx.elements->size(); ++gi)
        ctx.swaps[gi] = (*ctx.elements)[gi].swaps_sides();

    // 50M entries (100 MB) covers q <= 3 with two orders of magnitude to
    // spare; larger groups fall back to on-the-fly translation
    if (ctx.elements->size() * n <= 50'000'000) {
        ctx.flat.resize(ctx.elements->size() * n);
        for (std::size_t gi = 0; gi < ctx.elements->size(); ++gi) {
            const VertexPerm& g = (*ctx.elements)[gi];
            std::uint16_t* row = ctx.flat.data() + gi * n;
            for (std::size_t k = 0; k < n; ++k)
                row[k] = static_cast<std::uint16_t>(
                    ctx.key_of[static_cast<std::size_t>(g[ctx.vert_of[k]])]);
        }
    }
    return ctx;
}

// Depth-first orderly generation from one canonical prefix: every canonical
// extension is explored, every size within range is emitted.
struct Walker {
    const Ctx* ctx = nullptr;
    std::uint64_t nodes = 0;
    std::vector<std::vector<int>> found; // member vertex ids, one per code
    std::vector<int> scratch;

    void run(std::vector<int>& keys) {
        const SearchSpec& spec = ctx->spec;
        const int size = static_cast<int>(keys.size());
        if (size >= spec.size_min && size <= spec.size_max)
            found.push_back(ctx->to_vertices(keys));
        if (size >= spec.size_max) return;
        for (int k = keys.back() + 1; k < ctx->n; ++k) {
            if (!ctx->domain[k]) continue;
            if (!ctx->compatible(k, keys)) continue;
            keys.push_back(k);
            ++nodes;
            if (ctx->canonical(keys, scratch)) run(keys);
            keys.pop_back();
        }
    }
};

// Canonical prefixes of size min(2, size_max) in key space.
std::vector<std::vector<int>> branch_keys(const Ctx& ctx, std::uint64_t& nodes) {
    const int depth = std::min(2, ctx.spec.size_max);
    std::vector<std::vector<int>> out;
    std::vector<int> scratch;
    std::vector<int> keys;
    for (int k0 = 0; k0 < ctx.n; ++k0) {
        if (!ctx.domain[k0]) continue;
        keys.assign(1, k0);
        ++nodes;
        if (!ctx.canonical(keys, scratch)) continue;
        if (depth == 1) {
            out.push_back(keys);
            continue;
        }
        for (int k1 = k0 + 1; k1 < ctx.n; ++k1) {
            if (!ctx.domain[k1]) continue;
            if (!ctx.compatible(k1, keys)) continue;
            keys.push_back(k1);
            ++nodes;
            if (ctx.canonical(keys, scratch)) out.push_back(keys);
            keys.pop_back();
        }
    }
    return out;
}

// True iff some vertex of the searched side extends the code at distance
// >= delta_min from every member.  For an unmixed code with all pairwise
// distances 4 this is exactly the covering-radius-4 condition.
bool extendable_in_domain(const Ctx& ctx, const std::vector<int>& members) {
    const Code code(ctx.graph, members);
    for (int k = 0; k < ctx.n; ++k) {
        if (!ctx.domain[k]) continue;
        const int v = ctx.vertex(k);
        if (code.contains(v)) continue;
        bool ok = true;
        for (int m : members)
            if (ctx.graph->distance(m, v) < ctx.spec.delta_min) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

// Recompute every reported quantity from scratch and apply the maximality
// and transitivity filters.
std::vector<CodeAnalysis> analyse_all(const Ctx& ctx,
                                      const std::vector<std::vector<int>>& raw) {
    std::vector<CodeAnalysis> out;
    for (const std::vector<int>& members : raw) {
        if (ctx.spec.maximal_only && extendable_in_domain(ctx, members)) continue;
        CodeAnalysis a;
        a.code = Code(ctx.graph, members);
        a.delta = a.code.size() >= 2 ? min_distance(a.code) : 0;
        a.rho = covering_radius(a.code);
        if (a.code.side() != Side::Mixed)
            a.classification = classify(a.code).describe();
        const NTDecision d = decide_nt(a.code, *ctx.group);
        a.is_nt = d.is_nt;
        a.stabiliser_order = d.stabiliser_order;
        if (ctx.spec.nt_filter && !a.is_nt) continue;
        out.push_back(std::move(a));
    }
    std::sort(out.begin(), out.end(), [](const CodeAnalysis& x, const CodeAnalysis& y) {
        if (x.code.size() != y.code.size()) return x.code.size() < y.code.size();
        return x.code.members < y.code.members;
    });
    return out;
}

} // namespace

const PermGroup& ambient_group(int q) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<PermGroup>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(q);
    if (it == cache.end()) {
        auto group = std::make_shared<PermGroup>(full_automorphism_group(standard_graph(q)));
        it = cache.emplace(q, std::move(group)).first;
    }
    return *it->second;
}

std::vector<int> canonical_form(const Code& code, const PermGroup& group) {
    if (!code.graph) throw Error("code has no graph");
    if (!group.graph() || group.graph()->n != code.graph->n)
        throw Error("group acts on a different graph");
    if (code.members.empty()) return {};
    std::vector<int> best = code.members;
    std::vector<int> tmp;
    for (const VertexPerm& g : group.elements()) {
        tmp.clear();
        for (int v : code.members) tmp.push_back(g[v]);
        std::sort(tmp.begin(), tmp.end());
        if (tmp < best) best = tmp;
    }
    return best;
}

std::vector<std::vector<int>> search_branches(const SearchSpec& spec) {
    const Ctx ctx = make_ctx(spec);
    std::uint64_t nodes = 0;
    std::vector<std::vector<int>> out;
    for (const std::vector<int>& keys : branch_keys(ctx, nodes))
        out.push_back(ctx.to_vertices(keys));
    return out;
}

SearchReport explore_branch(const SearchSpec& spec, const std::vector<int>& branch) {
    const auto start = Clock::now();
    const Ctx ctx = make_ctx(spec);
    if (branch.empty() || static_cast<int>(branch.size()) > spec.size_max)
        throw Error("branch size must be between 1 and size_max");
    for (int v : branch) {
        if (v < 0 || v >= ctx.n || !ctx.domain[ctx.key_of[static_cast<std::size_t>(v)]])
            throw Error("branch vertex outside the searched side");
    }
    Walker walker;
    walker.ctx = &ctx;
    std::vector<int> keys = ctx.to_keys(branch);
    walker.run(keys);

    SearchReport report;
    report.representatives = analyse_all(ctx, walker.found);
    report.aut_order = ctx.group->order();
    report.nodes = walker.nodes;
    report.seconds = seconds_since(start);
    return report;
}

SearchReport enumerate_codes(const SearchSpec& spec) {
    const auto start = Clock::now();
    const Ctx ctx = make_ctx(spec);

    std::uint64_t nodes = 0;
    const std::vector<std::vector<int>> roots = branch_keys(ctx, nodes);

    std::vector<std::vector<int>> raw;
    if (spec.size_min == 1 && spec.size_max > 1) {
        // branch roots are pairs; canonical singletons are emitted directly
        std::vector<int> scratch;
        std::vector<int> keys;
        for (int k = 0; k < ctx.n; ++k) {
            if (!ctx.domain[k]) continue;
            keys.assign(1, k);
            ++nodes;
            if (ctx.canonical(keys, scratch)) raw.push_back(ctx.to_vertices(keys));
        }
    }

    const int workers =
        std::max(1, std::min(spec.workers, static_cast<int>(roots.size())));
    std::vector<Walker> walkers(roots.size());
    auto run_slice = [&](int offset) {
        for (std::size_t i = static_cast<std::size_t>(offset); i < roots.size();
             i += static_cast<std::size_t>(workers)) {
            walkers[i].ctx = &ctx;
            std::vector<int> keys = roots[i];
            walkers[i].run(keys);
        }
    };
    if (workers == 1) {
        run_slice(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_slice, w);
        for (std::thread& t : pool) t.join();
    }
    for (const Walker& w : walkers) {
        nodes += w.nodes;
        raw.insert(raw.end(), w.found.begin(), w.found.end());
    }

    SearchReport report;
    report.representatives = analyse_all(ctx, raw);
    report.aut_order = ctx.group->order();
    report.nodes = nodes;
    report.seconds = seconds_since(start);
    return report;
}

SearchReport enumerate_nt_maximal(int q) {
    if (q > 3) throw Error("exhaustive maximal-code classification supports q <= 3");
    const auto start = Clock::now();

    SearchReport merged;
    std::vector<CodeAnalysis> reps;
    for (Side side : {Side::Points, Side::Lines}) {
        SearchSpec spec;
        spec.q = q;
        spec.side = side;
        spec.size_min = 1;
        spec.size_max = q * q + 1;
        spec.delta_min = 4;
        spec.nt_filter = true;
        spec.maximal_only = true;
        SearchReport part = enumerate_codes(spec);
        merged.aut_order = part.aut_order;
        merged.nodes += part.nodes;
        reps.insert(reps.end(), part.representatives.begin(),
                    part.representatives.end());
    }

    // one representative per class across both sides (a duality merges the
    // point and line enumerations at even q)
    const PermGroup& group = ambient_group(q);
    std::map<std::vector<int>, std::string> families;
    auto add_family = [&](const Code& code, const std::string& name) {
        auto [it, inserted] = families.emplace(canonical_form(code, group), name);
        if (!inserted && it->second.find(name) == std::string::npos)
            it->second += "|" + name;
    };
    add_family(regular_spread(q).code, "regular-spread");
    add_family(hyperbolic_line_code(q).code, "hyperbolic-line");
    for (const SL2Subgroup& sub : sharply_transitive_subgroups(q))
        add_family(coolsaet_partial_spread(q, sub).code, "coolsaet");
    if (q == 3) add_family(w33_five_code().code, "five-lines");

    std::map<std::vector<int>, std::size_t> seen;
    for (CodeAnalysis& a : reps) {
        const std::vector<int> canon = canonical_form(a.code, group);
        if (seen.count(canon)) continue;
        seen.emplace(canon, merged.representatives.size());
        auto fam = families.find(canon);
        a.family = fam == families.end() ? std::string() : fam->second;
        if (a.family.empty()) merged.all_classified = false;
        merged.representatives.push_back(std::move(a));
    }
    std::sort(merged.representatives.begin(), merged.representatives.end(),
              [](const CodeAnalysis& x, const CodeAnalysis& y) {
                  if (x.code.size() != y.code.size())
                      return x.code.size() < y.code.size();
                  return x.code.members < y.code.members;
              });
    merged.seconds = seconds_since(start);
    return merged;
}

namespace {

// Fixed-width bitset covering the vertex counts used by the distance >= 3
// maximum-code search (2(q+1)(q^2+1) <= 160 for q <= 3).
struct Bits {
    std::array<std::uint64_t, 4> w{};
    void set(int i) { w[static_cast<std::size_t>(i) >> 6] |= 1ull << (i & 63); }
    bool test(int i) const {
        return (w[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1;
    }
    bool any() const { return (w[0] | w[1] | w[2] | w[3]) != 0; }
    bool intersects(const Bits& o) const {
        return ((w[0] & o.w[0]) | (w[1] & o.w[1]) | (w[2] & o.w[2]) |
                (w[3] & o.w[3])) != 0;
    }
};

// Exact maximum clique by branch and bound with a greedy-colouring bound.
struct CliqueSearch {
    std::vector<Bits> adj;
    int best = 0;
    std::vector<int> best_clique;
    std::vector<int> clique;
    std::uint64_t nodes = 0;

    // orders candidates by greedy colour class; colour[i] bounds any clique
    // inside the first i+1 candidates
    void colour_sort(std::vector<int>& cand, std::vector<int>& colour) const {
        static thread_local std::vector<Bits> classes;
        classes.clear();
        static thread_local std::vector<std::vector<int>> members;
        for (auto& m : members) m.clear();
        for (int v : cand) {
            std::size_t k = 0;
            while (k < classes.size() && classes[k].intersects(adj[static_cast<std::size_t>(v)]))
                ++k;
            if (k == classes.size()) {
                classes.emplace_back();
                if (members.size() < classes.size()) members.emplace_back();
            }
            classes[k].set(v);
            members[k].push_back(v);
        }
        cand.clear();
        colour.clear();
        for (std::size_t k = 0; k < classes.size(); ++k)
            for (int v : members[k]) {
                cand.push_back(v);
                colour.push_back(static_cast<int>(k) + 1);
            }
    }

    void expand(std::vector<int>& cand, std::vector<int>& colour) {
        while (!cand.empty()) {
            const int v = cand.back();
            if (static_cast<int>(clique.size()) + colour.back() <= best) return;
            cand.pop_back();
            colour.pop_back();
            clique.push_back(v);
            ++nodes;
            std::vector<int> next;
            for (int u : cand)
                if (adj[static_cast<std::size_t>(v)].test(u)) next.push_back(u);
            if (next.empty()) {
                if (static_cast<int>(clique.size()) > best) {
                    best = static_cast<int>(clique.size());
                    best_clique = clique;
                }
            } else {
                std::vector<int> next_colour;
                colour_sort(next, next_colour);
                expand(next, next_colour);
            }
            clique.pop_back();
        }
    }
};

} // namespace

SearchReport max_delta3_code(int q, int target) {
    if (q != 2 && q != 3)
        throw Error("the exact distance >= 3 maximum search supports q in {2, 3}");
    const auto start = Clock::now();
    const GraphPtr graph = standard_graph(q);
    const int n = graph->n;

    CliqueSearch search;
    search.adj.assign(static_cast<std::size_t>(n), Bits{});
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && graph->distance(u, v) >= 3)
                search.adj[static_cast<std::size_t>(u)].set(v);

    // greedy seed: take vertices in degree order while they stay compatible
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u)
            if (search.adj[static_cast<std::size_t>(v)].test(u))
                ++degree[static_cast<std::size_t>(v)];
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)];
    });
    std::vector<int> greedy;
    for (int v : order) {
        bool ok = true;
        for (int u : greedy)
            if (!search.adj[static_cast<std::size_t>(v)].test(u)) {
                ok = false;
                break;
            }
        if (ok) greedy.push_back(v);
    }
    search.best = static_cast<int>(greedy.size());
    search.best_clique = greedy;

    std::vector<int> cand(order.rbegin(), order.rend());
    std::vector<int> colour;
    search.colour_sort(cand, colour);
    search.expand(cand, colour);

    SearchReport report;
    report.target_size = target > 0 ? target : 2 * (q * q - q + 1);
    report.max_size = search.best;
    report.reaches_target = search.best >= report.target_size;
    report.nodes = search.nodes;
    report.aut_order = ambient_group(q).order();

    CodeAnalysis witness;
    witness.code = Code(graph, search.best_clique);
    witness.delta = witness.code.size() >= 2 ? min_distance(witness.code) : 0;
    witness.rho = covering_radius(witness.code);
    if (witness.code.side() != Side::Mixed)
        witness.classification = classify(witness.code).describe();
    report.witness_mixed_distance3 = witness.delta == 3;
    report.representatives.push_back(std::move(witness));
    report.seconds = seconds_since(start);
    return report;
}

SearchReport spread_completion_search(int q) {
    if (q > 3) throw Error("the completion survey supports q <= 3");
    const auto start = Clock::now();
    const GraphPtr graph = standard_graph(q);
    const PermGroup& group = ambient_group(q);

    SearchSpec spec;
    spec.q = q;
    spec.side = Side::Lines;
    spec.size_min = q * q;
    spec.size_max = q * q;
    spec.delta_min = 4;
    spec.nt_filter = true;
    SearchReport report = enumerate_codes(spec);

    const std::vector<int> minus_line_canon =
        canonical_form(spread_minus_line(q).code, group);
    const std::vector<int> spread_canon = canonical_form(regular_spread(q).code, group);

    for (CodeAnalysis& a : report.representatives) {
        if (canonical_form(a.code, group) == minus_line_canon)
            a.family = "spread-minus-line";
        std::vector<int> closing;
        for (int v = graph->num_points; v < graph->n; ++v) {
            if (a.code.contains(v)) continue;
            bool ok = true;
            for (int m : a.code.members)
                if (graph->distance(m, v) < 4) {
                    ok = false;
                    break;
                }
            if (ok) closing.push_back(v);
        }
        a.completions = static_cast<int>(closing.size());
        if (closing.size() == 1) {
            std::vector<int> full = a.code.members;
            full.push_back(closing.front());
            a.completion_regular =
                canonical_form(Code(graph, full), group) == spread_canon;
        }
    }
    report.seconds = seconds_since(start);
    return report;
}

} // namespace gq
