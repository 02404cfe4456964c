#include "gq/codegraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace gq {

std::shared_ptr<const IncidenceGraph> IncidenceGraph::build(GQModel model) {
    auto g = std::make_shared<IncidenceGraph>();
    g->model = std::make_shared<const GQModel>(std::move(model));
    const GQModel& M = *g->model;
    int N = M.num_points();
    g->num_points = N;
    g->n = N + M.num_lines();
    g->adj.resize(g->n);
    for (int p = 0; p < N; ++p)
        for (int l : M.point_lines[p]) {
            g->adj[p].push_back(N + l);
            g->adj[N + l].push_back(p);
        }
    for (auto& nb : g->adj) std::sort(nb.begin(), nb.end());

    if (g->n <= 8192) {
        g->dist_.assign(size_t(g->n) * g->n, 255);
        std::vector<int> queue(g->n);
        for (int src = 0; src < g->n; ++src) {
            std::uint8_t* row = &g->dist_[size_t(src) * g->n];
            int head = 0, tail = 0;
            row[src] = 0;
            queue[tail++] = src;
            while (head < tail) {
                int u = queue[head++];
                for (int v : g->adj[u])
                    if (row[v] == 255) {
                        row[v] = std::uint8_t(row[u] + 1);
                        queue[tail++] = v;
                    }
            }
            if (tail != g->n) throw Error("incidence graph is not connected");
        }
    }

    if (M.q() <= 5) {
        int deg = M.q() + 1;
        for (const auto& nb : g->adj)
            if (int(nb.size()) != deg) throw Error("incidence graph is not regular");
        if (g->diameter() != 4) throw Error("incidence graph diameter is not 4");
        if (g->girth() != 8) throw Error("incidence graph girth is not 8");
    }
    return g;
}

int IncidenceGraph::bfs_distance(int u, int v) const {
    if (u == v) return 0;
    std::vector<int> dist(n, -1);
    std::deque<int> queue{u};
    dist[u] = 0;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int y : adj[x])
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                if (y == v) return dist[y];
                queue.push_back(y);
            }
    }
    throw Error("vertices are disconnected");
}

int IncidenceGraph::diameter() const {
    int d = 0;
    if (!dist_.empty()) {
        for (std::uint8_t v : dist_) d = std::max(d, int(v));
        return d;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) d = std::max(d, bfs_distance(u, v));
    return d;
}

int IncidenceGraph::girth() const {
    // BFS from every root; the first non-tree edge seen closes a shortest
    // cycle through the root
    int best = -1;
    std::vector<int> dist(n), parent(n);
    for (int root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<int> queue{root};
        dist[root] = 0;
        parent[root] = -1;
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            if (best > 0 && 2 * dist[x] >= best) continue;
            for (int y : adj[x]) {
                if (y == parent[x]) continue;
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else {
                    int cycle = dist[x] + dist[y] + 1;
                    if (best < 0 || cycle < best) best = cycle;
                }
            }
        }
    }
    return best;
}

Code::Code(GraphPtr g, std::vector<int> members_in) : graph(std::move(g)), members(std::move(members_in)) {
    if (!graph) throw Error("code requires a graph");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (int v : members)
        if (v < 0 || v >= graph->n) throw Error("code member out of vertex range");
    mask_.assign((graph->n + 63) / 64, 0);
    for (int v : members) mask_[v >> 6] |= std::uint64_t(1) << (v & 63);
}

Side Code::side() const {
    bool pts = false, lns = false;
    for (int v : members) (graph->is_point(v) ? pts : lns) = true;
    if (pts && lns) return Side::Mixed;
    return lns ? Side::Lines : Side::Points;
}

int min_distance(const Code& c) {
    if (c.size() < 2) throw Error("minimum distance needs at least two codewords");
    int best = 1 << 30;
    for (size_t i = 0; i < c.members.size(); ++i)
        for (size_t j = i + 1; j < c.members.size(); ++j)
            best = std::min(best, c.graph->distance(c.members[i], c.members[j]));
    return best;
}

DistancePartition distance_partition(const Code& c) {
    if (c.size() == 0) throw Error("distance partition needs a nonempty code");
    const IncidenceGraph& g = *c.graph;
    DistancePartition out;
    out.cell_of.assign(g.n, -1);
    std::deque<int> queue;
    for (int v : c.members) {
        out.cell_of[v] = 0;
        queue.push_back(v);
    }
    int radius = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : g.adj[u])
            if (out.cell_of[v] < 0) {
                out.cell_of[v] = out.cell_of[u] + 1;
                radius = std::max(radius, out.cell_of[v]);
                queue.push_back(v);
            }
    }
    out.cells.assign(radius + 1, {});
    for (int v = 0; v < g.n; ++v) {
        if (out.cell_of[v] < 0) throw Error("graph is disconnected");
        out.cells[out.cell_of[v]].push_back(v);
    }
    return out;
}

int covering_radius(const Code& c) { return distance_partition(c).rho(); }

std::string Classification::describe() const {
    std::string what = side == Side::Points ? "ovoid" : "spread";
    if (ovoid_or_spread) return what;
    std::string out;
    if (maximal) out += "maximal ";
    if (partial) out += "partial " + what;
    else out = "not a partial " + what;
    return out;
}

Classification classify(const Code& c) {
    if (c.size() == 0) throw Error("cannot classify an empty code");
    Side side = c.side();
    if (side == Side::Mixed) throw Error("classification applies to unmixed codes only");
    const IncidenceGraph& g = *c.graph;
    const GQModel& M = *g.model;
    int N = g.num_points;

    // --- incidence-counting route ---
    // member count seen by each opposite element
    std::vector<int> hits(side == Side::Points ? M.num_lines() : M.num_points(), 0);
    if (side == Side::Points) {
        for (int v : c.members)
            for (int l : M.point_lines[v]) ++hits[l];
    } else {
        for (int v : c.members)
            for (int p : M.line_points[v - N]) ++hits[p];
    }
    bool partial_def = std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; });
    bool cover_def = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
    bool maximal_def = partial_def;
    if (partial_def) {
        // extendable iff some same-side element has all its opposite
        // neighbours untouched
        int count = side == Side::Points ? M.num_points() : M.num_lines();
        for (int i = 0; i < count && maximal_def; ++i) {
            int v = side == Side::Points ? i : N + i;
            if (c.contains(v)) continue;
            const auto& nbs = side == Side::Points ? M.point_lines[i] : M.line_points[i];
            bool clean = std::all_of(nbs.begin(), nbs.end(), [&](int o) { return hits[o] == 0; });
            if (clean) maximal_def = false;
        }
    }

    // --- metric route ---
    Classification out;
    out.side = side;
    out.delta = c.size() >= 2 ? min_distance(c) : 0;
    out.rho = covering_radius(c);
    bool partial_metric = c.size() < 2 || out.delta >= 4;
    bool maximal_metric = partial_metric && out.rho <= 3;
    bool cover_metric = partial_metric && out.rho == 2;

    if (partial_def != partial_metric || maximal_def != maximal_metric || cover_def != cover_metric)
        throw Error("classification routes disagree (internal error)");
    out.partial = partial_def;
    out.maximal = maximal_def;
    out.ovoid_or_spread = cover_def;
    return out;
}

CountingCheck counting_check(const Code& c) {
    Side side = c.side();
    if (side == Side::Mixed) throw Error("counting identities apply to unmixed codes only");
    if (c.size() < 2 || min_distance(c) != 4)
        throw Error("counting identities require minimum distance 4");
    const GQModel& M = *c.graph->model;
    int s = M.q(), t = M.q(); // order (s, t) of the geometry
    long long st1 = (long long)s * t + 1;
    long long own_side_total = side == Side::Points ? (s + 1) * st1 : (t + 1) * st1;
    long long opp_side_total = side == Side::Points ? (t + 1) * st1 : (s + 1) * st1;
    long long opp_degree = side == Side::Points ? t + 1 : s + 1;

    DistancePartition dp = distance_partition(c);
    auto cell = [&](int i) -> long long {
        return i < int(dp.cells.size()) ? (long long)dp.cells[i].size() : 0;
    };

    CountingCheck out;
    auto add = [&](std::string label, long long expected, long long actual) {
        out.identities.push_back({std::move(label), expected, actual, expected == actual});
    };
    add("|C1| = (degree) |C|", opp_degree * c.size(), cell(1));
    add("|C| + |C2| + |C4| = own-side count", own_side_total, cell(0) + cell(2) + cell(4));
    add("|C1| + |C3| = opposite-side count", opp_side_total, cell(1) + cell(3));
    out.all_pass = std::all_of(out.identities.begin(), out.identities.end(),
                               [](const auto& i) { return i.pass; });
    return out;
}

Rational make_rational(long long num, long long den) {
    if (den == 0) throw Error("zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    return {num, den};
}

Rational rational_sub(const Rational& a, const Rational& b) {
    return make_rational(a.num * b.den - b.num * a.den, a.den * b.den);
}

Rational perfect_size_identity(long long s) {
    if (s < 1) throw Error("order must be positive");
    return make_rational(2 * (s * s * s + s * s + s + 1), s + 2);
}

Rational perfect_size_printed_form(long long s) {
    if (s < 1) throw Error("order must be positive");
    return rational_sub(make_rational(2 * (s * s - s + 1), 1), make_rational(2, s + 2));
}

PerfectSizeScan scan_perfect_size(long long max_s) {
    if (max_s > 1000000) throw Error("scan bound exceeds the exact-arithmetic range");
    PerfectSizeScan out;
    out.max_s = max_s;
    for (long long s = 1; s <= max_s; ++s) {
        // 2(s^3+s^2+s+1) stays within int64 for s up to 10^6
        long long numerator = 2 * (s * s * s + s * s + s + 1);
        if (numerator % (s + 2) == 0) out.divisible_s.push_back(s);
        if (!(perfect_size_identity(s) == perfect_size_printed_form(s))) {
            ++out.mismatch_count;
            if (out.first_form_mismatch == 0) out.first_form_mismatch = s;
        }
    }
    return out;
}

} // namespace gq
