#include "gq/groupaction.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace gq {

namespace {

Mat4 frobenius_mat(const Field& F, const Mat4& m, int e) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = F.frobenius(m[i][j], e);
    return r;
}

} // namespace

SemilinearMap semilinear_identity(const FieldPtr& field) {
    return SemilinearMap{field, mat_identity(), 0};
}

Vec4 apply_semilinear(const SemilinearMap& m, const Vec4& v) {
    const Field& F = *m.field;
    Vec4 w = v;
    if (m.frob != 0)
        for (auto& c : w) c = F.frobenius(c, m.frob);
    return vec_mat(F, w, m.matrix);
}

SemilinearMap compose_semilinear(const SemilinearMap& a, const SemilinearMap& b) {
    if (!a.field->same_spec(*b.field)) throw Error("semilinear maps live over different fields");
    const Field& F = *a.field;
    int k = F.k();
    SemilinearMap r;
    r.field = a.field;
    r.frob = (a.frob + b.frob) % k;
    r.matrix = mat_mul(F, frobenius_mat(F, a.matrix, b.frob % k), b.matrix);
    return r;
}

SemilinearMap inverse_semilinear(const SemilinearMap& m) {
    const Field& F = *m.field;
    auto inv = mat_inverse(F, m.matrix);
    if (!inv) throw Error("semilinear map has a singular matrix");
    int k = F.k();
    int e = (k - m.frob % k) % k;
    return SemilinearMap{m.field, frobenius_mat(F, *inv, e), e};
}

Fel similitude_factor(const SemilinearMap& m, const GramMatrix& gram) {
    const Field& F = *m.field;
    if (mat_det(F, m.matrix) == 0) throw Error("semilinear map has a singular matrix");
    // compare M G M^T against λ · frob^e(G)
    Mat4 lhs = mat_mul(F, m.matrix, mat_mul(F, gram.m, mat_transpose(m.matrix)));
    Mat4 rhs = frobenius_mat(F, gram.m, m.frob % F.k());
    Fel lambda = 0;
    for (int i = 0; i < 4 && lambda == 0; ++i)
        for (int j = 0; j < 4 && lambda == 0; ++j)
            if (rhs[i][j] != 0 && lhs[i][j] != 0) lambda = F.div(lhs[i][j], rhs[i][j]);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (lhs[i][j] != (lambda == 0 ? Fel(0) : F.mul(lambda, rhs[i][j]))) {
                std::ostringstream os;
                os << "not a form similitude: basis pair (" << i << ", " << j
                   << ") has f(e_i M, e_j M) = " << F.to_string(lhs[i][j])
                   << " but lambda * f(e_i, e_j) = "
                   << F.to_string(lambda == 0 ? Fel(0) : F.mul(lambda, rhs[i][j]));
                throw Error(os.str());
            }
    if (lambda == 0) throw Error("not a form similitude: the transported form vanishes");
    return lambda;
}

bool is_similitude(const SemilinearMap& m, const GramMatrix& gram) {
    try {
        similitude_factor(m, gram);
        return true;
    } catch (const Error&) {
        return false;
    }
}

SemilinearMap conjugate_semilinear(const SemilinearMap& m, const Mat4& a) {
    const Field& F = *m.field;
    auto ainv = mat_inverse(F, a);
    if (!ainv) throw Error("conjugating matrix is singular");
    Mat4 left = frobenius_mat(F, *ainv, m.frob % F.k());
    return SemilinearMap{m.field, mat_mul(F, left, mat_mul(F, m.matrix, a)), m.frob};
}

// ---------------------------------------------------------------------------
// VertexPerm

VertexPerm::VertexPerm(GraphPtr graph, std::vector<std::uint16_t> images)
    : graph_(std::move(graph)), images_(std::move(images)) {
    const IncidenceGraph& g = *graph_;
    if (int(images_.size()) != g.n) throw Error("vertex map has the wrong length");
    std::vector<char> seen(size_t(g.n), 0);
    for (int v = 0; v < g.n; ++v) {
        int w = images_[size_t(v)];
        if (w < 0 || w >= g.n || seen[size_t(w)]) throw Error("vertex map is not a bijection");
        seen[size_t(w)] = 1;
    }
    swaps_sides_ = g.is_point(images_[0]) != g.is_point(0);
    for (int v = 0; v < g.n; ++v) {
        bool flip = g.is_point(images_[size_t(v)]) != g.is_point(v);
        if (flip != swaps_sides_) throw Error("vertex map mixes the two sides of the bipartition");
    }
    for (int v = 0; v < g.n; ++v)
        for (int u : g.adj[size_t(v)])
            if (g.distance(images_[size_t(v)], images_[size_t(u)]) != 1)
                throw Error("vertex map does not preserve adjacency");
}

VertexPerm::VertexPerm(Trusted, GraphPtr graph, std::vector<std::uint16_t> images, bool swaps)
    : graph_(std::move(graph)), images_(std::move(images)), swaps_sides_(swaps) {}

VertexPerm VertexPerm::identity(GraphPtr graph) {
    std::vector<std::uint16_t> im(size_t(graph->n));
    std::iota(im.begin(), im.end(), std::uint16_t(0));
    return VertexPerm(Trusted{}, std::move(graph), std::move(im), false);
}

bool VertexPerm::is_identity() const {
    for (std::size_t v = 0; v < images_.size(); ++v)
        if (images_[v] != v) return false;
    return true;
}

VertexPerm VertexPerm::compose(const VertexPerm& then) const {
    if (graph_.get() != then.graph_.get())
        throw Error("permutations act on different graphs");
    std::vector<std::uint16_t> im(images_.size());
    for (std::size_t v = 0; v < images_.size(); ++v) im[v] = then.images_[images_[v]];
    return VertexPerm(Trusted{}, graph_, std::move(im), swaps_sides_ != then.swaps_sides_);
}

VertexPerm VertexPerm::inverse() const {
    std::vector<std::uint16_t> im(images_.size());
    for (std::size_t v = 0; v < images_.size(); ++v) im[images_[v]] = std::uint16_t(v);
    return VertexPerm(Trusted{}, graph_, std::move(im), swaps_sides_);
}

VertexPerm induce_permutation(const SemilinearMap& m, const GraphPtr& graph) {
    const GQModel& model = *graph->model;
    const Field& F = *model.field;
    if (!m.field->same_spec(F)) throw Error("semilinear map lives over the wrong field");
    similitude_factor(m, model.gram); // throws with a witness if not a similitude
    int N = model.num_points();
    std::vector<std::uint16_t> images(size_t(graph->n));
    for (int i = 0; i < N; ++i) {
        ProjPoint img = normalize_point(F, apply_semilinear(m, model.points[size_t(i)].x));
        int j = model.point_index(img);
        if (j < 0) throw Error("semilinear map does not permute the point set");
        images[size_t(i)] = std::uint16_t(j);
    }
    for (int i = 0; i < model.num_lines(); ++i) {
        const Mat24& rows = model.lines[size_t(i)].rows;
        ProjLine img = line_from_span(F, apply_semilinear(m, rows[0]), apply_semilinear(m, rows[1]));
        int j = model.line_index(img);
        if (j < 0) throw Error("semilinear map does not permute the line set");
        images[size_t(N + i)] = std::uint16_t(N + j);
    }
    return VertexPerm(graph, std::move(images));
}

std::vector<VertexPerm> induce_all(const std::vector<SemilinearMap>& maps, const GraphPtr& graph) {
    std::vector<VertexPerm> out;
    out.reserve(maps.size());
    for (const auto& m : maps) out.push_back(induce_permutation(m, graph));
    return out;
}

// ---------------------------------------------------------------------------
// PermGroup

namespace {

struct ImageHash {
    std::size_t operator()(const std::vector<std::uint16_t>& v) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint16_t x : v) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return std::size_t(h);
    }
};

} // namespace

PermGroup::PermGroup(GraphPtr graph, std::vector<VertexPerm> generators) : graph_(std::move(graph)) {
    std::unordered_set<std::vector<std::uint16_t>, ImageHash> seen;
    for (auto& g : generators) {
        if (g.graph().get() != graph_.get()) throw Error("generator acts on a different graph");
        if (g.is_identity()) continue;
        if (seen.insert(g.images()).second) gens_.push_back(std::move(g));
    }
}

PermGroup PermGroup::trivial(GraphPtr graph) { return PermGroup(std::move(graph), {}); }

const std::vector<VertexPerm>& PermGroup::elements(std::uint64_t cap) const {
    if (elements_) return *elements_;
    auto out = std::make_shared<std::vector<VertexPerm>>();
    std::unordered_set<std::vector<std::uint16_t>, ImageHash> seen;
    out->push_back(VertexPerm::identity(graph_));
    seen.insert(out->back().images());
    for (std::size_t i = 0; i < out->size(); ++i) {
        for (const auto& g : gens_) {
            VertexPerm next = (*out)[i].compose(g);
            if (seen.insert(next.images()).second) {
                if (out->size() + 1 > cap)
                    throw CapError("group enumeration exceeds the element cap; use certificate mode");
                out->push_back(std::move(next));
            }
        }
    }
    elements_ = std::move(out);
    return *elements_;
}

std::uint64_t PermGroup::order(std::uint64_t cap) const { return elements(cap).size(); }

std::vector<int> PermGroup::orbit(int seed) const { return orbit(std::vector<int>{seed}); }

std::vector<int> PermGroup::orbit(const std::vector<int>& seeds) const {
    std::vector<char> seen(size_t(graph_->n), 0);
    std::vector<int> frontier;
    for (int s : seeds) {
        if (s < 0 || s >= graph_->n) throw Error("orbit seed out of range");
        if (!seen[size_t(s)]) {
            seen[size_t(s)] = 1;
            frontier.push_back(s);
        }
    }
    for (std::size_t i = 0; i < frontier.size(); ++i)
        for (const auto& g : gens_) {
            int w = g.apply(frontier[i]);
            if (!seen[size_t(w)]) {
                seen[size_t(w)] = 1;
                frontier.push_back(w);
            }
        }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
}

std::vector<std::vector<int>> PermGroup::orbits_within(const std::vector<int>& cell) const {
    std::vector<char> in_cell(size_t(graph_->n), 0);
    for (int v : cell) in_cell[size_t(v)] = 1;
    std::vector<char> done(size_t(graph_->n), 0);
    std::vector<std::vector<int>> orbits;
    std::vector<int> sorted_cell = cell;
    std::sort(sorted_cell.begin(), sorted_cell.end());
    for (int start : sorted_cell) {
        if (done[size_t(start)]) continue;
        std::vector<int> orb{start};
        done[size_t(start)] = 1;
        for (std::size_t i = 0; i < orb.size(); ++i)
            for (const auto& g : gens_) {
                int w = g.apply(orb[i]);
                if (!in_cell[size_t(w)])
                    throw Error("the cell is not closed under the group action");
                if (!done[size_t(w)]) {
                    done[size_t(w)] = 1;
                    orb.push_back(w);
                }
            }
        std::sort(orb.begin(), orb.end());
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

bool PermGroup::transitive_on(const std::vector<int>& cell) const {
    return orbits_within(cell).size() <= 1;
}

bool PermGroup::preserves(const std::vector<int>& members) const {
    std::vector<char> in(size_t(graph_->n), 0);
    for (int v : members) in[size_t(v)] = 1;
    for (const auto& g : gens_)
        for (int v : members)
            if (!in[size_t(g.apply(v))]) return false;
    return true;
}

PermGroup PermGroup::setwise_stabiliser(const std::vector<int>& members, std::uint64_t cap) const {
    const auto& els = elements(cap);
    std::vector<char> in(size_t(graph_->n), 0);
    for (int v : members) {
        if (v < 0 || v >= graph_->n) throw Error("member vertex out of range");
        in[size_t(v)] = 1;
    }
    auto stab = std::make_shared<std::vector<VertexPerm>>();
    for (const auto& g : els) {
        bool ok = true;
        for (int v : members)
            if (!in[size_t(g.apply(v))]) {
                ok = false;
                break;
            }
        if (ok) stab->push_back(g);
    }
    PermGroup result(graph_, *stab);
    result.elements_ = std::move(stab); // the filtered set is already the full subgroup
    return result;
}

std::vector<int> stabiliser_orbit(const PermGroup& group, int fixed, int target) {
    const auto& gens = group.generators();
    const GraphPtr& graph = group.graph();
    if (fixed < 0 || fixed >= graph->n || target < 0 || target >= graph->n)
        throw Error("vertex out of range");
    // orbit of `fixed` with a transversal: trans[i] maps fixed to orb[i]
    std::vector<int> orb{fixed};
    std::vector<int> pos(size_t(graph->n), -1);
    pos[size_t(fixed)] = 0;
    std::vector<VertexPerm> trans{VertexPerm::identity(graph)};
    std::vector<VertexPerm> trans_inv{VertexPerm::identity(graph)};
    for (std::size_t i = 0; i < orb.size(); ++i)
        for (const auto& g : gens) {
            int w = g.apply(orb[i]);
            if (pos[size_t(w)] < 0) {
                pos[size_t(w)] = int(orb.size());
                orb.push_back(w);
                trans.push_back(trans[i].compose(g));
                trans_inv.push_back(trans.back().inverse());
            }
        }
    // close `target` under the Schreier generators trans[i] · g · trans[j]^{-1},
    // applying each as a three-step lookup instead of materialising it
    std::vector<char> seen(size_t(graph->n), 0);
    std::vector<int> result{target};
    seen[size_t(target)] = 1;
    for (std::size_t r = 0; r < result.size(); ++r) {
        int x = result[r];
        for (std::size_t i = 0; i < orb.size(); ++i)
            for (const auto& g : gens) {
                int j = pos[size_t(g.apply(orb[i]))];
                int y = trans_inv[size_t(j)].apply(g.apply(trans[i].apply(x)));
                if (!seen[size_t(y)]) {
                    seen[size_t(y)] = 1;
                    result.push_back(y);
                }
            }
    }
    std::sort(result.begin(), result.end());
    return result;
}

// ---------------------------------------------------------------------------
// Symmetry generators

std::vector<SemilinearMap> sp4_generators(const FieldPtr& field, const GramMatrix& gram) {
    const Field& F = *field;
    GramMatrix::checked(F, gram.m); // validates alternating + nondegenerate
    std::vector<Vec4> dirs;
    for (int i = 0; i < 4; ++i) {
        Vec4 v{};
        v[size_t(i)] = 1;
        dirs.push_back(v);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Vec4 v{};
            v[size_t(i)] = 1;
            v[size_t(j)] = 1;
            dirs.push_back(v);
        }
    dirs.push_back(Vec4{1, 1, 1, 1});

    std::vector<Fel> coeffs;
    for (int e = 0; e < F.k(); ++e) coeffs.push_back(F.pow(F.generator(), e));

    std::vector<SemilinearMap> gens;
    for (const Vec4& v : dirs) {
        Vec4 gv{}; // gv[i] = f(e_i, v)
        for (int i = 0; i < 4; ++i) {
            Fel s = 0;
            for (int j = 0; j < 4; ++j) s = F.add(s, F.mul(gram.m[i][j], v[size_t(j)]));
            gv[size_t(i)] = s;
        }
        for (Fel c : coeffs) {
            // transvection x -> x + c f(x, v) v
            Mat4 m = mat_identity();
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    m[i][j] = F.add(m[i][j], F.mul(F.mul(c, gv[size_t(i)]), v[size_t(j)]));
            gens.push_back(SemilinearMap{field, m, 0});
        }
    }
    if (F.q() > 2) {
        // a similitude with scaling factor the field generator, moved from the
        // hyperbolic-pair form onto the requested one
        Fel w = F.generator();
        Mat4 d{};
        d[0][0] = 1;
        d[1][1] = w;
        d[2][2] = 1;
        d[3][3] = w;
        SemilinearMap scaler{field, d, 0};
        GramMatrix std_gram = standard_gram(F);
        if (gram.m != std_gram.m)
            scaler = conjugate_semilinear(scaler, transport_map(F, std_gram, gram));
        gens.push_back(scaler);
    }
    if (F.k() > 1) {
        SemilinearMap frob{field, mat_identity(), 1};
        if (!is_similitude(frob, gram))
            throw Error("the form is not stable under the field automorphism");
        gens.push_back(frob);
    }
    for (const auto& g : gens)
        similitude_factor(g, gram); // internal consistency
    return gens;
}

namespace {

// scalar-normalised packed representation of a semilinear map: 16 matrix
// entry codes (all < 256 for the supported fields) plus the twist exponent
using PackedMap = std::array<std::uint8_t, 17>;

struct PackedHash {
    std::size_t operator()(const PackedMap& k) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint8_t x : k) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return std::size_t(h);
    }
};

PackedMap pack_map(const Field& F, const Mat4& m, int frob) {
    Fel lead = 0;
    for (int i = 0; i < 4 && lead == 0; ++i)
        for (int j = 0; j < 4 && lead == 0; ++j) lead = m[i][j];
    Fel s = lead == 0 ? Fel(1) : F.inv(lead);
    PackedMap k{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) k[size_t(4 * i + j)] = std::uint8_t(F.mul(s, m[i][j]));
    k[16] = std::uint8_t(frob);
    return k;
}

Mat4 unpack_matrix(const PackedMap& k) {
    Mat4 m{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = k[size_t(4 * i + j)];
    return m;
}

} // namespace

std::uint64_t semilinear_closure_order(const FieldPtr& field,
                                       const std::vector<SemilinearMap>& gens,
                                       std::uint64_t cap) {
    const Field& F = *field;
    int k = F.k();
    struct Gen {
        Mat4 m;
        int frob;
    };
    std::vector<Gen> gs;
    for (const auto& g : gens) {
        if (!g.field->same_spec(F)) throw Error("generator lives over the wrong field");
        gs.push_back(Gen{g.matrix, g.frob % k});
    }
    std::unordered_set<PackedMap, PackedHash> seen;
    seen.reserve(size_t(std::min<std::uint64_t>(cap, 4'000'000)));
    std::vector<PackedMap> queue;
    PackedMap id = pack_map(F, mat_identity(), 0);
    seen.insert(id);
    queue.push_back(id);
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Mat4 m = unpack_matrix(queue[i]);
        int e = queue[i][16];
        for (const auto& g : gs) {
            Mat4 composed = mat_mul(F, g.frob ? frobenius_mat(F, m, g.frob) : m, g.m);
            PackedMap key = pack_map(F, composed, (e + g.frob) % k);
            if (seen.insert(key).second) {
                if (seen.size() > cap)
                    throw CapError("semilinear closure exceeds the element cap");
                queue.push_back(key);
            }
        }
    }
    return queue.size();
}

// ---------------------------------------------------------------------------
// Backtracking over distance-consistent vertex maps

namespace {

struct AutEngine {
    const IncidenceGraph& g;
    bool swap_sides;
    bool first_only;
    std::optional<int> pin; // forced image of the root vertex
    std::uint64_t node_cap;

    std::vector<int> order;
    std::vector<std::vector<int>> anchors; // per position: earlier positions adjacent to it
    std::vector<int> img;
    std::vector<char> used;
    std::uint64_t nodes = 0;
    std::uint64_t count = 0;
    std::vector<std::uint16_t> found;

    explicit AutEngine(const IncidenceGraph& graph, bool swap, bool first,
                       std::optional<int> pinned, std::uint64_t cap)
        : g(graph), swap_sides(swap), first_only(first), pin(pinned), node_cap(cap) {
        // assignment order: greedily take the vertex with the most assigned
        // neighbours.  The graph has no 4-cycles, so two assigned neighbours
        // already pin the image down to at most one candidate, and most of the
        // search is pure propagation.
        int n = g.n;
        order.reserve(size_t(n));
        anchors.resize(size_t(n));
        std::vector<int> attached(size_t(n), 0);
        std::vector<char> chosen(size_t(n), 0);
        std::vector<int> pos_of(size_t(n), -1);
        order.push_back(0);
        chosen[0] = 1;
        pos_of[0] = 0;
        for (int u : g.adj[0]) ++attached[size_t(u)];
        for (int step = 1; step < n; ++step) {
            int best = -1;
            for (int v = 0; v < n; ++v)
                if (!chosen[size_t(v)] && attached[size_t(v)] > 0 &&
                    (best < 0 || attached[size_t(v)] > attached[size_t(best)]))
                    best = v;
            chosen[size_t(best)] = 1;
            pos_of[size_t(best)] = step;
            order.push_back(best);
            for (int u : g.adj[size_t(best)]) {
                ++attached[size_t(u)];
                if (pos_of[size_t(u)] >= 0) anchors[size_t(step)].push_back(pos_of[size_t(u)]);
            }
        }
        img.assign(size_t(n), -1);
        used.assign(size_t(n), 0);
    }

    bool profile_ok(int v, int w, int depth) const {
        for (int t = 0; t < depth; ++t) {
            int u = order[size_t(t)];
            if (g.distance(v, u) != g.distance(w, img[size_t(u)])) return false;
        }
        return true;
    }

    // returns true to stop the whole search (first solution found)
    bool run(int depth) {
        if (++nodes > node_cap) throw CapError("vertex-map search exceeds the node cap");
        if (depth == g.n) {
            ++count;
            if (first_only) {
                found.resize(size_t(g.n));
                for (std::size_t v = 0; v < found.size(); ++v)
                    found[v] = std::uint16_t(img[v]);
                return true;
            }
            return false;
        }
        int v = order[size_t(depth)];
        if (depth == 0) {
            bool want_point = swap_sides ? !g.is_point(v) : g.is_point(v);
            int lo = pin ? *pin : 0;
            int hi = pin ? *pin + 1 : g.n;
            for (int w = lo; w < hi; ++w) {
                if (used[size_t(w)] || g.is_point(w) != want_point) continue;
                img[size_t(v)] = w;
                used[size_t(w)] = 1;
                if (run(depth + 1)) return true;
                used[size_t(w)] = 0;
                img[size_t(v)] = -1;
            }
            return false;
        }
        const std::vector<int>& anc = anchors[size_t(depth)];
        int base = img[size_t(order[size_t(anc[0])])];
        for (int w : g.adj[size_t(base)]) {
            if (used[size_t(w)]) continue;
            bool ok = true;
            for (std::size_t a = 1; a < anc.size() && ok; ++a)
                ok = g.distance(w, img[size_t(order[size_t(anc[a])])]) == 1;
            if (!ok || !profile_ok(v, w, depth)) continue;
            img[size_t(v)] = w;
            used[size_t(w)] = 1;
            if (run(depth + 1)) return true;
            used[size_t(w)] = 0;
            img[size_t(v)] = -1;
        }
        return false;
    }
};

} // namespace

std::uint64_t count_graph_automorphisms(const GraphPtr& graph, SideMode mode,
                                        std::uint64_t node_cap) {
    AutEngine engine(*graph, mode == SideMode::Swap, false, std::nullopt, node_cap);
    engine.run(0);
    return engine.count;
}

std::optional<VertexPerm> find_duality(const GraphPtr& graph) {
    const GQModel& model = *graph->model;
    if (model.q() > 5) throw Error("duality search unsupported for this field size");
    // pin the image of vertex 0 to the first line: if any side-swapping
    // automorphism exists, composing with a line-transitive symmetry yields
    // one with this image, so the pinned search is exhaustive
    std::optional<int> pin;
    PermGroup induced(graph, induce_all(sp4_generators(model.field, model.gram), graph));
    std::vector<int> line_orbit = induced.orbit(graph->num_points);
    if (int(line_orbit.size()) == model.num_lines()) pin = graph->num_points;
    AutEngine engine(*graph, true, true, pin, 2'000'000'000ULL);
    if (!engine.run(0)) return std::nullopt;
    return VertexPerm(graph, std::move(engine.found));
}

PermGroup full_automorphism_group(const GraphPtr& graph) {
    const GQModel& model = *graph->model;
    std::vector<VertexPerm> gens = induce_all(sp4_generators(model.field, model.gram), graph);
    if (model.q() % 2 == 0) {
        auto duality = find_duality(graph);
        if (duality) gens.push_back(*duality);
    }
    return PermGroup(graph, std::move(gens));
}

// ---------------------------------------------------------------------------
// Neighbour-transitivity

NTCertificate certify_nt(const Code& code, const std::vector<VertexPerm>& gens, int level) {
    if (level < 1 || level > 4) throw Error("certificate level must be between 1 and 4");
    if (!code.graph) throw Error("code has no graph");
    NTCertificate cert;
    cert.graph = code.graph;
    cert.code_members = code.members;
    cert.level = level;
    cert.generators = gens;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].graph().get() != code.graph.get())
            throw Error("generator acts on a different graph");
        bool ok = true;
        for (int v : code.members)
            if (!code.contains(gens[i].apply(v))) {
                ok = false;
                break;
            }
        if (!ok) {
            std::ostringstream os;
            os << "generator " << i << " does not preserve the code";
            throw Error(os.str());
        }
        cert.generator_preserves_code.push_back(true);
    }
    DistancePartition dp = distance_partition(code);
    if (level > dp.rho()) throw Error("certificate level exceeds the covering radius");
    PermGroup group(code.graph, gens);
    cert.success = true;
    for (int cell = 0; cell <= level; ++cell) {
        const auto& members = dp.cells[size_t(cell)];
        std::size_t orbits = group.orbits_within(members).size();
        cert.cell_sizes.push_back(members.size());
        cert.orbit_counts.push_back(orbits);
        if (orbits != 1) cert.success = false;
    }
    return cert;
}

NTCertificate certify_nt(const Code& code, const std::vector<SemilinearMap>& gens, int level) {
    NTCertificate cert = certify_nt(code, induce_all(gens, code.graph), level);
    cert.matrix_generators = gens;
    return cert;
}

bool replay_certificate(const Code& code, const NTCertificate& cert) {
    if (cert.code_members != code.members) return false;
    try {
        NTCertificate again = certify_nt(code, cert.generators, cert.level);
        return again.success && again.cell_sizes == cert.cell_sizes &&
               again.orbit_counts == cert.orbit_counts;
    } catch (const Error&) {
        return false;
    }
}

NTDecision decide_nt(const Code& code, std::uint64_t cap) {
    if (!code.graph) throw Error("code has no graph");
    return decide_nt(code, full_automorphism_group(code.graph), cap);
}

NTDecision decide_nt(const Code& code, const PermGroup& aut, std::uint64_t cap) {
    if (!code.graph) throw Error("code has no graph");
    if (!aut.graph() || aut.graph()->n != code.graph->n)
        throw Error("ambient group acts on a different graph");
    NTDecision d;
    d.aut_order = aut.order(cap);
    auto stab = std::make_shared<PermGroup>(aut.setwise_stabiliser(code.members, cap));
    d.stabiliser_order = stab->order(cap);
    DistancePartition dp = distance_partition(code);
    d.orbits_on_code = stab->orbits_within(dp.cells[0]).size();
    d.orbits_on_c1 = dp.rho() >= 1 ? stab->orbits_within(dp.cells[1]).size() : 0;
    d.is_nt = d.orbits_on_code <= 1 && d.orbits_on_c1 <= 1;
    d.stabiliser = std::move(stab);
    return d;
}

bool local_nt_check(const Code& code, const PermGroup& group, int codeword_position) {
    if (code.size() < 2) throw Error("the local criterion needs at least two codewords");
    int delta = min_distance(code);
    if (delta != 3 && delta != 4) throw Error("the local criterion needs minimum distance 3 or 4");
    if (group.graph().get() != code.graph.get()) throw Error("group acts on a different graph");
    if (!group.preserves(code.members)) throw Error("the group does not preserve the code");
    if (codeword_position < 0 || codeword_position >= code.size())
        throw Error("codeword position out of range");
    int alpha = code.members[size_t(codeword_position)];
    std::vector<int> orb = group.orbit(alpha);
    if (orb != code.members) return false; // both sorted
    const auto& nbrs = code.graph->adj[size_t(alpha)];
    std::vector<int> local = stabiliser_orbit(group, alpha, nbrs[0]);
    return local.size() == nbrs.size();
}

bool divisibility_check(long long s, long long t, long long group_order) {
    if (s <= 0 || t <= 0 || group_order <= 0) throw Error("arguments must be positive");
    long long needed = (t + 1) * (s * t + 1);
    return group_order % needed == 0;
}

} // namespace gq
