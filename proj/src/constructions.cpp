#include "gq/constructions.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "gq/linalg.hpp"

namespace gq {

namespace {

std::string q_params(int q) {
    std::ostringstream os;
    os << "q=" << q;
    return os.str();
}

// 2x2 generators of SL2(q): elementary transvections with coefficients
// running over a power basis of the field, so products reach every entry.
std::vector<Mat2> sl2_generators(const Field& F) {
    std::vector<Mat2> gens;
    Fel w = F.generator();
    for (int i = 0; i < F.k(); ++i) {
        Fel c = F.pow(w, i);
        gens.push_back(Mat2{{{1, c}, {0, 1}}});
        gens.push_back(Mat2{{{1, 0}, {c, 1}}});
    }
    return gens;
}

Mat4 block_diag(const Mat2& a, const Mat2& b) {
    Mat4 m{};
    m[0][0] = a[0][0]; m[0][1] = a[0][1];
    m[1][0] = a[1][0]; m[1][1] = a[1][1];
    m[2][2] = b[0][0]; m[2][3] = b[0][1];
    m[3][2] = b[1][0]; m[3][3] = b[1][1];
    return m;
}

// involution exchanging the two coordinate blocks: e1<->e3, e2<->e4
Mat4 block_swap() {
    Mat4 m{};
    m[0][2] = 1; m[1][3] = 1; m[2][0] = 1; m[3][1] = 1;
    return m;
}

std::uint32_t pack_mat2(const Mat2& m) {
    return (std::uint32_t(m[0][0]) << 24) | (std::uint32_t(m[0][1]) << 16) |
           (std::uint32_t(m[1][0]) << 8) | std::uint32_t(m[1][1]);
}

Mat2 unpack_mat2(std::uint32_t k) {
    return Mat2{{{Fel((k >> 24) & 0xff), Fel((k >> 16) & 0xff)},
                 {Fel((k >> 8) & 0xff), Fel(k & 0xff)}}};
}

std::string subgroup_label(int order) {
    switch (order) {
        case 3: return "GL1(4)";
        case 8: return "Q8";
        case 24: return "2.A4";
        case 48: return "2.S4";
        case 120: return "SL2(5)";
        default: return "order-" + std::to_string(order);
    }
}

// Closure of {a, b} under multiplication, aborting as soon as it exceeds
// `max_order` elements or produces a non-identity element with a fixed
// nonzero vector.  Returns the packed element set on success.
bool pair_closure(const Field& F, const Mat2& a, const Mat2& b, int max_order,
                  std::vector<std::uint32_t>& out) {
    const std::uint32_t id_key = pack_mat2(mat2_identity());
    std::unordered_set<std::uint32_t> seen;
    std::vector<Mat2> frontier{mat2_identity()};
    seen.insert(id_key);
    const Mat2 gens[2] = {a, b};
    std::vector<Mat2> next;
    while (!frontier.empty()) {
        next.clear();
        for (const Mat2& m : frontier) {
            for (const Mat2& g : gens) {
                Mat2 prod = mat2_mul(F, m, g);
                std::uint32_t key = pack_mat2(prod);
                if (!seen.insert(key).second) continue;
                if (int(seen.size()) > max_order) return false;
                if (!mat2_fixed_point_free(F, prod)) return false;
                next.push_back(prod);
            }
        }
        frontier.swap(next);
    }
    out.assign(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return true;
}

// --- field reduction: GF(q^2)^2 read as GF(q)^4 ---

struct FieldReduction {
    FieldPtr F;                 // base field GF(q)
    FieldPtr E;                 // quadratic extension GF(q^2)
    std::vector<Fel> emb;       // F codes -> E codes
    std::vector<std::array<Fel, 2>> dec; // E code -> coordinates in basis {1, w}

    Vec4 to_vec4(Fel x, Fel y) const {
        return {dec[x][0], dec[x][1], dec[y][0], dec[y][1]};
    }
};

FieldReduction make_reduction(int q) {
    FieldReduction R;
    R.F = Field::for_order(q);
    R.E = Field::get(R.F->p(), 2 * R.F->k());
    R.emb = R.F->embedding_into(*R.E);
    const Field& E = *R.E;
    Fel w = E.generator();
    R.dec.assign(size_t(E.q()), {0, 0});
    std::vector<char> hit(size_t(E.q()), 0);
    for (Fel x0 = 0; x0 < R.F->q(); ++x0)
        for (Fel x1 = 0; x1 < R.F->q(); ++x1) {
            Fel code = E.add(R.emb[x0], E.mul(R.emb[x1], w));
            if (hit[code]) throw Error("internal: {1, w} is not a basis of the quadratic extension");
            hit[code] = 1;
            R.dec[code] = {x0, x1};
        }
    return R;
}

using EMat2 = std::array<std::array<Fel, 2>, 2>; // 2x2 over the extension

// F_q-linear 4x4 matrix of the map (x, y) -> (x, y)^(q^e) * M on GF(q^2)^2,
// rows listing the images of the basis (1,0), (w,0), (0,1), (0,w).
Mat4 lift_to_mat4(const FieldReduction& R, const EMat2& M, int qpow) {
    const Field& E = *R.E;
    Fel w = E.generator();
    const std::array<Fel, 2> basis_pts[4] = {
        {E.one(), E.zero()}, {w, E.zero()}, {E.zero(), E.one()}, {E.zero(), w}};
    int frob_steps = qpow * R.F->k(); // q-power = p^k-power
    Mat4 out{};
    for (int i = 0; i < 4; ++i) {
        Fel x = E.frobenius(basis_pts[i][0], frob_steps);
        Fel y = E.frobenius(basis_pts[i][1], frob_steps);
        Fel ix = E.add(E.mul(x, M[0][0]), E.mul(y, M[1][0]));
        Fel iy = E.add(E.mul(x, M[0][1]), E.mul(y, M[1][1]));
        out[i] = R.to_vec4(ix, iy);
    }
    return out;
}

EMat2 emat2_identity(const Field& E) { return {{{E.one(), E.zero()}, {E.zero(), E.one()}}}; }

// Everything regular_spread derives, kept together so spread_minus_line can
// reuse the same coordinates, form choice and transport.
struct SpreadData {
    FieldReduction R;
    GraphPtr graph;
    GramMatrix gram0;                   // invariant form of the raw coordinates
    Mat4 transport;                     // raw -> standard model
    std::vector<std::array<Fel, 2>> epoints; // E-line representatives, by member order
    std::vector<int> members;           // matching vertex indices (standard model)
    std::vector<SemilinearMap> generators; // standard-model similitudes
};

SemilinearMap lift_generator(const SpreadData& S, const EMat2& M, int qpow) {
    SemilinearMap raw{S.R.F, lift_to_mat4(S.R, M, qpow), 0};
    return conjugate_semilinear(raw, S.transport);
}

SpreadData build_spread_data(int q) {
    SpreadData S;
    S.R = make_reduction(q);
    const Field& F = *S.R.F;
    const Field& E = *S.R.E;
    Fel w = E.generator();

    // one projective E-point per spread line: (1, y) for y in E, then (0, 1)
    for (Fel y = 0; y < E.q(); ++y) S.epoints.push_back({E.one(), y});
    S.epoints.push_back({E.zero(), E.one()});

    std::vector<ProjLine> raw_lines;
    for (const auto& pt : S.epoints) {
        Vec4 u = S.R.to_vec4(pt[0], pt[1]);
        Vec4 v = S.R.to_vec4(E.mul(w, pt[0]), E.mul(w, pt[1]));
        raw_lines.push_back(line_from_span(F, u, v));
    }

    // raw generators: SL2(q^2) transvections, a determinant scaler with
    // determinant in the base field, and the q-power Frobenius
    std::vector<std::pair<EMat2, int>> raw_gens;
    for (int i = 0; i < E.k(); ++i) {
        Fel c = E.pow(w, i);
        raw_gens.push_back({EMat2{{{E.one(), c}, {E.zero(), E.one()}}}, 0});
        raw_gens.push_back({EMat2{{{E.one(), E.zero()}, {c, E.one()}}}, 0});
    }
    if (F.q() > 2) {
        Fel wf = S.R.emb[F.generator()];
        raw_gens.push_back({EMat2{{{wf, E.zero()}, {E.zero(), E.one()}}}, 0});
    }
    raw_gens.push_back({emat2_identity(E), 1});

    // The invariant-form solution space of a regular spread is 2-dimensional
    // and the Frobenius generator is a similitude of only part of it, so scan
    // for a member compatible with every generator.
    auto forms = invariant_forms(F, raw_lines, 4096);
    bool chosen = false;
    for (const GramMatrix& g : forms) {
        bool ok = true;
        for (const auto& [M, qpow] : raw_gens) {
            SemilinearMap raw{S.R.F, lift_to_mat4(S.R, M, qpow), 0};
            if (!is_similitude(raw, g)) { ok = false; break; }
        }
        if (ok) { S.gram0 = g; chosen = true; break; }
    }
    if (!chosen) throw Error("internal: no generator-compatible invariant form for the field-reduction spread");

    S.transport = transport_map(F, S.gram0, standard_gram(F));
    S.graph = standard_graph(q);
    const GQModel& model = *S.graph->model;
    for (const ProjLine& l : raw_lines) {
        ProjLine moved = line_from_span(F, vec_mat(F, l.rows[0], S.transport),
                                        vec_mat(F, l.rows[1], S.transport));
        int idx = model.line_index(moved);
        if (idx < 0) throw Error("internal: transported spread line missing from the standard model");
        S.members.push_back(S.graph->num_points + idx);
    }
    for (const auto& [M, qpow] : raw_gens) S.generators.push_back(lift_generator(S, M, qpow));
    return S;
}

} // namespace

GraphPtr standard_graph(int q) {
    static std::mutex mu;
    static std::map<int, GraphPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    GraphPtr g = IncidenceGraph::build(build_w3(q));
    cache.emplace(q, g);
    return g;
}

Mat2 mat2_identity() { return Mat2{{{1, 0}, {0, 1}}}; }

Mat2 mat2_mul(const Field& F, const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = F.add(F.mul(a[i][0], b[0][j]), F.mul(a[i][1], b[1][j]));
    return r;
}

Fel mat2_det(const Field& F, const Mat2& a) {
    return F.sub(F.mul(a[0][0], a[1][1]), F.mul(a[0][1], a[1][0]));
}

bool mat2_fixed_point_free(const Field& F, const Mat2& a) {
    // 1 is an eigenvalue exactly when det(a - I) = 0
    Fel d = F.sub(F.mul(F.sub(a[0][0], 1), F.sub(a[1][1], 1)), F.mul(a[0][1], a[1][0]));
    return d != 0;
}

void validate_sl2_subgroup(const Field& F, const SL2Subgroup& G) {
    if (G.q != F.q()) throw Error("subgroup order field mismatch");
    long long expected = (long long)F.q() * F.q() - 1;
    if ((long long)G.elements.size() != expected)
        throw Error("subgroup has " + std::to_string(G.elements.size()) + " elements, expected " +
                    std::to_string(expected));
    std::unordered_set<std::uint32_t> keys;
    bool has_identity = false;
    for (const Mat2& m : G.elements) {
        if (!keys.insert(pack_mat2(m)).second) throw Error("subgroup contains a repeated element");
        if (mat2_det(F, m) != F.one()) throw Error("subgroup element with determinant != 1");
        bool is_id = m == mat2_identity();
        has_identity = has_identity || is_id;
        if (!is_id && !mat2_fixed_point_free(F, m))
            throw Error("non-identity subgroup element fixes a nonzero vector");
    }
    if (!has_identity) throw Error("subgroup does not contain the identity");
    for (const Mat2& a : G.elements)
        for (const Mat2& b : G.elements)
            if (!keys.count(pack_mat2(mat2_mul(F, a, b))))
                throw Error("subgroup is not closed under multiplication");
}

std::vector<SL2Subgroup> sharply_transitive_subgroups(int q) {
    if (q > 11) throw Error("sharply transitive subgroup search supports q <= 11 only");
    FieldPtr Fp = Field::for_order(q);
    const Field& F = *Fp;
    const int target = q * q - 1;

    // all of SL2(q), and the candidate generators: fixed-point-free elements
    std::vector<Mat2> sl2;
    for (Fel a = 0; a < q; ++a)
        for (Fel b = 0; b < q; ++b)
            for (Fel c = 0; c < q; ++c)
                for (Fel d = 0; d < q; ++d) {
                    Mat2 m{{{a, b}, {c, d}}};
                    if (mat2_det(F, m) == F.one()) sl2.push_back(m);
                }
    std::vector<Mat2> candidates;
    for (const Mat2& m : sl2)
        if (!(m == mat2_identity()) && mat2_fixed_point_free(F, m)) candidates.push_back(m);

    // closure of every generator pair (including equal pairs, for the cyclic
    // case), parallelised over the first index; results merged canonically
    std::set<std::vector<std::uint32_t>> found;
    std::mutex found_mu;
    const size_t n = candidates.size();
    unsigned int workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> pool;
    for (unsigned int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t]() {
            std::set<std::vector<std::uint32_t>> local;
            std::vector<std::uint32_t> closure;
            for (size_t i = t; i < n; i += workers)
                for (size_t j = i; j < n; ++j)
                    if (pair_closure(F, candidates[i], candidates[j], target, closure) &&
                        int(closure.size()) == target)
                        local.insert(closure);
            std::lock_guard<std::mutex> lock(found_mu);
            for (auto& s : local) found.insert(s);
        });
    }
    for (auto& th : pool) th.join();

    // keep one representative per GL2(q)-conjugacy class
    std::vector<Mat2> gl2;
    for (const Mat2& m : sl2) gl2.push_back(m); // det 1
    for (Fel a = 0; a < q; ++a)
        for (Fel b = 0; b < q; ++b)
            for (Fel c = 0; c < q; ++c)
                for (Fel d = 0; d < q; ++d) {
                    Mat2 m{{{a, b}, {c, d}}};
                    Fel det = mat2_det(F, m);
                    if (det != 0 && det != F.one()) gl2.push_back(m);
                }
    std::vector<Mat2> gl2_inv(gl2.size());
    for (size_t i = 0; i < gl2.size(); ++i) {
        const Mat2& m = gl2[i];
        Fel det_inv = F.inv(mat2_det(F, m));
        gl2_inv[i] = Mat2{{{F.mul(det_inv, m[1][1]), F.neg(F.mul(det_inv, m[0][1]))},
                           {F.neg(F.mul(det_inv, m[1][0])), F.mul(det_inv, m[0][0])}}};
    }

    std::vector<std::vector<std::uint32_t>> reps;
    auto conjugate_into = [&](const std::vector<std::uint32_t>& sub,
                              const std::vector<std::uint32_t>& rep) {
        std::unordered_set<std::uint32_t> rep_set(rep.begin(), rep.end());
        for (size_t gi = 0; gi < gl2.size(); ++gi) {
            bool all = true;
            for (std::uint32_t key : sub) {
                Mat2 conj = mat2_mul(F, mat2_mul(F, gl2_inv[gi], unpack_mat2(key)), gl2[gi]);
                if (!rep_set.count(pack_mat2(conj))) { all = false; break; }
            }
            if (all) return true; // same size, injective, so equality
        }
        return false;
    };
    for (const auto& sub : found) {
        bool matched = false;
        for (const auto& rep : reps)
            if (conjugate_into(sub, rep)) { matched = true; break; }
        if (!matched) reps.push_back(sub);
    }

    std::vector<SL2Subgroup> out;
    for (const auto& rep : reps) {
        SL2Subgroup g;
        g.q = q;
        for (std::uint32_t key : rep) g.elements.push_back(unpack_mat2(key));
        g.label = subgroup_label(int(rep.size()));
        validate_sl2_subgroup(F, g);
        out.push_back(std::move(g));
    }
    return out;
}

ConstructionResult regular_spread(int q) {
    SpreadData S = build_spread_data(q);
    ConstructionResult r;
    r.code = Code(S.graph, S.members);
    r.claimed = {4, 2, q * q + 1, "spread"};
    r.nt_generators = S.generators;
    r.name = "regular-spread";
    r.parameters = q_params(q);
    return r;
}

ConstructionResult spread_minus_line(int q) {
    SpreadData S = build_spread_data(q);
    const Field& E = *S.R.E;
    Fel w = E.generator();

    size_t removed_pos = size_t(std::min_element(S.members.begin(), S.members.end()) -
                                S.members.begin());
    const std::array<Fel, 2> v0 = S.epoints[removed_pos];

    // determinant-1 matrix R with (1, 0) R = v0; conjugating the stabiliser
    // of <(1,0)> by R gives the stabiliser of the removed line's subspace
    EMat2 R{};
    if (v0[0] != 0) {
        R = EMat2{{{v0[0], v0[1]}, {E.zero(), E.inv(v0[0])}}};
    } else {
        R = EMat2{{{E.zero(), v0[1]}, {E.neg(E.inv(v0[1])), E.zero()}}};
    }
    auto conj = [&](const EMat2& g, int qpow) -> std::pair<EMat2, int> {
        // x -> ((x R^{-1})^(q^e)) g R, an E-semilinear map with matrix
        // frob(R^{-1}) g R and the same twist
        Fel det = E.sub(E.mul(R[0][0], R[1][1]), E.mul(R[0][1], R[1][0]));
        Fel di = E.inv(det);
        EMat2 Rinv{{{E.mul(di, R[1][1]), E.neg(E.mul(di, R[0][1]))},
                    {E.neg(E.mul(di, R[1][0])), E.mul(di, R[0][0])}}};
        int steps = qpow * S.R.F->k();
        EMat2 Rinv_f{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) Rinv_f[i][j] = E.frobenius(Rinv[i][j], steps);
        auto mul = [&](const EMat2& a, const EMat2& b) {
            EMat2 r{};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    r[i][j] = E.add(E.mul(a[i][0], b[0][j]), E.mul(a[i][1], b[1][j]));
            return r;
        };
        return {mul(mul(Rinv_f, g), R), qpow};
    };

    // stabiliser of <(1,0)>: translations, the determinant scaler, a torus
    // acting transitively on the points within each stabilised line, and the
    // q-power Frobenius
    std::vector<std::pair<EMat2, int>> stab_gens;
    for (int i = 0; i < E.k(); ++i) {
        Fel c = E.pow(w, i);
        stab_gens.push_back({EMat2{{{E.one(), E.zero()}, {c, E.one()}}}, 0});
    }
    if (S.R.F->q() > 2) {
        Fel wf = S.R.emb[S.R.F->generator()];
        stab_gens.push_back({EMat2{{{wf, E.zero()}, {E.zero(), E.one()}}}, 0});
    }
    stab_gens.push_back({EMat2{{{w, E.zero()}, {E.zero(), E.inv(w)}}}, 0});
    stab_gens.push_back({emat2_identity(E), 1});

    ConstructionResult r;
    std::vector<int> members;
    for (size_t i = 0; i < S.members.size(); ++i)
        if (i != removed_pos) members.push_back(S.members[i]);
    r.code = Code(S.graph, std::move(members));
    r.claimed = {4, 4, q * q, "partial spread"};
    for (const auto& [g, qpow] : stab_gens) {
        auto [m, e] = conj(g, qpow);
        r.nt_generators.push_back(lift_generator(S, m, e));
    }
    r.name = "spread-minus-line";
    r.parameters = q_params(q);
    return r;
}

ConstructionResult hyperbolic_line_code(int q) {
    GraphPtr graph = standard_graph(q);
    const GQModel& model = *graph->model;
    const Field& F = *model.field;

    std::vector<int> members;
    for (Fel t = 0; t < F.q(); ++t)
        members.push_back(model.point_index(normalize_point(F, {F.one(), t, 0, 0})));
    members.push_back(model.point_index(normalize_point(F, {0, F.one(), 0, 0})));

    ConstructionResult r;
    r.code = Code(graph, std::move(members));
    r.claimed = {4, 3, q + 1, "maximal partial ovoid"};
    Mat2 id2 = mat2_identity();
    for (const Mat2& x : sl2_generators(F)) {
        r.nt_generators.push_back({model.field, block_diag(x, id2), 0});
        r.nt_generators.push_back({model.field, block_diag(id2, x), 0});
    }
    r.name = "hyperbolic-line";
    r.parameters = q_params(q);
    return r;
}

ConstructionResult coolsaet_partial_spread(int q, const SL2Subgroup& G) {
    FieldPtr Fp = Field::for_order(q);
    const Field& F = *Fp;
    validate_sl2_subgroup(F, G);

    GraphPtr graph = standard_graph(q);
    const GQModel& model = *graph->model;
    GramMatrix split = alternate_gram(F);
    Mat4 T = transport_map(F, split, standard_gram(F));

    std::vector<int> members;
    for (const Mat2& A : G.elements) {
        Vec4 r0{F.one(), 0, A[0][0], A[0][1]};
        Vec4 r1{0, F.one(), A[1][0], A[1][1]};
        ProjLine moved = line_from_span(F, vec_mat(F, r0, T), vec_mat(F, r1, T));
        int idx = model.line_index(moved);
        if (idx < 0) throw Error("internal: block line missing from the standard model");
        members.push_back(graph->num_points + idx);
    }

    ConstructionResult r;
    r.code = Code(graph, std::move(members));
    r.claimed = {4, 3, q * q - 1, "maximal partial spread"};
    for (const Mat2& X : G.elements)
        for (const Mat2& Y : G.elements)
            r.nt_generators.push_back(
                conjugate_semilinear({Fp, block_diag(X, Y), 0}, T));
    r.nt_generators.push_back(conjugate_semilinear({Fp, block_swap(), 0}, T));
    r.name = "coolsaet";
    r.parameters = q_params(q) + " subgroup=" + G.label;
    return r;
}

ConstructionResult w33_five_code() {
    GraphPtr graph = standard_graph(3);
    const GQModel& model = *graph->model;
    const Field& F = *model.field;

    static const int rows[5][2][4] = {
        {{1, 0, 1, 0}, {1, 1, 2, 2}},
        {{1, 0, 0, 1}, {1, 1, 1, 2}},
        {{1, 0, 2, 1}, {1, 1, 0, 1}},
        {{1, 0, 1, 2}, {1, 1, 1, 1}},
        {{1, 0, 2, 2}, {1, 1, 2, 0}},
    };
    std::vector<int> members;
    for (const auto& m : rows) {
        Vec4 a{Fel(m[0][0]), Fel(m[0][1]), Fel(m[0][2]), Fel(m[0][3])};
        Vec4 b{Fel(m[1][0]), Fel(m[1][1]), Fel(m[1][2]), Fel(m[1][3])};
        int idx = model.line_index(line_from_span(F, a, b));
        if (idx < 0) throw Error("internal: stored five-line matrix is not a line of the model");
        members.push_back(graph->num_points + idx);
    }

    ConstructionResult r;
    r.code = Code(graph, std::move(members));
    r.claimed = {4, 3, 5, "maximal partial spread"};
    r.name = "five-lines";
    r.parameters = q_params(3);
    return r;
}

ConstructionResult pair_code(int q, PairSide side) {
    GraphPtr graph = standard_graph(q);
    const GQModel& model = *graph->model;
    const Field& F = *model.field;
    FieldPtr Fp = model.field;

    // involution exchanging e1<->e2 and e3<->e4, which swaps the two members
    Mat4 cross{};
    cross[0][1] = 1; cross[1][0] = 1; cross[2][3] = 1; cross[3][2] = 1;

    ConstructionResult r;
    if (side == PairSide::Points) {
        std::vector<int> members{
            model.point_index(normalize_point(F, {F.one(), 0, 0, 0})),
            model.point_index(normalize_point(F, {0, F.one(), 0, 0}))};
        r.code = Code(graph, std::move(members));
        Mat2 id2 = mat2_identity();
        for (const Mat2& x : sl2_generators(F))
            r.nt_generators.push_back({Fp, block_diag(id2, x), 0});
        r.nt_generators.push_back({Fp, cross, 0});
        r.parameters = q_params(q) + " side=points";
    } else {
        std::vector<int> members{
            graph->num_points + model.line_index(line_from_span(F, {F.one(), 0, 0, 0}, {0, 0, F.one(), 0})),
            graph->num_points + model.line_index(line_from_span(F, {0, F.one(), 0, 0}, {0, 0, 0, F.one()}))};
        r.code = Code(graph, std::move(members));
        // maps e1 -> e1 + c e3, e4 -> e4 - c e2: fix both members setwise and
        // act as transvections on the points of the first
        Fel w = F.generator();
        for (int i = 0; i < F.k(); ++i) {
            Fel c = F.pow(w, i);
            Mat4 m = mat_identity();
            m[0][2] = c;
            m[3][1] = F.neg(c);
            r.nt_generators.push_back({Fp, m, 0});
        }
        r.nt_generators.push_back({Fp, block_swap(), 0});
        r.nt_generators.push_back({Fp, cross, 0});
        r.parameters = q_params(q) + " side=lines";
    }
    r.claimed = {4, -1, 2, ""};
    r.name = "pair";
    return r;
}

std::vector<ConstructionResult> all_constructions(int q) {
    std::vector<ConstructionResult> out;
    out.push_back(regular_spread(q));
    out.push_back(spread_minus_line(q));
    out.push_back(hyperbolic_line_code(q));
    out.push_back(pair_code(q, PairSide::Points));
    out.push_back(pair_code(q, PairSide::Lines));
    if (q == 3) out.push_back(w33_five_code());
    if (q <= 11) {
        for (const SL2Subgroup& G : sharply_transitive_subgroups(q))
            out.push_back(coolsaet_partial_spread(q, G));
    }
    return out;
}

namespace {

// Move a construction from the standard form to the split one: members map
// through the coordinate transport, attached generators by conjugation.
ConstructionResult transport_construction(const ConstructionResult& r) {
    const FieldPtr field = r.code.graph->model->field;
    const Field& F = *field;
    const GramMatrix source = standard_gram(F);
    const GramMatrix target = alternate_gram(F);
    if (source.m == target.m) return r; // characteristic 2: the forms coincide

    const Mat4 T = transport_map(F, source, target);
    GraphPtr graph = IncidenceGraph::build(build_w3(field, target));
    const GQModel& model = *graph->model;
    const GQModel& old = *r.code.graph->model;

    std::vector<int> members;
    for (int v : r.code.members) {
        int idx;
        if (r.code.graph->is_point(v)) {
            idx = model.point_index(normalize_point(F, vec_mat(F, old.points[std::size_t(v)].x, T)));
        } else {
            const ProjLine& l = old.lines[std::size_t(v - r.code.graph->num_points)];
            idx = model.line_index(line_from_span(F, vec_mat(F, l.rows[0], T), vec_mat(F, l.rows[1], T)));
            if (idx >= 0) idx += graph->num_points;
        }
        if (idx < 0) throw Error("internal: transported member missing from the target model");
        members.push_back(idx);
    }

    ConstructionResult out = r;
    out.code = Code(std::move(graph), std::move(members));
    out.nt_generators.clear();
    for (const SemilinearMap& m : r.nt_generators)
        out.nt_generators.push_back(conjugate_semilinear(m, T));
    return out;
}

} // namespace

ConstructionResult named_construction(const std::string& name, int q,
                                      const std::string& subgroup,
                                      const std::string& pair_side,
                                      const std::string& gram) {
    if (gram != "standard" && gram != "split")
        throw Error("gram must be \"standard\" or \"split\"");

    const auto build = [&]() -> ConstructionResult {
        if (name == "regular-spread") return regular_spread(q);
        if (name == "spread-minus-line") return spread_minus_line(q);
        if (name == "hyperbolic-line") return hyperbolic_line_code(q);
        if (name == "w33-five") {
            if (q != 3) throw Error("w33-five exists only at q=3");
            return w33_five_code();
        }
        if (name == "pair") {
            if (pair_side != "points" && pair_side != "lines")
                throw Error("pair side must be \"points\" or \"lines\"");
            return pair_code(q, pair_side == "lines" ? PairSide::Lines : PairSide::Points);
        }
        if (name == "coolsaet") {
            const std::vector<SL2Subgroup> subs = sharply_transitive_subgroups(q);
            if (subs.empty())
                throw Error("no sharply transitive subgroup of the required order exists at q=" +
                            std::to_string(q));
            if (subgroup.empty()) return coolsaet_partial_spread(q, subs.front());
            for (const SL2Subgroup& G : subs)
                if (G.label == subgroup) return coolsaet_partial_spread(q, G);
            std::string labels;
            for (const SL2Subgroup& G : subs) labels += (labels.empty() ? "" : ", ") + G.label;
            throw Error("unknown subgroup label \"" + subgroup + "\" (available: " + labels + ")");
        }
        throw Error("unknown construction \"" + name + "\"");
    };

    ConstructionResult r = build();
    if (gram == "split") r = transport_construction(r);
    return r;
}

} // namespace gq
