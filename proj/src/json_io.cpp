#include "gq/json_io.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gq/errors.hpp"

namespace gq {

namespace {

using nlohmann::json;

json element_to_json(const Field& F, Fel a) {
    return json(F.coeffs(a));
}

Fel element_from_json(const Field& F, const json& j, const char* what) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(F.k()))
        throw Error(std::string(what) + ": field element must be an array of " +
                    std::to_string(F.k()) + " integer coordinates");
    std::vector<int> coeffs;
    for (const json& c : j) {
        if (!c.is_number_integer())
            throw Error(std::string(what) + ": coordinate is not an integer");
        const long long v = c.get<long long>();
        if (v < 0 || v >= F.p())
            throw Error(std::string(what) + ": coordinate " + std::to_string(v) +
                        " out of range for characteristic " + std::to_string(F.p()));
        coeffs.push_back(static_cast<int>(v));
    }
    return F.from_coeffs(coeffs);
}

json vec_to_json(const Field& F, const Vec4& v) {
    json out = json::array();
    for (Fel a : v) out.push_back(element_to_json(F, a));
    return out;
}

Vec4 vec_from_json(const Field& F, const json& j, const char* what) {
    if (!j.is_array() || j.size() != 4)
        throw Error(std::string(what) + ": expected an array of 4 coordinates");
    Vec4 v{};
    for (std::size_t i = 0; i < 4; ++i) v[i] = element_from_json(F, j[i], what);
    return v;
}

json mat_to_json(const Field& F, const Mat4& m) {
    json out = json::array();
    for (const Vec4& row : m) out.push_back(vec_to_json(F, row));
    return out;
}

Mat4 mat_from_json(const Field& F, const json& j, const char* what) {
    if (!j.is_array() || j.size() != 4)
        throw Error(std::string(what) + ": expected a 4x4 matrix");
    Mat4 m{};
    for (std::size_t i = 0; i < 4; ++i) m[i] = vec_from_json(F, j[i], what);
    return m;
}

json parse_checked(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("JSON parse error: ") + e.what());
    }
}

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw Error(std::string("missing field \"") + key + "\"");
    return *it;
}

void check_format(const json& j) {
    const json& f = require(j, "format");
    if (!f.is_number_integer() || f.get<int>() != 1)
        throw Error("unsupported format (expected 1)");
}

int require_int(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number_integer()) throw Error(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

// Models parsed from files are cached per (q, gram) so repeated reads do not
// re-enumerate subspaces.
GraphPtr graph_for(int q, const GramMatrix& gram) {
    static std::mutex mutex;
    static std::map<std::pair<int, std::uint64_t>, GraphPtr> cache;
    const std::uint64_t key = pack_vec4(gram.m[0]) ^ (pack_vec4(gram.m[1]) * 0x9e3779b97f4a7c15ULL) ^
                              (pack_vec4(gram.m[2]) * 0xc2b2ae3d27d4eb4fULL) ^
                              (pack_vec4(gram.m[3]) * 0x165667b19e3779f9ULL);
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({q, key});
    if (it == cache.end()) {
        auto graph = IncidenceGraph::build(build_w3(Field::for_order(q), gram));
        it = cache.emplace(std::make_pair(q, key), std::move(graph)).first;
    }
    return it->second;
}

} // namespace

std::string code_to_json(const Code& code, int indent) {
    if (!code.graph) throw Error("code has no graph");
    const GQModel& model = *code.graph->model;
    const Field& F = *model.field;

    json members = json::array();
    for (int v : code.members) {
        json entry;
        if (code.graph->is_point(v)) {
            entry["kind"] = "point";
            entry["coords"] = vec_to_json(F, model.points[static_cast<std::size_t>(v)].x);
        } else {
            const ProjLine& l = model.lines[static_cast<std::size_t>(v - code.graph->num_points)];
            entry["kind"] = "line";
            json rows = json::array();
            rows.push_back(vec_to_json(F, l.rows[0]));
            rows.push_back(vec_to_json(F, l.rows[1]));
            entry["matrix"] = std::move(rows);
        }
        members.push_back(std::move(entry));
    }

    json out;
    out["format"] = 1;
    out["q"] = F.q();
    out["gram"] = mat_to_json(F, model.gram.m);
    out["members"] = std::move(members);
    return out.dump(indent);
}

Code code_from_json(const std::string& text) {
    const json j = parse_checked(text);
    if (!j.is_object()) throw Error("code file must be a JSON object");
    check_format(j);

    const int q = require_int(j, "q");
    FieldPtr field;
    try {
        field = Field::for_order(q);
    } catch (const Error& e) {
        throw Error(std::string("bad field size q=") + std::to_string(q) + ": " + e.what());
    }
    const Field& F = *field;

    const GramMatrix gram = GramMatrix::checked(F, mat_from_json(F, require(j, "gram"), "gram"));
    const GraphPtr graph = graph_for(q, gram);
    const GQModel& model = *graph->model;

    const json& members = require(j, "members");
    if (!members.is_array()) throw Error("\"members\" must be an array");
    if (members.empty()) throw Error("code has no members");

    std::vector<int> vertices;
    for (const json& entry : members) {
        if (!entry.is_object()) throw Error("member must be an object");
        const json& kind = require(entry, "kind");
        int v = -1;
        if (kind == "point") {
            const ProjPoint p = normalize_point(F, vec_from_json(F, require(entry, "coords"), "point"));
            v = model.point_index(p);
            if (v < 0) throw Error("point not in the model"); // unreachable for valid coords
        } else if (kind == "line") {
            const json& rows = require(entry, "matrix");
            if (!rows.is_array() || rows.size() != 2)
                throw Error("line: expected a 2x4 matrix");
            Mat24 m{};
            m[0] = vec_from_json(F, rows[0], "line");
            m[1] = vec_from_json(F, rows[1], "line");
            ProjLine l;
            try {
                l = line_from_rows(F, m);
            } catch (const Error&) {
                throw Error("line: matrix does not have rank 2");
            }
            const int idx = model.line_index(l);
            if (idx < 0)
                throw Error("line is not totally isotropic for the given form");
            v = graph->num_points + idx;
        } else {
            throw Error("member \"kind\" must be \"point\" or \"line\"");
        }
        vertices.push_back(v);
    }

    std::vector<int> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error("duplicate member");
    return Code(graph, std::move(vertices));
}

std::string certificate_to_json(const NTCertificate& cert, int indent) {
    if (!cert.graph) throw Error("certificate has no graph");
    const GQModel& model = *cert.graph->model;
    const Field& F = *model.field;

    json generators = json::array();
    if (!cert.matrix_generators.empty()) {
        for (const SemilinearMap& m : cert.matrix_generators) {
            json g;
            g["kind"] = "matrix";
            g["matrix"] = mat_to_json(F, m.matrix);
            g["frob"] = m.frob;
            generators.push_back(std::move(g));
        }
    } else {
        for (const VertexPerm& p : cert.generators) {
            json g;
            g["kind"] = "perm";
            g["images"] = json(p.images());
            generators.push_back(std::move(g));
        }
    }

    json out;
    out["format"] = 1;
    out["q"] = F.q();
    out["gram"] = mat_to_json(F, model.gram.m);
    out["level"] = cert.level;
    out["generators"] = std::move(generators);
    out["cell_sizes"] = json(cert.cell_sizes);
    out["orbit_counts"] = json(cert.orbit_counts);
    out["success"] = cert.success;
    return out.dump(indent);
}

NTCertificate certificate_from_json(const std::string& text, const Code& code) {
    if (!code.graph) throw Error("code has no graph");
    const json j = parse_checked(text);
    if (!j.is_object()) throw Error("certificate file must be a JSON object");
    check_format(j);

    const Field& F = *code.graph->model->field;
    if (require_int(j, "q") != F.q())
        throw Error("certificate field size does not match the code");

    NTCertificate cert;
    cert.graph = code.graph;
    cert.code_members = code.members;
    cert.level = require_int(j, "level");
    if (cert.level < 1 || cert.level > 4) throw Error("level must be between 1 and 4");

    const json& generators = require(j, "generators");
    if (!generators.is_array() || generators.empty())
        throw Error("\"generators\" must be a non-empty array");
    for (const json& g : generators) {
        const json& kind = require(g, "kind");
        if (kind == "matrix") {
            SemilinearMap m;
            m.field = code.graph->model->field;
            m.matrix = mat_from_json(F, require(g, "matrix"), "generator");
            m.frob = require_int(g, "frob");
            if (m.frob < 0 || m.frob >= F.k())
                throw Error("generator frobenius power out of range");
            cert.matrix_generators.push_back(m);
            cert.generators.push_back(induce_permutation(m, code.graph));
        } else if (kind == "perm") {
            const json& images = require(g, "images");
            if (!images.is_array() || images.size() != static_cast<std::size_t>(code.graph->n))
                throw Error("generator permutation has the wrong length");
            std::vector<std::uint16_t> perm;
            for (const json& x : images) {
                if (!x.is_number_integer()) throw Error("permutation image is not an integer");
                const long long v = x.get<long long>();
                if (v < 0 || v >= code.graph->n) throw Error("permutation image out of range");
                perm.push_back(static_cast<std::uint16_t>(v));
            }
            cert.generators.emplace_back(code.graph, std::move(perm));
        } else {
            throw Error("generator \"kind\" must be \"matrix\" or \"perm\"");
        }
    }
    if (!cert.matrix_generators.empty() &&
        cert.matrix_generators.size() != cert.generators.size())
        throw Error("generators must be all matrices or all permutations");

    const json& cells = require(j, "cell_sizes");
    const json& orbits = require(j, "orbit_counts");
    if (!cells.is_array() || !orbits.is_array() || cells.size() != orbits.size())
        throw Error("cell_sizes and orbit_counts must be arrays of equal length");
    for (const json& c : cells) cert.cell_sizes.push_back(c.get<std::size_t>());
    for (const json& c : orbits) cert.orbit_counts.push_back(c.get<std::size_t>());

    const json& success = require(j, "success");
    if (!success.is_boolean()) throw Error("\"success\" must be a boolean");
    cert.success = success.get<bool>();
    for (const VertexPerm& g : cert.generators) {
        std::vector<int> image;
        image.reserve(code.members.size());
        for (int v : code.members) image.push_back(g[v]);
        std::sort(image.begin(), image.end());
        cert.generator_preserves_code.push_back(image == code.members);
    }
    return cert;
}

} // namespace gq
