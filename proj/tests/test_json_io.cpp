#include "doctest.h"

#include <string>
#include <vector>

#include "json.hpp"

#include "gq/constructions.hpp"
#include "gq/json_io.hpp"
#include "gq/search.hpp"

using namespace gq;

TEST_CASE("json: code round-trip is byte-identical across constructions") {
    for (int q : {2, 3, 4}) {
        for (const ConstructionResult& r : all_constructions(q)) {
            INFO(r.name, " q=", q);
            const std::string text = code_to_json(r.code);
            const Code parsed = code_from_json(text);
            CHECK(parsed.members == r.code.members);
            CHECK(parsed.graph->n == r.code.graph->n);
            CHECK(code_to_json(parsed) == text);
            // compact form parses to the same code
            CHECK(code_from_json(code_to_json(r.code, -1)).members == r.code.members);
        }
    }
}

TEST_CASE("json: member coordinates are representative-independent") {
    const Code code = regular_spread(3).code;
    const std::string text = code_to_json(code);
    nlohmann::json j = nlohmann::json::parse(text);

    // a line may be given by any basis of its row space: replace the first
    // member's rows by (2*r0 + r1, 2*r1)
    const Field& F = *code.graph->model->field;
    auto& rows = j["members"][0]["matrix"];
    nlohmann::json r0 = rows[0], r1 = rows[1];
    for (int c = 0; c < 4; ++c) {
        const Fel a = F.from_coeffs(r0[c].get<std::vector<int>>());
        const Fel b = F.from_coeffs(r1[c].get<std::vector<int>>());
        const Fel two = F.from_int(2);
        rows[0][c] = F.coeffs(F.add(F.mul(two, a), b));
        rows[1][c] = F.coeffs(F.mul(two, b));
    }
    const Code reparsed = code_from_json(j.dump());
    CHECK(reparsed.members == code.members);
    CHECK(code_to_json(reparsed) == text); // canonical output restored

    // a point may be given scaled
    const Code pair = pair_code(3, PairSide::Points).code;
    nlohmann::json pj = nlohmann::json::parse(code_to_json(pair));
    auto& coords = pj["members"][0]["coords"];
    for (int c = 0; c < 4; ++c) {
        const Fel a = F.from_coeffs(coords[c].get<std::vector<int>>());
        coords[c] = F.coeffs(F.mul(F.from_int(2), a));
    }
    CHECK(code_from_json(pj.dump()).members == pair.members);
}

TEST_CASE("json: mixed codes serialise with both member kinds") {
    const SearchReport r = max_delta3_code(2);
    const Code& witness = r.representatives.front().code;
    REQUIRE(witness.side() == Side::Mixed);
    const std::string text = code_to_json(witness);
    const nlohmann::json j = nlohmann::json::parse(text);
    bool saw_point = false, saw_line = false;
    for (const auto& m : j["members"]) {
        if (m["kind"] == "point") saw_point = true;
        if (m["kind"] == "line") saw_line = true;
    }
    CHECK(saw_point);
    CHECK(saw_line);
    CHECK(code_from_json(text).members == witness.members);
}

TEST_CASE("json: malformed code files are rejected with a reason") {
    const std::string good = code_to_json(regular_spread(2).code);

    CHECK_THROWS_WITH_AS(code_from_json("{ not json"),
                         doctest::Contains("parse error"), Error);
    CHECK_THROWS_WITH_AS(code_from_json("[1,2,3]"),
                         doctest::Contains("object"), Error);

    nlohmann::json j = nlohmann::json::parse(good);
    j.erase("format");
    CHECK_THROWS_WITH_AS(code_from_json(j.dump()), doctest::Contains("format"), Error);
    j = nlohmann::json::parse(good);
    j["format"] = 2;
    CHECK_THROWS_WITH_AS(code_from_json(j.dump()), doctest::Contains("format"), Error);

    j = nlohmann::json::parse(good);
    j["q"] = 6;
    CHECK_THROWS_WITH_AS(code_from_json(j.dump()), doctest::Contains("q=6"), Error);

    j = nlohmann::json::parse(good);
    j["members"] = nlohmann::json::array();
    CHECK_THROWS_WITH_AS(code_from_json(j.dump()), doctest::Contains("no members"), Error);

    // non-isotropic line: rows e1, e2 pair to 1 under the standard form
    j = nlohmann::json::parse(good);
    j["members"][0]["matrix"] = {{{1}, {0}, {0}, {0}}, {{0}, {1}, {0}, {0}}};
    CHECK_THROWS_WITH_AS(code_from_json(j.dump()),
                         doctest::Contains("isotropic"), Error);

    // rank-1 matrix
    j = nlohmann::json::parse(good);
    j["members"][0]["matrix"] = {{{1}, {0}, {0}, {0}}, {{1}, {0}, {0}, {0}}};
    CHECK_THROWS_WITH_AS(code_from_json(j.dump()), doctest::Contains("rank"), Error);

    // duplicate member (same line under a different basis)
    j = nlohmann::json::parse(good);
    j["members"].push_back(j["members"][0]);
    CHECK_THROWS_WITH_AS(code_from_json(j.dump()), doctest::Contains("duplicate"), Error);

    // coordinate out of range
    j = nlohmann::json::parse(good);
    j["members"][0]["matrix"][0][0] = {7};
    CHECK_THROWS_WITH_AS(code_from_json(j.dump()), doctest::Contains("out of range"), Error);

    // bad kind
    j = nlohmann::json::parse(good);
    j["members"][0]["kind"] = "plane";
    CHECK_THROWS_WITH_AS(code_from_json(j.dump()), doctest::Contains("kind"), Error);
}

TEST_CASE("json: certificates with matrix generators replay") {
    for (int q : {2, 3}) {
        INFO("q = ", q);
        const ConstructionResult r = regular_spread(q);
        const NTCertificate cert = certify_nt(r.code, r.nt_generators, 1);
        REQUIRE(cert.success);

        const std::string text = certificate_to_json(cert);
        const NTCertificate parsed = certificate_from_json(text, r.code);
        CHECK(parsed.level == cert.level);
        CHECK(parsed.success == cert.success);
        CHECK(parsed.cell_sizes == cert.cell_sizes);
        CHECK(parsed.orbit_counts == cert.orbit_counts);
        CHECK(parsed.generators.size() == cert.generators.size());
        CHECK(parsed.matrix_generators.size() == cert.matrix_generators.size());
        for (bool p : parsed.generator_preserves_code) CHECK(p);
        CHECK(replay_certificate(r.code, parsed));
        CHECK(certificate_to_json(parsed) == text);
    }
}

TEST_CASE("json: certificates with permutation generators cover dualities") {
    // a flag {point, incident line} can be stabilised by side-swapping
    // automorphisms, which only the permutation encoding can carry
    const GraphPtr graph = standard_graph(2);
    const int n_points = static_cast<int>(graph->model->points.size());
    const int line0 = graph->model->point_lines[0][0];
    const Code flag(graph, {0, n_points + line0});

    const PermGroup& group = ambient_group(2);
    const PermGroup stab = group.setwise_stabiliser(flag.members);
    CHECK(stab.order() == 32);

    NTCertificate cert = certify_nt(flag, stab.elements(), 1);
    REQUIRE(cert.success);
    REQUIRE(cert.matrix_generators.empty());

    const std::string text = certificate_to_json(cert);
    const NTCertificate parsed = certificate_from_json(text, flag);
    CHECK(parsed.matrix_generators.empty());
    CHECK(parsed.generators.size() == cert.generators.size());
    bool any_swaps = false;
    for (const VertexPerm& g : parsed.generators) any_swaps |= g.swaps_sides();
    CHECK(any_swaps);
    CHECK(replay_certificate(flag, parsed));
    CHECK(certificate_to_json(parsed) == text);
}

TEST_CASE("json: tampered certificates fail replay or parsing") {
    const ConstructionResult r = regular_spread(2);
    const NTCertificate cert = certify_nt(r.code, r.nt_generators, 1);
    const std::string text = certificate_to_json(cert);

    // cell sizes that do not match the recomputation
    nlohmann::json j = nlohmann::json::parse(text);
    j["cell_sizes"][0] = 14;
    CHECK_FALSE(replay_certificate(r.code, certificate_from_json(j.dump(), r.code)));

    // wrong field size
    j = nlohmann::json::parse(text);
    j["q"] = 3;
    CHECK_THROWS_WITH_AS(certificate_from_json(j.dump(), r.code),
                         doctest::Contains("field size"), Error);

    // frobenius power out of range for a prime field
    j = nlohmann::json::parse(text);
    j["generators"][0]["frob"] = 1;
    CHECK_THROWS_WITH_AS(certificate_from_json(j.dump(), r.code),
                         doctest::Contains("frobenius"), Error);

    // permutation of the wrong length
    j = nlohmann::json::parse(text);
    j["generators"][0] = {{"kind", "perm"}, {"images", {0, 1, 2}}};
    CHECK_THROWS_WITH_AS(certificate_from_json(j.dump(), r.code),
                         doctest::Contains("length"), Error);

    // level out of range
    j = nlohmann::json::parse(text);
    j["level"] = 9;
    CHECK_THROWS_WITH_AS(certificate_from_json(j.dump(), r.code),
                         doctest::Contains("level"), Error);

    // a certificate for a different code: members mismatch fails replay
    const Code other = hyperbolic_line_code(2).code;
    CHECK_FALSE(replay_certificate(other, certificate_from_json(text, other)));
}
