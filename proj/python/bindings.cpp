// Python extension module.  The boundary is JSON text: every structured
// result crosses as the same versioned JSON the command-line tool emits, and
// the pure-python package parses it into plain dicts.  This keeps one
// serialisation path for all front ends.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "gq/codegraph.hpp"
#include "gq/constructions.hpp"
#include "gq/errors.hpp"
#include "gq/groupaction.hpp"
#include "gq/json_io.hpp"
#include "gq/reports.hpp"
#include "gq/search.hpp"
#include "gq/verify.hpp"

namespace py = pybind11;

namespace {

gq::Side parse_side(const std::string& name) {
    if (name == "points") return gq::Side::Points;
    if (name == "lines") return gq::Side::Lines;
    if (name == "mixed") return gq::Side::Mixed;
    throw gq::Error("side must be points, lines or mixed");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact code metrics, symmetry certificates and exhaustive searches "
              "in the symplectic quadrangle (JSON-string boundary)";

    const py::object error = py::register_exception<gq::Error>(m, "Error");
    py::register_exception<gq::CapError>(m, "CapError", error.ptr());

    m.def(
        "construct",
        [](const std::string& name, int q, const std::string& subgroup,
           const std::string& pair_side, const std::string& gram, bool certificate,
           int level, int indent) {
            const gq::ConstructionResult r =
                gq::named_construction(name, q, subgroup, pair_side, gram);
            py::dict out;
            out["code"] = gq::code_to_json(r.code, indent);
            out["report"] = gq::construct_report_json(r, indent);
            if (certificate) {
                if (r.nt_generators.empty())
                    throw gq::Error(
                        "this construction carries no generators; use decide_certificate");
                out["certificate"] = gq::certificate_to_json(
                    gq::certify_nt(r.code, r.nt_generators, level), indent);
            }
            return out;
        },
        py::arg("name"), py::arg("q") = 2, py::arg("subgroup") = "",
        py::arg("pair_side") = "points", py::arg("gram") = "standard",
        py::arg("certificate") = false, py::arg("level") = 1, py::arg("indent") = 2,
        "Build a named code family; returns {'code', 'report'[, 'certificate']} as JSON text.");

    m.def(
        "analyze",
        [](const std::string& code_json, int indent) {
            return gq::analyze_report_json(gq::code_from_json(code_json), indent);
        },
        py::arg("code_json"), py::arg("indent") = 2,
        "Recompute metrics and classification for a Code JSON document.");

    m.def(
        "decide",
        [](const std::string& code_json, std::uint64_t cap, int indent) {
            return gq::decide_report_json(gq::decide_nt(gq::code_from_json(code_json), cap),
                                          indent);
        },
        py::arg("code_json"), py::arg("cap") = gq::PermGroup::kDefaultCap,
        py::arg("indent") = 2,
        "Decide neighbour-transitivity exactly from the full symmetry group.");

    m.def(
        "decide_certificate",
        [](const std::string& code_json, std::uint64_t cap, int level, int indent) {
            const gq::Code code = gq::code_from_json(code_json);
            const gq::NTDecision d = gq::decide_nt(code, cap);
            if (!d.is_nt) throw gq::Error("the code is not neighbour-transitive");
            return gq::certificate_to_json(
                gq::certify_nt(code, d.stabiliser->generators(), level), indent);
        },
        py::arg("code_json"), py::arg("cap") = gq::PermGroup::kDefaultCap,
        py::arg("level") = 1, py::arg("indent") = 2,
        "Export a replayable certificate built from the code's stabiliser.");

    m.def(
        "certify",
        [](const std::string& code_json, const std::string& cert_json, int indent) {
            const gq::Code code = gq::code_from_json(code_json);
            const gq::NTCertificate cert = gq::certificate_from_json(cert_json, code);
            const bool ok = gq::replay_certificate(code, cert);
            return py::make_tuple(ok, gq::certify_report_json(cert, ok, indent));
        },
        py::arg("code_json"), py::arg("certificate_json"), py::arg("indent") = 2,
        "Replay a stored certificate; returns (replay_ok, report_json).");

    m.def(
        "search",
        [](int q, const std::string& side, int size_min, int size_max, int delta, bool nt,
           bool maximal, int workers, int indent) {
            gq::SearchSpec spec;
            spec.q = q;
            spec.side = parse_side(side);
            spec.size_min = size_min;
            spec.size_max = size_max;
            spec.delta_min = delta;
            spec.nt_filter = nt;
            spec.maximal_only = maximal;
            spec.workers = workers;
            const gq::SearchReport report = gq::enumerate_codes(spec);
            py::list codes;
            for (const gq::CodeAnalysis& a : report.representatives)
                codes.append(gq::code_to_json(a.code, -1));
            return py::make_tuple(codes, gq::search_summary_json(report, indent));
        },
        py::arg("q"), py::arg("side"), py::arg("size_min"), py::arg("size_max"),
        py::arg("delta") = 4, py::arg("nt") = false, py::arg("maximal") = false,
        py::arg("workers") = 1, py::arg("indent") = 2,
        "Isomorph-free enumeration; returns ([code_json, ...], summary_json).");

    m.def("claim_tags", &gq::claim_tags, "Tags of the claim catalogue, in order.");
    m.def("claim_summary", &gq::claim_summary, py::arg("tag"),
          "One-line statement of what a claim checks.");

    m.def(
        "verify",
        [](const std::vector<std::string>& tags, int workers, int indent) {
            py::gil_scoped_release release;
            const std::vector<gq::ClaimResult> results = gq::verify_claims(tags, workers);
            py::gil_scoped_acquire acquire;
            return gq::claims_report_json(results, indent);
        },
        py::arg("tags") = std::vector<std::string>{}, py::arg("workers") = 1,
        py::arg("indent") = 2,
        "Re-derive claims from the catalogue (all of them when tags is empty).");

    m.def("divisibility_check", &gq::divisibility_check, py::arg("s"), py::arg("t"),
          py::arg("group_order"),
          "Whether (t+1)(st+1) divides the group order, as transitivity would force.");
}
