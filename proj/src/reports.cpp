#include "gq/reports.hpp"

#include <sstream>

#include "json.hpp"

#include "gq/errors.hpp"

namespace gq {
namespace {

using nlohmann::json;

json parse_report(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error("malformed report JSON");
    return j;
}

std::string dump(const json& j, int indent) {
    return indent < 0 ? j.dump() : j.dump(indent);
}

const char* side_name(Side s) {
    switch (s) {
        case Side::Points: return "points";
        case Side::Lines: return "lines";
        default: return "mixed";
    }
}

// {classification, delta, rho, size} with null for unclaimed/undefined
// entries; shared by the analyze report and the construction claims so the
// two serialise identically when they agree.
json metrics_block(const std::string& classification, int delta, int rho, int size) {
    json m;
    m["classification"] = classification.empty() ? json(nullptr) : json(classification);
    m["delta"] = delta > 0 ? json(delta) : json(nullptr);
    m["rho"] = rho >= 0 ? json(rho) : json(nullptr);
    m["size"] = size;
    return m;
}

json analysis_entry(const CodeAnalysis& a) {
    json e;
    e["size"] = a.code.size();
    e["delta"] = a.delta > 0 ? json(a.delta) : json(nullptr);
    e["rho"] = a.rho >= 0 ? json(a.rho) : json(nullptr);
    e["is_nt"] = a.is_nt;
    e["stabiliser_order"] = a.stabiliser_order;
    e["classification"] =
        a.classification.empty() ? json(nullptr) : json(a.classification);
    e["family"] = a.family.empty() ? json(nullptr) : json(a.family);
    if (a.completions >= 0) {
        e["completions"] = a.completions;
        e["completion_regular"] = a.completion_regular;
    }
    return e;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << v;
    return os.str();
}

std::string value_or(const json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key) || j[key].is_null()) return fallback;
    const json& v = j[key];
    return v.is_string() ? v.get<std::string>() : v.dump();
}

} // namespace

std::string analyze_report_json(const Code& code, int indent) {
    if (!code.graph) throw Error("code has no graph");
    json report;
    report["format"] = 1;
    report["q"] = code.graph->model->q();
    report["side"] = side_name(code.side());
    report["size"] = code.size();

    const int delta = code.size() >= 2 ? min_distance(code) : 0;
    const DistancePartition part = distance_partition(code);
    report["rho"] = part.rho();
    json cells = json::array();
    for (const auto& cell : part.cells) cells.push_back(cell.size());
    report["cells"] = cells;

    std::string classification;
    if (code.side() != Side::Mixed) classification = classify(code).describe();
    report["classification"] =
        classification.empty() ? json(nullptr) : json(classification);

    if (code.side() != Side::Mixed && delta == 4) {
        const CountingCheck check = counting_check(code);
        json identities = json::array();
        for (const auto& id : check.identities) {
            json e;
            e["label"] = id.label;
            e["expected"] = id.expected;
            e["actual"] = id.actual;
            e["pass"] = id.pass;
            identities.push_back(e);
        }
        report["counting"] = {{"all_pass", check.all_pass}, {"identities", identities}};
    } else {
        report["counting"] = nullptr;
    }

    report["metrics"] = metrics_block(classification, delta, part.rho(), code.size());
    return dump(report, indent);
}

std::string analyze_report_text(const std::string& report_json) {
    const json j = parse_report(report_json);
    std::ostringstream os;
    os << "code: q=" << j["q"].get<int>() << " side=" << j["side"].get<std::string>()
       << " size=" << j["size"].get<int>() << "\n";
    os << "minimum distance: " << value_or(j["metrics"], "delta", "undefined (size < 2)")
       << "\n";
    os << "covering radius:  " << j["rho"].get<int>() << "\n";
    os << "cells by distance:";
    for (const auto& c : j["cells"]) os << " " << c.get<std::size_t>();
    os << "\n";
    os << "classification:   " << value_or(j, "classification", "(mixed code)") << "\n";
    if (!j["counting"].is_null()) {
        os << "counting identities: "
           << (j["counting"]["all_pass"].get<bool>() ? "all hold" : "VIOLATED") << "\n";
        for (const auto& id : j["counting"]["identities"])
            os << "  " << id["label"].get<std::string>() << ": expected "
               << id["expected"].get<long long>() << ", actual "
               << id["actual"].get<long long>() << (id["pass"].get<bool>() ? "" : "  <-- FAIL")
               << "\n";
    }
    return os.str();
}

std::string construct_report_json(const ConstructionResult& r, int indent) {
    json report;
    report["format"] = 1;
    report["name"] = r.name;
    report["parameters"] = r.parameters;
    report["generators"] = r.nt_generators.size();
    report["claimed"] =
        metrics_block(r.claimed.classification, r.claimed.delta, r.claimed.rho,
                      r.claimed.size);
    return dump(report, indent);
}

std::string construct_report_text(const std::string& report_json) {
    const json j = parse_report(report_json);
    std::ostringstream os;
    os << "construction: " << j["name"].get<std::string>() << " "
       << j["parameters"].get<std::string>() << "\n";
    const json& c = j["claimed"];
    os << "claimed: size=" << c["size"].get<int>() << " delta=" << value_or(c, "delta", "-")
       << " rho=" << value_or(c, "rho", "-") << " classification="
       << value_or(c, "classification", "-") << "\n";
    os << "attached generators: " << j["generators"].get<std::size_t>() << "\n";
    return os.str();
}

std::string decide_report_json(const NTDecision& d, int indent) {
    json report;
    report["format"] = 1;
    report["is_nt"] = d.is_nt;
    report["aut_order"] = d.aut_order;
    report["stabiliser_order"] = d.stabiliser_order;
    report["orbits_on_code"] = d.orbits_on_code;
    report["orbits_on_c1"] = d.orbits_on_c1;
    return dump(report, indent);
}

std::string decide_report_text(const std::string& report_json) {
    const json j = parse_report(report_json);
    std::ostringstream os;
    os << "neighbour-transitive: " << (j["is_nt"].get<bool>() ? "yes" : "no") << "\n";
    os << "ambient group order: " << j["aut_order"].get<std::uint64_t>() << "\n";
    os << "stabiliser order:    " << j["stabiliser_order"].get<std::uint64_t>() << "\n";
    os << "orbits on code / first cell: " << j["orbits_on_code"].get<std::size_t>() << " / "
       << j["orbits_on_c1"].get<std::size_t>() << "\n";
    return os.str();
}

std::string certify_report_json(const NTCertificate& cert, bool replay_ok, int indent) {
    json report;
    report["format"] = 1;
    report["replay"] = replay_ok;
    report["level"] = cert.level;
    report["success"] = cert.success;
    report["generators"] = cert.generators.size();
    report["cell_sizes"] = cert.cell_sizes;
    report["orbit_counts"] = cert.orbit_counts;
    return dump(report, indent);
}

std::string certify_report_text(const std::string& report_json) {
    const json j = parse_report(report_json);
    std::ostringstream os;
    os << "certificate replay: " << (j["replay"].get<bool>() ? "confirmed" : "REFUTED")
       << "\n";
    os << "level " << j["level"].get<int>() << ", " << j["generators"].get<std::size_t>()
       << " generators, stored success=" << (j["success"].get<bool>() ? "true" : "false")
       << "\n";
    os << "cells:";
    for (std::size_t i = 0; i < j["cell_sizes"].size(); ++i)
        os << " " << j["cell_sizes"][i].get<std::size_t>() << "/"
           << j["orbit_counts"][i].get<std::size_t>() << "orb";
    os << "\n";
    return os.str();
}

std::string search_summary_json(const SearchReport& report, int indent) {
    json summary;
    summary["format"] = 1;
    summary["type"] = "summary";
    summary["classes"] = report.representatives.size();
    summary["aut_order"] = report.aut_order;
    summary["nodes"] = report.nodes;
    summary["seconds"] = report.seconds;
    json analysis = json::array();
    for (const CodeAnalysis& a : report.representatives)
        analysis.push_back(analysis_entry(a));
    summary["analysis"] = analysis;
    if (report.target_size > 0) {
        summary["max_size"] = report.max_size;
        summary["target_size"] = report.target_size;
        summary["reaches_target"] = report.reaches_target;
    }
    return dump(summary, indent);
}

std::string search_summary_text(const std::string& report_json) {
    const json j = parse_report(report_json);
    std::ostringstream os;
    os << j["classes"].get<std::size_t>() << " equivalence class(es), ambient order "
       << j["aut_order"].get<std::uint64_t>() << ", " << j["nodes"].get<std::uint64_t>()
       << " nodes, " << fmt_double(j["seconds"].get<double>()) << "s\n";
    int index = 0;
    for (const auto& a : j["analysis"]) {
        os << "  [" << index++ << "] size=" << a["size"].get<int>() << " delta="
           << value_or(a, "delta", "-") << " rho=" << value_or(a, "rho", "-")
           << " stab=" << a["stabiliser_order"].get<std::uint64_t>()
           << (a["is_nt"].get<bool>() ? " transitive" : "");
        const std::string cls = value_or(a, "classification", "");
        if (!cls.empty()) os << " [" << cls << "]";
        const std::string fam = value_or(a, "family", "");
        if (!fam.empty()) os << " family=" << fam;
        os << "\n";
    }
    if (j.contains("max_size"))
        os << "maximum size " << j["max_size"].get<int>() << " against target "
           << j["target_size"].get<int>()
           << (j["reaches_target"].get<bool>() ? " (reached)" : " (not reached)") << "\n";
    return os.str();
}

std::string claims_report_json(const std::vector<ClaimResult>& results, int indent) {
    json report;
    report["format"] = 1;
    bool all = true;
    json entries = json::array();
    for (const ClaimResult& r : results) {
        json e;
        e["tag"] = r.tag;
        e["summary"] = r.summary;
        e["detail"] = r.detail;
        e["pass"] = r.pass;
        e["seconds"] = r.seconds;
        e["budget_seconds"] = r.budget_seconds;
        e["within_budget"] = r.within_budget;
        e["ok"] = r.ok();
        entries.push_back(e);
        all = all && r.ok();
    }
    report["all_pass"] = all;
    report["results"] = entries;
    return dump(report, indent);
}

std::string claims_report_text(const std::string& report_json) {
    const json j = parse_report(report_json);
    std::ostringstream os;
    for (const auto& e : j["results"]) {
        os << (e["ok"].get<bool>() ? "PASS" : "FAIL") << "  " << e["tag"].get<std::string>()
           << "  (" << fmt_double(e["seconds"].get<double>()) << "s of "
           << e["budget_seconds"].get<double>() << "s budget"
           << (e["within_budget"].get<bool>() ? "" : ", OVER BUDGET") << ")\n";
        os << "      " << e["detail"].get<std::string>() << "\n";
    }
    os << (j["all_pass"].get<bool>() ? "all claims hold" : "SOME CLAIMS FAILED") << "\n";
    return os.str();
}

} // namespace gq
