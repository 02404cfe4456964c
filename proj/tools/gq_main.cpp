// Command-line surface for the library: build the named code families,
// re-derive metrics for stored codes, replay or decide transitivity, run
// isomorph-free searches with streaming output and checkpoints, and verify
// the whole claim catalogue.
//
// JSON is the single interchange format (all payloads carry "format": 1);
// --format text renders the same JSON for humans.  Exit codes: 0 success,
// 1 a checked claim failed, 2 usage or malformed input, 3 resource cap hit.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gq/codegraph.hpp"
#include "gq/constructions.hpp"
#include "gq/errors.hpp"
#include "gq/geometry.hpp"
#include "gq/groupaction.hpp"
#include "gq/json_io.hpp"
#include "gq/reports.hpp"
#include "gq/search.hpp"
#include "gq/verify.hpp"

namespace {

using namespace gq;
using nlohmann::json;

// --- small I/O helpers ------------------------------------------------------

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open \"" + path + "\" for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open \"" + path + "\" for writing");
        out << content << "\n";
        if (!out) throw Error("write to \"" + path + "\" failed");
    }
    std::filesystem::rename(tmp, path);
}

void emit(const std::string& payload) { std::cout << payload << "\n" << std::flush; }

// --- shared option values ---------------------------------------------------

struct OutputOptions {
    std::string format = "json"; // "json" | "text"
    int indent = 2;
    bool text() const { return format == "text"; }
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "output rendering: json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    cmd->add_option("--indent", out.indent,
                    "JSON indentation; negative for compact single-line output")
        ->capture_default_str();
}

Side parse_side(const std::string& name) {
    if (name == "points") return Side::Points;
    if (name == "lines") return Side::Lines;
    if (name == "mixed") return Side::Mixed;
    throw Error("side must be points, lines or mixed");
}

const char* side_token(Side s) {
    switch (s) {
        case Side::Points: return "points";
        case Side::Lines: return "lines";
        default: return "mixed";
    }
}

// --- construct ---------------------------------------------------------------

struct ConstructConfig {
    std::string name;
    int q = 2;
    bool q_given = false;
    std::string subgroup;     // coolsaet: subgroup label, default first class
    std::string side = "points"; // pair: which side the pair lives on
    std::string gram = "standard";
    std::string out_path;     // code JSON destination ("" = stdout)
    std::string cert_path;    // certificate destination ("" = none)
    int level = 1;
    OutputOptions output;
};

int run_construct(const ConstructConfig& cfg) {
    ConstructionResult r =
        named_construction(cfg.name, cfg.q, cfg.subgroup, cfg.side, cfg.gram);

    const std::string code_json = code_to_json(r.code, cfg.output.indent);
    if (!cfg.cert_path.empty()) {
        if (r.nt_generators.empty())
            throw Error("this construction carries no generators; use `decide --certificate`");
        const NTCertificate cert = certify_nt(r.code, r.nt_generators, cfg.level);
        write_file(cfg.cert_path, certificate_to_json(cert, cfg.output.indent));
    }

    if (cfg.out_path.empty()) {
        emit(code_json); // pipeable: `gq construct ... | gq analyze -`
        return 0;
    }
    write_file(cfg.out_path, code_json);
    const std::string report = construct_report_json(r, cfg.output.indent);
    emit(cfg.output.text() ? construct_report_text(report) : report);
    return 0;
}

// --- analyze ------------------------------------------------------------------

struct AnalyzeConfig {
    std::string path;
    OutputOptions output;
};

int run_analyze(const AnalyzeConfig& cfg) {
    const Code code = code_from_json(read_input(cfg.path));
    const std::string report = analyze_report_json(code, cfg.output.indent);
    emit(cfg.output.text() ? analyze_report_text(report) : report);
    return 0;
}

// --- certify -------------------------------------------------------------------

struct CertifyConfig {
    std::string code_path;
    std::string cert_path;
    OutputOptions output;
};

int run_certify(const CertifyConfig& cfg) {
    const Code code = code_from_json(read_input(cfg.code_path));
    const NTCertificate cert = certificate_from_json(read_input(cfg.cert_path), code);
    const bool ok = replay_certificate(code, cert);
    const std::string report = certify_report_json(cert, ok, cfg.output.indent);
    emit(cfg.output.text() ? certify_report_text(report) : report);
    return ok ? 0 : 1;
}

// --- decide --------------------------------------------------------------------

struct DecideConfig {
    std::string path;
    std::uint64_t cap = PermGroup::kDefaultCap;
    std::string cert_path; // when set, export a certificate from the stabiliser
    int level = 1;
    OutputOptions output;
};

int run_decide(const DecideConfig& cfg) {
    const Code code = code_from_json(read_input(cfg.path));
    const NTDecision d = decide_nt(code, cfg.cap);
    const std::string report = decide_report_json(d, cfg.output.indent);
    emit(cfg.output.text() ? decide_report_text(report) : report);
    if (!cfg.cert_path.empty()) {
        if (!d.is_nt) {
            std::cerr << "no certificate: the code is not neighbour-transitive\n";
            return 1;
        }
        const NTCertificate cert = certify_nt(code, d.stabiliser->generators(), cfg.level);
        write_file(cfg.cert_path, certificate_to_json(cert, cfg.output.indent));
    }
    return 0;
}

// --- search ---------------------------------------------------------------------

struct SearchConfig {
    int q = 2;
    std::string side = "lines";
    std::string size = "1";   // "N" or "MIN:MAX"
    int delta = 4;
    bool nt = false;
    bool maximal = false;
    int workers = 1;
    std::string checkpoint; // write/update checkpoint here after every task
    std::string resume;     // restore a previous run's frontier from here
    OutputOptions output;
};

struct SearchTask {
    SearchSpec spec;
    std::vector<int> branch;
};

// One explore_branch call per task; a search over sizes 1..k splits into a
// singleton pass plus a pass rooted at canonical pairs so every task is
// independently resumable.
std::vector<SearchTask> build_tasks(const SearchSpec& spec) {
    std::vector<SearchTask> tasks;
    const auto add = [&tasks](const SearchSpec& s) {
        for (const std::vector<int>& b : search_branches(s)) tasks.push_back({s, b});
    };
    if (spec.size_min == 1 && spec.size_max > 1) {
        SearchSpec singles = spec;
        singles.size_max = 1;
        add(singles);
        SearchSpec rest = spec;
        rest.size_min = 2;
        add(rest);
    } else {
        add(spec);
    }
    return tasks;
}

void parse_size_range(const std::string& text, SearchSpec& spec) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            spec.size_min = spec.size_max = std::stoi(text);
        } else {
            spec.size_min = std::stoi(text.substr(0, colon));
            spec.size_max = std::stoi(text.substr(colon + 1));
        }
    } catch (const std::exception&) {
        throw Error("--size expects N or MIN:MAX");
    }
}

json spec_to_json(const SearchSpec& spec) {
    json j;
    j["q"] = spec.q;
    j["side"] = side_token(spec.side);
    j["size_min"] = spec.size_min;
    j["size_max"] = spec.size_max;
    j["delta"] = spec.delta_min;
    j["nt"] = spec.nt_filter;
    j["maximal"] = spec.maximal_only;
    return j;
}

SearchSpec spec_from_json(const json& j) {
    SearchSpec spec;
    spec.q = j.at("q").get<int>();
    spec.side = parse_side(j.at("side").get<std::string>());
    spec.size_min = j.at("size_min").get<int>();
    spec.size_max = j.at("size_max").get<int>();
    spec.delta_min = j.at("delta").get<int>();
    spec.nt_filter = j.at("nt").get<bool>();
    spec.maximal_only = j.at("maximal").get<bool>();
    return spec;
}

json analysis_to_checkpoint(const CodeAnalysis& a) {
    json e;
    e["code"] = json::parse(code_to_json(a.code, -1));
    e["delta"] = a.delta;
    e["rho"] = a.rho;
    e["classification"] = a.classification;
    e["is_nt"] = a.is_nt;
    e["stabiliser_order"] = a.stabiliser_order;
    e["family"] = a.family;
    return e;
}

CodeAnalysis analysis_from_checkpoint(const json& e) {
    CodeAnalysis a;
    a.code = code_from_json(e.at("code").dump());
    a.delta = e.at("delta").get<int>();
    a.rho = e.at("rho").get<int>();
    a.classification = e.at("classification").get<std::string>();
    a.is_nt = e.at("is_nt").get<bool>();
    a.stabiliser_order = e.at("stabiliser_order").get<std::uint64_t>();
    a.family = e.at("family").get<std::string>();
    return a;
}

int run_search(const SearchConfig& cfg, bool spec_flags_given) {
    const auto start = std::chrono::steady_clock::now();

    SearchSpec spec;
    std::set<int> done;
    std::vector<CodeAnalysis> found;
    double prior_seconds = 0.0;
    std::uint64_t nodes = 0;

    if (!cfg.resume.empty()) {
        if (spec_flags_given)
            throw Error("--resume restores the search parameters; drop the other search flags");
        json cp = json::parse(read_input(cfg.resume), nullptr, false);
        if (cp.is_discarded() || !cp.is_object() || cp.value("type", "") != "checkpoint")
            throw Error("\"" + cfg.resume + "\" is not a checkpoint file");
        spec = spec_from_json(cp.at("spec"));
        for (const auto& i : cp.at("done")) done.insert(i.get<int>());
        for (const auto& e : cp.at("found")) found.push_back(analysis_from_checkpoint(e));
        prior_seconds = cp.value("seconds", 0.0);
        nodes = cp.value("nodes", std::uint64_t{0});
    } else {
        spec.q = cfg.q;
        spec.side = parse_side(cfg.side);
        parse_size_range(cfg.size, spec);
        spec.delta_min = cfg.delta;
        spec.nt_filter = cfg.nt;
        spec.maximal_only = cfg.maximal;
    }
    spec.workers = 1; // parallelism is across tasks, not within one

    // building the task list also warms the process-wide group cache, so the
    // worker threads below only ever read it
    const std::vector<SearchTask> tasks = build_tasks(spec);
    std::uint64_t aut_order = ambient_group(spec.q).order();
    for (int i : done)
        if (i < 0 || i >= int(tasks.size()))
            throw Error("checkpoint does not match this search (task index out of range)");

    std::vector<int> pending;
    for (int i = 0; i < int(tasks.size()); ++i)
        if (!done.count(i)) pending.push_back(i);

    const int workers = std::max(1, cfg.workers);
    const auto elapsed = [&] {
        return prior_seconds +
               std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    const auto save_checkpoint = [&] {
        if (cfg.checkpoint.empty()) return;
        json cp;
        cp["format"] = 1;
        cp["type"] = "checkpoint";
        cp["spec"] = spec_to_json(spec);
        cp["tasks"] = tasks.size();
        cp["done"] = json::array();
        for (int i : done) cp["done"].push_back(i);
        cp["found"] = json::array();
        for (const CodeAnalysis& a : found) cp["found"].push_back(analysis_to_checkpoint(a));
        cp["nodes"] = nodes;
        cp["seconds"] = elapsed();
        cp["aut_order"] = aut_order;
        write_file(cfg.checkpoint, cp.dump(2));
    };

    for (std::size_t at = 0; at < pending.size(); at += std::size_t(workers)) {
        const std::size_t stop = std::min(pending.size(), at + std::size_t(workers));
        std::vector<std::future<SearchReport>> futures;
        for (std::size_t i = at; i < stop; ++i) {
            const SearchTask& task = tasks[std::size_t(pending[i])];
            futures.push_back(std::async(std::launch::async, [&task] {
                return explore_branch(task.spec, task.branch);
            }));
        }
        for (std::size_t i = at; i < stop; ++i) {
            SearchReport part = futures[i - at].get();
            nodes += part.nodes;
            for (CodeAnalysis& a : part.representatives) {
                if (cfg.output.text()) {
                    std::ostringstream os;
                    os << "class: size=" << a.code.size() << " delta=" << a.delta
                       << " rho=" << a.rho << " stab=" << a.stabiliser_order
                       << (a.is_nt ? " transitive" : "");
                    if (!a.classification.empty()) os << " [" << a.classification << "]";
                    emit(os.str());
                } else {
                    emit(code_to_json(a.code, -1));
                }
                found.push_back(std::move(a));
            }
            done.insert(pending[i]);
            save_checkpoint();
        }
    }

    std::sort(found.begin(), found.end(), [](const CodeAnalysis& a, const CodeAnalysis& b) {
        if (a.code.size() != b.code.size()) return a.code.size() < b.code.size();
        return a.code.members < b.code.members;
    });

    SearchReport total;
    total.representatives = std::move(found);
    total.aut_order = aut_order;
    total.nodes = nodes;
    total.seconds = elapsed();
    const std::string summary = search_summary_json(total, cfg.output.text() ? 2 : -1);
    emit(cfg.output.text() ? search_summary_text(summary) : summary);
    return 0;
}

// --- verify ---------------------------------------------------------------------

struct VerifyConfig {
    std::vector<std::string> tags;
    int workers = 1;
    bool list = false;
    OutputOptions output;
};

int run_verify(const VerifyConfig& cfg) {
    if (cfg.list) {
        for (const std::string& tag : claim_tags())
            std::cout << tag << "\n    " << claim_summary(tag) << "\n";
        return 0;
    }
    const std::vector<ClaimResult> results = verify_claims(cfg.tags, cfg.workers);
    const std::string report = claims_report_json(results, cfg.output.indent);
    emit(cfg.output.text() ? claims_report_text(report) : report);
    for (const ClaimResult& r : results)
        if (!r.ok()) return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact code metrics, symmetry certificates and exhaustive searches "
                 "in the symplectic quadrangle"};
    app.require_subcommand(1);
    int rc = 0;

    ConstructConfig construct_cfg;
    auto* construct = app.add_subcommand(
        "construct", "build a named code family and emit it as a Code JSON file");
    construct
        ->add_option("name", construct_cfg.name, "construction name")
        ->required()
        ->check(CLI::IsMember({"regular-spread", "spread-minus-line", "hyperbolic-line",
                               "coolsaet", "w33-five", "pair"}));
    auto* qopt = construct->add_option("--q", construct_cfg.q, "field size")
                     ->check(CLI::PositiveNumber)
                     ->capture_default_str();
    construct->add_option("--subgroup", construct_cfg.subgroup,
                          "coolsaet: subgroup label (default: first class)");
    construct->add_option("--side", construct_cfg.side, "pair: points or lines")
        ->check(CLI::IsMember({"points", "lines"}))
        ->capture_default_str();
    construct->add_option("--gram", construct_cfg.gram,
                          "alternating form for the emitted coordinates")
        ->check(CLI::IsMember({"standard", "split"}))
        ->capture_default_str();
    construct->add_option("-o,--output", construct_cfg.out_path,
                          "write the code here instead of stdout");
    construct->add_option("--certificate", construct_cfg.cert_path,
                          "also write a transitivity certificate to this file");
    construct->add_option("--level", construct_cfg.level, "certificate level (1-4)")
        ->check(CLI::Range(1, 4))
        ->capture_default_str();
    add_output_options(construct, construct_cfg.output);
    construct->callback([&] {
        construct_cfg.q_given = qopt->count() > 0;
        if (construct_cfg.name == "w33-five" && !construct_cfg.q_given) construct_cfg.q = 3;
        rc = run_construct(construct_cfg);
    });

    AnalyzeConfig analyze_cfg;
    auto* analyze = app.add_subcommand(
        "analyze", "recompute metrics and classification for a Code JSON file");
    analyze->add_option("file", analyze_cfg.path, "code file, or - for stdin")->required();
    add_output_options(analyze, analyze_cfg.output);
    analyze->callback([&] { rc = run_analyze(analyze_cfg); });

    CertifyConfig certify_cfg;
    auto* certify = app.add_subcommand(
        "certify", "replay a stored transitivity certificate against a code");
    certify->add_option("file", certify_cfg.code_path, "code file, or - for stdin")->required();
    certify->add_option("--certificate", certify_cfg.cert_path, "certificate file")->required();
    add_output_options(certify, certify_cfg.output);
    certify->callback([&] { rc = run_certify(certify_cfg); });

    DecideConfig decide_cfg;
    auto* decide = app.add_subcommand(
        "decide", "decide neighbour-transitivity exactly from the full symmetry group");
    decide->add_option("file", decide_cfg.path, "code file, or - for stdin")->required();
    decide->add_option("--cap", decide_cfg.cap, "group enumeration cap")
        ->capture_default_str();
    decide->add_option("--certificate", decide_cfg.cert_path,
                       "export a replayable certificate built from the stabiliser");
    decide->add_option("--level", decide_cfg.level, "certificate level (1-4)")
        ->check(CLI::Range(1, 4))
        ->capture_default_str();
    add_output_options(decide, decide_cfg.output);
    decide->callback([&] { rc = run_decide(decide_cfg); });

    SearchConfig search_cfg;
    auto* search = app.add_subcommand(
        "search",
        "isomorph-free enumeration; streams one Code JSON line per class, then a summary record");
    auto* s_q = search->add_option("--q", search_cfg.q, "field size")->capture_default_str();
    auto* s_side = search->add_option("--side", search_cfg.side, "points, lines or mixed")
                       ->check(CLI::IsMember({"points", "lines", "mixed"}))
                       ->capture_default_str();
    auto* s_size = search->add_option("--size", search_cfg.size, "code size: N or MIN:MAX")
                       ->capture_default_str();
    auto* s_delta = search->add_option("--delta", search_cfg.delta, "minimum distance (3 or 4)")
                        ->capture_default_str();
    auto* s_nt = search->add_flag("--nt", search_cfg.nt, "keep only neighbour-transitive classes");
    auto* s_max = search->add_flag("--maximal", search_cfg.maximal, "keep only maximal codes");
    search->add_option("--workers", search_cfg.workers, "parallel task count")
        ->envname("GQ_WORKERS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    search->add_option("--checkpoint", search_cfg.checkpoint,
                       "rewrite this checkpoint file after every finished task");
    search->add_option("--resume", search_cfg.resume,
                       "continue from a checkpoint written by --checkpoint");
    add_output_options(search, search_cfg.output);
    search->callback([&] {
        const bool spec_flags = s_q->count() || s_side->count() || s_size->count() ||
                                s_delta->count() || s_nt->count() || s_max->count();
        rc = run_search(search_cfg, spec_flags);
    });

    VerifyConfig verify_cfg;
    auto* verify = app.add_subcommand(
        "verify", "re-derive the claim catalogue and report pass/fail with timings");
    verify->alias("verify-paper");
    verify->add_option("tags", verify_cfg.tags, "claim tags to run (default: all)")
        ->check(CLI::IsMember(claim_tags()));
    verify->add_option("--workers", verify_cfg.workers, "parallel task count for searches")
        ->envname("GQ_WORKERS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_flag("--list", verify_cfg.list, "list the catalogue without running it");
    add_output_options(verify, verify_cfg.output);
    verify->callback([&] { rc = run_verify(verify_cfg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help/error text
        return code == 0 ? 0 : 2;
    } catch (const CapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
