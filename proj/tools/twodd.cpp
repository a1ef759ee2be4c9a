// twodd command-line tool. Exit codes: 0 success / verdict true,
// 1 verdict false, 2 usage or format error, 3 resource cap exceeded.

#include "twodd/canonical.hpp"
#include "twodd/certify.hpp"
#include "twodd/enumerate.hpp"
#include "twodd/error.hpp"
#include "twodd/factors.hpp"
#include "twodd/graph_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace twodd;
using nlohmann::json;

namespace {

struct Globals {
    int max_acs = 12;
    int max_factor_bits = kDefaultMaxFactorBits;
    bool long_run = false;
    int jobs = 0;
    std::string format = "text";
    std::string output;
};

void emit(const Globals& g, const std::string& text) {
    if (g.output.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
    } else {
        write_text_file(g.output, text);
    }
}

CheckOptions check_options(const Globals& g) {
    CheckOptions o;
    o.max_residue_acs = g.max_acs;
    o.max_factor_bits = g.max_factor_bits;
    return o;
}

std::string perm_text(const Perm& p) { return format_cycles(p); }

json family_json(const FamilySpec& s) {
    json j{{"arcs_per_ac", s.arcs_per_ac}, {"ac_count", s.ac_count},         {"clean", s.clean},
           {"connected", s.require_connected}, {"saturated_only", s.saturated_only}, {"allow_loops", s.allow_loops},
           {"filters", s.filters}};
    if (s.saturated_count) {
        j["saturated"] = *s.saturated_count;
    }
    return j;
}

struct FamilyFlags {
    int acs = 0;
    int arcs_per_ac = 6;
    bool dirty = false;
    bool connected = false;
    bool full = false;
    bool loops = false;
    int saturated = -1;
    std::vector<std::string> filters;

    void add(CLI::App* c) {
        c->add_option("--acs,-m", acs, "number of ACs")->required();
        c->add_option("--arcs-per-ac", arcs_per_ac, "arcs per AC (even, >= 4)");
        c->add_flag("--dirty", dirty, "allow dirty ACs");
        c->add_flag("--connected", connected, "keep connected graphs only");
        c->add_flag("--full", full, "2-dds only (every vertex saturated)");
        c->add_flag("--allow-loops", loops, "allow loop arcs in dirty families");
        c->add_option("--saturated", saturated, "exact number of saturated vertices");
        c->add_option("--filter", filters, "named filter: odd even open non_2_splittable no_2ac_s_gt_2 "
                                           "hamiltonian non_hamiltonian");
    }

    FamilySpec spec() const {
        FamilySpec s;
        s.ac_count = acs;
        s.arcs_per_ac = arcs_per_ac;
        s.clean = !dirty;
        s.require_connected = connected;
        s.saturated_only = full;
        s.allow_loops = loops;
        if (saturated >= 0) {
            s.saturated_count = saturated;
        }
        s.filters = filters;
        return s;
    }
};

GenerateOptions gen_options(const Globals& g) {
    GenerateOptions o;
    o.long_run = g.long_run;
    o.jobs = g.jobs;
    return o;
}

std::string permset_output(const Globals& g, const PermSet& p) {
    if (g.format == "json") {
        json j{{"degree", p.degree()}, {"elements", json::array()}};
        for (const auto& e : p) {
            j["elements"].push_back(perm_text(e));
        }
        return j.dump(2);
    }
    return format_permset_text(p);
}

int cmd_decompose(const Globals& g, const std::string& path) {
    const Digraph d = read_graph_file(path);
    require_valid(d);
    if (g.format == "json") {
        emit(g, graph_to_json(d).dump(2));
        return 0;
    }
    const auto dec = ac_decompose(d);
    std::ostringstream out;
    out << "acs " << dec.size() << "\n";
    for (int i = 0; i < dec.size(); ++i) {
        const auto& x = dec.cycles[static_cast<std::size_t>(i)];
        out << "ac " << i + 1 << " half " << x.half_length() << (ac_is_clean(d, x) ? " clean" : " dirty")
            << (ac_is_closed(d, x) ? " closed" : " open") << ":";
        for (int a : x.arcs) {
            out << " " << d.arc(a).tail + 1 << ">" << d.arc(a).head + 1;
        }
        out << "\n";
    }
    emit(g, out.str());
    return 0;
}

int cmd_factors(const Globals& g, const std::string& path) {
    const Digraph d = read_graph_file(path);
    const auto all = enumerate_factors(d, g.max_factor_bits);
    json j = json::array();
    std::ostringstream out;
    int min_index = -1;
    for (const auto& f : all) {
        min_index = min_index < 0 ? f.index() : std::min(min_index, f.index());
        j.push_back({{"selection", f.selection}, {"cycles", f.cycles.size()}, {"paths", f.paths.size()}});
        out << "factor " << f.selection << " cycles " << f.cycles.size() << " paths " << f.paths.size() << "\n";
    }
    if (is_two_diregular(d)) {
        out << "parity " << to_string(classify_parity_family(d, g.max_factor_bits)) << "\n";
    }
    out << "index " << min_index << "\n";
    emit(g, g.format == "json" ? json{{"factors", j}, {"index", min_index}}.dump(2) : out.str());
    return 0;
}

PermSet routes_of(const Globals& g, const std::string& path) {
    return open_routes(read_graph_file(path), g.max_factor_bits).routes;
}

int cmd_routes(const Globals& g, const std::string& path) {
    emit(g, permset_output(g, routes_of(g, path)));
    return 0;
}

int cmd_residue(const Globals& g, const std::string& graph, const std::string& permset) {
    if (graph.empty() == permset.empty()) {
        throw CLI::ValidationError("residue", "give exactly one of a graph file or --permset");
    }
    const PermSet p = permset.empty() ? routes_of(g, graph) : read_permset_file(permset);
    emit(g, permset_output(g, residue(p)));
    return 0;
}

int cmd_equiv(const Globals& g, const std::string& a, const std::string& b) {
    const auto r = find_biconjugacy(read_permset_file(a), read_permset_file(b));
    if (!r) {
        emit(g, g.format == "json" ? json{{"equivalent", false}}.dump(2) : "not equivalent\n");
        return 1;
    }
    if (g.format == "json") {
        emit(g, json{{"equivalent", true}, {"x", perm_text(r->x)}, {"y", perm_text(r->y)}}.dump(2));
    } else {
        emit(g, "x " + perm_text(r->x) + "\ny " + perm_text(r->y) + "\n");
    }
    return 0;
}

int cmd_splice(const Globals& g, const std::string& f, const std::string& fp, const std::string& xs,
               const std::string& ys) {
    const Digraph a = read_graph_file(f);
    const Digraph b = read_graph_file(fp);
    const int n = route_labeling(a).size();
    const Digraph s = spliced_graph(a, b, SpliceMap{parse_cycles(xs, n), parse_cycles(ys, n)});
    emit(g, g.format == "json" ? graph_to_json(s).dump(2) : format_graph_text(s));
    return 0;
}

int cmd_check(const Globals& g, const std::string& path, bool no_brute, const std::string& cert_path) {
    const Digraph d = read_graph_file(path);
    CheckOptions o = check_options(g);
    o.brute_force = !no_brute;
    const Certificate c = check(d, o);
    const std::string cert = to_json(c).dump(2);
    if (!cert_path.empty()) {
        write_text_file(cert_path, cert + "\n");
    }
    emit(g, cert);
    std::cerr << "verdict " << to_string(c.verdict);
    for (const auto& s : c.steps) {
        std::cerr << " " << to_string(s.kind);
    }
    std::cerr << (c.reason.empty() ? "" : " (" + c.reason + ")") << "\n";
    return c.verdict == Verdict::Undecided ? 1 : 0;
}

int cmd_verify(const Globals& g, const std::string& path, const std::string& cert_path) {
    const Digraph d = read_graph_file(path);
    Certificate c;
    try {
        c = certificate_from_json(json::parse(read_text_file(cert_path)));
    } catch (const json::exception& e) {
        throw FormatError(cert_path + ": " + e.what());
    }
    const VerifyResult r = verify(d, c, check_options(g));
    if (g.format == "json") {
        emit(g, json{{"ok", r.ok}, {"verdict", to_string(c.verdict)}, {"message", r.message}}.dump(2));
    } else {
        emit(g, r.ok ? "ok " + to_string(c.verdict) + "\n"
                     : "rejected " + to_string(c.verdict) + ": " + r.message + "\n");
    }
    return r.ok ? 0 : 1;
}

int cmd_reduce(const Globals& g, const std::string& path) {
    const Digraph d = read_graph_file(path);
    auto r = reduce_2ac(d, check_options(g));
    if (!r) {
        r = reduce_3ac(d, check_options(g));
    }
    if (!r) {
        std::cerr << "no reduction applies\n";
        return 1;
    }
    std::string acs;
    for (int a : r->step.acs) {
        acs += " " + std::to_string(a + 1);
    }
    std::cerr << "step " << to_string(r->step.kind) << " acs" << acs
              << (r->step.replacement.empty() ? "" : " replacement " + r->step.replacement) << "\n";
    emit(g, g.format == "json" ? graph_to_json(r->graph).dump(2) : format_graph_text(r->graph));
    return 0;
}

void write_generated(const std::vector<Generated>& all, const std::string& archive, const std::string& index) {
    if (archive.empty()) {
        std::cout << format_archive(all);
    } else {
        write_text_file(archive, format_archive(all));
    }
    if (!index.empty()) {
        write_text_file(index, format_index(all));
    }
}

std::vector<Generated> read_generated(const fs::path& archive) {
    std::vector<Generated> out;
    for (auto& d : parse_archive(read_text_file(archive))) {
        CanonicalForm c = canonical_form(d);
        out.push_back({std::move(d), std::move(c)});
    }
    return out;
}

// Long-run layout: <dir>/manifest.json, <dir>/frontier.json, <dir>/shard-<i>.graphs.
int run_shards(const Globals& g, const FamilySpec& spec, const fs::path& dir, int shards, int depth, int only) {
    fs::create_directories(dir);
    const fs::path manifest_path = dir / "manifest.json";
    json manifest;
    if (fs::exists(manifest_path)) {
        manifest = json::parse(read_text_file(manifest_path));
        if (manifest.at("family") != family_json(spec) || manifest.at("shard_count").get<int>() != shards ||
            manifest.at("depth").get<int>() != depth) {
            throw CLI::ValidationError("generate", "existing manifest in " + dir.string() + " is for another run");
        }
    } else {
        const Frontier f = generation_frontier(spec, depth, gen_options(g));
        write_text_file(dir / "frontier.json", json{{"depth", f.depth}, {"states", f.states}}.dump() + "\n");
        manifest = {{"family", family_json(spec)}, {"depth", depth}, {"shard_count", shards},
                     {"frontier", "frontier.json"}, {"shards", json::array()}};
        for (int i = 0; i < shards; ++i) {
            manifest["shards"].push_back({{"index", i},
                                          {"archive", "shard-" + std::to_string(i) + ".graphs"},
                                          {"done", false},
                                          {"count", 0}});
        }
        write_text_file(manifest_path, manifest.dump(2) + "\n");
    }
    const json fj = json::parse(read_text_file(dir / manifest.at("frontier").get<std::string>()));
    Frontier f;
    f.depth = fj.at("depth").get<int>();
    f.states = fj.at("states").get<std::vector<std::vector<int>>>();
    for (int i = 0; i < shards; ++i) {
        auto& entry = manifest["shards"][static_cast<std::size_t>(i)];
        if ((only >= 0 && i != only) || entry.at("done").get<bool>()) {
            continue;
        }
        const auto part = generate_shard(spec, f, i, shards, gen_options(g));
        write_text_file(dir / entry.at("archive").get<std::string>(), format_archive(part));
        entry["done"] = true;
        entry["count"] = part.size();
        write_text_file(manifest_path, manifest.dump(2) + "\n");
        std::cerr << "shard " << i << " done: " << part.size() << " graphs\n";
    }
    return 0;
}

int merge_shards(const fs::path& dir, const std::string& archive, const std::string& index) {
    const json manifest = json::parse(read_text_file(dir / "manifest.json"));
    std::vector<std::vector<Generated>> parts;
    for (const auto& entry : manifest.at("shards")) {
        if (!entry.at("done").get<bool>()) {
            throw CLI::ValidationError("generate", "shard " + std::to_string(entry.at("index").get<int>()) +
                                                       " has not finished");
        }
        parts.push_back(read_generated(dir / entry.at("archive").get<std::string>()));
    }
    const auto all = merge_generated(std::move(parts));
    write_generated(all, archive, index);
    std::cerr << "merged " << all.size() << " graphs\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamiltonicity analysis of 2-diregular digraphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--max-acs", g.max_acs, "exhaustive residue K-scan cap")->envname("TWODD_MAX_ACS");
    app.add_option("--max-factor-bits", g.max_factor_bits, "largest AC count for factor scans")
        ->envname("TWODD_MAX_FACTOR_BITS")
        ->check(CLI::Range(1, kHardMaxFactorBits));
    app.add_flag("--long-run", g.long_run, "lift the desk-scale enumeration caps")->envname("TWODD_LONG_RUN");
    app.add_option("--jobs,-j", g.jobs, "worker threads")->envname("TWODD_JOBS")->check(CLI::NonNegativeNumber);
    app.add_option("--format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--output,-o", g.output, "output file (default stdout)");

    std::string graph, graph2, permset, xs = "I", ys = "I", cert, archive, index, manifest_dir, merge_dir;
    bool no_brute = false;
    int shards = 0, depth = 2, only = -1;
    std::vector<std::string> analyses = {"connected", "clean", "parity", "splittable", "residue", "certify",
                                         "hamiltonian"};

    auto* decompose = app.add_subcommand("decompose", "alternating-cycle decomposition");
    decompose->add_option("graph", graph)->required();
    auto* factors = app.add_subcommand("factors", "enumerate factors");
    factors->add_option("graph", graph)->required();
    auto* routes = app.add_subcommand("routes", "open route set");
    routes->add_option("graph", graph)->required();
    auto* res = app.add_subcommand("residue", "residue of a graph's routes or of a permutation set");
    res->add_option("graph", graph);
    res->add_option("--permset", permset, "permutation-set file");
    auto* equiv = app.add_subcommand("equiv", "biconjugacy of two permutation sets");
    equiv->add_option("first", graph)->required();
    equiv->add_option("second", graph2)->required();
    auto* splice = app.add_subcommand("splice", "splice two open 2-graphs");
    splice->add_option("first", graph)->required();
    splice->add_option("second", graph2)->required();
    splice->add_option("--x", xs, "exit i of first joins entry x(i) of second");
    splice->add_option("--y", ys, "exit j of second joins entry y(j) of first");
    auto* chk = app.add_subcommand("check", "certify non-Hamiltonicity or Hamiltonicity");
    chk->add_option("graph", graph)->required();
    chk->add_flag("--no-brute-force", no_brute, "stop undecided instead of exhausting factors");
    chk->add_option("--cert", cert, "also write the certificate JSON here");
    auto* ver = app.add_subcommand("verify-cert", "replay a certificate");
    ver->add_option("graph", graph)->required();
    ver->add_option("cert", cert)->required();
    auto* red = app.add_subcommand("reduce", "apply one 2-AC or 3-AC reduction");
    red->add_option("graph", graph)->required();
    FamilyFlags gen_flags;
    auto* gen = app.add_subcommand("generate", "isomorph-free generation of a family");
    gen_flags.add(gen);
    gen->add_option("--archive", archive, "archive file (default stdout)");
    gen->add_option("--index", index, "canonical-code index file");
    gen->add_option("--shards", shards, "split into this many shards under --shard-dir")->check(CLI::PositiveNumber);
    gen->add_option("--depth", depth, "frontier depth for sharding");
    gen->add_option("--shard", only, "run only this shard");
    gen->add_option("--shard-dir", manifest_dir, "directory for the manifest and shard archives");
    gen->add_option("--merge", merge_dir, "merge the finished shards of this directory");
    gen->get_option("--acs")->required(false);
    FamilyFlags census_flags;
    auto* cen = app.add_subcommand("census", "census table of a family");
    census_flags.add(cen);
    cen->add_option("--analyses", analyses, "columns of the table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (g.jobs > 0) {
        omp_set_num_threads(g.jobs);
    }
    try {
        if (*decompose) {
            return cmd_decompose(g, graph);
        }
        if (*factors) {
            return cmd_factors(g, graph);
        }
        if (*routes) {
            return cmd_routes(g, graph);
        }
        if (*res) {
            return cmd_residue(g, graph, permset);
        }
        if (*equiv) {
            return cmd_equiv(g, graph, graph2);
        }
        if (*splice) {
            return cmd_splice(g, graph, graph2, xs, ys);
        }
        if (*chk) {
            return cmd_check(g, graph, no_brute, cert);
        }
        if (*ver) {
            return cmd_verify(g, graph, cert);
        }
        if (*red) {
            return cmd_reduce(g, graph);
        }
        if (*gen) {
            if (!merge_dir.empty()) {
                return merge_shards(merge_dir, archive, index);
            }
            if (gen_flags.acs < 1) {
                throw CLI::ValidationError("generate", "--acs is required");
            }
            const FamilySpec spec = gen_flags.spec();
            if (shards > 0) {
                if (manifest_dir.empty()) {
                    throw CLI::ValidationError("generate", "--shards needs --shard-dir");
                }
                return run_shards(g, spec, manifest_dir, shards, depth, only);
            }
            const auto all = generate(spec, gen_options(g));
            write_generated(all, archive, index);
            std::cerr << all.size() << " graphs\n";
            return 0;
        }
        if (*cen) {
            const auto all = generate(census_flags.spec(), gen_options(g));
            const auto t = census(all, analyses);
            emit(g, g.format == "json" ? t.to_json() : t.to_tsv());
            return 0;
        }
    } catch (const ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
