#include "ckab/cli.hpp"

#include "ckab/checker.hpp"
#include "ckab/dsl.hpp"
#include "ckab/statespace.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

namespace ckab::cli {

using nlohmann::ordered_json;

namespace {

void report(std::ostream& err, const std::string& file, Severity sev, const std::string& msg, SourcePos pos = {}) {
    err << format_diagnostic(file, Diagnostic{sev, msg, pos}) << "\n";
}

std::optional<std::string> read_file(const std::string& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        report(err, path, Severity::Error, "cannot open file");
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Loaded {
    std::optional<CkabSpec> spec;
    int code = kOk;
};

Loaded load_spec(const std::string& path, std::ostream& err) {
    auto text = read_file(path, err);
    if (!text)
        return {std::nullopt, kNoInput};
    auto r = parse_spec(*text);
    for (const auto& d : r.diagnostics)
        err << format_diagnostic(path, d) << "\n";
    if (!r.ok()) {
        if (r.diagnostics.empty())
            report(err, path, Severity::Error, "invalid specification", {1, 1});
        return {std::nullopt, kDataError};
    }
    return {std::move(r.value), kOk};
}

BuildConfig to_config(const BuildOptions& o) {
    BuildConfig c;
    c.k = o.k;
    c.state_cap = o.state_cap;
    c.run_bound = o.bound;
    c.threads = o.threads;
    return c;
}

std::string cycle_text(const std::vector<Position>& cycle) {
    std::string s;
    for (const auto& p : cycle)
        s += (s.empty() ? "" : " -> ") + to_string(p);
    return s;
}

ordered_json path_json(const TransitionSystem& ts, const std::vector<size_t>& path) {
    ordered_json a = ordered_json::array();
    for (size_t i : path)
        a.push_back("s" + std::to_string(i));
    (void)ts;
    return a;
}

std::string config_text(const BuildOptions& o, int k) {
    return "k=" + std::to_string(k) + " state-cap=" + std::to_string(o.state_cap) +
           " bound=" + (o.bound ? std::to_string(*o.bound) : std::string("-"));
}

bool write_export(const TransitionSystem& ts, const std::string& path, std::ostream& err) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        report(err, path, Severity::Error, "cannot create file");
        return false;
    }
    bool dot = path.size() >= 4 && path.compare(path.size() - 4, 4, ".dot") == 0;
    out << (dot ? export_dot(ts) : export_json(ts));
    return static_cast<bool>(out);
}

std::optional<ServiceCallMap> parse_service_table(const std::string& path, std::ostream& err) {
    auto text = read_file(path, err);
    if (!text)
        return std::nullopt;
    static const std::regex entry(R"(^\s*([A-Za-z][A-Za-z0-9_]*)\s*\(([^)]*)\)\s*=\s*([A-Za-z0-9_]+)\s*$)");
    static const std::regex blank(R"(^\s*(#.*)?$)");
    ServiceCallMap table;
    std::istringstream in(*text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::smatch m;
        if (std::regex_match(line, blank))
            continue;
        if (!std::regex_match(line, m, entry)) {
            report(err, path, Severity::Error, "expected 'f(args) = value'", {lineno, 1});
            return std::nullopt;
        }
        ServiceCall c{m[1].str(), {}};
        std::string args = m[2].str();
        std::istringstream as(args);
        std::string a;
        while (std::getline(as, a, ',')) {
            auto b = a.find_first_not_of(" \t"), e = a.find_last_not_of(" \t");
            if (b == std::string::npos) {
                report(err, path, Severity::Error, "empty service argument", {lineno, 1});
                return std::nullopt;
            }
            c.args.push_back(a.substr(b, e - b + 1));
        }
        if (!table.emplace(c, m[3].str()).second) {
            report(err, path, Severity::Error, "duplicate entry for " + to_string(c), {lineno, 1});
            return std::nullopt;
        }
    }
    return table;
}

} // namespace

unsigned threads_from_env() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("CKAB_THREADS");
    if (!env || !*env)
        return 1;
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (*end || n < 1)
        return 1;
    return std::min<unsigned>(static_cast<unsigned>(n), hw);
}

int cmd_validate(const std::string& spec_path, std::ostream& out, std::ostream& err) {
    auto l = load_spec(spec_path, err);
    if (!l.spec)
        return l.code;
    out << spec_path << ": ok (digest " << l.spec->digest() << ")\n";
    return kOk;
}

int cmd_analyze(const std::string& spec_path, bool json, std::ostream& out, std::ostream& err) {
    auto l = load_spec(spec_path, err);
    if (!l.spec)
        return l.code;
    auto r = check_weak_acyclicity(*l.spec);
    size_t special = 0;
    for (const auto& e : r.graph.edges)
        special += e.special;
    if (json) {
        ordered_json j;
        j["spec_digest"] = l.spec->digest();
        j["weakly_acyclic"] = r.weakly_acyclic;
        ordered_json cyc = ordered_json::array();
        for (const auto& p : r.cycle)
            cyc.push_back(to_string(p));
        j["cycle"] = cyc;
        j["positions"] = r.graph.nodes.size();
        j["edges"] = r.graph.edges.size();
        j["special_edges"] = special;
        j["k"] = derive_k(*l.spec);
        out << j.dump(2) << "\n";
    } else {
        out << "dependency graph: " << r.graph.nodes.size() << " positions, " << r.graph.edges.size() << " edges ("
            << special << " special)\n";
        out << "k: " << derive_k(*l.spec) << "\n";
        if (r.weakly_acyclic)
            out << "weakly acyclic: yes\n";
        else
            out << "weakly acyclic: no\ncycle through special edge: " << cycle_text(r.cycle) << "\n";
    }
    return r.weakly_acyclic ? kOk : kNotWeaklyAcyclic;
}

int cmd_check(const std::string& spec_path, const std::string& property_path, const CheckOptions& opts,
              std::ostream& out, std::ostream& err) {
    using Clock = std::chrono::steady_clock;
    auto l = load_spec(spec_path, err);
    if (!l.spec)
        return l.code;
    auto ptext = read_file(property_path, err);
    if (!ptext)
        return kNoInput;
    auto props = parse_properties(*ptext, *l.spec);
    for (const auto& d : props.diagnostics)
        err << format_diagnostic(property_path, d) << "\n";
    if (!props.ok())
        return kDataError;

    auto wa = check_weak_acyclicity(*l.spec);
    auto t0 = Clock::now();
    TransitionSystem ts = build(*l.spec, to_config(opts.build));
    auto t1 = Clock::now();
    if (!opts.export_path.empty() && !write_export(ts, opts.export_path, err))
        return kCantCreate;

    struct Verdict {
        std::string formula;
        CheckResult result;
    };
    std::vector<Verdict> verdicts;
    for (const auto& f : *props.value) {
        Verdict v{pretty_print(f), {}};
        if (ts.size() > 0)
            v.result = model_check(ts, f);
        verdicts.push_back(std::move(v));
    }
    auto t2 = Clock::now();
    auto ms = [](auto d) { return std::chrono::duration_cast<std::chrono::milliseconds>(d).count(); };

    int code = kOk;
    if (!ts.complete)
        code = kIncomplete;
    else
        for (const auto& v : verdicts)
            if (!v.result.holds)
                code = kFails;
    auto verdict_word = [&](const Verdict& v) {
        if (!ts.complete)
            return "inconclusive";
        return v.result.holds ? "holds" : "fails";
    };

    if (opts.json) {
        ordered_json j;
        j["spec_digest"] = l.spec->digest();
        j["config"] = {{"k", ts.k},
                       {"state_cap", opts.build.state_cap},
                       {"bound", opts.build.bound ? ordered_json(*opts.build.bound) : ordered_json(nullptr)}};
        j["ts"] = {{"states", ts.size()},
                   {"edges", ts.edges().size()},
                   {"stable", ts.stable_count()},
                   {"intermediate", ts.intermediate_count()},
                   {"complete", ts.complete}};
        if (!ts.complete)
            j["ts"]["incomplete_reason"] = ts.incomplete_reason;
        if (ts.bound_violation)
            j["ts"]["bound_violation"] = {{"path", path_json(ts, ts.bound_violation->path)},
                                          {"values", ts.bound_violation->values}};
        ordered_json cyc = ordered_json::array();
        for (const auto& p : wa.cycle)
            cyc.push_back(to_string(p));
        j["analysis"] = {{"weakly_acyclic", wa.weakly_acyclic}, {"cycle", cyc}};
        ordered_json vs = ordered_json::array();
        for (const auto& v : verdicts) {
            ordered_json e;
            e["formula"] = v.formula;
            e["verdict"] = verdict_word(v);
            e["extent"] = count(v.result.extent);
            e["path"] = path_json(ts, v.result.path);
            ordered_json subs = ordered_json::array();
            for (const auto& s : v.result.subformulas)
                subs.push_back({{"formula", s.formula}, {"states", s.states}});
            e["subformulas"] = subs;
            vs.push_back(e);
        }
        j["properties"] = vs;
        if (opts.timings)
            j["timings_ms"] = {{"build", ms(t1 - t0)}, {"check", ms(t2 - t1)}};
        out << j.dump(2) << "\n";
        return code;
    }

    out << "spec " << l.spec->digest() << "\n";
    out << "config " << config_text(opts.build, ts.k) << "\n";
    out << "states " << ts.size() << " (stable " << ts.stable_count() << ", intermediate " << ts.intermediate_count()
        << "), edges " << ts.edges().size() << "\n";
    out << "weakly acyclic: " << (wa.weakly_acyclic ? "yes" : "no (" + cycle_text(wa.cycle) + ")") << "\n";
    if (!ts.complete)
        out << "incomplete: " << ts.incomplete_reason << "\n";
    if (ts.bound_violation)
        out << "run bound violated along " << format_path(ts, ts.bound_violation->path) << "\n";
    for (size_t i = 0; i < verdicts.size(); ++i) {
        const auto& v = verdicts[i];
        out << "property " << i + 1 << ": " << verdict_word(v) << "\n";
        out << "  " << v.formula << "\n";
        if (ts.size() == 0)
            continue;
        out << "  extent " << count(v.result.extent) << "/" << ts.size() << "\n";
        out << "  " << (v.result.holds ? "witness " : "counterexample ") << format_path(ts, v.result.path) << "\n";
    }
    if (opts.timings)
        out << "timings: build " << ms(t1 - t0) << " ms, check " << ms(t2 - t1) << " ms\n";
    return code;
}

int cmd_simulate(const std::string& spec_path, const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
    auto l = load_spec(spec_path, err);
    if (!l.spec)
        return l.code;
    std::unique_ptr<ServiceBackend> backend;
    const std::string& s = opts.services;
    if (s == "hash" || s.rfind("hash:", 0) == 0) {
        std::uint64_t seed = 0;
        if (s.size() > 5) {
            char* end = nullptr;
            seed = std::strtoull(s.c_str() + 5, &end, 10);
            if (*end) {
                report(err, "<services>", Severity::Error, "seed must be a non-negative integer");
                return kUsage;
            }
        }
        std::vector<std::string> domain;
        for (size_t i = 1; i <= opts.hash_values; ++i)
            domain.push_back("v" + std::to_string(i));
        backend = std::make_unique<HashBackend>(seed, std::move(domain));
    } else if (s.rfind("table:", 0) == 0) {
        auto table = parse_service_table(s.substr(6), err);
        if (!table)
            return kDataError;
        backend = std::make_unique<TableBackend>(std::move(*table));
    } else {
        report(err, "<services>", Severity::Error, "unknown service backend '" + s + "' (hash, hash:SEED, table:PATH)");
        return kUsage;
    }
    try {
        out << format_trace(simulate(*l.spec, opts.steps, *backend));
    } catch (const SpecError& e) {
        report(err, spec_path, Severity::Error, e.what());
        return kDataError;
    }
    return kOk;
}

int cmd_export(const std::string& spec_path, const BuildOptions& opts, const std::string& format, std::ostream& out,
               std::ostream& err) {
    auto l = load_spec(spec_path, err);
    if (!l.spec)
        return l.code;
    TransitionSystem ts = build(*l.spec, to_config(opts));
    out << (format == "dot" ? export_dot(ts) : export_json(ts));
    return ts.complete ? kOk : kIncomplete;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verification of context-sensitive knowledge and action bases"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ckab 0.1.0");

    std::string spec_path, property_path;
    BuildOptions bopts;
    bopts.threads = threads_from_env();
    CheckOptions copts;
    SimulateOptions sopts;
    bool json = false;
    std::string format = "json";
    int k = -1;
    size_t bound = 0;

    auto add_build = [&](CLI::App* c) {
        c->add_option("--k", k, "fresh abstract values (default: derived from the action heads)")
            ->check(CLI::NonNegativeNumber);
        c->add_option("--state-cap", bopts.state_cap, "maximum number of states")->capture_default_str();
        c->add_option("--bound", bound, "run bound b: stop when a run accumulates b values")
            ->check(CLI::PositiveNumber);
    };

    auto* validate = app.add_subcommand("validate", "parse and validate a specification");
    validate->add_option("spec", spec_path)->required();

    auto* analyze = app.add_subcommand("analyze", "weak-acyclicity analysis");
    analyze->add_option("spec", spec_path)->required();
    analyze->add_flag("--json", json, "machine-readable report");

    auto* check = app.add_subcommand("check", "build the transition system and check properties");
    check->add_option("spec", spec_path)->required();
    check->add_option("properties", property_path)->required();
    add_build(check);
    check->add_option("--export", copts.export_path, "write the transition system (.dot or .json)");
    check->add_flag("--json", copts.json, "machine-readable report");
    check->add_flag("--timings", copts.timings, "report build and check times");

    auto* sim = app.add_subcommand("simulate", "concrete run with a service backend");
    sim->add_option("spec", spec_path)->required();
    sim->add_option("--steps", sopts.steps, "action/context step pairs")->capture_default_str();
    sim->add_option("--services", sopts.services, "hash, hash:SEED or table:PATH")->capture_default_str();
    sim->add_option("--hash-values", sopts.hash_values, "size of the hash backend value pool")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* exp = app.add_subcommand("export", "print the transition system");
    exp->add_option("spec", spec_path)->required();
    add_build(exp);
    exp->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kOk;
        }
        err << "ckab: " << e.what() << "\n";
        return kUsage;
    }
    if (k >= 0)
        bopts.k = k;
    if (bound > 0)
        bopts.bound = bound;

    try {
        if (validate->parsed())
            return cmd_validate(spec_path, out, err);
        if (analyze->parsed())
            return cmd_analyze(spec_path, json, out, err);
        if (check->parsed()) {
            copts.build = bopts;
            return cmd_check(spec_path, property_path, copts, out, err);
        }
        if (sim->parsed())
            return cmd_simulate(spec_path, sopts, out, err);
        if (exp->parsed())
            return cmd_export(spec_path, bopts, format, out, err);
    } catch (const SpecError& e) {
        report(err, spec_path, Severity::Error, e.what());
        return kDataError;
    }
    return kUsage;
}

} // namespace ckab::cli
