#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "tsat/oracle.hpp"
#include "tsat/parser.hpp"

namespace tsat::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::optional<OracleBounds> parse_oracle_bounds(const std::string& text) {
    static const std::regex shape(R"(^(\d+)(,(\d+),(\d+))?$)");
    std::smatch m;
    if (!std::regex_match(text, m, shape)) return std::nullopt;
    OracleBounds b;
    b.length = std::stoul(m[1].str());
    if (m[2].matched) {
        b.prefix = std::stoul(m[3].str());
        b.period = std::stoul(m[4].str());
    }
    if (b.length == 0 || b.period == 0) throw UsageError("--oracle bounds must be positive");
    return b;
}

std::size_t node_limit_from_env() {
    const char* raw = std::getenv("TSAT_NODE_LIMIT");
    if (!raw || !*raw) return 0;
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(raw, &used);
        if (used != std::string_view(raw).size()) throw std::invalid_argument("trailing characters");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw UsageError(std::string("TSAT_NODE_LIMIT must be a non-negative integer, got '") + raw + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read formula file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Returns an exit code when parsing ends the run (help or error).
std::optional<int> parse_args(const std::vector<std::string>& args, RunOptions& opt, std::ostream& out,
                              std::ostream& err) {
    CLI::App app{"Decide satisfiability of propositional linear-time temporal logic formulas"};
    app.name("tsat");
    std::string mode = "both";
    std::string bdd_format;
    std::string oracle_text;
    std::string file;
    std::uint64_t max_iters = 0;
    app.add_option("formula", opt.formula, "Formula text");
    app.add_option("--file", file, "Read the formula from PATH");
    app.add_option("--mode", mode, "finite, infinite or both")
        ->check(CLI::IsMember({"finite", "infinite", "both"}));
    app.add_flag("--model", opt.model, "Print the model when satisfiable");
    app.add_flag("--show-internal", opt.show_internal, "Include dependent and auxiliary variables in models");
    app.add_flag("--dump-invariant", opt.dump_invariant, "Print the invariant, transition and liveness formulas");
    app.add_flag("--dump-config", opt.dump_config, "Print the transition configurations");
    app.add_option("--dump-bdd", bdd_format, "Print the BDDs of each configuration (format: dot)")
        ->check(CLI::IsMember({"dot"}));
    app.add_flag("--h-literal", opt.h_literal, "Translate without sharing or Boolean absorption");
    auto* iters = app.add_option("--max-iters", max_iters, "Cap on image computations per search")
                      ->check(CLI::PositiveNumber);
    auto* oracle = app.add_option("--oracle", oracle_text, "Cross-check with bounded search: LEN[,PREFIX,PERIOD]")
                       ->expected(0, 1);
    app.add_flag("--stats", opt.stats, "Print engine statistics");
    app.add_flag("--json", opt.json, "Emit one JSON object instead of text");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSat;
    } catch (const CLI::ParseError& e) {
        err << "tsat: " << e.what() << '\n';
        return kUsage;
    }

    if (mode == "finite")
        opt.mode = DecisionMode::Finite;
    else if (mode == "infinite")
        opt.mode = DecisionMode::Infinite;
    opt.dump_bdd = !bdd_format.empty();
    if (iters->count() > 0) opt.max_iters = max_iters;
    if (oracle->count() > 0) {
        if (oracle_text.empty()) {
            opt.oracle = OracleBounds{};
        } else if (auto b = parse_oracle_bounds(oracle_text)) {
            opt.oracle = *b;
        } else if (opt.formula.empty()) {
            // `--oracle FORMULA`: the optional value swallowed the formula.
            opt.oracle = OracleBounds{};
            opt.formula = oracle_text;
        } else {
            err << "tsat: --oracle expects LEN or LEN,PREFIX,PERIOD, got '" << oracle_text << "'\n";
            return kUsage;
        }
    }
    if (!file.empty()) {
        if (!opt.formula.empty()) {
            err << "tsat: give either a formula argument or --file, not both\n";
            return kUsage;
        }
        opt.file = file;
    } else if (opt.formula.empty()) {
        err << "tsat: no formula given (use a positional argument or --file)\n";
        return kUsage;
    }
    return std::nullopt;
}

std::vector<VAtom> project_states(const std::vector<VAtom>& states, const VariableContext& from,
                                  const VariableContext& to) {
    std::vector<VAtom> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(project(s, from, to));
    return out;
}

json states_json(const std::vector<VAtom>& states, const VariableContext& ctx) {
    json arr = json::array();
    for (const auto& s : states) {
        json obj = json::object();
        for (std::size_t i = 0; i < ctx.size(); ++i) obj[ctx.name(i)] = s[i] ? 1 : 0;
        arr.push_back(std::move(obj));
    }
    return arr;
}

void print_states(std::ostream& out, const std::vector<VAtom>& states, const VariableContext& ctx,
                  std::size_t& counter) {
    for (const auto& s : states) {
        out << 'S' << counter++ << ':';
        if (ctx.size() > 0) out << ' ' << s.to_string(ctx);
        out << '\n';
    }
}

struct OracleReport {
    std::string summary;
    bool disagreement = false;
    json data;
};

OracleReport run_oracle(const RunOptions& opt, const Decision& d) {
    const auto& user = d.pipeline.user_ctx;
    const Formula& x = d.pipeline.source;
    const bool floating = has_past(x);
    const OracleBounds b = *opt.oracle;
    CompiledFormula compiled(x, user);
    OracleReport r;
    r.data = json::object();

    if (const auto* fin = std::get_if<SatFinite>(&d.verdict.result)) {
        FiniteInterval m = project(fin->model, d.pipeline.ctx, user);
        bool ok = floating ? compiled.holds_somewhere(m) : compiled.eval_finite(m);
        r.disagreement = !ok;
        r.summary = ok ? "model confirmed" : "model REJECTED by the oracle";
        r.data["model_confirmed"] = ok;
        return r;
    }
    if (const auto* inf = std::get_if<SatInfinite>(&d.verdict.result)) {
        LassoInterval m = project(inf->model, d.pipeline.ctx, user);
        bool ok = floating ? compiled.holds_somewhere(m) : compiled.eval_lasso(m);
        r.disagreement = !ok;
        r.summary = ok ? "model confirmed" : "model REJECTED by the oracle";
        r.data["model_confirmed"] = ok;
        return r;
    }

    bool found_any = false;
    std::ostringstream scope;
    if (opt.mode != DecisionMode::Infinite) {
        SearchBounds sb;
        sb.mode = SearchBounds::Mode::Finite;
        sb.max_length = b.length;
        sb.floating = floating;
        found_any = found_any || found(enumerate_sat(x, user, sb));
        scope << "finite length <= " << b.length;
    }
    if (opt.mode != DecisionMode::Finite) {
        SearchBounds sb;
        sb.mode = SearchBounds::Mode::Lasso;
        sb.max_prefix = b.prefix;
        sb.max_period = b.period;
        sb.floating = floating;
        found_any = found_any || found(enumerate_sat(x, user, sb));
        if (!scope.str().empty()) scope << ", ";
        scope << "lasso prefix <= " << b.prefix << " period <= " << b.period;
    }
    r.data["bounded_model_found"] = found_any;
    r.data["scope"] = scope.str();
    if (d.verdict.is_unsat()) {
        r.disagreement = found_any;
        r.summary = found_any ? "DISAGREES: bounded search found a model (" + scope.str() + ")"
                              : "bounded-confirmed (" + scope.str() + ")";
    } else {
        r.summary = std::string(found_any ? "bounded search found a model" : "no model within bounds") + " (" +
                    scope.str() + ")";
    }
    return r;
}

void dump_invariant(std::ostream& out, const Pipeline& p) {
    out << "invariant:\n";
    for (const auto& dep : p.ordered.deps) out << "  " << to_string(dep) << '\n';
    out << "transition:\n";
    for (const auto& t : transition_conjuncts(p.ordered)) out << "  " << print(t) << '\n';
    out << "liveness:\n";
    for (const auto& imp : liveness_formula(p.ordered).implications) out << "  " << to_string(imp) << '\n';
    out << "init: " << print(p.translation.init) << '\n';
    if (!p.past.aux_vars.empty()) out << "past-free form: " << print(p.past.formula) << '\n';
}

json invariant_json(const Pipeline& p) {
    json j = json::object();
    j["dependencies"] = json::array();
    for (const auto& dep : p.ordered.deps) j["dependencies"].push_back(to_string(dep));
    j["transition"] = json::array();
    for (const auto& t : transition_conjuncts(p.ordered)) j["transition"].push_back(print(t));
    j["liveness"] = json::array();
    for (const auto& imp : liveness_formula(p.ordered).implications) j["liveness"].push_back(to_string(imp));
    j["init"] = print(p.translation.init);
    return j;
}

void dump_config(std::ostream& out, const Pipeline& p) {
    for (const auto& tc : p.configs) {
        out << "config " << tc.kind_name() << ":\n";
        out << "  vars:";
        for (const auto& v : tc.ctx.names()) out << ' ' << v;
        out << '\n';
        out << "  formula: " << print(to_formula(tc)) << '\n';
        if (tc.is_infinite_time()) out << "  finite route: " << print(infinite_route_formula(tc)) << '\n';
        Bounds b = bounds(tc);
        if (tc.is_finite_time())
            out << "  bound: length <= " << b.finite_max_length << '\n';
        else
            out << "  bound: prefix < " << b.infinite_prefix_limit << ", period <= " << b.infinite_period_max << '\n';
    }
}

void dump_bdds(std::ostream& out, const Pipeline& p, std::size_t node_limit) {
    for (const auto& tc : p.configs) {
        BddManager m(tc.ctx, node_limit);
        SymbolicConfig cfg = build_symbolic(m, tc);
        const std::pair<const char*, BddRef> parts[] = {
            {"gamma1", cfg.gamma1}, {"gamma2", cfg.gamma2}, {"gamma3", cfg.gamma3}};
        for (const auto& [name, ref] : parts) {
            out << "bdd " << tc.kind_name() << ' ' << name << " root " << ref.id << '\n';
            m.dump(out, ref);
        }
    }
}

int exit_code_for(const Verdict& v) {
    if (v.is_sat()) return kSat;
    if (v.is_unsat()) return kUnsat;
    return kInconclusive;
}

int execute(const RunOptions& opt, std::ostream& out, std::ostream& err) {
    const std::string text = opt.file ? read_file(*opt.file) : opt.formula;
    Formula x;
    try {
        x = parse(text);
    } catch (const SyntaxError& e) {
        err << describe(e, text) << '\n';
        return kUsage;
    }
    if (opt.oracle && vars(x).size() > kMaxEnumerationVars)
        throw UsageError("--oracle supports at most " + std::to_string(kMaxEnumerationVars) + " variables");

    DecideOptions dopt;
    dopt.mode = opt.mode;
    dopt.h_literal = opt.h_literal;
    dopt.engine.max_iters = opt.max_iters;
    dopt.engine.node_limit = opt.node_limit;
    Decision d = decide(x, dopt);
    const Verdict& v = d.verdict;
    const int code = exit_code_for(v);
    const VariableContext& shown = opt.show_internal ? d.pipeline.ctx : d.pipeline.user_ctx;

    std::optional<OracleReport> oracle;
    if (opt.oracle) oracle = run_oracle(opt, d);

    if (opt.json) {
        json j = json::object();
        j["formula"] = print(x);
        j["mode"] = std::string(to_string(opt.mode));
        j["verdict"] = std::string(v.name());
        j["exit_code"] = code;
        if (const auto* inc = std::get_if<Inconclusive>(&v.result)) j["reason"] = inc->reason;
        if (const auto* fin = std::get_if<SatFinite>(&v.result)) {
            j["model"] = {{"kind", "finite"},
                          {"states", states_json(project_states(fin->model.states, d.pipeline.ctx, shown), shown)}};
        } else if (const auto* inf = std::get_if<SatInfinite>(&v.result)) {
            j["model"] = {{"kind", "lasso"},
                          {"prefix", states_json(project_states(inf->model.prefix, d.pipeline.ctx, shown), shown)},
                          {"period", states_json(project_states(inf->model.period, d.pipeline.ctx, shown), shown)}};
        }
        j["stats"] = {{"iterations", v.stats.iterations},
                      {"peak_nodes", v.stats.peak_nodes},
                      {"candidates_tried", v.stats.candidates_tried}};
        if (opt.dump_invariant) j["invariant"] = invariant_json(d.pipeline);
        if (opt.dump_config) {
            j["configs"] = json::array();
            for (const auto& tc : d.pipeline.configs) {
                json c = {{"kind", std::string(tc.kind_name())},
                          {"vars", tc.ctx.names()},
                          {"formula", print(to_formula(tc))}};
                if (tc.is_infinite_time()) c["finite_route"] = print(infinite_route_formula(tc));
                j["configs"].push_back(std::move(c));
            }
        }
        if (opt.dump_bdd) {
            std::ostringstream bdd;
            dump_bdds(bdd, d.pipeline, opt.node_limit);
            j["bdd"] = bdd.str();
        }
        if (oracle) {
            oracle->data["summary"] = oracle->summary;
            oracle->data["agrees"] = !oracle->disagreement;
            j["oracle"] = oracle->data;
        }
        out << j.dump(2) << '\n';
        return code;
    }

    if (opt.dump_invariant) dump_invariant(out, d.pipeline);
    if (opt.dump_config) dump_config(out, d.pipeline);
    if (opt.dump_bdd) dump_bdds(out, d.pipeline, opt.node_limit);
    out << "verdict: " << v.name();
    if (const auto* inc = std::get_if<Inconclusive>(&v.result)) out << " (" << inc->reason << ')';
    out << '\n';
    if (opt.model) {
        std::size_t counter = 0;
        if (const auto* fin = std::get_if<SatFinite>(&v.result)) {
            print_states(out, project_states(fin->model.states, d.pipeline.ctx, shown), shown, counter);
        } else if (const auto* inf = std::get_if<SatInfinite>(&v.result)) {
            out << "prefix:\n";
            print_states(out, project_states(inf->model.prefix, d.pipeline.ctx, shown), shown, counter);
            out << "period:\n";
            print_states(out, project_states(inf->model.period, d.pipeline.ctx, shown), shown, counter);
        }
    }
    if (opt.stats)
        out << "stats: iterations=" << v.stats.iterations << " peak_nodes=" << v.stats.peak_nodes
            << " candidates_tried=" << v.stats.candidates_tried << '\n';
    if (oracle) out << "oracle: " << oracle->summary << '\n';
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunOptions opt;
    try {
        if (auto early = parse_args(args, opt, out, err)) return *early;
        opt.node_limit = node_limit_from_env();
        return execute(opt, out, err);
    } catch (const UsageError& e) {
        err << "tsat: " << e.what() << '\n';
        return kUsage;
    } catch (const TranslationError& e) {
        err << "tsat: " << e.what() << '\n';
        return kUsage;
    } catch (const NodeLimitExceeded& e) {
        err << "tsat: " << e.what() << '\n';
        return kNodeLimit;
    }
}

}  // namespace tsat::cli
