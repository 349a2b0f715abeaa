#include "tel/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>

#include "tel/error.hpp"
#include "tel/parser.hpp"
#include "tel/pipeline.hpp"
#include "tel/safety.hpp"
#include "tel/semantics/enumerate.hpp"
#include "tel/semantics/program.hpp"

namespace tel::cli {

namespace {

using json = nlohmann::ordered_json;
using syntax::Program;

std::vector<std::string> atom_strings(const std::set<syntax::Atom>& atoms) {
    std::vector<std::string> out;
    for (const auto& a : atoms) out.push_back(syntax::to_string(a));
    return out;
}

json ground_rules_json(const pipeline::GroundTemporalProgram& program) {
    json rules = json::array();
    for (const auto& r : program.rules) {
        std::string text = pipeline::to_string(r);
        text.erase(0, pipeline::tag(r.shift).size() + 1);
        rules.push_back({{"shift", pipeline::tag(r.shift)}, {"rule", text}});
    }
    return rules;
}

json stats_json(const Program& program, const pipeline::GroundingStats& stats) {
    std::map<std::size_t, json> rows;
    for (const auto& c : stats.per_rule) {
        auto [it, inserted] = rows.try_emplace(c.statement);
        json& row = it->second;
        if (inserted)
            row = {{"statement", c.statement},
                   {"line", program.rules[c.rule].line},
                   {"counts", {0, 0, 0}},
                   {"static", true}};
        for (std::size_t k = 0; k < 3; ++k) row["counts"][k] = row["counts"][k].get<std::size_t>() + c.by_shift[k];
        row["static"] = row["static"].get<bool>() && c.is_static;
    }
    json per = json::array();
    for (auto& [stmt, row] : rows) per.push_back(std::move(row));
    json out = {{"per_statement", std::move(per)},
                {"boxed_total", stats.boxed_total},
                {"static_boxed", stats.static_boxed},
                {"emitted_total", stats.emitted_total},
                {"dropped_rules", stats.dropped_rules},
                {"dropped_literals", stats.dropped_literals},
                {"dropped_head_atoms", stats.dropped_head_atoms}};
    out["baseline_boxed"] = stats.baseline_boxed ? json(*stats.baseline_boxed) : json(nullptr);
    return out;
}

json trace_json(const semantics::LassoTrace& t) {
    auto states = [](const std::vector<semantics::State>& s) {
        json out = json::array();
        for (const auto& st : s) out.push_back(atom_strings(st));
        return out;
    };
    return {{"prefix", states(t.prefix)}, {"loop", states(t.loop)}, {"text", semantics::to_string(t)}};
}

void emit(const RunConfig& config, std::ostream& out, const json& doc, const std::string& text) {
    if (config.format == Format::json)
        out << doc.dump(2) << '\n';
    else
        out << text;
}

int cmd_check(const RunConfig& config, const Program& program, std::ostream& out) {
    const auto report = safety::check_safety(program);
    std::map<std::size_t, safety::RuleVerdict> by_statement;
    for (const auto& v : report.verdicts) {
        auto [it, inserted] = by_statement.try_emplace(v.statement, v);
        if (!inserted && !v.safe() && it->second.safe()) it->second = v;
    }
    std::ostringstream text;
    json rules = json::array();
    std::size_t unsafe = 0;
    for (const auto& [stmt, v] : by_statement) {
        text << "line " << v.line << ": ";
        if (v.safe()) {
            text << "safe\n";
        } else {
            ++unsafe;
            text << "unsafe, variables not bound by a positive body atom:";
            for (const auto& x : v.unsafe_variables) text << ' ' << x;
            text << '\n';
        }
        rules.push_back(
            {{"statement", stmt}, {"line", v.line}, {"safe", v.safe()}, {"unsafe_variables", v.unsafe_variables}});
    }
    if (unsafe == 0)
        text << "all rules safe\n";
    else
        text << unsafe << " unsafe rule(s)\n";
    emit(config, out, {{"command", "check"}, {"safe", unsafe == 0}, {"rules", std::move(rules)}}, text.str());
    return unsafe == 0 ? ok : domain_error;
}

int cmd_ground_extended(const RunConfig& config, const Program& program, std::ostream& out) {
    const safety::HerbrandDomain domain(program, config.extension);
    const auto ground = safety::ground_program(program, domain.constants());
    pipeline::GroundTemporalProgram tagged;
    for (const auto& r : ground.rules)
        tagged.rules.push_back(
            {r.kind == syntax::RuleKind::always_dyn ? pipeline::Shift::from_zero : pipeline::Shift::zero, r, 0});
    std::ostringstream text;
    text << pipeline::to_string(tagged) << "instances: " << tagged.rules.size() << '\n';
    emit(config, out,
         {{"command", "ground"},
          {"mode", "extended"},
          {"domain", domain.constants()},
          {"rules", ground_rules_json(tagged)},
          {"instances", tagged.rules.size()}},
         text.str());
    return ok;
}

int cmd_ground_baseline(const RunConfig& config, const Program& program, std::ostream& out) {
    const auto b = pipeline::baseline_ground(program);
    std::ostringstream text;
    text << pipeline::to_string(b.program);
    json per = json::array();
    for (const auto& [rule, count] : b.per_rule) {
        text << "line " << program.rules[rule].line << ": " << count << " [0..] rules\n";
        per.push_back({{"statement", program.rules[rule].statement}, {"line", program.rules[rule].line}, {"count", count}});
    }
    text << "baseline boxed rules: " << b.boxed_total << '\n';
    emit(config, out,
         {{"command", "ground"},
          {"mode", "baseline"},
          {"rules", ground_rules_json(b.program)},
          {"per_statement", std::move(per)},
          {"baseline_boxed", b.boxed_total}},
         text.str());
    return ok;
}

int cmd_ground(const RunConfig& config, const Program& program, std::ostream& out) {
    if (!config.extension.empty()) return cmd_ground_extended(config, program, out);
    if (config.baseline) return cmd_ground_baseline(config, program, out);
    const auto g = pipeline::emit_ground_program(program, {config.strict_paper});
    std::ostringstream text;
    text << pipeline::to_string(g.program) << '\n' << pipeline::stats_table(program, g.stats);
    emit(config, out,
         {{"command", "ground"},
          {"mode", config.strict_paper ? "strict" : "default"},
          {"rules", ground_rules_json(g.program)},
          {"stats", stats_json(program, g.stats)}},
         text.str());
    return ok;
}

int cmd_facts(const RunConfig& config, const Program& program, std::ostream& out) {
    const auto delta = pipeline::derivable_facts(program);
    std::ostringstream text;
    json doc = {{"command", "facts"}};
    for (std::size_t t = 0; t < 3; ++t) {
        const std::string name = "D" + std::to_string(t);
        text << '[' << name << "]\n";
        for (const auto& a : delta.at[t]) text << syntax::to_string(a) << '\n';
        doc[name] = atom_strings(delta.at[t]);
    }
    emit(config, out, doc, text.str());
    return ok;
}

int cmd_solve(const RunConfig& config, const Program& program, std::ostream& out) {
    semantics::EnumerateOptions options;
    options.max_prefix = config.max_prefix;
    options.max_loop = config.max_loop;
    options.node_limit = config.node_limit;

    semantics::GroundProgram ground;
    pipeline::Grounding emitted;
    std::string mode = "default";
    if (!config.extension.empty()) {
        const safety::HerbrandDomain domain(program, config.extension);
        ground = semantics::ground(program, domain.constants());
        mode = "extended";
    } else if (config.baseline) {
        ground = semantics::from_emitted(pipeline::baseline_ground(program).program);
        mode = "baseline";
    } else {
        emitted = pipeline::emit_ground_program(program, {config.strict_paper});
        ground = semantics::from_emitted(emitted.program);
        options.bound = &emitted.facts;
        if (config.strict_paper) mode = "strict";
    }

    const auto traces = semantics::enumerate_tsm(ground, options);
    const auto cred = semantics::cred_facts(traces).render();

    std::ostringstream text;
    text << "% " << traces.size() << " temporal stable model(s), prefix <= " << config.max_prefix
         << ", loop <= " << config.max_loop << '\n';
    json models = json::array();
    for (const auto& t : traces) {
        text << semantics::to_string(t) << '\n';
        models.push_back(trace_json(t));
    }
    text << "credulous:";
    for (std::size_t i = 0; i < cred.size(); ++i) text << (i ? ", " : " ") << cred[i];
    text << '\n';
    emit(config, out,
         {{"command", "solve"},
          {"mode", mode},
          {"max_prefix", config.max_prefix},
          {"max_loop", config.max_loop},
          {"models", std::move(models)},
          {"credulous", cred}},
         text.str());
    return ok;
}

int cmd_stats(const RunConfig& config, const Program& program, std::ostream& out) {
    auto g = pipeline::emit_ground_program(program, {config.strict_paper});
    if (config.baseline) g.stats.baseline_boxed = pipeline::baseline_ground(program).boxed_total;
    emit(config, out, {{"command", "stats"}, {"stats", stats_json(program, g.stats)}},
         pipeline::stats_table(program, g.stats));
    return ok;
}

void check_extension(const std::vector<std::string>& extension) {
    static const std::regex constant("[a-z0-9][A-Za-z0-9_]*");
    for (const auto& c : extension)
        if (!std::regex_match(c, constant)) throw DomainError("not a constant symbol: '" + c + "'");
}

} // namespace

int run_text(const RunConfig& config, const std::string& text, std::ostream& out, std::ostream& err) {
    try {
        check_extension(config.extension);
        const Program program = syntax::parse_program(text);
        switch (config.command) {
        case Command::check: return cmd_check(config, program, out);
        case Command::ground: return cmd_ground(config, program, out);
        case Command::facts: return cmd_facts(config, program, out);
        case Command::solve: return cmd_solve(config, program, out);
        case Command::stats: return cmd_stats(config, program, out);
        }
    } catch (const ParseError& e) {
        err << "tel: parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const DomainError& e) {
        err << "tel: " << e.what() << '\n';
        return domain_error;
    } catch (const ResourceLimit& e) {
        err << "tel: " << e.what() << "; raise --node-limit or lower --prefix/--loop\n";
        return resource_cap;
    }
    return ok;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::ifstream in(config.input, std::ios::binary);
    if (!in) {
        err << "tel: cannot read " << config.input << '\n';
        return parse_error;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return run_text(config, text.str(), out, err);
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Grounder and solver for splittable temporal logic programs"};
    RunConfig config;
    const std::map<std::string, Command> commands{{"check", Command::check},
                                                  {"ground", Command::ground},
                                                  {"facts", Command::facts},
                                                  {"solve", Command::solve},
                                                  {"stats", Command::stats}};
    const std::map<std::string, Format> formats{{"text", Format::text}, {"json", Format::json}};

    app.add_option("command", config.command, "check | ground | facts | solve | stats")
        ->required()
        ->transform(CLI::CheckedTransformer(commands).description(""));
    app.add_option("file", config.input, "program file")->required();
    app.add_flag("--baseline", config.baseline, "ground over static extents instead of derivable facts");
    app.add_flag("--strict-paper", config.strict_paper, "keep head atoms that are never derivable");
    app.add_option("--extend-domain", config.extension, "fresh constants added to the Herbrand domain")
        ->delimiter(',');
    app.add_option("--prefix", config.max_prefix, "longest prefix searched by solve")
        ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    app.add_option("--loop", config.max_loop, "longest loop searched by solve")
        ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    app.add_option("--node-limit", config.node_limit, "search nodes before solve gives up");
    app.add_option("--format", config.format, "text | json")->transform(CLI::CheckedTransformer(formats).description(""));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "tel: " << e.what() << '\n';
        return parse_error;
    }
    return run(config, out, err);
}

} // namespace tel::cli
