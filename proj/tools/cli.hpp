#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <ecl/ecl.hpp>

#include "server.hpp"

namespace ecl::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInvalid = 3;
inline constexpr int kBudget = 4;

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void print_trace(const TraceNode& t, std::ostream& out, int indent = 0) {
  out << std::string(indent * 2, ' ') << (t.value ? "true " : "false") << "  [team " << t.team_size << "]  "
      << t.formula << "\n";
  for (const auto& c : t.children) print_trace(c, out, indent + 1);
}

inline json trace_json(const TraceNode& t) {
  json j{{"formula", t.formula}, {"value", t.value}, {"team_size", t.team_size}, {"children", json::array()}};
  for (const auto& c : t.children) j["children"].push_back(trace_json(c));
  return j;
}

inline std::string dot_graph(const FunctionSet& F) {
  const auto& sig = F.signature();
  std::string s = "digraph causal {\n";
  for (std::size_t v = 0; v < sig.size(); ++v)
    s += "  \"" + sig.var(static_cast<int>(v)).name + "\"" +
         (sig.is_exogenous(static_cast<int>(v)) ? " [shape=box]" : "") + ";\n";
  auto g = F.graph();
  for (std::size_t x = 0; x < sig.size(); ++x)
    for (std::size_t v = 0; v < sig.size(); ++v)
      if (g[x][v])
        s += "  \"" + sig.var(static_cast<int>(x)).name + "\" -> \"" + sig.var(static_cast<int>(v)).name + "\";\n";
  return s + "}\n";
}

inline void print_state_text(const Session& s, std::ostream& out) {
  const auto& p = s.current();
  const auto& sig = p.model.signature();
  out << "team (" << p.model.team.size() << "):";
  for (const auto& b : p.model.team) out << " " << to_string(sig, b);
  out << "\nactual: " << to_string(sig, p.actual) << "\nknown:";
  for (auto [v, x] : known_values(p.model)) out << " " << sig.var(v).name << "=" << sig.var(v).range[x];
  out << "\n";
}

// Commands, one per line:
//   intervene X=x, ...   announce FORMULA   eval FORMULA   undo   reset   state   graph   quit
inline int run_repl(Session& s, std::istream& in, std::ostream& out, bool as_json) {
  std::string line;
  auto emit = [&](const json& r) {
    if (as_json) {
      out << r.dump() << "\n";
      return;
    }
    if (r.contains("value")) out << (r["value"].get<bool>() ? "true" : "false") << "\n";
    if (!r.value("ok", true)) out << "error: " << r.value("error", std::string("refused")) << "\n";
    else if (!r.contains("value")) print_state_text(s, out);
  };
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_first_of(" \t", b);
    std::string cmd = line.substr(b, e == std::string::npos ? std::string::npos : e - b);
    std::string arg = e == std::string::npos ? "" : line.substr(e + 1);
    while (!arg.empty() && (arg.back() == '\r' || arg.back() == ' ')) arg.pop_back();
    if (!as_json) out << "> " << line.substr(b) << "\n";
    if (cmd == "quit" || cmd == "exit") break;
    if (cmd == "intervene" || cmd == "do") emit(s.intervene(arg));
    else if (cmd == "announce") emit(s.announce(arg));
    else if (cmd == "eval" || cmd == "check") emit(s.evaluate_formula(arg));
    else if (cmd == "undo") emit(s.undo());
    else if (cmd == "reset") emit(s.reset());
    else if (cmd == "state") emit(json{{"ok", true}, {"state", s.observation()}});
    else if (cmd == "graph") {
      if (as_json) emit(json{{"ok", true}, {"dot", dot_graph(s.current().model.functions)}});
      else out << dot_graph(s.current().model.functions);
    } else
      emit(json{{"ok", false}, {"error", "unknown command '" + cmd + "'"}});
  }
  return kOk;
}

inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Causal-epistemic logic toolkit"};
  app.require_subcommand(1);
  std::string model_path, formula_text, mode_text = "epistemic", format = "text";
  std::uint64_t seed = 1;
  int depth = 3;

  auto common = [&](CLI::App* c) {
    c->add_option("model", model_path, "model file (JSON)")->required();
    c->add_option("--mode", mode_text, "single | epistemic | obs")->check(CLI::IsMember({"single", "epistemic", "obs"}));
    c->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  };

  bool trace = false, strict = false;
  auto* check = app.add_subcommand("check", "evaluate a formula at the model's actual valuation");
  common(check);
  check->add_option("formula", formula_text)->required();
  check->add_flag("--trace", trace, "print the evaluation tree");
  check->add_flag("--strict", strict, "exit 1 when the formula is false");

  std::string kind = "tr";
  auto* tr = app.add_subcommand("translate", "rewrite a formula into a reduced fragment");
  common(tr);
  tr->add_option("formula", formula_text)->required();
  tr->add_option("--kind", kind, "tr1 | tr2 | tr3 | tr4 | tr | tr3pd | trpd");

  std::size_t sample = 0;
  std::string fragment_text;
  Caps caps;
  auto* val = app.add_subcommand("validity", "check a formula on every enumerated model of the signature");
  common(val);
  val->add_option("formula", formula_text);
  val->add_option("--sample", sample, "check this many random formulas instead");
  val->add_option("--seed", seed);
  val->add_option("--depth", depth);
  val->add_option("--fragment", fragment_text, "fragment for --sample");
  val->add_option("--max-models", caps.max_pointed_models);
  val->add_option("--max-table-entries", caps.max_table_entries);
  val->add_flag("--strict", strict, "exit 1 when some formula is not valid");

  std::string deriv_path, system_text = "LPAKC", premises_path;
  auto* prove = app.add_subcommand("prove", "check a derivation");
  common(prove);
  prove->add_option("derivation", deriv_path)->required();
  prove->add_option("--system", system_text, "LC | LKC | LPAKC | LPAKCO");
  prove->add_option("--premises", premises_path, "file with one premise formula per line");

  auto* graph = app.add_subcommand("graph", "print the direct-cause graph as DOT");
  common(graph);

  std::string script;
  auto* repl = app.add_subcommand("repl", "interactive session on stdin");
  common(repl);
  repl->add_option("--script", script, "read commands from a file instead of stdin");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "serve the JSON API");
  common(serve);
  serve->add_option("--host", host);
  serve->add_option("--port", port);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Mode mode = mode_from_name(mode_text);
    const bool as_json = format == "json";

    if (*graph) {
      PointedModel p = load_model_file(model_path);
      if (as_json) {
        json g = graph_json(p.model.functions);
        out << g.dump(2) << "\n";
      } else {
        out << dot_graph(p.model.functions);
      }
      return kOk;
    }

    if (*check) {
      PointedModel p = load_model_file(model_path);
      Formula f = parse(formula_text, p.model.signature());
      TraceNode t;
      bool v = evaluate(p, f, mode, trace ? &t : nullptr);
      if (as_json) {
        json r{{"formula", to_string(f)}, {"mode", mode_name(mode)}, {"value", v}};
        if (trace) r["trace"] = trace_json(t);
        out << r.dump(2) << "\n";
      } else {
        if (trace) print_trace(t, out);
        out << (v ? "true" : "false") << "\n";
      }
      return !v && strict ? kFalse : kOk;
    }

    if (*tr) {
      PointedModel p = load_model_file(model_path);
      const auto& sig = p.model.signature();
      Formula f = parse(formula_text, sig);
      Translation t = translation_from_name(kind);
      Formula g = translate(t, f, sig);
      if (as_json) {
        json fr = json::array();
        for (auto x : fragments(g)) fr.push_back(fragment_name(x));
        out << json{{"kind", kind}, {"input", to_string(f)}, {"output", to_string(g)}, {"fragments", fr}}.dump(2)
            << "\n";
      } else {
        out << to_string(g) << "\n";
      }
      return kOk;
    }

    if (*val) {
      auto sig = std::make_shared<const Signature>(load_signature(read_json_file(model_path)));
      auto t0 = std::chrono::steady_clock::now();
      std::vector<Formula> fs;
      if (sample > 0) {
        SampleOptions so;
        so.count = sample;
        so.seed = seed;
        so.depth = depth;
        so.fragment = fragment_text.empty() ? (mode == Mode::Single ? Fragment::C : Fragment::PAKC)
                                            : fragment_from_name(fragment_text);
        fs = sample_formulas(*sig, so);
      } else {
        if (formula_text.empty()) throw CLI::RequiredError("formula or --sample");
        fs.push_back(parse(formula_text, *sig));
      }
      bool all = true;
      json results = json::array();
      for (const auto& f : fs) {
        ValidityResult r = check_validity(f, sig, mode, caps);
        all = all && r.valid;
        if (as_json) {
          json j{{"formula", to_string(f)}, {"verdict", r.valid ? "valid" : "invalid"}, {"models", r.models}};
          if (r.counterexample) j["counterexample"] = save_model(*r.counterexample);
          results.push_back(j);
        } else {
          out << "formula: " << to_string(f) << "\n";
          out << "verdict: " << (r.valid ? "valid" : "invalid") << "\n";
          out << "models: " << r.models << "\n";
          if (r.counterexample) out << "counterexample:\n" << save_model(*r.counterexample).dump(2) << "\n";
        }
      }
      if (as_json) out << json{{"mode", mode_name(mode)}, {"results", results}}.dump(2) << "\n";
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      err << "elapsed: " << ms << " ms\n";
      return !all && strict ? kFalse : kOk;
    }

    if (*prove) {
      auto sig = load_signature(read_json_file(model_path));
      std::vector<Formula> premises;
      if (!premises_path.empty()) {
        std::istringstream ps(read_text_file(premises_path));
        std::string line;
        while (std::getline(ps, line))
          if (line.find_first_not_of(" \t\r") != std::string::npos && line[line.find_first_not_of(" \t")] != '#')
            premises.push_back(parse(line, sig));
      }
      auto lines = parse_derivation(read_text_file(deriv_path), sig);
      auto r = check_derivation(lines, system_from_name(system_text), sig, premises);
      if (as_json) {
        json j{{"ok", r.ok}, {"lines", lines.size()}, {"system", system_text}};
        if (!r.ok) {
          j["failing_line"] = r.failing_line;
          j["error"] = r.message;
        }
        out << j.dump(2) << "\n";
      } else if (r.ok) {
        out << "accepted: " << lines.size() << " lines in " << system_text << "\n";
        if (!lines.empty()) out << "theorem: " << to_string(lines.back().formula) << "\n";
      } else {
        out << "rejected at line " << r.failing_line << ": " << r.message << "\n";
      }
      return r.ok ? kOk : kFalse;
    }

    if (*repl) {
      Session s(load_model_file(model_path), mode);
      if (!script.empty()) {
        std::istringstream ss(read_text_file(script));
        return run_repl(s, ss, out, as_json);
      }
      return run_repl(s, in, out, as_json);
    }

    if (*serve) {
      Session s(load_model_file(model_path), mode);
      auto srv = std::make_unique<ApiServer>(std::move(s));
      err << "listening on " << host << ":" << port << "\n";
      if (!srv->listen(host, port)) {
        err << "error: cannot listen on " << host << ":" << port << "\n";
        return kUsage;
      }
      return kOk;
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  }
  return kOk;
}

}  // namespace ecl::cli
