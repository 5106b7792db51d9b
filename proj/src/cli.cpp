#include "domcalc/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "domcalc/errors.hpp"
#include "domcalc/inference.hpp"
#include "domcalc/normalize.hpp"
#include "domcalc/parser.hpp"
#include "domcalc/probe.hpp"
#include "domcalc/scenario.hpp"

namespace domcalc {

namespace {

FactBase resolve_facts(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return load_facts(builtin_facts(spec.substr(prefix.size())));
  return load_facts_file(spec);
}

TraceFormat trace_format(const std::string& name) {
  return name == "md" ? TraceFormat::markdown : TraceFormat::json;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

int verdict_exit(Verdict v) { return v == Verdict::unknown ? kExitUnknown : kExitOk; }

std::string normal_form_text(const Expr& e, const AtomTable& atoms) {
  try {
    return pretty_print(to_expr(normalize(e, atoms)));
  } catch (const NonNormalizable&) {
    return "(none)";
  }
}

probe::Family parse_family(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (kind == "gaussian") return probe::Family::gaussian(arg.empty() ? 1.0 : std::stod(arg));
    if (kind == "hermite") return probe::Family::hermite(arg.empty() ? 0 : std::stoi(arg));
  } catch (const std::logic_error&) {
    throw OutOfRange("bad family parameter in '" + text + "'");
  }
  throw OutOfRange("unknown family '" + kind + "' (gaussian:<a> or hermite:<k>)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic domain calculus for unbounded operator products"};
  app.name("domcalc");
  app.require_subcommand(1, 1);

  std::string expr_text, facts_spec, trace_path, format = "json", text_format = "text", scenario_name;
  int n = 0, power = 0;
  bool adjoint = false;
  std::vector<std::string> families;
  double grid_l = probe::kDefaultHalfWidth;
  int grid_n = probe::kDefaultPoints;
  std::string csv_path;

  auto* parse_cmd = app.add_subcommand("parse", "Parse an expression and print its shape and normal form");
  parse_cmd->add_option("expr", expr_text, "Expression in the DSL")->required();
  parse_cmd->add_option("--facts", facts_spec, "Facts file or builtin:NAME (declares atom shapes)");

  auto* domain_cmd = app.add_subcommand("domain", "Derive the domain and verdict of an expression");
  domain_cmd->add_option("expr", expr_text, "Expression in the DSL")->required();
  domain_cmd->add_option("--facts", facts_spec, "Facts file or builtin:NAME")->required();
  domain_cmd->add_option("--trace", trace_path, "Write the verified derivation to this file");
  domain_cmd->add_option("--format", format, "Trace format")->check(CLI::IsMember({"json", "md"}));

  auto* prove_cmd = app.add_subcommand("prove", "Run a catalog scenario (or all) and report");
  prove_cmd->add_option("scenario", scenario_name, "Scenario name, nested:<n>, or all")->required();
  prove_cmd->add_option("--format", text_format, "Report format")->check(CLI::IsMember({"json", "text"}));

  auto* nested_cmd = app.add_subcommand("nested", "Verdict for a power of the nested block construction");
  nested_cmd->add_option("--n", n, "Nesting level 1..10")->required();
  nested_cmd->add_option("--power", power, "Exponent (default 2^n)");
  nested_cmd->add_flag("--adjoint", adjoint, "Use the adjoint of T");

  auto* conj_cmd = app.add_subcommand("conjecture", "Whether the n-th power conjecture is settled by the catalog");
  conj_cmd->add_option("--n", n, "n >= 2")->required();

  auto* probe_cmd = app.add_subcommand("probe", "Numeric Gaussian weight / Fourier membership probe");
  probe_cmd->add_option("--family", families, "gaussian:<a> or hermite:<k>, repeatable");
  probe_cmd->add_option("--grid-l", grid_l, "Grid half-width L");
  probe_cmd->add_option("--grid-n", grid_n, "Grid size N (power of two >= 256)");
  probe_cmd->add_option("--csv", csv_path, "Also write a CSV table to this file");
  probe_cmd->add_option("--format", text_format, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto* export_cmd = app.add_subcommand("export-trace", "Print the verified derivation of an expression's verdict");
  export_cmd->add_option("expr", expr_text, "Expression in the DSL")->required();
  export_cmd->add_option("--facts", facts_spec, "Facts file or builtin:NAME")->required();
  export_cmd->add_option("--format", format, "json or md")->check(CLI::IsMember({"json", "md"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitFailure;
  }

  try {
    if (*parse_cmd) {
      const FactBase facts = facts_spec.empty() ? FactBase{} : resolve_facts(facts_spec);
      const Expr e = parse_expr(expr_text, facts.atoms());
      out << "expr:  " << pretty_print(e) << "\n";
      out << "shape: " << e->shape.to_string() << "\n";
      out << "normal form: " << normal_form_text(e, facts.atoms()) << "\n";
      return kExitOk;
    }
    if (*domain_cmd || *export_cmd) {
      const FactBase facts = resolve_facts(facts_spec);
      const Expr e = parse_expr(expr_text, facts.atoms());
      const VerdictResult r = verdict_of(e, facts);
      if (*export_cmd) {
        out << export_trace(r.proof, facts, trace_format(format));
        return kExitOk;
      }
      out << "expr:    " << pretty_print(e) << "\n";
      out << "domain:  " << to_string(r.set) << "\n";
      out << "verdict: " << to_string(r.verdict) << "\n";
      if (!trace_path.empty()) write_file(trace_path, export_trace(r.proof, facts, trace_format(format)));
      return verdict_exit(r.verdict);
    }
    if (*prove_cmd) {
      std::vector<std::string> names;
      if (scenario_name == "all")
        names = scenario_names();
      else
        names.push_back(scenario_name);
      bool pass = true;
      nlohmann::ordered_json all = nlohmann::ordered_json::array();
      for (const std::string& name : names) {
        const Report r = run_proposition(name);
        pass = pass && r.pass;
        if (text_format == "json")
          all.push_back(report_json(r));
        else
          out << report_text(r);
      }
      if (text_format == "json") out << (names.size() == 1 ? all[0] : all).dump(2) << "\n";
      return pass ? kExitOk : kExitMismatch;
    }
    if (*nested_cmd) {
      const NestedConstruction c = nested_construction(n);
      const int p = power > 0 ? power : (1 << n);
      Expr e = c.block_form;
      if (adjoint) e = ex::adjoint(e);
      e = ex::power(e, p);
      const VerdictResult r = verdict_of(e, c.facts);
      out << "n=" << n << " power=" << p << (adjoint ? " (adjoint)" : "") << "\n";
      out << "verdict: " << to_string(r.verdict) << "\n";
      return verdict_exit(r.verdict);
    }
    if (*conj_cmd) {
      const ConjectureStatus s = conjecture_status(n);
      if (s.settled)
        out << "n=" << n << ": settled by scenario " << s.scenario << "\n";
      else
        out << "n=" << n << ": open\n";
      return kExitOk;
    }
    if (*probe_cmd) {
      std::vector<probe::Family> fams;
      for (const std::string& f : families) fams.push_back(parse_family(f));
      if (fams.empty()) fams = probe::default_families();
      const probe::ProbeReport r = probe::probe_report(fams, probe::Grid::centered(grid_l, grid_n));
      if (text_format == "text")
        out << probe::probe_text(r);
      else
        out << probe::probe_json(r).dump(2) << "\n";
      if (!csv_path.empty()) write_file(csv_path, probe::probe_csv(r));
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "parse error at " << e.position << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const NonNormalizable& e) {
    err << "not normalizable: " << e.what() << "\n";
    return kExitNonNormalizable;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace domcalc
