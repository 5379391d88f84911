// cbvtc — check, evaluate, and analyze weak call-by-value rewrite systems
// against cost-size tuple interpretations.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbvtc/analyzer.hpp"
#include "cbvtc/engine.hpp"
#include "cbvtc/generator.hpp"
#include "cbvtc/parser.hpp"
#include "cbvtc/pretty.hpp"
#include "cbvtc/semantics.hpp"

namespace {

using cbvtc::Error;
using cbvtc::ErrorKind;

bool use_color() {
  const char* env = std::getenv("CBVTC_COLOR");
  std::string mode = env ? env : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return isatty(fileno(stdout)) != 0;
}

cbvtc::TRS load_trs(const std::string& path) {
  return cbvtc::parse_trs(
      cbvtc::load_file(path, cbvtc::SourceFile::Kind::Trs).text);
}

cbvtc::Interpretation load_interp(const std::string& path,
                                  const cbvtc::TRS& trs) {
  return cbvtc::parse_interpretation(
      cbvtc::load_file(path, cbvtc::SourceFile::Kind::Interpretation).text,
      trs);
}

cbvtc::GridSpec parse_grid(const std::string& spec, std::size_t budget) {
  cbvtc::GridSpec grid;
  grid.budget = budget;
  if (spec.empty()) return grid;
  grid.points.clear();
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    std::string part = spec.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (part.empty())
      throw Error(ErrorKind::Usage, "bad --grid value '" + spec + "'");
    for (char c : part)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(ErrorKind::Usage, "bad --grid value '" + spec + "'");
    grid.points.push_back(std::stoull(part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return grid;
}

nlohmann::ordered_json report_to_json(const cbvtc::VerificationReport& report) {
  nlohmann::ordered_json out;
  if (!report.rules.empty()) {
    auto& rules = out["rules"] = nlohmann::ordered_json::array();
    for (const auto& r : report.rules) {
      nlohmann::ordered_json entry;
      entry["rule"] = r.rule;
      entry["verdict"] = r.verdict();
      entry["samples"] = r.samples;
      if (!r.holds) entry["witness"] = r.witness;
      rules.push_back(std::move(entry));
    }
  }
  if (!report.terms.empty()) {
    auto& terms = out["terms"] = nlohmann::ordered_json::array();
    for (const auto& t : report.terms) {
      nlohmann::ordered_json entry;
      entry["term"] = t.rendered;
      if (t.dh)
        entry["dh"] = *t.dh;
      else
        entry["dh"] = nullptr;
      entry["bound"] = t.bound;
      entry["ok"] = t.dh.has_value() && t.ok;
      if (t.dh) entry["gap"] = t.gap;
      if (!t.note.empty()) entry["note"] = t.note;
      terms.push_back(std::move(entry));
    }
    out["summary"] = {{"terms", report.terms.size()},
                      {"violations", report.violations()},
                      {"fuel_exhausted", report.fuel_exhausted()}};
  }
  return out;
}

void maybe_write_out(const std::string& path,
                     const cbvtc::VerificationReport& report) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Usage, "cannot write '" + path + "'");
  out << report_to_json(report).dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak call-by-value rewriting with cost-size interpretations"};
  app.require_subcommand(1);

  std::string trs_path, csint_path, term_text, grid_spec, out_path;
  std::size_t fuel_steps = 100000, fuel_breadth = 10000;
  std::size_t budget = 200000;
  std::vector<std::size_t> gen_args;  // SIZE COUNT
  std::uint64_t seed = 1;

  auto* check = app.add_subcommand("check", "parse and typecheck a system");
  check->add_option("trs", trs_path, "system file")->required();

  auto* eval = app.add_subcommand("eval", "normalize a term");
  eval->add_option("trs", trs_path, "system file")->required();
  eval->add_option("term", term_text, "term to normalize")->required();
  eval->add_option("--fuel", fuel_steps, "max reduction steps");
  eval->add_option("--breadth", fuel_breadth, "max distinct terms in search");

  auto* dh = app.add_subcommand("dh", "measure the derivation height");
  dh->add_option("trs", trs_path, "system file")->required();
  dh->add_option("term", term_text, "term to measure")->required();
  dh->add_option("--fuel", fuel_steps, "max reduction steps");
  dh->add_option("--breadth", fuel_breadth, "max distinct terms in search");

  auto* interpret = app.add_subcommand("interpret", "interpret a term");
  interpret->add_option("trs", trs_path, "system file")->required();
  interpret->add_option("csint", csint_path, "interpretation file")->required();
  interpret->add_option("term", term_text, "term to interpret")->required();

  auto* verify =
      app.add_subcommand("verify", "check the rule orientation conditions");
  verify->add_option("trs", trs_path, "system file")->required();
  verify->add_option("csint", csint_path, "interpretation file")->required();
  verify->add_option("--grid", grid_spec, "comma-separated sample points");
  verify->add_option("--budget", budget, "max sampled valuations per rule");
  verify->add_option("--out", out_path, "write a JSON report");

  auto* harness = app.add_subcommand(
      "harness", "compare measured heights against interpreted bounds");
  harness->add_option("trs", trs_path, "system file")->required();
  harness->add_option("csint", csint_path, "interpretation file")->required();
  harness->add_option("--gen", gen_args, "SIZE COUNT of generated terms")
      ->expected(2);
  harness->add_option("--seed", seed, "generator seed");
  harness->add_option("--fuel", fuel_steps, "max reduction steps");
  harness->add_option("--breadth", fuel_breadth, "max distinct terms in search");
  harness->add_option("--out", out_path, "write a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  bool color = use_color();
  try {
    if (check->parsed()) {
      cbvtc::TRS trs = load_trs(trs_path);
      std::cout << "base types:   " << trs.signature().base_types().size()
                << "\nsymbols:      " << trs.signature().symbols().size()
                << "\nrules:        " << trs.rules().size() << "\ndefined:     ";
      for (const auto& s : trs.defined_symbols()) std::cout << " " << s;
      std::cout << "\nconstructors:";
      for (const auto& s : trs.constructor_symbols()) std::cout << " " << s;
      std::cout << "\n";
      return 0;
    }

    if (eval->parsed()) {
      cbvtc::TRS trs = load_trs(trs_path);
      cbvtc::Term term = cbvtc::parse_term(term_text, trs);
      cbvtc::Fuel fuel{fuel_steps, fuel_breadth};
      cbvtc::NormalizeResult result = cbvtc::normalize(term, trs, fuel);
      cbvtc::PrettyOptions display;
      display.numeral_sugar = true;
      display.annotate_binders = false;
      std::cout << "normal form: " << cbvtc::pretty_term(result.normal_form,
                                                         display)
                << "\nsteps:       " << result.steps << "\n";
      return 0;
    }

    if (dh->parsed()) {
      cbvtc::TRS trs = load_trs(trs_path);
      cbvtc::Term term = cbvtc::parse_term(term_text, trs);
      cbvtc::Fuel fuel{fuel_steps, fuel_breadth};
      std::cout << cbvtc::derivation_height(term, trs, fuel) << "\n";
      return 0;
    }

    if (interpret->parsed()) {
      cbvtc::TRS trs = load_trs(trs_path);
      cbvtc::Interpretation interp = load_interp(csint_path, trs);
      cbvtc::Term term = cbvtc::parse_term(term_text, trs);
      cbvtc::CSValue value =
          cbvtc::interpret_term(term, interp, cbvtc::Valuation{});
      std::cout << cbvtc::pretty_value(value) << "\n";
      return 0;
    }

    if (verify->parsed()) {
      cbvtc::TRS trs = load_trs(trs_path);
      cbvtc::Interpretation interp = load_interp(csint_path, trs);
      cbvtc::GridSpec grid = parse_grid(grid_spec, budget);
      cbvtc::VerificationReport report =
          cbvtc::verify_rules(trs, interp, grid);
      std::cout << cbvtc::render_report(report, color);
      maybe_write_out(out_path, report);
      return report.all_ok() ? 0 : 1;
    }

    if (harness->parsed()) {
      cbvtc::TRS trs = load_trs(trs_path);
      cbvtc::Interpretation interp = load_interp(csint_path, trs);
      std::size_t gen_size = gen_args.size() == 2 ? gen_args[0] : 12;
      std::size_t gen_count = gen_args.size() == 2 ? gen_args[1] : 100;
      cbvtc::GroundTermGenerator gen(trs, seed);
      std::vector<cbvtc::Term> terms = gen.generate_batch(gen_count, gen_size);
      cbvtc::Fuel fuel{fuel_steps, fuel_breadth};
      cbvtc::VerificationReport report =
          cbvtc::bound_vs_actual(trs, interp, terms, fuel);
      std::cout << cbvtc::render_report(report, color);
      maybe_write_out(out_path, report);
      return report.all_ok() ? 0 : 1;
    }
  } catch (const cbvtc::FuelExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
