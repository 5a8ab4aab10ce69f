// wecken: Wagner-tail analysis and density experiments for free-group endomorphisms.
//
// Exit codes: 0 success, 2 invalid input, 3 census budget exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wecken/commands.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

wecken::Endomorphism load_map(const wecken::RunConfig& cfg, const std::vector<std::string>& images,
                              const std::string& input) {
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw wecken::ParseError("cannot open " + input);
    std::stringstream ss;
    ss << in.rdbuf();
    return wecken::parse_endomorphism_json(ss.str());
  }
  if (images.empty()) throw wecken::ConfigError("give --images or --input");
  bool cancelled = false;
  auto phi = wecken::parse_endomorphism(cfg.rank, images, cfg.word_style(), &cancelled);
  if (cancelled) std::cerr << "warning: input words were not reduced; using their reduced forms\n";
  return phi;
}

std::vector<int> parse_rank_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 1) throw wecken::ConfigError("");
      out.push_back(v);
    } catch (...) {
      throw wecken::ConfigError("invalid rank list '" + s + "'");
    }
  }
  if (out.empty()) throw wecken::ConfigError("empty rank list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wagner tails, Wecken certification and asymptotic-density experiments"};
  app.require_subcommand(1);

  wecken::RunConfig cfg;
  std::string format = "csv";
  std::vector<std::string> images;
  std::string input;
  std::string n_range;
  std::string n_list = "3,5,10,20";
  std::optional<int> fixed_p;
  int k_max = 0;
  std::optional<std::uint64_t> budget_flag;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--precision", cfg.precision, "significant digits for decimal columns");
    sub->add_flag("--no-header", cfg.no_header, "omit the timestamp comment line");
  };
  const auto add_map = [&](CLI::App* sub) {
    sub->add_option("--rank", cfg.rank, "free group rank n");
    sub->add_option("--images", images, "image words phi(a_1) ... phi(a_n)");
    sub->add_option("--input", input, "endomorphism JSON file");
    sub->add_flag("--alpha", cfg.alpha, "read and print words as letters (abA), rank <= 26");
    add_common(sub);
  };
  const auto add_census = [&](CLI::App* sub, bool mc) {
    sub->add_option("--rank", cfg.rank, "free group rank n")->required();
    sub->add_option("--max-p", cfg.max_p, "word length cap p")->required();
    sub->add_option("--shards", cfg.shards, "parallel shards (1 = sequential)");
    if (mc) {
      sub->add_option("--samples", cfg.samples, "number of sampled endomorphisms");
      sub->add_option("--seed", cfg.seed, "master seed");
    } else {
      sub->add_option("--budget", budget_flag, "maximum classifications");
    }
    add_common(sub);
  };

  auto* tails = app.add_subcommand("tails", "list Wagner tails and their equalities");
  add_map(tails);
  auto* cls = app.add_subcommand("classify", "classify an endomorphism");
  add_map(cls);
  auto* census = app.add_subcommand("census", "exact census over (G_p)^n");
  add_census(census, false);
  auto* xp = app.add_subcommand("xp", "exact x_1 .. x_p sequence");
  add_census(xp, false);
  auto* mc = app.add_subcommand("mc", "Monte Carlo density estimates");
  add_census(mc, true);

  auto* bounds = app.add_subcommand("bounds", "exact density bounds");
  auto* n_opt = bounds->add_option("--n", n_range, "single rank");
  bounds->add_option("--n-range", n_range, "rank range a..b")->excludes(n_opt);
  bounds->add_option("--k-max", k_max, "emit per-k A_k bounds for k = 1..K instead");
  add_common(bounds);

  auto* trend = app.add_subcommand("trend", "Monte Carlo estimates across ranks");
  trend->add_option("--n-list", n_list, "comma-separated ranks");
  trend->add_option("--max-p", fixed_p, "fixed word length cap (default max(50, 4n))");
  trend->add_option("--samples", cfg.samples, "samples per rank");
  trend->add_option("--seed", cfg.seed, "master seed");
  trend->add_option("--shards", cfg.shards, "parallel shards");
  add_common(trend);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = format == "json" ? wecken::OutputFormat::json : wecken::OutputFormat::csv;
    cfg.budget = budget_flag ? *budget_flag : wecken::budget_from_env();
    if (cfg.budget == 0) throw wecken::ConfigError("--budget must be >= 1");
    cfg.validate();

    std::ostringstream out;
    if (cfg.command == "tails" || cfg.command == "classify") {
      // Per-map commands default to JSON unless --format was given.
      const auto* sub = cfg.command == "tails" ? tails : cls;
      if (sub->count("--format") == 0) cfg.format = wecken::OutputFormat::json;
      const auto phi = load_map(cfg, images, input);
      if (cfg.command == "tails")
        wecken::run_tails(phi, cfg, out);
      else
        wecken::run_classify(phi, cfg, out);
    } else if (cfg.command == "census") {
      wecken::run_census(cfg, out);
    } else if (cfg.command == "xp") {
      try {
        wecken::run_xp(cfg, out);
      } catch (const wecken::BudgetExceeded&) {
        std::cout << out.str();
        throw;
      }
    } else if (cfg.command == "mc") {
      wecken::run_mc(cfg, out);
    } else if (cfg.command == "bounds") {
      if (n_range.empty()) throw wecken::ConfigError("give --n or --n-range");
      wecken::run_bounds(wecken::parse_rank_range(n_range), k_max, cfg, out);
    } else if (cfg.command == "trend") {
      if (fixed_p && *fixed_p < 0) throw wecken::ConfigError("--max-p must be >= 0");
      wecken::run_trend(parse_rank_list(n_list), fixed_p, cfg, out);
    }
    std::cout << out.str();
    return 0;
  } catch (const wecken::BudgetExceeded& e) {
    std::cerr << "error: budget exceeded: " << e.what() << " (raise --budget or WECKEN_BUDGET)\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
