#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cyclica/app.hpp"

namespace {

using cyclica::app::Backend;
using cyclica::app::Format;
using cyclica::app::RunConfig;

struct Common {
  std::string input;
  std::uint64_t seed = 0;
  std::size_t trials = 64;
  double tol_rank = 1e-9;
  double tol_gap = 1e-7;
  std::string backend = "exact";
  std::string format = "json";
  std::string out;
  std::size_t r = 0;
};

void add_common(CLI::App* sub, Common& c, bool with_r) {
  sub->add_option("--input,-i", c.input, "JSON file, '-' for stdin, or inline JSON")->required();
  sub->add_option("--seed", c.seed, "RNG seed (default: $CYCLICA_SEED or 0)");
  sub->add_option("--trials", c.trials, "sampling budget")->check(CLI::PositiveNumber);
  sub->add_option("--tol-rank", c.tol_rank, "float backend rank tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--tol-gap", c.tol_gap, "float backend eigenvalue gap")->check(CLI::PositiveNumber);
  sub->add_option("--backend", c.backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  sub->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--out,-o", c.out, "write the report here instead of stdout");
  if (with_r) sub->add_option("--r", c.r, "target subspace dimension")->check(CLI::PositiveNumber);
}

std::string read_input(const std::string& arg) {
  if (arg == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw cyclica::InputError("cannot read " + arg);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string origin(const std::string& arg) {
  if (arg == "-") return "stdin";
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return "inline";
  return arg;
}

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "cyclica: cannot write " << out << "\n";
    return 1;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclic vectors and subspaces of matrix algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cyclica 0.1.0");

  Common c;
  std::map<CLI::App*, std::string> commands;
  for (const std::string& name : cyclica::app::commands()) {
    if (name == "mrb analyze") continue;
    CLI::App* sub = app.add_subcommand(name, "run " + name);
    add_common(sub, c, name == "hautus" || name == "cyclic-subspace");
    commands[sub] = name;
  }
  CLI::App* mrb = app.add_subcommand("mrb", "rigid body analysis on so(n)");
  mrb->require_subcommand(1);
  CLI::App* analyze = mrb->add_subcommand("analyze", "full reachability report");
  add_common(analyze, c, false);
  commands[analyze] = "mrb analyze";

  std::string corpus_dir = CYCLICA_CORPUS_DIR;
  bool update = false;
  CLI::App* corpus = app.add_subcommand("corpus", "run the bundled examples against stored reports");
  corpus->add_option("--dir", corpus_dir, "corpus directory");
  corpus->add_flag("--update", update, "rewrite the stored reports");

  std::string replay_input;
  CLI::App* replay = app.add_subcommand("replay", "re-run the config embedded in a report and compare");
  replay->add_option("--input,-i", replay_input, "report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cyclica::app::kInputError;
  }

  try {
    if (corpus->parsed()) {
      const auto cases = cyclica::app::run_corpus(corpus_dir, update);
      std::size_t failed = 0;
      for (const auto& k : cases) {
        std::cout << (k.passed ? "PASS " : "FAIL ") << k.name;
        if (!k.message.empty()) std::cout << "  (" << k.message << ")";
        std::cout << "\n";
        failed += k.passed ? 0 : 1;
      }
      std::cout << cases.size() - failed << "/" << cases.size() << " corpus cases passed\n";
      return failed == 0 && !cases.empty() ? 0 : 1;
    }
    if (replay->parsed()) {
      const std::string text = read_input(replay_input);
      const auto report = cyclica::io::parse(text, replay_input);
      const auto again = cyclica::app::run(cyclica::app::config_from_report(report));
      const bool same = cyclica::app::render(again.report, Format::json) == cyclica::app::render(report, Format::json);
      std::cout << (same ? "identical" : "differs") << "\n";
      return same ? 0 : 1;
    }

    std::string name;
    for (const auto& [sub, n] : commands)
      if (sub->parsed()) name = n;

    RunConfig cfg;
    cfg.command = name;
    cfg.input = cyclica::io::parse(read_input(c.input), origin(c.input));
    // Corpus job files wrap the input together with the command.
    if (cfg.input.is_object() && cfg.input.contains("command") && cfg.input.contains("input")) {
      if (cfg.input["command"] != name) {
        std::cerr << "cyclica: " << c.input << " is a job for \"" << cfg.input["command"].get<std::string>()
                  << "\"\n";
        return cyclica::app::kInputError;
      }
      cyclica::io::Json inner = cfg.input["input"];
      cfg.input = std::move(inner);
    }
    cfg.seed = c.seed;
    const CLI::App* sub = nullptr;
    for (const auto& [s, n] : commands)
      if (n == name) sub = s;
    if (sub->count("--seed") == 0)
      if (const char* env = std::getenv("CYCLICA_SEED")) cfg.seed = std::stoull(env);
    cfg.trials = c.trials;
    cfg.tol.rank = c.tol_rank;
    cfg.tol.gap = c.tol_gap;
    cfg.backend = c.backend == "float" ? Backend::float_ : Backend::exact;
    if (c.r > 0) cfg.r = c.r;

    const auto outcome = cyclica::app::run(cfg);
    const Format fmt = c.format == "text" ? Format::text : Format::json;
    if (emit(cyclica::app::render(outcome.report, fmt), c.out) != 0) return cyclica::app::kInputError;
    if (outcome.report.contains("error"))
      std::cerr << "cyclica: " << outcome.report["error"]["message"].get<std::string>() << "\n";
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "cyclica: " << e.what() << "\n";
    return cyclica::app::kInputError;
  }
}
