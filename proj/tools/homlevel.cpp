#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "homlevel/session.hpp"

using namespace homlevel;

namespace {

int write_out(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) return 0;
  std::ofstream f(path);
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return 1;
  }
  f << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derived-category levels over artinian and graded polynomial rings"};
  app.require_subcommand(1);

  std::string field = "F2", out, filter;
  std::optional<std::string> perturb;
  Config cfg;
  app.add_option("--field", field, "Field for ring literals written without one (Q or F<p>)")->capture_default_str();
  app.add_option("--cutoff", cfg.cutoff, "Resolution length cutoff")->capture_default_str();
  app.add_option("--budget", cfg.grobner_pair_budget, "Groebner basis S-pair budget")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for randomized searches")->capture_default_str();
  app.add_option("--out", out, "Write the JSON results to this file");
  app.add_option("--corpus-filter", filter, "Only corpus cases whose name contains this text");
  app.add_option("--perturb-expected", perturb, "Corpus self-test: alter the expected value of this case");

  std::string script;
  auto* run = app.add_subcommand("run", "Run a session script ('-' reads standard input)");
  run->add_option("script", script, "Session script")->required();
  auto* corpus = app.add_subcommand("corpus", "Run the bundled examples against their expected values");

  CLI11_PARSE(app, argc, argv);
  set_config(cfg);
  RunOptions opt;
  opt.corpus_filter = filter;
  opt.perturb_case = perturb;

  try {
    if (*corpus) {
      Session s = Session::parse("corpus\n");
      RunOutcome o = run_session(s, opt);
      std::cout << o.report;
      if (write_out(out, o.json.front())) return 1;
      return o.exit_code;
    }
    std::stringstream src;
    if (script == "-") {
      src << std::cin.rdbuf();
    } else {
      std::ifstream f(script);
      if (!f) {
        std::cerr << "error: cannot read " << script << "\n";
        return 1;
      }
      src << f.rdbuf();
    }
    Session s = Session::parse(src.str(), field);
    RunOutcome o = run_session(s, opt);
    std::cout << o.report;
    if (write_out(out, o.json)) return 1;
    return o.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
