#pragma once

// Session scripts: one statement per line, '#' starts a comment.
//
//   ring A = artin(F2; x | x^2)
//   module k over A = residue            # also: E, free 2, free [0, 1],
//                                        # coker [x, 0; 0, y] degrees [0, 0],
//                                        # action 2 : x = [0, 0; 1, 0]
//   complex K over A : range 1..0 ; d1 = [x]
//   complex H over A : range 1..0 ; m1 = k ; m0 = k
//   level gi K
//
// Free complexes take their ranks from the differentials (or rank<i> = n);
// graded generator degrees are inferred from the entries unless deg<i> is
// given. Complexes built from named modules have zero differential.
// Commands: homology, resolve, pd, id, gpd, gid, fd, gfd, depth, adams,
// splice, level, bass, corpus.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homlevel/level.hpp"
#include "json.hpp"

namespace homlevel {

struct Command {
  int line = 0;
  std::string name;
  std::vector<std::string> args;
  std::string str() const;
};

class Session {
 public:
  /// Objects are built and verified as they are declared. `default_field`
  /// fills in ring literals written without one, as in "poly(x, y)".
  static Session parse(std::string_view source, const std::string& default_field = "F2");

  bool empty() const { return decls_.empty() && commands_.empty(); }
  const std::vector<Command>& commands() const { return commands_; }
  const Ring& ring(const std::string& name) const;
  const FgModule& module(const std::string& name) const;
  /// A named complex, or a named module placed in degree 0.
  Complex complex(const std::string& name) const;
  bool has_module(const std::string& name) const { return modules_.count(name) > 0; }
  bool has_complex(const std::string& name) const { return complexes_.count(name) > 0; }
  /// Canonical source text; parsing it gives an equivalent session.
  std::string print() const;

 private:
  std::vector<std::string> decls_;
  std::vector<Command> commands_;
  std::map<std::string, Ring> rings_;
  std::map<std::string, FgModule> modules_;
  std::map<std::string, Complex> complexes_;
  friend struct SessionBuilder;
};

struct RunOptions {
  std::string corpus_filter;
  std::optional<std::string> perturb_case;  // corpus self-test: shift one expected value
};

struct CommandResult {
  nlohmann::json json;
  bool inconclusive = false;
  bool failed = false;  // a check inside the command did not pass
};

CommandResult run_command(const Session& s, const Command& c, const RunOptions& opt = {});

/// One line per command, computed from its JSON.
std::string render(const nlohmann::json& result);

struct RunOutcome {
  nlohmann::json json = nlohmann::json::array();
  std::string report;
  int exit_code = 0;  // 0 ok, 2 some verdict inconclusive, 1 error or failed check
};

/// Runs every command in order; stops at the first error.
RunOutcome run_session(const Session& s, const RunOptions& opt = {});

struct CorpusCase {
  std::string name;
  std::string script;    // its last command is the one checked
  std::string pointer;   // JSON pointer into that command's result
  nlohmann::json expected;
};
const std::vector<CorpusCase>& corpus_cases();

struct CorpusRow {
  std::string name;
  nlohmann::json expected, got;
  bool pass = false;
  std::string error;
};
std::vector<CorpusRow> run_corpus(const RunOptions& opt = {});

}  // namespace homlevel
