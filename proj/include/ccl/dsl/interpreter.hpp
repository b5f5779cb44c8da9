#pragma once
// Statement executor for the ideal-expression language.

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccl/dsl/ast.hpp"
#include "ccl/dsl/config.hpp"
#include "ccl/dsl/value.hpp"

namespace ccl::dsl {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerdict = 1,
  kExitUsage = 2,
  kExitBudget = 3,
};

/// A located runtime failure. Unbound names, arity and type errors are usage
/// errors (exit 2); library errors and failed assertions exit 1; exhausted
/// budgets exit 3.
class RuntimeError : public std::runtime_error {
 public:
  RuntimeError(SourceLoc loc, const std::string& what, int exit_code)
      : std::runtime_error(what), loc_(loc), exit_code_(exit_code) {}
  SourceLoc loc() const { return loc_; }
  int exit_code() const { return exit_code_; }

 private:
  SourceLoc loc_;
  int exit_code_;
};

struct TraceEntry {
  SourceLoc loc;
  std::string command;
  Value result;
};

/// Session file format tag.
inline constexpr const char* kSessionVersion = "ccl-session/1";

class Interpreter {
 public:
  /// `flags` and `env` are the two configuration layers that outrank a
  /// loaded session.
  Interpreter(std::ostream& out, std::ostream& err, ConfigLayer flags = {}, ConfigLayer env = {},
              bool json = false);

  /// Executes statements in order, stopping at the first error. Bare
  /// commands print their result; bindings are silent. Returns an ExitCode.
  int run(const Program& program, std::string_view source_name);

  /// Parses then runs. Parse errors print a diagnostic and return 2.
  int run_source(std::string_view source, std::string_view source_name);

  /// Evaluates one expression against the current bindings. Throws
  /// RuntimeError (also for syntax errors, with exit code 2).
  Value evaluate(std::string_view expression);

  void bind(const std::string& name, Value v);
  const Value* lookup(const std::string& name) const;
  const std::vector<std::string>& binding_order() const { return order_; }

  void save_session(const std::string& path) const;
  Json session_json() const;
  /// Replaces all bindings with the session's and re-resolves the
  /// configuration with the session as the lowest-priority layer.
  void load_session(const std::string& path);
  void load_session_json(const Json& j);

  const Config& config() const { return config_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  struct Scope;

  Value eval(const Expr& e);
  Value eval_call(const Expr& e);
  Value eval_binary(const Expr& e);
  Value eval_name(const Expr& e);
  void apply_config();
  void execute(const Statement& st, std::string_view source_name);
  Value decode(const Json& j);
  /// Evaluates text seeing only the variables of R (or nothing, for a ring
  /// literal); used when reading sessions.
  Value in_ring_scope(const std::string& text, const std::optional<RingSpec>& R);

  std::ostream& out_;
  std::ostream& err_;
  ConfigLayer flags_;
  ConfigLayer env_;
  ConfigLayer session_;
  Config config_;
  bool json_;
  std::map<std::string, Value> bindings_;
  std::vector<std::string> order_;
  std::optional<RingSpec> current_ring_;
  /// Ring whose variables take precedence while evaluating `ring / (...)`.
  std::optional<RingSpec> quotient_scope_;
  /// Set while decoding a session: bindings are invisible.
  bool pure_ = false;
  std::map<std::string, RingSpec> ring_memo_;
  std::map<std::string, std::shared_ptr<const SopData>> sop_memo_;
  std::vector<TraceEntry> trace_;
  std::string source_name_ = "<input>";

  friend struct Commands;
};

}  // namespace ccl::dsl
