#include "ccl/dsl/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ccl/dsl/interpreter.hpp"
#include "ccl/dsl/parser.hpp"
#include "ccl/dsl/reproduce.hpp"
#include "ccl/errors.hpp"
#include "ccl/field.hpp"

namespace ccl::dsl {

namespace {

/// Primes reproduce accepts without --slow.
constexpr std::uint32_t kFastPrimeLimit = 3;

struct Options {
  bool json = false;
  std::string session;
  ConfigLayer flags;
  std::string file;
  std::uint64_t prime = 0;
  bool slow = false;
  std::string log;
};

template <class T>
void add_layer_option(CLI::App& app, const std::string& name, std::optional<T>& slot,
                      const std::string& help) {
  app.add_option_function<T>(name, [&slot](const T& v) { slot = v; }, help);
}

int run_file(const Options& o, std::istream& in, std::ostream& out, std::ostream& err,
             const ConfigLayer& env) {
  std::string source;
  if (o.file == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    source = buf.str();
  } else {
    std::ifstream f(o.file, std::ios::binary);
    if (!f) {
      err << "charp-closure-lab: cannot read " << o.file << "\n";
      return kExitUsage;
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    source = buf.str();
  }
  Interpreter interp(out, err, o.flags, env, o.json);
  if (!o.session.empty()) interp.load_session(o.session);
  return interp.run_source(source, o.file == "-" ? "<stdin>" : o.file);
}

bool needs_more_input(const Diagnostic& d) {
  return d.message == "unexpected end of input";
}

int run_repl(const Options& o, std::istream& in, std::ostream& out, std::ostream& err,
             const ConfigLayer& env, bool interactive) {
  Interpreter interp(out, err, o.flags, env, o.json);
  if (!o.session.empty()) interp.load_session(o.session);
  std::string buffer, line;
  int line_no = 0;
  for (;;) {
    if (interactive) out << (buffer.empty() ? "ccl> " : "...> ") << std::flush;
    if (!std::getline(in, line)) break;
    ++line_no;
    buffer += line + "\n";
    ParseResult parsed = parse_program(buffer);
    if (auto* diag = std::get_if<Diagnostic>(&parsed)) {
      if (needs_more_input(*diag)) continue;
      err << diag->format("<repl>") << "\n";
      buffer.clear();
      continue;
    }
    interp.run(std::get<Program>(parsed), "<repl>");
    buffer.clear();
  }
  if (buffer.find_first_not_of(" \t\r\n") != std::string::npos) {
    ParseResult parsed = parse_program(buffer);
    if (auto* diag = std::get_if<Diagnostic>(&parsed)) {
      err << diag->format("<repl>") << "\n";
      return kExitUsage;
    }
  }
  return kExitOk;
}

int run_reproduce(const Options& o, std::ostream& out, std::ostream& err, const ConfigLayer& env) {
  if (o.prime < 2 || !is_prime(o.prime)) {
    err << "charp-closure-lab: reproduce: " << o.prime << " is not prime\n";
    return kExitUsage;
  }
  if (o.prime > kMaxCounterexamplePrime) {
    err << "charp-closure-lab: reproduce: primes above " << kMaxCounterexamplePrime
        << " are not supported\n";
    return kExitUsage;
  }
  if (o.prime > kFastPrimeLimit && !o.slow) {
    err << "charp-closure-lab: reproduce: p = " << o.prime
        << " takes longer; pass --slow to run it\n";
    return kExitUsage;
  }
  Config c = resolve_config(o.flags, env, {});
  set_default_budget({c.gb_max_basis, c.gb_max_reductions});

  CounterexampleReport report = reproduce_example(static_cast<std::uint32_t>(o.prime));
  if (!o.log.empty()) {
    std::ofstream f(o.log);
    if (!f) {
      err << "charp-closure-lab: cannot write " << o.log << "\n";
      return kExitUsage;
    }
    f << audit_log_jsonl(report);
  }
  out << (o.json ? audit_log_jsonl(report) : audit_log_text(report));
  if (const AuditRecord* bad = report.first_failure()) {
    err << "charp-closure-lab: reproduce: p = " << o.prime
        << ": assertion failed: " << bad->assertion << "\n";
    return kExitVerdict;
  }
  return kExitOk;
}

}  // namespace

int run_main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
             std::ostream& err, bool interactive) {
  Options o;
  CLI::App app{"Characteristic-p closure computations over F_p", "charp-closure-lab"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Emit JSON instead of text");
  app.add_option("--session", o.session, "Load a session file before running");
  add_layer_option(app, "--emax", o.flags.e_max, "Largest Frobenius exponent e (q = p^e)");
  add_layer_option(app, "--qcap", o.flags.q_cap, "Largest q tried by bounded routes");
  add_layer_option(app, "--gb-budget", o.flags.gb_max_reductions,
                   "Reduction steps allowed per Groebner basis");
  add_layer_option(app, "--gb-max-basis", o.flags.gb_max_basis,
                   "Basis elements allowed per Groebner basis");
  add_layer_option(app, "--prime-cap", o.flags.prime_cap, "Largest characteristic accepted");
  add_layer_option(app, "--level-cap", o.flags.level_cap,
                   "Largest local cohomology level frob may produce");

  CLI::App* run = app.add_subcommand("run", "Execute a program file ('-' reads stdin)");
  run->add_option("file", o.file, "Program file")->required();
  run->fallthrough();
  CLI::App* repl = app.add_subcommand("repl", "Read statements interactively");
  repl->fallthrough();
  CLI::App* repro = app.add_subcommand("reproduce", "Re-run the path-ring counterexample");
  repro->add_option("--prime", o.prime, "Characteristic")->required();
  repro->add_flag("--slow", o.slow, "Allow primes above 3");
  repro->add_option("--log", o.log, "Write the JSON-lines audit log to a file");
  repro->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    ConfigLayer env = config_from_process_env();
    if (run->parsed()) return run_file(o, in, out, err, env);
    if (repl->parsed()) return run_repl(o, in, out, err, env, interactive);
    return run_reproduce(o, out, err, env);
  } catch (const BudgetExceeded& e) {
    err << "charp-closure-lab: budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InvalidArgument& e) {
    err << "charp-closure-lab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "charp-closure-lab: " << e.what() << "\n";
    return kExitVerdict;
  }
}

}  // namespace ccl::dsl
