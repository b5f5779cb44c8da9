#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ccl/dsl/cli.hpp"
#include "ccl/dsl/interpreter.hpp"
#include "ccl/dsl/parser.hpp"
#include "ccl/dsl/reproduce.hpp"
#include "ccl/errors.hpp"
#include "test_util.hpp"

namespace ccl::dsl {
namespace {

using ccl::testing::random_binomial;
using ccl::testing::random_poly;

const char* kPathRing3 = "ring R = Fp(3)[x,y,z,w] / (x*y, y*z, z*w);\n";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_program(const std::string& src, bool json = false, ConfigLayer flags = {}) {
  std::ostringstream out, err;
  Interpreter in(out, err, flags, {}, json);
  int code = in.run_source(src, "test.ccl");
  return {code, out.str(), err.str()};
}

Outcome cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::vector<const char*> argv{"charp-closure-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = run_main(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("ccl_" + std::to_string(::getpid()) + "_" + name);
}

// --- parser ------------------------------------------------------------------

TEST(Parser, RingBinding) {
  auto parsed = parse_program("ring R = Fp(3)[x,y,z,w] / (x*y, y*z, z*w);");
  ASSERT_TRUE(std::holds_alternative<Program>(parsed));
  const Program& p = std::get<Program>(parsed);
  ASSERT_EQ(p.statements.size(), 1u);
  EXPECT_EQ(p.statements[0].keyword, "ring");
  EXPECT_EQ(p.statements[0].name, "R");
  EXPECT_EQ(p.statements[0].expr->kind, ExprKind::Binary);
  EXPECT_EQ(p.statements[0].expr->children[0]->kind, ExprKind::RingLiteral);
}

TEST(Parser, ErrorAtOffendingToken) {
  auto parsed = parse_expression("x +* y");
  ASSERT_TRUE(std::holds_alternative<Diagnostic>(parsed));
  const Diagnostic& d = std::get<Diagnostic>(parsed);
  EXPECT_EQ(d.loc.line, 1);
  EXPECT_EQ(d.loc.column, 4);
  EXPECT_TRUE(d.expected.count("name"));
  EXPECT_TRUE(d.expected.count("'('"));
  EXPECT_NE(d.format("f").find("f:1:4: error: unexpected '*'"), std::string::npos);
}

TEST(Parser, LocatesErrorsAcrossLines) {
  auto parsed = parse_program("ring R = Fp(2)[x];\npoly f = x^2\nprint f;");
  ASSERT_TRUE(std::holds_alternative<Diagnostic>(parsed));
  const Diagnostic& d = std::get<Diagnostic>(parsed);
  EXPECT_EQ(d.loc.line, 3);
  EXPECT_EQ(d.loc.column, 1);
  EXPECT_TRUE(d.expected.count("';'"));
}

TEST(Parser, MiscDiagnostics) {
  for (const char* bad : {"ring R = Fp(3)[x,];", "poly f = x^2^3;", "print \"abc;",
                          "ideal I = (x, y;", "poly f = x @ y;", "list L = [x, y;"}) {
    auto parsed = parse_program(bad);
    EXPECT_TRUE(std::holds_alternative<Diagnostic>(parsed)) << bad;
  }
}

TEST(Parser, CommentsAndKeywordForms) {
  auto parsed = parse_program("# comment\nring R = Fp(2)[x]; // trailing\nprint x;\nsave \"f\";");
  ASSERT_TRUE(std::holds_alternative<Program>(parsed));
  const Program& p = std::get<Program>(parsed);
  ASSERT_EQ(p.statements.size(), 3u);
  EXPECT_EQ(p.statements[1].expr->text, "print");
  EXPECT_EQ(p.statements[2].expr->children[0]->kind, ExprKind::String);
}

TEST(Parser, DiagnosticsAreTotal) {
  std::mt19937_64 rng(1234);
  const std::string alphabet = "xyz019+-*/^()[],;= \n\"#abFp_\x01\xc3\xa9";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 40);
  int diagnostics = 0;
  for (int iter = 0; iter < 500; ++iter) {
    std::string src;
    for (int i = len(rng); i > 0; --i) src += alphabet[pick(rng)];
    ParseResult r = parse_program(src);
    if (auto* d = std::get_if<Diagnostic>(&r)) {
      ++diagnostics;
      EXPECT_GE(d->loc.line, 1);
      EXPECT_GE(d->loc.column, 1);
      EXPECT_FALSE(d->message.empty());
    }
    // Executing whatever parsed must not crash either.
    std::ostringstream out, err;
    Interpreter in(out, err);
    in.run_source(src, "fuzz");
  }
  EXPECT_GT(diagnostics, 100);
}

// --- execution -----------------------------------------------------------------

TEST(Execute, TestIdealOfPathRing) {
  Outcome r = run_program(std::string(kPathRing3) + "ideal T = testideal(R);\nprint T;\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "(y, z, x*w)\n");
}

TEST(Execute, MembershipAtTwo) {
  Outcome r = run_program(
      "ring S = Fp(2)[x,y,z,w];\nideal SR = (x*y, y*z, z*w);\nideal I = (x - w, x - y - z);\n"
      "member((x*w)^2, bracket(I, 2) + SR);\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "true\n");
}

TEST(Execute, Colon) {
  Outcome r = run_program("ring S = Fp(5)[x,y];\ncolon((x^2, x*y), (x));\n");
  EXPECT_EQ(r.out, "(x, y)\n");
}

TEST(Execute, StrongCheckTable) {
  Outcome r = run_program(std::string(kPathRing3) +
                      "ideal T = testideal(R);\n"
                      "list F = [(x - w, x - y - z), ((x - w)^2, (x - y - z)^2)];\n"
                      "strongcheck(T, F);\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("T I* = T I"), std::string::npos);
  EXPECT_NE(r.out.find("all equal: true"), std::string::npos);
  Outcome unit = run_program(std::string(kPathRing3) + "strongcheck((1), [(x - w, x - y - z)]);\n");
  EXPECT_NE(unit.out.find("unequal"), std::string::npos);
  EXPECT_NE(unit.out.find("all equal: false"), std::string::npos);
}

TEST(Execute, LocalCohomologyCommands) {
  Outcome r = run_program(
      "ring R = Fp(2)[x,y,z,w] / (x*y, y*z, z*w);\nlet P = sop(x - w, x - y - z);\n"
      "class eta = lcclass(P, x*w, 2);\niszero(eta);\nannihilates(testideal(R), eta);\n"
      "frob(eta);\nannihilates(testideal(R), frob(eta));\nequal(frob(eta), lcclass(P, (x*w)^2, 4));\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "false\ntrue\n[x^2*w^2, 4]\nfalse\ntrue\n");
}

TEST(Execute, ClosureCommands) {
  Outcome r = run_program(std::string(kPathRing3) +
                      "tc((x - w, x - y - z));\npartestideal(sop(x - w, x - y - z));\n"
                      "tcmember(x, (x - w, x - y - z));\nminprimes();\n"
                      "quotbasis((x - w, x - y - z));\nnf(x*y + x^2, (x - w));\n"
                      "intersect((x, z), (y, z));\nring S = Fp(3)[x,y,z];\n"
                      "eliminate((x - y, y - z), 1);\nintersect((x, z), (y, z));\n");
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::vector<std::string> got;
  for (std::string l; std::getline(lines, l);) got.push_back(l);
  ASSERT_EQ(got.size(), 9u) << r.out;
  EXPECT_EQ(got[0], "(x, y, z, w)");
  EXPECT_EQ(got[1], "(y, z, x*w)");
  EXPECT_EQ(got[2].rfind("unknown up to q = 27", 0), 0u) << got[2];
  EXPECT_EQ(got[3], "[(x, z), (y, z), (y, w)]");
  EXPECT_EQ(got[4], "[1, z, w]");
  EXPECT_EQ(got[5], "w^2");
  // x*y lies in the defining ideal.
  EXPECT_EQ(got[6], "(z)");
  EXPECT_EQ(got[7], "(y - z)");
  EXPECT_EQ(got[8], "(z, x*y)");
}

TEST(Execute, CertificateCommand) {
  Outcome r = run_program(std::string(kPathRing3) +
                      "idcert(x, (x - w, x - y - z), testideal(R));\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("verified: true"), std::string::npos);
}

TEST(Execute, ErrorsCarryLocationsAndCodes) {
  Outcome unbound = run_program("ring R = Fp(2)[x];\nprint y;\n");
  EXPECT_EQ(unbound.code, kExitUsage);
  EXPECT_NE(unbound.err.find("test.ccl:2:7: error: unbound name 'y'"), std::string::npos);

  Outcome arity = run_program("ring R = Fp(2)[x];\nmember(x);\n");
  EXPECT_EQ(arity.code, kExitUsage);
  EXPECT_NE(arity.err.find("member takes 2 arguments"), std::string::npos);

  Outcome library = run_program("ring R = Fp(3)[x,y];\nbracket((x), 2);\n");
  EXPECT_EQ(library.code, kExitVerdict);
  EXPECT_NE(library.err.find("test.ccl:2:1: error: invalid argument"), std::string::npos);

  Outcome failed = run_program("ring R = Fp(3)[x,y];\nassert(member(x, (y)), \"x not in (y)\");\nprint 1;\n");
  EXPECT_EQ(failed.code, kExitVerdict);
  EXPECT_EQ(failed.out, "");
  EXPECT_NE(failed.err.find("x not in (y)"), std::string::npos);

  Outcome notprime = run_program("ring R = Fp(4)[x];\n");
  EXPECT_EQ(notprime.code, kExitUsage);
  EXPECT_NE(notprime.err.find("4 is not prime"), std::string::npos);

  Outcome mismatch = run_program("ring A = Fp(2)[x];\npoly f = x;\nring B = Fp(3)[x];\nf + x;\n");
  EXPECT_EQ(mismatch.code, kExitUsage);
  EXPECT_NE(mismatch.err.find("different rings"), std::string::npos);
}

TEST(Execute, BudgetExhaustionIsExitThree) {
  ConfigLayer flags;
  flags.gb_max_basis = 2;
  Outcome r = run_program("ring R = Fp(7)[x,y,z];\ngb((x^2 - y*z, y^2 - x*z, z^2 - x*y, x*y*z - 1));\n",
                      false, flags);
  EXPECT_EQ(r.code, kExitBudget);
  EXPECT_EQ(r.out, "");
  EXPECT_NE(r.err.find("budget exceeded"), std::string::npos);
  set_default_budget({});
}

TEST(Execute, RebindingWarns) {
  Outcome r = run_program("ring R = Fp(2)[x];\npoly f = x;\npoly f = x^2;\nprint f;\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x^2\n");
  EXPECT_NE(r.err.find("test.ccl:3:1: warning: rebinding 'f'"), std::string::npos);
}

TEST(Execute, JsonOutput) {
  Outcome r = run_program(std::string(kPathRing3) + "testideal(R);\nmember(y, (y));\n", true);
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  Json a = Json::parse(first), b = Json::parse(second);
  EXPECT_EQ(a["command"], "testideal");
  EXPECT_EQ(a["result"]["type"], "ideal");
  EXPECT_EQ(a["result"]["generators"], Json::array({"y", "z", "x*w"}));
  EXPECT_EQ(b["result"]["value"], true);
  EXPECT_EQ(a["line"], 2);
}

TEST(Execute, DeterministicTrace) {
  std::string src = std::string(kPathRing3) +
                    "ideal T = testideal(R);\nlist F = [(x - w, x - y - z), ((x - w)^2, (x - y - z)^2)];\n"
                    "strongcheck(T, F);\ntcmember(z^2, (x, y));\nreproduce(2);\ngb(T, \"lex\");\n";
  Outcome a = run_program(src), b = run_program(src);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  Outcome c = run_program(src, true), d = run_program(src, true);
  EXPECT_EQ(c.out, d.out);
}

// --- round trips ---------------------------------------------------------------

RingSpec random_ring(std::mt19937_64& rng) {
  static const std::vector<std::string> pool{"x", "y", "z", "w", "a1", "b_2", "t", "u", "v9", "Q"};
  static const std::vector<std::uint32_t> primes{2, 3, 5, 7, 101, 32003};
  std::vector<std::string> names = pool;
  std::shuffle(names.begin(), names.end(), rng);
  names.resize(1 + rng() % 5);
  RingPtr A = PolyRing::make(primes[rng() % primes.size()], names);
  std::vector<Polynomial> defining;
  for (int k = static_cast<int>(rng() % 3); k > 0; --k) defining.push_back(random_binomial(rng, A, 3));
  return RingSpec(A, defining);
}

TEST(RoundTrip, PrintThenParse) {
  std::mt19937_64 rng(20240607);
  int checked = 0;
  for (int iter = 0; iter < 250; ++iter) {
    RingSpec R = random_ring(rng);
    std::ostringstream out, err;
    Interpreter in(out, err);
    Value ring{RingValue{R}};
    ASSERT_EQ(in.run_source("ring R = " + format_value(ring) + ";", "rt"), 0) << err.str();
    ASSERT_TRUE(values_equal(*in.lookup("R"), ring)) << format_value(ring);

    Value f{PolyValue{R, random_poly(rng, R.ambient(), 5, 4)}};
    ASSERT_EQ(in.run_source("poly f = " + format_value(f) + ";", "rt"), 0) << err.str();
    ASSERT_TRUE(values_equal(*in.lookup("f"), f)) << format_value(f);

    std::vector<Polynomial> gens;
    for (int k = static_cast<int>(rng() % 4); k > 0; --k) gens.push_back(random_binomial(rng, R.ambient(), 3));
    Value I{IdealValue{R, Ideal(R.ambient(), gens)}};
    ASSERT_EQ(in.run_source("ideal I = " + format_value(I) + ";", "rt"), 0) << err.str();
    ASSERT_TRUE(values_equal(*in.lookup("I"), I)) << format_value(I);

    // Inside a list a constant polynomial reads back as an integer.
    Value g = f.as<PolyValue>().poly.is_constant()
                  ? Value{PolyValue{R, Polynomial::variable(R.ambient(), 0)}}
                  : f;
    ListValue l{{g, Value{std::int64_t(rng() % 1000)}, Value{bool(rng() & 1)},
                 Value{std::string("s\"q")}}};
    Value lv{l};
    ASSERT_EQ(in.run_source("list L = " + format_value(lv) + ";", "rt"), 0) << err.str();
    ASSERT_TRUE(values_equal(*in.lookup("L"), lv)) << format_value(lv);
    checked += 4;
  }
  EXPECT_GE(checked, 1000);
}

TEST(RoundTrip, SessionSaveLoad) {
  auto path = temp_path("session.json");
  std::string src = std::string(kPathRing3) +
                    "ideal T = testideal(R);\npoly f = x*w - 2*y + 1;\nlet P = sop(x - w, x - y - z);\n"
                    "class eta = lcclass(P, x*w, 2);\nclass feta = frob(eta);\n"
                    "list F = [(x - w, x - y - z), T, 7, true, \"text\"];\n"
                    "let rep = strongcheck(T, [(x - w, x - y - z)]);\nsave(\"" + path.string() + "\");\n";
  std::ostringstream out, err;
  Interpreter a(out, err);
  ASSERT_EQ(a.run_source(src, "s"), 0) << err.str();

  Interpreter b(out, err);
  b.load_session(path.string());
  ASSERT_EQ(a.binding_order(), b.binding_order());
  for (const std::string& name : a.binding_order())
    EXPECT_TRUE(values_equal(*a.lookup(name), *b.lookup(name))) << name;
  EXPECT_EQ(a.session_json().dump(), b.session_json().dump());
  // Loaded classes share their system of parameters.
  EXPECT_EQ(b.lookup("eta")->as<ClassValue>().cls.sop_ptr(),
            b.lookup("feta")->as<ClassValue>().cls.sop_ptr());
  EXPECT_EQ(b.run_source("equal(frob(eta), feta);\nprint T;\n", "s"), 0);
  std::filesystem::remove(path);
}

TEST(RoundTrip, MalformedSessionsAreRejected) {
  std::ostringstream out, err;
  Interpreter in(out, err);
  EXPECT_THROW(in.load_session_json(Json{{"version", "other"}}), InvalidArgument);
  EXPECT_THROW(in.load_session_json(Json{{"version", kSessionVersion}, {"bindings", 3}}),
               InvalidArgument);
  Json bad_poly = Json::parse(
      R"({"version":"ccl-session/1","bindings":[{"name":"f","value":{"type":"poly",)"
      R"("ring":"Fp(2)[x]","value":"x +* 1"}}]})");
  EXPECT_THROW(in.load_session_json(bad_poly), InvalidArgument);
}

// --- configuration -------------------------------------------------------------

TEST(Config, Precedence) {
  ConfigLayer flags, env, session;
  session.e_max = 2;
  session.q_cap = 100;
  session.level_cap = 99;
  env.e_max = 4;
  env.q_cap = 200;
  flags.e_max = 5;
  Config c = resolve_config(flags, env, session);
  EXPECT_EQ(c.e_max, 5u);
  EXPECT_EQ(c.q_cap, 200u);
  EXPECT_EQ(c.level_cap, 99u);
  EXPECT_EQ(c.gb_max_basis, Config{}.gb_max_basis);
}

TEST(Config, EnvironmentParsing) {
  auto lookup = [](const std::string& name) -> std::optional<std::string> {
    if (name == "CCL_EMAX") return "2";
    if (name == "CCL_GB_BUDGET") return "1000";
    return std::nullopt;
  };
  ConfigLayer l = config_from_env(lookup);
  EXPECT_EQ(l.e_max, 2u);
  EXPECT_EQ(l.gb_max_reductions, 1000u);
  EXPECT_FALSE(l.q_cap);
  auto bad = [](const std::string& name) -> std::optional<std::string> {
    if (name == "CCL_QCAP") return "12x";
    return std::nullopt;
  };
  EXPECT_THROW(config_from_env(bad), InvalidArgument);
}

TEST(Config, SessionLayerRanksBelowFlags) {
  auto path = temp_path("cfg.json");
  {
    std::ofstream f(path);
    f << R"({"version":"ccl-session/1","config":{"e_max":1,"q_cap":9},"bindings":[]})";
  }
  std::ostringstream out, err;
  ConfigLayer flags;
  flags.q_cap = 27;
  Interpreter in(out, err, flags);
  in.load_session(path.string());
  EXPECT_EQ(in.config().e_max, 1u);
  EXPECT_EQ(in.config().q_cap, 27u);
  std::filesystem::remove(path);
}

// --- command line --------------------------------------------------------------

TEST(Cli, ReproduceSmallPrimes) {
  for (const char* p : {"2", "3"}) {
    Outcome r = cli({"reproduce", "--prime", p});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("all 14 assertions hold"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  }
}

TEST(Cli, ReproduceGatesAndRejects) {
  Outcome four = cli({"reproduce", "--prime", "4"});
  EXPECT_EQ(four.code, kExitUsage);
  EXPECT_NE(four.err.find("not prime"), std::string::npos);
  Outcome five = cli({"reproduce", "--prime", "5"});
  EXPECT_EQ(five.code, kExitUsage);
  EXPECT_NE(five.err.find("--slow"), std::string::npos);
  EXPECT_EQ(cli({"reproduce", "--prime", "5", "--slow"}).code, 0);
  EXPECT_EQ(cli({"reproduce", "--prime", "17", "--slow"}).code, kExitUsage);
  EXPECT_EQ(cli({"reproduce"}).code, kExitUsage);
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
}

TEST(Cli, ReproduceJsonLog) {
  auto log = temp_path("audit.jsonl");
  Outcome r = cli({"reproduce", "--prime", "2", "--json", "--log", log.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(log);
  std::string file_text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  EXPECT_EQ(file_text, r.out);
  std::istringstream lines(r.out);
  int n = 0;
  for (std::string l; std::getline(lines, l); ++n) {
    Json j = Json::parse(l);
    for (const char* key : {"assertion", "inputs", "verdict", "paper_anchor"})
      EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_TRUE(j["verdict"].get<bool>()) << j["assertion"];
  }
  EXPECT_EQ(n, 14);
  std::filesystem::remove(log);
}

TEST(Cli, RunFileAndStdin) {
  auto file = temp_path("prog.ccl");
  {
    std::ofstream f(file);
    f << kPathRing3 << "print testideal(R);\n";
  }
  Outcome r = cli({"run", file.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "(y, z, x*w)\n");
  Outcome s = cli({"run", "-"}, "x +* y;");
  EXPECT_EQ(s.code, kExitUsage);
  EXPECT_NE(s.err.find("<stdin>:1:4"), std::string::npos);
  EXPECT_EQ(cli({"run", "/nonexistent/file.ccl"}).code, kExitUsage);
  Outcome budget = cli({"--gb-max-basis", "2", "run", "-"},
                   "ring R = Fp(7)[x,y,z];\ngb((x^2 - y*z, y^2 - x*z, z^2 - x*y, x*y*z - 1));\n");
  EXPECT_EQ(budget.code, kExitBudget);
  set_default_budget({});
  std::filesystem::remove(file);
}

TEST(Cli, ReplContinuesAfterErrors) {
  Outcome r = cli({"repl"}, "ring R = Fp(3)[x,y,z,w]\n  / (x*y, y*z, z*w);\nprint q;\nx +* y;\nprint testideal(R);\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(y, z, x*w)\n");
  EXPECT_NE(r.err.find("unbound name 'q'"), std::string::npos);
  EXPECT_NE(r.err.find("unexpected '*'"), std::string::npos);
}

TEST(Cli, Help) {
  Outcome r = cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("reproduce"), std::string::npos);
}

}  // namespace
}  // namespace ccl::dsl
