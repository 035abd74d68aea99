#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "shiftsim/cli.hpp"
#include "shiftsim/dsl.hpp"
#include "shiftsim/json_io.hpp"
#include "shiftsim/sampling.hpp"
#include "shiftsim/shift.hpp"

using namespace shiftsim;

namespace {

EPPerm eval_perm(const std::string& text) {
  return std::get<EPPerm>(dsl::evaluate(text));
}

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("expression parsing and evaluation") {
  CHECK(eval_perm("id").is_identity());
  CHECK(eval_perm("alpha") == slide());
  CHECK(eval_perm("lambda") == flip());
  CHECK(eval_perm("(1 3)(2 5 6 4)") == EPPerm::from_cycles({{1, 3}, {2, 5, 6, 4}}));
  CHECK(eval_perm("periodic(2,2,[2,1])") == flip());
  CHECK(eval_perm("psi[1]((1 3)(2 5 6 4))") == psi(EPPerm::from_cycles({{1, 3}, {2, 5, 6, 4}}), 1));
  CHECK(eval_perm("insert[1,3](id)") == insert_arrow(EPPerm::identity(), 1, 3));
  CHECK(eval_perm("  alpha*lambda  ") == compose(slide(), flip()));
  // inverse binds tighter than composition
  CHECK(eval_perm("alpha * lambda ^-1") == compose(slide(), inverse(flip())));
  CHECK(eval_perm("(alpha * lambda) ^-1") == inverse(compose(slide(), flip())));
  CHECK(eval_perm("alpha ^-1 ^-1") == slide());

  CHECK(std::get<GroupClass>(dsl::evaluate("E(2)")) == GroupClass::periodic(2));
  CHECK(std::get<GroupClass>(dsl::evaluate("sym(5)")) == GroupClass::sym(5));

  Germ germ = std::get<Germ>(dsl::evaluate("germ(alpha * (1 2))"));
  CHECK(germ_equals(germ, Germ(slide())));

  Triple t = std::get<Triple>(dsl::evaluate(
      "triple(2, E(2), [(2,1)], [((1,1),(2,1))], [id, id], [(1,1)])"));
  CHECK(chi(t) == std::vector<Int>{-1, 1});
  Triple product = std::get<Triple>(dsl::evaluate(
      "triple(2, E(2), [(2,1)], [((1,1),(2,1))], [id, id], [(1,1)]) "
      "* triple(2, E(2), [], [], [id, id], [])"));
  CHECK(eval_triple(product) == eval_triple(t));
}

TEST_CASE("parse errors carry positions") {
  try {
    dsl::parse("alpha * ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 9);
  }
  CHECK_THROWS_AS(dsl::parse("unknownword"), ParseError);
  CHECK_THROWS_AS(dsl::parse("triple(2, xyz(3), [], [], [id, id], [])"), ParseError);
  CHECK_THROWS_AS(dsl::parse("psi[(alpha)"), ParseError);
  CHECK_THROWS_AS(dsl::parse("alpha lambda"), ParseError);
  CHECK_THROWS_AS(dsl::parse("alpha ^-2"), ParseError);
  CHECK_THROWS_AS(dsl::evaluate("germ(alpha) * alpha"), DomainError);
}

TEST_CASE("print and parse round trip on canonical output") {
  Rng rng(2828);
  for (int s = 0; s < 40; ++s) {
    EPPerm g = random_epperm(rng);
    dsl::Value v = g;
    CHECK(std::get<EPPerm>(dsl::evaluate(dsl::print(v))) == g);
  }
  for (int s = 0; s < 20; ++s) {
    Triple t = random_triple(rng, 2, GroupClass::periodic(2));
    Triple back = std::get<Triple>(dsl::evaluate(dsl::print(dsl::Value(t))));
    CHECK(back == t);
  }
  GroupClass cls = GroupClass::houghton(3);
  CHECK(std::get<GroupClass>(dsl::evaluate(dsl::print(dsl::Value(cls)))) == cls);
  Germ germ{slide()};
  CHECK(germ_equals(std::get<Germ>(dsl::evaluate(dsl::print(dsl::Value(germ)))), germ));
}

TEST_CASE("cli eval, normalize, mul, inv, shift") {
  CliRun fig = run_cli({"eval", "psi[1]((1 3)(2 5 6 4))"});
  CHECK(fig.exit_code == 0);
  CHECK(fig.out.find("p=1,T=6,table=[4,1,2,5,3,6]") != std::string::npos);
  CHECK(fig.out.find("(1 4 5 3 2)") != std::string::npos);

  CliRun norm = run_cli({"normalize", "periodic(4,8,[2,1,4,3,6,5,8,7])"});
  CHECK(norm.exit_code == 0);
  CHECK(norm.out.find("p=2,T=2,table=[2,1]") != std::string::npos);

  CliRun mul = run_cli({"mul", "alpha", "lambda"});
  CHECK(mul.exit_code == 0);
  CHECK(mul.out.find("p=2,T=3,table=[1,3,2]") != std::string::npos);

  CliRun inv = run_cli({"inv", "lambda"});
  CHECK(inv.out.find("p=2,T=2,table=[2,1]") != std::string::npos);

  CliRun shift = run_cli({"shift", "3", "alpha"});
  CHECK(shift.exit_code == 0);
  CHECK(shift.out.find(psi(slide(), 3).to_string()) != std::string::npos);

  CliRun json = run_cli({"eval", "alpha", "--json"});
  CHECK(epperm_from_json_string(json.out) == slide());
}

TEST_CASE("cli member, chi, reduce-h1, factor, iso, ball") {
  CHECK(run_cli({"member", "E(2)", "alpha", "--assert"}).exit_code == 0);
  CliRun no = run_cli({"member", "H(2)", "lambda", "--assert"});
  CHECK(no.exit_code == 1);
  CHECK(no.out.find("false") != std::string::npos);

  CliRun chi_run =
      run_cli({"chi", "triple(2, E(2), [(2,1)], [((1,1),(2,1))], [id, id], [(1,1)])"});
  CHECK(chi_run.exit_code == 0);
  CHECK(chi_run.out == "(-1, 1)\n");

  CliRun reduce = run_cli({"reduce-h1",
                           "triple(1, E(2), [(1,3)], [((1,3),(1,3))], [alpha], [(1,3)])",
                           "--class", "E(2)"});
  CHECK(reduce.exit_code == 0);

  CliRun factor =
      run_cli({"factor", "triple(2, E(2), [(2,1)], [((1,1),(2,1))], [alpha, id], [(1,1)])"});
  CHECK(factor.exit_code == 0);
  CHECK(factor.out.find("verified=true") != std::string::npos);

  CliRun iso = run_cli({"iso", "triple(2, H(2), [(2,1)], [((1,1),(2,1))], [id, id], [(1,1)])",
                        "--inner-n", "2"});
  CHECK(iso.exit_code == 0);
  CHECK(iso.out.find("n=4") != std::string::npos);

  CliRun ball = run_cli({"ball", "--radius", "3", "alpha", "lambda", "(1 2)"});
  CHECK(ball.exit_code == 0);
  CHECK(ball.out.find("truncated=false") != std::string::npos);
}

TEST_CASE("cli check and exit codes") {
  CliRun ok = run_cli({"check", "two-shifts", "--samples", "10", "--seed", "7"});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "PASS 10/10\n");

  CliRun unknown_suite = run_cli({"check", "no-such-suite"});
  CHECK(unknown_suite.exit_code == 2);

  CliRun usage = run_cli({"frobnicate"});
  CHECK(usage.exit_code == 2);

  CliRun syntax = run_cli({"eval", "alpha *"});
  CHECK(syntax.exit_code == 2);
  CHECK(syntax.err.find("syntax error") != std::string::npos);

  CliRun invalid = run_cli({"eval", "periodic(2,2,[1,3])"});
  CHECK(invalid.exit_code == 1);
  CHECK(invalid.err.find("invalid permutation") != std::string::npos);

  // determinism: identical inputs and seeds give byte-identical output
  CliRun a = run_cli({"check", "cocycle", "--samples", "15", "--seed", "11"});
  CliRun b = run_cli({"check", "cocycle", "--samples", "15", "--seed", "11"});
  CHECK(a.out == b.out);
  CliRun ball1 = run_cli({"ball", "--radius", "4", "alpha", "lambda"});
  CliRun ball2 = run_cli({"ball", "--radius", "4", "alpha", "lambda"});
  CHECK(ball1.out == ball2.out);
}

TEST_CASE("cli file input") {
  std::string dir = "cli_io_test";
  std::string path = dir + "_element.json";
  {
    std::ofstream out(path);
    out << to_json_string(eval_triple(embed_components({slide(), EPPerm::identity()},
                                                       GroupClass::periodic(2))));
  }
  CliRun from_file = run_cli({"shift", "1", "--file", path});
  CHECK(from_file.exit_code == 0);
  CliRun via_dsl = run_cli({"eval", "psi[1](file(\"" + path + "\"))"});
  CHECK(via_dsl.exit_code == 0);
  CHECK(via_dsl.out == from_file.out);
  std::remove(path.c_str());

  CliRun missing = run_cli({"eval", "file(\"does_not_exist.json\")"});
  CHECK(missing.exit_code == 1);
}

TEST_CASE("every library operation is reachable from a subcommand") {
  const std::set<std::string> known(cli::subcommand_names().begin(),
                                    cli::subcommand_names().end());
  const std::vector<std::string> operations = {
      "EPPerm::from_cycles", "EPPerm::from_periodic", "EPPerm::apply",
      "compose", "inverse", "germ_equals", "psi", "insert_arrow", "germ_shift",
      "GroupClass::contains", "section_into_stabilizer", "closure_falsifier",
      "beta", "beta_inverse", "eval_triple", "expand", "general_expand",
      "minimal_triple", "multiply", "invert_triple", "chi", "embed_components",
      "factorize", "reduce_h1", "psi1", "composite_iso", "ball_enumerate",
      "normalize_finite_components", "dsl::parse", "dsl::evaluate",
  };
  for (const std::string& op : operations) {
    bool covered = false;
    for (const auto& entry : cli::operation_coverage()) {
      if (op != entry.operation) continue;
      std::string subcommand(entry.subcommand);
      covered = known.count(subcommand.substr(0, subcommand.find(' '))) > 0;
      break;
    }
    INFO("operation " << op);
    CHECK(covered);
  }
}
