#include "shiftsim/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "shiftsim/dsl.hpp"
#include "shiftsim/json_io.hpp"
#include "shiftsim/sampling.hpp"
#include "shiftsim/shift.hpp"
#include "shiftsim/suites.hpp"

namespace shiftsim {
namespace cli {

namespace {

ResourceLimits limits_from_env() {
  ResourceLimits limits;
  if (const char* v = std::getenv("SHIFTSIM_MAX_ELEMENTS")) limits.max_elements = std::stoull(v);
  if (const char* v = std::getenv("SHIFTSIM_MAX_RADIUS")) limits.max_radius = std::stoll(v);
  return limits;
}

struct Options {
  std::string file;
  bool json = false;
  bool assert_flag = false;
  Int samples = 200;
  std::uint64_t seed = 7;
  Int radius = 4;
  Int window = 24;
  std::string class_name;
  Int inner_n = 2;
};

dsl::Value input_value(const Options& opt, const std::string& expr) {
  if (!opt.file.empty()) {
    JsonValue loaded = value_from_json_file(opt.file);
    return std::visit([](auto v) -> dsl::Value { return v; }, std::move(loaded));
  }
  if (expr.empty()) throw DomainError("missing input: pass an expression or --file");
  return dsl::evaluate(expr);
}

EPPerm as_perm(const dsl::Value& v) {
  if (const EPPerm* g = std::get_if<EPPerm>(&v)) return *g;
  throw DomainError("expected a permutation");
}

Triple as_triple(const dsl::Value& v) {
  if (const Triple* t = std::get_if<Triple>(&v)) return *t;
  throw DomainError("expected a triple");
}

void print_perm(std::ostream& out, const Options& opt, const EPPerm& g) {
  if (opt.json) {
    out << to_json_string(g) << "\n";
    return;
  }
  out << g.to_string() << "\n";
  out << "cycles[1.." << opt.window << "]: " << dsl::cycle_preview(g, opt.window) << "\n";
}

void print_element(std::ostream& out, const Options& opt, const HoughtonElement& e) {
  if (opt.json) {
    out << to_json_string(e) << "\n";
    return;
  }
  out << "n=" << e.ray_count() << " " << e.flat().to_string() << "\n";
  out << "cycles[1.." << opt.window << "]: " << dsl::cycle_preview(e.flat(), opt.window) << "\n";
}

void print_triple(std::ostream& out, const Options& opt, const Triple& t) {
  if (opt.json) {
    out << to_json_string(t) << "\n";
    return;
  }
  out << dsl::print(dsl::Value(t)) << "\n";
}

void print_value(std::ostream& out, const Options& opt, const dsl::Value& v) {
  if (const EPPerm* g = std::get_if<EPPerm>(&v)) {
    print_perm(out, opt, *g);
  } else if (const HoughtonElement* e = std::get_if<HoughtonElement>(&v)) {
    print_element(out, opt, *e);
  } else if (const Triple* t = std::get_if<Triple>(&v)) {
    print_triple(out, opt, *t);
    if (!opt.json) {
      HoughtonElement e = eval_triple(*t);
      out << "flat: n=" << e.ray_count() << " " << e.flat().to_string() << "\n";
    }
  } else if (const Germ* germ = std::get_if<Germ>(&v)) {
    out << "germ of " << germ->representative().to_string() << "\n";
  } else {
    out << std::get<GroupClass>(v).name() << "\n";
  }
}

int run_check(const Options& opt, const std::string& suite, std::ostream& out) {
  std::vector<std::string> names;
  if (suite == "all") {
    for (const auto& [name, fn] : identity_suites()) names.push_back(name);
  } else {
    names.push_back(suite);
  }
  bool all_ok = true;
  for (const std::string& name : names) {
    SuiteResult result = run_suite(name, opt.seed, opt.samples);
    if (suite == "all") out << name << ": ";
    if (result.ok()) {
      out << "PASS " << result.passed << "/" << result.total << "\n";
    } else {
      out << "FAIL after " << result.passed << "/" << result.total << ": " << result.failure
          << "\n";
      all_ok = false;
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact calculator for eventually periodic permutations, shifting maps, and "
               "Houghton-style representative triples"};
  app.require_subcommand(1);
  Options opt;

  std::string expr, expr2, class_arg, suite;
  Int shift_index = 1;

  auto add_common = [&](CLI::App* cmd, bool with_file = true) {
    cmd->add_flag("--json", opt.json, "machine-readable output");
    cmd->add_option("--window", opt.window, "cycle preview window");
    if (with_file) cmd->add_option("--file", opt.file, "JSON input (permutation/triple/element)");
  };

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate an expression");
  eval_cmd->add_option("expr", expr, "expression");
  add_common(eval_cmd);

  CLI::App* normalize_cmd =
      app.add_subcommand("normalize", "canonical form of a permutation, minimal triple of an "
                                      "element or triple");
  normalize_cmd->add_option("expr", expr, "expression");
  normalize_cmd->add_option("--class", opt.class_name, "class tag for the minimal triple");
  add_common(normalize_cmd);

  CLI::App* mul_cmd = app.add_subcommand("mul", "compose two values");
  mul_cmd->add_option("left", expr, "left factor")->required();
  mul_cmd->add_option("right", expr2, "right factor (applied first)")->required();
  add_common(mul_cmd, false);

  CLI::App* inv_cmd = app.add_subcommand("inv", "invert a value");
  inv_cmd->add_option("expr", expr, "expression");
  add_common(inv_cmd);

  CLI::App* shift_cmd = app.add_subcommand("shift", "apply the j-th shifting map");
  shift_cmd->add_option("j", shift_index, "shift index")->required();
  shift_cmd->add_option("expr", expr, "expression");
  add_common(shift_cmd);

  CLI::App* member_cmd = app.add_subcommand("member", "class membership test");
  member_cmd->add_option("class", class_arg, "class literal")->required();
  member_cmd->add_option("expr", expr, "expression");
  member_cmd->add_flag("--assert", opt.assert_flag, "exit 1 when the answer is false");
  add_common(member_cmd);

  CLI::App* chi_cmd = app.add_subcommand("chi", "ray count differences of a triple");
  chi_cmd->add_option("expr", expr, "triple expression");
  add_common(chi_cmd);

  CLI::App* check_cmd = app.add_subcommand("check", "run a named identity suite");
  check_cmd->add_option("suite", suite, "suite name or 'all'")->required();
  check_cmd->add_option("--samples", opt.samples, "sample count");
  check_cmd->add_option("--seed", opt.seed, "random seed");

  CLI::App* ball_cmd = app.add_subcommand("ball", "enumerate short products of generators");
  std::vector<std::string> gen_exprs;
  ball_cmd->add_option("generators", gen_exprs, "generator expressions");
  ball_cmd->add_option("--radius", opt.radius, "maximal word length");
  ball_cmd->add_flag("--json", opt.json, "machine-readable output");

  CLI::App* iso_cmd = app.add_subcommand("iso", "re-index a nested element");
  iso_cmd->add_option("expr", expr, "element or triple expression");
  iso_cmd->add_option("--inner-n", opt.inner_n, "inner ray count");
  iso_cmd->add_option("--class", opt.class_name, "inner class (default trivial)");
  add_common(iso_cmd);

  CLI::App* factor_cmd = app.add_subcommand("factor", "split a triple into generator factors");
  factor_cmd->add_option("expr", expr, "triple expression");
  add_common(factor_cmd);

  CLI::App* reduce_cmd = app.add_subcommand("reduce-h1", "single-ray triple to a class element");
  reduce_cmd->add_option("expr", expr, "triple expression");
  reduce_cmd->add_option("--class", opt.class_name, "strongly closed class (default E(2))");
  add_common(reduce_cmd);

  std::vector<const char*> argv;
  argv.push_back("shiftsim");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (eval_cmd->parsed()) {
      print_value(out, opt, input_value(opt, expr));
      return 0;
    }
    if (normalize_cmd->parsed()) {
      dsl::Value v = input_value(opt, expr);
      if (const EPPerm* g = std::get_if<EPPerm>(&v)) {
        print_perm(out, opt, *g);
        return 0;
      }
      GroupClass cls = GroupClass::universe();
      if (!opt.class_name.empty()) cls = GroupClass::parse(opt.class_name);
      HoughtonElement e = std::holds_alternative<Triple>(v)
                              ? eval_triple(std::get<Triple>(v))
                              : std::get<HoughtonElement>(v);
      if (opt.class_name.empty() && std::holds_alternative<Triple>(v))
        cls = std::get<Triple>(v).group_class();
      print_triple(out, opt, minimal_triple(e, cls));
      return 0;
    }
    if (mul_cmd->parsed()) {
      dsl::Value v = dsl::evaluate("(" + expr + ") * (" + expr2 + ")");
      print_value(out, opt, v);
      return 0;
    }
    if (inv_cmd->parsed()) {
      dsl::Value v = input_value(opt, expr);
      if (const EPPerm* g = std::get_if<EPPerm>(&v)) {
        print_perm(out, opt, inverse(*g));
      } else if (const Triple* t = std::get_if<Triple>(&v)) {
        print_triple(out, opt, invert_triple(*t));
      } else if (const HoughtonElement* e = std::get_if<HoughtonElement>(&v)) {
        print_element(out, opt, inverse(*e));
      } else {
        throw DomainError("inv expects a permutation, triple, or element");
      }
      return 0;
    }
    if (shift_cmd->parsed()) {
      dsl::Value v = input_value(opt, expr);
      if (const EPPerm* g = std::get_if<EPPerm>(&v)) {
        print_perm(out, opt, psi(*g, shift_index));
      } else if (const HoughtonElement* e = std::get_if<HoughtonElement>(&v)) {
        if (shift_index != 1) throw DomainError("elements only support shift index 1");
        print_element(out, opt, psi1(*e));
      } else {
        throw DomainError("shift expects a permutation or an element");
      }
      return 0;
    }
    if (member_cmd->parsed()) {
      GroupClass cls = GroupClass::parse(class_arg);
      bool answer = cls.contains(as_perm(input_value(opt, expr)));
      out << (answer ? "true" : "false") << "\n";
      return (opt.assert_flag && !answer) ? 1 : 0;
    }
    if (chi_cmd->parsed()) {
      std::vector<Int> values = chi(as_triple(input_value(opt, expr)));
      out << "(";
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ", ";
        out << values[i];
      }
      out << ")\n";
      return 0;
    }
    if (check_cmd->parsed()) {
      if (suite != "all") {
        bool known = false;
        for (const auto& [name, fn] : identity_suites()) known = known || name == suite;
        if (!known) {
          err << "usage error: unknown suite '" << suite << "'\n";
          return 2;
        }
      }
      return run_check(opt, suite, out);
    }
    if (ball_cmd->parsed()) {
      std::vector<HoughtonElement> generators;
      for (const std::string& g : gen_exprs) {
        dsl::Value v = dsl::evaluate(g);
        if (const EPPerm* perm = std::get_if<EPPerm>(&v))
          generators.push_back(HoughtonElement::unchecked(1, *perm));
        else if (const HoughtonElement* e = std::get_if<HoughtonElement>(&v))
          generators.push_back(*e);
        else
          throw DomainError("ball generators must be permutations or elements");
      }
      BallResult ball = ball_enumerate(generators, opt.radius, limits_from_env());
      out << "size=" << ball.elements.size() << " truncated=" << (ball.truncated ? "true" : "false")
          << "\n";
      for (const HoughtonElement& e : ball.elements) out << e.flat().to_string() << "\n";
      return 0;
    }
    if (iso_cmd->parsed()) {
      dsl::Value v = input_value(opt, expr);
      HoughtonElement e = std::holds_alternative<Triple>(v) ? eval_triple(std::get<Triple>(v))
                                                            : std::get<HoughtonElement>(v);
      GroupClass cls = opt.class_name.empty() ? GroupClass::trivial()
                                              : GroupClass::parse(opt.class_name);
      print_element(out, opt, composite_iso(e, opt.inner_n, cls));
      return 0;
    }
    if (factor_cmd->parsed()) {
      Triple t = as_triple(input_value(opt, expr));
      std::vector<Triple> factors = factorize(t);
      HoughtonElement product = HoughtonElement::identity(t.ray_count());
      for (const Triple& f : factors) {
        out << dsl::print(dsl::Value(f)) << "\n";
        product = multiply(product, eval_triple(f));
      }
      bool verified = product == eval_triple(t);
      out << "factors=" << factors.size() << " verified=" << (verified ? "true" : "false") << "\n";
      return verified ? 0 : 1;
    }
    if (reduce_cmd->parsed()) {
      Triple t = as_triple(input_value(opt, expr));
      GroupClass cls = opt.class_name.empty() ? GroupClass::periodic(2)
                                              : GroupClass::parse(opt.class_name);
      print_perm(out, opt, reduce_h1(t, cls));
      return 0;
    }
  } catch (const ParseError& e) {
    err << "syntax error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "invalid permutation: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

const std::vector<OpCoverage>& operation_coverage() {
  static const std::vector<OpCoverage> table = {
      {"EPPerm::from_cycles", "eval"},
      {"EPPerm::from_periodic", "eval"},
      {"EPPerm::apply", "eval"},
      {"compose", "mul"},
      {"inverse", "inv"},
      {"germ_equals", "check germ-shift"},
      {"psi", "shift"},
      {"insert_arrow", "eval insert[j,m]"},
      {"germ_shift", "check germ-shift"},
      {"GroupClass::contains", "member"},
      {"section_into_stabilizer", "check class-closure"},
      {"closure_falsifier", "check closure-falsifier"},
      {"beta", "normalize"},
      {"beta_inverse", "normalize"},
      {"eval_triple", "eval"},
      {"expand", "check triple-expansion"},
      {"general_expand", "check triple-expansion"},
      {"minimal_triple", "normalize"},
      {"multiply", "mul"},
      {"invert_triple", "inv"},
      {"chi", "chi"},
      {"embed_components", "eval triple(...)"},
      {"factorize", "factor"},
      {"reduce_h1", "reduce-h1"},
      {"psi1", "shift"},
      {"composite_iso", "iso"},
      {"ball_enumerate", "ball"},
      {"normalize_finite_components", "check finite-collapse"},
      {"dsl::parse", "eval"},
      {"dsl::evaluate", "eval"},
  };
  return table;
}

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {
      "eval", "normalize", "mul",  "inv", "shift",  "member",
      "chi",  "check",     "ball", "iso", "factor", "reduce-h1",
  };
  return names;
}

}  // namespace cli
}  // namespace shiftsim
