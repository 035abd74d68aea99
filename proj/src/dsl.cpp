#include "shiftsim/dsl.hpp"

#include <cctype>
#include <sstream>

#include "shiftsim/json_io.hpp"
#include "shiftsim/shift.hpp"

namespace shiftsim {
namespace dsl {

namespace {

struct Token {
  enum class Kind { kNumber, kIdent, kString, kSymbol, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  Int number = 0;
  std::size_t line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(current_.line, current_.column, message);
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) step();
    current_ = Token{};
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= text_.size()) return;

    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      current_.kind = Token::Kind::kNumber;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        current_.text.push_back(text_[pos_]);
        step();
      }
      current_.number = std::stoll(current_.text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      current_.kind = Token::Kind::kIdent;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_')) {
        current_.text.push_back(text_[pos_]);
        step();
      }
      return;
    }
    if (c == '"') {
      current_.kind = Token::Kind::kString;
      step();
      while (pos_ < text_.size() && text_[pos_] != '"') {
        current_.text.push_back(text_[pos_]);
        step();
      }
      if (pos_ >= text_.size()) throw ParseError(line_, column_, "unterminated string");
      step();
      return;
    }
    current_.kind = Token::Kind::kSymbol;
    current_.text = std::string(1, c);
    step();
  }

  void step() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1, column_ = 1;
  Token current_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) {}

  ExprPtr parse_all() {
    ExprPtr e = parse_expr();
    if (lexer_.peek().kind != Token::Kind::kEnd)
      lexer_.fail("unexpected trailing input '" + lexer_.peek().text + "'");
    return e;
  }

 private:
  static ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  bool at_symbol(const std::string& s) const {
    return lexer_.peek().kind == Token::Kind::kSymbol && lexer_.peek().text == s;
  }

  void expect_symbol(const std::string& s) {
    if (!at_symbol(s)) lexer_.fail("expected '" + s + "'");
    lexer_.take();
  }

  Int expect_number() {
    if (lexer_.peek().kind != Token::Kind::kNumber) lexer_.fail("expected a number");
    return lexer_.take().number;
  }

  ExprPtr parse_expr() {
    ExprPtr left = parse_term();
    while (at_symbol("*")) {
      lexer_.take();
      ExprPtr right = parse_term();  // named: a throw inside the braced init would leak `left`
      left = make(Expr{Compose{left, right}});
    }
    return left;
  }

  ExprPtr parse_term() {
    ExprPtr inner = parse_primary();
    while (at_symbol("^")) {
      lexer_.take();
      expect_symbol("-");
      if (expect_number() != 1) lexer_.fail("only the exponent -1 is supported");
      inner = make(Expr{Invert{inner}});
    }
    return inner;
  }

  std::vector<Int> parse_int_list() {
    expect_symbol("[");
    std::vector<Int> values;
    if (!at_symbol("]")) {
      values.push_back(expect_number());
      while (at_symbol(",")) {
        lexer_.take();
        values.push_back(expect_number());
      }
    }
    expect_symbol("]");
    return values;
  }

  Point parse_point() {
    expect_symbol("(");
    Int ray = expect_number();
    expect_symbol(",");
    Int index = expect_number();
    expect_symbol(")");
    return Point{ray, index};
  }

  std::vector<Point> parse_points() {
    expect_symbol("[");
    std::vector<Point> points;
    if (!at_symbol("]")) {
      points.push_back(parse_point());
      while (at_symbol(",")) {
        lexer_.take();
        points.push_back(parse_point());
      }
    }
    expect_symbol("]");
    return points;
  }

  std::vector<std::pair<Point, Point>> parse_pairs() {
    expect_symbol("[");
    std::vector<std::pair<Point, Point>> pairs;
    if (!at_symbol("]")) {
      while (true) {
        expect_symbol("(");
        Point from = parse_point();
        expect_symbol(",");
        Point to = parse_point();
        expect_symbol(")");
        pairs.emplace_back(from, to);
        if (!at_symbol(",")) break;
        lexer_.take();
      }
    }
    expect_symbol("]");
    return pairs;
  }

  // '(' already consumed, first number peeked: disjoint cycles.
  ExprPtr parse_cycles() {
    std::vector<std::vector<Int>> cycles;
    while (true) {
      std::vector<Int> cycle;
      while (lexer_.peek().kind == Token::Kind::kNumber) cycle.push_back(lexer_.take().number);
      if (cycle.empty()) lexer_.fail("expected cycle entries");
      expect_symbol(")");
      cycles.push_back(std::move(cycle));
      if (at_symbol("(")) {
        lexer_.take();
        if (lexer_.peek().kind != Token::Kind::kNumber) lexer_.fail("expected a cycle");
        continue;
      }
      break;
    }
    return make(Expr{PermLiteral{EPPerm::from_cycles(cycles)}});
  }

  GroupClass parse_class(const std::string& head) {
    if (head == "trivial") return GroupClass::trivial();
    if (head == "symfin") return GroupClass::symfin();
    if (head == "universe") return GroupClass::universe();
    if (head != "sym" && head != "E" && head != "H")
      lexer_.fail("expected a class literal, found '" + head + "'");
    expect_symbol("(");
    Int parameter = expect_number();
    expect_symbol(")");
    if (head == "sym") return GroupClass::sym(parameter);
    if (head == "E") return GroupClass::periodic(parameter);
    return GroupClass::houghton(parameter);
  }

  ExprPtr parse_primary() {
    const Token& tok = lexer_.peek();
    if (tok.kind == Token::Kind::kSymbol && tok.text == "(") {
      lexer_.take();
      if (lexer_.peek().kind == Token::Kind::kNumber) return parse_cycles();
      ExprPtr inner = parse_expr();
      expect_symbol(")");
      return inner;
    }
    if (tok.kind != Token::Kind::kIdent)
      lexer_.fail("expected an expression, found '" + tok.text + "'");
    std::string name = lexer_.take().text;

    if (name == "id") return make(Expr{PermLiteral{EPPerm::identity()}});
    if (name == "alpha") return make(Expr{PermLiteral{slide()}});
    if (name == "lambda") return make(Expr{PermLiteral{flip()}});
    if (name == "periodic") {
      expect_symbol("(");
      Int p = expect_number();
      expect_symbol(",");
      Int t = expect_number();
      expect_symbol(",");
      std::vector<Int> table = parse_int_list();
      expect_symbol(")");
      return make(Expr{PermLiteral{EPPerm::from_periodic(p, t, std::move(table))}});
    }
    if (name == "psi") {
      expect_symbol("[");
      Int j = expect_number();
      expect_symbol("]");
      expect_symbol("(");
      ExprPtr inner = parse_expr();
      expect_symbol(")");
      return make(Expr{Psi{j, inner}});
    }
    if (name == "insert") {
      expect_symbol("[");
      Int j = expect_number();
      expect_symbol(",");
      Int m = expect_number();
      expect_symbol("]");
      expect_symbol("(");
      ExprPtr inner = parse_expr();
      expect_symbol(")");
      return make(Expr{Insert{j, m, inner}});
    }
    if (name == "germ") {
      expect_symbol("(");
      ExprPtr inner = parse_expr();
      expect_symbol(")");
      return make(Expr{GermOf{inner}});
    }
    if (name == "file") {
      expect_symbol("(");
      if (lexer_.peek().kind != Token::Kind::kString) lexer_.fail("file() expects a path string");
      std::string path = lexer_.take().text;
      expect_symbol(")");
      return make(Expr{FileRef{path}});
    }
    if (name == "triple") {
      expect_symbol("(");
      Int n = expect_number();
      expect_symbol(",");
      if (lexer_.peek().kind != Token::Kind::kIdent) lexer_.fail("expected a class literal");
      GroupClass cls = parse_class(lexer_.take().text);
      expect_symbol(",");
      std::vector<Point> minus = parse_points();
      expect_symbol(",");
      std::vector<std::pair<Point, Point>> sigma = parse_pairs();
      expect_symbol(",");
      expect_symbol("[");
      std::vector<ExprPtr> components;
      if (!at_symbol("]")) {
        components.push_back(parse_expr());
        while (at_symbol(",")) {
          lexer_.take();
          components.push_back(parse_expr());
        }
      }
      expect_symbol("]");
      expect_symbol(",");
      std::vector<Point> plus = parse_points();
      expect_symbol(")");
      return make(Expr{TripleLiteral{n, cls, std::move(minus), std::move(sigma),
                                     std::move(components), std::move(plus)}});
    }
    if (name == "trivial" || name == "symfin" || name == "universe" || name == "sym" ||
        name == "E" || name == "H")
      return make(Expr{ClassLiteral{parse_class(name)}});
    lexer_.fail("unknown identifier '" + name + "'");
  }

  Lexer lexer_;
};

const EPPerm& as_perm(const Value& v, const char* what) {
  if (const EPPerm* g = std::get_if<EPPerm>(&v)) return *g;
  throw DomainError(std::string(what) + " expects a permutation");
}

struct Evaluator {
  Value operator()(const Compose& e) const {
    Value left = evaluate(e.left);
    Value right = evaluate(e.right);
    if (std::holds_alternative<EPPerm>(left) && std::holds_alternative<EPPerm>(right))
      return compose(std::get<EPPerm>(left), std::get<EPPerm>(right));
    if (std::holds_alternative<Triple>(left) && std::holds_alternative<Triple>(right))
      return multiply(std::get<Triple>(left), std::get<Triple>(right));
    if (std::holds_alternative<HoughtonElement>(left) &&
        std::holds_alternative<HoughtonElement>(right))
      return multiply(std::get<HoughtonElement>(left), std::get<HoughtonElement>(right));
    if (std::holds_alternative<Germ>(left) && std::holds_alternative<Germ>(right))
      return Germ(compose(std::get<Germ>(left).representative(),
                          std::get<Germ>(right).representative()));
    throw DomainError("'*' needs two values of the same kind");
  }

  Value operator()(const Invert& e) const {
    Value inner = evaluate(e.inner);
    if (std::holds_alternative<EPPerm>(inner)) return inverse(std::get<EPPerm>(inner));
    if (std::holds_alternative<Triple>(inner)) return invert_triple(std::get<Triple>(inner));
    if (std::holds_alternative<HoughtonElement>(inner))
      return inverse(std::get<HoughtonElement>(inner));
    if (std::holds_alternative<Germ>(inner))
      return Germ(inverse(std::get<Germ>(inner).representative()));
    throw DomainError("'^-1' needs an invertible value");
  }

  Value operator()(const Psi& e) const {
    Value inner = evaluate(e.inner);
    if (std::holds_alternative<EPPerm>(inner)) return psi(std::get<EPPerm>(inner), e.j);
    if (std::holds_alternative<HoughtonElement>(inner)) {
      if (e.j != 1) throw DomainError("elements only support the first shifting map");
      return psi1(std::get<HoughtonElement>(inner));
    }
    throw DomainError("psi expects a permutation or an element");
  }

  Value operator()(const Insert& e) const {
    return insert_arrow(as_perm(evaluate(e.inner), "insert"), e.j, e.m);
  }

  Value operator()(const GermOf& e) const {
    return Germ(as_perm(evaluate(e.inner), "germ"));
  }

  Value operator()(const PermLiteral& e) const { return e.value; }
  Value operator()(const ClassLiteral& e) const { return e.value; }

  Value operator()(const FileRef& e) const {
    JsonValue loaded = value_from_json_file(e.path);
    return std::visit([](auto v) -> Value { return v; }, std::move(loaded));
  }

  Value operator()(const TripleLiteral& e) const {
    std::vector<EPPerm> components;
    for (const ExprPtr& c : e.components)
      components.push_back(as_perm(evaluate(c), "triple component"));
    FiniteSet plus(e.ray_count, e.plus);
    FiniteSet minus(e.ray_count, e.minus);
    return Triple(e.ray_count, minus, SigmaMap(plus, minus, e.sigma), std::move(components),
                  plus, e.cls);
  }
};

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(text).parse_all(); }

Value evaluate(const ExprPtr& expr) { return std::visit(Evaluator{}, expr->node); }

Value evaluate(const std::string& text) { return evaluate(parse(text)); }

namespace {

std::string print_perm(const EPPerm& g) {
  std::ostringstream os;
  os << "periodic(" << g.period() << "," << g.threshold() << ",[";
  for (std::size_t i = 0; i < g.table().size(); ++i) {
    if (i) os << ",";
    os << g.table()[i];
  }
  os << "])";
  return os.str();
}

std::string print_points(const std::vector<Point>& points) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) os << ",";
    os << "(" << points[i].ray << "," << points[i].index << ")";
  }
  os << "]";
  return os.str();
}

}  // namespace

std::string print(const Value& v) {
  if (const EPPerm* g = std::get_if<EPPerm>(&v)) return print_perm(*g);
  if (const Germ* germ = std::get_if<Germ>(&v))
    return "germ(" + print_perm(germ->representative()) + ")";
  if (const GroupClass* cls = std::get_if<GroupClass>(&v)) return cls->name();
  if (const Triple* t = std::get_if<Triple>(&v)) {
    std::ostringstream os;
    os << "triple(" << t->ray_count() << "," << t->group_class().name() << ","
       << print_points(t->minus().points()) << ",[";
    const auto& pairs = t->sigma().pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (i) os << ",";
      os << "((" << pairs[i].first.ray << "," << pairs[i].first.index << "),("
         << pairs[i].second.ray << "," << pairs[i].second.index << "))";
    }
    os << "],[";
    for (std::size_t i = 0; i < t->components().size(); ++i) {
      if (i) os << ",";
      os << print_perm(t->components()[i]);
    }
    os << "]," << print_points(t->plus().points()) << ")";
    return os.str();
  }
  const HoughtonElement& e = std::get<HoughtonElement>(v);
  return "element(n=" + std::to_string(e.ray_count()) + "," + e.flat().to_string() + ")";
}

std::string cycle_preview(const EPPerm& g, Int window) {
  std::ostringstream os;
  std::vector<bool> visited(static_cast<std::size_t>(window) + 1, false);
  bool any = false;
  for (Int start = 1; start <= window; ++start) {
    if (visited[static_cast<std::size_t>(start)] || g.apply(start) == start) continue;
    // Walk the orbit; only report orbits entering the window at their
    // in-window minimum to avoid duplicates.
    std::vector<Int> orbit{start};
    visited[static_cast<std::size_t>(start)] = true;
    Int cur = g.apply(start);
    bool closed = false;
    while (cur != start) {
      if (cur > window) break;
      visited[static_cast<std::size_t>(cur)] = true;
      orbit.push_back(cur);
      cur = g.apply(cur);
    }
    closed = (cur == start);
    any = true;
    os << "(";
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      if (i) os << " ";
      os << orbit[i];
    }
    if (!closed) os << " ...";
    os << ")";
  }
  if (!any) return "()";
  return os.str();
}

}  // namespace dsl
}  // namespace shiftsim
