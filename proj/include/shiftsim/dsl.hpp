#ifndef SHIFTSIM_DSL_HPP
#define SHIFTSIM_DSL_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "shiftsim/houghton.hpp"

namespace shiftsim {
namespace dsl {

// Grammar (LL(1), whitespace-insensitive):
//   expr    := term ('*' term)*                      composition, left associative
//   term    := primary ('^' '-' '1')*                postfix inverse, binds tighter than '*'
//   primary := 'id' | 'alpha' | 'lambda'
//            | cycles                                 e.g. (1 3)(2 5 6 4), finite support only
//            | 'periodic' '(' int ',' int ',' intlist ')'
//            | 'psi' '[' int ']' '(' expr ')'
//            | 'insert' '[' int ',' int ']' '(' expr ')'
//            | 'germ' '(' expr ')'
//            | 'triple' '(' int ',' class ',' points ',' pairs ',' '[' expr,* ']' ',' points ')'
//            | 'file' '(' string ')'                  JSON element reference
//            | class
//            | '(' expr ')'                           grouping (next token not a number)
//   class   := 'trivial' | 'symfin' | 'universe' | 'sym(int)' | 'E(int)' | 'H(int)'
//   points  := '[' ('(' int ',' int ')'),* ']'
//   pairs   := '[' ('(' point ',' point ')'),* ']'

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Compose { ExprPtr left, right; };
struct Invert { ExprPtr inner; };
struct Psi { Int j; ExprPtr inner; };
struct Insert { Int j, m; ExprPtr inner; };
struct GermOf { ExprPtr inner; };
struct PermLiteral { EPPerm value; };
struct ClassLiteral { GroupClass value; };
struct FileRef { std::string path; };
struct TripleLiteral {
  Int ray_count;
  GroupClass cls;
  std::vector<Point> minus;
  std::vector<std::pair<Point, Point>> sigma;
  std::vector<ExprPtr> components;
  std::vector<Point> plus;
};

struct Expr {
  std::variant<Compose, Invert, Psi, Insert, GermOf, PermLiteral, ClassLiteral, FileRef,
               TripleLiteral>
      node;
};

ExprPtr parse(const std::string& text);

using Value = std::variant<EPPerm, Germ, GroupClass, Triple, HoughtonElement>;

Value evaluate(const ExprPtr& expr);
Value evaluate(const std::string& text);

// Canonical textual form; parse(print(v)) evaluates back to v for
// permutations, germs, classes and triples.
std::string print(const Value& v);

// Cycle-decomposition preview of the restriction to [1..window]; orbits
// leaving the window are printed with a trailing arrow.
std::string cycle_preview(const EPPerm& g, Int window);

}  // namespace dsl
}  // namespace shiftsim

#endif
