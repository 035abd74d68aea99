#include "shiftsim/classes.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "shiftsim/shift.hpp"

namespace shiftsim {

GroupClass GroupClass::sym(Int m) {
  if (m < 1) throw DomainError("sym(m) needs m >= 1");
  return GroupClass(Kind::kSym, m);
}

GroupClass GroupClass::periodic(Int p) {
  if (p < 1) throw DomainError("E(p) needs p >= 1");
  return GroupClass(Kind::kPeriodic, p);
}

GroupClass GroupClass::houghton(Int n) {
  if (n < 1) throw DomainError("H(n) needs n >= 1");
  return GroupClass(Kind::kHoughton, n);
}

bool GroupClass::contains(const EPPerm& g) const {
  switch (kind_) {
    case Kind::kTrivial:
      return g.is_identity();
    case Kind::kSym: {
      if (!g.has_finite_support()) return false;
      for (Int i = 1; i <= g.threshold(); ++i)
        if (g.apply(i) != i && (i > parameter_ || g.apply(i) > parameter_)) return false;
      return true;
    }
    case Kind::kSymFin:
      return g.has_finite_support();
    case Kind::kPeriodic:
      return parameter_ % g.period() == 0;
    case Kind::kHoughton: {
      if (parameter_ % g.period() != 0) return false;
      // Residues preserved past the threshold; the window decides.
      for (Int j = std::max<Int>(1, g.threshold() - g.period() + 1); j <= g.threshold(); ++j)
        if ((g.apply(j) - j) % parameter_ != 0) return false;
      return true;
    }
    case Kind::kUniverse:
      return true;
  }
  return false;
}

bool GroupClass::is_infinite() const {
  return kind_ != Kind::kTrivial && kind_ != Kind::kSym;
}

bool GroupClass::strongly_closed() const {
  switch (kind_) {
    case Kind::kSymFin:
    case Kind::kPeriodic:
    case Kind::kHoughton:
    case Kind::kUniverse:
      return true;
    default:
      return false;
  }
}

std::string GroupClass::name() const {
  switch (kind_) {
    case Kind::kTrivial: return "trivial";
    case Kind::kSym: return "sym(" + std::to_string(parameter_) + ")";
    case Kind::kSymFin: return "symfin";
    case Kind::kPeriodic: return "E(" + std::to_string(parameter_) + ")";
    case Kind::kHoughton: return "H(" + std::to_string(parameter_) + ")";
    case Kind::kUniverse: return "universe";
  }
  return "?";
}

GroupClass GroupClass::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "trivial") return trivial();
  if (s == "symfin") return symfin();
  if (s == "universe") return universe();
  auto parametric = [&](const std::string& prefix) -> std::optional<Int> {
    if (s.size() <= prefix.size() + 1 || s.compare(0, prefix.size(), prefix) != 0 ||
        s[prefix.size()] != '(' || s.back() != ')')
      return std::nullopt;
    std::string digits = s.substr(prefix.size() + 1, s.size() - prefix.size() - 2);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }))
      return std::nullopt;
    return std::stoll(digits);
  };
  if (auto m = parametric("sym")) return sym(*m);
  if (auto p = parametric("E")) return periodic(*p);
  if (auto n = parametric("H")) return houghton(*n);
  throw DomainError("unknown class literal: " + text);
}

EPPerm section_into_stabilizer(const GroupClass& cls, const EPPerm& g, Int j) {
  if (!cls.strongly_closed() || !cls.is_infinite())
    throw DomainError("class " + cls.name() + " does not support arrow insertion");
  if (!cls.contains(g)) throw DomainError("element is not in " + cls.name());
  EPPerm h = insert_arrow(g, j, j);
  if (!cls.contains(h)) throw Error("internal: arrow insertion left " + cls.name());
  return h;
}

std::string FalsifierReport::to_string() const {
  std::ostringstream os;
  if (violation_found) {
    os << "violation: psi[" << source_j << "](" << source->to_string() << ") = "
       << witness->to_string() << " is not a word of bounded length in the generators";
  } else if (truncated) {
    os << "truncated: frontier cap reached at " << frontier_size << " elements, no violation found";
  } else {
    os << "no violation found (frontier size " << frontier_size << ")";
  }
  return os.str();
}

FalsifierReport closure_falsifier(const std::vector<EPPerm>& elements, Int j_bound, Int depth,
                                  const ResourceLimits& limits) {
  FalsifierReport report;

  std::vector<EPPerm> gens;
  for (const auto& g : elements) {
    if (g.is_identity()) continue;
    gens.push_back(g);
    gens.push_back(inverse(g));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  // Ball of the given word-length radius.
  std::set<EPPerm> ball{EPPerm::identity()};
  std::vector<EPPerm> layer{EPPerm::identity()};
  for (Int r = 0; r < depth && !layer.empty(); ++r) {
    std::vector<EPPerm> next;
    for (const auto& w : layer) {
      for (const auto& s : gens) {
        EPPerm candidate = compose(w, s);
        if (ball.size() >= limits.max_elements) {
          report.truncated = true;
          report.frontier_size = ball.size();
          return report;
        }
        if (ball.insert(candidate).second) next.push_back(candidate);
      }
    }
    layer = std::move(next);
  }
  report.frontier_size = ball.size();

  for (const auto& g : ball) {
    for (Int j = 1; j <= j_bound; ++j) {
      EPPerm image = psi(g, j);
      if (!ball.count(image)) {
        report.violation_found = true;
        report.witness = image;
        report.source = g;
        report.source_j = j;
        return report;
      }
    }
  }
  return report;
}

}  // namespace shiftsim
