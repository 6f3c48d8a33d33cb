#pragma once

#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wearopt/domain.hpp"
#include "wearopt/dp.hpp"
#include "wearopt/errors.hpp"

namespace wearopt {

/// Shortest round-trip decimal form of a double (deterministic output).
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

struct LpTerm {
  double coeff;
  std::string var;
};

struct LpConstraint {
  std::string name;
  std::vector<LpTerm> terms;
  double rhs = 0.0;  // all constraints are <= rhs
};

struct LpModel {
  std::vector<std::string> objective_vars;  // maximization of their sum
  std::vector<LpConstraint> constraints;
};

inline std::string lp_var_name(int d1, int d2) {
  return "u_" + std::to_string(d1) + "_" + std::to_string(d2);
}

/// Linear program whose optimum is the DP fixed point: maximize the sum of
/// all state values subject to one inequality per admissible action per
/// state. Value iteration is the solver used in-tree; the LP is exported
/// for cross-validation with external tools.
inline LpModel build_lp(const RateTable& rates, const CostModel& costs, const Limits& limits) {
  limits.validate();
  rates.validate(limits);
  costs.validate();
  const detail::SuccessorTable succ(rates, limits);
  const int l1 = limits.l1, l2 = limits.l2;
  const double alpha = costs.alpha;

  LpModel lp;
  for (int d1 = 0; d1 <= l1; ++d1)
    for (int d2 = 0; d2 <= l2; ++d2) lp.objective_vars.push_back(lp_var_name(d1, d2));

  auto add = [&](const std::string& name, int d1, int d2, int from1, int from2, double rhs) {
    // u(d1,d2) - alpha * u(succ(from1,from2)) <= rhs, coefficients merged
    // when the successor is the state itself
    std::map<std::pair<int, int>, double> coeffs;
    coeffs[{d1, d2}] += 1.0;
    if (alpha != 0.0) {
      const size_t i = succ.idx(from1, from2);
      coeffs[{succ.s1[i], succ.s2[i]}] -= alpha;
    }
    LpConstraint c;
    c.name = name;
    c.rhs = rhs;
    for (const auto& [state, coeff] : coeffs)
      if (coeff != 0.0) c.terms.push_back({coeff, lp_var_name(state.first, state.second)});
    lp.constraints.push_back(std::move(c));
  };

  for (int d1 = 0; d1 <= l1; ++d1) {
    for (int d2 = 0; d2 <= l2; ++d2) {
      const bool lim1 = d1 == l1;
      const bool lim2 = d2 == l2;
      const std::string suffix = "_" + std::to_string(d1) + "_" + std::to_string(d2);
      if (!lim1 && !lim2) add("p" + suffix, d1, d2, d1, d2, 0.0);
      if (!lim2) add("r1" + suffix, d1, d2, 0, d2, costs.c1);
      if (!lim1) add("r2" + suffix, d1, d2, d1, 0, costs.c2);
      add("rb" + suffix, d1, d2, 0, 0, costs.v);
    }
  }
  return lp;
}

inline void write_lp(std::ostream& os, const LpModel& lp) {
  os << "Maximize\n obj:";
  int on_line = 0;
  for (size_t i = 0; i < lp.objective_vars.size(); ++i) {
    if (on_line == 12) {  // wrap long objective rows
      os << "\n     ";
      on_line = 0;
    }
    os << (i == 0 ? " " : " + ") << lp.objective_vars[i];
    ++on_line;
  }
  os << "\nSubject To\n";
  for (const auto& c : lp.constraints) {
    os << " " << c.name << ":";
    for (size_t i = 0; i < c.terms.size(); ++i) {
      const double coeff = c.terms[i].coeff;
      if (coeff < 0)
        os << " - ";
      else
        os << (i == 0 ? " " : " + ");
      const double mag = coeff < 0 ? -coeff : coeff;
      if (mag != 1.0) os << format_double(mag) << " ";
      os << c.terms[i].var;
    }
    os << " <= " << format_double(c.rhs) << "\n";
  }
  os << "End\n";
}

/// Reader for the writer's own output, used for structural round-trips.
inline LpModel parse_lp(std::istream& is) {
  LpModel lp;
  std::string line;
  enum class Section { None, Objective, Constraints, Done } section = Section::None;
  std::string pending;  // accumulated objective text

  auto parse_objective = [&](const std::string& text) {
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok)
      if (tok != "+" && tok != "obj:") lp.objective_vars.push_back(tok);
  };

  auto parse_constraint = [&](const std::string& text) {
    std::istringstream ss(text);
    std::string name;
    ss >> name;
    if (name.empty() || name.back() != ':') throw ValidationError("lp: constraint name missing ':'");
    name.pop_back();
    LpConstraint c;
    c.name = name;
    double sign = 1.0;
    double coeff = 1.0;
    bool have_coeff = false;
    std::string tok;
    while (ss >> tok) {
      if (tok == "+") {
        sign = 1.0;
      } else if (tok == "-") {
        sign = -1.0;
      } else if (tok == "<=") {
        ss >> tok;
        c.rhs = std::stod(tok);
        break;
      } else if (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '.') {
        coeff = std::stod(tok);
        have_coeff = true;
      } else {
        c.terms.push_back({sign * (have_coeff ? coeff : 1.0), tok});
        sign = 1.0;
        coeff = 1.0;
        have_coeff = false;
      }
    }
    lp.constraints.push_back(std::move(c));
  };

  while (std::getline(is, line)) {
    if (!line.empty() && line[0] == '\\') continue;  // comment
    if (line == "Maximize") {
      section = Section::Objective;
      continue;
    }
    if (line == "Subject To") {
      parse_objective(pending);
      section = Section::Constraints;
      continue;
    }
    if (line == "End") {
      section = Section::Done;
      continue;
    }
    if (section == Section::Objective)
      pending += " " + line;
    else if (section == Section::Constraints && !line.empty())
      parse_constraint(line);
  }
  if (section != Section::Done) throw ValidationError("lp: missing End marker");
  return lp;
}

}  // namespace wearopt
