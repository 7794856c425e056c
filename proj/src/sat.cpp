#include "monoxp/sat.hpp"

#include "monoxp/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace monoxp::sat {

namespace {

std::size_t var_of(Literal lit) { return static_cast<std::size_t>(std::abs(lit)); }

} // namespace

Clause::Clause(std::initializer_list<Literal> literals) : Clause(std::vector<Literal>(literals)) {}

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::set<std::size_t> vars;
  for (auto lit : literals_) {
    if (lit == 0) throw InputError("literal 0 is not a variable");
    if (!vars.insert(var_of(lit)).second) {
      throw InputError("variable " + std::to_string(var_of(lit)) + " occurs twice in a clause");
    }
  }
}

bool Clause::satisfied_by(const std::vector<bool> &model) const {
  return std::any_of(literals_.begin(), literals_.end(), [&](Literal lit) {
    const auto v = var_of(lit);
    return v <= model.size() && model[v - 1] == (lit > 0);
  });
}

void CnfFormula::add_clause(Clause clause) {
  for (auto lit : clause.literals()) {
    if (var_of(lit) > num_vars_) {
      throw InputError("literal " + std::to_string(lit) + " outside variables 1.." +
                       std::to_string(num_vars_));
    }
  }
  clauses_.push_back(std::move(clause));
}

bool CnfFormula::satisfied_by(const std::vector<bool> &model) const {
  if (model.size() != num_vars_) return false;
  return std::all_of(clauses_.begin(), clauses_.end(),
                     [&](const Clause &c) { return c.satisfied_by(model); });
}

std::string to_dimacs(const CnfFormula &formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  for (const auto &c : formula.clauses()) {
    for (auto lit : c.literals()) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

namespace {

class Search {
public:
  Search(const CnfFormula &formula, bool default_value, SolverStats &stats)
      : n_(formula.num_vars()), default_value_(default_value), stats_(stats),
        value_(n_ + 1, unassigned), watches_(2 * (n_ + 1)) {
    for (const auto &c : formula.clauses()) clauses_.push_back(c.literals());
  }

  SolveResult run() {
    if (!attach()) return {};
    for (;;) {
      if (!propagate()) {
        ++stats_.conflicts;
        if (!backtrack()) return {};
        continue;
      }
      const auto var = next_unassigned();
      if (var == 0) break;
      ++stats_.decisions;
      decisions_.push_back({trail_.size(), var, false});
      enqueue(default_value_ ? Literal(var) : -Literal(var));
    }
    SolveResult out{true, std::vector<bool>(n_)};
    for (std::size_t v = 1; v <= n_; ++v) out.model[v - 1] = value_[v] == 1;
    return out;
  }

private:
  static constexpr signed char unassigned = -1;

  struct Decision {
    std::size_t trail_pos;
    std::size_t var;
    bool flipped;
  };

  static std::size_t code(Literal lit) { return 2 * var_of(lit) + (lit < 0 ? 1 : 0); }

  [[nodiscard]] bool is_true(Literal lit) const {
    const auto v = value_[var_of(lit)];
    return v != unassigned && (v == 1) == (lit > 0);
  }
  [[nodiscard]] bool is_false(Literal lit) const {
    const auto v = value_[var_of(lit)];
    return v != unassigned && (v == 1) != (lit > 0);
  }

  // Returns false on an immediate conflict.
  bool enqueue(Literal lit) {
    if (is_false(lit)) return false;
    if (is_true(lit)) return true;
    value_[var_of(lit)] = lit > 0 ? 1 : 0;
    trail_.push_back(lit);
    return true;
  }

  // Installs watches and asserts unit clauses at the root.
  bool attach() {
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      const auto &c = clauses_[ci];
      if (c.empty()) return false;
      if (c.size() == 1) {
        if (!enqueue(c[0])) return false;
        continue;
      }
      watches_[code(c[0])].push_back(ci);
      watches_[code(c[1])].push_back(ci);
    }
    return true;
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      const Literal falsified = -trail_[qhead_++];
      auto &ws = watches_[code(falsified)];
      for (std::size_t k = 0; k < ws.size();) {
        auto &c = clauses_[ws[k]];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (is_true(c[0])) {
          ++k;
          continue;
        }
        bool moved = false;
        for (std::size_t j = 2; j < c.size(); ++j) {
          if (!is_false(c[j])) {
            std::swap(c[1], c[j]);
            watches_[code(c[1])].push_back(ws[k]);
            ws[k] = ws.back();
            ws.pop_back();
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ++stats_.propagations;
        if (!enqueue(c[0])) return false;
        ++k;
      }
    }
    return true;
  }

  void undo_to(std::size_t pos) {
    while (trail_.size() > pos) {
      value_[var_of(trail_.back())] = unassigned;
      trail_.pop_back();
    }
    qhead_ = pos;
  }

  // Flips the most recent untried decision; false when the search space is exhausted.
  bool backtrack() {
    while (!decisions_.empty() && decisions_.back().flipped) decisions_.pop_back();
    if (decisions_.empty()) return false;
    auto &d = decisions_.back();
    undo_to(d.trail_pos);
    d.flipped = true;
    enqueue(default_value_ ? -Literal(d.var) : Literal(d.var));
    return true;
  }

  [[nodiscard]] std::size_t next_unassigned() const {
    for (std::size_t v = 1; v <= n_; ++v) {
      if (value_[v] == unassigned) return v;
    }
    return 0;
  }

  std::size_t n_;
  bool default_value_;
  SolverStats &stats_;
  std::vector<std::vector<Literal>> clauses_;
  std::vector<signed char> value_;
  std::vector<std::vector<std::size_t>> watches_;
  std::vector<Literal> trail_;
  std::size_t qhead_ = 0;
  std::vector<Decision> decisions_;
};

} // namespace

SolveResult Solver::solve(const CnfFormula &formula) {
  ++stats_.solves;
  return Search(formula, options_.default_value, stats_).run();
}

} // namespace monoxp::sat
