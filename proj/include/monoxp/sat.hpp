#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace monoxp::sat {

/// Signed variable index, DIMACS style: +i is u_i, -i is not u_i.
using Literal = int;

/// Disjunction of literals. No variable occurs twice; the empty clause is allowed.
class Clause {
public:
  Clause() = default;
  Clause(std::initializer_list<Literal> literals);
  explicit Clause(std::vector<Literal> literals);

  [[nodiscard]] const std::vector<Literal> &literals() const { return literals_; }
  [[nodiscard]] std::size_t size() const { return literals_.size(); }
  [[nodiscard]] bool empty() const { return literals_.empty(); }
  [[nodiscard]] bool satisfied_by(const std::vector<bool> &model) const;

  friend bool operator==(const Clause &, const Clause &) = default;

private:
  std::vector<Literal> literals_;
};

/// Append-only CNF over variables 1..num_vars.
class CnfFormula {
public:
  explicit CnfFormula(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  /// Throws InputError if a literal names a variable outside 1..num_vars.
  void add_clause(Clause clause);

  [[nodiscard]] std::size_t num_vars() const { return num_vars_; }
  [[nodiscard]] const std::vector<Clause> &clauses() const { return clauses_; }
  [[nodiscard]] std::size_t num_clauses() const { return clauses_.size(); }
  /// model[i] is the value of variable i + 1.
  [[nodiscard]] bool satisfied_by(const std::vector<bool> &model) const;

private:
  std::size_t num_vars_;
  std::vector<Clause> clauses_;
};

/// `p cnf` header followed by one zero-terminated clause per line.
std::string to_dimacs(const CnfFormula &formula);

struct SolverOptions {
  /// Value tried first for every decision; also the value unconstrained
  /// variables end up with.
  bool default_value = false;
};

struct SolveResult {
  bool satisfiable = false;
  /// model[i] is the value of variable i + 1; empty when unsatisfiable.
  std::vector<bool> model;

  explicit operator bool() const { return satisfiable; }
};

struct SolverStats {
  std::uint64_t solves = 0;
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
};

/// Complete DPLL search with two-watched-literal unit propagation and
/// chronological backtracking. Branches on the smallest unassigned
/// variable, so results are a deterministic function of the formula.
class Solver {
public:
  explicit Solver(SolverOptions options = {}) : options_(options) {}

  SolveResult solve(const CnfFormula &formula);

  [[nodiscard]] const SolverStats &stats() const { return stats_; }
  [[nodiscard]] const SolverOptions &options() const { return options_; }

private:
  SolverOptions options_;
  SolverStats stats_;
};

} // namespace monoxp::sat
