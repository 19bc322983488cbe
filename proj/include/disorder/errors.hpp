#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace disorder {

// Malformed model input: a kernel row does not sum to 1 within tolerance.
class NonStochasticRow : public std::runtime_error {
 public:
  NonStochasticRow(int row_, double sum_)
      : std::runtime_error("kernel row " + std::to_string(row_) + " sums to " +
                           std::to_string(sum_) + ", expected 1"),
        row(row_),
        sum(sum_) {}
  int row;
  double sum;
};

class NegativeEntry : public std::runtime_error {
 public:
  NegativeEntry(int row_, int col_, double value_)
      : std::runtime_error("kernel entry (" + std::to_string(row_) + "," +
                           std::to_string(col_) + ") is negative: " +
                           std::to_string(value_)),
        row(row_),
        col(col_),
        value(value_) {}
  int row;
  int col;
  double value;
};

// The observed transition has zero probability under the current posterior:
// the model cannot generate the supplied path.
class ZeroLikelihood : public std::runtime_error {
 public:
  ZeroLikelihood(int x_prev_, int x_next_)
      : std::runtime_error("transition " + std::to_string(x_prev_) + " -> " +
                           std::to_string(x_next_) +
                           " has zero likelihood under both regimes"),
        x_prev(x_prev_),
        x_next(x_next_) {}
  int x_prev;
  int x_next;
};

class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(int iterations_, double residual_)
      : std::runtime_error("value iteration did not converge after " +
                           std::to_string(iterations_) +
                           " iterations, residual " + std::to_string(residual_)),
        iterations(iterations_),
        residual(residual_) {}
  int iterations;
  double residual;
};

// Simple-game axiom violations. Coalitions are reported as bitmasks.
class NotMonotone : public std::runtime_error {
 public:
  NotMonotone(std::uint32_t winning_subset_, std::uint32_t losing_superset_)
      : std::runtime_error("coalition mask " + std::to_string(winning_subset_) +
                           " wins but its superset " +
                           std::to_string(losing_superset_) + " loses"),
        winning_subset(winning_subset_),
        losing_superset(losing_superset_) {}
  std::uint32_t winning_subset;
  std::uint32_t losing_superset;
};

class EmptyWins : public std::runtime_error {
 public:
  EmptyWins() : std::runtime_error("the empty coalition must lose") {}
};

class FullLoses : public std::runtime_error {
 public:
  FullLoses() : std::runtime_error("the full coalition must win") {}
};

class TreeTooLarge : public std::runtime_error {
 public:
  TreeTooLarge(std::size_t nodes_, std::size_t budget_)
      : std::runtime_error("exact evaluation tree exceeds budget: " +
                           std::to_string(nodes_) + " > " +
                           std::to_string(budget_)),
        nodes(nodes_),
        budget(budget_) {}
  std::size_t nodes;
  std::size_t budget;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t states_, std::size_t limit_)
      : std::runtime_error("joint grid has " + std::to_string(states_) +
                           " states, limit " + std::to_string(limit_)),
        states(states_),
        limit(limit_) {}
  std::size_t states;
  std::size_t limit;
};

// Best-response iteration revisited a profile and no value comparison could
// break the tie. Not expected to occur; kept loud on purpose.
class CycleUnresolved : public std::runtime_error {
 public:
  CycleUnresolved() : std::runtime_error("best-response cycle unresolved") {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file_, int line_, const std::string& what_)
      : std::runtime_error(file_ + ":" + std::to_string(line_) + ": " + what_),
        file(std::move(file_)),
        line(line_) {}
  std::string file;
  int line;
};

}  // namespace disorder
