#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace randsudoku {

// Bad input: wrong order, out-of-range value, malformed matrix.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A rejection loop or restart policy ran out of its configured budget.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested (generator, n) pair cannot finish in any reasonable time.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The Sudoku count for this order is not known in closed form.
class UnknownSigma : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// compose() was given layers that overlap or leave a cell uncovered.
// Coordinates are 1-based global (row, column).
class CompositionError : public std::runtime_error {
 public:
  CompositionError(const std::string& what, std::size_t row, std::size_t col)
      : std::runtime_error(what), row_(row), col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

}  // namespace randsudoku
