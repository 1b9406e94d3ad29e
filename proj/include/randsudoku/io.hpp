#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "randsudoku/analysis.hpp"
#include "randsudoku/errors.hpp"
#include "randsudoku/perm.hpp"
#include "randsudoku/pi_matrix.hpp"
#include "randsudoku/sigma_matrix.hpp"
#include "randsudoku/sudoku.hpp"

namespace randsudoku::io {

/// Malformed input text. line/column are 1-based; 0 means "not applicable".
class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// True if the first non-blank character opens a JSON value.
bool looks_like_json(std::string_view text);

/// Rows of unsigned integers separated by commas and/or whitespace. Blank
/// lines are skipped.
std::vector<std::vector<std::uint32_t>> parse_rows(std::string_view text);

/// Splits on blank lines and parses each chunk with parse_rows.
std::vector<std::vector<std::vector<std::uint32_t>>> parse_row_blocks(std::string_view text);

// Permutations: "3,1,2".
std::string format_permutation(const Permutation& p);
nlohmann::json to_json(const Permutation& p);
/// Accepts "3,1,2" or {"n":3,"values":[3,1,2]} / [3,1,2]. Values must be in
/// 1..n; duplicates are allowed (the result is a candidate, not a
/// permutation).
Tuple parse_tuple(std::string_view text);

// Pi matrices: 2n lines of comma-separated values, or {"n":n,"rows":[...]}.
std::string format_pi(const PiMatrix& p);
nlohmann::json to_json(const PiMatrix& p);
/// Raw rows; shape and permutation checks are left to the caller.
std::vector<std::vector<std::uint32_t>> parse_pi_rows(std::string_view text);

// Sigma / binary matrices: n^2 lines of n^2 space-separated 0/1 digits, or
// {"n":n,"ones":[[i,j],...]} with 1-based coordinates sorted by row.
std::string format_binary(const BinaryMatrix& b);
std::string format_sigma(const SigmaMatrix& a);
nlohmann::json to_json(const SigmaMatrix& a);
BinaryMatrix binary_from_json(const nlohmann::json& j);
BinaryMatrix parse_binary(std::string_view text);
/// Several matrices separated by blank lines, or
/// {"n":n,"layers":[{"n":n,"ones":[...]}, ...]}.
std::vector<BinaryMatrix> parse_binary_list(std::string_view text);
std::string format_sigma_list(const std::vector<SigmaMatrix>& layers);
nlohmann::json to_json(const std::vector<SigmaMatrix>& layers);

// Sudoku matrices: n^2 lines of n^2 space-separated values; with `pretty`,
// block columns are separated by two spaces and block rows by a blank line.
// JSON: {"n":n,"cells":[[...],...]}.
std::string format_sudoku(const SudokuMatrix& s, bool pretty = false);
nlohmann::json to_json(const SudokuMatrix& s);
Grid parse_grid(std::string_view text);

nlohmann::json stats_to_json(const SudokuStats& stats);

nlohmann::json to_json(const EvalReport& r);
std::string format_table(const EvalReport& r);
std::string format_csv(const EvalReport& r);

nlohmann::json to_json(const BenchTable& t);
std::string format_table(const BenchTable& t);
std::string format_csv(const BenchTable& t);

}  // namespace randsudoku::io
