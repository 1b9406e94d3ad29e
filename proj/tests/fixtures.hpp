#pragma once

#include <set>
#include <vector>

#include "randsudoku/pi_matrix.hpp"
#include "randsudoku/sudoku.hpp"

namespace randsudoku::testing {

/// All (2!)^4 = 16 Pi_2 matrices.
inline std::vector<PiMatrix> all_pi2() {
  std::vector<PiMatrix> out;
  const std::vector<std::vector<std::uint32_t>> rows{{1, 2}, {2, 1}};
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<std::vector<std::uint32_t>> m;
    for (int r = 0; r < 4; ++r) m.push_back(rows[(mask >> r) & 1]);
    out.push_back(PiMatrix::from_rows(m));
  }
  return out;
}

/// The 288 Sudoku matrices of order 2, from the backtracking enumerator.
inline const std::set<SudokuMatrix>& all_sudoku2() {
  static const std::set<SudokuMatrix> all = [] {
    std::set<SudokuMatrix> s;
    enumerate_sudoku(2, [&](const SudokuMatrix& m) { s.insert(m); });
    return s;
  }();
  return all;
}

inline Grid grid(const std::vector<std::vector<std::uint32_t>>& rows) { return Grid::from_rows(rows); }

}  // namespace randsudoku::testing
