#include <gtest/gtest.h>

#include "randsudoku/io.hpp"

namespace randsudoku::io {
namespace {

std::vector<std::uint32_t> vec(std::span<const std::uint32_t> v) { return {v.begin(), v.end()}; }

TEST(ParseRowsTest, SeparatorsAndBlankLines) {
  const auto rows = parse_rows("1,2, 3\n\n  4 5\t6\r\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::uint32_t>{1, 2, 3}));
  EXPECT_EQ(rows[1], (std::vector<std::uint32_t>{4, 5, 6}));
}

TEST(ParseRowsTest, ErrorsCarryPosition) {
  try {
    parse_rows("1,2\n3,x\n");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 2, column 3"), std::string::npos);
  }
  try {
    parse_rows("1,,2");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(parse_rows("1,2,"), ParseError);
  EXPECT_THROW(parse_rows("  \n\n"), ParseError);
  EXPECT_THROW(parse_rows("99999999999"), ParseError);
  EXPECT_THROW(parse_rows("-1"), ParseError);
}

TEST(ParseRowBlocksTest, SplitsOnBlankLines) {
  const auto blocks = parse_row_blocks("1 0\n0 1\n\n\n0 1\n1 0\n");
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[1][0], (std::vector<std::uint32_t>{0, 1}));
}

TEST(PermutationIoTest, RoundTrip) {
  RandomSource src(1);
  for (std::uint32_t n = 1; n <= 30; ++n) {
    const auto p = gen_perm_direct(n, src);
    EXPECT_EQ(vec(parse_tuple(format_permutation(p)).values()), vec(p.values()));
    EXPECT_EQ(vec(parse_tuple(to_json(p).dump()).values()), vec(p.values()));
  }
  EXPECT_EQ(format_permutation(Permutation({3, 1, 2})), "3,1,2");
  EXPECT_EQ(to_json(Permutation({3, 1, 2})), nlohmann::json::parse(R"({"n":3,"values":[3,1,2]})"));
  EXPECT_EQ(vec(parse_tuple("[2,2]").values()), (std::vector<std::uint32_t>{2, 2}));
  EXPECT_THROW(parse_tuple("1,2\n2,1"), ParseError);
  EXPECT_THROW(parse_tuple("{\"values\": [1, \"a\"]}"), ParseError);
  EXPECT_THROW(parse_tuple("{broken"), ParseError);
  EXPECT_THROW(parse_tuple("1,3"), InvalidArgument);
}

TEST(PiIoTest, RoundTrip) {
  RandomSource src(2);
  for (std::uint32_t n = 1; n <= 8; ++n) {
    const auto p = gen_pi_direct(n, src);
    EXPECT_EQ(PiMatrix::from_rows(parse_pi_rows(format_pi(p))), p);
    EXPECT_EQ(PiMatrix::from_rows(parse_pi_rows(to_json(p).dump())), p);
  }
  const auto p = PiMatrix::from_rows({{1, 2}, {2, 1}, {2, 1}, {1, 2}});
  EXPECT_EQ(format_pi(p), "1,2\n2,1\n2,1\n1,2\n");
  EXPECT_EQ(to_json(p), nlohmann::json::parse(R"({"n":2,"rows":[[1,2],[2,1],[2,1],[1,2]]})"));
  EXPECT_THROW(parse_pi_rows(R"({"cells":[[1]]})"), ParseError);
}

TEST(SigmaIoTest, RoundTrip) {
  RandomSource src(3);
  for (std::uint32_t n = 1; n <= 6; ++n) {
    const auto a = phi(gen_pi_direct(n, src));
    EXPECT_EQ(SigmaMatrix(parse_binary(format_sigma(a))), a);
    EXPECT_EQ(SigmaMatrix(parse_binary(to_json(a).dump())), a);
  }
  const auto a = phi(PiMatrix::from_rows({{1, 2}, {2, 1}, {2, 1}, {1, 2}}));
  const auto j = to_json(a);
  EXPECT_EQ(j.at("n"), 2);
  ASSERT_EQ(j.at("ones").size(), 4u);
  // Ones are listed in row order.
  for (std::size_t k = 1; k < 4; ++k) EXPECT_LT(j["ones"][k - 1][0], j["ones"][k][0]);
}

TEST(SigmaIoTest, BinaryErrors) {
  try {
    parse_binary("0 1\n1 2\n");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_binary("0 1\n1\n"), InvalidArgument);
  EXPECT_THROW(parse_binary(R"({"n":2,"ones":[[5,1]]})"), ParseError);
  EXPECT_THROW(parse_binary(R"({"n":2})"), ParseError);
}

TEST(SigmaIoTest, ListRoundTrip) {
  RandomSource src(4);
  const auto s = gen_sudoku(3, src).matrix;
  const auto layers = decompose(s);
  const auto text = format_sigma_list(layers);
  const auto parsed = parse_binary_list(text);
  ASSERT_EQ(parsed.size(), 9u);
  for (std::size_t k = 0; k < 9; ++k) EXPECT_EQ(parsed[k], layers[k].bits());
  const auto from_json = parse_binary_list(to_json(layers).dump());
  ASSERT_EQ(from_json.size(), 9u);
  for (std::size_t k = 0; k < 9; ++k) EXPECT_EQ(from_json[k], layers[k].bits());
}

TEST(SudokuIoTest, RoundTripAndPretty) {
  RandomSource src(5);
  for (std::uint32_t n = 1; n <= 3; ++n) {
    const auto s = gen_sudoku(n, src).matrix;
    EXPECT_EQ(SudokuMatrix(parse_grid(format_sudoku(s))), s);
    EXPECT_EQ(SudokuMatrix(parse_grid(format_sudoku(s, true))), s);
    EXPECT_EQ(SudokuMatrix(parse_grid(to_json(s).dump())), s);
  }
  const SudokuMatrix s(Grid::from_rows({{1, 2, 3, 4}, {3, 4, 1, 2}, {2, 1, 4, 3}, {4, 3, 2, 1}}));
  EXPECT_EQ(format_sudoku(s), "1 2 3 4\n3 4 1 2\n2 1 4 3\n4 3 2 1\n");
  EXPECT_EQ(format_sudoku(s, true), "1 2  3 4\n3 4  1 2\n\n2 1  4 3\n4 3  2 1\n");
  EXPECT_EQ(to_json(s).at("cells")[2], nlohmann::json::parse("[2,1,4,3]"));
}

TEST(StatsIoTest, Schema) {
  RandomSource src(6);
  const auto r = gen_sudoku(2, src);
  const auto j = stats_to_json(r.stats);
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("n"), 2);
  EXPECT_EQ(j.at("rejections_per_layer").size(), 4u);
  for (const char* key : {"restarts", "backtracks", "candidates"}) EXPECT_TRUE(j.contains(key));
  for (const char* key : {"draw", "map", "check", "wall"}) EXPECT_TRUE(j.at("time_ms").contains(key));
}

TEST(ReportIoTest, EstimateFormats) {
  RandomSource src(7);
  const auto r = estimate_p(GeneratorId::kPermRejection, 3, 1000, src);
  const auto j = to_json(r);
  EXPECT_EQ(j.at("generator"), "perm-rejection");
  EXPECT_EQ(j.at("theoretical_acceptance"), "2/9");
  EXPECT_EQ(j.at("accepted"), r.accepted);
  const auto csv = format_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "generator,n,samples,accepted,empirical,theoretical,std_error,z_score,"
            "mean_iteration_ns,mean_check_ns,seed");
  EXPECT_NE(format_table(r).find("2/9"), std::string::npos);
}

}  // namespace
}  // namespace randsudoku::io
