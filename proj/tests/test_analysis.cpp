#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "randsudoku/analysis.hpp"
#include "randsudoku/errors.hpp"

namespace randsudoku {
namespace {

BigInt repeated_product(std::uint64_t base, std::uint64_t times) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < times; ++i) r *= base;
  return r;
}

TEST(ClosedFormTest, Examples) {
  EXPECT_EQ(closed_form_p(GeneratorId::kPermRejection, 3), Rational(2, 9));
  EXPECT_EQ(closed_form_p(GeneratorId::kPiRejection, 2), Rational(1, 16));
  EXPECT_EQ(closed_form_p(GeneratorId::kSigmaRejection, 2), Rational(16, 65536));
  EXPECT_EQ(closed_form_p(GeneratorId::kSigmaRejection, 1), Rational(1, 2));
  EXPECT_EQ(closed_form_p(GeneratorId::kSudokuRejection, 1), Rational(1));
  // 4x4 grid: 16 cells over 4 values.
  EXPECT_EQ(closed_form_p(GeneratorId::kSudokuRejection, 2), Rational(288, repeated_product(4, 16)));
  for (std::uint32_t n : {1u, 5u, 40u}) {
    EXPECT_EQ(closed_form_p(GeneratorId::kPermDirect, n), Rational(1));
    EXPECT_EQ(closed_form_p(GeneratorId::kPiDirect, n), Rational(1));
  }
}

TEST(ClosedFormTest, SigmaThreeIsExact) {
  std::ostringstream os;
  os << sigma3();
  EXPECT_EQ(os.str(), "6670903752021072936960");
  EXPECT_EQ(sudoku_count(2), 288);
  EXPECT_THROW(sudoku_count(4), UnknownSigma);
  EXPECT_THROW(closed_form_p(GeneratorId::kSudokuRejection, 4), UnknownSigma);

  const Rational p6 = closed_form_p(GeneratorId::kSudokuRejection, 3);
  const BigInt nine_pow_81 = repeated_product(9, 81);
  EXPECT_EQ(p6 * nine_pow_81, Rational(sigma3()));
  EXPECT_EQ(p6, Rational(sigma3(), nine_pow_81));
  EXPECT_LT(p6, Rational(1, BigInt("1000000000000000000000000000000000000000000000000000000")));
}

// p * |U| == |V| as big integers, with |U| and |V| built by plain loops.
TEST(ClosedFormTest, AlgebraicIdentities) {
  for (std::uint32_t n = 1; n <= 12; ++n) {
    BigInt fact = 1;
    for (std::uint32_t k = 1; k <= n; ++k) fact *= k;
    BigInt fact_2n = 1;
    for (std::uint32_t i = 0; i < 2 * n; ++i) fact_2n *= fact;
    EXPECT_EQ(closed_form_p(GeneratorId::kPermRejection, n) * Rational(repeated_product(n, n)),
              Rational(fact));
    EXPECT_EQ(closed_form_p(GeneratorId::kPiRejection, n) *
                  Rational(repeated_product(n, 2ull * n * n)),
              Rational(fact_2n));
    if (n <= 6) {
      EXPECT_EQ(closed_form_p(GeneratorId::kSigmaRejection, n) *
                    Rational(repeated_product(2, 1ull * n * n * n * n)),
                Rational(fact_2n));
    }
  }
  for (std::uint32_t n = 1; n <= 3; ++n) {
    EXPECT_EQ(closed_form_p(GeneratorId::kSudokuRejection, n) *
                  Rational(repeated_product(1ull * n * n, 1ull * n * n * n * n)),
              Rational(sudoku_count(n)));
  }
}

TEST(ClosedFormTest, Names) {
  for (auto id : all_generators()) EXPECT_EQ(parse_generator(to_string(id)), id);
  EXPECT_FALSE(parse_generator("bogus"));
  EXPECT_EQ(parse_bench_target("perm-check"), BenchTarget::kPermCheck);
  EXPECT_EQ(parse_bench_target("perm-direct-swap"), BenchTarget::kPermDirectSwap);
}

TEST(EstimateTest, PermRejectionConvergesForSmallOrders) {
  for (std::uint32_t n = 2; n <= 5; ++n) {
    RandomSource src(100 + n);
    const auto r = estimate_p(GeneratorId::kPermRejection, n, 100000, src);
    EXPECT_EQ(r.samples, 100000u);
    EXPECT_LE(r.z_score(), 3.0) << "n=" << n << " empirical " << r.empirical();
    EXPECT_GE(r.empirical(), 0.0);
    EXPECT_LE(r.empirical(), 1.0);
  }
}

TEST(EstimateTest, DirectGeneratorsNeverReject) {
  RandomSource src(5);
  for (std::uint32_t n : {1u, 3u, 10u}) {
    for (auto id : {GeneratorId::kPermDirect, GeneratorId::kPiDirect}) {
      const auto r = estimate_p(id, n, 1000, src);
      EXPECT_EQ(r.accepted, r.samples);
      EXPECT_EQ(r.empirical(), 1.0);
      EXPECT_EQ(r.z_score(), 0.0);
    }
  }
}

TEST(EstimateTest, ReportFields) {
  RandomSource src(6);
  const auto r = estimate_p(GeneratorId::kPermRejection, 2, 10000, src);
  EXPECT_EQ(r.seed, 6u);
  EXPECT_EQ(r.theoretical, Rational(1, 2));
  EXPECT_NEAR(r.std_error(), std::sqrt(r.empirical() * (1 - r.empirical()) / 10000), 1e-15);
  EXPECT_LE(r.z_score(), 3.0);
  EXPECT_GT(r.mean_iteration_time.count(), 0);
  EXPECT_LE(r.mean_check_time.count(), r.mean_iteration_time.count());
}

TEST(EstimateTest, Errors) {
  RandomSource src(7);
  EXPECT_THROW(estimate_p(GeneratorId::kPermRejection, 3, 99, src), InvalidArgument);
  EXPECT_THROW(estimate_p(GeneratorId::kPermRejection, 0, 1000, src), InvalidArgument);
  EXPECT_THROW(estimate_p(GeneratorId::kSigmaRejection, 3, 1000, src), Infeasible);
  EXPECT_THROW(estimate_p(GeneratorId::kSudokuRejection, 3, 1000, src), Infeasible);
  EXPECT_THROW(estimate_p(GeneratorId::kSudokuRejection, 5, 1000, src), Infeasible);
}

TEST(EstimateTest, ShardedMatchesShardSum) {
  const auto merged = estimate_p_sharded(GeneratorId::kPermRejection, 3, 10001, 77, 3);
  std::uint64_t accepted = 0;
  for (std::uint32_t w = 0; w < 3; ++w) {
    RandomSource src(derive_seed(77, w));
    const std::uint64_t share = 10001 / 3 + (w < 10001 % 3 ? 1 : 0);
    // Run the shard's attempts through the single-threaded estimator.
    accepted += estimate_p(GeneratorId::kPermRejection, 3, share, src).accepted;
  }
  EXPECT_EQ(merged.accepted, accepted);
  EXPECT_EQ(merged.samples, 10001u);
  EXPECT_LE(merged.z_score(), 3.0);
}

// For every generator at a feasible order, at least 99 of 100 fixed-seed
// runs land within 3 sigma of the closed form.
TEST(EstimateTest, FixedSeedPanel) {
  struct Case {
    GeneratorId id;
    std::uint32_t n;
    std::uint64_t samples;
  };
  const std::vector<Case> cases{
      {GeneratorId::kPermRejection, 3, 2000}, {GeneratorId::kPermRejection, 5, 2000},
      {GeneratorId::kPermDirect, 6, 200},     {GeneratorId::kPiRejection, 2, 2000},
      {GeneratorId::kPiDirect, 3, 200},       {GeneratorId::kSigmaRejection, 1, 2000},
      {GeneratorId::kSigmaRejection, 2, 100000}, {GeneratorId::kSudokuRejection, 1, 200},
      {GeneratorId::kSudokuRejection, 2, 20000},
  };
  for (const auto& c : cases) {
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RandomSource src(seed);
      within += estimate_p(c.id, c.n, c.samples, src).z_score() <= 3.0;
    }
    EXPECT_GE(within, 99) << to_string(c.id) << " n=" << c.n;
  }
}

TEST(FitSlopeTest, ExactOnPowerLaw) {
  std::vector<double> x, y;
  for (double n : {16.0, 32.0, 64.0, 128.0}) {
    x.push_back(std::log(n));
    y.push_back(std::log(5.0 * n * n * n));
  }
  const auto fit = fit_slope(x, y);
  EXPECT_NEAR(fit.slope, 3.0, 1e-12);
  EXPECT_NEAR(fit.low, 3.0, 1e-9);
  EXPECT_NEAR(fit.high, 3.0, 1e-9);
  EXPECT_THROW(fit_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), InvalidArgument);
}

TEST(DoublingRangeTest, Values) {
  EXPECT_EQ(doubling_range(64, 1024), (std::vector<std::uint32_t>{64, 128, 256, 512, 1024}));
  EXPECT_EQ(doubling_range(3, 20), (std::vector<std::uint32_t>{3, 6, 12}));
  EXPECT_THROW(doubling_range(0, 4), InvalidArgument);
}

TEST(BenchTest, SmokeAndErrors) {
  RandomSource src(8);
  const std::vector<std::uint32_t> ns{64, 128, 256};
  BenchOptions options;
  options.min_batch_time = std::chrono::microseconds(20);
  const auto table = bench_tau(BenchTarget::kPermCheck, ns, src, options);
  ASSERT_EQ(table.rows.size(), 3u);
  for (const auto& row : table.rows) {
    EXPECT_GT(row.median_ns, 0);
    EXPECT_GE(row.batch, 1u);
  }
  EXPECT_LE(table.slope_low, table.slope);
  EXPECT_GE(table.slope_high, table.slope);
  // Linear check: the exponent is nowhere near 2.
  EXPECT_LT(table.slope, 1.6);

  options.repetitions = 29;
  EXPECT_THROW(bench_tau(BenchTarget::kPermCheck, ns, src, options), InvalidArgument);
  options.repetitions = 30;
  EXPECT_THROW(bench_tau(BenchTarget::kPermCheck, std::vector<std::uint32_t>{64}, src, options),
               InvalidArgument);
}

TEST(BenchTest, EveryTargetRuns) {
  RandomSource src(9);
  BenchOptions options;
  options.min_batch_time = std::chrono::microseconds(5);
  options.warmup = 1;
  for (auto name : {"perm-rejection", "perm-direct", "perm-direct-swap", "pi-rejection",
                    "pi-direct", "sigma-rejection", "sudoku-rejection", "perm-check",
                    "sigma-check", "sudoku-check"}) {
    const auto target = parse_bench_target(name);
    ASSERT_TRUE(target) << name;
    const auto table = bench_tau(*target, std::vector<std::uint32_t>{2, 4}, src, options);
    EXPECT_EQ(table.rows.size(), 2u) << name;
  }
}

}  // namespace
}  // namespace randsudoku
