#include "randsudoku/cli.hpp"

#include <algorithm>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "randsudoku/analysis.hpp"
#include "randsudoku/io.hpp"

namespace randsudoku::cli {

namespace {

using nlohmann::json;

enum class Format { kText, kJson, kCsv };

struct Options {
  std::uint32_t n = 0;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  std::string algorithm;
  std::string variant = "shift";
  std::optional<std::uint64_t> max_iterations;
  // gen-sudoku
  std::string policy = "restart";
  std::optional<std::uint64_t> restart_budget;
  std::optional<std::uint64_t> max_restarts;
  std::uint32_t parallel = 1;
  bool pretty = false;
  bool stats = false;
  // check
  std::string kind;
  // enumerate
  bool list = false;
  // estimate / bench
  std::string generator;
  std::uint64_t samples = 10000;
  std::uint32_t workers = 1;
  std::uint32_t repetitions = 30;
  std::uint32_t n_min = 0;
  std::uint32_t n_max = 0;
  std::vector<std::uint32_t> n_values;
  // map
  bool phi = false;
  bool phi_inverse = false;
};

// Signals a validation failure (exit 1) after the verdict has been printed.
struct Invalid {
  std::string message;
};

Format format_of(const Options& o) {
  if (o.format == "json") return Format::kJson;
  if (o.format == "csv") return Format::kCsv;
  return Format::kText;
}

void require_matrix_format(const Options& o) {
  if (format_of(o) == Format::kCsv) {
    throw CLI::ValidationError("--format", "csv is only available for estimate and bench");
  }
}

void require_n(const Options& o) {
  if (o.n == 0) throw CLI::ValidationError("--n", "a positive --n is required");
}

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

RandomSource make_source(const Options& o, std::ostream& err) {
  const std::uint64_t seed = o.seed ? *o.seed : entropy_seed();
  err << "seed: " << seed << '\n';
  return RandomSource(seed);
}

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

int cmd_gen_perm(const Options& o, std::ostream& out, std::ostream& err) {
  require_n(o);
  require_matrix_format(o);
  auto source = make_source(o, err);
  std::optional<Permutation> perm;
  if (o.algorithm == "rejection") {
    auto r = gen_perm_rejection(o.n, source, o.max_iterations);
    err << "iterations: " << r.iterations << '\n';
    perm = std::move(r.perm);
  } else {
    perm = gen_perm_direct(o.n, source,
                           o.variant == "swap" ? DirectVariant::kSwapWithLast : DirectVariant::kShift);
  }
  if (format_of(o) == Format::kJson) {
    emit(out, io::to_json(*perm));
  } else {
    out << io::format_permutation(*perm) << '\n';
  }
  return kOk;
}

int cmd_gen_pi(const Options& o, std::ostream& out, std::ostream& err) {
  require_n(o);
  require_matrix_format(o);
  auto source = make_source(o, err);
  std::optional<PiMatrix> pi;
  if (o.algorithm == "rejection") {
    auto r = gen_pi_rejection(o.n, source, o.max_iterations);
    err << "iterations: " << r.iterations << '\n';
    pi = std::move(r.matrix);
  } else {
    pi = gen_pi_direct(o.n, source);
  }
  if (format_of(o) == Format::kJson) {
    emit(out, io::to_json(*pi));
  } else {
    out << io::format_pi(*pi);
  }
  return kOk;
}

int cmd_gen_sigma(const Options& o, std::ostream& out, std::ostream& err) {
  require_n(o);
  require_matrix_format(o);
  auto source = make_source(o, err);
  std::optional<SigmaMatrix> sigma;
  if (o.algorithm == "rejection") {
    auto r = gen_sigma_rejection(o.n, source, o.max_iterations);
    err << "iterations: " << r.iterations << '\n';
    sigma = std::move(r.matrix);
  } else {
    sigma = phi(gen_pi_direct(o.n, source));
  }
  if (format_of(o) == Format::kJson) {
    emit(out, io::to_json(*sigma));
  } else {
    out << io::format_sigma(*sigma);
  }
  return kOk;
}

int cmd_gen_sudoku(const Options& o, std::ostream& out, std::ostream& err) {
  require_n(o);
  require_matrix_format(o);
  const std::uint64_t seed = o.seed ? *o.seed : entropy_seed();
  err << "seed: " << seed << '\n';
  std::optional<SudokuMatrix> matrix;
  if (o.algorithm == "rejection") {
    RandomSource source(seed);
    auto r = gen_sudoku_rejection(o.n, source, o.max_iterations);
    err << "iterations: " << r.iterations << '\n';
    matrix = std::move(r.matrix);
  } else {
    RestartPolicy policy;
    policy.mode = o.policy == "backtrack" ? RestartPolicy::Mode::kBacktrack
                                          : RestartPolicy::Mode::kRestart;
    policy.max_consecutive_rejections = o.restart_budget;
    policy.max_restarts = o.max_restarts;
    try {
      auto r = gen_sudoku_parallel(o.n, seed, o.parallel, policy);
      if (o.stats) {
        json s = io::stats_to_json(r.result.stats);
        s["seed"] = seed;
        s["attempt"] = r.attempt;
        s["attempt_seed"] = r.seed;
        s["parallel"] = o.parallel;
        emit(err, s);
      }
      matrix = std::move(r.result.matrix);
    } catch (const SudokuBudgetExhausted& e) {
      if (o.stats) emit(err, io::stats_to_json(e.stats()));
      throw;
    }
  }
  if (format_of(o) == Format::kJson) {
    emit(out, io::to_json(*matrix));
  } else {
    out << io::format_sudoku(*matrix, o.pretty);
  }
  return kOk;
}

int cmd_check(const Options& o, std::istream& in, std::ostream& out) {
  const std::string text = read_all(in);
  bool ok = false;
  std::string reason;
  if (o.kind == "perm") {
    ok = is_permutation(io::parse_tuple(text));
  } else if (o.kind == "pi") {
    const auto rows = io::parse_pi_rows(text);
    if (rows.size() % 2 != 0) {
      reason = "a Pi matrix needs an even number of rows";
    } else {
      const auto n = static_cast<std::uint32_t>(rows.size() / 2);
      ok = true;
      for (std::size_t r = 0; r < rows.size() && ok; ++r) {
        if (rows[r].size() != n) {
          ok = false;
          reason = "row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                   " entries, expected " + std::to_string(n);
        } else {
          ok = is_permutation(Tuple(rows[r]));
        }
      }
    }
  } else if (o.kind == "sigma") {
    ok = is_sigma(io::parse_binary(text));
  } else {
    ok = is_sudoku(io::parse_grid(text));
  }
  if (format_of(o) == Format::kJson) {
    json j = {{"kind", o.kind}, {"valid", ok}};
    if (!reason.empty()) j["reason"] = reason;
    emit(out, j);
  } else {
    out << (ok ? "valid" : "invalid") << '\n';
  }
  return ok ? kOk : kInvalid;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  require_n(o);
  require_matrix_format(o);
  const bool as_json = format_of(o) == Format::kJson;
  json matrices = json::array();
  bool first = true;
  std::function<void(const SudokuMatrix&)> visit;
  if (o.list) {
    visit = [&](const SudokuMatrix& s) {
      if (as_json) {
        matrices.push_back(io::to_json(s)["cells"]);
      } else {
        if (!first) out << '\n';
        out << io::format_sudoku(s);
        first = false;
      }
    };
  }
  const std::uint64_t count = enumerate_sudoku(o.n, visit);
  if (as_json) {
    json j = {{"n", o.n}, {"count", count}};
    if (o.list) j["matrices"] = matrices;
    emit(out, j);
  } else if (!o.list) {
    out << count << '\n';
  }
  return kOk;
}

int cmd_estimate(const Options& o, std::ostream& out, std::ostream& err) {
  require_n(o);
  const auto id = parse_generator(o.generator);
  if (!id) throw CLI::ValidationError("--generator", "unknown generator '" + o.generator + "'");
  std::optional<EvalReport> report;
  if (o.workers > 1) {
    const std::uint64_t seed = o.seed ? *o.seed : entropy_seed();
    err << "seed: " << seed << '\n';
    report = estimate_p_sharded(*id, o.n, o.samples, seed, o.workers);
  } else {
    auto source = make_source(o, err);
    report = estimate_p(*id, o.n, o.samples, source);
  }
  switch (format_of(o)) {
    case Format::kJson: emit(out, io::to_json(*report)); break;
    case Format::kCsv: out << io::format_csv(*report); break;
    case Format::kText: out << io::format_table(*report); break;
  }
  return kOk;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  const auto target = parse_bench_target(o.generator);
  if (!target) throw CLI::ValidationError("--generator", "unknown target '" + o.generator + "'");
  std::vector<std::uint32_t> ns = o.n_values;
  if (ns.empty()) {
    if (o.n_min == 0 || o.n_max < o.n_min) {
      throw CLI::ValidationError("--n-min/--n-max", "give --n-values or 1 <= --n-min <= --n-max");
    }
    ns = doubling_range(o.n_min, o.n_max);
  }
  auto source = make_source(o, err);
  BenchOptions options;
  options.repetitions = o.repetitions;
  const auto table = bench_tau(*target, ns, source, options);
  switch (format_of(o)) {
    case Format::kJson: emit(out, io::to_json(table)); break;
    case Format::kCsv: out << io::format_csv(table); break;
    case Format::kText: out << io::format_table(table); break;
  }
  return kOk;
}

int cmd_map(const Options& o, std::istream& in, std::ostream& out) {
  require_matrix_format(o);
  const std::string text = read_all(in);
  const bool as_json = format_of(o) == Format::kJson;
  if (o.phi) {
    const auto rows = io::parse_pi_rows(text);
    std::optional<PiMatrix> p;
    try {
      p = PiMatrix::from_rows(rows);
    } catch (const io::ParseError&) {
      throw;
    } catch (const InvalidArgument& e) {
      throw Invalid{std::string("not a Pi matrix: ") + e.what()};
    }
    const auto a = phi(*p);
    if (as_json) {
      emit(out, io::to_json(a));
    } else {
      out << io::format_sigma(a);
    }
  } else {
    const auto b = io::parse_binary(text);
    if (!detail::block_order(b.size())) {
      throw io::ParseError("matrix side " + std::to_string(b.size()) + " is not a perfect square",
                           0, 0);
    }
    if (!is_sigma(b)) throw Invalid{"not a block permutation matrix"};
    const auto p = phi_inverse(SigmaMatrix(b));
    if (as_json) {
      emit(out, io::to_json(p));
    } else {
      out << io::format_pi(p);
    }
  }
  return kOk;
}

int cmd_decompose(const Options& o, std::istream& in, std::ostream& out) {
  require_matrix_format(o);
  const Grid g = io::parse_grid(read_all(in));
  if (!detail::block_order(g.size())) {
    throw io::ParseError("matrix side " + std::to_string(g.size()) + " is not a perfect square", 0,
                         0);
  }
  if (!is_sudoku(g)) throw Invalid{"not a Sudoku matrix"};
  const auto layers = decompose(SudokuMatrix(g));
  if (format_of(o) == Format::kJson) {
    emit(out, io::to_json(layers));
  } else {
    out << io::format_sigma_list(layers);
  }
  return kOk;
}

int cmd_compose(const Options& o, std::istream& in, std::ostream& out) {
  require_matrix_format(o);
  const auto blocks = io::parse_binary_list(read_all(in));
  std::vector<SigmaMatrix> layers;
  layers.reserve(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (!detail::block_order(blocks[k].size())) {
      throw io::ParseError("layer " + std::to_string(k + 1) + " has side " +
                               std::to_string(blocks[k].size()) + ", not a perfect square",
                           0, 0);
    }
    if (!is_sigma(blocks[k])) {
      throw Invalid{"layer " + std::to_string(k + 1) + " is not a block permutation matrix"};
    }
    layers.emplace_back(blocks[k]);
  }
  std::optional<SudokuMatrix> s;
  try {
    s = compose(layers);
  } catch (const CompositionError& e) {
    throw Invalid{e.what()};
  } catch (const InvalidArgument& e) {
    throw Invalid{e.what()};
  }
  if (format_of(o) == Format::kJson) {
    emit(out, io::to_json(*s));
  } else {
    out << io::format_sudoku(*s, o.pretty);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Random permutations, Pi matrices, block permutation matrices and Sudoku matrices"};
  app.name("randsudoku");
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> formats{"text", "json", "csv"};
  auto add_common = [&](CLI::App* sub, bool needs_n, bool randomized) {
    if (needs_n) sub->add_option("--n", o.n, "Order n")->required()->check(CLI::PositiveNumber);
    if (randomized) sub->add_option("--seed", o.seed, "64-bit seed (drawn from entropy if absent)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
  };

  auto* gen_perm = app.add_subcommand("gen-perm", "Generate a random permutation");
  add_common(gen_perm, true, true);
  gen_perm->add_option("--algorithm", o.algorithm, "rejection or direct")
      ->check(CLI::IsMember({"rejection", "direct"}))
      ->default_str("direct");
  gen_perm->add_option("--variant", o.variant, "Deletion step of the direct generator")
      ->check(CLI::IsMember({"shift", "swap"}));
  gen_perm->add_option("--max-iterations", o.max_iterations, "Attempt budget for rejection");

  auto* gen_pi = app.add_subcommand("gen-pi", "Generate a random Pi matrix");
  add_common(gen_pi, true, true);
  gen_pi->add_option("--algorithm", o.algorithm, "rejection or direct")
      ->check(CLI::IsMember({"rejection", "direct"}));
  gen_pi->add_option("--max-iterations", o.max_iterations, "Attempt budget for rejection");

  auto* gen_sigma = app.add_subcommand("gen-sigma", "Generate a random block permutation matrix");
  add_common(gen_sigma, true, true);
  gen_sigma->add_option("--algorithm", o.algorithm, "rejection or direct (phi of a random Pi)")
      ->check(CLI::IsMember({"rejection", "direct"}));
  gen_sigma->add_option("--max-iterations", o.max_iterations, "Attempt budget for rejection");

  auto* gen_sudoku = app.add_subcommand("gen-sudoku", "Generate a random Sudoku matrix");
  add_common(gen_sudoku, true, true);
  gen_sudoku->add_option("--algorithm", o.algorithm, "direct (layered, default) or rejection")
      ->check(CLI::IsMember({"rejection", "direct"}));
  gen_sudoku->add_option("--policy", o.policy, "Dead-end handling")
      ->check(CLI::IsMember({"restart", "backtrack"}));
  gen_sudoku->add_option("--restart-budget", o.restart_budget,
                         "Consecutive rejections per layer before restarting (default 10000*n)")
      ->check(CLI::PositiveNumber);
  gen_sudoku->add_option("--max-restarts", o.max_restarts, "Restart budget (default unlimited)");
  gen_sudoku->add_option("--parallel", o.parallel, "Independent attempts run in parallel")
      ->check(CLI::Range(1u, 256u));
  gen_sudoku->add_option("--max-iterations", o.max_iterations, "Attempt budget for rejection");
  gen_sudoku->add_flag("--pretty", o.pretty, "Separate blocks visually");
  gen_sudoku->add_flag("--stats", o.stats, "Print generation statistics as JSON on stderr");

  auto* check = app.add_subcommand("check", "Validate a matrix read from stdin");
  add_common(check, false, false);
  check->add_option("--kind", o.kind, "perm, pi, sigma or sudoku")
      ->required()
      ->check(CLI::IsMember({"perm", "pi", "sigma", "sudoku"}));

  auto* enumerate = app.add_subcommand("enumerate", "Count (and optionally list) Sudoku matrices");
  add_common(enumerate, true, false);
  enumerate->add_flag("--list", o.list, "Print every matrix");

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo acceptance probability");
  add_common(estimate, true, true);
  estimate->add_option("--generator", o.generator, "Generator id")->required();
  estimate->add_option("--samples", o.samples, "Attempts to run")->check(CLI::Range(100ull, ~0ull));
  estimate->add_option("--workers", o.workers, "Threads (samples are sharded)")
      ->check(CLI::Range(1u, 256u));

  auto* bench = app.add_subcommand("bench", "Time one iteration across a range of n");
  add_common(bench, false, true);
  bench->add_option("--generator", o.generator, "Bench target")->required();
  bench->add_option("--n-min", o.n_min, "Smallest n of a doubling range");
  bench->add_option("--n-max", o.n_max, "Largest n of a doubling range");
  bench->add_option("--n-values", o.n_values, "Explicit list of n")->delimiter(',');
  bench->add_option("--repetitions", o.repetitions, "Timed repetitions per n")
      ->check(CLI::Range(30u, 1000000u));

  auto* map = app.add_subcommand("map", "Apply phi or its inverse to a matrix on stdin");
  add_common(map, false, false);
  auto* phi_flag = map->add_flag("--phi", o.phi, "Pi matrix -> block permutation matrix");
  auto* inv_flag =
      map->add_flag("--phi-inverse", o.phi_inverse, "Block permutation matrix -> Pi matrix");
  phi_flag->excludes(inv_flag);
  map->require_option(1);

  auto* decompose_cmd = app.add_subcommand("decompose", "Split a Sudoku matrix into its layers");
  add_common(decompose_cmd, false, false);

  auto* compose_cmd = app.add_subcommand("compose", "Combine n^2 disjoint layers into a Sudoku");
  add_common(compose_cmd, false, false);
  compose_cmd->add_flag("--pretty", o.pretty, "Separate blocks visually");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*gen_perm) return cmd_gen_perm(o, out, err);
    if (*gen_pi) return cmd_gen_pi(o, out, err);
    if (*gen_sigma) return cmd_gen_sigma(o, out, err);
    if (*gen_sudoku) return cmd_gen_sudoku(o, out, err);
    if (*check) return cmd_check(o, in, out);
    if (*enumerate) return cmd_enumerate(o, out);
    if (*estimate) return cmd_estimate(o, out, err);
    if (*bench) return cmd_bench(o, out, err);
    if (*map) return cmd_map(o, in, out);
    if (*decompose_cmd) return cmd_decompose(o, in, out);
    if (*compose_cmd) return cmd_compose(o, in, out);
  } catch (const Invalid& e) {
    err << "invalid: " << e.message << '\n';
    return kInvalid;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kInfeasible;
  } catch (const UnknownSigma& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  }
  return kUsage;
}

}  // namespace randsudoku::cli
