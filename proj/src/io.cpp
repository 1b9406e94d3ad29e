#include "randsudoku/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <iomanip>
#include <limits>
#include <sstream>

namespace randsudoku::io {

using nlohmann::json;

namespace {

std::string located(const std::string& message, std::size_t line, std::size_t column) {
  if (line == 0) return message;
  std::string where = "line " + std::to_string(line);
  if (column != 0) where += ", column " + std::to_string(column);
  return where + ": " + message;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    auto line = text.substr(start, end == std::string_view::npos ? std::string_view::npos
                                                                   : end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return lines;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

std::vector<std::uint32_t> parse_line(std::string_view line, std::size_t line_no) {
  std::vector<std::uint32_t> values;
  std::size_t i = 0;
  bool expect_value = true;  // after a comma a value must follow
  bool saw_comma = false;
  while (i < line.size()) {
    const unsigned char c = static_cast<unsigned char>(line[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == ',') {
      if (expect_value) throw ParseError("unexpected ','", line_no, i + 1);
      expect_value = true;
      saw_comma = true;
      ++i;
      continue;
    }
    if (!std::isdigit(c)) {
      throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'",
                       line_no, i + 1);
    }
    const std::size_t col = i + 1;
    std::uint64_t v = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
      v = v * 10 + static_cast<std::uint64_t>(line[i] - '0');
      if (v > std::numeric_limits<std::uint32_t>::max()) {
        throw ParseError("number too large", line_no, col);
      }
      ++i;
    }
    values.push_back(static_cast<std::uint32_t>(v));
    expect_value = false;
  }
  if (saw_comma && expect_value) throw ParseError("trailing ','", line_no, line.size());
  return values;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0, 0);
  }
}

std::vector<std::vector<std::uint32_t>> json_rows(const json& j, const char* key) {
  const json* rows = &j;
  if (j.is_object()) {
    if (!j.contains(key)) throw ParseError(std::string("JSON object has no \"") + key + "\"", 0, 0);
    rows = &j.at(key);
  }
  try {
    return rows->get<std::vector<std::vector<std::uint32_t>>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("\"") + key + "\" must be a list of lists of integers: " +
                         e.what(),
                     0, 0);
  }
}

std::string join(std::span<const std::uint32_t> values, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : InvalidArgument(located(message, line, column)), line_(line), column_(column) {}

bool looks_like_json(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

std::vector<std::vector<std::uint32_t>> parse_rows(std::string_view text) {
  std::vector<std::vector<std::uint32_t>> rows;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_blank(lines[i])) continue;
    rows.push_back(parse_line(lines[i], i + 1));
  }
  if (rows.empty()) throw ParseError("no matrix rows in input", 0, 0);
  return rows;
}

std::vector<std::vector<std::vector<std::uint32_t>>> parse_row_blocks(std::string_view text) {
  std::vector<std::vector<std::vector<std::uint32_t>>> blocks;
  std::vector<std::vector<std::uint32_t>> current;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_blank(lines[i])) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
      continue;
    }
    current.push_back(parse_line(lines[i], i + 1));
  }
  if (!current.empty()) blocks.push_back(std::move(current));
  if (blocks.empty()) throw ParseError("no matrices in input", 0, 0);
  return blocks;
}

// ---- permutations ----

std::string format_permutation(const Permutation& p) { return join(p.values(), ","); }

json to_json(const Permutation& p) {
  return {{"n", p.n()}, {"values", std::vector<std::uint32_t>(p.values().begin(), p.values().end())}};
}

Tuple parse_tuple(std::string_view text) {
  std::vector<std::uint32_t> values;
  if (looks_like_json(text)) {
    const json j = parse_json(text);
    try {
      values = (j.is_object() ? j.at("values") : j).get<std::vector<std::uint32_t>>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("expected a list of integers: ") + e.what(), 0, 0);
    }
  } else {
    const auto rows = parse_rows(text);
    if (rows.size() != 1) {
      throw ParseError("a permutation is a single line, got " + std::to_string(rows.size()), 0, 0);
    }
    values = rows.front();
  }
  return Tuple(std::move(values));
}

// ---- Pi matrices ----

std::string format_pi(const PiMatrix& p) {
  std::string out;
  for (std::uint32_t r = 1; r <= p.rows(); ++r) {
    out += join(p.row(r), ",");
    out += '\n';
  }
  return out;
}

json to_json(const PiMatrix& p) {
  json rows = json::array();
  for (std::uint32_t r = 1; r <= p.rows(); ++r) {
    rows.push_back(std::vector<std::uint32_t>(p.row(r).begin(), p.row(r).end()));
  }
  return {{"n", p.n()}, {"rows", rows}};
}

std::vector<std::vector<std::uint32_t>> parse_pi_rows(std::string_view text) {
  if (looks_like_json(text)) return json_rows(parse_json(text), "rows");
  return parse_rows(text);
}

// ---- binary / Sigma matrices ----

std::string format_binary(const BinaryMatrix& b) {
  std::string out;
  const std::uint32_t m = b.size();
  out.reserve(static_cast<std::size_t>(m) * 2 * m);
  for (std::uint32_t i = 1; i <= m; ++i) {
    for (std::uint32_t j = 1; j <= m; ++j) {
      if (j > 1) out += ' ';
      out += b.get(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

std::string format_sigma(const SigmaMatrix& a) { return format_binary(a.bits()); }

json to_json(const SigmaMatrix& a) {
  json ones = json::array();
  for (const auto& [i, j] : a.ones()) ones.push_back({i, j});
  return {{"n", a.n()}, {"ones", ones}};
}

BinaryMatrix binary_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("ones")) {
    throw ParseError("expected {\"n\": n, \"ones\": [[i, j], ...]}", 0, 0);
  }
  std::uint32_t n = 0;
  std::vector<std::array<std::uint32_t, 2>> ones;
  try {
    n = j.at("n").get<std::uint32_t>();
    ones = j.at("ones").get<std::vector<std::array<std::uint32_t, 2>>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad Sigma JSON: ") + e.what(), 0, 0);
  }
  if (n == 0 || n > 256) throw ParseError("\"n\" must be in 1..256", 0, 0);
  const std::uint32_t m = n * n;
  BinaryMatrix b(m);
  for (std::size_t k = 0; k < ones.size(); ++k) {
    const auto [i, jj] = ones[k];
    if (i < 1 || i > m || jj < 1 || jj > m) {
      throw ParseError("\"ones\" entry " + std::to_string(k + 1) + " is outside 1.." +
                           std::to_string(m),
                       0, 0);
    }
    b.set(i, jj);
  }
  return b;
}

BinaryMatrix parse_binary(std::string_view text) {
  if (looks_like_json(text)) return binary_from_json(parse_json(text));
  const auto lines = split_lines(text);
  std::vector<std::vector<std::uint32_t>> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_blank(lines[i])) continue;
    rows.push_back(parse_line(lines[i], i + 1));
    const auto& row = rows.back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] > 1) {
        throw ParseError("entry " + std::to_string(c + 1) + " is " + std::to_string(row[c]) +
                             ", expected 0 or 1",
                         i + 1, 0);
      }
    }
  }
  if (rows.empty()) throw ParseError("no matrix rows in input", 0, 0);
  return BinaryMatrix::from_rows(rows);
}

std::vector<BinaryMatrix> parse_binary_list(std::string_view text) {
  std::vector<BinaryMatrix> out;
  if (looks_like_json(text)) {
    const json j = parse_json(text);
    const json* layers = &j;
    if (j.is_object()) {
      if (!j.contains("layers")) throw ParseError("JSON object has no \"layers\"", 0, 0);
      layers = &j.at("layers");
    }
    if (!layers->is_array()) throw ParseError("\"layers\" must be an array", 0, 0);
    for (const auto& layer : *layers) out.push_back(binary_from_json(layer));
    return out;
  }
  for (const auto& block : parse_row_blocks(text)) out.push_back(BinaryMatrix::from_rows(block));
  return out;
}

std::string format_sigma_list(const std::vector<SigmaMatrix>& layers) {
  std::string out;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    if (k) out += '\n';
    out += format_sigma(layers[k]);
  }
  return out;
}

json to_json(const std::vector<SigmaMatrix>& layers) {
  json arr = json::array();
  for (const auto& l : layers) arr.push_back(to_json(l));
  return {{"n", layers.empty() ? 0u : layers.front().n()}, {"layers", arr}};
}

// ---- Sudoku matrices ----

std::string format_sudoku(const SudokuMatrix& s, bool pretty) {
  const std::uint32_t n = s.n();
  const std::uint32_t m = s.size();
  std::string out;
  for (std::uint32_t i = 1; i <= m; ++i) {
    if (pretty && i > 1 && (i - 1) % n == 0) out += '\n';
    for (std::uint32_t j = 1; j <= m; ++j) {
      if (j > 1) out += (pretty && (j - 1) % n == 0) ? "  " : " ";
      out += std::to_string(s.at(i, j));
    }
    out += '\n';
  }
  return out;
}

json to_json(const SudokuMatrix& s) {
  json rows = json::array();
  const std::uint32_t m = s.size();
  for (std::uint32_t i = 1; i <= m; ++i) {
    auto row = s.grid().cells().subspan(static_cast<std::size_t>(i - 1) * m, m);
    rows.push_back(std::vector<std::uint32_t>(row.begin(), row.end()));
  }
  return {{"n", s.n()}, {"cells", rows}};
}

Grid parse_grid(std::string_view text) {
  const auto rows = looks_like_json(text) ? json_rows(parse_json(text), "cells") : parse_rows(text);
  return Grid::from_rows(rows);
}

json stats_to_json(const SudokuStats& stats) {
  auto ms = [](std::chrono::nanoseconds d) { return static_cast<double>(d.count()) / 1e6; };
  return {
      {"schema_version", SudokuStats::kSchemaVersion},
      {"n", stats.n},
      {"rejections_per_layer", stats.rejections},
      {"restarts", stats.restarts},
      {"backtracks", stats.backtracks},
      {"candidates", stats.candidates},
      {"time_ms",
       {{"draw", ms(stats.draw_time)},
        {"map", ms(stats.map_time)},
        {"check", ms(stats.check_time)},
        {"wall", ms(stats.wall_time)}}},
  };
}

// ---- reports ----

json to_json(const EvalReport& r) {
  return {
      {"generator", std::string(to_string(r.generator))},
      {"n", r.n},
      {"samples", r.samples},
      {"accepted", r.accepted},
      {"empirical_acceptance", r.empirical()},
      {"theoretical_acceptance", format_rational(r.theoretical)},
      {"theoretical_acceptance_value", r.theoretical_value()},
      {"std_error", r.std_error()},
      {"z_score", r.z_score()},
      {"mean_iteration_ns", r.mean_iteration_time.count()},
      {"mean_check_ns", r.mean_check_time.count()},
      {"seed", r.seed},
  };
}

std::string format_table(const EvalReport& r) {
  std::ostringstream os;
  auto row = [&os](std::string_view key, const auto& value) {
    os << std::left << std::setw(24) << key << value << '\n';
  };
  row("generator", to_string(r.generator));
  row("n", r.n);
  row("samples", r.samples);
  row("accepted", r.accepted);
  os << std::setprecision(6);
  row("empirical acceptance", r.empirical());
  row("theoretical acceptance", format_rational(r.theoretical) + " (" +
                                    std::to_string(r.theoretical_value()) + ")");
  row("std error", r.std_error());
  row("z score", r.z_score());
  row("mean iteration (ns)", r.mean_iteration_time.count());
  row("mean check (ns)", r.mean_check_time.count());
  row("seed", r.seed);
  return os.str();
}

std::string format_csv(const EvalReport& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "generator,n,samples,accepted,empirical,theoretical,std_error,z_score,mean_iteration_ns,"
        "mean_check_ns,seed\n";
  os << to_string(r.generator) << ',' << r.n << ',' << r.samples << ',' << r.accepted << ','
     << r.empirical() << ',' << format_rational(r.theoretical) << ',' << r.std_error() << ','
     << r.z_score() << ',' << r.mean_iteration_time.count() << ',' << r.mean_check_time.count()
     << ',' << r.seed << '\n';
  return os.str();
}

json to_json(const BenchTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"n", r.n}, {"median_ns", r.median_ns}, {"mad_ns", r.mad_ns}, {"batch", r.batch}});
  }
  return {
      {"target", std::string(to_string(t.target))},
      {"seed", t.seed},
      {"repetitions", t.repetitions},
      {"rows", rows},
      {"slope", t.slope},
      {"slope_ci95", {t.slope_low, t.slope_high}},
  };
}

std::string format_table(const BenchTable& t) {
  std::ostringstream os;
  os << "target " << to_string(t.target) << ", " << t.repetitions << " repetitions, seed "
     << t.seed << '\n';
  os << std::right << std::setw(8) << "n" << std::setw(16) << "median_ns" << std::setw(14)
     << "mad_ns" << std::setw(10) << "batch" << '\n';
  os << std::fixed << std::setprecision(1);
  for (const auto& r : t.rows) {
    os << std::setw(8) << r.n << std::setw(16) << r.median_ns << std::setw(14) << r.mad_ns
       << std::setw(10) << r.batch << '\n';
  }
  os << std::setprecision(3) << "log-log slope " << t.slope << "  (95% CI " << t.slope_low
     << " .. " << t.slope_high << ")\n";
  return os.str();
}

std::string format_csv(const BenchTable& t) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "target,n,median_ns,mad_ns,batch\n";
  for (const auto& r : t.rows) {
    os << to_string(t.target) << ',' << r.n << ',' << r.median_ns << ',' << r.mad_ns << ','
       << r.batch << '\n';
  }
  return os.str();
}

}  // namespace randsudoku::io
