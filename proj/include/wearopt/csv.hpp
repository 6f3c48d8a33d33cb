#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wearopt/domain.hpp"
#include "wearopt/dp.hpp"
#include "wearopt/errors.hpp"
#include "wearopt/lp.hpp"
#include "wearopt/sa.hpp"
#include "wearopt/version.hpp"
#include "wearopt/wear_sim.hpp"

namespace wearopt {

struct Provenance {
  std::string config_hash = "0";
  std::uint64_t seed = 0;
};

inline void write_provenance(std::ostream& os, const Provenance& p, const char* prefix = "# ") {
  os << prefix << "wearopt " << kVersion << "\n";
  os << prefix << "config_hash: " << p.config_hash << "\n";
  os << prefix << "seed: " << p.seed << "\n";
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

namespace csv {

/// Rows of comma-separated fields; '#' lines and blank lines are skipped.
inline std::vector<std::vector<std::string>> read_rows(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> row;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) row.push_back(field);
    if (!line.empty() && line.back() == ',') row.push_back("");
    rows.push_back(std::move(row));
  }
  return rows;
}

inline int to_int(const std::string& s, const std::string& path, int line) {
  try {
    size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path, line, "expected integer, got '" + s + "'");
  }
}

inline double to_double(const std::string& s, const std::string& path, int line) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path, line, "expected number, got '" + s + "'");
  }
}

}  // namespace csv

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);  // binary: byte-identical reruns
  if (!os) throw ValidationError("cannot open output file " + path.string());
  return os;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot open input file " + path.string());
  return is;
}

// --- failure history: time,part with part in {1,2,both} ------------------

inline void write_history(std::ostream& os, const FailureHistory& history, const Provenance& p) {
  write_provenance(os, p);
  os << "time,part\n";
  for (const auto& e : history.events) os << e.time << "," << to_string(e.which) << "\n";
}

inline FailureHistory parse_history(std::istream& is, const std::string& path) {
  FailureHistory history;
  const auto rows = csv::read_rows(is);
  if (rows.empty() || rows[0] != std::vector<std::string>{"time", "part"})
    throw ParseError(path, 1, "expected header 'time,part'");
  for (size_t i = 1; i < rows.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    if (rows[i].size() != 2) throw ParseError(path, line, "expected 2 fields");
    FailureEvent e;
    e.time = csv::to_int(rows[i][0], path, line);
    const std::string& part = rows[i][1];
    if (part == "1")
      e.which = Which::Part1;
    else if (part == "2")
      e.which = Which::Part2;
    else if (part == "both")
      e.which = Which::Both;
    else
      throw ParseError(path, line, "part must be 1, 2 or both, got '" + part + "'");
    history.events.push_back(e);
  }
  try {
    history.validate();
  } catch (const ValidationError& err) {
    throw ParseError(path, static_cast<int>(rows.size()) + 1, err.what());
  }
  return history;
}

inline FailureHistory load_history(const std::filesystem::path& path) {
  auto is = open_input(path);
  return parse_history(is, path.string());
}

// --- rate matrices: band labels on both axes, one file per matrix --------

inline std::string band_label(int band, int width) {
  return std::to_string((band - 1) * width + 1) + "-" + std::to_string(band * width);
}

inline void write_rate_matrix(std::ostream& os, const RateTable& table, bool matrix_a, const Provenance& p) {
  write_provenance(os, p);
  os << "band";
  for (int j = 1; j <= table.m2; ++j) os << "," << band_label(j, table.bin_width);
  os << "\n";
  for (int i = 1; i <= table.m1; ++i) {
    os << band_label(i, table.bin_width);
    for (int j = 1; j <= table.m2; ++j) os << "," << (matrix_a ? table.rate_a(i, j) : table.rate_b(i, j));
    os << "\n";
  }
}

struct RateMatrixCsv {
  int bin_width = 0;
  int rows = 0;
  int cols = 0;
  std::vector<int> cells;
};

inline RateMatrixCsv parse_rate_matrix(std::istream& is, const std::string& path) {
  const auto rows = csv::read_rows(is);
  if (rows.size() < 2 || rows[0].empty() || rows[0][0] != "band")
    throw ParseError(path, 1, "expected 'band' header with band labels");
  RateMatrixCsv out;
  out.cols = static_cast<int>(rows[0].size()) - 1;
  out.rows = static_cast<int>(rows.size()) - 1;
  // infer band width from the first column label "lo-hi"
  const std::string& first = rows[0][1];
  const size_t dash = first.find('-');
  if (dash == std::string::npos) throw ParseError(path, 1, "band label must look like 'lo-hi'");
  out.bin_width = csv::to_int(first.substr(dash + 1), path, 1) - csv::to_int(first.substr(0, dash), path, 1) + 1;
  for (size_t i = 1; i < rows.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    if (static_cast<int>(rows[i].size()) != out.cols + 1)
      throw ParseError(path, line, "expected " + std::to_string(out.cols + 1) + " fields");
    for (int j = 1; j <= out.cols; ++j) out.cells.push_back(csv::to_int(rows[i][static_cast<size_t>(j)], path, line));
  }
  return out;
}

inline RateTable load_rate_table(const std::filesystem::path& path_a, const std::filesystem::path& path_b) {
  auto isa = open_input(path_a);
  auto isb = open_input(path_b);
  const RateMatrixCsv a = parse_rate_matrix(isa, path_a.string());
  const RateMatrixCsv b = parse_rate_matrix(isb, path_b.string());
  if (a.rows != b.rows || a.cols != b.cols || a.bin_width != b.bin_width)
    throw ValidationError("rate matrices " + path_a.string() + " and " + path_b.string() + " have different shapes");
  RateTable t;
  t.bin_width = a.bin_width;
  t.m1 = a.rows;
  t.m2 = a.cols;
  t.a = a.cells;
  t.b = b.cells;
  return t;
}

inline void save_rate_table(const std::filesystem::path& path_a, const std::filesystem::path& path_b,
                            const RateTable& table, const Provenance& p) {
  auto osa = open_output(path_a);
  write_rate_matrix(osa, table, true, p);
  auto osb = open_output(path_b);
  write_rate_matrix(osb, table, false, p);
}

// --- value / policy grids -------------------------------------------------

inline void write_value_grid(std::ostream& os, const ValueFunction& u, const Provenance& p) {
  write_provenance(os, p);
  os << "d1\\d2";
  for (int d2 = 0; d2 < u.cols(); ++d2) os << "," << d2;
  os << "\n";
  for (int d1 = 0; d1 < u.rows(); ++d1) {
    os << d1;
    for (int d2 = 0; d2 < u.cols(); ++d2) os << "," << format_double(u.at(d1, d2));
    os << "\n";
  }
}

inline ValueFunction parse_value_grid(std::istream& is, const std::string& path) {
  const auto rows = csv::read_rows(is);
  if (rows.size() < 2) throw ParseError(path, 1, "empty grid");
  const int cols = static_cast<int>(rows[0].size()) - 1;
  ValueFunction u(static_cast<int>(rows.size()) - 1, cols);
  for (size_t i = 1; i < rows.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    if (static_cast<int>(rows[i].size()) != cols + 1) throw ParseError(path, line, "ragged grid row");
    for (int j = 0; j < cols; ++j)
      u.at(static_cast<int>(i) - 1, j) = csv::to_double(rows[i][static_cast<size_t>(j) + 1], path, line);
  }
  return u;
}

inline void write_policy_grid(std::ostream& os, const PolicyGrid& policy, const Provenance& p) {
  write_provenance(os, p);
  os << "d1\\d2";
  for (int d2 = 0; d2 < policy.cols(); ++d2) os << "," << d2;
  os << "\n";
  for (int d1 = 0; d1 < policy.rows(); ++d1) {
    os << d1;
    for (int d2 = 0; d2 < policy.cols(); ++d2) os << "," << static_cast<int>(policy.at(d1, d2));
    os << "\n";
  }
}

inline PolicyGrid parse_policy_grid(std::istream& is, const std::string& path) {
  const auto rows = csv::read_rows(is);
  if (rows.size() < 2) throw ParseError(path, 1, "empty grid");
  const int cols = static_cast<int>(rows[0].size()) - 1;
  PolicyGrid policy(static_cast<int>(rows.size()) - 1, cols);
  for (size_t i = 1; i < rows.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    if (static_cast<int>(rows[i].size()) != cols + 1) throw ParseError(path, line, "ragged grid row");
    for (int j = 0; j < cols; ++j) {
      const int code = csv::to_int(rows[i][static_cast<size_t>(j) + 1], path, line);
      if (code < 0 || code > 3) throw ParseError(path, line, "action code must be 0..3");
      policy.at(static_cast<int>(i) - 1, j) = static_cast<Action>(code);
    }
  }
  return policy;
}

// --- trajectory: day,d1,d2,event ------------------------------------------

inline void write_trajectory(std::ostream& os, const std::vector<TrajectoryPoint>& traj, const Provenance& p) {
  write_provenance(os, p);
  os << "day,d1,d2,event\n";
  for (const auto& t : traj)
    os << t.day << "," << t.d1 << "," << t.d2 << "," << (t.has_event ? to_string(t.event) : "none") << "\n";
}

inline std::vector<TrajectoryPoint> parse_trajectory(std::istream& is, const std::string& path) {
  const auto rows = csv::read_rows(is);
  if (rows.empty() || rows[0] != std::vector<std::string>{"day", "d1", "d2", "event"})
    throw ParseError(path, 1, "expected header 'day,d1,d2,event'");
  std::vector<TrajectoryPoint> traj;
  for (size_t i = 1; i < rows.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    if (rows[i].size() != 4) throw ParseError(path, line, "expected 4 fields");
    TrajectoryPoint t;
    t.day = csv::to_int(rows[i][0], path, line);
    t.d1 = csv::to_int(rows[i][1], path, line);
    t.d2 = csv::to_int(rows[i][2], path, line);
    const std::string& ev = rows[i][3];
    t.has_event = ev != "none";
    if (ev == "1")
      t.event = Which::Part1;
    else if (ev == "2")
      t.event = Which::Part2;
    else if (ev == "both" || ev == "none")
      t.event = Which::Both;
    else
      throw ParseError(path, line, "event must be none, 1, 2 or both");
    traj.push_back(t);
  }
  return traj;
}

// --- thresholds: axis,coord,threshold,source -------------------------------

inline void write_thresholds(std::ostream& os, const Thresholds& th, const Provenance& p) {
  write_provenance(os, p);
  os << "axis,coord,threshold,source\n";
  for (const auto& e : th.i_star)
    os << "i_star," << e.coord << "," << e.threshold << "," << (e.joint ? "joint" : "single") << "\n";
  for (const auto& e : th.j_star)
    os << "j_star," << e.coord << "," << e.threshold << "," << (e.joint ? "joint" : "single") << "\n";
}

inline Thresholds parse_thresholds(std::istream& is, const std::string& path) {
  const auto rows = csv::read_rows(is);
  if (rows.empty() || rows[0] != std::vector<std::string>{"axis", "coord", "threshold", "source"})
    throw ParseError(path, 1, "expected header 'axis,coord,threshold,source'");
  Thresholds th;
  for (size_t i = 1; i < rows.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    if (rows[i].size() != 4) throw ParseError(path, line, "expected 4 fields");
    ThresholdEntry e;
    e.coord = csv::to_int(rows[i][1], path, line);
    e.threshold = csv::to_int(rows[i][2], path, line);
    e.joint = rows[i][3] == "joint";
    if (rows[i][0] == "i_star")
      th.i_star.push_back(e);
    else if (rows[i][0] == "j_star")
      th.j_star.push_back(e);
    else
      throw ParseError(path, line, "axis must be i_star or j_star");
  }
  return th;
}

// --- annealing trace and multi-seed summary --------------------------------

inline void write_sa_trace(std::ostream& os, const SARun& run, const Provenance& p) {
  write_provenance(os, p);
  os << "iter,temp,objective,accepted\n";
  for (const auto& t : run.trace)
    os << t.iteration << "," << format_double(t.temperature) << "," << format_double(t.objective) << ","
       << (t.accepted ? 1 : 0) << "\n";
}

struct SaTraceRow {
  int iteration;
  double temperature;
  double objective;
  bool accepted;
  friend bool operator==(const SaTraceRow&, const SaTraceRow&) = default;
};

inline std::vector<SaTraceRow> parse_sa_trace(std::istream& is, const std::string& path) {
  const auto rows = csv::read_rows(is);
  if (rows.empty() || rows[0] != std::vector<std::string>{"iter", "temp", "objective", "accepted"})
    throw ParseError(path, 1, "expected header 'iter,temp,objective,accepted'");
  std::vector<SaTraceRow> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    if (rows[i].size() != 4) throw ParseError(path, line, "expected 4 fields");
    out.push_back({csv::to_int(rows[i][0], path, line), csv::to_double(rows[i][1], path, line),
                   csv::to_double(rows[i][2], path, line), csv::to_int(rows[i][3], path, line) != 0});
  }
  return out;
}

struct SummaryRow {
  int iters_per_temp = 0;
  double cool = 0.0;
  double t0 = 0.0;                    // mean initial temperature across seeds
  std::vector<double> best_objectives;  // one per seed, in seed order
  double average = 0.0;
  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

inline void write_sa_summary(std::ostream& os, const std::vector<SummaryRow>& rows, const Provenance& p) {
  write_provenance(os, p);
  os << "n,cool,t0";
  const size_t seeds = rows.empty() ? 0 : rows[0].best_objectives.size();
  for (size_t i = 1; i <= seeds; ++i) os << ",seed" << i;
  os << ",average\n";
  for (const auto& r : rows) {
    os << r.iters_per_temp << "," << format_double(r.cool) << "," << format_double(r.t0);
    for (double b : r.best_objectives) os << "," << format_double(b);
    os << "," << format_double(r.average) << "\n";
  }
}

inline std::vector<SummaryRow> parse_sa_summary(std::istream& is, const std::string& path) {
  const auto rows = csv::read_rows(is);
  if (rows.empty() || rows[0].size() < 4 || rows[0][0] != "n")
    throw ParseError(path, 1, "expected summary header");
  std::vector<SummaryRow> out;
  const size_t seeds = rows[0].size() - 4;
  for (size_t i = 1; i < rows.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    if (rows[i].size() != rows[0].size()) throw ParseError(path, line, "ragged summary row");
    SummaryRow r;
    r.iters_per_temp = csv::to_int(rows[i][0], path, line);
    r.cool = csv::to_double(rows[i][1], path, line);
    r.t0 = csv::to_double(rows[i][2], path, line);
    for (size_t j = 0; j < seeds; ++j) r.best_objectives.push_back(csv::to_double(rows[i][3 + j], path, line));
    r.average = csv::to_double(rows[i].back(), path, line);
    out.push_back(std::move(r));
  }
  return out;
}

// --- comparison summary -----------------------------------------------------

struct ComparisonRow {
  std::string scenario;
  double historical_mean = 0.0;
  double policy_mean = 0.0;
  double reduction_pct = 0.0;
  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

inline void write_comparison(std::ostream& os, const std::vector<ComparisonRow>& rows, const Provenance& p) {
  write_provenance(os, p);
  os << "scenario,historical_mean,policy_mean,reduction_pct\n";
  for (const auto& r : rows)
    os << r.scenario << "," << format_double(r.historical_mean) << "," << format_double(r.policy_mean) << ","
       << format_double(r.reduction_pct) << "\n";
}

inline std::vector<ComparisonRow> parse_comparison(std::istream& is, const std::string& path) {
  const auto rows = csv::read_rows(is);
  if (rows.empty() || rows[0] != std::vector<std::string>{"scenario", "historical_mean", "policy_mean", "reduction_pct"})
    throw ParseError(path, 1, "expected comparison header");
  std::vector<ComparisonRow> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    if (rows[i].size() != 4) throw ParseError(path, line, "expected 4 fields");
    out.push_back({rows[i][0], csv::to_double(rows[i][1], path, line), csv::to_double(rows[i][2], path, line),
                   csv::to_double(rows[i][3], path, line)});
  }
  return out;
}

// --- objective series (landscape walk) --------------------------------------

inline void write_series(std::ostream& os, const std::vector<double>& series, const Provenance& p) {
  write_provenance(os, p);
  os << "step,objective\n";
  for (size_t i = 0; i < series.size(); ++i) os << (i + 1) << "," << format_double(series[i]) << "\n";
}

inline std::vector<double> parse_series(std::istream& is, const std::string& path) {
  const auto rows = csv::read_rows(is);
  if (rows.empty() || rows[0] != std::vector<std::string>{"step", "objective"})
    throw ParseError(path, 1, "expected header 'step,objective'");
  std::vector<double> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    if (rows[i].size() != 2) throw ParseError(path, line, "expected 2 fields");
    out.push_back(csv::to_double(rows[i][1], path, line));
  }
  return out;
}

}  // namespace wearopt
