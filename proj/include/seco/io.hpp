#pragma once

#include "seco/config.hpp"
#include "seco/seco.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace seco {

// one row per node; angles in degrees, rates in deg/s
void write_trajectory_csv(std::ostream& os, const Trajectory& t, const Problem& p);
void write_trajectory_csv(const std::string& path, const Trajectory& t, const Problem& p);

std::string report_json(const SecoReport& r, const Trajectory& t);
void write_report_json(const std::string& path, const SecoReport& r, const Trajectory& t);

struct Stats {
  double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
};

// sample statistics; stddev is 0 for a single value
Stats stats(std::vector<double> v);

struct BenchRow {
  int N = 0;
  int runs = 0;
  int failures = 0;
  Stats t_discretize, t_parse, t_solve, t_total;
  Stats scp_iterations, pipg_iterations;
};

// R full solves at node count N; warm: start each run from the previous solution
BenchRow run_bench(const MissionConfig& m, int N, int reps, bool warm);
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);
void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows);

}  // namespace seco
