#pragma once

#include "seco/constraints.hpp"
#include "seco/dynamics.hpp"
#include "seco/error.hpp"
#include "seco/pipg.hpp"
#include "seco/precondition.hpp"
#include "seco/scaling.hpp"
#include "seco/subproblem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace seco {

struct SecoConfig {
  int N = 15;
  Weights weights;
  int max_iterations = 7;
  double pos_tol = 10.0;
  double vel_tol = 0.25;
  double step_tol = 6e-4;         // trust-region cost of the last step, scaled units
  bool fixed_iterations = false;  // false: exit as soon as the tolerances are met

  double s_guess = 90.0;
  Range s_bounds{30.0, 200.0};
  int substeps = 20;

  double omega = 10.0;
  double rho = 1.6;
  StopTolerances stop;
  std::optional<double> lambda;
  SpectralOptions spectral;
  bool abort_on_pipg_failure = false;

  std::optional<ScalingRanges> ranges;

  void validate() const;
};

struct Problem {
  VehicleParams vehicle;
  ConstraintParams constraints;

  void validate() const;
};

struct Trajectory {
  StateSeq x, xi;
  ControlSeq u;
  double s = 0.0;
};

struct IterationReport {
  int pipg_iterations = 0;
  bool pipg_converged = false;
  double residual = 0.0;      // ‖Ĥẑ − ĥ‖∞ at PIPG exit
  double trust_region = 0.0;  // w_tr(Σ‖Δx‖² + Σ‖Δu‖²) + w_tr_s Δs², scaled units
  double vse_gap = 0.0;       // max_k ‖Δx_k − Δξ_k‖∞, scaled units
  double lambda = 0.0;
  double sigma_max = 0.0;
  double pos_err = 0.0;
  double vel_err = 0.0;
  double t_discretize = 0.0;
  double t_parse = 0.0;
  double t_solve = 0.0;
};

struct SecoReport {
  std::vector<IterationReport> iterations;
  double pos_err = 0.0;
  double vel_err = 0.0;
  bool converged = false;
  std::optional<ErrorCode> status;
  std::string message;
  double t_discretize = 0.0;
  double t_parse = 0.0;
  double t_solve = 0.0;
  int pipg_iterations = 0;
};

ScalingRanges default_ranges(const Problem& p, double s_guess);

Trajectory initial_guess(const Problem& p, int N, double s_guess);

Trajectory prescale(const Trajectory& t, const Scaling& sc);
Trajectory unscale(const Trajectory& t, const Scaling& sc);

struct ConvergenceCheck {
  double pos_err = 0.0;
  double vel_err = 0.0;
  bool pass = false;
};

ConvergenceCheck convergence_check(const Trajectory& t, const Problem& p, double pos_tol, double vel_tol,
                                   int substeps = 20);

// per-iteration hook, e.g. for telemetry or instrumented PIPG runs
struct SecoHooks {
  PipgObserver pipg_observer;
  std::function<void(int iteration, const PreconditionedData&)> on_subproblem;
};

// Runs the SCP loop from the initial guess, or from `start` when given. Errors during
// an iteration are recorded in the report and the last reference is returned.
Trajectory solve(const SecoConfig& cfg, const Problem& p, SecoReport& report,
                 const std::optional<Trajectory>& start = std::nullopt, const SecoHooks& hooks = {});

}  // namespace seco
