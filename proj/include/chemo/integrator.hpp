#pragma once

#include <functional>
#include <string>

#include "chemo/params.hpp"
#include "chemo/state.hpp"

namespace chemo {

struct StepControl {
  double dt_init = 1e-4;
  double dt_min = 1e-9;
  double dt_max = 1e-2;
  double cfl_safety = 0.5;
  double blowup_threshold = 1e6;
  double t_end = 1.0;
  double solver_tol = 1e-10;
  int max_iter = 0;  // 0: 10·(nx + ny)
  bool jacobi = false;
  // min v below this raises SingularSignal; run() sets it to 1e-12·min v0
  // when left at zero.
  double singular_guard = 0.0;
};

// dt_min ≤ dt_init ≤ dt_max, cfl_safety ∈ (0,1], positive threshold, t_end ≥ 0.
void validate_control(const StepControl& c);

// Default sup-norm trigger: six decades above the initial maximum.
double default_blowup_threshold(const ScalarField& u0);

enum class StepStatus { Advanced, BlowupDetected, SolverFailure, PositivityFailure, SingularSignal };

const char* to_string(StepStatus s);

struct StepStats {
  double dt_cfl = 0.0;  // stability/positivity bound before clipping
  int u_iterations = 0;
  int v_iterations = 0;
  double u_residual = 0.0;
  double v_residual = 0.0;
  int retries = 0;
  double clamped_mass = 0.0;  // ∫ of solver round-off negatives reset to zero
};

struct StepOutcome {
  SimState state;
  StepStatus status = StepStatus::Advanced;
  StepStats stats;
  std::string message;
};

// Largest dt that keeps the explicit stage (donor-cell taxis plus logistic
// reaction) nonnegative and stable, scaled by cfl_safety:
//   cfl_safety / max over cells of (taxis outflow rate + r + 2μu).
double stable_dt(const SimState& s, const ModelParameters& p, const StepControl& c);

// One first-order IMEX step, landing exactly on t_stop if it is within reach.
//   u:  (u_new − u)/dt = Δu_new − ∇·(χ u v^{-k}∇v) + r u − μ u²   (taxis, reaction explicit)
//   v:  κ=1: (v_new − v)/dt = Δv_new − α v_new + β u
//       κ=0: 0 = Δv_new − α v_new + β u_new
// On PositivityFailure or SolverFailure the step is retried once at dt/2.
StepOutcome step(const SimState& s, const ModelParameters& p, const StepControl& c, double t_stop);
inline StepOutcome step(const SimState& s, const ModelParameters& p, const StepControl& c) {
  return step(s, p, c, c.t_end);
}

struct RunHooks {
  // simulation-time cadence of on_sample; 0 samples only the first and last state
  double sample_interval = 0.0;
  std::function<void(const SimState&)> on_sample;
  std::function<void(const SimState&)> on_step;
};

struct RunSummary {
  StepOutcome final;
  double wall_seconds = 0.0;
  long steps = 0;
  double max_sup_u = 0.0;
  long retries = 0;
  double max_v_residual = 0.0;  // worst relative residual over all signal solves
};

// Starting state for the given data. For κ=0 the signal is not an independent
// unknown: v0 is replaced by the solution of (−Δ + α)v = βu0.
SimState initial_state(const InitialData& init, const ModelParameters& p, const StepControl& c);

RunSummary run(const InitialData& init, const ModelParameters& p, const StepControl& c,
               const RunHooks& hooks = {});

// Continues from an existing state (restart); the trajectory is identical to
// the one an uninterrupted run would have produced.
RunSummary run_from(const SimState& start, const ModelParameters& p, const StepControl& c,
                    const RunHooks& hooks = {});

}  // namespace chemo
