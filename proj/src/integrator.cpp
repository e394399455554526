#include "chemo/integrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "chemo/errors.hpp"
#include "chemo/helmholtz.hpp"
#include "chemo/operators.hpp"

namespace chemo {

void validate_control(const StepControl& c) {
  if (!(c.dt_min > 0.0)) throw OutOfRange("dt_min", "must be > 0");
  if (!(c.dt_init >= c.dt_min)) throw OutOfRange("dt_init", "must be >= dt_min");
  if (!(c.dt_max >= c.dt_init)) throw OutOfRange("dt_max", "must be >= dt_init");
  if (!(c.cfl_safety > 0.0 && c.cfl_safety <= 1.0)) throw OutOfRange("cfl_safety", "must lie in (0,1]");
  if (!(c.blowup_threshold > 0.0)) throw OutOfRange("blowup_threshold", "must be > 0");
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) throw OutOfRange("t_end", "must be finite and >= 0");
  if (!(c.solver_tol > 0.0)) throw OutOfRange("solver_tol", "must be > 0");
  if (c.max_iter < 0) throw OutOfRange("max_iter", "must be >= 0");
}

double default_blowup_threshold(const ScalarField& u0) { return 1e6 * u0.max(); }

const char* to_string(StepStatus s) {
  switch (s) {
    case StepStatus::Advanced: return "Advanced";
    case StepStatus::BlowupDetected: return "BlowupDetected";
    case StepStatus::SolverFailure: return "SolverFailure";
    case StepStatus::PositivityFailure: return "PositivityFailure";
    case StepStatus::SingularSignal: return "SingularSignal";
  }
  return "?";
}

namespace {

double max_rate(const FaceFluxSet& velocity, const SimState& s, const ModelParameters& p) {
  const ScalarField rate = outflow_rate(velocity, s.grid());
  double worst = 0.0;
  for (std::size_t n = 0; n < rate.size(); ++n) {
    worst = std::max(worst, rate[n] + p.r + 2.0 * p.mu * s.u[n]);
  }
  return worst;
}

struct Attempt {
  StepStatus status = StepStatus::Advanced;
  ScalarField u;
  ScalarField v;
  StepStats stats;
  std::string message;
};

Attempt attempt(const SimState& s, const FaceFluxSet& velocity, const ModelParameters& p, const StepControl& c,
                double dt) {
  const Grid& g = s.grid();
  const std::size_t n = g.size();
  Attempt a{StepStatus::Advanced, ScalarField(g), ScalarField(g), {}, {}};

  // explicit stage: donor-cell taxis plus logistic reaction
  const ScalarField div = flux_divergence(upwind_fluxes(velocity, s.u), g);
  ScalarField u_star(g);
  ScalarField rhs(g);
  for (std::size_t m = 0; m < n; ++m) {
    const double u = s.u[m];
    u_star[m] = u + dt * (-div[m] + p.r * u - p.mu * u * u);
    rhs[m] = u_star[m] / dt;
  }

  try {
    HelmholtzSolution su = solve_helmholtz(
        {1.0 / dt, std::move(rhs), c.solver_tol, c.max_iter, c.jacobi, std::move(u_star)});
    a.stats.u_iterations = su.iterations;
    a.stats.u_residual = su.residual;
    a.u = std::move(su.solution);
    if (!a.u.all_finite()) {
      a.status = StepStatus::BlowupDetected;
      a.message = "u became non-finite";
      return a;
    }
    // The exact implicit solve maps u_star ≥ 0 to u ≥ 0; anything more
    // negative than the certified solver error is a CFL violation.
    const double umax = a.u.max();
    const double allowance = 1e-12 * std::max(umax, 0.0) + su.error_bound;
    double clamped = 0.0;
    for (auto& value : a.u.values()) {
      if (value < -allowance) {
        a.status = StepStatus::PositivityFailure;
        a.message = "min u = " + std::to_string(a.u.min()) + " after diffusion solve";
        return a;
      }
      if (value < 0.0) {
        clamped -= value;
        value = 0.0;
      }
    }
    a.stats.clamped_mass = clamped * g.cell_area();
    if (umax > c.blowup_threshold) {
      a.status = StepStatus::BlowupDetected;
      a.message = "max u = " + std::to_string(umax) + " exceeds threshold";
      return a;
    }

    ScalarField vrhs(g);
    double shift = 0.0;
    if (p.parabolic()) {
      shift = 1.0 / dt + p.alpha;
      for (std::size_t m = 0; m < n; ++m) vrhs[m] = s.v[m] / dt + p.beta * s.u[m];
    } else {
      shift = p.alpha;
      for (std::size_t m = 0; m < n; ++m) vrhs[m] = p.beta * a.u[m];
    }
    HelmholtzSolution sv = solve_helmholtz({shift, std::move(vrhs), c.solver_tol, c.max_iter, c.jacobi, s.v});
    a.stats.v_iterations = sv.iterations;
    a.stats.v_residual = sv.residual;
    a.v = std::move(sv.solution);
    if (!a.v.all_finite() || !(a.v.min() > 0.0)) {
      a.status = StepStatus::PositivityFailure;
      a.message = "min v = " + std::to_string(a.v.min()) + " after signal solve";
      return a;
    }
  } catch (const NoConvergence& e) {
    a.status = StepStatus::SolverFailure;
    a.message = e.what();
  }
  return a;
}

}  // namespace

double stable_dt(const SimState& s, const ModelParameters& p, const StepControl& c) {
  const double rate = max_rate(taxis_velocity(s.v, p, c.singular_guard), s, p);
  return rate > 0.0 ? c.cfl_safety / rate : std::numeric_limits<double>::infinity();
}

StepOutcome step(const SimState& s, const ModelParameters& p, const StepControl& c, double t_stop) {
  check_numerically_admissible(p);
  StepOutcome out{s, StepStatus::Advanced, {}, {}};

  FaceFluxSet velocity(s.grid());
  try {
    velocity = taxis_velocity(s.v, p, c.singular_guard);
  } catch (const SingularSignal& e) {
    out.status = StepStatus::SingularSignal;
    out.message = e.what();
    return out;
  }
  const double rate = max_rate(velocity, s, p);
  const double dt_cfl = rate > 0.0 ? c.cfl_safety / rate : std::numeric_limits<double>::infinity();
  out.stats.dt_cfl = dt_cfl;

  double dt = s.step_count == 0 ? std::min(c.dt_init, dt_cfl) : dt_cfl;
  dt = std::clamp(dt, c.dt_min, c.dt_max);
  bool landing = false;
  if (s.t + dt >= t_stop - 1e-9 * dt) {
    dt = t_stop - s.t;
    landing = true;
  }
  if (!(dt > 0.0)) {
    out.status = StepStatus::SolverFailure;
    out.message = "no time left to step (t = " + std::to_string(s.t) + ")";
    return out;
  }

  Attempt a = attempt(s, velocity, p, c, dt);
  int retries = 0;
  if (a.status == StepStatus::PositivityFailure || a.status == StepStatus::SolverFailure) {
    const double half = 0.5 * dt;
    if (half >= c.dt_min || landing) {
      retries = 1;
      landing = false;
      dt = half;
      a = attempt(s, velocity, p, c, dt);
    } else {
      a.message += " (dt/2 below dt_min)";
    }
  }

  out.stats = a.stats;
  out.stats.dt_cfl = dt_cfl;
  out.stats.retries = retries;
  out.status = a.status;
  out.message = std::move(a.message);
  if (a.status == StepStatus::Advanced || a.status == StepStatus::BlowupDetected) {
    out.state.u = std::move(a.u);
    if (a.status == StepStatus::Advanced) out.state.v = std::move(a.v);
    out.state.t = landing ? t_stop : s.t + dt;
    out.state.last_dt = dt;
    out.state.step_count = s.step_count + 1;
  }
  return out;
}

SimState initial_state(const InitialData& init, const ModelParameters& p, const StepControl& c) {
  SimState s{init.u0, init.v0, 0.0, c.dt_init, 0};
  if (!p.parabolic()) {
    ScalarField rhs(init.u0.grid());
    for (std::size_t m = 0; m < rhs.size(); ++m) rhs[m] = p.beta * init.u0[m];
    s.v = solve_helmholtz({p.alpha, std::move(rhs), c.solver_tol, c.max_iter, c.jacobi, std::nullopt}).solution;
  }
  return s;
}

RunSummary run(const InitialData& init, const ModelParameters& p, const StepControl& c, const RunHooks& hooks) {
  check_numerically_admissible(p);
  validate_control(c);
  SimState start = initial_state(init, p, c);
  StepControl control = c;
  if (control.singular_guard == 0.0) control.singular_guard = 1e-12 * start.v.min();
  return run_from(start, p, control, hooks);
}

RunSummary run_from(const SimState& start, const ModelParameters& p, const StepControl& c, const RunHooks& hooks) {
  check_numerically_admissible(p);
  validate_control(c);
  const auto clock_start = std::chrono::steady_clock::now();
  RunSummary summary{StepOutcome{start, StepStatus::Advanced, {}, {}}};
  summary.max_sup_u = start.u.max();

  const double interval = hooks.sample_interval;
  auto next_target = [&](double t) {
    return std::floor(t / interval + 1e-9) * interval + interval;
  };
  double target = interval > 0.0 ? next_target(start.t) : c.t_end;
  bool sampled_current = true;
  if (hooks.on_sample) hooks.on_sample(start);

  if (summary.max_sup_u > c.blowup_threshold) {
    summary.final.status = StepStatus::BlowupDetected;
    summary.final.message = "initial max u exceeds threshold";
  }

  SimState state = start;
  while (summary.final.status == StepStatus::Advanced && state.t < c.t_end) {
    StepOutcome o = step(state, p, c, std::min(target, c.t_end));
    summary.retries += o.stats.retries;
    summary.max_v_residual = std::max(summary.max_v_residual, o.stats.v_residual);
    if (o.status == StepStatus::Advanced || o.status == StepStatus::BlowupDetected) {
      ++summary.steps;
      state = o.state;
      summary.max_sup_u = std::max(summary.max_sup_u, state.u.max());
      sampled_current = false;
      if (o.status == StepStatus::Advanced && hooks.on_step) hooks.on_step(state);
    }
    summary.final = std::move(o);
    if (summary.final.status != StepStatus::Advanced) break;
    if (interval > 0.0 && state.t >= target) {
      if (hooks.on_sample) hooks.on_sample(state);
      sampled_current = true;
      target = next_target(state.t);
    }
  }
  summary.final.state = state;
  if (!sampled_current && hooks.on_sample) hooks.on_sample(state);
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  return summary;
}

}  // namespace chemo
