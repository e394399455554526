#include "chemo/checkpoint.hpp"

#include <fstream>

#include <json.hpp>

#include "chemo/errors.hpp"
#include "chemo/field_io.hpp"

namespace chemo {

using nlohmann::json;

void write_checkpoint(const std::filesystem::path& dir, const Checkpoint& cp) {
  std::filesystem::create_directories(dir);
  const auto& p = cp.params;
  const auto& c = cp.control;
  json meta = {
      {"params", {{"chi", p.chi}, {"r", p.r}, {"mu", p.mu}, {"k", p.k}, {"alpha", p.alpha},
                  {"beta", p.beta}, {"kappa", p.kappa}}},
      {"control", {{"dt_init", c.dt_init}, {"dt_min", c.dt_min}, {"dt_max", c.dt_max},
                   {"cfl_safety", c.cfl_safety}, {"blowup_threshold", c.blowup_threshold},
                   {"t_end", c.t_end}, {"solver_tol", c.solver_tol}, {"max_iter", c.max_iter},
                   {"jacobi", c.jacobi}, {"singular_guard", c.singular_guard}}},
      {"t", cp.state.t},
      {"last_dt", cp.state.last_dt},
      {"step_count", cp.state.step_count},
  };
  std::ofstream out(dir / "checkpoint.json");
  if (!out) throw IoError("cannot write " + (dir / "checkpoint.json").string());
  out << meta.dump(2) << '\n';
  write_field_csv(cp.state.u, dir / "u.csv");
  write_field_csv(cp.state.v, dir / "v.csv");
}

Checkpoint read_checkpoint(const std::filesystem::path& dir) {
  std::ifstream in(dir / "checkpoint.json");
  if (!in) throw IoError("cannot open " + (dir / "checkpoint.json").string());
  json meta;
  try {
    meta = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("malformed checkpoint.json: " + std::string(e.what()));
  }
  ScalarField u = read_field_csv(dir / "u.csv");
  ScalarField v = read_field_csv(dir / "v.csv");
  if (!(u.grid() == v.grid())) throw IoError("checkpoint fields live on different grids");
  try {
    const auto& jp = meta.at("params");
    ModelParameters p{jp.at("chi"), jp.at("r"), jp.at("mu"), jp.at("k"), jp.at("alpha"), jp.at("beta"),
                      jp.at("kappa")};
    const auto& jc = meta.at("control");
    StepControl c;
    c.dt_init = jc.at("dt_init");
    c.dt_min = jc.at("dt_min");
    c.dt_max = jc.at("dt_max");
    c.cfl_safety = jc.at("cfl_safety");
    c.blowup_threshold = jc.at("blowup_threshold");
    c.t_end = jc.at("t_end");
    c.solver_tol = jc.at("solver_tol");
    c.max_iter = jc.at("max_iter");
    c.jacobi = jc.at("jacobi");
    c.singular_guard = jc.at("singular_guard");
    SimState s{std::move(u), std::move(v), meta.at("t"), meta.at("last_dt"), meta.at("step_count")};
    return {std::move(s), p, c};
  } catch (const json::exception& e) {
    throw IoError("incomplete checkpoint.json: " + std::string(e.what()));
  }
}

}  // namespace chemo
