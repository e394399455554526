#pragma once

#include <filesystem>

#include "chemo/integrator.hpp"

namespace chemo {

struct Checkpoint {
  SimState state;
  ModelParameters params;
  StepControl control;
};

// Directory layout: checkpoint.json (parameters, control, t, last_dt,
// step_count) next to u.csv and v.csv. Every double is stored in shortest
// round-trip form, so a restart reproduces the saved run bit for bit.
void write_checkpoint(const std::filesystem::path& dir, const Checkpoint& cp);
Checkpoint read_checkpoint(const std::filesystem::path& dir);

}  // namespace chemo
