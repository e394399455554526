#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chemo/diagnostics.hpp"
#include "chemo/errors.hpp"
#include "chemo/integrator.hpp"

namespace chemo {

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A value parsed fine but was rejected by a domain validator.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": invalid " + field + ": " + message),
        field_(std::move(field)),
        line_(line) {}
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

struct GridSpec {
  int nx = 64;
  int ny = 64;
  double lx = 1.0;
  double ly = 1.0;

  Grid build() const { return Grid(nx, ny, lx, ly); }
};

struct Bump {
  double x = 0.5;
  double y = 0.5;
  double amplitude = 1.0;
  double width = 0.05;
};

struct InitialSpec {
  enum class Kind { Constant, GaussianBumps, FromFile };
  Kind kind = Kind::Constant;
  // constant
  double u0 = 1.0;
  double v0 = 1.0;
  // gaussian_bumps: explicit list, or `count` bumps placed from the seed
  std::vector<Bump> bumps;
  int count = 3;
  double amplitude = 50.0;
  double width = 0.05;
  double v_background = 0.01;
  // from_file: a checkpoint directory (u.csv, v.csv)
  std::filesystem::path path;
};

struct RunConfig {
  ModelParameters params;
  GridSpec grid;
  InitialSpec initial;
  StepControl control;
  bool blowup_threshold_set = false;  // otherwise 1e6 · max u0
  DiagnosticsConfig diag;
  std::filesystem::path output_dir = "chemosim_out";
  std::uint64_t seed = 1;
};

// Parses a YAML run document with sections model, grid, initial, control,
// diagnostics and the scalars output_dir, seed. Every key is optional; unknown
// keys are rejected. Relative paths resolve against base_dir.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& file);

struct SweepAxis {
  std::string name;  // dotted key into the run document, e.g. "model.k"
  std::vector<double> values;
};

struct SweepConfig {
  RunConfig base;
  std::string base_document;
  std::filesystem::path base_dir;
  std::vector<SweepAxis> axes;
  int max_parallel = 1;
  int max_runs = 512;
};

SweepConfig parse_sweep(const std::string& text, const std::filesystem::path& base_dir = {});
SweepConfig load_sweep(const std::filesystem::path& file);

// Cartesian product of the axes, first axis slowest. Each entry lists the
// chosen value per axis alongside the resolved RunConfig.
struct SweepPoint {
  std::vector<double> values;
  RunConfig config;
};
std::vector<SweepPoint> expand_sweep(const SweepConfig& sweep);

// Builds the initial fields described by the config on its grid.
InitialData build_initial_data(const RunConfig& cfg);

}  // namespace chemo
