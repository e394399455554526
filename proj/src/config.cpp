#include "chemo/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "chemo/field_io.hpp"

namespace chemo {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

// Reads the keys of one mapping, remembering which were consumed and where
// each appeared, then rejects anything left over.
class Section {
 public:
  Section(const YAML::Node& node, std::string prefix, std::map<std::string, int>& lines)
      : node_(node), prefix_(std::move(prefix)), lines_(lines) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      throw ParseError(line_of(node_), "'" + prefix_ + "' must be a mapping");
    }
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    allowed_.insert(key);
    if (!node_ || node_.IsNull()) return;
    const YAML::Node v = node_[key];
    if (!v) return;
    lines_[qualified(key)] = line_of(v);
    if (!v.IsScalar()) throw ParseError(line_of(v), "'" + qualified(key) + "' must be a scalar");
    try {
      out = v.as<T>();
    } catch (const YAML::Exception&) {
      throw ParseError(line_of(v), "cannot interpret '" + v.Scalar() + "' as a value for '" + qualified(key) + "'");
    }
  }

  YAML::Node child(const std::string& key) {
    allowed_.insert(key);
    if (!node_ || node_.IsNull()) return YAML::Node();
    const YAML::Node v = node_[key];
    if (v) lines_[qualified(key)] = line_of(v);
    return v;
  }

  bool has(const std::string& key) const { return node_ && node_.IsMap() && node_[key]; }

  void finish() const {
    if (!node_ || node_.IsNull()) return;
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed_.count(key)) {
        throw ParseError(line_of(kv.first), "unknown key '" + qualified(key) + "'");
      }
    }
  }

 private:
  std::string qualified(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  YAML::Node node_;
  std::string prefix_;
  std::map<std::string, int>& lines_;
  std::set<std::string> allowed_;
};

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

RunConfig parse_node(const YAML::Node& root, const std::filesystem::path& base_dir) {
  if (root && !root.IsNull() && !root.IsMap()) throw ParseError(line_of(root), "document must be a mapping");
  std::map<std::string, int> lines;
  RunConfig cfg;
  Section top(root, "", lines);

  Section model(top.child("model"), "model", lines);
  model.read("chi", cfg.params.chi);
  model.read("r", cfg.params.r);
  model.read("mu", cfg.params.mu);
  model.read("k", cfg.params.k);
  model.read("alpha", cfg.params.alpha);
  model.read("beta", cfg.params.beta);
  model.read("kappa", cfg.params.kappa);
  model.finish();

  Section grid(top.child("grid"), "grid", lines);
  grid.read("nx", cfg.grid.nx);
  grid.read("ny", cfg.grid.ny);
  grid.read("lx", cfg.grid.lx);
  grid.read("ly", cfg.grid.ly);
  grid.finish();

  Section init(top.child("initial"), "initial", lines);
  std::string kind = "constant";
  init.read("kind", kind);
  if (kind == "constant") {
    cfg.initial.kind = InitialSpec::Kind::Constant;
  } else if (kind == "gaussian_bumps") {
    cfg.initial.kind = InitialSpec::Kind::GaussianBumps;
  } else if (kind == "from_file") {
    cfg.initial.kind = InitialSpec::Kind::FromFile;
  } else {
    throw ParseError(lines["initial.kind"], "initial.kind must be constant, gaussian_bumps or from_file");
  }
  init.read("u0", cfg.initial.u0);
  init.read("v0", cfg.initial.v0);
  init.read("count", cfg.initial.count);
  init.read("amplitude", cfg.initial.amplitude);
  init.read("width", cfg.initial.width);
  init.read("v_background", cfg.initial.v_background);
  std::string path;
  init.read("path", path);
  cfg.initial.path = resolve(path, base_dir);
  if (const YAML::Node bumps = init.child("bumps"); bumps && !bumps.IsNull()) {
    if (!bumps.IsSequence()) throw ParseError(line_of(bumps), "initial.bumps must be a list");
    for (const auto& b : bumps) {
      Bump bump;
      bump.amplitude = cfg.initial.amplitude;
      bump.width = cfg.initial.width;
      Section s(b, "initial.bumps[]", lines);
      s.read("x", bump.x);
      s.read("y", bump.y);
      s.read("amplitude", bump.amplitude);
      s.read("width", bump.width);
      s.finish();
      cfg.initial.bumps.push_back(bump);
    }
  }
  init.finish();

  Section control(top.child("control"), "control", lines);
  control.read("t_end", cfg.control.t_end);
  control.read("dt_init", cfg.control.dt_init);
  control.read("dt_min", cfg.control.dt_min);
  control.read("dt_max", cfg.control.dt_max);
  control.read("cfl_safety", cfg.control.cfl_safety);
  cfg.blowup_threshold_set = control.has("blowup_threshold");
  control.read("blowup_threshold", cfg.control.blowup_threshold);
  control.read("solver_tol", cfg.control.solver_tol);
  control.read("max_iter", cfg.control.max_iter);
  control.read("jacobi", cfg.control.jacobi);
  control.finish();

  Section diag(top.child("diagnostics"), "diagnostics", lines);
  diag.read("sample_interval", cfg.diag.sample_interval);
  diag.read("p_exponent", cfg.diag.p_exponent);
  diag.read("q_exponent", cfg.diag.q_exponent);
  diag.read("lambda", cfg.diag.lambda);
  diag.read("bound_tolerance", cfg.diag.bound_tolerance);
  diag.read("plateau_tolerance", cfg.diag.plateau_tolerance);
  diag.finish();

  std::string output_dir = cfg.output_dir.string();
  top.read("output_dir", output_dir);
  cfg.output_dir = resolve(output_dir, base_dir);
  top.read("seed", cfg.seed);
  top.finish();

  cfg.diag.tau = window_length(cfg.control.t_end);

  auto line_for = [&](const std::string& field) {
    for (const auto& [key, line] : lines) {
      if (key == field || (key.size() > field.size() && key.ends_with("." + field))) return line;
    }
    return 0;
  };
  try {
    validate_parameters(cfg.params);
    (void)cfg.grid.build();
    validate_control(cfg.control);
    validate_diagnostics(cfg.diag);
    validate_initial_data(build_initial_data(cfg), cfg.grid.build());
  } catch (const OutOfRange& e) {
    throw ValidationError(e.field(), line_for(e.field()), e.what());
  } catch (const InitialDataError& e) {
    throw ValidationError("initial", line_for("kind"), e.what());
  } catch (const IoError& e) {
    throw ValidationError("initial.path", line_for("path"), e.what());
  }
  return cfg;
}

YAML::Node load_yaml(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.mark.line + 1, e.msg);
  }
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  return parse_node(load_yaml(text), base_dir);
}

RunConfig load_config(const std::filesystem::path& file) {
  return parse_config(read_file(file), file.parent_path());
}

SweepConfig parse_sweep(const std::string& text, const std::filesystem::path& base_dir) {
  const YAML::Node root = load_yaml(text);
  std::map<std::string, int> lines;
  Section top(root, "", lines);
  SweepConfig sweep;
  sweep.base_dir = base_dir;
  const YAML::Node base = top.child("base");
  sweep.base = parse_node(base, base_dir);
  YAML::Emitter emitter;
  emitter << (base ? base : YAML::Node(YAML::NodeType::Map));
  sweep.base_document = emitter.c_str();
  if (const YAML::Node axes = top.child("axes")) {
    if (!axes.IsSequence()) throw ParseError(line_of(axes), "axes must be a list");
    for (const auto& a : axes) {
      Section s(a, "axes[]", lines);
      SweepAxis axis;
      s.read("name", axis.name);
      const YAML::Node values = s.child("values");
      s.finish();
      if (axis.name.empty()) throw ParseError(line_of(a), "axis needs a name");
      if (!values || !values.IsSequence() || values.size() == 0) {
        throw ParseError(line_of(a), "axis '" + axis.name + "' needs a non-empty list of values");
      }
      for (const auto& v : values) {
        try {
          axis.values.push_back(v.as<double>());
        } catch (const YAML::Exception&) {
          throw ParseError(line_of(v), "axis values must be numbers");
        }
      }
      sweep.axes.push_back(std::move(axis));
    }
  }
  top.read("max_parallel", sweep.max_parallel);
  top.read("max_runs", sweep.max_runs);
  top.finish();
  if (sweep.max_parallel < 1) throw ValidationError("max_parallel", lines["max_parallel"], "must be >= 1");
  std::size_t total = 1;
  for (const auto& a : sweep.axes) total *= a.values.size();
  if (total > static_cast<std::size_t>(sweep.max_runs)) {
    throw ValidationError("axes", lines["axes"],
                          std::to_string(total) + " runs exceed max_runs = " + std::to_string(sweep.max_runs));
  }
  // resolve every point now so a bad axis value fails before anything runs
  (void)expand_sweep(sweep);
  return sweep;
}

SweepConfig load_sweep(const std::filesystem::path& file) {
  return parse_sweep(read_file(file), file.parent_path());
}

std::vector<SweepPoint> expand_sweep(const SweepConfig& sweep) {
  std::vector<SweepPoint> points;
  std::vector<std::size_t> idx(sweep.axes.size(), 0);
  while (true) {
    YAML::Node doc = YAML::Load(sweep.base_document);
    if (!doc || doc.IsNull()) doc = YAML::Node(YAML::NodeType::Map);
    SweepPoint point;
    for (std::size_t a = 0; a < sweep.axes.size(); ++a) {
      const SweepAxis& axis = sweep.axes[a];
      const double value = axis.values[idx[a]];
      point.values.push_back(value);
      // walk/create the dotted path
      std::vector<std::string> parts;
      std::stringstream ss(axis.name);
      for (std::string part; std::getline(ss, part, '.');) parts.push_back(part);
      std::vector<YAML::Node> chain{doc};
      for (std::size_t i = 0; i + 1 < parts.size(); ++i) chain.push_back(chain.back()[parts[i]]);
      chain.back()[parts.back()] = value;
    }
    point.config = parse_node(doc, sweep.base_dir);
    points.push_back(std::move(point));

    std::size_t a = sweep.axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < sweep.axes[a].values.size()) break;
      idx[a] = 0;
      if (a == 0) return points;
    }
    if (sweep.axes.empty()) return points;
  }
}

InitialData build_initial_data(const RunConfig& cfg) {
  const Grid g = cfg.grid.build();
  const InitialSpec& spec = cfg.initial;
  switch (spec.kind) {
    case InitialSpec::Kind::Constant:
      return {ScalarField(g, spec.u0), ScalarField(g, spec.v0)};
    case InitialSpec::Kind::GaussianBumps: {
      std::vector<Bump> bumps = spec.bumps;
      if (bumps.empty()) {
        if (spec.count < 1) throw OutOfRange("count", "need at least one bump");
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> fx(0.15 * g.lx(), 0.85 * g.lx());
        std::uniform_real_distribution<double> fy(0.15 * g.ly(), 0.85 * g.ly());
        for (int b = 0; b < spec.count; ++b) {
          const double x = fx(rng);
          const double y = fy(rng);
          bumps.push_back({x, y, spec.amplitude, spec.width});
        }
      }
      for (const auto& b : bumps) {
        if (!(b.width > 0.0)) throw OutOfRange("width", "bump width must be > 0");
        if (!(b.amplitude >= 0.0)) throw OutOfRange("amplitude", "bump amplitude must be >= 0");
      }
      ScalarField u = ScalarField::sample(g, [&](double x, double y) {
        double sum = 0.0;
        for (const auto& b : bumps) {
          const double d2 = (x - b.x) * (x - b.x) + (y - b.y) * (y - b.y);
          sum += b.amplitude * std::exp(-d2 / (2.0 * b.width * b.width));
        }
        return sum;
      });
      return {std::move(u), ScalarField(g, spec.v_background)};
    }
    case InitialSpec::Kind::FromFile: {
      if (spec.path.empty()) throw IoError("initial.path is required for from_file");
      ScalarField u = read_field_csv(spec.path / "u.csv");
      ScalarField v = read_field_csv(spec.path / "v.csv");
      if (!(u.grid() == g) || !(v.grid() == g)) {
        throw IoError(spec.path.string() + ": fields do not match the configured grid");
      }
      return {std::move(u), std::move(v)};
    }
  }
  throw Error("unreachable initial kind");
}

}  // namespace chemo
