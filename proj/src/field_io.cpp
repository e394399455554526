#include "chemo/field_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "chemo/errors.hpp"

namespace chemo {

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw IoError("cannot format double");
  return std::string(buf.data(), end);
}

namespace {

double parse_double(std::string_view s, const std::filesystem::path& path) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError(path.string() + ": malformed number '" + std::string(s) + "'");
  }
  return x;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

void write_field_csv(const ScalarField& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const Grid& g = f.grid();
  out << "nx,ny,lx,ly\n";
  out << g.nx() << ',' << g.ny() << ',' << format_double(g.lx()) << ',' << format_double(g.ly()) << '\n';
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (i) out << ',';
      out << format_double(f.at(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

ScalarField read_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("nx,ny,lx,ly", 0) != 0) {
    throw IoError(path.string() + ": missing 'nx,ny,lx,ly' header");
  }
  if (!std::getline(in, line)) throw IoError(path.string() + ": missing grid line");
  auto head = split_commas(line);
  if (head.size() != 4) throw IoError(path.string() + ": grid line needs 4 values");
  const Grid grid(std::stoi(head[0]), std::stoi(head[1]), parse_double(head[2], path),
                  parse_double(head[3], path));
  std::vector<double> values;
  values.reserve(grid.size());
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    for (const auto& cell : split_commas(line)) values.push_back(parse_double(cell, path));
  }
  if (values.size() != grid.size()) {
    throw IoError(path.string() + ": expected " + std::to_string(grid.size()) + " values, found " +
                  std::to_string(values.size()));
  }
  return ScalarField(grid, std::move(values));
}

void write_field_binary(const ScalarField& f, const std::filesystem::path& path) {
  static_assert(std::endian::native == std::endian::little, "binary fields are little-endian");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  auto values = f.values();
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out) throw IoError("write failed: " + path.string());
}

ScalarField read_field_binary(const Grid& grid, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open " + path.string());
  const auto bytes = static_cast<std::size_t>(in.tellg());
  if (bytes != grid.size() * sizeof(double)) {
    throw IoError(path.string() + ": size " + std::to_string(bytes) + " does not match grid");
  }
  in.seekg(0);
  std::vector<double> values(grid.size());
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(bytes));
  if (!in) throw IoError("read failed: " + path.string());
  return ScalarField(grid, std::move(values));
}

}  // namespace chemo
