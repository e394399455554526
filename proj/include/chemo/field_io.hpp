#pragma once

#include <filesystem>
#include <string>

#include "chemo/field.hpp"

namespace chemo {

// CSV layout: header line "nx,ny,lx,ly", one line holding those four values,
// then nx·ny values in row-major order, one row of nx values per line.
// Values are written in shortest round-trip form so reading back is bit-exact.
void write_field_csv(const ScalarField& f, const std::filesystem::path& path);
ScalarField read_field_csv(const std::filesystem::path& path);

// Flat little-endian binary: exactly nx·ny doubles, no header.
void write_field_binary(const ScalarField& f, const std::filesystem::path& path);
ScalarField read_field_binary(const Grid& grid, const std::filesystem::path& path);

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

}  // namespace chemo
