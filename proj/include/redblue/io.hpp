#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "redblue/coloring.hpp"
#include "redblue/separated.hpp"

// Text formats.
//
// Point-set file:
//   line 1:  n R t count
//   then count lines of n space-separated coordinates
//
// Coloring file: the point-set layout with one extra header line
//   line 2:  x seed tie_tol
// inserted before the coordinates, followed by two id lines after them
// (Q members then S members, ascending, space separated, possibly empty).
//
// All floating-point values are written with shortest round-trip precision.

namespace redblue::io {

std::string format_double(double v);
std::string format_u64(std::uint64_t v);

void save_point_set(std::ostream& out, const SeparatedSet& set);
SeparatedSet load_point_set(std::istream& in);

void save_coloring(std::ostream& out, const Coloring& coloring);
Coloring load_coloring(std::istream& in);

void save_point_set_file(const std::string& path, const SeparatedSet& set);
SeparatedSet load_point_set_file(const std::string& path);
void save_coloring_file(const std::string& path, const Coloring& coloring);
Coloring load_coloring_file(const std::string& path);

}  // namespace redblue::io
