#pragma once

// Text formats: the herisson listing (face count, then one "nx ny nz F" line
// per face), OFF meshes and spherical polygon vertex lists.

#include <filesystem>
#include <string>
#include <string_view>

#include "blaschke/geometry.hpp"
#include "blaschke/herisson.hpp"
#include "blaschke/spherical.hpp"

namespace blaschke {

/// Normals need not be unit. Blank lines and '#' comments are ignored.
/// The result goes through validate_herisson.
Herisson parse_herisson(std::string_view text);

/// Canonical listing with 17 significant digits; parse_herisson inverts it
/// exactly.
std::string format_herisson(const Herisson& h);

/// OFF with 17-significant-digit coordinates; empty face slots are omitted.
std::string export_off(const MeshPolyhedron& p);

/// Reads OFF, rejects non-convex input and rebuilds the mesh via convex_hull.
MeshPolyhedron import_off(std::string_view text);

/// One vertex per line (three reals); vertices within 1e-6 of unit length
/// are normalized, others rejected. An empty list is the whole sphere.
SphericalPolygon parse_polygon(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace blaschke
