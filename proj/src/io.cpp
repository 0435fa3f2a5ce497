#include "blaschke/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "blaschke/error.hpp"

namespace blaschke {

namespace {

struct Line {
  std::size_t number;  // 1-based
  std::vector<std::string_view> tokens;
};

// Non-empty lines with '#' comments stripped, split on whitespace.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Line parsed{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) parsed.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!parsed.tokens.empty()) lines.push_back(std::move(parsed));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << "line " << line << ": " << what;
  throw Error(ErrorCode::ParseError, msg.str());
}

double to_real(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
    parse_fail(line, "expected a real number, got '" + std::string(tok) + "'");
  }
  return value;
}

long to_integer(std::string_view tok, std::size_t line) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    parse_fail(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return value;
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Herisson parse_herisson(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorCode::ParseError, "empty herisson file");
  const auto& header = lines.front();
  if (header.tokens.size() != 1) parse_fail(header.number, "header must be a single face count");
  const long k = to_integer(header.tokens[0], header.number);
  if (k < 1) parse_fail(header.number, "face count must be positive");
  const std::size_t data_lines = lines.size() - 1;
  if (data_lines != static_cast<std::size_t>(k)) {
    std::ostringstream msg;
    msg << "header declares " << k << " faces but " << data_lines << " data lines follow";
    parse_fail(header.number, msg.str());
  }
  std::vector<HerissonEntry> raw;
  raw.reserve(static_cast<std::size_t>(k));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tokens.size() != 4) parse_fail(l.number, "expected 'nx ny nz area'");
    const Vec3 n(to_real(l.tokens[0], l.number), to_real(l.tokens[1], l.number), to_real(l.tokens[2], l.number));
    if (n.norm() == 0.0) parse_fail(l.number, "zero normal");
    raw.push_back({Direction::from_vector(n), to_real(l.tokens[3], l.number)});
  }
  return validate_herisson(raw);
}

std::string format_herisson(const Herisson& h) {
  std::string out = std::to_string(h.size()) + "\n";
  for (const auto& e : h.entries()) {
    out += fmt17(e.direction.x()) + " " + fmt17(e.direction.y()) + " " + fmt17(e.direction.z()) + " " +
           fmt17(e.area) + "\n";
  }
  return out;
}

std::string export_off(const MeshPolyhedron& p) {
  std::string out = "OFF\n";
  out += std::to_string(p.vertices.size()) + " " + std::to_string(p.face_count()) + " " +
         std::to_string(p.edge_count()) + "\n";
  for (const auto& v : p.vertices) out += fmt17(v.x()) + " " + fmt17(v.y()) + " " + fmt17(v.z()) + "\n";
  for (const auto& f : p.faces) {
    if (f.empty()) continue;
    out += std::to_string(f.size());
    for (auto idx : f) out += " " + std::to_string(idx);
    out += "\n";
  }
  return out;
}

MeshPolyhedron import_off(std::string_view text) {
  const auto lines = tokenize(text);
  std::size_t cur = 0;
  if (cur >= lines.size() || lines[cur].tokens.empty() || lines[cur].tokens[0] != "OFF") {
    throw Error(ErrorCode::ParseError, "missing OFF header");
  }
  std::vector<std::string_view> header(lines[cur].tokens.begin() + 1, lines[cur].tokens.end());
  std::size_t header_line = lines[cur].number;
  ++cur;
  if (header.empty()) {
    if (cur >= lines.size()) throw Error(ErrorCode::ParseError, "missing counts line");
    header = lines[cur].tokens;
    header_line = lines[cur].number;
    ++cur;
  }
  if (header.size() != 3) parse_fail(header_line, "expected 'V F E' counts");
  const long nv = to_integer(header[0], header_line);
  const long nf = to_integer(header[1], header_line);
  if (nv < 4 || nf < 4) parse_fail(header_line, "a closed polyhedron needs at least 4 vertices and faces");
  if (lines.size() - cur < static_cast<std::size_t>(nv + nf)) {
    parse_fail(header_line, "file ends before all vertices and faces are listed");
  }
  std::vector<Vec3> verts;
  for (long i = 0; i < nv; ++i, ++cur) {
    const auto& l = lines[cur];
    if (l.tokens.size() < 3) parse_fail(l.number, "expected three vertex coordinates");
    verts.emplace_back(to_real(l.tokens[0], l.number), to_real(l.tokens[1], l.number), to_real(l.tokens[2], l.number));
  }
  std::vector<std::vector<std::size_t>> faces;
  for (long i = 0; i < nf; ++i, ++cur) {
    const auto& l = lines[cur];
    const long n = to_integer(l.tokens[0], l.number);
    if (n < 3 || l.tokens.size() < static_cast<std::size_t>(n + 1)) parse_fail(l.number, "malformed face");
    std::vector<std::size_t> face;
    for (long j = 1; j <= n; ++j) {
      const long idx = to_integer(l.tokens[static_cast<std::size_t>(j)], l.number);
      if (idx < 0 || idx >= nv) parse_fail(l.number, "vertex index out of range");
      face.push_back(static_cast<std::size_t>(idx));
    }
    faces.push_back(std::move(face));
  }
  if (cur != lines.size()) parse_fail(lines[cur].number, "unexpected trailing data");

  MeshPolyhedron hull;
  try {
    hull = convex_hull(verts);
  } catch (const Error& e) {
    throw Error(ErrorCode::NonConvexInput, std::string("hull construction failed: ") + e.what());
  }
  if (hull.vertices.size() != verts.size()) {
    throw Error(ErrorCode::NonConvexInput, "some vertices are not extreme points of the hull");
  }
  const double tol = tol::kRelative * std::max(1.0, hull.diameter());
  double covered = 0.0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    Vec3 n = Vec3::Zero();
    const auto& c = faces[f];
    for (std::size_t i = 0; i < c.size(); ++i) n += verts[c[i]].cross(verts[c[(i + 1) % c.size()]]);
    covered += 0.5 * n.norm();
    bool supported = false;
    for (std::size_t h = 0; h < hull.face_slots() && !supported; ++h) {
      const Vec3& hn = hull.face_normals[h].vec();
      const double off = hull.face_offset(h);
      supported = n.dot(hn) > 0.0 && std::all_of(c.begin(), c.end(), [&](std::size_t v) {
                    return std::abs(hn.dot(verts[v]) - off) <= tol;
                  });
    }
    if (!supported) {
      std::ostringstream msg;
      msg << "face " << f << " does not lie on a supporting plane (or is wound inward)";
      throw Error(ErrorCode::NonConvexInput, msg.str());
    }
  }
  if (std::abs(covered - hull.total_area()) > 1e-9 * hull.total_area()) {
    throw Error(ErrorCode::NonConvexInput, "faces do not cover the hull boundary exactly once");
  }
  return hull;
}

SphericalPolygon parse_polygon(std::string_view text) {
  SphericalPolygon poly;
  for (const auto& l : tokenize(text)) {
    if (l.tokens.size() != 3) parse_fail(l.number, "expected three coordinates");
    Vec3 v(to_real(l.tokens[0], l.number), to_real(l.tokens[1], l.number), to_real(l.tokens[2], l.number));
    const double len = v.norm();
    if (std::abs(len - 1.0) > 1e-6) parse_fail(l.number, "vertex is not on the unit sphere");
    poly.vertices.push_back(v / len);
  }
  return poly;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace blaschke
