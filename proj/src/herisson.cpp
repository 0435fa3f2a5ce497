#include "blaschke/herisson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "blaschke/error.hpp"
#include "random.hpp"

namespace blaschke {

namespace {

constexpr double kRepairGate = 1e-4;
constexpr double kClosureTol = 1e-8;
constexpr double kAlreadyClosed = 1e-13;

Eigen::Matrix3Xd direction_matrix(std::span<const HerissonEntry> entries) {
  Eigen::Matrix3Xd n(3, static_cast<Eigen::Index>(entries.size()));
  for (std::size_t j = 0; j < entries.size(); ++j) n.col(static_cast<Eigen::Index>(j)) = entries[j].direction.vec();
  return n;
}

Vec3 residual_of(std::span<const HerissonEntry> entries) {
  Vec3 r = Vec3::Zero();
  for (const auto& e : entries) r += e.area * e.direction.vec();
  return r;
}

double total_of(std::span<const HerissonEntry> entries) {
  double s = 0.0;
  for (const auto& e : entries) s += e.area;
  return s;
}

}  // namespace

std::vector<Direction> Herisson::directions() const {
  std::vector<Direction> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.direction);
  return out;
}

std::vector<double> Herisson::areas() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.area);
  return out;
}

double Herisson::total_area() const { return total_of(entries_); }

Vec3 Herisson::closure_residual() const { return residual_of(entries_); }

std::optional<std::size_t> Herisson::find(const Direction& d, double angle) const {
  std::optional<std::size_t> best;
  double best_angle = angle;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double a = entries_[i].direction.angle_to(d);
    if (a < best_angle) {
      best_angle = a;
      best = i;
    }
  }
  return best;
}

Herisson validate_herisson(std::span<const HerissonEntry> raw) {
  if (raw.empty()) throw Error(ErrorCode::InvalidArgument, "herisson has no entries");
  for (std::size_t j = 0; j < raw.size(); ++j) {
    if (!(raw[j].area > 0.0) || !std::isfinite(raw[j].area)) {
      std::ostringstream msg;
      msg << "entry " << j << " has area " << raw[j].area;
      throw Error(ErrorCode::NonPositiveArea, msg.str());
    }
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (raw[i].direction.angle_to(raw[j].direction) < tol::kMergeAngle) {
        std::ostringstream msg;
        msg << "entries " << i << " and " << j << " share a direction";
        throw Error(ErrorCode::DuplicateDirection, msg.str());
      }
    }
  }
  const Eigen::Matrix3Xd n = direction_matrix(raw);
  const Eigen::JacobiSVD<Eigen::Matrix3Xd> svd(n);
  const auto sv = svd.singularValues();
  if (sv.size() < 3 || sv[2] <= 1e-9 * sv[0]) {
    throw Error(ErrorCode::RankDeficient, "directions lie in a single plane through the origin");
  }

  Herisson h;
  h.entries_.assign(raw.begin(), raw.end());
  const double total = total_of(raw);
  const Vec3 r = residual_of(raw);
  const double rn = r.norm();
  if (rn > kRepairGate * total) {
    std::ostringstream msg;
    msg << "closure residual " << rn << " exceeds " << kRepairGate << " of total area " << total;
    throw Error(ErrorCode::ClosureViolation, msg.str());
  }
  if (rn > kAlreadyClosed * total) {
    // Minimum-norm change dF with N dF = -r.
    const Eigen::Matrix3d gram = n * n.transpose();
    const Eigen::VectorXd delta = -n.transpose() * gram.ldlt().solve(r);
    for (std::size_t j = 0; j < raw.size(); ++j) {
      h.entries_[j].area += delta[static_cast<Eigen::Index>(j)];
      if (!(h.entries_[j].area > 0.0)) {
        std::ostringstream msg;
        msg << "closure repair makes entry " << j << " non-positive";
        throw Error(ErrorCode::ClosureViolation, msg.str());
      }
    }
    h.correction_ = delta.norm();
  }
  const double after = h.closure_residual().norm();
  if (after > kClosureTol * h.total_area()) {
    throw Error(ErrorCode::ClosureViolation, "closure residual remains after repair");
  }
  return h;
}

Herisson herisson_of_mesh(const MeshPolyhedron& p) {
  std::vector<HerissonEntry> raw;
  for (std::size_t j = 0; j < p.face_slots(); ++j) {
    if (!p.faces[j].empty() && p.face_areas[j] > 0.0) raw.push_back({p.face_normals[j], p.face_areas[j]});
  }
  return validate_herisson(raw);
}

Herisson blaschke_add(const Herisson& a, const Herisson& b) {
  Herisson out;
  out.entries_ = a.entries_;
  for (const auto& e : b.entries_) {
    if (auto idx = a.find(e.direction)) {
      out.entries_[*idx].area += e.area;
    } else {
      out.entries_.push_back(e);
    }
  }
  return out;
}

Herisson blaschke_scale(const Herisson& h, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::NonPositiveScale, "scale must be positive");
  Herisson out = h;
  for (auto& e : out.entries_) e.area *= t;
  out.correction_ = 0.0;
  return out;
}

Herisson random_herisson(int k, std::uint64_t seed) {
  if (k < 4) throw Error(ErrorCode::InvalidArgument, "random herisson needs k >= 4");
  detail::Rng rng(seed);
  // Minimum separation: a fraction of the mean spacing of k points.
  const double min_sep = 0.3 * std::sqrt(4.0 * std::numbers::pi / k);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Vec3> dirs;
    int guard = 0;
    while (static_cast<int>(dirs.size()) < k && guard < 100000) {
      ++guard;
      const Vec3 d = rng.sphere();
      bool close = false;
      for (const auto& e : dirs) {
        if (std::atan2(e.cross(d).norm(), e.dot(d)) < min_sep) {
          close = true;
          break;
        }
      }
      if (!close) dirs.push_back(d);
    }
    if (static_cast<int>(dirs.size()) < k) continue;

    Eigen::Matrix3Xd n(3, k);
    Eigen::VectorXd f(k);
    for (int j = 0; j < k; ++j) {
      n.col(j) = dirs[j];
      f[j] = rng.uniform(0.5, 2.0);
    }
    const Eigen::Matrix3d gram = n * n.transpose();
    if (Eigen::JacobiSVD<Eigen::Matrix3d>(gram).singularValues()[2] < 1e-6) continue;
    f -= n.transpose() * gram.ldlt().solve(n * f);
    if (f.minCoeff() < 0.1) continue;

    std::vector<HerissonEntry> raw(k);
    for (int j = 0; j < k; ++j) raw[j] = {Direction::from_vector(dirs[j]), f[j]};
    return validate_herisson(raw);
  }
  std::ostringstream msg;
  msg << "no valid herisson after 1000 attempts (k=" << k << ", seed=" << seed << ")";
  throw Error(ErrorCode::GenerationFailed, msg.str());
}

std::optional<double> homothety_ratio(const Herisson& a, const Herisson& b, double rel_tol) {
  if (a.size() != b.size() || a.size() == 0) return std::nullopt;
  std::optional<double> ratio;
  for (const auto& e : a.entries()) {
    const auto idx = b.find(e.direction);
    if (!idx) return std::nullopt;
    const double r = b[*idx].area / e.area;
    if (!ratio) {
      ratio = r;
    } else if (std::abs(r - *ratio) > rel_tol * *ratio) {
      return std::nullopt;
    }
  }
  return ratio;
}

std::optional<std::size_t> dominance_violation(const Herisson& small, const Herisson& large, double slack) {
  for (std::size_t i = 0; i < small.size(); ++i) {
    const auto idx = large.find(small[i].direction);
    if (!idx || large[*idx].area < small[i].area - slack) return i;
  }
  return std::nullopt;
}

}  // namespace blaschke
