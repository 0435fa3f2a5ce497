#pragma once

// Reconstruction of a convex polyhedron from its face normals and areas by
// continuation from the body circumscribed about the unit sphere.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "blaschke/error.hpp"
#include "blaschke/geometry.hpp"
#include "blaschke/herisson.hpp"

namespace blaschke {

struct ContinuationConfig {
  double dt_initial = 0.01;
  double dt_min = 1e-6;
  /// Relative area residual: max_j |F_j - A_j| <= newton_tol * max_j F_j.
  double newton_tol = 1e-9;
  int max_newton_iters = 20;
  long max_steps = 100000;

  /// Throws InvalidArgument when the fields are inconsistent.
  void validate() const;
};

struct SolveTrace {
  long steps_taken = 0;
  std::vector<double> dt_history;
  /// Relative residual after each accepted corrector.
  std::vector<double> step_residuals;
  double final_residual = 0.0;
  /// Accepted steps whose face-adjacency graph differs from the previous one.
  int combinatorial_changes = 0;
};

/// Solver failure carrying the partial trace.
class SolveError : public Error {
 public:
  SolveError(ErrorCode code, const std::string& message, SolveTrace trace)
      : Error(code, message), trace_(std::move(trace)) {}
  const SolveTrace& trace() const { return trace_; }

 private:
  SolveTrace trace_;
};

struct SolveResult {
  SupportPolyhedron support;
  MeshPolyhedron mesh;
  SolveTrace trace;
};

struct InitialBody {
  SupportPolyhedron support;
  MeshPolyhedron mesh;
  /// Face areas of the starting body, index-aligned with the directions.
  std::vector<double> areas;
};

/// All support numbers 1: the polyhedron circumscribed about the unit sphere.
InitialBody initial_polyhedron(std::span<const Direction> directions);

/// Derivatives dF_i/dh_j of face areas with respect to support numbers.
///
/// Off the diagonal, l_ij / sin(theta_ij) for faces sharing an edge of length
/// l_ij, theta_ij being the angle between their normals. On the diagonal,
/// -sum_p l_jp cot(theta_jp), i.e. the cotangent of the interior dihedral
/// angle. Throws DegenerateAngle for (nearly) parallel adjacent faces.
Eigen::MatrixXd area_jacobian(const MeshPolyhedron& p);

/// Minimum-norm least-squares solution of J x = rhs. The translations
/// h_j += v . n_j span the kernel, so the result carries no translation.
Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& jacobian, const Eigen::VectorXd& rhs);

/// Marches F^t = (1 - t) F^0 + t F from t = 0 to 1 with an Euler predictor
/// and Newton corrector, halving the step on failure. The result is
/// recentered so that its vertex centroid is the origin.
SolveResult continuation_solve(const Herisson& h, const ContinuationConfig& cfg = {});

/// Independent reference solver for k <= 8: multi-start Levenberg-Marquardt
/// on sum_j (A_j(h) - F_j)^2 with a finite-difference Jacobian.
MeshPolyhedron oracle_solve_small(const Herisson& h, std::uint64_t seed = 0);

}  // namespace blaschke
