#include "blaschke/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <Eigen/Dense>

#include "random.hpp"

namespace blaschke {

void ContinuationConfig::validate() const {
  if (!(dt_min > 0.0) || !(dt_min <= dt_initial) || !(dt_initial <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "need 0 < dt_min <= dt_initial <= 1");
  }
  if (!(newton_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "newton_tol must be positive");
  if (max_newton_iters < 1 || max_steps < 1) {
    throw Error(ErrorCode::InvalidArgument, "iteration limits must be positive");
  }
}

InitialBody initial_polyhedron(std::span<const Direction> directions) {
  InitialBody body;
  body.support.directions.assign(directions.begin(), directions.end());
  body.support.support_numbers.assign(directions.size(), 1.0);
  body.mesh = intersect_halfspaces(body.support);
  body.areas = body.mesh.face_areas;
  return body;
}

Eigen::MatrixXd area_jacobian(const MeshPolyhedron& p) {
  const auto k = static_cast<Eigen::Index>(p.face_slots());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(k, k);
  for (const auto& [pair, len] : p.edge_lengths) {
    const double theta = p.face_normals[pair.first].angle_to(p.face_normals[pair.second]);
    if (theta < tol::kMergeAngle) {
      std::ostringstream msg;
      msg << "faces " << pair.first << " and " << pair.second << " are adjacent and parallel";
      throw Error(ErrorCode::DegenerateAngle, msg.str());
    }
    const double s = std::sin(theta);
    const auto i = static_cast<Eigen::Index>(pair.first);
    const auto j = static_cast<Eigen::Index>(pair.second);
    jac(i, j) += len / s;
    jac(j, i) += len / s;
    const double diag = -len * std::cos(theta) / s;
    jac(i, i) += diag;
    jac(j, j) += diag;
  }
  return jac;
}

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& jacobian, const Eigen::VectorXd& rhs) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(1e-11);
  cod.compute(jacobian);
  return cod.solve(rhs);
}

namespace {

struct Evaluation {
  MeshPolyhedron mesh;
  Eigen::VectorXd areas;
};

std::optional<Evaluation> evaluate(const std::vector<Direction>& dirs, const Eigen::VectorXd& h) {
  if (!h.allFinite()) return std::nullopt;
  SupportPolyhedron sp{dirs, std::vector<double>(h.data(), h.data() + h.size())};
  try {
    Evaluation e{intersect_halfspaces(sp), Eigen::VectorXd()};
    e.areas = Eigen::Map<const Eigen::VectorXd>(e.mesh.face_areas.data(), h.size());
    return e;
  } catch (const Error&) {
    return std::nullopt;
  }
}

double relative_residual(const Eigen::VectorXd& target, const Eigen::VectorXd& areas) {
  return (target - areas).cwiseAbs().maxCoeff() / target.maxCoeff();
}

}  // namespace

SolveResult continuation_solve(const Herisson& her, const ContinuationConfig& cfg) {
  cfg.validate();
  const auto dirs = her.directions();
  const auto k = static_cast<Eigen::Index>(dirs.size());
  if (k < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 directions");

  const InitialBody start = initial_polyhedron(dirs);
  const auto target_areas = her.areas();
  const Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(target_areas.data(), k);
  const Eigen::VectorXd initial = Eigen::Map<const Eigen::VectorXd>(start.areas.data(), k);
  const double total = target.sum();
  auto path = [&](double t) -> Eigen::VectorXd { return (1.0 - t) * initial + t * target; };

  SolveTrace trace;
  Eigen::VectorXd h = Eigen::VectorXd::Ones(k);
  Evaluation current{start.mesh, initial};
  std::set<FacePair> adjacency = face_adjacency(current.mesh);

  double t = 0.0;
  if (relative_residual(target, initial) <= cfg.newton_tol) t = 1.0;
  double dt = cfg.dt_initial;
  long attempts = 0;

  while (t < 1.0) {
    if (++attempts > cfg.max_steps) {
      throw SolveError(ErrorCode::StepSizeUnderflow, "step budget exhausted", trace);
    }
    const double t_next = std::min(1.0, t + dt);
    const Eigen::VectorXd goal = path(t_next);

    // Predictor from the current Jacobian, then Newton with the Jacobian of
    // each new iterate.
    std::optional<Evaluation> trial;
    Eigen::VectorXd h_trial = h;
    bool ok = false;
    double residual = std::numeric_limits<double>::infinity();
    try {
      h_trial = h + min_norm_solve(area_jacobian(current.mesh), goal - current.areas);
      for (int iter = 0; iter <= cfg.max_newton_iters; ++iter) {
        trial = evaluate(dirs, h_trial);
        if (!trial) break;
        if (trial->areas.minCoeff() < 1e-12 * total) break;
        const double r = relative_residual(goal, trial->areas);
        if (r <= cfg.newton_tol) {
          residual = r;
          ok = true;
          break;
        }
        if (iter > 0 && r > 2.0 * residual) break;
        residual = r;
        if (iter == cfg.max_newton_iters) break;
        h_trial += min_norm_solve(area_jacobian(trial->mesh), goal - trial->areas);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateAngle) throw;
      ok = false;
    }

    if (!ok) {
      dt *= 0.5;
      if (dt < cfg.dt_min) {
        std::ostringstream msg;
        msg << "step size fell below " << cfg.dt_min << " at t=" << t;
        throw SolveError(ErrorCode::StepSizeUnderflow, msg.str(), trace);
      }
      continue;
    }

    h = h_trial;
    current = std::move(*trial);
    t = t_next;
    ++trace.steps_taken;
    trace.dt_history.push_back(dt);
    trace.step_residuals.push_back(residual);
    auto adj = face_adjacency(current.mesh);
    if (adj != adjacency) {
      ++trace.combinatorial_changes;
      adjacency = std::move(adj);
    }
    dt = std::min(cfg.dt_initial, 2.0 * dt);
  }

  // Polish at t = 1 while Newton keeps improving.
  double residual = relative_residual(target, current.areas);
  for (int iter = 0; iter < cfg.max_newton_iters && residual > 1e-14; ++iter) {
    Eigen::VectorXd h_next;
    try {
      h_next = h + min_norm_solve(area_jacobian(current.mesh), target - current.areas);
    } catch (const Error&) {
      break;
    }
    auto next = evaluate(dirs, h_next);
    if (!next) break;
    const double r = relative_residual(target, next->areas);
    if (!(r < residual)) break;
    h = h_next;
    current = std::move(*next);
    residual = r;
  }
  trace.final_residual = residual;
  if (!(residual <= cfg.newton_tol)) {
    std::ostringstream msg;
    msg << "final area residual " << residual << " above tolerance " << cfg.newton_tol;
    throw SolveError(ErrorCode::NewtonDivergence, msg.str(), trace);
  }

  const Vec3 c = current.mesh.vertex_centroid();
  SolveResult out;
  out.support.directions = dirs;
  out.support.support_numbers.resize(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) out.support.support_numbers[j] = h[j] - dirs[j].vec().dot(c);
  out.mesh = translated(current.mesh, -c);
  out.trace = std::move(trace);
  return out;
}

MeshPolyhedron oracle_solve_small(const Herisson& her, std::uint64_t seed) {
  const auto dirs = her.directions();
  const auto k = static_cast<Eigen::Index>(dirs.size());
  if (k > 8) throw Error(ErrorCode::InvalidArgument, "oracle solver handles at most 8 directions");
  const auto target_areas = her.areas();
  const Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(target_areas.data(), k);
  const double fmax = target.maxCoeff();
  const InitialBody start = initial_polyhedron(dirs);
  double start_total = 0.0;
  for (double a : start.areas) start_total += a;
  const double base = std::sqrt(target.sum() / start_total);

  auto cost_of = [&](const Evaluation& e) { return (e.areas - target).squaredNorm(); };
  detail::Rng rng(seed);
  for (int s = 0; s < 20; ++s) {
    Eigen::VectorXd h(k);
    for (Eigen::Index j = 0; j < k; ++j) h[j] = base * (s == 0 ? 1.0 : rng.uniform(0.8, 1.2));
    auto cur = evaluate(dirs, h);
    if (!cur) continue;
    double cost = cost_of(*cur);
    double mu = 1e-3 * fmax;
    for (int iter = 0; iter < 500 && cost > 1e-28 * fmax * fmax; ++iter) {
      // Central differences, independent of the analytic Jacobian.
      Eigen::MatrixXd jac(k, k);
      const double step = 1e-6 * base;
      bool fd_ok = true;
      for (Eigen::Index j = 0; j < k && fd_ok; ++j) {
        Eigen::VectorXd hp = h, hm = h;
        hp[j] += step;
        hm[j] -= step;
        auto ep = evaluate(dirs, hp), em = evaluate(dirs, hm);
        if (!ep || !em) {
          fd_ok = false;
          break;
        }
        jac.col(j) = (ep->areas - em->areas) / (2.0 * step);
      }
      if (!fd_ok) break;
      const Eigen::VectorXd r = cur->areas - target;
      const Eigen::MatrixXd normal = jac.transpose() * jac;
      const Eigen::VectorXd grad = jac.transpose() * r;
      bool improved = false;
      for (int tries = 0; tries < 30; ++tries) {
        Eigen::MatrixXd damped = normal;
        damped.diagonal().array() += mu;
        const Eigen::VectorXd delta = -damped.ldlt().solve(grad);
        auto next = evaluate(dirs, h + delta);
        if (next && cost_of(*next) < cost) {
          h += delta;
          cost = cost_of(*next);
          cur = std::move(next);
          mu = std::max(mu / 3.0, 1e-15 * fmax);
          improved = true;
          break;
        }
        mu *= 10.0;
      }
      if (!improved) break;
    }
    if (cost <= 1e-10 * fmax * fmax) {
      const Vec3 c = cur->mesh.vertex_centroid();
      return translated(cur->mesh, -c);
    }
  }
  throw Error(ErrorCode::OracleFailed, "no multi-start run reached the residual threshold");
}

}  // namespace blaschke
