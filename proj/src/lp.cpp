#include "lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "blaschke/error.hpp"

namespace blaschke::detail {

namespace {

constexpr int kRows = 4;

// Dense tableau over columns [y_0..y_{k-1}, a_0..a_3 | rhs]. Row r holds the
// constraint, basis[r] its basic column.
class Tableau {
 public:
  Tableau(std::span<const Vec3> normals)
      : k_(static_cast<int>(normals.size())), cols_(k_ + kRows), t_(kRows, cols_ + 1) {
    t_.setZero();
    for (int j = 0; j < k_; ++j) {
      for (int r = 0; r < 3; ++r) t_(r, j) = normals[j][r];
      t_(3, j) = 1.0;
    }
    t_(3, cols_) = 1.0;
    for (int r = 0; r < kRows; ++r) {
      // Rows with zero right-hand side may be negated freely; keep the
      // artificial identity intact.
      t_(r, k_ + r) = 1.0;
      basis_[r] = k_ + r;
    }
  }

  // Minimizes cost . x over the current feasible basis. Columns at or beyond
  // `entering_limit` never enter. Returns false when unbounded.
  bool optimize(const Eigen::VectorXd& cost, int entering_limit) {
    const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
    const double eps = 1e-12 * scale;
    for (int iter = 0; iter < 50 * (cols_ + 10); ++iter) {
      Eigen::VectorXd reduced = reduced_costs(cost);
      // Bland's rule: first improving column.
      int enter = -1;
      for (int j = 0; j < entering_limit; ++j) {
        if (reduced[j] < -eps && !is_basic(j)) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < kRows; ++r) {
        const double a = t_(r, enter);
        if (a > 1e-12) {
          const double ratio = t_(r, cols_) / a;
          if (ratio < best - 1e-15 || (ratio <= best + 1e-15 && leave >= 0 && basis_[r] < basis_[leave])) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    return true;
  }

  Eigen::VectorXd reduced_costs(const Eigen::VectorXd& cost) const {
    Eigen::VectorXd reduced = cost;
    for (int r = 0; r < kRows; ++r) {
      const double cb = cost[basis_[r]];
      if (cb != 0.0) reduced -= cb * t_.row(r).head(cols_).transpose();
    }
    return reduced;
  }

  // Drive artificials out of the basis after phase one where possible.
  void purge_artificials() {
    for (int r = 0; r < kRows; ++r) {
      if (basis_[r] < k_) continue;
      int best = -1;
      double best_abs = 1e-9;
      for (int j = 0; j < k_; ++j) {
        if (!is_basic(j) && std::abs(t_(r, j)) > best_abs) {
          best_abs = std::abs(t_(r, j));
          best = j;
        }
      }
      if (best >= 0) pivot(r, best);
    }
  }

  double value(int col) const {
    for (int r = 0; r < kRows; ++r)
      if (basis_[r] == col) return t_(r, cols_);
    return 0.0;
  }

  int k() const { return k_; }
  int cols() const { return cols_; }

 private:
  bool is_basic(int col) const { return std::find(basis_, basis_ + kRows, col) != basis_ + kRows; }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int r = 0; r < kRows; ++r) {
      if (r != row && t_(r, col) != 0.0) t_.row(r) -= t_(r, col) * t_.row(row);
    }
    basis_[row] = col;
  }

  int k_;
  int cols_;
  Eigen::MatrixXd t_;
  int basis_[kRows];
};

}  // namespace

MarginSolution maximize_margin(std::span<const Vec3> normals, std::span<const double> rhs) {
  const int k = static_cast<int>(normals.size());
  if (k == 0 || rhs.size() != normals.size()) {
    throw Error(ErrorCode::InvalidArgument, "margin LP needs one right-hand side per normal");
  }
  Tableau tab(normals);

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(tab.cols());
  phase1.tail(kRows).setOnes();
  tab.optimize(phase1, tab.k());
  double infeasibility = 0.0;
  for (int r = 0; r < kRows; ++r) infeasibility += tab.value(k + r);
  if (infeasibility > 1e-10) {
    throw Error(ErrorCode::UnboundedRegion, "normals do not surround the origin");
  }
  tab.purge_artificials();

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(tab.cols());
  for (int j = 0; j < k; ++j) cost[j] = rhs[j];
  if (!tab.optimize(cost, k)) {
    throw Error(ErrorCode::UnboundedRegion, "margin LP dual unbounded");
  }

  // Simplex multipliers: reduced cost of artificial r is -pi_r.
  const Eigen::VectorXd reduced = tab.reduced_costs(cost);
  MarginSolution sol;
  sol.point = Vec3(-reduced[k], -reduced[k + 1], -reduced[k + 2]);
  sol.weights.resize(k);
  for (int j = 0; j < k; ++j) sol.weights[j] = std::max(0.0, tab.value(j));
  double margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < k; ++j) margin = std::min(margin, rhs[j] - normals[j].dot(sol.point));
  sol.margin = margin;
  return sol;
}

}  // namespace blaschke::detail
