#include "blaschke/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blaschke/error.hpp"
#include "blaschke/sums.hpp"
#include "random.hpp"

namespace blaschke {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Equality: return "equality";
  }
  return "unknown";
}

std::string_view to_string(Check c) {
  switch (c) {
    case Check::BrunnMinkowski: return "bm";
    case Check::KneserSuss: return "ks";
    case Check::Monotonicity: return "thm71";
    case Check::SumComparison: return "thm75";
    case Check::Exponent: return "thm81";
  }
  return "unknown";
}

Check parse_check(std::string_view name) {
  for (Check c : {Check::BrunnMinkowski, Check::KneserSuss, Check::Monotonicity, Check::SumComparison,
                  Check::Exponent}) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown check '" + std::string(name) + "'");
}

InequalityReport make_report(std::string name, double lhs, double rhs, double equality_tol) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = lhs - rhs;
  r.equality_tol = equality_tol;
  const double band = equality_tol * std::max(std::abs(lhs), std::abs(rhs));
  if (std::abs(r.residual) <= band) {
    r.verdict = Verdict::Equality;
  } else {
    r.verdict = r.residual > 0.0 ? Verdict::Holds : Verdict::Fails;
  }
  return r;
}

namespace {

// Reports from precomputed volumes; shared by the public checks and the fuzz
// campaign so each trial solves every body once.
InequalityReport bm_report(double vp, double vq, double vsum) {
  return make_report("brunn_minkowski", std::cbrt(vsum), std::cbrt(vp) + std::cbrt(vq));
}

InequalityReport ks_report(double vp, double vq, double vbsum, bool homothetic) {
  auto r = make_report("kneser_suss", std::pow(vbsum, 2.0 / 3.0), std::pow(vp, 2.0 / 3.0) + std::pow(vq, 2.0 / 3.0));
  r.homothetic = homothetic;
  return r;
}

InequalityReport sumcmp_report(double vsum, double vbsum) { return make_report("sum_comparison", vsum, vbsum); }

ExponentReports exponent_reports(double vp, double vq, double vsum, double vbsum, double a) {
  const double e4 = a / 3.0;
  const double e5 = 2.0 * a / 3.0;
  ExponentReports out{
      make_report("exponent_minkowski", std::pow(vsum, e4), std::pow(vp, e4) + std::pow(vq, e4)),
      make_report("exponent_blaschke", std::pow(vbsum, e5), std::pow(vp, e5) + std::pow(vq, e5)),
  };
  if (a < 1.0) {
    out.minkowski.expected_failure = out.minkowski.verdict == Verdict::Fails;
    out.blaschke.expected_failure = out.blaschke.verdict == Verdict::Fails;
  }
  return out;
}

bool homothetic(const MeshPolyhedron& p, const MeshPolyhedron& q) {
  return homothety_ratio(herisson_of_mesh(p), herisson_of_mesh(q)).has_value();
}

void require_premise(const Herisson& hk, const Herisson& hl) {
  const double slack = 1e-9 * hl.total_area();
  if (auto bad = dominance_violation(hk, hl, slack)) {
    const auto& d = hk[*bad].direction;
    std::ostringstream msg;
    msg << "direction (" << d.x() << ", " << d.y() << ", " << d.z() << ") with area " << hk[*bad].area
        << " is not dominated";
    throw Error(ErrorCode::PremiseViolated, msg.str());
  }
}

}  // namespace

InequalityReport brunn_minkowski_check(const MeshPolyhedron& p, const MeshPolyhedron& q) {
  return bm_report(volume(p), volume(q), volume(minkowski_sum(p, q)));
}

InequalityReport kneser_suss_check(const MeshPolyhedron& p, const MeshPolyhedron& q, const ContinuationConfig& cfg) {
  return ks_report(volume(p), volume(q), volume(blaschke_sum_bodies(p, q, cfg)), homothetic(p, q));
}

InequalityReport monotonicity_check(const Herisson& hk, const Herisson& hl, const ContinuationConfig& cfg) {
  require_premise(hk, hl);
  const auto k_body = continuation_solve(hk, cfg).mesh;
  const auto l_body = continuation_solve(hl, cfg).mesh;
  auto r = make_report("monotonicity", volume(l_body), volume(k_body));
  r.contained = contains_by_translation(l_body, k_body).contained;
  return r;
}

InequalityReport sum_comparison_check(const MeshPolyhedron& p, const MeshPolyhedron& q,
                                      const ContinuationConfig& cfg) {
  return sumcmp_report(volume(minkowski_sum(p, q)), volume(blaschke_sum_bodies(p, q, cfg)));
}

ExponentReports exponent_check(const MeshPolyhedron& p, const MeshPolyhedron& q, double a,
                               const ContinuationConfig& cfg) {
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "exponent a must be positive");
  return exponent_reports(volume(p), volume(q), volume(minkowski_sum(p, q)),
                          volume(blaschke_sum_bodies(p, q, cfg)), a);
}

bool lemma_inequality(double a, double x) {
  if (!(a > 0.0) || !(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "power inequality needs a > 0 and x > 0");
  return std::pow(1.0 + x, a) >= 1.0 + std::pow(x, a);
}

// ---------------------------------------------------------------------------
// Fuzz campaign

void FuzzConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (faces_min < 4 || faces_max < faces_min) {
    throw Error(ErrorCode::InvalidArgument, "need 4 <= faces_min <= faces_max");
  }
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "exponent a must be positive");
  solver.validate();
}

bool FuzzSummary::unexpected_failure() const {
  if (!errors.empty()) return true;
  for (const auto& [check, tally] : tallies) {
    if (tally.fails > tally.expected_fails) return true;
  }
  return false;
}

std::pair<MeshPolyhedron, MeshPolyhedron> fuzz_pair(const FuzzConfig& cfg, std::uint64_t trial_seed, bool homothet) {
  detail::Rng rng(trial_seed);
  const int kp = rng.integer(cfg.faces_min, cfg.faces_max);
  const int kq = rng.integer(cfg.faces_min, cfg.faces_max);
  const std::uint64_t sp = detail::derive_seed(trial_seed, 1);
  const std::uint64_t sq = detail::derive_seed(trial_seed, 2);
  const double lambda = rng.uniform(0.5, 2.0);
  MeshPolyhedron p = continuation_solve(random_herisson(kp, sp), cfg.solver).mesh;
  MeshPolyhedron q = homothet ? scaled(p, lambda) : continuation_solve(random_herisson(kq, sq), cfg.solver).mesh;
  return {std::move(p), std::move(q)};
}

namespace {

void tally(CheckTally& t, const InequalityReport& r, std::uint64_t seed) {
  switch (r.verdict) {
    case Verdict::Holds: ++t.holds; break;
    case Verdict::Equality: ++t.equality; break;
    case Verdict::Fails:
      ++t.fails;
      if (r.expected_failure) {
        ++t.expected_fails;
      } else {
        t.failing_seeds.push_back(seed);
      }
      break;
  }
  const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
  if (scale > 0.0) t.worst_relative_residual = std::min(t.worst_relative_residual, r.residual / scale);
}

}  // namespace

FuzzSummary fuzz_campaign(const FuzzConfig& cfg) {
  cfg.validate();
  FuzzSummary summary;
  for (Check c : cfg.checks) summary.tallies[c];
  auto wants = [&](Check c) { return summary.tallies.contains(c); };

  for (int i = 0; i < cfg.trials; ++i) {
    const std::uint64_t seed = detail::derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const bool homothet = cfg.homothet_every > 0 && (i % cfg.homothet_every) == cfg.homothet_every - 1;
    try {
      const auto [p, q] = fuzz_pair(cfg, seed, homothet);
      const double vp = volume(p), vq = volume(q);
      const Herisson hp = herisson_of_mesh(p), hq = herisson_of_mesh(q);
      const bool is_homothet = homothety_ratio(hp, hq).has_value();

      const bool need_msum = wants(Check::BrunnMinkowski) || wants(Check::SumComparison) || wants(Check::Exponent);
      const bool need_bsum = wants(Check::KneserSuss) || wants(Check::Monotonicity) ||
                             wants(Check::SumComparison) || wants(Check::Exponent);
      const double vsum = need_msum ? volume(minkowski_sum(p, q)) : 0.0;
      MeshPolyhedron bsum;
      if (need_bsum) bsum = continuation_solve(blaschke_add(hp, hq), cfg.solver).mesh;
      const double vbsum = need_bsum ? volume(bsum) : 0.0;

      if (wants(Check::BrunnMinkowski)) tally(summary.tallies[Check::BrunnMinkowski], bm_report(vp, vq, vsum), seed);
      if (wants(Check::KneserSuss)) {
        const auto r = ks_report(vp, vq, vbsum, is_homothet);
        auto& t = summary.tallies[Check::KneserSuss];
        tally(t, r, seed);
        if ((r.verdict == Verdict::Equality) != is_homothet) ++t.equality_mismatches;
      }
      if (wants(Check::Monotonicity)) {
        // L = K # M dominates K face by face.
        const Herisson hl = blaschke_add(hp, hq);
        require_premise(hp, hl);
        auto r = make_report("monotonicity", vbsum, vp);
        r.contained = contains_by_translation(bsum, p).contained;
        tally(summary.tallies[Check::Monotonicity], r, seed);
      }
      if (wants(Check::SumComparison)) tally(summary.tallies[Check::SumComparison], sumcmp_report(vsum, vbsum), seed);
      if (wants(Check::Exponent)) {
        const auto rs = exponent_reports(vp, vq, vsum, vbsum, cfg.a);
        tally(summary.tallies[Check::Exponent], rs.minkowski, seed);
        tally(summary.tallies[Check::Exponent], rs.blaschke, seed);
      }
    } catch (const Error& e) {
      summary.errors.emplace_back(seed, e.what());
    }
  }
  return summary;
}

}  // namespace blaschke
