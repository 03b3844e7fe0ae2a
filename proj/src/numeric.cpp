#include "fint/numeric.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <vector>

namespace fint {

namespace {

std::vector<double> evalField(const VectorField& X,
                              const std::vector<double>& p) {
  std::vector<double> v(X.components.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = evaluate(X.components[i], p);
  return v;
}

std::vector<double> axpy(const std::vector<double>& p, double a,
                         const std::vector<double>& k) {
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[i] + a * k[i];
  return q;
}

}  // namespace

Trajectory integrate_trajectory(const VectorField& X,
                                const std::vector<double>& p0, double tEnd,
                                double h) {
  if (h <= 0) throw ValidationError("step size must be positive");
  if (static_cast<int>(p0.size()) != X.dim())
    throw DimensionMismatch("starting point dimension does not match the field");

  Trajectory traj;
  traj.stepSize = h;
  try {
    evalField(X, p0);
  } catch (const DomainError&) {
    throw ImmediateDomainError("vector field is not evaluable at the start");
  }
  traj.times.push_back(0.0);
  traj.points.push_back(p0);

  double t = 0.0;
  std::vector<double> p = p0;
  while (t < tEnd - 1e-15 * (1.0 + std::fabs(tEnd))) {
    double step = std::min(h, tEnd - t);
    try {
      std::vector<double> k1 = evalField(X, p);
      std::vector<double> k2 = evalField(X, axpy(p, step / 2, k1));
      std::vector<double> k3 = evalField(X, axpy(p, step / 2, k2));
      std::vector<double> k4 = evalField(X, axpy(p, step, k3));
      for (std::size_t i = 0; i < p.size(); ++i)
        p[i] += step / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    } catch (const DomainError&) {
      traj.truncated = true;
      return traj;
    }
    t += step;
    traj.times.push_back(t);
    traj.points.push_back(p);
  }
  return traj;
}

ConservationResult conservation_check(const Expr& H, const Trajectory& traj,
                                      double tol) {
  if (traj.points.empty()) throw ValidationError("empty trajectory");
  double h0 = evaluate(H, traj.points.front());
  ConservationResult r;
  for (std::size_t i = 1; i < traj.points.size(); ++i) {
    double v;
    try {
      v = evaluate(H, traj.points[i]);
    } catch (const DomainError&) {
      ++r.skipped;
      continue;
    }
    double d = std::fabs(v - h0);
    if (d > r.maxAbsDrift) r.maxAbsDrift = d;
  }
  r.maxDrift = r.maxAbsDrift / (1.0 + std::fabs(h0));
  r.pass = r.maxDrift <= tol;
  return r;
}

IndependenceReport independence_rank(const std::vector<Expr>& funcs,
                                     const Box& domain, int numPoints,
                                     const ZeroTestConfig& cfg) {
  const int k = static_cast<int>(funcs.size());
  const int n = domain.dim();
  if (k == 0) throw ValidationError("no functions to test");
  if (numPoints <= 0) throw ValidationError("sample count must be positive");

  std::vector<std::vector<Expr>> grads(k);
  for (int i = 0; i < k; ++i) {
    grads[i].reserve(n);
    for (int v = 0; v < n; ++v) grads[i].push_back(differentiate(funcs[i], v));
  }

  IndependenceReport rep;
  rep.tolerance = 1e-8;
  CounterRng rng{cfg.seed};
  const std::uint64_t maxAttempts = 64ull * static_cast<std::uint64_t>(numPoints);
  for (std::uint64_t attempt = 0;
       attempt < maxAttempts &&
       rep.sampledPoints.size() < static_cast<std::size_t>(numPoints);
       ++attempt) {
    std::vector<double> pt = sampleBox(rng, domain, attempt);
    Eigen::MatrixXd J(k, n);
    bool ok = true;
    try {
      if (cfg.avoid && std::fabs(evaluate(cfg.avoid, pt, cfg.epsdom)) <
                           cfg.avoidCut)
        ok = false;
      for (int i = 0; i < k && ok; ++i)
        for (int v = 0; v < n; ++v)
          J(i, v) = evaluate(grads[i][v], pt, cfg.epsdom);
    } catch (const DomainError&) {
      ok = false;
    }
    if (!ok) continue;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    const auto& sv = svd.singularValues();
    int rank = 0;
    if (sv.size() > 0 && sv(0) > 0) {
      double cut = rep.tolerance * sv(0);
      for (Eigen::Index s = 0; s < sv.size(); ++s)
        if (sv(s) > cut) ++rank;
    }
    rep.sampledPoints.push_back(std::move(pt));
    rep.jacobianRanks.push_back(rank);
    if (rank > rep.consensusRank) rep.consensusRank = rank;
  }

  long needed = std::min(static_cast<long>(numPoints),
                         static_cast<long>(cfg.minSamples));
  if (static_cast<long>(rep.sampledPoints.size()) < needed)
    throw InsufficientSamples("too few valid sample points for a rank verdict");
  return rep;
}

}  // namespace fint
