#pragma once

#include <string>
#include <vector>

#include "fint/field_calculus.hpp"

namespace fint {

// fixed-step integration record; truncated marks an early stop at a point
// where a component evaluation left the domain
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> points;
  double stepSize = 0;
  std::string method = "rk4";
  bool truncated = false;
};

// classical RK4 with step h; the final step is shortened to land on tEnd.
// Throws ImmediateDomainError when X is not evaluable at p0; later domain
// faults return the partial trajectory with truncated set.
Trajectory integrate_trajectory(const VectorField& X,
                                const std::vector<double>& p0, double tEnd,
                                double h);

struct ConservationResult {
  double maxDrift = 0;   // max |H(p) - H(p0)| / (1 + |H(p0)|)
  bool pass = false;
  long skipped = 0;      // trajectory points where H was not evaluable
  double maxAbsDrift = 0;  // max |H(p) - H(p0)|, shift-invariant numerator
};

ConservationResult conservation_check(const Expr& H, const Trajectory& traj,
                                      double tol);

struct IndependenceReport {
  std::vector<std::vector<double>> sampledPoints;
  std::vector<int> jacobianRanks;
  int consensusRank = 0;  // max over sampled ranks
  double tolerance = 0;   // relative singular value cutoff
};

// numeric rank of the k x n Jacobian of funcs at sampled points; singular
// values below 1e-8 * sigma_max are treated as zero. cfg.avoid rejects
// sample points near a designated zero set.
IndependenceReport independence_rank(const std::vector<Expr>& funcs,
                                     const Box& domain, int numPoints,
                                     const ZeroTestConfig& cfg = {});

}  // namespace fint
