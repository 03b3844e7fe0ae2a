#pragma once

#include <string>
#include <vector>

#include "fint/normalizer.hpp"
#include "fint/numeric.hpp"

namespace fint {

// verdicts on the three hypotheses: f integrates X, f*mu integrates Y,
// and the bracket relation holds for the supplied lambda, mu
struct HypothesisReport {
  Verdict factorX;
  Verdict factorMuY;
  Verdict relation;

  bool allProven() const {
    return factorX.provenZero() && factorMuY.provenZero() &&
           relation.provenZero();
  }
};

struct FirstIntegralResult {
  Expr H;
  Expr g;  // second integrating factor, g = H*f by construction
  HypothesisReport hypotheses;
  Verdict conclusion;  // X(H) = 0
  Verdict trivial;     // grad H = 0
  std::string domainNote;
};

// H = Y(f)/f + Div(Y) - lambda on the set where f does not vanish.
// Hypothesis failures are reported, not fatal; the caller may know more
// than the sampler can certify. Throws ZeroFactor when f is structurally 0.
FirstIntegralResult theorem1(const VectorField& X, const VectorField& Y,
                             const Expr& f, const Expr& lambda, const Expr& mu,
                             const VolumeForm& vol, const Box& domain,
                             const ZeroTestConfig& cfg = {});

struct ChainEntry {
  Expr H;
  Verdict conserved;  // X(H_k) = 0
};

// iterated derivatives H_k = Y(H_{k-1}), each tested as a first integral.
// Requires H conserved (not provably nonconserved) and, when a mu is
// supplied, mu structurally compatible with zero.
std::vector<ChainEntry> chain_Hk(const VectorField& X, const VectorField& Y,
                                 const Expr& H, int k, const Box& domain,
                                 const ZeroTestConfig& cfg = {},
                                 const Expr& mu = nullptr);

struct IntegrabilityEntry {
  Expr c;            // [X,Y_i] = c_i X, constant
  Expr H;            // Div(Y_i)
  Verdict relation;  // residual of [X,Y_i] - c_i X
};

struct IntegrabilityReport {
  Verdict divXZero;
  std::vector<IntegrabilityEntry> entries;
  IndependenceReport independence;
  bool completelyIntegrable = false;
  std::string statement;
};

// divergence-free X with k constant-bracket normalizers yields k candidate
// integrals Div(Y_i); numeric Jacobian rank decides their independence.
// Throws HypothesisViolated when Div(X) is provably nonzero, some c_i is
// non-constant, or some bracket provably leaves the line spanned by X.
IntegrabilityReport integrability_report(const VectorField& X,
                                         const std::vector<VectorField>& Ylist,
                                         const VolumeForm& vol,
                                         const Box& domain,
                                         const ZeroTestConfig& cfg = {},
                                         int numPoints = 20);

// conjunction of zero tests on the gradient components
Verdict is_trivial(const Expr& H, const Box& domain,
                   const ZeroTestConfig& cfg = {});

}  // namespace fint
