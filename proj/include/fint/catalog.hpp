#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fint/parser.hpp"

namespace fint {

// one rotational normalizer of the homogeneous-potential flow, indexed by
// the coordinate plane (i,j)
struct HamiltonianPair {
  int i = 0;
  int j = 1;
  VectorField Y;
  Expr lambda;
  Expr expectedH;
};

// particle in n spatial dimensions with potential V(u) = u^alpha on
// u = |x|^2; phase variables x1..xn, p1..pn
struct HamiltonianInstance {
  int n = 1;
  Rat alpha;
  std::vector<std::string> vars;
  VectorField X;
  std::vector<HamiltonianPair> pairs;  // all i < j
  VectorField Yenergy;
  Expr lambdaEnergy;
  Expr expectedHenergy;

  Box phaseBox() const { return Box::unit(2 * n); }
};

// alpha must be an integer or half-integer so that u^alpha stays in the
// expression language; throws UnrepresentableExponent otherwise, and
// ValidationError for alpha = 0 or n < 1
HamiltonianInstance hamiltonian_homogeneous(int n, const Rat& alpha);

struct CatalogProblem {
  Problem problem;
  Expr expectedH;
};

// the shipped planar example, constructed without touching the filesystem
CatalogProblem example5();

enum class CertificateKind { Degenerate, TransverseShear };

// randomized instance whose integrating factor is valid by construction:
// X = W/f with W divergence-free by shear structure and f positive.
// Degenerate instances attach Y = hX; transverse instances use f = 1 and a
// commuting shear translate, so both make the resulting integral vanish.
struct RandomInstance {
  Problem problem;
  CertificateKind kind = CertificateKind::Degenerate;
  Expr h;  // degenerate only
};

RandomInstance random_instance(std::uint64_t seed, int dim, int degree);

}  // namespace fint
