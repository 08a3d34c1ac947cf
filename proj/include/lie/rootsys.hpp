#pragma once

#include <map>
#include <string>
#include <vector>

#include "lie/linalg.hpp"
#include "lie/rat.hpp"

namespace lie {

enum class Family { A, B, C, D };

Family parse_family(char c);
char family_char(Family f);

// Weight in ambient coordinates. Type A_n lives in R^{n+1}; B/C/D_n in R^n.
using Weight = QVec;

struct RootSystem {
  Family family;
  int rank;
  int ambient_dim;
  std::vector<Weight> simple_roots;
  std::vector<Weight> positive_roots;
  std::vector<Weight> fundamental_weights;  // sum-zero projected for type A
  Weight rho;                               // half sum of positive roots

  std::string name() const;
};

// "B3" -> (Family::B, 3)
RootSystem parse_system(const std::string& name);

RootSystem build_root_system(Family family, int rank);

struct Irrep {
  RootSystem system;
  Weight highest_weight;
};

Rat inner(const Weight& a, const Weight& b);

// 2<v,alpha>/<alpha,alpha>
Rat coroot_pairing(const Weight& v, const Weight& alpha);

bool is_dominant(const RootSystem& sys, const Weight& v);

// Applies simple reflections until dominant.
Weight dominate(const RootSystem& sys, Weight v);

// Sum-zero projection for type A ambient vectors; identity otherwise.
Weight project_sum_zero(const RootSystem& sys, const Weight& v);

// Exact Weyl dimension. NonDominantWeight unless lambda is dominant with
// nonnegative-integer coroot pairings on all simple roots.
Int weyl_dim(const Irrep& rep);

// Freudenthal multiplicity of mu in rep. LatticeMismatch when mu - lambda is
// not in the root lattice; 0 outside the convex hull.
Int weight_multiplicity(const Irrep& rep, const Weight& mu);

// Full Weyl orbit, lexicographically sorted.
std::vector<Weight> weyl_orbit(const RootSystem& sys, const Weight& v);

// <lambda, alpha>/<alpha,alpha> a nonnegative integer for every positive root.
bool is_spherical_highest_weight(const RootSystem& sys, const Weight& lambda);

// Dominant weights of rep with multiplicities (exact, Freudenthal top-down).
std::map<Weight, Int> dominant_weight_multiplicities(const Irrep& rep);

// All weights of rep with multiplicities.
std::map<Weight, Int> weight_system(const Irrep& rep);

// Order of the Weyl group.
Int weyl_order(const RootSystem& sys);

// Multiplicity of F(nu) in F(lambda1) x F(lambda2) (Brauer-Klimyk).
Int tensor_multiplicity(const RootSystem& sys, const Weight& lambda1, const Weight& lambda2,
                        const Weight& nu);

std::string weight_str(const Weight& w);
Weight parse_weight(const std::string& s);

}  // namespace lie
