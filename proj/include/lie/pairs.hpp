#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lie/branch.hpp"
#include "lie/linalg.hpp"
#include "lie/rat.hpp"

namespace lie {

// Matrix realizations of the registered strongly spherical reductive pairs
// (G, H), together with the data attached to a fixed minimal parabolic on each
// side: restricted roots, the sigma-odd part of the nilradical, M-structures,
// and a longest-element representative.  Everything is exact rational.

enum class MFactorKind { Signs, Circles, SOGroup, UGroup, Other };

// One factor of a compact centralizer group: O(1)^size, U(1)^size, SO(size),
// U(size), or a named factor outside that alphabet (e.g. "Sp").  dim_r is the
// real dimension of the factor.
struct MFactor {
  MFactorKind kind = MFactorKind::Signs;
  long size = 0;
  long dim_r = 0;
  std::string name;  // Other factors only

  bool operator==(const MFactor&) const = default;
};

struct MStructure {
  std::vector<MFactor> factors;

  // True when every factor admits explicit character coordinates (no Other).
  bool parametrizable() const;
  long dim_r() const;

  bool operator==(const MStructure&) const = default;
};

// A character / finite-dimensional parameter for an MStructure, one block per
// factor: Signs(k) -> k entries in {0,1}; Circles(k) -> k integers;
// SOGroup(k) -> dominant weight of length floor(k/2); UGroup(k) -> weakly
// decreasing weight of length k.  Other factors admit no blocks.
struct MCharacter {
  std::vector<std::vector<Int>> blocks;

  bool operator==(const MCharacter&) const = default;
};

// A restricted root as a coordinate vector on the ordered a-basis, with the
// real dimension of its root space.
struct WeightLine {
  QVec weight;
  long mult = 0;

  bool operator==(const WeightLine&) const = default;
};

struct PairDescriptor {
  std::string label;
  std::string family;
  std::vector<long> params;

  long ambient = 0;         // matrices are ambient x ambient
  std::string realization;  // human-readable form of the matrix realization
  long dim_g = 0;
  long dim_h = 0;
  long a_G_dim = 0;
  long a_H_dim = 0;

  std::vector<QMat> basis_g;
  std::vector<QMat> basis_h;
  // Ordered basis of a_G; the first a_H_dim entries span a_H.
  std::vector<QMat> a_basis;

  // Restricted root data.  Weights are coordinate vectors on a_basis (length
  // a_G_dim for G, length a_H_dim for H), positive roots only.
  std::vector<WeightLine> restricted_roots_G;
  std::vector<WeightLine> restricted_roots_H;
  QVec rho_nG;  // length a_G_dim
  QVec rho_nH;  // length a_H_dim

  // sigma-odd part of the nilradical of p_H, grouped by a_H-weight.  The
  // weights of delta_n_minus_sigma match strata block-for-block.
  std::vector<WeightLine> delta_n_minus_sigma;
  std::vector<std::vector<QMat>> strata;
  QVec x0;  // reference generic point: coefficients over the strata bases

  // Lie algebras of the parabolics.  p_H_basis is ordered m_H | a_H | n_H with
  // the m_H block of length p_H_m_dim.  p_G_basis is Ad(g0) of p_G_raw for the
  // reference open-orbit element g0 = exp(X0) w0.
  std::vector<QMat> p_H_basis;
  long p_H_m_dim = 0;
  std::vector<QMat> p_G_raw;
  std::vector<QMat> p_G_basis;

  MStructure m_G;
  MStructure m_H;
  MStructure m_small;  // identity component of the generic stabilizer in M_G cap M_H

  // Generators of the component group of M_G cap M_H (empty when connected).
  std::vector<QMat> mgh_discrete_gens;

  QMat w0_rep;     // ambient representative of the longest restricted Weyl element
  QMat w0_action;  // induced action on a_G coordinates
  QMat sigma_mat;  // sigma = Ad(sigma_mat); for the swap family this is a permutation

  bool operator==(const PairDescriptor&) const = default;
};

// Component-wise complex vector with exact rational parts.
struct CxVec {
  QVec re;
  QVec im;

  bool operator==(const CxVec&) const = default;
};

// Full induced-representation parameter: an M-character and a complex linear
// functional on a_G (length a_G_dim).
struct PrincipalSeriesParam {
  MCharacter xi;
  CxVec lambda;
};

struct StabilizerReport {
  long projection_dim = 0;
  bool is_open = false;
};

struct TranslatedWeights {
  std::vector<Int> lambda;
  std::vector<Int> nu;
};

// Registry.  Descriptors are built on first use and cached; when the
// LIE_REGISTRY_PATH environment variable names a JSON file, descriptors are
// loaded from it instead.  Unregistered but recognized labels (exceptional
// families, out-of-range parameters) raise UnsupportedPair; unparseable or
// unrecognized labels raise UnknownPair.
const PairDescriptor& registry_lookup(const std::string& label);
std::vector<std::string> registry_labels();
std::string registry_to_json();
void registry_save(const std::string& path);
std::vector<PairDescriptor> registry_parse_json(const std::string& text);

// Rank test: p_G_basis and p_H_basis together span g.
bool verify_strongly_spherical(const PairDescriptor& pair);

// Number of open P_H x P_G double cosets: orbits of M_G cap M_H acting on the
// products of sign components of the strata.  UnsupportedPair for the control
// family, whose orbit set is not discrete.
long open_orbit_count(const PairDescriptor& pair);
long shintani_generic_dim(const PairDescriptor& pair);

// Stabilizer of g = exp(X) w in p_H cap Ad(g) p_G, where X has the given
// coefficients over the strata bases and w is an ambient representative.
// Reports the dimension of the projection of the stabilizer to a_H.
StabilizerReport stabilizer_aH_projection(const PairDescriptor& pair, const QVec& x_coeffs,
                                          const QMat& w);

// dim Hom_M(xi|_M, eta|_M) for the multiplicity-one families F1..F5 (0 or 1).
long hom_M_dim(const PairDescriptor& pair, const MCharacter& xi, const MCharacter& eta);

// Generic multiplicity dim Hom_H(pi_G|_H, pi_H): open_orbit_count when both
// characters are trivial, hom_M_dim on the multiplicity-one families.
// NonGenericParameters when the spectral genericity test fails.
long generic_multiplicity(const PairDescriptor& pair, const MCharacter& xi, const CxVec& lambda,
                          const MCharacter& eta, const CxVec& nu);

// Spectral genericity of real parts (lambda_re on a_G, nu_re on a_H): for
// every restricted Weyl element w, w(lambda - rho_nG)|_aH - (nu - rho_nH)
// avoids -w(N-span of positive restricted roots)|_aH.  SearchBoundExceeded
// when a membership test cannot be decided within budget.
bool generic_condition_holds(const PairDescriptor& pair, const QVec& lambda_re, const QVec& nu_re);

// Finite-dimensional branching witness: dominant integral (lambda, nu) for G
// and H whose extreme-weight characters restrict to xi and eta.  Requires
// hom_M_dim = 1; IncompatibleCharacters when it is 0.  F1..F5 only.
TranslatedWeights translate_weights(const PairDescriptor& pair, const MCharacter& xi,
                                    const MCharacter& eta);

// Support.
MCharacter trivial_character(const MStructure& m);
void validate_character(const MStructure& m, const MCharacter& chi);
MCharacter xi_w0_twist(const PairDescriptor& pair, const MCharacter& xi);
QMat exp_nilpotent(const QMat& x);
QMat group_element(const PairDescriptor& pair, const QVec& x_coeffs, const QMat& w);
// Restricted Weyl group acting on restricted-weight coordinates (the same
// convention as w0_action; the action on a_G itself is the inverse transpose).
std::vector<QMat> weyl_group_matrices(const PairDescriptor& pair);
// Ambient representatives normalizing a_G, one per coordinate action.
std::vector<QMat> weyl_representatives(const PairDescriptor& pair);

}  // namespace lie
