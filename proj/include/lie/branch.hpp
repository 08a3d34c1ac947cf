#pragma once

#include <string>
#include <vector>

#include "lie/linalg.hpp"
#include "lie/rootsys.hpp"

namespace lie {

// One irreducible constituent of a restriction. `weight` concatenates the
// highest weights of the non-abelian target factors in ambient coordinates;
// `central` holds the characters of the abelian factors as exact rationals.
struct Summand {
  Weight weight;
  std::vector<Rat> central;
  Int mult{1};
};

struct BranchingResult {
  std::vector<Summand> summands;
};

void sort_summands(BranchingResult& result);
std::string branching_to_json(const BranchingResult& result);

// gl(k,R) down to gl(k-1,R): all interlacing patterns, multiplicity one.
BranchingResult branch_gl_real(const std::vector<Int>& lambda);

// Realified sl(n+1,C) restricted to gl(n,C): independent interlacing in each
// chirality. A summand's weight is the concatenation (nu', nu'') of gl(n)
// vectors; central holds the two trace characters (coordinate mean of each
// chirality).
BranchingResult branch_gl_complex(const std::vector<Int>& lambda_prime,
                                  const std::vector<Int>& lambda_dprime);

// so(n+1,C) restricted to so(n,C): one-step interlacing. Spin weights are
// all-half-integer vectors; mixed integrality is rejected.
BranchingResult branch_so(const Weight& lambda, long n_plus_1);

struct ProductSystem {
  std::vector<RootSystem> factors;
  long central_dim = 0;
};

struct CartanRestrictionMap {
  ProductSystem target;
  // rows: factor ambient coordinates in order, then central functionals;
  // cols: big-algebra ambient coordinates.
  QMat matrix{0, 0};
};

// Character-peeling oracle. Big representation dimension capped at 1e5.
BranchingResult branch_bruteforce(const Irrep& big, const CartanRestrictionMap& embedding);

CartanRestrictionMap gl_restriction_of_sl(long k);     // sl(k,C) -> gl(k-1,C)
CartanRestrictionMap so_one_step_restriction(long k);  // so(k,C) -> so(k-1,C)

// Restriction maps for the rank-one families' complexified embeddings.
CartanRestrictionMap so_pair_restriction(long p, long q);  // so(p+q+1,C) -> so(p+1,C)+so(q,C)
CartanRestrictionMap su_pair_restriction(long p, long q);  // sl(p+q+1,C) -> s(gl(p+1,C)+gl(q,C))
CartanRestrictionMap sp_pair_restriction(long p, long q);  // sp(p+q+1,C) -> sp(p+1,C)+sp(q,C)

struct PairId {
  std::string family;        // "F3", "F5", "E1", ...
  std::vector<long> params;  // (n) or (p, q)
};

// Parses labels like "F3(2)" or "F5(2,3)". UnknownPair on malformed input.
PairId parse_pair_label(const std::string& label);
std::string pair_label(const PairId& id);

// A candidate element of Lambda(g,h) in family data coordinates: lambda and nu
// are the spherical highest-weight data of the two sides (doubled lattice
// coordinates, matching the generator tables).
struct SpanPair {
  Weight lambda;
  Weight nu;
};

struct SpanningReport {
  bool spans = false;
  std::vector<SpanPair> witness;
};

// Membership of the pair in Lambda(g,h), in the same data coordinates used by
// spanning_check and expected_generators.
bool spanning_member(const PairId& id, const Weight& lambda, const Weight& nu);

// Stored generator tables for the supported families.
std::vector<SpanPair> expected_generators(const PairId& id);

// Restriction of data coordinates to the split components (the vectors whose
// joint span spanning_check measures).
Weight restrict_to_aG(const PairId& id, const Weight& lambda);
Weight restrict_to_aH(const PairId& id, const Weight& nu);
long spanning_rank_target(const PairId& id);

SpanningReport spanning_check(const std::string& label, long height_bound);

}  // namespace lie
