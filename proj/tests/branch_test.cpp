#include "doctest.h"

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "lie/branch.hpp"
#include "lie/errors.hpp"
#include "lie/rat.hpp"
#include "lie/rootsys.hpp"

using namespace lie;

namespace {

QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.emplace_back(Rat(x));
  return v;
}

std::vector<Int> iv(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

bool has_summand(const BranchingResult& r, const Weight& w, const std::vector<Rat>& central,
                 long mult = 1) {
  for (const Summand& s : r.summands)
    if (s.weight == w && s.central == central && s.mult == Int(mult)) return true;
  return false;
}

bool has_weight(const BranchingResult& r, const Weight& w) {
  for (const Summand& s : r.summands)
    if (s.weight == w) return true;
  return false;
}

bool all_mult_one(const BranchingResult& r) {
  for (const Summand& s : r.summands)
    if (s.mult != 1) return false;
  return true;
}

Int gl_dim(const QVec& w) {
  if (w.size() <= 1) return 1;
  RootSystem sys = build_root_system(Family::A, static_cast<int>(w.size()) - 1);
  return weyl_dim(Irrep{sys, w});
}

bool witness_contains(const SpanningReport& r, const Weight& lam, const Weight& nu) {
  for (const SpanPair& p : r.witness)
    if (p.lambda == lam && p.nu == nu) return true;
  return false;
}

}  // namespace

TEST_CASE("one step restriction of a real linear group follows interlacing") {
  BranchingResult r = branch_gl_real(iv({2, 1, 0}));
  CHECK(r.summands.size() == 4);
  CHECK(has_summand(r, qv({2, 1}), {}));
  CHECK(has_summand(r, qv({2, 0}), {}));
  CHECK(has_summand(r, qv({1, 1}), {}));
  CHECK(has_summand(r, qv({1, 0}), {}));

  BranchingResult small = branch_gl_real(iv({1, 0}));
  CHECK(small.summands.size() == 2);
  CHECK(has_summand(small, qv({1}), {}));
  CHECK(has_summand(small, qv({0}), {}));

  CHECK_THROWS_AS(branch_gl_real(iv({0, 1})), NonDominantWeight);
}

TEST_CASE("real linear restriction respects duality and dimensions") {
  BranchingResult r = branch_gl_real(iv({3, 1, 0}));
  BranchingResult dual = branch_gl_real(iv({0, -1, -3}));
  CHECK(r.summands.size() == dual.summands.size());
  for (const Summand& s : r.summands) {
    QVec neg(s.weight.rbegin(), s.weight.rend());
    for (Rat& x : neg) x = -x;
    CHECK(has_weight(dual, neg));
  }
  Int total = 0;
  for (const Summand& s : r.summands) total += gl_dim(s.weight);
  CHECK(total == gl_dim(qv({3, 1, 0})));
  CHECK(all_mult_one(r));
}

TEST_CASE("complex linear restriction pairs shifted interlacings per chirality") {
  BranchingResult r = branch_gl_complex(iv({1, 1, 0, 0}), iv({0, 0, 0, 0}));
  CHECK(r.summands.size() == 2);
  CHECK(has_summand(r, qv({1, 1, 0, 0, 0, 0}), {rat(2, 3), Rat(0)}));
  CHECK(has_summand(r, qv({0, -1, -1, 0, 0, 0}), {rat(-2, 3), Rat(0)}));

  BranchingResult sum = branch_gl_complex(iv({2, 1, 1, 0}), iv({0, 0, 0, 0}));
  CHECK(sum.summands.size() == 4);
  CHECK(has_summand(sum, qv({2, 1, 1, 0, 0, 0}), {rat(4, 3), Rat(0)}));
  CHECK(has_summand(sum, qv({1, 0, -1, 0, 0, 0}), {Rat(0), Rat(0)}));
  CHECK(has_summand(sum, qv({0, 0, 0, 0, 0, 0}), {Rat(0), Rat(0)}));
  CHECK(has_summand(sum, qv({-1, -1, -2, 0, 0, 0}), {rat(-4, 3), Rat(0)}));

  BranchingResult sq = branch_gl_complex(iv({2, 2, 0, 0}), iv({0, 0, 0, 0}));
  CHECK(sq.summands.size() == 3);
  CHECK(has_summand(sq, qv({2, 2, 0, 0, 0, 0}), {rat(4, 3), Rat(0)}));
  CHECK(has_summand(sq, qv({1, 0, -1, 0, 0, 0}), {Rat(0), Rat(0)}));
  CHECK(has_summand(sq, qv({0, -2, -2, 0, 0, 0}), {rat(-4, 3), Rat(0)}));

  BranchingResult both = branch_gl_complex(iv({1, 0}), iv({1, 0}));
  CHECK(both.summands.size() == 4);
  CHECK(has_summand(both, qv({1, 1}), {Rat(1), Rat(1)}));
  CHECK(has_summand(both, qv({1, -1}), {Rat(1), Rat(-1)}));
  CHECK(has_summand(both, qv({-1, 1}), {Rat(-1), Rat(1)}));
  CHECK(has_summand(both, qv({-1, -1}), {Rat(-1), Rat(-1)}));

  CHECK_THROWS_AS(branch_gl_complex(iv({1, 0}), iv({1, 0, 0})), DimensionMismatch);
  CHECK_THROWS_AS(branch_gl_complex(iv({1}), iv({1})), UnsupportedRank);
  CHECK_THROWS_AS(branch_gl_complex(iv({0, 1}), iv({0, 0})), NonDominantWeight);
}

TEST_CASE("orthogonal one step restriction matches the classical patterns") {
  BranchingResult r = branch_so(qv({1, 1}), 5);
  CHECK(r.summands.size() == 3);
  CHECK(has_summand(r, qv({1, 1}), {}));
  CHECK(has_summand(r, qv({1, 0}), {}));
  CHECK(has_summand(r, qv({1, -1}), {}));

  BranchingResult spin = branch_so({rat(1, 2), rat(1, 2)}, 5);
  CHECK(spin.summands.size() == 2);
  CHECK(has_summand(spin, {rat(1, 2), rat(1, 2)}, {}));
  CHECK(has_summand(spin, {rat(1, 2), rat(-1, 2)}, {}));

  BranchingResult seven = branch_so(qv({1, 1, 1}), 7);
  CHECK(seven.summands.size() == 3);
  CHECK(has_summand(seven, qv({1, 1, 1}), {}));
  CHECK(has_summand(seven, qv({1, 1, 0}), {}));
  CHECK(has_summand(seven, qv({1, 1, -1}), {}));

  BranchingResult six = branch_so(qv({1, 1, 0}), 6);
  CHECK(six.summands.size() == 2);
  CHECK(has_summand(six, qv({1, 1}), {}));
  CHECK(has_summand(six, qv({1, 0}), {}));

  BranchingResult chiral = branch_so(qv({1, -1}), 4);
  CHECK(chiral.summands.size() == 1);
  CHECK(has_summand(chiral, qv({1}), {}));

  BranchingResult circle = branch_so(qv({2}), 3);
  CHECK(circle.summands.size() == 5);
  for (long c = -2; c <= 2; ++c) CHECK(has_summand(circle, qv({c}), {}));

  BranchingResult point = branch_so(qv({-3}), 2);
  CHECK(point.summands.size() == 1);
  CHECK(point.summands[0].weight.empty());
}

TEST_CASE("orthogonal restriction validates its input") {
  CHECK_THROWS_AS(branch_so(qv({1}), 1), UnsupportedRank);
  CHECK_THROWS_AS(branch_so(qv({1}), 5), DimensionMismatch);
  CHECK_THROWS_AS(branch_so({rat(1, 3)}, 3), LatticeMismatch);
  CHECK_THROWS_AS(branch_so({Rat(1), rat(1, 2)}, 5), LatticeMismatch);
  CHECK_THROWS_AS(branch_so(qv({1, 2}), 5), NonDominantWeight);
  CHECK_THROWS_AS(branch_so(qv({1, 2, 0}), 7), NonDominantWeight);
  CHECK_THROWS_AS(branch_so(qv({-1}), 3), NonDominantWeight);
}

TEST_CASE("orthogonal restriction is multiplicity free with additive dimensions") {
  RootSystem b2 = build_root_system(Family::B, 2);
  RootSystem d2 = build_root_system(Family::D, 2);
  BranchingResult r = branch_so(qv({2, 1}), 5);
  CHECK(r.summands.size() == 6);
  CHECK(all_mult_one(r));
  Int total = 0;
  for (const Summand& s : r.summands) total += weyl_dim(Irrep{d2, s.weight});
  CHECK(total == weyl_dim(Irrep{b2, qv({2, 1})}));
  CHECK(weyl_dim(Irrep{b2, qv({2, 1})}) == 35);

  RootSystem b3 = build_root_system(Family::B, 3);
  RootSystem d3 = build_root_system(Family::D, 3);
  Weight w = {rat(3, 2), rat(1, 2), rat(1, 2)};
  BranchingResult half = branch_so(w, 7);
  Int sum = 0;
  for (const Summand& s : half.summands) sum += weyl_dim(Irrep{d3, s.weight});
  CHECK(sum == weyl_dim(Irrep{b3, w}));

  // From an even algebra the two chiral weights restrict to the same set.
  BranchingResult plus = branch_so(qv({2, 1}), 4);
  BranchingResult minus = branch_so(qv({2, -1}), 4);
  REQUIRE(plus.summands.size() == minus.summands.size());
  for (std::size_t i = 0; i < plus.summands.size(); ++i)
    CHECK(plus.summands[i].weight == minus.summands[i].weight);
}

TEST_CASE("odd rank restriction output is closed under the outer flip") {
  BranchingResult r = branch_so(qv({2, 1}), 5);
  for (const Summand& s : r.summands) {
    QVec flip = s.weight;
    flip.back() = -flip.back();
    CHECK(has_weight(r, flip));
  }
}

TEST_CASE("character restriction of the special linear group is exact on the defining module") {
  RootSystem a2 = build_root_system(Family::A, 2);
  BranchingResult r = branch_bruteforce(Irrep{a2, qv({1, 0, 0})}, gl_restriction_of_sl(3));
  CHECK(r.summands.size() == 2);
  CHECK(has_summand(r, qv({1, 0}), {rat(1, 2)}));
  CHECK(has_summand(r, qv({-1, -1}), {Rat(-1)}));
}

TEST_CASE("interlacing rule agrees with character bookkeeping for small linear ranks") {
  auto check_case = [](std::initializer_list<long> lam_init) {
    std::vector<Int> lam = iv(lam_init);
    long k = static_cast<long>(lam.size());
    QVec lam_q;
    for (const Int& x : lam) lam_q.emplace_back(Rat(x));
    RootSystem big = build_root_system(Family::A, static_cast<int>(k - 1));
    BranchingResult oracle = branch_bruteforce(Irrep{big, lam_q}, gl_restriction_of_sl(k));
    BranchingResult rule = branch_gl_real(lam);
    REQUIRE(oracle.summands.size() == rule.summands.size());
    CHECK(all_mult_one(oracle));
    Int lam_sum = 0;
    for (const Int& x : lam) lam_sum += x;
    for (const Summand& s : rule.summands) {
      Rat shift(lam_sum);
      Rat mean = 0;
      for (const Rat& x : s.weight) {
        shift -= x;
        mean += x;
      }
      mean /= (k - 1);
      QVec predicted = s.weight;
      for (Rat& x : predicted) x -= shift;
      CHECK(has_summand(oracle, predicted, {mean - shift}));
    }
  };
  check_case({2, 1, 0});
  check_case({3, 1, 0});
  check_case({2, 1, 1, 0});
  check_case({2, 2, 0, 0});
}

TEST_CASE("interlacing rule agrees with character bookkeeping for small orthogonal ranks") {
  auto check_case = [](const Weight& lam, long k) {
    long m = k / 2;
    RootSystem big = build_root_system(k % 2 ? Family::B : Family::D, static_cast<int>(m));
    BranchingResult oracle = branch_bruteforce(Irrep{big, lam}, so_one_step_restriction(k));
    BranchingResult rule = branch_so(lam, k);
    REQUIRE(oracle.summands.size() == rule.summands.size());
    CHECK(all_mult_one(oracle));
    for (const Summand& s : rule.summands) {
      if (k == 3) {
        std::vector<Rat> central = {s.weight[0]};
        CHECK(has_summand(oracle, {}, central));
      } else {
        CHECK(has_summand(oracle, s.weight, {}));
      }
    }
  };
  check_case(qv({2, 1}), 5);
  check_case({rat(3, 2), rat(1, 2)}, 5);
  check_case(qv({1, 1, 0}), 6);
  check_case(qv({2, 1, -1}), 6);
  check_case(qv({1, 1, 1}), 7);
  check_case(qv({1, -1}), 4);
  check_case(qv({3}), 3);
}

TEST_CASE("coordinate splitting of the symplectic chain is exact on the adjoint module") {
  RootSystem c3 = build_root_system(Family::C, 3);
  BranchingResult r = branch_bruteforce(Irrep{c3, qv({2, 0, 0})}, sp_pair_restriction(1, 1));
  CHECK(r.summands.size() == 3);
  CHECK(has_summand(r, qv({2, 0, 0}), {}));
  CHECK(has_summand(r, qv({0, 0, 2}), {}));
  CHECK(has_summand(r, qv({1, 0, 1}), {}));
}

TEST_CASE("unitary pair splitting keeps the relative center as an exact character") {
  RootSystem a2 = build_root_system(Family::A, 2);
  BranchingResult r = branch_bruteforce(Irrep{a2, qv({1, 0, 0})}, su_pair_restriction(1, 1));
  CHECK(r.summands.size() == 2);
  CHECK(has_summand(r, {rat(1, 2), rat(-1, 2)}, {Rat(1)}));
  CHECK(has_summand(r, qv({0, 0}), {Rat(-2)}));
}

TEST_CASE("orthogonal pair splitting lists circle characters for a rank one block") {
  RootSystem b1 = build_root_system(Family::B, 1);
  BranchingResult r = branch_bruteforce(Irrep{b1, qv({2})}, so_pair_restriction(1, 1));
  CHECK(r.summands.size() == 5);
  for (long c = -2; c <= 2; ++c) CHECK(has_summand(r, {}, {Rat(c)}));
}

TEST_CASE("character bookkeeping rejects oversized or inconsistent inputs") {
  RootSystem a2 = build_root_system(Family::A, 2);
  CHECK_THROWS_AS(branch_bruteforce(Irrep{a2, qv({300, 0, -300})}, gl_restriction_of_sl(3)),
                  PreconditionViolated);

  RootSystem a3 = build_root_system(Family::A, 3);
  CHECK_THROWS_AS(branch_bruteforce(Irrep{a3, qv({1, 0, 0, 0})}, gl_restriction_of_sl(3)),
                  DimensionMismatch);

  RootSystem a1 = build_root_system(Family::A, 1);
  CartanRestrictionMap broken;
  broken.target.factors.push_back(a1);
  broken.matrix = QMat(2, 2);
  broken.matrix.at(0, 0) = 1;
  CHECK_THROWS_AS(branch_bruteforce(Irrep{a1, qv({1, 0})}, broken), NegativeResidue);
}

TEST_CASE("restriction maps validate their ranks") {
  CHECK_THROWS_AS(gl_restriction_of_sl(1), UnsupportedRank);
  CHECK_THROWS_AS(so_one_step_restriction(2), UnsupportedRank);
  CHECK_THROWS_AS(so_pair_restriction(0, 1), UnsupportedRank);
  CHECK_THROWS_AS(su_pair_restriction(1, 0), UnsupportedRank);
  CHECK_THROWS_AS(sp_pair_restriction(0, 0), UnsupportedRank);
}

TEST_CASE("pair labels round trip and reject malformed input") {
  PairId id = parse_pair_label("F4(2,3)");
  CHECK(id.family == "F4");
  REQUIRE(id.params.size() == 2);
  CHECK(id.params[0] == 2);
  CHECK(id.params[1] == 3);
  CHECK(pair_label(id) == "F4(2,3)");

  PairId bare = parse_pair_label("G2(2)");
  CHECK(pair_label(bare) == "G2(2)");

  CHECK_THROWS_AS(parse_pair_label("F3("), UnknownPair);
  CHECK_THROWS_AS(parse_pair_label("F3()"), UnknownPair);
  CHECK_THROWS_AS(parse_pair_label("F3(a)"), UnknownPair);
  CHECK_THROWS_AS(parse_pair_label("F3(2,)"), UnknownPair);
  CHECK_THROWS_AS(parse_pair_label("(2)"), UnknownPair);
}

TEST_CASE("families without tabulated data are reported as unsupported") {
  CHECK_THROWS_AS(spanning_check("H1(2)", 2), UnsupportedPair);
  CHECK_THROWS_AS(spanning_check("CTRL(4,2)", 2), UnsupportedPair);
  CHECK_THROWS_AS(spanning_check("A(3)", 2), UnsupportedPair);
  CHECK_THROWS_AS(spanning_check("G1(2)", 2), UnsupportedPair);
  CHECK_THROWS_AS(spanning_check("F3(9)", 2), UnsupportedPair);
  CHECK_THROWS_AS(spanning_check("F3(2,2)", 2), UnsupportedPair);
  CHECK_THROWS_AS(spanning_check("F4(-1,2)", 2), UnsupportedPair);
  CHECK_THROWS_AS(spanning_check("X9(2)", 2), UnknownPair);
  CHECK_THROWS_AS(spanning_check("F3(2)", -1), UsageError);
}

TEST_CASE("spherical membership enforces the per side lattices") {
  PairId f3{"F3", {2}};
  CHECK(spanning_member(f3, qv({2, 0, 0}), qv({2, 0})));
  CHECK(spanning_member(f3, qv({2, 0, 0}), qv({-2, -2})));
  CHECK_FALSE(spanning_member(f3, qv({2, 2, 2}), qv({2, 0})));
  CHECK_FALSE(spanning_member(f3, qv({1, 1, 0}), qv({1, 0})));
  CHECK_FALSE(spanning_member(f3, qv({2, 0, 0}), qv({0, 0})));
  CHECK_FALSE(spanning_member(f3, qv({2, 0}), qv({2, 0})));

  PairId f5_21{"F5", {2, 1}};
  CHECK(spanning_member(f5_21, qv({1, 1}), qv({1})));
  CHECK(spanning_member(f5_21, qv({1, -1}), qv({1})));
  CHECK(spanning_member(f5_21, qv({2, 0}), qv({0})));
  CHECK_FALSE(spanning_member(f5_21, qv({2, 1}), qv({1})));
  CHECK_FALSE(spanning_member(f5_21, qv({1, 1}), qv({-1})));

  PairId f2_2{"F2", {2}};
  CHECK(spanning_member(f2_2, qv({2}), qv({-2})));
  CHECK_FALSE(spanning_member(f2_2, qv({1}), qv({-2})));
  CHECK_FALSE(spanning_member(f2_2, qv({2}), qv({1})));

  PairId e1_11{"E1", {1, 1}};
  CHECK(spanning_member(e1_11, qv({2}), qv({-2})));
  CHECK(spanning_member(e1_11, qv({2}), qv({0})));
  CHECK_FALSE(spanning_member(e1_11, qv({2}), qv({4})));
  CHECK_FALSE(spanning_member(e1_11, qv({1}), qv({0})));

  PairId e1_21{"E1", {2, 1}};
  CHECK(spanning_member(e1_21, qv({2}), qv({2})));
  CHECK_FALSE(spanning_member(e1_21, qv({2}), qv({-2})));

  PairId e2_11{"E2", {1, 1}};
  CHECK(spanning_member(e2_11, qv({2}), qv({2})));
  CHECK(spanning_member(e2_11, qv({2}), qv({0})));
  CHECK_FALSE(spanning_member(e2_11, qv({2}), qv({4})));
}

TEST_CASE("joint spans of sphericals are detected over the registered families") {
  SpanningReport f3_small = spanning_check("F3(1)", 2);
  CHECK(f3_small.spans);
  CHECK(f3_small.witness.size() == 2);
  CHECK(witness_contains(f3_small, qv({2, 0}), qv({-2})));
  CHECK(witness_contains(f3_small, qv({2, 0}), qv({0})));

  SpanningReport f3 = spanning_check("F3(2)", 4);
  CHECK(f3.spans);
  REQUIRE(f3.witness.size() == 4);
  CHECK(witness_contains(f3, qv({2, 0, 0}), qv({2, 0})));
  CHECK(witness_contains(f3, qv({2, 0, 0}), qv({-2, -2})));
  CHECK(witness_contains(f3, qv({2, 2, 0}), qv({0, -2})));
  CHECK(witness_contains(f3, qv({2, 2, 0}), qv({2, 2})));

  SpanningReport f5 = spanning_check("F5(2,2)", 4);
  CHECK(f5.spans);
  REQUIRE(f5.witness.size() == 4);
  CHECK(witness_contains(f5, qv({1, 1}), qv({1, -1})));
  CHECK(witness_contains(f5, qv({1, 1}), qv({1, 1})));
  CHECK(witness_contains(f5, qv({2, 0}), qv({0, 0})));
  CHECK(witness_contains(f5, qv({2, 0}), qv({2, 0})));

  SpanningReport zero = spanning_check("F5(2,2)", 0);
  CHECK_FALSE(zero.spans);
  REQUIRE(zero.witness.size() == 1);
  CHECK(witness_contains(zero, qv({0, 0}), qv({0, 0})));

  SpanningReport g2 = spanning_check("G2(2)", 4);
  CHECK(g2.spans);
  REQUIRE(g2.witness.size() == 3);
  CHECK(witness_contains(g2, qv({0, 2}), qv({2})));
  CHECK(witness_contains(g2, qv({2, 0}), qv({2})));
  CHECK(witness_contains(g2, qv({2, 2}), qv({0})));

  SpanningReport e1 = spanning_check("E1(1,1)", 2);
  CHECK(e1.spans);
  CHECK(witness_contains(e1, qv({2}), qv({-2})));
  CHECK(witness_contains(e1, qv({2}), qv({0})));

  SpanningReport e2 = spanning_check("E2(1,1)", 2);
  CHECK(e2.spans);
  CHECK(witness_contains(e2, qv({2}), qv({0})));
  CHECK(witness_contains(e2, qv({2}), qv({2})));

  SpanningReport e3 = spanning_check("E3(1,1)", 2);
  CHECK(e3.spans);

  SpanningReport f2 = spanning_check("F2(2)", 4);
  CHECK(f2.spans);
  CHECK(witness_contains(f2, qv({2}), qv({-2})));
  CHECK(witness_contains(f2, qv({2}), qv({0})));

  SpanningReport f4 = spanning_check("F4(2,1)", 4);
  CHECK(f4.spans);
  REQUIRE(f4.witness.size() == 3);
  CHECK(witness_contains(f4, qv({2, 0}), qv({0})));
  CHECK(witness_contains(f4, qv({2, 0}), qv({2})));
  CHECK(witness_contains(f4, qv({2, 2}), qv({2})));
}

TEST_CASE("tabulated generator families are members and span") {
  auto check_family = [](const std::string& label) {
    CAPTURE(label);
    PairId id = parse_pair_label(label);
    std::vector<SpanPair> gens = expected_generators(id);
    REQUIRE(!gens.empty());
    std::vector<QVec> coords;
    for (const SpanPair& g : gens) {
      CHECK(spanning_member(id, g.lambda, g.nu));
      QVec row = restrict_to_aG(id, g.lambda);
      QVec h = restrict_to_aH(id, g.nu);
      row.insert(row.end(), h.begin(), h.end());
      coords.push_back(row);
    }
    CHECK(rank_of_vectors(coords) == static_cast<std::size_t>(spanning_rank_target(id)));
  };
  for (const char* label :
       {"F1(2)",   "F1(3)",   "F2(2)",   "F2(3)",   "F2(4)",   "F3(1)",   "F3(2)",
        "F3(3)",   "F4(1,1)", "F4(2,1)", "F4(1,2)", "F4(2,2)", "F4(3,2)", "F4(2,3)",
        "F5(1,1)", "F5(2,1)", "F5(1,2)", "F5(2,2)", "F5(3,2)", "F5(2,3)", "E1(1,1)",
        "E1(2,1)", "E1(1,2)", "E1(2,2)", "E1(3,1)", "E1(1,3)", "E2(1,1)", "E2(2,1)",
        "E2(1,2)", "E2(2,2)", "E3(1,1)", "E3(2,1)", "E3(1,2)", "G2(2)",   "G2(3)"})
    check_family(label);
}

TEST_CASE("restriction results serialize deterministically") {
  BranchingResult r = branch_so(qv({1, 1}), 5);
  CHECK(branching_to_json(r) ==
        "[{\"weight\":\"1,-1\",\"central\":\"0\",\"mult\":1},"
        "{\"weight\":\"1,0\",\"central\":\"0\",\"mult\":1},"
        "{\"weight\":\"1,1\",\"central\":\"0\",\"mult\":1}]");

  RootSystem a2 = build_root_system(Family::A, 2);
  BranchingResult o = branch_bruteforce(Irrep{a2, qv({1, 0, 0})}, gl_restriction_of_sl(3));
  CHECK(branching_to_json(o) ==
        "[{\"weight\":\"-1,-1\",\"central\":\"-1\",\"mult\":1},"
        "{\"weight\":\"1,0\",\"central\":\"1/2\",\"mult\":1}]");
}
