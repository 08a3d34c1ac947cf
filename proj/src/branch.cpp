#include "lie/branch.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lie/errors.hpp"

namespace lie {

namespace {

bool weakly_decreasing(const std::vector<Int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] < v[i]) return false;
  return true;
}

Int int_sum(const std::vector<Int>& v) {
  Int s = 0;
  for (const Int& x : v) s += x;
  return s;
}

QVec to_qvec(const std::vector<Int>& v) {
  QVec out;
  out.reserve(v.size());
  for (const Int& x : v) out.emplace_back(Rat(x));
  return out;
}

Rat rat_sum(const QVec& v) {
  Rat s = 0;
  for (const Rat& x : v) s += x;
  return s;
}

Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

Rat l1_norm(const QVec& v) {
  Rat s = 0;
  for (const Rat& x : v) s += rat_abs(x);
  return s;
}

QVec concat(const QVec& a, const QVec& b) {
  QVec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// All nu of length n with lam_i >= nu_i >= lam_{i+1}, lam of length n+1.
void interlacing_rec(const std::vector<Int>& lam, std::size_t i, std::vector<Int>& cur,
                     std::vector<std::vector<Int>>& out) {
  if (i + 1 == lam.size()) {
    out.push_back(cur);
    return;
  }
  for (Int v = lam[i]; v >= lam[i + 1]; --v) {
    cur.push_back(v);
    interlacing_rec(lam, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<Int>> gl_interlacings(const std::vector<Int>& lam) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur;
  if (lam.empty()) return out;
  interlacing_rec(lam, 0, cur, out);
  return out;
}

bool gl_interlaces(const QVec& nu, const QVec& lam) {
  if (nu.size() + 1 != lam.size()) return false;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (lam[i] < nu[i]) return false;
    if (nu[i] < lam[i + 1]) return false;
  }
  return true;
}

bool same_integrality_class(const QVec& a, const QVec& b) {
  if (a.empty() && b.empty()) return true;
  Rat ref = a.empty() ? b.front() : a.front();
  for (const Rat& x : a)
    if (!is_integer(x - ref)) return false;
  for (const Rat& x : b)
    if (!is_integer(x - ref)) return false;
  return true;
}

// One-step restriction condition between complex orthogonal algebras.
// big_odd: so(2m+1) ⊇ so(2m), lam length m, nu length m:
//   lam_1 >= nu_1 >= lam_2 >= ... >= lam_m >= |nu_m|.
// Otherwise so(2m) ⊇ so(2m-1), lam length m, nu length m-1:
//   lam_1 >= nu_1 >= lam_2 >= ... >= nu_{m-1} >= |lam_m|.
bool so_interlaces(const QVec& lam, const QVec& nu, bool big_odd) {
  if (!same_integrality_class(lam, nu)) return false;
  std::size_t m = lam.size();
  if (big_odd) {
    if (m == 0 || nu.size() != m) return false;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      if (lam[i] < nu[i]) return false;
      if (nu[i] < lam[i + 1]) return false;
    }
    return lam[m - 1] >= rat_abs(nu[m - 1]);
  }
  if (nu.size() + 1 != m) return false;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (lam[i] < nu[i]) return false;
    if (i + 1 < nu.size() && nu[i] < lam[i + 1]) return false;
  }
  return nu.empty() || nu[nu.size() - 1] >= rat_abs(lam[m - 1]);
}

std::string summand_central_str(const std::vector<Rat>& central) {
  if (central.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < central.size(); ++i) {
    if (i) out += ',';
    out += rat_str(central[i]);
  }
  return out;
}

}  // namespace

void sort_summands(BranchingResult& result) {
  std::sort(result.summands.begin(), result.summands.end(),
            [](const Summand& a, const Summand& b) {
              if (a.weight != b.weight) return a.weight < b.weight;
              return a.central < b.central;
            });
}

std::string branching_to_json(const BranchingResult& result) {
  std::string out = "[";
  for (std::size_t i = 0; i < result.summands.size(); ++i) {
    const Summand& s = result.summands[i];
    if (i) out += ',';
    out += "{\"weight\":\"" + weight_str(s.weight) + "\",\"central\":\"" +
           summand_central_str(s.central) + "\",\"mult\":" + s.mult.get_str() + "}";
  }
  out += "]";
  return out;
}

BranchingResult branch_gl_real(const std::vector<Int>& lambda) {
  if (!weakly_decreasing(lambda))
    throw NonDominantWeight("gl weight must be weakly decreasing");
  BranchingResult out;
  for (const auto& nu : gl_interlacings(lambda)) {
    Summand s;
    s.weight = to_qvec(nu);
    out.summands.push_back(std::move(s));
  }
  if (lambda.empty()) out.summands.push_back(Summand{});
  sort_summands(out);
  return out;
}

BranchingResult branch_gl_complex(const std::vector<Int>& lambda_prime,
                                  const std::vector<Int>& lambda_dprime) {
  if (lambda_prime.size() != lambda_dprime.size())
    throw DimensionMismatch("chirality components must have equal length");
  if (lambda_prime.size() < 2) throw UnsupportedRank("need length >= 2");
  if (!weakly_decreasing(lambda_prime) || !weakly_decreasing(lambda_dprime))
    throw NonDominantWeight("weights must be weakly decreasing");
  long n = static_cast<long>(lambda_prime.size()) - 1;
  auto shifted = [](const std::vector<Int>& lam, const std::vector<Int>& nu_int) {
    Int s = int_sum(lam) - int_sum(nu_int);
    std::vector<Int> nu;
    nu.reserve(nu_int.size());
    for (const Int& x : nu_int) nu.push_back(x - s);
    return nu;
  };
  BranchingResult out;
  for (const auto& a : gl_interlacings(lambda_prime)) {
    std::vector<Int> nu1 = shifted(lambda_prime, a);
    for (const auto& b : gl_interlacings(lambda_dprime)) {
      std::vector<Int> nu2 = shifted(lambda_dprime, b);
      Summand s;
      s.weight = concat(to_qvec(nu1), to_qvec(nu2));
      Rat c1(int_sum(nu1));
      Rat c2(int_sum(nu2));
      c1 /= n;
      c2 /= n;
      s.central = {c1, c2};
      out.summands.push_back(std::move(s));
    }
  }
  sort_summands(out);
  return out;
}

BranchingResult branch_so(const Weight& lambda, long n_plus_1) {
  if (n_plus_1 < 2) throw UnsupportedRank("need n+1 >= 2");
  long m = n_plus_1 / 2;
  if (static_cast<long>(lambda.size()) != m)
    throw DimensionMismatch("weight length must match the Cartan rank");
  bool all_int = true, all_half = true;
  for (const Rat& x : lambda) {
    if (!is_integer(x + x)) throw LatticeMismatch("entries must be half-integers");
    if (is_integer(x))
      all_half = false;
    else
      all_int = false;
  }
  if (!all_int && !all_half)
    throw LatticeMismatch("entries must share one integrality class");
  bool big_even = (n_plus_1 % 2 == 0);
  for (long i = 0; i + 1 < m; ++i)
    if (lambda[i] < lambda[i + 1]) throw NonDominantWeight("weight not dominant");
  if (m >= 1) {
    if (big_even) {
      if (m >= 2 && lambda[m - 2] < rat_abs(lambda[m - 1]))
        throw NonDominantWeight("weight not dominant");
    } else if (lambda[m - 1] < 0) {
      throw NonDominantWeight("weight not dominant");
    }
  }

  BranchingResult out;
  if (n_plus_1 == 2) {
    out.summands.push_back(Summand{});
    return out;
  }
  long target_len = big_even ? m - 1 : m;
  // The restriction region is a box: each coordinate ranges independently.
  std::vector<std::pair<Rat, Rat>> ranges;
  for (long i = 0; i < target_len; ++i) {
    Rat hi = lambda[i];
    Rat lo;
    if (!big_even) {
      lo = (i + 1 < m) ? lambda[i + 1] : -lambda[m - 1];
    } else {
      lo = (i + 1 < m - 1) ? lambda[i + 1] : rat_abs(lambda[m - 1]);
    }
    ranges.emplace_back(lo, hi);
  }
  QVec stack;
  auto rec = [&](auto&& self, long i) -> void {
    if (i == target_len) {
      Summand s;
      s.weight = stack;
      out.summands.push_back(std::move(s));
      return;
    }
    for (Rat v = ranges[i].second; v >= ranges[i].first; v -= 1) {
      stack.push_back(v);
      self(self, i + 1);
      stack.pop_back();
    }
  };
  rec(rec, 0);
  sort_summands(out);
  return out;
}

BranchingResult branch_bruteforce(const Irrep& big, const CartanRestrictionMap& embedding) {
  Int dim = weyl_dim(big);
  if (dim > Int(100000))
    throw PreconditionViolated("representation dimension exceeds 100000");
  std::size_t expected_rows = static_cast<std::size_t>(embedding.target.central_dim);
  for (const RootSystem& f : embedding.target.factors)
    expected_rows += static_cast<std::size_t>(f.ambient_dim);
  if (embedding.matrix.rows != expected_rows ||
      embedding.matrix.cols != static_cast<std::size_t>(big.system.ambient_dim))
    throw DimensionMismatch("restriction matrix shape does not match target");

  std::map<QVec, Int> residue;
  for (const auto& [w, mult] : weight_system(big))
    residue[mat_apply(embedding.matrix, w)] += mult;

  std::map<std::pair<std::string, QVec>, std::map<Weight, Int>> memo;
  auto factor_weights = [&](std::size_t fi, const Weight& hw) -> const std::map<Weight, Int>& {
    auto key = std::make_pair(embedding.target.factors[fi].name(), hw);
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, weight_system(Irrep{embedding.target.factors[fi], hw})).first;
    return it->second;
  };

  BranchingResult out;
  while (true) {
    QVec top;
    Int mult = 0;
    bool found = false;
    for (auto it = residue.rbegin(); it != residue.rend(); ++it) {
      if (it->second != 0) {
        top = it->first;
        mult = it->second;
        found = true;
        break;
      }
    }
    if (!found) break;
    if (mult < 0) throw NegativeResidue("negative multiplicity at " + weight_str(top));

    std::vector<Weight> blocks;
    std::size_t off = 0;
    for (const RootSystem& f : embedding.target.factors) {
      blocks.emplace_back(top.begin() + off, top.begin() + off + f.ambient_dim);
      off += static_cast<std::size_t>(f.ambient_dim);
    }
    QVec central(top.begin() + off, top.end());
    for (std::size_t fi = 0; fi < blocks.size(); ++fi) {
      const RootSystem& f = embedding.target.factors[fi];
      if (!is_dominant(f, blocks[fi]))
        throw NegativeResidue("maximal residue weight not dominant for " + f.name());
      for (const Weight& alpha : f.simple_roots)
        if (!is_integer(coroot_pairing(blocks[fi], alpha)))
          throw NegativeResidue("maximal residue weight not integral for " + f.name());
    }

    Summand s;
    for (const Weight& b : blocks) s.weight = concat(s.weight, b);
    s.central.assign(central.begin(), central.end());
    s.mult = mult;
    out.summands.push_back(s);

    if (blocks.empty()) {
      residue[top] -= mult;
      continue;
    }
    std::vector<const std::map<Weight, Int>*> tables;
    for (std::size_t fi = 0; fi < blocks.size(); ++fi)
      tables.push_back(&factor_weights(fi, blocks[fi]));
    std::vector<std::map<Weight, Int>::const_iterator> its;
    for (const auto* t : tables) its.push_back(t->begin());
    while (true) {
      QVec pos;
      Int m = mult;
      for (std::size_t i = 0; i < its.size(); ++i) {
        pos = concat(pos, its[i]->first);
        m *= its[i]->second;
      }
      pos = concat(pos, central);
      residue[pos] -= m;
      std::size_t k = its.size();
      while (k > 0) {
        ++its[k - 1];
        if (its[k - 1] != tables[k - 1]->end()) break;
        its[k - 1] = tables[k - 1]->begin();
        --k;
      }
      if (k == 0) break;
    }
  }
  sort_summands(out);
  return out;
}

CartanRestrictionMap gl_restriction_of_sl(long k) {
  if (k < 2) throw UnsupportedRank("need k >= 2");
  long n = k - 1;
  CartanRestrictionMap r;
  if (n >= 2) r.target.factors.push_back(build_root_system(Family::A, static_cast<int>(n - 1)));
  r.target.central_dim = 1;
  std::size_t rows = (n >= 2 ? static_cast<std::size_t>(n) : 0) + 1;
  r.matrix = QMat(rows, static_cast<std::size_t>(k));
  if (n >= 2) {
    // Row i computes nu_i = w_i - w_k; every row kills the ambient gauge direction.
    for (long i = 0; i < n; ++i) {
      r.matrix.at(i, i) = 1;
      r.matrix.at(i, k - 1) = -1;
    }
  }
  for (long j = 0; j < n; ++j) r.matrix.at(rows - 1, j) = rat(1, n);
  r.matrix.at(rows - 1, k - 1) = -1;
  return r;
}

CartanRestrictionMap so_one_step_restriction(long k) {
  if (k < 3) throw UnsupportedRank("need k >= 3");
  CartanRestrictionMap r;
  long m = k / 2;
  if (k % 2 == 1) {
    if (m >= 2)
      r.target.factors.push_back(build_root_system(Family::D, static_cast<int>(m)));
    else
      r.target.central_dim = 1;
    r.matrix = QMat::identity(static_cast<std::size_t>(m));
  } else {
    r.target.factors.push_back(build_root_system(Family::B, static_cast<int>(m - 1)));
    r.matrix = QMat(static_cast<std::size_t>(m - 1), static_cast<std::size_t>(m));
    for (long i = 0; i < m - 1; ++i) r.matrix.at(i, i) = 1;
  }
  return r;
}

CartanRestrictionMap so_pair_restriction(long p, long q) {
  if (p < 1 || q < 1) throw UnsupportedRank("need p, q >= 1");
  long big_rank = (p + q + 1) / 2;
  long m1 = (p + 1) / 2;
  long m2 = q / 2;
  CartanRestrictionMap r;
  std::vector<std::pair<long, long>> factor_coords;  // (offset, size)
  std::vector<long> central_coords;
  auto add_block = [&](long off, long size, long so_n) {
    if (so_n >= 3) {
      r.target.factors.push_back(
          build_root_system(so_n % 2 ? Family::B : Family::D, static_cast<int>(so_n / 2)));
      factor_coords.emplace_back(off, size);
    } else if (so_n == 2) {
      central_coords.push_back(off);
    }
  };
  add_block(0, m1, p + 1);
  add_block(m1, m2, q);
  r.target.central_dim = static_cast<long>(central_coords.size());
  std::size_t rows = static_cast<std::size_t>(central_coords.size());
  for (const auto& fc : factor_coords) rows += static_cast<std::size_t>(fc.second);
  r.matrix = QMat(rows, static_cast<std::size_t>(big_rank));
  std::size_t row = 0;
  for (const auto& fc : factor_coords)
    for (long j = 0; j < fc.second; ++j) r.matrix.at(row++, fc.first + j) = 1;
  for (long c : central_coords) r.matrix.at(row++, c) = 1;
  return r;
}

CartanRestrictionMap su_pair_restriction(long p, long q) {
  if (p < 1 || q < 1) throw UnsupportedRank("need p, q >= 1");
  long big = p + q + 1;
  CartanRestrictionMap r;
  r.target.factors.push_back(build_root_system(Family::A, static_cast<int>(p)));
  if (q >= 2) r.target.factors.push_back(build_root_system(Family::A, static_cast<int>(q - 1)));
  r.target.central_dim = 1;
  std::size_t rows =
      static_cast<std::size_t>(p + 1) + (q >= 2 ? static_cast<std::size_t>(q) : 0) + 1;
  r.matrix = QMat(rows, static_cast<std::size_t>(big));
  std::size_t row = 0;
  // Block rows subtract the block mean, so they kill the ambient gauge direction.
  for (long i = 0; i <= p; ++i) {
    for (long j = 0; j <= p; ++j)
      r.matrix.at(row, j) = (i == j ? rat(p, p + 1) : rat(-1, p + 1));
    ++row;
  }
  if (q >= 2) {
    for (long i = 0; i < q; ++i) {
      for (long j = 0; j < q; ++j)
        r.matrix.at(row, p + 1 + j) = (i == j ? rat(q - 1, q) : rat(-1, q));
      ++row;
    }
  }
  // Relative center of the block pair; vanishes on the gauge direction as well.
  for (long j = 0; j <= p; ++j) r.matrix.at(row, j) = Rat(q);
  for (long j = p + 1; j < big; ++j) r.matrix.at(row, j) = Rat(-(p + 1));
  return r;
}

CartanRestrictionMap sp_pair_restriction(long p, long q) {
  if (p < 1 || q < 1) throw UnsupportedRank("need p, q >= 1");
  long big = p + q + 1;
  CartanRestrictionMap r;
  r.target.factors.push_back(build_root_system(Family::C, static_cast<int>(p + 1)));
  r.target.factors.push_back(build_root_system(Family::C, static_cast<int>(q)));
  r.matrix = QMat::identity(static_cast<std::size_t>(big));
  return r;
}

PairId parse_pair_label(const std::string& label) {
  auto bad = [&label]() { return UnknownPair("cannot parse pair label: " + label); };
  std::size_t open = label.find('(');
  std::string fam = label.substr(0, open == std::string::npos ? label.size() : open);
  if (fam.empty()) throw bad();
  for (char c : fam)
    if (!std::isalnum(static_cast<unsigned char>(c))) throw bad();
  PairId id;
  id.family = fam;
  if (open != std::string::npos) {
    if (label.back() != ')' || label.size() < open + 2) throw bad();
    std::string inner = label.substr(open + 1, label.size() - open - 2);
    if (inner.empty()) throw bad();
    std::size_t pos = 0;
    while (pos <= inner.size()) {
      std::size_t comma = inner.find(',', pos);
      if (comma == std::string::npos) comma = inner.size();
      std::string tok = inner.substr(pos, comma - pos);
      if (tok.empty()) throw bad();
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (end == nullptr || *end != '\0') throw bad();
      id.params.push_back(v);
      pos = comma + 1;
      if (comma == inner.size()) break;
    }
  }
  return id;
}

std::string pair_label(const PairId& id) {
  std::string out = id.family;
  if (!id.params.empty()) {
    out += '(';
    for (std::size_t i = 0; i < id.params.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(id.params[i]);
    }
    out += ')';
  }
  return out;
}

namespace {

enum class SpanFamily { F1, F2, F3, F4, F5, E1, E2, E3, G2 };

struct SpanSetup {
  SpanFamily kind = SpanFamily::F3;
  long n = 0;
  long p = 0, q = 0;
};

SpanSetup classify_pair(const PairId& id) {
  const std::string& f = id.family;
  auto need = [&](std::size_t count) {
    if (id.params.size() != count)
      throw UnsupportedPair("wrong parameter count for " + pair_label(id));
  };
  SpanSetup s;
  if (f == "F1" || f == "F2" || f == "F3" || f == "G2") {
    need(1);
    s.n = id.params[0];
    if (f == "F1") {
      s.kind = SpanFamily::F1;
      if (s.n < 2 || s.n > 4) throw UnsupportedPair("F1 registered for n in [2,4]");
    } else if (f == "F2") {
      s.kind = SpanFamily::F2;
      if (s.n < 2 || s.n > 4) throw UnsupportedPair("F2 registered for n in [2,4]");
    } else if (f == "F3") {
      s.kind = SpanFamily::F3;
      if (s.n < 1 || s.n > 4) throw UnsupportedPair("F3 registered for n in [1,4]");
    } else {
      s.kind = SpanFamily::G2;
      if (s.n < 2 || s.n > 3) throw UnsupportedPair("G2 registered for n in [2,3]");
    }
    return s;
  }
  if (f == "F4" || f == "F5" || f == "E1" || f == "E2" || f == "E3") {
    need(2);
    s.p = id.params[0];
    s.q = id.params[1];
    if (s.p < 1 || s.q < 1) throw UnsupportedPair("need p, q >= 1");
    if (f == "F4") {
      s.kind = SpanFamily::F4;
      if (s.p + s.q > 5) throw UnsupportedPair("F4 registered for p+q <= 5");
    } else if (f == "F5") {
      s.kind = SpanFamily::F5;
      if (s.p + s.q > 5) throw UnsupportedPair("F5 registered for p+q <= 5");
    } else {
      s.kind = (f == "E1") ? SpanFamily::E1 : (f == "E2" ? SpanFamily::E2 : SpanFamily::E3);
      if (s.p + s.q > 4) throw UnsupportedPair(f + " registered for p+q <= 4");
    }
    return s;
  }
  if (f == "A" || f == "C" || f == "D" || f == "G1" || f == "H1" || f == "H2" || f == "H3" ||
      f == "H4" || f == "CTRL")
    throw UnsupportedPair("no spanning data for " + pair_label(id));
  throw UnknownPair("unknown pair family: " + f);
}

long split_rank_g(const SpanSetup& s) { return std::min(s.p, s.q + 1); }  // so(p, q+1)
long split_rank_h(const SpanSetup& s) { return std::min(s.p, s.q); }      // so(p, q)
long complex_rank_g(const SpanSetup& s) { return (s.p + s.q + 1) / 2; }
long complex_rank_h(const SpanSetup& s) { return (s.p + s.q) / 2; }

// Even partitions of fixed length (trailing zeros allowed), l1 <= bound.
void even_partition_rec(long len, long budget, long prev, std::vector<long>& cur,
                        std::vector<QVec>& out) {
  if (static_cast<long>(cur.size()) == len) {
    QVec v;
    v.reserve(cur.size());
    for (long x : cur) v.emplace_back(Rat(x));
    out.push_back(std::move(v));
    return;
  }
  long hi = std::min(prev, budget);
  hi -= hi % 2;
  for (long x = hi; x >= 0; x -= 2) {
    cur.push_back(x);
    even_partition_rec(len, budget - x, x, cur, out);
    cur.pop_back();
  }
}

std::vector<QVec> even_partitions(long len, long bound) {
  std::vector<QVec> out;
  if (len <= 0) {
    out.push_back(QVec{});
    return out;
  }
  std::vector<long> cur;
  even_partition_rec(len, bound, bound, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

long even_floor(long x) {
  long r = ((x % 2) + 2) % 2;
  return x - r;
}

// Weakly decreasing all-even integer vectors of fixed length, any sign, l1 <= bound.
void even_vector_rec(long len, long budget, long prev, std::vector<long>& cur,
                     std::vector<QVec>& out) {
  if (static_cast<long>(cur.size()) == len) {
    QVec v;
    v.reserve(cur.size());
    for (long x : cur) v.emplace_back(Rat(x));
    out.push_back(std::move(v));
    return;
  }
  long hi = even_floor(std::min(prev, budget));
  long lo = -even_floor(budget);
  for (long x = hi; x >= lo; x -= 2) {
    cur.push_back(x);
    even_vector_rec(len, budget - std::labs(x), x, cur, out);
    cur.pop_back();
  }
}

std::vector<QVec> even_decreasing_vectors(long len, long bound) {
  std::vector<QVec> out;
  if (len <= 0) {
    out.push_back(QVec{});
    return out;
  }
  std::vector<long> cur;
  even_vector_rec(len, bound, bound, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

// Weakly decreasing uniform-parity vectors: the dominance cones of the orthogonal
// restricted lattices.  type_d frees the sign of the last entry (the whole entry
// when len == 1); otherwise entries stay >= 0.  even_only keeps the even class.
void so_lattice_rec(long len, long budget, long prev, long parity, bool type_d,
                    std::vector<long>& cur, std::vector<QVec>& out) {
  if (static_cast<long>(cur.size()) == len) {
    QVec v;
    v.reserve(cur.size());
    for (long x : cur) v.emplace_back(Rat(x));
    out.push_back(std::move(v));
    return;
  }
  bool last = (static_cast<long>(cur.size()) + 1 == len);
  long hi = std::min(prev, budget);
  if (((hi % 2) + 2) % 2 != parity) --hi;
  long lo;
  if (last && type_d) {
    lo = -hi;
    if (len == 1) {
      lo = -budget;
      if (((lo % 2) + 2) % 2 != parity) ++lo;
    }
  } else {
    lo = parity;
  }
  for (long x = hi; x >= lo; x -= 2) {
    if (std::labs(x) > budget) continue;
    cur.push_back(x);
    so_lattice_rec(len, budget - std::labs(x), x, parity, type_d, cur, out);
    cur.pop_back();
  }
}

std::vector<QVec> so_doubled_lattice(long len, long bound, bool type_d, bool even_only) {
  std::vector<QVec> out;
  if (len <= 0) {
    out.push_back(QVec{});
    return out;
  }
  for (long parity = 0; parity <= (even_only ? 0 : 1); ++parity) {
    std::vector<long> cur;
    so_lattice_rec(len, bound, bound, parity, type_d, cur, out);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QVec pad_to(const QVec& v, long len) {
  QVec out = v;
  while (static_cast<long>(out.size()) < len) out.emplace_back(Rat(0));
  return out;
}

QVec halve(const QVec& v) {
  QVec out;
  out.reserve(v.size());
  for (const Rat& x : v) out.push_back(x / 2);
  return out;
}

// ---- lattice membership predicates; mirror the enumerators exactly ----

bool is_even_int(const Rat& x) { return is_integer(x) && is_integer(x / 2); }

bool is_even_partition(const QVec& v, long len, bool last_zero) {
  if (static_cast<long>(v.size()) != len) return false;
  for (const Rat& x : v)
    if (!is_even_int(x) || x < 0) return false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] < v[i + 1]) return false;
  if (last_zero && !v.empty() && v.back() != 0) return false;
  return true;
}

bool is_even_decreasing(const QVec& v, long len) {
  if (static_cast<long>(v.size()) != len) return false;
  for (const Rat& x : v)
    if (!is_even_int(x)) return false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] < v[i + 1]) return false;
  return true;
}

bool is_so_lattice_vector(const QVec& v, long len, bool type_d, bool even_only) {
  if (static_cast<long>(v.size()) != len) return false;
  if (len == 0) return true;
  for (const Rat& x : v)
    if (!is_integer(x)) return false;
  for (const Rat& x : v)
    if (!is_integer((x - v.front()) / 2)) return false;  // uniform parity
  if (even_only && !is_even_int(v.front())) return false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] < v[i + 1]) return false;
  if (type_d) {
    if (len >= 2 && v[len - 2] < rat_abs(v[len - 1])) return false;
  } else if (v.back() < 0) {
    return false;
  }
  return true;
}

bool is_even_scalar(const QVec& v, bool allow_negative) {
  if (v.size() != 1 || !is_even_int(v[0])) return false;
  return allow_negative || v[0] >= 0;
}

bool g_lattice_contains(const SpanSetup& s, const QVec& v) {
  switch (s.kind) {
    case SpanFamily::F1:
    case SpanFamily::F3:
      return is_even_partition(v, s.n + 1, true);
    case SpanFamily::F2:
      return is_so_lattice_vector(v, (s.n + 1) / 2, (s.n + 1) % 2 == 0, false);
    case SpanFamily::F4:
      return is_even_partition(v, split_rank_g(s), false);
    case SpanFamily::F5:
      return is_so_lattice_vector(v, split_rank_g(s), s.p == s.q + 1,
                                  split_rank_g(s) < complex_rank_g(s));
    case SpanFamily::E1:
    case SpanFamily::E2:
    case SpanFamily::E3:
      return is_even_scalar(v, false);
    case SpanFamily::G2:
      return v.size() == 2 && is_even_int(v[0]) && is_even_int(v[1]) && v[0] >= 0 && v[1] >= 0;
  }
  return false;
}

bool h_lattice_contains(const SpanSetup& s, const QVec& v) {
  switch (s.kind) {
    case SpanFamily::F1:
    case SpanFamily::F3:
      return is_even_decreasing(v, s.n);
    case SpanFamily::F2:
      return is_so_lattice_vector(v, s.n / 2, s.n % 2 == 0, s.n == 2);
    case SpanFamily::F4:
      return is_even_partition(v, split_rank_h(s), false);
    case SpanFamily::F5:
      return is_so_lattice_vector(v, split_rank_h(s), s.p == s.q,
                                  split_rank_h(s) < complex_rank_h(s));
    case SpanFamily::E1:
      return is_even_scalar(v, s.p == 1);
    case SpanFamily::E2:
    case SpanFamily::E3:
    case SpanFamily::G2:
      return is_even_scalar(v, false);
  }
  return false;
}

std::vector<QVec> g_side_items(const SpanSetup& s, long bound) {
  switch (s.kind) {
    case SpanFamily::F1:
    case SpanFamily::F3: {
      std::vector<QVec> all = even_partitions(s.n + 1, bound);
      std::vector<QVec> out;
      for (auto& v : all)
        if (v.back() == 0) out.push_back(std::move(v));
      return out;
    }
    case SpanFamily::F2:
      return so_doubled_lattice((s.n + 1) / 2, bound, (s.n + 1) % 2 == 0, false);
    case SpanFamily::F4:
      return even_partitions(split_rank_g(s), bound);
    case SpanFamily::F5:
      return so_doubled_lattice(split_rank_g(s), bound, s.p == s.q + 1,
                                split_rank_g(s) < complex_rank_g(s));
    case SpanFamily::E1:
    case SpanFamily::E2:
    case SpanFamily::E3: {
      std::vector<QVec> out;
      for (long d = 0; d <= bound; d += 2) out.push_back(QVec{Rat(d)});
      return out;
    }
    case SpanFamily::G2: {
      std::vector<QVec> out;
      for (long a = 0; a <= bound; a += 2)
        for (long b = 0; a + b <= bound; b += 2) out.push_back(QVec{Rat(a), Rat(b)});
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return {};
}

std::vector<QVec> h_side_items(const SpanSetup& s, long bound) {
  switch (s.kind) {
    case SpanFamily::F1:
    case SpanFamily::F3:
      return even_decreasing_vectors(s.n, bound);
    case SpanFamily::F2:
      return so_doubled_lattice(s.n / 2, bound, s.n % 2 == 0, s.n == 2);
    case SpanFamily::F4:
      return even_partitions(split_rank_h(s), bound);
    case SpanFamily::F5:
      return so_doubled_lattice(split_rank_h(s), bound, s.p == s.q,
                                split_rank_h(s) < complex_rank_h(s));
    case SpanFamily::E1: {
      std::vector<QVec> out;
      long top = even_floor(bound);
      if (s.p == 1) {
        for (long d = -top; d <= top; d += 2) out.push_back(QVec{Rat(d)});
      } else {
        for (long d = 0; d <= top; d += 2) out.push_back(QVec{Rat(d)});
      }
      return out;
    }
    case SpanFamily::E2:
    case SpanFamily::E3:
    case SpanFamily::G2: {
      std::vector<QVec> out;
      for (long d = 0; d <= bound; d += 2) out.push_back(QVec{Rat(d)});
      return out;
    }
  }
  return {};
}

// Shift test for the split linear pair: the sum-pinned integer translate of nu
// must interlace lam.
bool gl_shift_member(const QVec& lam, const QVec& nu) {
  if (nu.size() + 1 != lam.size()) return false;
  long n1 = static_cast<long>(lam.size());
  Rat s = (rat_sum(lam) - rat_sum(nu)) / n1;
  if (!is_integer(s)) return false;
  QVec shifted;
  shifted.reserve(nu.size());
  for (const Rat& x : nu) shifted.push_back(x + s);
  return gl_interlaces(shifted, lam);
}

bool f4_member(const SpanSetup& s, const QVec& a, const QVec& b) {
  long big = s.p + s.q + 1;
  long sg = split_rank_g(s);
  long th = split_rank_h(s);
  auto palindrome = [](const QVec& pat, long len) {
    QVec out(static_cast<std::size_t>(len), Rat(0));
    for (std::size_t i = 0; i < pat.size(); ++i) {
      out[i] = pat[i];
      out[len - 1 - i] = -pat[i];
    }
    return out;
  };
  if (static_cast<long>(a.size()) != sg || static_cast<long>(b.size()) != th) return false;
  QVec lam = palindrome(a, big);
  QVec nu = palindrome(b, big - 1);
  long reach = 1 + to_long(l1_norm(lam)) + to_long(l1_norm(nu));
  for (long k = -reach; k <= reach; ++k) {
    QVec shifted;
    shifted.reserve(nu.size());
    for (const Rat& x : nu) shifted.push_back(x + k);
    if (gl_interlaces(shifted, lam)) return true;
  }
  return false;
}

bool oracle_contains(const BranchingResult& dec, const Weight& weight, const QVec& central) {
  for (const Summand& s : dec.summands)
    if (s.weight == weight && s.central == central && s.mult >= 1) return true;
  return false;
}

bool e1_member(const SpanSetup& s, const QVec& g, const QVec& h) {
  long big = s.p + s.q + 1;
  long big_rank = big / 2;
  RootSystem sys =
      build_root_system(big % 2 ? Family::B : Family::D, static_cast<int>(big_rank));
  Weight hw = pad_to(QVec{g[0]}, big_rank);
  BranchingResult dec = branch_bruteforce(Irrep{sys, hw}, so_pair_restriction(s.p, s.q));
  long m1 = (s.p + 1) / 2;
  long m2 = s.q / 2;
  Weight expected_weight;
  QVec expected_central;
  if (s.p + 1 >= 3)
    expected_weight = concat(expected_weight, pad_to(QVec{h[0]}, m1));
  else
    expected_central.push_back(h[0]);
  if (s.q >= 3)
    expected_weight = concat(expected_weight, QVec(static_cast<std::size_t>(m2), Rat(0)));
  else if (s.q == 2)
    expected_central.push_back(Rat(0));
  return oracle_contains(dec, expected_weight, expected_central);
}

bool e2_member(const SpanSetup& s, const QVec& g, const QVec& h) {
  long big = s.p + s.q + 1;
  RootSystem sys = build_root_system(Family::A, static_cast<int>(big - 1));
  Weight hw(static_cast<std::size_t>(big), Rat(0));
  hw[0] = g[0];
  hw[big - 1] = -g[0];
  BranchingResult dec = branch_bruteforce(Irrep{sys, hw}, su_pair_restriction(s.p, s.q));
  Weight block1(static_cast<std::size_t>(s.p + 1), Rat(0));
  block1[0] = h[0];
  block1[s.p] = -h[0];
  Weight expected_weight = block1;
  if (s.q >= 2)
    expected_weight = concat(expected_weight, QVec(static_cast<std::size_t>(s.q), Rat(0)));
  return oracle_contains(dec, expected_weight, QVec{Rat(0)});
}

bool e3_member(const SpanSetup& s, const QVec& g, const QVec& h) {
  long big = s.p + s.q + 1;
  RootSystem sys = build_root_system(Family::C, static_cast<int>(big));
  Weight hw(static_cast<std::size_t>(big), Rat(0));
  hw[0] = g[0];
  hw[1] = g[0];
  BranchingResult dec = branch_bruteforce(Irrep{sys, hw}, sp_pair_restriction(s.p, s.q));
  Weight block1(static_cast<std::size_t>(s.p + 1), Rat(0));
  block1[0] = h[0];
  block1[1] = h[0];
  Weight expected_weight = concat(block1, QVec(static_cast<std::size_t>(s.q), Rat(0)));
  return oracle_contains(dec, expected_weight, QVec{});
}

bool g2_member(const SpanSetup& s, const QVec& g, const QVec& h) {
  RootSystem sys = build_root_system(s.n % 2 ? Family::D : Family::B,
                                     static_cast<int>((s.n + 1) / 2));
  long rank = sys.rank;
  return tensor_multiplicity(sys, pad_to(QVec{g[0]}, rank), pad_to(QVec{g[1]}, rank),
                             pad_to(QVec{h[0]}, rank)) >= 1;
}

}  // namespace

bool spanning_member(const PairId& id, const Weight& lambda, const Weight& nu) {
  SpanSetup s = classify_pair(id);
  if (!g_lattice_contains(s, lambda) || !h_lattice_contains(s, nu)) return false;
  switch (s.kind) {
    case SpanFamily::F1:
      return gl_shift_member(halve(lambda), halve(nu));
    case SpanFamily::F3:
      return gl_shift_member(lambda, nu);
    case SpanFamily::F2:
      return so_interlaces(halve(lambda), halve(nu), (s.n + 1) % 2 == 1);
    case SpanFamily::F4:
      return f4_member(s, lambda, nu);
    case SpanFamily::F5:
      return so_interlaces(pad_to(lambda, complex_rank_g(s)), pad_to(nu, complex_rank_h(s)),
                           (s.p + s.q + 1) % 2 == 1);
    case SpanFamily::E1:
      return e1_member(s, lambda, nu);
    case SpanFamily::E2:
      return e2_member(s, lambda, nu);
    case SpanFamily::E3:
      return e3_member(s, lambda, nu);
    case SpanFamily::G2:
      return g2_member(s, lambda, nu);
  }
  return false;
}

Weight restrict_to_aG(const PairId& id, const Weight& lambda) {
  SpanSetup s = classify_pair(id);
  if (s.kind == SpanFamily::F1 || s.kind == SpanFamily::F3) {
    Rat mean = rat_sum(lambda) / static_cast<long>(lambda.size());
    QVec out;
    out.reserve(lambda.size());
    for (const Rat& x : lambda) out.push_back(x - mean);
    return out;
  }
  return lambda;
}

Weight restrict_to_aH(const PairId& id, const Weight& nu) {
  classify_pair(id);
  return nu;
}

long spanning_rank_target(const PairId& id) {
  SpanSetup s = classify_pair(id);
  switch (s.kind) {
    case SpanFamily::F1:
    case SpanFamily::F3:
      return 2 * s.n;
    case SpanFamily::F2:
      return s.n;
    case SpanFamily::F4:
      return std::min(s.p, s.q + 1) + std::min(s.p, s.q);
    case SpanFamily::F5:
      return split_rank_g(s) + split_rank_h(s);
    case SpanFamily::E1:
    case SpanFamily::E2:
    case SpanFamily::E3:
      return 2;
    case SpanFamily::G2:
      return 3;
  }
  return 0;
}

std::vector<SpanPair> expected_generators(const PairId& id) {
  SpanSetup s = classify_pair(id);
  auto ones = [](long count, long len, long value) {
    QVec v(static_cast<std::size_t>(len), Rat(0));
    for (long i = 0; i < count; ++i) v[i] = value;
    return v;
  };
  std::vector<SpanPair> rows;
  switch (s.kind) {
    case SpanFamily::F1:
    case SpanFamily::F3: {
      long n = s.n;
      long scale = (s.kind == SpanFamily::F1) ? 4 : 2;
      for (long i = 1; i <= n; ++i) rows.push_back({ones(i, n + 1, scale), ones(i, n, scale)});
      for (long i = 1; i <= n; ++i) {
        QVec nu(static_cast<std::size_t>(n), Rat(0));
        for (long j = i - 1; j < n; ++j) nu[j] = -scale;
        rows.push_back({ones(i, n + 1, scale), nu});
      }
      return rows;
    }
    case SpanFamily::F2: {
      long m = (s.n + 1) / 2;
      long split_p = m;
      long split_q = ((s.n + 1) % 2 == 0) ? m - 1 : m;
      PairId split_id{"F5", {split_p, split_q}};
      for (const SpanPair& r : expected_generators(split_id))
        rows.push_back({vec_scale(r.lambda, 2), vec_scale(r.nu, 2)});
      return rows;
    }
    case SpanFamily::F4: {
      long sg = split_rank_g(s);
      long th = split_rank_h(s);
      for (long i = 1; i <= th; ++i) {
        rows.push_back({ones(i, sg, 2), ones(i, th, 2)});
        rows.push_back({ones(i, sg, 2), ones(i - 1, th, 2)});
      }
      if (sg > th) rows.push_back({ones(sg, sg, 2), ones(th, th, 2)});
      return rows;
    }
    case SpanFamily::F5: {
      long sg = split_rank_g(s);
      long th = split_rank_h(s);
      if (s.p == s.q && s.p >= 2) {
        long m = s.p;
        for (long i = 1; i <= m - 2; ++i) {
          rows.push_back({ones(i, sg, 2), ones(i, th, 2)});
          rows.push_back({ones(i, sg, 2), ones(i - 1, th, 2)});
        }
        rows.push_back({ones(m - 1, sg, 2), ones(m - 2, th, 2)});
        rows.push_back({ones(m - 1, sg, 2), ones(m - 1, th, 2)});
        rows.push_back({ones(m, sg, 1), ones(m, th, 1)});
        QVec spin = ones(m, th, 1);
        spin[th - 1] = -1;
        rows.push_back({ones(m, sg, 1), spin});
        return rows;
      }
      for (long i = 1; i <= th; ++i) {
        rows.push_back({ones(i, sg, 2), ones(i, th, 2)});
        rows.push_back({ones(i, sg, 2), ones(i - 1, th, 2)});
      }
      if (sg > th) rows.push_back({ones(sg, sg, 2), ones(th, th, 2)});
      return rows;
    }
    case SpanFamily::E1:
    case SpanFamily::E2:
    case SpanFamily::E3:
      rows.push_back({QVec{Rat(2)}, QVec{Rat(2)}});
      rows.push_back({QVec{Rat(2)}, QVec{Rat(0)}});
      return rows;
    case SpanFamily::G2:
      rows.push_back({QVec{Rat(2), Rat(0)}, QVec{Rat(2)}});
      rows.push_back({QVec{Rat(0), Rat(2)}, QVec{Rat(2)}});
      rows.push_back({QVec{Rat(2), Rat(2)}, QVec{Rat(0)}});
      return rows;
  }
  return rows;
}

SpanningReport spanning_check(const std::string& label, long height_bound) {
  if (height_bound < 0) throw UsageError("height bound must be nonnegative");
  PairId id = parse_pair_label(label);
  SpanSetup s = classify_pair(id);
  std::vector<QVec> g_items = g_side_items(s, height_bound);
  std::vector<QVec> h_items = h_side_items(s, height_bound);

  struct Member {
    Rat height;
    SpanPair pair;
    QVec coords;
  };
  std::vector<Member> members;
  for (const QVec& g : g_items) {
    for (const QVec& h : h_items) {
      if (!spanning_member(id, g, h)) continue;
      Member m;
      m.height = std::max(l1_norm(g), l1_norm(h));
      m.pair = SpanPair{g, h};
      m.coords = concat(restrict_to_aG(id, g), restrict_to_aH(id, h));
      members.push_back(std::move(m));
    }
  }
  std::sort(members.begin(), members.end(), [](const Member& a, const Member& b) {
    if (a.height != b.height) return a.height < b.height;
    if (a.pair.lambda != b.pair.lambda) return a.pair.lambda < b.pair.lambda;
    return a.pair.nu < b.pair.nu;
  });

  long target = spanning_rank_target(id);
  SpanningReport report;
  std::vector<QVec> chosen;
  std::vector<SpanPair> greedy;
  for (const Member& m : members) {
    if (static_cast<long>(chosen.size()) == target) break;
    if (in_span(chosen, m.coords)) continue;
    chosen.push_back(m.coords);
    greedy.push_back(m.pair);
  }
  report.spans = (static_cast<long>(chosen.size()) == target);
  if (report.spans) {
    report.witness = greedy;
  } else {
    report.witness.reserve(members.size());
    for (const Member& m : members) report.witness.push_back(m.pair);
  }
  return report;
}

}  // namespace lie
