#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lie/embed.hpp"
#include "lie/errors.hpp"
#include "lie/linalg.hpp"
#include "lie/pairs.hpp"

namespace lie {

namespace {

std::string vec_key(const QVec& v) {
  std::ostringstream os;
  for (const Rat& x : v) os << rat_str(x) << ',';
  return os.str();
}

std::string mat_act_key(const QMat& m) {
  std::ostringstream os;
  os << m.rows << 'x' << m.cols << ':';
  for (const Rat& x : m.data) os << rat_str(x) << ',';
  return os.str();
}

Int abs_i(const Int& x) { return x < 0 ? Int(-x) : x; }

QVec prefix_vec(const QVec& v, std::size_t k) { return QVec(v.begin(), v.begin() + k); }

// Coordinate solver over basis_g, cached per label.
const SpanSolver& ambient_solver(const PairDescriptor& d) {
  static std::map<std::string, SpanSolver> cache;
  auto it = cache.find(d.label);
  if (it != cache.end()) return it->second;
  std::vector<QVec> rows;
  rows.reserve(d.basis_g.size());
  for (const QMat& m : d.basis_g) rows.push_back(mat_flatten(m));
  return cache.emplace(d.label, SpanSolver(std::move(rows))).first->second;
}

std::size_t block_len(const MFactor& f) {
  switch (f.kind) {
    case MFactorKind::Signs:
    case MFactorKind::Circles:
    case MFactorKind::UGroup:
      return static_cast<std::size_t>(f.size);
    case MFactorKind::SOGroup:
      return f.size <= 1 ? 0 : static_cast<std::size_t>(f.size / 2);
    case MFactorKind::Other:
      return 0;
  }
  return 0;
}

bool weakly_decreasing(const std::vector<Int>& v) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] < v[i + 1]) return false;
  return true;
}

// Dominance for so(k): entries weakly decreasing, all nonnegative for k odd,
// last entry free in sign for k even.
bool so_dominant(const std::vector<Int>& v, long k) {
  std::size_t want = k <= 1 ? 0 : static_cast<std::size_t>(k / 2);
  if (v.size() != want) return false;
  if (v.empty()) return true;
  for (std::size_t i = 0; i + 2 < v.size(); ++i)
    if (v[i] < v[i + 1]) return false;
  if (k % 2 == 1) {
    if (v.size() >= 2 && v[v.size() - 2] < v.back()) return false;
    return v.back() >= 0;
  }
  if (v.size() >= 2) return v[v.size() - 2] >= abs_i(v.back());
  return true;
}

// One-step interlacing for gl: big has one more entry than small.
bool gl_step(const std::vector<Int>& big, const std::vector<Int>& small) {
  if (big.size() != small.size() + 1) return false;
  for (std::size_t i = 0; i < small.size(); ++i) {
    if (big[i] < small[i]) return false;
    if (small[i] < big[i + 1]) return false;
  }
  return true;
}

// One-step interlacing for so: big is a weight of SO(big_size), small of
// SO(big_size - 1); the final chain entry is compared in absolute value.
bool so_step(const std::vector<Int>& big, const std::vector<Int>& small, long big_size) {
  if (big_size % 2 == 1) {
    std::size_t R = big.size();
    if (small.size() != R) return false;
    for (std::size_t i = 0; i < R; ++i) {
      Int lo = (i + 1 == R) ? abs_i(small[i]) : small[i];
      if (big[i] < lo) return false;
      if (i + 1 < R && small[i] < big[i + 1]) return false;
    }
    return true;
  }
  std::size_t R = big.size();
  if (small.size() + 1 != R) return false;
  for (std::size_t i = 0; i + 1 < R; ++i) {
    if (big[i] < small[i]) return false;
    if (i + 2 < R && small[i] < big[i + 1]) return false;
  }
  if (R >= 2 && small[R - 2] < abs_i(big[R - 1])) return false;
  return true;
}

bool is_mult_one_family(const std::string& f) {
  return f == "F1" || f == "F2" || f == "F3" || f == "F4" || f == "F5";
}

// Integer lattice membership: v in Z-span(gens), all entries rational.
bool lattice_member(const QVec& v, const std::vector<QVec>& gens) {
  if (gens.empty()) return vec_is_zero(v);
  std::size_t n = v.size();
  Int L = 1;
  auto fold_den = [&L](const QVec& q) {
    for (const Rat& x : q) {
      Int d = x.get_den();
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), d.get_mpz_t());
    }
  };
  fold_den(v);
  for (const QVec& g : gens) fold_den(g);
  auto scaled = [&](const QVec& q) {
    std::vector<Int> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = Int(q[i].get_num() * (L / q[i].get_den()));
    return out;
  };
  std::vector<std::vector<Int>> active;
  active.reserve(gens.size());
  for (const QVec& g : gens) active.push_back(scaled(g));
  std::vector<Int> target = scaled(v);

  std::vector<std::pair<std::size_t, std::vector<Int>>> pivots;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t i0 = active.size();
    for (std::size_t i = 0; i < active.size(); ++i)
      if (active[i][col] != 0) { i0 = i; break; }
    if (i0 == active.size()) continue;
    std::vector<Int> piv = std::move(active[i0]);
    active.erase(active.begin() + i0);
    for (auto& row : active) {
      if (row[col] == 0) continue;
      Int a = piv[col], b = row[col], g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Int ag = a / g, bg = b / g;
      std::vector<Int> np(n), nr(n);
      for (std::size_t j = 0; j < n; ++j) {
        np[j] = s * piv[j] + t * row[j];
        nr[j] = bg * piv[j] - ag * row[j];
      }
      piv = std::move(np);
      row = std::move(nr);
    }
    pivots.emplace_back(col, std::move(piv));
  }
  for (const auto& [col, row] : pivots) {
    if (target[col] == 0) continue;
    if (mpz_divisible_p(target[col].get_mpz_t(), row[col].get_mpz_t()) == 0) return false;
    Int q;
    mpz_divexact(q.get_mpz_t(), target[col].get_mpz_t(), row[col].get_mpz_t());
    for (std::size_t j = 0; j < target.size(); ++j) target[j] -= q * row[j];
  }
  for (const Int& x : target)
    if (x != 0) return false;
  return true;
}

constexpr long kMembershipNodeCap = 2000000;

bool cone_dfs(const QVec& residual, const std::vector<QVec>& cone, std::size_t idx, long bound,
              const std::vector<QVec>& latt, long& nodes) {
  if (++nodes > kMembershipNodeCap)
    throw SearchBoundExceeded("membership search exceeded " + std::to_string(kMembershipNodeCap) +
                              " nodes at coefficient bound " + std::to_string(bound));
  if (idx == cone.size()) return lattice_member(residual, latt);
  QVec r = residual;
  for (long c = 0; c <= bound; ++c) {
    if (c > 0) r = vec_sub(r, cone[idx]);
    if (cone_dfs(r, cone, idx + 1, bound, latt, nodes)) return true;
  }
  return false;
}

Rat l1_norm(const QVec& v) {
  Rat s = 0;
  for (const Rat& x : v) s += abs(x);
  return s;
}

long ceil_rat(const Rat& x) {
  Int q;
  Int num = x.get_num(), den = x.get_den();
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return to_long(q);
}

// Is target a sum of nonnegative integer multiples of cone generators plus an
// integer combination of lattice generators?  Coefficients are bounded by
// ceil(|target|_1 / min |gen|_1) + 1.
bool semigroup_member(const QVec& target, const std::vector<QVec>& cone,
                      const std::vector<QVec>& latt) {
  if (cone.empty()) return lattice_member(target, latt);
  Rat mn = l1_norm(cone.front());
  for (const QVec& g : cone) mn = std::min(mn, l1_norm(g));
  long bound = ceil_rat(l1_norm(target) / mn) + 1;
  long nodes = 0;
  return cone_dfs(target, cone, 0, bound, latt, nodes);
}

}  // namespace

bool MStructure::parametrizable() const {
  for (const MFactor& f : factors)
    if (f.kind == MFactorKind::Other) return false;
  return true;
}

long MStructure::dim_r() const {
  long s = 0;
  for (const MFactor& f : factors) s += f.dim_r;
  return s;
}

MCharacter trivial_character(const MStructure& m) {
  MCharacter c;
  for (const MFactor& f : m.factors) c.blocks.emplace_back(block_len(f), Int(0));
  return c;
}

void validate_character(const MStructure& m, const MCharacter& chi) {
  if (chi.blocks.size() != m.factors.size())
    throw StructureMismatch("character has " + std::to_string(chi.blocks.size()) +
                            " blocks, structure has " + std::to_string(m.factors.size()));
  for (std::size_t i = 0; i < m.factors.size(); ++i) {
    const MFactor& f = m.factors[i];
    const std::vector<Int>& b = chi.blocks[i];
    if (b.size() != block_len(f))
      throw StructureMismatch("character block " + std::to_string(i) + " has length " +
                              std::to_string(b.size()) + ", expected " +
                              std::to_string(block_len(f)));
    switch (f.kind) {
      case MFactorKind::Signs:
        for (const Int& x : b)
          if (x != 0 && x != 1) throw StructureMismatch("sign block entries must be 0 or 1");
        break;
      case MFactorKind::Circles:
        break;
      case MFactorKind::UGroup:
        if (!weakly_decreasing(b)) throw StructureMismatch("unitary block must be dominant");
        break;
      case MFactorKind::SOGroup:
        if (!so_dominant(b, f.size)) throw StructureMismatch("orthogonal block must be dominant");
        break;
      case MFactorKind::Other:
        break;
    }
  }
}

MCharacter xi_w0_twist(const PairDescriptor& pair, const MCharacter& xi) {
  validate_character(pair.m_G, xi);
  MCharacter out = xi;
  const std::string& f = pair.family;
  if (f == "F1" || f == "F3") {
    std::reverse(out.blocks[0].begin(), out.blocks[0].end());
  } else if (f == "F2") {
    for (Int& x : out.blocks[0]) x = -x;
  } else if (f == "F5") {
    long p = pair.params[0], q = pair.params[1];
    long r = std::min(p, q + 1);
    long cG = pair.m_G.factors[1].size;
    if (r % 2 == 1 && p != q + 1 && cG % 2 == 0 && cG >= 2 && !out.blocks[1].empty())
      out.blocks[1].back() = -out.blocks[1].back();
  }
  return out;
}

long hom_M_dim(const PairDescriptor& pair, const MCharacter& xi, const MCharacter& eta) {
  if (!is_mult_one_family(pair.family))
    throw UnsupportedPair(pair.label + ": character homs need the multiplicity-one structure");
  validate_character(pair.m_G, xi);
  validate_character(pair.m_H, eta);
  if (pair.family == "F1" || pair.family == "F2" || pair.family == "F3") return 1;
  long cG = pair.m_G.factors[1].size;
  long cH = pair.m_H.factors[1].size;
  if (cG != cH + 1 && cH != cG + 1)
    throw StructureMismatch(pair.label + ": centralizer blocks must differ in size by one");
  const std::vector<Int>& big = cG > cH ? xi.blocks[1] : eta.blocks[1];
  const std::vector<Int>& small = cG > cH ? eta.blocks[1] : xi.blocks[1];
  if (pair.family == "F4") return gl_step(big, small) ? 1 : 0;
  return so_step(big, small, std::max(cG, cH)) ? 1 : 0;
}

QMat exp_nilpotent(const QMat& x) {
  if (x.rows != x.cols) throw PreconditionViolated("exponent must be square");
  QMat acc = QMat::identity(x.rows);
  QMat term = acc;
  for (std::size_t k = 1; k <= x.rows + 1; ++k) {
    term = mat_scale(mat_mul(term, x), rat(1, static_cast<long>(k)));
    if (mat_is_zero(term)) return acc;
    acc = mat_add(acc, term);
  }
  throw PreconditionViolated("exponent is not nilpotent");
}

QMat group_element(const PairDescriptor& pair, const QVec& x_coeffs, const QMat& w) {
  std::size_t total = 0;
  for (const auto& s : pair.strata) total += s.size();
  if (x_coeffs.size() != total)
    throw PreconditionViolated(pair.label + ": expected " + std::to_string(total) +
                               " stratum coefficients, got " + std::to_string(x_coeffs.size()));
  std::size_t N = static_cast<std::size_t>(pair.ambient);
  if (w.rows != N || w.cols != N)
    throw PreconditionViolated(pair.label + ": representative has the wrong ambient size");
  QMat X(N, N);
  std::size_t idx = 0;
  for (const auto& s : pair.strata)
    for (const QMat& v : s) X = mat_add(X, mat_scale(v, x_coeffs[idx++]));
  return mat_mul(exp_nilpotent(X), w);
}

bool verify_strongly_spherical(const PairDescriptor& pair) {
  const SpanSolver& gs = ambient_solver(pair);
  std::vector<QVec> rows;
  rows.reserve(pair.p_H_basis.size() + pair.p_G_basis.size());
  for (const QMat& m : pair.p_H_basis) {
    auto c = gs.coords(mat_flatten(m));
    if (!c) throw StructureMismatch(pair.label + ": p_H basis escapes the ambient algebra");
    rows.push_back(std::move(*c));
  }
  for (const QMat& m : pair.p_G_basis) {
    auto c = gs.coords(mat_flatten(m));
    if (!c) throw StructureMismatch(pair.label + ": p_G basis escapes the ambient algebra");
    rows.push_back(std::move(*c));
  }
  return rank_of_vectors(rows) == static_cast<std::size_t>(pair.dim_g);
}

long open_orbit_count(const PairDescriptor& pair) {
  if (pair.family == "CTRL")
    throw UnsupportedPair(pair.label + ": orbit data is only stored for spherical pairs");
  std::vector<const QMat*> lines;
  for (const auto& s : pair.strata)
    if (s.size() == 1) lines.push_back(&s.front());
  if (lines.empty()) return 1;
  std::vector<unsigned long long> rows;
  for (const QMat& g : pair.mgh_discrete_gens) {
    QMat gt = mat_transpose(g);
    unsigned long long mask = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      QMat img = mat_mul(mat_mul(g, *lines[i]), gt);
      if (img == *lines[i]) continue;
      if (img == mat_scale(*lines[i], Rat(-1)))
        mask |= 1ULL << i;
      else
        throw StructureMismatch(pair.label + ": component generator moves a stratum line");
    }
    rows.push_back(mask);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < lines.size(); ++col) {
    std::size_t piv = rows.size();
    for (std::size_t i = rank; i < rows.size(); ++i)
      if (rows[i] >> col & 1) { piv = i; break; }
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && (rows[i] >> col & 1)) rows[i] ^= rows[rank];
    ++rank;
  }
  return 1L << (lines.size() - rank);
}

long shintani_generic_dim(const PairDescriptor& pair) { return open_orbit_count(pair); }

StabilizerReport stabilizer_aH_projection(const PairDescriptor& pair, const QVec& x_coeffs,
                                          const QMat& w) {
  QMat g = group_element(pair, x_coeffs, w);
  QMat gi;
  try {
    gi = mat_inverse(g);
  } catch (const SingularMatrix&) {
    throw SingularRealization(pair.label + ": group element is singular");
  }
  const SpanSolver& gs = ambient_solver(pair);
  std::vector<QVec> ph, pg;
  for (const QMat& m : pair.p_H_basis) {
    auto c = gs.coords(mat_flatten(m));
    if (!c) throw StructureMismatch(pair.label + ": p_H basis escapes the ambient algebra");
    ph.push_back(std::move(*c));
  }
  for (const QMat& m : pair.p_G_raw) {
    QMat img = mat_mul(mat_mul(g, m), gi);
    auto c = gs.coords(mat_flatten(img));
    if (!c) throw SingularRealization(pair.label + ": conjugated parabolic escapes the algebra");
    pg.push_back(std::move(*c));
  }
  std::size_t dg = static_cast<std::size_t>(pair.dim_g);
  QMat cols(dg, ph.size() + pg.size());
  for (std::size_t j = 0; j < ph.size(); ++j)
    for (std::size_t i = 0; i < dg; ++i) cols.at(i, j) = ph[j][i];
  for (std::size_t j = 0; j < pg.size(); ++j)
    for (std::size_t i = 0; i < dg; ++i) cols.at(i, ph.size() + j) = -pg[j][i];
  std::vector<QVec> proj;
  std::size_t a0 = static_cast<std::size_t>(pair.p_H_m_dim);
  std::size_t aH = static_cast<std::size_t>(pair.a_H_dim);
  for (const QVec& ker : nullspace(cols))
    proj.push_back(QVec(ker.begin() + a0, ker.begin() + a0 + aH));
  long dim = static_cast<long>(rank_of_vectors(proj));
  return StabilizerReport{dim, dim == 0};
}

std::vector<QMat> weyl_group_matrices(const PairDescriptor& pair) {
  std::size_t n = static_cast<std::size_t>(pair.a_G_dim);
  QMat form(n, n);
  for (const WeightLine& r : pair.restricted_roots_G)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) form.at(i, j) += Rat(r.mult) * r.weight[i] * r.weight[j];

  std::vector<QVec> lines;
  std::set<std::string> seen_lines;
  for (const WeightLine& r : pair.restricted_roots_G) {
    std::size_t i0 = 0;
    while (i0 < n && r.weight[i0] == 0) ++i0;
    if (i0 == n) throw StructureMismatch(pair.label + ": zero restricted root");
    QVec dir = vec_scale(r.weight, 1 / r.weight[i0]);
    if (seen_lines.insert(vec_key(dir)).second) lines.push_back(r.weight);
  }

  // Dual vector of beta inside the root span: t solves (form) t = beta.  The
  // reflection in beta fixes the kernel of the moment form pointwise.
  std::vector<QVec> root_vecs;
  for (const WeightLine& r : pair.restricted_roots_G) root_vecs.push_back(r.weight);
  std::vector<QVec> sb = span_basis(root_vecs);
  QMat fp(n, sb.size());
  for (std::size_t j = 0; j < sb.size(); ++j) {
    QVec col = mat_apply(form, sb[j]);
    for (std::size_t i = 0; i < n; ++i) fp.at(i, j) = col[i];
  }
  std::vector<QMat> gens;
  for (const QVec& beta : lines) {
    auto c = solve(fp, beta);
    if (!c) throw StructureMismatch(pair.label + ": root escapes the moment form image");
    QVec t(n, Rat(0));
    for (std::size_t j = 0; j < sb.size(); ++j) t = vec_add(t, vec_scale(sb[j], (*c)[j]));
    Rat d = dot(beta, t);
    if (d == 0) throw StructureMismatch(pair.label + ": isotropic restricted root");
    QMat refl = QMat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) refl.at(i, j) -= 2 * beta[i] * t[j] / d;
    gens.push_back(refl);
  }

  std::vector<QMat> elems{QMat::identity(n)};
  std::set<std::string> seen{mat_act_key(elems.front())};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    if (elems.size() > 20000) throw StructureMismatch(pair.label + ": Weyl closure diverges");
    QMat cur = elems[head];
    for (const QMat& g : gens) {
      QMat nx = mat_mul(g, cur);
      if (seen.insert(mat_act_key(nx)).second) elems.push_back(std::move(nx));
    }
  }

  std::map<std::string, long> mult_of;
  for (const WeightLine& r : pair.restricted_roots_G) {
    mult_of[vec_key(r.weight)] = r.mult;
    mult_of[vec_key(vec_scale(r.weight, Rat(-1)))] = r.mult;
  }
  for (const QMat& w : elems)
    for (const WeightLine& r : pair.restricted_roots_G) {
      auto it = mult_of.find(vec_key(mat_apply(w, r.weight)));
      if (it == mult_of.end() || it->second != r.mult)
        throw StructureMismatch(pair.label + ": Weyl element does not permute the roots");
    }
  return elems;
}

namespace {

QMat perm_mat(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& swaps) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (const auto& [a, b] : swaps) std::swap(p[a], p[b]);
  QMat m(n, n);
  for (std::size_t j = 0; j < n; ++j) m.at(p[j], j) = 1;
  return m;
}

QMat sign_mat(std::size_t n, const std::vector<std::size_t>& flips) {
  std::vector<int> d(n, 1);
  for (std::size_t i : flips) d[i] = -1;
  return diag_mat(d);
}

QMat block_diag2(const QMat& a, const QMat& b) {
  QMat m(a.rows + b.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) m.at(a.rows + i, a.cols + j) = b.at(i, j);
  return m;
}

std::vector<QMat> representative_generators(const PairDescriptor& pair) {
  const std::string& f = pair.family;
  std::vector<QMat> gens;
  if (f == "F3" || f == "CTRL") {
    std::size_t N = static_cast<std::size_t>(pair.ambient);
    for (std::size_t l = 0; l + 1 < N; ++l) gens.push_back(perm_mat(N, {{l, l + 1}}));
  } else if (f == "F1") {
    std::size_t nc = static_cast<std::size_t>(pair.params[0] + 1);
    for (std::size_t l = 0; l + 1 < nc; ++l)
      gens.push_back(emb_c(perm_mat(nc, {{l, l + 1}}), zero_sq(nc)));
  } else if (f == "F2") {
    std::size_t nc = static_cast<std::size_t>(pair.params[0] + 1);
    std::size_t m = nc / 2;
    for (std::size_t l = 0; l + 1 < m; ++l)
      gens.push_back(
          emb_c(perm_mat(nc, {{2 * l, 2 * l + 2}, {2 * l + 1, 2 * l + 3}}), zero_sq(nc)));
    if (nc % 2 == 1) {
      for (std::size_t l = 0; l < m; ++l)
        gens.push_back(emb_c(sign_mat(nc, {2 * l + 1, nc - 1}), zero_sq(nc)));
    } else {
      for (std::size_t l = 0; l + 1 < m; ++l)
        gens.push_back(emb_c(sign_mat(nc, {2 * l + 1, 2 * l + 3}), zero_sq(nc)));
    }
  } else if (f == "F4") {
    std::size_t P = static_cast<std::size_t>(pair.params[0]);
    std::size_t nc = static_cast<std::size_t>(pair.params[0] + pair.params[1] + 1);
    std::size_t r = static_cast<std::size_t>(std::min(pair.params[0], pair.params[1] + 1));
    for (std::size_t l = 0; l + 1 < r; ++l)
      gens.push_back(emb_c(perm_mat(nc, {{l, l + 1}, {P + l, P + l + 1}}), zero_sq(nc)));
    for (std::size_t l = 0; l < r; ++l)
      gens.push_back(emb_c(sign_mat(nc, {P + l}), zero_sq(nc)));
  } else if (f == "F5") {
    std::size_t P = static_cast<std::size_t>(pair.params[0]);
    std::size_t N = static_cast<std::size_t>(pair.params[0] + pair.params[1] + 1);
    std::size_t r = static_cast<std::size_t>(std::min(pair.params[0], pair.params[1] + 1));
    for (std::size_t l = 0; l + 1 < r; ++l)
      gens.push_back(perm_mat(N, {{l, l + 1}, {P + l, P + l + 1}}));
    if (N > 2 * r) {
      std::size_t spare = P > r ? P - 1 : N - 1;
      for (std::size_t l = 0; l < r; ++l) gens.push_back(sign_mat(N, {P + l, spare}));
    } else {
      for (std::size_t l = 0; l + 1 < r; ++l) gens.push_back(sign_mat(N, {P + l, P + l + 1}));
    }
  } else if (f == "G2") {
    std::size_t nb = static_cast<std::size_t>(pair.params[0] + 1);
    std::vector<int> wd(nb, 1);
    wd[1] = -1;
    wd[nb - 1] = -1;
    QMat wp = diag_mat(wd);
    QMat id = QMat::identity(nb);
    gens.push_back(block_diag2(wp, id));
    gens.push_back(block_diag2(id, wp));
  } else if (f == "H1") {
    gens.push_back(perm_mat(6, {{0, 1}, {2, 3}}));
    gens.push_back(sign_mat(6, {0, 4}));
    gens.push_back(sign_mat(6, {1, 5}));
  } else if (f == "H2") {
    QMat z3 = zero_sq(3);
    gens.push_back(emb_h(perm_mat(3, {{0, 1}}), z3, z3, z3));
    gens.push_back(emb_h(perm_mat(3, {{1, 2}}), z3, z3, z3));
  } else {
    gens.push_back(pair.w0_rep);
  }
  return gens;
}

}  // namespace

std::vector<QMat> weyl_representatives(const PairDescriptor& pair) {
  std::vector<QVec> aflats;
  for (const QMat& a : pair.a_basis) aflats.push_back(mat_flatten(a));
  SpanSolver asolve(aflats);
  auto action_key = [&](const QMat& w) {
    QMat wt = mat_transpose(w);
    QMat act(pair.a_basis.size(), pair.a_basis.size());
    for (std::size_t j = 0; j < pair.a_basis.size(); ++j) {
      QMat img = mat_mul(mat_mul(w, pair.a_basis[j]), wt);
      auto c = asolve.coords(mat_flatten(img));
      if (!c) throw StructureMismatch(pair.label + ": representative does not normalize a_G");
      for (std::size_t i = 0; i < c->size(); ++i) act.at(i, j) = (*c)[i];
    }
    return mat_act_key(act);
  };

  std::vector<QMat> gens = representative_generators(pair);
  std::size_t N = static_cast<std::size_t>(pair.ambient);
  std::vector<QMat> reps{QMat::identity(N)};
  std::set<std::string> seen{action_key(reps.front())};
  for (std::size_t head = 0; head < reps.size(); ++head) {
    if (reps.size() > 1000) throw StructureMismatch(pair.label + ": representative closure diverges");
    QMat cur = reps[head];
    for (const QMat& g : gens) {
      QMat nx = mat_mul(g, cur);
      if (seen.insert(action_key(nx)).second) reps.push_back(std::move(nx));
    }
  }
  return reps;
}

bool generic_condition_holds(const PairDescriptor& pair, const QVec& lambda_re, const QVec& nu_re) {
  std::size_t aG = static_cast<std::size_t>(pair.a_G_dim);
  std::size_t aH = static_cast<std::size_t>(pair.a_H_dim);
  if (lambda_re.size() != aG || nu_re.size() != aH)
    throw PreconditionViolated(pair.label + ": parameter lengths must match the split ranks");
  QVec lam = vec_sub(lambda_re, pair.rho_nG);
  QVec nuv = vec_sub(nu_re, pair.rho_nH);
  for (const QMat& w : weyl_group_matrices(pair)) {
    QVec target = vec_scale(vec_sub(prefix_vec(mat_apply(w, lam), aH), nuv), Rat(-1));

    std::vector<QVec> gens;
    std::set<std::string> seen;
    for (const WeightLine& r : pair.restricted_roots_G) {
      QVec g = prefix_vec(mat_apply(w, r.weight), aH);
      if (vec_is_zero(g)) continue;
      if (seen.insert(vec_key(g)).second) gens.push_back(std::move(g));
    }
    // Lines hit with both signs are unconstrained integer directions.
    std::map<std::string, std::pair<bool, bool>> line_signs;
    auto line_of = [aH](const QVec& v) {
      std::size_t i0 = 0;
      while (i0 < aH && v[i0] == 0) ++i0;
      bool pos = v[i0] > 0;
      return std::make_pair(vec_key(vec_scale(v, 1 / v[i0])), pos);
    };
    for (const QVec& g : gens) {
      auto [key, pos] = line_of(g);
      if (pos)
        line_signs[key].first = true;
      else
        line_signs[key].second = true;
    }
    std::vector<QVec> cone, latt;
    for (QVec& g : gens) {
      auto [key, pos] = line_of(g);
      const auto& s = line_signs[key];
      (s.first && s.second ? latt : cone).push_back(std::move(g));
    }
    if (semigroup_member(target, cone, latt)) return false;
  }
  return true;
}

long generic_multiplicity(const PairDescriptor& pair, const MCharacter& xi, const CxVec& lambda,
                          const MCharacter& eta, const CxVec& nu) {
  validate_character(pair.m_G, xi);
  validate_character(pair.m_H, eta);
  std::size_t aG = static_cast<std::size_t>(pair.a_G_dim);
  std::size_t aH = static_cast<std::size_t>(pair.a_H_dim);
  if (lambda.re.size() != aG || (!lambda.im.empty() && lambda.im.size() != aG))
    throw PreconditionViolated(pair.label + ": lambda must live on a_G");
  if (nu.re.size() != aH || (!nu.im.empty() && nu.im.size() != aH))
    throw PreconditionViolated(pair.label + ": nu must live on a_H");
  if (!generic_condition_holds(pair, lambda.re, nu.re))
    throw NonGenericParameters(pair.label + ": parameters fail the generic condition");
  if (xi == trivial_character(pair.m_G) && eta == trivial_character(pair.m_H))
    return open_orbit_count(pair);
  if (is_mult_one_family(pair.family)) return hom_M_dim(pair, xi, eta);
  throw UnsupportedPair(pair.label +
                        ": nontrivial characters are only supported on the multiplicity-one families");
}

namespace {

Int parity_step(const Int& bit, const Int& lb) { return lb + ((bit - lb) % 2 + 2) % 2; }

[[noreturn]] void translate_fail(const PairDescriptor& pair, const char* what) {
  throw StructureMismatch(pair.label + ": translated weights violate " + what);
}

TranslatedWeights translate_F3(const PairDescriptor& pair, const MCharacter& xi,
                               const MCharacter& eta) {
  long n = pair.params[0];
  std::vector<Int> lam(n + 1), nu(n);
  for (long s = 2 * n; s >= 0; --s) {
    bool is_lam = s % 2 == 0;
    long i = is_lam ? s / 2 : (s - 1) / 2;
    Int bit = is_lam ? xi.blocks[0][i] : eta.blocks[0][i];
    Int lb = 0;
    if (s < 2 * n) lb = (s + 1) % 2 == 0 ? lam[(s + 1) / 2] : nu[s / 2];
    (is_lam ? lam[i] : nu[i]) = parity_step(bit, lb);
  }
  for (long i = 0; i < n; ++i)
    if (lam[i] < nu[i] || nu[i] < lam[i + 1]) translate_fail(pair, "interlacing");
  for (long i = 0; i <= n; ++i)
    if ((lam[i] - xi.blocks[0][i]) % 2 != 0) translate_fail(pair, "parity");
  for (long j = 0; j < n; ++j)
    if ((nu[j] - eta.blocks[0][j]) % 2 != 0) translate_fail(pair, "parity");
  return {lam, nu};
}

TranslatedWeights translate_F1(const PairDescriptor& pair, const MCharacter& xi,
                               const MCharacter& eta) {
  long n = pair.params[0];
  std::vector<Int> lp(n + 1), ld(n + 1), np(n), nd(n);
  lp[n] = xi.blocks[0][n];
  ld[n] = 0;
  for (long j = n - 1; j >= 0; --j) {
    nd[j] = std::max(ld[j + 1], Int(lp[j + 1] - eta.blocks[0][j]));
    np[j] = nd[j] + eta.blocks[0][j];
    ld[j] = std::max(nd[j], Int(np[j] - xi.blocks[0][j]));
    lp[j] = ld[j] + xi.blocks[0][j];
  }
  for (long j = 0; j < n; ++j) {
    if (lp[j] < np[j] || np[j] < lp[j + 1]) translate_fail(pair, "interlacing");
    if (ld[j] < nd[j] || nd[j] < ld[j + 1]) translate_fail(pair, "interlacing");
    if (np[j] - nd[j] != eta.blocks[0][j]) translate_fail(pair, "chirality bookkeeping");
  }
  for (long i = 0; i <= n; ++i)
    if (lp[i] - ld[i] != xi.blocks[0][i]) translate_fail(pair, "chirality bookkeeping");
  std::vector<Int> lam(lp), nu(np);
  lam.insert(lam.end(), ld.begin(), ld.end());
  nu.insert(nu.end(), nd.begin(), nd.end());
  return {lam, nu};
}

TranslatedWeights translate_F2(const PairDescriptor& pair, const MCharacter& xi,
                               const MCharacter& eta) {
  long n = pair.params[0];
  long m = (n + 1) / 2;
  std::vector<Int> lp(m), ld(m);
  std::vector<Int> np, nd;
  if (n % 2 == 1) {
    // so(n+1) of type D over so(n) of type B; the last lambda entry is signed.
    np.resize(m - 1);
    nd.resize(m - 1);
    lp[m - 1] = xi.blocks[0][m - 1];
    ld[m - 1] = 0;
    for (long j = m - 2; j >= 0; --j) {
      Int lo_p = (j == m - 2) ? abs_i(lp[j + 1]) : lp[j + 1];
      Int lo_d = (j == m - 2) ? abs_i(ld[j + 1]) : ld[j + 1];
      nd[j] = std::max(lo_d, Int(lo_p - eta.blocks[0][j]));
      np[j] = nd[j] + eta.blocks[0][j];
      ld[j] = std::max(nd[j], Int(np[j] - xi.blocks[0][j]));
      lp[j] = ld[j] + xi.blocks[0][j];
    }
  } else {
    // so(n+1) of type B over so(n) of type D; the last nu entry is signed.
    np.resize(m);
    nd.resize(m);
    np[m - 1] = eta.blocks[0][m - 1];
    nd[m - 1] = 0;
    ld[m - 1] = std::max(abs_i(nd[m - 1]), Int(abs_i(np[m - 1]) - xi.blocks[0][m - 1]));
    lp[m - 1] = ld[m - 1] + xi.blocks[0][m - 1];
    for (long j = m - 2; j >= 0; --j) {
      nd[j] = std::max(ld[j + 1], Int(lp[j + 1] - eta.blocks[0][j]));
      np[j] = nd[j] + eta.blocks[0][j];
      ld[j] = std::max(nd[j], Int(np[j] - xi.blocks[0][j]));
      lp[j] = ld[j] + xi.blocks[0][j];
    }
  }
  auto check_side = [&](const std::vector<Int>& big, const std::vector<Int>& small) {
    if (!so_step(big, small, n + 1) || !so_dominant(big, n + 1) || !so_dominant(small, n))
      translate_fail(pair, "orthogonal interlacing");
  };
  check_side(lp, np);
  check_side(ld, nd);
  for (long i = 0; i < m; ++i)
    if (lp[i] - ld[i] != xi.blocks[0][i]) translate_fail(pair, "chirality bookkeeping");
  for (std::size_t j = 0; j < np.size(); ++j)
    if (np[j] - nd[j] != eta.blocks[0][j]) translate_fail(pair, "chirality bookkeeping");
  std::vector<Int> lam(lp), nu(np);
  lam.insert(lam.end(), ld.begin(), ld.end());
  nu.insert(nu.end(), nd.begin(), nd.end());
  return {lam, nu};
}

TranslatedWeights translate_F4(const PairDescriptor& pair, const MCharacter& xi,
                               const MCharacter& eta) {
  long p = pair.params[0], q = pair.params[1];
  long N = p + q + 1;
  long r1 = std::min(p, q + 1), rH = std::min(p, q);
  long cG = pair.m_G.factors[1].size, cH = pair.m_H.factors[1].size;
  std::vector<Int> lam(N), nu(N - 1);
  for (long k = 0; k < cG; ++k) lam[r1 + k] = xi.blocks[1][k];
  for (long k = 0; k < cH; ++k) nu[rH + k] = eta.blocks[1][k];
  auto top_of = [&](long s) { return s % 2 == 0 ? lam[s / 2] : nu[(s - 1) / 2]; };
  auto bot_of = [&](long s) {
    return s % 2 == 0 ? lam[N - 1 - s / 2] : nu[N - 2 - (s - 1) / 2];
  };
  long s_max = std::max(2 * (r1 - 1), 2 * rH - 1);
  for (long s = s_max; s >= 0; --s) {
    bool is_lam = s % 2 == 0;
    long i = is_lam ? s / 2 : (s - 1) / 2;
    Int given = is_lam ? xi.blocks[0][i] : eta.blocks[0][i];
    Int low_top = top_of(s + 1);
    Int up_bot = bot_of(s + 1);
    Int head = std::max(low_top, Int(given - up_bot));
    Int mirror = given - head;
    if (is_lam) {
      lam[i] = head;
      lam[N - 1 - i] = mirror;
    } else {
      nu[i] = head;
      nu[N - 2 - i] = mirror;
    }
  }
  for (long i = 0; i + 1 < N; ++i)
    if (lam[i] < nu[i] || nu[i] < lam[i + 1]) translate_fail(pair, "interlacing");
  for (long i = 0; i < r1; ++i)
    if (lam[i] + lam[N - 1 - i] != xi.blocks[0][i]) translate_fail(pair, "circle sums");
  for (long j = 0; j < rH; ++j)
    if (nu[j] + nu[N - 2 - j] != eta.blocks[0][j]) translate_fail(pair, "circle sums");
  for (long k = 0; k < cG; ++k)
    if (lam[r1 + k] != xi.blocks[1][k]) translate_fail(pair, "block weights");
  for (long k = 0; k < cH; ++k)
    if (nu[rH + k] != eta.blocks[1][k]) translate_fail(pair, "block weights");
  return {lam, nu};
}

TranslatedWeights translate_F5(const PairDescriptor& pair, const MCharacter& xi,
                               const MCharacter& eta) {
  long p = pair.params[0], q = pair.params[1];
  long N = p + q + 1;
  long RG = N / 2, RH = (p + q) / 2;
  long r1 = std::min(p, q + 1), rH = std::min(p, q);
  std::vector<Int> lam(RG), nu(RH);
  for (long i = r1; i < RG; ++i) lam[i] = xi.blocks[1][i - r1];
  for (long j = rH; j < RH; ++j) nu[j] = eta.blocks[1][j - rH];
  auto value_at = [&](long s) { return s % 2 == 0 ? lam[s / 2] : nu[(s - 1) / 2]; };
  long s_last = std::max(2 * (RG - 1), 2 * RH - 1);
  long s_head = std::max(2 * (r1 - 1), 2 * rH - 1);
  for (long s = s_head; s >= 0; --s) {
    bool is_lam = s % 2 == 0;
    long i = is_lam ? s / 2 : (s - 1) / 2;
    Int bit = is_lam ? xi.blocks[0][i] : eta.blocks[0][i];
    Int lb = 0;
    if (s + 1 <= s_last) {
      Int nb = value_at(s + 1);
      lb = (s + 1 == s_last) ? abs_i(nb) : nb;
    }
    (is_lam ? lam[i] : nu[i]) = parity_step(bit, lb);
  }
  for (long s = 0; s < s_last; ++s) {
    Int a = value_at(s);
    Int b = value_at(s + 1);
    if (s + 1 == s_last) b = abs_i(b);
    if (a < b) translate_fail(pair, "orthogonal interlacing");
  }
  if (!so_dominant(lam, N) || !so_dominant(nu, N - 1)) translate_fail(pair, "dominance");
  for (long i = 0; i < r1; ++i)
    if ((lam[i] - xi.blocks[0][i]) % 2 != 0) translate_fail(pair, "parity");
  for (long j = 0; j < rH; ++j)
    if ((nu[j] - eta.blocks[0][j]) % 2 != 0) translate_fail(pair, "parity");
  for (long i = r1; i < RG; ++i)
    if (lam[i] != xi.blocks[1][i - r1]) translate_fail(pair, "block weights");
  for (long j = rH; j < RH; ++j)
    if (nu[j] != eta.blocks[1][j - rH]) translate_fail(pair, "block weights");
  return {lam, nu};
}

}  // namespace

TranslatedWeights translate_weights(const PairDescriptor& pair, const MCharacter& xi,
                                    const MCharacter& eta) {
  if (!is_mult_one_family(pair.family))
    throw UnsupportedPair(pair.label + ": weight translation needs the graded character structure");
  validate_character(pair.m_G, xi);
  validate_character(pair.m_H, eta);
  if (hom_M_dim(pair, xi, eta) == 0)
    throw IncompatibleCharacters(pair.label + ": characters admit no invariant functional");
  if (pair.family == "F1") return translate_F1(pair, xi, eta);
  if (pair.family == "F2") return translate_F2(pair, xi, eta);
  if (pair.family == "F3") return translate_F3(pair, xi, eta);
  if (pair.family == "F4") return translate_F4(pair, xi, eta);
  return translate_F5(pair, xi, eta);
}

}  // namespace lie
