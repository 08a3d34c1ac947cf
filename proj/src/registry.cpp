#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "lie/branch.hpp"
#include "lie/embed.hpp"
#include "lie/errors.hpp"
#include "lie/linalg.hpp"
#include "lie/pairs.hpp"

namespace lie {

namespace {

using nlohmann::ordered_json;


std::vector<std::size_t> seq(std::size_t a, std::size_t b) {
  std::vector<std::size_t> v;
  for (std::size_t i = a; i < b; ++i) v.push_back(i);
  return v;
}

// Real orthogonal algebra of the form diag(1_nplus, -1_rest) restricted to the
// listed coordinates.
std::vector<QMat> so_basis(std::size_t n, const std::vector<std::size_t>& idx, std::size_t nplus) {
  std::vector<QMat> out;
  for (std::size_t s = 0; s < idx.size(); ++s) {
    for (std::size_t t = s + 1; t < idx.size(); ++t) {
      std::size_t a = idx[s], b = idx[t];
      bool same = (a < nplus) == (b < nplus);
      QMat m(n, n);
      m.at(a, b) = 1;
      m.at(b, a) = same ? Rat(-1) : Rat(1);
      out.push_back(m);
    }
  }
  return out;
}

// u(p,q) realified, restricted to the listed complex coordinates.
std::vector<QMat> u_basis(std::size_t nc, const std::vector<std::size_t>& idx, std::size_t nplus) {
  std::vector<QMat> out;
  for (std::size_t s = 0; s < idx.size(); ++s) {
    std::size_t a = idx[s];
    out.push_back(emb_c(zero_sq(nc), unit_mat(nc, a, a)));
    for (std::size_t t = s + 1; t < idx.size(); ++t) {
      std::size_t b = idx[t];
      bool same = (a < nplus) == (b < nplus);
      QMat sym(nc, nc), alt(nc, nc);
      sym.at(a, b) = 1;
      sym.at(b, a) = 1;
      alt.at(a, b) = 1;
      alt.at(b, a) = -1;
      if (same) {
        out.push_back(emb_c(alt, zero_sq(nc)));
        out.push_back(emb_c(zero_sq(nc), sym));
      } else {
        out.push_back(emb_c(sym, zero_sq(nc)));
        out.push_back(emb_c(zero_sq(nc), alt));
      }
    }
  }
  return out;
}

// sp(p,q) realified, restricted to the listed quaternionic coordinates.
std::vector<QMat> sp_basis(std::size_t nq, const std::vector<std::size_t>& idx, std::size_t nplus) {
  std::vector<QMat> out;
  QMat z = zero_sq(nq);
  for (std::size_t s = 0; s < idx.size(); ++s) {
    std::size_t a = idx[s];
    QMat e = unit_mat(nq, a, a);
    out.push_back(emb_h(z, e, z, z));
    out.push_back(emb_h(z, z, e, z));
    out.push_back(emb_h(z, z, z, e));
    for (std::size_t t = s + 1; t < idx.size(); ++t) {
      std::size_t b = idx[t];
      bool same = (a < nplus) == (b < nplus);
      QMat sym(nq, nq), alt(nq, nq);
      sym.at(a, b) = 1;
      sym.at(b, a) = 1;
      alt.at(a, b) = 1;
      alt.at(b, a) = -1;
      if (same) {
        out.push_back(emb_h(alt, z, z, z));
        out.push_back(emb_h(z, sym, z, z));
        out.push_back(emb_h(z, z, sym, z));
        out.push_back(emb_h(z, z, z, sym));
      } else {
        out.push_back(emb_h(sym, z, z, z));
        out.push_back(emb_h(z, alt, z, z));
        out.push_back(emb_h(z, z, alt, z));
        out.push_back(emb_h(z, z, z, alt));
      }
    }
  }
  return out;
}

std::vector<QMat> gl_r_basis(std::size_t n, const std::vector<std::size_t>& idx) {
  std::vector<QMat> out;
  for (std::size_t a : idx)
    for (std::size_t b : idx) out.push_back(unit_mat(n, a, b));
  return out;
}

std::vector<QMat> gl_c_basis(std::size_t nc, const std::vector<std::size_t>& idx) {
  std::vector<QMat> out;
  for (std::size_t a : idx) {
    for (std::size_t b : idx) {
      out.push_back(emb_c(unit_mat(nc, a, b), zero_sq(nc)));
      out.push_back(emb_c(zero_sq(nc), unit_mat(nc, a, b)));
    }
  }
  return out;
}

MFactor f_signs(long k) { return MFactor{MFactorKind::Signs, k, 0, ""}; }
MFactor f_circles(long k) { return MFactor{MFactorKind::Circles, k, k, ""}; }
MFactor f_so(long k) { return MFactor{MFactorKind::SOGroup, k, k * (k - 1) / 2, ""}; }
MFactor f_u(long k) { return MFactor{MFactorKind::UGroup, k, k * k, ""}; }
MFactor f_sp(long k) { return MFactor{MFactorKind::Other, k, k * (2 * k + 1), "Sp"}; }

struct Raw {
  std::string label;
  std::string family;
  std::vector<long> params;
  std::string ambient;
  std::vector<QMat> basis_g, basis_h, a_basis;
  std::size_t a_H_dim = 0;
  QMat sigma_mat, w0_rep;
  MStructure m_G, m_H, m_small;
  std::vector<QMat> mgh_discrete_gens;
  bool check_m_small = true;
};

bool lex_positive(const QVec& w) {
  for (const Rat& x : w) {
    if (x != 0) return x > 0;
  }
  return false;
}

bool lex_greater(const QVec& a, const QVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

struct WSpace {
  QVec w;
  std::vector<QVec> vecs;  // coordinates over the algebra basis handed to the split
};

QMat amb_of(const std::vector<QMat>& basis, const QVec& coords) {
  QMat m(basis[0].rows, basis[0].cols);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    m = mat_add(m, mat_scale(basis[i], coords[i]));
  }
  return m;
}

// Simultaneous eigenspace decomposition of ad(a_elts) acting on the span of
// basis.  Requires closure of the span under each ad(A) and integer spectra.
std::vector<WSpace> joint_eigensplit(const std::vector<QMat>& basis, const SpanSolver& solver,
                                     const std::vector<QMat>& a_elts, const std::string& what) {
  std::size_t k = basis.size();
  std::vector<WSpace> spaces;
  {
    WSpace all;
    for (std::size_t j = 0; j < k; ++j) {
      QVec e(k, Rat(0));
      e[j] = 1;
      all.vecs.push_back(std::move(e));
    }
    spaces.push_back(std::move(all));
  }
  for (const QMat& A : a_elts) {
    QMat ad(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      auto c = solver.coords(mat_flatten(mat_bracket(A, basis[j])));
      if (!c) throw StructureMismatch(what + ": bracket with split element leaves the span");
      for (std::size_t i = 0; i < k; ++i) ad.at(i, j) = (*c)[i];
    }
    std::vector<WSpace> next;
    for (WSpace& sp : spaces) {
      std::size_t s = sp.vecs.size();
      SpanSolver sub(sp.vecs);
      QMat r(s, s);
      for (std::size_t j = 0; j < s; ++j) {
        auto c = sub.coords(mat_apply(ad, sp.vecs[j]));
        if (!c) throw StructureMismatch(what + ": eigenspace not ad-invariant");
        for (std::size_t i = 0; i < s; ++i) r.at(i, j) = (*c)[i];
      }
      std::size_t found = 0;
      for (long ev = -4; ev <= 4; ++ev) {
        QMat shifted = r;
        for (std::size_t i = 0; i < s; ++i) shifted.at(i, i) -= ev;
        auto ns = nullspace(shifted);
        if (ns.empty()) continue;
        WSpace out;
        out.w = sp.w;
        out.w.push_back(Rat(ev));
        for (const QVec& cvec : ns) {
          QVec v(k, Rat(0));
          for (std::size_t j = 0; j < s; ++j) {
            if (cvec[j] == 0) continue;
            v = vec_add(v, vec_scale(sp.vecs[j], cvec[j]));
          }
          out.vecs.push_back(std::move(v));
        }
        found += out.vecs.size();
        next.push_back(std::move(out));
      }
      if (found != s) throw StructureMismatch(what + ": ad spectrum outside expected integer range");
    }
    spaces = std::move(next);
  }
  std::sort(spaces.begin(), spaces.end(),
            [](const WSpace& a, const WSpace& b) { return lex_greater(a.w, b.w); });
  return spaces;
}

// Antisymmetric-matrix part of a subspace given by coordinate vectors.
std::vector<QVec> theta_fixed_part(const std::vector<QMat>& basis, const std::vector<QVec>& vecs) {
  if (vecs.empty()) return {};
  std::size_t n2 = basis[0].rows * basis[0].cols;
  QMat sym(n2, vecs.size());
  for (std::size_t j = 0; j < vecs.size(); ++j) {
    QMat m = amb_of(basis, vecs[j]);
    QVec f = mat_flatten(mat_add(m, mat_transpose(m)));
    for (std::size_t i = 0; i < n2; ++i) sym.at(i, j) = f[i];
  }
  auto ns = nullspace(sym);
  std::vector<QVec> out;
  for (const QVec& c : ns) {
    QVec v(vecs[0].size(), Rat(0));
    for (std::size_t j = 0; j < vecs.size(); ++j) {
      if (c[j] == 0) continue;
      v = vec_add(v, vec_scale(vecs[j], c[j]));
    }
    out.push_back(std::move(v));
  }
  return out;
}

QVec prefix_of(const QVec& w, std::size_t k) { return QVec(w.begin(), w.begin() + k); }

long dim_of_structure(const MStructure& m) {
  long d = 0;
  for (const MFactor& f : m.factors) d += f.dim_r;
  return d;
}

PairDescriptor derive(const Raw& raw) {
  const std::string& L = raw.label;
  auto fail = [&](const std::string& msg) -> StructureMismatch {
    return StructureMismatch(L + ": " + msg);
  };
  PairDescriptor d;
  d.label = raw.label;
  d.family = raw.family;
  d.params = raw.params;
  d.ambient = static_cast<long>(raw.basis_g.at(0).rows);
  d.realization = raw.ambient;
  d.basis_g = raw.basis_g;
  d.basis_h = raw.basis_h;
  d.a_basis = raw.a_basis;
  d.dim_g = static_cast<long>(raw.basis_g.size());
  d.dim_h = static_cast<long>(raw.basis_h.size());
  d.a_G_dim = static_cast<long>(raw.a_basis.size());
  d.a_H_dim = static_cast<long>(raw.a_H_dim);
  d.sigma_mat = raw.sigma_mat;
  d.w0_rep = raw.w0_rep;
  d.m_G = raw.m_G;
  d.m_H = raw.m_H;
  d.m_small = raw.m_small;
  d.mgh_discrete_gens = raw.mgh_discrete_gens;

  const std::size_t N = raw.basis_g[0].rows;
  const std::size_t dg = raw.basis_g.size();
  const std::size_t aH = raw.a_H_dim;
  const std::size_t aG = raw.a_basis.size();

  std::vector<QVec> gflat, hflat;
  for (const QMat& m : raw.basis_g) gflat.push_back(mat_flatten(m));
  for (const QMat& m : raw.basis_h) hflat.push_back(mat_flatten(m));
  SpanSolver gsolve(gflat);
  SpanSolver hsolve(hflat);

  for (const QMat& m : raw.basis_h)
    if (!gsolve.contains(mat_flatten(m))) throw fail("subalgebra basis escapes the ambient algebra");
  for (std::size_t i = 0; i < aG; ++i) {
    const QMat& A = raw.a_basis[i];
    if (!gsolve.contains(mat_flatten(A))) throw fail("split element outside the algebra");
    bool in_h = hsolve.contains(mat_flatten(A));
    if (i < aH && !in_h) throw fail("leading split element missing from the subalgebra");
    if (i >= aH && in_h) throw fail("trailing split element unexpectedly inside the subalgebra");
    if (!(mat_transpose(A) == A)) throw fail("split element is not symmetric");
    for (std::size_t j = 0; j < i; ++j)
      if (!mat_is_zero(mat_bracket(raw.a_basis[j], A))) throw fail("split elements do not commute");
  }

  QMat sigma_inv = mat_inverse(raw.sigma_mat);
  QMat Sg(dg, dg);
  for (std::size_t j = 0; j < dg; ++j) {
    QMat img = mat_mul(mat_mul(raw.sigma_mat, raw.basis_g[j]), sigma_inv);
    auto c = gsolve.coords(mat_flatten(img));
    if (!c) throw fail("involution does not preserve the algebra");
    for (std::size_t i = 0; i < dg; ++i) Sg.at(i, j) = (*c)[i];
  }
  if (!(mat_mul(Sg, Sg) == QMat::identity(dg))) throw fail("involution does not square to one");
  for (const QMat& b : raw.basis_h) {
    QMat img = mat_mul(mat_mul(raw.sigma_mat, b), sigma_inv);
    if (!(img == b)) throw fail("involution moves the subalgebra");
  }

  auto gsplit = joint_eigensplit(raw.basis_g, gsolve, raw.a_basis, L + " (ambient)");
  auto hsplit = joint_eigensplit(raw.basis_h, hsolve,
                                 std::vector<QMat>(raw.a_basis.begin(), raw.a_basis.begin() + aH),
                                 L + " (subalgebra)");

  std::vector<QVec> m_G_vecs, m_H_vecs;
  std::vector<WSpace> n_G_spaces;
  for (const WSpace& sp : gsplit) {
    if (vec_is_zero(sp.w)) {
      m_G_vecs = theta_fixed_part(raw.basis_g, sp.vecs);
      if (m_G_vecs.size() + aG != sp.vecs.size())
        throw fail("centralizer of the split part has the wrong symmetric rank");
      continue;
    }
    if (lex_positive(sp.w)) {
      d.restricted_roots_G.push_back(WeightLine{sp.w, static_cast<long>(sp.vecs.size())});
      n_G_spaces.push_back(sp);
    }
  }
  if (dim_of_structure(raw.m_G) != static_cast<long>(m_G_vecs.size()))
    throw fail("compact centralizer dimension mismatch on the ambient side");
  for (const WSpace& sp : gsplit) {
    if (vec_is_zero(sp.w)) continue;
    QVec neg = vec_scale(sp.w, Rat(-1));
    bool found = false;
    for (const WSpace& other : gsplit)
      if (other.w == neg && other.vecs.size() == sp.vecs.size()) { found = true; break; }
    if (!found) throw fail("restricted roots are not symmetric");
  }
  d.rho_nG.assign(aG, Rat(0));
  for (const WeightLine& wl : d.restricted_roots_G)
    d.rho_nG = vec_add(d.rho_nG, vec_scale(wl.weight, rat(wl.mult, 2)));

  std::vector<WSpace> n_H_spaces;
  for (const WSpace& sp : hsplit) {
    if (vec_is_zero(sp.w)) {
      m_H_vecs = theta_fixed_part(raw.basis_h, sp.vecs);
      if (m_H_vecs.size() + aH != sp.vecs.size())
        throw fail("centralizer of the split part has the wrong symmetric rank on the subalgebra side");
      continue;
    }
    if (lex_positive(sp.w)) {
      d.restricted_roots_H.push_back(WeightLine{sp.w, static_cast<long>(sp.vecs.size())});
      n_H_spaces.push_back(sp);
    }
  }
  if (dim_of_structure(raw.m_H) != static_cast<long>(m_H_vecs.size()))
    throw fail("compact centralizer dimension mismatch on the subalgebra side");
  d.rho_nH.assign(aH, Rat(0));
  for (const WeightLine& wl : d.restricted_roots_H)
    d.rho_nH = vec_add(d.rho_nH, vec_scale(wl.weight, rat(wl.mult, 2)));

  // p_H in the order fixed for projections: centralizer block, split block,
  // then the positive root spaces.
  d.p_H_m_dim = static_cast<long>(m_H_vecs.size());
  for (const QVec& v : m_H_vecs) d.p_H_basis.push_back(amb_of(raw.basis_h, v));
  for (std::size_t i = 0; i < aH; ++i) d.p_H_basis.push_back(raw.a_basis[i]);
  for (const WSpace& sp : n_H_spaces)
    for (const QVec& v : sp.vecs) d.p_H_basis.push_back(amb_of(raw.basis_h, v));

  // Aggregate ambient root spaces by their leading block and split off the
  // odd part of the involution; that odd part is one stratum.
  std::map<QVec, std::vector<QVec>, bool (*)(const QVec&, const QVec&)> buckets(lex_greater);
  for (const WSpace& sp : gsplit) {
    QVec pre = prefix_of(sp.w, aH);
    if (!lex_positive(pre)) continue;
    auto& dst = buckets[pre];
    dst.insert(dst.end(), sp.vecs.begin(), sp.vecs.end());
  }
  std::map<std::string, long> h_dim_at;
  for (const WeightLine& wl : d.restricted_roots_H) {
    std::string key;
    for (const Rat& x : wl.weight) key += rat_str(x) + ",";
    h_dim_at[key] += wl.mult;
  }
  for (auto& [pre, vecs] : buckets) {
    SpanSolver sub(vecs);
    std::size_t s = vecs.size();
    QMat r(s, s);
    for (std::size_t j = 0; j < s; ++j) {
      auto c = sub.coords(mat_apply(Sg, vecs[j]));
      if (!c) throw fail("involution does not preserve a root-space aggregate");
      for (std::size_t i = 0; i < s; ++i) r.at(i, j) = (*c)[i];
    }
    QMat plus = r, minus = r;
    for (std::size_t i = 0; i < s; ++i) {
      plus.at(i, i) -= 1;
      minus.at(i, i) += 1;
    }
    auto even = nullspace(plus);
    auto odd = nullspace(minus);
    if (even.size() + odd.size() != s) throw fail("involution is not semisimple on a root-space aggregate");
    std::string key;
    for (const Rat& x : pre) key += rat_str(x) + ",";
    long hd = 0;
    if (auto it = h_dim_at.find(key); it != h_dim_at.end()) hd = it->second;
    if (static_cast<long>(even.size()) != hd)
      throw fail("even part of a root-space aggregate does not match the subalgebra root space");
    if (odd.empty()) continue;
    std::vector<QMat> stratum;
    for (const QVec& c : odd) {
      QVec v(dg, Rat(0));
      for (std::size_t j = 0; j < s; ++j) {
        if (c[j] == 0) continue;
        v = vec_add(v, vec_scale(vecs[j], c[j]));
      }
      stratum.push_back(amb_of(raw.basis_g, v));
    }
    d.delta_n_minus_sigma.push_back(WeightLine{pre, static_cast<long>(stratum.size())});
    d.strata.push_back(std::move(stratum));
  }
  if (d.delta_n_minus_sigma.size() != aH) throw fail("stratum weights do not number the split rank");
  {
    std::vector<QVec> ws;
    for (const WeightLine& wl : d.delta_n_minus_sigma) ws.push_back(wl.weight);
    if (rank_of_vectors(ws) != aH) throw fail("stratum weights are degenerate");
  }

  // Base point with every stratum coordinate set to one, and the twisted
  // ambient parabolic through it.
  QMat x0(N, N);
  std::size_t n_strata_vecs = 0;
  for (const auto& stratum : d.strata)
    for (const QMat& v : stratum) {
      x0 = mat_add(x0, v);
      ++n_strata_vecs;
    }
  d.x0.assign(n_strata_vecs, Rat(1));
  QMat g0 = mat_mul(exp_nilpotent(x0), raw.w0_rep);
  QMat g0_inv = mat_inverse(g0);

  for (const QVec& v : m_G_vecs) d.p_G_raw.push_back(amb_of(raw.basis_g, v));
  for (const QMat& A : raw.a_basis) d.p_G_raw.push_back(A);
  for (const WSpace& sp : n_G_spaces)
    for (const QVec& v : sp.vecs) d.p_G_raw.push_back(amb_of(raw.basis_g, v));
  for (const QMat& m : d.p_G_raw) {
    QMat img = mat_mul(mat_mul(g0, m), g0_inv);
    if (!gsolve.contains(mat_flatten(img))) throw fail("base-point conjugation leaves the algebra");
    d.p_G_basis.push_back(std::move(img));
  }

  // Action of the long representative on split coordinates, then on weights.
  std::vector<QVec> aflat;
  for (const QMat& A : raw.a_basis) aflat.push_back(mat_flatten(A));
  SpanSolver asolve(aflat);
  QMat w0inv = mat_inverse(raw.w0_rep);
  QMat W(aG, aG);
  for (std::size_t j = 0; j < aG; ++j) {
    QMat img = mat_mul(mat_mul(raw.w0_rep, raw.a_basis[j]), w0inv);
    auto c = asolve.coords(mat_flatten(img));
    if (!c) throw fail("long representative does not normalize the split part");
    for (std::size_t i = 0; i < aG; ++i) W.at(i, j) = (*c)[i];
  }
  d.w0_action = mat_transpose(mat_inverse(W));
  {
    std::multiset<std::string> pos, neg;
    for (const WeightLine& wl : d.restricted_roots_G) {
      for (long rep = 0; rep < wl.mult; ++rep) {
        std::string kp, kn;
        QVec img = mat_apply(d.w0_action, wl.weight);
        for (const Rat& x : img) kp += rat_str(-x) + ",";
        for (const Rat& x : wl.weight) kn += rat_str(x) + ",";
        pos.insert(kp);
        neg.insert(kn);
      }
    }
    if (pos != neg) throw fail("long representative does not reverse the positive system");
  }

  // Stabilizer dimension of the base point inside the shared compact part.
  if (raw.check_m_small) {
    std::vector<QVec> mh_in_g;
    for (const QVec& v : m_H_vecs) {
      auto c = gsolve.coords(mat_flatten(amb_of(raw.basis_h, v)));
      if (!c) throw fail("subalgebra centralizer escapes the ambient algebra");
      mh_in_g.push_back(*c);
    }
    std::vector<QVec> inter;
    if (!m_G_vecs.empty() && !mh_in_g.empty()) {
      QMat cols(dg, m_G_vecs.size() + mh_in_g.size());
      for (std::size_t j = 0; j < m_G_vecs.size(); ++j)
        for (std::size_t i = 0; i < dg; ++i) cols.at(i, j) = m_G_vecs[j][i];
      for (std::size_t j = 0; j < mh_in_g.size(); ++j)
        for (std::size_t i = 0; i < dg; ++i) cols.at(i, m_G_vecs.size() + j) = -mh_in_g[j][i];
      auto ns = nullspace(cols);
      for (const QVec& c : ns) {
        QVec v(dg, Rat(0));
        for (std::size_t j = 0; j < m_G_vecs.size(); ++j) {
          if (c[j] == 0) continue;
          v = vec_add(v, vec_scale(m_G_vecs[j], c[j]));
        }
        inter.push_back(std::move(v));
      }
      inter = span_basis(inter);
    }
    long ker = 0;
    if (!inter.empty()) {
      std::size_t n2 = N * N;
      QMat br(n2, inter.size());
      for (std::size_t j = 0; j < inter.size(); ++j) {
        QVec f = mat_flatten(mat_bracket(amb_of(raw.basis_g, inter[j]), x0));
        for (std::size_t i = 0; i < n2; ++i) br.at(i, j) = f[i];
      }
      ker = static_cast<long>(nullspace(br).size());
    }
    if (ker != dim_of_structure(raw.m_small))
      throw fail("base-point stabilizer dimension mismatch");
  }

  for (const QMat& g : raw.mgh_discrete_gens) {
    if (!(mat_mul(mat_transpose(g), g) == QMat::identity(N)))
      throw fail("discrete generator is not orthogonal");
    QMat ginv = mat_transpose(g);
    for (const QMat& A : raw.a_basis)
      if (!(mat_mul(mat_mul(g, A), ginv) == A)) throw fail("discrete generator moves the split part");
    for (const QMat& b : raw.basis_g)
      if (!gsolve.contains(mat_flatten(mat_mul(mat_mul(g, b), ginv))))
        throw fail("discrete generator does not preserve the algebra");
    for (const QMat& b : raw.basis_h)
      if (!hsolve.contains(mat_flatten(mat_mul(mat_mul(g, b), ginv))))
        throw fail("discrete generator does not preserve the subalgebra");
  }

  return d;
}

std::string lbl(const std::string& fam, std::initializer_list<long> ps) {
  std::string s = fam + "(";
  bool first = true;
  for (long p : ps) {
    if (!first) s += ",";
    s += std::to_string(p);
    first = false;
  }
  return s + ")";
}

Raw make_F3(long n) {
  Raw r;
  std::size_t N = n + 1;
  r.label = lbl("F3", {n});
  r.family = "F3";
  r.params = {n};
  r.ambient = "gl(" + std::to_string(N) + ",R) over gl(" + std::to_string(n) + ",R)";
  r.basis_g = gl_r_basis(N, seq(0, N));
  r.basis_h = gl_r_basis(N, seq(0, n));
  for (std::size_t i = 0; i < N; ++i) r.a_basis.push_back(unit_mat(N, i, i));
  r.a_H_dim = n;
  std::vector<int> sd(N, 1);
  sd[N - 1] = -1;
  r.sigma_mat = diag_mat(sd);
  r.w0_rep = QMat(N, N);
  for (std::size_t i = 0; i < N; ++i) r.w0_rep.at(i, N - 1 - i) = 1;
  r.m_G.factors = {f_signs(n + 1)};
  r.m_H.factors = {f_signs(n)};
  for (long i = 0; i < n; ++i) {
    std::vector<int> gd(N, 1);
    gd[i] = -1;
    r.mgh_discrete_gens.push_back(diag_mat(gd));
  }
  return r;
}

Raw make_CTRL(long k, long j) {
  Raw r;
  std::size_t N = k;
  r.label = lbl("CTRL", {k, j});
  r.family = "CTRL";
  r.params = {k, j};
  r.ambient = "gl(" + std::to_string(k) + ",R) over gl(" + std::to_string(j) + ",R)";
  r.basis_g = gl_r_basis(N, seq(0, N));
  r.basis_h = gl_r_basis(N, seq(0, j));
  for (long i = 0; i < j; ++i) r.a_basis.push_back(unit_mat(N, i, i));
  for (long i = j; i < k; ++i) r.a_basis.push_back(unit_mat(N, i, i));
  r.a_H_dim = j;
  std::vector<int> sd(N, -1);
  for (long i = 0; i < j; ++i) sd[i] = 1;
  r.sigma_mat = diag_mat(sd);
  r.w0_rep = QMat(N, N);
  for (std::size_t i = 0; i < N; ++i) r.w0_rep.at(i, N - 1 - i) = 1;
  r.m_G.factors = {f_signs(k)};
  r.m_H.factors = {f_signs(j)};
  r.check_m_small = false;
  for (long i = 0; i < j; ++i) {
    std::vector<int> gd(N, 1);
    gd[i] = -1;
    r.mgh_discrete_gens.push_back(diag_mat(gd));
  }
  return r;
}

Raw make_F1(long n) {
  Raw r;
  std::size_t nc = n + 1;
  r.label = lbl("F1", {n});
  r.family = "F1";
  r.params = {n};
  r.ambient = "gl(" + std::to_string(nc) + ",C) over gl(" + std::to_string(n) + ",C), realified";
  r.basis_g = gl_c_basis(nc, seq(0, nc));
  r.basis_h = gl_c_basis(nc, seq(0, n));
  for (std::size_t i = 0; i < nc; ++i)
    r.a_basis.push_back(emb_c(unit_mat(nc, i, i), zero_sq(nc)));
  r.a_H_dim = n;
  std::vector<int> sd(nc, 1);
  sd[nc - 1] = -1;
  QMat sc(nc, nc);
  for (std::size_t i = 0; i < nc; ++i) sc.at(i, i) = sd[i];
  r.sigma_mat = emb_c(sc, zero_sq(nc));
  QMat wc(nc, nc);
  for (std::size_t i = 0; i < nc; ++i) wc.at(i, nc - 1 - i) = 1;
  r.w0_rep = emb_c(wc, zero_sq(nc));
  r.m_G.factors = {f_circles(n + 1)};
  r.m_H.factors = {f_circles(n)};
  return r;
}

Raw make_F2(long n) {
  Raw r;
  std::size_t nc = n + 1;
  long rG = (n + 1) / 2, rH = n / 2;
  r.label = lbl("F2", {n});
  r.family = "F2";
  r.params = {n};
  r.ambient = "so(" + std::to_string(nc) + ",C) over so(" + std::to_string(n) + ",C), realified";
  for (const QMat& b : so_basis(nc, seq(0, nc), nc)) {
    r.basis_g.push_back(emb_c(b, zero_sq(nc)));
    r.basis_g.push_back(emb_c(zero_sq(nc), b));
  }
  for (const QMat& b : so_basis(nc, seq(0, n), nc)) {
    r.basis_h.push_back(emb_c(b, zero_sq(nc)));
    r.basis_h.push_back(emb_c(zero_sq(nc), b));
  }
  for (long l = 0; l < rG; ++l) {
    QMat rot(nc, nc);
    rot.at(2 * l, 2 * l + 1) = 1;
    rot.at(2 * l + 1, 2 * l) = -1;
    r.a_basis.push_back(emb_c(zero_sq(nc), rot));
  }
  r.a_H_dim = rH;
  std::vector<int> sd(nc, 1);
  sd[nc - 1] = -1;
  QMat sc(nc, nc);
  for (std::size_t i = 0; i < nc; ++i) sc.at(i, i) = sd[i];
  r.sigma_mat = emb_c(sc, zero_sq(nc));
  std::vector<int> wd(nc, 1);
  for (long l = 0; l < rG; ++l) wd[2 * l + 1] = -1;
  if (rG % 2 == 1) {
    if (nc % 2 == 1)
      wd[nc - 1] = -1;
    else
      throw StructureMismatch(r.label + ": no determinant fix available for the long representative");
  }
  QMat wc(nc, nc);
  for (std::size_t i = 0; i < nc; ++i) wc.at(i, i) = wd[i];
  r.w0_rep = emb_c(wc, zero_sq(nc));
  r.m_G.factors = {f_circles(rG)};
  r.m_H.factors = {f_circles(rH)};
  return r;
}

Raw make_F4(long p, long q) {
  Raw r;
  long P = p, Qc = q + 1;
  std::size_t nc = P + Qc;
  long rr = std::min(p, q + 1), rH = std::min(p, q);
  r.label = lbl("F4", {p, q});
  r.family = "F4";
  r.params = {p, q};
  r.ambient = "u(" + std::to_string(p) + "," + std::to_string(q + 1) + ") over u(" +
              std::to_string(p) + "," + std::to_string(q) + "), realified";
  r.basis_g = u_basis(nc, seq(0, nc), P);
  r.basis_h = u_basis(nc, seq(0, nc - 1), P);
  for (long l = 0; l < rr; ++l) {
    QMat b(nc, nc);
    b.at(l, P + l) = 1;
    b.at(P + l, l) = 1;
    r.a_basis.push_back(emb_c(b, zero_sq(nc)));
  }
  r.a_H_dim = rH;
  std::vector<int> sd(nc, 1);
  sd[nc - 1] = -1;
  QMat sc(nc, nc);
  for (std::size_t i = 0; i < nc; ++i) sc.at(i, i) = sd[i];
  r.sigma_mat = emb_c(sc, zero_sq(nc));
  std::vector<int> wd(nc, 1);
  if (p >= q + 1)
    for (long i = P; i < P + Qc; ++i) wd[i] = -1;
  else
    for (long i = P; i < P + p; ++i) wd[i] = -1;
  QMat wc(nc, nc);
  for (std::size_t i = 0; i < nc; ++i) wc.at(i, i) = wd[i];
  r.w0_rep = emb_c(wc, zero_sq(nc));
  long cG = (p >= q + 1) ? p - q - 1 : q + 1 - p;
  long cH = (p >= q) ? p - q : q - p;
  r.m_G.factors = {f_circles(rr), f_u(cG)};
  r.m_H.factors = {f_circles(rH), f_u(cH)};
  r.m_small.factors = {f_u(std::min(cG, cH))};
  return r;
}

Raw make_F5(long p, long q) {
  Raw r;
  long P = p;
  std::size_t N = p + q + 1;
  long rr = std::min(p, q + 1), rH = std::min(p, q);
  r.label = lbl("F5", {p, q});
  r.family = "F5";
  r.params = {p, q};
  r.ambient = "so(" + std::to_string(p) + "," + std::to_string(q + 1) + ") over so(" +
              std::to_string(p) + "," + std::to_string(q) + ")";
  r.basis_g = so_basis(N, seq(0, N), P);
  r.basis_h = so_basis(N, seq(0, N - 1), P);
  for (long l = 0; l < rr; ++l) {
    QMat b(N, N);
    b.at(l, P + l) = 1;
    b.at(P + l, l) = 1;
    r.a_basis.push_back(b);
  }
  r.a_H_dim = rH;
  std::vector<int> sd(N, 1);
  sd[N - 1] = -1;
  r.sigma_mat = diag_mat(sd);
  std::vector<int> wd(N, 1);
  long flips = (p == q + 1 && rr % 2 == 1) ? rr - 1 : rr;
  for (long l = 0; l < flips; ++l) wd[P + l] = -1;
  {
    int det = 1;
    for (int x : wd) det *= x;
    if (det < 0) {
      if (p > rr)
        wd[P - 1] = -1;
      else
        wd[N - 1] = -1;
    }
    det = 1;
    for (int x : wd) det *= x;
    if (det < 0) throw StructureMismatch(r.label + ": long representative has determinant -1");
  }
  r.w0_rep = diag_mat(wd);
  long cG = (p >= q + 1) ? p - q - 1 : q + 1 - p;
  long cH = (p >= q) ? p - q : q - p;
  r.m_G.factors = {f_signs(rr), f_so(cG)};
  r.m_H.factors = {f_signs(rH), f_so(cH)};
  r.m_small.factors = {f_so(std::min(cG, cH))};
  for (long l = 0; l < rH; ++l) {
    std::vector<int> gd(N, 1);
    gd[l] = -1;
    gd[P + l] = -1;
    r.mgh_discrete_gens.push_back(diag_mat(gd));
  }
  return r;
}

Raw make_E1(long p, long q) {
  Raw r;
  std::size_t N = 1 + p + q;
  r.label = lbl("E1", {p, q});
  r.family = "E1";
  r.params = {p, q};
  r.ambient = "so(1," + std::to_string(p + q) + ") over so(1," + std::to_string(p) + ")+so(" +
              std::to_string(q) + ")";
  r.basis_g = so_basis(N, seq(0, N), 1);
  r.basis_h = so_basis(N, seq(0, p + 1), 1);
  for (const QMat& b : so_basis(N, seq(p + 1, N), 1)) r.basis_h.push_back(b);
  QMat b01(N, N);
  b01.at(0, 1) = 1;
  b01.at(1, 0) = 1;
  r.a_basis = {b01};
  r.a_H_dim = 1;
  std::vector<int> sd(N, 1);
  for (std::size_t i = p + 1; i < N; ++i) sd[i] = -1;
  r.sigma_mat = diag_mat(sd);
  std::vector<int> wd(N, 1);
  wd[1] = -1;
  wd[N - 1] = -1;
  r.w0_rep = diag_mat(wd);
  r.m_G.factors = {f_signs(1), f_so(p + q - 1)};
  r.m_H.factors = {f_signs(1), f_so(p - 1), f_so(q)};
  r.m_small.factors = {f_so(p - 1), f_so(q - 1)};
  std::vector<int> gd(N, 1);
  gd[0] = -1;
  gd[1] = -1;
  r.mgh_discrete_gens.push_back(diag_mat(gd));
  return r;
}

Raw make_E2(long p, long q) {
  Raw r;
  std::size_t nc = 1 + p + q;
  r.label = lbl("E2", {p, q});
  r.family = "E2";
  r.params = {p, q};
  r.ambient = "u(1," + std::to_string(p + q) + ") over u(1," + std::to_string(p) + ")+u(" +
              std::to_string(q) + "), realified";
  r.basis_g = u_basis(nc, seq(0, nc), 1);
  r.basis_h = u_basis(nc, seq(0, p + 1), 1);
  for (const QMat& b : u_basis(nc, seq(p + 1, nc), 1)) r.basis_h.push_back(b);
  QMat b01(nc, nc);
  b01.at(0, 1) = 1;
  b01.at(1, 0) = 1;
  r.a_basis = {emb_c(b01, zero_sq(nc))};
  r.a_H_dim = 1;
  QMat sc(nc, nc);
  for (std::size_t i = 0; i < nc; ++i) sc.at(i, i) = (i <= static_cast<std::size_t>(p)) ? 1 : -1;
  r.sigma_mat = emb_c(sc, zero_sq(nc));
  QMat wc = QMat::identity(nc);
  wc.at(1, 1) = -1;
  r.w0_rep = emb_c(wc, zero_sq(nc));
  r.m_G.factors = {f_circles(1), f_u(p + q - 1)};
  r.m_H.factors = {f_circles(1), f_u(p - 1), f_u(q)};
  r.m_small.factors = {f_circles(1), f_u(p - 1), f_u(q - 1)};
  return r;
}

Raw make_E3(long p, long q) {
  Raw r;
  std::size_t nq = 1 + p + q;
  r.label = lbl("E3", {p, q});
  r.family = "E3";
  r.params = {p, q};
  r.ambient = "sp(1," + std::to_string(p + q) + ") over sp(1," + std::to_string(p) + ")+sp(" +
              std::to_string(q) + "), realified";
  r.basis_g = sp_basis(nq, seq(0, nq), 1);
  r.basis_h = sp_basis(nq, seq(0, p + 1), 1);
  for (const QMat& b : sp_basis(nq, seq(p + 1, nq), 1)) r.basis_h.push_back(b);
  QMat b01(nq, nq);
  b01.at(0, 1) = 1;
  b01.at(1, 0) = 1;
  QMat z = zero_sq(nq);
  r.a_basis = {emb_h(b01, z, z, z)};
  r.a_H_dim = 1;
  QMat sc(nq, nq);
  for (std::size_t i = 0; i < nq; ++i) sc.at(i, i) = (i <= static_cast<std::size_t>(p)) ? 1 : -1;
  r.sigma_mat = emb_h(sc, z, z, z);
  QMat wc = QMat::identity(nq);
  wc.at(1, 1) = -1;
  r.w0_rep = emb_h(wc, z, z, z);
  r.m_G.factors = {f_sp(1), f_sp(p + q - 1)};
  r.m_H.factors = {f_sp(1), f_sp(p - 1), f_sp(q)};
  r.m_small.factors = {f_sp(1), f_sp(p - 1), f_sp(q - 1)};
  return r;
}

Raw make_G2(long n) {
  Raw r;
  std::size_t nb = n + 1;
  std::size_t N = 2 * nb;
  r.label = lbl("G2", {n});
  r.family = "G2";
  r.params = {n};
  r.ambient = "so(1," + std::to_string(n) + ")+so(1," + std::to_string(n) +
              ") over the diagonal so(1," + std::to_string(n) + ")";
  auto so1n = so_basis(nb, seq(0, nb), 1);
  auto embL = [&](const QMat& x) {
    QMat m(N, N);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) m.at(i, j) = x.at(i, j);
    return m;
  };
  auto embR = [&](const QMat& x) {
    QMat m(N, N);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) m.at(nb + i, nb + j) = x.at(i, j);
    return m;
  };
  for (const QMat& b : so1n) r.basis_g.push_back(embL(b));
  for (const QMat& b : so1n) r.basis_g.push_back(embR(b));
  for (const QMat& b : so1n) r.basis_h.push_back(mat_add(embL(b), embR(b)));
  QMat bo(nb, nb);
  bo.at(0, 1) = 1;
  bo.at(1, 0) = 1;
  r.a_basis = {mat_add(embL(bo), embR(bo)), mat_sub(embL(bo), embR(bo))};
  r.a_H_dim = 1;
  QMat sw(N, N);
  for (std::size_t i = 0; i < nb; ++i) {
    sw.at(i, nb + i) = 1;
    sw.at(nb + i, i) = 1;
  }
  r.sigma_mat = sw;
  std::vector<int> wd(nb, 1);
  wd[1] = -1;
  wd[nb - 1] = -1;
  QMat wprime = diag_mat(wd);
  QMat w0(N, N);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      w0.at(i, j) = wprime.at(i, j);
      w0.at(nb + i, nb + j) = wprime.at(i, j);
    }
  r.w0_rep = w0;
  r.m_G.factors = {f_signs(1), f_so(n - 1), f_signs(1), f_so(n - 1)};
  r.m_H.factors = {f_signs(1), f_so(n - 1)};
  if (n == 3) r.m_small.factors = {f_signs(1)};
  std::vector<int> gd(nb, 1);
  gd[0] = -1;
  gd[1] = -1;
  QMat gg(N, N);
  for (std::size_t i = 0; i < nb; ++i) {
    gg.at(i, i) = gd[i];
    gg.at(nb + i, nb + i) = gd[i];
  }
  r.mgh_discrete_gens.push_back(gg);
  return r;
}

Raw make_H1() {
  Raw r;
  std::size_t N = 6;
  r.label = "H1(2)";
  r.family = "H1";
  r.params = {2};
  r.ambient = "so(2,4) over u(1,2)";
  r.basis_g = so_basis(N, seq(0, N), 2);
  r.basis_h = u_basis(3, seq(0, 3), 1);
  QMat bc(3, 3);
  bc.at(0, 1) = 1;
  bc.at(1, 0) = 1;
  QMat a1 = emb_c(bc, zero_sq(3));
  QMat a2(N, N);
  a2.at(0, 2) = 1;
  a2.at(2, 0) = 1;
  a2.at(1, 3) = -1;
  a2.at(3, 1) = -1;
  r.a_basis = {a1, a2};
  r.a_H_dim = 1;
  r.sigma_mat = emb_c(zero_sq(3), QMat::identity(3));
  r.w0_rep = diag_mat({-1, -1, 1, 1, 1, 1});
  r.m_G.factors = {f_signs(2), f_circles(1)};
  r.m_H.factors = {f_circles(2)};
  r.mgh_discrete_gens.push_back(diag_mat({-1, -1, -1, -1, 1, 1}));
  return r;
}

Raw make_H2() {
  Raw r;
  std::size_t nq = 3;
  QMat z = zero_sq(nq);
  r.label = "H2(2)";
  r.family = "H2";
  r.params = {2};
  r.ambient = "sl(3,H) over sl(2,H)+R+sp(1)";
  auto push_quat_units = [&](std::vector<QMat>& dst, const QMat& e) {
    dst.push_back(emb_h(e, z, z, z));
    dst.push_back(emb_h(z, e, z, z));
    dst.push_back(emb_h(z, z, e, z));
    dst.push_back(emb_h(z, z, z, e));
  };
  auto push_imag_units = [&](std::vector<QMat>& dst, const QMat& e) {
    dst.push_back(emb_h(z, e, z, z));
    dst.push_back(emb_h(z, z, e, z));
    dst.push_back(emb_h(z, z, z, e));
  };
  for (std::size_t j = 0; j < nq; ++j)
    for (std::size_t k = 0; k < nq; ++k)
      if (j != k) push_quat_units(r.basis_g, unit_mat(nq, j, k));
  for (std::size_t j = 0; j < nq; ++j) push_imag_units(r.basis_g, unit_mat(nq, j, j));
  QMat d1(nq, nq), d2(nq, nq);
  d1.at(0, 0) = 1;
  d1.at(1, 1) = -1;
  d2.at(1, 1) = 1;
  d2.at(2, 2) = -1;
  r.basis_g.push_back(emb_h(d1, z, z, z));
  r.basis_g.push_back(emb_h(d2, z, z, z));

  push_quat_units(r.basis_h, unit_mat(nq, 0, 1));
  push_quat_units(r.basis_h, unit_mat(nq, 1, 0));
  push_imag_units(r.basis_h, unit_mat(nq, 0, 0));
  push_imag_units(r.basis_h, unit_mat(nq, 1, 1));
  r.basis_h.push_back(emb_h(d1, z, z, z));
  QMat dr(nq, nq);
  dr.at(0, 0) = 1;
  dr.at(1, 1) = 1;
  dr.at(2, 2) = -2;
  r.basis_h.push_back(emb_h(dr, z, z, z));
  push_imag_units(r.basis_h, unit_mat(nq, 2, 2));

  r.a_basis = {emb_h(d1, z, z, z), emb_h(dr, z, z, z)};
  r.a_H_dim = 2;
  QMat sc(nq, nq);
  sc.at(0, 0) = 1;
  sc.at(1, 1) = 1;
  sc.at(2, 2) = -1;
  r.sigma_mat = emb_h(sc, z, z, z);
  QMat perm(nq, nq);
  perm.at(0, 1) = 1;
  perm.at(1, 0) = 1;
  perm.at(2, 2) = 1;
  r.w0_rep = emb_h(perm, z, z, z);
  r.m_G.factors = {f_sp(1), f_sp(1), f_sp(1)};
  r.m_H.factors = {f_sp(1), f_sp(1), f_sp(1)};
  r.m_small.factors = {f_sp(1)};
  return r;
}

Raw make_H3() {
  Raw r;
  std::size_t nq = 3;
  QMat z = zero_sq(nq);
  r.label = "H3(2)";
  r.family = "H3";
  r.params = {2};
  r.ambient = "so*(6) over so*(4)+so*(2)";
  auto push_pair = [&](std::vector<QMat>& dst, std::size_t j, std::size_t k) {
    QMat alt(nq, nq), sym(nq, nq);
    alt.at(j, k) = 1;
    alt.at(k, j) = -1;
    sym.at(j, k) = 1;
    sym.at(k, j) = 1;
    dst.push_back(emb_h(alt, z, z, z));
    dst.push_back(emb_h(z, sym, z, z));
    dst.push_back(emb_h(z, z, alt, z));
    dst.push_back(emb_h(z, z, z, alt));
  };
  for (std::size_t j = 0; j < nq; ++j) r.basis_g.push_back(emb_h(z, unit_mat(nq, j, j), z, z));
  push_pair(r.basis_g, 0, 1);
  push_pair(r.basis_g, 0, 2);
  push_pair(r.basis_g, 1, 2);
  r.basis_h.push_back(emb_h(z, unit_mat(nq, 0, 0), z, z));
  r.basis_h.push_back(emb_h(z, unit_mat(nq, 1, 1), z, z));
  push_pair(r.basis_h, 0, 1);
  r.basis_h.push_back(emb_h(z, unit_mat(nq, 2, 2), z, z));
  QMat alt01(nq, nq);
  alt01.at(0, 1) = 1;
  alt01.at(1, 0) = -1;
  r.a_basis = {emb_h(z, z, alt01, z)};
  r.a_H_dim = 1;
  QMat sc(nq, nq);
  sc.at(0, 0) = 1;
  sc.at(1, 1) = 1;
  sc.at(2, 2) = -1;
  r.sigma_mat = emb_h(sc, z, z, z);
  QMat wc(nq, nq);
  wc.at(0, 0) = 1;
  wc.at(1, 1) = -1;
  wc.at(2, 2) = 1;
  r.w0_rep = emb_h(wc, z, z, z);
  r.m_G.factors = {f_circles(1), f_sp(1)};
  r.m_H.factors = {f_signs(1), f_sp(1), f_circles(1)};
  r.m_small.factors = {f_circles(1)};
  return r;
}

Raw make_H4() {
  Raw r = make_E3(1, 1);
  r.label = "H4(1,1)";
  r.family = "H4";
  r.params = {1, 1};
  r.ambient = "sp(1,2) over sp(1,1)+sp(1), realified";
  return r;
}

bool is_registered(const PairId& id) {
  const std::string& f = id.family;
  const auto& p = id.params;
  auto two_in = [&](long lo, long hi) {
    return p.size() == 2 && p[0] >= 1 && p[1] >= 1 && p[0] + p[1] >= lo && p[0] + p[1] <= hi;
  };
  if (f == "F1" || f == "F2") return p.size() == 1 && p[0] >= 2 && p[0] <= 4;
  if (f == "F3") return p.size() == 1 && p[0] >= 1 && p[0] <= 4;
  if (f == "F4" || f == "F5") return two_in(2, 5);
  if (f == "E1" || f == "E2" || f == "E3") return two_in(2, 4);
  if (f == "G2") return p.size() == 1 && (p[0] == 2 || p[0] == 3);
  if (f == "H1" || f == "H2" || f == "H3") return p.size() == 1 && p[0] == 2;
  if (f == "H4") return p.size() == 2 && p[0] == 1 && p[1] == 1;
  if (f == "CTRL")
    return p.size() == 2 && ((p[0] == 4 && p[1] == 2) || (p[0] == 5 && p[1] == 3));
  return false;
}

Raw build_raw(const PairId& id) {
  const std::string& f = id.family;
  const auto& p = id.params;
  if (f == "F1") return make_F1(p[0]);
  if (f == "F2") return make_F2(p[0]);
  if (f == "F3") return make_F3(p[0]);
  if (f == "F4") return make_F4(p[0], p[1]);
  if (f == "F5") return make_F5(p[0], p[1]);
  if (f == "E1") return make_E1(p[0], p[1]);
  if (f == "E2") return make_E2(p[0], p[1]);
  if (f == "E3") return make_E3(p[0], p[1]);
  if (f == "G2") return make_G2(p[0]);
  if (f == "H1") return make_H1();
  if (f == "H2") return make_H2();
  if (f == "H3") return make_H3();
  if (f == "H4") return make_H4();
  if (f == "CTRL") return make_CTRL(p[0], p[1]);
  throw UnknownPair("no construction for family " + f);
}

[[noreturn]] void reject(const PairId& id, const std::string& label) {
  static const std::set<std::string> known = {"F1", "F2", "F3", "F4", "F5", "E1", "E2",
                                             "E3", "G2", "H1", "H2", "H3", "H4", "CTRL"};
  static const std::set<std::string> exceptional = {"E4", "H5", "G1"};
  if (exceptional.count(id.family))
    throw UnsupportedPair(label + ": exceptional family not covered by this registry");
  if (known.count(id.family))
    throw UnsupportedPair(label + ": parameters outside the registered range");
  throw UnknownPair(label + ": unknown pair family");
}

std::map<std::string, PairDescriptor>& cache() {
  static std::map<std::string, PairDescriptor> c;
  return c;
}

bool& file_mode() {
  static bool fm = false;
  return fm;
}

void ensure_env_loaded() {
  static bool done = false;
  if (done) return;
  done = true;
  const char* path = std::getenv("LIE_REGISTRY_PATH");
  if (!path || !*path) return;
  std::ifstream in(path);
  if (!in) throw UsageError(std::string("cannot open registry file ") + path);
  std::stringstream ss;
  ss << in.rdbuf();
  for (auto& desc : registry_parse_json(ss.str())) {
    std::string key = desc.label;
    cache().emplace(std::move(key), std::move(desc));
  }
  file_mode() = true;
}

ordered_json mat_to_json(const QMat& m) {
  ordered_json j;
  j["r"] = m.rows;
  j["c"] = m.cols;
  std::vector<std::string> d;
  d.reserve(m.data.size());
  for (const Rat& x : m.data) d.push_back(rat_str(x));
  j["d"] = std::move(d);
  return j;
}

QMat mat_from_json(const ordered_json& j) {
  QMat m(j.at("r").get<std::size_t>(), j.at("c").get<std::size_t>());
  const auto& d = j.at("d");
  if (d.size() != m.data.size()) throw UsageError("matrix payload has the wrong length");
  for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = parse_rat(d[i].get<std::string>());
  return m;
}

ordered_json vec_to_json(const QVec& v) {
  ordered_json j = ordered_json::array();
  for (const Rat& x : v) j.push_back(rat_str(x));
  return j;
}

QVec vec_from_json(const ordered_json& j) {
  QVec v;
  for (const auto& x : j) v.push_back(parse_rat(x.get<std::string>()));
  return v;
}

std::string kind_str(MFactorKind k) {
  switch (k) {
    case MFactorKind::Signs: return "Signs";
    case MFactorKind::Circles: return "Circles";
    case MFactorKind::SOGroup: return "SO";
    case MFactorKind::UGroup: return "U";
    case MFactorKind::Other: return "Other";
  }
  return "Other";
}

MFactorKind kind_from_str(const std::string& s) {
  if (s == "Signs") return MFactorKind::Signs;
  if (s == "Circles") return MFactorKind::Circles;
  if (s == "SO") return MFactorKind::SOGroup;
  if (s == "U") return MFactorKind::UGroup;
  if (s == "Other") return MFactorKind::Other;
  throw UsageError("unknown factor kind " + s);
}

ordered_json mstruct_to_json(const MStructure& m) {
  ordered_json j = ordered_json::array();
  for (const MFactor& f : m.factors) {
    ordered_json e;
    e["kind"] = kind_str(f.kind);
    e["size"] = f.size;
    e["dim"] = f.dim_r;
    e["name"] = f.name;
    j.push_back(std::move(e));
  }
  return j;
}

MStructure mstruct_from_json(const ordered_json& j) {
  MStructure m;
  for (const auto& e : j) {
    MFactor f;
    f.kind = kind_from_str(e.at("kind").get<std::string>());
    f.size = e.at("size").get<long>();
    f.dim_r = e.at("dim").get<long>();
    f.name = e.at("name").get<std::string>();
    m.factors.push_back(std::move(f));
  }
  return m;
}

ordered_json mats_to_json(const std::vector<QMat>& ms) {
  ordered_json j = ordered_json::array();
  for (const QMat& m : ms) j.push_back(mat_to_json(m));
  return j;
}

std::vector<QMat> mats_from_json(const ordered_json& j) {
  std::vector<QMat> out;
  for (const auto& e : j) out.push_back(mat_from_json(e));
  return out;
}

ordered_json desc_to_json(const PairDescriptor& d) {
  ordered_json j;
  j["label"] = d.label;
  j["family"] = d.family;
  j["params"] = d.params;
  j["ambient"] = d.ambient;
  j["realization"] = d.realization;
  j["dim_g"] = d.dim_g;
  j["dim_h"] = d.dim_h;
  j["a_G_dim"] = d.a_G_dim;
  j["a_H_dim"] = d.a_H_dim;
  j["basis_g"] = mats_to_json(d.basis_g);
  j["basis_h"] = mats_to_json(d.basis_h);
  j["a_basis"] = mats_to_json(d.a_basis);
  ordered_json rg = ordered_json::array();
  for (const WeightLine& wl : d.restricted_roots_G) {
    ordered_json e;
    e["w"] = vec_to_json(wl.weight);
    e["m"] = wl.mult;
    rg.push_back(std::move(e));
  }
  j["roots_G"] = std::move(rg);
  ordered_json rh = ordered_json::array();
  for (const WeightLine& wl : d.restricted_roots_H) {
    ordered_json e;
    e["w"] = vec_to_json(wl.weight);
    e["m"] = wl.mult;
    rh.push_back(std::move(e));
  }
  j["roots_H"] = std::move(rh);
  j["rho_nG"] = vec_to_json(d.rho_nG);
  j["rho_nH"] = vec_to_json(d.rho_nH);
  ordered_json delta = ordered_json::array();
  for (const WeightLine& wl : d.delta_n_minus_sigma) {
    ordered_json e;
    e["w"] = vec_to_json(wl.weight);
    e["m"] = wl.mult;
    delta.push_back(std::move(e));
  }
  j["delta"] = std::move(delta);
  ordered_json strata = ordered_json::array();
  for (const auto& s : d.strata) strata.push_back(mats_to_json(s));
  j["strata"] = std::move(strata);
  j["x0"] = vec_to_json(d.x0);
  j["p_H_basis"] = mats_to_json(d.p_H_basis);
  j["p_H_m_dim"] = d.p_H_m_dim;
  j["p_G_raw"] = mats_to_json(d.p_G_raw);
  j["p_G_basis"] = mats_to_json(d.p_G_basis);
  j["m_G"] = mstruct_to_json(d.m_G);
  j["m_H"] = mstruct_to_json(d.m_H);
  j["m_small"] = mstruct_to_json(d.m_small);
  j["gens"] = mats_to_json(d.mgh_discrete_gens);
  j["w0_rep"] = mat_to_json(d.w0_rep);
  j["w0_action"] = mat_to_json(d.w0_action);
  j["sigma"] = mat_to_json(d.sigma_mat);
  return j;
}

PairDescriptor desc_from_json(const ordered_json& j) {
  PairDescriptor d;
  d.label = j.at("label").get<std::string>();
  d.family = j.at("family").get<std::string>();
  d.params = j.at("params").get<std::vector<long>>();
  d.ambient = j.at("ambient").get<long>();
  d.realization = j.at("realization").get<std::string>();
  d.dim_g = j.at("dim_g").get<long>();
  d.dim_h = j.at("dim_h").get<long>();
  d.a_G_dim = j.at("a_G_dim").get<long>();
  d.a_H_dim = j.at("a_H_dim").get<long>();
  d.basis_g = mats_from_json(j.at("basis_g"));
  d.basis_h = mats_from_json(j.at("basis_h"));
  d.a_basis = mats_from_json(j.at("a_basis"));
  for (const auto& e : j.at("roots_G"))
    d.restricted_roots_G.push_back(WeightLine{vec_from_json(e.at("w")), e.at("m").get<long>()});
  for (const auto& e : j.at("roots_H"))
    d.restricted_roots_H.push_back(WeightLine{vec_from_json(e.at("w")), e.at("m").get<long>()});
  d.rho_nG = vec_from_json(j.at("rho_nG"));
  d.rho_nH = vec_from_json(j.at("rho_nH"));
  for (const auto& e : j.at("delta"))
    d.delta_n_minus_sigma.push_back(WeightLine{vec_from_json(e.at("w")), e.at("m").get<long>()});
  for (const auto& e : j.at("strata")) d.strata.push_back(mats_from_json(e));
  d.x0 = vec_from_json(j.at("x0"));
  d.p_H_basis = mats_from_json(j.at("p_H_basis"));
  d.p_H_m_dim = j.at("p_H_m_dim").get<long>();
  d.p_G_raw = mats_from_json(j.at("p_G_raw"));
  d.p_G_basis = mats_from_json(j.at("p_G_basis"));
  d.m_G = mstruct_from_json(j.at("m_G"));
  d.m_H = mstruct_from_json(j.at("m_H"));
  d.m_small = mstruct_from_json(j.at("m_small"));
  d.mgh_discrete_gens = mats_from_json(j.at("gens"));
  d.w0_rep = mat_from_json(j.at("w0_rep"));
  d.w0_action = mat_from_json(j.at("w0_action"));
  d.sigma_mat = mat_from_json(j.at("sigma"));
  return d;
}

}  // namespace

const PairDescriptor& registry_lookup(const std::string& label) {
  ensure_env_loaded();
  PairId id = parse_pair_label(label);
  std::string key = pair_label(id);
  auto it = cache().find(key);
  if (it != cache().end()) return it->second;
  if (file_mode() || !is_registered(id)) reject(id, key);
  PairDescriptor d = derive(build_raw(id));
  auto [pos, inserted] = cache().emplace(key, std::move(d));
  (void)inserted;
  return pos->second;
}

std::vector<std::string> registry_labels() {
  ensure_env_loaded();
  if (file_mode()) {
    std::vector<std::string> out;
    for (const auto& [k, v] : cache()) out.push_back(k);
    return out;
  }
  std::vector<std::string> out;
  for (long n = 2; n <= 4; ++n) out.push_back(lbl("F1", {n}));
  for (long n = 2; n <= 4; ++n) out.push_back(lbl("F2", {n}));
  for (long n = 1; n <= 4; ++n) out.push_back(lbl("F3", {n}));
  for (long s = 2; s <= 5; ++s)
    for (long p = 1; p < s; ++p) out.push_back(lbl("F4", {p, s - p}));
  for (long s = 2; s <= 5; ++s)
    for (long p = 1; p < s; ++p) out.push_back(lbl("F5", {p, s - p}));
  for (long s = 2; s <= 4; ++s)
    for (long p = 1; p < s; ++p) out.push_back(lbl("E1", {p, s - p}));
  for (long s = 2; s <= 4; ++s)
    for (long p = 1; p < s; ++p) out.push_back(lbl("E2", {p, s - p}));
  for (long s = 2; s <= 4; ++s)
    for (long p = 1; p < s; ++p) out.push_back(lbl("E3", {p, s - p}));
  out.push_back(lbl("G2", {2}));
  out.push_back(lbl("G2", {3}));
  out.push_back("H1(2)");
  out.push_back("H2(2)");
  out.push_back("H3(2)");
  out.push_back("H4(1,1)");
  out.push_back(lbl("CTRL", {4, 2}));
  out.push_back(lbl("CTRL", {5, 3}));
  return out;
}

std::string registry_to_json() {
  ordered_json root;
  root["version"] = 1;
  ordered_json pairs = ordered_json::array();
  for (const std::string& label : registry_labels()) pairs.push_back(desc_to_json(registry_lookup(label)));
  root["pairs"] = std::move(pairs);
  return root.dump();
}

void registry_save(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write registry file " + path);
  out << registry_to_json() << "\n";
}

std::vector<PairDescriptor> registry_parse_json(const std::string& text) {
  ordered_json root = ordered_json::parse(text, nullptr, false);
  if (root.is_discarded()) throw UsageError("registry file is not valid JSON");
  if (!root.is_object() || root.value("version", 0) != 1)
    throw UsageError("registry file has an unsupported layout");
  std::vector<PairDescriptor> out;
  for (const auto& e : root.at("pairs")) out.push_back(desc_from_json(e));
  return out;
}

}  // namespace lie
