#include "lie/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "lie/errors.hpp"

namespace lie {

Family parse_family(char c) {
  switch (c) {
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    case 'D': return Family::D;
    default: throw UsageError(std::string("unknown family: ") + c);
  }
}

char family_char(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

std::string RootSystem::name() const { return family_char(family) + std::to_string(rank); }

RootSystem parse_system(const std::string& name) {
  if (name.size() < 2) throw UsageError("bad system name: " + name);
  Family f = parse_family(name[0]);
  int rank = 0;
  try {
    rank = std::stoi(name.substr(1));
  } catch (const std::exception&) {
    throw UsageError("bad system name: " + name);
  }
  return build_root_system(f, rank);
}

namespace {

Weight unit(int dim, int i) {
  Weight w(dim, Rat(0));
  w[i] = 1;
  return w;
}

}  // namespace

RootSystem build_root_system(Family family, int rank) {
  if (rank < 1) throw UnsupportedRank("rank must be positive");
  if (family == Family::D && rank < 2) throw UnsupportedRank("D requires rank >= 2");
  RootSystem sys;
  sys.family = family;
  sys.rank = rank;
  sys.ambient_dim = (family == Family::A) ? rank + 1 : rank;
  const int d = sys.ambient_dim;

  auto e = [&](int i) { return unit(d, i); };

  switch (family) {
    case Family::A:
      for (int i = 0; i < rank; ++i) sys.simple_roots.push_back(vec_sub(e(i), e(i + 1)));
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) sys.positive_roots.push_back(vec_sub(e(i), e(j)));
      for (int i = 1; i <= rank; ++i) {
        Weight w(d, Rat(0));
        for (int j = 0; j < i; ++j) w[j] = 1;
        sys.fundamental_weights.push_back(project_sum_zero(sys, w));
      }
      break;
    case Family::B:
      for (int i = 0; i + 1 < rank; ++i) sys.simple_roots.push_back(vec_sub(e(i), e(i + 1)));
      sys.simple_roots.push_back(e(rank - 1));
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
          sys.positive_roots.push_back(vec_sub(e(i), e(j)));
          sys.positive_roots.push_back(vec_add(e(i), e(j)));
        }
      for (int i = 0; i < rank; ++i) sys.positive_roots.push_back(e(i));
      for (int i = 1; i <= rank; ++i) {
        Weight w(d, Rat(0));
        for (int j = 0; j < i; ++j) w[j] = 1;
        if (i == rank)
          for (auto& x : w) x /= 2;
        sys.fundamental_weights.push_back(w);
      }
      break;
    case Family::C:
      for (int i = 0; i + 1 < rank; ++i) sys.simple_roots.push_back(vec_sub(e(i), e(i + 1)));
      sys.simple_roots.push_back(vec_scale(e(rank - 1), Rat(2)));
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
          sys.positive_roots.push_back(vec_sub(e(i), e(j)));
          sys.positive_roots.push_back(vec_add(e(i), e(j)));
        }
      for (int i = 0; i < rank; ++i) sys.positive_roots.push_back(vec_scale(e(i), Rat(2)));
      for (int i = 1; i <= rank; ++i) {
        Weight w(d, Rat(0));
        for (int j = 0; j < i; ++j) w[j] = 1;
        sys.fundamental_weights.push_back(w);
      }
      break;
    case Family::D:
      for (int i = 0; i + 1 < rank; ++i) sys.simple_roots.push_back(vec_sub(e(i), e(i + 1)));
      sys.simple_roots.push_back(vec_add(e(rank - 2), e(rank - 1)));
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
          sys.positive_roots.push_back(vec_sub(e(i), e(j)));
          sys.positive_roots.push_back(vec_add(e(i), e(j)));
        }
      for (int i = 1; i <= rank; ++i) {
        Weight w(d, Rat(0));
        for (int j = 0; j < i; ++j) w[j] = 1;
        if (i >= rank - 1)
          for (auto& x : w) x /= 2;
        if (i == rank - 1) w[rank - 1] = Rat(-1, 2);
        sys.fundamental_weights.push_back(w);
      }
      break;
  }

  Weight rho(d, Rat(0));
  for (const auto& a : sys.positive_roots) rho = vec_add(rho, a);
  sys.rho = vec_scale(rho, Rat(1, 2));
  return sys;
}

Rat inner(const Weight& a, const Weight& b) { return dot(a, b); }

Rat coroot_pairing(const Weight& v, const Weight& alpha) {
  return 2 * inner(v, alpha) / inner(alpha, alpha);
}

bool is_dominant(const RootSystem& sys, const Weight& v) {
  for (const auto& a : sys.simple_roots)
    if (coroot_pairing(v, a) < 0) return false;
  return true;
}

Weight dominate(const RootSystem& sys, Weight v) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a : sys.simple_roots) {
      Rat p = coroot_pairing(v, a);
      if (p < 0) {
        v = vec_sub(v, vec_scale(a, p));
        changed = true;
      }
    }
  }
  return v;
}

Weight project_sum_zero(const RootSystem& sys, const Weight& v) {
  if (sys.family != Family::A) return v;
  Rat mean(0);
  for (const auto& x : v) mean += x;
  mean /= int(v.size());
  Weight out = v;
  for (auto& x : out) x -= mean;
  return out;
}

namespace {

void check_weight_dim(const RootSystem& sys, const Weight& w, const char* what) {
  if (int(w.size()) != sys.ambient_dim)
    throw UsageError(std::string(what) + ": expected " + std::to_string(sys.ambient_dim) +
                     " coordinates, got " + std::to_string(w.size()));
}

void require_dominant_integral(const RootSystem& sys, const Weight& lambda) {
  for (const auto& a : sys.simple_roots) {
    Rat p = coroot_pairing(lambda, a);
    if (p < 0) throw NonDominantWeight("weight is not dominant");
    if (!is_integer(p)) throw NonDominantWeight("weight is not integral for this system");
  }
}

// lambda - mu as nonnegative-integer combination of simple roots, if any.
std::optional<std::vector<Int>> simple_root_coords(const RootSystem& sys, const Weight& lambda,
                                                  const Weight& mu, bool require_nonneg) {
  QMat m(sys.ambient_dim, sys.rank);
  for (int j = 0; j < sys.rank; ++j)
    for (int i = 0; i < sys.ambient_dim; ++i) m.at(i, j) = sys.simple_roots[j][i];
  auto sol = solve(m, vec_sub(lambda, mu));
  if (!sol) return std::nullopt;
  // Simple roots are linearly independent, so the solution is unique.
  std::vector<Int> out;
  for (const auto& c : *sol) {
    if (!is_integer(c)) return std::nullopt;
    if (require_nonneg && c < 0) return std::nullopt;
    out.push_back(c.get_num());
  }
  return out;
}

}  // namespace

Int weyl_dim(const Irrep& rep) {
  const RootSystem& sys = rep.system;
  check_weight_dim(sys, rep.highest_weight, "highest weight");
  require_dominant_integral(sys, rep.highest_weight);
  Rat num(1), den(1);
  Weight lr = vec_add(rep.highest_weight, sys.rho);
  for (const auto& a : sys.positive_roots) {
    num *= inner(lr, a);
    den *= inner(sys.rho, a);
  }
  Rat d = num / den;
  if (!is_integer(d)) throw NonDominantWeight("Weyl dimension is not an integer");
  return d.get_num();
}

std::map<Weight, Int> dominant_weight_multiplicities(const Irrep& rep) {
  const RootSystem& sys = rep.system;
  check_weight_dim(sys, rep.highest_weight, "highest weight");
  require_dominant_integral(sys, rep.highest_weight);
  const Weight& lambda = rep.highest_weight;

  // All weights via simple-root strings downward from lambda.
  std::set<Weight> support;
  std::deque<Weight> queue{lambda};
  support.insert(lambda);
  while (!queue.empty()) {
    Weight mu = queue.front();
    queue.pop_front();
    for (const auto& a : sys.simple_roots) {
      Rat p = coroot_pairing(mu, a);
      if (p <= 0) continue;
      Weight v = mu;
      for (Int k = 1; k <= p.get_num(); ++k) {
        v = vec_sub(v, a);
        if (support.insert(v).second) queue.push_back(v);
      }
    }
  }

  std::vector<Weight> dominants;
  for (const auto& w : support)
    if (is_dominant(sys, w)) dominants.push_back(w);

  // Process in increasing height; height = sum of simple-root coordinates of
  // lambda - mu, so every lookup of mu + k*alpha lands on an earlier entry.
  std::map<Weight, Int> heights;
  for (const auto& mu : dominants) {
    auto c = simple_root_coords(sys, lambda, mu, true);
    Int s(0);
    for (const auto& x : *c) s += x;
    heights[mu] = s;
  }
  std::sort(dominants.begin(), dominants.end(), [&](const Weight& x, const Weight& y) {
    const Int &hx = heights[x], &hy = heights[y];
    if (hx != hy) return hx < hy;
    return x < y;
  });

  std::map<Weight, Int> mult;
  Weight lr = vec_add(lambda, sys.rho);
  Rat lr2 = inner(lr, lr);
  for (const auto& mu : dominants) {
    if (mu == lambda) {
      mult[mu] = 1;
      continue;
    }
    Rat rhs(0);
    for (const auto& a : sys.positive_roots) {
      Weight v = mu;
      while (true) {
        v = vec_add(v, a);
        auto it = mult.find(dominate(sys, v));
        if (it == mult.end()) break;
        rhs += Rat(it->second) * inner(v, a);
      }
    }
    Weight mr = vec_add(mu, sys.rho);
    Rat denom = lr2 - inner(mr, mr);
    Rat m = 2 * rhs / denom;
    mult[mu] = m.get_num();  // exact integer by Freudenthal
  }
  return mult;
}

Int weight_multiplicity(const Irrep& rep, const Weight& mu) {
  const RootSystem& sys = rep.system;
  check_weight_dim(sys, mu, "weight");
  check_weight_dim(sys, rep.highest_weight, "highest weight");
  require_dominant_integral(sys, rep.highest_weight);
  auto coords = simple_root_coords(sys, rep.highest_weight, mu, false);
  if (!coords) throw LatticeMismatch("weight does not differ from the highest weight by the root lattice");
  for (const auto& c : *coords)
    if (c < 0) return 0;
  auto table = dominant_weight_multiplicities(rep);
  auto it = table.find(dominate(sys, mu));
  if (it == table.end()) return 0;
  return it->second;
}

std::map<Weight, Int> weight_system(const Irrep& rep) {
  auto dom = dominant_weight_multiplicities(rep);
  std::map<Weight, Int> out;
  for (const auto& [mu, m] : dom)
    for (const auto& w : weyl_orbit(rep.system, mu)) out[w] = m;
  return out;
}

std::vector<Weight> weyl_orbit(const RootSystem& sys, const Weight& v) {
  check_weight_dim(sys, v, "weight");
  std::set<Weight> seen{v};
  std::deque<Weight> queue{v};
  while (!queue.empty()) {
    Weight w = queue.front();
    queue.pop_front();
    for (const auto& a : sys.simple_roots) {
      Rat p = coroot_pairing(w, a);
      if (p == 0) continue;
      Weight r = vec_sub(w, vec_scale(a, p));
      if (seen.insert(r).second) queue.push_back(r);
    }
  }
  return std::vector<Weight>(seen.begin(), seen.end());
}

bool is_spherical_highest_weight(const RootSystem& sys, const Weight& lambda) {
  check_weight_dim(sys, lambda, "weight");
  for (const auto& a : sys.positive_roots) {
    Rat p = inner(lambda, a) / inner(a, a);
    if (p < 0 || !is_integer(p)) return false;
  }
  return true;
}

Int weyl_order(const RootSystem& sys) {
  Int f(1);
  for (int i = 2; i <= sys.rank; ++i) f *= i;
  switch (sys.family) {
    case Family::A: return f * (sys.rank + 1);
    case Family::B:
    case Family::C: {
      Int two(1);
      for (int i = 0; i < sys.rank; ++i) two *= 2;
      return f * two;
    }
    case Family::D: {
      Int two(1);
      for (int i = 0; i + 1 < sys.rank; ++i) two *= 2;
      return f * two;
    }
  }
  return f;
}

Int tensor_multiplicity(const RootSystem& sys, const Weight& lambda1, const Weight& lambda2,
                        const Weight& nu) {
  check_weight_dim(sys, lambda2, "weight");
  check_weight_dim(sys, nu, "weight");
  auto wts = weight_system({sys, lambda1});
  Weight target = vec_add(nu, sys.rho);
  Int total(0);
  for (const auto& [mu, m] : wts) {
    Weight v = vec_add(vec_add(mu, lambda2), sys.rho);
    int sign = 1;
    bool wall = false;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& a : sys.simple_roots) {
        Rat p = coroot_pairing(v, a);
        if (p == 0) {
          wall = true;
          break;
        }
        if (p < 0) {
          v = vec_sub(v, vec_scale(a, p));
          sign = -sign;
          changed = true;
        }
      }
      if (wall) break;
    }
    if (wall) continue;
    if (v == target) total += sign * m;
  }
  return total;
}

std::string weight_str(const Weight& w) { return rat_vector_str(w); }

Weight parse_weight(const std::string& s) { return parse_rat_vector(s); }

}  // namespace lie
