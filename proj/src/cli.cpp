#include "lie/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lie/branch.hpp"
#include "lie/errors.hpp"
#include "lie/kernels.hpp"
#include "lie/pairs.hpp"
#include "lie/rat.hpp"
#include "lie/rootsys.hpp"

namespace lie {

namespace {

using njson = nlohmann::ordered_json;

const char* const kGrammar[] = {
    "rootsys dim|orbit|mult <system> <weight> ...",
    "branch gl|so|oracle|span ...",
    "pairs list|verify|orbits|mult|generic|translate|shintani ...",
    "kernel eval|check-equivariance|intertwine|iwasawa ...",
};

njson grammar_json() {
  njson g = njson::array();
  for (const char* line : kGrammar) g.push_back(line);
  return g;
}

struct Rng {
  unsigned long long s;
  explicit Rng(unsigned long long seed) : s(seed) {}
  unsigned long long next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  double uni(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next() % 1000000007ull) / 1000000006.0;
  }
  long pick(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<unsigned long long>(hi - lo + 1));
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

QVec parse_rats(const std::string& s) {
  try {
    return parse_rat_vector(s);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad rational list \"") + s + "\": " + e.what());
  }
}

std::vector<Int> parse_ints(const std::string& s) {
  QVec rats = parse_rats(s);
  std::vector<Int> out;
  for (const Rat& r : rats) {
    if (!is_integer(r)) throw UsageError("expected integers, got " + rat_str(r));
    out.push_back(r.get_num());
  }
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw UsageError("bad number \"" + s + "\"");
    return v;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("bad number \"" + s + "\"");
  }
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ',')) out.push_back(parse_double(tok));
  return out;
}

// Splits "re+imi" / "re-imi" / "re" / "imi" at the sign that separates the two
// parts (ignoring a leading sign and exponent signs).  Returns (re, im) as
// strings; empty means absent.
std::pair<std::string, std::string> split_complex(const std::string& s) {
  if (s.empty()) throw UsageError("empty complex literal");
  if (s.back() != 'i') return {s, ""};
  std::string body = s.substr(0, s.size() - 1);
  std::size_t cut = std::string::npos;
  for (std::size_t i = 1; i < body.size(); ++i)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E')
      cut = i;
  if (cut == std::string::npos) return {"", body};
  return {body.substr(0, cut), body.substr(cut)};
}

std::string default_unit(const std::string& part) {
  if (part.empty() || part == "+") return "1";
  if (part == "-") return "-1";
  return part;
}

Cx parse_complex_double(const std::string& s) {
  auto [re, im] = split_complex(s);
  double r = re.empty() ? 0.0 : parse_double(re);
  double i = im.empty() && !re.empty() ? 0.0 : parse_double(default_unit(im));
  if (re.empty() && im.empty()) throw UsageError("empty complex literal");
  return Cx(r, i);
}

std::vector<Cx> parse_complex_doubles(const std::string& s) {
  std::vector<Cx> out;
  for (const std::string& tok : split(s, ',')) out.push_back(parse_complex_double(tok));
  return out;
}

Rat parse_rat_arg(const std::string& s) {
  try {
    return parse_rat(s);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad rational \"") + s + "\": " + e.what());
  }
}

CxVec parse_complex_rats(const std::string& s) {
  CxVec out;
  for (const std::string& tok : split(s, ',')) {
    auto [re, im] = split_complex(tok);
    out.re.push_back(re.empty() ? Rat(0) : parse_rat_arg(re));
    out.im.push_back(im.empty() ? Rat(0) : parse_rat_arg(default_unit(im)));
  }
  return out;
}

// Character blocks separated by ';', entries by ','.  An empty segment is an
// empty block (rank-zero factors such as SO(1)).
MCharacter parse_character(const std::string& s) {
  MCharacter chi;
  for (const std::string& blk : split(s, ';')) {
    std::vector<Int> entries;
    if (!blk.empty()) entries = parse_ints(blk);
    chi.blocks.push_back(std::move(entries));
  }
  return chi;
}

njson json_int(const Int& v) {
  if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
  return v.get_str();
}

std::string weight_csv(const QVec& w) { return rat_vector_str(w); }

Weight dynkin_to_ambient(const RootSystem& sys, const QVec& labels) {
  if (labels.size() != sys.fundamental_weights.size())
    throw UsageError("expected " + std::to_string(sys.fundamental_weights.size()) +
                     " fundamental-weight coordinates for " + sys.name());
  Weight w(static_cast<std::size_t>(sys.ambient_dim), Rat(0));
  for (std::size_t i = 0; i < labels.size(); ++i)
    w = vec_add(w, vec_scale(sys.fundamental_weights[i], labels[i]));
  return w;
}

njson summands_json(const BranchingResult& result) {
  return njson::parse(branching_to_json(result));
}

// ---- rootsys ----

njson cmd_rootsys_dim(const std::string& system, const std::string& weight) {
  RootSystem sys = parse_system(system);
  Weight w = dynkin_to_ambient(sys, parse_rats(weight));
  return njson{{"dim", json_int(weyl_dim(Irrep{sys, w}))}};
}

njson cmd_rootsys_orbit(const std::string& system, const std::string& weight) {
  RootSystem sys = parse_system(system);
  Weight w = dynkin_to_ambient(sys, parse_rats(weight));
  std::vector<Weight> orbit = weyl_orbit(sys, w);
  njson arr = njson::array();
  for (const Weight& v : orbit) arr.push_back(weight_csv(v));
  return njson{{"size", orbit.size()}, {"orbit", std::move(arr)}};
}

njson cmd_rootsys_mult(const std::string& system, const std::string& lambda,
                       const std::string& mu) {
  RootSystem sys = parse_system(system);
  Weight lw = dynkin_to_ambient(sys, parse_rats(lambda));
  Weight mw = dynkin_to_ambient(sys, parse_rats(mu));
  return njson{{"multiplicity", json_int(weight_multiplicity(Irrep{sys, lw}, mw))}};
}

// ---- branch ----

njson cmd_branch_gl(const std::string& lambda) {
  return njson{{"summands", summands_json(branch_gl_real(parse_ints(lambda)))}};
}

njson cmd_branch_so(const std::string& lambda, long from) {
  return njson{{"summands", summands_json(branch_so(parse_rats(lambda), from))}};
}

njson cmd_branch_oracle(const std::string& source, const std::string& lambda) {
  QVec w = parse_rats(lambda);
  long k = 0;
  CartanRestrictionMap map;
  RootSystem sys;
  if (source.rfind("sl", 0) == 0) {
    k = std::atol(source.c_str() + 2);
    if (k < 2) throw UsageError("oracle source must be sl<k> (k >= 2) or so<k> (k >= 3)");
    sys = build_root_system(Family::A, static_cast<int>(k) - 1);
    map = gl_restriction_of_sl(k);
  } else if (source.rfind("so", 0) == 0) {
    k = std::atol(source.c_str() + 2);
    if (k < 3) throw UsageError("oracle source must be sl<k> (k >= 2) or so<k> (k >= 3)");
    sys = k % 2 ? build_root_system(Family::B, static_cast<int>(k / 2))
                : build_root_system(Family::D, static_cast<int>(k / 2));
    map = so_one_step_restriction(k);
  } else {
    throw UsageError("oracle source must be sl<k> or so<k>, got \"" + source + "\"");
  }
  return njson{{"summands", summands_json(branch_bruteforce(Irrep{sys, w}, map))}};
}

njson cmd_branch_span(const std::string& label, long height) {
  SpanningReport report = spanning_check(label, height);
  njson wit = njson::array();
  for (const SpanPair& p : report.witness)
    wit.push_back(njson{{"lambda", weight_csv(p.lambda)}, {"nu", weight_csv(p.nu)}});
  return njson{{"spans", report.spans}, {"witness", std::move(wit)}};
}

// ---- pairs ----

njson cmd_pairs_list() {
  njson arr = njson::array();
  for (const std::string& label : registry_labels()) arr.push_back(label);
  return njson{{"pairs", std::move(arr)}};
}

njson cmd_pairs_verify(const std::string& label) {
  return njson{{"strongly_spherical", verify_strongly_spherical(registry_lookup(label))}};
}

njson cmd_pairs_orbits(const std::string& label) {
  return njson{{"open_orbits", open_orbit_count(registry_lookup(label))}};
}

njson cmd_pairs_shintani(const std::string& label) {
  return njson{{"shintani_generic_dim", shintani_generic_dim(registry_lookup(label))}};
}

njson cmd_pairs_mult(const std::string& label, const std::string& xi, const std::string& lambda,
                     const std::string& eta, const std::string& nu) {
  const PairDescriptor& pair = registry_lookup(label);
  long m = generic_multiplicity(pair, parse_character(xi), parse_complex_rats(lambda),
                                parse_character(eta), parse_complex_rats(nu));
  return njson{{"multiplicity", m}};
}

njson cmd_pairs_generic(const std::string& label, const std::string& lambda,
                        const std::string& nu) {
  const PairDescriptor& pair = registry_lookup(label);
  return njson{{"generic", generic_condition_holds(pair, parse_rats(lambda), parse_rats(nu))}};
}

njson cmd_pairs_translate(const std::string& label, const std::string& xi,
                          const std::string& eta) {
  const PairDescriptor& pair = registry_lookup(label);
  TranslatedWeights tw = translate_weights(pair, parse_character(xi), parse_character(eta));
  njson lam = njson::array(), nu = njson::array();
  for (const Int& v : tw.lambda) lam.push_back(json_int(v));
  for (const Int& v : tw.nu) nu.push_back(json_int(v));
  return njson{{"lambda", std::move(lam)}, {"nu", std::move(nu)}};
}

// ---- kernel ----

RMat square_matrix(const std::vector<double>& entries, std::size_t n) {
  if (entries.size() != n * n)
    throw UsageError("--g needs " + std::to_string(n * n) + " comma-separated entries");
  RMat g(n, n);
  g.data = entries;
  return g;
}

njson cmd_kernel_eval(long n, const std::string& xi, const std::string& lambda,
                      const std::string& eta, const std::string& nu, const std::string& gstr) {
  std::vector<Int> xi_i = parse_ints(xi), eta_i = parse_ints(eta);
  std::vector<int> xi_v, eta_v;
  for (const Int& v : xi_i) xi_v.push_back(static_cast<int>(v.get_si()));
  for (const Int& v : eta_i) eta_v.push_back(static_cast<int>(v.get_si()));
  KernelParams p = kernel_params(n, xi_v, parse_complex_doubles(lambda), eta_v,
                                 parse_complex_doubles(nu));
  RMat g = square_matrix(parse_doubles(gstr), static_cast<std::size_t>(n) + 1);
  Cx value = kernel_eval(p, g);
  return njson{{"value", njson{{"re", value.real()}, {"im", value.imag()}}}};
}

bool minors_clear(const RMat& g, long n, double thresh) {
  RMat x = rmat_mul(antidiagonal_flip(static_cast<std::size_t>(n) + 1), g);
  for (long k = 1; k <= n + 1; ++k)
    if (std::abs(phi_k(x, k)) < thresh) return false;
  for (long q = 1; q <= n; ++q)
    if (std::abs(psi_q(x, q)) < thresh) return false;
  return true;
}

njson cmd_kernel_check_equivariance(long n, long samples, unsigned long long seed, double tol) {
  if (n < 1) throw UsageError("--n must be >= 1");
  if (samples < 1) throw UsageError("--samples must be >= 1");
  Rng rng(seed);
  std::size_t sz = static_cast<std::size_t>(n) + 1;
  double maxres = 0.0, sum = 0.0;
  long done = 0, attempts = 0;
  while (done < samples) {
    if (++attempts > 1000 * samples)
      throw SearchBoundExceeded("could not sample enough well-conditioned matrices");
    KernelParams p;
    p.n = n;
    p.s.resize(sz);
    p.t.resize(sz - 1);
    p.delta.resize(sz);
    p.eps.resize(sz - 1);
    for (auto& c : p.s) c = Cx(rng.uni(0.05, 1.95), rng.uni(-1.0, 1.0));
    for (auto& c : p.t) c = Cx(rng.uni(0.05, 1.95), rng.uni(-1.0, 1.0));
    for (auto& d : p.delta) d = static_cast<int>(rng.pick(0, 1));
    for (auto& e : p.eps) e = static_cast<int>(rng.pick(0, 1));
    RMat g(sz, sz);
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = 0; j < sz; ++j) g.at(i, j) = rng.uni(-2, 2);
    RMat m(sz, sz), a(sz, sz), nr = RMat::identity(sz);
    RMat ml(sz, sz), al(sz, sz), nl = RMat::identity(sz);
    for (std::size_t i = 0; i < sz; ++i) {
      m.at(i, i) = rng.pick(0, 1) ? 1.0 : -1.0;
      a.at(i, i) = std::exp(rng.uni(-0.5, 0.5));
      ml.at(i, i) = rng.pick(0, 1) ? 1.0 : -1.0;
      al.at(i, i) = std::exp(rng.uni(-0.5, 0.5));
    }
    ml.at(sz - 1, sz - 1) = 1.0;
    al.at(sz - 1, sz - 1) = 1.0;
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = i + 1; j < sz; ++j) {
        nr.at(i, j) = rng.uni(-1, 1);
        if (j < sz - 1) nl.at(i, j) = rng.uni(-1, 1);
      }
    RMat left = rmat_mul(rmat_mul(ml, al), nl);
    RMat right = rmat_mul(rmat_mul(m, a), nr);
    RMat moved = rmat_mul(left, rmat_mul(g, right));
    if (!minors_clear(g, n, 1e-6) || !minors_clear(moved, n, 1e-6)) continue;
    ++done;
    double res = equivariance_residual(p, g, m, a, nr, ml, al, nl);
    maxres = std::max(maxres, res);
    sum += res;
  }
  return njson{{"n", n},
               {"samples", samples},
               {"seed", seed},
               {"tol", tol},
               {"max_residual", maxres},
               {"mean_residual", sum / static_cast<double>(samples)},
               {"pass", maxres <= tol}};
}

njson cmd_kernel_intertwine(long points, double tol) {
  if (points < 2) throw UsageError("--points must be >= 2");
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> chars = {
      {{0, 0}, {0}}, {{1, 0}, {0}}, {{0, 1}, {1}}, {{1, 1}, {1}}, {{1, 1}, {0}}};
  const double hs[5] = {2.0, -1.5, 0.7, -0.4, 3.1};
  double maxres = 0.0, sum = 0.0;
  long cases = 0;
  for (std::size_t ci = 0; ci < chars.size(); ++ci) {
    KernelParams p = kernel_params(1, chars[ci].first, {Cx(9.5), Cx(0.0)}, chars[ci].second,
                                   {Cx(4.75)});
    Rng rng(1234 + ci);
    for (int fi = 0; fi < 5; ++fi) {
      OTwoFunction f;
      f.max_mode = 3;
      f.rot.resize(7);
      f.refl.resize(7);
      for (auto& c : f.rot) c = Cx(rng.uni(-1, 1), rng.uni(-1, 1));
      for (auto& c : f.refl) c = Cx(rng.uni(-1, 1), rng.uni(-1, 1));
      Cx af1 = apply_operator_n1(p, f, 1.0, points);
      for (double h : hs) {
        Cx lhs = apply_pi_then_operator_n1(p, f, h, points);
        Cx scale = std::exp(Cx(4.75) * std::log(std::abs(h)));
        if (h < 0.0 && chars[ci].second[0] % 2) scale = -scale;
        double res = std::abs(lhs - scale * af1);
        maxres = std::max(maxres, res);
        sum += res;
        ++cases;
      }
    }
  }
  return njson{{"points", points},
               {"cases", cases},
               {"tol", tol},
               {"max_residual", maxres},
               {"mean_residual", sum / static_cast<double>(cases)},
               {"pass", maxres <= tol}};
}

njson cmd_kernel_iwasawa(const std::string& gstr) {
  std::vector<double> entries = parse_doubles(gstr);
  std::size_t n = static_cast<std::size_t>(std::lround(std::sqrt(double(entries.size()))));
  if (n == 0 || n * n != entries.size())
    throw UsageError("--g needs a nonempty square number of entries");
  RMat g(n, n);
  g.data = entries;
  IwasawaFactors f = iwasawa(g);
  auto to_rows = [](const RMat& m) {
    njson rows = njson::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
      njson row = njson::array();
      for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  njson diag = njson::array();
  for (std::size_t i = 0; i < n; ++i) diag.push_back(f.a.at(i, i));
  return njson{{"k", to_rows(f.k)}, {"a", std::move(diag)}, {"n", to_rows(f.n_mat)}};
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string scalar_str(const njson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten_csv(const std::string& key, const njson& v, std::vector<std::string>& rows) {
  if (v.is_object()) {
    for (const auto& item : v.items())
      flatten_csv(key.empty() ? item.key() : key + "." + item.key(), item.value(), rows);
    return;
  }
  if (v.is_array()) {
    bool scalars = true;
    for (const njson& e : v)
      if (e.is_object() || e.is_array()) scalars = false;
    if (scalars) {
      std::string row = csv_escape(key.empty() ? "value" : key);
      for (const njson& e : v) row += "," + csv_escape(scalar_str(e));
      rows.push_back(std::move(row));
    } else {
      std::size_t i = 0;
      for (const njson& e : v) flatten_csv((key.empty() ? "value" : key) + "." + std::to_string(i++), e, rows);
    }
    return;
  }
  rows.push_back(csv_escape(key.empty() ? "value" : key) + "," + csv_escape(scalar_str(v)));
}

}  // namespace

CommandResult run(const std::vector<std::string>& argv) {
  auto start = std::chrono::steady_clock::now();
  CommandResult result;
  result.status = "ok";

  CLI::App app{"Lie theory toolkit"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  njson payload;

  std::string arg_system, arg_weight, arg_weight2, arg_label, arg_source;
  std::string arg_xi, arg_eta, arg_lambda, arg_nu, arg_g;
  long arg_from = 0, arg_height = 4, arg_n = 1, arg_samples = 100, arg_points = 2048;
  unsigned long long arg_seed = 0;
  double arg_tol = 0.0;

  auto* rs = app.add_subcommand("rootsys", "root system computations");
  rs->fallthrough();
  rs->require_subcommand(1);
  auto* rs_dim = rs->add_subcommand("dim", "Weyl dimension of a highest weight");
  rs_dim->add_option("system", arg_system, "root system, e.g. A2")->required();
  rs_dim->add_option("weight", arg_weight, "fundamental-weight coordinates")->required();
  rs_dim->callback([&] { payload = cmd_rootsys_dim(arg_system, arg_weight); });
  auto* rs_orbit = rs->add_subcommand("orbit", "Weyl orbit of a weight");
  rs_orbit->add_option("system", arg_system)->required();
  rs_orbit->add_option("weight", arg_weight, "fundamental-weight coordinates")->required();
  rs_orbit->callback([&] { payload = cmd_rootsys_orbit(arg_system, arg_weight); });
  auto* rs_mult = rs->add_subcommand("mult", "weight multiplicity in an irrep");
  rs_mult->add_option("system", arg_system)->required();
  rs_mult->add_option("lambda", arg_weight)->required();
  rs_mult->add_option("mu", arg_weight2)->required();
  rs_mult->callback([&] { payload = cmd_rootsys_mult(arg_system, arg_weight, arg_weight2); });
  for (auto* sub : {rs_dim, rs_orbit, rs_mult}) sub->fallthrough();

  auto* br = app.add_subcommand("branch", "branching computations");
  br->fallthrough();
  br->require_subcommand(1);
  auto* br_gl = br->add_subcommand("gl", "gl(k,R) down to gl(k-1,R)");
  br_gl->add_option("lambda", arg_weight, "weakly decreasing integers")->required();
  br_gl->callback([&] { payload = cmd_branch_gl(arg_weight); });
  auto* br_so = br->add_subcommand("so", "so(n+1,C) down to so(n,C)");
  br_so->add_option("lambda", arg_weight, "ambient coordinates")->required();
  br_so->add_option("--from", arg_from, "source rank n+1 of so(n+1)")->required();
  br_so->callback([&] { payload = cmd_branch_so(arg_weight, arg_from); });
  auto* br_or = br->add_subcommand("oracle", "character-peeling restriction");
  br_or->add_option("source", arg_source, "sl<k> or so<k>")->required();
  br_or->add_option("lambda", arg_weight, "ambient coordinates")->required();
  br_or->callback([&] { payload = cmd_branch_oracle(arg_source, arg_weight); });
  auto* br_span = br->add_subcommand("span", "joint span of spherical data");
  br_span->add_option("label", arg_label, "pair label, e.g. F3(2)")->required();
  br_span->add_option("--height", arg_height, "search height bound");
  br_span->callback([&] { payload = cmd_branch_span(arg_label, arg_height); });
  for (auto* sub : {br_gl, br_so, br_or, br_span}) sub->fallthrough();

  auto* pr = app.add_subcommand("pairs", "spherical pair registry");
  pr->fallthrough();
  pr->require_subcommand(1);
  auto* pr_list = pr->add_subcommand("list", "registered pair labels");
  pr_list->callback([&] { payload = cmd_pairs_list(); });
  auto* pr_verify = pr->add_subcommand("verify", "strong sphericity check");
  pr_verify->add_option("label", arg_label)->required();
  pr_verify->callback([&] { payload = cmd_pairs_verify(arg_label); });
  auto* pr_orbits = pr->add_subcommand("orbits", "open P_H x P_G orbit count");
  pr_orbits->add_option("label", arg_label)->required();
  pr_orbits->callback([&] { payload = cmd_pairs_orbits(arg_label); });
  auto* pr_mult = pr->add_subcommand("mult", "generic multiplicity");
  pr_mult->add_option("label", arg_label)->required();
  pr_mult->add_option("--xi", arg_xi, "character blocks, ';'-separated")->required();
  pr_mult->add_option("--lambda", arg_lambda, "complex rationals re+imi")->required();
  pr_mult->add_option("--eta", arg_eta)->required();
  pr_mult->add_option("--nu", arg_nu)->required();
  pr_mult->callback(
      [&] { payload = cmd_pairs_mult(arg_label, arg_xi, arg_lambda, arg_eta, arg_nu); });
  auto* pr_gen = pr->add_subcommand("generic", "spectral genericity predicate");
  pr_gen->add_option("label", arg_label)->required();
  pr_gen->add_option("--lambda", arg_lambda, "rational real parts")->required();
  pr_gen->add_option("--nu", arg_nu)->required();
  pr_gen->callback([&] { payload = cmd_pairs_generic(arg_label, arg_lambda, arg_nu); });
  auto* pr_tr = pr->add_subcommand("translate", "finite-dimensional translates");
  pr_tr->add_option("label", arg_label)->required();
  pr_tr->add_option("--xi", arg_xi)->required();
  pr_tr->add_option("--eta", arg_eta)->required();
  pr_tr->callback([&] { payload = cmd_pairs_translate(arg_label, arg_xi, arg_eta); });
  auto* pr_sh = pr->add_subcommand("shintani", "generic Shintani space dimension");
  pr_sh->add_option("label", arg_label)->required();
  pr_sh->callback([&] { payload = cmd_pairs_shintani(arg_label); });
  for (auto* sub : {pr_list, pr_verify, pr_orbits, pr_mult, pr_gen, pr_tr, pr_sh})
    sub->fallthrough();

  auto* kn = app.add_subcommand("kernel", "symmetry-breaking kernels");
  kn->fallthrough();
  kn->require_subcommand(1);
  auto* kn_eval = kn->add_subcommand("eval", "evaluate the kernel at one matrix");
  kn_eval->add_option("--n", arg_n, "GL(n+1)/GL(n) rank parameter")->required();
  kn_eval->add_option("--lambda", arg_lambda, "n+1 complex values")->required();
  kn_eval->add_option("--nu", arg_nu, "n complex values")->required();
  kn_eval->add_option("--xi", arg_xi, "n+1 sign exponents")->required();
  kn_eval->add_option("--eta", arg_eta, "n sign exponents")->required();
  kn_eval->add_option("--g", arg_g, "(n+1)^2 row-major entries")->required();
  kn_eval->callback(
      [&] { payload = cmd_kernel_eval(arg_n, arg_xi, arg_lambda, arg_eta, arg_nu, arg_g); });
  auto* kn_eq = kn->add_subcommand("check-equivariance", "sampled equivariance residuals");
  kn_eq->add_option("--n", arg_n)->required();
  kn_eq->add_option("--samples", arg_samples);
  kn_eq->add_option("--seed", arg_seed, "sampling seed")->required();
  arg_tol = 1e-9;
  kn_eq->add_option("--tol", arg_tol, "residual tolerance");
  kn_eq->callback(
      [&] { payload = cmd_kernel_check_equivariance(arg_n, arg_samples, arg_seed, arg_tol); });
  auto* kn_in = kn->add_subcommand("intertwine", "rank-one intertwining battery");
  kn_in->add_option("--points", arg_points, "quadrature points");
  double in_tol = 1e-6;
  kn_in->add_option("--tol", in_tol, "residual tolerance");
  kn_in->callback([&] { payload = cmd_kernel_intertwine(arg_points, in_tol); });
  auto* kn_iw = kn->add_subcommand("iwasawa", "KAN factors of a square matrix");
  kn_iw->add_option("--g", arg_g, "square matrix, row-major")->required();
  kn_iw->callback([&] { payload = cmd_kernel_iwasawa(arg_g); });
  for (auto* sub : {kn_eval, kn_eq, kn_in, kn_iw}) sub->fallthrough();

  std::vector<const char*> cargv;
  cargv.push_back("lietk");
  for (const std::string& a : argv) cargv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
    result.payload = std::move(payload);
  } catch (const CLI::CallForHelp&) {
    result.payload = njson{{"help", app.help()}};
  } catch (const CLI::ParseError& e) {
    result.status = "error";
    result.payload = njson{
        {"code", "UsageError"}, {"message", e.what()}, {"grammar", grammar_json()}};
  } catch (const UsageError& e) {
    result.status = "error";
    result.payload =
        njson{{"code", e.code()}, {"message", e.what()}, {"grammar", grammar_json()}};
  } catch (const DomainError& e) {
    result.status = "error";
    result.payload = njson{{"code", e.code()}, {"message", e.what()}};
  } catch (const std::exception& e) {
    result.status = "error";
    result.payload = njson{{"code", "InternalError"}, {"message", e.what()}};
  }

  auto stop = std::chrono::steady_clock::now();
  result.timing_ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count());
  return result;
}

int cli_exit_code(const CommandResult& result) {
  if (result.status == "ok") return 0;
  if (result.payload.contains("code") && result.payload["code"] == "UsageError") return 2;
  return 1;
}

std::string render_payload(const CommandResult& result, const std::string& format) {
  if (format == "csv") {
    std::vector<std::string> rows;
    flatten_csv("", result.payload, rows);
    std::string out;
    for (const std::string& row : rows) {
      out += row;
      out += '\n';
    }
    return out;
  }
  return result.payload.dump(2) + "\n";
}

}  // namespace lie
