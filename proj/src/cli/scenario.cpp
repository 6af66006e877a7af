#include "commfam/cli/scenario.hpp"

#include "commfam/exact/random.hpp"
#include "commfam/ncfam/ncfam.hpp"
#include "commfam/poisson/poisson.hpp"
#include "commfam/quantize/quantize.hpp"
#include "commfam/weyl/weyl.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace commfam::cli {

namespace {

const std::vector<std::string> kZ = {"z"};

// Anchors: the formula each check verifies.
namespace anchor {
const char* const commute = "H_i H_j = H_j H_i, H_i = Delta_0^-1 Delta_i";
const char* const per_leg = "H_i H_j = H_j H_i, legs a[i][j]";
const char* const last_leg = "sum_i (-1)^i [..f_i^..] [f_1..f_n]^-1 f_i^(n) = (-1)^n";
const char* const vanishing = "sum_i (-1)^i [..f_i^..] [f_1..f_n]^-1 f_i^(a) = 0";
const char* const main_id = "Delta_i Delta_0^-1 Delta_j = Delta_j Delta_0^-1 Delta_i";
const char* const laplace = "[f_1..f_n] = sum_j (-1)^(j+n) f_j^(n) [..f_j^..]";
const char* const poisson = "{Delta_i/Delta_0, Delta_j/Delta_0} = 0";
const char* const grassmann = "sum +- Lambda(..) Lambda(..) = 0 for decomposable Lambda";
const char* const hyperplane = "1 + sum_i (-1)^i h_i x_i = 0, h_i = Delta_i/Delta_0";
const char* const cone_alpha = "{w,w'}_alpha = {w,w'}_alpha'";
const char* const cone_antisym = "{w,w'} = -{w',w}";
const char* const cone_jacobi = "{a,{b,c}} + {b,{c,a}} + {c,{a,b}} = 0";
const char* const dual_assoc = "(a.b).c = a.(b.c), f.g = fg + eps{f,g}";
const char* const dual_factor = "soul(a.b - b.a) = 2{a,b}";
const char* const dual_family = "H_i.H_j = H_j.H_i in A[eps]/(eps^2)";
const char* const weyl_commute = "[H_k, H_l] = 0";
const char* const weyl_symbol = "symbol(H_k) = H_k^cl, {symbol(H_k), symbol(H_l)} = 0";
const char* const weyl_basis = "sum_j (-1)^(1+j) (M_kj/Phi) T_zj = H_k closed form";
const char* const loc_axioms = "fX = Xf = 1, (uv)w = u(vw) mod hbar^M";
const char* const loc_xd = "X D = D X + hbar X^2";
const char* const loc_lift = "X' = sum_j (-X hbar g)^j X carries products";
const char* const degeneration = "[a,b] = -hbar{a,b} + O(hbar^2)";
}  // namespace anchor

/// One trial's records; names are prefixed with the trial index later.
using TrialFn = std::function<std::vector<CheckRecord>(std::uint64_t trial_seed, int trial)>;

struct Plan {
  int trials = 1;
  TrialFn run;
};

CheckRecord from_report(const std::string& name, const char* anc, const CheckReport& rep) {
  CheckRecord r{name, anc, rep.passed() ? Status::pass : Status::fail, rep.first_witness(), {}};
  if (r.status == Status::pass) r.witness.clear();
  return r;
}

CheckRecord boolean(const std::string& name, const char* anc, bool ok, const std::string& witness) {
  return {name, anc, ok ? Status::pass : Status::fail, ok ? std::string() : witness, {}};
}

class ResampleExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Redraws while `draw` throws one of the degenerate-draw exceptions, at most
/// `limit` attempts; the number of discarded draws goes into `note`.
template <class Draw>
auto resampled(std::uint64_t trial_seed, int limit, std::string& note, Draw&& draw) {
  std::string last;
  for (int attempt = 0; attempt < limit; ++attempt) {
    Rng rng(trial_seed, static_cast<std::uint64_t>(attempt));
    try {
      auto out = draw(rng);
      if (attempt > 0) note = "resampled " + std::to_string(attempt) + " degenerate draw(s): " + last;
      return out;
    } catch (const Singular& e) {
      last = e.what();
    } catch (const DependentFamily& e) {
      last = e.what();
    } catch (const ZeroDelta0& e) {
      last = e.what();
    } catch (const ZeroPhi& e) {
      last = e.what();
    }
  }
  throw ResampleExhausted("all " + std::to_string(limit) + " draws degenerate; last: " + last);
}

std::vector<int> iota_rows(int from, int to) {
  std::vector<int> v;
  for (int i = from; i <= to; ++i) v.push_back(i);
  return v;
}

std::vector<Rat> random_vector(Rng& rng, int dim, long bound) {
  std::vector<Rat> v;
  for (int i = 0; i < dim; ++i) v.push_back(rng.rat(bound, 4));
  return v;
}

std::vector<Rat> distinct_points(Rng& rng, std::size_t N, long bound) {
  std::vector<Rat> ps;
  while (ps.size() < N) {
    const Rat p(rng.uniform(-bound, bound));
    if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
  }
  return ps;
}

/// Replaces the placeholder constant 'c' with a value.
std::string substitute_c(const std::string& spec, long c) {
  std::string out;
  for (char ch : spec) {
    if (ch == 'c')
      out += "(" + std::to_string(c) + ")";
    else
      out += ch;
  }
  return out;
}

void require_keys(const Scenario& s, const KindInfo& info) {
  for (const auto& [key, value] : s.params.values()) {
    const bool known = std::any_of(info.params.begin(), info.params.end(), [&](const auto& p) { return p.first == key; });
    if (!known) throw ConfigError("config field '" + key + "': not a parameter of kind '" + s.kind + "'");
  }
}

const KindInfo& kind_info(const std::string& kind) {
  for (const auto& k : scenario_kinds())
    if (k.kind == kind) return k;
  std::string known;
  for (const auto& k : scenario_kinds()) known += (known.empty() ? "" : ", ") + k.kind;
  throw ConfigError("config field 'kind': unknown kind '" + kind + "' (known: " + known + ")");
}

int trials_of(const Config& p, long fallback) { return static_cast<int>(p.get_int_in("trials", fallback, 1, 100000)); }

// --- per-kind plans --------------------------------------------------------

Plan plan_tensor(const Config& p, bool per_leg) {
  const int n = static_cast<int>(p.get_int_in("n", 2, 1, kMaxLegs));
  const int d = static_cast<int>(p.get_int_in("d", 2, 1, 6));
  const long bound = p.get_int_in("bound", 3, 1, 1000);
  const int limit = static_cast<int>(p.get_int_in("resample", 20, 1, 1000));
  Plan plan{trials_of(p, 30), {}};
  plan.run = [=](std::uint64_t seed, int) {
    std::string note;
    const HamiltonianFamily fam = resampled(seed, limit, note, [&](Rng& rng) {
      const LegFamily lf =
          per_leg ? sample_leg_family(rng, n + 1, n, d, bound) : sample_word_family(rng, n + 1, n, d, bound);
      return hamiltonians(lf);
    });
    CheckRecord r = from_report("commute", per_leg ? anchor::per_leg : anchor::commute, check_pairwise_commute(fam.h));
    r.note = note;
    return std::vector<CheckRecord>{r};
  };
  return plan;
}

Plan plan_identity_suite(const Config& p) {
  const int n = static_cast<int>(p.get_int_in("n", 2, 2, kMaxLegs));
  const int d = static_cast<int>(p.get_int_in("d", 2, 1, 6));
  const long bound = p.get_int_in("bound", 3, 1, 1000);
  const int limit = static_cast<int>(p.get_int_in("resample", 20, 1, 1000));
  Plan plan{trials_of(p, 10), {}};
  plan.run = [=](std::uint64_t seed, int) {
    std::string note;
    const auto rows = iota_rows(1, n);
    // Draw until [f_1..f_n] (= Delta_0) is invertible.
    const auto drawn = resampled(seed, limit, note, [&](Rng& rng) {
      LegFamily fam = sample_word_family(rng, n + 1, n, d, bound);
      LegFamily fs = fam.select_rows(rows);
      CheckReport last_leg_report = check_identity_2a(fs);
      return std::make_tuple(std::move(fam), std::move(fs), std::move(last_leg_report));
    });
    const auto& [fam, fs, last_leg_report] = drawn;
    std::vector<CheckRecord> out;
    out.push_back(from_report("last-leg identity", anchor::last_leg, last_leg_report));
    out.back().note = note;
    const int last_a = n == 2 ? 1 : n - 2;
    for (int a = 1; a <= last_a; ++a)
      out.push_back(from_report("vanishing identity, a=" + std::to_string(a), anchor::vanishing, check_identity_2b(fs, a)));
    out.push_back(from_report("main identity", anchor::main_id, check_main_id(fam)));
    out.push_back(from_report("laplace expansion", anchor::laplace, check_laplace_expansion(fs)));
    return out;
  };
  return plan;
}

Plan plan_poisson_classical(const Config& p) {
  const int n = static_cast<int>(p.get_int_in("n", 2, 1, 4));
  const int degree = static_cast<int>(p.get_int_in("degree", 2, 1, 4));
  const long bound = p.get_int_in("bound", 3, 1, 1000);
  const int limit = static_cast<int>(p.get_int_in("resample", 20, 1, 1000));
  Plan plan{trials_of(p, 20), {}};
  plan.run = [=](std::uint64_t seed, int) {
    std::string note;
    const ClassicalFamily cl = resampled(seed, limit, note, [&](Rng& rng) {
      std::vector<RatFunc> fs;
      for (int a = 0; a <= n; ++a) fs.emplace_back(rng.nonzero_poly(2, degree, bound));
      return classical_hamiltonians(fs);
    });
    CheckRecord r = from_report("poisson commute", anchor::poisson, check_poisson_commute(cl.h));
    r.note = note;
    return std::vector<CheckRecord>{r};
  };
  return plan;
}

Plan plan_grassmann(const Config& p) {
  const int arity = static_cast<int>(p.get_int_in("arity", 2, 2, 4));
  const int dim = static_cast<int>(p.get_int_in("dim", 6, 1, 8));
  if (dim < arity) throw ConfigError("config field 'dim': must be >= arity");
  const long bound = p.get_int_in("bound", 6, 1, 1000);
  Plan plan{trials_of(p, 100), {}};
  plan.run = [=](std::uint64_t seed, int) {
    Rng rng(seed);
    std::vector<std::vector<Rat>> cov, vs;
    for (int i = 0; i < arity; ++i) cov.push_back(random_vector(rng, dim, bound));
    for (int i = 0; i < arity + 2; ++i) vs.push_back(random_vector(rng, dim, bound));
    return std::vector<CheckRecord>{from_report("grassmann arity " + std::to_string(arity), anchor::grassmann,
                                                check_grassmann(WedgeForm::from_covectors(cov), vs))};
  };
  return plan;
}

Plan plan_hyperplane(const Config& p) {
  const int g = static_cast<int>(p.get_int_in("g", 2, 1, 6));
  const long bound = p.get_int_in("bound", 6, 1, 1000);
  const int limit = static_cast<int>(p.get_int_in("resample", 20, 1, 1000));
  Plan plan{trials_of(p, 20), {}};
  plan.run = [=](std::uint64_t seed, int) {
    std::string note;
    const auto drawn = resampled(seed, limit, note, [&](Rng& rng) {
      std::vector<std::vector<Rat>> pts;
      for (int j = 0; j < g; ++j) pts.push_back(random_vector(rng, g, bound));
      auto hs = hyperplane_coefficients(pts);
      return std::make_pair(std::move(pts), std::move(hs));
    });
    CheckRecord r = from_report("incidence", anchor::hyperplane, check_hyperplane_incidence(drawn.first, drawn.second));
    r.note = note;
    return std::vector<CheckRecord>{r};
  };
  return plan;
}

Plan plan_cone(const Config& p) {
  const int degree = static_cast<int>(p.get_int_in("degree", 2, 0, 4));
  const long bound = p.get_int_in("bound", 4, 1, 1000);
  Plan plan{trials_of(p, 20), {}};
  plan.run = [=](std::uint64_t seed, int) {
    Rng rng(seed);
    auto diff = [&](long lo, long hi) { return ConeDifferential{rng.ratfunc(1, degree, bound), static_cast<int>(rng.uniform(lo, hi))}; };
    auto alpha = [&] {
      RatFunc a;
      do a = rng.ratfunc(1, degree, bound);
      while (a.is_zero());
      return ConeDifferential{a, 1};
    };
    const ConeDifferential a = diff(-1, 3), b = diff(-1, 3), c = diff(-1, 3);
    const ConeDifferential al1 = alpha();
    ConeDifferential al2 = alpha();
    while (al2.f == al1.f) al2 = alpha();

    const ConeDifferential ab1 = cone_bracket(a, b, al1), ab2 = cone_bracket(a, b, al2);
    const ConeDifferential ba = cone_bracket(b, a, al1);
    const RatFunc jac = cone_bracket(a, cone_bracket(b, c, al1), al1).f + cone_bracket(b, cone_bracket(c, a, al1), al1).f +
                        cone_bracket(c, cone_bracket(a, b, al1), al1).f;
    return std::vector<CheckRecord>{
        boolean("alpha independence", anchor::cone_alpha, cone_equal(ab1, ab2), (ab1.f - ab2.f).str(kZ)),
        boolean("antisymmetry", anchor::cone_antisym, cone_equal(ab1, {-ba.f, ba.weight}), (ab1.f + ba.f).str(kZ)),
        boolean("jacobi", anchor::cone_jacobi, jac.is_zero(), jac.str(kZ))};
  };
  return plan;
}

Plan plan_dual(const Config& p) {
  const int n = static_cast<int>(p.get_int_in("n", 2, 1, 4));
  const int degree = static_cast<int>(p.get_int_in("degree", 2, 1, 4));
  const long bound = p.get_int_in("bound", 3, 1, 1000);
  const int families = static_cast<int>(p.get_int_in("families", 2, 0, 100000));
  const int limit = static_cast<int>(p.get_int_in("resample", 20, 1, 1000));
  Plan plan{trials_of(p, 50), {}};
  plan.run = [=](std::uint64_t seed, int trial) {
    Rng rng(seed);
    const std::size_t nv = 2 * static_cast<std::size_t>(n);
    auto elem = [&](int deg) { return PoissonElem(n, rng.poly(nv, deg, bound)); };
    const DualNum a{elem(degree), elem(degree)}, b{elem(degree), elem(degree)}, c{elem(degree), elem(degree)};
    const auto names = symplectic_names(n);
    std::vector<CheckRecord> out;

    const DualNum left = dual_mul(dual_mul(a, b), c), right = dual_mul(a, dual_mul(b, c));
    out.push_back(boolean("associativity", anchor::dual_assoc, dual_equal(left, right),
                          "body " + (left.body.value - right.body.value).str(names) + "; soul " +
                              (left.soul.value - right.soul.value).str(names)));

    const DualNum la{a.body}, lb{b.body};
    const RatFunc diff = dual_commutator(la, lb).soul.value - RatFunc(2) * poisson_bracket(a.body, b.body).value;
    out.push_back(boolean("soul factor", anchor::dual_factor, diff.is_zero(), diff.str(names)));

    if (trial < families) {
      std::string note;
      const CheckReport rep = resampled(seed, limit, note, [&](Rng& r) {
        std::vector<RatFunc> fs;
        for (int i = 0; i <= n; ++i) fs.emplace_back(r.nonzero_poly(2, degree, bound));
        return dual_commuting_family(fs);
      });
      out.push_back(from_report("dual family", anchor::dual_family, rep));
      out.back().note = note;
    }
    return out;
  };
  return plan;
}

struct WeylParams {
  std::size_t N;
  std::string T;
  std::vector<Rat> points;
  long bound;
};

WeylParams weyl_params(const Config& p) {
  WeylParams w;
  w.N = static_cast<std::size_t>(p.get_int_in("N", 2, 1, 4));
  w.T = p.get_string("T", "d1");
  w.bound = p.get_int_in("bound", 5, 1, 1000);
  if (p.has("points")) {
    w.points = p.get_rat_list("points");
    if (w.points.size() != w.N) throw ConfigError("config field 'points': need exactly N = " + std::to_string(w.N) + " values");
    for (std::size_t a = 0; a < w.N; ++a)
      for (std::size_t b = a + 1; b < w.N; ++b)
        if (w.points[a] == w.points[b]) throw ConfigError("config field 'points': values must be distinct");
  }
  if (2 * w.bound + 1 < static_cast<long>(w.N)) throw ConfigError("config field 'bound': too small for N distinct points");
  try {
    parse_operator_spec(substitute_c(w.T, 1));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("config field 'T': " + std::string(e.what()));
  }
  return w;
}

OpFamilySpec weyl_spec(const WeylParams& w, Rng& rng) {
  OpFamilySpec spec;
  spec.N = w.N;
  spec.points = w.points.empty() ? distinct_points(rng, w.N, w.bound) : w.points;
  spec.T = parse_operator_spec(substitute_c(w.T, rng.nonzero(-w.bound, w.bound)));
  return spec;
}

std::string spec_note(const OpFamilySpec& spec) {
  std::string pts;
  for (const auto& p : spec.points) pts += (pts.empty() ? "" : ", ") + p.str();
  return "points [" + pts + "], T: " + spec.T.str();
}

Plan plan_weyl_rational(const Config& p) {
  const WeylParams w = weyl_params(p);
  Plan plan{trials_of(p, 10), {}};
  plan.run = [=](std::uint64_t seed, int) {
    Rng rng(seed);
    const OpFamilySpec spec = weyl_spec(w, rng);
    const auto hs = rational_hamiltonians(spec);
    std::vector<CheckRecord> out{from_report("operator commute", anchor::weyl_commute, check_operators_commute(hs)),
                                 from_report("symbol vs classical", anchor::weyl_symbol,
                                             check_symbol_matches_classical(hs, spec))};
    out.front().note = spec_note(spec);
    return out;
  };
  return plan;
}

Plan plan_weyl_basis(const Config& p) {
  const WeylParams w = weyl_params(p);
  Plan plan{trials_of(p, 10), {}};
  plan.run = [=](std::uint64_t seed, int) {
    Rng rng(seed);
    const OpFamilySpec spec = weyl_spec(w, rng);
    const auto closed = rational_hamiltonians(spec);
    const auto normalized = hamiltonians_from_basis(pole_basis(spec.points, true), spec.T);
    const auto raw = hamiltonians_from_basis(pole_basis(spec.points, false), spec.T);
    const auto cs = pole_basis_scales(spec.points);
    CheckReport norm_rep("normalized pole basis"), raw_rep("pole basis, c_k scaling");
    for (std::size_t k = 0; k < spec.N; ++k) {
      const std::string tag = "H" + std::to_string(k + 1);
      const RatDiffOp d1 = normalized[k] - closed[k];
      norm_rep.record(d1.is_zero(), tag, d1.str());
      const RatDiffOp d2 = raw[k] - RatFunc(cs[k]) * closed[k];
      raw_rep.record(d2.is_zero(), tag, d2.str());
    }
    std::vector<CheckRecord> out{from_report("basis = closed form", anchor::weyl_basis, norm_rep),
                                 from_report("raw basis = c_k closed form", anchor::weyl_basis, raw_rep)};
    out.front().note = spec_note(spec);
    return out;
  };
  return plan;
}

Plan plan_hbar(const Config& p) {
  const int M = static_cast<int>(p.get_int_in("M", 5, 1, 8));
  const std::string ftext = p.get_string("f", "z");
  RatFunc f;
  try {
    f = RatFunc::parse(ftext, 1, kZ);
  } catch (const std::exception& e) {
    throw ConfigError("config field 'f': " + std::string(e.what()));
  }
  if (f.is_zero()) throw ConfigError("config field 'f': localizing element must be nonzero");
  const int pairs = static_cast<int>(p.get_int_in("pairs", 2, 0, 1000));
  Plan plan{trials_of(p, 20), {}};
  plan.run = [=](std::uint64_t seed, int trial) {
    Rng rng(seed);
    const HElem fh = HElem::function(f, M);
    std::vector<CheckRecord> out;
    out.push_back(from_report("localization axioms", anchor::loc_axioms, check_localization_axioms(fh, M, rng, 1)));
    if (trial == 0) out.push_back(from_report("X D identity", anchor::loc_xd, check_xd_identity(M)));
    if (pairs > 0) {
      const HElem g = random_helem(rng, M, 1, 1, 2);
      out.push_back(from_report("lift independence", anchor::loc_lift, check_lift_independence(fh, g, rng, 1)));
      out.push_back(from_report("degeneration", anchor::degeneration, check_degeneration(rng, M, pairs)));
    }
    return out;
  };
  return plan;
}

Plan make_plan(const Scenario& s) {
  const KindInfo& info = kind_info(s.kind);
  require_keys(s, info);
  const Config& p = s.params;
  if (s.kind == "skew-matrix") return plan_tensor(p, false);
  if (s.kind == "corollary-legs") return plan_tensor(p, true);
  if (s.kind == "identity-suite") return plan_identity_suite(p);
  if (s.kind == "poisson-classical") return plan_poisson_classical(p);
  if (s.kind == "grassmann") return plan_grassmann(p);
  if (s.kind == "hyperplane") return plan_hyperplane(p);
  if (s.kind == "cone-p1") return plan_cone(p);
  if (s.kind == "dual-number") return plan_dual(p);
  if (s.kind == "weyl-rational") return plan_weyl_rational(p);
  if (s.kind == "weyl-basis") return plan_weyl_basis(p);
  if (s.kind == "hbar-localization") return plan_hbar(p);
  throw ConfigError("config field 'kind': no runner for '" + s.kind + "'");
}

std::vector<CheckRecord> run_trial(const Plan& plan, std::uint64_t seed, int trial) {
  const std::string prefix = "trial " + std::to_string(trial) + ": ";
  std::vector<CheckRecord> out;
  try {
    out = plan.run(derive_seed(seed, static_cast<std::uint64_t>(trial)), trial);
  } catch (const ResampleExhausted& e) {
    out = {CheckRecord{"draw", "", Status::skipped, e.what(), {}}};
  } catch (const std::exception& e) {
    out = {CheckRecord{"error", "", Status::fail, e.what(), {}}};
  }
  for (auto& r : out) r.name = prefix + r.name;
  return out;
}

}  // namespace

const std::vector<KindInfo>& scenario_kinds() {
  static const std::vector<KindInfo> kinds = {
      {"skew-matrix", "H_i = Delta_0^-1 Delta_i commute in M_d(Q)^(x)n (word families, per-leg representations)",
       {{"n", "2"}, {"d", "2"}, {"bound", "3"}, {"resample", "20"}, {"trials", "30"}}},
      {"corollary-legs", "H_i commute for arbitrary per-leg tables a[i][j]",
       {{"n", "2"}, {"d", "2"}, {"bound", "3"}, {"resample", "20"}, {"trials", "30"}}},
      {"identity-suite", "last-leg and vanishing identities (all admissible a), main identity and Laplace expansion",
       {{"n", "2"}, {"d", "2"}, {"bound", "3"}, {"resample", "20"}, {"trials", "10"}}},
      {"poisson-classical", "determinant Hamiltonians Poisson-commute on the symplectic plane",
       {{"n", "2"}, {"degree", "2"}, {"bound", "3"}, {"resample", "20"}, {"trials", "20"}}},
      {"grassmann", "quadratic Grassmann identities for decomposable forms",
       {{"arity", "2"}, {"dim", "6"}, {"bound", "6"}, {"trials", "100"}}},
      {"hyperplane", "hyperplane through g points: incidence identity",
       {{"g", "2"}, {"bound", "6"}, {"resample", "20"}, {"trials", "20"}}},
      {"cone-p1", "bracket on rational differentials of P^1: alpha-independence, antisymmetry, Jacobi",
       {{"degree", "2"}, {"bound", "4"}, {"trials", "20"}}},
      {"dual-number", "eps-deformed product: associativity, soul factor, commuting family",
       {{"n", "2"}, {"degree", "2"}, {"bound", "3"}, {"families", "2"}, {"resample", "20"}, {"trials", "50"}}},
      {"weyl-rational", "closed-form rational Hamiltonians commute; symbols match the classical family",
       {{"N", "2"}, {"T", "d1"}, {"points", ""}, {"bound", "5"}, {"trials", "10"}}},
      {"weyl-basis", "cofactor construction on the pole basis reproduces the closed form",
       {{"N", "2"}, {"T", "d1"}, {"points", ""}, {"bound", "5"}, {"trials", "10"}}},
      {"hbar-localization", "truncated hbar-adic localization at f: axioms, X D identity, lifts, degeneration",
       {{"M", "5"}, {"f", "z"}, {"pairs", "2"}, {"trials", "20"}}},
  };
  return kinds;
}

Scenario Scenario::from_config(const Config& cfg) {
  Scenario s;
  s.kind = cfg.get_string("kind");
  kind_info(s.kind);
  s.seed = cfg.get_u64("seed");
  s.params = cfg;
  s.params.erase("kind");
  s.params.erase("seed");
  return s;
}

Scenario Scenario::make(std::string kind, std::uint64_t seed, std::vector<std::pair<std::string, std::string>> params) {
  Scenario s;
  s.kind = std::move(kind);
  s.seed = seed;
  for (auto& [k, v] : params) s.params.set(k, std::move(v));
  return s;
}

Report run_scenario(const Scenario& s, const RunOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const Plan plan = make_plan(s);

  Report rep;
  rep.kind = s.kind;
  rep.seed = s.seed;
  rep.version = COMMFAM_VERSION;
  for (const auto& [key, def] : kind_info(s.kind).params)
    if (!def.empty()) rep.params[key] = def;
  for (const auto& [key, value] : s.params.values()) rep.params[key] = value;
  rep.params["trials"] = std::to_string(plan.trials);

  std::vector<std::vector<CheckRecord>> results(static_cast<std::size_t>(plan.trials));
  const int jobs = std::max(1, std::min(opt.jobs, plan.trials));
  if (jobs == 1) {
    for (int t = 0; t < plan.trials; ++t) results[t] = run_trial(plan, s.seed, t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (int t = next++; t < plan.trials; t = next++) results[t] = run_trial(plan, s.seed, t);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& rs : results)
    for (auto& r : rs) rep.checks.push_back(std::move(r));
  rep.duration_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------

const std::vector<AcceptanceCriterion>& acceptance_suite() {
  static const std::vector<AcceptanceCriterion> suite = [] {
    using P = std::vector<std::pair<std::string, std::string>>;
    auto entry = [](const std::string& kind, std::uint64_t seed, P params, double limit = 0) {
      return AcceptanceEntry{Scenario::make(kind, seed, std::move(params)), limit};
    };
    std::vector<AcceptanceCriterion> s;

    AcceptanceCriterion c1{1, "tensor Hamiltonians commute (n=2,3,4 d=2; n=2,3 d=3; 30 seeds)", {}, 120};
    AcceptanceCriterion c3{3, "per-leg table families commute, same regime as 1", {}, 0};
    for (auto [n, d] : {std::pair{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}}) {
      const P p = {{"n", std::to_string(n)}, {"d", std::to_string(d)}, {"trials", "30"}};
      c1.entries.push_back(entry("skew-matrix", 1000 + 10 * n + d, p));
      c3.entries.push_back(entry("corollary-legs", 3000 + 10 * n + d, p));
    }
    AcceptanceCriterion c2{2, "last-leg and vanishing identities, main identity, Laplace (n=2,3,4, d=2, 10 seeds)", {}, 0};
    for (int n : {2, 3, 4})
      c2.entries.push_back(entry("identity-suite", 2000 + n, {{"n", std::to_string(n)}, {"d", "2"}, {"trials", "10"}}));
    AcceptanceCriterion c4{4, "classical determinant Hamiltonians Poisson-commute (n=2,3, degree 2, 20 seeds)", {}, 60};
    for (int n : {2, 3})
      c4.entries.push_back(entry("poisson-classical", 4000 + n, {{"n", std::to_string(n)}, {"degree", "2"}, {"trials", "20"}}));
    AcceptanceCriterion c5{5, "Grassmann identities, arities 2-4, dim 6, 100 tuples each", {}, 0};
    for (int k : {2, 3, 4})
      c5.entries.push_back(entry("grassmann", 5000 + k, {{"arity", std::to_string(k)}, {"dim", "6"}, {"trials", "100"}}));
    AcceptanceCriterion c6{6, "hyperplane incidence, g=1..4, 20 seeds", {}, 0};
    for (int g : {1, 2, 3, 4})
      c6.entries.push_back(entry("hyperplane", 6000 + g, {{"g", std::to_string(g)}, {"trials", "20"}}));
    AcceptanceCriterion c7{7, "dual numbers: associativity (50 triples), soul factor, commuting families n=2,3", {}, 0};
    c7.entries.push_back(entry("dual-number", 7002, {{"n", "2"}, {"trials", "50"}, {"families", "5"}}));
    c7.entries.push_back(entry("dual-number", 7003, {{"n", "3"}, {"trials", "50"}, {"families", "2"}}));
    AcceptanceCriterion c8{8, "rational Hamiltonians commute, symbols match (N=2,3; T=d, d^2, z*d+c; 10 seeds)", {}, 0};
    int tag = 0;
    for (int N : {2, 3})
      for (const char* T : {"d1", "d2", "z*d + c"})
        c8.entries.push_back(entry("weyl-rational", 8000 + 10 * N + tag++, {{"N", std::to_string(N)}, {"T", T}, {"trials", "10"}},
                                   N == 3 && std::string(T) == "d2" ? 300 : 0));
    AcceptanceCriterion c9{9, "pole-basis cofactor construction = closed form (N=2,3)", {}, 0};
    tag = 0;
    for (int N : {2, 3})
      for (const char* T : {"d1", "d2"})
        c9.entries.push_back(entry("weyl-basis", 9000 + 10 * N + tag++, {{"N", std::to_string(N)}, {"T", T}, {"trials", "10"}}));
    AcceptanceCriterion c10{10, "hbar-localization: inverse, associativity, X D identity (M=3,4,5; f=z, z^2+1; 20 triples)", {}, 0};
    for (int M : {3, 4, 5})
      for (const char* f : {"z", "z^2 + 1"})
        c10.entries.push_back(entry("hbar-localization", 10000 + 10 * M + (f[1] == 0 ? 0 : 1), {{"M", std::to_string(M)}, {"f", f}, {"trials", "20"}}));
    AcceptanceCriterion c11{11, "cone bracket: alpha-independence, antisymmetry, Jacobi (20 pairs)", {}, 0};
    c11.entries.push_back(entry("cone-p1", 11000, {{"trials", "20"}}));

    for (auto* c : {&c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8, &c9, &c10, &c11}) s.push_back(std::move(*c));
    return s;
  }();
  return suite;
}

CriterionResult run_criterion(const AcceptanceCriterion& c, const RunOptions& opt, std::ostream* log) {
  CriterionResult res{c.id, c.title, true, 0, 0, {}};
  std::size_t resampled_draws = 0;
  for (const auto& e : c.entries) {
    const auto t0 = std::chrono::steady_clock::now();
    const Report rep = run_scenario(e.scenario, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.seconds += secs;
    res.checks += rep.checks.size();
    std::string params;
    for (const auto& [k, v] : rep.params) params += " " + k + "=" + v;
    for (const auto& r : rep.checks) {
      if (!r.note.empty() && r.note.rfind("resampled", 0) == 0) {
        ++resampled_draws;
        if (log) *log << "  [criterion " << c.id << "] " << e.scenario.kind << params << " " << r.name << ": " << r.note << "\n";
      }
      if (r.status != Status::pass && res.passed) {
        res.passed = false;
        res.detail = e.scenario.kind + params + ", " + r.name + " [" + to_string(r.status) + "]: " + r.witness;
      }
    }
    if (e.limit_s > 0 && secs > e.limit_s && res.passed) {
      res.passed = false;
      std::ostringstream os;
      os << e.scenario.kind << params << " took " << std::fixed << std::setprecision(1) << secs << " s (limit "
         << e.limit_s << " s)";
      res.detail = os.str();
    }
  }
  if (c.total_limit_s > 0 && res.seconds > c.total_limit_s && res.passed) {
    res.passed = false;
    std::ostringstream os;
    os << "took " << std::fixed << std::setprecision(1) << res.seconds << " s (limit " << c.total_limit_s << " s)";
    res.detail = os.str();
  }
  if (res.passed) {
    std::ostringstream os;
    os << res.checks << " checks";
    if (resampled_draws > 0) os << ", " << resampled_draws << " trial(s) resampled degenerate draws";
    res.detail = os.str();
  }
  return res;
}

std::vector<CriterionResult> verify_all(const RunOptions& opt, std::ostream& out) {
  std::vector<CriterionResult> results;
  for (const auto& c : acceptance_suite()) {
    results.push_back(run_criterion(c, opt, &out));
    const auto& r = results.back();
    out << (r.passed ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << r.id << "  " << r.title << "  ("
        << std::fixed << std::setprecision(1) << r.seconds << " s; " << r.detail << ")" << std::endl;
  }
  return results;
}

}  // namespace commfam::cli
