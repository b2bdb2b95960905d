#include "bohrlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "bohrlab/behrend.hpp"
#include "bohrlab/bohr.hpp"
#include "bohrlab/conv.hpp"
#include "bohrlab/csv.hpp"
#include "bohrlab/error.hpp"
#include "bohrlab/extremal.hpp"
#include "bohrlab/increment_sim.hpp"
#include "bohrlab/manifest.hpp"
#include "bohrlab/periodicity.hpp"
#include "bohrlab/sampling.hpp"
#include "bohrlab/zn.hpp"

namespace bohrlab {

namespace {

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  RunManifest manifest;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  const auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// Accepts plain reals, "inf", and powers written as 2^-20.
double parse_real(const std::string& text) {
  const std::string s = trim(text);
  const auto caret = s.find('^');
  try {
    std::size_t used = 0;
    if (caret != std::string::npos) {
      const double base = std::stod(s.substr(0, caret), &used);
      if (used != caret) throw std::invalid_argument(s);
      const std::string ex = s.substr(caret + 1);
      const double e = std::stod(ex, &used);
      if (used != ex.size()) throw std::invalid_argument(s);
      return std::pow(base, e);
    }
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw Error("ParseError", "not a number: '" + text + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(s, ',')) {
    const double v = parse_real(part);
    if (v != std::floor(v) || std::fabs(v) > 9e15) throw Error("ParseError", "not an integer: '" + part + "'");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

std::string read_file(Ctx& ctx, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  ctx.manifest.inputs[path] = sha256_hex(ss.str());
  return ss.str();
}

// Inline "n:<N>;elems:..." or a path to a file holding that line.
ZnSet load_set(Ctx& ctx, const std::string& spec) {
  if (spec.rfind("n:", 0) == 0) return parse_text(spec);
  return parse_text(trim(read_file(ctx, spec)));
}

// Interval sets: "1,2,3", the text format (its elements are used), or a file.
std::vector<std::int64_t> load_interval(Ctx& ctx, const std::string& spec) {
  std::string text = spec;
  if (spec.find_first_not_of("0123456789, ") != std::string::npos && spec.rfind("n:", 0) != 0) {
    text = trim(read_file(ctx, spec));
  }
  if (text.rfind("n:", 0) == 0) {
    const auto s = parse_text(text);
    return s.elements();
  }
  return parse_ints(text);
}

// Writes to `path`, or to stdout when no path was given.
void emit(Ctx& ctx, const std::string& path, const std::string& content) {
  if (path.empty()) {
    ctx.out << content;
    return;
  }
  write_atomic(path, content);
  ctx.manifest.outputs[path] = sha256_hex(content);
}

std::string yes(bool b) { return b ? "true" : "false"; }

struct BohrArgs {
  std::int64_t n = 0;
  std::string gamma;
  double rho = 1.0;

  void add(CLI::App* app) {
    app->add_option("--n", n, "modulus")->required();
    app->add_option("--gamma", gamma, "comma-separated frequencies")->required();
    app->add_option("--rho", rho, "radius in [0,2]");
  }
  BohrSet build_set() const { return build(BohrSpec::make(Modulus(n), parse_ints(gamma), rho)); }
};

// T either from a set argument or as a Bohr set on the top Fourier
// coefficients of 1_M.
struct TArgs {
  std::string t;
  int rank = 0;
  double rho = 1.0;

  void add(CLI::App* app) {
    app->add_option("--t", t, "T as a set (inline or file)");
    app->add_option("--t-rank", rank, "build T from the top Fourier coefficients of M");
    app->add_option("--t-rho", rho, "radius of the generated T");
  }
  ZnSet resolve(Ctx& ctx, const ZnSet& m) const {
    if (!t.empty()) return load_set(ctx, t);
    if (rank > 0) return candidate_bohr_set(m, rank, rho).elements();
    throw Error("InvalidArgument", "give --t or --t-rank");
  }
};

double resolve_gamma(const std::string& g, const ZnSet& m, const ZnSet& t) {
  if (g.empty() || g == "auto") return max_smoothed(m, t);
  return parse_real(g);
}

struct SimArgs {
  double c = 1.0;
  double C = 1.0;
  double c0 = SimConfig{}.c0;
  std::string policy = "worst";
  bool old_only = false;

  void add(CLI::App* app) {
    app->add_option("--c", c, "radius constant, 0 < c <= 1");
    app->add_option("--C", C, "rank constant, C >= 1");
    app->add_option("--c0", c0, "density where the main branch hands over to the old one");
    app->add_option("--k-policy", policy, "worst | adversarial | sampled")
        ->check(CLI::IsMember({"worst", "worst_case", "adversarial", "adversarial_max_d", "sampled"}));
    app->add_flag("--old-only", old_only, "use only the old increment");
  }
  SimConfig config(std::uint64_t seed) const {
    SimConfig cfg;
    cfg.c = c;
    cfg.C = C;
    cfg.c0 = c0;
    cfg.seed = seed;
    cfg.old_only = old_only;
    if (policy == "adversarial" || policy == "adversarial_max_d") cfg.k_policy = KPolicy::adversarial_max_d;
    else if (policy == "sampled") cfg.k_policy = KPolicy::sampled;
    else cfg.k_policy = KPolicy::worst_case;
    return cfg;
  }
};

std::vector<double> resolve_alphas(const std::string& alphas, const std::string& exponents) {
  if (!alphas.empty()) {
    std::vector<double> out;
    for (const auto& a : split(alphas, ',')) out.push_back(parse_real(a));
    return out;
  }
  const auto parts = split(exponents, ':');
  if (parts.size() < 2 || parts.size() > 3) throw Error("ParseError", "exponents must be lo:hi[:step]");
  const int lo = std::stoi(parts[0]);
  const int hi = std::stoi(parts[1]);
  const int step = parts.size() == 3 ? std::stoi(parts[2]) : 1;
  return dyadic_grid(lo, hi, step);
}

unsigned default_threads() {
  if (const char* env = std::getenv("BOHRLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

nlohmann::ordered_json collect_config(const CLI::App* app) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help" || opt->get_name() == "-h,--help") continue;
    j[opt->get_name()] = opt->results();
  }
  for (const CLI::App* sub : app->get_subcommands()) j[sub->get_name()] = collect_config(sub);
  return j;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Bohr sets, exact convolution counts and density-increment experiments", "bohrlab"};
  app.failure_message(CLI::FailureMessage::help);
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string manifest_path = "runs.jsonl";
  app.add_option("--seed", seed, "seed for every random choice");
  app.add_option("--threads", threads, "worker threads (default: $BOHRLAB_THREADS or all cores)");
  app.add_option("--manifest", manifest_path, "JSON-lines run log");

  std::function<void(Ctx&)> action;

  // bohr
  auto* bohr = app.add_subcommand("bohr", "Bohr sets");
  bohr->require_subcommand(1);
  {
    auto* c = bohr->add_subcommand("build", "print B(Γ,ρ), optionally dilated");
    auto a = std::make_shared<BohrArgs>();
    auto delta = std::make_shared<std::optional<double>>();
    auto path = std::make_shared<std::string>();
    a->add(c);
    c->add_option("--delta", *delta, "dilate the radius by this factor");
    c->add_option("--out", *path, "set file");
    c->callback([&action, a, delta, path] {
      action = [a, delta, path](Ctx& ctx) {
        BohrSet b = a->build_set();
        if (*delta) b = dilate_radius(b, **delta);
        emit(ctx, *path, to_text(b.elements()) + "\n");
        ctx.out << "n=" << b.elements().n() << " rank=" << b.rank() << " radius=" << csv::num(b.radius())
                << " size=" << b.size() << "\n";
      };
    });
  }
  {
    auto* c = bohr->add_subcommand("regular", "find a regular dilate δ in [1/2,1]");
    auto a = std::make_shared<BohrArgs>();
    auto step = std::make_shared<std::optional<double>>();
    auto mode = std::make_shared<std::string>("auto");
    auto path = std::make_shared<std::string>();
    a->add(c);
    c->add_option("--step", *step, "δ resolution, at most 1/(400d)");
    c->add_option("--mode", *mode, "auto | exact | grid")->check(CLI::IsMember({"auto", "exact", "grid"}));
    c->add_option("--out", *path, "CSV delta,ratio,pass");
    c->callback([&action, a, step, mode, path] {
      action = [a, step, mode, path](Ctx& ctx) {
        const BohrSet b = a->build_set();
        const auto m = *mode == "exact" ? RegularityMode::exact_breakpoints
                       : *mode == "grid" ? RegularityMode::grid
                                         : RegularityMode::automatic;
        const RegularRadius r = find_regular_radius(b, *step, m);
        const std::string report = r.report.to_csv();
        if (path->empty()) ctx.out << report;
        else emit(ctx, *path, report);
        ctx.out << "delta=" << csv::num(r.delta) << " size=" << r.set.size() << " radius=" << csv::num(r.set.radius())
                << "\n";
      };
    });
  }
  {
    auto* c = bohr->add_subcommand("bounds", "check the three size inequalities");
    auto a = std::make_shared<BohrArgs>();
    a->add(c);
    c->callback([&action, a] {
      action = [a](Ctx& ctx) {
        const auto r = check_size_bounds(a->build_set());
        ctx.out << "lower_ok=" << yes(r.lower_ok) << " lower_slack=" << csv::num(r.lower_slack) << "\n"
                << "doubling_ok=" << yes(r.doubling_ok) << " doubling_slack=" << csv::num(r.doubling_slack) << "\n"
                << "dilation_ok=" << yes(r.dilation_ok) << " dilation_slack=" << csv::num(r.dilation_slack)
                << " worst_delta=" << csv::num(r.worst_delta) << "\n";
      };
    });
  }

  // conv
  auto* conv = app.add_subcommand("conv", "convolutions and solution counts");
  conv->require_subcommand(1);
  {
    auto* c = conv->add_subcommand("count", "count solutions of x+y+z=3w");
    auto set = std::make_shared<std::string>();
    auto interval = std::make_shared<bool>(false);
    c->add_option("--set", *set, "set (inline or file)")->required();
    c->add_flag("--interval", *interval, "count over the integers instead of Z_n");
    c->callback([&action, set, interval] {
      action = [set, interval](Ctx& ctx) {
        const SolutionCount s =
            *interval ? count_solutions_interval(load_interval(ctx, *set)) : count_solutions(load_set(ctx, *set));
        ctx.out << "total=" << s.total << " trivial=" << s.trivial << " nontrivial=" << s.nontrivial << "\n";
      };
    });
  }
  {
    auto* c = conv->add_subcommand("convolve", "1_A * 1_B");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto path = std::make_shared<std::string>();
    c->add_option("--a", *a, "A")->required();
    c->add_option("--b", *b, "B")->required();
    c->add_option("--out", *path, "CSV x,value");
    c->callback([&action, a, b, path] {
      action = [a, b, path](Ctx& ctx) {
        const auto counts = convolve_counts(load_set(ctx, *a), load_set(ctx, *b));
        std::string body = csv::row({"x", "value"});
        for (std::size_t x = 0; x < counts.size(); ++x) {
          body += csv::row({csv::num(static_cast<long long>(x)), csv::num(static_cast<long long>(counts[x]))});
        }
        emit(ctx, *path, body);
      };
    });
  }

  // period
  auto* period = app.add_subcommand("period", "random sampling and almost-periodicity checks");
  period->require_subcommand(1);
  {
    auto* c = period->add_subcommand("sample", "draw R with P(x in R) = 1_M*μ_T(x)/γ");
    auto m = std::make_shared<std::string>();
    auto t = std::make_shared<TArgs>();
    auto gamma = std::make_shared<std::string>("auto");
    auto path = std::make_shared<std::string>();
    c->add_option("--m", *m, "M")->required();
    t->add(c);
    c->add_option("--gamma", *gamma, "auto or a value >= max 1_M*μ_T");
    c->add_option("--out", *path, "set file for R");
    c->callback([&action, m, t, gamma, path] {
      action = [m, t, gamma, path](Ctx& ctx) {
        const ZnSet ms = load_set(ctx, *m);
        const ZnSet ts = t->resolve(ctx, ms);
        const double g = resolve_gamma(*gamma, ms, ts);
        const ZnSet r = sample_R(ms, ts, g, ctx.seed);
        emit(ctx, *path, to_text(r) + "\n");
        ctx.out << "gamma=" << csv::num(g) << " size=" << r.size()
                << " expected=" << csv::num(static_cast<double>(ms.size()) / g) << "\n";
      };
    });
  }
  {
    auto* c = period->add_subcommand("verify", "test T as an almost-period of 1_A*1_M*1_L");
    auto a = std::make_shared<std::string>();
    auto m = std::make_shared<std::string>();
    auto l = std::make_shared<std::string>();
    auto t = std::make_shared<TArgs>();
    auto eps = std::make_shared<double>(0.1);
    c->add_option("--a", *a, "A")->required();
    c->add_option("--m", *m, "M")->required();
    c->add_option("--l", *l, "L")->required();
    t->add(c);
    c->add_option("--eps", *eps, "ε");
    c->callback([&action, a, m, l, t, eps] {
      action = [a, m, l, t, eps](Ctx& ctx) {
        const ZnSet ms = load_set(ctx, *m);
        const auto r = check_almost_period(load_set(ctx, *a), ms, load_set(ctx, *l), t->resolve(ctx, ms), *eps);
        ctx.out << "holds=" << yes(r.holds) << " achieved=" << csv::num(r.achieved) << "\n";
      };
    });
  }
  {
    auto* c = period->add_subcommand("concentrate", "repeat the sampling step and measure both deviations");
    auto a = std::make_shared<std::string>();
    auto m = std::make_shared<std::string>();
    auto l = std::make_shared<std::string>();
    auto t = std::make_shared<TArgs>();
    auto gamma = std::make_shared<std::string>("auto");
    auto n = std::make_shared<std::int64_t>(4001);
    auto a_size = std::make_shared<std::int64_t>(200);
    auto l_size = std::make_shared<std::int64_t>(200);
    auto m_size = std::make_shared<std::int64_t>(50);
    auto trials = std::make_shared<int>(200);
    auto path = std::make_shared<std::string>();
    c->add_option("--a", *a, "A (random when omitted)");
    c->add_option("--m", *m, "M (random when omitted)");
    c->add_option("--l", *l, "L (random when omitted)");
    t->add(c);
    c->add_option("--gamma", *gamma, "auto or a value");
    c->add_option("--n", *n, "modulus for random sets");
    c->add_option("--a-size", *a_size, "|A| for random A");
    c->add_option("--l-size", *l_size, "|L| for random L");
    c->add_option("--m-size", *m_size, "|M| for random M");
    c->add_option("--trials", *trials, "number of samples");
    c->add_option("--out", *path, "CSV trial,size_dev,linf_dev,hit");
    c->callback([&action, a, m, l, t, gamma, n, a_size, l_size, m_size, trials, path] {
      action = [=](Ctx& ctx) {
        const Rng root(ctx.seed);
        const Modulus mod(*n);
        auto pick = [&](const std::string& given, std::int64_t size, std::uint64_t stream) {
          if (!given.empty()) return load_set(ctx, given);
          Rng r = root.split(1000 + stream);
          return random_subset(mod, size, r);
        };
        const ZnSet ms = pick(*m, *m_size, 0);
        const ZnSet as = pick(*a, *a_size, 1);
        const ZnSet ls = pick(*l, *l_size, 2);
        TArgs tt = *t;
        if (tt.t.empty() && tt.rank == 0) tt.rank = 2;
        const ZnSet ts = tt.resolve(ctx, ms);
        const double g = resolve_gamma(*gamma, ms, ts);
        const auto rep = verify_r_concentration(as, ms, ls, ts, g, *trials, ctx.seed, ctx.threads);
        const std::string body = rep.to_csv();
        if (path->empty()) ctx.out << body;
        else emit(ctx, *path, body);
        ctx.out << "trials=" << rep.trials << " size_hits=" << csv::num(rep.size_hits)
                << " linf_hits=" << csv::num(rep.linf_hits) << " W=" << rep.w_size << " |T|=" << ts.size()
                << " gamma=" << csv::num(g) << "\n";
      };
    });
  }
  {
    auto* c = period->add_subcommand("dichotomy", "find a dense translate or a density increment");
    auto b = std::make_shared<BohrArgs>();
    auto a = std::make_shared<std::string>();
    auto density = std::make_shared<double>(0.3);
    auto delta = std::make_shared<std::optional<double>>();
    auto inner = std::make_shared<double>(0.5);
    auto regularize = std::make_shared<bool>(false);
    b->add(c);
    c->add_option("--a", *a, "A inside B (random of --a-density when omitted)");
    c->add_option("--a-density", *density, "density of a random A in B");
    c->add_option("--delta", *delta, "B' = B_δ (default 1/(100d))");
    c->add_option("--inner", *inner, "B'' = B_{inner·δ}");
    c->add_flag("--regularize", *regularize, "replace B by its regular dilate first");
    c->callback([&action, b, a, density, delta, inner, regularize] {
      action = [=](Ctx& ctx) {
        BohrSet base = b->build_set();
        if (*regularize) base = find_regular_radius(base).set;
        const double d = std::max(1, base.rank());
        const double dl = delta->value_or(1.0 / (100.0 * d));
        ZnSet as(base.elements().modulus());
        if (!a->empty()) {
          as = load_set(ctx, *a);
        } else {
          Rng r(ctx.seed);
          const auto k = static_cast<std::int64_t>(std::llround(*density * static_cast<double>(base.size())));
          as = random_subset_of(base.elements(), std::max<std::int64_t>(1, k), r);
        }
        const double alpha = static_cast<double>(as.size()) / static_cast<double>(base.size());
        const ZnSet bp = dilate_radius(base, dl).elements();
        const ZnSet bpp = dilate_radius(base, dl * *inner).elements();
        const auto o = density_dichotomy(as, base, bp, bpp, alpha, dl);
        if (o.kind == DichotomyOutcome::Kind::witness) {
          ctx.out << "kind=witness x=" << o.x << " value=" << csv::num(o.value) << " value2=" << csv::num(o.value2);
        } else {
          ctx.out << "kind=increment which=" << o.which << " x=" << o.x << " value=" << csv::num(o.value);
        }
        ctx.out << " alpha=" << csv::num(alpha) << "\n";
      };
    });
  }

  // construct
  auto* construct = app.add_subcommand("construct", "lower-bound constructions");
  construct->require_subcommand(1);
  {
    auto* c = construct->add_subcommand("behrend", "Behrend set in {1..M}");
    auto m = std::make_shared<std::int64_t>(0);
    auto base = std::make_shared<std::string>("auto");
    auto path = std::make_shared<std::string>();
    c->add_option("--m", *m, "M")->required();
    c->add_option("--base", *base, "digit base, or auto");
    c->add_option("--out", *path, "set file (n = M+1)");
    c->callback([&action, m, base, path] {
      action = [m, base, path](Ctx& ctx) {
        std::optional<std::int64_t> d;
        if (*base != "auto") d = parse_ints(*base).at(0);
        const BehrendSet s = behrend_construct(*m, d);
        if (!path->empty()) emit(ctx, *path, to_text(ZnSet(Modulus(*m + 1), s.elements)) + "\n");
        ctx.out << s.summary() << "\n";
      };
    });
  }
  {
    auto* c = construct->add_subcommand("curve", "density of Behrend sets across M");
    auto ms = std::make_shared<std::string>("100,1000,10000,100000,1000000");
    auto path = std::make_shared<std::string>();
    c->add_option("--ms", *ms, "comma-separated M values");
    c->add_option("--out", *path, "CSV M,size,density,base,dim,shell");
    c->callback([&action, ms, path] {
      action = [ms, path](Ctx& ctx) {
        const auto list = parse_ints(*ms);
        const auto curve = behrend_density_curve(list);
        const std::string body = curve.to_csv();
        if (path->empty()) ctx.out << body;
        else emit(ctx, *path, body);
        ctx.out << "slope=" << csv::num(curve.slope) << " intercept=" << csv::num(curve.intercept)
                << " r2=" << csv::num(curve.r2) << " fitted_c=" << csv::num(curve.fitted_c) << "\n";
      };
    });
  }

  // extremal
  {
    auto* c = app.add_subcommand("extremal", "exact largest solution-free subsets of {1..N}");
    auto n = std::make_shared<std::int64_t>(0);
    auto budget = std::make_shared<double>(1e8);
    auto path = std::make_shared<std::string>();
    c->add_option("--n", *n, "largest N")->required();
    c->add_option("--budget", *budget, "search nodes per row");
    c->add_option("--out", *path, "CSV N,max_size,witness,exact");
    c->callback([&action, n, budget, path] {
      action = [n, budget, path](Ctx& ctx) {
        if (!(*budget >= 1.0)) throw Error("InvalidArgument", "budget must be >= 1");
        const auto rows = extremal_table(*n, static_cast<std::uint64_t>(std::min(*budget, 1.8e19)));
        emit(ctx, *path, extremal_csv(rows));
      };
    });
  }

  // sim
  auto* sim = app.add_subcommand("sim", "density-increment recursion");
  sim->require_subcommand(1);
  {
    auto* c = sim->add_subcommand("run", "one trajectory");
    auto s = std::make_shared<SimArgs>();
    auto alpha0 = std::make_shared<std::string>();
    auto logn = std::make_shared<std::string>("inf");
    auto path = std::make_shared<std::string>();
    s->add(c);
    c->add_option("--alpha0", *alpha0, "initial density, e.g. 2^-20")->required();
    c->add_option("--logn", *logn, "log2 N (inf runs until the density is exhausted)");
    c->add_option("--out", *path, "trace CSV");
    c->callback([&action, s, alpha0, logn, path] {
      action = [s, alpha0, logn, path](Ctx& ctx) {
        SimConfig cfg = s->config(ctx.seed);
        cfg.alpha0 = parse_real(*alpha0);
        cfg.log2_n = *logn == "inf" ? std::numeric_limits<double>::infinity() : parse_real(*logn);
        const RunResult r = run(cfg);
        if (!path->empty()) emit(ctx, *path, r.trace_csv());
        ctx.out << "verdict=" << to_string(r.verdict) << " steps=" << r.steps << " main_steps=" << r.agg.main_steps
                << " old_steps=" << r.agg.old_steps << "\n"
                << "threshold_log2N=" << csv::num(r.threshold_log2_n) << " implied_log2N=" << csv::num(r.implied_log2_n)
                << " d_final=" << csv::num(r.last_live.d) << " log2_rho_final=" << csv::num(r.last_live.log2_rho)
                << "\n"
                << "sum_inv_h_k=" << csv::num(r.agg.sum_inv_h_k) << " loglog_alpha0=" << csv::num(r.agg.loglog_alpha0)
                << " sum_inv_h_k1=" << csv::num(r.agg.sum_inv_h_k1)
                << " exp2sqrt_loglog=" << csv::num(r.agg.exp2sqrt_loglog) << " increment_ok=" << yes(r.agg.increment_ok)
                << "\n";
      };
    });
  }
  {
    auto* c = sim->add_subcommand("sweep", "threshold N across initial densities");
    auto s = std::make_shared<SimArgs>();
    auto alphas = std::make_shared<std::string>();
    auto exps = std::make_shared<std::string>("8:64:1");
    auto path = std::make_shared<std::string>();
    s->add(c);
    c->add_option("--alphas", *alphas, "comma-separated densities");
    c->add_option("--exponents", *exps, "dyadic grid lo:hi[:step] for 2^-e (default 8:64:1)");
    c->add_option("--out", *path, "CSV");
    c->callback([&action, s, alphas, exps, path] {
      action = [s, alphas, exps, path](Ctx& ctx) {
        const auto grid = resolve_alphas(*alphas, *exps);
        const Sweep sw = sweep(s->config(ctx.seed), grid, ctx.threads);
        const std::string body = sw.to_csv();
        if (path->empty()) ctx.out << body;
        else emit(ctx, *path, body);
        ctx.out << "fitted_exponent=" << csv::num(sw.fitted_exponent) << " r2=" << csv::num(sw.r2)
                << " exponent_alpha_reading=" << csv::num(sw.exponent_alpha_reading)
                << " exponent_n_reading=" << csv::num(sw.exponent_n_reading) << "\n";
      };
    });
  }
  {
    auto* c = sim->add_subcommand("compare", "main scheme against the old-only scheme");
    auto s = std::make_shared<SimArgs>();
    auto alphas = std::make_shared<std::string>();
    auto exps = std::make_shared<std::string>("8:64:1");
    auto path = std::make_shared<std::string>();
    s->add(c);
    c->add_option("--alphas", *alphas, "comma-separated densities");
    c->add_option("--exponents", *exps, "dyadic grid lo:hi[:step]");
    c->add_option("--out", *path, "CSV");
    c->callback([&action, s, alphas, exps, path] {
      action = [s, alphas, exps, path](Ctx& ctx) {
        const auto grid = resolve_alphas(*alphas, *exps);
        const auto cmp = compare_schemes(s->config(ctx.seed), grid, ctx.threads);
        const std::string body = cmp.to_csv();
        if (path->empty()) ctx.out << body;
        else emit(ctx, *path, body);
        ctx.out << "main_exponent=" << csv::num(cmp.main.fitted_exponent)
                << " old_exponent=" << csv::num(cmp.old.fitted_exponent)
                << " main_density_exponent=" << csv::num(1.0 / cmp.main.fitted_exponent)
                << " old_density_exponent=" << csv::num(1.0 / cmp.old.fitted_exponent) << "\n";
      };
    });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Ctx ctx{out, err, 1, 0, {}};
  ctx.threads = threads.value_or(default_threads());
  if (ctx.threads == 0) ctx.threads = 1;
  if (seed) {
    ctx.seed = *seed;
  } else {
    std::random_device rd;
    ctx.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "seed=" << ctx.seed << "\n";
  }
  ctx.manifest.argv = args;
  ctx.manifest.seed = ctx.seed;
  ctx.manifest.seed_given = seed.has_value();
  ctx.manifest.config_json = collect_config(&app).dump();

  int code = 0;
  try {
    action(ctx);
  } catch (const Error& e) {
    err << e.what() << "\n";
    ctx.manifest.error = e.name();
    code = 1;
  } catch (const std::exception& e) {
    err << "InternalError: " << e.what() << "\n";
    ctx.manifest.error = "InternalError";
    code = 1;
  }
  ctx.manifest.exit_code = code;
  ctx.manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!manifest_path.empty()) {
    try {
      append_manifest(manifest_path, ctx.manifest);
    } catch (const Error& e) {
      err << e.what() << "\n";
      if (code == 0) code = 1;
    }
  }
  return code;
}

}  // namespace bohrlab
