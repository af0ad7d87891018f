// maxpoly command line front end.
#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "maxpoly/bounds.hpp"
#include "maxpoly/error.hpp"
#include "maxpoly/experiments.hpp"
#include "maxpoly/io.hpp"
#include "maxpoly/leastsq.hpp"
#include "maxpoly/mockcheb.hpp"
#include "maxpoly/nodes.hpp"
#include "maxpoly/remez.hpp"

namespace {

using namespace maxpoly;

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct WeightArgs {
  std::string preset;
  std::optional<double> alpha;
  std::optional<double> beta;

  void attach(CLI::App* app) {
    app->add_option("--preset", preset, "Node density preset")
        ->check(CLI::IsMember(WeightSpec::preset_names()));
    app->add_option("--alpha", alpha, "Jacobi exponent at x = 1");
    app->add_option("--beta", beta, "Jacobi exponent at x = -1");
  }

  WeightSpec weight() const {
    if (!preset.empty()) {
      if (alpha || beta) throw InvalidArgument("give either --preset or --alpha/--beta, not both");
      return WeightSpec::preset(preset);
    }
    if (!alpha && !beta) throw InvalidArgument("a weight is required: --preset or --alpha/--beta");
    return WeightSpec::jacobi(alpha.value_or(0.0), beta.value_or(alpha.value_or(0.0)));
  }
};

struct Common {
  WeightArgs w;
  int M = 0;
  int N = 0;
  std::string out;
  std::optional<std::string> format;
  std::string variant = "second";
  int threads = 1;
};

void add_M(CLI::App* app, Common& c) { app->add_option("--M", c.M, "Number of subintervals (M+1 nodes)")->required(); }
void add_N(CLI::App* app, Common& c) { app->add_option("--N", c.N, "Polynomial degree")->required(); }
void add_out(CLI::App* app, Common& c) { app->add_option("--out", c.out, "Output file (default stdout)"); }
void add_format(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

BOptions b_options(const Common& c) {
  BOptions o;
  o.remez.variant = c.variant == "first" ? Variant::first : Variant::second;
  o.threads = c.threads;
  return o;
}

std::string json_line(const std::string& body) { return "{" + body + "}\n"; }

std::function<double(double)> named_function(const std::string& name) {
  if (name == "exp") return [](double x) { return std::exp(x); };
  if (name == "runge") return [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
  if (name == "abs") return [](double x) { return std::abs(x); };
  if (name == "sin") return [](double x) { return std::sin(10.0 * x); };
  throw InvalidArgument("unknown function: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal polynomials on sampled grids: B(M,N), bounds and least-squares stability"};
  app.require_subcommand(1);
  Common c;

  auto* nodes_cmd = app.add_subcommand("nodes", "Nodes equidistributed for a weight");
  c.w.attach(nodes_cmd);
  add_M(nodes_cmd, c);
  add_out(nodes_cmd, c);
  add_format(nodes_cmd, c);

  auto* bmn = app.add_subcommand("bmn", "B(M,N) by the exchange algorithm on every subinterval");
  c.w.attach(bmn);
  add_M(bmn, c);
  add_N(bmn, c);
  add_out(bmn, c);
  add_format(bmn, c);
  bmn->add_option("--variant", c.variant, "Exchange variant")->check(CLI::IsMember({"first", "second"}));
  bmn->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);

  double x = 0.0;
  auto* bmnx = app.add_subcommand("bmnx", "Pointwise B(M,N,x)");
  c.w.attach(bmnx);
  add_M(bmnx, c);
  add_N(bmnx, c);
  add_out(bmnx, c);
  bmnx->add_option("--x", x, "Evaluation point in [-1, 1]")->required();
  bmnx->add_option("--variant", c.variant, "Exchange variant")->check(CLI::IsMember({"first", "second"}));

  std::vector<double> points;
  auto* leb = app.add_subcommand("lebesgue", "Lebesgue constant of explicit points or of generated nodes");
  c.w.attach(leb);
  leb->add_option("--M", c.M, "Number of generated subintervals");
  leb->add_option("--points", points, "Explicit interpolation points")->delimiter(',');
  add_out(leb, c);

  auto* bnd = app.add_subcommand("bounds", "Lower bound Q(K,N), zeta bound and nu");
  c.w.attach(bnd);
  add_M(bnd, c);
  add_N(bnd, c);
  add_out(bnd, c);

  std::string side = "minus";
  auto* wit = app.add_subcommand("witness", "Polynomial attaining the lower bound construction");
  c.w.attach(wit);
  add_M(wit, c);
  add_N(wit, c);
  add_out(wit, c);
  wit->add_option("--side", side, "minus or plus")->check(CLI::IsMember({"minus", "plus"}));

  auto* mc = app.add_subcommand("mockcheb", "Interlacing mock-Chebyshev subset");
  c.w.attach(mc);
  add_M(mc, c);
  add_N(mc, c);
  add_out(mc, c);

  std::string fname = "exp";
  bool with_bracket = false;
  auto* lsq = app.add_subcommand("lsq", "Discrete least-squares fit and its uniform condition number");
  c.w.attach(lsq);
  add_M(lsq, c);
  add_N(lsq, c);
  add_out(lsq, c);
  lsq->add_option("--function", fname, "exp, runge, abs or sin")->check(CLI::IsMember({"exp", "runge", "abs", "sin"}));
  lsq->add_flag("--bracket", with_bracket, "Also compute the B(M,N) bracket");

  std::string exp_name;
  std::string config_path = MAXPOLY_DEFAULT_CONFIG;
  std::string out_dir = ".";
  bool list = false;
  auto* ex = app.add_subcommand("exp", "Run a configured experiment; writes <name>.csv and <name>.meta.json");
  ex->add_option("name", exp_name, "Experiment section name");
  ex->add_option("--config", config_path, "Experiment configuration file");
  ex->add_option("--out", out_dir, "Output directory");
  ex->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  ex->add_flag("--list", list, "List configured experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (nodes_cmd->parsed()) {
      const auto nodes = NodeSet::from_weight(c.w.weight(), c.M);
      io::write_output(c.out, c.format.value_or("csv") == "csv" ? io::nodes_csv(nodes) : io::nodes_json(nodes));
    } else if (bmn->parsed()) {
      const auto nodes = NodeSet::from_weight(c.w.weight(), c.M);
      const auto r = compute_B(nodes, c.N, b_options(c));
      io::write_output(c.out, c.format.value_or("json") == "csv" ? io::maximal_csv(r) : io::maximal_json(r));
    } else if (bmnx->parsed()) {
      const auto nodes = NodeSet::from_weight(c.w.weight(), c.M);
      const double v = compute_B_point(nodes, c.N, x, b_options(c).remez);
      io::write_output(c.out, json_line("\"x\": " + io::format_double(x) + ", \"B\": " + io::format_double(v)));
    } else if (leb->parsed()) {
      std::vector<double> Y = points;
      if (Y.empty()) {
        if (c.M < 1) throw InvalidArgument("lebesgue: give --points or a weight with --M");
        const auto nodes = NodeSet::from_weight(c.w.weight(), c.M);
        Y.assign(nodes.points().begin(), nodes.points().end());
      }
      const auto e = lebesgue_constant(Y);
      io::write_output(c.out, json_line("\"lambda\": " + io::format_double(e.value) +
                                        ", \"argmax\": " + io::format_double(e.x)));
    } else if (bnd->parsed()) {
      const auto nodes = NodeSet::from_weight(c.w.weight(), c.M);
      io::write_output(c.out, io::bounds_json(bound_report(nodes, c.N)));
    } else if (wit->parsed()) {
      const auto nodes = NodeSet::from_weight(c.w.weight(), c.M);
      io::write_output(c.out, io::witness_json(witness_polynomial(nodes, c.N, side == "plus" ? Side::plus : Side::minus)));
    } else if (mc->parsed()) {
      const auto nodes = NodeSet::from_weight(c.w.weight(), c.M);
      const auto s = mock_chebyshev_subset(nodes, c.N);
      if (!s) {
        std::cerr << "no interlacing subset: N zeta = " << io::format_double(c.N * zeta(nodes)) << " >= pi\n";
        io::write_output(c.out, "n,x,z_prev,z_next\n");
      } else {
        io::write_output(c.out, io::mockcheb_csv(*s));
      }
    } else if (lsq->parsed()) {
      const auto nodes = NodeSet::from_weight(c.w.weight(), c.M);
      const auto f = fit(nodes, c.N, named_function(fname));
      ConditionOptions opts;
      opts.with_bracket = with_bracket;
      const auto kappa = condition_number_inf(nodes, c.N, opts);
      io::write_output(c.out, io::fit_json(f, &kappa));
    } else if (ex->parsed()) {
      const auto config = experiments::Config::load(config_path);
      if (list || exp_name.empty()) {
        for (const auto& s : config.sections()) {
          if (!s.empty()) std::cout << s << "  (" << config.get_or(s, "kind", "?") << ")\n";
        }
        return exp_name.empty() && !list ? kExitInvalid : 0;
      }
      const auto r = experiments::run_experiment(config, exp_name, c.threads);
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      io::write_output((dir / (exp_name + ".csv")).string(), r.csv);
      io::write_output((dir / (exp_name + ".meta.json")).string(), r.meta_json);
    }
  } catch (const InvalidArgument& e) {
    std::cerr << io::error_json("invalid_argument", e.what()) << '\n';
    return kExitInvalid;
  } catch (const NumericalError& e) {
    std::cerr << io::error_json(e) << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << io::error_json("internal", e.what()) << '\n';
    return 1;
  }
  return 0;
}
