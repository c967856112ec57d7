#include "gcbound/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "gcbound/bound.hpp"
#include "gcbound/cover.hpp"
#include "gcbound/dist.hpp"
#include "gcbound/errors.hpp"
#include "gcbound/gc.hpp"
#include "gcbound/harness.hpp"
#include "gcbound/margin.hpp"
#include "gcbound/net.hpp"
#include "gcbound/settings.hpp"

namespace gcbound {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Params = std::vector<Settings::Param>;

Params train_params() {
  return {
      {"seed", 0, "master seed"},
      {"dim", 10, "input dimension"},
      {"k", 2, "classes (1 = binary with +-1 labels)"},
      {"separation", 3.0, "distance of mixture means from the origin"},
      {"variance", 1.0, "per-coordinate component variance"},
      {"hidden", json::array({64, 64}), "hidden widths, e.g. 64,64"},
      {"activation", "tanh", "hidden activation: tanh, relu, identity"},
      {"init_scale", 1.0, "weight init scale"},
      {"n_train", 512, "training points"},
      {"n_test", 2048, "test points"},
      {"learning_rate", 0.05, "SGD step size"},
      {"batch_size", 64, "minibatch size"},
      {"steps", 5000, "SGD steps"},
      {"eval_every", 250, "logging interval"},
      {"gc_mc_samples", 2048, "Monte Carlo samples for the theoretical GC"},
      {"label_mode", "original", "original or random (fig1 runs both)"},
      {"gamma", "median", "margin: a positive number or 'median'"},
  };
}

Params with(Params base, const Params& extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  return base;
}

Params params_for(const std::string& cmd) {
  if (cmd == "train") return with(train_params(), {{"checkpoints", false, "save a checkpoint at every logged step"}});
  if (cmd == "fig1") return train_params();
  if (cmd == "gc") return with(train_params(), {{"model", nullptr, "checkpoint path (default: initial model)"}});
  if (cmd == "bound") {
    return with(train_params(), {
                                    {"delta", 0.2, "confidence parameter"},
                                    {"trials", 1, "seeded repetitions (seed, seed+1, ...)"},
                                    {"variant", "indicator", "indicator or ramp"},
                                    {"rho_samples", 20000, "samples for estimating rho"},
                                    {"margin_loss", nullptr, "arithmetic mode: empirical margin loss"},
                                    {"m", nullptr, "arithmetic mode: sample size"},
                                    {"c_tilde", nullptr, "arithmetic mode: C-tilde (overrides a1/a2/rho)"},
                                    {"a1", nullptr, "arithmetic mode: GC budget"},
                                    {"a2", nullptr, "arithmetic mode: mean-norm budget"},
                                    {"rho", nullptr, "arithmetic mode: Poincare constant"},
                                });
  }
  if (cmd == "poincare") {
    return {
        {"seed", 0, "master seed"},
        {"dist", "gaussian", "gaussian, uniform, disconnected or mixture"},
        {"dim", 1, "dimension"},
        {"function", "linear", "linear, cos, tanh_net, bump or constant"},
        {"m", 100000, "samples"},
        {"rho", nullptr, "Poincare constant (default: known constant of dist)"},
        {"width", 8, "hidden width for tanh_net"},
    };
  }
  if (cmd == "cover") {
    return {
        {"seed", 0, "master seed"},
        {"points", nullptr, "CSV of points (default: Gaussian sample)"},
        {"n", 200, "sampled points"},
        {"dim", 2, "sampled dimension"},
        {"epsilon", 0.5, "cover radius"},
    };
  }
  if (cmd == "rademacher") {
    return {
        {"seed", 0, "master seed"},
        {"models", 8, "random tanh networks in the class"},
        {"m", 100, "sample size"},
        {"dim", 3, "input dimension"},
        {"width", 8, "hidden width"},
        {"draws", 1000, "Rademacher draws"},
    };
  }
  if (cmd == "dudley") {
    return {
        {"seed", 0, "unused; accepted for uniformity"},
        {"c_tilde", nullptr, "C-tilde"},
        {"alpha", nullptr, "lower limit, 0 < alpha <= C-tilde"},
        {"max_subintervals", 2000, "quadrature subinterval budget"},
    };
  }
  throw ConfigError("unknown subcommand '" + cmd + "'");
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Collects CSV artifacts; writes them to --out (with a manifest) or stdout.
class Output {
 public:
  Output(std::string dir, std::ostream& out) : dir_(std::move(dir)), out_(out) {
    if (!dir_.empty()) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) throw ConfigError("cannot create output directory '" + dir_ + "': " + ec.message());
    }
  }

  bool to_disk() const { return !dir_.empty(); }

  std::string path(const std::string& name) const { return (fs::path(dir_) / name).string(); }

  void artifact(const std::string& name, const std::string& content) {
    if (!to_disk()) {
      out_ << content;
      return;
    }
    const std::string p = path(name);
    std::ofstream f(p, std::ios::binary);
    if (!f) throw RunError("cannot write '" + p + "'");
    f << content;
    if (!f) throw RunError("write failed for '" + p + "'");
    artifacts_.push_back(p);
  }

  void record(const std::string& p) { artifacts_.push_back(p); }

  void manifest(const std::string& cmd, const Settings& s, const std::string& started) const {
    if (!to_disk()) return;
    json m;
    m["command"] = cmd;
    m["config"] = s.values();
    m["seed"] = s.values().at("seed");
    m["started_at"] = started;
    m["finished_at"] = timestamp();
    m["artifacts"] = artifacts_;
    std::ofstream f(path("manifest.json"));
    if (!f) throw RunError("cannot write manifest in '" + dir_ + "'");
    f << m.dump(2) << '\n';
  }

 private:
  std::string dir_;
  std::ostream& out_;
  std::vector<std::string> artifacts_;
};

std::optional<double> gamma_setting(const Settings& s) {
  const json& g = s.values().at("gamma");
  if (g.is_string() && g.get<std::string>() == "median") return std::nullopt;
  const double v = s.get_double("gamma");
  if (!(v > 0.0)) throw ConfigError("gamma must be positive or 'median'");
  return v;
}

TrainConfig train_config(const Settings& s) {
  TrainConfig c;
  c.dim = static_cast<int>(s.get_int("dim"));
  c.k = static_cast<int>(s.get_int("k"));
  c.separation = s.get_double("separation");
  c.variance = s.get_double("variance");
  c.hidden = s.get_int_list("hidden");
  c.activation = parse_activation(s.get_string("activation"));
  c.init_scale = s.get_double("init_scale");
  c.n_train = s.get_count("n_train");
  c.n_test = s.get_count("n_test");
  c.learning_rate = s.get_double("learning_rate");
  c.batch_size = s.get_count("batch_size");
  c.steps = s.get_count("steps");
  c.eval_every = s.get_count("eval_every");
  c.gc_mc_samples = s.get_count("gc_mc_samples");
  c.seed = static_cast<std::uint64_t>(s.get_int("seed"));
  c.label_mode = parse_label_mode(s.get_string("label_mode"));
  c.fixed_gamma = gamma_setting(s);
  c.validate();
  return c;
}

std::string csv_join(std::initializer_list<double> values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ',';
    out += format_double(v);
  }
  return out;
}

const char* const kTrainHeader =
    "step,train_acc,test_acc,excess_risk,gc_train,gc_mc,median_margin,gc_margin_norm,gc_margin_norm_lin";

int cmd_train(const Settings& s, Output& out) {
  const TrainConfig config = train_config(s);
  const bool checkpoints = s.get_bool("checkpoints");
  if (checkpoints && !out.to_disk()) throw ConfigError("checkpoints need --out");
  Model final_model = initial_model(config);
  auto observer = [&](const EpochLog& log, const Model& model) {
    if (!checkpoints) return;
    const std::string p = out.path("checkpoint_step" + std::to_string(log.step) + ".json");
    save_checkpoint(model, p);
    out.record(p);
  };
  const auto logs = train_sgd(config, final_model, observer);
  std::string csv = std::string(kTrainHeader) + '\n';
  for (const EpochLog& l : logs) {
    csv += std::to_string(l.step) + ',' +
           csv_join({l.train_acc, l.test_acc, l.excess_risk, l.gc_train, l.gc_mc, l.median_margin, l.gc_margin_norm,
                     l.gc_margin_norm_lin}) +
           '\n';
  }
  out.artifact("train.csv", csv);
  if (out.to_disk()) {
    const std::string p = out.path("model.json");
    save_checkpoint(final_model, p);
    out.record(p);
  }
  return 0;
}

int cmd_fig1(const Settings& s, Output& out) {
  TrainConfig original = train_config(s);
  original.label_mode = LabelMode::original;
  TrainConfig random = original;
  random.label_mode = LabelMode::random;
  out.artifact("fig1.csv", fig1_csv(experiment_fig1(original, random)));
  return 0;
}

int cmd_gc(const Settings& s, Output& out) {
  const TrainConfig config = train_config(s);
  const Model model = s.has("model") ? load_checkpoint(s.get_string("model")) : initial_model(config);
  if (model.input_dim() != config.dim) throw ConfigError("model input dimension does not match dim");
  const Task task = make_task(config);
  const GcEstimate emp = gc_empirical(model, task.train.x);
  const GcEstimate mc =
      gc_theoretical_mc(model, config.distribution(), config.gc_mc_samples, derive_seed(config.seed, 4));
  std::string csv = "kind,value,n,std_error\n";
  for (const GcEstimate& g : {emp, mc}) {
    csv += to_string(g.kind) + ',' + format_double(g.value) + ',' + std::to_string(g.n) + ',' +
           format_double(g.std_error) + '\n';
  }
  out.artifact("gc.csv", csv);
  return 0;
}

MarginLossVariant parse_variant(const std::string& name) {
  if (name == "indicator") return MarginLossVariant::indicator;
  if (name == "ramp") return MarginLossVariant::ramp;
  throw ConfigError("variant must be 'indicator' or 'ramp', got '" + name + "'");
}

const char* const kBoundHeader =
    "trial,k,m,gamma,delta,a1,a2,rho,c_tilde,empirical_margin_loss,complexity_term,confidence_term,total,"
    "observed_test_error,holds";

std::string bound_row(std::size_t trial, const BoundReport& r, std::optional<bool> holds) {
  std::string row = std::to_string(trial) + ',' + std::to_string(r.k) + ',' + std::to_string(r.m) + ',' +
                    csv_join({r.gamma, r.delta, r.a1, r.a2, r.rho, r.c_tilde, r.empirical_margin_loss,
                              r.complexity_term, r.confidence_term, r.total});
  row += ',' + (r.observed_test_error ? format_double(*r.observed_test_error) : std::string("nan"));
  row += ',' + std::string(holds ? (*holds ? "1" : "0") : "");
  return row + '\n';
}

int cmd_bound(const Settings& s, Output& out) {
  const double delta = s.get_double("delta");
  const MarginLossVariant variant = parse_variant(s.get_string("variant"));
  std::string csv = std::string(kBoundHeader) + '\n';
  if (s.has("margin_loss")) {
    const auto gamma = gamma_setting(s);
    if (!gamma) throw ConfigError("arithmetic mode needs a numeric gamma");
    const int k = static_cast<int>(s.get_int("k"));
    double a1 = 0.0;
    double a2 = 0.0;
    double rho = 1.0;
    if (s.has("c_tilde")) {
      a2 = s.get_double("c_tilde");
    } else {
      a1 = s.get_double("a1");
      a2 = s.get_double("a2");
      rho = s.get_double("rho");
    }
    const BoundReport r = assemble_bound(k, s.get_count("m"), *gamma, delta, rho, a1, a2,
                                         s.get_double("margin_loss"), variant);
    csv += bound_row(0, r, std::nullopt);
    out.artifact("bound.csv", csv);
    return 0;
  }
  const TrainConfig base = train_config(s);
  const std::size_t trials = s.get_count("trials");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  for (std::size_t t = 0; t < trials; ++t) {
    TrainConfig config = base;
    config.seed = base.seed + t;
    Model model = initial_model(config);
    train_sgd(config, model);
    const Task task = make_task(config);
    double gamma = 0.0;
    if (config.fixed_gamma) {
      gamma = *config.fixed_gamma;
    } else {
      gamma = median_positive_margin(compute_margins(model, task.train));
      if (!(gamma > 0.0)) throw RunError("no positive training margin; cannot pick gamma");
    }
    const BoundCheck check = bound_check(model, config.distribution(), task.train, task.test, gamma, delta,
                                         config.seed, variant, s.get_count("rho_samples"));
    csv += bound_row(t, check.report, check.holds);
  }
  out.artifact("bound.csv", csv);
  return 0;
}

DistributionSpec poincare_dist(const std::string& name, int dim) {
  if (name == "gaussian") return standard_gaussian(dim);
  if (name == "uniform") return uniform_box(Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim));
  if (name == "disconnected") {
    return disconnected_uniform(UniformBox{Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim)},
                                UniformBox{Eigen::VectorXd::Constant(dim, 2.0), Eigen::VectorXd::Constant(dim, 3.0)});
  }
  if (name == "mixture") return separated_mixture(dim, 2, 3.0);
  throw ConfigError("dist must be gaussian, uniform, disconnected or mixture, got '" + name + "'");
}

int cmd_poincare(const Settings& s, Output& out) {
  const int dim = static_cast<int>(s.get_int("dim"));
  if (dim < 1) throw ConfigError("dim must be positive");
  const std::string dist_name = s.get_string("dist");
  const std::string fn = s.get_string("function");
  const DistributionSpec spec = poincare_dist(dist_name, dim);
  const auto seed = static_cast<std::uint64_t>(s.get_int("seed"));

  std::optional<Model> net;  // keeps the network alive for as_scalar_function
  ScalarFunction u;
  if (fn == "linear") {
    u = linear_function(Eigen::VectorXd::Unit(dim, 0));
  } else if (fn == "cos") {
    u = cosine_function(dim, 0);
  } else if (fn == "constant") {
    u = constant_function(dim, 1.0);
  } else if (fn == "tanh_net") {
    const int width = static_cast<int>(s.get_int("width"));
    const std::vector<LayerSpec> specs = {{dim, width, Activation::tanh}, {width, 1, Activation::identity}};
    net = init_params(specs, derive_seed(seed, 1));
    u = as_scalar_function(*net);
  } else if (fn == "bump") {
    u = build_bump({UniformBox{Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim)},
                    UniformBox{Eigen::VectorXd::Constant(dim, 2.0), Eigen::VectorXd::Constant(dim, 3.0)}},
                   {0.0, 1.0});
  } else {
    throw ConfigError("function must be linear, cos, tanh_net, bump or constant, got '" + fn + "'");
  }
  std::optional<double> rho;
  if (s.has("rho")) rho = s.get_double("rho");
  const PoincareCheck c = poincare_check(spec, u, s.get_count("m"), derive_seed(seed, 0), rho);
  std::string csv = "dist,function,n,var_hat,grad_energy_hat,rho_used,ratio,se_var,se_energy,pass\n";
  csv += dist_name + ',' + fn + ',' + std::to_string(c.n) + ',' +
         csv_join({c.var_hat, c.grad_energy_hat, c.rho_used, c.ratio, c.se_var, c.se_energy}) + ',' +
         (c.passed ? "1" : "0") + '\n';
  out.artifact("poincare.csv", csv);
  return 0;
}

Dataset read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open points file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (lineno == 1) continue;  // header
      throw DataError("non-numeric value on line " + std::to_string(lineno) + " of '" + path + "'");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DataError("ragged row on line " + std::to_string(lineno) + " of '" + path + "'");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("no points in '" + path + "'");
  Dataset x(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) x(i, j) = rows[i][j];
  }
  return x;
}

int cmd_cover(const Settings& s, Output& out) {
  Dataset x;
  if (s.has("points")) {
    x = read_points(s.get_string("points"));
  } else {
    const int dim = static_cast<int>(s.get_int("dim"));
    if (dim < 1) throw ConfigError("dim must be positive");
    x = sample(standard_gaussian(dim), s.get_count("n"), derive_seed(static_cast<std::uint64_t>(s.get_int("seed")), 0));
  }
  const CoverResult cover = greedy_cover(x, s.get_double("epsilon"));
  std::string csv = "index";
  for (Eigen::Index j = 0; j < x.cols(); ++j) csv += ",x" + std::to_string(j);
  csv += '\n';
  for (std::size_t c = 0; c < cover.n_centers; ++c) {
    csv += std::to_string(cover.center_indices[c]);
    for (Eigen::Index j = 0; j < x.cols(); ++j) csv += ',' + format_double(cover.centers(c, j));
    csv += '\n';
  }
  out.artifact("cover.csv", csv);
  return 0;
}

int cmd_rademacher(const Settings& s, Output& out) {
  const auto seed = static_cast<std::uint64_t>(s.get_int("seed"));
  const int dim = static_cast<int>(s.get_int("dim"));
  const int width = static_cast<int>(s.get_int("width"));
  if (dim < 1 || width < 1) throw ConfigError("dim and width must be positive");
  const std::size_t n_models = s.get_count("models");
  std::vector<Model> models;
  const std::vector<LayerSpec> specs = {{dim, width, Activation::tanh}, {width, 1, Activation::identity}};
  for (std::size_t i = 0; i < n_models; ++i) models.push_back(init_params(specs, derive_seed(seed, 100 + i)));
  const std::size_t m = s.get_count("m");
  const Dataset x = sample(standard_gaussian(dim), m, derive_seed(seed, 0));
  const std::size_t draws = s.get_count("draws");
  const double est = rademacher_empirical(models, x, draws, derive_seed(seed, 1));
  std::string csv = "models,m,draws,estimate\n";
  csv += std::to_string(n_models) + ',' + std::to_string(m) + ',' + std::to_string(draws) + ',' + format_double(est) +
         '\n';
  out.artifact("rademacher.csv", csv);
  return 0;
}

int cmd_dudley(const Settings& s, Output& out, std::ostream& console) {
  const DudleyEval d =
      dudley_eval(s.get_double("c_tilde"), s.get_double("alpha"), static_cast<int>(s.get_int("max_subintervals")));
  const std::string csv = "c_tilde,alpha,exact_integral,upper_bound,quadrature\n" +
                          csv_join({d.c_tilde, d.alpha, d.exact_integral, d.upper_bound, d.quadrature}) + '\n';
  out.artifact("dudley.csv", csv);
  if (out.to_disk()) {
    console << "exact_integral " << format_double(d.exact_integral) << '\n'
            << "upper_bound " << format_double(d.upper_bound) << '\n'
            << "quadrature " << format_double(d.quadrature) << '\n';
  }
  return 0;
}

const std::vector<std::string> kCommands = {"train", "fig1", "gc", "bound", "poincare", "cover", "rademacher", "dudley"};

const char* describe_command(const std::string& cmd) {
  if (cmd == "train") return "SGD run on a Gaussian-mixture task; writes train.csv";
  if (cmd == "fig1") return "original vs random label runs; writes fig1.csv";
  if (cmd == "gc") return "empirical and Monte Carlo GC of a model; writes gc.csv";
  if (cmd == "bound") return "margin bound (arithmetic or trained experiment); writes bound.csv";
  if (cmd == "poincare") return "Poincare inequality check; writes poincare.csv";
  if (cmd == "cover") return "greedy epsilon-cover; writes cover.csv";
  if (cmd == "rademacher") return "empirical Rademacher complexity of random nets; writes rademacher.csv";
  return "entropy integral: exact, upper bound, quadrature; writes dudley.csv";
}

int dispatch(const std::string& cmd, const Settings& s, Output& out, std::ostream& console) {
  if (cmd == "train") return cmd_train(s, out);
  if (cmd == "fig1") return cmd_fig1(s, out);
  if (cmd == "gc") return cmd_gc(s, out);
  if (cmd == "bound") return cmd_bound(s, out);
  if (cmd == "poincare") return cmd_poincare(s, out);
  if (cmd == "cover") return cmd_cover(s, out);
  if (cmd == "rademacher") return cmd_rademacher(s, out);
  return cmd_dudley(s, out, console);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gcbound: geometric-complexity margin bound lab"};
  app.name("gcbound");
  app.require_subcommand(1);

  struct Sub {
    CLI::App* app = nullptr;
    std::unique_ptr<Settings> settings;
    std::map<std::string, std::string> raw;
    std::map<std::string, CLI::Option*> options;
    std::string config;
    std::string out_dir;
  };
  std::map<std::string, Sub> subs;
  for (const std::string& cmd : kCommands) {
    Sub& sub = subs[cmd];
    sub.settings = std::make_unique<Settings>(params_for(cmd));
    sub.app = app.add_subcommand(cmd, describe_command(cmd));
    sub.app->add_option("--config", sub.config, "JSON config file (flat schema)");
    sub.app->add_option("--out", sub.out_dir, "output directory (default: CSV to stdout)");
    for (const auto& p : sub.settings->params()) {
      std::string help = p.help;
      if (!p.default_value.is_null()) help += " [" + p.default_value.dump() + "]";
      sub.options[p.key] = sub.app->add_option("--" + flag_name(p.key), sub.raw[p.key], help);
    }
  }

  std::vector<std::string> argv_store = {"gcbound"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 1;
  }

  std::string cmd;
  for (const std::string& c : kCommands) {
    if (subs[c].app->parsed()) cmd = c;
  }
  Sub& sub = subs[cmd];
  try {
    const std::string started = timestamp();
    Settings& s = *sub.settings;
    if (!sub.config.empty()) s.load_file(sub.config);
    for (const auto& [key, opt] : sub.options) {
      if (opt->count() > 0) s.set_from_flag(key, sub.raw[key]);
    }
    Output output(sub.out_dir, out);
    const int code = dispatch(cmd, s, output, out);
    output.manifest(cmd, s, started);
    return code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return 1;
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << '\n';
    return 1;
  } catch (const ShapeError& e) {
    err << "shape error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return 2;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace gcbound
