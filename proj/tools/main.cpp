#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tmtrace/ball.hpp"
#include "tmtrace/cantor.hpp"
#include "tmtrace/dynamics.hpp"
#include "tmtrace/germ.hpp"
#include "tmtrace/rootfind.hpp"

using nlohmann::json;
using namespace tmtrace;

namespace {

constexpr int kSchemaVersion = 1;

// exit-code contract: 0 pass, 1 failed check, 2 invalid input, 3 undecidable
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitUndecidable = 3;

struct Options {
  double lambda = 1.0;
  int precision = BallReal::kDefaultPrec;
  int order = 64;
  int K_sim = 5;
  int depth = 3;
  int grid = 256;
  std::string format = "json";
  std::string output_path;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output_path, std::ios::binary);
  if (!out) throw CLI::ValidationError("output", "cannot open " + opt.output_path);
  out << text;
}

json ball_json(const BallReal& b, int digits = 40) {
  return json{{"mid", b.mid_string(digits)}, {"rad", b.rad_string()}};
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::refuted: return "refuted";
    default: return "undecidable";
  }
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::verified: return kExitPass;
    case Verdict::refuted: return kExitFail;
    default: return kExitUndecidable;
  }
}

int cmd_trace(const Options& opt, int n, const std::vector<std::string>& xs) {
  std::ostringstream csv;
  json rows = json::array();
  csv << "n,x,value_mid,value_rad\n";
  BallReal l = BallReal::from_double(opt.lambda, opt.precision);
  for (const auto& xs_i : xs) {
    BallReal x = BallReal::from_string(xs_i, opt.precision);
    BallReal v = trace_eval(n, l, x);
    csv << n << ',' << xs_i << ',' << v.mid_string(40) << ',' << v.rad_string()
        << '\n';
    rows.push_back({{"n", n}, {"x", xs_i}, {"value", ball_json(v)}});
  }
  if (opt.format == "csv") {
    emit(opt, csv.str());
  } else {
    json doc{{"schema_version", kSchemaVersion}, {"command", "trace"},
             {"lambda", opt.lambda}, {"precision", opt.precision}, {"rows", rows}};
    emit(opt, doc.dump(2) + "\n");
  }
  return kExitPass;
}

int cmd_germ(const Options& opt) {
  InitialGermResult res =
      initial_germ(opt.lambda, opt.precision, opt.order, 4096);
  json doc{{"schema_version", kSchemaVersion},
           {"command", "germ"},
           {"lambda", opt.lambda},
           {"verdict", verdict_name(res.verdict)},
           {"rho", ball_json(res.rho)},
           {"tau", ball_json(res.tau)},
           {"factor_crosscheck", res.factor_crosscheck},
           {"base", ball_json(res.cert.base)},
           {"factor", ball_json(res.cert.rho)},
           {"delta", res.cert.delta},
           {"beta", res.cert.beta},
           {"measured", res.cert.measured},
           {"order", res.cert.order},
           {"precision", res.cert.precision}};
  emit(opt, doc.dump(2) + "\n");
  return verdict_exit(res.verdict);
}

int cmd_converge(const Options& opt, int m, int k_lo, int k_hi) {
  if (k_lo < 2 * m + 1 || k_hi < k_lo)
    throw CLI::ValidationError("k", "requires 2m+1 <= k_lo <= k_hi");
  ConstantsTable table = constants_table(std::max(6, m), opt.precision);
  RenormPair pair = trace_renorm_pair(opt.lambda, opt.precision);
  ConvergenceReport rep =
      convergence_report(pair, m, k_lo, k_hi, opt.grid, table);

  std::ostringstream csv;
  csv << "k,sup_delta,bound,pass\n";
  char buf[64];
  for (const auto& r : rep.rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%d", r.k, r.sup, r.bound,
                  r.pointwise_ok ? 1 : 0);
    csv << buf << '\n';
  }
  emit(opt, csv.str());
  return rep.all_pass() ? kExitPass : kExitFail;
}

int cmd_cantor(const Options& opt) {
  CantorTree tree = build_tree(opt.lambda, opt.K_sim, opt.depth, opt.precision);
  std::string tree_csv = serialize_tree(tree);
  json report;
  if (opt.depth >= 1 && tree.nodes.size() > 1) {
    ConstantsTable table = constants_table(6, opt.precision);
    DimensionReport rep = ratio_report(tree, &table);
    report = json{{"K_sim", rep.K_used},           {"depth", rep.depth},
                  {"min_ratio", rep.min_ratio},    {"max_ratio", rep.max_ratio},
                  {"moran_bound", rep.moran_bound},{"ksim_bound", rep.ksim_bound},
                  {"paper_K", rep.paper_K},        {"paper_bound", rep.paper_bound}};
  }
  json doc{{"schema_version", kSchemaVersion}, {"command", "cantor"},
           {"lambda", opt.lambda},             {"complete", tree.complete},
           {"nodes", tree.nodes.size()},       {"report", report}};
  if (opt.output_path.empty()) {
    std::cout << tree_csv << doc.dump(2) << "\n";
  } else {
    Options tree_out = opt;
    emit(tree_out, tree_csv);
    std::cout << doc.dump(2) << "\n";
  }
  return tree.complete ? kExitPass : kExitFail;
}

int cmd_constants(const Options& opt) {
  ConstantsTable t = constants_table(6, opt.precision);
  std::ostringstream csv;
  csv << "name,value_mid,value_rad,check\n";
  char buf[96];
  auto row = [&](const std::string& name, const BallReal& v,
                 const std::string& check = "") {
    csv << name << ',' << v.mid_string(40) << ',' << v.rad_string() << ','
        << check << '\n';
  };
  std::snprintf(buf, sizeof(buf), "delta0,%.17g,0,\n", t.delta0);
  csv << buf;
  std::snprintf(buf, sizeof(buf), "delta1,%.17g,0,\n", t.delta1);
  csv << buf;
  std::snprintf(buf, sizeof(buf), "delta2,%.17g,0,\n", t.delta2);
  csv << buf;
  row("delta3", t.delta3);
  std::snprintf(buf, sizeof(buf), "n_alpha,%d,0,%s\n", t.n_alpha,
                t.n_alpha_ok ? "pass" : "fail");
  csv << buf;
  row("alpha", t.alpha);
  row("beta_local", t.beta_local);
  for (size_t m = 0; m < t.ctilde.size(); ++m)
    row("ctilde_" + std::to_string(m), t.ctilde[m]);
  for (size_t m = 0; m < t.c.size(); ++m)
    row("c_" + std::to_string(m), t.c[m]);
  std::snprintf(buf, sizeof(buf), "K,%ld,0,\n", t.K);
  csv << buf;
  std::snprintf(buf, sizeof(buf), "residual_tail,%.17g,0,%s\n", t.residual_tail,
                t.residual_tail < t.delta2 ? "pass" : "fail");
  csv << buf;
  std::snprintf(buf, sizeof(buf), "residual_c6,%.17g,0,%s\n", t.residual_c6,
                t.residual_c6 <= 1.0 ? "pass" : "fail");
  csv << buf;
  emit(opt, csv.str());
  return kExitPass;
}

int cmd_sigma(const Options& opt, int n_max, double lo, double hi) {
  BallReal blo = BallReal::from_double(lo, opt.precision);
  BallReal bhi = BallReal::from_double(hi, opt.precision);
  std::vector<SigmaZero> zeros =
      sigma_sample(n_max, opt.lambda, blo, bhi, opt.precision);
  std::ostringstream csv;
  csv << "n,zero_mid,zero_rad,status\n";
  for (const auto& z : zeros) {
    const char* st = z.root.status == RootStatus::found ? "found" : "undecidable";
    csv << z.n << ',' << z.root.zero.mid_string(40) << ','
        << z.root.zero.rad_string() << ',' << st << '\n';
  }
  emit(opt, csv.str());
  return kExitPass;
}

int cmd_ratio_check(const Options& opt) {
  KeySpacingReport rep =
      key_spacing_check(opt.lambda, opt.K_sim, opt.precision, opt.order);
  json doc{{"schema_version", kSchemaVersion},
           {"command", "ratio-check"},
           {"lambda", opt.lambda},
           {"K_sim", opt.K_sim},
           {"ok", rep.ok},
           {"note", rep.note},
           {"theta_plus", ball_json(rep.theta_plus)},
           {"theta_sub", ball_json(rep.theta_sub)},
           {"right_ratio", rep.right_ratio},
           {"left_ratio", rep.left_ratio},
           {"threshold", rep.threshold},
           {"right_pass", rep.right_pass},
           {"left_pass", rep.left_pass},
           {"handoff_verdict", verdict_name(rep.handoff.verdict)},
           {"handoff_measured", rep.handoff.measured}};
  emit(opt, doc.dump(2) + "\n");
  if (rep.handoff.verdict == Verdict::undecidable) return kExitUndecidable;
  return rep.ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigorous numerics for the Thue-Morse trace-polynomial dynamic"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("TMTRACE_PRECISION"))
    opt.precision = std::atoi(env);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lambda", opt.lambda, "coupling constant");
    sub->add_option("--precision", opt.precision, "working precision in bits")
        ->check(CLI::Range(64, 4096));
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", opt.output_path, "output file (default stdout)");
  };

  int n = 1, m = 0, k_lo = 5, k_hi = 20, n_max = 4;
  double lo = 0.0, hi = 2.0;
  std::vector<std::string> xs;

  CLI::App* trace = app.add_subcommand("trace", "evaluate h_n at points");
  add_common(trace);
  trace->add_option("--n", n, "trace index")->required()->check(CLI::PositiveNumber);
  trace->add_option("--x", xs, "evaluation points")->required();

  CLI::App* germ = app.add_subcommand("germ", "initial-germ certificate");
  add_common(germ);
  germ->add_option("--order", opt.order, "series truncation order");

  CLI::App* converge = app.add_subcommand("converge", "convergence plot data");
  add_common(converge);
  converge->add_option("--m", m, "window exponent");
  converge->add_option("--k-lo", k_lo, "first iterate");
  converge->add_option("--k-hi", k_hi, "last iterate");
  converge->add_option("--grid", opt.grid, "grid points")->check(CLI::PositiveNumber);

  CLI::App* cantor = app.add_subcommand("cantor", "nested-interval tree");
  add_common(cantor);
  cantor->add_option("--ksim", opt.K_sim, "desk-scale depth constant")
      ->check(CLI::Range(5, 12));
  cantor->add_option("--depth", opt.depth, "tree depth")->check(CLI::Range(0, 8));

  CLI::App* constants = app.add_subcommand("constants", "constants ladder and K");
  add_common(constants);

  CLI::App* sigma = app.add_subcommand("sigma", "certified trace zeros");
  add_common(sigma);
  sigma->add_option("--n-max", n_max, "largest trace index")->check(CLI::Range(1, 24));
  sigma->add_option("--lo", lo, "interval left end");
  sigma->add_option("--hi", hi, "interval right end");

  CLI::App* ratio = app.add_subcommand("ratio-check", "key spacing ratios");
  add_common(ratio);
  ratio->add_option("--ksim", opt.K_sim, "desk-scale depth constant")
      ->check(CLI::Range(5, 12));
  ratio->add_option("--order", opt.order, "series truncation order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (trace->parsed()) return cmd_trace(opt, n, xs);
    if (germ->parsed()) return cmd_germ(opt);
    if (converge->parsed()) return cmd_converge(opt, m, k_lo, k_hi);
    if (cantor->parsed()) return cmd_cantor(opt);
    if (constants->parsed()) return cmd_constants(opt);
    if (sigma->parsed()) return cmd_sigma(opt, n_max, lo, hi);
    if (ratio->parsed()) return cmd_ratio_check(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitInput;
}
