// bbslab: multicolor box-ball system laboratory.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bbs/carrier.hpp"
#include "bbs/config.hpp"
#include "bbs/continuous_exclusion.hpp"
#include "bbs/decoupled.hpp"
#include "bbs/excursions.hpp"
#include "bbs/experiments.hpp"
#include "bbs/invariants.hpp"
#include "bbs/random_models.hpp"
#include "bbs/stats.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr const char* kSchema = "bbs-lab/1";

std::vector<double> parse_probs(const std::string& csv) {
  std::vector<double> p;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) p.push_back(std::stod(tok));
  return p;
}

std::vector<std::int64_t> parse_sizes(const std::string& csv) {
  std::vector<std::int64_t> ns;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) ns.push_back(std::stoll(tok));
  return ns;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

bbs::BallConfig load_config(const std::string& in_path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!in_path.empty() && in_path != "-") {
    file.open(in_path);
    if (!file) throw std::runtime_error("cannot open input file: " + in_path);
    in = &file;
  }
  auto [kappa, configs] = bbs::read_configs(*in);
  if (configs.empty()) throw std::runtime_error("no configuration found in input");
  return configs.front();
}

json excursion_summary_json(const bbs::ExcursionSummary& ex) {
  return json{{"completed", ex.completed},
              {"heights", ex.heights},
              {"meander", ex.meander},
              {"return_times", ex.return_times}};
}

int run(int argc, char** argv) {
  CLI::App app{"bbslab: simulation laboratory for the multicolor box-ball system"};
  app.require_subcommand(1);

  std::string in_path, out_path, format = "json", p_csv, n_csv;
  std::uint64_t seed = 1, stream_offset = 0;
  std::int64_t trials = 200, steps = 6, n_single = 1000, capacity = 0;
  std::int64_t burn_in = 1000, pairs = 10000, t_max = 40, x_max = 10;
  int kappa = 1, k_max = 2, cx_k = 2, workers = 0;
  bool verify = false;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "Output path (default: stdout)");
    cmd->add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* evolve = app.add_subcommand("evolve", "Evolve a configuration and print each state");
  evolve->add_option("--in", in_path, "Configuration file (kappa=<int> header; '-' = stdin)");
  evolve->add_option("--steps", steps, "Number of time steps");
  add_io(evolve);

  auto* diagram = app.add_subcommand(
      "diagram", "Invariant Young diagram of a configuration (csv: k,E_k pairs)");
  diagram->add_option("--in", in_path, "Configuration file ('-' = stdin)");
  add_io(diagram);

  auto* trace = app.add_subcommand(
      "carrier-trace", "Carrier sweep records 't m1 ... mkappa expelled', one per step");
  trace->add_option("--in", in_path, "Configuration file ('-' = stdin)");
  trace->add_option("--capacity", capacity, "Carrier capacity (0 = unbounded)");
  trace->add_option("--out", out_path, "Output path (default: stdout)");

  std::string emit_configs;
  auto* check = app.add_subcommand(
      "invariants-check",
      "Verify energy invariance, the queue formula and excursion bounds on sampled configurations");
  check->add_option("--kappa", kappa, "Number of positive colors");
  check->add_option("--n", n_csv, "Configuration length");
  check->add_option("--p", p_csv, "Ball density p0,p1,... (independence sampling)");
  check->add_option("--trials", trials, "Number of sampled configurations");
  check->add_option("--seed", seed, "Seed");
  check->add_option("--stream-offset", stream_offset, "First trial stream index");
  check->add_option("--emit-configs", emit_configs,
                    "Also write the sampled configurations to this file (text format)");
  check->add_option("--out", out_path, "Output path (default: stdout)");

  auto* mcp = app.add_subcommand(
      "mc-permutation", "Monte Carlo soliton statistics of uniform permutations "
                        "(csv: model,n,k,stat,mean,stderr,median,q25,q75,count)");
  mcp->add_option("--n", n_csv, "Comma list of sizes (default dyadic ladder)");
  mcp->add_option("--trials", trials, "Trials per size");
  mcp->add_option("--k-max", k_max, "Deepest row/column index");
  mcp->add_option("--seed", seed, "Seed");
  mcp->add_option("--stream-offset", stream_offset, "First trial stream index");
  mcp->add_option("--workers", workers, "Worker threads (0 = hardware)");
  mcp->add_flag("--verify", verify, "Spot-check invariants on sampled configurations");
  add_io(mcp);

  auto* mci = app.add_subcommand(
      "mc-independence", "Monte Carlo soliton lengths of the independence model "
                         "(csv: model,n,k,stat,mean,stderr,median,q25,q75,count)");
  mci->add_option("--p", p_csv, "Ball density p0,p1,...")->required();
  mci->add_option("--n", n_csv, "Comma list of sizes (default dyadic ladder)");
  mci->add_option("--trials", trials, "Trials per size");
  mci->add_option("--j-max", k_max, "Deepest column index");
  mci->add_option("--seed", seed, "Seed");
  mci->add_option("--stream-offset", stream_offset, "First trial stream index");
  mci->add_option("--workers", workers, "Worker threads (0 = hardware)");
  mci->add_flag("--verify", verify, "Spot-check invariants on sampled configurations");
  add_io(mci);

  auto* crit = app.add_subcommand("critical-profile",
                                  "Scaled top soliton length at a critical density "
                                  "(csv: trial,scaled_lambda1)");
  crit->add_option("--p", p_csv, "Critical ball density")->required();
  crit->add_option("--n", n_single, "System size");
  crit->add_option("--trials", trials, "Trials");
  crit->add_option("--seed", seed, "Seed");
  crit->add_option("--workers", workers, "Worker threads (0 = hardware)");
  add_io(crit);

  auto* clt = app.add_subcommand("clt-supercritical",
                                 "Normality diagnostics of the top soliton length");
  clt->add_option("--p", p_csv, "Supercritical ball density")->required();
  clt->add_option("--n", n_single, "System size");
  clt->add_option("--trials", trials, "Trials");
  clt->add_option("--seed", seed, "Seed");
  clt->add_option("--workers", workers, "Worker threads (0 = hardware)");
  add_io(clt);

  auto* exc = app.add_subcommand(
      "excursions", "Excursion decomposition of carrier sweeps over i.i.d. input "
                    "(csv: trial,index,length,height)");
  exc->add_option("--p", p_csv, "Ball density")->required();
  exc->add_option("--n", n_single, "Horizon per trial");
  exc->add_option("--trials", trials, "Trials");
  exc->add_option("--seed", seed, "Seed");
  exc->add_option("--stream-offset", stream_offset, "First trial stream index");
  exc->add_option("--x-max", x_max, "Largest height for the tail report (json)");
  add_io(exc);

  auto* cx = app.add_subcommand("circular-exclusion",
                                "Stationarity and coupling diagnostics of the k-point process "
                                "(csv: subsampled sorted states)");
  cx->add_option("--k", cx_k, "Number of points");
  cx->add_option("--n", n_single, "Subsamples for the stationarity test");
  cx->add_option("--burn-in", burn_in, "Burn-in steps");
  cx->add_option("--t-max", t_max, "Coupling horizon");
  cx->add_option("--pairs", pairs, "Coupled chain pairs");
  cx->add_option("--seed", seed, "Seed");
  add_io(cx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (evolve->parsed()) {
    bbs::BallConfig config = load_config(in_path);
    std::ostringstream os;
    std::vector<bbs::BallConfig> states{config};
    for (std::int64_t t = 0; t < steps; ++t) states.push_back(bbs::evolve_step(states.back()));
    if (format == "json") {
      json j{{"schema", kSchema}, {"kappa", config.kappa()}, {"steps", steps}};
      json rows = json::array();
      for (const auto& s : states) rows.push_back(bbs::to_text(s));
      j["states"] = rows;
      emit(out_path, j.dump(2));
    } else {
      bbs::write_configs(os, config.kappa(), states);
      emit(out_path, os.str());
    }
    return 0;
  }

  if (diagram->parsed()) {
    bbs::BallConfig config = load_config(in_path);
    const bbs::Partition dia = bbs::young_diagram(config);
    if (format == "csv") {
      std::ostringstream os;
      os << "k,E_k\n";
      std::int64_t ek = 0;
      for (std::size_t k = 1; k <= dia.size(); ++k) {
        ek += dia.row(static_cast<std::int64_t>(k));
        os << k << ',' << ek << '\n';
      }
      emit(out_path, os.str());
    } else {
      json j{{"schema", kSchema},
             {"kappa", config.kappa()},
             {"ball_count", config.ball_count()},
             {"rows", dia.rows()},
             {"columns", dia.conjugate()},
             {"lambda1", bbs::lambda1_queue(config)}};
      emit(out_path, j.dump(2));
    }
    return 0;
  }

  if (trace->parsed()) {
    bbs::BallConfig config = load_config(in_path);
    const bbs::CarrierTrace tr =
        bbs::run_carrier(config, capacity == 0 ? bbs::kUnboundedCapacity : capacity);
    emit(out_path, bbs::trace_to_lines(tr));
    return 0;
  }

  if (check->parsed()) {
    std::optional<bbs::ColorDist> p;
    if (!p_csv.empty()) p.emplace(parse_probs(p_csv));
    const std::int64_t len = n_csv.empty() ? 200 : parse_sizes(n_csv).front();
    std::int64_t failed = 0;
    std::vector<bbs::BallConfig> sampled;
    for (std::int64_t t = 0; t < trials; ++t) {
      const std::uint64_t stream = stream_offset + static_cast<std::uint64_t>(t);
      bbs::BallConfig x = p ? bbs::gen_iid(len, *p, seed, stream)
                            : [&] {
                                bbs::SplitRng rng(seed, stream);
                                std::vector<bbs::Color> cells(static_cast<std::size_t>(len));
                                for (auto& c : cells)
                                  c = static_cast<bbs::Color>(rng.next_below(
                                      static_cast<std::uint64_t>(kappa) + 1));
                                return bbs::BallConfig(kappa, std::move(cells));
                              }();
      failed += !bbs::spot_verify_config(x);
      if (!emit_configs.empty()) sampled.push_back(std::move(x));
    }
    if (!emit_configs.empty()) {
      std::ofstream cf(emit_configs);
      if (!cf) throw std::runtime_error("cannot open output file: " + emit_configs);
      bbs::write_configs(cf, p ? p->kappa() : kappa, sampled);
    }
    json j{{"schema", kSchema}, {"checked", trials}, {"failed", failed}, {"seed", seed}};
    emit(out_path, j.dump(2));
    return failed == 0 ? 0 : 2;
  }

  const std::vector<std::int64_t> ladder =
      n_csv.empty() ? std::vector<std::int64_t>{1000, 4000, 16000, 64000} : parse_sizes(n_csv);

  if (mcp->parsed() || mci->parsed()) {
    bbs::ScalingReport rep;
    if (mcp->parsed()) {
      rep = bbs::mc_permutation(ladder, trials, k_max, seed, stream_offset, workers, verify);
    } else {
      rep = bbs::mc_independence(ladder, bbs::ColorDist(parse_probs(p_csv)), trials, k_max, seed,
                                 stream_offset, workers, verify);
    }
    emit(out_path, format == "csv" ? rep.to_csv() : rep.to_json());
    if (verify && rep.verify_failed > 0) {
      std::cerr << "verification failed on " << rep.verify_failed << " spot checks\n";
      return 2;
    }
    return 0;
  }

  if (crit->parsed()) {
    const bbs::CriticalProfileReport rep =
        bbs::critical_profile(bbs::ColorDist(parse_probs(p_csv)), n_single, trials, seed, workers);
    if (format == "csv") {
      std::ostringstream os;
      os << "trial,scaled_lambda1\n";
      for (std::size_t i = 0; i < rep.scaled_lambda1.size(); ++i)
        os << i << ',' << rep.scaled_lambda1[i] << '\n';
      emit(out_path, os.str());
    } else {
      emit(out_path, rep.to_json());
    }
    return 0;
  }

  if (clt->parsed()) {
    const bbs::NormalityReport rep =
        bbs::clt_supercritical(bbs::ColorDist(parse_probs(p_csv)), n_single, trials, seed, workers);
    emit(out_path, rep.to_json());
    return 0;
  }

  if (exc->parsed()) {
    const bbs::ColorDist p(parse_probs(p_csv));
    std::ostringstream csv;
    csv << "trial,index,length,height\n";
    json summaries = json::array();
    std::vector<std::int64_t> pooled_heights;
    for (std::int64_t t = 0; t < trials; ++t) {
      bbs::SplitRng rng(seed, stream_offset + static_cast<std::uint64_t>(t));
      const auto xs = bbs::gen_iid_stream(n_single, p, rng);
      bbs::Carrier car = bbs::Carrier::unbounded(p.kappa());
      std::vector<std::int64_t> heights{0};
      heights.reserve(static_cast<std::size_t>(n_single) + 1);
      for (bbs::Color y : xs) {
        car.step(y);
        heights.push_back(car.held());
      }
      const bbs::ExcursionSummary ex = bbs::decompose_heights(heights, n_single);
      std::int64_t prev = 0;
      for (std::size_t i = 0; i < ex.heights.size(); ++i) {
        csv << t << ',' << (i + 1) << ',' << (ex.return_times[i] - prev) << ','
            << ex.heights[i] << '\n';
        prev = ex.return_times[i];
      }
      json s = excursion_summary_json(ex);
      s["trial"] = t;
      summaries.push_back(std::move(s));
      pooled_heights.insert(pooled_heights.end(), ex.heights.begin(), ex.heights.end());
    }
    if (format == "csv") {
      emit(out_path, csv.str());
    } else {
      json j{{"schema", kSchema}, {"p", p.probs()},      {"n", n_single},
             {"trials", trials},  {"seed", seed},        {"trial_summaries", summaries}};
      if (bbs::phase_classify(p).phase == bbs::Phase::Subcritical && !pooled_heights.empty()) {
        const bbs::ExcursionTailFit fit =
            bbs::excursion_tail_fit(p, std::max<std::int64_t>(
                                           static_cast<std::int64_t>(pooled_heights.size()), 100),
                                    x_max, seed ^ 0x7a11ull);
        j["tail_fit"] = json{{"survival", fit.survival},
                             {"lower_bound", fit.lower_bound},
                             {"fitted_rate", fit.fitted_rate},
                             {"fit_r2", fit.fit_r2},
                             {"theta_lower", fit.theta_lower},
                             {"monotone_ok", fit.monotone_ok},
                             {"lower_bound_ok", fit.lower_bound_ok}};
      }
      emit(out_path, j.dump(2));
    }
    return 0;
  }

  if (cx->parsed()) {
    if (format == "csv") {
      std::ostringstream os;
      os << "sample";
      for (int j = 1; j <= cx_k; ++j) os << ",x" << j;
      os << '\n';
      bbs::PointState state = bbs::PointState::zeros(cx_k);
      bbs::SplitRng rng(seed, 0);
      for (std::int64_t t = 0; t < burn_in; ++t) bbs::cx_step(state, rng.next_unit());
      for (std::int64_t s = 0; s < n_single; ++s) {
        for (int t = 0; t < 10 * cx_k; ++t) bbs::cx_step(state, rng.next_unit());
        os << s;
        for (double x : state.points) os << ',' << x;
        os << '\n';
      }
      emit(out_path, os.str());
    } else {
      const bbs::CxStationarityReport rep =
          bbs::cx_stationarity_test(cx_k, burn_in, n_single, seed);
      const auto curve = bbs::cx_meeting_curve(cx_k, t_max, pairs, seed ^ 0xc0ull);
      const bbs::CxRunResult run = bbs::run_cx(cx_k, 100000, seed ^ 0xc1ull);
      json j{{"schema", kSchema},
             {"k", cx_k},
             {"burn_in", burn_in},
             {"samples", n_single},
             {"stride", rep.stride},
             {"ks_stats", rep.ks_stats},
             {"meeting_curve", curve},
             {"counter_rate", static_cast<double>(run.counter) / 100000.0},
             {"seed", seed}};
      emit(out_path, j.dump(2));
    }
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
