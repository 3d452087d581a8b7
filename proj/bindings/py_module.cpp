#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bbs/carrier.hpp"
#include "bbs/config.hpp"
#include "bbs/continuous_exclusion.hpp"
#include "bbs/decoupled.hpp"
#include "bbs/excursions.hpp"
#include "bbs/experiments.hpp"
#include "bbs/invariants.hpp"
#include "bbs/random_models.hpp"

namespace py = pybind11;
using namespace bbs;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multicolor box-ball system laboratory (C++ core)";

  py::class_<BallConfig>(m, "BallConfig")
      .def(py::init<int, std::vector<Color>>(), py::arg("kappa"),
           py::arg("cells") = std::vector<Color>{})
      .def_property_readonly("kappa", &BallConfig::kappa)
      .def_property_readonly("cells", &BallConfig::cells)
      .def_property_readonly("support_end", &BallConfig::support_end)
      .def("at", &BallConfig::at, py::arg("site"))
      .def("ball_count", &BallConfig::ball_count)
      .def("color_counts", &BallConfig::color_counts)
      .def("__eq__", [](const BallConfig& a, const BallConfig& b) { return a == b; })
      .def("__repr__",
           [](const BallConfig& c) {
             return "BallConfig(kappa=" + std::to_string(c.kappa()) + ", cells=[" + to_text(c) +
                    "])";
           });

  py::class_<Partition>(m, "Partition")
      .def_property_readonly("rows", &Partition::rows)
      .def("conjugate", &Partition::conjugate)
      .def("total", &Partition::total)
      .def("__repr__", [](const Partition& p) {
        std::string s = "Partition([";
        for (std::size_t i = 0; i < p.rows().size(); ++i)
          s += (i ? "," : "") + std::to_string(p.rows()[i]);
        return s + "])";
      });

  m.def("apply_k", &apply_K, py::arg("config"), py::arg("color"));
  m.def("evolve_step", &evolve_step, py::arg("config"));
  m.def("cyclic_step", &cyclic_step, py::arg("config"));
  m.def("standardize", &standardize, py::arg("config"));
  m.def("soliton_decomposition_reached", &soliton_decomposition_reached, py::arg("config"));
  m.def("to_text", &to_text, py::arg("config"));
  m.def("config_from_text", &config_from_text, py::arg("kappa"), py::arg("line"));

  m.def("energy", &energy, py::arg("config"), py::arg("k"));
  m.def("row_length", &row_length, py::arg("config"), py::arg("k"));
  m.def("column_length", &column_length, py::arg("config"), py::arg("j"));
  m.def("lambda1_queue", &lambda1_queue, py::arg("config"));
  m.def("young_diagram", &young_diagram, py::arg("config"));
  m.def("check_capacity_coupling", &check_capacity_coupling, py::arg("config"),
        py::arg("capacity"));
  m.def("carrier_heights", &carrier_height_path, py::arg("config"),
        py::arg("capacity") = kUnboundedCapacity,
        "Held-ball counts along a carrier sweep (index = time)");

  m.def("num_ascents", &num_ascents, py::arg("sites"), py::arg("config"));
  m.def("penalized_length", &penalized_length, py::arg("sites"), py::arg("config"));
  m.def("gk_rows_bruteforce", &gk_rows_bruteforce, py::arg("config"), py::arg("k"));
  m.def("gk_cols", &gk_cols, py::arg("config"), py::arg("k"));

  py::class_<ColorDist>(m, "ColorDist")
      .def(py::init<std::vector<double>>(), py::arg("probs"))
      .def_property_readonly("kappa", &ColorDist::kappa)
      .def_property_readonly("probs", &ColorDist::probs)
      .def("p_star", &ColorDist::p_star);

  m.def("unstable_colors",
        [](const ColorDist& p) { return unstable_colors(p).alphas; }, py::arg("p"));
  m.def(
      "ell_plus",
      [](Color ell, const ColorDist& p) { return ell_plus(ell, unstable_colors(p)); },
      py::arg("ell"), py::arg("p"));
  m.def(
      "g_functional",
      [](const std::vector<std::int64_t>& stable_mults, Color next_color, Color ell,
         const ColorDist& p) {
        return g_functional(stable_mults, next_color, ell, unstable_colors(p));
      },
      py::arg("stable_mults"), py::arg("next_color"), py::arg("ell"), py::arg("p"));
  m.def(
      "additive_path",
      [](const std::vector<Color>& stream, const ColorDist& p, Color ell) {
        return additive_path(stream, p, ell).values;
      },
      py::arg("stream"), py::arg("p"), py::arg("ell"));
  m.def(
      "decoupled_heights",
      [](const std::vector<Color>& stream, const ColorDist& p, int kappa) {
        return run_decoupled(stream, unstable_colors(p), kappa).heights();
      },
      py::arg("stream"), py::arg("p"), py::arg("kappa"));
  m.def(
      "stationary_pi_subcritical",
      [](const ColorDist& p) {
        const ProductGeometric pi = stationary_pi_subcritical(p);
        return py::make_tuple(pi.colors(), pi.ratios());
      },
      py::arg("p"), "Returns (colors, geometric ratios)");
  m.def(
      "stationary_pi_decoupled",
      [](const ColorDist& p) {
        const ProductGeometric pi = stationary_pi_decoupled(p);
        return py::make_tuple(pi.colors(), pi.ratios());
      },
      py::arg("p"));
  m.def(
      "estimate_gamma",
      [](const ColorDist& p, Color ell, std::int64_t steps, std::int64_t batches,
         std::uint64_t seed) {
        const GammaEstimate est = estimate_gamma(p, ell, steps, batches, seed);
        py::dict d;
        d["gamma2"] = est.gamma2;
        d["stderr"] = est.std_error;
        d["mean_increment"] = est.mean_increment;
        d["steps"] = est.steps;
        d["batches"] = est.batches;
        return d;
      },
      py::arg("p"), py::arg("ell"), py::arg("steps"), py::arg("batches") = 0,
      py::arg("seed") = 1);

  m.def(
      "decompose_heights",
      [](const std::vector<std::int64_t>& heights, std::int64_t n) {
        const ExcursionSummary ex = decompose_heights(heights, n);
        py::dict d;
        d["completed"] = ex.completed;
        d["heights"] = ex.heights;
        d["meander"] = ex.meander;
        d["return_times"] = ex.return_times;
        return d;
      },
      py::arg("heights"), py::arg("n"));
  m.def("check_soliton_bounds", &check_soliton_bounds, py::arg("config"), py::arg("n"));
  m.def("kappa1_height_survival", &kappa1_height_survival, py::arg("p"), py::arg("x"));

  m.def(
      "cx_run",
      [](int k, std::int64_t n, std::uint64_t seed) {
        const CxRunResult r = run_cx(k, n, seed);
        return py::make_tuple(r.counter, r.state.points);
      },
      py::arg("k"), py::arg("n"), py::arg("seed"));
  m.def("order_stat_cdf", &order_stat_cdf, py::arg("k"), py::arg("j"), py::arg("x"));

  m.def("gen_uniforms", &gen_uniforms, py::arg("n"), py::arg("seed"), py::arg("stream") = 0);
  m.def("gen_permutation", &gen_permutation, py::arg("n"), py::arg("seed"),
        py::arg("stream") = 0);
  m.def("gen_iid", &gen_iid, py::arg("n"), py::arg("p"), py::arg("seed"), py::arg("stream") = 0);

  m.def(
      "phase_classify",
      [](const ColorDist& p) {
        const PhaseLabel label = phase_classify(p);
        return py::make_tuple(label.to_string(), label.ties);
      },
      py::arg("p"));
  m.def(
      "mc_permutation_json",
      [](const std::vector<std::int64_t>& n_list, std::int64_t trials, int k_max,
         std::uint64_t seed, std::uint64_t stream_offset, int workers, bool verify) {
        return mc_permutation(n_list, trials, k_max, seed, stream_offset, workers, verify)
            .to_json();
      },
      py::arg("n_list"), py::arg("trials"), py::arg("k_max"), py::arg("seed"),
      py::arg("stream_offset") = 0, py::arg("workers") = 0, py::arg("verify") = false);
  m.def(
      "mc_independence_json",
      [](const std::vector<std::int64_t>& n_list, const ColorDist& p, std::int64_t trials,
         int j_max, std::uint64_t seed, std::uint64_t stream_offset, int workers, bool verify) {
        return mc_independence(n_list, p, trials, j_max, seed, stream_offset, workers, verify)
            .to_json();
      },
      py::arg("n_list"), py::arg("p"), py::arg("trials"), py::arg("j_max"), py::arg("seed"),
      py::arg("stream_offset") = 0, py::arg("workers") = 0, py::arg("verify") = false);
  m.def(
      "critical_profile_json",
      [](const ColorDist& p, std::int64_t n, std::int64_t trials, std::uint64_t seed,
         int workers) { return critical_profile(p, n, trials, seed, workers).to_json(); },
      py::arg("p"), py::arg("n"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 0);
  m.def(
      "clt_supercritical_json",
      [](const ColorDist& p, std::int64_t n, std::int64_t trials, std::uint64_t seed,
         int workers) { return clt_supercritical(p, n, trials, seed, workers).to_json(); },
      py::arg("p"), py::arg("n"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 0);
  m.def("spot_verify_config", &spot_verify_config, py::arg("config"));
}
