#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <tuple>
#include <vector>

#include "pbitsa/annealer.hpp"
#include "pbitsa/engine.hpp"
#include "pbitsa/gset.hpp"
#include "pbitsa/model.hpp"
#include "pbitsa/pbit.hpp"

namespace py = pybind11;
using namespace pbitsa;

namespace {

using EdgeTuple = std::tuple<std::uint32_t, std::uint32_t, double>;
using IntEdgeTuple = std::tuple<std::uint32_t, std::uint32_t, std::int64_t>;

SpinState to_state(const std::vector<int>& spins) {
  std::vector<Spin> out;
  out.reserve(spins.size());
  for (int s : spins) {
    if (s != 1 && s != -1) throw py::value_error("spins must be -1 or +1");
    out.push_back(static_cast<Spin>(s));
  }
  return SpinState(std::move(out));
}

std::vector<int> from_state(const SpinState& state) { return {state.spins().begin(), state.spins().end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "p-bit simulated annealing core";

  py::register_exception<gset::ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<IsingModel>(m, "IsingModel")
      .def(py::init([](std::size_t n, std::vector<double> bias, const std::vector<EdgeTuple>& couplings) {
             std::vector<Coupling> cs;
             for (const auto& [i, j, w] : couplings) cs.push_back({i, j, w});
             return IsingModel(n, std::move(bias), std::move(cs));
           }),
           py::arg("n"), py::arg("bias") = std::vector<double>{}, py::arg("couplings") = std::vector<EdgeTuple>{})
      .def_property_readonly("n", &IsingModel::size)
      .def_property_readonly("bias", [](const IsingModel& mdl) {
        return std::vector<double>(mdl.bias().begin(), mdl.bias().end());
      })
      .def_property_readonly("edges", [](const IsingModel& mdl) {
        std::vector<EdgeTuple> out;
        for (const auto& c : mdl.edges()) out.emplace_back(c.i, c.j, c.weight);
        return out;
      })
      .def("coupling", &IsingModel::coupling);

  py::class_<MaxCutGraph>(m, "MaxCutGraph")
      .def(py::init([](std::size_t n, const std::vector<IntEdgeTuple>& edges) {
             std::vector<WeightedEdge> es;
             for (const auto& [i, j, w] : edges) es.push_back({i, j, w});
             return MaxCutGraph(n, std::move(es));
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &MaxCutGraph::size)
      .def_property_readonly("total_weight", &MaxCutGraph::total_weight)
      .def_property_readonly("edges", [](const MaxCutGraph& g) {
        std::vector<IntEdgeTuple> out;
        for (const auto& e : g.edges()) out.emplace_back(e.i, e.j, e.weight);
        return out;
      });

  m.def("energy", [](const IsingModel& mdl, const std::vector<int>& spins) { return energy(mdl, to_state(spins)); });
  m.def("cut_value",
        [](const MaxCutGraph& g, const std::vector<int>& spins) { return cut_value(g, to_state(spins)); });
  m.def("maxcut_to_ising", &maxcut_to_ising);

  py::class_<VariabilityConfig>(m, "VariabilityConfig")
      .def(py::init([](double sl, double sd, double sn, int t_res) {
             VariabilityConfig c{sl, sd, sn, t_res};
             c.validate();
             return c;
           }),
           py::arg("sigma_lambda") = 0.0, py::arg("sigma_delta") = 0.0, py::arg("sigma_nu") = 0.0,
           py::arg("t_res") = 10)
      .def_readwrite("sigma_lambda", &VariabilityConfig::sigma_lambda)
      .def_readwrite("sigma_delta", &VariabilityConfig::sigma_delta)
      .def_readwrite("sigma_nu", &VariabilityConfig::sigma_nu)
      .def_readwrite("t_res", &VariabilityConfig::t_res);

  py::class_<VariabilityProfile>(m, "VariabilityProfile")
      .def_static("ideal", &VariabilityProfile::ideal, py::arg("n"), py::arg("t_res") = 10)
      .def_readwrite("lambda_", &VariabilityProfile::lambda)
      .def_readwrite("delta", &VariabilityProfile::delta)
      .def_readwrite("period", &VariabilityProfile::period);

  m.def(
      "sample_variability",
      [](const VariabilityConfig& c, std::size_t n, std::uint64_t seed) {
        return sample_variability(c, n, RandomStream(seed));
      },
      py::arg("config"), py::arg("n"), py::arg("seed"));
  m.def("pbit_update", &pbit_update, py::arg("input"), py::arg("r"), py::arg("lambda_") = 1.0,
        py::arg("delta") = 0.0);

  py::class_<AnnealSchedule>(m, "AnnealSchedule")
      .def_static("geometric", &AnnealSchedule::geometric, py::arg("i0_min"), py::arg("i0_max"), py::arg("cycles"),
                  py::arg("t_res") = 10)
      .def_readonly("i0_min", &AnnealSchedule::i0_min)
      .def_readonly("i0_max", &AnnealSchedule::i0_max)
      .def_readonly("beta", &AnnealSchedule::beta)
      .def_readonly("cycles", &AnnealSchedule::cycles)
      .def_readonly("t_res", &AnnealSchedule::t_res)
      .def("i0_sequence", &AnnealSchedule::i0_sequence);
  m.def("derive_schedule", &derive_schedule, py::arg("model"), py::arg("cycles"), py::arg("t_res") = 10);

  py::enum_<Algorithm>(m, "Algorithm")
      .value("PSA", Algorithm::kPsa)
      .value("TAPSA", Algorithm::kTapsa)
      .value("SPSA", Algorithm::kSpsa);

  py::class_<AlgorithmConfig>(m, "AlgorithmConfig")
      .def(py::init([](Algorithm kind, int alpha, double p_stall) {
             AlgorithmConfig c{kind, alpha, p_stall};
             c.validate();
             return c;
           }),
           py::arg("kind") = Algorithm::kTapsa, py::arg("alpha") = 4, py::arg("p_stall") = 0.5)
      .def_readwrite("kind", &AlgorithmConfig::kind)
      .def_readwrite("alpha", &AlgorithmConfig::alpha)
      .def_readwrite("p_stall", &AlgorithmConfig::p_stall);

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("cycle", &TraceRecord::cycle)
      .def_readonly("i0", &TraceRecord::i0)
      .def_readonly("energy", &TraceRecord::energy)
      .def_readonly("cut", &TraceRecord::cut);

  py::class_<TrialResult>(m, "TrialResult")
      .def_readonly("trace", &TrialResult::trace)
      .def_property_readonly("final_state", [](const TrialResult& r) { return from_state(r.final_state); })
      .def_readonly("final_energy", &TrialResult::final_energy)
      .def_readonly("final_cut", &TrialResult::final_cut)
      .def_readonly("best_cut", &TrialResult::best_cut)
      .def_readonly("updates", &TrialResult::updates);

  m.def(
      "run_anneal",
      [](const IsingModel& mdl, const AnnealSchedule& schedule, const AlgorithmConfig& algo,
         const VariabilityProfile& profile, std::uint64_t seed, unsigned threads) {
        py::gil_scoped_release release;
        return run_anneal(mdl, schedule, algo, profile, seed, AnnealOptions{threads});
      },
      py::arg("model"), py::arg("schedule"), py::arg("algo"), py::arg("profile"), py::arg("seed"),
      py::arg("threads") = 1);

  py::class_<gset::GsetFile>(m, "GsetFile")
      .def_readonly("name", &gset::GsetFile::name)
      .def_readonly("n", &gset::GsetFile::n)
      .def_readonly("m", &gset::GsetFile::m)
      .def_property_readonly("edges",
                             [](const gset::GsetFile& f) {
                               std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
                               for (const auto& e : f.edges) out.emplace_back(e.i, e.j, e.weight);
                               return out;
                             })
      .def("to_graph", &gset::to_graph);

  m.def(
      "parse_gset",
      [](const std::string& text, const std::string& name) {
        std::istringstream in(text);
        return gset::parse_gset(in, name);
      },
      py::arg("text"), py::arg("name") = "");

  py::class_<gset::BestKnownRegistry>(m, "BestKnownRegistry")
      .def(py::init<>())
      .def("lookup", &gset::BestKnownRegistry::lookup)
      .def("__len__", &gset::BestKnownRegistry::size);
  m.def("load_best_known", [](const std::string& text) {
    std::istringstream in(text);
    return gset::load_best_known(in);
  });

  py::class_<ProblemCatalog>(m, "ProblemCatalog")
      .def(py::init<>())
      .def(
          "add", [](ProblemCatalog& c, std::string name, MaxCutGraph g) { c.add(std::move(name), std::move(g)); },
          py::arg("name"), py::arg("graph"))
      .def(
          "add_file", [](ProblemCatalog& c, const std::string& path) { return c.add_file(path).name; },
          py::arg("path"));

  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def(py::init([](std::string graph, AlgorithmConfig algo, VariabilityConfig variability, int cycles, int trials,
                       std::uint64_t seed, unsigned threads) {
             ExperimentSpec s;
             s.graph = std::move(graph);
             s.algo = algo;
             s.variability = variability;
             s.cycles = cycles;
             s.trials = trials;
             s.base_seed = seed;
             s.threads = threads;
             s.validate();
             return s;
           }),
           py::arg("graph"), py::arg("algo") = AlgorithmConfig{}, py::arg("variability") = VariabilityConfig{},
           py::arg("cycles") = 1000, py::arg("trials") = 100, py::arg("seed") = 0, py::arg("threads") = 0)
      .def_readwrite("graph", &ExperimentSpec::graph)
      .def_readwrite("algo", &ExperimentSpec::algo)
      .def_readwrite("variability", &ExperimentSpec::variability)
      .def_readwrite("cycles", &ExperimentSpec::cycles)
      .def_readwrite("trials", &ExperimentSpec::trials)
      .def_readwrite("seed", &ExperimentSpec::base_seed)
      .def_readwrite("threads", &ExperimentSpec::threads);

  py::class_<ExperimentSummary>(m, "ExperimentSummary")
      .def_readonly("mean_cut", &ExperimentSummary::mean_cut)
      .def_readonly("std_cut", &ExperimentSummary::std_cut)
      .def_readonly("normalized_mean_cut", &ExperimentSummary::normalized_mean_cut)
      .def_readonly("mean_final_energy", &ExperimentSummary::mean_final_energy)
      .def_readonly("mean_best_cut", &ExperimentSummary::mean_best_cut)
      .def_readonly("anneal_seconds", &ExperimentSummary::anneal_seconds)
      .def_readonly("trials", &ExperimentSummary::trials);

  m.def(
      "run_trials",
      [](const ExperimentSpec& spec, const ProblemCatalog& catalog, const gset::BestKnownRegistry* registry) {
        py::gil_scoped_release release;
        return run_trials(spec, catalog, registry);
      },
      py::arg("spec"), py::arg("catalog"), py::arg("registry") = nullptr);

  m.def(
      "sweep",
      [](const ExperimentSpec& base, const std::string& axis, const std::vector<double>& values,
         const ProblemCatalog& catalog, const gset::BestKnownRegistry* registry) {
        const auto parsed = parse_sweep_axis(axis);
        if (!parsed) throw py::value_error("axis must be sigma_lambda, sigma_delta or sigma_nu");
        py::gil_scoped_release release;
        return sweep(base, *parsed, values, catalog, registry);
      },
      py::arg("base"), py::arg("axis"), py::arg("values"), py::arg("catalog"), py::arg("registry") = nullptr);

  m.def(
      "summarize",
      [](const std::vector<TrialResult>& results, std::optional<std::int64_t> best_known) {
        return summarize(results, best_known);
      },
      py::arg("results"), py::arg("best_known") = py::none());
}
