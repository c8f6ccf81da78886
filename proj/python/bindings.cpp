#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "flashmod/ballsbins.hpp"
#include "flashmod/codes.hpp"
#include "flashmod/core.hpp"
#include "flashmod/field.hpp"
#include "flashmod/records.hpp"
#include "flashmod/sim.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace flashmod;

namespace {

CellState make_state(const std::vector<Level>& levels, unsigned q) { return CellState(levels, q); }

py::object outcome_to_py(const WriteOutcome& w) {
  switch (w.kind()) {
    case WriteOutcome::Kind::Written:
      return py::make_tuple("written", w.cell());
    case WriteOutcome::Kind::NoOp:
      return py::make_tuple("noop", py::none());
    case WriteOutcome::Kind::EraseRequired:
      return py::make_tuple("erase", py::none());
  }
  return py::none();
}

CodeKind kind_from(const std::string& name) {
  if (auto k = parse_code_kind(name)) return *k;
  throw py::value_error("unknown code '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
    Self-randomized and load-balancing flash modulation codes, random-loading
    oracles and the lifetime simulator.
  )pbdoc";

  py::class_<CodeParams>(m, "CodeParams")
      .def(py::init([](const std::string& code, unsigned k, unsigned q, unsigned l) {
             return CodeParams::make(kind_from(code), k, q, l);
           }),
           py::arg("code"), py::arg("k"), py::arg("q"), py::arg("l") = 2)
      .def_readonly("k", &CodeParams::k)
      .def_readonly("l", &CodeParams::l)
      .def_readonly("q", &CodeParams::q)
      .def_readonly("n", &CodeParams::n)
      .def_property_readonly("code", [](const CodeParams& p) { return std::string(to_string(p.kind)); })
      .def_property_readonly("alphabet_size", &CodeParams::alphabet_size)
      .def_property_readonly("capacity", &CodeParams::capacity);

  py::class_<CellState>(m, "CellState")
      .def(py::init(&make_state), py::arg("levels"), py::arg("q"))
      .def(py::init<std::size_t, unsigned>(), py::arg("n"), py::arg("q"))
      .def_property_readonly("levels", [](const CellState& s) {
        return std::vector<Level>(s.levels().begin(), s.levels().end());
      })
      .def_property_readonly("q", &CellState::q)
      .def("erase", &CellState::erase)
      .def("__len__", &CellState::size)
      .def("__eq__", [](const CellState& a, const CellState& b) { return a == b; });

  m.def("l1_norm", &l1_norm, py::arg("state"));
  m.def("weighted_sum", &weighted_sum, py::arg("state"), py::arg("modulus"));
  m.def("cell_increment",
        [](CellState& s, std::size_t idx) {
          if (idx >= s.size()) throw py::index_error("cell index out of range");
          return outcome_to_py(cell_increment(s, idx));
        },
        py::arg("state"), py::arg("idx"));

  py::class_<FieldSpec>(m, "FieldSpec")
      .def(py::init<unsigned>(), py::arg("m"))
      .def(py::init<unsigned, std::uint32_t>(), py::arg("m"), py::arg("poly"))
      .def_property_readonly("degree", &FieldSpec::degree)
      .def_property_readonly("poly", &FieldSpec::poly)
      .def_property_readonly("order", &FieldSpec::order);
  m.def("gf_add", [](const FieldSpec& f, std::uint32_t a, std::uint32_t b) {
    return gf_add(f, FieldElem(a), FieldElem(b)).value;
  });
  m.def("gf_mul", [](const FieldSpec& f, std::uint32_t a, std::uint32_t b) {
    return gf_mul(f, FieldElem(a), FieldElem(b)).value;
  });
  m.def("gf_inv", [](const FieldSpec& f, std::uint32_t a) { return gf_inv(f, FieldElem(a)).value; });

  py::class_<ModulationCode, std::shared_ptr<ModulationCode>>(m, "ModulationCode")
      .def(py::init([](const CodeParams& p) { return std::shared_ptr<ModulationCode>(make_code(p)); }),
           py::arg("params"))
      .def_property_readonly("params", &ModulationCode::params)
      .def("fresh_state", &ModulationCode::fresh_state)
      .def("decode", &ModulationCode::decode, py::arg("state"))
      .def("encode",
           [](const ModulationCode& c, CellState& s, std::uint64_t x) { return outcome_to_py(c.encode(s, x)); },
           py::arg("state"), py::arg("x"));

  m.def("throw_balls",
        [](std::size_t n, std::uint64_t balls, unsigned d, std::uint64_t seed) {
          Rng rng(seed);
          return throw_balls(n, balls, d, rng).loads;
        },
        py::arg("n"), py::arg("m"), py::arg("d"), py::arg("seed"));
  m.def("balls_until_overflow",
        [](std::size_t n, unsigned q, unsigned d, std::uint64_t seed) {
          Rng rng(seed);
          return balls_until_overflow(n, q, d, rng);
        },
        py::arg("n"), py::arg("q"), py::arg("d"), py::arg("seed"));
  m.def("overflow_eta",
        [](std::size_t n, unsigned q, unsigned d, std::uint64_t trials, std::uint64_t seed) {
          return overflow_experiment(n, q, d, trials, seed).eta;
        },
        py::arg("n"), py::arg("q"), py::arg("d"), py::arg("trials"), py::arg("seed"));
  m.def("collision_bound", &collision_bound, py::arg("m"), py::arg("n"), py::arg("k"));
  m.def("max_load_prediction",
        [](double n, double balls, unsigned d) {
          const RegimePrediction p = max_load_prediction(n, balls, d);
          return py::make_tuple(std::string(to_string(p.regime)), p.predicted_max_load);
        },
        py::arg("n"), py::arg("m"), py::arg("d"));
  m.def("solve_dc", &solve_dc, py::arg("c"));
  m.def("lambert_w0", &lambert_w0, py::arg("x"));

  m.def("entropy_bits", [](std::vector<double> probs) { return entropy_bits(DistributionSpec(std::move(probs))); });
  m.def("gamma_upper_bounds", [](unsigned k, unsigned l) {
    const GammaBounds g = gamma_upper_bounds(k, l);
    return py::make_tuple(g.single_change, g.arbitrary_change);
  });
  m.def("min_of_n_expectation",
        [](const std::vector<double>& samples, unsigned n_cells, std::size_t resamples, std::uint64_t seed) {
          Rng rng(seed);
          return min_of_n_expectation(samples, n_cells, resamples, rng);
        },
        py::arg("samples"), py::arg("N"), py::arg("resamples"), py::arg("seed"));

  m.def(
      "run_experiment",
      [](const CodeParams& p, std::uint64_t cycles, std::uint64_t seed, std::optional<std::vector<double>> probs,
         unsigned threads) {
        const DistributionSpec dist = probs ? DistributionSpec(*probs) : DistributionSpec::uniform(p.alphabet_size());
        ExperimentOptions options;
        options.threads = threads;
        ExperimentStats s;
        {
          py::gil_scoped_release release;
          s = run_experiment(p, dist, cycles, seed, options);
        }
        py::dict d;
        d["code"] = std::string(to_string(s.code));
        d["k"] = s.k;
        d["l"] = s.l;
        d["q"] = s.q;
        d["n"] = s.n;
        d["cycles"] = s.cycles;
        d["mean_r_inc"] = s.mean_r_inc;
        d["mean_r_total"] = s.mean_r_total;
        d["eta"] = s.eta;
        d["gamma"] = s.gamma;
        d["seed"] = s.seed;
        d["truncated_cycles"] = s.truncated_cycles;
        return d;
      },
      py::arg("params"), py::arg("cycles"), py::arg("seed"), py::arg("probs") = py::none(),
      py::arg("threads") = 1);

  m.def("roundtrip_check",
        [](const CodeParams& p, std::uint64_t writes, std::uint64_t seed) {
          const RoundTripReport r = roundtrip_check(p, writes, seed);
          py::dict d;
          d["writes"] = r.writes;
          d["written"] = r.written;
          d["noops"] = r.noops;
          d["erasures"] = r.erasures;
          d["failures"] = r.failures;
          return d;
        },
        py::arg("params"), py::arg("writes"), py::arg("seed"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
