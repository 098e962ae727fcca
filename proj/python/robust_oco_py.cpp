#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "robust_oco/adversaries.hpp"
#include "robust_oco/checks.hpp"
#include "robust_oco/config.hpp"
#include "robust_oco/harness.hpp"
#include "robust_oco/protocol.hpp"

namespace py = pybind11;
using namespace robust_oco;

// Vector <-> any sequence of floats; converts back to a list.
namespace pybind11::detail {
template <>
struct type_caster<Vector> {
  PYBIND11_TYPE_CASTER(Vector, const_name("list[float]"));

  bool load(handle src, bool convert) {
    make_caster<std::vector<double>> inner;
    if (!inner.load(src, convert)) return false;
    value = Vector(cast_op<std::vector<double>&&>(std::move(inner)));
    return true;
  }

  static handle cast(const Vector& v, return_value_policy policy, handle parent) {
    return make_caster<std::vector<double>>::cast(v.data(), policy, parent);
  }
};
}  // namespace pybind11::detail

namespace {

py::dict round_to_dict(const RoundInfo& r) {
  py::dict d;
  d["t"] = r.t;
  d["w"] = r.w;
  d["g_clipped"] = r.g_clipped;
  d["h"] = r.h;
  d["h_next"] = r.h_next;
  d["z"] = r.z;
  d["alpha"] = r.alpha;
  d["beta"] = r.beta;
  d["clipped"] = r.clipped;
  d["regularizer_at_w"] = r.regularizer_at_w;
  d["w_next"] = r.w_next;
  return d;
}

ExperimentConfig config_from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

py::dict trace_to_dict(const ExperimentTrace& tr) {
  py::list w, true_regret, observed_regret, h, corrupted;
  for (const auto& r : tr.rounds) {
    w.append(py::cast(r.w));
    true_regret.append(r.true_regret);
    observed_regret.append(r.observed_regret);
    h.append(r.h);
    corrupted.append(r.corrupted);
  }
  py::dict d;
  d["w"] = w;
  d["true_regret"] = true_regret;
  d["observed_regret"] = observed_regret;
  d["h"] = h;
  d["corrupted"] = corrupted;
  d["comparator"] = tr.comparator;
  d["final_true_regret"] = tr.summary.final_true_regret;
  d["count_corrupted"] = tr.summary.budget.count_corrupted;
  if (tr.summary.decomposition) d["identity_residual"] = tr.summary.decomposition->identity_residual();
  return d;
}

}  // namespace

PYBIND11_MODULE(robust_oco, m) {
  m.doc() = "Corruption-robust online convex optimization";

  m.def("clip", &clip, py::arg("g"), py::arg("h"));
  m.def("random_seq_expectation", &random_seq_expectation, py::arg("T"));

  py::enum_<ProtocolMode>(m, "ProtocolMode")
      .value("known_G", ProtocolMode::known_G)
      .value("unknown_G_case1", ProtocolMode::unknown_G_case1)
      .value("unknown_G_case2", ProtocolMode::unknown_G_case2)
      .value("custom", ProtocolMode::custom);

  py::class_<ProtocolConfig>(m, "ProtocolConfig")
      .def(py::init<>())
      .def_readwrite("mode", &ProtocolConfig::mode)
      .def_readwrite("dim", &ProtocolConfig::dim)
      .def_readwrite("epsilon", &ProtocolConfig::epsilon)
      .def_readwrite("k", &ProtocolConfig::k)
      .def_readwrite("G", &ProtocolConfig::G)
      .def_readwrite("tau_G", &ProtocolConfig::tau_G)
      .def_readwrite("tau_D", &ProtocolConfig::tau_D)
      .def_readwrite("c", &ProtocolConfig::c)
      .def_readwrite("gamma_alpha", &ProtocolConfig::gamma_alpha)
      .def_readwrite("gamma_beta", &ProtocolConfig::gamma_beta)
      .def_readwrite("T", &ProtocolConfig::T)
      .def_readwrite("p", &ProtocolConfig::p)
      .def_readwrite("alpha_offset", &ProtocolConfig::alpha_offset);
  m.def("resolve_preset", &resolve_preset, py::arg("config"));

  py::class_<DecompositionLedger>(m, "DecompositionLedger")
      .def_readonly("error_term", &DecompositionLedger::error_term)
      .def_readonly("correction_term", &DecompositionLedger::correction_term)
      .def_readonly("bias_term", &DecompositionLedger::bias_term)
      .def_readonly("composite_term", &DecompositionLedger::composite_term)
      .def_readonly("true_regret", &DecompositionLedger::true_regret)
      .def("reconstructed", &DecompositionLedger::reconstructed)
      .def("identity_residual", &DecompositionLedger::identity_residual);

  py::class_<Protocol>(m, "Protocol")
      .def(py::init<ProtocolConfig>(), py::arg("config"))
      .def("predict", &Protocol::predict)
      .def(
          "round",
          [](Protocol& p, const Vector& g_tilde, std::optional<Vector> g_true) {
            return round_to_dict(p.round(g_tilde, g_true));
          },
          py::arg("g_tilde"), py::arg("g_true") = py::none())
      .def_property_readonly("t", py::overload_cast<>(&Protocol::round, py::const_))
      .def_property_readonly("config", &Protocol::config)
      .def("decomposition", &Protocol::decomposition, py::arg("u"))
      .def("true_regret", &Protocol::true_regret, py::arg("u"))
      .def("observed_regret", &Protocol::observed_regret, py::arg("u"));

  m.def("online_to_batch", [](const std::vector<Vector>& ws) { return online_to_batch(ws); },
        py::arg("iterates"));

  py::class_<KTBettor>(m, "KTBettor")
      .def(py::init<double>(), py::arg("epsilon") = 1.0)
      .def("predict", &KTBettor::predict)
      .def("observe", &KTBettor::observe, py::arg("g"), py::arg("hint") = 1.0)
      .def("reset", &KTBettor::reset)
      .def_property_readonly("wealth", &KTBettor::wealth);

  m.def(
      "weighted_project",
      [](const Vector& w, double y, double h, double gamma) {
        const auto p = weighted_project(EpigraphPoint{w, y}, h, gamma);
        return py::make_tuple(py::cast(p.w), p.y);
      },
      py::arg("w"), py::arg("y"), py::arg("h"), py::arg("gamma"));

  m.def(
      "simulate",
      [](const std::string& config_text, std::uint64_t seed) {
        return trace_to_dict(simulate(config_from_text(config_text), seed));
      },
      py::arg("config_text"), py::arg("seed") = 0,
      "Run one seed of an INI-formatted experiment without writing files.");

  m.def(
      "run",
      [](const std::string& config_path, std::optional<std::string> out) {
        auto cfg = load_config(config_path);
        if (out) cfg.output_path = *out;
        return trace_to_dict(run(cfg));
      },
      py::arg("config_path"), py::arg("out") = py::none(),
      "Run an experiment file and write trace.csv and summary.csv.");

  m.def("list_checks", [] {
    std::vector<std::string> names;
    for (const auto& c : check_registry()) names.push_back(c.name);
    return names;
  });

  m.def(
      "verify",
      [](const std::string& name) {
        const Check* c = find_check(name);
        if (!c) throw py::key_error("unknown check: " + name);
        std::ostringstream out;
        bool ok = false;
        {
          py::gil_scoped_release release;
          ok = c->run(out);
        }
        return py::make_tuple(ok, out.str());
      },
      py::arg("name"), "Run a registered check; returns (passed, report).");

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
}
