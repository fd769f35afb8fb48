#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "casplit/experiment.hpp"
#include "casplit/oracle.hpp"

namespace py = pybind11;
using namespace casplit;

namespace {

py::dict summary_dict(const RunSummary& s) {
  py::dict d;
  d["mode"] = to_string(s.mode);
  d["policy"] = s.policy;
  d["total_delivered"] = s.total_delivered;
  d["slots"] = s.slots;
  d["completed"] = s.completed;
  d["mean_throughput"] = s.mean_throughput;
  d["mean_abs_b"] = s.mean_abs_b;
  return d;
}

// column-oriented trace, ready for pandas.DataFrame
py::dict trace_dict(const std::vector<SlotRecord>& tr) {
  std::vector<Slot> t;
  std::vector<std::int64_t> b;
  std::vector<int> ap, as, k;
  std::vector<std::uint64_t> del;
  std::vector<double> kp, ki, kd, g;
  std::vector<std::vector<std::uint32_t>> rlc;
  std::vector<std::vector<int>> cap;
  std::vector<std::string> stage;
  for (const auto& s : tr) {
    t.push_back(s.t);
    b.push_back(s.b);
    ap.push_back(s.action.a_p);
    as.push_back(s.action.a_s);
    del.push_back(s.delivered);
    rlc.push_back(s.rlc);
    cap.push_back(s.capacity);
    kp.push_back(s.probe.kp);
    ki.push_back(s.probe.ki);
    kd.push_back(s.probe.kd);
    g.push_back(s.probe.g);
    k.push_back(s.probe.k);
    stage.emplace_back(1, static_cast<char>(s.probe.stage));
  }
  py::dict d;
  d["t"] = t;
  d["B"] = b;
  d["A_P"] = ap;
  d["A_s"] = as;
  d["rlc"] = rlc;
  d["capacity"] = cap;
  d["delivered"] = del;
  d["Kp"] = kp;
  d["Ki"] = ki;
  d["Kd"] = kd;
  d["G"] = g;
  d["k"] = k;
  d["stage"] = stage;
  return d;
}

py::dict eta_dict(const EtaReport& e) {
  py::dict d;
  d["defined"] = e.defined;
  d["eta"] = e.defined ? py::cast(e.eta) : py::none();
  d["ca_sum"] = e.ca_sum;
  d["pcc_sum"] = e.pcc_sum;
  d["scc_sum"] = e.scc_sum;
  d["window"] = e.window;
  return d;
}

py::tuple action(SplitAction a) { return py::make_tuple(a.a_p, a.a_s); }

}  // namespace

PYBIND11_MODULE(_casplit, m) {
  m.doc() = "PDCP split simulator for carrier aggregation";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::enum_<Policy>(m, "Policy")
      .value("fuzzy_pid", Policy::FuzzyPid)
      .value("nofuzzy_pid", Policy::NoFuzzyPid)
      .value("bwa", Policy::Bwa)
      .value("ltr", Policy::Ltr)
      .value("qlearning", Policy::QLearning);

  py::enum_<RunMode>(m, "RunMode")
      .value("ca", RunMode::CA)
      .value("pcc", RunMode::PccOnly)
      .value("scc", RunMode::SccOnly);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def_readwrite("name", &ScenarioConfig::name)
      .def_readwrite("n_scc", &ScenarioConfig::n_scc)
      .def_readwrite("d_xn", &ScenarioConfig::d_xn)
      .def_readwrite("quantum", &ScenarioConfig::quantum)
      .def_readwrite("max_slots", &ScenarioConfig::max_slots)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_property(
          "policy", [](const ScenarioConfig& c) { return c.controller.policy; },
          [](ScenarioConfig& c, Policy p) { c.controller.policy = p; })
      .def_property(
          "horizon", [](const ScenarioConfig& c) { return c.controller.horizon; },
          [](ScenarioConfig& c, int n) { c.controller.horizon = n; })
      .def_property(
          "packets", [](const ScenarioConfig& c) { return c.workload.packets; },
          [](ScenarioConfig& c, std::uint64_t l) { c.workload.packets = l; })
      .def("validate", [](const ScenarioConfig& c) { validate(c); })
      .def("to_ini", [](const ScenarioConfig& c) { return to_ini(c); })
      .def("__repr__", [](const ScenarioConfig& c) {
        return "<ScenarioConfig " + c.name + " n_scc=" + std::to_string(c.n_scc) + " policy=" +
               to_string(c.controller.policy) + ">";
      });

  m.def("static_scenario", &static_scenario, py::arg("n_scc") = 3);
  m.def("mobile_scenario", &mobile_scenario, py::arg("n_scc") = 3);
  m.def("flat_scenario", &flat_scenario, py::arg("n_scc") = 2);
  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("load_config", &load_config, py::arg("path"));

  m.def(
      "run",
      [](const ScenarioConfig& cfg, RunMode mode, std::uint64_t seed, bool trace) {
        RunResult r;
        {
          py::gil_scoped_release nogil;
          r = build_run(cfg, mode, seed, trace)->run();
        }
        py::dict d = summary_dict(r.summary);
        if (trace) d["trace"] = trace_dict(r.trace);
        return d;
      },
      py::arg("config"), py::arg("mode") = RunMode::CA, py::arg("seed") = 1, py::arg("trace") = true,
      "Run one scenario; returns the summary and, optionally, the per-slot trace.");

  m.def(
      "eta",
      [](const ScenarioConfig& cfg, std::uint64_t seed) {
        SeedRuns r;
        {
          py::gil_scoped_release nogil;
          r = eta_for_seed(cfg, seed, false);
        }
        py::dict d = eta_dict(r.eta);
        d["ca"] = summary_dict(r.ca.result.summary);
        d["pcc"] = summary_dict(r.pcc.result.summary);
        d["scc"] = summary_dict(r.scc.result.summary);
        return d;
      },
      py::arg("config"), py::arg("seed") = 1,
      "CA run plus saturated PCC-only and SCC-only runs with the same fading.");

  m.def(
      "utilization_ratio",
      [](std::uint64_t ca, std::uint64_t p, std::uint64_t s) { return eta_dict(utilization_ratio(ca, p, s)); },
      py::arg("ca"), py::arg("pcc_only"), py::arg("scc_only"));
  m.def("pearson", &pearson, py::arg("x"), py::arg("y"));

  m.def(
      "k_sweep",
      [](std::size_t n_scc, const std::vector<int>& ks, Slot slots) {
        py::list out;
        for (const auto& p : k_sweep(n_scc, ks, slots)) {
          py::dict d;
          d["k"] = p.k;
          d["pcc_share"] = p.pcc_share;
          d["mean_throughput"] = p.mean_throughput;
          d["mean_abs_b"] = p.mean_abs_b;
          out.append(d);
        }
        return out;
      },
      py::arg("n_scc"), py::arg("ks"), py::arg("slots") = 2000);

  m.def(
      "convergence",
      [](std::size_t n_scc, Policy p, double tol) {
        const auto r = convergence_run(n_scc, p, tol);
        py::dict d;
        d["ratio"] = r.ratio;
        d["from"] = r.from;
        d["deadline"] = r.deadline;
        d["steady"] = r.conv.steady;
        d["settle_slot"] = r.conv.settle_slot;
        d["violations_after_deadline"] = r.conv.violations_after_deadline;
        return d;
      },
      py::arg("n_scc"), py::arg("policy") = Policy::FuzzyPid, py::arg("tol") = 0.10);

  m.def("run_suite", &run_suite, py::arg("name"), py::arg("out_dir"), py::arg("seeds") = 10);

  m.def(
      "brute_force_min_T",
      [](std::uint64_t packets, const std::vector<std::vector<int>>& capacity, int d_xn, Slot max_slots,
         bool unrestricted) {
        TinyInstance in;
        in.packets = packets;
        in.n_scc = capacity.empty() ? 0 : capacity.size() - 1;
        in.capacity = capacity;
        in.d_xn = d_xn;
        in.max_slots = max_slots;
        in.unrestricted = unrestricted;
        const auto r = brute_force_min_T(in);
        py::list w;
        for (auto a : r.witness) w.append(action(a));
        return py::make_tuple(r.feasible ? py::cast(r.t_star) : py::none(), w);
      },
      py::arg("packets"), py::arg("capacity"), py::arg("d_xn") = 0, py::arg("max_slots") = 24,
      py::arg("unrestricted") = false,
      "Minimal completion time over all split sequences. capacity[0] is the PCC schedule.");

  m.def(
      "verify_nstep_identity",
      [](std::size_t n_scc, int cap_p, int cap_s, int horizon, int pcc, int scc, std::vector<std::uint64_t> preload) {
        IdentityInstance id{n_scc, cap_p, cap_s, horizon, std::move(preload)};
        const auto r = verify_nstep_identity(id, {pcc, scc});
        py::dict d;
        d["regime"] = to_string(r.regime);
        d["violation"] = r.violation;
        d["packets"] = r.packets;
        d["throughput"] = r.throughput;
        d["delta_h"] = r.delta_h;
        d["objective"] = r.objective;
        d["identity_holds"] = r.identity_holds;
        return d;
      },
      py::arg("n_scc"), py::arg("cap_p"), py::arg("cap_s"), py::arg("horizon"), py::arg("pcc"), py::arg("scc"),
      py::arg("preload") = std::vector<std::uint64_t>{});

  m.def(
      "compute_k",
      [](const std::vector<std::pair<int, int>>& hist, std::size_t n_scc) {
        std::deque<SplitAction> h;
        for (auto [p, s] : hist) h.push_back({p, s});
        return compute_k(h, n_scc);
      },
      py::arg("history"), py::arg("n_scc"));
  m.def(
      "pid_increment",
      [](std::array<double, 3> gains, std::array<double, 3> b) {
        return pid_increment({gains[0], gains[1], gains[2]}, b);
      },
      py::arg("gains"), py::arg("b"));
  m.def(
      "schedule_action", [](Slot t, int n, int k, double g) { return action(schedule_action(t, n, k, g)); },
      py::arg("t"), py::arg("horizon"), py::arg("k"), py::arg("g"));
  m.def(
      "fuzzify",
      [](double b, double b_prev, double b_max) {
        FuzzyConfig c;
        c.b_max = b_max;
        return fuzzify(b, b_prev, c);
      },
      py::arg("b"), py::arg("b_prev"), py::arg("b_max"));

  py::class_<FuzzyPidController>(m, "FuzzyPidController")
      .def(py::init([](int horizon, std::size_t n_scc, bool adapt, bool literal) {
             FuzzyPidConfig c;
             c.horizon = horizon;
             c.n_scc = n_scc;
             c.adapt = adapt;
             c.variant = literal ? Variant::Literal : Variant::Windowed;
             c.fuzzy.b_max = default_b_max(horizon, 2, n_scc);
             return FuzzyPidController(c);
           }),
           py::arg("horizon") = 16, py::arg("n_scc") = 3, py::arg("adapt") = true, py::arg("literal") = false)
      .def(
          "decide",
          [](FuzzyPidController& f, Slot t, std::int64_t b) {
            Observation o;
            o.t = t;
            o.b = b;
            return action(f.decide(o));
          },
          py::arg("t"), py::arg("b"))
      .def_property_readonly("gains",
                             [](const FuzzyPidController& f) {
                               return py::make_tuple(f.gains().kp, f.gains().ki, f.gains().kd);
                             })
      .def_property_readonly("stage", [](const FuzzyPidController& f) {
        return std::string(1, static_cast<char>(f.probe().stage));
      });

  m.attr("TRACE_COLUMNS") = trace_header(3);
}
