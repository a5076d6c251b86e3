// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "qpend/json_io.hpp"

#include <stdexcept>

namespace qpend {

namespace {

Json complex_pair(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

Complex complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("amplitude must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json to_json(const EnvelopeState& state) {
  Json amps = Json::array();
  for (Eigen::Index k = 0; k < state.dim(); ++k) {
    amps.push_back(complex_pair(state.amplitudes(k)));
  }
  return Json{{"n_qubits", state.n_qubits}, {"amplitudes", amps}};
}

EnvelopeState state_from_json(const Json& j) {
  const int n = j.at("n_qubits").get<int>();
  const Json& amps = j.at("amplitudes");
  VectorXc a(static_cast<Eigen::Index>(amps.size()));
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    a(k) = complex_from(amps[static_cast<std::size_t>(k)]);
  }
  return make_state(n, std::move(a));
}

Json to_json(const MeasurementRecord& rec) {
  Json out{{"outcome", rec.outcome},
           {"pre_probabilities", rec.pre_probabilities},
           {"energy_unit_factor", rec.energy_unit_factor}};
  if (rec.qubit < 0) {
    out["qubit"] = "all";
  } else {
    out["qubit"] = rec.qubit;
  }
  return out;
}

Json to_json(const PhysicalParams& p) {
  return Json{{"omega0", p.omega0},
              {"mass", p.mass},
              {"delta_omega_budget", p.delta_omega_budget}};
}

PhysicalParams params_from_json(const Json& j) {
  PhysicalParams p;
  p.omega0 = j.at("omega0").get<double>();
  p.mass = j.at("mass").get<double>();
  p.delta_omega_budget = j.at("delta_omega_budget").get<double>();
  validate_params(p);
  return p;
}

Json to_json(const ControlSchedule& sched) {
  Json items = Json::array();
  for (const ScheduleItem& it : sched.items) {
    if (const auto* m = std::get_if<MeasureMarker>(&it)) {
      Json jm{{"kind", "measure"}};
      if (m->qubit < 0) {
        jm["qubit"] = "all";
      } else {
        jm["qubit"] = m->qubit;
      }
      items.push_back(std::move(jm));
    } else {
      const auto& seg = std::get<ControlSegment>(it);
      Json dets = Json::array();
      for (const auto& [k, delta] : seg.detunings) {
        dets.push_back(Json{{"pendulum", k}, {"delta_omega", delta}});
      }
      Json springs = Json::array();
      for (const Spring& sp : seg.springs) {
        springs.push_back(
            Json{{"i", sp.i}, {"j", sp.j}, {"splitting", sp.splitting}});
      }
      items.push_back(Json{{"kind", "segment"},
                           {"duration", seg.duration},
                           {"detunings", dets},
                           {"springs", springs}});
    }
  }
  return Json{{"n_qubits", sched.n_qubits},
              {"params", to_json(sched.params)},
              {"items", items}};
}

ControlSchedule schedule_from_json(const Json& j) {
  ControlSchedule sched;
  sched.n_qubits = j.at("n_qubits").get<int>();
  if (sched.n_qubits < 1 || sched.n_qubits > kMaxQubits) {
    throw std::invalid_argument("schedule qubit count out of range");
  }
  sched.params = params_from_json(j.at("params"));
  for (const Json& item : j.at("items")) {
    const std::string kind = item.at("kind").get<std::string>();
    if (kind == "measure") {
      MeasureMarker m;
      const Json& q = item.at("qubit");
      if (q.is_string()) {
        if (q.get<std::string>() != "all") {
          throw std::invalid_argument("measure qubit must be an index or 'all'");
        }
        m.qubit = -1;
      } else {
        m.qubit = q.get<int>();
        if (m.qubit < 0 || m.qubit >= sched.n_qubits) {
          throw std::invalid_argument("measured qubit out of range");
        }
      }
      sched.items.emplace_back(m);
    } else if (kind == "segment") {
      ControlSegment seg;
      seg.duration = item.at("duration").get<double>();
      for (const Json& d : item.at("detunings")) {
        seg.detunings[d.at("pendulum").get<int>()] =
            d.at("delta_omega").get<double>();
      }
      for (const Json& sp : item.at("springs")) {
        seg.springs.push_back({sp.at("i").get<int>(), sp.at("j").get<int>(),
                               sp.at("splitting").get<double>()});
      }
      validate_segment(seg, sched.n_qubits);
      sched.items.emplace_back(std::move(seg));
    } else {
      throw std::invalid_argument("unknown schedule item kind '" + kind +
                                  "'");
    }
  }
  return sched;
}

Json to_json(const SegmentReport& rep) {
  return Json{{"duration_requested", rep.duration_requested},
              {"duration_executed", rep.duration_executed},
              {"steps", rep.steps},
              {"energy_start", rep.energy_start},
              {"energy_end", rep.energy_end},
              {"drift_per_period", rep.drift_per_period}};
}

Json to_json(const NewtonRunResult& res) {
  Json segs = Json::array();
  for (const SegmentReport& r : res.segment_reports) segs.push_back(to_json(r));
  Json recs = Json::array();
  for (const MeasurementRecord& r : res.records) recs.push_back(to_json(r));
  return Json{{"state", to_json(res.state)},
              {"envelope_norm", res.envelope_norm},
              {"outcome_bits", res.outcome_bits},
              {"records", recs},
              {"segments", segs},
              {"max_drift_per_period", res.max_drift_per_period}};
}

Json to_json(const AnticorrResult& res) {
  return Json{{"axis_theta", res.axis_theta},
              {"axis_phi", res.axis_phi},
              {"shots", res.shots},
              {"seed", res.seed},
              {"counts", res.counts},
              {"opposite", res.opposite},
              {"p_opposite", res.p_opposite},
              {"marginal_q0_up", res.marginal_q0_up},
              {"marginal_q1_up", res.marginal_q1_up}};
}

Json to_json(const Fig3Report& rep) {
  auto amps = [](const std::array<Complex, 4>& a) {
    Json out = Json::array();
    for (const Complex& z : a) out.push_back(complex_pair(z));
    return out;
  };
  Json branches = Json::array();
  for (const Fig3Branch& br : rep.branches) {
    branches.push_back(Json{{"outcome0", br.outcome0},
                            {"probability", br.probability},
                            {"post", amps(br.post)},
                            {"y_eigen_residual", br.y_eigen_residual},
                            {"outcome1", br.outcome1},
                            {"opposite", br.opposite}});
  }
  return Json{{"amplitudes", amps(rep.amplitudes)},
              {"magnitudes", rep.magnitudes},
              {"phase_diff_12", rep.phase_diff_12},
              {"phase_diff_34", rep.phase_diff_34},
              {"branches", branches}};
}

Json to_json(const ChshResult& res) {
  Json settings = Json::array();
  for (const ChshSetting& st : res.settings) {
    settings.push_back(Json{{"angle_a", st.angle_a},
                            {"angle_b", st.angle_b},
                            {"correlator", st.correlator},
                            {"std_error", st.std_error},
                            {"counts", st.counts}});
  }
  return Json{{"exact", res.exact},
              {"shots_per_setting", res.shots_per_setting},
              {"seed", res.seed},
              {"settings", settings},
              {"S", res.S},
              {"S_std_error", res.S_std_error}};
}

Json to_json(const BitflipReport& rep) {
  return Json{{"flipped", rep.flipped},
              {"syndrome", rep.syndrome},
              {"corrected", rep.corrected},
              {"fidelity_to_logical", rep.fidelity_to_logical},
              {"logical_error_overlap", rep.logical_error_overlap},
              {"seed", rep.seed}};
}

Json to_json(const SweepResult& res) {
  Json cases = Json::array();
  for (const SweepCaseResult& cr : res.cases) {
    Json cells = Json::array();
    for (const SweepCell& c : cr.cells) {
      cells.push_back(Json{{"ratio", c.ratio},
                           {"min_fidelity", c.min_fidelity},
                           {"mean_infidelity", c.mean_infidelity},
                           {"max_infidelity", c.max_infidelity}});
    }
    cases.push_back(Json{{"gate", cr.gate},
                         {"n_qubits", cr.n_qubits},
                         {"cells", cells},
                         {"monotone", cr.monotone}});
  }
  return Json{{"ratios", res.ratios},
              {"states_per_case", res.states_per_case},
              {"seed", res.seed},
              {"cases", cases},
              {"all_monotone", res.all_monotone},
              {"min_fidelity_finest", res.min_fidelity_finest}};
}

}  // namespace qpend
