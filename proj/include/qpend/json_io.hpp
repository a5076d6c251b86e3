// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <json.hpp>

#include "qpend/experiments.hpp"

namespace qpend {

using Json = nlohmann::json;

// Amplitudes are [re, im] pairs; doubles are emitted in shortest
// round-trip form, so nothing is lost crossing the text boundary.
Json to_json(const EnvelopeState& state);
EnvelopeState state_from_json(const Json& j);

Json to_json(const MeasurementRecord& rec);

Json to_json(const PhysicalParams& p);
PhysicalParams params_from_json(const Json& j);

Json to_json(const ControlSchedule& sched);
ControlSchedule schedule_from_json(const Json& j);

Json to_json(const SegmentReport& rep);
Json to_json(const NewtonRunResult& res);

Json to_json(const AnticorrResult& res);
Json to_json(const Fig3Report& rep);
Json to_json(const ChshResult& res);
Json to_json(const BitflipReport& rep);
Json to_json(const SweepResult& res);

}  // namespace qpend
