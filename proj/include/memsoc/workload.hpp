/*
 * Copyright 2026 The memsoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MEMSOC_WORKLOAD_HPP
#define MEMSOC_WORKLOAD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memsoc/arrays.hpp"
#include "memsoc/control.hpp"

namespace memsoc {

enum class TrafficPattern { UniformRandom, Hotspot, Pipeline };

struct TrafficSpec {
	TrafficPattern pattern = TrafficPattern::UniformRandom;
	double rate = 0.0;    // injection probability per node per cycle, [0, 1]
	int hotspot_node = 7; // destination for the hotspot pattern
};

struct CaProgram {
	int ca_id = 0;
	bool autostart = true;
	std::vector<CaInstruction> instructions;
};

enum class MonitorReadyModel { Always, Duty };

struct Workload {
	std::string name = "empty";
	std::uint64_t duration_cycles = 0;
	std::uint64_t seed = 0;
	std::optional<TrafficSpec> traffic;
	std::vector<CaProgram> ca_programs;
	std::vector<SeqInstruction> sequencer;
	MonitorReadyModel monitor_ready = MonitorReadyModel::Always;
	double monitor_duty = 1.0;

	void validate() const; // throws BadInput
};

std::string to_json_string(const Workload& w, int indent = 2);
Workload workload_from_json_string(const std::string& text); // throws BadInput

} // namespace memsoc

#endif // MEMSOC_WORKLOAD_HPP
