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

#include "memsoc/budget.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "memsoc/errors.hpp"

namespace memsoc {

using ojson = nlohmann::ordered_json;

std::map<std::string, double> rail_current(const ChipDescription& desc,
                                           const std::map<std::string, double>& clock_map) {
	std::map<std::string, double> totals;
	for (const auto& r : desc.rails)
		if (r.kind == RailKind::Supply) totals[r.name] = 0.0;

	for (const auto& e : desc.current_entries) {
		double contribution = e.max_current_ma * e.count;
		if (e.max_clock_hz) {
			double f = *e.max_clock_hz;
			auto it = clock_map.find(e.block);
			if (it != clock_map.end()) f = it->second;
			if (f > *e.max_clock_hz + 1e-9)
				throw ClockAboveMax("block '" + e.block + "' clocked at " + std::to_string(f) +
				                    " Hz, table maximum is " + std::to_string(*e.max_clock_hz));
			contribution *= f / *e.max_clock_hz;
		}
		totals[e.rail] += contribution;
	}
	return totals;
}

int pads_required(double total_ma, double pad_limit_ma, RailPolicy policy, int blocks_served) {
	if (policy == RailPolicy::PerBlock) return blocks_served;
	if (!(pad_limit_ma > 0.0)) throw MalformedDescription("pad current limit must be positive");
	int needed = static_cast<int>(std::ceil(total_ma / pad_limit_ma));
	return std::max(1, needed);
}

AuditReport audit(const ChipDescription& desc) {
	AuditReport rep;
	auto totals = rail_current(desc, {});
	int ca_blocks = desc.compute_array_count();

	for (const auto& r : desc.rails) {
		RailBudget b;
		b.rail = r.name;
		b.voltage_v = r.voltage_v;
		b.pad_limit_ma = desc.pad_limit_ma;
		b.pads_declared = r.declared_pads;
		b.policy = r.policy;
		auto it = totals.find(r.name);
		b.total_ma = it != totals.end() ? it->second : 0.0;
		switch (r.policy) {
		case RailPolicy::CurrentLimited:
			b.pads_required = pads_required(b.total_ma, desc.pad_limit_ma, r.policy, 0);
			b.mismatch = b.pads_required != b.pads_declared;
			break;
		case RailPolicy::PerBlock:
			b.pads_required = pads_required(b.total_ma, desc.pad_limit_ma, r.policy, ca_blocks);
			b.mismatch = b.pads_required != b.pads_declared;
			break;
		case RailPolicy::Declared:
			b.pads_required = r.declared_pads;
			break;
		}
		if (b.mismatch)
			rep.mismatches.push_back({"rail " + r.name + " pads",
			                          static_cast<double>(b.pads_declared),
			                          static_cast<double>(b.pads_required)});
		rep.rails.push_back(b);
	}

	// pin totals by plain summation over the tables
	PinTotals& t = rep.pin_totals;
	for (const auto& r : desc.rails) {
		if (r.kind == RailKind::Supply)
			t.supply += r.declared_pads;
		else
			t.ground += r.declared_pads;
	}
	for (const auto& p : desc.io_pads) {
		switch (p.group) {
		case PadGroup::Clock: t.clock += p.physical_pads(); break;
		case PadGroup::LvdsPair:
			t.lvds += p.physical_pads();
			t.lvds_pairs += p.lane_count;
			break;
		case PadGroup::Ttl: t.ttl += p.physical_pads(); break;
		case PadGroup::AnalogTest: t.analog_test += p.physical_pads(); break;
		case PadGroup::Supply: t.supply += p.physical_pads(); break;
		case PadGroup::Ground: t.ground += p.physical_pads(); break;
		}
	}
	// grounds go to the package paddle through down-bonds, not package pins
	t.total_external = t.supply + t.clock + t.lvds + t.ttl + t.analog_test;

	const SummaryClaims& c = desc.claims;
	auto claim = [&](const char* source, int claimed, int computed) {
		if (claimed != computed)
			rep.mismatches.push_back({source, static_cast<double>(claimed),
			                          static_cast<double>(computed)});
	};
	claim("summary supply pins", c.supply_pins, t.supply);
	claim("summary ground pads", c.ground_pads, t.ground);
	claim("summary analog test pins", c.analog_test_pins, t.analog_test);
	claim("summary LVDS pins", c.lvds_pins, t.lvds);
	claim("interface LVDS pair count", c.lvds_pairs, t.lvds_pairs);
	claim("summary TTL pins", c.ttl_pins, t.ttl);
	claim("summary external package pins", c.package_external_pins, t.total_external);
	claim("summary down-bonds", c.down_bonds, t.ground);
	return rep;
}

BandwidthAudit bandwidth_audit(const ChipDescription& desc) {
	BandwidthAudit bw;
	bw.noc_peak_gbps = desc.noc.link_width_bits * desc.noc.clock_hz / 1e9;
	bw.bridge_tx_gbps = desc.bridge.tx_aggregate_bps() / 1e9;
	bw.bridge_rx_gbps = desc.bridge.rx_aggregate_bps() / 1e9;
	bw.tx_rx_asymmetry =
	    bw.bridge_rx_gbps > 0.0 ? bw.bridge_tx_gbps / bw.bridge_rx_gbps : 0.0;
	bw.monitor_at_speed = bw.bridge_tx_gbps >= bw.noc_peak_gbps;
	return bw;
}

// ---------------------------------------------------------------------------
// Energy
// ---------------------------------------------------------------------------

namespace {

struct Meter {
	const char* block;                       // current-table row it prices
	std::uint64_t ActivityCounters::* count; // active cycles at that row's clock
};

// activity counter backing each current-table row
constexpr Meter kMeters[] = {
    {"SRAM (32 KB) per CA", &ActivityCounters::ca_sram_cycles},
    {"local controller per CA", &ActivityCounters::ca_ctrl_cycles},
    {"analog component per CA", &ActivityCounters::ca_analog_cycles},
    {"RISC-V", &ActivityCounters::riscv_cycles},
    {"SRAM (2x64 KB)", &ActivityCounters::shared_sram_cycles},
    {"AXI interface", &ActivityCounters::axi_byte_cycles},
    {"Network on Chip", &ActivityCounters::noc_active_cycles},
    {"Chip Bridge", &ActivityCounters::bridge_active_cycles},
    {"Output chip bridge", &ActivityCounters::lvds_word_cycles},
    {"Input chip bridge", &ActivityCounters::bridge_in_cycles},
};

} // namespace

EnergyTrace energy_report(const ChipDescription& desc, const ActivityCounters& activity) {
	EnergyTrace trace;
	for (const auto& r : desc.rails)
		if (r.kind == RailKind::Supply) trace.per_rail_pj[r.name] = 0.0;

	for (const auto& e : desc.current_entries) {
		if (!e.max_clock_hz) continue; // DC rows carry no per-cycle energy
		const RailSpec* rail = desc.find_rail(e.rail);
		if (!rail) continue;
		std::uint64_t active = 0;
		for (const auto& m : kMeters)
			if (e.block == m.block) active = activity.*(m.count);
		// per active cycle at the row's own clock: V * I_max / f_max, in pJ
		double cycle_pj = rail->voltage_v * (e.max_current_ma * 1e-3) /
		                  *e.max_clock_hz * 1e12;
		double pj = cycle_pj * static_cast<double>(active);
		if (desc.energy.idle_fraction > 0.0) {
			// instances * elapsed gives the total instance-cycles of the row
			double instance_cycles = static_cast<double>(e.count) *
			                         static_cast<double>(activity.elapsed_cycles);
			double idle = std::max(0.0, instance_cycles - static_cast<double>(active));
			pj += desc.energy.idle_fraction * cycle_pj * idle;
		}
		trace.per_rail_pj[e.rail] += pj;
	}

	trace.memristor_event_pj = desc.energy.form_pj * activity.form_events +
	                           desc.energy.set_pj * activity.set_events +
	                           desc.energy.reset_pj * activity.reset_events;
	trace.per_rail_pj["VDDA_EF"] += trace.memristor_event_pj;

	for (const auto& [rail, pj] : trace.per_rail_pj) trace.total_pj += pj;
	return trace;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

const char* policy_name(RailPolicy p) {
	switch (p) {
	case RailPolicy::CurrentLimited: return "current_limited";
	case RailPolicy::PerBlock: return "per_block";
	case RailPolicy::Declared: return "declared";
	}
	return "?";
}

} // namespace

std::string audit_to_json_string(const AuditReport& report, const BandwidthAudit& bw,
                                 int indent) {
	ojson j;
	j["rails"] = ojson::array();
	for (const auto& r : report.rails)
		j["rails"].push_back(ojson{{"rail", r.rail},
		                           {"voltage_v", r.voltage_v},
		                           {"total_ma", r.total_ma},
		                           {"pad_limit_ma", r.pad_limit_ma},
		                           {"pads_required", r.pads_required},
		                           {"pads_declared", r.pads_declared},
		                           {"policy", policy_name(r.policy)},
		                           {"mismatch", r.mismatch}});
	j["pin_totals"] = ojson{{"supply", report.pin_totals.supply},
	                        {"ground", report.pin_totals.ground},
	                        {"analog_test", report.pin_totals.analog_test},
	                        {"lvds", report.pin_totals.lvds},
	                        {"lvds_pairs", report.pin_totals.lvds_pairs},
	                        {"ttl", report.pin_totals.ttl},
	                        {"clock", report.pin_totals.clock},
	                        {"total_external", report.pin_totals.total_external}};
	j["mismatches"] = ojson::array();
	for (const auto& m : report.mismatches)
		j["mismatches"].push_back(ojson{{"claim_source", m.claim_source},
		                                {"claimed", m.claimed},
		                                {"computed", m.computed}});
	j["bandwidth"] = ojson{{"noc_peak_gbps", bw.noc_peak_gbps},
	                       {"bridge_tx_gbps", bw.bridge_tx_gbps},
	                       {"bridge_rx_gbps", bw.bridge_rx_gbps},
	                       {"tx_rx_asymmetry", bw.tx_rx_asymmetry},
	                       {"monitor_at_speed", bw.monitor_at_speed}};
	return j.dump(indent) + "\n";
}

std::string audit_to_text(const AuditReport& report, const BandwidthAudit& bw) {
	std::ostringstream out;
	char line[160];
	out << "rail budget (worst case)\n";
	std::snprintf(line, sizeof line, "  %-10s %7s %9s %9s %9s  %s\n", "rail", "V",
	              "total mA", "required", "declared", "policy");
	out << line;
	for (const auto& r : report.rails) {
		std::snprintf(line, sizeof line, "  %-10s %7.1f %9.1f %9d %9d  %s%s\n",
		              r.rail.c_str(), r.voltage_v, r.total_ma, r.pads_required,
		              r.pads_declared, policy_name(r.policy),
		              r.mismatch ? "  <-- mismatch" : "");
		out << line;
	}
	const PinTotals& t = report.pin_totals;
	out << "pin totals (computed by summation)\n";
	std::snprintf(line, sizeof line,
	              "  supply %d, ground %d, analog test %d, lvds %d (%d pairs), "
	              "ttl %d, clock %d, external total %d\n",
	              t.supply, t.ground, t.analog_test, t.lvds, t.lvds_pairs, t.ttl, t.clock,
	              t.total_external);
	out << line;
	out << "bandwidth\n";
	std::snprintf(line, sizeof line,
	              "  noc peak %.1f Gbit/s, bridge tx %.1f Gbit/s, bridge rx %.1f Gbit/s "
	              "(asymmetry %.0fx), monitor at speed: %s\n",
	              bw.noc_peak_gbps, bw.bridge_tx_gbps, bw.bridge_rx_gbps, bw.tx_rx_asymmetry,
	              bw.monitor_at_speed ? "yes" : "no");
	out << line;
	if (report.mismatches.empty()) {
		out << "no mismatches against the declared totals\n";
	} else {
		out << "mismatches (claimed vs computed)\n";
		for (const auto& m : report.mismatches) {
			std::snprintf(line, sizeof line, "  %-32s claimed %g, computed %g\n",
			              m.claim_source.c_str(), m.claimed, m.computed);
			out << line;
		}
	}
	return out.str();
}

} // namespace memsoc
