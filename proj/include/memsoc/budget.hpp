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

#ifndef MEMSOC_BUDGET_HPP
#define MEMSOC_BUDGET_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "memsoc/chipdesc.hpp"

namespace memsoc {

// ---------------------------------------------------------------------------
// Rail currents
// ---------------------------------------------------------------------------

/// Worst-case current per rail at the given operating frequencies. Entries
/// scale linearly with frequency up to their maximum clock; DC entries (no
/// max clock) contribute fully. Missing map entries run at the maximum.
/// Throws ClockAboveMax when a block is clocked beyond its table entry.
std::map<std::string, double> rail_current(const ChipDescription& desc,
                                           const std::map<std::string, double>& clock_map);

/// Pads needed to carry `total_ma`:
///   CurrentLimited -> max(1, ceil(total/limit)); PerBlock -> blocks_served.
int pads_required(double total_ma, double pad_limit_ma, RailPolicy policy, int blocks_served);

// ---------------------------------------------------------------------------
// Audit
// ---------------------------------------------------------------------------

struct RailBudget {
	std::string rail;
	double voltage_v = 0.0;
	double total_ma = 0.0;
	double pad_limit_ma = 0.0;
	int pads_required = 0;
	int pads_declared = 0;
	RailPolicy policy = RailPolicy::Declared;
	bool mismatch = false;
};

struct PinTotals {
	int supply = 0;
	int ground = 0;
	int analog_test = 0;
	int lvds = 0;
	int lvds_pairs = 0;
	int ttl = 0;
	int clock = 0;
	int total_external = 0; // everything but the down-bonded grounds
};

struct Mismatch {
	std::string claim_source;
	double claimed = 0.0;
	double computed = 0.0;
};

struct AuditReport {
	std::vector<RailBudget> rails;
	PinTotals pin_totals;
	std::vector<Mismatch> mismatches;
};

/// Recompute every pin total by summation over the description tables and
/// compare against the declared claims. Disagreements become mismatch
/// entries; computed values are never overwritten by claimed ones.
AuditReport audit(const ChipDescription& desc);

// ---------------------------------------------------------------------------
// Bandwidth
// ---------------------------------------------------------------------------

struct BandwidthAudit {
	double noc_peak_gbps = 0.0;
	double bridge_tx_gbps = 0.0;
	double bridge_rx_gbps = 0.0;
	double tx_rx_asymmetry = 0.0;
	bool monitor_at_speed = false; // TX capacity covers the NoC peak
};

BandwidthAudit bandwidth_audit(const ChipDescription& desc);

// ---------------------------------------------------------------------------
// Energy integration
// ---------------------------------------------------------------------------

/// Active-cycle counters a simulation run accumulates. Per-array counters
/// aggregate over all arrays (each active array-cycle counts once).
struct ActivityCounters {
	std::uint64_t elapsed_cycles = 0; // kernel cycles at the NoC clock
	std::uint64_t ca_sram_cycles = 0;
	std::uint64_t ca_ctrl_cycles = 0;
	std::uint64_t ca_analog_cycles = 0;
	std::uint64_t riscv_cycles = 0;
	std::uint64_t shared_sram_cycles = 0;
	std::uint64_t axi_byte_cycles = 0;
	std::uint64_t noc_active_cycles = 0;
	std::uint64_t bridge_active_cycles = 0;
	std::uint64_t lvds_word_cycles = 0;
	std::uint64_t bridge_in_cycles = 0;
	std::uint64_t form_events = 0;
	std::uint64_t set_events = 0;
	std::uint64_t reset_events = 0;
};

struct EnergyTrace {
	std::map<std::string, double> per_rail_pj;
	double memristor_event_pj = 0.0; // included in the 3.3 V forming rail
	double total_pj = 0.0;
};

/// Integrate energy over a run: each active cycle of a block contributes
/// V_rail * I_max / f_max (per-cycle switching energy); memristor events add
/// their configured per-event energies on the forming rail.
EnergyTrace energy_report(const ChipDescription& desc, const ActivityCounters& activity);

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string audit_to_json_string(const AuditReport& report, const BandwidthAudit& bw,
                                 int indent = 2);
std::string audit_to_text(const AuditReport& report, const BandwidthAudit& bw);

} // namespace memsoc

#endif // MEMSOC_BUDGET_HPP
