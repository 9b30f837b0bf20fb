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

#ifndef MEMSOC_CHIPDESC_HPP
#define MEMSOC_CHIPDESC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memsoc/memristor.hpp"

namespace memsoc {

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

/// Axis-aligned rectangle in millimeters, origin at the die's lower-left.
struct RectMm {
	double x = 0.0;
	double y = 0.0;
	double w = 0.0;
	double h = 0.0;

	bool inside(double x0, double y0, double x1, double y1) const {
		return x >= x0 && y >= y0 && (x + w) <= x1 && (y + h) <= y1;
	}
};

// ---------------------------------------------------------------------------
// Blocks
// ---------------------------------------------------------------------------

enum class BlockKind { ComputeArray, Processor, SharedSram, Noc, ChipBridge, Padframe };

enum class Paradigm { CiM, CAM, SNN, PC };

/// Leaky integrate-and-fire neuron settings for SNN-mode arrays.
struct SnnParams {
	double alpha = 0.9;   // membrane leak per step
	double theta = 1.0;   // firing threshold
	double v_reset = 0.0; // potential after a spike
	int refractory = 2;   // silent steps after a spike
};

/// Configuration of one computing array: crossbar geometry, converter
/// resolutions, clock domains and the behavioral device model.
struct ComputeArrayConfig {
	Paradigm paradigm = Paradigm::CiM;
	int rows = 64;
	int cols = 64;
	int dac_bits = 8;
	int adc_bits = 8;
	double v_read_v = 0.9;
	double digital_clock_hz = 1e9; // <= 1 GHz
	double analog_clock_hz = 1e8;  // <= 100 MHz
	int mvm_pipeline_cycles = 1;   // analog cycles per MVM
	SnnParams snn;
	DeviceParams device;
};

struct BlockPlacement {
	std::string name;
	BlockKind kind = BlockKind::Processor;
	RectMm rect_mm;
	bool uses_memristors = false;
	std::optional<ComputeArrayConfig> compute; // present iff kind == ComputeArray
};

// ---------------------------------------------------------------------------
// Supplies and pads
// ---------------------------------------------------------------------------

enum class RailKind { Supply, Ground };

/// How the audit derives the required pad count for a rail:
///   CurrentLimited — ceil(total current / per-pad limit), at least one pad
///   PerBlock       — one pad per served block (per computing array here)
///   Declared       — the declared count is taken as-is and never flagged;
///                    used where pad count is driven by signal integrity
///                    rather than current capability
enum class RailPolicy { CurrentLimited, PerBlock, Declared };

struct RailSpec {
	std::string name;
	double voltage_v = 0.9; // domain voltage; grounds carry their domain's voltage
	int declared_pads = 1;
	RailPolicy policy = RailPolicy::Declared;
	RailKind kind = RailKind::Supply;
	std::string purpose;
};

/// One row of the current-consumption estimate. `count` expands rows that
/// apply once per computing array. Entries without a max clock are DC and
/// do not scale with frequency.
struct CurrentEntry {
	std::string rail;
	std::string block;
	int count = 1;
	double max_current_ma = 0.0;
	std::optional<double> max_clock_hz;
};

enum class PadGroup { Clock, LvdsPair, Ttl, AnalogTest, Supply, Ground };
enum class PadDirection { In, Out, Bidir };

struct PadSpec {
	std::string name;
	PadGroup group = PadGroup::Ttl;
	int lane_count = 1;            // logical lines; LVDS pairs use 2 pads/lane
	double rate_bps_per_line = 0.0; // 0 for DC / async lines
	PadDirection direction = PadDirection::In;

	int physical_pads() const {
		return group == PadGroup::LvdsPair ? 2 * lane_count : lane_count;
	}
};

// ---------------------------------------------------------------------------
// Interconnect configuration
// ---------------------------------------------------------------------------

enum class Topology { Mesh3x3, Ring8 };

struct NoCConfig {
	Topology topology = Topology::Mesh3x3;
	int router_pipeline_cycles = 1;
	int link_width_bits = 32; // fixed by the architecture
	double clock_hz = 1e9;    // <= 1 GHz
	int fifo_depth = 8;
};

struct BridgeConfig {
	int tx_lanes = 16;
	double tx_rate_bps = 2e9; // per lane
	int rx_lanes = 8;
	double rx_rate_bps = 1e8; // per lane
	int tx_fifo_depth_beats = 64;

	double tx_aggregate_bps() const { return tx_lanes * tx_rate_bps; }
	double rx_aggregate_bps() const { return rx_lanes * rx_rate_bps; }
};

// ---------------------------------------------------------------------------
// Declared totals and energy parameters
// ---------------------------------------------------------------------------

/// Pin totals as declared by the design summary. The audit recomputes every
/// total from the tables and reports disagreements; it never adopts these.
struct SummaryClaims {
	int supply_pins = 46;
	int ground_pads = 46;
	int analog_test_pins = 14;
	int lvds_pins = 42;
	int lvds_pairs = 22;
	int ttl_pins = 31;
	int package_external_pins = 140;
	int down_bonds = 46;
};

/// Per-event memristor energies (3.3 V domain) and the idle contribution of
/// inactive blocks as a fraction of their active per-cycle energy.
struct EnergyParams {
	double form_pj = 100.0;
	double set_pj = 10.0;
	double reset_pj = 10.0;
	double idle_fraction = 0.0;
};

// ---------------------------------------------------------------------------
// The chip description
// ---------------------------------------------------------------------------

struct ChipDescription {
	double die_width_mm = 6.0;
	double die_height_mm = 6.0;
	double edge_margin_mm = 0.8;      // post-processing keep-out from the die edge
	double bond_wire_max_mm = 3.0;    // longest permissible bond wire
	double lead_ring_offset_mm = 1.5; // package lead ring distance outside the die
	int clock_inputs = 4;
	double pad_limit_ma = 15.0;       // per-pad current capability
	int scan_chain_bits = 4096;
	std::vector<BlockPlacement> blocks;
	std::vector<RailSpec> rails;
	std::vector<CurrentEntry> current_entries;
	std::vector<PadSpec> io_pads;
	SummaryClaims claims;
	NoCConfig noc;
	BridgeConfig bridge;
	EnergyParams energy;

	const RailSpec* find_rail(const std::string& name) const;
	int compute_array_count() const;

	/// Structural checks: positive die, rails referenced by current entries
	/// exist, rectangles non-degenerate and inside the die outline.
	/// Throws MalformedDescription.
	void validate_structure() const;
};

// ---------------------------------------------------------------------------
// Floorplan validation
// ---------------------------------------------------------------------------

enum class ViolationKind { OutsideCenterSquare, DieTooSmall, BondWireTooLong };

struct Violation {
	ViolationKind kind;
	std::string subject; // block or pad-group name
	std::string detail;
};

/// The built-in description of the reference chip: 6x6 mm die, 0.8 mm edge
/// margin, seven memristor computing arrays inside the centered keep-in
/// square, the full supply/current/interface tables and the declared totals.
ChipDescription reference_chip();

/// Pure geometry check. One violation per broken rule:
///  - a memristor block leaving the centered (die - 2*margin) square,
///  - a die below 6x6 mm while any memristor block exists,
///  - a pad group whose modeled bond wire exceeds the limit.
/// Throws MalformedDescription on degenerate rectangles.
std::vector<Violation> validate_floorplan(const ChipDescription& desc);

/// Longest modeled bond wire of a pad group, in mm. Pads are distributed
/// uniformly around the die perimeter in declaration order; package leads sit
/// on a ring `lead_ring_offset_mm` outside the die edge at the matching
/// perimeter fraction.
double max_bond_wire_mm(const ChipDescription& desc);

const char* to_string(ViolationKind k);
const char* to_string(BlockKind k);
const char* to_string(Paradigm p);

// JSON round trip (bit-exact: serialize(parse(s)) == serialize(desc)).
std::string to_json_string(const ChipDescription& desc, int indent = 2);
ChipDescription chip_from_json_string(const std::string& text); // throws BadInput

} // namespace memsoc

#endif // MEMSOC_CHIPDESC_HPP
