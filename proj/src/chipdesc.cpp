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

#include "memsoc/chipdesc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "memsoc/errors.hpp"

namespace memsoc {

using ojson = nlohmann::ordered_json;

const RailSpec* ChipDescription::find_rail(const std::string& name) const {
	for (const auto& r : rails)
		if (r.name == name) return &r;
	return nullptr;
}

int ChipDescription::compute_array_count() const {
	return static_cast<int>(std::count_if(blocks.begin(), blocks.end(), [](const auto& b) {
		return b.kind == BlockKind::ComputeArray;
	}));
}

void ChipDescription::validate_structure() const {
	if (!(die_width_mm > 0.0) || !(die_height_mm > 0.0))
		throw MalformedDescription("die dimensions must be positive");
	if (edge_margin_mm < 0.0)
		throw MalformedDescription("edge margin must be non-negative");
	for (const auto& b : blocks) {
		if (!(b.rect_mm.w > 0.0) || !(b.rect_mm.h > 0.0))
			throw MalformedDescription("degenerate rectangle for block '" + b.name + "'");
		if (!b.rect_mm.inside(0.0, 0.0, die_width_mm, die_height_mm))
			throw MalformedDescription("block '" + b.name + "' leaves the die outline");
		if (b.kind == BlockKind::ComputeArray && !b.compute)
			throw MalformedDescription("compute array '" + b.name + "' lacks its configuration");
		if (b.compute) b.compute->device.validate();
	}
	for (const auto& e : current_entries) {
		if (e.max_current_ma < 0.0)
			throw MalformedDescription("negative current for entry '" + e.block + "'");
		if (!find_rail(e.rail))
			throw MalformedDescription("current entry '" + e.block + "' names unknown rail '" +
			                           e.rail + "'");
	}
	for (const auto& r : rails)
		if (r.declared_pads < 1)
			throw MalformedDescription("rail '" + r.name + "' declares no pads");
	for (const auto& p : io_pads)
		if (p.lane_count < 1)
			throw MalformedDescription("pad group '" + p.name + "' has no lanes");
	if (noc.link_width_bits != 32)
		throw MalformedDescription("the NoC link width is fixed at 32 bits");
	if (noc.clock_hz > 1e9 || !(noc.clock_hz > 0.0))
		throw MalformedDescription("NoC clock must lie in (0, 1 GHz]");
}

// ---------------------------------------------------------------------------
// Reference chip
// ---------------------------------------------------------------------------

namespace {

BlockPlacement make_ca(int id, Paradigm paradigm) {
	// Seven arrays on a 3x3 grid of 1.5 mm pitch starting 0.9 mm from the
	// die edge; 1.3 mm blocks keep everything inside the 0.8 mm keep-out.
	BlockPlacement b;
	b.name = "ca" + std::to_string(id);
	b.kind = BlockKind::ComputeArray;
	b.rect_mm = {0.9 + 1.5 * (id % 3), 0.9 + 1.5 * (id / 3), 1.3, 1.3};
	b.uses_memristors = true;
	ComputeArrayConfig cfg;
	cfg.paradigm = paradigm;
	b.compute = cfg;
	return b;
}

} // namespace

ChipDescription reference_chip() {
	ChipDescription d;
	d.die_width_mm = 6.0;
	d.die_height_mm = 6.0;
	d.edge_margin_mm = 0.8;
	d.bond_wire_max_mm = 3.0;
	d.lead_ring_offset_mm = 1.5;
	d.clock_inputs = 4;
	d.pad_limit_ma = 15.0;
	d.scan_chain_bits = 4096;

	const Paradigm assignment[7] = {Paradigm::CiM, Paradigm::CiM, Paradigm::CAM,
	                                Paradigm::CAM, Paradigm::SNN, Paradigm::SNN,
	                                Paradigm::PC};
	for (int i = 0; i < 7; ++i) d.blocks.push_back(make_ca(i, assignment[i]));
	d.blocks.push_back({"riscv", BlockKind::Processor, {2.4, 3.9, 1.3, 1.3}, false, {}});
	d.blocks.push_back({"shared_sram", BlockKind::SharedSram, {3.9, 3.9, 1.3, 1.3}, false, {}});
	d.blocks.push_back({"noc", BlockKind::Noc, {0.8, 0.45, 4.4, 0.25}, false, {}});
	d.blocks.push_back({"chip_bridge", BlockKind::ChipBridge, {0.8, 5.3, 4.4, 0.25}, false, {}});
	d.blocks.push_back({"padframe", BlockKind::Padframe, {0.0, 0.0, 6.0, 6.0}, false, {}});

	d.rails = {
	    {"VDD_CORE", 0.9, 20, RailPolicy::CurrentLimited, RailKind::Supply,
	     "0.9 V supply of the digital part"},
	    {"VSS_CORE", 0.9, 20, RailPolicy::Declared, RailKind::Ground,
	     "return of the digital part"},
	    {"VDD_CLK", 0.9, 1, RailPolicy::Declared, RailKind::Supply,
	     "0.9 V supply of the clock buffer"},
	    {"VSS_CLK", 0.9, 1, RailPolicy::Declared, RailKind::Ground,
	     "return of the clock buffer"},
	    {"VDD_IO", 3.3, 2, RailPolicy::Declared, RailKind::Supply,
	     "3.3 V supply of the digital padframe section"},
	    {"VSS_IO", 3.3, 2, RailPolicy::Declared, RailKind::Ground,
	     "return of the digital padframe section"},
	    {"VDD_LVDS", 1.4, 13, RailPolicy::Declared, RailKind::Supply,
	     "1.4 V supply of the LVDS drivers"},
	    {"VSS_LVDS", 1.4, 13, RailPolicy::Declared, RailKind::Ground,
	     "return of the LVDS drivers"},
	    {"VDD_ANA", 0.9, 7, RailPolicy::PerBlock, RailKind::Supply,
	     "0.9 V analog supply, one pad per computing array"},
	    {"VSS_ANA", 0.9, 7, RailPolicy::Declared, RailKind::Ground,
	     "return of the analog part"},
	    {"VDDA_ESD", 3.3, 2, RailPolicy::Declared, RailKind::Supply,
	     "3.3 V supply of the analog padframe section"},
	    {"VSSA_ESD", 3.3, 2, RailPolicy::Declared, RailKind::Ground,
	     "return of the analog padframe section"},
	    {"VDDA_EF", 3.3, 7, RailPolicy::PerBlock, RailKind::Supply,
	     "3.3 V forming, SET and RESET supply, one pad per computing array"},
	};

	d.current_entries = {
	    {"VDD_CORE", "SRAM (32 KB) per CA", 7, 18.9, 1e9},
	    {"VDD_CORE", "local controller per CA", 7, 10.0, 1e9},
	    {"VDD_ANA", "analog component per CA", 7, 3.5, 1e8},
	    {"VDD_CORE", "RISC-V", 1, 10.0, 5e8},
	    {"VDD_CORE", "SRAM (2x64 KB)", 1, 51.6, 5e8},
	    {"VDD_CORE", "AXI interface", 1, 2.0, 1e8},
	    {"VDD_CORE", "Network on Chip", 1, 10.0, 1e9},
	    {"VDD_CORE", "Chip Bridge", 1, 10.0, 1e9},
	    {"VDD_LVDS", "Output chip bridge", 1, 95.0, 1e9},
	    {"VDD_CORE", "Input chip bridge", 1, 12.0, 1e8},
	};

	d.io_pads = {
	    {"CLK", PadGroup::Clock, 4, 1e9, PadDirection::In},
	    {"CBTXDAT", PadGroup::LvdsPair, 16, 2e9, PadDirection::Out},
	    {"CBTXADD", PadGroup::LvdsPair, 2, 2e9, PadDirection::Out},
	    {"CBTXVAL", PadGroup::LvdsPair, 1, 2e9, PadDirection::Out},
	    {"CBTXREA", PadGroup::LvdsPair, 1, 2e9, PadDirection::In},
	    {"CBRXDAT", PadGroup::Ttl, 8, 1e8, PadDirection::In},
	    {"CBRXADD", PadGroup::Ttl, 1, 1e8, PadDirection::In},
	    {"CBRXVAL", PadGroup::Ttl, 1, 1e8, PadDirection::In},
	    {"CBRXREA", PadGroup::Ttl, 1, 1e8, PadDirection::Out},
	    {"AXI", PadGroup::Ttl, 15, 1e8, PadDirection::Bidir},
	    {"JTAG", PadGroup::Ttl, 5, 1e7, PadDirection::Bidir},
	    {"INTRPT", PadGroup::Ttl, 2, 0.0, PadDirection::Bidir},
	    {"SCAN_EN", PadGroup::Ttl, 1, 0.0, PadDirection::In},
	    {"TESTAC", PadGroup::AnalogTest, 7, 5e8, PadDirection::Bidir},
	    {"TESTDC", PadGroup::AnalogTest, 7, 0.0, PadDirection::Bidir},
	};

	return d;
}

// ---------------------------------------------------------------------------
// Floorplan validation
// ---------------------------------------------------------------------------

namespace {

struct Point {
	double x, y;
};

// Point at fraction f of the rectangle perimeter, walking counter-clockwise
// from the lower-left corner.
Point perimeter_point(double x0, double y0, double w, double h, double f) {
	double per = 2.0 * (w + h);
	double dist = f * per;
	if (dist < w) return {x0 + dist, y0};
	dist -= w;
	if (dist < h) return {x0 + w, y0 + dist};
	dist -= h;
	if (dist < w) return {x0 + w - dist, y0 + h};
	dist -= w;
	return {x0, y0 + h - dist};
}

double wire_length(const ChipDescription& d, double fraction) {
	Point pad = perimeter_point(0.0, 0.0, d.die_width_mm, d.die_height_mm, fraction);
	double off = d.lead_ring_offset_mm;
	Point lead = perimeter_point(-off, -off, d.die_width_mm + 2 * off,
	                             d.die_height_mm + 2 * off, fraction);
	return std::hypot(pad.x - lead.x, pad.y - lead.y);
}

// Longest wire within a run of pads [first, first+count) out of total pads.
double group_max_wire(const ChipDescription& d, int first, int count, int total) {
	double worst = 0.0;
	for (int i = 0; i < count; ++i) {
		double f = (static_cast<double>(first + i) + 0.5) / static_cast<double>(total);
		worst = std::max(worst, wire_length(d, f));
	}
	return worst;
}

int total_physical_pads(const ChipDescription& d) {
	int n = 0;
	for (const auto& r : d.rails) n += r.declared_pads;
	for (const auto& p : d.io_pads) n += p.physical_pads();
	return n;
}

} // namespace

double max_bond_wire_mm(const ChipDescription& desc) {
	int total = total_physical_pads(desc);
	if (total == 0) return 0.0;
	return group_max_wire(desc, 0, total, total);
}

std::vector<Violation> validate_floorplan(const ChipDescription& desc) {
	if (!(desc.die_width_mm > 0.0) || !(desc.die_height_mm > 0.0))
		throw MalformedDescription("die dimensions must be positive");
	for (const auto& b : desc.blocks)
		if (!(b.rect_mm.w > 0.0) || !(b.rect_mm.h > 0.0))
			throw MalformedDescription("degenerate rectangle for block '" + b.name + "'");

	std::vector<Violation> out;
	bool any_memristor = false;
	double m = desc.edge_margin_mm;
	for (const auto& b : desc.blocks) {
		if (!b.uses_memristors) continue;
		any_memristor = true;
		if (!b.rect_mm.inside(m, m, desc.die_width_mm - m, desc.die_height_mm - m)) {
			std::ostringstream msg;
			msg << "block '" << b.name << "' leaves the centered keep-in square ("
			    << desc.die_width_mm - 2 * m << " x " << desc.die_height_mm - 2 * m << " mm)";
			out.push_back({ViolationKind::OutsideCenterSquare, b.name, msg.str()});
		}
	}
	if (any_memristor && (desc.die_width_mm < 6.0 || desc.die_height_mm < 6.0)) {
		std::ostringstream msg;
		msg << "die " << desc.die_width_mm << " x " << desc.die_height_mm
		    << " mm is below the 6 x 6 mm post-processing minimum";
		out.push_back({ViolationKind::DieTooSmall, "die", msg.str()});
	}

	// Walk the pad ring group by group so a violation names the signal group.
	int total = total_physical_pads(desc);
	int cursor = 0;
	auto check_group = [&](const std::string& name, int count) {
		double worst = group_max_wire(desc, cursor, count, total);
		cursor += count;
		if (worst > desc.bond_wire_max_mm) {
			std::ostringstream msg;
			msg << "pad group '" << name << "' needs a " << worst
			    << " mm bond wire, above the " << desc.bond_wire_max_mm << " mm limit";
			out.push_back({ViolationKind::BondWireTooLong, name, msg.str()});
		}
	};
	if (total > 0) {
		for (const auto& r : desc.rails) check_group(r.name, r.declared_pads);
		for (const auto& p : desc.io_pads) check_group(p.name, p.physical_pads());
	}
	return out;
}

// ---------------------------------------------------------------------------
// Enum names
// ---------------------------------------------------------------------------

const char* to_string(ViolationKind k) {
	switch (k) {
	case ViolationKind::OutsideCenterSquare: return "outside_center_square";
	case ViolationKind::DieTooSmall: return "die_too_small";
	case ViolationKind::BondWireTooLong: return "bond_wire_too_long";
	}
	return "?";
}

const char* to_string(BlockKind k) {
	switch (k) {
	case BlockKind::ComputeArray: return "compute_array";
	case BlockKind::Processor: return "processor";
	case BlockKind::SharedSram: return "shared_sram";
	case BlockKind::Noc: return "noc";
	case BlockKind::ChipBridge: return "chip_bridge";
	case BlockKind::Padframe: return "padframe";
	}
	return "?";
}

const char* to_string(Paradigm p) {
	switch (p) {
	case Paradigm::CiM: return "cim";
	case Paradigm::CAM: return "cam";
	case Paradigm::SNN: return "snn";
	case Paradigm::PC: return "pc";
	}
	return "?";
}

namespace {

BlockKind block_kind_from(const std::string& s) {
	if (s == "compute_array") return BlockKind::ComputeArray;
	if (s == "processor") return BlockKind::Processor;
	if (s == "shared_sram") return BlockKind::SharedSram;
	if (s == "noc") return BlockKind::Noc;
	if (s == "chip_bridge") return BlockKind::ChipBridge;
	if (s == "padframe") return BlockKind::Padframe;
	throw BadInput("unknown block kind '" + s + "'");
}

Paradigm paradigm_from(const std::string& s) {
	if (s == "cim") return Paradigm::CiM;
	if (s == "cam") return Paradigm::CAM;
	if (s == "snn") return Paradigm::SNN;
	if (s == "pc") return Paradigm::PC;
	throw BadInput("unknown paradigm '" + s + "'");
}

const char* to_string(RailPolicy p) {
	switch (p) {
	case RailPolicy::CurrentLimited: return "current_limited";
	case RailPolicy::PerBlock: return "per_block";
	case RailPolicy::Declared: return "declared";
	}
	return "?";
}

RailPolicy rail_policy_from(const std::string& s) {
	if (s == "current_limited") return RailPolicy::CurrentLimited;
	if (s == "per_block") return RailPolicy::PerBlock;
	if (s == "declared") return RailPolicy::Declared;
	throw BadInput("unknown rail policy '" + s + "'");
}

const char* to_string(RailKind k) { return k == RailKind::Supply ? "supply" : "ground"; }

RailKind rail_kind_from(const std::string& s) {
	if (s == "supply") return RailKind::Supply;
	if (s == "ground") return RailKind::Ground;
	throw BadInput("unknown rail kind '" + s + "'");
}

const char* to_string(PadGroup g) {
	switch (g) {
	case PadGroup::Clock: return "clock";
	case PadGroup::LvdsPair: return "lvds_pair";
	case PadGroup::Ttl: return "ttl";
	case PadGroup::AnalogTest: return "analog_test";
	case PadGroup::Supply: return "supply";
	case PadGroup::Ground: return "ground";
	}
	return "?";
}

PadGroup pad_group_from(const std::string& s) {
	if (s == "clock") return PadGroup::Clock;
	if (s == "lvds_pair") return PadGroup::LvdsPair;
	if (s == "ttl") return PadGroup::Ttl;
	if (s == "analog_test") return PadGroup::AnalogTest;
	if (s == "supply") return PadGroup::Supply;
	if (s == "ground") return PadGroup::Ground;
	throw BadInput("unknown pad group '" + s + "'");
}

const char* to_string(PadDirection d) {
	switch (d) {
	case PadDirection::In: return "in";
	case PadDirection::Out: return "out";
	case PadDirection::Bidir: return "bidir";
	}
	return "?";
}

PadDirection pad_direction_from(const std::string& s) {
	if (s == "in") return PadDirection::In;
	if (s == "out") return PadDirection::Out;
	if (s == "bidir") return PadDirection::Bidir;
	throw BadInput("unknown pad direction '" + s + "'");
}

const char* to_string(Topology t) { return t == Topology::Mesh3x3 ? "mesh3x3" : "ring8"; }

Topology topology_from(const std::string& s) {
	if (s == "mesh3x3") return Topology::Mesh3x3;
	if (s == "ring8") return Topology::Ring8;
	throw BadInput("unknown topology '" + s + "'");
}

// ---------------------------------------------------------------------------
// JSON mapping
// ---------------------------------------------------------------------------

ojson device_to_json(const DeviceParams& p) {
	return ojson{{"g_min_us", p.g_min_us},   {"g_max_us", p.g_max_us},
	             {"levels", p.levels},       {"v_form_v", p.v_form_v},
	             {"v_read_max_v", p.v_read_max_v}, {"sigma_rel", p.sigma_rel},
	             {"seed", p.seed}};
}

DeviceParams device_from_json(const ojson& j) {
	DeviceParams p;
	p.g_min_us = j.at("g_min_us").get<double>();
	p.g_max_us = j.at("g_max_us").get<double>();
	p.levels = j.at("levels").get<int>();
	p.v_form_v = j.at("v_form_v").get<double>();
	p.v_read_max_v = j.at("v_read_max_v").get<double>();
	p.sigma_rel = j.at("sigma_rel").get<double>();
	p.seed = j.at("seed").get<std::uint64_t>();
	return p;
}

ojson compute_to_json(const ComputeArrayConfig& c) {
	return ojson{
	    {"paradigm", to_string(c.paradigm)},
	    {"rows", c.rows},
	    {"cols", c.cols},
	    {"dac_bits", c.dac_bits},
	    {"adc_bits", c.adc_bits},
	    {"v_read_v", c.v_read_v},
	    {"digital_clock_hz", c.digital_clock_hz},
	    {"analog_clock_hz", c.analog_clock_hz},
	    {"mvm_pipeline_cycles", c.mvm_pipeline_cycles},
	    {"snn",
	     ojson{{"alpha", c.snn.alpha},
	           {"theta", c.snn.theta},
	           {"v_reset", c.snn.v_reset},
	           {"refractory", c.snn.refractory}}},
	    {"device", device_to_json(c.device)},
	};
}

ComputeArrayConfig compute_from_json(const ojson& j) {
	ComputeArrayConfig c;
	c.paradigm = paradigm_from(j.at("paradigm").get<std::string>());
	c.rows = j.at("rows").get<int>();
	c.cols = j.at("cols").get<int>();
	c.dac_bits = j.at("dac_bits").get<int>();
	c.adc_bits = j.at("adc_bits").get<int>();
	c.v_read_v = j.at("v_read_v").get<double>();
	c.digital_clock_hz = j.at("digital_clock_hz").get<double>();
	c.analog_clock_hz = j.at("analog_clock_hz").get<double>();
	c.mvm_pipeline_cycles = j.at("mvm_pipeline_cycles").get<int>();
	const auto& s = j.at("snn");
	c.snn.alpha = s.at("alpha").get<double>();
	c.snn.theta = s.at("theta").get<double>();
	c.snn.v_reset = s.at("v_reset").get<double>();
	c.snn.refractory = s.at("refractory").get<int>();
	c.device = device_from_json(j.at("device"));
	return c;
}

ojson chip_to_json(const ChipDescription& d) {
	ojson j;
	j["die_width_mm"] = d.die_width_mm;
	j["die_height_mm"] = d.die_height_mm;
	j["edge_margin_mm"] = d.edge_margin_mm;
	j["bond_wire_max_mm"] = d.bond_wire_max_mm;
	j["lead_ring_offset_mm"] = d.lead_ring_offset_mm;
	j["clock_inputs"] = d.clock_inputs;
	j["pad_limit_ma"] = d.pad_limit_ma;
	j["scan_chain_bits"] = d.scan_chain_bits;

	j["blocks"] = ojson::array();
	for (const auto& b : d.blocks) {
		ojson bj{{"name", b.name},
		         {"kind", to_string(b.kind)},
		         {"rect_mm", {b.rect_mm.x, b.rect_mm.y, b.rect_mm.w, b.rect_mm.h}},
		         {"uses_memristors", b.uses_memristors}};
		if (b.compute) bj["compute"] = compute_to_json(*b.compute);
		j["blocks"].push_back(std::move(bj));
	}

	j["rails"] = ojson::array();
	for (const auto& r : d.rails)
		j["rails"].push_back(ojson{{"name", r.name},
		                           {"voltage_v", r.voltage_v},
		                           {"declared_pads", r.declared_pads},
		                           {"policy", to_string(r.policy)},
		                           {"kind", to_string(r.kind)},
		                           {"purpose", r.purpose}});

	j["current_entries"] = ojson::array();
	for (const auto& e : d.current_entries) {
		ojson ej{{"rail", e.rail},
		         {"block", e.block},
		         {"count", e.count},
		         {"max_current_ma", e.max_current_ma}};
		ej["max_clock_hz"] = e.max_clock_hz ? ojson(*e.max_clock_hz) : ojson(nullptr);
		j["current_entries"].push_back(std::move(ej));
	}

	j["io_pads"] = ojson::array();
	for (const auto& p : d.io_pads)
		j["io_pads"].push_back(ojson{{"name", p.name},
		                             {"group", to_string(p.group)},
		                             {"lane_count", p.lane_count},
		                             {"rate_bps_per_line", p.rate_bps_per_line},
		                             {"direction", to_string(p.direction)}});

	j["claims"] = ojson{{"supply_pins", d.claims.supply_pins},
	                    {"ground_pads", d.claims.ground_pads},
	                    {"analog_test_pins", d.claims.analog_test_pins},
	                    {"lvds_pins", d.claims.lvds_pins},
	                    {"lvds_pairs", d.claims.lvds_pairs},
	                    {"ttl_pins", d.claims.ttl_pins},
	                    {"package_external_pins", d.claims.package_external_pins},
	                    {"down_bonds", d.claims.down_bonds}};

	j["noc"] = ojson{{"topology", to_string(d.noc.topology)},
	                 {"router_pipeline_cycles", d.noc.router_pipeline_cycles},
	                 {"link_width_bits", d.noc.link_width_bits},
	                 {"clock_hz", d.noc.clock_hz},
	                 {"fifo_depth", d.noc.fifo_depth}};

	j["bridge"] = ojson{{"tx_lanes", d.bridge.tx_lanes},
	                    {"tx_rate_bps", d.bridge.tx_rate_bps},
	                    {"rx_lanes", d.bridge.rx_lanes},
	                    {"rx_rate_bps", d.bridge.rx_rate_bps},
	                    {"tx_fifo_depth_beats", d.bridge.tx_fifo_depth_beats}};

	j["energy"] = ojson{{"form_pj", d.energy.form_pj},
	                    {"set_pj", d.energy.set_pj},
	                    {"reset_pj", d.energy.reset_pj},
	                    {"idle_fraction", d.energy.idle_fraction}};
	return j;
}

ChipDescription chip_from_json(const ojson& j) {
	ChipDescription d;
	d.die_width_mm = j.at("die_width_mm").get<double>();
	d.die_height_mm = j.at("die_height_mm").get<double>();
	d.edge_margin_mm = j.at("edge_margin_mm").get<double>();
	d.bond_wire_max_mm = j.at("bond_wire_max_mm").get<double>();
	d.lead_ring_offset_mm = j.at("lead_ring_offset_mm").get<double>();
	d.clock_inputs = j.at("clock_inputs").get<int>();
	d.pad_limit_ma = j.at("pad_limit_ma").get<double>();
	d.scan_chain_bits = j.at("scan_chain_bits").get<int>();

	for (const auto& bj : j.at("blocks")) {
		BlockPlacement b;
		b.name = bj.at("name").get<std::string>();
		b.kind = block_kind_from(bj.at("kind").get<std::string>());
		const auto& r = bj.at("rect_mm");
		b.rect_mm = {r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>(),
		             r.at(3).get<double>()};
		b.uses_memristors = bj.at("uses_memristors").get<bool>();
		if (bj.contains("compute")) b.compute = compute_from_json(bj.at("compute"));
		d.blocks.push_back(std::move(b));
	}

	for (const auto& rj : j.at("rails")) {
		RailSpec r;
		r.name = rj.at("name").get<std::string>();
		r.voltage_v = rj.at("voltage_v").get<double>();
		r.declared_pads = rj.at("declared_pads").get<int>();
		r.policy = rail_policy_from(rj.at("policy").get<std::string>());
		r.kind = rail_kind_from(rj.at("kind").get<std::string>());
		r.purpose = rj.at("purpose").get<std::string>();
		d.rails.push_back(std::move(r));
	}

	for (const auto& ej : j.at("current_entries")) {
		CurrentEntry e;
		e.rail = ej.at("rail").get<std::string>();
		e.block = ej.at("block").get<std::string>();
		e.count = ej.at("count").get<int>();
		e.max_current_ma = ej.at("max_current_ma").get<double>();
		if (!ej.at("max_clock_hz").is_null()) e.max_clock_hz = ej.at("max_clock_hz").get<double>();
		d.current_entries.push_back(std::move(e));
	}

	for (const auto& pj : j.at("io_pads")) {
		PadSpec p;
		p.name = pj.at("name").get<std::string>();
		p.group = pad_group_from(pj.at("group").get<std::string>());
		p.lane_count = pj.at("lane_count").get<int>();
		p.rate_bps_per_line = pj.at("rate_bps_per_line").get<double>();
		p.direction = pad_direction_from(pj.at("direction").get<std::string>());
		d.io_pads.push_back(std::move(p));
	}

	const auto& cj = j.at("claims");
	d.claims.supply_pins = cj.at("supply_pins").get<int>();
	d.claims.ground_pads = cj.at("ground_pads").get<int>();
	d.claims.analog_test_pins = cj.at("analog_test_pins").get<int>();
	d.claims.lvds_pins = cj.at("lvds_pins").get<int>();
	d.claims.lvds_pairs = cj.at("lvds_pairs").get<int>();
	d.claims.ttl_pins = cj.at("ttl_pins").get<int>();
	d.claims.package_external_pins = cj.at("package_external_pins").get<int>();
	d.claims.down_bonds = cj.at("down_bonds").get<int>();

	const auto& nj = j.at("noc");
	d.noc.topology = topology_from(nj.at("topology").get<std::string>());
	d.noc.router_pipeline_cycles = nj.at("router_pipeline_cycles").get<int>();
	d.noc.link_width_bits = nj.at("link_width_bits").get<int>();
	d.noc.clock_hz = nj.at("clock_hz").get<double>();
	d.noc.fifo_depth = nj.at("fifo_depth").get<int>();

	const auto& gj = j.at("bridge");
	d.bridge.tx_lanes = gj.at("tx_lanes").get<int>();
	d.bridge.tx_rate_bps = gj.at("tx_rate_bps").get<double>();
	d.bridge.rx_lanes = gj.at("rx_lanes").get<int>();
	d.bridge.rx_rate_bps = gj.at("rx_rate_bps").get<double>();
	d.bridge.tx_fifo_depth_beats = gj.at("tx_fifo_depth_beats").get<int>();

	const auto& ejn = j.at("energy");
	d.energy.form_pj = ejn.at("form_pj").get<double>();
	d.energy.set_pj = ejn.at("set_pj").get<double>();
	d.energy.reset_pj = ejn.at("reset_pj").get<double>();
	d.energy.idle_fraction = ejn.at("idle_fraction").get<double>();
	return d;
}

} // namespace

std::string to_json_string(const ChipDescription& desc, int indent) {
	return chip_to_json(desc).dump(indent) + "\n";
}

ChipDescription chip_from_json_string(const std::string& text) {
	try {
		ojson j = ojson::parse(text);
		ChipDescription d = chip_from_json(j);
		d.validate_structure();
		return d;
	} catch (const nlohmann::json::exception& e) {
		throw BadInput(std::string("chip description: ") + e.what());
	}
}

} // namespace memsoc
