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

#include <doctest.h>

#include <algorithm>

#include "memsoc/chipdesc.hpp"
#include "memsoc/errors.hpp"
#include "memsoc/rng.hpp"

using namespace memsoc;

namespace {

int count_kind(const std::vector<Violation>& v, ViolationKind k) {
	return static_cast<int>(
	    std::count_if(v.begin(), v.end(), [&](const auto& x) { return x.kind == k; }));
}

} // namespace

TEST_CASE("reference chip transcribes the supply and interface tables") {
	ChipDescription d = reference_chip();
	d.validate_structure();

	const RailSpec* core = d.find_rail("VDD_CORE");
	REQUIRE(core != nullptr);
	CHECK(core->declared_pads == 20);
	CHECK(core->voltage_v == doctest::Approx(0.9));

	const RailSpec* lvds = d.find_rail("VDD_LVDS");
	REQUIRE(lvds != nullptr);
	CHECK(lvds->declared_pads == 13);
	CHECK(lvds->voltage_v == doctest::Approx(1.4));

	// the LVDS output-driver row of the current table
	bool found = false;
	for (const auto& e : d.current_entries) {
		if (e.rail == "VDD_LVDS") {
			found = true;
			CHECK(e.max_current_ma == doctest::Approx(95.0));
			CHECK(*e.max_clock_hz == doctest::Approx(1e9));
		}
	}
	CHECK(found);

	CHECK(d.die_width_mm == doctest::Approx(6.0));
	CHECK(d.die_height_mm == doctest::Approx(6.0));
	CHECK(d.edge_margin_mm == doctest::Approx(0.8));
	CHECK(d.bond_wire_max_mm == doctest::Approx(3.0));
	CHECK(d.clock_inputs == 4);
	CHECK(d.compute_array_count() == 7);
	for (const auto& b : d.blocks)
		if (b.kind == BlockKind::ComputeArray) CHECK(b.uses_memristors);

	// voltages restricted to the three technology domains
	for (const auto& r : d.rails) {
		bool ok = r.voltage_v == 0.9 || r.voltage_v == 1.4 || r.voltage_v == 3.3;
		CHECK(ok);
	}
}

TEST_CASE("reference floorplan is compliant") {
	CHECK(validate_floorplan(reference_chip()).empty());
}

TEST_CASE("memristor block near the edge breaks the keep-in rule") {
	ChipDescription d = reference_chip();
	for (auto& b : d.blocks) {
		if (b.name == "ca0") b.rect_mm.x = 0.5; // inside 0.8 mm of the edge
	}
	auto v = validate_floorplan(d);
	REQUIRE(v.size() == 1);
	CHECK(v[0].kind == ViolationKind::OutsideCenterSquare);
	CHECK(v[0].subject == "ca0");
}

TEST_CASE("die below 6x6 with memristors is rejected") {
	ChipDescription d = reference_chip();
	d.die_width_mm = 5.0;
	d.die_height_mm = 5.0;
	// keep all blocks inside the new center square so only the die rule fires
	double scale = 3.4 / 4.4;
	for (auto& b : d.blocks) {
		b.rect_mm.x = 0.8 + (b.rect_mm.x - 0.8) * scale;
		b.rect_mm.y = 0.8 + (b.rect_mm.y - 0.8) * scale;
		b.rect_mm.w *= scale;
		b.rect_mm.h *= scale;
	}
	auto v = validate_floorplan(d);
	CHECK(count_kind(v, ViolationKind::DieTooSmall) == 1);
	CHECK(count_kind(v, ViolationKind::OutsideCenterSquare) == 0);
}

TEST_CASE("long bond wires are flagged per pad group") {
	ChipDescription d = reference_chip();
	CHECK(max_bond_wire_mm(d) <= d.bond_wire_max_mm);
	d.lead_ring_offset_mm = 3.5; // every wire now exceeds 3 mm
	auto v = validate_floorplan(d);
	CHECK(!v.empty());
	for (const auto& x : v) CHECK(x.kind == ViolationKind::BondWireTooLong);
}

TEST_CASE("degenerate rectangles are malformed, not violations") {
	ChipDescription d = reference_chip();
	d.blocks[0].rect_mm.w = 0.0;
	CHECK_THROWS_AS(validate_floorplan(d), MalformedDescription);
}

TEST_CASE("validate_floorplan is pure") {
	ChipDescription d = reference_chip();
	d.blocks[2].rect_mm.x = 0.1;
	auto a = validate_floorplan(d);
	auto b = validate_floorplan(d);
	REQUIRE(a.size() == b.size());
	for (std::size_t i = 0; i < a.size(); ++i) {
		CHECK(a[i].kind == b[i].kind);
		CHECK(a[i].subject == b[i].subject);
		CHECK(a[i].detail == b[i].detail);
	}
}

TEST_CASE("shrinking the die below margin plus extent always violates") {
	RngStream rng(2024);
	for (int trial = 0; trial < 200; ++trial) {
		ChipDescription d = reference_chip();
		d.blocks.clear();
		// one random memristor block
		double w = 0.5 + rng.next_u01() * 2.0;
		double h = 0.5 + rng.next_u01() * 2.0;
		double extent = std::max(w, h);
		// die too small to host margin + extent on at least one axis
		double die = 2.0 * d.edge_margin_mm + extent - 0.05 - rng.next_u01();
		die = std::max(die, std::max(w, h) + 0.01); // block still inside the die
		d.die_width_mm = die;
		d.die_height_mm = die;
		double x = rng.next_u01() * (die - w);
		double y = rng.next_u01() * (die - h);
		BlockPlacement b{"dut", BlockKind::ComputeArray, {x, y, w, h}, true, {}};
		b.compute = ComputeArrayConfig{};
		d.blocks.push_back(b);
		auto v = validate_floorplan(d);
		CHECK(!v.empty());
	}
}

TEST_CASE("chip description round-trips through JSON bit-exactly") {
	ChipDescription ref = reference_chip();
	std::string text = to_json_string(ref);
	ChipDescription parsed = chip_from_json_string(text);
	CHECK(to_json_string(parsed) == text);

	// and the parse really is structural, not textual
	CHECK(parsed.blocks.size() == ref.blocks.size());
	CHECK(parsed.rails.size() == ref.rails.size());
	CHECK(parsed.current_entries.size() == ref.current_entries.size());
	CHECK(parsed.io_pads.size() == ref.io_pads.size());
	CHECK(parsed.claims.package_external_pins == ref.claims.package_external_pins);
}

TEST_CASE("bad JSON reports BadInput") {
	CHECK_THROWS_AS(chip_from_json_string("{"), BadInput);
	CHECK_THROWS_AS(chip_from_json_string("{\"die_width_mm\": 6.0}"), BadInput);
}

TEST_CASE("current entries must name existing rails") {
	ChipDescription d = reference_chip();
	d.current_entries.push_back({"VDD_NOPE", "ghost", 1, 1.0, 1e9});
	CHECK_THROWS_AS(d.validate_structure(), MalformedDescription);
}
