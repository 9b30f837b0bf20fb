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

#include <cmath>

#include "memsoc/errors.hpp"
#include "memsoc/memristor.hpp"

using namespace memsoc;

namespace {

DeviceParams params_4level() {
	DeviceParams p;
	p.g_min_us = 10.0;
	p.g_max_us = 100.0;
	p.levels = 4;
	p.sigma_rel = 0.0;
	return p;
}

DeviceState formed(const DeviceParams& p, RngStream& rng) {
	return form(DeviceState{}, p.v_form_v, p, rng);
}

// independent linear-interpolation oracle for the level map
double level_oracle(const DeviceParams& p, int k) {
	return p.g_min_us + k * (p.g_max_us - p.g_min_us) / (p.levels - 1);
}

} // namespace

TEST_CASE("forming gates every compute operation") {
	DeviceParams p = params_4level();
	RngStream rng(1);

	DeviceState virgin;
	CHECK_THROWS_AS(set_level(virgin, 1, p, rng), NotFormed);
	CHECK_THROWS_AS(read_current_ua(virgin, 0.2, p), NotFormed);
	CHECK_THROWS_AS(sample_bernoulli(virgin, p, rng), NotFormed);

	CHECK_THROWS_AS(form(virgin, 0.9, p, rng), VoltageTooLow);
	CHECK_THROWS_AS(form(virgin, 2.999, p, rng), VoltageTooLow);

	DeviceState d = form(virgin, 3.0, p, rng);
	CHECK(d.phase == DevicePhase::Formed);
	CHECK(d.level == 0);
	CHECK(d.g_us == doctest::Approx(p.g_min_us));
	CHECK_THROWS_AS(form(d, 3.3, p, rng), AlreadyFormed);
}

TEST_CASE("level map is the linear interpolation oracle at sigma 0") {
	DeviceParams p = params_4level();
	RngStream rng(2);
	DeviceState d = formed(p, rng);

	// levels=4, window [10, 100]: k=1 lands on 10 + 1*30 = 40
	d = set_level(d, 1, p, rng);
	CHECK(d.g_us == doctest::Approx(40.0));
	d = set_level(d, p.levels - 1, p, rng);
	CHECK(d.g_us == doctest::Approx(p.g_max_us));
	d = set_level(d, 0, p, rng);
	CHECK(d.g_us == doctest::Approx(p.g_min_us));

	for (int k = 0; k < p.levels; ++k) {
		d = set_level(d, k, p, rng);
		CHECK(d.g_us == doctest::Approx(level_oracle(p, k)));
	}
	CHECK_THROWS_AS(set_level(d, p.levels, p, rng), LevelOutOfRange);
	CHECK_THROWS_AS(set_level(d, -1, p, rng), LevelOutOfRange);
}

TEST_CASE("program cycles count and reset is level 0") {
	DeviceParams p = params_4level();
	RngStream rng(3);
	DeviceState d = formed(p, rng);
	DeviceEvents ev;
	d = set_level(d, 2, p, rng, &ev);
	d = reset_device(d, p, rng, &ev);
	CHECK(d.level == 0);
	CHECK(d.cycles == 2);
	CHECK(ev.set_events == 1);
	CHECK(ev.reset_events == 1);
}

TEST_CASE("ohmic read") {
	DeviceParams p = params_4level();
	RngStream rng(4);
	DeviceState d = formed(p, rng);
	d = set_level(d, p.levels - 1, p, rng); // 100 uS
	CHECK(read_current_ua(d, 0.2, p) == doctest::Approx(20.0));
	CHECK(read_current_ua(d, 0.0, p) == doctest::Approx(0.0));
	CHECK_THROWS_AS(read_current_ua(d, 1.2, p), ReadVoltageTooHigh);
	CHECK_THROWS_AS(read_current_ua(d, -1.0, p), ReadVoltageTooHigh);
}

TEST_CASE("conductance stays inside the window under random programs") {
	DeviceParams p = params_4level();
	p.levels = 16;
	p.sigma_rel = 0.3;
	RngStream rng(5);
	RngStream ops(6);
	DeviceState d = formed(p, rng);
	for (int i = 0; i < 5000; ++i) {
		int k = static_cast<int>(ops.next_below(p.levels));
		d = set_level(d, k, p, rng);
		CHECK(d.g_us >= p.g_min_us);
		CHECK(d.g_us <= p.g_max_us);
	}
}

TEST_CASE("writes are deterministic in (seed, draw index)") {
	DeviceParams p = params_4level();
	p.sigma_rel = 0.1;
	RngStream a(42), b(42);
	DeviceState da = formed(p, a);
	DeviceState db = formed(p, b);
	for (int k : {1, 3, 2, 0, 3}) {
		da = set_level(da, k, p, a);
		db = set_level(db, k, p, b);
		CHECK(da.g_us == db.g_us);
	}
}

TEST_CASE("bernoulli endpoints and midpoint statistics") {
	DeviceParams p = params_4level();
	RngStream rng(7);
	DeviceState d = formed(p, rng);

	d = set_level(d, 0, p, rng); // g = g_min -> p = 0
	for (int i = 0; i < 100; ++i) CHECK(sample_bernoulli(d, p, rng) == 0);

	d = set_level(d, p.levels - 1, p, rng); // g = g_max -> p = 1
	for (int i = 0; i < 100; ++i) CHECK(sample_bernoulli(d, p, rng) == 1);

	// p = 0.5 via g = 55 uS on [10, 100]: binomial 3-sigma bound at n = 10000
	DeviceParams p2 = params_4level();
	p2.levels = 10; // 10 uS steps: level 5 -> 60... use direct state instead
	DeviceState mid = d;
	mid.g_us = 0.5 * (p.g_min_us + p.g_max_us);
	int ones = 0;
	const int n = 10000;
	for (int i = 0; i < n; ++i) ones += sample_bernoulli(mid, p, rng);
	double mean = static_cast<double>(ones) / n;
	CHECK(mean > 0.485);
	CHECK(mean < 0.515);
}
