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

#include "memsoc/memristor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "memsoc/errors.hpp"

namespace memsoc {

void DeviceParams::validate() const {
	if (!(g_min_us > 0.0) || !(g_min_us < g_max_us))
		throw MalformedDescription("device conductance window requires 0 < g_min < g_max");
	if (levels < 2)
		throw MalformedDescription("device needs at least 2 conductance levels");
	if (sigma_rel < 0.0 || sigma_rel >= 0.5)
		throw MalformedDescription("sigma_rel must lie in [0, 0.5)");
	if (!(v_form_v > 0.0) || !(v_read_max_v > 0.0))
		throw MalformedDescription("device voltages must be positive");
}

namespace {

double perturbed_conductance(double nominal, const DeviceParams& p, RngStream& noise) {
	double g = nominal;
	if (p.sigma_rel > 0.0) {
		g = nominal * (1.0 + p.sigma_rel * noise.next_gaussian());
	}
	return std::clamp(g, p.g_min_us, p.g_max_us);
}

} // namespace

DeviceState form(const DeviceState& state, double v, const DeviceParams& params,
                 RngStream& noise, DeviceEvents* events) {
	if (state.phase == DevicePhase::Formed)
		throw AlreadyFormed("device is already formed");
	if (v < params.v_form_v)
		throw VoltageTooLow("forming voltage " + std::to_string(v) + " V below threshold " +
		                    std::to_string(params.v_form_v) + " V");
	DeviceState out = state;
	out.phase = DevicePhase::Formed;
	out.level = 0;
	out.g_us = perturbed_conductance(params.g_min_us, params, noise);
	if (events) events->form_events++;
	return out;
}

DeviceState set_level(const DeviceState& state, int k, const DeviceParams& params,
                      RngStream& noise, DeviceEvents* events) {
	if (state.phase != DevicePhase::Formed)
		throw NotFormed("SET on a virgin device");
	if (k < 0 || k >= params.levels)
		throw LevelOutOfRange("level " + std::to_string(k) + " outside [0, " +
		                      std::to_string(params.levels - 1) + "]");
	DeviceState out = state;
	out.level = k;
	out.g_us = perturbed_conductance(params.level_conductance_us(k), params, noise);
	out.cycles = state.cycles + 1;
	if (events) {
		if (k == 0)
			events->reset_events++;
		else
			events->set_events++;
	}
	return out;
}

DeviceState reset_device(const DeviceState& state, const DeviceParams& params,
                         RngStream& noise, DeviceEvents* events) {
	return set_level(state, 0, params, noise, events);
}

double read_current_ua(const DeviceState& state, double v, const DeviceParams& params) {
	if (state.phase != DevicePhase::Formed)
		throw NotFormed("read on a virgin device");
	if (std::abs(v) > params.v_read_max_v)
		throw ReadVoltageTooHigh("read voltage " + std::to_string(v) +
		                         " V would disturb the device state");
	return state.g_us * v; // uS * V = uA
}

int sample_bernoulli(const DeviceState& state, const DeviceParams& params,
                     RngStream& stream) {
	if (state.phase != DevicePhase::Formed)
		throw NotFormed("stochastic read on a virgin device");
	double p = (state.g_us - params.g_min_us) / (params.g_max_us - params.g_min_us);
	return stream.next_bernoulli(p) ? 1 : 0;
}

} // namespace memsoc
