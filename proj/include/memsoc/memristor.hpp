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

#ifndef MEMSOC_MEMRISTOR_HPP
#define MEMSOC_MEMRISTOR_HPP

#include <cstdint>

#include "memsoc/rng.hpp"

namespace memsoc {

/// Behavioral parameters of one memristive device. The conductance window
/// [g_min, g_max] is divided into `levels` equally spaced targets; writes
/// land on the target perturbed by a seeded relative Gaussian of sigma_rel.
struct DeviceParams {
	double g_min_us = 10.0;   // low conductance state, microsiemens
	double g_max_us = 100.0;  // high conductance state, microsiemens
	int levels = 16;          // programmable conductance levels (>= 2)
	double v_form_v = 3.0;    // electroforming threshold
	double v_read_max_v = 0.9; // largest non-disturbing read voltage
	double sigma_rel = 0.0;   // relative write variability (0 <= s < 0.5)
	std::uint64_t seed = 0;   // base seed for the variability streams

	/// Nominal conductance of level k (no variability applied).
	double level_conductance_us(int k) const {
		return g_min_us + static_cast<double>(k) * (g_max_us - g_min_us) /
		                      static_cast<double>(levels - 1);
	}

	void validate() const; // throws MalformedDescription
};

enum class DevicePhase { Virgin, Formed };

/// Value-type device state. Operations return new states; the caller owns
/// sequencing and the per-device noise stream.
struct DeviceState {
	DevicePhase phase = DevicePhase::Virgin;
	int level = 0;
	double g_us = 0.0;
	std::uint64_t cycles = 0; // completed program (SET/RESET) operations
};

/// Counts of energy-relevant device events, accumulated by the caller and
/// priced by the budget module (all on the 3.3 V forming/programming rail).
struct DeviceEvents {
	std::uint64_t form_events = 0;
	std::uint64_t set_events = 0;
	std::uint64_t reset_events = 0;
};

/// One-time electroforming gate. A virgin device becomes Formed at level 0
/// if the applied voltage reaches the forming threshold.
/// Throws VoltageTooLow below threshold and AlreadyFormed on a formed part.
DeviceState form(const DeviceState& state, double v, const DeviceParams& params,
                 RngStream& noise, DeviceEvents* events = nullptr);

/// Program the device to level k: linear conductance target plus seeded
/// relative Gaussian perturbation, clamped to the device window.
/// Throws NotFormed / LevelOutOfRange.
DeviceState set_level(const DeviceState& state, int k, const DeviceParams& params,
                      RngStream& noise, DeviceEvents* events = nullptr);

/// RESET is programming back to the lowest level.
DeviceState reset_device(const DeviceState& state, const DeviceParams& params,
                         RngStream& noise, DeviceEvents* events = nullptr);

/// Ohmic read: current in microamperes for a read voltage within the
/// non-disturbing window. Throws NotFormed / ReadVoltageTooHigh.
double read_current_ua(const DeviceState& state, double v, const DeviceParams& params);

/// Stochastic read bit: 1 with probability (g - g_min)/(g_max - g_min),
/// deterministic given the stream's key and counter. Throws NotFormed.
int sample_bernoulli(const DeviceState& state, const DeviceParams& params,
                     RngStream& stream);

} // namespace memsoc

#endif // MEMSOC_MEMRISTOR_HPP
