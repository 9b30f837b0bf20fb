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

#ifndef MEMSOC_RNG_HPP
#define MEMSOC_RNG_HPP

#include <cmath>
#include <cstdint>

namespace memsoc {

/// splitmix64 step (Steele/Lea/Flood). Used both as a generator and as a
/// mixing function to derive independent stream keys.
inline std::uint64_t splitmix64(std::uint64_t x) {
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
	return splitmix64(a ^ splitmix64(b));
}

/// Counter-based random stream: every draw is a pure function of
/// (key, counter), so simulation state can be copied or replayed and
/// still produce identical sequences. No libc/libstdc++ distribution
/// objects are involved, keeping results stable across toolchains.
struct RngStream {
	std::uint64_t key = 0;
	std::uint64_t counter = 0;

	explicit RngStream(std::uint64_t k = 0) : key(k) {}

	std::uint64_t next_u64() { return mix64(key, counter++); }

	/// Uniform in [0, 1) with 53 random mantissa bits.
	double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

	bool next_bernoulli(double p) { return next_u01() < p; }

	/// Standard normal via Box-Muller; consumes two draws.
	double next_gaussian() {
		double u1 = next_u01();
		double u2 = next_u01();
		// guard log(0)
		if (u1 <= 0.0) u1 = 0x1.0p-53;
		constexpr double two_pi = 6.283185307179586476925286766559;
		return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
	}

	/// Uniform integer in [0, n).
	std::uint64_t next_below(std::uint64_t n) { return n ? next_u64() % n : 0; }
};

} // namespace memsoc

#endif // MEMSOC_RNG_HPP
