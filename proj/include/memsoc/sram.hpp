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

#ifndef MEMSOC_SRAM_HPP
#define MEMSOC_SRAM_HPP

#include <cstdint>
#include <map>
#include <vector>

namespace memsoc {

/// Byte-addressed memory with injectable single-bit stuck-at faults. Faults
/// act on the read path, the way a defective cell looks to the logic.
class SramModel {
public:
	explicit SramModel(std::size_t bytes) : mem_(bytes, 0) {}

	std::size_t size() const { return mem_.size(); }

	std::uint8_t read(std::size_t addr) const {
		std::uint8_t v = mem_.at(addr);
		auto it = faults_.find(addr);
		if (it != faults_.end()) v = (v & ~it->second.mask) | it->second.bits;
		return v;
	}

	void write(std::size_t addr, std::uint8_t value) { mem_.at(addr) = value; }

	/// Force one bit to read as `value` regardless of writes.
	void inject_stuck_at(std::size_t addr, int bit, bool value) {
		Fault& f = faults_[addr];
		std::uint8_t m = static_cast<std::uint8_t>(1u << bit);
		f.mask |= m;
		if (value)
			f.bits |= m;
		else
			f.bits &= static_cast<std::uint8_t>(~m);
	}

	void clear_faults() { faults_.clear(); }

private:
	struct Fault {
		std::uint8_t mask = 0; // stuck bits
		std::uint8_t bits = 0; // their forced values
	};
	std::vector<std::uint8_t> mem_;
	std::map<std::size_t, Fault> faults_;
};

} // namespace memsoc

#endif // MEMSOC_SRAM_HPP
