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

#include "memsoc/control.hpp"

#include "memsoc/errors.hpp"
#include "memsoc/rng.hpp"

namespace memsoc {

// ---------------------------------------------------------------------------
// RegisterFile
// ---------------------------------------------------------------------------

void RegisterFile::check(int bank, std::uint32_t addr) const {
	if (bank != 0 && bank != 1) throw BadAddress("bank must be 0 or 1");
	if (addr >= kAddressLimit)
		throw BadAddress("register address 0x" + std::to_string(addr) + " outside the map");
}

void RegisterFile::write(int bank, std::uint32_t addr, std::uint32_t value) {
	check(bank, addr);
	banks_[bank][addr] = value;
}

std::uint32_t RegisterFile::read(int bank, std::uint32_t addr) const {
	check(bank, addr);
	return banks_[bank][addr];
}

const char* to_string(IrqCause c) { return c == IrqCause::Ready ? "ready" : "soft_error"; }

// ---------------------------------------------------------------------------
// March C-
// ---------------------------------------------------------------------------

MbistResult march_cminus(SramModel& mem) {
	MbistResult res;
	res.addresses = mem.size();
	const std::uint8_t d0 = 0x00, d1 = 0xFF;
	const std::size_t n = mem.size();

	auto fail_at = [&](std::size_t addr) {
		if (!res.first_fault_addr) res.first_fault_addr = addr;
		res.pass = false;
	};
	auto read_expect = [&](std::size_t addr, std::uint8_t expect) {
		res.reads++;
		if (mem.read(addr) != expect) fail_at(addr);
	};
	auto write_val = [&](std::size_t addr, std::uint8_t v) {
		res.writes++;
		mem.write(addr, v);
	};

	for (std::size_t a = 0; a < n; ++a) write_val(a, d0);                    // up(w0)
	for (std::size_t a = 0; a < n; ++a) { read_expect(a, d0); write_val(a, d1); } // up(r0,w1)
	for (std::size_t a = 0; a < n; ++a) { read_expect(a, d1); write_val(a, d0); } // up(r1,w0)
	for (std::size_t a = n; a-- > 0;) { read_expect(a, d0); write_val(a, d1); }   // down(r0,w1)
	for (std::size_t a = n; a-- > 0;) { read_expect(a, d1); write_val(a, d0); }   // down(r1,w0)
	for (std::size_t a = n; a-- > 0;) read_expect(a, d0);                         // down(r0)
	return res;
}

// ---------------------------------------------------------------------------
// ScanChain
// ---------------------------------------------------------------------------

ScanChain::ScanChain(std::size_t bits) : chain_(bits, 0) {
	if (bits == 0) throw MalformedDescription("scan chain needs at least one bit");
}

void ScanChain::break_at(std::size_t k) {
	if (k >= chain_.size()) throw BadAddress("break position outside the chain");
	break_pos_ = k;
}

void ScanChain::clear_faults() { break_pos_ = std::nullopt; }

bool ScanChain::shift(bool in) {
	bool out = chain_.back() != 0;
	for (std::size_t i = chain_.size() - 1; i > 0; --i) chain_[i] = chain_[i - 1];
	chain_[0] = in ? 1 : 0;
	if (break_pos_) chain_[*break_pos_] = 1; // cell output stuck at 1
	return out;
}

ScanResult ScanChain::check(std::uint64_t seed) {
	if (!enabled_) throw ScanDisabled("SCAN_EN is low");
	const std::size_t n = chain_.size();
	std::fill(chain_.begin(), chain_.end(), 0);
	if (break_pos_) chain_[*break_pos_] = 1;

	RngStream prbs(mix64(seed, 0x5343414e)); // "SCAN"
	std::vector<std::uint8_t> pattern(2 * n);
	for (auto& b : pattern) b = prbs.next_u64() & 1;

	ScanResult res;
	std::size_t verified = 0, correct = 0;
	for (std::size_t t = 0; t < 2 * n; ++t) {
		bool out = shift(pattern[t] != 0);
		// first n outputs drain the zero preload, then the pattern reappears
		bool expect = t < n ? false : pattern[t - n] != 0;
		verified++;
		if (out == expect) {
			correct++;
		} else if (!res.first_mismatch) {
			res.first_mismatch = t;
			// a break at position k first corrupts the drain bit that left
			// cell k, which exits after n-1-k shifts
			if (t < n) res.inferred_break = n - 1 - t;
		}
	}
	res.coverage = static_cast<double>(correct) / static_cast<double>(verified);
	res.pass = correct == verified;
	return res;
}

// ---------------------------------------------------------------------------
// Names
// ---------------------------------------------------------------------------

const char* to_string(SeqOp op) {
	switch (op) {
	case SeqOp::WriteReg: return "write_reg";
	case SeqOp::ReadReg: return "read_reg";
	case SeqOp::SendNoC: return "send_noc";
	case SeqOp::AwaitNoC: return "await_noc";
	case SeqOp::RunCA: return "run_ca";
	case SeqOp::WaitIrq: return "wait_irq";
	case SeqOp::RaiseIrqOut: return "raise_irq_out";
	case SeqOp::Halt: return "halt";
	}
	return "?";
}

} // namespace memsoc
