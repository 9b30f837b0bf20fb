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

#ifndef MEMSOC_CONTROL_HPP
#define MEMSOC_CONTROL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memsoc/sram.hpp"

namespace memsoc {

// ---------------------------------------------------------------------------
// Dual-bank register file
// ---------------------------------------------------------------------------

/// Register map (identical in both banks, all registers reset to 0):
///   0x01        inbound stream routing: 4-bit fields per TX stream address,
///               value 0 = processor node, otherwise field-1 = node id
///   0x02        TTL receive routing: 4-bit fields per RX address bit,
///               same encoding
///   0x10 + i    clock divider of computing array i (0 treated as 1)
///   0x18        computing-array enable mask (0 treated as all enabled)
///   0x20        sequencer clock divider (0 treated as 2, the 500 MHz core)
class RegisterFile {
public:
	static constexpr std::uint32_t kAddressLimit = 0x40;
	static constexpr std::uint32_t kInboundRoute = 0x01;
	static constexpr std::uint32_t kTtlRxRoute = 0x02;
	static constexpr std::uint32_t kCaClkDivBase = 0x10;
	static constexpr std::uint32_t kCaEnable = 0x18;
	static constexpr std::uint32_t kSeqClkDiv = 0x20;

	void write(int bank, std::uint32_t addr, std::uint32_t value); // throws BadAddress
	std::uint32_t read(int bank, std::uint32_t addr) const;        // throws BadAddress

	int active_bank() const { return active_bank_; }
	void select_bank(int bank) { active_bank_ = bank ? 1 : 0; }

	/// Read from the currently active bank.
	std::uint32_t active(std::uint32_t addr) const { return read(active_bank_, addr); }

private:
	void check(int bank, std::uint32_t addr) const;
	std::array<std::array<std::uint32_t, kAddressLimit>, 2> banks_{};
	int active_bank_ = 0;
};

// ---------------------------------------------------------------------------
// Interrupts
// ---------------------------------------------------------------------------

enum class IrqCause { Ready, SoftError };

struct IrqEvent {
	std::uint64_t cycle;
	std::string source;
	IrqCause cause;
};

const char* to_string(IrqCause c);

// ---------------------------------------------------------------------------
// Memory built-in self test
// ---------------------------------------------------------------------------

struct MbistResult {
	bool pass = true;
	std::optional<std::size_t> first_fault_addr;
	std::size_t addresses = 0;
	std::uint64_t reads = 0;
	std::uint64_t writes = 0;
};

/// March C- over byte addresses with the 0x00/0xFF data pair:
/// up(w0); up(r0,w1); up(r1,w0); down(r0,w1); down(r1,w0); down(r0).
/// Detects every single stuck-at bit.
MbistResult march_cminus(SramModel& mem);

// ---------------------------------------------------------------------------
// Scan chain model
// ---------------------------------------------------------------------------

struct ScanResult {
	bool pass = true;
	double coverage = 0.0;               // fraction of verified shift positions
	std::optional<std::size_t> first_mismatch; // output index of first bad bit
	std::optional<std::size_t> inferred_break; // chain position implied by it
};

/// Chain of scan flip-flops. A seeded pseudo-random pattern is shifted
/// through and the exit stream compared against the delayed input.
class ScanChain {
public:
	explicit ScanChain(std::size_t bits);

	void set_enable(bool on) { enabled_ = on; }
	bool enabled() const { return enabled_; }
	std::size_t length() const { return chain_.size(); }

	/// Break the chain at position k: the cell output is stuck at 1.
	void break_at(std::size_t k);
	void clear_faults();

	ScanResult check(std::uint64_t seed); // throws ScanDisabled when enable low

private:
	bool shift(bool in); // returns the bit falling off the end
	std::vector<std::uint8_t> chain_;
	std::optional<std::size_t> break_pos_;
	bool enabled_ = false;
};

// ---------------------------------------------------------------------------
// Sequencer (scripted processor abstraction)
// ---------------------------------------------------------------------------

enum class SeqOp {
	WriteReg,
	ReadReg,
	SendNoC,
	AwaitNoC,
	RunCA,
	WaitIrq,
	RaiseIrqOut,
	Halt,
};

struct SeqInstruction {
	SeqOp op = SeqOp::Halt;
	int bank = 0;              // WriteReg / ReadReg
	std::uint32_t addr = 0;    // WriteReg / ReadReg
	std::uint32_t value = 0;   // WriteReg
	int dst = 0;               // SendNoC
	std::uint32_t payload = 0; // SendNoC
	int ca = 0;                // RunCA
	IrqCause cause = IrqCause::Ready; // RaiseIrqOut
};

enum class SeqStatus { Completed, TimedOut };

struct SeqTraceEntry {
	std::uint64_t cycle;
	std::size_t instr_index;
	SeqOp op;
	std::uint32_t result; // read value / received word / sent word
};

struct SequencerTrace {
	SeqStatus status = SeqStatus::Completed;
	std::vector<SeqTraceEntry> entries;
};

const char* to_string(SeqOp op);

} // namespace memsoc

#endif // MEMSOC_CONTROL_HPP
