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

#ifndef MEMSOC_ARRAYS_HPP
#define MEMSOC_ARRAYS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memsoc/chipdesc.hpp"
#include "memsoc/memristor.hpp"
#include "memsoc/sram.hpp"

namespace memsoc {

constexpr std::size_t kCaSramBytes = 32768;

/// Grid of memristive devices with per-device deterministic noise streams.
/// Device (r, c) sits at index r*cols + c.
class Crossbar {
public:
	Crossbar(int rows, int cols, const DeviceParams& params, std::uint64_t stream_key);

	int rows() const { return rows_; }
	int cols() const { return cols_; }
	const DeviceParams& params() const { return params_; }
	const DeviceState& device(int r, int c) const { return devices_[index(r, c)]; }
	const DeviceEvents& events() const { return events_; }

	/// Electroform every device (applied voltage must clear the threshold).
	void form_all(double v);

	void set_device_level(int r, int c, int level);
	int sample_device(int r, int c); // Bernoulli bit from device (r, c)

	/// Column currents in microamperes for per-row read voltages.
	std::vector<double> column_currents_ua(const std::vector<double>& row_voltages) const;

	void require_all_formed() const; // throws NotFormed with the first offender

private:
	std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }

	int rows_;
	int cols_;
	DeviceParams params_;
	std::vector<DeviceState> devices_;
	std::vector<RngStream> streams_;
	DeviceEvents events_;
};

/// One of the seven computing arrays: crossbar, mixed-signal interface,
/// 32 KB local memory and one of the four operating paradigms.
class ComputeArray {
public:
	ComputeArray(int id, const ComputeArrayConfig& cfg, std::uint64_t chip_seed);

	int id() const { return id_; }
	Paradigm paradigm() const { return cfg_.paradigm; }
	const ComputeArrayConfig& config() const { return cfg_; }
	Crossbar& crossbar() { return xbar_; }
	const Crossbar& crossbar() const { return xbar_; }

	std::uint64_t analog_cycles() const { return analog_cycles_; }
	std::uint64_t digital_cycles() const { return digital_cycles_; }
	std::uint64_t sram_access_cycles() const { return sram_access_cycles_; }

	// --- programming -------------------------------------------------------
	/// Program the whole crossbar from a rows x cols grid of level indices.
	/// Throws ShapeMismatch / NotFormed / LevelOutOfRange.
	void program_matrix(const std::vector<std::vector<int>>& levels);

	// --- paradigm operations ------------------------------------------------
	/// Analog matrix-vector product: DAC codes in, ADC codes out.
	/// Column current I_j = sum_i G_ij * V(x_i), quantized against the
	/// full-scale current rows * g_max * v_read.
	std::vector<int> cim_mvm(const std::vector<int>& dac_codes);

	/// Store a ternary word; each symbol occupies a complementary device pair
	/// (cols/2 symbols per row). 'X' stores both devices low and matches any
	/// key bit. Throws BadTernarySymbol / WrongParadigm.
	void cam_store(int row, const std::string& ternary_word);

	/// Match bitmap over the stored rows: bit r is 1 iff every non-X symbol
	/// of row r equals the key bit. Never-written rows report 0.
	std::vector<std::uint8_t> cam_search(const std::string& key_bits);

	/// One leaky integrate-and-fire step across all column neurons.
	std::vector<std::uint8_t> snn_step(const std::vector<std::uint8_t>& in_spikes);

	/// n Bernoulli draws per column from the row-0 devices; result[c][i].
	std::vector<std::vector<std::uint8_t>> pc_sample(int n);

	// --- local memory -------------------------------------------------------
	std::uint8_t sram_read(std::size_t addr);
	void sram_write(std::size_t addr, std::uint8_t value);
	void sram_bounds_check(std::size_t addr, std::size_t count) const; // throws SramOutOfRange
	SramModel& sram() { return sram_; } // BIST target; faults show on reads

	// --- neuron state --------------------------------------------------------
	const std::vector<double>& membrane() const { return membrane_v_; }

	/// Digital cycles one analog cycle spans (>= 1).
	std::uint64_t analog_to_digital_ratio() const;

	void add_digital_cycles(std::uint64_t n) { digital_cycles_ += n; }

private:
	void require_paradigm(Paradigm p, const char* op) const;

	int id_;
	ComputeArrayConfig cfg_;
	Crossbar xbar_;
	SramModel sram_;
	std::vector<double> membrane_v_;
	std::vector<int> refractory_left_;
	std::vector<std::uint8_t> cam_row_valid_;
	std::uint64_t analog_cycles_ = 0;
	std::uint64_t digital_cycles_ = 0;
	std::uint64_t sram_access_cycles_ = 0;
};

// ---------------------------------------------------------------------------
// Local instruction execution
// ---------------------------------------------------------------------------

enum class CaOp {
	LoadSram,
	StoreSram,
	Program,
	Mvm,
	Search,
	SnnStep,
	PcSample,
	SendNoC,
	RecvNoC,
};

/// Where SendNoC takes its payload word from.
enum class SendSource { Immediate, Result, Received };

struct CaInstruction {
	CaOp op = CaOp::Mvm;
	// LoadSram / StoreSram
	std::size_t addr = 0;
	std::vector<std::uint8_t> bytes; // StoreSram payload
	std::size_t count = 0;           // LoadSram byte count
	// Program
	std::vector<std::vector<int>> levels;
	// Mvm (empty -> take DAC codes from the last LoadSram data)
	std::vector<int> dac_codes;
	// Search
	std::string key;
	// SnnStep
	std::vector<std::uint8_t> spikes;
	// PcSample
	int samples = 0;
	// SendNoC
	int dst = 0;
	SendSource source = SendSource::Immediate;
	std::uint32_t payload = 0;
	std::size_t result_index = 0;
};

struct CaResult {
	std::size_t instr_index;
	CaOp op;
	std::vector<std::uint32_t> words;
};

/// Minimal transport the array sees. The simulation kernel adapts this onto
/// the NoC; tests may use an in-memory loopback.
class CaNocPort {
public:
	virtual ~CaNocPort() = default;
	virtual bool send(int dst, std::uint32_t payload) = 0; // false = backpressure
	virtual std::optional<std::uint32_t> receive() = 0;    // empty = nothing yet
};

/// Run a whole program to completion (blocking receives poll the port).
/// Standalone entry point used by tests and the CLI's immediate mode; the
/// simulation kernel instead steps instructions one at a time.
std::vector<CaResult> ca_execute(ComputeArray& ca, const std::vector<CaInstruction>& program,
                                 CaNocPort* port = nullptr);

/// Execute one instruction; empty result means "retry later" (the NoC pushed
/// back or nothing has been received yet). Used by the simulation kernel.
std::optional<CaResult> ca_step_instruction(ComputeArray& ca, const CaInstruction& in,
                                            std::size_t index,
                                            const std::vector<std::uint32_t>& last_result,
                                            std::uint32_t last_received, CaNocPort* port);

const char* to_string(CaOp op);

} // namespace memsoc

#endif // MEMSOC_ARRAYS_HPP
