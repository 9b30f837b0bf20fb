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

#include "memsoc/arrays.hpp"

#include <cmath>
#include <algorithm>

#include "memsoc/errors.hpp"

namespace memsoc {

// ---------------------------------------------------------------------------
// Crossbar
// ---------------------------------------------------------------------------

Crossbar::Crossbar(int rows, int cols, const DeviceParams& params, std::uint64_t stream_key)
    : rows_(rows), cols_(cols), params_(params) {
	if (rows < 1 || cols < 1)
		throw MalformedDescription("crossbar needs at least one row and one column");
	params_.validate();
	std::size_t n = static_cast<std::size_t>(rows) * cols;
	devices_.resize(n);
	streams_.reserve(n);
	for (std::size_t i = 0; i < n; ++i)
		streams_.emplace_back(mix64(stream_key, i));
}

void Crossbar::form_all(double v) {
	for (std::size_t i = 0; i < devices_.size(); ++i)
		devices_[i] = form(devices_[i], v, params_, streams_[i], &events_);
}

void Crossbar::set_device_level(int r, int c, int level) {
	std::size_t i = index(r, c);
	devices_[i] = set_level(devices_[i], level, params_, streams_[i], &events_);
}

int Crossbar::sample_device(int r, int c) {
	std::size_t i = index(r, c);
	return sample_bernoulli(devices_[i], params_, streams_[i]);
}

std::vector<double> Crossbar::column_currents_ua(const std::vector<double>& row_voltages) const {
	if (static_cast<int>(row_voltages.size()) != rows_)
		throw ShapeMismatch("expected one read voltage per row");
	std::vector<double> currents(cols_, 0.0);
	for (int r = 0; r < rows_; ++r) {
		double v = row_voltages[r];
		if (v == 0.0) continue;
		for (int c = 0; c < cols_; ++c)
			currents[c] += devices_[index(r, c)].g_us * v;
	}
	return currents;
}

void Crossbar::require_all_formed() const {
	for (int r = 0; r < rows_; ++r)
		for (int c = 0; c < cols_; ++c)
			if (devices_[index(r, c)].phase != DevicePhase::Formed)
				throw NotFormed("device (" + std::to_string(r) + ", " + std::to_string(c) +
				                ") is virgin");
}

// ---------------------------------------------------------------------------
// ComputeArray
// ---------------------------------------------------------------------------

ComputeArray::ComputeArray(int id, const ComputeArrayConfig& cfg, std::uint64_t chip_seed)
    : id_(id),
      cfg_(cfg),
      xbar_(cfg.rows, cfg.cols, cfg.device,
            mix64(mix64(chip_seed, cfg.device.seed), static_cast<std::uint64_t>(id))),
      sram_(kCaSramBytes),
      membrane_v_(cfg.cols, 0.0),
      refractory_left_(cfg.cols, 0),
      cam_row_valid_(cfg.rows, 0) {
	if (cfg.dac_bits < 1 || cfg.dac_bits > 12 || cfg.adc_bits < 1 || cfg.adc_bits > 12)
		throw MalformedDescription("converter resolutions must lie in [1, 12] bits");
	if (cfg.analog_clock_hz > 1e8 || !(cfg.analog_clock_hz > 0.0))
		throw MalformedDescription("analog clock must lie in (0, 100 MHz]");
	if (cfg.digital_clock_hz > 1e9 || !(cfg.digital_clock_hz > 0.0))
		throw MalformedDescription("digital clock must lie in (0, 1 GHz]");
	if (cfg.v_read_v > cfg.device.v_read_max_v)
		throw MalformedDescription("configured read voltage would disturb the devices");
}

std::uint64_t ComputeArray::analog_to_digital_ratio() const {
	return static_cast<std::uint64_t>(
	    std::ceil(cfg_.digital_clock_hz / cfg_.analog_clock_hz));
}

void ComputeArray::require_paradigm(Paradigm p, const char* op) const {
	if (cfg_.paradigm != p)
		throw WrongParadigm(std::string(op) + " requires paradigm " + to_string(p) +
		                    ", array " + std::to_string(id_) + " runs " +
		                    to_string(cfg_.paradigm));
}

void ComputeArray::program_matrix(const std::vector<std::vector<int>>& levels) {
	if (static_cast<int>(levels.size()) != cfg_.rows)
		throw ShapeMismatch("level grid has " + std::to_string(levels.size()) +
		                    " rows, array has " + std::to_string(cfg_.rows));
	for (const auto& row : levels)
		if (static_cast<int>(row.size()) != cfg_.cols)
			throw ShapeMismatch("level grid row width mismatch");
	xbar_.require_all_formed();
	for (int r = 0; r < cfg_.rows; ++r)
		for (int c = 0; c < cfg_.cols; ++c)
			xbar_.set_device_level(r, c, levels[r][c]);
	// one device write per analog cycle
	analog_cycles_ += static_cast<std::uint64_t>(cfg_.rows) * cfg_.cols;
}

std::vector<int> ComputeArray::cim_mvm(const std::vector<int>& dac_codes) {
	require_paradigm(Paradigm::CiM, "cim_mvm");
	if (static_cast<int>(dac_codes.size()) != cfg_.rows)
		throw ShapeMismatch("expected one DAC code per row");
	xbar_.require_all_formed();

	const double dac_full = static_cast<double>((1 << cfg_.dac_bits) - 1);
	std::vector<double> voltages(cfg_.rows);
	for (int r = 0; r < cfg_.rows; ++r) {
		int code = dac_codes[r];
		if (code < 0 || code > static_cast<int>(dac_full))
			throw ShapeMismatch("DAC code out of range");
		voltages[r] = cfg_.v_read_v * static_cast<double>(code) / dac_full;
	}
	std::vector<double> currents = xbar_.column_currents_ua(voltages);

	const double full_scale =
	    static_cast<double>(cfg_.rows) * cfg_.device.g_max_us * cfg_.v_read_v;
	const int adc_max = (1 << cfg_.adc_bits) - 1;
	std::vector<int> codes(cfg_.cols);
	for (int c = 0; c < cfg_.cols; ++c) {
		long v = std::lround(currents[c] / full_scale * adc_max);
		codes[c] = static_cast<int>(std::clamp(v, 0L, static_cast<long>(adc_max)));
	}
	analog_cycles_ += cfg_.mvm_pipeline_cycles;
	return codes;
}

void ComputeArray::cam_store(int row, const std::string& word) {
	require_paradigm(Paradigm::CAM, "cam_store");
	if (cfg_.cols % 2 != 0)
		throw MalformedDescription("CAM mode needs an even column count");
	int cells = cfg_.cols / 2;
	if (row < 0 || row >= cfg_.rows)
		throw ShapeMismatch("CAM row out of range");
	if (static_cast<int>(word.size()) != cells)
		throw ShapeMismatch("ternary word must have cols/2 symbols");
	int hi = cfg_.device.levels - 1;
	for (int c = 0; c < cells; ++c) {
		// device 2c conducts when the key bit is 0, device 2c+1 when it is 1;
		// a high device on the activated side discharges the match line
		int lo_side, hi_side;
		switch (word[c]) {
		case '1': lo_side = hi; hi_side = 0; break; // mismatch on key 0
		case '0': lo_side = 0; hi_side = hi; break; // mismatch on key 1
		case 'X':
		case 'x': lo_side = 0; hi_side = 0; break;  // matches either
		default:
			throw BadTernarySymbol("symbol '" + std::string(1, word[c]) +
			                       "' is not one of 0/1/X");
		}
		xbar_.set_device_level(row, 2 * c, lo_side);
		xbar_.set_device_level(row, 2 * c + 1, hi_side);
	}
	cam_row_valid_[row] = 1;
	analog_cycles_ += 1;
}

std::vector<std::uint8_t> ComputeArray::cam_search(const std::string& key) {
	require_paradigm(Paradigm::CAM, "cam_search");
	int cells = cfg_.cols / 2;
	if (static_cast<int>(key.size()) != cells)
		throw ShapeMismatch("search key must have cols/2 bits");
	for (char b : key)
		if (b != '0' && b != '1')
			throw BadTernarySymbol("search key bits must be 0 or 1");
	xbar_.require_all_formed();

	const double g_min = cfg_.device.g_min_us;
	const double g_max = cfg_.device.g_max_us;
	// all-low match line plus half a device swing of margin
	const double threshold = cells * g_min + 0.5 * (g_max - g_min);

	std::vector<std::uint8_t> match(cfg_.rows, 0);
	for (int r = 0; r < cfg_.rows; ++r) {
		if (!cam_row_valid_[r]) continue;
		double leak = 0.0;
		for (int c = 0; c < cells; ++c) {
			int activated = (key[c] == '1') ? 2 * c + 1 : 2 * c;
			leak += xbar_.device(r, activated).g_us;
		}
		match[r] = leak < threshold ? 1 : 0;
	}
	analog_cycles_ += 1;
	return match;
}

std::vector<std::uint8_t> ComputeArray::snn_step(const std::vector<std::uint8_t>& in_spikes) {
	require_paradigm(Paradigm::SNN, "snn_step");
	if (static_cast<int>(in_spikes.size()) != cfg_.rows)
		throw ShapeMismatch("expected one input spike bit per row");
	xbar_.require_all_formed();

	const double g_min = cfg_.device.g_min_us;
	const double g_span = cfg_.device.g_max_us - g_min;
	std::vector<std::uint8_t> out(cfg_.cols, 0);
	for (int c = 0; c < cfg_.cols; ++c) {
		if (refractory_left_[c] > 0) {
			refractory_left_[c]--;
			continue;
		}
		double v = cfg_.snn.alpha * membrane_v_[c];
		for (int r = 0; r < cfg_.rows; ++r) {
			if (!in_spikes[r]) continue;
			v += (xbar_.device(r, c).g_us - g_min) / g_span;
		}
		if (v >= cfg_.snn.theta) {
			out[c] = 1;
			membrane_v_[c] = cfg_.snn.v_reset;
			refractory_left_[c] = cfg_.snn.refractory;
		} else {
			membrane_v_[c] = v;
		}
	}
	analog_cycles_ += 1;
	return out;
}

std::vector<std::vector<std::uint8_t>> ComputeArray::pc_sample(int n) {
	require_paradigm(Paradigm::PC, "pc_sample");
	if (n < 0) throw ShapeMismatch("sample count must be non-negative");
	xbar_.require_all_formed();
	std::vector<std::vector<std::uint8_t>> bits(cfg_.cols);
	for (int c = 0; c < cfg_.cols; ++c) {
		bits[c].resize(n);
		for (int i = 0; i < n; ++i)
			bits[c][i] = static_cast<std::uint8_t>(xbar_.sample_device(0, c));
	}
	analog_cycles_ += static_cast<std::uint64_t>(n);
	return bits;
}

void ComputeArray::sram_bounds_check(std::size_t addr, std::size_t count) const {
	if (addr + count > kCaSramBytes || addr > kCaSramBytes)
		throw SramOutOfRange("access [" + std::to_string(addr) + ", " +
		                     std::to_string(addr + count) + ") exceeds " +
		                     std::to_string(kCaSramBytes) + " bytes");
}

std::uint8_t ComputeArray::sram_read(std::size_t addr) {
	sram_bounds_check(addr, 1);
	sram_access_cycles_ += 1;
	return sram_.read(addr);
}

void ComputeArray::sram_write(std::size_t addr, std::uint8_t value) {
	sram_bounds_check(addr, 1);
	sram_access_cycles_ += 1;
	sram_.write(addr, value);
}

// ---------------------------------------------------------------------------
// Instruction execution
// ---------------------------------------------------------------------------

const char* to_string(CaOp op) {
	switch (op) {
	case CaOp::LoadSram: return "load_sram";
	case CaOp::StoreSram: return "store_sram";
	case CaOp::Program: return "program";
	case CaOp::Mvm: return "mvm";
	case CaOp::Search: return "search";
	case CaOp::SnnStep: return "snn_step";
	case CaOp::PcSample: return "pc_sample";
	case CaOp::SendNoC: return "send_noc";
	case CaOp::RecvNoC: return "recv_noc";
	}
	return "?";
}

namespace {

std::vector<std::uint32_t> pack_bits(const std::vector<std::uint8_t>& bits) {
	std::vector<std::uint32_t> words((bits.size() + 31) / 32, 0);
	for (std::size_t i = 0; i < bits.size(); ++i)
		if (bits[i]) words[i / 32] |= 1u << (i % 32);
	return words;
}

std::vector<std::uint32_t> pack_bytes(const std::vector<std::uint8_t>& bytes) {
	std::vector<std::uint32_t> words((bytes.size() + 3) / 4, 0);
	for (std::size_t i = 0; i < bytes.size(); ++i)
		words[i / 4] |= static_cast<std::uint32_t>(bytes[i]) << (8 * (i % 4));
	return words;
}

} // namespace

// Executes one instruction against the array. Returns empty optional when the
// instruction must retry later (NoC backpressure or nothing received yet).
// Shared between the blocking executor below and the simulation kernel.
std::optional<CaResult> ca_step_instruction(ComputeArray& ca, const CaInstruction& in,
                                            std::size_t index,
                                            const std::vector<std::uint32_t>& last_result,
                                            std::uint32_t last_received, CaNocPort* port) {
	CaResult res{index, in.op, {}};
	switch (in.op) {
	case CaOp::LoadSram: {
		ca.sram_bounds_check(in.addr, in.count);
		std::vector<std::uint8_t> data(in.count);
		for (std::size_t i = 0; i < in.count; ++i) data[i] = ca.sram_read(in.addr + i);
		res.words = pack_bytes(data);
		break;
	}
	case CaOp::StoreSram: {
		ca.sram_bounds_check(in.addr, in.bytes.size());
		for (std::size_t i = 0; i < in.bytes.size(); ++i)
			ca.sram_write(in.addr + i, in.bytes[i]);
		break;
	}
	case CaOp::Program:
		ca.program_matrix(in.levels);
		break;
	case CaOp::Mvm: {
		std::vector<int> x = in.dac_codes;
		if (x.empty()) {
			// feed from previously loaded SRAM bytes, one code per row
			for (std::uint32_t w : last_result)
				for (int b = 0; b < 4 && static_cast<int>(x.size()) < ca.config().rows; ++b)
					x.push_back(static_cast<int>((w >> (8 * b)) & 0xFF));
			x.resize(ca.config().rows, 0);
		}
		std::vector<int> codes = ca.cim_mvm(x);
		res.words.reserve(codes.size());
		for (int c : codes) res.words.push_back(static_cast<std::uint32_t>(c));
		break;
	}
	case CaOp::Search:
		res.words = pack_bits(ca.cam_search(in.key));
		break;
	case CaOp::SnnStep:
		res.words = pack_bits(ca.snn_step(in.spikes));
		break;
	case CaOp::PcSample: {
		auto bits = ca.pc_sample(in.samples);
		res.words.reserve(bits.size());
		for (const auto& col : bits) {
			std::uint32_t ones = 0;
			for (auto b : col) ones += b;
			res.words.push_back(ones);
		}
		break;
	}
	case CaOp::SendNoC: {
		if (!port) throw SimError("SendNoC without an attached NoC port");
		std::uint32_t word = in.payload;
		if (in.source == SendSource::Result) {
			word = in.result_index < last_result.size() ? last_result[in.result_index] : 0;
		} else if (in.source == SendSource::Received) {
			word = last_received;
		}
		if (!port->send(in.dst, word)) return std::nullopt; // retry
		res.words.push_back(word);
		break;
	}
	case CaOp::RecvNoC: {
		if (!port) throw SimError("RecvNoC without an attached NoC port");
		auto word = port->receive();
		if (!word) return std::nullopt; // retry
		res.words.push_back(*word);
		break;
	}
	}
	return res;
}

std::vector<CaResult> ca_execute(ComputeArray& ca, const std::vector<CaInstruction>& program,
                                 CaNocPort* port) {
	std::vector<CaResult> results;
	std::vector<std::uint32_t> last_result;
	std::uint32_t last_received = 0;
	for (std::size_t i = 0; i < program.size(); ++i) {
		const auto& in = program[i];
		std::optional<CaResult> r;
		// bounded retry so a missing peer surfaces as an error, not a hang
		for (int attempt = 0; attempt < 1000000; ++attempt) {
			r = ca_step_instruction(ca, in, i, last_result, last_received, port);
			if (r) break;
		}
		if (!r)
			throw SimError("instruction " + std::to_string(i) + " (" + to_string(in.op) +
			               ") starved on the NoC port");
		if (in.op != CaOp::SendNoC && !r->words.empty()) last_result = r->words;
		if (in.op == CaOp::RecvNoC && !r->words.empty()) last_received = r->words[0];
		ca.add_digital_cycles(1);
		results.push_back(std::move(*r));
	}
	return results;
}

} // namespace memsoc
