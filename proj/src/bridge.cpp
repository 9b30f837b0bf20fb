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

#include "memsoc/bridge.hpp"

#include <algorithm>
#include <sstream>

#include "memsoc/errors.hpp"

namespace memsoc {

ChipBridge::ChipBridge(const BridgeConfig& cfg) : cfg_(cfg) {
	if (cfg.tx_fifo_depth_beats < 2)
		throw MalformedDescription("TX FIFO must hold at least one split word (2 beats)");
	if (cfg.tx_lanes < 1 || cfg.rx_lanes < 1)
		throw MalformedDescription("bridge needs at least one lane per direction");
	// aggregate TTL input rate expressed per TX beat
	double beat_hz = cfg.tx_rate_bps; // one bit per lane per beat
	rx_bits_per_beat_ = cfg.rx_aggregate_bps() / beat_hz;
	rx_credit_cap_ = 32.0; // one word of burst tolerance
	rx_credit_bits_ = rx_credit_cap_;
}

bool ChipBridge::tx_push(std::uint32_t word, std::uint8_t stream) {
	stream &= 0x3;
	if (static_cast<int>(tx_fifo_.size()) + 2 > cfg_.tx_fifo_depth_beats) return false;
	tx_fifo_.push_back({static_cast<std::uint16_t>(word & 0xFFFF), stream});
	tx_fifo_.push_back({static_cast<std::uint16_t>(word >> 16), stream});
	tx_words_pushed_++;
	return true;
}

void ChipBridge::set_ready_model(ReadyModel model, double duty, std::uint64_t seed) {
	ready_model_ = model;
	ready_duty_ = duty;
	ready_seed_ = mix64(seed, 0x52454459); // "REDY"
}

bool ChipBridge::receiver_ready() const {
	if (peer_) {
		// the far side raises ready while its TTL-side input budget allows
		// another 16-bit beat
		return peer_->rx_credit_bits_ >= 16.0;
	}
	switch (ready_model_) {
	case ReadyModel::AlwaysReady: return true;
	case ReadyModel::DutyCycle: {
		// pure function of the beat index, so the pattern replays exactly
		double u = static_cast<double>(mix64(ready_seed_, beat_index_) >> 11) * 0x1.0p-53;
		return u < ready_duty_;
	}
	}
	return true;
}

std::uint64_t ChipBridge::advance_beats(std::uint64_t beats) {
	std::uint64_t transferred = 0;
	for (std::uint64_t i = 0; i < beats; ++i) {
		beat_index_++;
		// the TTL input budget accrues on the same beat clock
		rx_credit_bits_ = std::min(rx_credit_cap_, rx_credit_bits_ + rx_bits_per_beat_);
		if (tx_fifo_.empty()) continue;      // valid low
		if (!receiver_ready()) continue;     // ready low: hold the beat
		TxBeat beat = tx_fifo_.front();
		tx_fifo_.pop_front();
		transferred++;
		beats_transferred_++;
		if (peer_) {
			peer_->rx_credit_bits_ -= 16.0;
			peer_->accept_beat(beat);
		} else {
			capture_beat(beat);
		}
	}
	return transferred;
}

void ChipBridge::accept_beat(const TxBeat& beat) {
	Assembler& a = peer_asm_[beat.stream & 0x3];
	if (!a.have_low) {
		a.low = beat.data;
		a.have_low = true;
		return;
	}
	std::uint32_t word = (static_cast<std::uint32_t>(beat.data) << 16) | a.low;
	a.have_low = false;
	inbound_.push_back({word, beat.stream, true});
}

void ChipBridge::capture_beat(const TxBeat& beat) {
	Assembler& a = capture_asm_[beat.stream & 0x3];
	if (!a.have_low) {
		a.low = beat.data;
		a.have_low = true;
		return;
	}
	std::uint32_t word = (static_cast<std::uint32_t>(beat.data) << 16) | a.low;
	a.have_low = false;
	captured_.push_back({beat_index_, beat.stream, word});
}

bool ChipBridge::rx_push(std::uint8_t byte, std::uint8_t addr) {
	addr &= 0x1;
	if (rx_credit_bits_ < 8.0) return false;
	rx_credit_bits_ -= 8.0;
	rx_bytes_accepted_++;
	ByteAssembler& a = rx_asm_[addr];
	a.word |= static_cast<std::uint32_t>(byte) << (8 * a.have);
	a.have++;
	if (a.have == 4) {
		inbound_.push_back({a.word, addr, false});
		a.word = 0;
		a.have = 0;
	}
	return true;
}

void ChipBridge::connect(ChipBridge& a, ChipBridge& b) {
	if (a.peer_ || b.peer_) throw AlreadyConnected("bridge already has a peer");
	if (&a == &b) throw AlreadyConnected("a bridge cannot peer with itself");
	a.peer_ = &b;
	b.peer_ = &a;
}

bool ChipBridge::offer(const NoCPacket& pkt, std::uint64_t /*cycle*/) {
	std::uint8_t stream = (pkt.dst == bridge_node_id) ? kDataStream : kMonitorStream;
	if (tx_push(pkt.payload, stream)) return true;
	drops_++;
	return false;
}

std::vector<std::uint8_t> capture_to_binary(const std::vector<MonitorRecord>& records) {
	std::vector<std::uint8_t> out;
	out.reserve(records.size() * 13);
	for (const auto& r : records) {
		for (int i = 0; i < 8; ++i)
			out.push_back(static_cast<std::uint8_t>((r.beat_index >> (8 * i)) & 0xFF));
		out.push_back(r.stream);
		for (int i = 0; i < 4; ++i)
			out.push_back(static_cast<std::uint8_t>((r.word >> (8 * i)) & 0xFF));
	}
	return out;
}

std::string capture_to_csv(const std::vector<MonitorRecord>& records) {
	std::ostringstream out;
	out << "beat_index,stream,word\n";
	for (const auto& r : records)
		out << r.beat_index << ',' << static_cast<int>(r.stream) << ',' << r.word << '\n';
	return out.str();
}

} // namespace memsoc
