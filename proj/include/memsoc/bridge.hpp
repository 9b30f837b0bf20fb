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

#ifndef MEMSOC_BRIDGE_HPP
#define MEMSOC_BRIDGE_HPP

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "memsoc/chipdesc.hpp"
#include "memsoc/noc.hpp"
#include "memsoc/rng.hpp"

namespace memsoc {

/// One transfer on the 16-lane LVDS group: 16 data bits plus a 2-bit stream
/// address, moving when valid and ready coincide on the beat.
struct TxBeat {
	std::uint16_t data = 0;
	std::uint8_t stream = 0; // 2-bit stream address
};

/// Word assembled on the receiving side, tagged with its origin.
struct RxWord {
	std::uint32_t word = 0;
	std::uint8_t stream = 0;  // TX stream address or TTL address bit
	bool from_peer = false;   // false: assembled from the TTL input lanes
};

/// One monitor capture record (a fully reassembled word).
struct MonitorRecord {
	std::uint64_t beat_index = 0; // beat completing the word
	std::uint8_t stream = 0;
	std::uint32_t word = 0;
};

/// Receiver readiness when no peer chip is connected (the external
/// measurement equipment driving the ready line).
enum class ReadyModel { AlwaysReady, DutyCycle };

/// Die-to-die bridge. TX: 16 LVDS data lanes at 2 Gbit/s per lane, 32-bit
/// words split into two 16-bit beats (low half first). RX: 8 TTL lanes at
/// 100 Mbit/s assembling four bytes (low byte first) into one word. The beat
/// clock runs at twice the NoC word clock, so TX matches the NoC at speed.
class ChipBridge : public TapSink {
public:
	explicit ChipBridge(const BridgeConfig& cfg);

	// --- TX path -------------------------------------------------------------
	/// Split a word into two beats and enqueue both, or reject (backpressure).
	bool tx_push(std::uint32_t word, std::uint8_t stream);

	/// Run the beat clock. A beat transfers exactly when the FIFO holds one
	/// (valid) and the receiver is ready. Returns beats transferred.
	std::uint64_t advance_beats(std::uint64_t beats);

	// --- RX path -------------------------------------------------------------
	/// Push one byte on the TTL lanes; false when the aggregate 0.8 Gbit/s
	/// input budget is exhausted (backpressure).
	bool rx_push(std::uint8_t byte, std::uint8_t addr);

	// --- chip-to-chip ---------------------------------------------------------
	static void connect(ChipBridge& a, ChipBridge& b); // throws AlreadyConnected
	bool connected() const { return peer_ != nullptr; }

	// --- monitor / NoC tap -----------------------------------------------------
	bool offer(const NoCPacket& pkt, std::uint64_t cycle) override;
	std::uint64_t monitor_drops() const { return drops_; }

	void set_ready_model(ReadyModel model, double duty = 1.0, std::uint64_t seed = 0);

	/// Stream address used for mirrored NoC traffic / bridge-endpoint data.
	static constexpr std::uint8_t kMonitorStream = 0;
	static constexpr std::uint8_t kDataStream = 1;
	int bridge_node_id = -1; // NoC node whose deliveries are outbound data

	// --- outputs ---------------------------------------------------------------
	std::deque<RxWord>& inbound_words() { return inbound_; }
	const std::vector<MonitorRecord>& captured() const { return captured_; }
	std::uint64_t beats_transferred() const { return beats_transferred_; }
	std::uint64_t tx_words_pushed() const { return tx_words_pushed_; }
	std::uint64_t beat_index() const { return beat_index_; }
	std::uint64_t rx_bytes_accepted() const { return rx_bytes_accepted_; }

	const BridgeConfig& config() const { return cfg_; }

private:
	bool receiver_ready() const;
	void accept_beat(const TxBeat& beat); // called on the receiving chip
	void capture_beat(const TxBeat& beat);

	BridgeConfig cfg_;
	std::deque<TxBeat> tx_fifo_;
	ChipBridge* peer_ = nullptr;

	// receiver-side word assembly, one slot per TX stream address
	struct Assembler {
		bool have_low = false;
		std::uint16_t low = 0;
	};
	Assembler peer_asm_[4];
	Assembler capture_asm_[4];

	// TTL byte assembly, one slot per RX address bit
	struct ByteAssembler {
		std::uint32_t word = 0;
		int have = 0;
	};
	ByteAssembler rx_asm_[2];

	// rx credit accrues at the aggregate TTL rate, in bits per beat
	double rx_credit_bits_;
	double rx_credit_cap_;
	double rx_bits_per_beat_;

	ReadyModel ready_model_ = ReadyModel::AlwaysReady;
	double ready_duty_ = 1.0;
	std::uint64_t ready_seed_ = 0;

	std::deque<RxWord> inbound_;
	std::vector<MonitorRecord> captured_;
	std::uint64_t beat_index_ = 0;
	std::uint64_t beats_transferred_ = 0;
	std::uint64_t tx_words_pushed_ = 0;
	std::uint64_t rx_bytes_accepted_ = 0;
	std::uint64_t drops_ = 0;
};

/// Little-endian binary encoding of the capture: {u64 beat_index, u8 stream,
/// u32 word} per record, 13 bytes each.
std::vector<std::uint8_t> capture_to_binary(const std::vector<MonitorRecord>& records);
std::string capture_to_csv(const std::vector<MonitorRecord>& records);

} // namespace memsoc

#endif // MEMSOC_BRIDGE_HPP
