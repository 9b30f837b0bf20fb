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

#include <doctest.h>

#include <map>
#include <vector>

#include "memsoc/bridge.hpp"
#include "memsoc/errors.hpp"
#include "memsoc/rng.hpp"

using namespace memsoc;

namespace {

BridgeConfig default_bridge() { return BridgeConfig{}; }

} // namespace

TEST_CASE("words split low half first and reassemble exactly") {
	ChipBridge b(default_bridge());
	REQUIRE(b.tx_push(0xA5A55A5A, 0));
	b.advance_beats(2);
	REQUIRE(b.captured().size() == 1);
	CHECK(b.captured()[0].word == 0xA5A55A5A);
	CHECK(b.captured()[0].stream == 0);

	// boundary words
	for (std::uint32_t w : {0u, 0xFFFFFFFFu, 0x00010000u, 0x0000FFFFu}) {
		ChipBridge c(default_bridge());
		REQUIRE(c.tx_push(w, 2));
		c.advance_beats(2);
		REQUIRE(c.captured().size() == 1);
		CHECK(c.captured()[0].word == w);
		CHECK(c.captured()[0].stream == 2);
	}
}

TEST_CASE("full FIFO pushes back without enqueuing") {
	BridgeConfig cfg = default_bridge();
	cfg.tx_fifo_depth_beats = 4; // two words
	ChipBridge b(cfg);
	CHECK(b.tx_push(1, 0));
	CHECK(b.tx_push(2, 0));
	CHECK(!b.tx_push(3, 0));
	CHECK(b.tx_words_pushed() == 2);
	b.advance_beats(4);
	REQUIRE(b.captured().size() == 2);
	CHECK(b.captured()[0].word == 1);
	CHECK(b.captured()[1].word == 2);
}

TEST_CASE("a word per NoC cycle streams with zero stalls") {
	// 16 lanes x 2 Gbit/s = one 32-bit word per 1 GHz cycle
	ChipBridge b(default_bridge());
	for (int i = 0; i < 1000; ++i) {
		CHECK(b.tx_push(static_cast<std::uint32_t>(i), 1));
		CHECK(b.advance_beats(2) == 2);
	}
	CHECK(b.beats_transferred() == 2000);
	CHECK(b.captured().size() == 1000);
}

TEST_CASE("deasserted ready stalls the FIFO untouched") {
	ChipBridge b(default_bridge());
	b.set_ready_model(ReadyModel::DutyCycle, 0.0, 1);
	REQUIRE(b.tx_push(42, 0));
	CHECK(b.advance_beats(10) == 0);
	b.set_ready_model(ReadyModel::AlwaysReady);
	CHECK(b.advance_beats(2) == 2);
	REQUIRE(b.captured().size() == 1);
	CHECK(b.captured()[0].word == 42);
}

TEST_CASE("random ready pattern preserves the per-stream sequences") {
	ChipBridge b(default_bridge());
	b.set_ready_model(ReadyModel::DutyCycle, 0.5, 77);
	RngStream rng(123);
	std::map<int, std::vector<std::uint32_t>> pushed;
	std::size_t words = 0;
	while (words < 2000) {
		std::uint32_t w = static_cast<std::uint32_t>(rng.next_u64());
		std::uint8_t stream = static_cast<std::uint8_t>(rng.next_below(4));
		if (b.tx_push(w, stream)) {
			pushed[stream].push_back(w);
			words++;
		}
		b.advance_beats(1);
	}
	b.set_ready_model(ReadyModel::AlwaysReady);
	b.advance_beats(2 * 2000);

	std::map<int, std::vector<std::uint32_t>> got;
	for (const auto& r : b.captured()) got[r.stream].push_back(r.word);
	for (int s = 0; s < 4; ++s) CHECK(got[s] == pushed[s]);
}

TEST_CASE("ttl bytes assemble low byte first under the rate budget") {
	ChipBridge b(default_bridge());
	CHECK(b.rx_push(0x11, 0));
	CHECK(b.rx_push(0x22, 0));
	CHECK(b.rx_push(0x33, 0));
	CHECK(b.rx_push(0x44, 0));
	REQUIRE(b.inbound_words().size() == 1);
	CHECK(b.inbound_words()[0].word == 0x44332211);
	CHECK(b.inbound_words()[0].stream == 0);
	CHECK(!b.inbound_words()[0].from_peer);

	// burst credit is spent: an immediate fifth byte exceeds 0.8 Gbit/s
	CHECK(!b.rx_push(0x55, 0));
	// 20 beats accrue exactly one more byte of credit
	b.advance_beats(20);
	CHECK(b.rx_push(0x55, 0));
	CHECK(!b.rx_push(0x66, 0));
}

TEST_CASE("ttl streams assemble independently per address bit") {
	ChipBridge b(default_bridge());
	CHECK(b.rx_push(0xAA, 0));
	CHECK(b.rx_push(0x01, 1));
	CHECK(b.rx_push(0xBB, 0));
	b.advance_beats(200); // plenty of credit
	CHECK(b.rx_push(0xCC, 0));
	CHECK(b.rx_push(0xDD, 0));
	REQUIRE(b.inbound_words().size() == 1);
	CHECK(b.inbound_words()[0].word == 0xDDCCBBAA);
	CHECK(b.inbound_words()[0].stream == 0);
}

TEST_CASE("sustained input above the aggregate TTL rate is backpressured") {
	ChipBridge b(default_bridge());
	std::uint64_t accepted = 0, attempts = 0;
	for (int beat = 0; beat < 20000; ++beat) {
		// offered load: one byte per 10 beats = 1.6 Gbit/s, twice the budget
		if (beat % 10 == 0) {
			attempts++;
			if (b.rx_push(static_cast<std::uint8_t>(beat), 0)) accepted++;
		}
		b.advance_beats(1);
	}
	// 0.4 bits/beat -> one byte per 20 beats sustained
	double rate = static_cast<double>(accepted) / 20000.0;
	CHECK(rate <= 0.05 + 0.001);
	CHECK(accepted < attempts);
}

TEST_CASE("connect is exclusive and carries words both ways") {
	ChipBridge a(default_bridge()), b(default_bridge());
	ChipBridge::connect(a, b);
	CHECK_THROWS_AS(ChipBridge::connect(a, b), AlreadyConnected);
	CHECK(a.connected());

	REQUIRE(a.tx_push(0xCAFEF00D, ChipBridge::kDataStream));
	// B absorbs at its TTL input rate: 16 bits per beat of credit
	std::uint64_t moved = 0;
	for (int i = 0; i < 200 && moved < 2; ++i) {
		moved += a.advance_beats(1);
		b.advance_beats(1);
	}
	REQUIRE(b.inbound_words().size() == 1);
	CHECK(b.inbound_words()[0].word == 0xCAFEF00D);
	CHECK(b.inbound_words()[0].from_peer);

	REQUIRE(b.tx_push(0x12345678, 3));
	moved = 0;
	for (int i = 0; i < 200 && moved < 2; ++i) {
		moved += b.advance_beats(1);
		a.advance_beats(1);
	}
	REQUIRE(a.inbound_words().size() == 1);
	CHECK(a.inbound_words()[0].word == 0x12345678);
	CHECK(a.inbound_words()[0].stream == 3);
}

TEST_CASE("monitor mode records without any peer") {
	ChipBridge b(default_bridge());
	NoCPacket p;
	p.dst = 3;
	p.payload = 0xBEEF;
	CHECK(b.offer(p, 0));
	b.advance_beats(2);
	REQUIRE(b.captured().size() == 1);
	CHECK(b.captured()[0].stream == ChipBridge::kMonitorStream);
	CHECK(b.monitor_drops() == 0);
}

TEST_CASE("tap drops are counted when the FIFO saturates") {
	BridgeConfig cfg = default_bridge();
	cfg.tx_fifo_depth_beats = 8;
	ChipBridge b(cfg);
	b.set_ready_model(ReadyModel::DutyCycle, 0.0, 3); // receiver never ready
	NoCPacket p;
	p.dst = 1;
	std::uint64_t offered = 0, dropped_before = b.monitor_drops();
	for (int i = 0; i < 100; ++i) {
		b.offer(p, i);
		offered++;
		b.advance_beats(2);
	}
	CHECK(b.monitor_drops() > dropped_before);
	CHECK(b.monitor_drops() == offered - 4); // 8 beats = 4 words fit
}

TEST_CASE("capture encodings") {
	ChipBridge b(default_bridge());
	b.tx_push(0x01020304, 1);
	b.advance_beats(2);
	auto bin = capture_to_binary(b.captured());
	REQUIRE(bin.size() == 13);
	CHECK(bin[0] == 2); // beat index 2, little endian
	CHECK(bin[8] == 1); // stream
	CHECK(bin[9] == 0x04);
	CHECK(bin[12] == 0x01);
	auto csv = capture_to_csv(b.captured());
	CHECK(csv == "beat_index,stream,word\n2,1,16909060\n");
}
