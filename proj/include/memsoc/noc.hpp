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

#ifndef MEMSOC_NOC_HPP
#define MEMSOC_NOC_HPP

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "memsoc/chipdesc.hpp"

namespace memsoc {

/// One 32-bit word in flight. Nodes 0..6 are the computing arrays, node 7
/// the processor; in the 3x3 mesh node 8 is the chip-bridge endpoint.
struct NoCPacket {
	int src = 0;
	int dst = 0;
	std::uint32_t payload = 0;
	std::int64_t tag = 0;
	std::uint64_t inject_cycle = 0;
	std::uint64_t deliver_cycle = 0;
};

struct NoCStats {
	std::uint64_t injected = 0;
	std::uint64_t delivered = 0;
	std::uint64_t in_flight = 0;
	double mean_latency_cycles = 0.0;
	int peak_link_bits_per_cycle = 0;
	double offered_gbps = 0.0;
	std::uint64_t elapsed_cycles = 0;
};

struct TraceEvent {
	std::uint64_t cycle;
	int src;
	int dst;
	std::int64_t tag;
	bool deliver; // false = inject
};

/// Observer mirroring every delivered packet (the chip-bridge monitor path).
class TapSink {
public:
	virtual ~TapSink() = default;
	/// Return false if the word had to be dropped (counted by the sink).
	virtual bool offer(const NoCPacket& pkt, std::uint64_t cycle) = 0;
};

/// Cycle-approximate packet network. Deterministic: per-output round-robin
/// arbitration seeded at the lowest port index, fixed router scan order, and
/// a single network-wide ejection per cycle so the delivered stream never
/// exceeds the 32 bit/cycle monitor bandwidth.
class Network {
public:
	explicit Network(const NoCConfig& cfg);

	int node_count() const { return node_count_; }
	std::uint64_t now() const { return cycle_; }

	/// Enqueue at the source's injection FIFO. False means backpressure; the
	/// packet is never silently dropped. Throws BadNodeId.
	bool inject(NoCPacket pkt);

	/// Advance the network and collect deliveries in order.
	std::vector<NoCPacket> advance(std::uint64_t cycles);

	NoCStats stats() const;

	void attach_tap(TapSink* sink); // throws TapAlreadyAttached

	void enable_trace(bool on) { trace_enabled_ = on; }
	const std::vector<TraceEvent>& trace() const { return trace_; }

	/// Packets queued anywhere in the network.
	std::uint64_t in_flight() const { return injected_ - delivered_; }

private:
	struct Flit {
		NoCPacket pkt;
		std::uint64_t ready_cycle; // router pipeline delay gate
	};
	struct Router {
		// input FIFOs: port 0 = local injection, 1.. = from neighbours
		std::vector<std::deque<Flit>> in;
		std::vector<int> rr_next; // per-output round-robin pointer
	};

	int route_output(int node, int dst) const;   // output port index
	int neighbor(int node, int out_port) const;  // node on the other end
	int input_port_at_neighbor(int node, int out_port) const;
	int ports_per_router() const;
	int outputs_per_router() const;

	void step_one_cycle();

	NoCConfig cfg_;
	int node_count_;
	std::vector<Router> routers_;
	std::uint64_t cycle_ = 0;
	std::uint64_t injected_ = 0;
	std::uint64_t delivered_ = 0;
	std::uint64_t latency_sum_ = 0;
	int peak_link_bits_ = 0;
	int eject_rr_ = 0; // round-robin start for the shared ejection slot
	TapSink* tap_ = nullptr;
	bool trace_enabled_ = false;
	std::vector<TraceEvent> trace_;
	std::vector<NoCPacket> delivered_this_advance_;
};

/// Render the recorded trace as CSV (cycle,src,dst,tag,event).
std::string trace_to_csv(const std::vector<TraceEvent>& events);

} // namespace memsoc

#endif // MEMSOC_NOC_HPP
