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

#include "memsoc/noc.hpp"

#include <sstream>

#include "memsoc/errors.hpp"

namespace memsoc {

namespace {
// mesh port layout: inputs/outputs share the index space
// 0 = local/eject, 1 = west, 2 = east, 3 = south, 4 = north
constexpr int kEject = 0;
constexpr int kWest = 1;
constexpr int kEast = 2;
constexpr int kSouth = 3;
constexpr int kNorth = 4;
// ring: 1 = forward (towards node+1), 2 = backward
constexpr int kFwd = 1;
constexpr int kBwd = 2;
} // namespace

Network::Network(const NoCConfig& cfg) : cfg_(cfg) {
	if (cfg.link_width_bits != 32)
		throw MalformedDescription("the NoC link width is fixed at 32 bits");
	if (cfg.clock_hz > 1e9 || !(cfg.clock_hz > 0.0))
		throw MalformedDescription("NoC clock must lie in (0, 1 GHz]");
	if (cfg.fifo_depth < 1) throw MalformedDescription("fifo_depth must be at least 1");
	if (cfg.topology == Topology::Ring8 && cfg.fifo_depth < 2)
		throw MalformedDescription("ring topology needs fifo_depth >= 2 for the bubble rule");
	if (cfg.router_pipeline_cycles < 1)
		throw MalformedDescription("router pipeline must be at least 1 cycle");
	node_count_ = cfg.topology == Topology::Mesh3x3 ? 9 : 8;
	routers_.resize(node_count_);
	for (auto& r : routers_) {
		r.in.resize(ports_per_router());
		r.rr_next.assign(outputs_per_router(), 0);
	}
}

int Network::ports_per_router() const { return cfg_.topology == Topology::Mesh3x3 ? 5 : 3; }
int Network::outputs_per_router() const { return ports_per_router(); }

int Network::route_output(int node, int dst) const {
	if (node == dst) return kEject;
	if (cfg_.topology == Topology::Mesh3x3) {
		int x = node % 3, y = node / 3;
		int dx = dst % 3, dy = dst / 3;
		if (x < dx) return kEast;
		if (x > dx) return kWest;
		if (y < dy) return kNorth;
		return kSouth;
	}
	int fwd = (dst - node + 8) % 8;
	return fwd <= 4 ? kFwd : kBwd;
}

int Network::neighbor(int node, int out_port) const {
	if (cfg_.topology == Topology::Mesh3x3) {
		switch (out_port) {
		case kWest: return node - 1;
		case kEast: return node + 1;
		case kSouth: return node - 3;
		case kNorth: return node + 3;
		default: return -1;
		}
	}
	if (out_port == kFwd) return (node + 1) % 8;
	return (node + 7) % 8;
}

int Network::input_port_at_neighbor(int /*node*/, int out_port) const {
	if (cfg_.topology == Topology::Mesh3x3) {
		switch (out_port) {
		case kWest: return kEast;   // arriving from its east side
		case kEast: return kWest;
		case kSouth: return kNorth;
		case kNorth: return kSouth;
		default: return -1;
		}
	}
	// ring: forward traffic arrives on the neighbour's forward-input port
	return out_port;
}

bool Network::inject(NoCPacket pkt) {
	if (pkt.src < 0 || pkt.src >= node_count_)
		throw BadNodeId("source node " + std::to_string(pkt.src));
	if (pkt.dst < 0 || pkt.dst >= node_count_)
		throw BadNodeId("destination node " + std::to_string(pkt.dst));
	if (pkt.src == pkt.dst)
		throw BadNodeId("packets are routed between distinct nodes");
	auto& q = routers_[pkt.src].in[0];
	if (static_cast<int>(q.size()) >= cfg_.fifo_depth) return false;
	pkt.inject_cycle = cycle_;
	q.push_back({pkt, cycle_});
	injected_++;
	if (trace_enabled_) trace_.push_back({cycle_, pkt.src, pkt.dst, pkt.tag, false});
	return true;
}

void Network::step_one_cycle() {
	const int n_ports = ports_per_router();
	bool any_move = false;

	// start-of-cycle occupancies gate this cycle's inserts; a separate flag
	// keeps every input port at one dequeue per cycle
	std::vector<std::vector<int>> occ(node_count_);
	std::vector<std::vector<char>> consumed(node_count_);
	for (int r = 0; r < node_count_; ++r) {
		occ[r].resize(n_ports);
		consumed[r].assign(n_ports, 0);
		for (int p = 0; p < n_ports; ++p)
			occ[r][p] = static_cast<int>(routers_[r].in[p].size());
	}

	// link traversal: one flit per output port per cycle
	for (int r = 0; r < node_count_; ++r) {
		Router& router = routers_[r];
		for (int o = 1; o < n_ports; ++o) {
			int nb = neighbor(r, o);
			if (nb < 0 || nb >= node_count_) continue;
			int nb_port = input_port_at_neighbor(r, o);

			int grant = -1;
			int start = router.rr_next[o];
			for (int k = 0; k < n_ports; ++k) {
				int p = (start + k) % n_ports;
				if (consumed[r][p] || router.in[p].empty()) continue;
				const Flit& head = router.in[p].front();
				if (head.ready_cycle > cycle_) continue;
				if (route_output(r, head.pkt.dst) != o) continue;
				// bubble rule: entering a ring from the local port keeps one
				// slot free so the ring itself can never fill and deadlock
				int needed = (cfg_.topology == Topology::Ring8 && p == 0) ? 2 : 1;
				if (occ[nb][nb_port] > cfg_.fifo_depth - needed) continue;
				grant = p;
				break;
			}
			if (grant < 0) continue;

			Flit flit = router.in[grant].front();
			router.in[grant].pop_front();
			consumed[r][grant] = 1;
			flit.ready_cycle = cycle_ + cfg_.router_pipeline_cycles;
			routers_[nb].in[nb_port].push_back(flit);
			router.rr_next[o] = (grant + 1) % n_ports;
			any_move = true;
		}
	}

	// shared ejection slot: at most one delivery per cycle network-wide,
	// keeping the delivered stream within the 32 bit/cycle monitor budget
	for (int k = 0; k < node_count_; ++k) {
		int r = (eject_rr_ + k) % node_count_;
		Router& router = routers_[r];
		int grant = -1;
		int start = router.rr_next[kEject];
		for (int i = 0; i < n_ports; ++i) {
			int p = (start + i) % n_ports;
			if (consumed[r][p] || router.in[p].empty()) continue;
			const Flit& head = router.in[p].front();
			if (head.ready_cycle > cycle_) continue;
			if (route_output(r, head.pkt.dst) != kEject) continue;
			grant = p;
			break;
		}
		if (grant < 0) continue;

		Flit flit = router.in[grant].front();
		router.in[grant].pop_front();
		router.rr_next[kEject] = (grant + 1) % n_ports;
		eject_rr_ = (r + 1) % node_count_;

		NoCPacket pkt = flit.pkt;
		pkt.deliver_cycle = cycle_ + 1;
		delivered_++;
		latency_sum_ += pkt.deliver_cycle - pkt.inject_cycle;
		if (trace_enabled_) trace_.push_back({cycle_, pkt.src, pkt.dst, pkt.tag, true});
		if (tap_) tap_->offer(pkt, cycle_);
		delivered_this_advance_.push_back(pkt);
		any_move = true;
		break;
	}

	if (any_move) peak_link_bits_ = 32;
	cycle_++;
}

std::vector<NoCPacket> Network::advance(std::uint64_t cycles) {
	delivered_this_advance_.clear();
	for (std::uint64_t i = 0; i < cycles; ++i) step_one_cycle();
	return std::move(delivered_this_advance_);
}

NoCStats Network::stats() const {
	NoCStats s;
	s.injected = injected_;
	s.delivered = delivered_;
	s.in_flight = injected_ - delivered_;
	s.mean_latency_cycles =
	    delivered_ ? static_cast<double>(latency_sum_) / static_cast<double>(delivered_) : 0.0;
	s.peak_link_bits_per_cycle = peak_link_bits_;
	s.elapsed_cycles = cycle_;
	s.offered_gbps = cycle_ ? static_cast<double>(delivered_) * 32.0 * cfg_.clock_hz /
	                              static_cast<double>(cycle_) / 1e9
	                        : 0.0;
	return s;
}

void Network::attach_tap(TapSink* sink) {
	if (tap_) throw TapAlreadyAttached("the NoC monitor tap is already in use");
	tap_ = sink;
}

std::string trace_to_csv(const std::vector<TraceEvent>& events) {
	std::ostringstream out;
	out << "cycle,src,dst,tag,event\n";
	for (const auto& e : events)
		out << e.cycle << ',' << e.src << ',' << e.dst << ',' << e.tag << ','
		    << (e.deliver ? "deliver" : "inject") << '\n';
	return out.str();
}

} // namespace memsoc
