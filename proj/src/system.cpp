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

#include "memsoc/system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "memsoc/errors.hpp"

namespace memsoc {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// CA port adapter
// ---------------------------------------------------------------------------

class System::CaPort : public CaNocPort {
public:
	CaPort(System* sys, int node) : sys_(sys), node_(node) {}
	bool send(int dst, std::uint32_t payload) override {
		return sys_->inject_from(node_, dst, payload);
	}
	std::optional<std::uint32_t> receive() override {
		auto& box = sys_->ca_rt_[node_].mailbox;
		if (box.empty()) return std::nullopt;
		std::uint32_t w = box.front();
		box.pop_front();
		return w;
	}

private:
	System* sys_;
	int node_;
};

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

System::System(const ChipDescription& desc, std::uint64_t seed)
    : desc_(desc), seed_(seed), scan_(desc.scan_chain_bits) {
	desc_.validate_structure();
	net_ = std::make_unique<Network>(desc_.noc);
	bridge_ = std::make_unique<ChipBridge>(desc_.bridge);
	bridge_->bridge_node_id = desc_.noc.topology == Topology::Mesh3x3 ? kBridgeNode : -1;
	net_->attach_tap(bridge_.get());

	int id = 0;
	for (const auto& b : desc_.blocks) {
		if (b.kind != BlockKind::ComputeArray) continue;
		cas_.push_back(std::make_unique<ComputeArray>(id, *b.compute, seed_));
		ca_ports_.push_back(std::make_unique<CaPort>(this, id));
		id++;
	}
	ca_rt_.resize(cas_.size());

	shared_sram_.emplace_back(65536);
	shared_sram_.emplace_back(65536);

	int n = net_->node_count();
	pair_tags_.assign(n, std::vector<std::int64_t>(n, 0));
	traffic_rejected_.assign(8, 0);
	for (int node = 0; node < 8; ++node)
		traffic_rng_.emplace_back(mix64(seed_, 0x545246 /* TRF */ + node));
}

System::~System() = default;

// ---------------------------------------------------------------------------
// Workload
// ---------------------------------------------------------------------------

void System::load_workload(const Workload& w) {
	w.validate();
	workload_ = w;
	for (auto& rt : ca_rt_) rt = CaRuntime{};
	for (const auto& p : w.ca_programs) {
		if (p.ca_id >= static_cast<int>(cas_.size()))
			throw BadInput("workload names array " + std::to_string(p.ca_id) +
			               " but the chip has " + std::to_string(cas_.size()));
		ca_rt_[p.ca_id].program = p.instructions;
		ca_rt_[p.ca_id].started = p.autostart;
	}
	seq_rt_ = SeqRuntime{};
	seq_rt_.program = w.sequencer;
	seq_rt_.halted = w.sequencer.empty();
	seq_status_ = SeqStatus::Completed;
	if (w.monitor_ready == MonitorReadyModel::Duty)
		bridge_->set_ready_model(ReadyModel::DutyCycle, w.monitor_duty, seed_);
	else
		bridge_->set_ready_model(ReadyModel::AlwaysReady);
}

void System::run(std::uint64_t cycles) {
	for (std::uint64_t i = 0; i < cycles; ++i) step();
}

void System::run_workload() { run(workload_.duration_cycles); }

// ---------------------------------------------------------------------------
// Control plane
// ---------------------------------------------------------------------------

void System::jtag_write(int bank, std::uint32_t addr, std::uint32_t value) {
	rf_.write(bank, addr, value);
}

std::uint32_t System::jtag_read(int bank, std::uint32_t addr) const {
	return rf_.read(bank, addr);
}

void System::set_irq_in(bool level) {
	irq_in_level_ = level;
	pending_irq_in_ = level; // takes effect at the next cycle boundary
}

void System::raise_irq_out(IrqCause cause, const std::string& source) {
	irq_out_level_ = true;
	irq_events_.push_back({cycle_, source, cause});
}

void System::apply_pending_bank() {
	if (!pending_irq_in_) return;
	rf_.select_bank(*pending_irq_in_ ? 1 : 0);
	pending_irq_in_.reset();
}

int System::ca_clock_divider(int ca_id) const {
	std::uint32_t div = rf_.active(RegisterFile::kCaClkDivBase + ca_id) & 0xFF;
	return div == 0 ? 1 : static_cast<int>(div);
}

// ---------------------------------------------------------------------------
// Sequencer
// ---------------------------------------------------------------------------

SequencerTrace System::run_sequencer(const std::vector<SeqInstruction>& prog,
                                     std::uint64_t max_cycles) {
	seq_rt_ = SeqRuntime{};
	seq_rt_.program = prog;
	seq_rt_.halted = prog.empty();
	seq_status_ = SeqStatus::Completed;
	std::uint64_t deadline = cycle_ + max_cycles;
	while (!seq_rt_.halted && cycle_ < deadline) step();
	SequencerTrace trace;
	trace.status = seq_rt_.halted ? SeqStatus::Completed : SeqStatus::TimedOut;
	seq_status_ = trace.status;
	trace.entries = seq_rt_.trace;
	return trace;
}

void System::step_sequencer() {
	if (seq_rt_.halted || cycle_ < seq_rt_.next_ready) return;
	if (seq_rt_.done()) {
		seq_rt_.halted = true;
		raise_irq_out(IrqCause::Ready, "sequencer");
		return;
	}
	std::uint32_t div = rf_.active(RegisterFile::kSeqClkDiv) & 0xFF;
	if (div == 0) div = 2; // 500 MHz core on the 1 GHz kernel clock

	const SeqInstruction& in = seq_rt_.program[seq_rt_.pc];
	std::uint32_t result = 0;
	switch (in.op) {
	case SeqOp::WriteReg:
		rf_.write(in.bank, in.addr, in.value);
		result = in.value;
		break;
	case SeqOp::ReadReg: {
		result = rf_.read(in.bank, in.addr);
		for (int i = 0; i < 4; ++i)
			axi_out_.push_back(static_cast<std::uint8_t>((result >> (8 * i)) & 0xFF));
		activity_.axi_byte_cycles += 4;
		break;
	}
	case SeqOp::SendNoC:
		if (!inject_from(kProcessorNode, in.dst, in.payload)) {
			seq_rt_.next_ready = cycle_ + 1; // backpressure, retry
			return;
		}
		result = in.payload;
		break;
	case SeqOp::AwaitNoC: {
		if (seq_mailbox_.empty()) {
			seq_rt_.next_ready = cycle_ + 1; // blocked
			return;
		}
		result = seq_mailbox_.front();
		seq_mailbox_.pop_front();
		for (int i = 0; i < 4; ++i)
			axi_out_.push_back(static_cast<std::uint8_t>((result >> (8 * i)) & 0xFF));
		activity_.axi_byte_cycles += 4;
		break;
	}
	case SeqOp::RunCA: {
		if (in.ca < 0 || in.ca >= static_cast<int>(cas_.size()))
			throw BadInput("RunCA names array " + std::to_string(in.ca));
		CaRuntime& rt = ca_rt_[in.ca];
		rt.pc = 0;
		rt.started = true;
		rt.faulted = false;
		rt.next_ready = cycle_ + 1;
		result = static_cast<std::uint32_t>(in.ca);
		break;
	}
	case SeqOp::WaitIrq:
		if (!irq_in_level_) {
			seq_rt_.next_ready = cycle_ + 1; // blocked until the level rises
			return;
		}
		break;
	case SeqOp::RaiseIrqOut:
		raise_irq_out(in.cause, "sequencer");
		break;
	case SeqOp::Halt:
		seq_rt_.trace.push_back({cycle_, seq_rt_.pc, in.op, 0});
		seq_rt_.pc++;
		seq_rt_.halted = true;
		raise_irq_out(IrqCause::Ready, "sequencer");
		activity_.riscv_cycles += 1;
		return;
	}
	seq_rt_.trace.push_back({cycle_, seq_rt_.pc, in.op, result});
	seq_rt_.pc++;
	seq_rt_.next_ready = cycle_ + div;
	activity_.riscv_cycles += 1;
	activity_.shared_sram_cycles += 1; // instruction fetch from the shared SRAM
}

// ---------------------------------------------------------------------------
// Computing arrays
// ---------------------------------------------------------------------------

std::uint64_t System::instruction_cost_cycles(const ComputeArray& ca, const CaInstruction& in,
                                              int divider) const {
	// analog operations run on the fixed analog clock; digital ones on the
	// array's divided clock
	std::uint64_t analog_ratio = static_cast<std::uint64_t>(
	    std::ceil(desc_.noc.clock_hz / ca.config().analog_clock_hz));
	auto words = [](std::size_t bytes) -> std::uint64_t {
		return std::max<std::uint64_t>(1, (bytes + 3) / 4);
	};
	switch (in.op) {
	case CaOp::LoadSram: return words(in.count) * divider;
	case CaOp::StoreSram: return words(in.bytes.size()) * divider;
	case CaOp::Program:
		return static_cast<std::uint64_t>(ca.config().rows) * ca.config().cols * analog_ratio;
	case CaOp::Mvm: return static_cast<std::uint64_t>(ca.config().mvm_pipeline_cycles) * analog_ratio;
	case CaOp::Search:
	case CaOp::SnnStep: return analog_ratio;
	case CaOp::PcSample:
		return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(in.samples)) * analog_ratio;
	case CaOp::SendNoC:
	case CaOp::RecvNoC: return static_cast<std::uint64_t>(divider);
	}
	return 1;
}

void System::step_arrays() {
	std::uint32_t enable = rf_.active(RegisterFile::kCaEnable) & 0x7F;
	if (enable == 0) enable = 0x7F; // reset value: everything enabled
	for (std::size_t i = 0; i < cas_.size(); ++i) {
		CaRuntime& rt = ca_rt_[i];
		if (!rt.started || rt.faulted || rt.done()) continue;
		if (!(enable & (1u << i))) continue;
		if (cycle_ < rt.next_ready) continue;
		ComputeArray& ca = *cas_[i];
		const CaInstruction& in = rt.program[rt.pc];
		try {
			auto res = ca_step_instruction(ca, in, rt.pc, rt.last_result, rt.last_received,
			                               ca_ports_[i].get());
			if (!res) {
				rt.next_ready = cycle_ + 1; // stalled on the NoC
				continue;
			}
			if (in.op != CaOp::SendNoC && !res->words.empty()) rt.last_result = res->words;
			if (in.op == CaOp::RecvNoC && !res->words.empty()) rt.last_received = res->words[0];

			int div = ca_clock_divider(static_cast<int>(i));
			std::uint64_t cost = instruction_cost_cycles(ca, in, div);
			rt.next_ready = cycle_ + cost;
			rt.pc++;
			rt.retired++;
			ca.add_digital_cycles(1);

			activity_.ca_ctrl_cycles += 1;
			switch (in.op) {
			case CaOp::LoadSram:
				activity_.ca_sram_cycles += std::max<std::uint64_t>(1, (in.count + 3) / 4);
				break;
			case CaOp::StoreSram:
				activity_.ca_sram_cycles +=
				    std::max<std::uint64_t>(1, (in.bytes.size() + 3) / 4);
				break;
			case CaOp::Program:
				activity_.ca_analog_cycles +=
				    static_cast<std::uint64_t>(ca.config().rows) * ca.config().cols;
				break;
			case CaOp::Mvm:
				activity_.ca_analog_cycles += ca.config().mvm_pipeline_cycles;
				break;
			case CaOp::Search:
			case CaOp::SnnStep: activity_.ca_analog_cycles += 1; break;
			case CaOp::PcSample:
				activity_.ca_analog_cycles += static_cast<std::uint64_t>(in.samples);
				break;
			default: break;
			}
		} catch (const SramOutOfRange&) {
			rt.faulted = true;
			raise_irq_out(IrqCause::SoftError, "ca" + std::to_string(i));
		}
	}
}

// ---------------------------------------------------------------------------
// Traffic and transport
// ---------------------------------------------------------------------------

bool System::inject_from(int node, int dst, std::uint32_t payload) {
	NoCPacket pkt;
	pkt.src = node;
	pkt.dst = dst;
	pkt.payload = payload;
	pkt.tag = pair_tags_[node][dst];
	if (!net_->inject(pkt)) return false;
	pair_tags_[node][dst]++;
	return true;
}

void System::inject_traffic() {
	if (!workload_.traffic) return;
	const TrafficSpec& t = *workload_.traffic;
	for (int src = 0; src < 8; ++src) {
		RngStream& rng = traffic_rng_[src];
		if (!rng.next_bernoulli(t.rate)) continue;
		int dst = src;
		switch (t.pattern) {
		case TrafficPattern::UniformRandom: {
			int draw = static_cast<int>(rng.next_below(7));
			dst = draw < src ? draw : draw + 1;
			break;
		}
		case TrafficPattern::Hotspot: dst = t.hotspot_node; break;
		case TrafficPattern::Pipeline: dst = (src + 1) % 8; break;
		}
		if (dst == src) continue;
		std::uint32_t payload = static_cast<std::uint32_t>(
		    (static_cast<std::uint32_t>(src) << 28) ^
		    (static_cast<std::uint32_t>(dst) << 24) ^
		    (static_cast<std::uint32_t>(pair_tags_[src][dst]) & 0xFFFFFF));
		if (!inject_from(src, dst, payload)) traffic_rejected_[src]++;
	}
}

int System::route_field_node(std::uint32_t reg_addr, int field) const {
	std::uint32_t v = (rf_.active(reg_addr) >> (4 * field)) & 0xF;
	if (v == 0) return kProcessorNode; // reset default
	int node = static_cast<int>(v) - 1;
	return std::clamp(node, 0, 7);
}

void System::drain_bridge_inbound() {
	auto& inbound = bridge_->inbound_words();
	while (!inbound.empty()) {
		pending_noc_entries_.push_back(inbound.front());
		inbound.pop_front();
		inbound_words_seen_++;
	}
	// mirrored monitor traffic from a peer chip is captured, not re-injected
	while (!pending_noc_entries_.empty() &&
	       pending_noc_entries_.front().from_peer &&
	       pending_noc_entries_.front().stream == ChipBridge::kMonitorStream) {
		peer_monitor_words_++;
		pending_noc_entries_.pop_front();
	}
	if (pending_noc_entries_.empty()) return;

	// at most one word enters the NoC per cycle (32-bit path)
	const RxWord& w = pending_noc_entries_.front();
	int dst = w.from_peer
	              ? route_field_node(RegisterFile::kInboundRoute, w.stream & 0x3)
	              : route_field_node(RegisterFile::kTtlRxRoute, w.stream & 0x1);
	if (desc_.noc.topology == Topology::Mesh3x3) {
		if (inject_from(kBridgeNode, dst, w.word)) pending_noc_entries_.pop_front();
	} else {
		// no bridge router on the ring; hand the word straight to the endpoint
		if (dst == kProcessorNode)
			seq_mailbox_.push_back(w.word);
		else
			ca_rt_[dst].mailbox.push_back(w.word);
		pending_noc_entries_.pop_front();
	}
}

void System::route_deliveries(const std::vector<NoCPacket>& delivered) {
	for (const auto& pkt : delivered) {
		if (pkt.dst == kProcessorNode) {
			seq_mailbox_.push_back(pkt.payload);
		} else if (pkt.dst < static_cast<int>(cas_.size())) {
			ca_rt_[pkt.dst].mailbox.push_back(pkt.payload);
		}
		// bridge-node deliveries already went out through the monitor tap
	}
}

void System::advance_bridge() {
	std::uint64_t beats = std::max<std::uint64_t>(
	    1, static_cast<std::uint64_t>(std::llround(desc_.bridge.tx_rate_bps / desc_.noc.clock_hz)));
	bridge_->advance_beats(beats);

	std::uint64_t beats_total = bridge_->beats_transferred();
	std::uint64_t rx_total = bridge_->rx_bytes_accepted();
	activity_.lvds_word_cycles += beats_total / 2 - last_beats_total_ / 2;
	activity_.bridge_in_cycles += rx_total - last_rx_bytes_;
	if (beats_total != last_beats_total_ || rx_total != last_rx_bytes_)
		activity_.bridge_active_cycles += 1;
	last_beats_total_ = beats_total;
	last_rx_bytes_ = rx_total;
}

void System::move_axi() {
	double per_cycle = 1e8 / desc_.noc.clock_hz; // 8 lanes x 100 Mbit/s in bytes
	axi_credit_bytes_ = std::min(8.0, axi_credit_bytes_ + per_cycle);
	while (!axi_wire_in_.empty() && axi_credit_bytes_ >= 1.0) {
		axi_mailbox_.push_back(axi_wire_in_.front());
		axi_wire_in_.pop_front();
		axi_credit_bytes_ -= 1.0;
		activity_.axi_byte_cycles += 1;
	}
}

void System::axi_stream_in(const std::vector<std::uint8_t>& bytes) {
	for (auto b : bytes) axi_wire_in_.push_back(b);
}

std::vector<std::uint8_t> System::axi_stream_out() {
	std::vector<std::uint8_t> out(axi_out_.begin(), axi_out_.end());
	axi_out_.clear();
	return out;
}

// ---------------------------------------------------------------------------
// Test machinery
// ---------------------------------------------------------------------------

MbistResult System::mbist_run(const std::string& target) {
	if (target.rfind("ca", 0) == 0 && target.size() == 3) {
		int id = target[2] - '0';
		if (id >= 0 && id < static_cast<int>(cas_.size()))
			return march_cminus(cas_[id]->sram());
	}
	if (target == "shared0") return march_cminus(shared_sram_[0]);
	if (target == "shared1") return march_cminus(shared_sram_[1]);
	throw BadInput("unknown BIST target '" + target + "'");
}

ScanResult System::scan_chain_check(std::uint64_t seed) { return scan_.check(seed); }

// ---------------------------------------------------------------------------
// Kernel step
// ---------------------------------------------------------------------------

void System::step() {
	apply_pending_bank();
	inject_traffic();
	step_sequencer();
	step_arrays();
	drain_bridge_inbound();

	std::uint64_t delivered_before = net_->stats().delivered;
	bool had_flits = net_->in_flight() > 0;
	auto delivered = net_->advance(1);
	route_deliveries(delivered);
	if (had_flits || net_->stats().delivered != delivered_before)
		activity_.noc_active_cycles += 1;

	advance_bridge();
	move_axi();

	activity_.elapsed_cycles += 1;
	cycle_ += 1;
}

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

ActivityCounters System::activity() const {
	ActivityCounters a = activity_;
	for (const auto& ca : cas_) {
		const DeviceEvents& ev = ca->crossbar().events();
		a.form_events += ev.form_events;
		a.set_events += ev.set_events;
		a.reset_events += ev.reset_events;
	}
	return a;
}

RunReport System::report() const {
	RunReport r;
	r.workload = workload_.name;
	r.seed = seed_;
	r.cycles = cycle_;
	r.noc = net_->stats();
	r.tx_words = bridge_->tx_words_pushed();
	r.beats_transferred = bridge_->beats_transferred();
	r.monitor_drops = bridge_->monitor_drops();
	r.inbound_words = inbound_words_seen_;
	r.captured_words = bridge_->captured().size();
	r.peer_monitor_words = peer_monitor_words_;
	r.energy = energy_report(desc_, activity());
	r.irq_events = irq_events_;
	r.seq_trace.status = seq_status_;
	r.seq_trace.entries = seq_rt_.trace;
	for (const auto& rt : ca_rt_) r.ca_instructions.push_back(rt.retired);
	r.traffic_rejected = traffic_rejected_;
	return r;
}

// ---------------------------------------------------------------------------
// Two-chip setups
// ---------------------------------------------------------------------------

void System::connect(System& a, System& b) { ChipBridge::connect(*a.bridge_, *b.bridge_); }

void System::run_pair(System& a, System& b, std::uint64_t cycles) {
	for (std::uint64_t i = 0; i < cycles; ++i) {
		a.step();
		b.step();
	}
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

std::string irq_events_to_csv(const std::vector<IrqEvent>& events) {
	std::ostringstream out;
	out << "cycle,source,cause\n";
	for (const auto& e : events)
		out << e.cycle << ',' << e.source << ',' << to_string(e.cause) << '\n';
	return out.str();
}

std::string report_to_json_string(const RunReport& r, int indent) {
	ojson j;
	j["workload"] = r.workload;
	j["seed"] = r.seed;
	j["cycles"] = r.cycles;
	j["noc"] = ojson{{"injected", r.noc.injected},
	                 {"delivered", r.noc.delivered},
	                 {"in_flight", r.noc.in_flight},
	                 {"mean_latency_cycles", r.noc.mean_latency_cycles},
	                 {"peak_link_bits_per_cycle", r.noc.peak_link_bits_per_cycle},
	                 {"offered_gbps", r.noc.offered_gbps}};
	j["bridge"] = ojson{{"tx_words", r.tx_words},
	                    {"beats_transferred", r.beats_transferred},
	                    {"monitor_drops", r.monitor_drops},
	                    {"inbound_words", r.inbound_words},
	                    {"captured_words", r.captured_words},
	                    {"peer_monitor_words", r.peer_monitor_words}};
	ojson rails = ojson::object();
	for (const auto& [rail, pj] : r.energy.per_rail_pj) rails[rail] = pj;
	j["energy"] = ojson{{"per_rail_pj", rails},
	                    {"memristor_event_pj", r.energy.memristor_event_pj},
	                    {"total_pj", r.energy.total_pj}};
	j["irq_events"] = ojson::array();
	for (const auto& e : r.irq_events)
		j["irq_events"].push_back(
		    ojson{{"cycle", e.cycle}, {"source", e.source}, {"cause", to_string(e.cause)}});
	j["sequencer"] = ojson::object();
	j["sequencer"]["status"] =
	    r.seq_trace.status == SeqStatus::Completed ? "completed" : "timed_out";
	j["sequencer"]["entries"] = ojson::array();
	for (const auto& e : r.seq_trace.entries)
		j["sequencer"]["entries"].push_back(ojson{{"cycle", e.cycle},
		                                          {"index", e.instr_index},
		                                          {"op", to_string(e.op)},
		                                          {"result", e.result}});
	j["ca_instructions"] = r.ca_instructions;
	j["traffic_rejected"] = r.traffic_rejected;
	return j.dump(indent) + "\n";
}

std::string report_to_text(const RunReport& r) {
	std::ostringstream out;
	char line[200];
	std::snprintf(line, sizeof line, "workload %s, seed %llu, %llu cycles\n",
	              r.workload.c_str(), static_cast<unsigned long long>(r.seed),
	              static_cast<unsigned long long>(r.cycles));
	out << line;
	std::snprintf(line, sizeof line,
	              "noc: injected %llu, delivered %llu, in flight %llu, mean latency %.2f, "
	              "offered %.2f Gbit/s\n",
	              static_cast<unsigned long long>(r.noc.injected),
	              static_cast<unsigned long long>(r.noc.delivered),
	              static_cast<unsigned long long>(r.noc.in_flight), r.noc.mean_latency_cycles,
	              r.noc.offered_gbps);
	out << line;
	std::snprintf(line, sizeof line,
	              "bridge: %llu words out, %llu beats, %llu drops, %llu inbound words, "
	              "%llu captured\n",
	              static_cast<unsigned long long>(r.tx_words),
	              static_cast<unsigned long long>(r.beats_transferred),
	              static_cast<unsigned long long>(r.monitor_drops),
	              static_cast<unsigned long long>(r.inbound_words),
	              static_cast<unsigned long long>(r.captured_words));
	out << line;
	std::snprintf(line, sizeof line, "energy: %.1f pJ total (%.1f pJ memristor events)\n",
	              r.energy.total_pj, r.energy.memristor_event_pj);
	out << line;
	for (const auto& [rail, pj] : r.energy.per_rail_pj) {
		if (pj == 0.0) continue;
		std::snprintf(line, sizeof line, "  %-10s %.1f pJ\n", rail.c_str(), pj);
		out << line;
	}
	out << "events:\n" << irq_events_to_csv(r.irq_events);
	std::snprintf(line, sizeof line, "sequencer: %s, %zu trace entries\n",
	              r.seq_trace.status == SeqStatus::Completed ? "completed" : "timed out",
	              r.seq_trace.entries.size());
	out << line;
	return out.str();
}

} // namespace memsoc
