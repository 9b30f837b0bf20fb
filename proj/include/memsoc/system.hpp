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

#ifndef MEMSOC_SYSTEM_HPP
#define MEMSOC_SYSTEM_HPP

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "memsoc/arrays.hpp"
#include "memsoc/bridge.hpp"
#include "memsoc/budget.hpp"
#include "memsoc/chipdesc.hpp"
#include "memsoc/control.hpp"
#include "memsoc/noc.hpp"
#include "memsoc/workload.hpp"

namespace memsoc {

constexpr int kProcessorNode = 7;
constexpr int kBridgeNode = 8; // mesh only

struct RunReport {
	std::string workload = "none";
	std::uint64_t seed = 0;
	std::uint64_t cycles = 0;
	NoCStats noc;
	std::uint64_t tx_words = 0;
	std::uint64_t beats_transferred = 0;
	std::uint64_t monitor_drops = 0;
	std::uint64_t inbound_words = 0;
	std::uint64_t captured_words = 0;
	std::uint64_t peer_monitor_words = 0;
	EnergyTrace energy;
	std::vector<IrqEvent> irq_events;
	SequencerTrace seq_trace;
	std::vector<std::uint64_t> ca_instructions;
	std::vector<std::uint64_t> traffic_rejected; // per-node backpressured attempts
};

std::string report_to_json_string(const RunReport& r, int indent = 2);
std::string report_to_text(const RunReport& r);
std::string irq_events_to_csv(const std::vector<IrqEvent>& events);

/// One chip: seven computing arrays, the NoC, the chip bridge, the dual-bank
/// register file and the scripted processor. Advances on a single logical
/// timeline at the NoC clock; everything is deterministic in
/// (description, workload, seed).
class System {
public:
	System(const ChipDescription& desc, std::uint64_t seed);
	~System();

	System(const System&) = delete;
	System& operator=(const System&) = delete;

	// --- workload ------------------------------------------------------------
	void load_workload(const Workload& w);
	void step();
	void run(std::uint64_t cycles);
	/// Run the loaded workload for its configured duration.
	void run_workload();
	std::uint64_t now() const { return cycle_; }

	// --- control plane ---------------------------------------------------------
	void jtag_write(int bank, std::uint32_t addr, std::uint32_t value);
	std::uint32_t jtag_read(int bank, std::uint32_t addr) const;
	/// Level on the asynchronous input interrupt; selects the active register
	/// bank from the next cycle boundary.
	void set_irq_in(bool level);
	bool irq_in() const { return irq_in_level_; }
	void raise_irq_out(IrqCause cause, const std::string& source);
	bool irq_out() const { return irq_out_level_; }
	void ack_irq_out() { irq_out_level_ = false; }
	const std::vector<IrqEvent>& irq_events() const { return irq_events_; }

	/// Execute a sequencer program until Halt or the cycle budget runs out.
	SequencerTrace run_sequencer(const std::vector<SeqInstruction>& prog,
	                             std::uint64_t max_cycles = 200000);

	/// Host side of the AXI stream: feed bytes toward the processor mailbox.
	void axi_stream_in(const std::vector<std::uint8_t>& bytes);
	/// Host side of the AXI stream: collect bytes the processor emitted.
	std::vector<std::uint8_t> axi_stream_out();
	const std::deque<std::uint8_t>& axi_mailbox() const { return axi_mailbox_; }

	// --- test machinery ----------------------------------------------------------
	/// targets: "ca0".."ca6", "shared0", "shared1"
	MbistResult mbist_run(const std::string& target);
	void set_scan_enable(bool on) { scan_.set_enable(on); }
	ScanResult scan_chain_check(std::uint64_t seed);
	ScanChain& scan_chain() { return scan_; }
	SramModel& shared_sram(int bank) { return shared_sram_.at(bank); }

	// --- components ----------------------------------------------------------
	Network& noc() { return *net_; }
	ChipBridge& bridge() { return *bridge_; }
	ComputeArray& ca(int id) { return *cas_.at(id); }
	int ca_count() const { return static_cast<int>(cas_.size()); }
	RegisterFile& regs() { return rf_; }
	const ChipDescription& description() const { return desc_; }

	/// Effective (active-bank) value of a configuration register.
	std::uint32_t active_reg(std::uint32_t addr) const { return rf_.active(addr); }
	int ca_clock_divider(int ca_id) const;

	// --- reporting --------------------------------------------------------------
	/// Activity counters with the per-device event totals folded in.
	ActivityCounters activity() const;
	RunReport report() const;

	// --- two-chip setups -------------------------------------------------------
	static void connect(System& a, System& b);
	static void run_pair(System& a, System& b, std::uint64_t cycles);

private:
	struct CaRuntime {
		std::vector<CaInstruction> program;
		std::size_t pc = 0;
		bool started = false;
		bool faulted = false;
		std::uint64_t next_ready = 0;
		std::vector<std::uint32_t> last_result;
		std::uint32_t last_received = 0;
		std::deque<std::uint32_t> mailbox;
		std::uint64_t retired = 0;
		bool done() const { return pc >= program.size(); }
	};
	struct SeqRuntime {
		std::vector<SeqInstruction> program;
		std::size_t pc = 0;
		bool halted = true;
		std::uint64_t next_ready = 0;
		std::vector<SeqTraceEntry> trace;
		bool done() const { return pc >= program.size(); }
	};

	class CaPort; // adapter giving each array its NoC endpoint

	void apply_pending_bank();
	void inject_traffic();
	void step_sequencer();
	void step_arrays();
	void drain_bridge_inbound();
	void route_deliveries(const std::vector<NoCPacket>& delivered);
	void advance_bridge();
	void move_axi();
	std::uint64_t instruction_cost_cycles(const ComputeArray& ca, const CaInstruction& in,
	                                      int divider) const;
	bool inject_from(int node, int dst, std::uint32_t payload);
	int route_field_node(std::uint32_t reg_addr, int field) const;

	ChipDescription desc_;
	std::uint64_t seed_;
	std::unique_ptr<Network> net_;
	std::unique_ptr<ChipBridge> bridge_;
	std::vector<std::unique_ptr<ComputeArray>> cas_;
	std::vector<std::unique_ptr<CaPort>> ca_ports_;
	RegisterFile rf_;
	ScanChain scan_;
	std::vector<SramModel> shared_sram_;

	Workload workload_;
	std::uint64_t workload_end_cycle_ = 0; // traffic injection window
	std::vector<CaRuntime> ca_rt_;
	SeqRuntime seq_rt_;
	SeqStatus seq_status_ = SeqStatus::Completed;

	std::uint64_t cycle_ = 0;
	std::optional<bool> pending_irq_in_;
	bool irq_in_level_ = false;
	bool irq_out_level_ = false;
	std::vector<IrqEvent> irq_events_;

	std::deque<std::uint32_t> seq_mailbox_;
	std::deque<std::uint8_t> axi_wire_in_;   // host -> chip, rate limited
	std::deque<std::uint8_t> axi_mailbox_;   // delivered to the sequencer
	std::deque<std::uint8_t> axi_out_;       // chip -> host
	double axi_credit_bytes_ = 8.0;          // one-burst allowance

	std::vector<RngStream> traffic_rng_;
	std::vector<std::vector<std::int64_t>> pair_tags_;
	std::vector<std::uint64_t> traffic_rejected_;
	std::deque<RxWord> pending_noc_entries_; // bridge words awaiting injection
	std::uint64_t peer_monitor_words_ = 0;
	std::uint64_t inbound_words_seen_ = 0;

	ActivityCounters activity_;
	std::uint64_t last_beats_total_ = 0;
	std::uint64_t last_rx_bytes_ = 0;
};

} // namespace memsoc

#endif // MEMSOC_SYSTEM_HPP
