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

#include "memsoc/workload.hpp"

#include <json.hpp>

#include "memsoc/errors.hpp"

namespace memsoc {

using ojson = nlohmann::ordered_json;

void Workload::validate() const {
	if (traffic) {
		if (traffic->rate < 0.0 || traffic->rate > 1.0)
			throw BadInput("traffic rate must lie in [0, 1] packets/node/cycle");
		if (traffic->hotspot_node < 0 || traffic->hotspot_node > 7)
			throw BadInput("hotspot node must name one of the 8 endpoints");
	}
	for (const auto& p : ca_programs)
		if (p.ca_id < 0 || p.ca_id > 6)
			throw BadInput("ca_id must lie in [0, 6]");
	if (monitor_duty < 0.0 || monitor_duty > 1.0)
		throw BadInput("monitor ready duty must lie in [0, 1]");
}

namespace {

const char* to_string(TrafficPattern p) {
	switch (p) {
	case TrafficPattern::UniformRandom: return "uniform_random";
	case TrafficPattern::Hotspot: return "hotspot";
	case TrafficPattern::Pipeline: return "pipeline";
	}
	return "?";
}

TrafficPattern traffic_pattern_from(const std::string& s) {
	if (s == "uniform_random") return TrafficPattern::UniformRandom;
	if (s == "hotspot") return TrafficPattern::Hotspot;
	if (s == "pipeline") return TrafficPattern::Pipeline;
	throw BadInput("unknown traffic pattern '" + s + "'");
}

const char* to_string(SendSource s) {
	switch (s) {
	case SendSource::Immediate: return "imm";
	case SendSource::Result: return "result";
	case SendSource::Received: return "rx";
	}
	return "?";
}

SendSource send_source_from(const std::string& s) {
	if (s == "imm") return SendSource::Immediate;
	if (s == "result") return SendSource::Result;
	if (s == "rx") return SendSource::Received;
	throw BadInput("unknown send source '" + s + "'");
}

CaOp ca_op_from(const std::string& s) {
	if (s == "load_sram") return CaOp::LoadSram;
	if (s == "store_sram") return CaOp::StoreSram;
	if (s == "program") return CaOp::Program;
	if (s == "mvm") return CaOp::Mvm;
	if (s == "search") return CaOp::Search;
	if (s == "snn_step") return CaOp::SnnStep;
	if (s == "pc_sample") return CaOp::PcSample;
	if (s == "send_noc") return CaOp::SendNoC;
	if (s == "recv_noc") return CaOp::RecvNoC;
	throw BadInput("unknown array instruction '" + s + "'");
}

ojson ca_instruction_to_json(const CaInstruction& in) {
	ojson j{{"op", to_string(in.op)}};
	switch (in.op) {
	case CaOp::LoadSram:
		j["addr"] = in.addr;
		j["count"] = in.count;
		break;
	case CaOp::StoreSram:
		j["addr"] = in.addr;
		j["bytes"] = in.bytes;
		break;
	case CaOp::Program:
		j["levels"] = in.levels;
		break;
	case CaOp::Mvm:
		if (!in.dac_codes.empty()) j["x"] = in.dac_codes;
		break;
	case CaOp::Search:
		j["key"] = in.key;
		break;
	case CaOp::SnnStep:
		j["spikes"] = in.spikes;
		break;
	case CaOp::PcSample:
		j["n"] = in.samples;
		break;
	case CaOp::SendNoC:
		j["dst"] = in.dst;
		j["source"] = to_string(in.source);
		if (in.source == SendSource::Immediate) j["payload"] = in.payload;
		if (in.source == SendSource::Result) j["result_index"] = in.result_index;
		break;
	case CaOp::RecvNoC:
		break;
	}
	return j;
}

CaInstruction ca_instruction_from_json(const ojson& j) {
	CaInstruction in;
	in.op = ca_op_from(j.at("op").get<std::string>());
	switch (in.op) {
	case CaOp::LoadSram:
		in.addr = j.at("addr").get<std::size_t>();
		in.count = j.at("count").get<std::size_t>();
		break;
	case CaOp::StoreSram:
		in.addr = j.at("addr").get<std::size_t>();
		in.bytes = j.at("bytes").get<std::vector<std::uint8_t>>();
		break;
	case CaOp::Program:
		in.levels = j.at("levels").get<std::vector<std::vector<int>>>();
		break;
	case CaOp::Mvm:
		if (j.contains("x")) in.dac_codes = j.at("x").get<std::vector<int>>();
		break;
	case CaOp::Search:
		in.key = j.at("key").get<std::string>();
		break;
	case CaOp::SnnStep:
		in.spikes = j.at("spikes").get<std::vector<std::uint8_t>>();
		break;
	case CaOp::PcSample:
		in.samples = j.at("n").get<int>();
		break;
	case CaOp::SendNoC:
		in.dst = j.at("dst").get<int>();
		if (j.contains("source")) in.source = send_source_from(j.at("source").get<std::string>());
		if (j.contains("payload")) in.payload = j.at("payload").get<std::uint32_t>();
		if (j.contains("result_index")) in.result_index = j.at("result_index").get<std::size_t>();
		break;
	case CaOp::RecvNoC:
		break;
	}
	return in;
}

SeqOp seq_op_from(const std::string& s) {
	if (s == "write_reg") return SeqOp::WriteReg;
	if (s == "read_reg") return SeqOp::ReadReg;
	if (s == "send_noc") return SeqOp::SendNoC;
	if (s == "await_noc") return SeqOp::AwaitNoC;
	if (s == "run_ca") return SeqOp::RunCA;
	if (s == "wait_irq") return SeqOp::WaitIrq;
	if (s == "raise_irq_out") return SeqOp::RaiseIrqOut;
	if (s == "halt") return SeqOp::Halt;
	throw BadInput("unknown sequencer instruction '" + s + "'");
}

ojson seq_instruction_to_json(const SeqInstruction& in) {
	ojson j{{"op", to_string(in.op)}};
	switch (in.op) {
	case SeqOp::WriteReg:
		j["bank"] = in.bank;
		j["addr"] = in.addr;
		j["value"] = in.value;
		break;
	case SeqOp::ReadReg:
		j["bank"] = in.bank;
		j["addr"] = in.addr;
		break;
	case SeqOp::SendNoC:
		j["dst"] = in.dst;
		j["payload"] = in.payload;
		break;
	case SeqOp::RunCA:
		j["ca"] = in.ca;
		break;
	case SeqOp::RaiseIrqOut:
		j["cause"] = to_string(in.cause);
		break;
	default:
		break;
	}
	return j;
}

SeqInstruction seq_instruction_from_json(const ojson& j) {
	SeqInstruction in;
	in.op = seq_op_from(j.at("op").get<std::string>());
	switch (in.op) {
	case SeqOp::WriteReg:
		in.bank = j.at("bank").get<int>();
		in.addr = j.at("addr").get<std::uint32_t>();
		in.value = j.at("value").get<std::uint32_t>();
		break;
	case SeqOp::ReadReg:
		in.bank = j.at("bank").get<int>();
		in.addr = j.at("addr").get<std::uint32_t>();
		break;
	case SeqOp::SendNoC:
		in.dst = j.at("dst").get<int>();
		in.payload = j.at("payload").get<std::uint32_t>();
		break;
	case SeqOp::RunCA:
		in.ca = j.at("ca").get<int>();
		break;
	case SeqOp::RaiseIrqOut:
		in.cause = j.at("cause").get<std::string>() == "soft_error" ? IrqCause::SoftError
		                                                            : IrqCause::Ready;
		break;
	default:
		break;
	}
	return in;
}

} // namespace

std::string to_json_string(const Workload& w, int indent) {
	ojson j;
	j["name"] = w.name;
	j["duration_cycles"] = w.duration_cycles;
	j["seed"] = w.seed;
	if (w.traffic) {
		j["traffic"] = ojson{{"pattern", to_string(w.traffic->pattern)},
		                     {"rate", w.traffic->rate},
		                     {"hotspot_node", w.traffic->hotspot_node}};
	}
	j["ca_programs"] = ojson::array();
	for (const auto& p : w.ca_programs) {
		ojson pj{{"ca_id", p.ca_id}, {"autostart", p.autostart}};
		pj["instructions"] = ojson::array();
		for (const auto& in : p.instructions)
			pj["instructions"].push_back(ca_instruction_to_json(in));
		j["ca_programs"].push_back(std::move(pj));
	}
	j["sequencer"] = ojson::array();
	for (const auto& in : w.sequencer) j["sequencer"].push_back(seq_instruction_to_json(in));
	j["monitor_ready"] = w.monitor_ready == MonitorReadyModel::Always ? "always" : "duty";
	j["monitor_duty"] = w.monitor_duty;
	return j.dump(indent) + "\n";
}

Workload workload_from_json_string(const std::string& text) {
	try {
		ojson j = ojson::parse(text);
		Workload w;
		w.name = j.value("name", std::string("unnamed"));
		w.duration_cycles = j.value("duration_cycles", std::uint64_t{0});
		w.seed = j.value("seed", std::uint64_t{0});
		if (j.contains("traffic") && !j.at("traffic").is_null()) {
			const auto& tj = j.at("traffic");
			TrafficSpec t;
			t.pattern = traffic_pattern_from(tj.at("pattern").get<std::string>());
			t.rate = tj.at("rate").get<double>();
			t.hotspot_node = tj.value("hotspot_node", 7);
			w.traffic = t;
		}
		if (j.contains("ca_programs")) {
			for (const auto& pj : j.at("ca_programs")) {
				CaProgram p;
				p.ca_id = pj.at("ca_id").get<int>();
				p.autostart = pj.value("autostart", true);
				for (const auto& ij : pj.at("instructions"))
					p.instructions.push_back(ca_instruction_from_json(ij));
				w.ca_programs.push_back(std::move(p));
			}
		}
		if (j.contains("sequencer"))
			for (const auto& ij : j.at("sequencer"))
				w.sequencer.push_back(seq_instruction_from_json(ij));
		if (j.value("monitor_ready", std::string("always")) == "duty")
			w.monitor_ready = MonitorReadyModel::Duty;
		w.monitor_duty = j.value("monitor_duty", 1.0);
		w.validate();
		return w;
	} catch (const nlohmann::json::exception& e) {
		throw BadInput(std::string("workload: ") + e.what());
	}
}

} // namespace memsoc
