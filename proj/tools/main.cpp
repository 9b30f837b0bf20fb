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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "memsoc/budget.hpp"
#include "memsoc/chipdesc.hpp"
#include "memsoc/errors.hpp"
#include "memsoc/system.hpp"
#include "memsoc/workload.hpp"

namespace {

using memsoc::BadInput;

std::string read_input(const std::string& path) {
	if (path == "-") {
		std::ostringstream buf;
		buf << std::cin.rdbuf();
		return buf.str();
	}
	std::ifstream in(path, std::ios::binary);
	if (!in) throw BadInput("cannot open '" + path + "'");
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw BadInput("cannot write '" + path + "'");
	out << data;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& data) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw BadInput("cannot write '" + path + "'");
	out.write(reinterpret_cast<const char*>(data.data()),
	          static_cast<std::streamsize>(data.size()));
}

bool ends_with(const std::string& s, const std::string& suffix) {
	return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_describe() {
	std::cout << memsoc::to_json_string(memsoc::reference_chip());
	return 0;
}

int cmd_validate(const std::string& desc_path, bool strict, const std::string& format) {
	auto desc = memsoc::chip_from_json_string(read_input(desc_path));
	auto violations = memsoc::validate_floorplan(desc);
	if (format == "json") {
		nlohmann::ordered_json j = nlohmann::ordered_json::array();
		for (const auto& v : violations)
			j.push_back({{"kind", memsoc::to_string(v.kind)},
			             {"subject", v.subject},
			             {"detail", v.detail}});
		std::cout << j.dump(2) << "\n";
	} else {
		if (violations.empty()) {
			std::cout << "floorplan compliant\n";
		} else {
			for (const auto& v : violations)
				std::cout << memsoc::to_string(v.kind) << " " << v.subject << ": " << v.detail
				          << "\n";
		}
	}
	return (strict && !violations.empty()) ? 1 : 0;
}

int cmd_audit(const std::string& desc_path, bool strict, const std::string& format) {
	auto desc = memsoc::chip_from_json_string(read_input(desc_path));
	auto report = memsoc::audit(desc);
	auto bw = memsoc::bandwidth_audit(desc);
	if (format == "json")
		std::cout << memsoc::audit_to_json_string(report, bw);
	else
		std::cout << memsoc::audit_to_text(report, bw);
	return (strict && !report.mismatches.empty()) ? 1 : 0;
}

int cmd_simulate(const std::string& desc_path, const std::string& workload_path,
                 std::uint64_t seed, bool seed_given, const std::string& trace_path,
                 const std::string& monitor_path, const std::string& format) {
	auto desc = memsoc::chip_from_json_string(read_input(desc_path));
	auto workload = memsoc::workload_from_json_string(read_input(workload_path));
	std::uint64_t effective_seed = seed_given ? seed : workload.seed;

	memsoc::System system(desc, effective_seed);
	if (!trace_path.empty()) system.noc().enable_trace(true);
	system.load_workload(workload);
	system.run_workload();

	auto report = system.report();
	report.seed = effective_seed;
	if (!trace_path.empty()) {
		std::string csv = memsoc::trace_to_csv(system.noc().trace());
		write_file(trace_path, csv);
	}
	if (!monitor_path.empty()) {
		const auto& captured = system.bridge().captured();
		if (ends_with(monitor_path, ".csv"))
			write_file(monitor_path, memsoc::capture_to_csv(captured));
		else
			write_file(monitor_path, memsoc::capture_to_binary(captured));
	}
	if (format == "json")
		std::cout << memsoc::report_to_json_string(report);
	else
		std::cout << memsoc::report_to_text(report);
	return 0;
}

int cmd_bist(const std::string& desc_path, const std::string& target, std::uint64_t seed,
             bool strict, const std::string& format) {
	auto desc = memsoc::chip_from_json_string(read_input(desc_path));
	memsoc::System system(desc, seed);

	std::vector<std::string> targets;
	if (target.empty()) {
		for (int i = 0; i < system.ca_count(); ++i) targets.push_back("ca" + std::to_string(i));
		targets.push_back("shared0");
		targets.push_back("shared1");
	} else {
		targets.push_back(target);
	}

	bool all_pass = true;
	nlohmann::ordered_json j;
	j["mbist"] = nlohmann::ordered_json::array();
	for (const auto& t : targets) {
		auto res = system.mbist_run(t);
		all_pass = all_pass && res.pass;
		nlohmann::ordered_json e{{"target", t},
		                         {"pass", res.pass},
		                         {"addresses", res.addresses},
		                         {"reads", res.reads},
		                         {"writes", res.writes}};
		e["first_fault_addr"] =
		    res.first_fault_addr ? nlohmann::ordered_json(*res.first_fault_addr)
		                         : nlohmann::ordered_json(nullptr);
		j["mbist"].push_back(std::move(e));
	}
	system.set_scan_enable(true);
	auto scan = system.scan_chain_check(seed);
	all_pass = all_pass && scan.pass;
	j["scan"] = {{"pass", scan.pass},
	             {"coverage", scan.coverage},
	             {"chain_bits", system.scan_chain().length()}};

	if (format == "json") {
		std::cout << j.dump(2) << "\n";
	} else {
		for (const auto& e : j["mbist"])
			std::cout << "mbist " << e["target"].get<std::string>() << ": "
			          << (e["pass"].get<bool>() ? "pass" : "FAIL") << " ("
			          << e["addresses"].get<std::size_t>() << " addresses)\n";
		std::cout << "scan: " << (scan.pass ? "pass" : "FAIL") << ", coverage "
		          << scan.coverage << "\n";
	}
	return (strict && !all_pass) ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"memsoc: deterministic simulator and budget auditor for a "
	             "memristor-based heterogeneous SoC"};
	app.require_subcommand(1);

	std::string desc_path, workload_path, trace_path, monitor_path, target;
	std::string format = "json";
	std::uint64_t seed = 0;
	bool strict = false;

	auto add_format = [&](CLI::App* cmd) {
		cmd->add_option("--format", format, "output format")
		    ->check(CLI::IsMember({"json", "text"}));
	};

	auto* describe = app.add_subcommand("describe", "emit the built-in reference chip");
	(void)describe;

	auto* validate = app.add_subcommand("validate", "check a chip description's floorplan");
	validate->add_option("description", desc_path, "chip description JSON ('-' for stdin)")
	    ->required();
	validate->add_flag("--strict", strict, "exit nonzero on violations");
	add_format(validate);

	auto* auditc = app.add_subcommand("audit", "power/pad/bandwidth budget audit");
	auditc->add_option("description", desc_path, "chip description JSON ('-' for stdin)")
	    ->required();
	auditc->add_flag("--strict", strict, "exit nonzero on mismatches");
	add_format(auditc);

	auto* simulate = app.add_subcommand("simulate", "run a workload deterministically");
	simulate->add_option("description", desc_path, "chip description JSON")->required();
	simulate->add_option("workload", workload_path, "workload JSON")->required();
	auto* seed_opt = simulate->add_option("--seed", seed, "override the workload seed");
	simulate->add_option("--trace", trace_path, "write the NoC trace CSV here");
	simulate->add_option("--monitor", monitor_path,
	                     "write the monitor capture here (.csv for text)");
	add_format(simulate);

	auto* bist = app.add_subcommand("bist", "run memory BIST and the scan-chain check");
	bist->add_option("description", desc_path, "chip description JSON")->required();
	bist->add_option("--target", target, "single BIST target (ca0..ca6, shared0, shared1)");
	bist->add_option("--seed", seed, "scan pattern seed");
	bist->add_flag("--strict", strict, "exit nonzero on failures");
	add_format(bist);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		return app.exit(e) == 0 ? 0 : 2;
	}

	try {
		if (app.got_subcommand(describe)) return cmd_describe();
		if (app.got_subcommand(validate)) return cmd_validate(desc_path, strict, format);
		if (app.got_subcommand(auditc)) return cmd_audit(desc_path, strict, format);
		if (app.got_subcommand(simulate))
			return cmd_simulate(desc_path, workload_path, seed, seed_opt->count() > 0,
			                    trace_path, monitor_path, format);
		if (app.got_subcommand(bist)) return cmd_bist(desc_path, target, seed, strict, format);
	} catch (const BadInput& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const memsoc::SimError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	return 0;
}
