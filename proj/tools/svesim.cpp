// Copyright 2026 the svesim authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end: assemble-and-run at a chosen vector length,
// check-only mode, and the cross-VL differential harness.
//
// Exit codes: 0 returned/identical, 1 faulted, 2 assembly or config
// error, 3 step limit exceeded, 4 cross-VL divergence.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "svesim/svesim.h"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitReturned = 0;
constexpr int kExitFaulted = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitLimit = 3;
constexpr int kExitDivergence = 4;

struct MemWindow {
  uint64_t addr = 0;
  uint64_t len = 0;
};

struct Observed {
  std::vector<unsigned> regs;      // X register indices
  std::vector<MemWindow> windows;  // memory windows
};

struct SharedOptions {
  std::string file;
  unsigned effectiveVl = 0;
  std::string entry;
  uint64_t maxSteps = 1'000'000;
  bool trace = false;
  bool jsonOut = false;
  std::vector<std::string> mapSpecs;
  std::vector<std::string> dataSpecs;
  std::vector<std::string> regSpecs;
  std::vector<std::string> observeSpecs;
};

[[noreturn]] void configError(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(kExitConfigError);
}

std::string hexString(uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%" PRIx64, v);
  return buf;
}

std::optional<uint64_t> parseNumber(const std::string& text) {
  if (text.empty()) return std::nullopt;
  try {
    size_t pos = 0;
    const uint64_t v = std::stoull(text, &pos, 0);
    if (pos != text.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) configError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ProgramDeleter {
  void operator()(sve_program* p) const { sve_program_free(p); }
};
struct MemoryDeleter {
  void operator()(sve_memory* m) const { sve_memory_free(m); }
};
struct MachineDeleter {
  void operator()(sve_machine* m) const { sve_machine_free(m); }
};
using ProgramPtr = std::unique_ptr<sve_program, ProgramDeleter>;
using MemoryPtr = std::unique_ptr<sve_memory, MemoryDeleter>;
using MachinePtr = std::unique_ptr<sve_machine, MachineDeleter>;

ProgramPtr assembleFile(const std::string& path, bool printDiagnostics) {
  const std::string source = readFile(path);
  sve_program* raw = nullptr;
  if (sve_assemble(source.c_str(), &raw) != SVE_OK) {
    if (printDiagnostics) {
      const int n = sve_diagnostic_count();
      for (int i = 0; i < n; ++i) {
        int line = 0;
        char msg[512];
        if (sve_diagnostic_get(i, &line, msg, sizeof msg) == SVE_OK)
          std::cerr << path << ":" << line << ": error: " << msg << "\n";
      }
    }
    std::exit(kExitConfigError);
  }
  return ProgramPtr(raw);
}

// Program directives first, then CLI flags, so the CLI wins on conflict.
MemoryPtr buildMemory(const sve_program* program, const SharedOptions& opt) {
  sve_memory* raw = nullptr;
  sve_memory_new(&raw);
  MemoryPtr mem(raw);
  sve_memory_apply_program(mem.get(), program);

  for (const auto& spec : opt.mapSpecs) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) configError("--map expects addr:len");
    const auto addr = parseNumber(spec.substr(0, colon));
    const auto len = parseNumber(spec.substr(colon + 1));
    if (!addr || !len) configError("--map: bad addr or len in '" + spec + "'");
    sve_memory_map(mem.get(), *addr, *len);
  }
  for (const auto& spec : opt.dataSpecs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) configError("--data expects addr=hex or addr=@file");
    const auto addr = parseNumber(spec.substr(0, eq));
    if (!addr) configError("--data: bad address in '" + spec + "'");
    std::vector<uint8_t> bytes;
    const std::string payload = spec.substr(eq + 1);
    if (!payload.empty() && payload[0] == '@') {
      const std::string blob = readFile(payload.substr(1));
      bytes.assign(blob.begin(), blob.end());
    } else {
      if (payload.size() % 2 != 0) configError("--data: odd hex digit count");
      for (size_t i = 0; i < payload.size(); i += 2) {
        const auto b = parseNumber("0x" + payload.substr(i, 2));
        if (!b) configError("--data: bad hex byte in '" + spec + "'");
        bytes.push_back(static_cast<uint8_t>(*b));
      }
    }
    if (!bytes.empty()) {
      sve_memory_map(mem.get(), *addr, bytes.size());
      sve_memory_write(mem.get(), *addr, bytes.data(), bytes.size());
    }
  }
  return mem;
}

Observed parseObserved(const SharedOptions& opt, const sve_program* program) {
  Observed obs;
  if (opt.observeSpecs.empty()) {
    // Default: X0-X7 plus every declared memory range. Vector and
    // predicate registers are excluded on purpose; their widths differ
    // across VLs by definition.
    for (unsigned i = 0; i < 8; ++i) obs.regs.push_back(i);
    const int64_t n = sve_program_range_count(program);
    for (int64_t i = 0; i < n; ++i) {
      MemWindow w;
      if (sve_program_range_get(program, i, &w.addr, &w.len) == SVE_OK)
        obs.windows.push_back(w);
    }
    for (const auto& spec : opt.mapSpecs) {
      const auto colon = spec.find(':');
      if (colon == std::string::npos) continue;
      const auto addr = parseNumber(spec.substr(0, colon));
      const auto len = parseNumber(spec.substr(colon + 1));
      if (addr && len) obs.windows.push_back({*addr, *len});
    }
    return obs;
  }
  for (const auto& specList : opt.observeSpecs) {
    std::istringstream ss(specList);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      if (item[0] == 'x' || item[0] == 'X') {
        const auto idx = parseNumber(item.substr(1));
        if (!idx || *idx > 30) configError("--observe: bad register '" + item + "'");
        obs.regs.push_back(static_cast<unsigned>(*idx));
      } else if (item.rfind("mem:", 0) == 0) {
        const auto rest = item.substr(4);
        const auto colon = rest.find(':');
        if (colon == std::string::npos)
          configError("--observe: mem entries are mem:addr:len");
        const auto addr = parseNumber(rest.substr(0, colon));
        const auto len = parseNumber(rest.substr(colon + 1));
        if (!addr || !len) configError("--observe: bad mem window '" + item + "'");
        obs.windows.push_back({*addr, *len});
      } else {
        configError("--observe: unknown item '" + item + "'");
      }
    }
  }
  return obs;
}

MachinePtr makeMachine(unsigned vlBits, const SharedOptions& opt,
                       const sve_program* program) {
  sve_machine* raw = nullptr;
  if (sve_machine_new(vlBits, opt.effectiveVl, &raw) != SVE_OK)
    configError(sve_error_message());
  MachinePtr machine(raw);

  for (const auto& spec : opt.regSpecs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || spec.empty() ||
        (spec[0] != 'x' && spec[0] != 'X'))
      configError("--reg expects xN=value");
    const auto idx = parseNumber(spec.substr(1, eq - 1));
    const auto val = parseNumber(spec.substr(eq + 1));
    if (!idx || *idx > 30 || !val) configError("--reg: bad spec '" + spec + "'");
    sve_machine_set_x(machine.get(), static_cast<unsigned>(*idx), *val);
  }
  if (!opt.entry.empty()) {
    uint64_t index = 0;
    if (sve_program_label(program, opt.entry.c_str(), &index) != SVE_OK)
      configError("unknown entry label '" + opt.entry + "'");
    sve_machine_set_pc(machine.get(), index);
  }
  return machine;
}

struct TraceRecord {
  uint64_t pc = 0;
  std::string text;
  std::vector<std::pair<std::string, std::string>> writes;  // name -> new value
};

struct RunResult {
  int status = SVE_STATUS_RUNNING;
  uint64_t steps = 0;
  std::map<std::string, std::string> regs;  // observed registers
  std::map<std::string, std::string> mem;   // "addr:len" -> hex bytes
  std::optional<sve_fault_info> fault;
  unsigned vl = 0, evl = 0;
  std::vector<TraceRecord> trace;
};

std::string bytesToHex(const std::vector<uint8_t>& bytes) {
  std::string s;
  s.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    s.push_back("0123456789abcdef"[b >> 4]);
    s.push_back("0123456789abcdef"[b & 0xF]);
  }
  return s;
}

struct VectorSnapshot {
  std::vector<std::vector<uint8_t>> z{32};
  std::vector<std::vector<uint8_t>> p{16};
  std::vector<uint8_t> ffr;
  std::vector<uint64_t> x = std::vector<uint64_t>(31, 0);
  unsigned nzcv = 0;
};

VectorSnapshot snapshot(const sve_machine* m) {
  VectorSnapshot s;
  const unsigned bytes = sve_machine_effective_vl_bits(m) / 8;
  for (unsigned i = 0; i < 32; ++i) {
    s.z[i].resize(bytes);
    sve_machine_get_z(m, i, s.z[i].data(), bytes);
  }
  for (unsigned i = 0; i < 16; ++i) {
    s.p[i].resize(bytes);
    sve_machine_get_p(m, i, s.p[i].data(), bytes);
  }
  s.ffr.resize(bytes);
  sve_machine_get_ffr(m, s.ffr.data(), bytes);
  for (unsigned i = 0; i < 31; ++i) sve_machine_get_x(m, i, &s.x[i]);
  sve_machine_get_flags(m, &s.nzcv);
  return s;
}

std::string nzcvString(unsigned nzcv) {
  std::string s;
  s += (nzcv & 8) ? 'N' : 'n';
  s += (nzcv & 4) ? 'Z' : 'z';
  s += (nzcv & 2) ? 'C' : 'c';
  s += (nzcv & 1) ? 'V' : 'v';
  return s;
}

RunResult runOne(unsigned vlBits, const sve_program* program,
                 const SharedOptions& opt, const Observed& obs) {
  MemoryPtr mem = buildMemory(program, opt);
  MachinePtr machine = makeMachine(vlBits, opt, program);

  RunResult result;
  result.vl = sve_machine_vl_bits(machine.get());
  result.evl = sve_machine_effective_vl_bits(machine.get());

  if (opt.trace) {
    VectorSnapshot before = snapshot(machine.get());
    while (sve_machine_status(machine.get()) == SVE_STATUS_RUNNING &&
           sve_machine_step_count(machine.get()) < opt.maxSteps) {
      TraceRecord rec;
      rec.pc = sve_machine_pc(machine.get());
      char text[256] = {0};
      sve_program_format(program, rec.pc, text, sizeof text);
      rec.text = text;
      if (sve_machine_step(machine.get(), program, mem.get()) != SVE_OK)
        configError(sve_error_message());
      VectorSnapshot after = snapshot(machine.get());
      for (unsigned i = 0; i < 31; ++i)
        if (after.x[i] != before.x[i])
          rec.writes.emplace_back("x" + std::to_string(i), hexString(after.x[i]));
      if (after.nzcv != before.nzcv)
        rec.writes.emplace_back("flags", nzcvString(after.nzcv));
      for (unsigned i = 0; i < 32; ++i)
        if (after.z[i] != before.z[i])
          rec.writes.emplace_back("z" + std::to_string(i), bytesToHex(after.z[i]));
      for (unsigned i = 0; i < 16; ++i)
        if (after.p[i] != before.p[i])
          rec.writes.emplace_back("p" + std::to_string(i), bytesToHex(after.p[i]));
      if (after.ffr != before.ffr)
        rec.writes.emplace_back("ffr", bytesToHex(after.ffr));
      result.trace.push_back(std::move(rec));
      before = std::move(after);
    }
    if (sve_machine_status(machine.get()) == SVE_STATUS_RUNNING) {
      // Hit the step limit while still running.
      sve_machine_run(machine.get(), program, mem.get(),
                      sve_machine_step_count(machine.get()));
    }
  } else {
    if (sve_machine_run(machine.get(), program, mem.get(), opt.maxSteps) != SVE_OK)
      configError(sve_error_message());
  }

  result.status = sve_machine_status(machine.get());
  result.steps = sve_machine_step_count(machine.get());
  if (result.status == SVE_STATUS_FAULTED) {
    sve_fault_info info{};
    sve_machine_fault(machine.get(), &info);
    result.fault = info;
  }
  for (unsigned idx : obs.regs) {
    uint64_t v = 0;
    sve_machine_get_x(machine.get(), idx, &v);
    result.regs["x" + std::to_string(idx)] = hexString(v);
  }
  for (const auto& w : obs.windows) {
    std::vector<uint8_t> bytes(w.len, 0);
    const int rc = sve_memory_read(mem.get(), w.addr, bytes.data(), w.len);
    const std::string key = hexString(w.addr) + ":" + std::to_string(w.len);
    result.mem[key] = rc == SVE_OK ? bytesToHex(bytes) : "<unmapped>";
  }
  return result;
}

const char* statusName(int status) {
  switch (status) {
    case SVE_STATUS_RETURNED: return "returned";
    case SVE_STATUS_FAULTED: return "faulted";
    case SVE_STATUS_LIMIT_EXCEEDED: return "limit_exceeded";
    default: return "running";
  }
}

json resultToJson(const RunResult& r, bool includeTrace) {
  json doc;
  doc["status"] = statusName(r.status);
  doc["steps"] = r.steps;
  doc["regs"] = json::object();
  for (const auto& [name, value] : r.regs) doc["regs"][name] = value;
  doc["mem"] = json::object();
  for (const auto& [name, value] : r.mem) doc["mem"][name] = value;
  if (r.fault) {
    doc["fault"] = {{"address", hexString(r.fault->address)},
                    {"element_index", r.fault->element_index},
                    {"pc", r.fault->instruction_pc},
                    {"kind", "unmapped"}};
  } else {
    doc["fault"] = nullptr;
  }
  doc["vl"] = r.vl;
  doc["evl"] = r.evl;
  if (includeTrace) {
    json trace = json::array();
    for (const auto& rec : r.trace) {
      json writes = json::object();
      for (const auto& [name, value] : rec.writes) writes[name] = value;
      trace.push_back({{"pc", rec.pc}, {"instr", rec.text}, {"writes", writes}});
    }
    doc["trace"] = std::move(trace);
  }
  return doc;
}

void printHuman(const RunResult& r, bool withTrace) {
  if (withTrace) {
    for (const auto& rec : r.trace) {
      std::cout << "  [" << rec.pc << "] " << rec.text;
      for (const auto& [name, value] : rec.writes)
        std::cout << "  " << name << "=" << value;
      std::cout << "\n";
    }
  }
  std::cout << "status: " << statusName(r.status) << "\n";
  std::cout << "steps: " << r.steps << "\n";
  std::cout << "vl: " << r.vl << " evl: " << r.evl << "\n";
  for (const auto& [name, value] : r.regs)
    std::cout << name << " = " << value << "\n";
  for (const auto& [name, value] : r.mem)
    std::cout << "mem[" << name << "] = " << value << "\n";
  if (r.fault) {
    std::cout << "fault: unmapped address " << hexString(r.fault->address)
              << " element " << r.fault->element_index << " at pc "
              << r.fault->instruction_pc << "\n";
  }
}

int statusExitCode(int status) {
  switch (status) {
    case SVE_STATUS_RETURNED: return kExitReturned;
    case SVE_STATUS_FAULTED: return kExitFaulted;
    case SVE_STATUS_LIMIT_EXCEEDED: return kExitLimit;
    default: return kExitConfigError;
  }
}

int commandRun(unsigned vlBits, const SharedOptions& opt) {
  ProgramPtr program = assembleFile(opt.file, true);
  const Observed obs = parseObserved(opt, program.get());
  const RunResult result = runOne(vlBits, program.get(), opt, obs);
  if (opt.jsonOut)
    std::cout << resultToJson(result, opt.trace).dump(2) << "\n";
  else
    printHuman(result, opt.trace);
  return statusExitCode(result.status);
}

int commandDiff(const std::string& vlsSpec, const SharedOptions& opt) {
  std::vector<unsigned> vls;
  std::istringstream ss(vlsSpec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parseNumber(item);
    if (!v) configError("--vls: bad vector length '" + item + "'");
    vls.push_back(static_cast<unsigned>(*v));
  }
  if (vls.size() < 2) configError("--vls needs at least two vector lengths");

  ProgramPtr program = assembleFile(opt.file, true);
  const Observed obs = parseObserved(opt, program.get());

  std::vector<RunResult> results;
  results.reserve(vls.size());
  for (unsigned vl : vls) results.push_back(runOne(vl, program.get(), opt, obs));

  const RunResult& base = results.front();
  for (size_t i = 1; i < results.size(); ++i) {
    const RunResult& r = results[i];
    std::string divergence;
    if (r.status != base.status) {
      divergence = std::string("status: ") + statusName(base.status) + " vs " +
                   statusName(r.status);
    } else if (r.regs != base.regs) {
      for (const auto& [name, value] : base.regs)
        if (r.regs.at(name) != value) {
          divergence = name + ": " + value + " vs " + r.regs.at(name);
          break;
        }
    } else if (r.mem != base.mem) {
      for (const auto& [name, value] : base.mem)
        if (r.mem.at(name) != value) {
          divergence = "mem[" + name + "]: " + value + " vs " + r.mem.at(name);
          break;
        }
    }
    if (!divergence.empty()) {
      if (opt.jsonOut) {
        json doc;
        doc["identical"] = false;
        doc["vl_a"] = base.vl;
        doc["vl_b"] = r.vl;
        doc["divergence"] = divergence;
        std::cout << doc.dump(2) << "\n";
      } else {
        std::cout << "DIVERGENCE between vl " << base.vl << " and vl " << r.vl
                  << ": " << divergence << "\n";
      }
      return kExitDivergence;
    }
  }
  if (opt.jsonOut) {
    json doc;
    doc["identical"] = true;
    json vlsOut = json::array();
    for (unsigned vl : vls) vlsOut.push_back(vl);
    doc["vls"] = vlsOut;
    doc["status"] = statusName(base.status);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "identical across " << vls.size() << " vector lengths ("
              << statusName(base.status) << ")\n";
  }
  return kExitReturned;
}

int commandCheck(const std::string& file) {
  ProgramPtr program = assembleFile(file, true);  // exits 2 on diagnostics
  std::cout << "ok: " << sve_program_instruction_count(program.get())
            << " instructions\n";
  return kExitReturned;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"svesim: scalable-vector ISA functional simulator"};
  app.require_subcommand(1);

  SharedOptions opt;
  unsigned vlBits = 0;
  std::string vlsSpec;

  auto addShared = [&](CLI::App* cmd) {
    cmd->add_option("file", opt.file, "assembly source file")->required();
    cmd->add_option("--effective-vl", opt.effectiveVl,
                    "effective vector length in bits (defaults to --vl)");
    cmd->add_option("--entry", opt.entry, "entry label (default: first instruction)");
    cmd->add_option("--max-steps", opt.maxSteps, "step limit")->capture_default_str();
    cmd->add_flag("--trace", opt.trace, "record a per-step trace");
    cmd->add_flag("--json", opt.jsonOut, "machine-readable output");
    cmd->add_option("--map", opt.mapSpecs, "map pages: addr:len");
    cmd->add_option("--data", opt.dataSpecs, "initial memory: addr=hex or addr=@file");
    cmd->add_option("--reg", opt.regSpecs, "initial register: xN=value");
    cmd->add_option("--observe", opt.observeSpecs,
                    "observed outputs: xN and mem:addr:len, comma separated");
  };

  CLI::App* runCmd = app.add_subcommand("run", "assemble and run at one VL");
  addShared(runCmd);
  runCmd->add_option("--vl", vlBits, "vector length in bits")->required();

  CLI::App* diffCmd =
      app.add_subcommand("diff", "run at several VLs and compare observables");
  addShared(diffCmd);
  diffCmd->add_option("--vls", vlsSpec, "comma-separated vector lengths")->required();

  CLI::App* checkCmd = app.add_subcommand("check", "assemble only");
  checkCmd->add_option("file", opt.file, "assembly source file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigError;
  }

  if (runCmd->parsed()) return commandRun(vlBits, opt);
  if (diffCmd->parsed()) return commandDiff(vlsSpec, opt);
  return commandCheck(opt.file);
}
