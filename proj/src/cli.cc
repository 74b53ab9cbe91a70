#include "hierflow/cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hierflow/dimacs.h"
#include "hierflow/flow.h"
#include "hierflow/hierarchy_builder.h"
#include "hierflow/maxflow.h"

namespace hierflow {
namespace {

DimacsInstance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return ParseDimacs(in);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

std::string InstanceJson(const DimacsInstance& inst) {
  std::ostringstream os;
  os << "{\"n\":" << inst.g.n << ",\"m\":" << inst.g.m
     << ",\"source\":" << inst.source + 1 << ",\"sink\":" << inst.sink + 1
     << "}";
  return os.str();
}

// Reports keep a fixed key order and integer values only, so identical
// inputs serialize to identical bytes.
std::string SolveJson(const DimacsInstance& inst, const SolveReport& rep) {
  std::ostringstream os;
  os << "{\"command\":\"solve\",\"instance\":" << InstanceJson(inst)
     << ",\"profile\":\"" << rep.profile << "\",\"seed\":" << rep.seed
     << ",\"value\":" << rep.value << ",\"cut_capacity\":" << rep.cut_capacity
     << ",\"scaling_levels\":" << rep.scaling_levels
     << ",\"rounds\":" << rep.rounds
     << ",\"fallback_steps\":" << rep.fallback_steps << ",\"routed\":[";
  for (size_t i = 0; i < rep.routed.size(); ++i)
    os << (i ? "," : "") << rep.routed[i];
  os << "],\"flow\":" << FlowToJson(inst.g, rep.flow, rep.value) << "}\n";
  return os.str();
}

std::string ApproxJson(const DimacsInstance& inst, const ApproxResult& res,
                       const std::string& profile, uint64_t seed) {
  std::ostringstream os;
  os << "{\"command\":\"approx\",\"instance\":" << InstanceJson(inst)
     << ",\"profile\":\"" << profile << "\",\"seed\":" << seed
     << ",\"value\":" << res.value << ",\"cut_capacity\":" << res.cut_capacity
     << ",\"shortcut_value_q\":" << res.shortcut_value_q << ",\"q\":" << res.q
     << ",\"flow\":" << FlowToJson(inst.g, res.flow, res.value) << "}\n";
  return os.str();
}

std::string HierarchyJson(const DimacsInstance& inst, const BuiltHierarchy& bh,
                          uint64_t seed) {
  std::ostringstream os;
  os << "{\"command\":\"hierarchy\",\"instance\":" << InstanceJson(inst)
     << ",\"profile\":\"" << bh.profile.name << "\",\"seed\":" << seed
     << ",\"phi_rand_inv\":" << bh.phi_rand_inv << ",\"allowance\":" << bh.L
     << ",\"q\":" << bh.q << ",\"z\":" << bh.z << ",\"rounds\":" << bh.rounds
     << ",\"level\":[";
  for (size_t i = 0; i < bh.level.size(); ++i)
    os << (i ? "," : "") << bh.level[i];
  os << "],\"round_capacities\":[";
  for (size_t i = 0; i < bh.round_log.size(); ++i) {
    const RoundSnapshot& snap = bh.round_log[i];
    int splits = 0;
    for (const DecompStep& st : snap.decomp.steps) splits += st.split ? 1 : 0;
    os << (i ? "," : "") << "{\"round\":" << snap.round
       << ",\"top\":" << snap.decomp.top_capacity
       << ",\"next\":" << snap.decomp.next_capacity
       << ",\"leaves\":" << snap.decomp.leaves.size()
       << ",\"splits\":" << splits
       << ",\"max_depth\":" << snap.decomp.max_depth << "}";
  }
  os << "]}\n";
  return os.str();
}

int DoVerify(const DimacsInstance& inst, const std::string& flow_text) {
  CapacityT value = 0;
  ScaledFlow f = FlowFromJson(inst.g, flow_text, &value);
  if (f.scale != 1) {
    std::cout << "flow scale is " << f.scale << ", expected 1" << std::endl;
    return 1;
  }
  Demand d(inst.g.n);
  d.source[inst.source] = value;
  d.sink[inst.sink] = value;
  auto bad = CheckFeasible(inst.g, inst.g.capacity, d, f.value, 1, 1);
  if (bad) {
    std::cout << *bad << std::endl;
    return 1;
  }
  CapacityT out = FlowOutDegree(inst.g, f.value)[inst.source];
  if (out != value) {
    std::cout << "net outflow at the source is " << out << ", claimed "
              << value << std::endl;
    return 1;
  }
  std::cout << "ok value " << value << std::endl;
  return 0;
}

}  // namespace

int RunCli(int argc, const char* const* argv) {
  CLI::App app{"exact and approximate max flow over expander hierarchies"};
  app.require_subcommand(1);

  std::string in_path, json_path, dump_path, flow_path;
  std::string profile_name = "practical";
  std::string assert_level = "cheap";
  uint64_t seed = 0;
  if (const char* env = std::getenv("HIERFLOW_SEED"))
    seed = std::strtoull(env, nullptr, 10);

  auto add_common = [&](CLI::App* cmd, bool seeded) {
    cmd->add_option("file", in_path, "DIMACS max-flow instance")->required();
    if (seeded) {
      cmd->add_option("--seed", seed,
                      "random seed (default: HIERFLOW_SEED, then 0)");
      cmd->add_option("--profile", profile_name, "parameter profile")
          ->check(CLI::IsMember({"practical", "theory"}));
    }
    cmd->add_option("--assert-level", assert_level, "self-check depth")
        ->check(CLI::IsMember({"off", "cheap", "full"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "exact maximum flow");
  add_common(solve, true);
  solve->add_option("--json", json_path,
                    "write the full report as JSON ('-' for stdout)");

  CLI::App* approx =
      app.add_subcommand("approx", "one approximate flow and cut");
  add_common(approx, true);
  approx->add_option("--json", json_path,
                     "write the full report as JSON ('-' for stdout)");

  CLI::App* hier =
      app.add_subcommand("hierarchy", "build the expander hierarchy");
  add_common(hier, true);
  hier->add_option("--dump", dump_path, "write the hierarchy summary as JSON")
      ->required();

  CLI::App* verify =
      app.add_subcommand("verify", "check a flow JSON against an instance");
  add_common(verify, false);
  verify->add_option("--flow", flow_path, "flow JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  SetAssertLevel(assert_level == "off"    ? AssertLevel::kOff
                 : assert_level == "full" ? AssertLevel::kFull
                                          : AssertLevel::kCheap);
  try {
    DimacsInstance inst = LoadInstance(in_path);
    BuildProfile profile = profile_name == "theory" ? TheoryProfile(inst.g.n)
                                                    : PracticalProfile();
    if (app.got_subcommand(solve)) {
      SolveReport rep =
          ExactMaxflow(inst.g, inst.source, inst.sink, profile, seed);
      std::cout << "value " << rep.value << std::endl;
      if (!json_path.empty()) WriteOutput(json_path, SolveJson(inst, rep));
      return 0;
    }
    if (app.got_subcommand(approx)) {
      ApproxResult res =
          ApproxMaxflow(inst.g, inst.source, inst.sink, profile, seed);
      std::cout << "value " << res.value << std::endl;
      if (!json_path.empty())
        WriteOutput(json_path, ApproxJson(inst, res, profile.name, seed));
      return 0;
    }
    if (app.got_subcommand(hier)) {
      Rng rng(seed);
      BuiltHierarchy bh = BuildExpanderHierarchy(inst.g, profile, rng);
      WriteOutput(dump_path, HierarchyJson(inst, bh, seed));
      std::cout << "rounds " << bh.rounds << std::endl;
      return 0;
    }
    return DoVerify(inst, ReadFile(flow_path));
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "check failed: " << e.what() << std::endl;
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
}

}  // namespace hierflow
