#include <iostream>

#include "CLI11.hpp"
#include "mdsarray/cli/commands.hpp"

using namespace mdsarray::cli;

namespace {

void code_flags(CLI::App* app, CodeArgs& code, bool required) {
  app->add_option("--construction", code.construction, "construction 1..7")->check(CLI::Range(1, 7))->required(required);
  app->add_option("-n", code.n, "node count")->required(required);
  app->add_option("-k", code.k, "data nodes")->required(required);
  app->add_option("-d", code.d, "helper count (repeatable)");
  app->add_option("--field", code.field, "prime modulus q");
  app->add_flag("--force-large-l", code.force_large_l, "allow l past the desk-scale guard");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mdsarray: MDS array codes with optimal repair"};
  app.require_subcommand(1);
  int rc = 0;

  CodeArgs enc_code;
  std::string enc_in, enc_out = "shards";
  auto* enc = app.add_subcommand("encode", "split a file into n shards");
  enc->add_option("input", enc_in, "file to encode")->required();
  code_flags(enc, enc_code, true);
  enc->add_option("--out", enc_out, "shard directory");
  enc->callback([&] { rc = cmd_encode(enc_in, enc_code, enc_out, std::cout); });

  std::string dec_dir, dec_out;
  auto* dec = app.add_subcommand("decode", "rebuild the file from any k shards");
  dec->add_option("dir", dec_dir, "shard directory")->required();
  dec->add_option("--out", dec_out, "output file")->required();
  dec->callback([&] { rc = cmd_decode(dec_dir, dec_out, std::cout); });

  RepairArgs rep_args;
  std::string rep_dir;
  std::vector<int> rep_d;
  auto* rep = app.add_subcommand("repair", "regenerate failed shards from helpers");
  rep->add_option("dir", rep_dir, "shard directory")->required();
  rep->add_option("--failed", rep_args.failed, "failed nodes, 1-based")->delimiter(',')->required();
  rep->add_option("--helpers", rep_args.helpers, "helper nodes, 1-based")->delimiter(',');
  rep->add_option("-d", rep_d, "helper count when --helpers is omitted")->expected(0, 1);
  rep->add_option("-t", rep_args.t, "erroneous helpers to tolerate");
  rep->add_option("--strategy", rep_args.strategy, "auto, single, d, multi, access or decode");
  rep->callback([&] {
    if (!rep_d.empty()) rep_args.d = rep_d.front();
    rc = cmd_repair(rep_dir, rep_args, std::cout);
  });

  std::string ver_dir;
  auto* ver = app.add_subcommand("verify", "check the parity equations");
  ver->add_option("dir", ver_dir, "shard directory")->required();
  ver->callback([&] { rc = cmd_verify(ver_dir, std::cout); });

  std::string cor_dir;
  int cor_node = 0;
  std::uint64_t cor_seed = 1;
  auto* cor = app.add_subcommand("corrupt", "overwrite one shard with garbage");
  cor->add_option("dir", cor_dir, "shard directory")->required();
  cor->add_option("--node", cor_node, "node, 1-based")->required();
  cor->add_option("--seed", cor_seed, "corruption seed");
  cor->callback([&] { rc = cmd_corrupt(cor_dir, cor_node, cor_seed, std::cout); });

  CodeArgs bench_code;
  BenchArgs bench_args;
  bool no_timing = false;
  auto* bench = app.add_subcommand("bench", "CSV of repair traffic against the bound");
  code_flags(bench, bench_code, false);
  bench->add_option("--failures", bench_args.failures, "failed nodes per run");
  bench->add_option("-t", bench_args.t, "erroneous helpers");
  bench->add_option("--seed", bench_args.seed, "message seed");
  bench->add_flag("--no-timing", no_timing, "print 0 in the timing columns");
  bench->callback([&] {
    if (bench_code.n > 0) bench_args.code = bench_code;
    bench_args.with_timing = !no_timing;
    rc = cmd_bench(bench_args, std::cout);
  });

  CodeArgs rp_code;
  std::string rp_log;
  std::uint64_t rp_seed = 1;
  auto* rp = app.add_subcommand("replay", "run a simulator event log");
  rp->add_option("log", rp_log, "event log file")->required();
  code_flags(rp, rp_code, true);
  rp->add_option("--seed", rp_seed, "message seed");
  rp->callback([&] { rc = cmd_replay(rp_log, rp_code, rp_seed, std::cout); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParams;
  }
  return rc;
}
