#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "kcomp/problem.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw kcomp::ValidationError("cannot read file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void progress(bool quiet, const std::string& msg) {
  if (!quiet) std::fprintf(stderr, "%s\n", msg.c_str());
}

void emit_bundle(const kcomp::ResultBundle& bundle, const std::string& out,
                 const std::string& csv) {
  const std::string json = kcomp::bundle_to_json(bundle);
  if (out.empty()) {
    std::fputs(json.c_str(), stdout);
  } else {
    kcomp::write_atomic(out, json);
  }
  if (!csv.empty()) kcomp::write_atomic(csv, kcomp::bundle_to_csv(bundle));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kcomp: numerical completion of incomplete reproducing-kernel systems"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress progress messages");

  std::string spec_path, result_path, out_path, csv_path, demo_name;

  auto* cmd_complete = app.add_subcommand("complete", "run the completion pipeline");
  cmd_complete->add_option("spec", spec_path, "problem spec JSON")->required();
  cmd_complete->add_option("-o,--out", out_path, "result JSON path (default stdout)");
  cmd_complete->add_option("--csv", csv_path, "per-point diagnostics CSV path");

  auto* cmd_verify = app.add_subcommand("verify", "re-run verification on a result");
  cmd_verify->add_option("result", result_path, "result JSON with s_points")->required();
  cmd_verify->add_option("spec", spec_path, "problem spec JSON")->required();
  cmd_verify->add_option("-o,--out", out_path, "result JSON path (default stdout)");
  cmd_verify->add_option("--csv", csv_path, "per-point diagnostics CSV path");

  auto* cmd_demo = app.add_subcommand("demo", "run a canned demo spec");
  cmd_demo->add_option("name", demo_name, "demo name")->required();
  cmd_demo->add_option("-o,--out", out_path, "result JSON path (default stdout)");
  cmd_demo->add_option("--csv", csv_path, "per-point diagnostics CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_complete->parsed()) {
      const auto spec = kcomp::ProblemSpec::parse_text(read_file(spec_path));
      progress(quiet, "running completion pipeline...");
      emit_bundle(kcomp::run_complete(spec), out_path, csv_path);
      progress(quiet, "done");
    } else if (cmd_verify->parsed()) {
      const auto spec = kcomp::ProblemSpec::parse_text(read_file(spec_path));
      const auto [s, anchor] = kcomp::parse_result_s(read_file(result_path));
      progress(quiet, "running verification...");
      emit_bundle(kcomp::run_verify(spec, s, anchor), out_path, csv_path);
      progress(quiet, "done");
    } else if (cmd_demo->parsed()) {
      const auto spec = kcomp::ProblemSpec::parse_text(kcomp::demo_spec_text(demo_name));
      progress(quiet, "running demo " + demo_name + "...");
      emit_bundle(kcomp::run_complete(spec), out_path, csv_path);
      progress(quiet, "done");
    }
  } catch (const kcomp::ExceptionalAlphaError& e) {
    std::fprintf(stderr, "error (exceptional alpha suspected): %s\n", e.what());
    return 4;
  } catch (const kcomp::ValidationError& e) {
    std::fprintf(stderr, "error (validation): %s\n", e.what());
    return 2;
  } catch (const kcomp::NumericalError& e) {
    std::fprintf(stderr, "error (numerical): %s\n", e.what());
    return 3;
  }
  return 0;
}
