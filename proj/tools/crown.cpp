#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "crown/crown.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  int n = 2;
  std::string field = "rational";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--n", c.n, "level n of the crown family")->check(CLI::PositiveNumber);
  cmd->add_option("--field", c.field, "rational or fp:<p>");
}

crown::RunConfig make_config(const Common& c) {
  crown::RunConfig cfg;
  cfg.n = c.n;
  try {
    cfg.field = crown::FieldSpec::parse(c.field);
  } catch (const crown::Error& e) {
    throw crown::ConfigError(e.what());
  }
  return cfg;
}

int verify(const crown::RunConfig& cfg, const std::string& json_path) {
  const auto reports = crown::run_suite(cfg);
  for (const auto& r : reports)
    std::cout << std::left << std::setw(8) << crown::to_string(r.status) << std::setw(32) << r.check
              << std::fixed << std::setprecision(1) << r.elapsed_ms << " ms\n";
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw crown::Error("cannot open " + json_path + " for writing");
    out << crown::report_json(cfg, reports).dump(2) << '\n';
  }
  const bool failed = crown::any_failed(reports);
  std::cout << (failed ? "FAIL" : "OK") << '\n';
  return failed ? kExitFail : 0;
}

void info(int n) {
  const crown::CrownFamily fam(n);
  const auto& b = *fam.strip();
  std::cout << "n                " << n << '\n';
  if (n <= 8) std::cout << "|W_n|            " << crown::wn_enumerate(n).size() << '\n';
  std::cout << "B_n              " << b.size() << " vertices, " << b.edge_count() << " edges, dim Q = "
            << b.size() + b.size() + b.edge_count() << '\n';
  if (fam.has_crowns())
    for (crown::Sign s : crown::kSigns) {
      const auto& c = *fam.crown(s).graph;
      std::cout << "C_n^" << crown::to_char(crown::to_tri(s)) << "            " << c.size() << " vertices, "
                << c.edge_count() << " edges, dim Q = " << c.size() + c.size() + c.edge_count() << '\n';
    }
  std::cout << "T_n terms        " << (std::size_t{1} << n) - 1 << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Builds crown graphs, their algebras and truncated Loday representations, and checks them."};
  app.require_subcommand(1);

  Common vc;
  std::string checks = "all";
  std::string json_path;
  crown::Caps caps;
  auto* verify_cmd = app.add_subcommand("verify", "run verification checks");
  add_common(verify_cmd, vc);
  verify_cmd->add_option("--checks", checks, "comma-separated groups or 'all'");
  verify_cmd->add_option("--json", json_path, "write the JSON report here");
  verify_cmd->add_option("--max-tensor-dim", caps.max_tensor_dim, "largest tensor power dimension")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-proj-points", caps.max_proj_points, "largest projective space to enumerate")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-graph-size", caps.max_graph_size, "largest graph for isomorphism search")
      ->check(CLI::PositiveNumber);

  Common ec;
  std::string what;
  std::string out_path;
  auto* export_cmd = app.add_subcommand("export", "write constructed objects as JSON");
  add_common(export_cmd, ec);
  export_cmd->add_option("--what", what, "graphs, algebras, matrices or nat_trans")->required();
  export_cmd->add_option("--out", out_path, "output file")->required();

  int info_n = 2;
  auto* info_cmd = app.add_subcommand("info", "print construction sizes");
  info_cmd->add_option("--n", info_n, "level n")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify_cmd) {
      auto cfg = make_config(vc);
      cfg.checks = crown::parse_checks(checks);
      cfg.caps = caps;
      cfg.validate();
      return verify(cfg, json_path);
    }
    if (*export_cmd) {
      const auto cfg = make_config(ec);
      crown::export_objects(cfg, crown::parse_export_kind(what), out_path);
      return 0;
    }
    info(info_n);
    return 0;
  } catch (const crown::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
