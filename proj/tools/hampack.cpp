#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hampack/extremal.hpp"
#include "hampack/factors.hpp"
#include "hampack/graph.hpp"
#include "hampack/packer.hpp"

namespace {

using namespace hampack;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open " + path);
  out << data;
}

std::vector<int> parse_offsets(const std::string& text) {
  std::vector<int> offsets;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) offsets.push_back(std::stoi(item));
  }
  if (offsets.empty()) throw std::invalid_argument("offset list is empty");
  return offsets;
}

SimpleGraph instance_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "gnp")
    return random_gnp(j.at("n").get<int>(), j.at("p").get<double>(), j.value("seed", 0ULL));
  if (kind == "intro") return intro_construction(j.at("m").get<int>());
  if (kind == "extremal") return upper_construction(j.at("n").get<int>(), j.at("delta").get<int>());
  if (kind == "complete") return complete_graph(j.at("n").get<int>());
  if (kind == "cycle") return cycle_graph(j.at("n").get<int>());
  if (kind == "circulant")
    return circulant_graph(j.at("n").get<int>(), j.at("offsets").get<std::vector<int>>());
  if (kind == "file") return parse_graph(read_input(j.at("path").get<std::string>()));
  throw std::invalid_argument("unknown instance kind: " + kind);
}

std::string instance_label(const nlohmann::json& j) {
  if (j.contains("label")) return j.at("label").get<std::string>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "gnp")
    return "gnp(" + std::to_string(j.at("n").get<int>()) + "," + std::to_string(j.at("p").get<double>()) + ")";
  if (kind == "intro") return "intro(" + std::to_string(j.at("m").get<int>()) + ")";
  if (kind == "extremal")
    return "extremal(" + std::to_string(j.at("n").get<int>()) + "," + std::to_string(j.at("delta").get<int>()) + ")";
  if (kind == "complete") return "K" + std::to_string(j.at("n").get<int>());
  if (kind == "cycle") return "C" + std::to_string(j.at("n").get<int>());
  if (kind == "file") return j.at("path").get<std::string>();
  return kind;
}

nlohmann::json bound_entry(double value) {
  nlohmann::json j;
  j["value"] = value;
  j["floor"] = static_cast<long long>(std::floor(value + 1e-9));
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"edge-disjoint Hamilton cycle packing toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a graph in edge-list format");
  gen->require_subcommand(1);
  std::string gen_out = "-";
  int gnp_n = 0, intro_m = 1, ext_n = 0, ext_delta = 0, circ_n = 0;
  double gnp_p = 0.5;
  std::uint64_t gnp_seed = 0;
  std::string circ_offsets;
  auto* gnp_cmd = gen->add_subcommand("gnp", "binomial random graph");
  gnp_cmd->add_option("--n", gnp_n, "vertex count")->required();
  gnp_cmd->add_option("--p", gnp_p, "edge probability")->required();
  gnp_cmd->add_option("--seed", gnp_seed, "seed (default 0)");
  gnp_cmd->add_option("--out", gen_out, "output file (default stdout)");
  auto* intro_cmd = gen->add_subcommand("intro", "independent set joined to a perfect matching");
  intro_cmd->add_option("--m", intro_m, "matching size parameter")->required();
  intro_cmd->add_option("--out", gen_out, "output file (default stdout)");
  auto* ext_cmd = gen->add_subcommand("extremal", "tight construction for a given n, delta");
  ext_cmd->add_option("--n", ext_n, "vertex count")->required();
  ext_cmd->add_option("--delta", ext_delta, "minimum degree")->required();
  ext_cmd->add_option("--out", gen_out, "output file (default stdout)");
  auto* circ_cmd = gen->add_subcommand("circulant", "circulant graph");
  circ_cmd->add_option("--n", circ_n, "vertex count")->required();
  circ_cmd->add_option("--offsets", circ_offsets, "comma-separated offsets")->required();
  circ_cmd->add_option("--out", gen_out, "output file (default stdout)");

  // pack
  auto* pack_cmd = app.add_subcommand("pack", "pack edge-disjoint Hamilton cycles");
  std::string pack_graph, pack_out = "-";
  PackerConfig cfg;
  pack_cmd->add_option("graph", pack_graph, "graph file or - for stdin")->required();
  pack_cmd->add_option("--gamma-r", cfg.reserve_fraction, "reserve fraction of non-factor edges");
  pack_cmd->add_option("--budget", cfg.budget, "swap budget per conversion (-1 = auto)");
  pack_cmd->add_option("--seed", cfg.seed, "seed (default 0)");
  pack_cmd->add_option("--s", cfg.factor_degree, "factor degree override (-1 = auto)");
  pack_cmd->add_option("--alpha", cfg.alpha, "degree-hypothesis margin for plan/bounds");
  pack_cmd->add_option("--retries", cfg.retry_limit, "conversion retries per 2-factor");
  pack_cmd->add_option("--out", pack_out, "report file (default stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "verify a packing against a graph");
  std::string verify_graph, verify_packing_path;
  verify_cmd->add_option("graph", verify_graph, "graph file or -")->required();
  verify_cmd->add_option("packing", verify_packing_path, "packing JSON file or -")->required();

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "closed-form bound calculators");
  int b_n = 0, b_delta = 0, b_Delta = -1;
  double b_alpha = 0.1;
  std::string b_mode;
  bounds_cmd->add_option("--n", b_n, "vertex count")->required();
  bounds_cmd->add_option("--delta", b_delta, "minimum degree")->required();
  bounds_cmd->add_option("--alpha", b_alpha, "margin for the lower bound (default 0.1)");
  bounds_cmd->add_option("--Delta", b_Delta, "maximum degree, enables the factor cap");
  bounds_cmd->add_option("--mode", b_mode, "planning mode: min-degree or near-regular");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exact maximum packing for small graphs");
  std::string oracle_graph;
  int oracle_cap = 12;
  oracle_cmd->add_option("graph", oracle_graph, "graph file or -")->required();
  oracle_cmd->add_option("--cap", oracle_cap, "vertex cap (default 12)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run instances x seeds and tabulate");
  std::string bench_spec;
  int bench_jobs = 1;
  bench_cmd->add_option("spec", bench_spec, "bench spec JSON file or -")->required();
  bench_cmd->add_option("--jobs", bench_jobs, "parallel workers (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  if (gen->parsed()) {
    SimpleGraph g;
    if (gnp_cmd->parsed()) g = random_gnp(gnp_n, gnp_p, gnp_seed);
    if (intro_cmd->parsed()) g = intro_construction(intro_m);
    if (ext_cmd->parsed()) g = upper_construction(ext_n, ext_delta);
    if (circ_cmd->parsed()) g = circulant_graph(circ_n, parse_offsets(circ_offsets));
    write_output(gen_out, serialize_graph(g));
    return 0;
  }

  if (pack_cmd->parsed()) {
    SimpleGraph g = parse_graph(read_input(pack_graph));
    auto res = pack(g, cfg);
    write_output(pack_out, res.report.to_json(res.cycles) + "\n");
    std::cerr << "packed " << res.report.achieved << " edge-disjoint Hamilton cycles (n=" << res.report.n
              << ", delta=" << res.report.delta << ", s=" << res.report.factor_degree << ", "
              << res.report.factors_converted << "/" << res.report.factors_extracted << " factors, "
              << res.report.ms << " ms)\n";
    return res.report.verified ? 0 : 1;
  }

  if (verify_cmd->parsed()) {
    if (verify_graph == "-" && verify_packing_path == "-")
      throw std::invalid_argument("only one input may come from stdin");
    SimpleGraph g = parse_graph(read_input(verify_graph));
    nlohmann::json j = nlohmann::json::parse(read_input(verify_packing_path));
    std::vector<HamiltonCycle> cycles;
    for (const auto& c : j.at("cycles")) cycles.push_back(HamiltonCycle{c.get<std::vector<int>>()});
    auto check = verify_packing(g, cycles);
    nlohmann::json out;
    out["valid"] = check.valid;
    out["count"] = check.count;
    out["violation"] = check.violation;
    std::cout << out.dump() << "\n";
    if (!check.valid) {
      std::cerr << "invalid packing: " << check.violation << "\n";
      return 1;
    }
    std::cerr << "valid packing of " << check.count << " edge-disjoint Hamilton cycles\n";
    return 0;
  }

  if (bounds_cmd->parsed()) {
    nlohmann::json out;
    out["n"] = b_n;
    out["delta"] = b_delta;
    out["alpha"] = b_alpha;
    out["upper"] = bound_entry(upper_bound_value(b_n, b_delta));
    try {
      out["lower"] = bound_entry(lower_bound_value(b_n, b_delta, b_alpha));
    } catch (const std::domain_error&) {
      out["lower"] = nullptr;
    }
    if (b_Delta >= 0) {
      Ratio cap = r_factor_cap(b_n, b_delta, b_Delta);
      nlohmann::json c;
      c["value"] = cap.value();
      c["num"] = cap.num;
      c["den"] = cap.den;
      c["even"] = 2 * static_cast<long long>(std::floor(cap.value() / 2.0 + 1e-9));
      c["packing"] = static_cast<long long>(std::floor(cap.value() / 2.0 + 1e-9));
      out["cap"] = std::move(c);
    } else {
      out["cap"] = nullptr;
    }
    if (!b_mode.empty()) {
      auto p = plan(b_n, b_delta, b_Delta >= 0 ? b_Delta : b_delta, b_alpha, b_mode);
      out["plan"] = {{"mode", p.mode}, {"target", p.target}, {"s", p.factor_degree}};
    } else {
      out["plan"] = nullptr;
    }
    std::cout << out.dump() << "\n";
    return 0;
  }

  if (oracle_cmd->parsed()) {
    SimpleGraph g = parse_graph(read_input(oracle_graph));
    auto res = brute_force_max_packing(g, oracle_cap);
    nlohmann::json out;
    out["n"] = g.vertex_count();
    out["max_packing"] = res.count;
    nlohmann::json cyc = nlohmann::json::array();
    for (const auto& c : res.witnesses) cyc.push_back(c.order);
    out["cycles"] = std::move(cyc);
    std::cout << out.dump() << "\n";
    return 0;
  }

  if (bench_cmd->parsed()) {
    nlohmann::json spec = nlohmann::json::parse(read_input(bench_spec));
    std::vector<BenchInstance> instances;
    for (const auto& j : spec.at("instances"))
      instances.push_back({instance_label(j), instance_from_json(j)});
    std::vector<std::uint64_t> seeds = {0};
    if (spec.contains("seeds")) seeds = spec.at("seeds").get<std::vector<std::uint64_t>>();
    PackerConfig base;
    if (spec.contains("config")) {
      const auto& c = spec.at("config");
      base.reserve_fraction = c.value("gamma_r", base.reserve_fraction);
      base.budget = c.value("budget", base.budget);
      base.factor_degree = c.value("s", base.factor_degree);
      base.retry_limit = c.value("retries", base.retry_limit);
      base.alpha = c.value("alpha", base.alpha);
    }
    auto rows = bench(instances, seeds, base, bench_jobs);
    std::cout << bench_json(rows) << "\n";
    std::cerr << bench_table(rows);
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
