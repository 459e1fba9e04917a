// tln: command-line front end for the exact TLN library.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "tln/atlas.hpp"
#include "tln/dynamics.hpp"
#include "tln/fixed_points.hpp"
#include "tln/mutations.hpp"
#include "tln/regime.hpp"
#include "tln/sweep.hpp"

using namespace tln;

namespace {

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(parse_rational(item)));
  return out;
}

std::string cmd_fp(const Network& net, bool detail) {
  const SupportFamily fp = fp_chirotope(net);
  if (!detail) return fp.lines();
  std::string out;
  for (Subset sigma : fp.supports()) {
    out += subset_name(sigma, net.n) + "\n";
    const FixedPoint p = fixed_point_detail(net, sigma);
    for (int i = 0; i < net.n; ++i) {
      const Rational& x = p.coords[static_cast<std::size_t>(i)];
      out += "  x" + std::to_string(i + 1) + " = " + to_exact_string(x) + " (" + to_decimal(x, 10) + ")\n";
    }
    out += "  stability " + to_string(stability(net, sigma).classification) + "\n";
  }
  return out;
}

std::string cmd_chirotope(const Network& net) {
  const Chirotope chi = Chirotope::of(net);
  std::string out;
  for (std::size_t i = 0; i < chi.basis_count(); ++i) out += chi.bases().name(i) + " " + sign_char(chi.base(i)) + "\n";
  out += std::string("simplicial ") + (chi.simplicial() ? "yes" : "no") + "\n";
  return out;
}

std::string cmd_cocircuits(const Network& net) {
  const Chirotope chi = Chirotope::of(net);
  std::string out;
  for (Subset sigma = 0; sigma <= full_subset(net.n); ++sigma) {
    out += subset_name(sigma, net.n) + " ";
    try {
      out += cocircuit(chi, sigma).to_string() + "\n";
    } catch (const DegenerateError&) {
      out += "degenerate\n";
    }
  }
  return out;
}

std::string cmd_graph(const Network& net) {
  const Digraph g = graph_of(net);
  std::string out = "edges " + g.to_string() + "\n";
  for (int i = 0; i < net.n; ++i)
    for (int j = 0; j < net.n; ++j)
      if (i != j) out += "s^{" + std::to_string(i + 1) + std::to_string(j + 1) + "}_" + std::to_string(j + 1) + " = " + to_exact_string(s_pair(net, i, j)) + "\n";
  out += "sinks " + subset_name(singleton_rule(net), net.n) + "\n";
  return out;
}

std::string cmd_mutations(const Network& net) {
  const Chirotope chi = Chirotope::of(net);
  if (!chi.simplicial()) throw DegenerateError("chirotope is not simplicial; mutations are undefined");
  std::vector<std::string> pins(chi.basis_count());
  if (net.n == 3)
    for (const auto& p : pinned_bases(graph_of(net))) pins[p.basis] = p.reason;
  std::string out;
  for (std::size_t i = 0; i < chi.basis_count(); ++i) {
    out += chi.bases().name(i) + "  " + basis_quantity(net.n, i) + "  " + sign_char(chi.base(i)) + "  ";
    out += is_mutation(chi, i) ? "mutation" : "fixed";
    if (net.n == 3) out += pins[i].empty() ? "  free" : "  pinned (" + pins[i] + ")";
    out += "\n";
  }
  return out;
}

std::string cmd_gp(const Network& net) {
  const GPReport r = gp_check(net);
  std::string out = "residual " + to_exact_string(r.max_residual) + " over " + std::to_string(r.relations) + " relations\n";
  if (r.max_residual != 0) out += "worst " + r.worst + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact fixed-point supports, chirotopes and bifurcations of threshold-linear networks"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  app.add_option("--seed", seed, "Seed for every randomized procedure")->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1U, 256U));

  std::function<void()> action;
  std::string net_path, out_path;

  auto* fp = app.add_subcommand("fp", "Supports of the admissible fixed points");
  bool detail = false;
  fp->add_option("network", net_path, "Network JSON file")->required();
  fp->add_flag("--detail", detail, "Exact coordinates and stability");
  fp->callback([&] { action = [&] { std::cout << cmd_fp(read_network(net_path), detail); }; });

  auto* chi = app.add_subcommand("chirotope", "Signs of all bases");
  chi->add_option("network", net_path)->required();
  chi->callback([&] { action = [&] { std::cout << cmd_chirotope(read_network(net_path)); }; });

  auto* coc = app.add_subcommand("cocircuits", "Sign vector of every vertex x^sigma");
  coc->add_option("network", net_path)->required();
  coc->callback([&] { action = [&] { std::cout << cmd_cocircuits(read_network(net_path)); }; });

  auto* graph = app.add_subcommand("graph", "Directed graph of the network");
  graph->add_option("network", net_path)->required();
  graph->callback([&] { action = [&] { std::cout << cmd_graph(read_network(net_path)); }; });

  auto* mut = app.add_subcommand("mutations", "Mutation status of every basis");
  mut->add_option("network", net_path)->required();
  mut->callback([&] { action = [&] { std::cout << cmd_mutations(read_network(net_path)); }; });

  auto* gp = app.add_subcommand("gp-check", "Evaluate all three-term Grassmann-Pluecker relations");
  gp->add_option("network", net_path)->required();
  gp->callback([&] { action = [&] { std::cout << cmd_gp(read_network(net_path)); }; });

  ExploreOptions ex;
  std::string graph_text;
  auto* explore = app.add_subcommand("explore", "Mutation and bifurcation graph of a 3-node digraph");
  explore->add_option("--graph", graph_text, "Edge list such as \"1>2,2>1,3>2\" (\"\" for no edges)")->required();
  explore->add_option("--budget", ex.budget, "Search evaluations per unrealized neighbor")->capture_default_str();
  explore->add_option("--pool", ex.pool, "Networks sampled before the search")->capture_default_str();
  explore->add_option("--out", out_path, "Output file (default stdout)");
  explore->callback([&] {
    action = [&] {
      ex.seed = seed;
      const Digraph g = Digraph::parse(graph_text, 3);
      const RegimeGraph mg = mutation_graph(g, ex);
      const RegimeGraph bg = bifurcation_graph(mg);
      write_output(out_path, mg.to_dot("mutation") + bg.to_dot("bifurcation"));
    };
  });

  AtlasOptions at;
  std::string out_dir = "atlas";
  auto* atlas_cmd = app.add_subcommand("atlas", "Regimes of all 16 digraphs on three nodes");
  atlas_cmd->add_option("--samples", at.samples, "Sampled networks per class")->capture_default_str();
  atlas_cmd->add_option("--budget", at.explore.budget, "Search evaluations per unrealized neighbor")->capture_default_str();
  atlas_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
  atlas_cmd->callback([&] {
    action = [&] {
      at.explore.seed = seed;
      at.jobs = jobs;
      const auto classes = atlas(at);
      std::filesystem::create_directories(out_dir);
      std::string summary;
      std::size_t robust = 0;
      for (const auto& c : classes) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "class_%02d", c.id);
        write_output(out_dir + "/" + stem + ".txt", c.report());
        write_output(out_dir + "/" + stem + ".dot", c.bifurcations.to_dot(stem));
        std::string regimes;
        for (const auto& fp : c.regimes()) regimes += (regimes.empty() ? "" : " ") + fp.label();
        summary += std::string(stem) + "  " + (c.graph.edges().empty() ? "(no edges)" : c.graph.to_string()) + "  regimes " +
                   std::to_string(c.regimes().size()) + (c.robust() ? " robust" : "") + "  " + regimes + "\n";
        robust += c.robust();
      }
      summary += "classes " + std::to_string(classes.size()) + ", robust " + std::to_string(robust) + "\n";
      write_output(out_dir + "/summary.txt", summary);
      std::cout << summary;
    };
  });

  std::string param_text, from_text, to_text, tol_text = "1e-4";
  int steps = 1000;
  auto* sw = app.add_subcommand("sweep", "Support bifurcations along one parameter");
  sw->add_option("network", net_path)->required();
  sw->add_option("--param", param_text, "W<i><j> or b<i>, 1-based")->required();
  sw->add_option("--from", from_text, "Start value (default: the network's value)");
  sw->add_option("--to", to_text, "End value")->required();
  sw->add_option("--tol", tol_text, "Bracket width after bisection")->capture_default_str();
  sw->add_option("--steps", steps, "Grid steps along the path")->capture_default_str();
  sw->add_option("--out", out_path, "CSV file (default stdout)");
  sw->callback([&] {
    action = [&] {
      const Network net = read_network(net_path);
      ParamPath path;
      path.base = net;
      path.target = Parameter::parse(param_text, net.n);
      path.from = from_text.empty() ? path.target.get(net) : parse_rational(from_text);
      path.to = parse_rational(to_text);
      path.steps = steps;
      write_output(out_path, sweep(path, parse_rational(tol_text)).csv());
    };
  });

  std::string x0_text;
  double t_end = 50.0, dt = 1e-3;
  std::size_t every = 1;
  auto* sim = app.add_subcommand("simulate", "RK4 trajectory of the nonlinear system");
  sim->add_option("network", net_path)->required();
  sim->add_option("--x0", x0_text, "Initial state, comma separated")->required();
  sim->add_option("--t", t_end, "End time")->capture_default_str();
  sim->add_option("--dt", dt, "Step size")->capture_default_str();
  sim->add_option("--every", every, "Record every k-th step")->capture_default_str();
  sim->add_option("--out", out_path, "CSV file (default stdout)");
  sim->callback([&] {
    action = [&] { write_output(out_path, integrate(read_network(net_path), parse_doubles(x0_text), t_end, dt, every).csv()); };
  });

  int target = 0;
  auto* unlock = app.add_subcommand("unlock", "Graph-preserving moves that flip s^{123}_i (n = 3)");
  unlock->add_option("network", net_path)->required();
  unlock->add_option("--target", target, "Neuron i of s^{123}_i, 1-based")->required()->check(CLI::Range(1, 3));
  unlock->callback([&] { action = [&] { std::cout << unlock_path(read_network(net_path), full_support_basis(target - 1)).to_string(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    action();
  } catch (const DegenerateError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
