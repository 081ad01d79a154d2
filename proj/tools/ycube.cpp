#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>

#include "ycube/clisvc.hpp"
#include "ycube/gf2.hpp"
#include "ycube/hyptess.hpp"

using namespace ycube;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

StabilizerCode load(const std::string& path) { return code_from_json(read_json(path)); }

int fail(const std::string& kind, const std::string& message, int code = 1) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ycube: hyperbolic X-cube / Y-cube stabilizer lab"};
  app.require_subcommand(1);

  int p = 0, q = 0, layers = 3;
  std::optional<int> generations, periodic_l;
  bool hexagon = false;
  std::string out_path, lattice_path, op_text, kind, params_text = "{}", moves = "both";
  std::optional<std::size_t> budget;
  std::size_t max_states = 200000;
  int port = 8080;
  std::string state_dir;

  auto* gen = app.add_subcommand("gen", "generate a lattice file");
  gen->add_option("--p", p, "polygon sides")->required();
  gen->add_option("--q", q, "polygons per vertex")->required();
  auto* gen_g = gen->add_option("--generations", generations, "patch generations");
  auto* gen_l = gen->add_option("--periodic-l", periodic_l, "torus side length (flat pairs)");
  gen_g->excludes(gen_l);
  gen->add_option("--layers", layers, "layers in the circle direction");
  gen->add_flag("--hexagon", hexagon, "add (3,6) hexagon terms");
  gen->add_option("--out", out_path, "output file")->required();

  auto* gsd = app.add_subcommand("gsd", "ground-state degeneracy exponent");
  gsd->add_option("--lattice", lattice_path)->required();
  gsd->add_flag("--hexagon", hexagon, "add hexagon terms if the file has none");

  auto* syn = app.add_subcommand("syndrome", "excited terms of an operator");
  syn->add_option("--lattice", lattice_path)->required();
  syn->add_option("--op", op_text, "sparse Pauli text, e.g. 'X@3 Z@7'")->required();

  auto* mk = app.add_subcommand("makeop", "build a named operator");
  mk->add_option("--lattice", lattice_path)->required();
  mk->add_option("--kind", kind)->required();
  mk->add_option("--params", params_text, "JSON object");

  auto* mob = app.add_subcommand("mobility", "breadth-first mobility search");
  mob->add_option("--lattice", lattice_path)->required();
  mob->add_option("--op", op_text)->required();
  mob->add_option("--moves", moves)->check(CLI::IsMember({"x", "z", "both"}));
  mob->add_option("--budget", budget);
  mob->add_option("--max-states", max_states);

  auto* logi = app.add_subcommand("logicals", "canonical logical operator pairs");
  logi->add_option("--lattice", lattice_path)->required();

  auto* serve = app.add_subcommand("serve", "HTTP session service");
  serve->add_option("--port", port);
  serve->add_option("--state-dir", state_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    if (*gen) {
      if (!generations && !periodic_l) throw std::invalid_argument("give --generations or --periodic-l");
      json spec{{"p", p}, {"q", q}, {"layers", layers}, {"hexagon", hexagon}};
      if (periodic_l) spec["periodic_l"] = *periodic_l;
      if (generations) spec["generations"] = *generations;
      const auto code = build_from_spec(spec);
      std::ofstream out(out_path);
      if (!out) throw std::invalid_argument("cannot write " + out_path);
      out << lattice_to_json(code).dump() << '\n';
      std::cout << json{{"out", out_path}, {"edges", code.num_qubits()}, {"terms", code.num_terms()}}.dump() << '\n';
    } else if (*gsd) {
      auto code = load(lattice_path);
      if (hexagon && !code.has_hexagon()) code = build_code(code.lattice(), {true});
      const auto r = gsd_report(code);
      std::cout << json{{"n", r.n}, {"rank_x", r.rank_x}, {"rank_z", r.rank_z}, {"k", r.k}}.dump() << '\n';
    } else if (*syn) {
      const auto code = load(lattice_path);
      const auto op = PauliString::from_text(op_text, code.num_qubits());
      std::cout << syndrome_to_json(code, syndrome(code, op)).dump() << '\n';
    } else if (*mk) {
      const auto code = load(lattice_path);
      json params;
      try {
        params = json::parse(params_text);
      } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("--params: ") + e.what());
      }
      std::cout << make_operator(code, kind, params).to_text() << '\n';
    } else if (*mob) {
      const auto code = load(lattice_path);
      MobilityQuery query;
      query.code = &code;
      query.initial = PauliString::from_text(op_text, code.num_qubits());
      query.moves = parse_moves(moves);
      query.budget = budget;
      query.max_states = max_states;
      std::cout << report_to_json(reachable(query)).dump() << '\n';
    } else if (*logi) {
      const auto code = load(lattice_path);
      json pairs = json::array();
      for (const auto& pair : logical_basis(code)) pairs.push_back({{"x", pair.x.to_text()}, {"z", pair.z.to_text()}});
      std::cout << json{{"k", pairs.size()}, {"pairs", pairs}}.dump() << '\n';
    } else if (*serve) {
      SessionService service(state_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(state_dir));
      httplib::Server server;
      service.mount(server);
      std::cerr << "listening on port " << port << '\n';
      if (!server.listen("0.0.0.0", port)) return fail("serve", "cannot bind port " + std::to_string(port));
    }
  } catch (const BudgetExceeded& e) {
    return fail("budget_exceeded", e.what());
  } catch (const std::invalid_argument& e) {
    return fail("invalid_argument", e.what());
  } catch (const std::out_of_range& e) {
    return fail("out_of_range", e.what());
  } catch (const std::exception& e) {
    return fail("error", e.what());
  }
  return 0;
}
