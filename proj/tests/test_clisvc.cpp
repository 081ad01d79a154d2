#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "fixtures.hpp"
#include "ycube/clisvc.hpp"
#include "ycube/gf2.hpp"

using namespace ycube;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("ycube_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t count_kind(const json& syndrome, const std::string& kind) {
  std::size_t n = 0;
  for (const auto& t : syndrome.at("excited")) n += t.at("kind") == kind ? 1 : 0;
  return n;
}

}  // namespace

TEST(LatticeJson, RoundTripIsByteIdentical) {
  for (const json& spec : {json{{"p", 5}, {"q", 4}, {"generations", 2}, {"layers", 3}},
                           json{{"p", 4}, {"q", 6}, {"generations", 1}, {"layers", 4}},
                           json{{"p", 3}, {"q", 6}, {"periodic_l", 3}, {"layers", 3}, {"hexagon", true}}}) {
    const auto code = build_from_spec(spec);
    const auto text = lattice_to_json(code).dump();
    const auto back = code_from_json(json::parse(text));
    EXPECT_EQ(lattice_to_json(back).dump(), text);
    ASSERT_EQ(back.num_terms(), code.num_terms());
    for (TermId id = 0; id < code.num_terms(); ++id) {
      EXPECT_EQ(back.term(id).support, code.term(id).support);
      EXPECT_EQ(back.term(id).kind, code.term(id).kind);
      EXPECT_EQ(back.term(id).parity, code.term(id).parity);
    }
    EXPECT_EQ(gsd_exponent(back), gsd_exponent(code));
  }
}

TEST(LatticeJson, SchemaKeys) {
  const auto doc = lattice_to_json(build_from_spec({{"p", 5}, {"q", 4}, {"generations", 1}}));
  for (const char* key : {"schlafli", "patch", "layers", "vertices", "edges3", "faces", "prisms", "terms"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_EQ(doc.at("patch").at("kind"), "disk");
  const auto& e = doc.at("edges3").at(0);
  EXPECT_EQ(e.at("kind"), "in_plane");
  EXPECT_EQ(e.at("a").size(), 2u);
  const auto& v = doc.at("vertices").at(0);
  EXPECT_LT(std::hypot(v.at("x").get<double>(), v.at("y").get<double>()), 1.0);
  // faces without explicit edges are resolved from their vertex cycle
  json stripped = doc;
  for (auto& f : stripped.at("faces")) f.erase("edges");
  EXPECT_EQ(lattice_to_json(code_from_json(stripped)).dump(), doc.dump());
}

TEST(LatticeJson, MalformedInputIsRejected) {
  EXPECT_THROW(code_from_json(json::object()), std::invalid_argument);
  auto doc = lattice_to_json(build_from_spec({{"p", 5}, {"q", 4}, {"generations", 1}}));
  doc["terms"][0]["kind"] = "mystery";
  EXPECT_THROW(code_from_json(doc), std::invalid_argument);
  EXPECT_THROW(build_from_spec({{"q", 4}}), std::invalid_argument);
}

TEST(MakeOperator, NamedKindsMatchConstructors) {
  const auto code = build_from_spec({{"p", 4}, {"q", 6}, {"generations", 3}, {"layers", 3}});
  EXPECT_TRUE(syndrome(code, make_operator(code, "tree_logical", json::object())).empty());
  EXPECT_EQ(syndrome(code, make_operator(code, "pruned_tree", json::object())).size(), 2u);
  EXPECT_EQ(syndrome(code, make_operator(code, "pruned_tree_series", json::object())).size(), 1u);
  EXPECT_TRUE(syndrome(code, make_operator(code, "wedge", json{{"parity", 1}, {"first_slot", 3}})).empty());
  EXPECT_EQ(syndrome(code, make_operator(code, "wedge_intersection", json::object())).size(), 1u);
  EXPECT_TRUE(syndrome(code, make_operator(code, "z_string", json{{"string", "tree_path"}})).empty());
  EXPECT_EQ(syndrome(code, make_operator(code, "z_string", json{{"string", "vertical"}, {"count", 2}})).size(), 4u);
  EXPECT_THROW(make_operator(code, "truncated_geodesic", json::object()), std::invalid_argument);
  EXPECT_THROW(make_operator(code, "nonsense", json::object()), std::invalid_argument);
  EXPECT_THROW(make_operator(code, "tree_logical", json{{"root", 1u << 30}}), std::exception);

  const auto lineon = build_from_spec({{"p", 5}, {"q", 4}, {"generations", 3}});
  EXPECT_EQ(syndrome(lineon, make_operator(lineon, "truncated_geodesic", json{{"slot", 1}})).size(), 2u);
  EXPECT_EQ(syndrome(lineon, make_operator(lineon, "stacked_geodesics", json::object())).size(), 1u);

  const auto flat = build_from_spec({{"p", 3}, {"q", 6}, {"periodic_l", 6}, {"hexagon", true}});
  EXPECT_EQ(syndrome(flat, make_operator(flat, "flat36:z_triangle", json{{"face", 0}})).size(), 6u);
  EXPECT_TRUE(syndrome(flat, make_operator(flat, "flat36:x_flux_membrane", json{{"j", 1}})).empty());
  EXPECT_THROW(make_operator(flat, "flat36:x_planeon_move", json{{"edge", -1}}), std::out_of_range);
}

TEST(MakeOperator, EveryOperatorSquaresToIdentity) {
  const auto code = build_from_spec({{"p", 4}, {"q", 6}, {"generations", 2}});
  for (const char* kind : {"tree_logical", "pruned_tree", "wedge", "z_string"}) {
    const auto op = make_operator(code, kind, json::object());
    EXPECT_TRUE((op * op).is_identity()) << kind;
    EXPECT_FALSE(op.is_identity()) << kind;
  }
}

TEST(Service, DirectCallsAndErrors) {
  SessionService svc;
  const auto created = svc.create({{"p", 5}, {"q", 4}, {"generations", 2}});
  const std::string id = created.at("session_id");
  const auto& lat = created.at("lattice");
  // first vertical edge above an interior vertex
  std::size_t vertical = 0;
  for (const auto& e : lat.at("edges3")) {
    if (e.at("kind") == "vertical" && lat.at("vertices").at(e.at("a").at(0).get<std::size_t>()).at("interior")) {
      vertical = e.at("id");
      break;
    }
  }
  auto after = svc.apply(id, {{"edge_id", vertical}, {"pauli", "X"}});
  EXPECT_EQ(count_kind(after, "prism_z"), 4u);
  EXPECT_EQ(after.at("history_length"), 1);
  after = svc.undo(id);
  EXPECT_TRUE(after.at("excited").empty());
  EXPECT_FALSE(after.at("logical").get<bool>());

  EXPECT_THROW(svc.get("missing"), ApiError);
  try {
    svc.apply(id, {{"edge_id", 1 << 30}, {"pauli", "X"}});
    FAIL();
  } catch (const ApiError& e) {
    EXPECT_EQ(e.status(), 422);
  }
  try {
    svc.undo(id);
    FAIL();
  } catch (const ApiError& e) {
    EXPECT_EQ(e.status(), 422);
  }
  try {
    svc.create({{"p", 3}, {"q", 4}});
    FAIL();
  } catch (const ApiError& e) {
    EXPECT_EQ(e.status(), 422);
  }
}

TEST(Service, ConcurrentWriteIsRejected) {
  SessionService svc;
  const std::string id = svc.create({{"p", 5}, {"q", 4}, {"generations", 1}}).at("session_id");
  auto s = svc.session(id);
  {
    std::unique_lock hold(s->mutex);
    try {
      svc.apply(id, {{"edge_id", 0}, {"pauli", "Z"}});
      FAIL();
    } catch (const ApiError& e) {
      EXPECT_EQ(e.status(), 409);
    }
  }
  EXPECT_NO_THROW(svc.apply(id, {{"edge_id", 0}, {"pauli", "Z"}}));
}

TEST(Service, StateDirectoryReplaysHistory) {
  const auto dir = scratch_dir("state");
  std::string id;
  json before;
  {
    SessionService svc(dir);
    id = svc.create({{"p", 4}, {"q", 6}, {"generations", 2}}).at("session_id");
    svc.apply(id, {{"edge_id", 3}, {"pauli", "Z"}});
    svc.apply_operator(id, {{"kind", "pruned_tree"}, {"params", json::object()}});
    before = svc.get(id);
  }
  EXPECT_TRUE(fs::exists(dir / (id + ".json")));
  SessionService reloaded(dir);
  const auto after = reloaded.get(id);
  EXPECT_EQ(after.at("excited"), before.at("excited"));
  EXPECT_EQ(after.at("applied"), before.at("applied"));
  EXPECT_EQ(after.at("history_length"), 2);
  fs::remove_all(dir);
}

class Http : public ::testing::Test {
 protected:
  void SetUp() override {
    service.mount(server);
    port = server.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port, 0);
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  void TearDown() override {
    server.stop();
    thread.join();
  }
  httplib::Result post(const std::string& path, const json& body) {
    httplib::Client client("127.0.0.1", port);
    return client.Post(path, body.dump(), "application/json");
  }

  SessionService service;
  httplib::Server server;
  std::thread thread;
  int port = 0;
};

TEST_F(Http, SessionLifecycle) {
  auto res = post("/sessions", {{"p", 4}, {"q", 6}, {"generations", 2}, {"layers", 3}});
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  const auto created = json::parse(res->body);
  const std::string id = created.at("session_id");
  const auto& lat = created.at("lattice");
  const std::size_t E = lat.at("edges3").size();
  std::size_t vertical = E;
  for (const auto& e : lat.at("edges3")) {
    const auto v = e.at("a").at(0).get<std::size_t>();
    if (e.at("kind") == "vertical" && v == 0) vertical = e.at("id");
  }
  ASSERT_LT(vertical, E);
  ASSERT_TRUE(lat.at("vertices").at(0).at("interior").get<bool>());

  res = post("/sessions/" + id + "/apply", {{"edge_id", vertical}, {"pauli", "X"}});
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(count_kind(json::parse(res->body), "prism_z"), 6u);

  res = post("/sessions/" + id + "/undo", json::object());
  ASSERT_EQ(res->status, 200);
  EXPECT_TRUE(json::parse(res->body).at("excited").empty());

  res = post("/sessions/" + id + "/operator", {{"kind", "tree_logical"}, {"params", json::object()}});
  ASSERT_EQ(res->status, 200);
  auto state = json::parse(res->body);
  EXPECT_TRUE(state.at("excited").empty());
  EXPECT_TRUE(state.at("logical").get<bool>());

  httplib::Client client("127.0.0.1", port);
  auto got = client.Get("/sessions/" + id);
  ASSERT_EQ(got->status, 200);
  EXPECT_TRUE(json::parse(got->body).contains("lattice"));

  res = post("/sessions/" + id + "/reset", json::object());
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body).at("history_length"), 0);

  // a treeon pair from one in-plane Z
  res = post("/sessions/" + id + "/apply", {{"edge_id", 0}, {"pauli", "Z"}});
  ASSERT_EQ(res->status, 200);
  res = post("/sessions/" + id + "/mobility", {{"moves", "z"}});
  ASSERT_EQ(res->status, 200);
  const auto report = json::parse(res->body);
  EXPECT_FALSE(report.at("truncated").get<bool>());
  EXPECT_GT(report.at("visited").get<int>(), 0);
}

TEST_F(Http, ErrorStatuses) {
  EXPECT_EQ(post("/sessions/nope/apply", {{"edge_id", 0}, {"pauli", "X"}})->status, 404);
  httplib::Client client("127.0.0.1", port);
  EXPECT_EQ(client.Get("/sessions/nope")->status, 404);
  const std::string id = json::parse(post("/sessions", {{"p", 5}, {"q", 4}, {"generations", 1}})->body).at("session_id");
  EXPECT_EQ(post("/sessions/" + id + "/apply", {{"edge_id", 100000}, {"pauli", "X"}})->status, 422);
  EXPECT_EQ(post("/sessions/" + id + "/apply", {{"edge_id", 0}, {"pauli", "W"}})->status, 422);
  EXPECT_EQ(post("/sessions/" + id + "/operator", {{"kind", "nonsense"}})->status, 422);
  EXPECT_EQ(post("/sessions/" + id + "/mobility", {{"moves", "sideways"}})->status, 422);
  EXPECT_EQ(client.Post("/sessions/" + id + "/apply", "{not json", "application/json")->status, 400);
  EXPECT_EQ(post("/sessions", {{"p", 3}, {"q", 4}})->status, 422);
}

#ifdef YCUBE_CLI_PATH
namespace {

struct CliResult {
  int status = 0;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliResult cli(const fs::path& dir, const std::string& args) {
  const auto out = dir / "stdout.txt";
  const auto err = dir / "stderr.txt";
  const std::string cmd = std::string("\"") + YCUBE_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

}  // namespace

TEST(Cli, GenThenGsd) {
  const auto dir = scratch_dir("cli_gsd");
  const auto file = (dir / "tri.json").string();
  ASSERT_EQ(cli(dir, "gen --p 3 --q 6 --periodic-l 3 --layers 3 --hexagon --out " + file).status, 0);
  const auto r = cli(dir, "gsd --lattice " + file);
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("k"), 12);

  const auto plain = (dir / "plain.json").string();
  ASSERT_EQ(cli(dir, "gen --p 3 --q 6 --periodic-l 3 --layers 3 --out " + plain).status, 0);
  EXPECT_EQ(json::parse(cli(dir, "gsd --lattice " + plain).out).at("k"), 18);
  EXPECT_EQ(json::parse(cli(dir, "gsd --hexagon --lattice " + plain).out).at("k"), 12);

  // gen -> load -> re-export is byte-identical
  const auto doc = json::parse(slurp(file));
  EXPECT_EQ(lattice_to_json(code_from_json(doc)).dump(), doc.dump());
  fs::remove_all(dir);
}

TEST(Cli, SyndromeAndEmptyModel) {
  const auto dir = scratch_dir("cli_syn");
  const auto file = (dir / "h.json").string();
  ASSERT_EQ(cli(dir, "gen --p 5 --q 4 --generations 2 --layers 3 --out " + file).status, 0);
  auto doc = json::parse(slurp(file));
  const auto code = code_from_json(doc);
  const auto c = code.lattice().base().center_vertex();
  const auto e = code.lattice().vertical(c, 1);
  const auto r = cli(dir, "syndrome --lattice " + file + " --op 'X@" + std::to_string(e) + "'");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(count_kind(json::parse(r.out), "prism_z"), 4u);

  const auto mk = cli(dir, "makeop --lattice " + file + " --kind truncated_geodesic --params '{\"slot\":0}'");
  ASSERT_EQ(mk.status, 0) << mk.err;
  EXPECT_NE(mk.out.find("X@"), std::string::npos);

  doc["terms"] = json::array();
  const auto empty = (dir / "empty.json").string();
  std::ofstream(empty) << doc.dump();
  const auto g = json::parse(cli(dir, "gsd --lattice " + empty).out);
  EXPECT_EQ(g.at("k"), g.at("n"));
  EXPECT_EQ(g.at("n"), code.num_qubits());

  const auto logi = cli(dir, "logicals --lattice " + empty);
  ASSERT_EQ(logi.status, 0);
  EXPECT_EQ(json::parse(logi.out).at("k"), code.num_qubits());
  fs::remove_all(dir);
}

TEST(Cli, ErrorsAreMachineReadable) {
  const auto dir = scratch_dir("cli_err");
  auto r = cli(dir, "gsd --lattice " + (dir / "absent.json").string());
  EXPECT_NE(r.status, 0);
  EXPECT_EQ(json::parse(r.err).at("error"), "invalid_argument");
  r = cli(dir, "gen --p 3 --q 4 --generations 1 --out " + (dir / "x.json").string());
  EXPECT_NE(r.status, 0);
  EXPECT_TRUE(json::parse(r.err).contains("message"));
  r = cli(dir, "frobnicate");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(json::parse(r.err).at("error"), "usage");
  fs::remove_all(dir);
}
#endif
