#include <fstream>
#include <random>
#include <sstream>

#include <httplib.h>

#include "ycube/clisvc.hpp"
#include "ycube/gf2.hpp"

namespace ycube {

namespace {

std::string new_token(std::uint64_t counter) {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream os;
  os << std::hex << rng() << counter;
  return os.str();
}

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ApiError(400, std::string("invalid JSON body: ") + e.what());
  }
}

PauliString single_edge(const StabilizerCode& code, const json& body) {
  if (!body.contains("edge_id") || !body.contains("pauli")) throw ApiError(422, "apply needs edge_id and pauli");
  const auto edge = body.at("edge_id");
  if (!edge.is_number_integer() || edge.get<long long>() < 0 || edge.get<std::size_t>() >= code.num_qubits()) {
    throw ApiError(422, "edge_id out of range");
  }
  const auto letter = body.at("pauli").is_string() ? body.at("pauli").get<std::string>() : std::string{};
  PauliString op(code.num_qubits());
  const auto e = edge.get<std::size_t>();
  if (letter == "X" || letter == "Y") op.apply_x(e);
  if (letter == "Z" || letter == "Y") op.apply_z(e);
  if (op.is_identity()) throw ApiError(422, "pauli must be X, Y or Z");
  return op;
}

PauliString build_operator(const StabilizerCode& code, const json& body) {
  if (!body.contains("kind") || !body.at("kind").is_string()) throw ApiError(422, "operator needs a kind");
  try {
    return make_operator(code, body.at("kind").get<std::string>(), body.value("params", json::object()));
  } catch (const std::invalid_argument& e) {
    throw ApiError(422, e.what());
  } catch (const std::out_of_range& e) {
    throw ApiError(422, e.what());
  }
}

}  // namespace

SessionService::SessionService(std::optional<std::filesystem::path> state_dir) : state_dir_(std::move(state_dir)) {
  if (state_dir_) {
    std::filesystem::create_directories(*state_dir_);
    load_state_dir();
  }
}

std::shared_ptr<Session> SessionService::session(const std::string& id) const {
  std::lock_guard lock(registry_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ApiError(404, "unknown session " + id);
  return it->second;
}

json SessionService::state(const Session& s) const {
  json out = syndrome_to_json(*s.code, syndrome(*s.code, s.applied));
  out["session_id"] = s.id;
  out["applied"] = s.applied.to_text();
  out["history_length"] = s.history.size();
  out["logical"] = out["excited"].empty() && !s.applied.is_identity() && !in_stabilizer_group(*s.code, s.applied);
  return out;
}

json SessionService::create(const json& spec) {
  auto s = std::make_shared<Session>();
  try {
    s->code = std::make_shared<const StabilizerCode>(build_from_spec(spec));
  } catch (const BudgetExceeded& e) {
    throw ApiError(422, e.what());
  } catch (const std::invalid_argument& e) {
    throw ApiError(422, e.what());
  }
  s->spec = spec;
  s->applied = PauliString(s->code->num_qubits());
  {
    std::lock_guard lock(registry_mutex_);
    do {
      s->id = new_token(++counter_);
    } while (sessions_.count(s->id));
    sessions_[s->id] = s;
  }
  persist(*s);
  return {{"session_id", s->id}, {"lattice", lattice_to_json(*s->code)}};
}

json SessionService::get(const std::string& id) const {
  auto s = session(id);
  std::shared_lock lock(s->mutex);
  json out = state(*s);
  out["lattice"] = lattice_to_json(*s->code);
  return out;
}

json SessionService::push(Session& s, json request, PauliString op) {
  s.applied *= op;
  s.history.push_back({std::move(request), std::move(op)});
  persist(s);
  return state(s);
}

json SessionService::apply(const std::string& id, const json& body) {
  auto s = session(id);
  std::unique_lock lock(s->mutex, std::try_to_lock);
  if (!lock.owns_lock()) throw ApiError(409, "session is busy with another write");
  auto op = single_edge(*s->code, body);
  return push(*s, {{"edge_id", body.at("edge_id")}, {"pauli", body.at("pauli")}}, std::move(op));
}

json SessionService::apply_operator(const std::string& id, const json& body) {
  auto s = session(id);
  std::unique_lock lock(s->mutex, std::try_to_lock);
  if (!lock.owns_lock()) throw ApiError(409, "session is busy with another write");
  auto op = build_operator(*s->code, body);
  return push(*s, {{"kind", body.at("kind")}, {"params", body.value("params", json::object())}}, std::move(op));
}

json SessionService::undo(const std::string& id) {
  auto s = session(id);
  std::unique_lock lock(s->mutex, std::try_to_lock);
  if (!lock.owns_lock()) throw ApiError(409, "session is busy with another write");
  if (s->history.empty()) throw ApiError(422, "nothing to undo");
  s->applied *= s->history.back().op;
  s->history.pop_back();
  persist(*s);
  return state(*s);
}

json SessionService::reset(const std::string& id) {
  auto s = session(id);
  std::unique_lock lock(s->mutex, std::try_to_lock);
  if (!lock.owns_lock()) throw ApiError(409, "session is busy with another write");
  s->applied = PauliString(s->code->num_qubits());
  s->history.clear();
  persist(*s);
  return state(*s);
}

json SessionService::mobility(const std::string& id, const json& body) const {
  auto s = session(id);
  std::shared_lock lock(s->mutex);
  MobilityQuery q;
  q.code = s->code.get();
  q.initial = s->applied;
  try {
    q.moves = parse_moves(body.value("moves", std::string("both")));
    if (body.contains("budget") && !body.at("budget").is_null()) q.budget = body.at("budget").get<std::size_t>();
    q.max_states = body.value("max_states", q.max_states);
    return report_to_json(reachable(q));
  } catch (const std::invalid_argument& e) {
    throw ApiError(422, e.what());
  } catch (const json::exception& e) {
    throw ApiError(422, e.what());
  }
}

void SessionService::persist(const Session& s) const {
  if (!state_dir_) return;
  json history = json::array();
  for (const auto& m : s.history) history.push_back(m.request);
  const auto path = *state_dir_ / (s.id + ".json");
  const auto tmp = *state_dir_ / (s.id + ".json.tmp");
  {
    std::ofstream out(tmp);
    out << json{{"id", s.id}, {"spec", s.spec}, {"history", history}}.dump();
  }
  std::filesystem::rename(tmp, path);
}

void SessionService::load_state_dir() {
  for (const auto& entry : std::filesystem::directory_iterator(*state_dir_)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    const json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.contains("id")) continue;
    auto s = std::make_shared<Session>();
    s->id = doc.at("id").get<std::string>();
    s->spec = doc.at("spec");
    s->code = std::make_shared<const StabilizerCode>(build_from_spec(s->spec));
    s->applied = PauliString(s->code->num_qubits());
    for (const auto& req : doc.at("history")) {
      auto op = req.contains("kind") ? build_operator(*s->code, req) : single_edge(*s->code, req);
      s->applied *= op;
      s->history.push_back({req, std::move(op)});
    }
    sessions_[s->id] = s;
  }
}

void SessionService::mount(httplib::Server& server) {
  auto wrap = [](auto fn) {
    return [fn](const httplib::Request& req, httplib::Response& res) {
      try {
        const json out = fn(req);
        res.status = 200;
        res.set_content(out.dump(), "application/json");
      } catch (const ApiError& e) {
        res.status = e.status();
        res.set_content(json{{"error", e.what()}}.dump(), "application/json");
      } catch (const std::exception& e) {
        res.status = 500;
        res.set_content(json{{"error", e.what()}}.dump(), "application/json");
      }
    };
  };
  const std::string id = R"(/sessions/([^/]+))";
  server.Post("/sessions", wrap([this](const httplib::Request& r) { return create(parse_body(r.body)); }));
  server.Get(id, wrap([this](const httplib::Request& r) { return get(r.matches[1]); }));
  server.Post(id + "/apply", wrap([this](const httplib::Request& r) { return apply(r.matches[1], parse_body(r.body)); }));
  server.Post(id + "/operator",
              wrap([this](const httplib::Request& r) { return apply_operator(r.matches[1], parse_body(r.body)); }));
  server.Post(id + "/undo", wrap([this](const httplib::Request& r) { return undo(r.matches[1]); }));
  server.Post(id + "/reset", wrap([this](const httplib::Request& r) { return reset(r.matches[1]); }));
  server.Post(id + "/mobility",
              wrap([this](const httplib::Request& r) { return mobility(r.matches[1], parse_body(r.body)); }));
}

}  // namespace ycube
