#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ycube/mobility.hpp"
#include "ycube/paulis.hpp"
#include "ycube/ycode.hpp"

namespace httplib {
class Server;
}

namespace ycube {

using json = nlohmann::json;

/// Canonical lattice file: geometry, qubit edges, prisms and the term list. Keys are sorted.
json lattice_to_json(const StabilizerCode& code);
StabilizerCode code_from_json(const json& doc);

/// {p, q, generations | periodic_l, layers, hexagon}
StabilizerCode build_from_spec(const json& spec);

/// Named constructors addressable by CLI and HTTP, e.g. "tree_logical" or "flat36:z_triangle".
/// Throws std::invalid_argument (or std::out_of_range) on bad kinds and parameters.
PauliString make_operator(const StabilizerCode& code, std::string_view kind, const json& params);

json syndrome_to_json(const StabilizerCode& code, const std::vector<TermId>& excited);
json report_to_json(const MobilityReport& report);
MoveSet parse_moves(std::string_view s);

class ApiError : public std::runtime_error {
 public:
  ApiError(int status, const std::string& what) : std::runtime_error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct SessionMove {
  json request;  // {"edge_id", "pauli"} or {"kind", "params"}
  PauliString op;
};

struct Session {
  std::string id;
  json spec;
  std::shared_ptr<const StabilizerCode> code;
  PauliString applied;
  std::vector<SessionMove> history;
  mutable std::shared_mutex mutex;
};

/// In-memory sessions with optional one-file-per-session persistence. Writes to one session are
/// serialized; a write arriving while another is in flight fails with 409.
class SessionService {
 public:
  explicit SessionService(std::optional<std::filesystem::path> state_dir = std::nullopt);

  json create(const json& spec);
  json get(const std::string& id) const;
  json apply(const std::string& id, const json& body);
  json apply_operator(const std::string& id, const json& body);
  json undo(const std::string& id);
  json reset(const std::string& id);
  json mobility(const std::string& id, const json& body) const;

  void mount(httplib::Server& server);

  /// Throws ApiError(404) for unknown ids.
  std::shared_ptr<Session> session(const std::string& id) const;

 private:
  json push(Session& s, json request, PauliString op);
  json state(const Session& s) const;
  void persist(const Session& s) const;
  void load_state_dir();

  std::optional<std::filesystem::path> state_dir_;
  mutable std::mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

}  // namespace ycube
