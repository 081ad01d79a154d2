#include "ycube/clisvc.hpp"

#include <algorithm>

#include "ycube/gf2.hpp"
#include "ycube/hyptess.hpp"
#include "ycube/opgen.hpp"

namespace ycube {

namespace {

template <typename T>
T param(const json& params, const char* key, T fallback) {
  if (!params.is_object() || !params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("parameter '") + key + "' has the wrong type");
  }
}

template <typename T>
T required(const json& params, const char* key) {
  if (!params.is_object() || !params.contains(key)) throw std::invalid_argument(std::string("missing parameter '") + key + "'");
  try {
    return params.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("parameter '") + key + "' has the wrong type");
  }
}

json location(const Term& t) {
  switch (t.kind) {
    case TermKind::prism_z: return {{"face", t.anchor}, {"interval", t.layer}};
    case TermKind::hexagon_z: return {{"hexagon", t.anchor}, {"layer", t.layer}};
    default: {
      json loc{{"vertex", t.anchor}, {"layer", t.layer}};
      if (t.parity >= 0) loc["parity"] = t.parity;
      return loc;
    }
  }
}

LayerInterface iface_param(const json& params) {
  const auto side = param<std::string>(params, "side", "top");
  if (side != "top" && side != "bottom") throw std::invalid_argument("side must be 'top' or 'bottom'");
  return {param<int>(params, "layer", 1), side == "top" ? Side::top : Side::bottom};
}

VertexId vertex_param(const Tessellation& t, const json& params, const char* key) {
  const auto v = param<long long>(params, key, static_cast<long long>(t.center_vertex()));
  if (v < 0 || static_cast<std::size_t>(v) >= t.num_vertices()) throw std::out_of_range(std::string(key) + " out of range");
  return static_cast<VertexId>(v);
}

FaceId face_param(const Tessellation& t, const json& params, const char* key) {
  const auto f = param<long long>(params, key, static_cast<long long>(t.faces_at(t.center_vertex()).front()));
  if (f < 0 || static_cast<std::size_t>(f) >= t.num_faces()) throw std::out_of_range(std::string(key) + " out of range");
  return static_cast<FaceId>(f);
}

WedgeSpec wedge_param(const Tessellation& t, const json& params) {
  const int parity = param<int>(params, "parity", 0);
  return {vertex_param(t, params, "root"), parity, param<int>(params, "first_slot", parity)};
}

Path path_from_vertices(const Tessellation& t, const std::vector<VertexId>& vs) {
  Path path;
  for (auto v : vs) {
    if (v >= t.num_vertices()) throw std::out_of_range("path vertex out of range");
  }
  path.vertices = vs;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const auto e = t.edge_between(vs[i], vs[i + 1]);
    if (!e) throw std::invalid_argument("path is not edge-connected");
    path.edges.push_back(*e);
  }
  return path;
}

}  // namespace

json lattice_to_json(const StabilizerCode& code) {
  const auto& l = code.lattice();
  const auto& t = l.base();
  json doc;
  doc["schlafli"] = {{"p", t.p()}, {"q", t.q()}};
  doc["patch"] = t.periodic() ? json{{"kind", "torus"}, {"l", t.side_length()}}
                              : json{{"kind", "disk"}, {"generations", t.generations()}};
  doc["layers"] = l.layers();

  json vertices = json::array();
  for (VertexId v = 0; v < t.num_vertices(); ++v) {
    const auto& tv = t.vertex(v);
    vertices.push_back({{"id", v}, {"x", tv.x}, {"y", tv.y}, {"interior", tv.interior}});
  }
  doc["vertices"] = std::move(vertices);

  json edges = json::array();
  for (Edge3Id e = 0; e < l.num_edges(); ++e) {
    const auto& ed = l.edge(e);
    edges.push_back({{"id", e},
                     {"kind", ed.kind == Edge3Kind::vertical ? "vertical" : "in_plane"},
                     {"a", {ed.a.vertex, ed.a.layer}},
                     {"b", {ed.b.vertex, ed.b.layer}}});
  }
  doc["edges3"] = std::move(edges);

  json faces = json::array();
  for (FaceId f = 0; f < t.num_faces(); ++f) {
    faces.push_back({{"id", f}, {"vertices", t.face(f).vertices}, {"edges", t.face(f).edges}});
  }
  doc["faces"] = std::move(faces);

  json prisms = json::array();
  for (PrismId p = 0; p < l.num_prisms(); ++p) {
    prisms.push_back({{"id", p}, {"face", l.prism(p).face}, {"interval", l.prism(p).interval}});
  }
  doc["prisms"] = std::move(prisms);

  json terms = json::array();
  for (TermId id = 0; id < code.num_terms(); ++id) {
    const auto& term = code.term(id);
    terms.push_back({{"id", id}, {"kind", to_string(term.kind)}, {"location", location(term)}, {"edges", term.support}});
  }
  doc["terms"] = std::move(terms);
  return doc;
}

StabilizerCode code_from_json(const json& doc) {
  try {
    const SchlafliPair pq{doc.at("schlafli").at("p").get<int>(), doc.at("schlafli").at("q").get<int>()};
    const auto& patch = doc.at("patch");
    const bool periodic = patch.at("kind").get<std::string>() == "torus";
    const int layers = doc.at("layers").get<int>();

    std::vector<TessVertex> vertices;
    for (const auto& v : doc.at("vertices")) {
      if (v.at("id").get<std::size_t>() != vertices.size()) throw std::invalid_argument("vertex ids must be dense and ordered");
      vertices.push_back({v.at("x").get<double>(), v.at("y").get<double>(), false});
    }
    const auto& edges3 = doc.at("edges3");
    std::size_t in_plane = 0;
    for (const auto& e : edges3) in_plane += e.at("kind").get<std::string>() == "in_plane" ? 1 : 0;
    if (layers < 3 || in_plane % static_cast<std::size_t>(layers) != 0) throw std::invalid_argument("edge table does not match the layer count");
    std::vector<TessEdge> edges;
    for (std::size_t e = 0; e < in_plane / static_cast<std::size_t>(layers); ++e) {
      const auto& rec = edges3.at(e);
      edges.push_back({rec.at("a").at(0).get<VertexId>(), rec.at("b").at(0).get<VertexId>()});
    }
    std::vector<TessFace> faces;
    for (const auto& f : doc.at("faces")) {
      TessFace face;
      face.vertices = f.at("vertices").get<std::vector<VertexId>>();
      if (f.contains("edges")) {
        face.edges = f.at("edges").get<std::vector<EdgeId>>();
      } else {
        for (std::size_t i = 0; i < face.vertices.size(); ++i) {
          const VertexId a = face.vertices[i];
          const VertexId b = face.vertices[(i + 1) % face.vertices.size()];
          EdgeId found = kNoId;
          for (EdgeId e = 0; e < edges.size(); ++e) {
            if ((edges[e].a == a && edges[e].b == b) || (edges[e].a == b && edges[e].b == a)) {
              if (found != kNoId) throw std::invalid_argument("face edges are ambiguous; include \"edges\"");
              found = e;
            }
          }
          if (found == kNoId) throw std::invalid_argument("face side has no edge");
          face.edges.push_back(found);
        }
      }
      faces.push_back(std::move(face));
    }
    auto t = Tessellation::assemble(pq, std::move(vertices), std::move(edges), std::move(faces), periodic,
                                    periodic ? patch.at("l").get<int>() : 0,
                                    periodic ? 0 : patch.at("generations").get<int>());
    auto lattice = Lattice3D::stack(std::move(t), layers);
    if (lattice.num_edges() != edges3.size()) throw std::invalid_argument("edge table does not match the lattice");

    std::vector<Term> terms;
    for (const auto& rec : doc.at("terms")) {
      const auto kind = term_kind_from_string(rec.at("kind").get<std::string>());
      if (!kind) throw std::invalid_argument("unknown term kind " + rec.at("kind").dump());
      Term term;
      term.kind = *kind;
      const auto& loc = rec.at("location");
      if (*kind == TermKind::prism_z) {
        term.anchor = loc.at("face").get<std::uint32_t>();
        term.layer = loc.at("interval").get<int>();
      } else if (*kind == TermKind::hexagon_z) {
        term.anchor = loc.at("hexagon").get<std::uint32_t>();
        term.layer = loc.at("layer").get<int>();
      } else {
        term.anchor = loc.at("vertex").get<std::uint32_t>();
        term.layer = loc.at("layer").get<int>();
        term.parity = loc.value("parity", -1);
      }
      term.support = rec.at("edges").get<std::vector<Edge3Id>>();
      terms.push_back(std::move(term));
    }
    return StabilizerCode(std::move(lattice), std::move(terms));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed lattice file: ") + e.what());
  }
}

StabilizerCode build_from_spec(const json& spec) {
  const SchlafliPair pq{required<int>(spec, "p"), required<int>(spec, "q")};
  const int layers = param<int>(spec, "layers", 3);
  const bool hexagon = param<bool>(spec, "hexagon", false);
  Tessellation t = spec.contains("periodic_l") && !spec.at("periodic_l").is_null()
                       ? build_periodic_flat(pq, required<int>(spec, "periodic_l"))
                       : build_patch(pq, param<int>(spec, "generations", 2));
  return build_code(Lattice3D::stack(std::move(t), layers), {hexagon});
}

PauliString make_operator(const StabilizerCode& code, std::string_view kind, const json& params) {
  const auto& l = code.lattice();
  const auto& t = l.base();
  const int layer = param<int>(params, "layer", 1);

  if (kind == "truncated_geodesic") {
    const auto ray = geodesic_ray(t, {vertex_param(t, params, "vertex"), param<int>(params, "slot", 0)});
    return x_truncated_geodesic(l, ray, layer);
  }
  if (kind == "stacked_geodesics") return single_fracton_geodesic_stack(code, face_param(t, params, "face"), layer).op;
  if (kind == "tree_logical") {
    const auto tree = fractal_tree(t, vertex_param(t, params, "root"), param<int>(params, "parity", 0));
    return x_fractal_tree_logical(l, tree, iface_param(params));
  }
  if (kind == "pruned_tree") {
    const int parity = param<int>(params, "parity", 0);
    const VertexId root = vertex_param(t, params, "root");
    const auto tree = fractal_tree(t, root, parity);
    const VertexId prune = params.contains("prune") ? vertex_param(t, params, "prune") : t.other_end(t.edge_at({root, parity}), root);
    return x_pruned_tree(l, tree, prune, iface_param(params));
  }
  if (kind == "pruned_tree_series") return single_fracton_pruned_series(code, face_param(t, params, "face"), iface_param(params)).op;
  if (kind == "wedge") return x_wedge_membrane(l, wedge_from_spec(t, wedge_param(t, params)), iface_param(params));
  if (kind == "wedge_intersection") {
    if (params.contains("a") && params.contains("b")) {
      return x_wedge_intersection(l, wedge_from_spec(t, wedge_param(t, params.at("a"))),
                                  wedge_from_spec(t, wedge_param(t, params.at("b"))), iface_param(params));
    }
    return find_wedge_corner(code, iface_param(params)).op;
  }
  if (kind == "z_string") {
    const auto k = param<std::string>(params, "string", "vertical");
    if (k == "vertical") {
      Path p;
      p.vertices.push_back(vertex_param(t, params, "vertex"));
      return z_string(l, ZStringKind::vertical, p, layer, param<int>(params, "count", 1));
    }
    if (k != "geodesic" && k != "tree_path") throw std::invalid_argument("string must be vertical, geodesic or tree_path");
    const auto zk = k == "geodesic" ? ZStringKind::geodesic : ZStringKind::tree_path;
    if (params.contains("vertices")) {
      return z_string(l, zk, path_from_vertices(t, params.at("vertices").get<std::vector<VertexId>>()), layer);
    }
    // boundary-to-boundary path through the root along the two outermost branches
    const auto tree = fractal_tree(t, vertex_param(t, params, "root"), param<int>(params, "parity", 0));
    const auto [a, b] = wedge_branches(t, tree, param<int>(params, "first_slot", tree.parity));
    Path p;
    p.vertices.assign(a.vertices.rbegin(), a.vertices.rend());
    p.edges.assign(a.edges.rbegin(), a.edges.rend());
    p.vertices.insert(p.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
    p.edges.insert(p.edges.end(), b.edges.begin(), b.edges.end());
    return z_string(l, zk, p, layer);
  }
  if (kind.starts_with("flat36:")) {
    const auto name = kind.substr(7);
    if (name == "z_hexagon") return flat36::z_hexagon(l, vertex_param(t, params, "center"), layer);
    if (name == "z_triangle") return flat36::z_triangle(l, face_param(t, params, "face"), layer);
    if (name == "charge_move_inplane") {
      return flat36::charge_move_inplane(l, vertex_param(t, params, "vertex"), param<int>(params, "slot", 0), layer);
    }
    if (name == "charge_move_vertical") return flat36::charge_move_vertical(l, vertex_param(t, params, "vertex"), layer);
    if (name == "x_flux_membrane") {
      const int L = t.side_length();
      return flat36::x_flux_membrane(l, param<int>(params, "j", 0), param<int>(params, "i_begin", 0),
                                     param<int>(params, "i_end", L), param<int>(params, "layer_begin", 0),
                                     param<int>(params, "layer_end", l.layers() - 1), param<int>(params, "omit_color", 0));
    }
    if (name == "x_planeon_move") {
      const auto e = param<long long>(params, "edge", 0);
      if (e < 0 || static_cast<std::size_t>(e) >= t.num_edges()) throw std::out_of_range("edge out of range");
      return flat36::x_planeon_move(l, static_cast<EdgeId>(e), layer);
    }
  }
  throw std::invalid_argument("unknown operator kind '" + std::string(kind) + "'");
}

json syndrome_to_json(const StabilizerCode& code, const std::vector<TermId>& excited) {
  json terms = json::array();
  for (auto id : excited) {
    const auto& t = code.term(id);
    terms.push_back({{"id", id}, {"kind", to_string(t.kind)}, {"location", location(t)}});
  }
  json particles = json::array();
  for (const auto& p : classify_excitations(code, excited)) {
    json rec{{"kind", to_string(p.kind)}, {"anchor", p.anchor}, {"layer", p.layer}, {"terms", p.terms}};
    if (!p.species.empty()) rec["species"] = p.species;
    particles.push_back(std::move(rec));
  }
  return {{"excited", std::move(terms)}, {"particles", std::move(particles)}};
}

json report_to_json(const MobilityReport& r) {
  json positions = json::array();
  for (const auto& p : r.positions) {
    positions.push_back({{"kind", to_string(p.kind)}, {"anchor", p.anchor}, {"layer", p.layer}});
  }
  return {{"positions", std::move(positions)},
          {"in_plane", r.in_plane},
          {"layers", r.layers},
          {"species", r.species},
          {"visited", r.visited},
          {"absorbed", r.absorbed},
          {"truncated", r.truncated}};
}

MoveSet parse_moves(std::string_view s) {
  if (s == "x") return MoveSet::x;
  if (s == "z") return MoveSet::z;
  if (s == "both") return MoveSet::both;
  throw std::invalid_argument("moves must be x, z or both");
}

}  // namespace ycube
