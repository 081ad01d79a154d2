#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "ycube/gf2.hpp"
#include "ycube/opgen.hpp"

using namespace ycube;
using ycube::fixtures::patch_code;

namespace {

std::set<std::pair<FaceId, int>> excited_prisms(const StabilizerCode& code, const std::vector<TermId>& s) {
  std::set<std::pair<FaceId, int>> out;
  for (auto id : s) {
    if (code.term(id).kind == TermKind::prism_z) out.insert({code.term(id).anchor, code.term(id).layer});
  }
  return out;
}

// Closed vertical Z loop at v: commutes with every term and overlaps any vertical X sheet at v once.
PauliString vertical_loop(const Lattice3D& l, VertexId v) {
  return z_string(l, ZStringKind::vertical, Path{{v}, {}, false}, 0, l.layers());
}

Path join_at_root(const Path& into, const Path& out) {
  Path p;
  p.vertices.assign(into.vertices.rbegin(), into.vertices.rend());
  p.edges.assign(into.edges.rbegin(), into.edges.rend());
  p.vertices.insert(p.vertices.end(), out.vertices.begin() + 1, out.vertices.end());
  p.edges.insert(p.edges.end(), out.edges.begin(), out.edges.end());
  return p;
}

}  // namespace

TEST(TruncatedGeodesic, ExcitesTheFacesBehindTheStart) {
  const auto& code = patch_code(5, 4, 3);
  const auto& l = code.lattice();
  const auto& t = l.base();
  const auto c = t.center_vertex();
  for (int s = 0; s < 4; ++s) {
    const auto ray = geodesic_ray(t, {c, s});
    const auto got = excited_prisms(code, syndrome(code, x_truncated_geodesic(l, ray, 1)));
    // faces at the start that do not contain the first edge hold exactly one ray vertex
    std::set<std::pair<FaceId, int>> expected;
    const auto& along = t.faces_of_edge(ray.edges.front());
    for (auto f : t.faces_at(c)) {
      if (std::find(along.begin(), along.end(), f) == along.end()) expected.insert({f, 1});
    }
    EXPECT_EQ(got, expected);
    EXPECT_EQ(got.size(), 2u);
  }
}

TEST(TruncatedGeodesic, FullGeodesicIsALogical) {
  const auto& code = patch_code(5, 4, 3);
  const auto& l = code.lattice();
  const auto c = l.base().center_vertex();
  for (int s = 0; s < 2; ++s) {
    const auto line = geodesic_through(l.base(), {c, s});
    const auto op = x_truncated_geodesic(l, line, 1);
    EXPECT_TRUE(syndrome(code, op).empty());
    EXPECT_FALSE(in_stabilizer_group(code, op));
    EXPECT_FALSE(commutes(op, vertical_loop(l, c)));
    EXPECT_TRUE(syndrome(code, vertical_loop(l, c)).empty());
  }
}

TEST(TruncatedGeodesic, DipoleAndDegenerateRays) {
  const auto& code = patch_code(5, 4, 3);
  const auto& l = code.lattice();
  const auto& t = l.base();
  const auto c = t.center_vertex();
  const auto w = t.other_end(t.edge_at({c, 0}), c);
  const auto ray = dipole_ray(t, c, w);
  std::set<std::pair<FaceId, int>> expected;
  for (auto f : t.faces_of_edge(t.edge_at({c, 0}))) expected.insert({f, 2});
  EXPECT_EQ(excited_prisms(code, syndrome(code, x_truncated_geodesic(l, ray, 2))), expected);

  const Path point{{c}, {}, false};
  EXPECT_EQ(syndrome(code, x_truncated_geodesic(l, point, 0)).size(), 4u);
  EXPECT_THROW(x_truncated_geodesic(l, geodesic_ray(t, {c, 0}, 1), 0), std::invalid_argument);
  EXPECT_THROW(dipole_ray(t, c, c), std::invalid_argument);
  const auto& tree_code = patch_code(4, 6, 1);
  EXPECT_THROW(x_truncated_geodesic(tree_code.lattice(), point, 0), std::invalid_argument);
}

TEST(TruncatedGeodesic, StackLeavesOneFracton) {
  for (int g : {2, 3}) {
    const auto& code = patch_code(5, 4, g);
    const auto& t = code.lattice().base();
    for (auto f : t.interior_faces()) {
      const auto stack = single_fracton_geodesic_stack(code, f, 1);
      const auto s = syndrome(code, stack.op);
      ASSERT_EQ(s.size(), 1u);
      EXPECT_EQ(code.term(s[0]).anchor, f);
      EXPECT_EQ(code.term(s[0]).layer, 1);
      EXPECT_EQ(x_stacked_truncated_geodesics(code.lattice(), stack.rays, 1), stack.op);
    }
  }
  EXPECT_THROW(single_fracton_geodesic_stack(patch_code(5, 4, 2), 9999, 0), std::invalid_argument);
}

TEST(TreeLogical, EmptySyndromeAndNontrivial) {
  const auto& code = patch_code(4, 6, 3);
  const auto& l = code.lattice();
  const auto c = l.base().center_vertex();
  for (int parity : {0, 1}) {
    const auto tree = fractal_tree(l.base(), c, parity);
    for (auto side : {Side::top, Side::bottom}) {
      const auto op = x_fractal_tree_logical(l, tree, {1, side});
      EXPECT_TRUE(syndrome(code, op).empty());
      EXPECT_FALSE(in_stabilizer_group(code, op));
      EXPECT_FALSE(commutes(op, vertical_loop(l, c)));
      EXPECT_EQ(op.x().ones().size(), tree.vertices.size());
    }
  }
  EXPECT_EQ(vertical_gap(l, {0, Side::bottom}), 2);
  EXPECT_EQ(vertical_gap(l, {0, Side::top}), 0);
  const auto shallow = fractal_tree(l.base(), c, 0, 1);
  EXPECT_THROW(x_fractal_tree_logical(l, shallow, {0, Side::top}), std::invalid_argument);
}

TEST(TreeLogical, PrunedTreeIsADipoleAcrossTheCut) {
  const auto& code = patch_code(4, 6, 3);
  const auto& l = code.lattice();
  const auto& t = l.base();
  const auto c = t.center_vertex();
  for (int s = 0; s < 6; ++s) {
    const auto w = t.other_end(t.edge_at({c, s}), c);
    const auto site = dipole_prune_site(t, c, w);
    EXPECT_EQ(site.parity, s % 2);
    const auto op = x_pruned_tree(l, fractal_tree(t, c, site.parity), w, {1, Side::top});
    std::set<std::pair<FaceId, int>> expected;
    for (auto f : t.faces_of_edge(t.edge_at({c, s}))) expected.insert({f, 1});
    EXPECT_EQ(excited_prisms(code, syndrome(code, op)), expected);
    EXPECT_EQ(syndrome(code, op).size(), 2u);
  }
  const auto tree = fractal_tree(t, c, 0);
  EXPECT_THROW(x_pruned_tree(l, tree, c, {1, Side::top}), std::invalid_argument);
  EXPECT_THROW(x_pruned_tree(l, tree, t.other_end(t.edge_at({c, 1}), c), {1, Side::top}), std::invalid_argument);
}

TEST(TreeLogical, PrunedSeriesLeavesOneFracton) {
  const auto& code = patch_code(4, 6, 3);
  const auto& t = code.lattice().base();
  std::size_t checked = 0;
  for (auto f : t.interior_faces()) {
    if (checked++ > 30) break;
    const auto series = single_fracton_pruned_series(code, f, {0, Side::bottom});
    const auto s = syndrome(code, series.op);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(code.term(s[0]).anchor, f);
    EXPECT_EQ(code.term(s[0]).layer, 2);
  }
  EXPECT_THROW(single_fracton_pruned_series(patch_code(5, 4, 2), 0, {0, Side::top}), std::invalid_argument);
}

TEST(Wedge, MembranesHaveEmptySyndrome) {
  for (auto [p, q, g] : {std::array{4, 6, 3}, std::array{6, 4, 2}}) {
    const auto& code = patch_code(p, q, g);
    const auto& l = code.lattice();
    const auto c = l.base().center_vertex();
    for (int parity : {0, 1}) {
      for (int slot = parity; slot < q; slot += 2) {
        const auto region = wedge_from_spec(l.base(), {c, parity, slot});
        const auto op = x_wedge_membrane(l, region, {1, Side::top});
        EXPECT_TRUE(syndrome(code, op).empty()) << p << "," << q << " slot " << slot;
      }
    }
  }
  const auto& odd = patch_code(5, 4, 2);
  EXPECT_THROW(x_wedge_membrane(odd.lattice(), Region{}, {0, Side::top}), std::invalid_argument);
  EXPECT_THROW(find_wedge_corner(odd, {0, Side::top}), std::invalid_argument);
}

TEST(Wedge, CornerLeavesOneFracton) {
  for (auto [p, q, g] : {std::array{4, 6, 3}, std::array{6, 4, 2}}) {
    const auto& code = patch_code(p, q, g);
    const auto& l = code.lattice();
    const auto corner = find_wedge_corner(code, {1, Side::top});
    ASSERT_EQ(corner.syndrome.size(), 1u);
    EXPECT_EQ(code.term(corner.syndrome[0]).kind, TermKind::prism_z);
    const auto rebuilt = x_wedge_intersection(l, wedge_from_spec(l.base(), corner.a), wedge_from_spec(l.base(), corner.b),
                                              {1, Side::top});
    EXPECT_EQ(rebuilt, corner.op);
    EXPECT_EQ(syndrome(code, rebuilt), corner.syndrome);
  }
}

TEST(ZString, ClosedStringsCommute) {
  const auto& code = patch_code(4, 6, 3);
  const auto& l = code.lattice();
  const auto& t = l.base();
  const auto c = t.center_vertex();
  const auto tree = fractal_tree(t, c, 0);
  const auto path = join_at_root(tree_branch(t, tree, 0, Turn::left), tree_branch(t, tree, 2, Turn::right));
  EXPECT_TRUE(syndrome(code, z_string(l, ZStringKind::tree_path, path, 1)).empty());
  // a path that switches slot class is rejected
  const auto w = t.other_end(t.edge_at({c, 0}), c);
  Path bent{{c, w}, {t.edge_at({c, 0})}, false};
  bent.edges.push_back(t.edge_at({w, t.slot_of(bent.edges[0], w) + 1}));
  bent.vertices.push_back(t.other_end(bent.edges[1], w));
  EXPECT_THROW(z_string(l, ZStringKind::tree_path, bent, 0), std::invalid_argument);
  EXPECT_THROW(z_string(l, ZStringKind::geodesic, path, 0), std::invalid_argument);

  const auto& lineon = patch_code(5, 4, 3);
  const auto& ll = lineon.lattice();
  const auto line = geodesic_through(ll.base(), {ll.base().center_vertex(), 1});
  EXPECT_TRUE(syndrome(lineon, z_string(ll, ZStringKind::geodesic, line, 2)).empty());
  // an open string excites lineons at both ends
  const Path half = geodesic_ray(ll.base(), {ll.base().center_vertex(), 0}, 2);
  const auto ends = classify_excitations(lineon, syndrome(lineon, z_string(ll, ZStringKind::geodesic, half, 2)));
  ASSERT_EQ(ends.size(), 2u);
  for (const auto& p : ends) EXPECT_EQ(p.species, "lineon");
  EXPECT_THROW(z_string(ll, ZStringKind::vertical, line, 0, 0), std::invalid_argument);
}

class Flat36 : public ::testing::Test {
 protected:
  StabilizerCode code = fixtures::torus_code(3, 6, 6, 6, true);
  const Lattice3D& l = code.lattice();
  const Tessellation& t = l.base();
  std::vector<int> color = triangular_coloring(t);

  std::vector<Particle> particles(const PauliString& op) const { return classify_excitations(code, syndrome(code, op)); }
};

TEST_F(Flat36, HexagonIsATerm) {
  const auto op = flat36::z_hexagon(l, 7, 2);
  EXPECT_TRUE(syndrome(code, op).empty());
  EXPECT_TRUE(in_stabilizer_group(code, op));
}

TEST_F(Flat36, TriangleCreatesThreeColoredCharges) {
  for (FaceId f : {0u, 1u, 17u}) {
    const auto ps = particles(flat36::z_triangle(l, f, 3));
    ASSERT_EQ(ps.size(), 3u);
    std::set<int> colors;
    for (const auto& p : ps) {
      EXPECT_EQ(p.species, "charge");
      EXPECT_EQ(p.layer, 3);
      colors.insert(color[p.anchor]);
    }
    EXPECT_EQ(colors.size(), 3u);
  }
}

TEST_F(Flat36, ChargeHopsKeepColor) {
  const VertexId v = 8;
  const auto start = flat36::charge_move_vertical(l, v, 2);
  for (int slot = 0; slot < 6; ++slot) {
    const auto target = flat36::charge_move_target(t, v, slot);
    EXPECT_NE(target, v);
    EXPECT_EQ(color[target], color[v]);
    const auto ps = particles(start * flat36::charge_move_inplane(l, v, slot, 2));
    ASSERT_EQ(ps.size(), 2u);
    std::set<std::pair<VertexId, int>> sites;
    for (const auto& p : ps) {
      EXPECT_EQ(p.species, "charge");
      sites.insert({p.anchor, p.layer});
    }
    EXPECT_EQ(sites, (std::set<std::pair<VertexId, int>>{{target, 2}, {v, 3}}));
  }
}

TEST_F(Flat36, ClosedFluxMembraneCommutes) {
  for (int omit = 0; omit < 3; ++omit) {
    const auto op = flat36::x_flux_membrane(l, 2, 0, 6, 0, 5, omit);
    EXPECT_TRUE(syndrome(code, op).empty()) << omit;
  }
  const auto open = flat36::x_flux_membrane(l, 2, 1, 4, 1, 3, 0);
  const auto s = syndrome(code, open);
  ASSERT_FALSE(s.empty());
  // prism ids: face 2*(i + L*j) + {0,1}; fluxes only at the two ends, fractons only above and below
  std::set<VertexId> centers;
  for (auto id : s) {
    const auto& term = code.term(id);
    if (term.kind == TermKind::prism_z) {
      EXPECT_TRUE(term.layer == 0 || term.layer == 3);
      EXPECT_EQ(term.anchor / 2 / 6, 2u);
    } else {
      EXPECT_EQ(term.kind, TermKind::hexagon_z);
      EXPECT_GE(term.layer, 1);
      EXPECT_LE(term.layer, 3);
      centers.insert(term.anchor);
    }
  }
  EXPECT_EQ(centers.size(), 2u);
  EXPECT_THROW(flat36::x_flux_membrane(l, 2, 0, 6, 0, 5, 3), std::invalid_argument);
}

TEST_F(Flat36, PlaneonMoveExcitesFractonsAndFluxes) {
  const auto ps = particles(flat36::x_planeon_move(l, 5, 1));
  std::size_t fractons = 0, fluxes = 0;
  for (const auto& p : ps) {
    fractons += p.kind == ParticleKind::fracton ? 1 : 0;
    fluxes += p.kind == ParticleKind::flux ? 1 : 0;
  }
  EXPECT_EQ(fractons, 4u);
  EXPECT_EQ(fluxes, 2u);
  const auto& other = patch_code(5, 4, 1);
  EXPECT_THROW(flat36::z_triangle(other.lattice(), 0, 0), std::invalid_argument);
}

namespace {

// Charge hops from v repeating the torus offset of its first hop at `slot` until it returns to v.
PauliString charge_loop(const Lattice3D& l, VertexId v, int slot, int layer) {
  const auto& t = l.base();
  const int L = t.side_length();
  auto wrap = [L](int a) { return ((a % L) + L) % L; };
  const VertexId first = flat36::charge_move_target(t, v, slot);
  const int di = static_cast<int>(first % L) - static_cast<int>(v % L);
  const int dj = static_cast<int>(first / L) - static_cast<int>(v / L);
  PauliString op(l.num_edges());
  VertexId at = v;
  for (std::size_t step = 0; step <= t.num_vertices(); ++step) {
    const auto want = static_cast<VertexId>(wrap(static_cast<int>(at % L) + di) + L * wrap(static_cast<int>(at / L) + dj));
    int s = 0;
    while (s < 6 && flat36::charge_move_target(t, at, s) != want) ++s;
    if (s == 6) throw std::logic_error("no hop with the loop offset");
    op *= flat36::charge_move_inplane(l, at, s, layer);
    at = want;
    if (at == v) return op;
  }
  throw std::logic_error("charge loop did not close");
}

}  // namespace

TEST_F(Flat36, ChargeLoopPiercingMembraneAnticommutes) {
  // the membrane spans the strip between rows 2 and 3 at every layer; a loop pierces it once per winding in j
  const int L = t.side_length();
  for (int slot = 0; slot < 6; ++slot) {
    const auto loop = charge_loop(l, 0, slot, 2);
    EXPECT_TRUE(syndrome(code, loop).empty()) << slot;
    const auto first = flat36::charge_move_target(t, 0, slot);
    int dj = static_cast<int>(first / L);
    if (dj > L / 2) dj -= L;
    int di = static_cast<int>(first % L);
    if (di > L / 2) di -= L;
    int steps = 1;
    while ((steps * di) % L != 0 || (steps * dj) % L != 0) ++steps;
    const bool odd_winding = ((steps * dj) / L) % 2 != 0;
    for (int omit = 0; omit < 3; ++omit) {
      const auto membrane = flat36::x_flux_membrane(l, 2, 0, L, 0, l.layers() - 1, omit);
      const bool anticommutes = !commutes(loop, membrane);
      // rungs touching the charge's own color are the ones the membrane keeps only when that color is not omitted
      EXPECT_EQ(anticommutes, odd_winding && omit != color[0]) << "slot " << slot << " omit " << omit;
    }
  }
}

TEST_F(Flat36, PlaneonMoversAnticommuteWhereTheyCross) {
  // X mover on edge e against a Z planeon string through e: symplectic form 1
  const int L = t.side_length();
  const std::vector<Edge3Id> path{l.in_plane(*t.edge_between(0, 1), 1),
                                  l.in_plane(*t.edge_between(1, static_cast<VertexId>(1 + L)), 1)};
  const auto zpath = PauliString::Z(l.num_edges(), path);
  EXPECT_FALSE(commutes(flat36::x_planeon_move(l, *t.edge_between(0, 1), 1), zpath));
  EXPECT_TRUE(commutes(flat36::x_planeon_move(l, *t.edge_between(0, 1), 2), zpath));
  EXPECT_TRUE(commutes(flat36::x_planeon_move(l, *t.edge_between(3, 4), 1), zpath));
}
