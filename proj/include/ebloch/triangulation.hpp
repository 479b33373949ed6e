#pragma once

// Ideal triangulations given by face gluings. Face f of a tetrahedron is the
// face opposite vertex f; a gluing of (t, f) carries vertex v of t to vertex
// perm[v] of the target tetrahedron, and face f to face perm[f].

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ebloch/errors.hpp"

namespace ebloch {

using Permutation = std::array<int, 4>;

int permutation_sign(const Permutation& p);
Permutation inverse(const Permutation& p);

struct Gluing {
  int tet = 0;
  Permutation perm{0, 1, 2, 3};
};

struct Tetrahedron {
  std::array<Gluing, 4> gluings;
};

/// One tetrahedron crossed by a normal path.
struct NormalStep {
  int tet = 0;
  int enter_face = 0;
  int exit_face = 0;
  friend bool operator==(const NormalStep&, const NormalStep&) = default;
};

using NormalPath = std::vector<NormalStep>;

NormalPath reversed(const NormalPath& path);

struct Triangulation {
  std::string name;
  std::vector<Tetrahedron> tetrahedra;
  std::vector<NormalPath> cusp_paths;
  bool has_cusp_paths = false;
  std::vector<std::complex<double>> shapes;

  int size() const { return static_cast<int>(tetrahedra.size()); }
  const Gluing& gluing(int tet, int face) const {
    return tetrahedra[static_cast<std::size_t>(tet)].gluings[static_cast<std::size_t>(face)];
  }
};

/// Strict parse and full validation (ParseError / ContractViolation).
Triangulation parse_triangulation(const nlohmann::json& doc);
Triangulation parse_triangulation_text(const std::string& text);
Triangulation load_triangulation(const std::string& path);

/// Structural checks (involution, permutations) plus orientability. Throws on failure.
void validate(const Triangulation& t);

nlohmann::json to_json(const Triangulation& t);

/// Tetrahedron i of the input becomes tetrahedron order[i].
Triangulation relabel_tetrahedra(const Triangulation& t, const std::vector<int>& order);

/// epsilon_i with glued faces cancelling; tetrahedron 0 of every component
/// gets +1. Throws ContractViolation if the complex is not orientable.
std::vector<int> orientation_signs(const Triangulation& t);

/// One tetrahedron edge seen from inside an edge class.
struct EdgeIncidence {
  int tet = 0;
  int a = 0;  // endpoints, in the order carried along the walk
  int b = 0;
  int pair = 0;  // 0: 01/23, 1: 12/03, 2: 02/13
};

struct EdgeClass {
  std::vector<EdgeIncidence> incidences;
  NormalPath loop;
  int valence() const { return static_cast<int>(incidences.size()); }
};

std::vector<EdgeClass> edge_classes(const Triangulation& t);

/// class_of[tet][pair-local edge index 0..5] in the order 01 02 03 12 13 23.
std::vector<std::array<int, 6>> edge_class_index(const Triangulation& t,
                                                 const std::vector<EdgeClass>& classes);

/// Local edge index 0..5 for the vertex pair (a, b) in the order above.
int local_edge_index(int a, int b);
std::pair<int, int> local_edge_vertices(int index);

/// vertex_class[tet][v].
std::vector<std::array<int, 4>> vertex_classes(const Triangulation& t, int* count = nullptr);

/// Orbits of (tet, face); two per glued pair. face_class[tet][f].
std::vector<std::array<int, 4>> face_classes(const Triangulation& t, int* count = nullptr);

NormalPath edge_loop(const Triangulation& t, const EdgeClass& e);

struct PassedEdge {
  int tet = 0;
  int a = 0;
  int b = 0;
  int pair = 0;
  /// +1 counterclockwise, -1 clockwise, as seen from the viewpoint vertex in
  /// the tetrahedron's own vertex order; 0 when the path is not in a vertex
  /// neighbourhood.
  int rotation = 0;
};

struct PathPasses {
  std::vector<PassedEdge> edges;
  /// The viewpoint vertex per step, when the path runs around one ideal
  /// vertex.
  std::optional<std::vector<int>> viewpoint;
  bool in_vertex_link() const { return viewpoint.has_value(); }
};

/// Validates linkage and closure; throws ContractViolation otherwise.
PathPasses path_passes(const Triangulation& t, const NormalPath& path);

}  // namespace ebloch
