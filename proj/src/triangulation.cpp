#include "ebloch/triangulation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace ebloch {

using nlohmann::json;

int permutation_sign(const Permutation& p) {
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

Permutation inverse(const Permutation& p) {
  Permutation out{};
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = i;
  return out;
}

NormalPath reversed(const NormalPath& path) {
  NormalPath out;
  out.reserve(path.size());
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    out.push_back({it->tet, it->exit_face, it->enter_face});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; })) {
      throw ParseError(where + ": unknown key '" + key + "'");
    }
  }
  for (const char* key : required) {
    if (!obj.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  }
}

int get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ParseError(where + ": integer out of range");
  }
  return static_cast<int>(x);
}

bool is_permutation(const Permutation& p) {
  std::array<bool, 4> seen{};
  for (int v : p) {
    if (v < 0 || v > 3 || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

}  // namespace

Triangulation parse_triangulation(const json& doc) {
  require_keys(doc, {"name", "tetrahedra", "cusp_paths", "shapes"}, {"tetrahedra"}, "document");
  Triangulation t;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("name: expected a string");
    t.name = doc["name"].get<std::string>();
  }
  const json& tets = doc["tetrahedra"];
  if (!tets.is_array() || tets.empty()) throw ParseError("tetrahedra: expected a non-empty array");
  for (std::size_t i = 0; i < tets.size(); ++i) {
    const std::string where = "tetrahedra[" + std::to_string(i) + "]";
    require_keys(tets[i], {"gluings"}, {"gluings"}, where);
    const json& gl = tets[i]["gluings"];
    if (!gl.is_array() || gl.size() != 4) throw ParseError(where + ": expected 4 gluings");
    Tetrahedron tet;
    for (std::size_t f = 0; f < 4; ++f) {
      const std::string gw = where + ".gluings[" + std::to_string(f) + "]";
      require_keys(gl[f], {"tet", "perm"}, {"tet", "perm"}, gw);
      tet.gluings[f].tet = get_int(gl[f]["tet"], gw + ".tet");
      const json& perm = gl[f]["perm"];
      if (!perm.is_array() || perm.size() != 4) throw ParseError(gw + ".perm: expected 4 entries");
      for (std::size_t k = 0; k < 4; ++k) tet.gluings[f].perm[k] = get_int(perm[k], gw + ".perm");
    }
    t.tetrahedra.push_back(tet);
  }
  if (doc.contains("cusp_paths")) {
    const json& paths = doc["cusp_paths"];
    if (!paths.is_array()) throw ParseError("cusp_paths: expected an array");
    t.has_cusp_paths = true;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const std::string where = "cusp_paths[" + std::to_string(i) + "]";
      if (!paths[i].is_array() || paths[i].empty()) {
        throw ParseError(where + ": expected a non-empty array of steps");
      }
      NormalPath path;
      for (const json& step : paths[i]) {
        require_keys(step, {"tet", "enter_face", "exit_face"}, {"tet", "enter_face", "exit_face"},
                     where);
        path.push_back({get_int(step["tet"], where), get_int(step["enter_face"], where),
                        get_int(step["exit_face"], where)});
      }
      t.cusp_paths.push_back(std::move(path));
    }
  }
  if (doc.contains("shapes")) {
    const json& shapes = doc["shapes"];
    if (!shapes.is_array() || shapes.size() != tets.size()) {
      throw ParseError("shapes: expected one [re, im] pair per tetrahedron");
    }
    for (const json& s : shapes) {
      if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
        throw ParseError("shapes: expected [re, im]");
      }
      t.shapes.emplace_back(s[0].get<double>(), s[1].get<double>());
    }
  }
  validate(t);
  for (const auto& path : t.cusp_paths) path_passes(t, path);
  return t;
}

Triangulation parse_triangulation_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_triangulation(doc);
}

Triangulation load_triangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_triangulation_text(buf.str());
}

void validate(const Triangulation& t) {
  const int n = t.size();
  if (n == 0) throw ContractViolation("triangulation has no tetrahedra");
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.gluing(i, f);
      const std::string where = "tet " + std::to_string(i) + " face " + std::to_string(f);
      if (g.tet < 0 || g.tet >= n) throw ContractViolation(where + ": target tetrahedron out of range");
      if (!is_permutation(g.perm)) throw ContractViolation(where + ": perm is not a permutation");
      const int f2 = g.perm[static_cast<std::size_t>(f)];
      if (g.tet == i && f2 == f) throw ContractViolation(where + ": face glued to itself");
      const Gluing& back = t.gluing(g.tet, f2);
      if (back.tet != i || back.perm != inverse(g.perm)) {
        throw ContractViolation(where + ": gluing is not an involution with inverse permutations");
      }
    }
  }
  orientation_signs(t);
}

json to_json(const Triangulation& t) {
  json doc = json::object();
  doc["name"] = t.name;
  json tets = json::array();
  for (const auto& tet : t.tetrahedra) {
    json gl = json::array();
    for (const auto& g : tet.gluings) gl.push_back({{"tet", g.tet}, {"perm", g.perm}});
    tets.push_back({{"gluings", gl}});
  }
  doc["tetrahedra"] = tets;
  if (t.has_cusp_paths) {
    json paths = json::array();
    for (const auto& path : t.cusp_paths) {
      json steps = json::array();
      for (const auto& s : path) {
        steps.push_back({{"tet", s.tet}, {"enter_face", s.enter_face}, {"exit_face", s.exit_face}});
      }
      paths.push_back(steps);
    }
    doc["cusp_paths"] = paths;
  }
  if (!t.shapes.empty()) {
    json shapes = json::array();
    for (auto z : t.shapes) shapes.push_back({z.real(), z.imag()});
    doc["shapes"] = shapes;
  }
  return doc;
}

Triangulation relabel_tetrahedra(const Triangulation& t, const std::vector<int>& order) {
  const int n = t.size();
  if (static_cast<int>(order.size()) != n) throw ContractViolation("relabel: wrong length");
  std::vector<int> check(order);
  std::sort(check.begin(), check.end());
  for (int i = 0; i < n; ++i)
    if (check[static_cast<std::size_t>(i)] != i) throw ContractViolation("relabel: not a permutation");

  Triangulation out = t;
  for (int i = 0; i < n; ++i) {
    Tetrahedron tet = t.tetrahedra[static_cast<std::size_t>(i)];
    for (auto& g : tet.gluings) g.tet = order[static_cast<std::size_t>(g.tet)];
    out.tetrahedra[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = tet;
  }
  for (auto& path : out.cusp_paths)
    for (auto& s : path) s.tet = order[static_cast<std::size_t>(s.tet)];
  if (!t.shapes.empty()) {
    for (int i = 0; i < n; ++i) {
      out.shapes[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
          t.shapes[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

std::vector<int> orientation_signs(const Triangulation& t) {
  const int n = t.size();
  std::vector<int> eps(static_cast<std::size_t>(n), 0);
  for (int root = 0; root < n; ++root) {
    if (eps[static_cast<std::size_t>(root)] != 0) continue;
    eps[static_cast<std::size_t>(root)] = 1;
    std::queue<int> todo;
    todo.push(root);
    while (!todo.empty()) {
      const int i = todo.front();
      todo.pop();
      for (int f = 0; f < 4; ++f) {
        const Gluing& g = t.gluing(i, f);
        const int want = -permutation_sign(g.perm) * eps[static_cast<std::size_t>(i)];
        int& other = eps[static_cast<std::size_t>(g.tet)];
        if (other == 0) {
          other = want;
          todo.push(g.tet);
        } else if (other != want) {
          throw ContractViolation("triangulation is not orientable (inconsistent gluing at tet " +
                                  std::to_string(i) + " face " + std::to_string(f) + ")");
        }
      }
    }
  }
  return eps;
}

// ---------------------------------------------------------------------------
// Edges, vertices, faces.

int local_edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  if (a < 0 || b > 3 || a == b) throw ContractViolation("local_edge_index: bad vertex pair");
  return table[a][b];
}

std::pair<int, int> local_edge_vertices(int index) {
  static constexpr std::pair<int, int> edges[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return edges[index];
}

namespace {

int pair_of(int a, int b) {
  if (a > b) std::swap(a, b);
  if ((a == 0 && b == 1) || (a == 2 && b == 3)) return 0;
  if ((a == 1 && b == 2) || (a == 0 && b == 3)) return 1;
  return 2;
}

std::pair<int, int> complement(int a, int b) {
  std::array<int, 2> out{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != a && v != b) out[static_cast<std::size_t>(k++)] = v;
  return {out[0], out[1]};
}

}  // namespace

std::vector<EdgeClass> edge_classes(const Triangulation& t) {
  const int n = t.size();
  std::vector<std::array<bool, 6>> seen(static_cast<std::size_t>(n), std::array<bool, 6>{});
  std::vector<EdgeClass> out;
  for (int i = 0; i < n; ++i) {
    for (int e = 0; e < 6; ++e) {
      if (seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)]) continue;
      auto [a, b] = local_edge_vertices(e);
      auto [c, d] = complement(a, b);
      EdgeClass cls;
      NormalStep start{i, d, c};
      NormalStep step = start;
      int ea = a, eb = b;
      do {
        cls.incidences.push_back({step.tet, ea, eb, pair_of(ea, eb)});
        cls.loop.push_back(step);
        seen[static_cast<std::size_t>(step.tet)][static_cast<std::size_t>(local_edge_index(ea, eb))] = true;
        const Gluing& g = t.gluing(step.tet, step.exit_face);
        const auto& p = g.perm;
        NormalStep next{g.tet, p[static_cast<std::size_t>(step.exit_face)],
                        p[static_cast<std::size_t>(step.enter_face)]};
        ea = p[static_cast<std::size_t>(ea)];
        eb = p[static_cast<std::size_t>(eb)];
        step = next;
        if (cls.loop.size() > static_cast<std::size_t>(6 * n)) {
          throw ConsistencyError("edge walk did not close");
        }
      } while (!(step == start));
      out.push_back(std::move(cls));
    }
  }
  return out;
}

std::vector<std::array<int, 6>> edge_class_index(const Triangulation& t,
                                                 const std::vector<EdgeClass>& classes) {
  std::vector<std::array<int, 6>> out(static_cast<std::size_t>(t.size()));
  for (auto& row : out) row.fill(-1);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    for (const auto& inc : classes[k].incidences) {
      out[static_cast<std::size_t>(inc.tet)][static_cast<std::size_t>(local_edge_index(inc.a, inc.b))] =
          static_cast<int>(k);
    }
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Dense labels in order of first appearance.
template <std::size_t K>
std::vector<std::array<int, K>> label_orbits(UnionFind& uf, int n, int* count) {
  std::vector<std::array<int, K>> out(static_cast<std::size_t>(n));
  std::vector<int> label(static_cast<std::size_t>(n) * K, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    for (std::size_t v = 0; v < K; ++v) {
      const int root = uf.find(i * static_cast<int>(K) + static_cast<int>(v));
      int& l = label[static_cast<std::size_t>(root)];
      if (l < 0) l = next++;
      out[static_cast<std::size_t>(i)][v] = l;
    }
  }
  if (count) *count = next;
  return out;
}

}  // namespace

std::vector<std::array<int, 4>> vertex_classes(const Triangulation& t, int* count) {
  const int n = t.size();
  UnionFind uf(4 * n);
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.gluing(i, f);
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        uf.unite(4 * i + v, 4 * g.tet + g.perm[static_cast<std::size_t>(v)]);
      }
    }
  }
  return label_orbits<4>(uf, n, count);
}

std::vector<std::array<int, 4>> face_classes(const Triangulation& t, int* count) {
  const int n = t.size();
  UnionFind uf(4 * n);
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.gluing(i, f);
      uf.unite(4 * i + f, 4 * g.tet + g.perm[static_cast<std::size_t>(f)]);
    }
  }
  return label_orbits<4>(uf, n, count);
}

NormalPath edge_loop(const Triangulation&, const EdgeClass& e) { return e.loop; }

PathPasses path_passes(const Triangulation& t, const NormalPath& path) {
  if (path.empty()) throw ContractViolation("normal path is empty");
  const std::size_t m = path.size();
  for (std::size_t k = 0; k < m; ++k) {
    const NormalStep& s = path[k];
    const std::string where = "normal path step " + std::to_string(k);
    if (s.tet < 0 || s.tet >= t.size()) throw ContractViolation(where + ": tetrahedron out of range");
    if (s.enter_face < 0 || s.enter_face > 3 || s.exit_face < 0 || s.exit_face > 3) {
      throw ContractViolation(where + ": face out of range");
    }
    if (s.enter_face == s.exit_face) throw ContractViolation(where + ": enters and exits the same face");
    const Gluing& g = t.gluing(s.tet, s.exit_face);
    const NormalStep& next = path[(k + 1) % m];
    if (g.tet != next.tet || g.perm[static_cast<std::size_t>(s.exit_face)] != next.enter_face) {
      throw ContractViolation(where + ": not linked to the next step by a gluing");
    }
  }

  PathPasses out;
  for (const NormalStep& s : path) {
    auto [a, b] = complement(s.enter_face, s.exit_face);
    out.edges.push_back({s.tet, a, b, pair_of(a, b), 0});
  }

  // The viewpoint vertex is carried along by the gluings and must stay on the
  // passed edge. Both endpoints can qualify (an edge loop); the choice with
  // the smaller sorted (tet, vertex) list wins, independent of start and
  // direction.
  std::optional<std::vector<int>> best;
  std::vector<std::pair<int, int>> best_key;
  for (int v0 : {out.edges[0].a, out.edges[0].b}) {
    std::vector<int> vs{v0};
    bool ok = true;
    for (std::size_t k = 0; k < m && ok; ++k) {
      const NormalStep& s = path[k];
      const int v = vs.back();
      if (v == s.enter_face || v == s.exit_face) {
        ok = false;
        break;
      }
      const int w = t.gluing(s.tet, s.exit_face).perm[static_cast<std::size_t>(v)];
      if (k + 1 == m) ok = (w == v0);
      else vs.push_back(w);
    }
    if (!ok) continue;
    std::vector<std::pair<int, int>> key;
    for (std::size_t k = 0; k < m; ++k) key.emplace_back(path[k].tet, vs[k]);
    std::sort(key.begin(), key.end());
    if (!best || key < best_key) {
      best = vs;
      best_key = key;
    }
  }
  if (best) {
    for (std::size_t k = 0; k < m; ++k) {
      const int v = (*best)[k];
      PassedEdge& pe = out.edges[k];
      const int u = pe.a == v ? pe.b : pe.a;
      // Counterclockwise iff (v, u, exit, enter) is an odd permutation.
      pe.rotation = -permutation_sign({v, u, path[k].exit_face, path[k].enter_face});
    }
    out.viewpoint = std::move(best);
  }
  return out;
}

}  // namespace ebloch
