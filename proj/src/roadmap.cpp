#include "gsrm/roadmap.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <queue>
#include <sstream>

#include "json.hpp"

namespace gsrm {

namespace {
constexpr std::pair<Builder, std::string_view> kBuilderNames[] = {
    {Builder::gsrm, "gsrm"}, {Builder::prm, "prm"}, {Builder::grid8, "grid8"},
    {Builder::spars2, "spars2"}, {Builder::orm, "orm"}};
}

std::string_view to_string(Builder b) {
  for (const auto& [tag, name] : kBuilderNames) {
    if (tag == b) return name;
  }
  return "unknown";
}

Builder parse_builder(std::string_view tag) {
  for (const auto& [b, name] : kBuilderNames) {
    if (name == tag) return b;
  }
  throw std::invalid_argument("unknown builder tag: " + std::string(tag));
}

std::string_view to_string(FailureReason f) {
  switch (f) {
    case FailureReason::no_graph_path: return "no-graph-path";
    case FailureReason::start_segment_blocked: return "start-segment-blocked";
    case FailureReason::goal_segment_blocked: return "goal-segment-blocked";
  }
  return "unknown";
}

Roadmap::Roadmap(std::vector<Point> vertices, const std::vector<std::pair<int, int>>& edges)
    : vertices_(std::move(vertices)), adjacency_(vertices_.size()) {
  const int n = static_cast<int>(vertices_.size());
  for (const auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("roadmap: edge index out of range");
    if (i == j) throw std::invalid_argument("roadmap: self-loop");
    for (const auto& nb : adjacency_[i]) {
      if (nb.vertex == j) throw std::invalid_argument("roadmap: duplicate edge");
    }
    const double w = distance(vertices_[i], vertices_[j]);
    adjacency_[i].push_back({j, w});
    adjacency_[j].push_back({i, w});
    ++edge_count_;
  }
}

std::vector<std::pair<int, int>> Roadmap::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int i = 0; i < static_cast<int>(adjacency_.size()); ++i) {
    for (const auto& nb : adjacency_[i]) {
      if (i < nb.vertex) out.emplace_back(i, nb.vertex);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int nearest_vertex(const Roadmap& r, const Point& p) {
  if (r.empty()) throw EmptyRoadmap();
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  const auto& vs = r.vertices();
  for (int i = 0; i < static_cast<int>(vs.size()); ++i) {
    const double dx = vs[i].x - p.x, dy = vs[i].y - p.y;
    const double d = dx * dx + dy * dy;
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

SearchResult astar(const Roadmap& r, int start, int goal) {
  const int n = static_cast<int>(r.vertex_count());
  if (start < 0 || goal < 0 || start >= n || goal >= n) throw std::out_of_range("astar: vertex index");
  const auto& vs = r.vertices();
  const Point target = vs[goal];

  struct Entry {
    double f;
    double g;
    int v;
  };
  const auto later = [](const Entry& a, const Entry& b) { return a.f > b.f || (a.f == b.f && a.v > b.v); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> open(later);

  std::vector<double> g(n, std::numeric_limits<double>::infinity());
  std::vector<int> parent(n, -1);
  std::vector<char> closed(n, 0);
  g[start] = 0.0;
  open.push({distance(vs[start], target), 0.0, start});

  SearchResult result;
  while (!open.empty()) {
    const Entry e = open.top();
    open.pop();
    if (closed[e.v] || e.g != g[e.v]) continue;
    closed[e.v] = 1;
    ++result.visited;
    if (e.v == goal) {
      std::vector<int> path;
      for (int v = goal; v >= 0; v = parent[v]) path.push_back(v);
      std::reverse(path.begin(), path.end());
      result.path = std::move(path);
      return result;
    }
    for (const auto& nb : r.neighbors(e.v)) {
      const double ng = e.g + nb.weight;
      if (ng < g[nb.vertex]) {
        g[nb.vertex] = ng;
        parent[nb.vertex] = e.v;
        closed[nb.vertex] = 0;
        open.push({ng + distance(vs[nb.vertex], target), ng, nb.vertex});
      }
    }
  }
  return result;
}

double path_length(const Roadmap& r, const std::vector<int>& path) {
  double len = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto& nbs = r.neighbors(path[i - 1]);
    const auto it = std::find_if(nbs.begin(), nbs.end(), [&](const Neighbor& nb) { return nb.vertex == path[i]; });
    if (it == nbs.end()) throw std::invalid_argument("path uses a missing edge");
    len += it->weight;
  }
  return len;
}

QueryResult plan(const Roadmap& r, const OccupancyGrid& grid, const Point& s, const Point& g) {
  if (!is_free_point(grid, s)) throw InvalidQuery("start is not in free space");
  if (!is_free_point(grid, g)) throw InvalidQuery("goal is not in free space");
  const int vs = nearest_vertex(r, s);
  const int vg = nearest_vertex(r, g);
  const auto& verts = r.vertices();

  const bool start_ok = segment_free(grid, s, verts[vs]);
  const bool goal_ok = segment_free(grid, verts[vg], g);
  auto search = astar(r, vs, vg);

  QueryResult q;
  q.visited = search.visited;
  if (search.path) q.discrete_path = *search.path;
  if (!start_ok) {
    q.failure_reason = FailureReason::start_segment_blocked;
  } else if (!search.path) {
    q.failure_reason = FailureReason::no_graph_path;
  } else if (!goal_ok) {
    q.failure_reason = FailureReason::goal_segment_blocked;
  } else {
    q.success = true;
    q.continuous_length = path_length(r, q.discrete_path) + distance(verts[vs], s) + distance(verts[vg], g);
  }
  return q;
}

namespace {
void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}
}  // namespace

std::string to_json(const Roadmap& r) {
  std::string out = "{\"builder\": \"";
  out += to_string(r.builder);
  out += "\", \"seed\": " + std::to_string(r.seed) + ",\n \"vertices\": [";
  const auto& vs = r.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    out += i ? ",\n  [" : "\n  [";
    append_double(out, vs[i].x);
    out += ", ";
    append_double(out, vs[i].y);
    out += "]";
  }
  out += "],\n \"edges\": [";
  const auto es = r.edges();
  for (std::size_t i = 0; i < es.size(); ++i) {
    out += i ? ", [" : "[";
    out += std::to_string(es[i].first) + ", " + std::to_string(es[i].second) + "]";
  }
  out += "]}\n";
  return out;
}

Roadmap roadmap_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("roadmap json: ") + e.what());
  }
  try {
    std::vector<Point> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    Roadmap r(std::move(vertices), edges);
    r.builder = parse_builder(j.at("builder").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("roadmap json: ") + e.what());
  }
}

void save_roadmap(const Roadmap& r, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write roadmap file: " + path.string());
  f << to_json(r);
}

Roadmap load_roadmap(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open roadmap file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return roadmap_from_json(text);
}

}  // namespace gsrm
