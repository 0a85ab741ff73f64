#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsrm/geometry.hpp"
#include "gsrm/map_io.hpp"

namespace gsrm {

/// Roadmap construction algorithms. spars2 and orm are not built here; the
/// tags exist so externally produced roadmap files can be benchmarked.
enum class Builder { gsrm, prm, grid8, spars2, orm };

std::string_view to_string(Builder b);
/// Throws std::invalid_argument for an unknown tag.
Builder parse_builder(std::string_view tag);

struct Neighbor {
  int vertex;
  double weight;
};

/// Undirected graph over free-space points; edge weight = Euclidean distance.
class Roadmap {
 public:
  Roadmap() = default;
  /// Throws std::invalid_argument on out-of-range indices, self-loops or
  /// duplicate edges.
  Roadmap(std::vector<Point> vertices, const std::vector<std::pair<int, int>>& edges);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Neighbor>& neighbors(int v) const { return adjacency_[v]; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  bool empty() const { return vertices_.empty(); }

  /// Unique edges as (i, j) with i < j, sorted.
  std::vector<std::pair<int, int>> edges() const;

  Builder builder = Builder::gsrm;
  std::uint64_t seed = 0;
  double build_ms = 0.0;

 private:
  std::vector<Point> vertices_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::size_t edge_count_ = 0;
};

class EmptyRoadmap : public std::invalid_argument {
 public:
  EmptyRoadmap() : std::invalid_argument("roadmap has no vertices") {}
};

class InvalidQuery : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// argmin of Euclidean distance; ties go to the lowest index. Throws EmptyRoadmap.
int nearest_vertex(const Roadmap& r, const Point& p);

struct SearchResult {
  std::optional<std::vector<int>> path;
  std::size_t visited = 0;  // vertices popped and expanded
};

/// A* with the Euclidean heuristic. Equal priorities pop the smaller index first.
SearchResult astar(const Roadmap& r, int start, int goal);

enum class FailureReason { no_graph_path, start_segment_blocked, goal_segment_blocked };
std::string_view to_string(FailureReason f);

struct QueryResult {
  bool success = false;
  std::vector<int> discrete_path;
  /// Graph path length plus both connection stubs; absent on failure.
  std::optional<double> continuous_length;
  std::size_t visited = 0;
  std::optional<FailureReason> failure_reason;
};

/// Connects s and g to their nearest vertices and searches between them.
/// Throws InvalidQuery when s or g is not in free space.
QueryResult plan(const Roadmap& r, const OccupancyGrid& grid, const Point& s, const Point& g);

/// Sum of edge weights along a vertex sequence.
double path_length(const Roadmap& r, const std::vector<int>& path);

/// JSON: {"builder", "seed", "vertices": [[x,y],...], "edges": [[i,j],...]}.
/// Coordinates are written with 17 significant digits; weights are recomputed on load.
std::string to_json(const Roadmap& r);
Roadmap roadmap_from_json(std::string_view text);
void save_roadmap(const Roadmap& r, const std::filesystem::path& path);
Roadmap load_roadmap(const std::filesystem::path& path);

}  // namespace gsrm
