#include "qwsearch/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "qwsearch/errors.hpp"

namespace qwsearch {

std::uint64_t GraphDescriptor::vertex_count() const {
  switch (family) {
    case GraphFamily::lattice:
      return static_cast<std::uint64_t>(size) * static_cast<std::uint64_t>(size);
    case GraphFamily::hypercube:
      return std::uint64_t{1} << size;
    case GraphFamily::generic:
      return 0;
  }
  return 0;
}

int GraphDescriptor::coin_dim() const {
  switch (family) {
    case GraphFamily::lattice: return 4;
    case GraphFamily::hypercube: return size;
    case GraphFamily::generic: return 0;
  }
  return 0;
}

double GraphDescriptor::hilbert_dim() const {
  return static_cast<double>(coin_dim()) * static_cast<double>(vertex_count());
}

std::string GraphDescriptor::name() const {
  switch (family) {
    case GraphFamily::lattice: return "lattice";
    case GraphFamily::hypercube: return "hypercube";
    case GraphFamily::generic: return "generic";
  }
  return "generic";
}

GraphDescriptor lattice_graph(int sqrt_n) {
  if (sqrt_n < 2) {
    throw QwError(ErrorCode::UnsupportedDimension,
                  "lattice side must be at least 2");
  }
  return GraphDescriptor{GraphFamily::lattice, sqrt_n};
}

GraphDescriptor hypercube_graph(int n) {
  if (n < 2) {
    throw QwError(ErrorCode::UnsupportedDimension,
                  "hypercube dimension must be at least 2 (coin degenerates)");
  }
  if (n > 62) {
    throw QwError(ErrorCode::UnsupportedDimension,
                  "hypercube dimension above 62 overflows vertex labels");
  }
  return GraphDescriptor{GraphFamily::hypercube, n};
}

MarkedSet make_marked_set(std::vector<std::uint64_t> vertices,
                          std::uint64_t vertex_count) {
  if (vertices.empty()) {
    throw QwError(ErrorCode::InvalidMarkedSet, "marked set is empty");
  }
  std::set<std::uint64_t> seen;
  for (std::uint64_t v : vertices) {
    if (vertex_count > 0 && v >= vertex_count) {
      throw QwError(ErrorCode::InvalidMarkedSet,
                    "marked vertex " + std::to_string(v) + " out of range");
    }
    if (!seen.insert(v).second) {
      throw QwError(ErrorCode::InvalidMarkedSet,
                    "duplicate marked vertex " + std::to_string(v));
    }
  }
  return MarkedSet{std::move(vertices)};
}

double SpectralModel::phi_min() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& group : groups) {
    if (group.phase > 0.0) best = std::min(best, group.phase);
  }
  return best;
}

}  // namespace qwsearch
