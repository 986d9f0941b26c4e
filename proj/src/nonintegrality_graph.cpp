// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "nonintegrality_graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace peakshave {

std::size_t NonIntegralityGraph::add_class(ClassVertex v) {
  const std::size_t k = classes_.size();
  for (std::size_t t : v.times) at_time_[t].push_back(k);
  edges_ += v.times.size();
  classes_.push_back(std::move(v));
  return k;
}

bool NonIntegralityGraph::is_forest() const {
  const std::size_t T = horizon();
  std::vector<std::size_t> parent(T + classes_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    for (std::size_t t : classes_[k].times) {
      std::size_t a = find(t), b = find(T + k);
      if (a == b) return false;
      parent[a] = b;
    }
  }
  return true;
}

NonIntegralityGraph build_graph(const RelaxedSolution& y) {
  NonIntegralityGraph g(y.horizon());
  for (std::size_t c = 0; c < y.converters(); ++c) {
    ClassVertex open{c, {}};
    for (std::size_t t = 0; t < y.horizon(); ++t) {
      if (!y.value_integral(c, t)) open.times.push_back(t);
      // An integral running count separates classes.
      if (y.prefix_integral(c, t) && !open.times.empty()) {
        g.add_class(std::move(open));
        open = ClassVertex{c, {}};
      }
    }
    if (!open.times.empty()) g.add_class(std::move(open));
  }
  return g;
}

std::optional<CycleWitness> find_cycle(const NonIntegralityGraph& g) {
  const std::size_t T = g.horizon();
  const std::size_t V = T + g.classes().size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  auto degree = [&](std::size_t v) {
    return v < T ? g.classes_at(v).size() : g.class_vertex(v - T).times.size();
  };
  auto neighbour = [&](std::size_t v, std::size_t i) {
    return v < T ? T + g.classes_at(v)[i] : g.class_vertex(v - T).times[i];
  };

  std::vector<std::size_t> parent(V, kNone);
  std::vector<char> seen(V, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t root = 0; root < V; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    stack.assign(1, {root, 0});
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == degree(v)) {
        stack.pop_back();
        continue;
      }
      std::size_t w = neighbour(v, next++);
      if (w == parent[v]) continue;
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = v;
        stack.emplace_back(w, 0);
        continue;
      }
      // Back edge v -> w closes the tree path w ... v.
      std::vector<std::size_t> cycle;
      for (std::size_t u = v; u != w; u = parent[u]) cycle.push_back(u);
      cycle.push_back(w);
      std::reverse(cycle.begin(), cycle.end());
      if (cycle.front() >= T) std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
      CycleWitness witness;
      for (std::size_t i = 0; i < cycle.size(); i += 2) {
        std::size_t k = cycle[i + 1] - T;
        witness.times.push_back(cycle[i]);
        witness.classes.push_back(k);
        witness.converters.push_back(g.class_vertex(k).converter);
      }
      return witness;
    }
  }
  return std::nullopt;
}

bool witness_holds(const CycleWitness& w, const RelaxedSolution& y) {
  const std::size_t k = w.length();
  if (k < 2 || w.converters.size() != k) return false;
  if (std::set<std::size_t>(w.times.begin(), w.times.end()).size() != k) return false;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t c = w.converters[i], a = w.times[i], b = w.next_time(i);
    if (y.value_integral(c, a) || y.value_integral(c, b)) return false;
    for (std::size_t t = std::min(a, b); t < std::max(a, b); ++t)
      if (y.prefix_integral(c, t)) return false;
  }
  return true;
}

}  // namespace peakshave
