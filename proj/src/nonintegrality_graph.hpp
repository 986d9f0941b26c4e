// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "relaxation.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace peakshave {

// A maximal run of fractional values of one converter, linked while the
// running count stays fractional in between.
struct ClassVertex {
  std::size_t converter;
  std::vector<std::size_t> times;  // ascending
};

// Bipartite graph between intervals and class vertices; one edge per
// fractional value of the solution.
class NonIntegralityGraph {
 public:
  NonIntegralityGraph() = default;
  explicit NonIntegralityGraph(std::size_t horizon) : at_time_(horizon) {}

  std::size_t horizon() const { return at_time_.size(); }
  const std::vector<ClassVertex>& classes() const { return classes_; }
  const ClassVertex& class_vertex(std::size_t k) const { return classes_[k]; }
  const std::vector<std::size_t>& classes_at(std::size_t t) const { return at_time_[t]; }
  std::size_t time_degree(std::size_t t) const { return at_time_[t].size(); }
  std::size_t edge_count() const { return edges_; }
  bool is_forest() const;

  std::size_t add_class(ClassVertex v);

 private:
  std::vector<ClassVertex> classes_;
  std::vector<std::vector<std::size_t>> at_time_;
  std::size_t edges_ = 0;
};

NonIntegralityGraph build_graph(const RelaxedSolution& y);

// Alternating cycle t_1, (c_1,W_1), ..., t_k, (c_k,W_k), t_{k+1} = t_1.
struct CycleWitness {
  std::vector<std::size_t> converters;  // c_i
  std::vector<std::size_t> times;       // t_i; t_{k+1} is times[0]
  std::vector<std::size_t> classes;     // class vertex index of (c_i, W_i)

  std::size_t length() const { return times.size(); }
  std::size_t next_time(std::size_t i) const { return times[(i + 1) % times.size()]; }
};

// DFS for a back edge; linear in the size of the graph.
std::optional<CycleWitness> find_cycle(const NonIntegralityGraph& g);

// y(c_i,t_i), y(c_i,t_{i+1}) fractional and the running count of c_i
// fractional on the half-open range between them, for every i; k >= 2 and
// distinct times.
bool witness_holds(const CycleWitness& w, const RelaxedSolution& y);

}  // namespace peakshave
