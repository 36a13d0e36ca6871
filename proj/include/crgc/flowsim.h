// Copyright 2026 The CRGC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crgc/cutbound.h"
#include "crgc/rational.h"

namespace crgc {

enum class VertexKind { kSource, kIn, kMid, kOut, kDataCollector };

struct FlowVertex {
  VertexKind kind;
  unsigned node = 0;   // storage node index, 0 for source / collector
  unsigned stage = 0;  // 0 for the initial storage nodes
  // "source", "dc", or "out:v:stage" / "in:v:stage" / "mid:v:stage".
  std::string name() const;
};

struct FlowEdge {
  std::size_t from;
  std::size_t to;
  Rational capacity;  // finalized sentinel for infinite edges
  bool infinite = false;
};

// One batch repair: `regenerated[i]` downloads from the d nodes listed in
// `helpers[i]`, each read at its most recent incarnation before this stage.
struct RepairStage {
  std::vector<unsigned> regenerated;
  std::vector<std::vector<unsigned>> helpers;
};

struct RepairHistory {
  std::vector<RepairStage> stages;  // stage s = index + 1
};

// Staged information flow graph G(n, k, d, r; alpha, beta1, beta2) with one
// data collector.
class FlowGraph {
 public:
  const std::vector<FlowVertex>& vertices() const { return vertices_; }
  const std::vector<FlowEdge>& edges() const { return edges_; }
  std::size_t source() const { return 0; }
  std::size_t sink() const { return sink_; }
  // Larger than the sum of all finite capacities.
  const Rational& infinity() const { return infinity_; }

  // Data collector's nodes with the stage of the incarnation it reads.
  const std::vector<std::pair<unsigned, unsigned>>& collector_nodes() const { return dc_; }

  // "from,to,capacity" per edge; infinite edges print "inf".
  std::string dump() const;

 private:
  friend FlowGraph build_graph(const RepairHistory&, std::span<const unsigned>,
                               const BoundParams&);
  std::size_t add_vertex(VertexKind kind, unsigned node, unsigned stage);
  void add_edge(std::size_t from, std::size_t to, Rational capacity);
  void add_infinite_edge(std::size_t from, std::size_t to);
  void finalize();

  std::vector<FlowVertex> vertices_;
  std::vector<FlowEdge> edges_;
  std::size_t sink_ = 0;
  Rational infinity_;
  std::vector<std::pair<unsigned, unsigned>> dc_;
};

// Throws InvalidArgument for histories that break the graph rules: stage
// batches of size != r, helper counts != d, helpers inside the batch,
// repeated indices, more stages than k, or collector nodes not distinct.
FlowGraph build_graph(const RepairHistory& history, std::span<const unsigned> dc_nodes,
                      const BoundParams& params);

// Edmonds-Karp with exact rational capacities.
Rational max_flow(const FlowGraph& g);

// Sum of capacities on edges leaving the source side; `sink_side[v]` marks
// vertices on the collector's side.
Rational cut_capacity(const FlowGraph& g, const std::vector<bool>& sink_side);

enum class CutKind {
  kRepairLinks,  // in/mid on the collector side: beta edges cross
  kStorage,      // in/mid on the source side: the alpha edge crosses
};

// Capacity of the cut that puts the collector and its out-vertices on the
// sink side and treats each repair group as `kinds` says. Groups are the
// collector's nodes bucketed by the stage they were last regenerated in,
// ascending. A stage-0 group has no in/mid vertices and takes kStorage.
Rational evaluate_cut(const FlowGraph& g, std::span<const CutKind> kinds);

// Number of groups evaluate_cut expects.
std::size_t collector_group_count(const FlowGraph& g);

struct AdversarialHistory {
  unsigned n = 0;  // node count the history was built for
  RepairHistory history;
  std::vector<unsigned> dc_nodes;
};

// History realizing a cut of the given type against collector nodes 1..k:
// the i-th nonzero part's nodes are regenerated together in stage i, helped
// by every collector node regenerated earlier plus fresh nodes. Needs
// n >= d + r (params.n = 0 selects d + r).
AdversarialHistory adversarial_history(const CutType& type, const BoundParams& params);

}  // namespace crgc
