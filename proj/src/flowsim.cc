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

#include "crgc/flowsim.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

#include "crgc/error.h"

namespace crgc {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::size_t find_vertex(const FlowGraph& g, VertexKind kind, unsigned node, unsigned stage) {
  const auto& vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].kind == kind && vs[i].node == node && vs[i].stage == stage) return i;
  }
  return kNone;
}

std::vector<unsigned> group_stages(const FlowGraph& g) {
  std::set<unsigned> stages;
  for (const auto& [node, stage] : g.collector_nodes()) stages.insert(stage);
  return {stages.begin(), stages.end()};
}

}  // namespace

std::string FlowVertex::name() const {
  switch (kind) {
    case VertexKind::kSource:
      return "source";
    case VertexKind::kDataCollector:
      return "dc";
    case VertexKind::kIn:
      return "in:" + std::to_string(node) + ":" + std::to_string(stage);
    case VertexKind::kMid:
      return "mid:" + std::to_string(node) + ":" + std::to_string(stage);
    case VertexKind::kOut:
      return "out:" + std::to_string(node) + ":" + std::to_string(stage);
  }
  return "?";
}

std::size_t FlowGraph::add_vertex(VertexKind kind, unsigned node, unsigned stage) {
  vertices_.push_back({kind, node, stage});
  return vertices_.size() - 1;
}

void FlowGraph::add_edge(std::size_t from, std::size_t to, Rational capacity) {
  edges_.push_back({from, to, std::move(capacity), false});
}

void FlowGraph::add_infinite_edge(std::size_t from, std::size_t to) {
  edges_.push_back({from, to, 0, true});
}

void FlowGraph::finalize() {
  Rational finite = 0;
  for (const auto& e : edges_) {
    if (!e.infinite) finite += e.capacity;
  }
  infinity_ = finite + 1;
  for (auto& e : edges_) {
    if (e.infinite) e.capacity = infinity_;
  }
}

std::string FlowGraph::dump() const {
  std::ostringstream os;
  for (const auto& e : edges_) {
    os << vertices_[e.from].name() << ',' << vertices_[e.to].name() << ','
       << (e.infinite ? std::string("inf") : to_exact_string(e.capacity)) << '\n';
  }
  return os.str();
}

FlowGraph build_graph(const RepairHistory& history, std::span<const unsigned> dc_nodes,
                      const BoundParams& params) {
  params.validate();
  const unsigned n = params.n;
  if (n < params.k) throw InvalidArgument("flow graph needs n >= k");
  if (history.stages.size() > params.k) {
    throw InvalidArgument("history has more stages than a collector can distinguish (k)");
  }
  auto in_range = [n](unsigned v) { return v >= 1 && v <= n; };

  FlowGraph g;
  g.add_vertex(VertexKind::kSource, 0, 0);
  std::vector<std::size_t> current(n + 1, kNone);
  std::vector<unsigned> current_stage(n + 1, 0);
  for (unsigned v = 1; v <= n; ++v) {
    current[v] = g.add_vertex(VertexKind::kOut, v, 0);
    g.add_edge(g.source(), current[v], params.alpha);
  }

  for (std::size_t s = 0; s < history.stages.size(); ++s) {
    const auto stage = static_cast<unsigned>(s + 1);
    const RepairStage& st = history.stages[s];
    const std::set<unsigned> batch(st.regenerated.begin(), st.regenerated.end());
    if (st.regenerated.size() != params.r || batch.size() != params.r) {
      throw InvalidArgument("stage " + std::to_string(stage) + " must regenerate r distinct nodes");
    }
    if (st.helpers.size() != st.regenerated.size()) {
      throw InvalidArgument("stage " + std::to_string(stage) + " lacks helper lists");
    }
    std::vector<std::size_t> in(params.r), mid(params.r);
    for (unsigned i = 0; i < params.r; ++i) {
      const unsigned p = st.regenerated[i];
      if (!in_range(p)) throw InvalidArgument("regenerated node out of range");
      const std::set<unsigned> helpers(st.helpers[i].begin(), st.helpers[i].end());
      if (st.helpers[i].size() != params.d || helpers.size() != params.d) {
        throw InvalidArgument("each newcomer needs d distinct helpers");
      }
      in[i] = g.add_vertex(VertexKind::kIn, p, stage);
      mid[i] = g.add_vertex(VertexKind::kMid, p, stage);
      for (unsigned h : helpers) {
        if (!in_range(h)) throw InvalidArgument("helper out of range");
        if (batch.contains(h)) {
          throw InvalidArgument("helper " + std::to_string(h) + " is being regenerated itself");
        }
        g.add_edge(current[h], in[i], params.beta1);
      }
      g.add_infinite_edge(in[i], mid[i]);
    }
    for (unsigned i = 0; i < params.r; ++i) {
      for (unsigned j = 0; j < params.r; ++j) {
        if (i != j) g.add_edge(in[i], mid[j], params.beta2);
      }
    }
    for (unsigned i = 0; i < params.r; ++i) {
      const unsigned p = st.regenerated[i];
      const std::size_t out = g.add_vertex(VertexKind::kOut, p, stage);
      g.add_edge(mid[i], out, params.alpha);
      current[p] = out;
      current_stage[p] = stage;
    }
  }

  const std::set<unsigned> dc_set(dc_nodes.begin(), dc_nodes.end());
  if (dc_nodes.size() != params.k || dc_set.size() != params.k) {
    throw InvalidArgument("data collector needs k distinct nodes");
  }
  g.sink_ = g.add_vertex(VertexKind::kDataCollector, 0, 0);
  for (unsigned v : dc_nodes) {
    if (!in_range(v)) throw InvalidArgument("collector node out of range");
    g.add_infinite_edge(current[v], g.sink_);
    g.dc_.emplace_back(v, current_stage[v]);
  }
  g.finalize();
  return g;
}

Rational max_flow(const FlowGraph& g) {
  struct Arc {
    std::size_t to;
    std::size_t rev;
    Rational residual;
  };
  std::vector<std::vector<Arc>> adj(g.vertices().size());
  for (const auto& e : g.edges()) {
    adj[e.from].push_back({e.to, adj[e.to].size(), e.capacity});
    adj[e.to].push_back({e.from, adj[e.from].size() - 1, 0});
  }
  Rational flow = 0;
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> parent(adj.size(), {kNone, kNone});
    std::deque<std::size_t> queue{g.source()};
    parent[g.source()] = {g.source(), kNone};
    while (!queue.empty() && parent[g.sink()].first == kNone) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < adj[u].size(); ++i) {
        const Arc& a = adj[u][i];
        if (a.residual > 0 && parent[a.to].first == kNone) {
          parent[a.to] = {u, i};
          queue.push_back(a.to);
        }
      }
    }
    if (parent[g.sink()].first == kNone) break;
    Rational bottleneck = g.infinity();
    for (std::size_t v = g.sink(); v != g.source(); v = parent[v].first) {
      bottleneck = std::min(bottleneck, adj[parent[v].first][parent[v].second].residual);
    }
    for (std::size_t v = g.sink(); v != g.source(); v = parent[v].first) {
      Arc& a = adj[parent[v].first][parent[v].second];
      a.residual -= bottleneck;
      adj[a.to][a.rev].residual += bottleneck;
    }
    flow += bottleneck;
  }
  return flow;
}

Rational cut_capacity(const FlowGraph& g, const std::vector<bool>& sink_side) {
  if (sink_side.size() != g.vertices().size()) {
    throw InvalidArgument("cut assignment must cover every vertex");
  }
  if (sink_side[g.source()] || !sink_side[g.sink()]) {
    throw InvalidArgument("cut must separate the source from the collector");
  }
  Rational total = 0;
  for (const auto& e : g.edges()) {
    if (!sink_side[e.from] && sink_side[e.to]) total += e.capacity;
  }
  return total;
}

std::size_t collector_group_count(const FlowGraph& g) { return group_stages(g).size(); }

Rational evaluate_cut(const FlowGraph& g, std::span<const CutKind> kinds) {
  const auto stages = group_stages(g);
  if (kinds.size() != stages.size()) {
    throw InvalidArgument("expected one cut kind per repair group (" +
                          std::to_string(stages.size()) + ")");
  }
  std::vector<bool> sink_side(g.vertices().size(), false);
  sink_side[g.sink()] = true;
  for (const auto& [node, stage] : g.collector_nodes()) {
    sink_side[find_vertex(g, VertexKind::kOut, node, stage)] = true;
    const auto group = static_cast<std::size_t>(
        std::find(stages.begin(), stages.end(), stage) - stages.begin());
    if (kinds[group] != CutKind::kRepairLinks) continue;
    if (stage == 0) throw InvalidArgument("stage-0 nodes have no repair links to cut");
    sink_side[find_vertex(g, VertexKind::kIn, node, stage)] = true;
    sink_side[find_vertex(g, VertexKind::kMid, node, stage)] = true;
  }
  return cut_capacity(g, sink_side);
}

AdversarialHistory adversarial_history(const CutType& type, const BoundParams& params) {
  params.validate();
  const unsigned n = params.n == 0 ? params.d + params.r : params.n;
  if (n < params.d + params.r) {
    throw InvalidArgument("adversarial histories need n >= d + r");
  }
  if (type.parts.size() != params.k) throw InvalidArgument("cut type must have k parts");
  unsigned total = 0;
  for (auto part : type.parts) {
    if (part > params.r) throw InvalidArgument("cut type part exceeds r");
    total += part;
  }
  if (total != params.k) throw InvalidArgument("cut type parts must sum to k");

  AdversarialHistory out;
  out.n = n;
  for (unsigned v = 1; v <= params.k; ++v) out.dc_nodes.push_back(v);
  unsigned counted = 0;  // collector nodes already placed in earlier stages
  for (auto part : type.parts) {
    if (part == 0) continue;
    std::vector<unsigned> group, earlier, pool;
    for (unsigned v = 1; v <= counted; ++v) earlier.push_back(v);
    for (unsigned v = counted + 1; v <= counted + part; ++v) group.push_back(v);
    // Fresh nodes: non-collector nodes first, then collectors still to come.
    for (unsigned v = params.k + 1; v <= n; ++v) pool.push_back(v);
    for (unsigned v = counted + part + 1; v <= params.k; ++v) pool.push_back(v);

    const unsigned fillers = params.r - part;
    const unsigned fresh_helpers = params.d - counted;
    RepairStage stage;
    stage.regenerated = group;
    stage.regenerated.insert(stage.regenerated.end(), pool.begin(), pool.begin() + fillers);
    std::vector<unsigned> helpers = earlier;
    helpers.insert(helpers.end(), pool.begin() + fillers,
                   pool.begin() + fillers + fresh_helpers);
    stage.helpers.assign(params.r, helpers);
    out.history.stages.push_back(std::move(stage));
    counted += part;
  }
  return out;
}

}  // namespace crgc
