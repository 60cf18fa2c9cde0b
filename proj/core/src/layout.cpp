/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "hic/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace hic {

double layout_score(const Circuit &routed, const Layout &layout,
                    const NoiseProfile &noise) {
  (void)layout;
  double fidelity = 1.0;
  for (const auto &g : routed.gates) {
    switch (g.kind) {
    case GateKind::Barrier:
      continue;
    case GateKind::Measure:
    case GateKind::QpdMeasure: {
      QubitId q = g.qubits[0];
      if (q >= noise.qubits.size())
        throw UnmappedOpError("measure on unmapped qubit " + std::to_string(q));
      fidelity *= 1.0 - noise.qubits[q].readout_error;
      continue;
    }
    default:
      break;
    }
    if (g.qubits.size() == 2) {
      auto it = noise.two_qubit_gate_error.find(
          make_edge(g.qubits[0], g.qubits[1]));
      if (it == noise.two_qubit_gate_error.end())
        throw UnmappedOpError("two-qubit op on absent edge (" +
                              std::to_string(g.qubits[0]) + "," +
                              std::to_string(g.qubits[1]) + ")");
      fidelity *= 1.0 - it->second;
    } else {
      QubitId q = g.qubits[0];
      if (q >= noise.qubits.size())
        throw UnmappedOpError("op on unmapped qubit " + std::to_string(q));
      fidelity *= 1.0 - noise.qubits[q].single_qubit_gate_error;
    }
  }
  return 1.0 - fidelity;
}

Component component_from_map(const CouplingMap &map) {
  Component comp;
  for (QubitId q = 0; q < map.num_qubits; ++q)
    comp.qubits.push_back(q);
  comp.edges = map.edges;
  return comp;
}

namespace {

// BFS order of component vertices from an anchor, neighbors visited in
// ascending id; disconnected leftovers (there are none in valid components)
// would be appended in id order.
std::vector<QubitId> bfs_order(const Component &comp, QubitId anchor) {
  std::map<QubitId, std::vector<QubitId>> adj;
  for (QubitId q : comp.qubits)
    adj[q] = {};
  for (const auto &[a, b] : comp.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto &[q, nbs] : adj)
    std::sort(nbs.begin(), nbs.end());
  std::vector<QubitId> order;
  std::map<QubitId, bool> seen;
  std::queue<QubitId> frontier;
  frontier.push(anchor);
  seen[anchor] = true;
  while (!frontier.empty()) {
    QubitId q = frontier.front();
    frontier.pop();
    order.push_back(q);
    for (QubitId nb : adj[q])
      if (!seen[nb]) {
        seen[nb] = true;
        frontier.push(nb);
      }
  }
  for (QubitId q : comp.qubits)
    if (!seen[q])
      order.push_back(q);
  return order;
}

// Fragment qubits ordered by BFS over the fragment interaction graph,
// starting from the minimum-degree vertex (ties: lowest index) so path-like
// fragments enumerate end to end.
std::vector<std::uint32_t> fragment_order(const Circuit &fragment) {
  const std::uint32_t n = fragment.num_qubits;
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto &g : fragment.gates)
    if (g.is_two_qubit()) {
      adj[g.qubits[0]].push_back(g.qubits[1]);
      adj[g.qubits[1]].push_back(g.qubits[0]);
    }
  for (auto &nbs : adj) {
    std::sort(nbs.begin(), nbs.end());
    nbs.erase(std::unique(nbs.begin(), nbs.end()), nbs.end());
  }
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> order;
  while (order.size() < n) {
    std::uint32_t best = n;
    std::size_t best_deg = std::numeric_limits<std::size_t>::max();
    for (std::uint32_t q = 0; q < n; ++q)
      if (!seen[q] && adj[q].size() < best_deg) {
        best = q;
        best_deg = adj[q].size();
      }
    std::queue<std::uint32_t> frontier;
    frontier.push(best);
    seen[best] = true;
    while (!frontier.empty()) {
      std::uint32_t q = frontier.front();
      frontier.pop();
      order.push_back(q);
      for (auto nb : adj[q])
        if (!seen[nb]) {
          seen[nb] = true;
          frontier.push(nb);
        }
    }
  }
  return order;
}

struct Router {
  const Component &comp;
  const NoiseProfile &noise;
  std::map<QubitId, std::vector<QubitId>> adj;

  Router(const Component &c, const NoiseProfile &np) : comp(c), noise(np) {
    for (QubitId q : comp.qubits)
      adj[q] = {};
    for (const auto &[a, b] : comp.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto &[q, nbs] : adj)
      std::sort(nbs.begin(), nbs.end());
  }

  std::map<QubitId, std::uint32_t> distances_from(QubitId target) const {
    std::map<QubitId, std::uint32_t> dist;
    std::queue<QubitId> frontier;
    dist[target] = 0;
    frontier.push(target);
    while (!frontier.empty()) {
      QubitId q = frontier.front();
      frontier.pop();
      for (QubitId nb : adj.at(q))
        if (!dist.count(nb)) {
          dist[nb] = dist[q] + 1;
          frontier.push(nb);
        }
    }
    return dist;
  }
};

} // namespace

std::optional<ScoredPlacement> place_and_route(const Subcircuit &sub,
                                               const Component &comp,
                                               const NoiseProfile &noise) {
  if (sub.width > comp.size())
    return std::nullopt;

  const auto frag_order = fragment_order(sub.fragment);
  Router router(comp, noise);

  std::optional<ScoredPlacement> best;
  for (QubitId anchor : comp.qubits) {
    auto phys_order = bfs_order(comp, anchor);
    std::vector<QubitId> mapping(sub.width);
    for (std::uint32_t i = 0; i < sub.width; ++i)
      mapping[frag_order[i]] = phys_order[i];

    // Greedy routing: at each blocked two-qubit gate move the first operand
    // one step along a shortest path toward the second, preferring low-error
    // edges on ties.
    std::vector<QubitId> cur = mapping;
    std::map<QubitId, std::uint32_t> occupant; // physical -> fragment qubit
    for (std::uint32_t f = 0; f < sub.width; ++f)
      occupant[cur[f]] = f;

    Circuit routed(0, sub.fragment.name + "_routed");
    routed.num_qubits = comp.qubits.empty() ? 0 : comp.qubits.back() + 1;
    bool ok = true;
    for (const auto &g : sub.fragment.gates) {
      if (g.kind == GateKind::Barrier)
        continue;
      if (g.qubits.size() == 1) {
        Gate copy = g;
        copy.qubits = {cur[g.qubits[0]]};
        routed.gates.push_back(std::move(copy));
        continue;
      }
      std::uint32_t fu = g.qubits[0], fv = g.qubits[1];
      auto dist = router.distances_from(cur[fv]);
      if (!dist.count(cur[fu])) {
        ok = false; // cannot happen on connected components
        break;
      }
      while (dist.at(cur[fu]) > 1) {
        QubitId from = cur[fu];
        QubitId hop = from;
        double hop_err = std::numeric_limits<double>::infinity();
        for (QubitId nb : router.adj.at(from)) {
          if (!dist.count(nb) || dist.at(nb) != dist.at(from) - 1)
            continue;
          double err = noise.edge_error(from, nb);
          if (err < hop_err || (err == hop_err && nb < hop)) {
            hop = nb;
            hop_err = err;
          }
        }
        routed.add(GateKind::Swap, {from, hop});
        auto occ = occupant.find(hop);
        if (occ != occupant.end()) {
          std::uint32_t other = occ->second;
          cur[other] = from;
          occupant[from] = other;
        } else {
          occupant.erase(from);
        }
        cur[fu] = hop;
        occupant[hop] = fu;
      }
      Gate copy = g;
      copy.qubits = {cur[fu], cur[fv]};
      routed.gates.push_back(std::move(copy));
    }
    if (!ok)
      continue;

    Layout layout;
    layout.initial_mapping = mapping;
    layout.final_mapping = cur;
    layout.routed = lower_to_native(routed);

    double score;
    try {
      score = layout_score(layout.routed, layout, noise);
    } catch (const UnmappedOpError &) {
      continue;
    }
    if (!best || score < best->score) {
      best = ScoredPlacement{std::move(layout), score, sub.width};
    }
  }
  return best;
}

double weighted_score(const std::vector<ScoredPlacement> &placements,
                      std::uint32_t n) {
  if (placements.empty())
    throw InvalidParameterError("weighted_score over empty placements");
  if (n == 0)
    throw InvalidParameterError("weighted_score needs n >= 1");
  double acc = 0.0;
  for (const auto &p : placements)
    acc += static_cast<double>(p.width) * p.score;
  return acc / static_cast<double>(n);
}

ObjectiveTerms objective_terms(const std::vector<ScoredPlacement> &placements,
                               std::uint32_t n) {
  ObjectiveTerms t;
  t.norm1 = weighted_score(placements, n);
  const double S = static_cast<double>(placements.size());
  double acc = 0.0;
  for (const auto &p : placements) {
    double dev = t.norm1 - static_cast<double>(p.width) * p.score;
    acc += dev * dev;
  }
  t.norm2 = acc / S;
  return t;
}

double full_objective(const ObjectiveInputs &inp) {
  if (inp.alpha < 0.0 || inp.alpha > 1.0)
    throw InvalidParameterError("alpha must be in [0,1]");
  auto t = objective_terms(inp.placements, inp.total_qubits);
  return inp.alpha * t.norm1 + (1.0 - inp.alpha) * t.norm2;
}

double norm_correlation(const std::vector<std::pair<double, double>> &samples) {
  if (samples.size() < 2)
    throw InvalidParameterError("correlation needs at least two samples");
  double mx = 0.0, my = 0.0;
  for (const auto &[x, y] : samples) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(samples.size());
  my /= static_cast<double>(samples.size());
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto &[x, y] : samples) {
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw InvalidParameterError("degenerate variance in correlation input");
  return sxy / std::sqrt(sxx * syy);
}

} // namespace hic
