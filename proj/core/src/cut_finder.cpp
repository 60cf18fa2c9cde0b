/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "hic/cut_finder.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_map>

namespace hic {

namespace {

constexpr std::uint64_t kSatMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSatMax / a)
    return kSatMax;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i)
    r = sat_mul(r, base);
  return r;
}

std::uint64_t canonical_cost(std::uint32_t g, std::uint32_t w) {
  return sat_mul(sat_pow(9, g), sat_pow(16, w));
}

} // namespace

std::uint32_t CutStrategy::max_width() const {
  std::uint32_t m = 0;
  for (const auto &s : subcircuits)
    m = std::max(m, s.width);
  return m;
}

OverheadReport overhead(const CutStrategy &s) {
  OverheadReport r;
  r.gamma = std::pow(3.0, s.num_gate_cuts) * std::pow(4.0, s.num_wire_cuts);
  r.canonical_executions = canonical_cost(s.num_gate_cuts, s.num_wire_cuts);
  return r;
}

std::uint32_t equal_partition_constraint(const Circuit &c) {
  return (c.num_qubits + 1) / 2;
}

// ---------------------------------------------------------------------------
// apply_cuts: the authoritative cut semantics.
// ---------------------------------------------------------------------------

CutStrategy apply_cuts(const Circuit &native, std::vector<CutAction> actions,
                       std::uint32_t device_constraint) {
  native.validate();
  std::sort(actions.begin(), actions.end());
  for (std::size_t i = 1; i < actions.size(); ++i)
    if (actions[i] == actions[i - 1])
      throw InvalidParameterError("duplicate cut action");

  const auto timelines = wire_timelines(native);
  // gate index -> position within each operand wire's timeline
  std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> pos_on_wire(
      native.num_qubits);
  for (std::uint32_t w = 0; w < native.num_qubits; ++w)
    for (std::uint32_t p = 0; p < timelines[w].size(); ++p)
      pos_on_wire[w][timelines[w][p]] = p;

  std::vector<bool> gate_cut(native.gates.size(), false);
  // per wire: sorted timeline positions after which the wire is severed
  std::vector<std::vector<std::uint32_t>> cuts_on_wire(native.num_qubits);
  for (std::uint32_t ai = 0; ai < actions.size(); ++ai) {
    const auto &a = actions[ai];
    if (a.kind == CutAction::Kind::GateCut) {
      if (a.gate_index >= native.gates.size())
        throw InvalidParameterError("gate cut index out of range");
      if (!native.gates[a.gate_index].is_two_qubit())
        throw InvalidParameterError("gate cut must target a two-qubit gate");
      gate_cut[a.gate_index] = true;
    } else {
      if (a.qubit >= native.num_qubits)
        throw InvalidParameterError("wire cut qubit out of range");
      auto it = pos_on_wire[a.qubit].find(a.after_gate);
      if (it == pos_on_wire[a.qubit].end())
        throw InvalidParameterError(
            "wire cut position: gate " + std::to_string(a.after_gate) +
            " does not act on qubit " + std::to_string(a.qubit));
      if (it->second + 1 >= timelines[a.qubit].size())
        throw InvalidParameterError(
            "wire cut must lie strictly between two gates on the wire");
      cuts_on_wire[a.qubit].push_back(it->second);
    }
  }
  for (auto &cuts : cuts_on_wire)
    std::sort(cuts.begin(), cuts.end());

  // Global segment numbering: (wire, piece) in wire-major order.
  std::vector<std::uint32_t> seg_base(native.num_qubits + 1, 0);
  for (std::uint32_t w = 0; w < native.num_qubits; ++w)
    seg_base[w + 1] =
        seg_base[w] + static_cast<std::uint32_t>(cuts_on_wire[w].size()) + 1;
  const std::uint32_t total_segments = seg_base[native.num_qubits];

  // A cut stored at timeline position c severs the wire after entry c, so the
  // piece index of the entry at position p is the number of cuts with c < p.
  auto segment_at = [&](std::uint32_t wire, std::uint32_t pos) {
    const auto &cuts = cuts_on_wire[wire];
    std::uint32_t piece = static_cast<std::uint32_t>(
        std::lower_bound(cuts.begin(), cuts.end(), pos) - cuts.begin());
    return seg_base[wire] + piece;
  };

  // Union-find over segments via uncut two-qubit gates.
  std::vector<std::uint32_t> parent(total_segments);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<std::uint32_t(std::uint32_t)> find =
      [&](std::uint32_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x = parent[x];
        }
        return x;
      };
  for (std::uint32_t gi = 0; gi < native.gates.size(); ++gi) {
    const auto &g = native.gates[gi];
    if (!g.is_two_qubit() || gate_cut[gi])
      continue;
    std::uint32_t sa = segment_at(g.qubits[0], pos_on_wire[g.qubits[0]][gi]);
    std::uint32_t sb = segment_at(g.qubits[1], pos_on_wire[g.qubits[1]][gi]);
    std::uint32_t ra = find(sa), rb = find(sb);
    if (ra != rb)
      parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  // Components in order of their smallest segment id.
  std::map<std::uint32_t, std::uint32_t> root_to_comp;
  for (std::uint32_t s = 0; s < total_segments; ++s)
    root_to_comp.emplace(find(s), 0u);
  {
    std::uint32_t next = 0;
    for (auto &[root, id] : root_to_comp)
      id = next++;
  }

  CutStrategy strat;
  strat.circuit = native;
  strat.device_constraint = device_constraint;
  strat.actions = actions;
  for (const auto &a : actions)
    (a.kind == CutAction::Kind::GateCut ? strat.num_gate_cuts
                                        : strat.num_wire_cuts)++;
  strat.subcircuits.resize(root_to_comp.size());

  // Segment bookkeeping: fragment qubit ids in (wire, piece) order.
  std::vector<std::uint32_t> seg_comp(total_segments);
  std::vector<std::uint32_t> seg_fragq(total_segments);
  for (std::uint32_t w = 0; w < native.num_qubits; ++w) {
    for (std::uint32_t piece = 0; piece + seg_base[w] < seg_base[w + 1];
         ++piece) {
      std::uint32_t s = seg_base[w] + piece;
      std::uint32_t comp = root_to_comp[find(s)];
      seg_comp[s] = comp;
      auto &sub = strat.subcircuits[comp];
      seg_fragq[s] = sub.width;
      WireSegment seg;
      seg.wire = w;
      seg.index = piece;
      seg.fragment_qubit = sub.width;
      seg.fresh = piece > 0;
      sub.segments.push_back(seg);
      ++sub.width;
    }
  }
  for (auto &sub : strat.subcircuits) {
    sub.fragment.num_qubits = sub.width;
    sub.fragment.name = native.name;
  }

  // Fragment gate lists + first/last touch positions per segment.
  std::vector<std::uint32_t> first_touch(total_segments,
                                         std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> last_touch_end(total_segments, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> gatecut_sides(
      native.gates.size(), {0, 0}); // positions captured at scan time
  auto touch = [&](std::uint32_t s, std::uint32_t pos_before,
                   std::uint32_t pos_after) {
    first_touch[s] = std::min(first_touch[s], pos_before);
    last_touch_end[s] = std::max(last_touch_end[s], pos_after);
  };
  for (std::uint32_t gi = 0; gi < native.gates.size(); ++gi) {
    const auto &g = native.gates[gi];
    if (g.kind == GateKind::Barrier)
      continue;
    if (g.is_two_qubit()) {
      std::uint32_t sa = segment_at(g.qubits[0], pos_on_wire[g.qubits[0]][gi]);
      std::uint32_t sb = segment_at(g.qubits[1], pos_on_wire[g.qubits[1]][gi]);
      if (gate_cut[gi]) {
        auto &subl = strat.subcircuits[seg_comp[sa]];
        auto &subr = strat.subcircuits[seg_comp[sb]];
        std::uint32_t pl = static_cast<std::uint32_t>(subl.fragment.gates.size());
        std::uint32_t pr = static_cast<std::uint32_t>(subr.fragment.gates.size());
        gatecut_sides[gi] = {pl, pr};
        touch(sa, pl, pl);
        touch(sb, pr, pr);
        continue;
      }
      auto &sub = strat.subcircuits[seg_comp[sa]];
      std::uint32_t pos = static_cast<std::uint32_t>(sub.fragment.gates.size());
      Gate copy = g;
      copy.qubits = {seg_fragq[sa], seg_fragq[sb]};
      sub.fragment.gates.push_back(std::move(copy));
      touch(sa, pos, pos + 1);
      touch(sb, pos, pos + 1);
    } else {
      std::uint32_t s = segment_at(g.qubits[0], pos_on_wire[g.qubits[0]][gi]);
      auto &sub = strat.subcircuits[seg_comp[s]];
      std::uint32_t pos = static_cast<std::uint32_t>(sub.fragment.gates.size());
      Gate copy = g;
      copy.qubits = {seg_fragq[s]};
      sub.fragment.gates.push_back(std::move(copy));
      touch(s, pos, pos + 1);
    }
  }

  // Incident-cut records in fragment coordinates.
  for (std::uint32_t ai = 0; ai < actions.size(); ++ai) {
    const auto &a = actions[ai];
    if (a.kind == CutAction::Kind::GateCut) {
      const auto &g = native.gates[a.gate_index];
      std::uint32_t sa =
          segment_at(g.qubits[0], pos_on_wire[g.qubits[0]][a.gate_index]);
      std::uint32_t sb =
          segment_at(g.qubits[1], pos_on_wire[g.qubits[1]][a.gate_index]);
      strat.subcircuits[seg_comp[sa]].incident_cuts.push_back(
          {ai, IncidentCut::Side::Left, seg_fragq[sa],
           gatecut_sides[a.gate_index].first});
      strat.subcircuits[seg_comp[sb]].incident_cuts.push_back(
          {ai, IncidentCut::Side::Right, seg_fragq[sb],
           gatecut_sides[a.gate_index].second});
    } else {
      std::uint32_t cutpos = pos_on_wire[a.qubit][a.after_gate];
      const auto &cuts = cuts_on_wire[a.qubit];
      std::uint32_t piece = static_cast<std::uint32_t>(
          std::lower_bound(cuts.begin(), cuts.end(), cutpos) - cuts.begin());
      std::uint32_t su = seg_base[a.qubit] + piece;     // upstream
      std::uint32_t sd = su + 1;                        // downstream
      std::uint32_t up_pos = last_touch_end[su];
      std::uint32_t down_pos =
          first_touch[sd] == std::numeric_limits<std::uint32_t>::max()
              ? 0
              : first_touch[sd];
      strat.subcircuits[seg_comp[su]].incident_cuts.push_back(
          {ai, IncidentCut::Side::Upstream, seg_fragq[su], up_pos});
      strat.subcircuits[seg_comp[sd]].incident_cuts.push_back(
          {ai, IncidentCut::Side::Downstream, seg_fragq[sd], down_pos});
    }
  }
  for (auto &sub : strat.subcircuits)
    std::sort(sub.incident_cuts.begin(), sub.incident_cuts.end(),
              [](const IncidentCut &x, const IncidentCut &y) {
                return std::tuple(x.position, x.action_index,
                                  static_cast<int>(x.side)) <
                       std::tuple(y.position, y.action_index,
                                  static_cast<int>(y.side));
              });

  strat.final_wire_location.resize(native.num_qubits);
  for (std::uint32_t w = 0; w < native.num_qubits; ++w) {
    std::uint32_t s = seg_base[w + 1] - 1;
    strat.final_wire_location[w] = {seg_comp[s], seg_fragq[s]};
  }

  if (device_constraint > 0)
    for (const auto &sub : strat.subcircuits)
      if (sub.width > device_constraint)
        throw InvalidParameterError(
            "subcircuit width " + std::to_string(sub.width) +
            " exceeds device constraint " + std::to_string(device_constraint));
  return strat;
}

// ---------------------------------------------------------------------------
// Shared circuit view for the two search paths.
// ---------------------------------------------------------------------------

namespace {

struct TwoQ {
  std::uint32_t gate_index;
  std::uint32_t a, b;        // wires
  std::uint32_t la, lb;      // two-qubit ordinal on each wire
  std::uint32_t prev_a, prev_b; // preceding gate index on each wire (any kind)
  bool a_has_prior, b_has_prior;
};

struct CutView {
  Circuit native;
  std::vector<TwoQ> twoq;
  std::vector<std::vector<std::uint32_t>> twoq_on_wire; // ordinals into twoq
  std::vector<std::vector<std::uint32_t>> timelines;

  explicit CutView(const Circuit &c) : native(lower_to_native(c)) {
    native.validate();
    timelines = wire_timelines(native);
    twoq_on_wire.resize(native.num_qubits);
    std::vector<std::uint32_t> count2q(native.num_qubits, 0);
    // per-wire scan positions advance with the global gate order
    std::vector<std::uint32_t> cursor(native.num_qubits, 0);
    for (std::uint32_t gi = 0; gi < native.gates.size(); ++gi) {
      const auto &g = native.gates[gi];
      if (g.kind == GateKind::Barrier)
        continue;
      if (g.is_two_qubit()) {
        TwoQ t;
        t.gate_index = gi;
        t.a = g.qubits[0];
        t.b = g.qubits[1];
        t.la = count2q[t.a];
        t.lb = count2q[t.b];
        t.a_has_prior = t.la > 0;
        t.b_has_prior = t.lb > 0;
        t.prev_a = cursor[t.a] > 0 ? timelines[t.a][cursor[t.a] - 1] : 0;
        t.prev_b = cursor[t.b] > 0 ? timelines[t.b][cursor[t.b] - 1] : 0;
        twoq_on_wire[t.a].push_back(static_cast<std::uint32_t>(twoq.size()));
        twoq_on_wire[t.b].push_back(static_cast<std::uint32_t>(twoq.size()));
        twoq.push_back(t);
        ++count2q[t.a];
        ++count2q[t.b];
      }
      for (auto q : g.qubits)
        ++cursor[q];
    }
  }
};

} // namespace

// ---------------------------------------------------------------------------
// oracle_min_cuts: cost-ordered exhaustive enumeration.
// ---------------------------------------------------------------------------

namespace {

// Wire-cut site between consecutive two-qubit gates on a wire: cut falls
// right before the k-th (k >= 1) two-qubit gate of the wire.
struct WireSite {
  std::uint32_t wire;
  std::uint32_t k;
  std::uint32_t after_gate; // emitted action position
  std::uint32_t seg_threshold; // ordinal-local: gates with l >= k go downstream
};

// Advances a strictly increasing index combination over values in
// [0, max_value]; returns false once exhausted.
bool next_combination(std::vector<std::uint32_t> &idx, std::uint32_t max_value) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    std::uint32_t cap = max_value - static_cast<std::uint32_t>(k - 1 - i);
    if (idx[i] < cap) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j)
        idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

} // namespace

std::optional<CutStrategy> oracle_min_cuts(const Circuit &c, std::uint32_t d,
                                           std::uint32_t max_actions,
                                           std::uint64_t enumeration_cap) {
  if (d < 1 || d > c.num_qubits)
    throw InvalidParameterError("device constraint must be in [1, n]");
  CutView view(c);
  const std::uint32_t m = static_cast<std::uint32_t>(view.twoq.size());
  const std::uint32_t n = view.native.num_qubits;

  std::vector<WireSite> sites;
  for (std::uint32_t w = 0; w < n; ++w) {
    const auto &on_wire = view.twoq_on_wire[w];
    for (std::uint32_t k = 1; k < on_wire.size(); ++k) {
      const TwoQ &t = view.twoq[on_wire[k]];
      WireSite s;
      s.wire = w;
      s.k = k;
      s.after_gate = t.a == w ? t.prev_a : t.prev_b;
      s.seg_threshold = k;
      sites.push_back(s);
    }
  }
  const std::uint32_t nsites = static_cast<std::uint32_t>(sites.size());

  // (g, w) combos in ascending canonical-cost order.
  struct Combo {
    std::uint32_t g, w;
    long double logcost;
  };
  std::vector<Combo> combos;
  for (std::uint32_t g = 0; g <= std::min(m, max_actions); ++g)
    for (std::uint32_t w = 0; w <= std::min(nsites, max_actions - g); ++w)
      combos.push_back({g, w,
                        g * std::log((long double)9.0) +
                            w * std::log((long double)16.0)});
  std::sort(combos.begin(), combos.end(), [](const Combo &x, const Combo &y) {
    if (x.logcost != y.logcost)
      return x.logcost < y.logcost;
    return std::tuple(x.g + x.w, x.w) < std::tuple(y.g + y.w, y.w);
  });

  // Scratch buffers for the validity check.
  std::vector<std::int32_t> uf(n + max_actions + 1);
  std::vector<std::uint16_t> width(n + max_actions + 1);
  std::uint64_t examined = 0;

  // Per-wire cut ks for the current wire-site subset; small and flat.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> wire_cuts; // (wire, k)
  auto segment_of = [&](std::uint32_t wire, std::uint32_t local) {
    // number of cuts on `wire` with k <= local
    std::uint32_t cnt = 0, last = 0;
    for (std::uint32_t j = 0; j < wire_cuts.size(); ++j)
      if (wire_cuts[j].first == wire && wire_cuts[j].second <= local) {
        ++cnt;
        last = j;
      }
    return cnt == 0 ? wire : n + last;
  };

  auto check = [&](const std::vector<std::uint32_t> &gate_sel) -> bool {
    const std::uint32_t total = n + static_cast<std::uint32_t>(wire_cuts.size());
    for (std::uint32_t i = 0; i < total; ++i)
      uf[i] = static_cast<std::int32_t>(i);
    auto find2 = [&](std::uint32_t x) {
      while (static_cast<std::uint32_t>(uf[x]) != x) {
        uf[x] = uf[uf[x]];
        x = static_cast<std::uint32_t>(uf[x]);
      }
      return x;
    };
    std::size_t sel_pos = 0;
    for (std::uint32_t t = 0; t < m; ++t) {
      if (sel_pos < gate_sel.size() && gate_sel[sel_pos] == t) {
        ++sel_pos;
        continue; // gate-cut
      }
      const TwoQ &g = view.twoq[t];
      std::uint32_t sa = segment_of(g.a, g.la);
      std::uint32_t sb = segment_of(g.b, g.lb);
      std::uint32_t ra = find2(sa), rb = find2(sb);
      if (ra != rb)
        uf[std::max(ra, rb)] = static_cast<std::int32_t>(std::min(ra, rb));
    }
    std::fill(width.begin(), width.begin() + total, 0);
    for (std::uint32_t s = 0; s < total; ++s) {
      std::uint32_t r = find2(s);
      if (++width[r] > d)
        return false;
    }
    return true;
  };

  for (const auto &combo : combos) {
    if (combo.g > m || combo.w > nsites)
      continue;
    std::vector<std::uint32_t> gate_sel(combo.g);
    std::iota(gate_sel.begin(), gate_sel.end(), 0u);
    bool gates_more = true;
    while (gates_more) {
      std::vector<std::uint32_t> site_sel(combo.w);
      std::iota(site_sel.begin(), site_sel.end(), 0u);
      bool sites_more = true;
      while (sites_more) {
        if (++examined > enumeration_cap)
          throw BudgetExceededError(
              "oracle enumeration exceeded cap of " +
              std::to_string(enumeration_cap) + " candidate sets");
        wire_cuts.clear();
        for (auto si : site_sel)
          wire_cuts.emplace_back(sites[si].wire, sites[si].seg_threshold);
        if (check(gate_sel)) {
          std::vector<CutAction> actions;
          for (auto gi : gate_sel) {
            CutAction a;
            a.kind = CutAction::Kind::GateCut;
            a.gate_index = view.twoq[gi].gate_index;
            actions.push_back(a);
          }
          for (auto si : site_sel) {
            CutAction a;
            a.kind = CutAction::Kind::WireCut;
            a.qubit = sites[si].wire;
            a.after_gate = sites[si].after_gate;
            actions.push_back(a);
          }
          return apply_cuts(view.native, std::move(actions), d);
        }
        if (combo.w == 0)
          break;
        sites_more = next_combination(site_sel, nsites - 1);
      }
      if (combo.g == 0)
        break;
      gates_more = next_combination(gate_sel, m - 1);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// find_cuts: level DP / beam over block assignments of wires.
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint8_t kUntouched = 0xFF;
constexpr std::size_t kMaxStatesPerLevel = 20000;

struct SearchNode {
  std::vector<std::uint8_t> blk;   // per wire
  std::vector<std::uint16_t> size; // per block id
  std::uint16_t g = 0, w = 0;
  double cost = 0.0;
  std::uint32_t parent = std::numeric_limits<std::uint32_t>::max();
  std::uint8_t act = 0; // 0 none, 1 gate, 2 wireA, 3 wireB, 4 wireBoth
  std::uint32_t at = 0; // twoq ordinal of the transition
  std::uint64_t tick = 0;
};

std::string canonical_key(const SearchNode &node) {
  std::vector<std::uint8_t> relabel(node.size.size() + 1, kUntouched);
  std::string key;
  key.reserve(node.blk.size() + 2 * node.size.size() + 2);
  std::uint8_t next = 0;
  std::vector<std::uint8_t> order;
  for (auto b : node.blk) {
    if (b == kUntouched) {
      key.push_back(static_cast<char>(kUntouched));
      continue;
    }
    if (relabel[b] == kUntouched) {
      relabel[b] = next++;
      order.push_back(b);
    }
    key.push_back(static_cast<char>(relabel[b]));
  }
  key.push_back('|');
  for (auto b : order) {
    key.push_back(static_cast<char>(node.size[b] & 0xFF));
    key.push_back(static_cast<char>((node.size[b] >> 8) & 0xFF));
  }
  return key;
}

const double kLog9 = std::log(9.0);
const double kLog16 = std::log(16.0);

} // namespace

std::optional<CutStrategy> find_cuts(const Circuit &c, std::uint32_t d,
                                     std::uint32_t k_max) {
  if (d < 1 || d > c.num_qubits)
    throw InvalidParameterError("device constraint must be in [1, n]");
  if (k_max < 1)
    throw InvalidParameterError("cut budget must be >= 1");
  CutView view(c);
  const std::uint32_t m = static_cast<std::uint32_t>(view.twoq.size());
  const std::uint32_t n = view.native.num_qubits;
  if (n > 250)
    throw InvalidParameterError("find_cuts supports up to 250 wires");

  std::deque<SearchNode> arena;
  auto better = [](const SearchNode &x, const SearchNode &y) {
    return std::tuple(x.cost, static_cast<std::uint32_t>(x.g) + x.w, x.tick) <
           std::tuple(y.cost, static_cast<std::uint32_t>(y.g) + y.w, y.tick);
  };

  SearchNode init;
  init.blk.assign(n, kUntouched);
  arena.push_back(init);

  std::map<std::string, std::uint32_t> level;
  level.emplace(canonical_key(init), 0u);
  std::uint64_t tick = 1;

  for (std::uint32_t t = 0; t < m; ++t) {
    const TwoQ &gate = view.twoq[t];
    std::map<std::string, std::uint32_t> next_level;
    auto offer = [&](SearchNode &&node) {
      node.tick = tick++;
      std::string key = canonical_key(node);
      auto it = next_level.find(key);
      if (it == next_level.end()) {
        arena.push_back(std::move(node));
        next_level.emplace(std::move(key),
                           static_cast<std::uint32_t>(arena.size() - 1));
      } else if (better(node, arena[it->second])) {
        arena.push_back(std::move(node));
        it->second = static_cast<std::uint32_t>(arena.size() - 1);
      }
    };

    for (const auto &[key, idx] : level) {
      const SearchNode &cur = arena[idx];
      SearchNode base = cur;
      base.parent = idx;
      base.act = 0;
      base.at = t;
      auto materialize = [&](SearchNode &node, std::uint32_t wire) {
        if (node.blk[wire] == kUntouched) {
          node.blk[wire] = static_cast<std::uint8_t>(node.size.size());
          node.size.push_back(1);
        }
      };
      materialize(base, gate.a);
      materialize(base, gate.b);
      std::uint8_t A = base.blk[gate.a];
      std::uint8_t B = base.blk[gate.b];

      if (A == B) {
        offer(std::move(base));
        continue;
      }
      // merge
      if (static_cast<std::uint32_t>(base.size[A]) + base.size[B] <= d) {
        SearchNode child = base;
        for (auto &b : child.blk)
          if (b == B)
            b = A;
        child.size[A] = static_cast<std::uint16_t>(child.size[A] +
                                                   child.size[B]);
        child.size[B] = 0;
        offer(std::move(child));
      }
      // gate cut
      {
        SearchNode child = base;
        child.g++;
        child.cost += kLog9;
        child.act = 1;
        offer(std::move(child));
      }
      // wire cut on a, fresh segment joins B
      if (gate.a_has_prior && base.size[B] + 1u <= d) {
        SearchNode child = base;
        child.blk[gate.a] = B;
        child.size[B]++;
        child.w++;
        child.cost += kLog16;
        child.act = 2;
        offer(std::move(child));
      }
      // wire cut on b, fresh segment joins A
      if (gate.b_has_prior && base.size[A] + 1u <= d) {
        SearchNode child = base;
        child.blk[gate.b] = A;
        child.size[A]++;
        child.w++;
        child.cost += kLog16;
        child.act = 3;
        offer(std::move(child));
      }
      // wire cut on both, fresh segments open a new block
      if (gate.a_has_prior && gate.b_has_prior && d >= 2 &&
          base.size.size() < 250) {
        SearchNode child = base;
        std::uint8_t F = static_cast<std::uint8_t>(child.size.size());
        child.size.push_back(2);
        child.blk[gate.a] = F;
        child.blk[gate.b] = F;
        child.w = static_cast<std::uint16_t>(child.w + 2);
        child.cost += 2 * kLog16;
        child.act = 4;
        offer(std::move(child));
      }
    }

    // Beam prune, deterministic.
    if (next_level.size() > kMaxStatesPerLevel) {
      std::vector<std::pair<std::string, std::uint32_t>> entries(
          next_level.begin(), next_level.end());
      std::sort(entries.begin(), entries.end(),
                [&](const auto &x, const auto &y) {
                  return better(arena[x.second], arena[y.second]);
                });
      entries.resize(kMaxStatesPerLevel);
      next_level = std::map<std::string, std::uint32_t>(entries.begin(),
                                                        entries.end());
    }
    level = std::move(next_level);
  }

  // Pick the best completed state.
  const SearchNode *best = nullptr;
  std::uint32_t best_idx = 0;
  for (const auto &[key, idx] : level)
    if (!best || better(arena[idx], *best)) {
      best = &arena[idx];
      best_idx = idx;
    }
  if (!best)
    return std::nullopt;

  std::vector<CutAction> actions;
  for (std::uint32_t idx = best_idx;
       idx != std::numeric_limits<std::uint32_t>::max();
       idx = arena[idx].parent) {
    const SearchNode &node = arena[idx];
    if (node.parent == std::numeric_limits<std::uint32_t>::max())
      break;
    const TwoQ &gate = view.twoq[node.at];
    switch (node.act) {
    case 1: {
      CutAction a;
      a.kind = CutAction::Kind::GateCut;
      a.gate_index = gate.gate_index;
      actions.push_back(a);
      break;
    }
    case 2: {
      CutAction a;
      a.kind = CutAction::Kind::WireCut;
      a.qubit = gate.a;
      a.after_gate = gate.prev_a;
      actions.push_back(a);
      break;
    }
    case 3: {
      CutAction a;
      a.kind = CutAction::Kind::WireCut;
      a.qubit = gate.b;
      a.after_gate = gate.prev_b;
      actions.push_back(a);
      break;
    }
    case 4: {
      CutAction a;
      a.kind = CutAction::Kind::WireCut;
      a.qubit = gate.a;
      a.after_gate = gate.prev_a;
      actions.push_back(a);
      CutAction b;
      b.kind = CutAction::Kind::WireCut;
      b.qubit = gate.b;
      b.after_gate = gate.prev_b;
      actions.push_back(b);
      break;
    }
    default:
      break;
    }
  }

  CutStrategy strat = apply_cuts(view.native, std::move(actions), d);
  if (strat.num_cuts() > k_max)
    return std::nullopt;
  return strat;
}

} // namespace hic
