/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "hic/qpd.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

namespace hic {

namespace {

Gate op(GateKind kind, std::vector<double> params = {}) {
  return Gate{kind, {0}, std::move(params)};
}

// Terms for the channel of exp(i * alpha * Z (x) Z), optionally with local
// RZ(phi) prepended on both sides (used to build CZ). Derivation:
//   U rho U^+ = cos^2 a) rho + sin^2(a) (ZZ)rho(ZZ)
//             + cos(a)sin(a) [ M (x) (R+ - R-) + (R+ - R-) (x) M ]
// where M is a signed Z measurement and R± = exp(±i pi/4 Z) = RZ(∓pi/2).
std::vector<QPDTerm> zz_exponential_terms(double alpha, double local_rz) {
  const double c2 = std::cos(alpha) * std::cos(alpha);
  const double s2 = std::sin(alpha) * std::sin(alpha);
  const double cs = std::cos(alpha) * std::sin(alpha);

  auto with_local = [&](std::vector<Gate> ops) {
    std::vector<Gate> out;
    if (local_rz != 0.0)
      out.push_back(op(GateKind::RZ, {local_rz}));
    for (auto &g : ops)
      out.push_back(std::move(g));
    return out;
  };
  const std::vector<Gate> measure = {op(GateKind::QpdMeasure)};
  const std::vector<Gate> r_plus = {op(GateKind::RZ, {-M_PI / 2.0})};
  const std::vector<Gate> r_minus = {op(GateKind::RZ, {M_PI / 2.0})};

  std::vector<QPDTerm> terms;
  terms.push_back({c2, with_local({}), with_local({}), false, false});
  terms.push_back(
      {s2, with_local({op(GateKind::Z)}), with_local({op(GateKind::Z)}), false,
       false});
  terms.push_back({cs, with_local(measure), with_local(r_plus), true, false});
  terms.push_back({-cs, with_local(measure), with_local(r_minus), true, false});
  terms.push_back({cs, with_local(r_plus), with_local(measure), false, true});
  terms.push_back({-cs, with_local(r_minus), with_local(measure), false, true});

  terms.erase(std::remove_if(terms.begin(), terms.end(),
                             [](const QPDTerm &t) {
                               return t.coefficient == 0.0;
                             }),
              terms.end());
  return terms;
}

std::vector<Gate> conjugate_with_h(const std::vector<Gate> &ops) {
  std::vector<Gate> out;
  out.push_back(op(GateKind::H));
  for (const auto &g : ops)
    out.push_back(g);
  out.push_back(op(GateKind::H));
  return out;
}

} // namespace

std::vector<QPDTerm> decompose_gate_cut(const Gate &g) {
  switch (g.kind) {
  case GateKind::RZZ:
    // RZZ(theta) = exp(-i theta/2 ZZ)
    return zz_exponential_terms(-g.params[0] / 2.0, 0.0);
  case GateKind::CZ:
    // CZ = e^{i pi/4} exp(i pi/4 ZZ) (RZ(pi/2) (x) RZ(pi/2))
    return zz_exponential_terms(M_PI / 4.0, M_PI / 2.0);
  case GateKind::CX: {
    // CX = (I (x) H) CZ (I (x) H): conjugate the target side with H.
    auto terms = zz_exponential_terms(M_PI / 4.0, M_PI / 2.0);
    for (auto &t : terms)
      t.b_ops = conjugate_with_h(t.b_ops);
    return terms;
  }
  default:
    throw UnsupportedGateError(gate_name(g.kind), "gate cut");
  }
}

std::vector<QPDTerm> decompose_wire_cut() {
  std::vector<QPDTerm> terms;
  const std::vector<Gate> meas_z = {op(GateKind::QpdMeasure)};
  const std::vector<Gate> meas_x = {op(GateKind::H), op(GateKind::QpdMeasure)};
  const std::vector<Gate> meas_y = {op(GateKind::Sdg), op(GateKind::H),
                                    op(GateKind::QpdMeasure)};
  const std::vector<Gate> prep_0 = {};
  const std::vector<Gate> prep_1 = {op(GateKind::X)};
  const std::vector<Gate> prep_plus = {op(GateKind::H)};
  const std::vector<Gate> prep_minus = {op(GateKind::X), op(GateKind::H)};
  const std::vector<Gate> prep_iplus = {op(GateKind::H), op(GateKind::S)};
  const std::vector<Gate> prep_iminus = {op(GateKind::H), op(GateKind::Sdg)};

  terms.push_back({0.5, meas_z, prep_0, false, false});
  terms.push_back({0.5, meas_z, prep_1, false, false});
  terms.push_back({0.5, meas_z, prep_0, true, false});
  terms.push_back({-0.5, meas_z, prep_1, true, false});
  terms.push_back({0.5, meas_x, prep_plus, true, false});
  terms.push_back({-0.5, meas_x, prep_minus, true, false});
  terms.push_back({0.5, meas_y, prep_iplus, true, false});
  terms.push_back({-0.5, meas_y, prep_iminus, true, false});
  return terms;
}

// ---------------------------------------------------------------------------
// Subexperiment generation.
// ---------------------------------------------------------------------------

namespace {

std::string ops_signature(const std::vector<Gate> &ops) {
  std::ostringstream ss;
  for (const auto &g : ops) {
    ss << static_cast<int>(g.kind) << ':';
    for (double p : g.params)
      ss << p << ',';
    ss << ';';
  }
  return ss.str();
}

struct SideChoice {
  std::vector<Gate> ops; // remapped to the incident fragment qubit
  bool has_measure = false;
  bool signed_term = false;
  std::uint32_t dedup_id = 0; // distinct op sequence id within the incident
};

} // namespace

SubexperimentSet generate_subexperiments(const CutStrategy &s,
                                         const Observable &obs,
                                         std::uint64_t combo_cap) {
  SubexperimentSet set;
  set.strategy = s;
  set.observable = obs;
  const std::size_t n_subs = s.subcircuits.size();

  // Per-action term lists.
  std::vector<std::vector<QPDTerm>> action_terms(s.actions.size());
  for (std::size_t ai = 0; ai < s.actions.size(); ++ai) {
    const auto &a = s.actions[ai];
    if (a.kind == CutAction::Kind::GateCut)
      action_terms[ai] = decompose_gate_cut(s.circuit.gates[a.gate_index]);
    else
      action_terms[ai] = decompose_wire_cut();
  }

  // Observable factorization: each Pauli lands on its wire's final segment.
  if (!obs.terms.empty() && obs.max_qubit() >= s.circuit.num_qubits)
    throw Error("observable crossing: qubit " +
                std::to_string(obs.max_qubit()) + " outside the circuit");
  set.fragment_terms.assign(n_subs, {});
  for (std::size_t m = 0; m < obs.terms.size(); ++m) {
    std::vector<Observable::Term> per_sub(n_subs);
    for (const auto &[q, p] : obs.terms[m].paulis) {
      auto [sub, fq] = s.final_wire_location[q];
      per_sub[sub].paulis[fq] = p;
    }
    for (std::size_t sub = 0; sub < n_subs; ++sub) {
      per_sub[sub].coefficient = 1.0;
      set.fragment_terms[sub].push_back(std::move(per_sub[sub]));
    }
  }

  // Per subcircuit, per incident cut, per term: the concrete side choice.
  std::vector<std::vector<std::vector<SideChoice>>> side_choices(n_subs);
  for (std::size_t sub = 0; sub < n_subs; ++sub) {
    const auto &incidents = s.subcircuits[sub].incident_cuts;
    side_choices[sub].resize(incidents.size());
    for (std::size_t ic = 0; ic < incidents.size(); ++ic) {
      const auto &inc = incidents[ic];
      const auto &terms = action_terms[inc.action_index];
      std::map<std::string, std::uint32_t> dedup;
      for (const auto &term : terms) {
        const bool a_side = inc.side == IncidentCut::Side::Left ||
                            inc.side == IncidentCut::Side::Upstream;
        const auto &ops = a_side ? term.a_ops : term.b_ops;
        SideChoice choice;
        for (auto g : ops) {
          g.qubits = {inc.fragment_qubit};
          choice.ops.push_back(std::move(g));
        }
        choice.signed_term = a_side ? term.a_sign : term.b_sign;
        for (const auto &g : choice.ops)
          if (g.kind == GateKind::QpdMeasure)
            choice.has_measure = true;
        auto sig = ops_signature(choice.ops);
        auto it = dedup.find(sig);
        if (it == dedup.end()) {
          choice.dedup_id = static_cast<std::uint32_t>(dedup.size());
          dedup.emplace(sig, choice.dedup_id);
        } else {
          choice.dedup_id = it->second;
        }
        side_choices[sub][ic].push_back(std::move(choice));
      }
    }
  }

  // Enumerate term combinations.
  std::uint64_t total = 1;
  for (const auto &terms : action_terms) {
    total *= terms.size();
    if (total > combo_cap)
      throw BudgetExceededError("term combinations exceed cap");
  }
  if (s.actions.empty())
    total = 1;

  // Variant registry per subcircuit, keyed by the dedup ids of its incident
  // side choices.
  set.variants.assign(n_subs, {});
  std::vector<std::map<std::vector<std::uint32_t>, std::uint32_t>> registry(
      n_subs);
  // For each registered variant: the bit position of each incident's
  // QpdMeasure (or -1), in incident order.
  std::vector<std::vector<std::vector<std::int32_t>>> variant_bits(n_subs);

  auto build_variant =
      [&](std::size_t sub,
          const std::vector<std::uint32_t> &term_choice) -> std::uint32_t {
    const auto &incidents = s.subcircuits[sub].incident_cuts;
    std::vector<std::uint32_t> key(incidents.size());
    for (std::size_t ic = 0; ic < incidents.size(); ++ic)
      key[ic] =
          side_choices[sub][ic][term_choice[incidents[ic].action_index]].dedup_id;
    auto it = registry[sub].find(key);
    if (it != registry[sub].end())
      return it->second;

    const Circuit &frag = s.subcircuits[sub].fragment;
    Circuit variant(frag.num_qubits, frag.name + "_v" +
                                          std::to_string(registry[sub].size()));
    std::vector<std::int32_t> bits(incidents.size(), -1);
    std::int32_t bit_count = 0;
    std::size_t ic = 0;
    for (std::uint32_t pos = 0; pos <= frag.gates.size(); ++pos) {
      while (ic < incidents.size() && incidents[ic].position == pos) {
        const auto &choice =
            side_choices[sub][ic][term_choice[incidents[ic].action_index]];
        for (const auto &g : choice.ops) {
          if (g.kind == GateKind::QpdMeasure)
            bits[ic] = bit_count++;
          variant.gates.push_back(g);
        }
        ++ic;
      }
      if (pos < frag.gates.size())
        variant.gates.push_back(frag.gates[pos]);
    }
    std::uint32_t id = static_cast<std::uint32_t>(set.variants[sub].size());
    set.variants[sub].push_back(std::move(variant));
    variant_bits[sub].push_back(std::move(bits));
    registry[sub].emplace(std::move(key), id);
    return id;
  };

  std::vector<std::uint32_t> term_choice(s.actions.size(), 0);
  for (std::uint64_t combo_idx = 0; combo_idx < total; ++combo_idx) {
    // decode mixed-radix combo index (action 0 = fastest digit)
    std::uint64_t rem = combo_idx;
    for (std::size_t ai = 0; ai < s.actions.size(); ++ai) {
      term_choice[ai] =
          static_cast<std::uint32_t>(rem % action_terms[ai].size());
      rem /= action_terms[ai].size();
    }
    SubexperimentSet::Combo combo;
    combo.coefficient = 1.0;
    for (std::size_t ai = 0; ai < s.actions.size(); ++ai)
      combo.coefficient *= action_terms[ai][term_choice[ai]].coefficient;
    combo.variant.resize(n_subs);
    combo.sign_mask.assign(n_subs, 0);
    for (std::size_t sub = 0; sub < n_subs; ++sub) {
      std::uint32_t vid = build_variant(sub, term_choice);
      combo.variant[sub] = vid;
      const auto &incidents = s.subcircuits[sub].incident_cuts;
      const auto &bits = variant_bits[sub][vid];
      for (std::size_t ic = 0; ic < incidents.size(); ++ic) {
        const auto &choice =
            side_choices[sub][ic][term_choice[incidents[ic].action_index]];
        if (choice.signed_term && bits[ic] >= 0)
          combo.sign_mask[sub] |= std::uint64_t{1} << bits[ic];
      }
    }
    set.combos.push_back(std::move(combo));
  }

  set.actual_subexperiments = 0;
  for (const auto &v : set.variants)
    set.actual_subexperiments += v.size();
  return set;
}

// ---------------------------------------------------------------------------
// Reconstruction.
// ---------------------------------------------------------------------------

namespace {

bool is_trivial_estimate(const SubexperimentSet &set, std::uint32_t sub,
                         std::uint64_t mask, std::uint32_t term) {
  return mask == 0 && set.fragment_terms[sub][term].paulis.empty();
}

} // namespace

ReconstructionResult reconstruct(const SubexperimentSet &set,
                                 const ResultTable &results) {
  const std::size_t n_subs = set.strategy.subcircuits.size();
  ReconstructionResult out;

  auto fetch = [&](std::uint32_t sub, std::uint32_t variant,
                   std::uint64_t mask, std::uint32_t term) -> NoisyEstimate {
    if (is_trivial_estimate(set, sub, mask, term))
      return {1.0, 0.0};
    auto it = results.find({sub, variant, mask, term});
    if (it == results.end())
      throw MissingResultError("missing result for subcircuit " +
                               std::to_string(sub) + " variant " +
                               std::to_string(variant) + " mask " +
                               std::to_string(mask) + " term " +
                               std::to_string(term));
    return it->second;
  };

  double expectation = 0.0;
  double variance = 0.0;
  for (std::size_t m = 0; m < set.observable.terms.size(); ++m) {
    const double alpha = set.observable.terms[m].coefficient;
    for (const auto &combo : set.combos) {
      double prod = combo.coefficient;
      std::vector<NoisyEstimate> ests(n_subs);
      for (std::uint32_t sub = 0; sub < n_subs; ++sub) {
        ests[sub] = fetch(sub, combo.variant[sub], combo.sign_mask[sub],
                          static_cast<std::uint32_t>(m));
        prod *= ests[sub].value;
      }
      expectation += alpha * prod;
      // First-order propagation for independent factors.
      for (std::uint32_t sub = 0; sub < n_subs; ++sub) {
        if (ests[sub].std_error == 0.0)
          continue;
        double partial = alpha * combo.coefficient;
        for (std::uint32_t other = 0; other < n_subs; ++other)
          if (other != sub)
            partial *= ests[other].value;
        variance += partial * partial * ests[sub].std_error *
                    ests[sub].std_error;
      }
    }
  }
  out.expectation = expectation;
  out.std_error = std::sqrt(variance);
  return out;
}

// ---------------------------------------------------------------------------
// Exact execution with branch forking on QpdMeasure.
// ---------------------------------------------------------------------------

ResultTable run_exact(const SubexperimentSet &set, std::uint32_t qubit_cap) {
  // Which (sub, variant, mask, term) estimates are referenced?
  std::set<EstimateKey> needed;
  for (std::size_t m = 0; m < set.observable.terms.size(); ++m)
    for (const auto &combo : set.combos)
      for (std::uint32_t sub = 0; sub < combo.variant.size(); ++sub)
        if (!is_trivial_estimate(set, sub, combo.sign_mask[sub],
                                 static_cast<std::uint32_t>(m)))
          needed.insert({sub, combo.variant[sub], combo.sign_mask[sub],
                         static_cast<std::uint32_t>(m)});

  // Group by (sub, variant) so each circuit is evolved once.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<EstimateKey>>
      by_variant;
  for (const auto &key : needed)
    by_variant[{std::get<0>(key), std::get<1>(key)}].push_back(key);

  ResultTable table;
  for (const auto &[sv, keys] : by_variant) {
    const Circuit &variant = set.variants[sv.first][sv.second];
    if (variant.num_qubits > qubit_cap)
      throw Error("variant width exceeds statevector cap");

    // DFS over measurement branches, accumulating weighted Pauli
    // expectations for every requested (mask, term).
    std::vector<double> acc(keys.size(), 0.0);
    struct Frame {
      StateVector state;
      std::uint32_t gate_pos;
      std::uint64_t bits;
      double weight;
      std::uint32_t bit_count;
    };
    std::vector<Frame> stack;
    stack.push_back({StateVector::zero_state(variant.num_qubits), 0, 0, 1.0, 0});
    while (!stack.empty()) {
      Frame frame = std::move(stack.back());
      stack.pop_back();
      std::uint32_t pos = frame.gate_pos;
      bool forked = false;
      for (; pos < variant.gates.size(); ++pos) {
        const Gate &g = variant.gates[pos];
        if (g.kind == GateKind::QpdMeasure) {
          for (int outcome = 0; outcome < 2; ++outcome) {
            Frame branch;
            branch.state = frame.state;
            double p = project_qubit(branch.state, g.qubits[0], outcome);
            if (p <= 1e-18)
              continue;
            branch.weight = frame.weight * p;
            branch.bits =
                frame.bits |
                (outcome ? (std::uint64_t{1} << frame.bit_count) : 0);
            branch.bit_count = frame.bit_count + 1;
            branch.gate_pos = pos + 1;
            stack.push_back(std::move(branch));
          }
          forked = true;
          break;
        }
        apply_gate(frame.state, g);
      }
      if (forked)
        continue;
      // Leaf: accumulate.
      for (std::size_t k = 0; k < keys.size(); ++k) {
        const auto &[sub, vid, mask, term] = keys[k];
        double sign =
            (std::popcount(frame.bits & mask) & 1) ? -1.0 : 1.0;
        acc[k] += frame.weight * sign *
                  pauli_expectation(frame.state,
                                    set.fragment_terms[sub][term].paulis);
      }
    }
    for (std::size_t k = 0; k < keys.size(); ++k)
      table[keys[k]] = {acc[k], 0.0};
  }
  return table;
}

// ---------------------------------------------------------------------------
// Noisy execution.
// ---------------------------------------------------------------------------

ResultTable run_noisy(const SubexperimentSet &set,
                      const std::vector<ScoredPlacement> &placements,
                      const std::vector<Component> &components,
                      const NoiseProfile &noise, const NoisyExecConfig &cfg) {
  if (!set.observable.is_diagonal())
    throw InvalidParameterError("noisy backend requires diagonal observables");
  if (placements.size() != set.strategy.subcircuits.size())
    throw InvalidParameterError("one placement per subcircuit required");

  std::set<EstimateKey> needed;
  for (std::size_t m = 0; m < set.observable.terms.size(); ++m)
    for (const auto &combo : set.combos)
      for (std::uint32_t sub = 0; sub < combo.variant.size(); ++sub)
        if (!is_trivial_estimate(set, sub, combo.sign_mask[sub],
                                 static_cast<std::uint32_t>(m)))
          needed.insert({sub, combo.variant[sub], combo.sign_mask[sub],
                         static_cast<std::uint32_t>(m)});
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<EstimateKey>>
      by_variant;
  for (const auto &key : needed)
    by_variant[{std::get<0>(key), std::get<1>(key)}].push_back(key);

  ResultTable table;
  std::uint64_t variant_counter = 0;
  for (const auto &[sv, keys] : by_variant) {
    const auto [sub, vid] = sv;
    const Component &comp = components.at(placements[sub].layout.component_id);

    // Route the variant on the same component as its fragment's placement.
    Subcircuit shim;
    shim.fragment = set.variants[sub][vid];
    shim.width = set.strategy.subcircuits[sub].width;
    auto placed = place_and_route(shim, comp, noise);
    if (!placed)
      throw Error("variant no longer placeable on its component");
    const Circuit &routed = placed->layout.routed;

    // Compact physical indices for simulation.
    std::set<QubitId> used(placed->layout.final_mapping.begin(),
                           placed->layout.final_mapping.end());
    for (const auto &g : routed.gates)
      for (auto q : g.qubits)
        used.insert(q);
    std::map<QubitId, std::uint32_t> compact;
    for (QubitId q : used)
      compact.emplace(q, static_cast<std::uint32_t>(compact.size()));

    Circuit sim_circuit(static_cast<std::uint32_t>(compact.size()),
                        routed.name);
    std::vector<double> gate_error;
    for (const auto &g : routed.gates) {
      if (g.kind == GateKind::Barrier)
        continue;
      Gate copy = g;
      for (auto &q : copy.qubits)
        q = compact.at(q);
      sim_circuit.gates.push_back(copy);
      if (g.kind == GateKind::Measure || g.kind == GateKind::QpdMeasure)
        gate_error.push_back(0.0);
      else if (g.qubits.size() == 2)
        gate_error.push_back(noise.edge_error(g.qubits[0], g.qubits[1]));
      else
        gate_error.push_back(noise.qubits[g.qubits[0]].single_qubit_gate_error);
    }
    std::vector<double> readout(compact.size(), 0.0);
    for (const auto &[phys, idx] : compact)
      readout[idx] = noise.qubits[phys].readout_error;

    std::vector<ShotEstimator> estimators;
    for (const auto &key : keys) {
      ShotEstimator est;
      est.sign_mask = std::get<2>(key);
      est.term.coefficient = 1.0;
      for (const auto &[fq, p] :
           set.fragment_terms[sub][std::get<3>(key)].paulis)
        est.term.paulis[compact.at(placed->layout.final_mapping[fq])] = p;
      estimators.push_back(std::move(est));
    }
    NoisyExecConfig vcfg = cfg;
    vcfg.seed = cfg.seed ^ (0x9e3779b97f4a7c15ULL * (variant_counter + 1));
    auto ests = noisy_estimates(sim_circuit, gate_error, readout, estimators,
                                vcfg);
    for (std::size_t k = 0; k < keys.size(); ++k)
      table[keys[k]] = ests[k];
    ++variant_counter;
  }
  return table;
}

ReconstructionResult reconstruct_exact(const CutStrategy &s,
                                       const Observable &obs,
                                       std::uint32_t qubit_cap) {
  auto set = generate_subexperiments(s, obs);
  auto results = run_exact(set, qubit_cap);
  auto rec = reconstruct(set, results);
  rec.shots_used = 0;
  return rec;
}

} // namespace hic
