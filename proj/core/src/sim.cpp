/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "hic/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <thread>

namespace hic {

namespace {

using cplx = std::complex<double>;

constexpr cplx I{0.0, 1.0};

struct Mat2 {
  cplx m00, m01, m10, m11;
};

Mat2 single_qubit_matrix(const Gate &g) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
  case GateKind::H:
    return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
  case GateKind::X:
    return {0, 1, 1, 0};
  case GateKind::Y:
    return {0, -I, I, 0};
  case GateKind::Z:
    return {1, 0, 0, -1};
  case GateKind::S:
    return {1, 0, 0, I};
  case GateKind::Sdg:
    return {1, 0, 0, -I};
  case GateKind::T:
    return {1, 0, 0, std::exp(I * (M_PI / 4.0))};
  case GateKind::Tdg:
    return {1, 0, 0, std::exp(-I * (M_PI / 4.0))};
  case GateKind::RZ: {
    double t = g.params[0] / 2.0;
    return {std::exp(-I * t), 0, 0, std::exp(I * t)};
  }
  case GateKind::RX: {
    double t = g.params[0] / 2.0;
    return {std::cos(t), -I * std::sin(t), -I * std::sin(t), std::cos(t)};
  }
  default:
    throw Error("not a single-qubit unitary: " + gate_name(g.kind));
  }
}

void apply_single(StateVector &state, std::uint32_t q, const Mat2 &u) {
  const std::size_t bit = std::size_t{1} << q;
  auto &a = state.amps;
  for (std::size_t base = 0; base < a.size(); ++base) {
    if (base & bit)
      continue;
    cplx a0 = a[base];
    cplx a1 = a[base | bit];
    a[base] = u.m00 * a0 + u.m01 * a1;
    a[base | bit] = u.m10 * a0 + u.m11 * a1;
  }
}

void apply_pauli(StateVector &state, std::uint32_t q, int pauli /*1=X,2=Y,3=Z*/) {
  const std::size_t bit = std::size_t{1} << q;
  auto &a = state.amps;
  switch (pauli) {
  case 1:
    for (std::size_t base = 0; base < a.size(); ++base)
      if (!(base & bit))
        std::swap(a[base], a[base | bit]);
    break;
  case 2:
    for (std::size_t base = 0; base < a.size(); ++base)
      if (!(base & bit)) {
        cplx a0 = a[base];
        a[base] = -I * a[base | bit];
        a[base | bit] = I * a0;
      }
    break;
  case 3:
    for (std::size_t base = 0; base < a.size(); ++base)
      if (base & bit)
        a[base] = -a[base];
    break;
  default:
    break;
  }
}

} // namespace

StateVector StateVector::zero_state(std::uint32_t n) {
  StateVector s;
  s.num_qubits = n;
  s.amps.assign(std::size_t{1} << n, cplx{0.0, 0.0});
  s.amps[0] = 1.0;
  return s;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto &a : amps)
    n2 += std::norm(a);
  return std::sqrt(n2);
}

void apply_gate(StateVector &state, const Gate &g) {
  switch (g.kind) {
  case GateKind::Barrier:
  case GateKind::Measure:
    return;
  case GateKind::QpdMeasure:
    throw Error("qpd_measure requires the forking evaluator");
  case GateKind::CX: {
    const std::size_t cbit = std::size_t{1} << g.qubits[0];
    const std::size_t tbit = std::size_t{1} << g.qubits[1];
    auto &a = state.amps;
    for (std::size_t idx = 0; idx < a.size(); ++idx)
      if ((idx & cbit) && !(idx & tbit))
        std::swap(a[idx], a[idx | tbit]);
    return;
  }
  case GateKind::CZ: {
    const std::size_t cbit = std::size_t{1} << g.qubits[0];
    const std::size_t tbit = std::size_t{1} << g.qubits[1];
    auto &a = state.amps;
    for (std::size_t idx = 0; idx < a.size(); ++idx)
      if ((idx & cbit) && (idx & tbit))
        a[idx] = -a[idx];
    return;
  }
  case GateKind::RZZ: {
    const std::size_t abit = std::size_t{1} << g.qubits[0];
    const std::size_t bbit = std::size_t{1} << g.qubits[1];
    const cplx even = std::exp(-I * (g.params[0] / 2.0));
    const cplx odd = std::exp(I * (g.params[0] / 2.0));
    auto &a = state.amps;
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
      bool parity = static_cast<bool>(idx & abit) != static_cast<bool>(idx & bbit);
      a[idx] *= parity ? odd : even;
    }
    return;
  }
  case GateKind::Swap: {
    const std::size_t abit = std::size_t{1} << g.qubits[0];
    const std::size_t bbit = std::size_t{1} << g.qubits[1];
    auto &a = state.amps;
    for (std::size_t idx = 0; idx < a.size(); ++idx)
      if ((idx & abit) && !(idx & bbit))
        std::swap(a[idx], a[(idx & ~abit) | bbit]);
    return;
  }
  default:
    apply_single(state, g.qubits[0], single_qubit_matrix(g));
    return;
  }
}

double project_qubit(StateVector &state, std::uint32_t qubit, int outcome) {
  const std::size_t bit = std::size_t{1} << qubit;
  double p = 0.0;
  for (std::size_t idx = 0; idx < state.amps.size(); ++idx)
    if (static_cast<bool>(idx & bit) == (outcome == 1))
      p += std::norm(state.amps[idx]);
  const double scale = p > 0.0 ? 1.0 / std::sqrt(p) : 0.0;
  for (std::size_t idx = 0; idx < state.amps.size(); ++idx) {
    if (static_cast<bool>(idx & bit) == (outcome == 1))
      state.amps[idx] *= scale;
    else
      state.amps[idx] = 0.0;
  }
  return p;
}

double pauli_expectation(const StateVector &state,
                         const std::map<std::uint32_t, Pauli> &paulis) {
  std::size_t flip_mask = 0, y_mask = 0, z_mask = 0;
  for (const auto &[q, p] : paulis) {
    if (q >= state.num_qubits)
      throw InvalidParameterError("observable qubit out of range");
    switch (p) {
    case Pauli::X:
      flip_mask |= std::size_t{1} << q;
      break;
    case Pauli::Y:
      flip_mask |= std::size_t{1} << q;
      y_mask |= std::size_t{1} << q;
      break;
    case Pauli::Z:
      z_mask |= std::size_t{1} << q;
      break;
    }
  }
  cplx acc = 0.0;
  const auto &a = state.amps;
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    cplx amp = a[idx];
    if (amp == cplx{0.0, 0.0})
      continue;
    std::size_t jdx = idx ^ flip_mask;
    // phase from Y factors: Y|0> = i|1>, Y|1> = -i|0>; from Z: (-1)^bit
    cplx phase = 1.0;
    std::size_t ybits = y_mask;
    while (ybits) {
      std::size_t low = ybits & (~ybits + 1);
      phase *= (idx & low) ? -I : I;
      ybits ^= low;
    }
    int zpar = std::popcount(idx & z_mask) & 1;
    if (zpar)
      phase = -phase;
    acc += std::conj(a[jdx]) * phase * amp;
  }
  return acc.real();
}

double exact_expectation(const Circuit &c, const Observable &obs,
                         std::uint32_t qubit_cap) {
  if (c.num_qubits > qubit_cap)
    throw Error("circuit width " + std::to_string(c.num_qubits) +
                " exceeds statevector cap " + std::to_string(qubit_cap));
  if (obs.max_qubit() >= c.num_qubits)
    throw InvalidParameterError("observable qubit out of range");
  StateVector state = StateVector::zero_state(c.num_qubits);
  for (const auto &g : c.gates)
    apply_gate(state, g);
  double value = 0.0;
  for (const auto &t : obs.terms)
    value += t.coefficient * pauli_expectation(state, t.paulis);
  return value;
}

// ---------------------------------------------------------------------------
// Pauli-trajectory noisy execution.
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct ShotAccumulator {
  std::vector<double> sum;
  std::vector<double> sum_sq;
  explicit ShotAccumulator(std::size_t k) : sum(k, 0.0), sum_sq(k, 0.0) {}
  void merge(const ShotAccumulator &other) {
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] += other.sum[i];
      sum_sq[i] += other.sum_sq[i];
    }
  }
};

} // namespace

std::vector<NoisyEstimate>
noisy_estimates(const Circuit &c, const std::vector<double> &gate_error,
                const std::vector<double> &readout_error,
                const std::vector<ShotEstimator> &estimators,
                const NoisyExecConfig &cfg) {
  if (cfg.shots < 1)
    throw InvalidParameterError("shots must be >= 1");
  if (gate_error.size() != c.gates.size())
    throw InvalidParameterError("gate_error must cover every gate");
  if (readout_error.size() != c.num_qubits)
    throw InvalidParameterError("readout_error must cover every qubit");
  if (c.num_qubits > 24)
    throw Error("noisy backend caps at 24 qubits");
  for (const auto &est : estimators)
    for (const auto &[q, p] : est.term.paulis)
      if (p != Pauli::Z)
        throw InvalidParameterError("noisy estimates require diagonal observables");

  const std::size_t dim = std::size_t{1} << c.num_qubits;
  const std::size_t n_est = estimators.size();

  auto run_shot = [&](std::uint64_t shot, ShotAccumulator &acc) {
    std::mt19937_64 rng(splitmix64(cfg.seed * 0x51ed2701352cafe5ULL + shot));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    StateVector state = StateVector::zero_state(c.num_qubits);
    std::uint64_t qpd_bits = 0;
    std::uint32_t qpd_count = 0;
    for (std::uint32_t gi = 0; gi < c.gates.size(); ++gi) {
      const Gate &g = c.gates[gi];
      if (g.kind == GateKind::QpdMeasure) {
        double p1 = 0.0;
        const std::size_t bit = std::size_t{1} << g.qubits[0];
        for (std::size_t idx = 0; idx < dim; ++idx)
          if (idx & bit)
            p1 += std::norm(state.amps[idx]);
        int outcome = uniform(rng) < p1 ? 1 : 0;
        project_qubit(state, g.qubits[0], outcome);
        int recorded = outcome;
        // classical record error on the mid-circuit readout
        if (cfg.readout_flips && uniform(rng) < readout_error[g.qubits[0]])
          recorded ^= 1;
        if (recorded)
          qpd_bits |= std::uint64_t{1} << qpd_count;
        ++qpd_count;
      } else {
        apply_gate(state, g);
      }
      double eps = gate_error[gi];
      if (eps > 0.0 && uniform(rng) < eps) {
        if (g.qubits.size() == 2) {
          int pick = std::uniform_int_distribution<int>(1, 15)(rng);
          apply_pauli(state, g.qubits[0], pick & 3);
          apply_pauli(state, g.qubits[1], (pick >> 2) & 3);
        } else if (g.qubits.size() == 1) {
          int pick = std::uniform_int_distribution<int>(1, 3)(rng);
          apply_pauli(state, g.qubits[0], pick);
        }
      }
    }
    // Sample one readout bitstring from |psi|^2.
    double u = uniform(rng);
    double cum = 0.0;
    std::size_t sample = dim - 1;
    for (std::size_t idx = 0; idx < dim; ++idx) {
      cum += std::norm(state.amps[idx]);
      if (u < cum) {
        sample = idx;
        break;
      }
    }
    if (cfg.readout_flips)
      for (std::uint32_t q = 0; q < c.num_qubits; ++q)
        if (uniform(rng) < readout_error[q])
          sample ^= std::size_t{1} << q;

    for (std::size_t e = 0; e < n_est; ++e) {
      const auto &est = estimators[e];
      double v = est.term.coefficient;
      for (const auto &[q, p] : est.term.paulis)
        if (sample & (std::size_t{1} << q))
          v = -v;
      int sign_par = std::popcount(qpd_bits & est.sign_mask) & 1;
      if (sign_par)
        v = -v;
      acc.sum[e] += v;
      acc.sum_sq[e] += v * v;
    }
  };

  const std::uint32_t jobs = std::max(1u, cfg.jobs);
  ShotAccumulator total(n_est);
  if (jobs == 1) {
    for (std::uint64_t s = 0; s < cfg.shots; ++s)
      run_shot(s, total);
  } else {
    std::vector<ShotAccumulator> partial(jobs, ShotAccumulator(n_est));
    std::vector<std::thread> workers;
    for (std::uint32_t w = 0; w < jobs; ++w)
      workers.emplace_back([&, w]() {
        for (std::uint64_t s = w; s < cfg.shots; s += jobs)
          run_shot(s, partial[w]);
      });
    for (auto &t : workers)
      t.join();
    for (const auto &p : partial)
      total.merge(p);
  }

  std::vector<NoisyEstimate> out(n_est);
  const double shots = static_cast<double>(cfg.shots);
  for (std::size_t e = 0; e < n_est; ++e) {
    double mean = total.sum[e] / shots;
    double var = std::max(0.0, total.sum_sq[e] / shots - mean * mean);
    out[e].value = mean;
    out[e].std_error = std::sqrt(var / shots);
  }
  return out;
}

} // namespace hic
