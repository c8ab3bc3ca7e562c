#pragma once

#include "parmem/model.hpp"

namespace parmem {

// Field amplitudes through the creation/annihilation-operator route:
//   A_k = sum_{j != i} sum_mu  x_mu_i x_mu_j x_j <k|k_mu_i><k_mu_j|k_j>
// with the bra-kets realized as Kronecker deltas on the frequency indices.
// Deliberately a literal triple loop; it exists to cross-check local_field,
// which must agree with it exactly on every instance.
inline Amplitudes operator_oracle_amplitudes(const Network& net, const Pattern& state, int i) {
  detail::validate_state(net, state, "operator_oracle_amplitudes");
  detail::validate_neuron_index(net, i, "operator_oracle_amplitudes");
  const int n = net.neuron_count();
  const int q = net.freq_count();
  Amplitudes amp(static_cast<std::size_t>(q), 0);
  for (int k = 1; k <= q; ++k) {
    std::int64_t acc = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (const Pattern& x : net.patterns()) {
        const SpinState smi = x[static_cast<std::size_t>(i)];
        const SpinState smj = x[static_cast<std::size_t>(j)];
        const SpinState sj = state[static_cast<std::size_t>(j)];
        const int bra_receiver = (k == smi.freq) ? 1 : 0;
        const int bra_sender = (smj.freq == sj.freq) ? 1 : 0;
        acc += static_cast<std::int64_t>(smi.sign) * smj.sign * sj.sign * bra_receiver *
               bra_sender;
      }
    }
    amp[static_cast<std::size_t>(k - 1)] = acc;
  }
  return amp;
}

}  // namespace parmem
