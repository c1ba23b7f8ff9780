#pragma once

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qelect/core.hpp"

namespace qelect {

// One simulated n-partite maximally entangled state. A computational-basis
// measurement of such a state is a shared fair coin: the outcome is drawn
// once, lazily, from the state's own labeled substream, and every agent's
// measurement returns that same bit. Measuring never communicates anything.
struct GhzState {
    int index;                   // k, 1-based
    std::optional<int> outcome;  // fixed forever after the first measurement
    std::set<int> measured_by;   // agent indices that have measured
    RandomSource rng;

    GhzState(int k, RandomSource stream) : index(k), rng(std::move(stream)) {}
};

// L = log2(n) shared states, one per leader-address bit position. Each
// agent houses one qubit per state, n*L simulated qubits in total.
struct EbitRegistry {
    int n = 0;
    int address_len = 0;
    std::vector<GhzState> states;
};

EbitRegistry create_registry(int n, const RandomSource& base);
EbitRegistry create_registry(int n, std::uint64_t master_seed);

// Agent measures its qubit of state S_k. The bit depends only on the
// registry's streams, never on who measures first.
int measure(EbitRegistry& reg, AgentId agent, int k);

// Each agent reads one qubit in each shared state and obtains the same
// L-bit string: shared randomness out of shared entanglement.
std::string shared_random_string(EbitRegistry& reg, AgentId agent);
std::string shared_random_string(EbitRegistry& reg);

// Amplitude-level oracle used to validate the lazy shared-bit semantics at
// small qubit counts. Stores only nonzero computational-basis amplitudes.
class SparseQuantumState {
  public:
    // (|0...0> + |1...1>)/sqrt(2) over n_qubits qubits, 2 <= n_qubits <= 16.
    static SparseQuantumState ghz(int n_qubits);

    // Probability that `qubit` (1-based) reads 0, as a branch-mass ratio;
    // for the symmetric two-branch state this is exactly 1/2, and exactly
    // 0 or 1 once a branch has been eliminated.
    double probability_zero(int qubit) const;

    // Born-rule measurement with collapse and renormalization. Consumes a
    // uniform draw only when both branches carry mass; a deterministic
    // branch draws nothing, so outcomes are order-independent.
    int measure_qubit(int qubit, RandomSource& rng);

    double norm() const;
    int n_qubits() const { return n_qubits_; }
    const std::map<std::uint32_t, std::complex<double>>& amplitudes() const { return amps_; }

  private:
    SparseQuantumState(int n_qubits, std::map<std::uint32_t, std::complex<double>> amps)
        : n_qubits_(n_qubits), amps_(std::move(amps)) {}

    void collapse(std::uint32_t mask, int outcome);

    int n_qubits_ = 0;
    std::map<std::uint32_t, std::complex<double>> amps_;
};

// Prepares the GHZ state, measures every qubit once in the given order
// (a permutation of 1..n_qubits), and returns the outcomes indexed by
// qubit. All entries are equal for a GHZ state.
std::vector<int> statevector_oracle(int n_qubits, const std::vector<int>& measurement_order,
                                    RandomSource& rng);

}  // namespace qelect
