#include "qelect/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace qelect {

EbitRegistry create_registry(int n, const RandomSource& base) {
    if (n < 2 || !is_power_of_two(n))
        throw NotPowerOfTwo("registry needs a power-of-two agent count >= 2, got " +
                            std::to_string(n));
    EbitRegistry reg;
    reg.n = n;
    reg.address_len = log2_exact(n);
    reg.states.reserve(reg.address_len);
    for (int k = 1; k <= reg.address_len; ++k)
        reg.states.emplace_back(k, base.derive("ghz-" + std::to_string(k)));
    return reg;
}

EbitRegistry create_registry(int n, std::uint64_t master_seed) {
    return create_registry(n, derive_stream(master_seed, "ebits"));
}

int measure(EbitRegistry& reg, AgentId agent, int k) {
    if (k < 1 || k > reg.address_len)
        throw StateIndexOutOfRange("state index " + std::to_string(k) + " outside [1," +
                                   std::to_string(reg.address_len) + "]");
    GhzState& s = reg.states[k - 1];
    if (!s.outcome) s.outcome = s.rng.bit();
    s.measured_by.insert(agent.index);
    return *s.outcome;
}

std::string shared_random_string(EbitRegistry& reg, AgentId agent) {
    std::string bits;
    bits.reserve(reg.address_len);
    for (int k = 1; k <= reg.address_len; ++k)
        bits += measure(reg, agent, k) ? '1' : '0';
    return bits;
}

std::string shared_random_string(EbitRegistry& reg) {
    return shared_random_string(reg, AgentId{1});
}

SparseQuantumState SparseQuantumState::ghz(int n_qubits) {
    if (n_qubits > 16)
        throw TooManyQubits("sparse oracle supports at most 16 qubits, got " +
                            std::to_string(n_qubits));
    if (n_qubits < 2) throw std::invalid_argument("need at least 2 qubits");
    const double amp = 1.0 / std::sqrt(2.0);
    std::map<std::uint32_t, std::complex<double>> amps;
    amps[0] = amp;
    amps[(std::uint32_t{1} << n_qubits) - 1] = amp;
    return SparseQuantumState(n_qubits, std::move(amps));
}

double SparseQuantumState::probability_zero(int qubit) const {
    const std::uint32_t mask = std::uint32_t{1} << (qubit - 1);
    double mass0 = 0.0, mass1 = 0.0;
    for (const auto& [label, a] : amps_) ((label & mask) ? mass1 : mass0) += std::norm(a);
    return mass0 / (mass0 + mass1);
}

int SparseQuantumState::measure_qubit(int qubit, RandomSource& rng) {
    if (qubit < 1 || qubit > n_qubits_)
        throw StateIndexOutOfRange("qubit " + std::to_string(qubit) + " outside [1," +
                                   std::to_string(n_qubits_) + "]");
    const double p0 = probability_zero(qubit);
    int outcome;
    if (p0 >= 1.0)
        outcome = 0;
    else if (p0 <= 0.0)
        outcome = 1;
    else
        outcome = rng.unit_double() < p0 ? 0 : 1;
    collapse(std::uint32_t{1} << (qubit - 1), outcome);
    return outcome;
}

void SparseQuantumState::collapse(std::uint32_t mask, int outcome) {
    double branch_mass = 0.0;
    for (auto it = amps_.begin(); it != amps_.end();) {
        const int bit = (it->first & mask) ? 1 : 0;
        if (bit != outcome) {
            it = amps_.erase(it);
        } else {
            branch_mass += std::norm(it->second);
            ++it;
        }
    }
    const double scale = 1.0 / std::sqrt(branch_mass);
    for (auto& [label, a] : amps_) a *= scale;
}

double SparseQuantumState::norm() const {
    double mass = 0.0;
    for (const auto& [label, a] : amps_) mass += std::norm(a);
    return mass;
}

std::vector<int> statevector_oracle(int n_qubits, const std::vector<int>& measurement_order,
                                    RandomSource& rng) {
    SparseQuantumState state = SparseQuantumState::ghz(n_qubits);
    if (static_cast<int>(measurement_order.size()) != n_qubits)
        throw std::invalid_argument("measurement order must cover every qubit exactly once");
    std::vector<bool> seen(n_qubits, false);
    for (int q : measurement_order) {
        if (q < 1 || q > n_qubits || seen[q - 1])
            throw std::invalid_argument("measurement order must be a permutation of 1..n");
        seen[q - 1] = true;
    }
    std::vector<int> outcomes(n_qubits, 0);
    for (int q : measurement_order) outcomes[q - 1] = state.measure_qubit(q, rng);
    return outcomes;
}

}  // namespace qelect
