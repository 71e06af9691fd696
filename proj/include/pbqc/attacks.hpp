// Entanglement-based cheating strategies against the three protocols,
// executed on spacetime-valid schedules. Forced-outcome variants replay an
// explicit branch record and are the primary correctness instrument; rng
// sampling is for rate estimation.
#pragma once

#include <map>
#include <span>
#include <string>

#include "pbqc/protocols.hpp"
#include "pbqc/tableau.hpp"

namespace pbqc {

struct AttackOutcome {
    std::vector<int> answer;
    ScheduleReport schedule;
    bool success = false;
    bool consistent = true;
    std::map<std::string, int> records; // per-cheater measurement outcomes
    std::vector<std::vector<int>> per_verifier;
};

enum class ModifiedStrategy { RandomGuess, MeasureHold, TeleportOptimal };
std::string strategy_name(ModifiedStrategy s);

enum class PauliBasis { X, Y, Z };

struct PauliEncodingInstance {
    int u = 0;
    PauliBasis basis = PauliBasis::Z;
};

// branch record layout per attack: each entry is one elementary outcome in
// call order; bell measurements contribute (a, b), pauli measurements one
// sign bit (0 -> +1), projective measurements one index
AttackOutcome attack_a_n2(const ProtocolAInstance& inst, const Geometry& geom, Rng& rng);
AttackOutcome attack_a_n2_forced(const ProtocolAInstance& inst, const Geometry& geom,
                                 std::span<const int> branch);

AttackOutcome attack_a_n2_xyz(const PauliEncodingInstance& inst, const Geometry& geom, Rng& rng);
AttackOutcome attack_a_n2_xyz_forced(const PauliEncodingInstance& inst, const Geometry& geom,
                                     std::span<const int> branch);

AttackOutcome attack_b_n2(const ProtocolBInstance& inst, const Geometry& geom, Rng& rng);
AttackOutcome attack_b_n2_forced(const ProtocolBInstance& inst, const Geometry& geom,
                                 std::span<const int> branch);

AttackOutcome attack_a_n3_qss(const ProtocolAInstance& inst, const Geometry& geom, Rng& rng);
AttackOutcome attack_a_n3_qss_forced(const ProtocolAInstance& inst, const Geometry& geom,
                                     std::span<const int> branch);

AttackOutcome attack_a_nn_qss(const ProtocolAInstance& inst, const Geometry& geom, Rng& rng);
AttackOutcome attack_a_nn_qss_forced(const ProtocolAInstance& inst, const Geometry& geom,
                                     std::span<const int> branch);

AttackOutcome attack_b_n3(const ProtocolBInstance& inst, const Geometry& geom, Rng& rng);
AttackOutcome attack_b_n3_forced(const ProtocolBInstance& inst, const Geometry& geom,
                                 std::span<const int> branch);

AttackOutcome attack_a_csqc_chain(const ModifiedInstance& inst, const Geometry& geom, Rng& rng);
AttackOutcome attack_a_csqc_chain_forced(const ModifiedInstance& inst, const Geometry& geom,
                                         std::span<const int> branch);

AttackOutcome attack_modified(const ModifiedInstance& inst, ModifiedStrategy strategy,
                              const Geometry& geom, Rng& rng);

// the quantum-memory strategy the modified protocol detects: B1 pre-commits,
// B2 answers from his own outcome; verifier answers can disagree
AttackOutcome attack_modified_entangle_memory(const ModifiedInstance& inst, const Geometry& geom,
                                              Rng& rng);

// per-point success probability of the teleport strategy (Born sums)
double modified_teleport_success_prob(const BlochAngles& enc);

} // namespace pbqc
