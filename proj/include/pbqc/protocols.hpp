// Honest-party runs of the three position-verification protocols plus the
// verifier-side acceptance logic.
#pragma once

#include <string>
#include <vector>

#include "pbqc/pure_state.hpp"
#include "pbqc/spacetime.hpp"

namespace pbqc {

struct ProtocolAInstance {
    int n = 2;
    int u = 0;
    int q = 0;
    std::vector<int> q_shares; // q_2..q_N, xor equals q

    static ProtocolAInstance make(int n, int u, std::vector<int> q_shares);
    void validate() const;
};

struct ProtocolBInstance {
    int n = 2;
    std::vector<int> a;              // a_1..a_N
    int b1 = 0;
    std::vector<GateProduct> locals; // U_1..U_N

    static ProtocolBInstance make(int n, std::vector<int> a, int b1,
                                  std::vector<GateProduct> locals = {});
    void validate() const;
    // N=2: Bell labels (a, b); N>2: (b1, b2..bN) with b_i = a_1 xor a_i
    std::vector<int> expected_answer() const;
};

struct ModifiedInstance {
    int n = 2;
    int u = 0;
    bool has_angles = false;
    BlochAngles angles{};
    std::vector<std::string> programs; // per-station bit programs when not angle-based
    std::vector<GateProduct> shares;   // U_2..U_N

    static ModifiedInstance from_angles(int u, const BlochAngles& angles);
    static ModifiedInstance from_programs(int u, const std::vector<std::string>& programs);
    static ModifiedInstance from_shares(int u, std::vector<GateProduct> shares);
    void validate() const;
    PureState sent_state() const;   // U_2...U_N |u>
    GateProduct composed() const;   // the full product U_2...U_N
};

struct Transcript {
    std::vector<int> decoded;
    ScheduleReport schedule;
    std::vector<std::vector<int>> per_verifier;
};

Transcript prot_a_run_honest(const ProtocolAInstance& inst, const Geometry& geom, Rng& rng);
Transcript prot_b_run_honest(const ProtocolBInstance& inst, const Geometry& geom, Rng& rng);
Transcript modified_run_honest(const ModifiedInstance& inst, const Geometry& geom, Rng& rng);

struct Verdict {
    bool accept = false;
    std::string reason; // "ok", "inconsistent", "wrong-answer", "late"
};
Verdict verify_response(const Transcript& t, const std::vector<int>& expected, const Geometry& geom);

} // namespace pbqc
