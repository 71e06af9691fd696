#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pbqc/attacks.hpp"

using namespace pbqc;

namespace {

constexpr double kPi = 3.14159265358979323846;
const Geometry kLine = Geometry::collinear(1.0, 0.1, 1.0);
const Geometry kTriangle = Geometry::equilateral(1.0, 0.1, 1.0);

// iterate a mixed-radix branch record; returns false after the last one
bool advance(std::vector<int>& rec, const std::vector<int>& radices) {
    for (std::size_t k = 0; k < rec.size(); ++k) {
        if (++rec[k] < radices[k]) return true;
        rec[k] = 0;
    }
    return false;
}

struct EnumStats {
    long valid = 0;
    long success = 0;
};

template <typename F>
EnumStats enumerate(const std::vector<int>& radices, const F& forced) {
    EnumStats st;
    std::vector<int> rec(radices.size(), 0);
    do {
        try {
            const auto out = forced(rec);
            ++st.valid;
            if (out.success) ++st.success;
        } catch (const ZeroProbabilityError&) {
        }
    } while (advance(rec, radices));
    return st;
}

} // namespace

TEST_CASE("attack on protocol A, two stations: full forced grid") {
    // all (u, q) instances over all branches: every valid branch succeeds,
    // each instance has exactly the 4 teleportation branches
    long total_valid = 0, total_success = 0;
    for (int u = 0; u < 2; ++u)
        for (int q = 0; q < 2; ++q) {
            const auto inst = ProtocolAInstance::make(2, u, {q});
            const auto st = enumerate({2, 2, 2}, [&](const std::vector<int>& r) {
                return attack_a_n2_forced(inst, kLine, r);
            });
            CHECK(st.valid == 4);
            CHECK(st.success == 4);
            total_valid += st.valid;
            total_success += st.success;
        }
    CHECK(total_valid == 16);
    CHECK(total_success == 16);

    // completion sits exactly on the deadline
    Rng rng(5);
    const auto out = attack_a_n2(ProtocolAInstance::make(2, 1, {1}), kLine, rng);
    CHECK(out.success);
    CHECK(out.schedule.completion == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(out.schedule.completion == doctest::Approx(out.schedule.deadline).epsilon(1e-12));
}

TEST_CASE("attack on protocol A with X/Y/Z encodings") {
    long ok = 0, runs = 0;
    for (const auto basis : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z})
        for (int u = 0; u < 2; ++u) {
            const PauliEncodingInstance inst{u, basis};
            const auto st = enumerate({2, 2, 2}, [&](const std::vector<int>& r) {
                return attack_a_n2_xyz_forced(inst, kLine, r);
            });
            CHECK(st.valid == 4);
            ok += st.success;
            runs += st.valid;
        }
    CHECK(runs == 24);
    CHECK(ok == 24);

    // Z-basis reduces to the protocol-A attack with q=0
    Rng rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        Rng r1 = rng.derive(static_cast<std::uint64_t>(rep));
        Rng r2 = rng.derive(static_cast<std::uint64_t>(rep));
        const auto a = attack_a_n2_xyz({1, PauliBasis::Z}, kLine, r1);
        const auto b = attack_a_n2(ProtocolAInstance::make(2, 1, {0}), kLine, r2);
        CHECK(a.answer == b.answer);
    }
}

TEST_CASE("attack on protocol B, two stations") {
    // identity branch on code (0,0)
    const auto inst00 = ProtocolBInstance::make(2, {0, 0}, 0);
    const auto out = attack_b_n2_forced(inst00, kLine, std::vector<int>{0, 0, 0, 0});
    CHECK(out.success);
    CHECK(out.answer == std::vector<int>{0, 0});

    // all 4 codes x forced branches x 4 Pauli locals
    const char* paulis[] = {"", "X", "Y", "Z"};
    long ok = 0, runs = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (const char* loc : paulis) {
                std::vector<GateProduct> locals = {GateProduct::parse(loc), GateProduct::parse(loc)};
                const auto inst = ProtocolBInstance::make(2, {0, a}, b, locals);
                const auto st = enumerate({2, 2, 2, 2}, [&](const std::vector<int>& r) {
                    return attack_b_n2_forced(inst, kLine, r);
                });
                CHECK(st.valid == 4); // two random signs; bell outcome determined
                ok += st.success;
                runs += st.valid;
            }
    CHECK(runs == 64);
    CHECK(ok == 64);
}

TEST_CASE("attack on protocol A, three stations (secret sharing)") {
    // spec'd spot check: (q2,q3)=(0,1), s2=s3=+1, u=0
    {
        const auto inst = ProtocolAInstance::make(3, 0, {0, 1});
        // record: s2 bit, s3 bit, bell a, bell b
        long hit = 0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                try {
                    const auto out = attack_a_n3_qss_forced(inst, kTriangle, std::vector<int>{0, 0, a, b});
                    CHECK(out.success);
                    ++hit;
                } catch (const ZeroProbabilityError&) {
                }
            }
        CHECK(hit > 0);
    }

    // 4 rows x 4 sign patterns x 2 messages, all succeed
    long ok = 0, runs = 0;
    for (int u = 0; u < 2; ++u)
        for (int q2 = 0; q2 < 2; ++q2)
            for (int q3 = 0; q3 < 2; ++q3) {
                const auto inst = ProtocolAInstance::make(3, u, {q2, q3});
                const auto st = enumerate({2, 2, 2, 2}, [&](const std::vector<int>& r) {
                    return attack_a_n3_qss_forced(inst, kTriangle, r);
                });
                // 4 sign patterns, each fixing one bell index pair
                CHECK(st.valid == 8);
                ok += st.success;
                runs += st.valid;
            }
    CHECK(ok == runs);

    // schedule beats the deadline strictly
    Rng rng(3);
    const auto out = attack_a_n3_qss(ProtocolAInstance::make(3, 1, {1, 0}), kTriangle, rng);
    CHECK(out.success);
    CHECK(out.schedule.completion == doctest::Approx(2.0 + (std::sqrt(3.0) - 2.0) * 0.1).epsilon(1e-12));
    CHECK(out.schedule.completion < out.schedule.deadline);

    // collinear layout rejected
    Geometry degenerate;
    degenerate.verifiers = {{-1, 0, 0}, {0.5, 0, 0}, {1, 0, 0}};
    degenerate.receiver = {0, 0, 0};
    degenerate.l = 0.1;
    degenerate.c = 1.0;
    CHECK_THROWS_AS(attack_a_n3_qss(ProtocolAInstance::make(3, 0, {0, 0}), degenerate, rng),
                    std::invalid_argument);
}

TEST_CASE("attack a_nn matches a_n3 and extends to N=4,5") {
    Rng rng(8);
    // N=3 agreement on sampled runs with the same derived seeds
    for (int rep = 0; rep < 8; ++rep) {
        const auto inst = ProtocolAInstance::make(3, rep & 1, {(rep >> 1) & 1, (rep >> 2) & 1});
        Rng r1 = rng.derive(static_cast<std::uint64_t>(rep));
        Rng r2 = rng.derive(static_cast<std::uint64_t>(rep));
        const auto a = attack_a_n3_qss(inst, kTriangle, r1);
        const auto b = attack_a_nn_qss(inst, kTriangle, r2);
        CHECK(a.answer == b.answer);
        CHECK(b.success);
    }

    // N=4: exhaustive share patterns and messages over sampled signs
    const auto g4 = Geometry::regular(4, 1.0, 0.1, 1.0);
    for (int u = 0; u < 2; ++u)
        for (int mask = 0; mask < 8; ++mask) {
            const auto inst = ProtocolAInstance::make(4, u, {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1});
            for (int rep = 0; rep < 3; ++rep) {
                Rng r = rng.derive(static_cast<std::uint64_t>(100 + u * 64 + mask * 8 + rep));
                CHECK(attack_a_nn_qss(inst, g4, r).success);
            }
        }

    // N=5 spot checks
    const auto g5 = Geometry::regular(5, 1.0, 0.1, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        Rng r = rng.derive(static_cast<std::uint64_t>(1000 + rep));
        std::vector<int> shares = {r.uniform_int(2), r.uniform_int(2), r.uniform_int(2), r.uniform_int(2)};
        const auto inst = ProtocolAInstance::make(5, r.uniform_int(2), shares);
        CHECK(attack_a_nn_qss(inst, g5, r).success);
    }

    CHECK_THROWS_AS(attack_a_nn_qss(ProtocolAInstance::make(6, 0, {0, 0, 0, 0, 0}),
                                    Geometry::regular(6, 1.0, 0.1, 1.0), rng),
                    std::invalid_argument);
}

TEST_CASE("attack on protocol B, three stations") {
    // identity branch on code (0,0,0)
    const auto inst0 = ProtocolBInstance::make(3, {0, 0, 0}, 0);
    const auto out0 = attack_b_n3_forced(inst0, kTriangle, std::vector<int>{0, 0, 0, 0, 0});
    CHECK(out0.success);
    CHECK(out0.answer == std::vector<int>{0, 0, 0});

    // 8 codes x 16 sign patterns
    long ok = 0, runs = 0;
    for (int code = 0; code < 8; ++code) {
        const auto bits = ghz_code_index_bits(3, code);
        std::vector<int> a = {0, bits[1], bits[2]};
        const auto inst = ProtocolBInstance::make(3, a, bits[0]);
        const auto st = enumerate({2, 2, 2, 2, 8}, [&](const std::vector<int>& r) {
            return attack_b_n3_forced(inst, kTriangle, r);
        });
        CHECK(st.valid == 16); // four random signs; GHZ outcome determined
        ok += st.success;
        runs += st.valid;
    }
    CHECK(runs == 128);
    CHECK(ok == 128);
}

TEST_CASE("chain-cluster attack with Clifford shares") {
    Rng rng(21);
    // N=2, U2 = H reproduces the plain teleport attack decode
    {
        const auto inst = ModifiedInstance::from_shares(1, {GateProduct::parse("H")});
        const auto st = enumerate({2, 2, 2, 2, 2, 2}, [&](const std::vector<int>& r) {
            return attack_a_csqc_chain_forced(inst, kLine, r);
        });
        CHECK(st.valid == 32); // 16 wire branches, one free bell index each
        CHECK(st.success == st.valid);
    }

    // N=2 over all Clifford share choices and messages, sampled branches
    for (const char* share : {"", "H", "S", "X", "Y", "Z", "H S", "S H S"})
        for (int u = 0; u < 2; ++u) {
            const auto inst = ModifiedInstance::from_shares(u, {GateProduct::parse(share)});
            for (int rep = 0; rep < 4; ++rep) {
                Rng r = rng.derive(static_cast<std::uint64_t>(rep * 131 + u * 7));
                CHECK(attack_a_csqc_chain(inst, kLine, r).success);
            }
        }

    // N=3, U2 = H, U3 = S over every forced wire branch
    {
        const auto inst = ModifiedInstance::from_shares(0, {GateProduct::parse("H"), GateProduct::parse("S")});
        long ok = 0, runs = 0;
        std::vector<int> radices(10, 2); // 8 wire bits + bell (a,b)
        std::vector<int> rec(radices.size(), 0);
        do {
            try {
                const auto out = attack_a_csqc_chain_forced(inst, kTriangle, rec);
                ++runs;
                if (out.success) ++ok;
            } catch (const ZeroProbabilityError&) {
            }
        } while (advance(rec, radices));
        CHECK(runs == 512); // 256 wire branches, one free bell index each
        CHECK(ok == runs);
    }

    // non-Clifford shares rejected
    const auto bad = ModifiedInstance::from_programs(0, {"1"}); // T
    CHECK_THROWS_AS(attack_a_csqc_chain(bad, kLine, rng), std::invalid_argument);
}

TEST_CASE("modified-protocol strategies") {
    Rng rng(17);
    const auto geom = kLine;

    // theta = 0: every strategy decodes the computational basis perfectly
    for (const auto s :
         {ModifiedStrategy::RandomGuess, ModifiedStrategy::MeasureHold, ModifiedStrategy::TeleportOptimal})
        for (int u = 0; u < 2; ++u) {
            const auto inst = ModifiedInstance::from_angles(u, {0.0, 0.0});
            for (int rep = 0; rep < 5; ++rep) {
                Rng r = rng.derive(static_cast<std::uint64_t>(rep + u * 10));
                CHECK(attack_modified(inst, s, geom, r).success);
            }
        }

    // X-basis encoding: teleport strategy succeeds with certainty
    for (int u = 0; u < 2; ++u) {
        const auto inst = ModifiedInstance::from_angles(u, {kPi / 2, 0.0});
        for (int rep = 0; rep < 20; ++rep) {
            Rng r = rng.derive(static_cast<std::uint64_t>(500 + rep + u * 40));
            CHECK(attack_modified(inst, ModifiedStrategy::TeleportOptimal, geom, r).success);
        }
    }

    // theta = pi/3, phi = pi/5: sampled frequency within 4 sigma of the
    // closed-form Born probability
    {
        const BlochAngles enc{kPi / 3, kPi / 5};
        const double want = modified_teleport_success_prob(enc);
        const long trials = 100000;
        long hits = 0;
        const Rng base(404);
        for (long k = 0; k < trials; ++k) {
            Rng r = base.derive(static_cast<std::uint64_t>(k));
            const auto inst = ModifiedInstance::from_angles(r.uniform_int(2), enc);
            if (attack_modified(inst, ModifiedStrategy::TeleportOptimal, geom, r).success) ++hits;
        }
        const double freq = static_cast<double>(hits) / trials;
        const double sigma = std::sqrt(want * (1 - want) / trials);
        CHECK(std::abs(freq - want) < 4 * sigma);
    }

    // deadline validity for all strategies
    for (const auto s :
         {ModifiedStrategy::RandomGuess, ModifiedStrategy::MeasureHold, ModifiedStrategy::TeleportOptimal}) {
        Rng r(7);
        const auto out = attack_modified(ModifiedInstance::from_angles(0, {1.0, 1.0}), s, geom, r);
        CHECK(out.schedule.meets_deadline);
        CHECK(out.consistent);
    }
}

TEST_CASE("entangled-memory strategy produces detectable inconsistencies") {
    const BlochAngles enc{kPi / 3, 0.3};
    const Rng base(31337);
    long inconsistent = 0;
    const long trials = 2000;
    for (long k = 0; k < trials; ++k) {
        Rng r = base.derive(static_cast<std::uint64_t>(k));
        const auto inst = ModifiedInstance::from_angles(r.uniform_int(2), enc);
        const auto out = attack_modified_entangle_memory(inst, kLine, r);
        if (!out.consistent) {
            ++inconsistent;
            Transcript t;
            t.decoded = out.answer;
            t.schedule = out.schedule;
            t.per_verifier = out.per_verifier;
            CHECK(!verify_response(t, {inst.u}, kLine).accept);
        }
    }
    CHECK(inconsistent > 0);

    // poles never disagree
    for (long k = 0; k < 200; ++k) {
        Rng r = base.derive(static_cast<std::uint64_t>(10000 + k));
        const auto inst = ModifiedInstance::from_angles(r.uniform_int(2), {0.0, 0.0});
        CHECK(attack_modified_entangle_memory(inst, kLine, r).consistent);
    }
}

TEST_CASE("no-signalling: B2 marginal independent of u and q") {
    const long trials = 100000;
    double freqs[2][2];
    for (int u = 0; u < 2; ++u)
        for (int q = 0; q < 2; ++q) {
            const auto inst = ProtocolAInstance::make(2, u, {q});
            const Rng base(static_cast<std::uint64_t>(7000 + u * 2 + q));
            long plus = 0;
            for (long k = 0; k < trials; ++k) {
                Rng r = base.derive(static_cast<std::uint64_t>(k));
                const auto out = attack_a_n2(inst, kLine, r);
                if (out.records.at("b2") == 1) ++plus;
            }
            freqs[u][q] = static_cast<double>(plus) / trials;
        }
    const double sigma = std::sqrt(0.25 / trials);
    for (int u = 0; u < 2; ++u)
        for (int q = 0; q < 2; ++q) {
            CHECK(std::abs(freqs[u][q] - 0.5) < 4 * sigma);
            CHECK(std::abs(freqs[u][q] - freqs[0][0]) < 4 * sigma * std::sqrt(2.0));
        }
}

TEST_CASE("attacks broadcast consistent answers") {
    Rng rng(77);
    const auto o1 = attack_a_n2(ProtocolAInstance::make(2, 1, {0}), kLine, rng);
    CHECK(o1.consistent);
    for (const auto& ans : o1.per_verifier) CHECK(ans == o1.answer);
    const auto o2 = attack_b_n3(ProtocolBInstance::make(3, {0, 1, 0}, 1), kTriangle, rng);
    CHECK(o2.consistent);
    for (const auto& ans : o2.per_verifier) CHECK(ans == o2.answer);
}
