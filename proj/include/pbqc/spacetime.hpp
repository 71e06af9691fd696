// Flat-spacetime geometry and timing: positions, light-speed propagation,
// honest/cheat schedules and the hull feasibility condition.
#pragma once

#include <optional>
#include <vector>

namespace pbqc {

struct Position {
    double x = 0.0, y = 0.0, z = 0.0;
};
double distance(const Position& a, const Position& b);

struct Geometry {
    std::vector<Position> verifiers;
    Position receiver;
    double l = 0.0;               // restricted-area radius
    double c = 1.0;               // signal speed
    std::vector<Position> cheaters; // may be empty
    double processing_latency = 0.0;

    void validate() const;
    int station_count() const { return static_cast<int>(verifiers.size()); }

    // canonical layouts with P at the origin and stations at distance d
    static Geometry collinear(double d, double l, double c);
    static Geometry equilateral(double d, double l, double c);
    static Geometry regular(int n, double d, double l, double c); // n <= 2: line, 3: triangle, >3: 3-D
    // cheaters on the segment V_i--P at distance l from P
    Geometry with_default_cheaters() const;
};

struct ScheduleReport {
    std::vector<double> arrivals; // per verifier
    double completion = 0.0;      // max arrival
    double deadline = 0.0;        // honest completion
    bool meets_deadline = false;
};

ScheduleReport honest_completion(const Geometry& g);

// fixed pattern: intercept own channel, all-to-all classical exchange,
// reply to own verifier
struct ExchangePlan {
    bool all_to_all = true;
};
ScheduleReport cheat_completion(const Geometry& g, const ExchangePlan& plan = {});

struct FeasibilityResult {
    bool feasible = false;
    std::optional<Position> witness; // interior point no slower than P on every chain
};
FeasibilityResult feasibility_check(const Geometry& g);

} // namespace pbqc
