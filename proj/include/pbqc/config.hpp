// Line-oriented scenario configuration: [section] headers, key = value pairs,
// '#' comments. Parsed into a ScenarioConfig with referential validation.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbqc/analysis.hpp"
#include "pbqc/protocols.hpp"

namespace pbqc {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// raw document: ordered sections of ordered key/value pairs
struct ConfigDoc {
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> sections;

    static ConfigDoc parse(const std::string& text);
    std::string print() const;
    const std::string* find(const std::string& section, const std::string& key) const;
};

enum class ProtocolKind { A, B, Modified };
enum class AttackKind { None, AN2, AN2Xyz, BN2, AN3Qss, ANNQss, BN3, ACsqc, Modified };

struct ScenarioConfig {
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::string label;

    Geometry geometry;
    bool has_protocol = false;
    ProtocolKind protocol = ProtocolKind::A;
    std::optional<ProtocolAInstance> prot_a;
    std::optional<ProtocolBInstance> prot_b;
    std::optional<ModifiedInstance> prot_mod;

    AttackKind attack = AttackKind::None;
    ModifiedStrategy strategy = ModifiedStrategy::TeleportOptimal;
    PauliBasis xyz_basis = PauliBasis::Z;
    bool enumerate_branches = true;

    long samples = 100000;
    int restarts = 32;
    double quad_tol = 1e-6;
    std::vector<double> search_thetas;
    std::string grid_kind = "mixed"; // mixed | fibonacci:<n> | thetas
    std::vector<double> grid_extra_thetas;

    static ScenarioConfig from_doc(const ConfigDoc& doc);
    ConfigDoc to_doc() const;
};

std::string protocol_kind_name(ProtocolKind k);
std::string attack_kind_name(AttackKind k);
AttackKind attack_kind_from_name(const std::string& name);
ModifiedStrategy strategy_from_name(const std::string& name);

} // namespace pbqc
