#include "pbqc/config.hpp"

#include <cmath>
#include <sstream>

namespace pbqc {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    double v;
    while (is >> v) out.push_back(v);
    if (!is.eof()) throw ParseError("bad numeric list: '" + s + "'");
    return out;
}

std::vector<int> parse_bits(const std::string& s) {
    std::vector<int> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        if (tok == "0") out.push_back(0);
        else if (tok == "1") out.push_back(1);
        else throw ParseError("bad bit list: '" + s + "'");
    }
    return out;
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad number for ") + what + ": '" + s + "'");
    }
}

long parse_long(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad integer for ") + what + ": '" + s + "'");
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

ConfigDoc ConfigDoc::parse(const std::string& text) {
    ConfigDoc doc;
    std::istringstream is(text);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("line " + std::to_string(lineno) + ": unterminated section header");
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty section name");
            doc.sections.push_back({current, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
        if (current.empty()) throw ParseError("line " + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty key");
        doc.sections.back().second.push_back({key, value});
    }
    return doc;
}

std::string ConfigDoc::print() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, kvs] : sections) {
        if (!first) os << "\n";
        first = false;
        os << "[" << name << "]\n";
        for (const auto& [k, v] : kvs) os << k << " = " << v << "\n";
    }
    return os.str();
}

const std::string* ConfigDoc::find(const std::string& section, const std::string& key) const {
    const std::string* out = nullptr;
    for (const auto& [name, kvs] : sections) {
        if (name != section) continue;
        for (const auto& [k, v] : kvs)
            if (k == key) out = &v; // last occurrence wins
    }
    return out;
}

std::string protocol_kind_name(ProtocolKind k) {
    switch (k) {
        case ProtocolKind::A: return "A";
        case ProtocolKind::B: return "B";
        case ProtocolKind::Modified: return "modified";
    }
    return "?";
}

std::string attack_kind_name(AttackKind k) {
    switch (k) {
        case AttackKind::None: return "none";
        case AttackKind::AN2: return "a-n2";
        case AttackKind::AN2Xyz: return "a-n2-xyz";
        case AttackKind::BN2: return "b-n2";
        case AttackKind::AN3Qss: return "a-n3-qss";
        case AttackKind::ANNQss: return "a-nn-qss";
        case AttackKind::BN3: return "b-n3";
        case AttackKind::ACsqc: return "a-csqc";
        case AttackKind::Modified: return "modified";
    }
    return "?";
}

AttackKind attack_kind_from_name(const std::string& name) {
    if (name == "none") return AttackKind::None;
    if (name == "a-n2") return AttackKind::AN2;
    if (name == "a-n2-xyz") return AttackKind::AN2Xyz;
    if (name == "b-n2") return AttackKind::BN2;
    if (name == "a-n3-qss") return AttackKind::AN3Qss;
    if (name == "a-nn-qss") return AttackKind::ANNQss;
    if (name == "b-n3") return AttackKind::BN3;
    if (name == "a-csqc") return AttackKind::ACsqc;
    if (name == "modified") return AttackKind::Modified;
    throw ParseError("unknown attack kind '" + name + "'");
}

ModifiedStrategy strategy_from_name(const std::string& name) {
    if (name == "random-guess") return ModifiedStrategy::RandomGuess;
    if (name == "measure-hold") return ModifiedStrategy::MeasureHold;
    if (name == "teleport-optimal") return ModifiedStrategy::TeleportOptimal;
    throw ParseError("unknown strategy '" + name + "'");
}

namespace {

Geometry geometry_from_doc(const ConfigDoc& doc) {
    const std::string* layout = doc.find("geometry", "layout");
    const std::string layout_name = layout ? *layout : "collinear";
    const double d = doc.find("geometry", "d") ? parse_double(*doc.find("geometry", "d"), "d") : 1.0;
    const double l = doc.find("geometry", "l") ? parse_double(*doc.find("geometry", "l"), "l") : 0.1;
    const double c = doc.find("geometry", "c") ? parse_double(*doc.find("geometry", "c"), "c") : 1.0;
    int stations = doc.find("geometry", "stations")
                       ? static_cast<int>(parse_long(*doc.find("geometry", "stations"), "stations"))
                       : 2;
    Geometry g;
    if (layout_name == "collinear") {
        g = Geometry::collinear(d, l, c);
    } else if (layout_name == "equilateral") {
        g = Geometry::equilateral(d, l, c);
    } else if (layout_name == "regular") {
        g = Geometry::regular(stations, d, l, c);
    } else if (layout_name == "custom") {
        g.l = l;
        g.c = c;
        for (int i = 1;; ++i) {
            const std::string* v = doc.find("geometry", "verifier" + std::to_string(i));
            if (!v) break;
            const auto xyz = parse_doubles(*v);
            if (xyz.size() != 3) throw ParseError("verifier positions need x y z");
            g.verifiers.push_back({xyz[0], xyz[1], xyz[2]});
        }
        if (const std::string* r = doc.find("geometry", "receiver")) {
            const auto xyz = parse_doubles(*r);
            if (xyz.size() != 3) throw ParseError("receiver position needs x y z");
            g.receiver = {xyz[0], xyz[1], xyz[2]};
        }
        for (int i = 1;; ++i) {
            const std::string* b = doc.find("geometry", "cheater" + std::to_string(i));
            if (!b) break;
            const auto xyz = parse_doubles(*b);
            if (xyz.size() != 3) throw ParseError("cheater positions need x y z");
            g.cheaters.push_back({xyz[0], xyz[1], xyz[2]});
        }
    } else {
        throw ParseError("unknown layout '" + layout_name + "'");
    }
    if (const std::string* lat = doc.find("geometry", "processing_latency"))
        g.processing_latency = parse_double(*lat, "processing_latency");
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return g;
}

std::vector<GateProduct> parse_locals(const std::string& text, int expect) {
    std::vector<std::string> parts;
    std::string acc;
    for (char ch : text) {
        if (ch == '|') {
            parts.push_back(acc);
            acc.clear();
        } else acc += ch;
    }
    parts.push_back(acc);
    std::vector<GateProduct> out;
    for (const auto& p : parts) out.push_back(GateProduct::parse(p));
    if (expect >= 0 && static_cast<int>(out.size()) != expect)
        throw ValidationError("locals list has the wrong station count");
    return out;
}

} // namespace

ScenarioConfig ScenarioConfig::from_doc(const ConfigDoc& doc) {
    ScenarioConfig cfg;
    if (const auto* s = doc.find("run", "seed")) cfg.seed = static_cast<std::uint64_t>(parse_long(*s, "seed"));
    if (const auto* s = doc.find("run", "out")) cfg.out_dir = *s;
    if (const auto* s = doc.find("run", "label")) cfg.label = *s;

    cfg.geometry = geometry_from_doc(doc);

    if (const auto* kind = doc.find("protocol", "kind")) {
        cfg.has_protocol = true;
        const int n = cfg.geometry.station_count();
        try {
            if (*kind == "A") {
                cfg.protocol = ProtocolKind::A;
                const int u = doc.find("protocol", "u") ? static_cast<int>(parse_long(*doc.find("protocol", "u"), "u")) : 0;
                std::vector<int> shares;
                if (const auto* qs = doc.find("protocol", "q_shares")) shares = parse_bits(*qs);
                else shares.assign(static_cast<std::size_t>(n - 1), 0);
                cfg.prot_a = ProtocolAInstance::make(n, u, shares);
            } else if (*kind == "B") {
                cfg.protocol = ProtocolKind::B;
                std::vector<int> a(static_cast<std::size_t>(n), 0);
                if (const auto* av = doc.find("protocol", "a_bits")) a = parse_bits(*av);
                const int b1 = doc.find("protocol", "b1") ? static_cast<int>(parse_long(*doc.find("protocol", "b1"), "b1")) : 0;
                std::vector<GateProduct> locals;
                if (const auto* lv = doc.find("protocol", "locals")) locals = parse_locals(*lv, n);
                cfg.prot_b = ProtocolBInstance::make(n, a, b1, locals);
            } else if (*kind == "modified") {
                cfg.protocol = ProtocolKind::Modified;
                const int u = doc.find("protocol", "u") ? static_cast<int>(parse_long(*doc.find("protocol", "u"), "u")) : 0;
                if (const auto* th = doc.find("protocol", "theta")) {
                    const double theta = parse_double(*th, "theta");
                    const double phi = doc.find("protocol", "phi") ? parse_double(*doc.find("protocol", "phi"), "phi") : 0.0;
                    cfg.prot_mod = ModifiedInstance::from_angles(u, {theta, phi});
                } else if (const auto* pg = doc.find("protocol", "program")) {
                    std::vector<std::string> programs;
                    std::string acc;
                    for (char ch : *pg) {
                        if (ch == '|') {
                            programs.push_back(acc);
                            acc.clear();
                        } else if (!std::isspace(static_cast<unsigned char>(ch))) acc += ch;
                    }
                    programs.push_back(acc);
                    cfg.prot_mod = ModifiedInstance::from_programs(u, programs);
                } else {
                    throw ValidationError("modified protocol needs theta or program");
                }
            } else {
                throw ParseError("unknown protocol kind '" + *kind + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
    }

    if (const auto* ak = doc.find("attack", "kind")) cfg.attack = attack_kind_from_name(*ak);
    if (const auto* st = doc.find("attack", "strategy")) cfg.strategy = strategy_from_name(*st);
    if (const auto* bs = doc.find("attack", "basis")) {
        if (*bs == "X") cfg.xyz_basis = PauliBasis::X;
        else if (*bs == "Y") cfg.xyz_basis = PauliBasis::Y;
        else if (*bs == "Z") cfg.xyz_basis = PauliBasis::Z;
        else throw ParseError("unknown basis '" + *bs + "'");
    }
    if (const auto* en = doc.find("attack", "enumerate"))
        cfg.enumerate_branches = (*en == "true" || *en == "1");

    if (const auto* s = doc.find("analysis", "samples")) cfg.samples = parse_long(*s, "samples");
    if (const auto* s = doc.find("analysis", "restarts")) cfg.restarts = static_cast<int>(parse_long(*s, "restarts"));
    if (const auto* s = doc.find("analysis", "quad_tol")) cfg.quad_tol = parse_double(*s, "quad_tol");
    if (const auto* s = doc.find("analysis", "thetas")) cfg.search_thetas = parse_doubles(*s);
    if (const auto* s = doc.find("analysis", "grid")) cfg.grid_kind = *s;
    if (const auto* s = doc.find("analysis", "grid_extra_thetas")) cfg.grid_extra_thetas = parse_doubles(*s);

    // referential completeness
    const int n = cfg.geometry.station_count();
    auto need_protocol = [&](ProtocolKind want, const char* attack_name) {
        if (!cfg.has_protocol || cfg.protocol != want)
            throw ValidationError(std::string(attack_name) + " requires a matching [protocol] section");
    };
    switch (cfg.attack) {
        case AttackKind::None: break;
        case AttackKind::AN2:
            need_protocol(ProtocolKind::A, "a-n2");
            if (n != 2) throw ValidationError("a-n2 needs 2 stations");
            break;
        case AttackKind::AN2Xyz:
            if (n != 2) throw ValidationError("a-n2-xyz needs 2 stations");
            break;
        case AttackKind::BN2:
            need_protocol(ProtocolKind::B, "b-n2");
            if (n != 2) throw ValidationError("b-n2 needs 2 stations");
            break;
        case AttackKind::AN3Qss:
            need_protocol(ProtocolKind::A, "a-n3-qss");
            if (n != 3) throw ValidationError("a-n3-qss needs 3 stations");
            break;
        case AttackKind::ANNQss:
            need_protocol(ProtocolKind::A, "a-nn-qss");
            if (n < 3 || n > 5) throw ValidationError("a-nn-qss needs 3..5 stations");
            break;
        case AttackKind::BN3:
            need_protocol(ProtocolKind::B, "b-n3");
            if (n != 3) throw ValidationError("b-n3 needs 3 stations");
            break;
        case AttackKind::ACsqc:
            need_protocol(ProtocolKind::Modified, "a-csqc");
            break;
        case AttackKind::Modified:
            need_protocol(ProtocolKind::Modified, "modified");
            if (n != 2) throw ValidationError("the modified-protocol attack needs 2 stations");
            break;
    }
    return cfg;
}

ConfigDoc ScenarioConfig::to_doc() const {
    ConfigDoc doc;
    doc.sections.push_back({"run", {}});
    auto& run = doc.sections.back().second;
    run.push_back({"seed", std::to_string(seed)});
    run.push_back({"out", out_dir});
    if (!label.empty()) run.push_back({"label", label});

    doc.sections.push_back({"geometry", {}});
    auto& geo = doc.sections.back().second;
    geo.push_back({"layout", "custom"});
    geo.push_back({"l", fmt(geometry.l)});
    geo.push_back({"c", fmt(geometry.c)});
    for (std::size_t i = 0; i < geometry.verifiers.size(); ++i) {
        const auto& v = geometry.verifiers[i];
        geo.push_back({"verifier" + std::to_string(i + 1), fmt(v.x) + " " + fmt(v.y) + " " + fmt(v.z)});
    }
    geo.push_back({"receiver",
                   fmt(geometry.receiver.x) + " " + fmt(geometry.receiver.y) + " " + fmt(geometry.receiver.z)});
    for (std::size_t i = 0; i < geometry.cheaters.size(); ++i) {
        const auto& b = geometry.cheaters[i];
        geo.push_back({"cheater" + std::to_string(i + 1), fmt(b.x) + " " + fmt(b.y) + " " + fmt(b.z)});
    }
    if (geometry.processing_latency != 0.0)
        geo.push_back({"processing_latency", fmt(geometry.processing_latency)});

    if (has_protocol) {
        doc.sections.push_back({"protocol", {}});
        auto& pr = doc.sections.back().second;
        pr.push_back({"kind", protocol_kind_name(protocol)});
        if (prot_a) {
            pr.push_back({"u", std::to_string(prot_a->u)});
            std::string qs;
            for (int b : prot_a->q_shares) qs += (qs.empty() ? "" : " ") + std::to_string(b);
            pr.push_back({"q_shares", qs});
        }
        if (prot_b) {
            std::string as;
            for (int b : prot_b->a) as += (as.empty() ? "" : " ") + std::to_string(b);
            pr.push_back({"a_bits", as});
            pr.push_back({"b1", std::to_string(prot_b->b1)});
            std::string ls;
            for (std::size_t i = 0; i < prot_b->locals.size(); ++i)
                ls += (i ? " | " : "") + prot_b->locals[i].str();
            pr.push_back({"locals", ls});
        }
        if (prot_mod) {
            pr.push_back({"u", std::to_string(prot_mod->u)});
            if (prot_mod->has_angles) {
                pr.push_back({"theta", fmt(prot_mod->angles.theta)});
                pr.push_back({"phi", fmt(prot_mod->angles.phi)});
            } else {
                std::string ps;
                for (std::size_t i = 0; i < prot_mod->programs.size(); ++i)
                    ps += (i ? " | " : "") + prot_mod->programs[i];
                pr.push_back({"program", ps});
            }
        }
    }

    doc.sections.push_back({"attack", {}});
    auto& at = doc.sections.back().second;
    at.push_back({"kind", attack_kind_name(attack)});
    at.push_back({"strategy", strategy_name(strategy)});
    at.push_back({"enumerate", enumerate_branches ? "true" : "false"});

    doc.sections.push_back({"analysis", {}});
    auto& an = doc.sections.back().second;
    an.push_back({"samples", std::to_string(samples)});
    an.push_back({"restarts", std::to_string(restarts)});
    an.push_back({"quad_tol", fmt(quad_tol)});
    if (!search_thetas.empty()) {
        std::string ts;
        for (std::size_t i = 0; i < search_thetas.size(); ++i)
            ts += (i ? " " : "") + fmt(search_thetas[i]);
        an.push_back({"thetas", ts});
    }
    an.push_back({"grid", grid_kind});
    return doc;
}

} // namespace pbqc
