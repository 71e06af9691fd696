#include "pbqc/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pbqc {

std::string format_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

ReportNode& ReportNode::group(const std::string& k) {
    children.push_back({k, "", {}});
    return children.back();
}

void ReportNode::put(const std::string& k, const std::string& v) { children.push_back({k, v, {}}); }
void ReportNode::put(const std::string& k, double v) { put(k, format_number(v)); }
void ReportNode::put(const std::string& k, long v) { put(k, std::to_string(v)); }
void ReportNode::put(const std::string& k, int v) { put(k, std::to_string(v)); }
void ReportNode::put_bool(const std::string& k, bool v) { put(k, std::string(v ? "true" : "false")); }

void Table::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != header.size()) throw std::invalid_argument("table row width mismatch");
    rows.push_back(cells);
}

std::string Table::csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

namespace {

void render(const ReportNode& node, int depth, std::ostringstream& os) {
    for (const auto& child : node.children) {
        os << std::string(static_cast<std::size_t>(depth) * 2, ' ') << child.key;
        if (!child.value.empty() || child.children.empty()) os << ": " << child.value;
        os << "\n";
        render(child, depth + 1, os);
    }
}

} // namespace

std::string RunReport::body() const {
    std::ostringstream os;
    render(root, 0, os);
    for (const auto& t : tables) {
        os << "table " << t.name << ":\n";
        std::istringstream is(t.csv());
        std::string line;
        while (std::getline(is, line)) os << "  " << line << "\n";
    }
    return os.str();
}

std::string RunReport::full_text() const {
    return body() + "wall_clock_s: " + format_number(wall_clock_s) + "\n";
}

const Table* RunReport::table(const std::string& name) const {
    for (const auto& t : tables)
        if (t.name == name) return &t;
    return nullptr;
}

std::string emit_table(const RunReport& report, const std::string& selector) {
    const Table* t = report.table(selector);
    if (!t) throw std::invalid_argument("unknown table selector '" + selector + "'");
    return t->csv();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

} // namespace pbqc
