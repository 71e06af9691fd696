// Structured run reports: a deterministic indented key/value document plus
// named flat tables, written atomically.
#pragma once

#include <string>
#include <vector>

namespace pbqc {

struct ReportNode {
    std::string key;
    std::string value; // empty for group nodes
    std::vector<ReportNode> children;

    ReportNode& group(const std::string& k);
    void put(const std::string& k, const std::string& v);
    void put(const std::string& k, double v);
    void put(const std::string& k, long v);
    void put(const std::string& k, int v);
    void put_bool(const std::string& k, bool v);
};

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<std::string>& cells);
    std::string csv() const; // comma-delimited, deterministic row order
};

struct RunReport {
    ReportNode root;
    std::vector<Table> tables;
    double wall_clock_s = 0.0;

    std::string body() const; // excludes the wall-clock line
    std::string full_text() const;
    const Table* table(const std::string& name) const;
};

std::string format_number(double v); // 9 significant digits
void write_file_atomic(const std::string& path, const std::string& content);

// delimited text for a named report section
std::string emit_table(const RunReport& report, const std::string& selector);

} // namespace pbqc
