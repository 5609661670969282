#pragma once

// Deterministic CSV/JSON table emission for the CLI: '.' decimal separator,
// 17 significant digits (round-trippable doubles), '\n' line endings.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace cli {

struct Cell {
    enum class Kind { empty, number, text } kind = Kind::empty;
    double num = 0.0;
    std::string text;

    Cell() = default;
    Cell(double v) : kind(Kind::number), num(v) {}
    Cell(std::string s) : kind(Kind::text), text(std::move(s)) {}
    Cell(const char* s) : kind(Kind::text), text(s) {}
    static Cell none() { return Cell(); }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::empty: return "";
        case Cell::Kind::number: return format_number(c.num);
        case Cell::Kind::text: return c.text;
    }
    return "";
}

inline std::string json_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::empty: return "null";
        case Cell::Kind::number: {
            const double v = c.num;
            if (v != v || v == 1.0 / 0.0 || v == -1.0 / 0.0) return "null";
            return format_number(v);
        }
        case Cell::Kind::text: return "\"" + c.text + "\"";
    }
    return "null";
}

inline std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

inline std::string to_json(const Table& t) {
    std::string out = "{\"rows\":[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (r) out += ',';
        out += '{';
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
            if (i) out += ',';
            out += "\"" + t.columns[i] + "\":" + json_cell(t.rows[r][i]);
        }
        out += '}';
    }
    out += "]}\n";
    return out;
}

// Writes to out_path, or stdout when empty.  Returns false on I/O failure.
inline bool emit_table(const Table& t, const std::string& emit, const std::string& out_path) {
    const std::string payload = (emit == "json") ? to_json(t) : to_csv(t);
    if (out_path.empty()) {
        std::cout << payload;
        return static_cast<bool>(std::cout);
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) return false;
    os << payload;
    return static_cast<bool>(os);
}

}  // namespace cli
