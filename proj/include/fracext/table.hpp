#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "complex.hpp"
#include "errors.hpp"

namespace fracext {

// A rectangular result table; cells are text, integers, reals or complex numbers.
class Table {
public:
    using Cell = std::variant<std::monostate, std::string, long long, double, cplx>;

    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns_.size()) throw ContractError("Table: row width does not match the header");
        rows_.push_back(std::move(row));
    }

    std::size_t column_index(const std::string& name) const {
        for (std::size_t i = 0; i < columns_.size(); ++i)
            if (columns_[i] == name) return i;
        throw ContractError("Table: no column '" + name + "'");
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

enum class TableFormat { csv, json };

namespace detail {

// Shortest round-trip representation of a double.
inline std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string cell_text(const Table::Cell& c) {
    struct V {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(cplx v) const { return format_real(v.real()) + ";" + format_real(v.imag()); }
    };
    return std::visit(V{}, c);
}

inline nlohmann::ordered_json real_json(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

inline nlohmann::ordered_json cell_json(const Table::Cell& c) {
    struct V {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
        nlohmann::ordered_json operator()(long long v) const { return v; }
        nlohmann::ordered_json operator()(double v) const { return real_json(v); }
        nlohmann::ordered_json operator()(cplx v) const {
            return nlohmann::ordered_json{{"re", real_json(v.real())}, {"im", real_json(v.imag())}};
        }
    };
    return std::visit(V{}, c);
}

}  // namespace detail

// RFC-4180 quoting, LF line endings; complex cells as "re;im".
inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns().size(); ++i) os << (i ? "," : "") << detail::csv_quote(t.columns()[i]);
    os << "\n";
    for (const auto& row : t.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_quote(detail::cell_text(row[i]));
        os << "\n";
    }
}

// JSON array of row objects; complex cells as {"re": .., "im": ..}.
inline void write_json(std::ostream& os, const Table& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows()) {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) o[t.columns()[i]] = detail::cell_json(row[i]);
        arr.push_back(std::move(o));
    }
    os << arr.dump(2) << "\n";
}

inline void write_table(std::ostream& os, const Table& t, TableFormat f) {
    if (f == TableFormat::csv) write_csv(os, t);
    else write_json(os, t);
}

inline std::string to_string(const Table& t, TableFormat f) {
    std::ostringstream os;
    write_table(os, t, f);
    return os.str();
}

}  // namespace fracext
