#include "ihodual/cli.hpp"
#include "ihodual/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace ihodual::cli {

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size()) throw Error("Table: row width does not match the header");
    rows.push_back(std::move(row));
}

namespace {

double parse_real(const std::string& s, const std::string& whole)
{
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) throw ConfigError("cannot parse number '" + whole + "'");
    return v;
}

}  // namespace

cplx parse_complex(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    if (s.empty()) throw ConfigError("empty complex number");
    const char last = s.back();
    if (last != 'i' && last != 'j') return parse_real(s, text);
    const std::string body = s.substr(0, s.size() - 1);
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            const std::string re = body.substr(0, k);
            if (re.empty() || re == "+" || re == "-") throw ConfigError("cannot parse complex '" + text + "'");
            return {parse_real(re, text), parse_real(body.substr(k), text)};
        }
    }
    return {0.0, parse_real(body, text)};
}

GridSpec parse_grid(const std::string& text)
{
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos) throw ConfigError("grid must be min:max:n, got '" + text + "'");
    GridSpec g;
    g.min = parse_real(text.substr(0, a), text);
    g.max = parse_real(text.substr(a + 1, b - a - 1), text);
    const std::string ns = text.substr(b + 1);
    char* end = nullptr;
    const long n = std::strtol(ns.c_str(), &end, 10);
    if (ns.empty() || end != ns.c_str() + ns.size()) throw ConfigError("grid point count must be an integer");
    if (n < 2 || n > 10000000) throw ConfigError("grid needs n >= 2");
    g.n = int(n);
    if (!(g.min < g.max)) throw ConfigError("grid needs min < max");
    return g;
}

std::pair<double, double> parse_range(const std::string& text)
{
    const auto a = text.find(':');
    if (a == std::string::npos) throw ConfigError("range must be a:b, got '" + text + "'");
    const double lo = parse_real(text.substr(0, a), text);
    const double hi = parse_real(text.substr(a + 1), text);
    if (!(lo < hi)) throw ConfigError("range needs a < b");
    return {lo, hi};
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

std::string cell_text(const Cell& c)
{
    if (const double* d = std::get_if<double>(&c)) return format_double(*d);
    return csv_field(std::get<std::string>(c));
}

}  // namespace

void write_csv(const Table& t, std::ostream& os)
{
    for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << csv_field(t.columns[k]);
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << cell_text(row[k]);
        os << "\n";
    }
}

void write_json(const CommandResult& r, std::ostream& os)
{
    nlohmann::ordered_json j;
    j["metadata"] = r.metadata;
    j["columns"] = r.table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.table.rows) {
        auto jr = nlohmann::ordered_json::array();
        for (const auto& c : row) {
            if (const double* d = std::get_if<double>(&c)) {
                // JSON has no NaN or infinity; emit them as strings
                if (std::isfinite(*d))
                    jr.push_back(*d);
                else
                    jr.push_back(format_double(*d));
            } else {
                jr.push_back(std::get<std::string>(c));
            }
        }
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    os << j.dump(1) << "\n";
}

void write_result(const CommandResult& r, OutputFormat fmt, std::ostream& os)
{
    if (fmt == OutputFormat::JSON)
        write_json(r, os);
    else
        write_csv(r.table, os);
}

}  // namespace ihodual::cli
