#include "aim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace aim {

namespace {
std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}
}  // namespace

std::string render_csv(const AggregatedTable& table) {
    std::string out = "policy,t,mean_regret,stderr,runs\n";
    for (const AggRow& r : table.rows) {
        out += r.policy;
        out += ',';
        out += std::to_string(r.t);
        out += ',';
        out += fmt9(r.mean_regret);
        out += ',';
        out += fmt9(r.stderr_regret);
        out += ',';
        out += std::to_string(r.runs);
        out += '\n';
    }
    return out;
}

void emit_csv(const AggregatedTable& table, const std::string& path) {
    if (table.rows.empty()) throw std::invalid_argument("emit_csv: empty table");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
    out << render_csv(table);
    out.flush();
    if (!out) throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

}  // namespace aim
