#include "fbdf_tools/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fbdf::tools {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw std::out_of_range("no column named '" + name + "'");
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_cell(const std::string& s) {
    if (s.empty() || s == "nan") return NAN;
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw std::runtime_error("malformed numeric cell '" + s + "'");
    return v;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV file " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    t.header = split(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != t.header.size())
            throw std::runtime_error("row width does not match header in " + path.string());
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_cell(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable trajectory_table(const Trajectory& traj, std::size_t stride) {
    if (stride == 0) stride = 1;
    CsvTable t;
    t.header.push_back("t");
    for (std::size_t i = 0; i < traj.dimension; ++i) t.header.push_back("x" + std::to_string(i + 1));
    for (std::size_t n = 0; n < traj.size(); ++n) {
        if (n % stride != 0 && n + 1 != traj.size()) continue;
        std::vector<double> row{traj.times[n]};
        row.insert(row.end(), traj.state_ptr(n), traj.state_ptr(n) + traj.dimension);
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj, std::size_t stride) {
    write_csv(path, trajectory_table(traj, stride));
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    if (t.header.size() < 2 || t.header[0] != "t") throw std::runtime_error("not a trajectory CSV: " + path.string());
    Trajectory tr;
    tr.dimension = t.header.size() - 1;
    for (const auto& row : t.rows) {
        tr.times.push_back(row[0]);
        tr.data.insert(tr.data.end(), row.begin() + 1, row.end());
        tr.residuals.push_back(0.0);
    }
    if (tr.times.size() >= 2) tr.h = tr.times[1] - tr.times[0];
    return tr;
}

CsvTable decay_table(const DecayReport& rep, std::size_t stride) {
    if (stride == 0) stride = 1;
    CsvTable t;
    t.header = {"t", "e", "index"};
    for (std::size_t n = 0; n < rep.times.size(); ++n) {
        if (n % stride != 0 && n + 1 != rep.times.size()) continue;
        t.rows.push_back({rep.times[n], rep.e[n], rep.index[n]});
    }
    return t;
}

}  // namespace fbdf::tools
