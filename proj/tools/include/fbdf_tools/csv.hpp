#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fbdf/analysis.hpp"
#include "fbdf/ode.hpp"

namespace fbdf::tools {

// 17 significant digits: round-trips every double exactly.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// Header t,x1,...,xd; every stride-th state plus the last one.
CsvTable trajectory_table(const Trajectory& traj, std::size_t stride = 1);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj, std::size_t stride = 1);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

// Header t,e,index; rows with t > 1 carry the index, earlier rows leave it empty (NaN).
CsvTable decay_table(const DecayReport& rep, std::size_t stride = 1);

}  // namespace fbdf::tools
