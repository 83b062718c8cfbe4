#include "boa/csv.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace boa {

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("read_csv: bad ") + what + ": " + s);
    return v;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("read_csv: bad ") + what + ": " + s);
    return v;
}

}  // namespace

std::string csv_to_string(const std::vector<SweepRow>& rows) {
    // Aggregate speedup per problem; problems without a baseline get an
    // empty speedup field.
    std::map<std::string, std::vector<SweepRow>> by_problem;
    for (const SweepRow& row : rows) by_problem[row.problem].push_back(row);
    std::map<std::string, std::map<double, double>> speedups;
    for (const auto& [problem, group] : by_problem) {
        try {
            for (const ProportionAggregate& agg : speedup(group))
                speedups[problem][agg.proportion] = agg.speedup;
        } catch (const std::invalid_argument&) {
            // no proportion-0 rows for this problem
        }
    }

    std::string out = kCsvHeader;
    out += '\n';
    for (const SweepRow& row : rows) {
        out += row.problem;
        out += ',';
        out += std::to_string(row.n);
        out += ',';
        out += fmt(row.proportion);
        out += ',';
        out += std::to_string(row.experiment);
        out += ',';
        out += std::to_string(row.seed);
        out += ',';
        out += std::to_string(row.min_population);
        out += ',';
        out += fmt(row.mean_actual_evaluations);
        out += ',';
        const auto problem_it = speedups.find(row.problem);
        if (problem_it != speedups.end()) {
            const auto agg_it = problem_it->second.find(row.proportion);
            if (agg_it != problem_it->second.end()) out += fmt(agg_it->second);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("write_csv: cannot open " + path);
    const std::string content = csv_to_string(rows);
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!file)
        throw std::runtime_error("write_csv: write failed for " + path);
}

std::vector<SweepRow> read_csv(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("read_csv: cannot open " + path);

    std::vector<SweepRow> rows;
    std::string line;
    bool first = true;
    while (std::getline(file, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first) {
            if (line != kCsvHeader)
                throw std::invalid_argument("read_csv: unexpected header: " + line);
            first = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");
        if (fields.size() != 8)
            throw std::invalid_argument("read_csv: expected 8 columns, got line: " + line);

        SweepRow row;
        row.problem = fields[0];
        row.n = static_cast<std::uint32_t>(parse_u64(fields[1], "n"));
        row.proportion = parse_double(fields[2], "proportion");
        row.experiment = static_cast<std::uint32_t>(parse_u64(fields[3], "experiment"));
        row.seed = parse_u64(fields[4], "seed");
        row.min_population = parse_u64(fields[5], "min_population");
        row.mean_actual_evaluations = parse_double(fields[6], "mean_actual_evaluations");
        rows.push_back(std::move(row));
    }
    if (first)
        throw std::invalid_argument("read_csv: empty file: " + path);
    return rows;
}

}  // namespace boa
