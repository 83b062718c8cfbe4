#ifndef BOA_CSV_HPP
#define BOA_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "boa/experiments.hpp"

namespace boa {

inline constexpr const char* kCsvHeader =
    "problem,n,proportion,experiment,seed,min_population,"
    "mean_actual_evaluations,speedup";

/// Render sweep rows as CSV (LF endings, shortest round-trip numbers). The
/// speedup column is the per-(problem, proportion) aggregate; it is left
/// empty for problems lacking a proportion-0 baseline.
std::string csv_to_string(const std::vector<SweepRow>& rows);

void write_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// Parse a file produced by write_csv. The speedup column is ignored (it is
/// an aggregate, re-derivable from the rows).
std::vector<SweepRow> read_csv(const std::string& path);

}  // namespace boa

#endif
