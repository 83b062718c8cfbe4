#ifndef BOA_SVG_HPP
#define BOA_SVG_HPP

#include <string>
#include <vector>

#include "boa/experiments.hpp"

namespace boa {

struct SpeedupSeries {
    std::string problem;
    std::vector<ProportionAggregate> points;
};

/// Two-panel chart: mean actual evaluations vs proportion (log y) and
/// speedup vs proportion, one polyline per problem (a lone point renders as
/// a marker only). Self-contained SVG, no external references.
std::string render_speedup_svg(const std::vector<SpeedupSeries>& series);

void render_speedup_svg(const std::vector<SpeedupSeries>& series,
                        const std::string& path);

}  // namespace boa

#endif
