#pragma once

#include <string>

#include "trigokit/classifier.hpp"
#include "trigokit/spectral.hpp"
#include "trigokit/wells.hpp"

namespace trigokit {

// Stable JSON renderings (keys in canonical alphabetical order). Axes are
// reported 1-based, wells 1-based.
std::string residual_report_json(const ResidualReport& r, int indent = -1);
std::string structure_report_json(const StructureReport& r, int indent = -1);
std::string well_set_json(const WellSet& set, int indent = -1);
std::string twin_table_json(const std::array<TwinTableRow, 6>& rows, int indent = -1);

} // namespace trigokit
