#pragma once

#include <string>

#include "trigokit/fields.hpp"

namespace trigokit {

// Binary field container: ASCII magic line, one-line JSON header, little
// endian float64 payload (one record of six components per cell, i3 fastest),
// then one 0/1 byte per cell when a defect mask is present.
void write_field(const std::string& path, const StrainField& e);
StrainField read_field(const std::string& path);

// Displacement container: same layout with three floats per vertex and the
// mean strain carried in the header.
void write_disp(const std::string& path, const DisplacementField& u);
DisplacementField read_disp(const std::string& path);

} // namespace trigokit
