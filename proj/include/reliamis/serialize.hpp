#pragma once

#include "reliamis/mis.hpp"
#include "reliamis/ops.hpp"

#include <string>

namespace reliamis {

// Text formats are JSON with probabilities carried as exact decimal or
// fraction strings; numeric literals in input are captured verbatim and
// converted digit-by-digit, never through a double.

// {"components": [{"name", "rel"}...], "deps": [{"causes", "effects", "system"}...]}
PropertySet parse_model_file(const std::string& text);
std::string save_model_file(const PropertySet& p);

// Ordered list of operation records, one per ModelOp.
OpScript parse_script_file(const std::string& text);
std::string save_script_file(const OpScript& s);

// Matrix form of an MIS model: components, states (failed sets; the sink may
// carry its aggregated member configurations), and sparse per-component TPMs.
MisModel parse_matrix_file(const std::string& text);
std::string save_matrix_file(const MisModel& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace reliamis
