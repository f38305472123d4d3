#pragma once

#include "twostep/propagation.hpp"
#include "twostep/sweeps.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace twostep
{

/// Decimal with 12 significant digits; negative zero prints as 0.
std::string fmt12(double v);

/// Copy with every floating-point number rounded to 12 significant digits.
nlohmann::json round12(const nlohmann::json& j);

/// Rounded, key-sorted, indented JSON followed by a newline.
std::string dump_json(const nlohmann::json& j);

/// Header t,P1,...,Pd (1-based level order), one row per sample.
void write_trace_csv(std::ostream& os, const PopulationTrace& trace);

/// Header: axis names then result names, one row per grid point.
void write_sweep_csv(std::ostream& os, const SweepGrid& grid);

/// Real and imaginary parts as nested arrays.
nlohmann::json matrix_json(const Matrix& m);

} // namespace twostep
