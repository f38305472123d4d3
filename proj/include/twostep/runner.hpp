#pragma once

#include "twostep/config.hpp"

#include <filesystem>
#include <ostream>

namespace twostep
{

/// Executes a plan. simulate and sweep write a CSV plus run.json into
/// out_dir; spectrum and effective print JSON to `out`. Identical plans give
/// byte-identical output.
void run(const RunPlan& plan, const std::filesystem::path& out_dir, std::ostream& out);

/// JSON documents behind the spectrum and effective commands.
nlohmann::json spectrum_report(const RunPlan& plan);
nlohmann::json effective_report(const RunPlan& plan);

} // namespace twostep
