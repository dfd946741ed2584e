#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "lrlab/bounds.hpp"
#include "lrlab/dynamics.hpp"

namespace lrlab {

/// 17 significant digits with '.' as decimal separator; "inf", "-inf" and
/// "nan" for non-finite values.
std::string format_real(double value);

/// Header row plus data rows, comma separated, '\n' line endings.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

/// Two-space indented JSON with keys in lexicographic order and a trailing
/// newline.
std::string to_json_text(const nlohmann::json& doc);

/// Writes `content` byte for byte. Throws Error naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

nlohmann::json to_json(const BoundConstants& consts);
nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const VelocityEstimate& estimate);
/// Summary of a verification: pass flag, minimum margin, excluded
/// separations and every failing grid point.
nlohmann::json to_json(const VerificationReport& report);

/// d,n,c_n,closed_form,c_n_weighted
std::string chains_csv(const std::vector<ChainCountTable>& tables, const BoundConstants& consts);
/// d,t,B
std::string bound_csv(const std::vector<BoundCurve>& curves);
/// d,t,norm
std::string sweep_csv(const SimulationSweep& sweep);
/// method,d,t,measured,bound,margin
std::string margins_csv(const std::vector<VerificationReport>& reports);

}  // namespace lrlab
