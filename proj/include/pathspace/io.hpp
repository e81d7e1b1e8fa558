#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "pathspace/cocycles.hpp"
#include "pathspace/declog.hpp"
#include "pathspace/fock.hpp"
#include "pathspace/product.hpp"

namespace pathspace::io {

using nlohmann::json;

/// Shortest round-trip decimal form, '.' separator, independent of locale.
std::string format_double(double v);

json to_json(const StepPath& p);
StepPath path_from_json(const json& j);
std::string to_csv(const StepPath& p);
StepPath path_from_csv(const std::string& text, double step);

/// {kind, params}; custom and table-backed kinds serialize their name only.
json to_json(const AdditiveForm& f);
AdditiveForm form_from_json(const json& j);

/// Header row of labels followed by one row per matrix row; complex entries
/// are written as re and im columns.
std::string gram_to_csv(const Matrix& g, std::span<const std::string> labels);

json to_json(const CocycleFamily& f);
CocycleFamily cocycle_from_json(const json& j);
json to_json(const GammaTable& g);

json to_json(const TruncFockVector& v);
TruncFockVector trunc_from_json(const json& j);

json to_json(const ProductVector& v);

/// {epsilon, entries: [{t, lambda, path}]}.
json to_json(const DecompSection& x, const DecompSection& reference);

std::string convergence_csv(std::span<const ConvergenceRow> rows);

/// Generic CSV writer for string cells (RFC 4180 quoting).
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

}  // namespace pathspace::io
