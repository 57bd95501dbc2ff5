#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "localchan/bounds.hpp"
#include "localchan/channels.hpp"
#include "localchan/states.hpp"

namespace localchan {

/// Matrix interchange: {"rows": n, "cols": m, "entries": [[re, im], ...]}
/// with entries in row-major order.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// States add a "dims" field with the subsystem dimensions
/// (subsystem-1-major). A missing "dims" means a single system.
struct ImportedState {
  DensityOperator state;
  std::vector<int> dims;
};
nlohmann::json state_to_json(const DensityOperator& rho, const std::vector<int>& dims);
ImportedState state_from_json(const nlohmann::json& j);

/// Channels: {"dim": d, "kraus": [matrix, ...]}.
nlohmann::json channel_to_json(const QuantumChannel& ch);
QuantumChannel channel_from_json(const nlohmann::json& j);

/// Reports keep exactly these keys: state_class, p, epsilon,
/// measured_distance, separable_bound, entangled_bound, violates_separable,
/// violates_entangled. A non-applicable entangled bound serializes as null.
nlohmann::json report_to_json(const BoundReport& r);
BoundReport report_from_json(const nlohmann::json& j);

/// Plot-ready CSV with columns
/// trial,class,distance,sep_bound,ent_bound,violates_sep,violates_ent.
std::string report_csv_header();
std::string report_csv_row(int trial, const BoundReport& r);

}  // namespace localchan
