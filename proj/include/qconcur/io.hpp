#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qconcur/bounds.hpp"
#include "qconcur/states.hpp"
#include "qconcur/tensor.hpp"

namespace qconcur {

/// On-disk state document: subsystem dims plus exactly one of a row-major
/// density matrix or a pure-state amplitude vector, complex entries as
/// [re, im] pairs.
struct StateFile {
  DimSpec dims{std::vector<int>{2}};
  std::optional<Matrix> matrix;
  std::optional<Vector> vector;
};

StateFile parse_state_json(const std::string& text);
StateFile read_state_file(const std::string& path);

nlohmann::json state_to_json(const DensityMatrix& rho);
nlohmann::json state_to_json(const PureState& psi);
void write_state_file(const std::string& path, const DensityMatrix& rho);
void write_state_file(const std::string& path, const PureState& psi);

/// Validates the loaded entries and produces a density matrix
/// (a projector, when the file holds a vector).
DensityMatrix to_density(const StateFile& sf, const ValidationConfig& cfg = {});

std::string bound_kind_name(BoundKind kind);
nlohmann::json report_to_json(const BoundReport& report);
std::string report_to_csv(const BoundReport& report);

/// Deterministic shortest-round-trip formatting used by all CSV output.
std::string format_double(double v);

}  // namespace qconcur
