#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "nht/linalg.hpp"

namespace nht {

// Shared matrix JSON format: {"dim": n, "entries": [[re, im], ...]} with the
// entries row-major. Ragged arrays and non-finite values are rejected.

ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const ComplexMatrix& a);

ComplexMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const ComplexMatrix& a);

}  // namespace nht
