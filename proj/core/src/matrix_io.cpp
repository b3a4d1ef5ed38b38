#include "nht/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

namespace nht {

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw ParseError("matrix JSON must carry \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer()) throw ParseError("\"dim\" must be an integer");
  const long n = j["dim"].get<long>();
  if (n < 1) throw ParseError("\"dim\" must be >= 1");
  const auto& entries = j["entries"];
  if (!entries.is_array() || static_cast<long>(entries.size()) != n * n) {
    throw ParseError("\"entries\" must hold exactly dim*dim [re, im] pairs");
  }
  ComplexMatrix a(n, n);
  for (long idx = 0; idx < n * n; ++idx) {
    const auto& e = entries[idx];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number()) {
      throw ParseError("entry " + std::to_string(idx) +
                       " is not an [re, im] pair");
    }
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw ParseError("entry " + std::to_string(idx) + " is not finite");
    }
    a(idx / n, idx % n) = {re, im};
  }
  return a;
}

nlohmann::json matrix_to_json(const ComplexMatrix& a) {
  check_matrix(a);
  const long n = a.rows();
  nlohmann::json entries = nlohmann::json::array();
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      entries.push_back({a(i, j).real(), a(i, j).imag()});
    }
  }
  return {{"dim", n}, {"entries", std::move(entries)}};
}

ComplexMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return matrix_from_json(j);
}

void save_matrix(const std::string& path, const ComplexMatrix& a) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << matrix_to_json(a).dump(2) << "\n";
}

}  // namespace nht
