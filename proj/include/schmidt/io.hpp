#pragma once

// JSON file formats.
//
//   matrix    {"rows": R, "cols": C, "re": [[...]], "im": [[...]]}   row-major
//   operator  matrix + "m", "n" with m*n = rows = cols
//   map       Choi matrix + "in_dim", "out_dim"
//   vector    {"m": m, "n": n, "re": [...], "im": [...]}             flat index i*n + j
//   ensemble  {"k": k, "terms": [{"weight": p, "state": vector}, ...]}
//
// Parse failures throw FormatError naming the offending field.

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "schmidt/cones.hpp"
#include "schmidt/linalg.hpp"
#include "schmidt/maps.hpp"

namespace schmidt::io {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  FormatError(std::string field, const std::string& what)
      : std::runtime_error("field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

ComplexMatrix matrix_from_json(const Json& j);
BipartiteOperator operator_from_json(const Json& j);
MapRepr map_from_json(const Json& j);
/// Unnormalized amplitudes plus dims; use PureState::normalized when needed.
ComplexVector vector_from_json(const Json& j, Dims* dims = nullptr);
PureState state_from_json(const Json& j);
SchmidtEnsemble ensemble_from_json(const Json& j);

Json to_json(const ComplexMatrix& x);
Json to_json(const BipartiteOperator& x);
Json to_json(const MapRepr& phi);
Json to_json(const ComplexVector& v, Dims dims);
Json to_json(const PureState& v);
Json to_json(const SchmidtEnsemble& ens);

/// Reads and parses a file; FormatError with field "<file>" on I/O or syntax errors.
Json load_json(const std::string& path, std::string* raw = nullptr);

}  // namespace schmidt::io
