#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "lindblad/operators.hpp"

namespace lindblad {

// Parse failure carrying the JSON field path ("jumps[2][0][1]", ...).
class ModelParseError : public std::invalid_argument {
 public:
  ModelParseError(const std::string& path, const std::string& reason);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Model files are JSON:
//   { "dim": 2,
//     "jumps": [ [[[re,im],[re,im]], [[re,im],[re,im]]], ... ],
//     "hamiltonian": {"kind": "zero"}
//                  | {"kind": "constant", "matrix": M}
//                  | {"kind": "piecewise", "breakpoints": [...], "segments": [M...]}
//                  | {"kind": "phi_drive", "c": C, "r": R,
//                     "h_static": M, "h_cos": M, "h_sin": M} }
// A missing "hamiltonian" means zero.
LindbladModel parse_model_text(const std::string& json_text);
LindbladModel load_model(const std::string& file_path);
std::string serialize_model(const LindbladModel& model);

// Named kets over {0,1,+,-} (one qubit per character) or an inline JSON
// matrix of [re, im] entries. Result is validated as a density matrix.
Matrix parse_state_spec(const std::string& spec, Eigen::Index dim);

// Pauli strings over {I,X,Y,Z} or an inline JSON matrix; must be Hermitian.
Matrix parse_observable_spec(const std::string& spec, Eigen::Index dim);

std::string format_real(double x);  // 17 significant digits

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace lindblad
