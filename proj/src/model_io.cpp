#include "lindblad/model_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lindblad/scenarios.hpp"
#include "lindblad/superop.hpp"

namespace lindblad {

using nlohmann::json;

ModelParseError::ModelParseError(const std::string& path,
                                 const std::string& reason)
    : std::invalid_argument("model parse error at " +
                            (path.empty() ? std::string("(root)") : path) +
                            ": " + reason),
      path_(path) {}

namespace {

const json& expect(const json& j, const std::string& path,
                   json::value_t type, const char* what) {
  if (j.type() != type) {
    throw ModelParseError(path, std::string("expected ") + what);
  }
  return j;
}

double parse_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ModelParseError(path, "expected a number");
  return j.get<double>();
}

Matrix parse_matrix(const json& j, const std::string& path) {
  expect(j, path, json::value_t::array, "a matrix (array of rows)");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) throw ModelParseError(path, "matrix has no rows");
  Eigen::Index cols = -1;
  Matrix m;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    const std::string rpath = path + "[" + std::to_string(i) + "]";
    expect(row, rpath, json::value_t::array, "a row (array of [re, im])");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      if (cols == 0) throw ModelParseError(rpath, "row has no entries");
      m.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ModelParseError(rpath, "ragged matrix rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const json& entry = row[static_cast<std::size_t>(k)];
      const std::string epath = rpath + "[" + std::to_string(k) + "]";
      if (!entry.is_array() || entry.size() != 2) {
        throw ModelParseError(epath, "expected an [re, im] pair");
      }
      m(i, k) = Complex(parse_number(entry[0], epath + "[0]"),
                        parse_number(entry[1], epath + "[1]"));
    }
  }
  return m;
}

Matrix parse_square_matrix(const json& j, const std::string& path,
                           Eigen::Index dim) {
  Matrix m = parse_matrix(j, path);
  if (m.rows() != dim || m.cols() != dim) {
    throw ModelParseError(path, "expected a " + std::to_string(dim) + "x" +
                                    std::to_string(dim) + " matrix");
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

HamiltonianSchedule parse_hamiltonian(const json& j, Eigen::Index dim) {
  const std::string path = "hamiltonian";
  expect(j, path, json::value_t::object, "an object");
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ModelParseError(path + ".kind", "expected a string tag");
  }
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "zero") {
      return HamiltonianSchedule::zero(dim);
    }
    if (kind == "constant") {
      if (!j.contains("matrix")) {
        throw ModelParseError(path + ".matrix", "missing");
      }
      return HamiltonianSchedule::make_constant(
          parse_square_matrix(j["matrix"], path + ".matrix", dim));
    }
    if (kind == "piecewise") {
      if (!j.contains("breakpoints") || !j["breakpoints"].is_array()) {
        throw ModelParseError(path + ".breakpoints", "expected an array");
      }
      if (!j.contains("segments") || !j["segments"].is_array()) {
        throw ModelParseError(path + ".segments", "expected an array");
      }
      std::vector<double> bps;
      for (std::size_t i = 0; i < j["breakpoints"].size(); ++i) {
        bps.push_back(parse_number(
            j["breakpoints"][i],
            path + ".breakpoints[" + std::to_string(i) + "]"));
      }
      std::vector<Matrix> segments;
      for (std::size_t i = 0; i < j["segments"].size(); ++i) {
        segments.push_back(
            parse_square_matrix(j["segments"][i],
                                path + ".segments[" + std::to_string(i) + "]",
                                dim));
      }
      return HamiltonianSchedule::piecewise(std::move(bps),
                                            std::move(segments));
    }
    if (kind == "phi_drive") {
      for (const char* field : {"c", "r", "h_static", "h_cos", "h_sin"}) {
        if (!j.contains(field)) {
          throw ModelParseError(path + "." + field, "missing");
        }
      }
      return HamiltonianSchedule::phi_drive(
          parse_number(j["c"], path + ".c"), parse_number(j["r"], path + ".r"),
          parse_square_matrix(j["h_static"], path + ".h_static", dim),
          parse_square_matrix(j["h_cos"], path + ".h_cos", dim),
          parse_square_matrix(j["h_sin"], path + ".h_sin", dim));
    }
  } catch (const ModelParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    // Schedule factories validate Hermiticity and drive parameters.
    throw ModelParseError(path, e.what());
  }
  throw ModelParseError(path + ".kind", "unknown kind '" + kind + "'");
}

LindbladModel model_from_json(const json& j) {
  expect(j, "", json::value_t::object, "a JSON object");
  if (!j.contains("dim")) throw ModelParseError("dim", "missing");
  if (!j["dim"].is_number_integer()) {
    throw ModelParseError("dim", "expected an integer");
  }
  const auto dim = j["dim"].get<Eigen::Index>();
  if (dim < 1 || dim > kMaxDim) {
    throw ModelParseError("dim", "must be in [1, " + std::to_string(kMaxDim) +
                                     "]");
  }

  std::vector<Matrix> jumps;
  if (j.contains("jumps")) {
    expect(j["jumps"], "jumps", json::value_t::array, "an array of matrices");
    for (std::size_t i = 0; i < j["jumps"].size(); ++i) {
      jumps.push_back(parse_square_matrix(
          j["jumps"][i], "jumps[" + std::to_string(i) + "]", dim));
    }
  }

  HamiltonianSchedule h = j.contains("hamiltonian")
                              ? parse_hamiltonian(j["hamiltonian"], dim)
                              : HamiltonianSchedule::zero(dim);
  try {
    return make_model(make_jump_set(dim, std::move(jumps)), std::move(h));
  } catch (const std::invalid_argument& e) {
    throw ModelParseError("", e.what());
  }
}

}  // namespace

LindbladModel parse_model_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelParseError("", e.what());
  }
  return model_from_json(j);
}

LindbladModel load_model(const std::string& file_path) {
  std::ifstream in(file_path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open model file: " + file_path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model_text(buf.str());
  } catch (const ModelParseError& e) {
    throw ModelParseError(file_path + (e.path().empty() ? "" : ": ") + e.path(),
                          e.what());
  }
}

std::string serialize_model(const LindbladModel& model) {
  json j;
  j["dim"] = model.dim;
  json jumps = json::array();
  for (const Matrix& l : model.jumps.jumps) jumps.push_back(matrix_to_json(l));
  j["jumps"] = std::move(jumps);

  json h;
  const HamiltonianSchedule& sched = model.hamiltonian;
  switch (sched.kind) {
    case ScheduleKind::Zero:
      h["kind"] = "zero";
      break;
    case ScheduleKind::Constant:
      h["kind"] = "constant";
      h["matrix"] = matrix_to_json(sched.constant);
      break;
    case ScheduleKind::PiecewiseConstant: {
      h["kind"] = "piecewise";
      h["breakpoints"] = sched.breakpoints;
      json segments = json::array();
      for (const Matrix& m : sched.segments) segments.push_back(matrix_to_json(m));
      h["segments"] = std::move(segments);
      break;
    }
    case ScheduleKind::PhiDrive:
      h["kind"] = "phi_drive";
      h["c"] = sched.c;
      h["r"] = sched.r;
      h["h_static"] = matrix_to_json(sched.h_static);
      h["h_cos"] = matrix_to_json(sched.h_cos);
      h["h_sin"] = matrix_to_json(sched.h_sin);
      break;
  }
  j["hamiltonian"] = std::move(h);
  return j.dump(2) + "\n";
}

Matrix parse_state_spec(const std::string& spec, Eigen::Index dim) {
  Matrix rho;
  if (!spec.empty() && spec.front() == '[') {
    json j;
    try {
      j = json::parse(spec);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("bad inline state: ") + e.what());
    }
    rho = parse_matrix(j, "state");
    if (rho.rows() != dim || rho.cols() != dim) {
      throw std::invalid_argument("inline state has wrong dimension");
    }
  } else {
    rho = ket_density(spec);
    if (rho.rows() != dim) {
      throw std::invalid_argument("ket '" + spec + "' has dimension " +
                                  std::to_string(rho.rows()) +
                                  ", model needs " + std::to_string(dim));
    }
  }
  if (!is_hermitian(rho, 1e-8) || !is_psd(rho, 1e-8) ||
      std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-8) {
    throw std::invalid_argument("state spec is not a density matrix");
  }
  return rho;
}

Matrix parse_observable_spec(const std::string& spec, Eigen::Index dim) {
  Matrix obs;
  if (!spec.empty() && spec.front() == '[') {
    json j;
    try {
      j = json::parse(spec);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("bad inline observable: ") +
                                  e.what());
    }
    obs = parse_matrix(j, "observable");
  } else {
    if (spec.empty()) throw std::invalid_argument("empty observable spec");
    obs = Matrix::Ones(1, 1);
    for (char ch : spec) {
      Matrix factor;
      switch (ch) {
        case 'I': case 'i': factor = Matrix::Identity(2, 2); break;
        case 'X': case 'x': factor = pauli_x(); break;
        case 'Y': case 'y': factor = pauli_y(); break;
        case 'Z': case 'z': factor = pauli_z(); break;
        default:
          throw std::invalid_argument(
              std::string("unknown Pauli symbol '") + ch + "'");
      }
      obs = kron(obs, factor);
    }
  }
  if (obs.rows() != dim || obs.cols() != dim) {
    throw std::invalid_argument("observable has wrong dimension");
  }
  if (!is_hermitian(obs, 1e-8)) {
    throw std::invalid_argument("observable must be Hermitian");
  }
  return obs;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace lindblad
