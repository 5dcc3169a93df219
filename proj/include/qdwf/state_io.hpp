#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "qdwf/phasespace.hpp"
#include "qdwf/states.hpp"
#include "qdwf/version.hpp"

namespace qdwf {

/// Thrown for files that parse but violate a schema or state invariant.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Representation { density, stokes, dwf };

inline const char* to_string(Representation r) {
  switch (r) {
    case Representation::density: return "density";
    case Representation::stokes: return "stokes";
    case Representation::dwf: return "dwf";
  }
  return "?";
}

inline Representation representation_from_string(const std::string& s) {
  if (s == "density") return Representation::density;
  if (s == "stokes") return Representation::stokes;
  if (s == "dwf") return Representation::dwf;
  throw ValidationError("unknown representation \"" + s + "\"");
}

/// One state in one of the three representations, as stored on disk. DWF
/// payloads carry the net they were constructed under; the other two are
/// net-independent.
struct StateFile {
  Representation representation = Representation::density;
  int n = 1;
  std::optional<std::uint64_t> net_index;  // dwf only
  std::variant<DensityMatrix, StokesVector, DwfVector> data;

  const DensityMatrix& density() const { return std::get<DensityMatrix>(data); }
  const StokesVector& stokes() const { return std::get<StokesVector>(data); }
  const DwfVector& dwf() const { return std::get<DwfVector>(data); }
};

namespace io_detail {

inline const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string("missing required field \"") + key + "\"");
  return *it;
}

inline RVector real_vector(const nlohmann::json& j, Eigen::Index expected, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != expected) {
    throw ValidationError(std::string(what) + ": expected a flat array of " + std::to_string(expected) +
                          " numbers");
  }
  RVector v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) v(i) = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

inline Eigen::MatrixXd real_matrix(const nlohmann::json& j, Eigen::Index dim, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
    throw ValidationError(std::string(what) + ": expected a " + std::to_string(dim) + "x" +
                          std::to_string(dim) + " array");
  }
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    m.row(r) = real_vector(j[static_cast<std::size_t>(r)], dim, what).transpose();
  }
  return m;
}

}  // namespace io_detail

/// On-load state checks (looser 1e-6 tolerances, for hand-authored files).
inline void validate_state(const StateFile& state) {
  const double tol = 1e-6;
  const auto N = static_cast<Eigen::Index>(1) << state.n;
  switch (state.representation) {
    case Representation::density: {
      if (state.net_index) throw ValidationError("net_index is only valid for dwf files");
      try {
        state.density().validate(tol, tol, tol);
      } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
      }
      break;
    }
    case Representation::stokes: {
      if (state.net_index) throw ValidationError("net_index is only valid for dwf files");
      const auto& s = state.stokes();
      const double expected = 1.0 / static_cast<double>(N);
      if (std::abs(s.values(0) - expected) > tol) {
        throw ValidationError("stokes: S_{0...0} must equal 1/2^n for a unit-trace state");
      }
      break;
    }
    case Representation::dwf: {
      if (!state.net_index) throw ValidationError("dwf files must carry net_index");
      if (state.n <= 3 && *state.net_index >= net_count(state.n)) {
        throw ValidationError("dwf: net_index out of range");
      }
      if (std::abs(state.dwf().sum() - 1.0) > tol) {
        throw ValidationError("dwf: values must sum to 1");
      }
      break;
    }
  }
}

inline StateFile state_from_json(const nlohmann::json& j) {
  StateFile state;
  state.representation = representation_from_string(io_detail::require(j, "representation").get<std::string>());
  state.n = io_detail::require(j, "n").get<int>();
  if (state.n < 1 || state.n > Field::kMaxDegree) {
    throw ValidationError("n must be in [1," + std::to_string(Field::kMaxDegree) + "]");
  }
  const auto N = static_cast<Eigen::Index>(1) << state.n;
  if (j.contains("net_index")) state.net_index = j["net_index"].get<std::uint64_t>();

  const auto& data = io_detail::require(j, "data");
  switch (state.representation) {
    case Representation::density: {
      const Eigen::MatrixXd re = io_detail::real_matrix(io_detail::require(data, "re"), N, "density.re");
      const Eigen::MatrixXd im = io_detail::real_matrix(io_detail::require(data, "im"), N, "density.im");
      state.data = DensityMatrix(re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>());
      break;
    }
    case Representation::stokes:
      state.data = StokesVector(state.n, io_detail::real_vector(data, N * N, "stokes"));
      break;
    case Representation::dwf:
      state.data = DwfVector(state.n, io_detail::real_vector(data, N * N, "dwf"));
      break;
  }
  if (j.contains("meta") && j["meta"].contains("modulus")) {
    const auto modulus = j["meta"]["modulus"].get<unsigned>();
    if (modulus != Field::standard_modulus(state.n)) {
      throw ValidationError("meta.modulus " + std::to_string(modulus) +
                            " does not match the pinned modulus for n=" + std::to_string(state.n));
    }
  }
  validate_state(state);
  return state;
}

inline nlohmann::json meta_json(int n) {
  const Field field = Field::standard(n);
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& e : field.basis()) basis.push_back(e.value());
  return {
      {"modulus", field.modulus()},
      {"field_basis", basis},
      {"tool_version", kVersion},
      {"index_order",
       {{"dwf", "index = int(q) * N + int(p)"},
        {"stokes", "base-4 big-endian Pauli tuple (i_1...i_n)"}}},
  };
}

inline nlohmann::json state_to_json(const StateFile& state) {
  validate_state(state);
  nlohmann::json j;
  j["representation"] = to_string(state.representation);
  j["n"] = state.n;
  if (state.representation == Representation::dwf) j["net_index"] = *state.net_index;
  switch (state.representation) {
    case Representation::density: {
      const Matrix& m = state.density().mat;
      nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json re_row = nlohmann::json::array(), im_row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          re_row.push_back(m(r, c).real());
          im_row.push_back(m(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
      }
      j["data"] = {{"re", std::move(re)}, {"im", std::move(im)}};
      break;
    }
    case Representation::stokes: {
      j["data"] = std::vector<double>(state.stokes().values.begin(), state.stokes().values.end());
      break;
    }
    case Representation::dwf: {
      j["data"] = std::vector<double>(state.dwf().values.begin(), state.dwf().values.end());
      break;
    }
  }
  j["meta"] = meta_json(state.n);
  return j;
}

}  // namespace qdwf
