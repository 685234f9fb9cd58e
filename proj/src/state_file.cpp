#include "oprep/state_file.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <json.hpp>

#include "oprep/errors.hpp"

namespace oprep {

using nlohmann::json;

namespace {

Complex parse_complex(const json& entry, std::size_t index) {
  if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
    throw StateError("state file: data[" + std::to_string(index) + "] must be a [re, im] pair of numbers");
  }
  return {entry[0].get<double>(), entry[1].get<double>()};
}

}  // namespace

StateFile parse_state_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StateError(std::string("state file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw StateError("state file: top level must be an object");
  for (const char* key : {"kind", "dims", "data"}) {
    if (!doc.contains(key)) throw StateError(std::string("state file: missing field '") + key + "'");
  }

  StateFile file;
  const auto& kind = doc["kind"];
  if (kind == "pure") {
    file.kind = StateFile::Kind::pure;
  } else if (kind == "mixed") {
    file.kind = StateFile::Kind::mixed;
  } else {
    throw StateError("state file: kind must be \"pure\" or \"mixed\"");
  }

  const auto& dims = doc["dims"];
  if (!dims.is_array() || dims.empty()) throw StateError("state file: dims must be a non-empty array");
  std::size_t total = 1;
  for (const auto& d : dims) {
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      throw StateError("state file: dims entries must be positive integers");
    }
    file.dims.push_back(d.get<std::size_t>());
    total *= file.dims.back();
  }

  const auto& data = doc["data"];
  if (!data.is_array()) throw StateError("state file: data must be an array");
  const std::size_t expected = file.kind == StateFile::Kind::pure ? total : total * total;
  if (data.size() != expected) {
    throw StateError("state file: expected " + std::to_string(expected) + " data entries for dims, got " +
                     std::to_string(data.size()));
  }
  file.data.reserve(expected);
  for (std::size_t i = 0; i < data.size(); ++i) file.data.push_back(parse_complex(data[i], i));
  return file;
}

std::string serialize_state_file(const StateFile& file) {
  json doc;
  doc["kind"] = file.kind == StateFile::Kind::pure ? "pure" : "mixed";
  doc["dims"] = file.dims;
  json data = json::array();
  for (auto c : file.data) data.push_back(json::array({c.real(), c.imag()}));
  doc["data"] = std::move(data);
  return doc.dump(2) + "\n";
}

AnyState to_state(const StateFile& file) {
  TensorStructure structure(file.dims);
  if (file.kind == StateFile::Kind::pure) return PureState(file.data, structure);
  const std::size_t n = structure.total();
  return DensityMatrix(ComplexMatrix(n, n, file.data), structure);
}

StateFile to_state_file(const AnyState& state) {
  StateFile file;
  if (const auto* psi = std::get_if<PureState>(&state)) {
    file.kind = StateFile::Kind::pure;
    file.dims = psi->structure().dims();
    file.data = psi->amplitudes();
  } else {
    const auto& rho = std::get<DensityMatrix>(state);
    file.kind = StateFile::Kind::mixed;
    file.dims = rho.structure().dims();
    auto e = rho.matrix().entries();
    file.data.assign(e.begin(), e.end());
  }
  return file;
}

std::string content_digest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw NumericError("sha256 digest failed");
  }
  std::string hex = "sha256:";
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace oprep
