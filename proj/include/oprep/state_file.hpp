#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oprep/measures.hpp"

namespace oprep {

/// On-disk state description:
///
///   {"kind": "pure" | "mixed", "dims": [d1, d2, ...], "data": [[re, im], ...]}
///
/// Pure states list prod(dims) amplitudes; mixed states list the row-major
/// entries of the prod(dims) x prod(dims) density matrix.
struct StateFile {
  enum class Kind { pure, mixed };
  Kind kind = Kind::pure;
  std::vector<std::size_t> dims;
  std::vector<Complex> data;
};

/// Parses and schema-checks the JSON text. Throws StateError on any defect.
StateFile parse_state_file(std::string_view text);

/// Shortest round-trip decimal form; reloading reproduces every double bit-for-bit.
std::string serialize_state_file(const StateFile& file);

/// Validates the state invariants. Throws StateError.
AnyState to_state(const StateFile& file);
StateFile to_state_file(const AnyState& state);

/// "sha256:<hex>" of the raw bytes.
std::string content_digest(std::string_view bytes);

}  // namespace oprep
