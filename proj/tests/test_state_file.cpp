#include <doctest.h>

#include <cstring>

#include "oprep/errors.hpp"
#include "oprep/state_file.hpp"

using namespace oprep;

namespace {

bool bitwise_equal(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(Complex)) == 0;
}

}  // namespace

TEST_CASE("round trip is bit-for-bit") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const AnyState pure = haar_random_pure(TensorStructure{2 + seed % 3, 3}, seed);
    const auto file = to_state_file(pure);
    const auto text = serialize_state_file(file);
    const auto back = parse_state_file(text);
    CHECK(back.kind == StateFile::Kind::pure);
    CHECK(back.dims == file.dims);
    CHECK(bitwise_equal(back.data, file.data));
    CHECK(serialize_state_file(back) == text);

    const AnyState mixed = random_mixed(3, 2, seed);
    const auto mfile = to_state_file(mixed);
    const auto mback = parse_state_file(serialize_state_file(mfile));
    CHECK(mback.kind == StateFile::Kind::mixed);
    CHECK(bitwise_equal(mback.data, mfile.data));
    const auto state = to_state(mback);
    CHECK(std::holds_alternative<DensityMatrix>(state));
  }
}

TEST_CASE("parse_state_file") {
  const auto f = parse_state_file(R"({"kind": "pure", "dims": [2, 2], "data": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]})");
  CHECK(f.dims == std::vector<std::size_t>{2, 2});
  CHECK(std::holds_alternative<PureState>(to_state(f)));

  CHECK_THROWS_AS(parse_state_file("not json"), StateError);
  CHECK_THROWS_AS(parse_state_file(R"({"kind": "pure", "dims": [2]})"), StateError);
  CHECK_THROWS_AS(parse_state_file(R"({"kind": "bogus", "dims": [2], "data": [[1, 0], [0, 0]]})"), StateError);
  CHECK_THROWS_AS(parse_state_file(R"({"kind": "pure", "dims": [2], "data": [[1, 0]]})"), StateError);
  CHECK_THROWS_AS(parse_state_file(R"({"kind": "pure", "dims": [0], "data": []})"), StateError);
  CHECK_THROWS_AS(parse_state_file(R"({"kind": "pure", "dims": [2], "data": [[1, 0, 0], [0, 0]]})"), StateError);
  CHECK_THROWS_AS(parse_state_file(R"({"kind": "pure", "dims": [2], "data": [["1", 0], [0, 0]]})"), StateError);
  CHECK_THROWS_AS(parse_state_file(R"({"kind": "mixed", "dims": [2], "data": [[1, 0], [0, 0]]})"), StateError);

  // Well-formed file, invalid state.
  const auto unnormalized = parse_state_file(R"({"kind": "pure", "dims": [2], "data": [[1, 0], [1, 0]]})");
  CHECK_THROWS_AS(to_state(unnormalized), StateError);
}

TEST_CASE("content_digest") {
  CHECK(content_digest("") == "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(content_digest("abc") == "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
