#pragma once

#include <cstdint>
#include <exception>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <cereal/archives/portable_binary.hpp>
#include <cereal/types/array.hpp>
#include <cereal/types/string.hpp>
#include <cereal/types/vector.hpp>

#include "elastic/core/error.hpp"

namespace elastic {

using Bytes = std::vector<std::uint8_t>;

template <typename T>
Bytes encode(const T& value) {
  std::ostringstream os(std::ios::binary);
  {
    cereal::PortableBinaryOutputArchive ar(os);
    ar(value);
  }
  const std::string s = os.str();
  return Bytes(s.begin(), s.end());
}

/// Decodes a payload produced by encode<T>. Truncated, oversized or otherwise
/// malformed input raises UNDECODABLE_PAYLOAD.
template <typename T>
T decode(std::span<const std::uint8_t> bytes) {
  std::istringstream is(std::string(bytes.begin(), bytes.end()), std::ios::binary);
  T value{};
  try {
    cereal::PortableBinaryInputArchive ar(is);
    ar(value);
  } catch (const std::exception& e) {
    throw Error(Errc::UndecodablePayload, e.what());
  }
  if (is.peek() != std::char_traits<char>::eof())
    throw Error(Errc::UndecodablePayload, "trailing bytes after payload");
  return value;
}

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

inline std::string to_string(std::span<const std::uint8_t> bytes) {
  return std::string(bytes.begin(), bytes.end());
}

}  // namespace elastic
