#pragma once

// SHA-1 comes from OpenSSL's one-shot context API: the fastest OpenSSL entry
// point for the 24-byte messages hashed per tree node.
#ifndef OPENSSL_SUPPRESS_DEPRECATED
#define OPENSSL_SUPPRESS_DEPRECATED
#endif
#include <openssl/sha.h>

#include <array>
#include <cstdint>
#include <span>

namespace elastic::uts {

using Digest = std::array<std::uint8_t, 20>;

inline Digest sha1(std::span<const std::uint8_t> message) {
  Digest out;
  SHA_CTX ctx;
  SHA1_Init(&ctx);
  SHA1_Update(&ctx, message.data(), message.size());
  SHA1_Final(out.data(), &ctx);
  return out;
}

/// SHA-1(prefix || big-endian-32(suffix)).
inline Digest sha1_with_index(const Digest& prefix, std::uint32_t suffix) {
  std::array<std::uint8_t, 24> msg;
  std::copy(prefix.begin(), prefix.end(), msg.begin());
  msg[20] = static_cast<std::uint8_t>(suffix >> 24);
  msg[21] = static_cast<std::uint8_t>(suffix >> 16);
  msg[22] = static_cast<std::uint8_t>(suffix >> 8);
  msg[23] = static_cast<std::uint8_t>(suffix);
  return sha1(msg);
}

}  // namespace elastic::uts
