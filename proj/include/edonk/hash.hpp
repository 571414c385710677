#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "edonk/params.hpp"

namespace edonk::kem {

using Digest = std::vector<std::uint8_t>;

inline constexpr std::size_t kMaxDigestBytes = 48;

/// SHA-2 digest selected by parameter set. Backed by OpenSSL; copyable and thread-safe.
class Hash {
 public:
  explicit Hash(HashId id) : id_(id) {}

  HashId id() const { return id_; }
  std::size_t size() const { return id_ == HashId::sha256 ? 32 : 48; }

  Digest operator()(std::span<const std::uint8_t> data) const;
  /// Digest of the concatenation of the parts.
  Digest operator()(std::initializer_list<std::span<const std::uint8_t>> parts) const;
  /// Writes the digest of the concatenation into `out`, which must hold exactly size() bytes.
  void digest_into(std::initializer_list<std::span<const std::uint8_t>> parts, std::span<std::uint8_t> out) const;

 private:
  HashId id_;
};

}  // namespace edonk::kem
