#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "edonk/kem.hpp"
#include "edonk/params.hpp"

// Container: "EDNK" | version | object tag | params id [| m N K R nu L as 4-byte big-endian] | payload.
// Field elements use the field encoding; bit matrices are row-major, LSB first, each row padded
// to a whole byte.
namespace edonk::kem {

inline constexpr std::uint8_t kFormatVersion = 0x01;

enum class ObjectTag : std::uint8_t { params = 1, public_key = 2, secret_key = 3, ciphertext = 4, shared_secret = 5 };

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Bytes = std::vector<std::uint8_t>;

template <class T>
struct Loaded {
  Params params;
  T value;
};

Bytes serialize(const Params& params);
Bytes serialize(const Params& params, const PublicKey& pk);
Bytes serialize(const Params& params, const SecretKey& sk);
Bytes serialize(const Params& params, const Ciphertext& ct);
Bytes serialize(const Params& params, const SharedSecret& ss);

/// Each throws FormatError on a bad magic, version, tag, parameter block or length.
Params deserialize_params(std::span<const std::uint8_t> in);
Loaded<PublicKey> deserialize_public_key(std::span<const std::uint8_t> in);
Loaded<SecretKey> deserialize_secret_key(std::span<const std::uint8_t> in);
Loaded<Ciphertext> deserialize_ciphertext(std::span<const std::uint8_t> in);
Loaded<SharedSecret> deserialize_shared_secret(std::span<const std::uint8_t> in);

/// Payload byte count of a public key: 2 nu elements plus K rows of N * 2 nu bits.
std::size_t public_key_payload_size(const Params& params);

}  // namespace edonk::kem
