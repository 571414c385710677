#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace edonk::kem {

enum class HashId : std::uint8_t { sha256 = 1, sha384 = 2 };

/// One parameter set. Field names follow their role: N is the code length, K the number of
/// public generator rows, R the number of secret parity checks, nu the dimension of the
/// generator support and L the rank of the error.
struct Params {
  std::string name;
  unsigned m = 0;
  unsigned N = 0;
  unsigned K = 0;
  unsigned R = 0;
  unsigned nu = 0;
  unsigned L = 0;
  /// Row of the published parameter table (1-based), or 0 for a custom set.
  std::uint8_t table_id = 0;

  HashId hash() const { return m <= 128 ? HashId::sha256 : HashId::sha384; }
  std::size_t hash_bytes() const { return hash() == HashId::sha256 ? 32 : 48; }
  std::size_t element_bytes() const { return (m + 7) / 8; }

  /// Throws std::invalid_argument when a structural constraint is violated.
  void validate() const;

  bool same_shape(const Params& o) const {
    return m == o.m && N == o.N && K == o.K && R == o.R && nu == o.nu && L == o.L;
  }
};

/// The nine published parameter sets, in table order.
const std::vector<Params>& table_params();

/// Named presets: the nine table rows plus the small test sets "toy", "toy-n8" and "toy-n24".
const std::vector<Params>& preset_params();

/// Throws std::invalid_argument for an unknown name.
Params params_by_name(std::string_view name);

/// Custom set; reuses a preset name when the shape matches one.
Params custom_params(unsigned m, unsigned N, unsigned K, unsigned R, unsigned nu, unsigned L);

}  // namespace edonk::kem
