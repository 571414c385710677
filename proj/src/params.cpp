#include "edonk/params.hpp"

#include <stdexcept>

#include "edonk/gf2m.hpp"

namespace edonk::kem {

namespace {

Params make(std::string name, unsigned m, unsigned N, unsigned K, unsigned R, unsigned nu, unsigned L,
            std::uint8_t id) {
  Params p;
  p.name = std::move(name);
  p.m = m;
  p.N = N;
  p.K = K;
  p.R = R;
  p.nu = nu;
  p.L = L;
  p.table_id = id;
  return p;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid parameters: ") + what);
}

}  // namespace

void Params::validate() const {
  require(m >= 2 && m <= gf2m::kMaxDegree, "m out of range");
  require(N >= 2 && K >= 1 && R >= 1 && nu >= 1 && L >= 2, "all counts must be positive");
  require(L % 2 == 0, "L must be even");
  require(2 * L < R, "L must be below R/2");
  require(R < N, "R must be below N");
  require(K <= N - R, "K must not exceed N - R");
  require(2 * nu <= m, "2 nu must not exceed m");
  // P_{c,d}^T is the inverse of P_{a,b} only when N is even.
  require(N % 2 == 0, "N must be even");
  require(hash_bytes() >= 2 * element_bytes(), "hash output too short to split into two field elements");
  gf2m::default_tail(m);
}

const std::vector<Params>& table_params() {
  static const std::vector<Params> table = {
      make("edonk128ref", 128, 144, 16, 40, 8, 6, 1),
      make("edonk128K16N80nu8L6", 128, 80, 16, 40, 8, 6, 2),
      make("edonk128K08N72nu8L8", 128, 72, 8, 40, 8, 8, 3),
      make("edonk128K32N96nu4L4", 128, 96, 32, 40, 4, 4, 4),
      make("edonk128K16N80nu4L6", 128, 80, 16, 40, 4, 6, 5),
      make("edonk192ref", 192, 112, 16, 40, 8, 8, 6),
      make("edonk192K48N144nu4L4", 192, 144, 48, 40, 4, 4, 7),
      make("edonk192K32N128nu4L6", 192, 128, 32, 40, 4, 6, 8),
      make("edonk192K16N112nu4L8", 192, 112, 16, 40, 4, 8, 9),
  };
  return table;
}

const std::vector<Params>& preset_params() {
  static const std::vector<Params> presets = [] {
    std::vector<Params> v = table_params();
    v.push_back(make("toy", 16, 18, 2, 5, 2, 2, 0));
    v.push_back(make("toy-n8", 16, 8, 2, 5, 2, 2, 0));
    v.push_back(make("toy-n24", 16, 24, 8, 16, 2, 2, 0));
    return v;
  }();
  return presets;
}

Params params_by_name(std::string_view name) {
  for (const auto& p : preset_params())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown parameter set: " + std::string(name));
}

Params custom_params(unsigned m, unsigned N, unsigned K, unsigned R, unsigned nu, unsigned L) {
  Params p = make("custom", m, N, K, R, nu, L, 0);
  for (const auto& preset : preset_params())
    if (preset.same_shape(p)) return preset;
  p.validate();
  return p;
}

}  // namespace edonk::kem
