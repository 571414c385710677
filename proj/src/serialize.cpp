#include "edonk/serialize.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace edonk::kem {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'E', 'D', 'N', 'K'};

std::size_t row_bytes(std::size_t cols) { return (cols + 7) / 8; }

class Writer {
 public:
  Writer(const Params& p, ObjectTag tag) : field_(p.m) {
    out_.assign(kMagic.begin(), kMagic.end());
    out_.push_back(kFormatVersion);
    out_.push_back(static_cast<std::uint8_t>(tag));
    out_.push_back(p.table_id);
    if (p.table_id == 0)
      for (unsigned v : {p.m, p.N, p.K, p.R, p.nu, p.L}) u32(v);
  }

  void u32(std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
  }
  void element(const gf2m::Element& x) { field_.append_encoding(x, out_); }
  void elements(std::span<const gf2m::Element> xs) {
    for (const auto& x : xs) element(x);
  }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void matrix(const BitMatrix& m) {
    const std::size_t n = row_bytes(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      auto w = m.row_words(r);
      for (std::size_t i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(w[i / 8] >> (8 * (i % 8))));
    }
  }

  Bytes take() { return std::move(out_); }

 private:
  gf2m::Field field_;
  Bytes out_;
};

class Reader {
 public:
  Reader(std::span<const std::uint8_t> in, ObjectTag expected) : in_(in) {
    const auto magic = take(4);
    if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) throw FormatError("bad magic");
    if (take(1)[0] != kFormatVersion) throw FormatError("unsupported format version");
    if (take(1)[0] != static_cast<std::uint8_t>(expected)) throw FormatError("unexpected object tag");
    const std::uint8_t id = take(1)[0];
    try {
      if (id == 0) {
        std::array<unsigned, 6> v{};
        for (auto& x : v) x = u32();
        params_ = custom_params(v[0], v[1], v[2], v[3], v[4], v[5]);
      } else if (id <= table_params().size()) {
        params_ = table_params()[id - 1];
      } else {
        throw FormatError("unknown parameter set id");
      }
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("invalid parameter block: ") + e.what());
    }
    field_.emplace(params_.m);
  }

  const Params& params() const { return params_; }

  std::span<const std::uint8_t> take(std::size_t n) {
    if (in_.size() - pos_ < n) throw FormatError("truncated input");
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (auto b : take(4)) v = (v << 8) | b;
    return v;
  }
  gf2m::Element element() {
    try {
      return field_->decode(take(field_->byte_length()));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  gf2m::Vector elements(std::size_t n) {
    gf2m::Vector v(n);
    for (auto& x : v) x = element();
    return v;
  }
  BitMatrix matrix(std::size_t rows, std::size_t cols) {
    BitMatrix m(rows, cols);
    const std::size_t n = row_bytes(cols);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto b = take(n);
      auto w = m.row_words(r);
      for (std::size_t i = 0; i < n; ++i) w[i / 8] |= std::uint64_t{b[i]} << (8 * (i % 8));
      if (cols % 64 && (w.back() >> (cols % 64))) throw FormatError("nonzero padding bits in matrix row");
    }
    return m;
  }
  void finish() const {
    if (pos_ != in_.size()) throw FormatError("trailing bytes after payload");
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  Params params_;
  std::optional<gf2m::Field> field_;
};

}  // namespace

std::size_t public_key_payload_size(const Params& p) {
  return 2 * p.nu * p.element_bytes() + p.K * row_bytes(p.N * 2 * p.nu);
}

Bytes serialize(const Params& params) { return Writer(params, ObjectTag::params).take(); }

Bytes serialize(const Params& params, const PublicKey& pk) {
  if (pk.basis_cd.size() != 2 * params.nu || pk.coeffs.rows() != params.K || pk.coeffs.cols() != params.N * 2 * params.nu)
    throw std::invalid_argument("serialize: public key does not match parameters");
  Writer w(params, ObjectTag::public_key);
  w.elements(pk.basis_cd);
  w.matrix(pk.coeffs);
  return w.take();
}

Bytes serialize(const Params& params, const SecretKey& sk) {
  if (sk.p.rows() != params.N || sk.p.cols() != params.N || sk.h.rows() != params.R || sk.h.cols() != params.N)
    throw std::invalid_argument("serialize: secret key does not match parameters");
  Writer w(params, ObjectTag::secret_key);
  w.element(sk.a);
  w.element(sk.b);
  w.matrix(sk.p);
  w.matrix(sk.h);
  return w.take();
}

Bytes serialize(const Params& params, const Ciphertext& ct) {
  if (ct.c.size() != params.N || ct.tag.size() != params.hash_bytes())
    throw std::invalid_argument("serialize: ciphertext does not match parameters");
  Writer w(params, ObjectTag::ciphertext);
  w.elements(ct.c);
  w.bytes(ct.tag);
  return w.take();
}

Bytes serialize(const Params& params, const SharedSecret& ss) {
  if (ss.bytes.size() != params.hash_bytes()) throw std::invalid_argument("serialize: shared secret has wrong length");
  Writer w(params, ObjectTag::shared_secret);
  w.bytes(ss.bytes);
  return w.take();
}

Params deserialize_params(std::span<const std::uint8_t> in) {
  Reader r(in, ObjectTag::params);
  r.finish();
  return r.params();
}

Loaded<PublicKey> deserialize_public_key(std::span<const std::uint8_t> in) {
  Reader r(in, ObjectTag::public_key);
  const auto& p = r.params();
  PublicKey pk;
  pk.basis_cd = r.elements(2 * p.nu);
  pk.coeffs = r.matrix(p.K, p.N * 2 * p.nu);
  r.finish();
  return {p, std::move(pk)};
}

Loaded<SecretKey> deserialize_secret_key(std::span<const std::uint8_t> in) {
  Reader r(in, ObjectTag::secret_key);
  const auto& p = r.params();
  SecretKey sk;
  sk.a = r.element();
  sk.b = r.element();
  sk.p = r.matrix(p.N, p.N);
  sk.h = r.matrix(p.R, p.N);
  r.finish();
  if (sk.a.is_zero() || sk.b.is_zero() || sk.a == sk.b) throw FormatError("secret key scalars must be distinct and nonzero");
  return {p, std::move(sk)};
}

Loaded<Ciphertext> deserialize_ciphertext(std::span<const std::uint8_t> in) {
  Reader r(in, ObjectTag::ciphertext);
  const auto& p = r.params();
  Ciphertext ct;
  ct.c = r.elements(p.N);
  const auto tag = r.take(p.hash_bytes());
  ct.tag.assign(tag.begin(), tag.end());
  r.finish();
  return {p, std::move(ct)};
}

Loaded<SharedSecret> deserialize_shared_secret(std::span<const std::uint8_t> in) {
  Reader r(in, ObjectTag::shared_secret);
  const auto& p = r.params();
  const auto b = r.take(p.hash_bytes());
  r.finish();
  return {p, SharedSecret{Digest(b.begin(), b.end())}};
}

}  // namespace edonk::kem
