#include "edonk/hash.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace edonk::kem {

namespace {

struct CtxDeleter {
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};

EVP_MD_CTX* thread_context() {
  thread_local std::unique_ptr<EVP_MD_CTX, CtxDeleter> ctx(EVP_MD_CTX_new());
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  return ctx.get();
}

struct MdDeleter {
  void operator()(EVP_MD* m) const { EVP_MD_free(m); }
};

// Fetched once; an implicit fetch on every init dominates the cost of short messages.
const EVP_MD* digest_of(HashId id) {
  static const std::unique_ptr<EVP_MD, MdDeleter> sha256(EVP_MD_fetch(nullptr, "SHA256", nullptr));
  static const std::unique_ptr<EVP_MD, MdDeleter> sha384(EVP_MD_fetch(nullptr, "SHA384", nullptr));
  const EVP_MD* md = id == HashId::sha256 ? sha256.get() : sha384.get();
  if (!md) throw std::runtime_error("EVP_MD_fetch failed");
  return md;
}

}  // namespace

Digest Hash::operator()(std::span<const std::uint8_t> data) const { return (*this)({data}); }

Digest Hash::operator()(std::initializer_list<std::span<const std::uint8_t>> parts) const {
  Digest out(size());
  digest_into(parts, out);
  return out;
}

void Hash::digest_into(std::initializer_list<std::span<const std::uint8_t>> parts, std::span<std::uint8_t> out) const {
  if (out.size() != size()) throw std::invalid_argument("digest_into: output buffer has the wrong size");
  EVP_MD_CTX* ctx = thread_context();
  if (EVP_DigestInit_ex(ctx, digest_of(id_), nullptr) != 1) throw std::runtime_error("EVP_DigestInit_ex failed");
  for (auto part : parts)
    if (!part.empty() && EVP_DigestUpdate(ctx, part.data(), part.size()) != 1)
      throw std::runtime_error("EVP_DigestUpdate failed");
  unsigned len = 0;
  if (EVP_DigestFinal_ex(ctx, out.data(), &len) != 1 || len != out.size())
    throw std::runtime_error("EVP_DigestFinal_ex failed");
}

}  // namespace edonk::kem
