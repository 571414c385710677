#include "edonk/attack.hpp"

#include <atomic>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>
#include <tuple>
#include <vector>

#include "edonk/f2linalg.hpp"
#include "edonk/rankmetric.hpp"

namespace edonk::attack {

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::microseconds since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
}

/// Nullspace of `lhs`, lifted back to field rows with the given per-position basis.
ReconstructedCheck lift_kernel(const Scheme& scheme, const BitMatrix& lhs, std::span<const Element> basis,
                               std::size_t n) {
  const BitMatrix kernel = f2linalg::nullspace_basis(lhs);
  ReconstructedCheck out;
  out.rows = gf2m::Matrix(kernel.rows(), n);
  for (std::size_t r = 0; r < kernel.rows(); ++r) {
    const auto row = f2linalg::combine(basis, kernel.row(r));
    std::copy(row.begin(), row.end(), out.rows.row(r).begin());
  }
  out.expanded_equations = lhs.rows();
  out.unknowns = lhs.cols();
  out.degenerate = kernel.rows() < scheme.params().R;
  return out;
}

std::string hex(std::span<const std::uint8_t> bytes) {
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (auto b : bytes) os << std::setw(2) << static_cast<unsigned>(b);
  return os.str();
}

}  // namespace

Element recover_alpha(const Scheme& scheme, const PublicKey& pk) {
  const auto nu = scheme.params().nu;
  if (pk.basis_cd.size() != 2 * nu) throw AttackFailure("alpha", "public key basis has the wrong length");
  if (pk.basis_cd[0].is_zero() || pk.basis_cd[nu].is_zero())
    throw AttackFailure("alpha", "public key basis contains zero");
  return scheme.field().div(pk.basis_cd[0], pk.basis_cd[nu]);
}

ReconstructedCheck reconstruct_h3(const Scheme& scheme, const PublicKey& pk, const Element& alpha) {
  const auto& f = scheme.field();
  if (alpha.is_zero() || alpha == f.one()) throw AttackFailure("reconstruct", "alpha lies in F2");
  const std::array<Element, 2> basis{f.one(), alpha};
  const gf2m::Matrix g_pub = kem::expand_pk(scheme, pk);
  const std::size_t n = g_pub.cols();
  const auto sys = f2linalg::expand_affine_system(f, g_pub, gf2m::Vector(g_pub.rows()), basis);

  // Write x_j = u_j + alpha w_j = (u_j + w_j) + (1 + alpha) w_j. Rows whose entries are all 1 or
  // alpha have u_j + w_j = 1 everywhere, and sums of such rows have it 0 everywhere, so the
  // coefficient of 1 must be the same at every position. Without this the binary checks and
  // their alpha multiples also solve the system.
  BitMatrix same(n - 1, 2 * n);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t c : {std::size_t{0}, std::size_t{1}, 2 * j, 2 * j + 1}) same.set(j - 1, c, true);
  ReconstructedCheck out = lift_kernel(scheme, sys.lhs.vstack(same), basis, n);
  out.alpha = alpha;
  out.kind = CheckKind::rank2;
  if (out.rows.rows() == 0) throw AttackFailure("reconstruct", "no parity checks over span{1, alpha}");
  return out;
}

ReconstructedCheck reconstruct_h4(const Scheme& scheme, const gf2m::Matrix& g_pub) {
  const std::array<Element, 1> basis{scheme.field().one()};
  const auto sys = f2linalg::expand_affine_system(scheme.field(), g_pub, gf2m::Vector(g_pub.rows()), basis);
  ReconstructedCheck out = lift_kernel(scheme, sys.lhs, basis, g_pub.cols());
  out.alpha = scheme.field().one();
  out.kind = CheckKind::binary;
  if (out.rows.rows() == 0) throw AttackFailure("reconstruct", "no binary parity checks");
  return out;
}

Decoded attack_decode(const Scheme& scheme, const ReconstructedCheck& check, std::span<const Element> c) {
  const auto& f = scheme.field();
  if (c.size() != check.rows.cols()) throw std::invalid_argument("attack_decode: word length mismatch");
  const Element twist = f.one() + check.alpha;
  if (twist.is_zero()) throw AttackFailure("decode", "alpha = 1");

  Decoded out;
  out.syndrome = f.mul_transposed(check.rows, c);
  out.support_bound = rankmetric::scale(f, f.inv(twist), rankmetric::support(out.syndrome));
  if (out.support_bound.dim() > scheme.params().L + 1)
    throw AttackFailure("decode", "syndrome support exceeds L + 1; the check is not of the expected shape");

  const auto sol = f2linalg::solve_constrained(f, check.rows, out.syndrome, out.support_bound.basis());
  if (!sol.particular) throw AttackFailure("decode", "constrained system is inconsistent");
  out.error = *sol.particular;
  out.ambiguity = sol.kernel.rows();
  return out;
}

SecretSearch recover_secret(const Scheme& scheme, const Subspace& v, const Ciphertext& ct, unsigned threads) {
  const unsigned steps = scheme.params().L / 2;
  if (v.dim() > scheme.params().L + 1) throw AttackFailure("search", "candidate space larger than L + 1");
  const auto elems = v.enumerate();
  const std::uint64_t n = elems.size();
  const kem::Digest hc = scheme.hash_word(ct.c);

  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{kNone};
  std::atomic<std::uint64_t> evaluations{0};

  // Worker w handles lambda indices congruent to w mod threads, in increasing order.
  auto worker = [&](std::uint64_t first, std::uint64_t stride) {
    std::uint64_t local = 0;
    for (std::uint64_t li = first; li < n; li += stride) {
      for (std::uint64_t mi = 0; mi < n; ++mi) {
        const std::uint64_t idx = li * n + mi;
        if (idx >= best.load(std::memory_order_relaxed)) {
          evaluations += local;
          return;
        }
        Element u = elems[li];
        Element w = elems[mi];
        for (unsigned i = 0; i < steps; ++i) {
          std::tie(u, w) = scheme.chain_step(u, w);
          ++local;
          if (scheme.bind_matches(w, u, hc, ct.tag)) {
            std::uint64_t cur = best.load();
            while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
            }
            evaluations += local;
            return;
          }
        }
      }
    }
    evaluations += local;
  };

  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(n, 1))));
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
  }

  SecretSearch out;
  out.chain_evaluations = evaluations.load();
  const std::uint64_t idx = best.load();
  if (idx == kNone) return out;

  // Replay the winning pair to derive the secret.
  Element u = elems[idx / n];
  Element w = elems[idx % n];
  for (unsigned i = 0; i < steps; ++i) {
    std::tie(u, w) = scheme.chain_step(u, w);
    if (scheme.bind(w, u, hc) == ct.tag) {
      out.secret = SharedSecret{scheme.bind(u, w, hc)};
      out.match = std::pair{idx / n, idx % n};
      return out;
    }
  }
  throw std::logic_error("recover_secret: winning pair did not replay");
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::rank2:
      return "rank2";
    case Strategy::binary:
      return "binary";
    case Strategy::automatic:
      return "auto";
  }
  return "?";
}

Strategy strategy_from_string(std::string_view s) {
  if (s == "rank2") return Strategy::rank2;
  if (s == "binary") return Strategy::binary;
  if (s == "auto") return Strategy::automatic;
  throw std::invalid_argument("unknown strategy: " + std::string(s));
}

std::string AttackReport::to_record() const {
  std::ostringstream os;
  os << "variant=" << to_string(variant) << " success=" << (success ? 1 : 0)
     << " t_alpha_us=" << timing.alpha.count() << " t_reconstruct_us=" << timing.reconstruct.count()
     << " t_decode_us=" << timing.decode.count() << " t_search_us=" << timing.search.count()
     << " support_dim=" << support_dim << " check_rows=" << check_rows << " chain_evaluations=" << chain_evaluations
     << " ss=" << (recovered_ss ? hex(recovered_ss->bytes) : std::string("-"));
  if (!success) os << " failed_phase=" << failed_phase << " diagnostic=" << std::quoted(diagnostic);
  return os.str();
}

namespace {

void rank2_into(AttackReport& rep, const Scheme& scheme, const PublicKey& pk, const Ciphertext& ct,
                unsigned threads) {
  rep.variant = Strategy::rank2;
  auto t0 = Clock::now();
  const Element alpha = recover_alpha(scheme, pk);
  rep.timing.alpha = since(t0);

  t0 = Clock::now();
  const auto check = reconstruct_h3(scheme, pk, alpha);
  rep.timing.reconstruct = since(t0);
  rep.check_rows = check.rows.rows();

  t0 = Clock::now();
  auto decoded = attack_decode(scheme, check, ct.c);
  rep.timing.decode = since(t0);
  rep.support_dim = decoded.support_bound.dim();
  rep.error = std::move(decoded.error);

  t0 = Clock::now();
  const auto found = recover_secret(scheme, decoded.support_bound, ct, threads);
  rep.timing.search = since(t0);
  rep.chain_evaluations = found.chain_evaluations;
  if (!found.secret) throw AttackFailure("search", "no candidate pair reproduces the tag");
  rep.success = true;
  rep.recovered_ss = found.secret;
}

void binary_into(AttackReport& rep, const Scheme& scheme, const gf2m::Matrix& g_pub, const Ciphertext& ct,
                 unsigned threads) {
  rep.variant = Strategy::binary;
  auto t0 = Clock::now();
  const auto check = reconstruct_h4(scheme, g_pub);
  rep.timing.reconstruct = since(t0);
  rep.check_rows = check.rows.rows();
  if (ct.c.size() != check.rows.cols()) throw std::invalid_argument("attack_binary: word length mismatch");

  t0 = Clock::now();
  const auto s = scheme.field().mul_transposed(check.rows, ct.c);
  const Subspace v = rankmetric::support(s);
  rep.timing.decode = since(t0);
  rep.support_dim = v.dim();

  t0 = Clock::now();
  const auto found = recover_secret(scheme, v, ct, threads);
  rep.timing.search = since(t0);
  rep.chain_evaluations = found.chain_evaluations;
  if (!found.secret) throw AttackFailure("search", "no candidate pair reproduces the tag");
  rep.success = true;
  rep.recovered_ss = found.secret;
}

}  // namespace

AttackReport attack_rank2(const Scheme& scheme, const PublicKey& pk, const Ciphertext& ct, unsigned threads) {
  AttackReport rep;
  rank2_into(rep, scheme, pk, ct, threads);
  return rep;
}

AttackReport attack_binary(const Scheme& scheme, const gf2m::Matrix& g_pub, const Ciphertext& ct, unsigned threads) {
  AttackReport rep;
  binary_into(rep, scheme, g_pub, ct, threads);
  return rep;
}

AttackReport run(const Scheme& scheme, const PublicKey& pk, const Ciphertext& ct, Strategy strategy,
                 unsigned threads) {
  std::string first_failure;
  if (strategy != Strategy::binary) {
    AttackReport rep;
    try {
      rank2_into(rep, scheme, pk, ct, threads);
      return rep;
    } catch (const AttackFailure& e) {
      if (strategy == Strategy::rank2) {
        rep.failed_phase = e.phase();
        rep.diagnostic = e.what();
        return rep;
      }
      first_failure = std::string("rank2 ") + e.what() + "; binary ";
    }
  }
  AttackReport rep;
  try {
    binary_into(rep, scheme, kem::expand_pk(scheme, pk), ct, threads);
  } catch (const AttackFailure& e) {
    rep.failed_phase = e.phase();
    rep.diagnostic = first_failure + e.what();
  }
  return rep;
}

}  // namespace edonk::attack
