// edonk: key generation, encapsulation, decapsulation, shared-secret recovery, self-test and
// benchmarks. Exit codes: 0 success, 2 usage or input error, 3 KEM failure, 4 attack failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "edonk/attack.hpp"
#include "edonk/kem.hpp"
#include "edonk/params.hpp"
#include "edonk/selftest.hpp"
#include "edonk/serialize.hpp"

namespace {

using namespace edonk;
using kem::Bytes;
using kem::Params;

constexpr int kExitUsage = 2;
constexpr int kExitKem = 3;
constexpr int kExitAttack = 4;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string params_name;
  std::string custom;
  std::string seed;
  std::string pk, sk, ct, ss, report;
  std::string strategy = "auto";
  unsigned trials = 1;
  unsigned threads = 1;
  std::string inject_fault;
};

Bytes read_file(const std::string& path) {
  if (path.empty()) throw InputError("missing input path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, const Bytes& data) {
  if (path.empty()) throw InputError("missing output path");
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw InputError("cannot write " + path);
}

std::string hex(std::span<const std::uint8_t> b) {
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (auto x : b) os << std::setw(2) << static_cast<unsigned>(x);
  return os.str();
}

std::optional<Params> requested_params(const RunConfig& cfg) {
  if (!cfg.params_name.empty() && !cfg.custom.empty()) throw InputError("--params and --custom are exclusive");
  try {
    if (!cfg.params_name.empty()) return kem::params_by_name(cfg.params_name);
    if (cfg.custom.empty()) return std::nullopt;
    std::vector<unsigned> v;
    std::stringstream ss(cfg.custom);
    for (std::string tok; std::getline(ss, tok, ',');) v.push_back(static_cast<unsigned>(std::stoul(tok)));
    if (v.size() != 6) throw InputError("--custom expects m,N,K,R,nu,L");
    return kem::custom_params(v[0], v[1], v[2], v[3], v[4], v[5]);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const std::out_of_range& e) {
    throw InputError(e.what());
  }
}

Params require_params(const RunConfig& cfg) {
  auto p = requested_params(cfg);
  if (!p) throw InputError("--params or --custom is required");
  return *p;
}

/// Files carry their parameter set; an explicit --params must agree with it.
void check_agrees(const RunConfig& cfg, const Params& from_file) {
  if (auto p = requested_params(cfg); p && !p->same_shape(from_file))
    throw InputError("input file uses parameter set " + from_file.name + ", not " + p->name);
}

Rng make_rng(const RunConfig& cfg) {
  if (cfg.seed.empty()) {
    std::random_device rd;
    return Rng((std::uint64_t{rd()} << 32) | rd());
  }
  try {
    std::size_t used = 0;
    const std::uint64_t s = std::stoull(cfg.seed, &used, 16);
    if (used != cfg.seed.size()) throw std::invalid_argument("trailing characters");
    return Rng(s);
  } catch (const std::exception&) {
    throw InputError("--seed expects a 64-bit hexadecimal value");
  }
}

template <class F>
auto load(const std::string& path, F deserialize) {
  const Bytes data = read_file(path);
  try {
    return deserialize(data);
  } catch (const kem::FormatError& e) {
    throw InputError(path + ": " + e.what());
  }
}

int cmd_keygen(const RunConfig& cfg) {
  const kem::Scheme scheme(require_params(cfg));
  Rng rng = make_rng(cfg);
  kem::KeyGenTrace trace;
  const auto kp = kem::keygen(scheme, rng, &trace);
  const Bytes pk = kem::serialize(scheme.params(), kp.pk);
  const Bytes sk = kem::serialize(scheme.params(), kp.sk);
  write_file(cfg.pk, pk);
  write_file(cfg.sk, sk);
  std::cout << "op=keygen params=" << scheme.params().name << " pk_bytes=" << pk.size()
            << " pk_payload_bytes=" << kem::public_key_payload_size(scheme.params()) << " sk_bytes=" << sk.size()
            << " attempts=" << trace.attempts << "\n";
  return 0;
}

int cmd_encaps(const RunConfig& cfg) {
  const auto pk = load(cfg.pk, kem::deserialize_public_key);
  check_agrees(cfg, pk.params);
  const kem::Scheme scheme(pk.params);
  Rng rng = make_rng(cfg);
  const auto enc = kem::encapsulate(scheme, pk.value, rng);
  write_file(cfg.ct, kem::serialize(scheme.params(), enc.ct));
  write_file(cfg.ss, kem::serialize(scheme.params(), enc.ss));
  std::cout << "op=encaps params=" << scheme.params().name << " ss=" << hex(enc.ss.bytes) << "\n";
  return 0;
}

int cmd_decaps(const RunConfig& cfg) {
  const auto sk = load(cfg.sk, kem::deserialize_secret_key);
  const auto ct = load(cfg.ct, kem::deserialize_ciphertext);
  check_agrees(cfg, sk.params);
  if (!sk.params.same_shape(ct.params)) throw InputError("secret key and ciphertext use different parameter sets");
  const kem::Scheme scheme(sk.params);
  const auto ss = kem::decapsulate(scheme, sk.value, ct.value);
  if (!ss) {
    std::cout << "op=decaps params=" << scheme.params().name << " success=0\n";
    return kExitKem;
  }
  if (!cfg.ss.empty()) write_file(cfg.ss, kem::serialize(scheme.params(), *ss));
  std::cout << "op=decaps params=" << scheme.params().name << " success=1 ss=" << hex(ss->bytes) << "\n";
  return 0;
}

int cmd_attack(const RunConfig& cfg) {
  const auto pk = load(cfg.pk, kem::deserialize_public_key);
  const auto ct = load(cfg.ct, kem::deserialize_ciphertext);
  check_agrees(cfg, pk.params);
  if (!pk.params.same_shape(ct.params)) throw InputError("public key and ciphertext use different parameter sets");
  attack::Strategy strategy;
  try {
    strategy = attack::strategy_from_string(cfg.strategy);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const kem::Scheme scheme(pk.params);
  const auto rep = attack::run(scheme, pk.value, ct.value, strategy, cfg.threads);
  const std::string record = "op=attack params=" + scheme.params().name + " " + rep.to_record() + "\n";
  if (!cfg.report.empty()) {
    std::ofstream out(cfg.report);
    out << record;
    if (!out) throw InputError("cannot write " + cfg.report);
  }
  std::cout << record;
  if (!rep.success) return kExitAttack;
  if (!cfg.ss.empty()) write_file(cfg.ss, kem::serialize(scheme.params(), *rep.recovered_ss));
  return 0;
}

int cmd_selftest(const RunConfig& cfg) {
  selftest::Options opts;
  if (!cfg.seed.empty()) opts.seed = make_rng(cfg)();
  if (cfg.inject_fault == "mul")
    opts.mul = selftest::faulty_mul();
  else if (!cfg.inject_fault.empty())
    throw InputError("unknown fault: " + cfg.inject_fault);
  const auto t0 = std::chrono::steady_clock::now();
  bool all = true;
  for (const auto& r : selftest::run(opts)) {
    std::cout << "check=" << r.name << " pass=" << (r.passed ? 1 : 0) << " detail=" << r.detail << "\n";
    all = all && r.passed;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  std::cout << "op=selftest pass=" << (all ? 1 : 0) << " elapsed_ms=" << ms.count() << "\n";
  return all ? 0 : 1;
}

int cmd_bench(const RunConfig& cfg) {
  std::vector<Params> sets;
  if (auto p = requested_params(cfg))
    sets.push_back(*p);
  else
    sets = kem::table_params();
  Rng rng = make_rng(cfg);
  using Clock = std::chrono::steady_clock;
  using us = std::chrono::microseconds;

  for (const auto& params : sets) {
    const kem::Scheme scheme(params);
    const unsigned n = std::max(1U, cfg.trials);
    us keygen{0}, encaps{0}, decaps{0};
    attack::PhaseTiming phases;
    std::uint64_t max_evals = 0;
    unsigned ok = 0;
    for (unsigned t = 0; t < n; ++t) {
      auto t0 = Clock::now();
      const auto kp = kem::keygen(scheme, rng);
      keygen += std::chrono::duration_cast<us>(Clock::now() - t0);
      t0 = Clock::now();
      const auto enc = kem::encapsulate(scheme, kp.pk, rng);
      encaps += std::chrono::duration_cast<us>(Clock::now() - t0);
      t0 = Clock::now();
      (void)kem::decapsulate(scheme, kp.sk, enc.ct);
      decaps += std::chrono::duration_cast<us>(Clock::now() - t0);
      const auto rep = attack::run(scheme, kp.pk, enc.ct, attack::Strategy::rank2, cfg.threads);
      phases.alpha += rep.timing.alpha;
      phases.reconstruct += rep.timing.reconstruct;
      phases.decode += rep.timing.decode;
      phases.search += rep.timing.search;
      max_evals = std::max(max_evals, rep.chain_evaluations);
      ok += rep.success && *rep.recovered_ss == enc.ss;
    }
    const std::pair<const char*, us> named[] = {{"alpha", phases.alpha},
                                                {"reconstruct", phases.reconstruct},
                                                {"decode", phases.decode},
                                                {"search", phases.search}};
    const auto* largest = &named[0];
    for (const auto& p : named)
      if (p.second > largest->second) largest = &p;
    const std::uint64_t bound = std::uint64_t{params.L / 2} << (2 * (params.L + 1));
    std::cout << "op=bench params=" << params.name << " trials=" << n << " keygen_us=" << keygen.count() / n
              << " encaps_us=" << encaps.count() / n << " decaps_us=" << decaps.count() / n;
    for (const auto& p : named) std::cout << " " << p.first << "_us=" << p.second.count() / n;
    std::cout << " largest_phase=" << largest->first << " max_chain_evaluations=" << max_evals
              << " chain_bound=" << bound << " attack_success=" << ok << "/" << n << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edon-K key encapsulation and shared-secret recovery"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    auto* p = sub->add_option("--params", cfg.params_name, "Named parameter set");
    sub->add_option("--custom", cfg.custom, "Custom parameters m,N,K,R,nu,L")->excludes(p);
    sub->add_option("--seed", cfg.seed, "64-bit seed in hexadecimal");
    sub->add_option("--threads", cfg.threads, "Worker threads for the pair search")->check(CLI::Range(1U, 256U));
  };

  auto* keygen = app.add_subcommand("keygen", "Generate a key pair");
  common(keygen);
  keygen->add_option("--pk", cfg.pk, "Public key output")->required();
  keygen->add_option("--sk", cfg.sk, "Secret key output")->required();

  auto* encaps = app.add_subcommand("encaps", "Encapsulate against a public key");
  common(encaps);
  encaps->add_option("--pk", cfg.pk, "Public key input")->required();
  encaps->add_option("--ct", cfg.ct, "Ciphertext output")->required();
  encaps->add_option("--ss", cfg.ss, "Shared secret output")->required();

  auto* decaps = app.add_subcommand("decaps", "Decapsulate with a secret key");
  common(decaps);
  decaps->add_option("--sk", cfg.sk, "Secret key input")->required();
  decaps->add_option("--ct", cfg.ct, "Ciphertext input")->required();
  decaps->add_option("--ss", cfg.ss, "Shared secret output");

  auto* atk = app.add_subcommand("attack", "Recover the shared secret from public data");
  common(atk);
  atk->add_option("--pk", cfg.pk, "Public key input")->required();
  atk->add_option("--ct", cfg.ct, "Ciphertext input")->required();
  atk->add_option("--ss", cfg.ss, "Recovered shared secret output");
  atk->add_option("--strategy", cfg.strategy, "rank2, binary or auto")
      ->check(CLI::IsMember({"rank2", "binary", "auto"}));
  atk->add_option("--report", cfg.report, "Write the attack report record to this path");

  auto* self = app.add_subcommand("selftest", "Run the built-in invariant checks");
  common(self);
  self->add_option("--inject-fault", cfg.inject_fault, "Corrupt an operation to verify detection (mul)");

  auto* bench = app.add_subcommand("bench", "Time every phase across parameter sets");
  common(bench);
  bench->add_option("--trials", cfg.trials, "Trials per parameter set")->check(CLI::Range(1U, 100000U));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*keygen) return cmd_keygen(cfg);
    if (*encaps) return cmd_encaps(cfg);
    if (*decaps) return cmd_decaps(cfg);
    if (*atk) return cmd_attack(cfg);
    if (*self) return cmd_selftest(cfg);
    if (*bench) return cmd_bench(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
