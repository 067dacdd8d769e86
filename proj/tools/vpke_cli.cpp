// vpke: keygen, encrypt/decrypt, escrow deposit/verification, secret
// recovery and the partiality benchmark over the McCurley scheme.
//
// Exit codes: 0 success, 1 verification failed, 2 bad input or format,
// 3 work/memory budget exhausted.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vpke/bench.hpp"
#include "vpke/escrow.hpp"
#include "vpke/io.hpp"
#include "vpke/keygen.hpp"
#include "vpke/mccurley.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

vpke::RandomSource make_rng(const std::optional<std::uint64_t>& seed) {
    return seed ? vpke::RandomSource(*seed) : vpke::RandomSource();
}

std::string fingerprint(const mpz_class& n) {
    // FNV-1a over the canonical hex of N; first 8 hex chars
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : vpke::to_hex(n)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return std::string(buf, 8);
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::string raw = vpke::read_file(path);
    return {raw.begin(), raw.end()};
}

vpke::RecoveryAlgorithm parse_algorithm(const std::string& name) {
    if (name == "exhaustive") return vpke::RecoveryAlgorithm::Exhaustive;
    if (name == "bsgs") return vpke::RecoveryAlgorithm::Bsgs;
    if (name == "rho") return vpke::RecoveryAlgorithm::Rho;
    throw vpke::InvalidInput("unknown algorithm: " + name);
}

int cmd_keygen(const std::string& profile, unsigned bits,
               const std::optional<std::uint64_t>& seed,
               const std::string& out_dir) {
    vpke::SystemParams params = bits != 0
                                    ? vpke::SystemParams::for_bits(bits)
                                    : vpke::SystemParams::profile(profile);
    vpke::RandomSource rng = make_rng(seed);
    auto [pub, priv] = vpke::generate_keypair(params, rng);
    vpke::write_file(out_dir + "/public.key", vpke::emit_public_key(pub));
    vpke::write_file(out_dir + "/private.key", vpke::emit_private_key(priv));
    std::cout << "N: " << vpke::bit_length(pub.n) << " bits\n";
    std::cout << "fingerprint: " << fingerprint(pub.n) << "\n";
    return kExitOk;
}

int cmd_encrypt(const std::string& key_path, const std::string& in_path,
                const std::string& out_path,
                const std::optional<std::uint64_t>& k_seed) {
    vpke::PublicKey pub = vpke::parse_public_key(vpke::read_file(key_path));
    vpke::Plaintext m = vpke::encode_message(read_bytes(in_path), pub.n);
    vpke::RandomSource rng = make_rng(k_seed);
    vpke::Ciphertext ct = vpke::encrypt(pub, m, rng);
    vpke::write_file(out_path, vpke::emit_ciphertext(ct));
    return kExitOk;
}

int cmd_decrypt(const std::string& key_path, const std::string& in_path,
                const std::string& out_path) {
    vpke::PrivateKey priv = vpke::parse_private_key(vpke::read_file(key_path));
    vpke::Ciphertext ct = vpke::parse_ciphertext(vpke::read_file(in_path));
    vpke::Plaintext m =
        vpke::decrypt_with_exponent(priv.s, priv.p * priv.q, ct);
    std::vector<std::uint8_t> bytes = vpke::decode_message(m);
    vpke::write_file(out_path,
                     std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                      bytes.size()));
    return kExitOk;
}

int cmd_escrow_create(const std::string& priv_path, const std::string& pub_path,
                      const std::string& out_path) {
    vpke::PrivateKey priv = vpke::parse_private_key(vpke::read_file(priv_path));
    vpke::PublicKey pub = vpke::parse_public_key(vpke::read_file(pub_path));
    vpke::EscrowPackage pkg = vpke::create_escrow(priv, pub);
    vpke::write_file(out_path, vpke::emit_escrow(pkg));
    return kExitOk;
}

int cmd_escrow_verify(const std::string& pkg_path, const std::string& pub_path,
                      const std::string& policy, unsigned threshold_bits) {
    vpke::EscrowPackage pkg = vpke::parse_escrow(vpke::read_file(pkg_path));
    vpke::PublicKey pub = vpke::parse_public_key(vpke::read_file(pub_path));

    // parameters inferred from the modulus itself
    vpke::SystemParams params;
    params.modulus_bits =
        std::max<unsigned>(2, static_cast<unsigned>(vpke::bit_length(pkg.n)));
    params.factor_threshold_bits =
        threshold_bits != 0 ? threshold_bits
                            : std::max(2u, params.modulus_bits / 4);

    vpke::VerifyPolicy pol = policy == "strict" ? vpke::VerifyPolicy::Strict
                                                : vpke::VerifyPolicy::Basic;
    vpke::VerificationReport report = vpke::verify_escrow(pkg, pub, pol, params);
    for (const auto& check : report.checks) {
        std::cout << "CHECK " << vpke::check_code_name(check.code) << ' '
                  << (check.pass ? "PASS" : "FAIL") << ' ' << check.detail
                  << "\n";
    }
    return report.overall ? kExitOk : kExitVerifyFailed;
}

int cmd_recover(const std::string& pkg_path, const std::string& pub_path,
                const std::string& alg, const std::optional<std::uint64_t>& seed) {
    vpke::EscrowPackage pkg = vpke::parse_escrow(vpke::read_file(pkg_path));
    vpke::PublicKey pub = vpke::parse_public_key(vpke::read_file(pub_path));
    vpke::RandomSource rng = make_rng(seed);
    vpke::RecoveryStats stats;
    vpke::RecoveredSecret secret;
    try {
        secret = vpke::recover_secret(pkg, pub, parse_algorithm(alg), rng, {},
                                      &stats);
    } catch (const vpke::InvalidEscrow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
    std::cout << "S_MOD_ORDER = " << vpke::to_hex(secret.s_mod_order) << "\n";
    std::cout << "ORDER = " << vpke::to_hex(secret.order) << "\n";
    std::fprintf(stderr, "p-side dlog: %.3f ms (%" PRIu64 " group ops)\n",
                 stats.p_side_ms, stats.p_side_ops);
    std::fprintf(stderr, "q-side dlog: %.3f ms (%" PRIu64 " group ops)\n",
                 stats.q_side_ms, stats.q_side_ops);
    return kExitOk;
}

int cmd_bench(const std::vector<unsigned>& bits, unsigned trials,
              const std::string& alg, const std::optional<std::uint64_t>& seed,
              const std::string& out_path) {
    vpke::RandomSource rng = make_rng(seed);
    std::vector<vpke::BenchRecord> records =
        vpke::bench_partiality(bits, trials, parse_algorithm(alg), rng);
    vpke::write_file(out_path, vpke::bench_records_to_csv(records));
    for (unsigned b : bits) {
        std::printf("bits=%u median_ms=%.3f median_ops=%" PRIu64 "\n", b,
                    vpke::median_wall_time_ms(records, b),
                    vpke::median_group_ops(records, b));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verifiable partial key escrow over the McCurley scheme"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    std::string profile = "desk";
    unsigned bits = 0;
    std::string out_dir = ".";
    auto* keygen = app.add_subcommand("keygen", "generate a keypair");
    keygen->add_option("--profile", profile, "toy | desk | bench | production");
    keygen->add_option("--bits", bits, "modulus size in bits (overrides profile)");
    keygen->add_option("--seed", seed, "deterministic generation seed");
    keygen->add_option("--out", out_dir, "output directory");

    std::string key_path, in_path, out_path;
    std::optional<std::uint64_t> k_seed;
    auto* encrypt = app.add_subcommand("encrypt", "encrypt a file (single block)");
    encrypt->add_option("--key", key_path, "public key file")->required();
    encrypt->add_option("--in", in_path, "plaintext file")->required();
    encrypt->add_option("--out", out_path, "ciphertext file")->required();
    encrypt->add_option("--k-seed", k_seed, "seed for the ephemeral exponent");

    std::string d_key, d_in, d_out;
    auto* decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext file");
    decrypt->add_option("--key", d_key, "private key file")->required();
    decrypt->add_option("--in", d_in, "ciphertext file")->required();
    decrypt->add_option("--out", d_out, "plaintext output file")->required();

    std::string ec_priv, ec_pub, ec_out;
    auto* escrow_create =
        app.add_subcommand("escrow-create", "build the TTP deposit");
    escrow_create->add_option("--private", ec_priv, "private key file")->required();
    escrow_create->add_option("--public", ec_pub, "public key file")->required();
    escrow_create->add_option("--out", ec_out, "escrow package file")->required();

    std::string ev_pkg, ev_pub, policy = "strict";
    unsigned threshold_bits = 0;
    auto* escrow_verify =
        app.add_subcommand("escrow-verify", "check the deposit's honesty");
    escrow_verify->add_option("--escrow", ev_pkg, "escrow package file")->required();
    escrow_verify->add_option("--public", ev_pub, "public key file")->required();
    escrow_verify->add_option("--policy", policy, "basic | strict")
        ->check(CLI::IsMember({"basic", "strict"}));
    escrow_verify->add_option("--threshold-bits", threshold_bits,
                              "override the plus-form factor threshold");

    std::string rc_pkg, rc_pub, rc_alg = "bsgs";
    std::optional<std::uint64_t> rc_seed;
    auto* recover =
        app.add_subcommand("recover", "recover the secret from the deposit");
    recover->add_option("--escrow", rc_pkg, "escrow package file")->required();
    recover->add_option("--public", rc_pub, "public key file")->required();
    recover->add_option("--alg", rc_alg, "exhaustive | bsgs | rho")
        ->check(CLI::IsMember({"exhaustive", "bsgs", "rho"}));
    recover->add_option("--seed", rc_seed, "seed for randomized solvers");

    std::vector<unsigned> bench_bits = {16, 20, 24};
    unsigned trials = 5;
    std::string bench_alg = "bsgs", bench_out = "bench.csv";
    std::optional<std::uint64_t> bench_seed;
    auto* bench = app.add_subcommand(
        "bench", "recovery-cost sweep over subgroup sizes (CSV)");
    bench->add_option("--bits", bench_bits, "subgroup bit sizes")
        ->delimiter(',');
    bench->add_option("--trials", trials, "instances per size");
    bench->add_option("--alg", bench_alg, "exhaustive | bsgs | rho")
        ->check(CLI::IsMember({"exhaustive", "bsgs", "rho"}));
    bench->add_option("--seed", bench_seed, "instance generation seed");
    bench->add_option("--out", bench_out, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (keygen->parsed()) return cmd_keygen(profile, bits, seed, out_dir);
        if (encrypt->parsed()) return cmd_encrypt(key_path, in_path, out_path, k_seed);
        if (decrypt->parsed()) return cmd_decrypt(d_key, d_in, d_out);
        if (escrow_create->parsed())
            return cmd_escrow_create(ec_priv, ec_pub, ec_out);
        if (escrow_verify->parsed())
            return cmd_escrow_verify(ev_pkg, ev_pub, policy, threshold_bits);
        if (recover->parsed()) return cmd_recover(rc_pkg, rc_pub, rc_alg, rc_seed);
        if (bench->parsed())
            return cmd_bench(bench_bits, trials, bench_alg, bench_seed, bench_out);
    } catch (const vpke::GenerationExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const vpke::WorkBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const vpke::MemoryBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const vpke::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
