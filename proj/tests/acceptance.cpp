// Acceptance suite: one line per criterion. Exercises the library and the
// vpke CLI binary (path in argv[1]).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vpke/bench.hpp"
#include "vpke/escrow.hpp"
#include "vpke/io.hpp"

using namespace vpke;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_tmp;
int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("CRITERION %d %s %s\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

int run_cli(const std::string& args, std::string* output = nullptr) {
    fs::path out = g_tmp / "cli_output.txt";
    std::string cmd = g_cli + " " + args + " > " + out.string() + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    if (output) *output = read_file(out.string());
    if (rc == -1) return -1;
    return WEXITSTATUS(rc);
}

// Criterion 1: the toy worked-example suite, every value confirmed by an
// independent exhaustive oracle before being asserted exactly.
void criterion_1() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;

    auto expect = [&](bool cond, const char* what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    };

    expect(oracle::naive_mod_pow(16, 7, 253) == 179, "oracle y");
    auto [pub, priv] = key_from_secret(11, 23, 7);
    expect(pub.y == 179, "y = 179");

    expect(oracle::naive_mod_pow(16, 3, 253) == 48, "oracle u");
    expect((100 * oracle::naive_mod_pow(179, 3, 253)) % 253 == 104, "oracle t");
    Ciphertext ct = encrypt_with_ephemeral(pub, {100}, 3);
    expect(ct.u == 48 && ct.t == 104, "ciphertext (48, 104)");

    expect(*oracle::naive_mod_inv(oracle::naive_mod_pow(48, 7, 253), 253) *
                   104 % 253 ==
               100,
           "oracle decrypt");
    expect(decrypt(priv, pub, ct).m == 100, "decrypt -> 100");

    EscrowPackage pkg = create_escrow(priv, pub);
    expect(pkg.n == 253 && pkg.factor == 11, "escrow {253, 11}");

    SystemParams params = SystemParams::profile("toy");
    params.modulus_bits = 8;
    VerificationReport rep = verify_escrow(pkg, pub, VerifyPolicy::Strict, params);
    expect(rep.checks.size() == 12 && rep.overall, "strict verification");

    expect(oracle::naive_dlog(16 % 11, 179 % 11, 11, 5) == mpz_class(2),
           "oracle e_p");
    expect(oracle::naive_dlog(16 % 23, 179 % 23, 23, 11) == mpz_class(7),
           "oracle e_q");
    expect(oracle::crt_scan(2, 5, 7, 11) == mpz_class(7), "oracle CRT");
    RandomSource rng(1);
    RecoveredSecret secret =
        recover_secret(pkg, pub, RecoveryAlgorithm::Exhaustive, rng);
    expect(secret.s_mod_order == 7 && secret.order == 55, "recovery 7 mod 55");

    expect(recover_and_decrypt(pkg, pub, ct, RecoveryAlgorithm::Bsgs, rng).m ==
               100,
           "recover_and_decrypt -> 100");

    // the same example through the CLI, with a k-seed that lands on k = 3
    fs::path dir = g_tmp / "toy";
    fs::create_directories(dir);
    write_file((dir / "public.key").string(), emit_public_key(pub));
    write_file((dir / "private.key").string(), emit_private_key(priv));
    write_file((dir / "m.bin").string(), std::string(1, '\x64'));
    std::uint64_t k_seed = 0;
    bool found = false;
    for (std::uint64_t s = 0; s < 2000000 && !found; ++s) {
        RandomSource probe(s);
        if (probe.range(1, mpz_class(1) << bit_length(pub.n)) == 3) {
            k_seed = s;
            found = true;
        }
    }
    expect(found, "k-seed search");
    if (found) {
        int rc = run_cli("encrypt --key " + (dir / "public.key").string() +
                         " --in " + (dir / "m.bin").string() + " --out " +
                         (dir / "ct.txt").string() + " --k-seed " +
                         std::to_string(k_seed));
        expect(rc == 0, "cli encrypt exit 0");
        expect(read_file((dir / "ct.txt").string()) ==
                   "MCCURLEY-CIPHERTEXT v1\nu = 30\nt = 68\n",
               "cli ciphertext bytes");
        rc = run_cli("decrypt --key " + (dir / "private.key").string() +
                     " --in " + (dir / "ct.txt").string() + " --out " +
                     (dir / "m.out").string());
        expect(rc == 0 && read_file((dir / "m.out").string()) == "\x64",
               "cli decrypt round trip");
    }

    double elapsed = seconds_since(start);
    expect(elapsed < 1.0, "runtime under 1 s");
    report(1, ok,
           ok ? "toy worked-example suite (" + std::to_string(elapsed) + " s)"
              : "failed at: " + why);
}

// Criterion 2: 1000 random (keypair, message) round trips at desk profile.
void criterion_2() {
    auto start = std::chrono::steady_clock::now();
    SystemParams params = SystemParams::profile("desk");
    RandomSource rng(2);
    int passed = 0;
    for (int i = 0; i < 1000; ++i) {
        auto [pub, priv] = generate_keypair(params, rng);
        mpz_class m;
        do {
            m = 1 + rng.below(pub.n - 1);
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), pub.n.get_mpz_t());
            if (g == 1) break;
        } while (true);
        Ciphertext ct = encrypt(pub, {m}, rng);
        if (decrypt(priv, pub, ct).m == m) ++passed;
    }
    double elapsed = seconds_since(start);
    bool ok = passed == 1000 && elapsed < 30.0;
    report(2, ok,
           std::to_string(passed) + "/1000 round trips, " +
               std::to_string(elapsed) + " s");
}

// Criterion 3: recovery equals S mod p'q' for every algorithm.
void criterion_3() {
    auto start = std::chrono::steady_clock::now();
    RandomSource rng(3);
    int passed = 0, total = 0;
    for (int i = 0; i < 100; ++i) {
        bool toy = i < 50;
        SystemParams params = SystemParams::profile(toy ? "toy" : "desk");
        auto [pub, priv] = generate_keypair(params, rng);
        EscrowPackage pkg = create_escrow(priv, pub);
        mpz_class order = ((priv.p - 1) / 2) * ((priv.q - 1) / 2);
        mpz_class want = priv.s % order;

        std::vector<RecoveryAlgorithm> algs = {RecoveryAlgorithm::Bsgs,
                                               RecoveryAlgorithm::Rho};
        if (toy) algs.push_back(RecoveryAlgorithm::Exhaustive);
        mpz_class first = -1;
        bool all_equal = true;
        for (auto alg : algs) {
            ++total;
            RecoveredSecret secret = recover_secret(pkg, pub, alg, rng);
            if (secret.s_mod_order == want && secret.order == order) ++passed;
            if (first == -1) first = secret.s_mod_order;
            all_equal &= secret.s_mod_order == first;
        }
        if (!all_equal) passed = -1000000;
    }
    double elapsed = seconds_since(start);
    bool ok = passed == total && elapsed < 120.0;
    report(3, ok,
           std::to_string(passed) + "/" + std::to_string(total) +
               " recoveries, " + std::to_string(elapsed) + " s");
}

// Criterion 4: independency across 100 rekeys of one keypair.
void criterion_4() {
    SystemParams params = SystemParams::profile("desk");
    RandomSource rng(4);
    auto [pub, priv] = generate_keypair(params, rng);
    EscrowPackage pkg = create_escrow(priv, pub);
    std::string frozen = emit_escrow(pkg);
    mpz_class order = ((priv.p - 1) / 2) * ((priv.q - 1) / 2);

    int passed = 0;
    for (int i = 0; i < 100; ++i) {
        auto [pub2, priv2] = rekey(priv, rng);
        pub = pub2;
        priv = priv2;
        if (emit_escrow(create_escrow(priv, pub)) != frozen) continue;
        if (!verify_escrow(pkg, pub, VerifyPolicy::Strict, params).overall)
            continue;
        RecoveredSecret secret =
            recover_secret(pkg, pub, RecoveryAlgorithm::Bsgs, rng);
        if (secret.s_mod_order == priv.s % order) ++passed;
    }
    report(4, passed == 100, std::to_string(passed) + "/100 rekeys");
}

// Criterion 5: exhaustive vs BSGS vs rho on 500 random prime-order instances.
void criterion_5() {
    RandomSource rng(5);
    int passed = 0;
    for (int i = 0; i < 500; ++i) {
        SystemParams params;
        params.strict_plus_form = false;
        // a few small (bits, profile) pairs have no safe prime; redraw
        mpz_class r;
        ResidueProfile profile;
        for (;;) {
            unsigned bits = 6 + static_cast<unsigned>(rng.word() % 14);  // <= 19
            profile = rng.word() % 2 == 0 ? ResidueProfile::P3mod8
                                          : ResidueProfile::Q7mod8;
            try {
                r = generate_form_prime(bits, profile, params, rng).value;
                break;
            } catch (const GenerationExhausted&) {
            }
        }
        mpz_class order = subgroup_order(r, profile);
        mpz_class e = rng.below(order);
        DlogInstance inst{mpz_class(16 % r), mod_pow(16, e, r), r, order};

        mpz_class a = dlog_exhaustive(inst).exponent;
        mpz_class b = dlog_bsgs(inst).exponent;
        mpz_class c = dlog_pollard_rho(inst, rng).exponent;
        if (a == e && b == e && c == e) ++passed;
    }
    report(5, passed == 500, std::to_string(passed) + "/500 instances agree");
}

// Criterion 6: partiality cost curve through the CLI bench command.
void criterion_6() {
    auto start = std::chrono::steady_clock::now();
    fs::path csv = g_tmp / "bench.csv";
    int rc = run_cli("bench --bits 16,20,24,28,32 --trials 5 --alg bsgs "
                     "--seed 6 --out " +
                     csv.string());
    if (rc != 0) {
        report(6, false, "bench exited with " + std::to_string(rc));
        return;
    }
    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    if (line != "subgroup_bits,algorithm,trial,wall_time_ms,group_ops") {
        report(6, false, "bad CSV header");
        return;
    }
    std::vector<BenchRecord> records;
    int rows = 0;
    while (std::getline(in, line)) {
        BenchRecord r;
        char alg[32];
        if (std::sscanf(line.c_str(), "%u,%31[^,],%u,%lf,%lu", &r.subgroup_bits,
                        alg, &r.trial, &r.wall_time_ms, &r.group_ops) != 5) {
            report(6, false, "unparseable CSV row");
            return;
        }
        r.algorithm = alg;
        records.push_back(r);
        ++rows;
    }
    bool ok = rows == 25;
    std::string detail;
    double prev_ms = -1;
    for (unsigned b : {16u, 20u, 24u, 28u, 32u}) {
        double med_ms = median_wall_time_ms(records, b);
        double med_ops = static_cast<double>(median_group_ops(records, b));
        double target = std::pow(2.0, b / 2.0 + 1.0);
        bool ops_ok = med_ops >= target / 2.0 && med_ops <= target * 2.0;
        bool time_ok = med_ms > prev_ms;
        ok &= ops_ok && time_ok;
        prev_ms = med_ms;
        char buf[96];
        std::snprintf(buf, sizeof(buf), " b=%u ops=%.0f ms=%.3f", b, med_ops,
                      med_ms);
        detail += buf;
    }
    double elapsed = seconds_since(start);
    ok &= elapsed < 600.0;
    report(6, ok, detail + " (" + std::to_string(elapsed) + " s)");
}

// Criterion 7: hostile-package corpus. Each entry names the check its
// corruption targets; that check must fail, everything before it must pass,
// and the CLI must exit 1.
void criterion_7() {
    struct Hostile {
        const char* name;
        EscrowPackage pkg;
        PublicKey pub;
        VerifyPolicy policy;
        CheckCode intended;
        bool expect_single_failure;
        unsigned threshold_override;  // 0 = none
    };

    // supporting values for the crafted packages
    mpz_class n_pq167 = mpz_class(11) * 23 * 167;  // composite "factor" case
    PublicKey pub_toy{253, 179};
    PublicKey pub_759{759, 16};
    PublicKey pub_pq167{n_pq167, 16};
    PublicKey pub_2347{1081, mod_pow(16, 3, 1081)};    // 23 * 47, both 7 mod 8
    PublicKey pub_1159{649, mod_pow(16, 3, 649)};      // 11 * 59, 59 is 3 mod 8
    PublicKey pub_5971{4189, mod_pow(16, 5, 4189)};    // 59 * 71, 35 composite
    PublicKey pub_11167{1837, mod_pow(16, 2, 1837)};   // 11 * 167, p undersized
    PublicKey pub_bad_y{253, 2};                        // 2 not a power of 16

    std::vector<Hostile> corpus = {
        {"non-dividing factor", {253, 13, {}, {}}, pub_toy,
         VerifyPolicy::Strict, CheckCode::FACTOR_DIVIDES, true, 0},
        {"factor = n", {253, 253, {}, {}}, pub_toy, VerifyPolicy::Strict,
         CheckCode::FACTOR_NONTRIVIAL, true, 0},
        {"factor = 1", {253, 1, {}, {}}, pub_toy, VerifyPolicy::Strict,
         CheckCode::FACTOR_NONTRIVIAL, true, 0},
        {"factor = 0", {253, 0, {}, {}}, pub_toy, VerifyPolicy::Strict,
         CheckCode::FACTOR_NONTRIVIAL, true, 0},
        {"composite cofactor", {759, 3, {}, {}}, pub_759, VerifyPolicy::Basic,
         CheckCode::Q_PRIME, true, 0},
        {"composite factor", {n_pq167, 253, {}, {}}, pub_pq167,
         VerifyPolicy::Basic, CheckCode::P_PRIME, true, 0},
        {"wrong residue p", {1081, 23, {}, {}}, pub_2347, VerifyPolicy::Strict,
         CheckCode::P_RESIDUE, true, 0},
        // 59 = 3 mod 8 as cofactor also breaks the (q+1)/8 form, so this one
        // fails Q_PLUS_FORM alongside the targeted residue check
        {"wrong residue q", {649, 11, {}, {}}, pub_1159, VerifyPolicy::Strict,
         CheckCode::Q_RESIDUE, false, 0},
        {"non-safe prime q", {4189, 59, {}, {}}, pub_5971, VerifyPolicy::Strict,
         CheckCode::Q_SAFE, true, 2},
        {"undersized prime", {1837, 11, {}, {}}, pub_11167,
         VerifyPolicy::Strict, CheckCode::SIZE_BOUNDS, true, 0},
        {"y outside subgroup", {253, 11, {}, {}}, pub_bad_y,
         VerifyPolicy::Strict, CheckCode::Y_IN_SUBGROUP, true, 0},
    };

    int passed = 0;
    std::string detail;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Hostile& h = corpus[i];
        SystemParams params;
        params.modulus_bits =
            static_cast<unsigned>(bit_length(h.pkg.n) ? bit_length(h.pkg.n) : 16);
        params.factor_threshold_bits =
            h.threshold_override ? h.threshold_override
                                 : std::max(2u, params.modulus_bits / 4);

        VerificationReport rep = verify_escrow(h.pkg, h.pub, h.policy, params);
        const CheckResult* target = rep.find(h.intended);
        bool lib_ok = !rep.overall && target && !target->pass;
        if (h.expect_single_failure)
            for (const auto& c : rep.checks)
                if (!c.pass && c.code != h.intended) lib_ok = false;

        // through the CLI as files
        fs::path dir = g_tmp / ("hostile_" + std::to_string(i));
        fs::create_directories(dir);
        write_file((dir / "pkg.escrow").string(), emit_escrow(h.pkg));
        write_file((dir / "public.key").string(), emit_public_key(h.pub));
        std::string args = "escrow-verify --escrow " +
                           (dir / "pkg.escrow").string() + " --public " +
                           (dir / "public.key").string() + " --policy " +
                           (h.policy == VerifyPolicy::Strict ? "strict" : "basic");
        if (h.threshold_override)
            args += " --threshold-bits " + std::to_string(h.threshold_override);
        std::string output;
        int rc = run_cli(args, &output);
        bool cli_ok =
            rc == 1 &&
            output.find(std::string("CHECK ") + check_code_name(h.intended) +
                        " FAIL") != std::string::npos;

        if (lib_ok && cli_ok) {
            ++passed;
        } else {
            detail += std::string(" [") + h.name + "]";
        }
    }
    report(7, passed == static_cast<int>(corpus.size()),
           std::to_string(passed) + "/" + std::to_string(corpus.size()) +
               " hostile packages" + detail);
}

// Criterion 8: seeded keygen is byte-identical across runs.
void criterion_8() {
    fs::path a = g_tmp / "det_a", b = g_tmp / "det_b";
    fs::create_directories(a);
    fs::create_directories(b);
    int rc1 = run_cli("keygen --seed 42 --profile desk --out " + a.string());
    int rc2 = run_cli("keygen --seed 42 --profile desk --out " + b.string());
    bool ok = rc1 == 0 && rc2 == 0 &&
              read_file((a / "public.key").string()) ==
                  read_file((b / "public.key").string()) &&
              read_file((a / "private.key").string()) ==
                  read_file((b / "private.key").string());
    report(8, ok, "keygen --seed 42 twice, files byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-vpke-cli>\n";
        return 2;
    }
    g_cli = argv[1];
    g_tmp = fs::temp_directory_path() / "vpke_acceptance";
    fs::remove_all(g_tmp);
    fs::create_directories(g_tmp);

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();

    if (g_failures == 0) {
        std::printf("ALL CRITERIA PASS\n");
        return 0;
    }
    std::printf("%d CRITERIA FAILED\n", g_failures);
    return 1;
}
