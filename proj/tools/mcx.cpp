#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "mcx/attacks.hpp"
#include "mcx/serialize.hpp"
#include "mcx/shake.hpp"

using namespace mcx;

namespace {

// Exit codes: 0 success/accept, 1 verify reject, 2 malformed input,
// 3 parameter violation, 4 attack not found / budget exhausted.
enum ExitCode : int { kOk = 0, kReject = 1, kBadInput = 2, kBadParams = 3, kAttackFailed = 4 };

struct Options {
    std::string scheme = "ME";
    unsigned m = 0;
    unsigned t = 0;
    std::string seed_hex;
    unsigned threads = 1;
    std::string in_path, out_path, key_path, pub_path;
    std::string sig_path, target, report_path, oracle = "enum", oracle_key_path, forge_out;
    std::uint64_t count = 100;
};

SeededRng make_rng(const std::string& seed_hex) {
    if (seed_hex.empty()) return SeededRng();
    if (seed_hex.size() > 64) throw ParseError("--seed: at most 64 hex characters (32 bytes)");
    std::string hex = seed_hex.size() % 2 ? "0" + seed_hex : seed_hex;
    auto bytes = io::from_hex(hex);
    bytes.resize(32, 0);  // zero-pad short seeds to the full 32-byte key
    return SeededRng(std::span<const std::uint8_t>(bytes));
}

void check_params(unsigned m, unsigned t) {
    if (m < 3 || m > 16) throw std::out_of_range("m must be in [3, 16]");
    if (t < 1 || t > 10) throw std::out_of_range("t must be in [1, 10]");
    const std::size_t n = (t == 1) ? (std::size_t{1} << m) - 1 : (std::size_t{1} << m);
    if (static_cast<std::size_t>(m) * t >= n)
        throw std::out_of_range("mt must stay below the code length");
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::string text = io::read_file(path);
    return {text.begin(), text.end()};
}

BitVector read_plaintext(const std::string& path, std::size_t k) {
    auto bytes = read_bytes(path);
    if (bytes.size() != (k + 7) / 8)
        throw ParseError("plaintext must be exactly ceil(k/8) bytes for k = " + std::to_string(k));
    return BitVector::from_bytes(bytes, k);
}

std::string format_pow2(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "2^%.1Lf", std::log2l(v));
    std::string s(buf);
    if (v < 1e18L) {
        char dec[64];
        std::snprintf(dec, sizeof(dec), " (%.0Lf)", v);
        s += dec;
    }
    return s;
}

int cmd_keygen(const Options& opt) {
    check_params(opt.m, opt.t);
    SeededRng rng = make_rng(opt.seed_hex);
    io::json pub, sec;
    if (opt.scheme == "ME") {
        auto [pk, sk] = me::keygen(opt.m, opt.t, rng);
        pub = io::public_key_json(pk, opt.m);
        sec = io::secret_key_json(sk);
    } else if (opt.scheme == "MME") {
        auto [pk, sk] = mme::keygen(opt.m, opt.t, rng);
        pub = io::public_key_json(pk, opt.m);
        sec = io::secret_key_json(sk);
    } else if (opt.scheme == "LYHW19") {
        auto [pk, sk] = lyhw19::keygen(opt.m, opt.t, rng);
        pub = io::public_key_json(pk, opt.m);
        sec = io::secret_key_json(sk);
    } else {
        throw std::out_of_range("unknown scheme: " + opt.scheme);
    }
    io::write_file(opt.pub_path, io::dump(pub));
    io::write_file(opt.key_path, io::dump(sec));
    std::cout << opt.scheme << " keypair written: " << opt.pub_path << ", " << opt.key_path
              << "\n";
    return kOk;
}

int cmd_encrypt(const Options& opt) {
    auto pk = io::public_key_from_json(io::read_json(opt.pub_path));
    SeededRng rng = make_rng(opt.seed_hex);
    io::json ct;
    if (pk.me) {
        BitVector msg = read_plaintext(opt.in_path, pk.me->G_pub.rows());
        ct = io::ciphertext_json(me::encrypt(msg, *pk.me, rng));
    } else if (pk.mme) {
        BitVector msg = read_plaintext(opt.in_path, pk.mme->Gp.rows());
        ct = io::ciphertext_json(mme::encrypt(msg, *pk.mme, rng));
    } else {
        throw ParseError("encrypt: key scheme does not encrypt (use ME or MME)");
    }
    io::write_file(opt.out_path, io::dump(ct));
    return kOk;
}

int cmd_decrypt(const Options& opt) {
    auto sk = io::secret_key_from_json(io::read_json(opt.key_path));
    auto ct_json = io::read_json(opt.in_path);
    BitVector msg;
    if (sk.me) {
        msg = me::decrypt(io::me_ciphertext_from_json(ct_json), *sk.me);
    } else if (sk.mme) {
        msg = mme::decrypt(io::mme_ciphertext_from_json(ct_json), *sk.mme);
    } else {
        throw ParseError("decrypt: key scheme does not decrypt (use ME or MME)");
    }
    auto bytes = msg.to_bytes();
    io::write_file(opt.out_path, std::string(bytes.begin(), bytes.end()));
    return kOk;
}

int cmd_sign(const Options& opt) {
    auto sk = io::secret_key_from_json(io::read_json(opt.key_path));
    if (!sk.lyhw19) throw ParseError("sign: key is not a LYHW19 secret key");
    auto msg = read_bytes(opt.in_path);
    lyhw19::Signature sig = lyhw19::sign(msg, *sk.lyhw19);
    io::write_file(opt.out_path, io::dump(io::signature_json(sig)));
    return kOk;
}

int cmd_verify(const Options& opt) {
    auto pk = io::public_key_from_json(io::read_json(opt.pub_path));
    if (!pk.lyhw19) throw ParseError("verify: key is not a LYHW19 public key");
    auto msg = read_bytes(opt.in_path);
    lyhw19::Signature sig = io::signature_from_json(io::read_json(opt.sig_path));
    if (lyhw19::verify(msg, sig, *pk.lyhw19)) {
        std::cout << "accept\n";
        return kOk;
    }
    std::cout << "reject\n";
    return kReject;
}

void print_estimate(const attacks::CostEstimate& est) {
    std::cout << "parameters: m=" << est.m << " t=" << est.t << " n=" << est.n << "\n";
    if (est.exact_candidates)
        std::cout << "irreducible degree-" << est.t << " polynomials (exact): "
                  << *est.exact_candidates << "\n";
    std::cout << "candidate estimate 2^(mt)/t:       " << format_pow2(est.paper_candidates)
              << "\n";
    if (est.reduced_degenerate)
        std::cout << "reduced estimate 2^(m(t-3))/(mt):  formula degenerates for t < 3 (value "
                  << est.reduced_candidates << " < 1)\n";
    else
        std::cout << "reduced estimate 2^(m(t-3))/(mt):  " << format_pow2(est.reduced_candidates)
                  << "\n";
    std::cout << "equivalence test per candidate:    ~n^3 = "
              << format_pow2(est.ssa_ops_per_candidate) << " ops\n";
    std::cout << "total enumeration work:            ~" << format_pow2(est.total_ops) << " ops\n";
}

int cmd_estimate(const Options& opt) {
    check_params(opt.m, opt.t);
    print_estimate(attacks::cost_estimate(opt.m, opt.t));
    return kOk;
}

io::json report_json(const attacks::EnumReport& rep, const std::string& target,
                     const std::string& fingerprint) {
    return io::json{{"target", target},
                    {"candidates", rep.candidates},
                    {"ssa_inequivalent", rep.ssa_inequivalent},
                    {"ssa_degenerate", rep.ssa_degenerate},
                    {"dim_skipped", rep.dim_skipped},
                    {"winner_index", rep.winner_index},
                    {"seconds", rep.seconds},
                    {"recovered_key_fingerprint", fingerprint}};
}

std::string fingerprint(const io::json& key) {
    auto text = io::dump(key);
    auto digest = shake256(
        std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()),
                                      text.size()),
        8);
    return io::to_hex(digest);
}

int cmd_attack(const Options& opt) {
    auto pk = io::public_key_from_json(io::read_json(opt.pub_path));
    SeededRng rng = make_rng(opt.seed_hex);

    if (opt.target == "mme-reduction") {
        if (!pk.mme) throw ParseError("mme-reduction needs an MME public key");
        attacks::MeOracle oracle;
        if (opt.oracle == "planted") {
            if (opt.oracle_key_path.empty())
                throw ParseError("--oracle planted requires --oracle-key");
            auto osk = io::secret_key_from_json(io::read_json(opt.oracle_key_path));
            if (!osk.mme) throw ParseError("--oracle-key must be the victim MME secret key");
            // Simulates a perfect ME key-recovery forger: hands back the
            // hidden factorisation (A, P, D_C) of G'.
            me::SecretKey planted{osk.mme->A, osk.mme->P, osk.mme->code};
            oracle = [planted](const me::PublicKey&) { return planted; };
        } else if (opt.oracle == "enum") {
            if (pk.m > 8) {
                std::cerr << "enumeration oracle refused: m = " << pk.m
                          << " exceeds desk scale (m <= 8); cost estimate below\n";
                print_estimate(attacks::cost_estimate(pk.m, pk.mme->t));
                return kAttackFailed;
            }
            unsigned m = pk.m;
            unsigned threads = opt.threads;
            oracle = [m, threads](const me::PublicKey& target_pk) {
                attacks::EnumOptions eopts;
                eopts.threads = threads;
                auto sk = attacks::me_keyrecovery_enum(target_pk, m, eopts);
                if (!sk) throw OracleFailure("enumeration found no equivalent Goppa code");
                return std::move(*sk);
            };
        } else {
            throw std::out_of_range("--oracle must be enum or planted");
        }

        auto started = std::chrono::steady_clock::now();
        std::optional<mme::SecretKey> forged;
        try {
            forged = attacks::mme_forger(*pk.mme, oracle, rng);
        } catch (const OracleFailure& e) {
            std::cerr << "key recovery failed: " << e.what() << "\n";
            print_estimate(attacks::cost_estimate(pk.m, pk.mme->t));
            return kAttackFailed;
        }
        mme::SecretKey recovered = std::move(*forged);
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

        io::json key_json = io::secret_key_json(recovered);
        if (!opt.out_path.empty()) io::write_file(opt.out_path, io::dump(key_json));

        // Demonstrate recovery: a fresh challenge ciphertext decrypts.
        BitVector challenge = BitVector::random(pk.mme->Gp.rows(), rng);
        bool ok = mme::decrypt(mme::encrypt(challenge, *pk.mme, rng), recovered) == challenge;
        std::cout << "mme-reduction: recovered secret key in " << seconds << " s; challenge "
                  << (ok ? "decrypts" : "FAILED") << "\n";
        if (!opt.report_path.empty()) {
            io::json rep{{"target", "mme-reduction"},
                         {"oracle", opt.oracle},
                         {"seconds", seconds},
                         {"challenge_ok", ok},
                         {"recovered_key_fingerprint", fingerprint(key_json)}};
            io::write_file(opt.report_path, rep.dump(2));
        }
        return ok ? kOk : kAttackFailed;
    }

    if (opt.target == "lyhw19-keyrecovery") {
        if (!pk.lyhw19) throw ParseError("lyhw19-keyrecovery needs a LYHW19 public key");
        if (pk.m > 8) {
            std::cerr << "attack refused: m = " << pk.m
                      << " exceeds desk scale (m <= 8); cost estimate below\n";
            print_estimate(attacks::cost_estimate(pk.m, pk.lyhw19->t));
            return kAttackFailed;
        }
        attacks::EnumOptions eopts;
        eopts.threads = opt.threads;
        attacks::EnumReport rep;
        auto recovered = attacks::lyhw19_forger(*pk.lyhw19, pk.m, rng, eopts, &rep);
        if (!recovered) {
            std::cerr << "key recovery failed: enumeration exhausted\n";
            print_estimate(attacks::cost_estimate(pk.m, pk.lyhw19->t));
            return kAttackFailed;
        }
        io::json key_json = io::secret_key_json(recovered->sk);
        if (!opt.out_path.empty()) io::write_file(opt.out_path, io::dump(key_json));
        std::cout << "lyhw19-keyrecovery: recovered functionally equivalent key in "
                  << rep.seconds << " s after " << rep.candidates << " candidates\n";

        io::json rep_json = report_json(rep, "lyhw19-keyrecovery", fingerprint(key_json));
        rep_json["victim_signature_partition"] =
            equiv::signature_partition_dump(equiv::CodeHandle(pk.lyhw19->Gp));
        if (!opt.in_path.empty()) {
            // Forge on the user-supplied message; the stock verifier must
            // accept it.
            auto msg = read_bytes(opt.in_path);
            lyhw19::Signature forged = lyhw19::sign(msg, recovered->sk);
            if (!lyhw19::verify(msg, forged, *pk.lyhw19)) {
                std::cerr << "forged signature unexpectedly rejected\n";
                return kAttackFailed;
            }
            if (!opt.forge_out.empty())
                io::write_file(opt.forge_out, io::dump(io::signature_json(forged)));
            rep_json["forgery"] = {{"message_bytes", msg.size()},
                                   {"i1", forged.i1},
                                   {"i2", forged.i2},
                                   {"verified", true}};
            std::cout << "forged signature on " << opt.in_path << " accepted by the verifier\n";
        }
        if (!opt.report_path.empty()) io::write_file(opt.report_path, rep_json.dump(2));
        return kOk;
    }

    throw std::out_of_range("--target must be mme-reduction or lyhw19-keyrecovery");
}

int cmd_bench(const Options& opt) {
    SeededRng rng = make_rng(opt.seed_hex);
    std::optional<lyhw19::SecretKey> sk;
    if (!opt.key_path.empty()) {
        auto loaded = io::secret_key_from_json(io::read_json(opt.key_path));
        if (!loaded.lyhw19) throw ParseError("bench: key is not a LYHW19 secret key");
        sk = std::move(*loaded.lyhw19);
    } else {
        check_params(opt.m, opt.t);
        sk = lyhw19::keygen(opt.m, opt.t, rng).second;
    }
    const unsigned t = sk->code.params().t;

    std::map<std::uint64_t, std::uint64_t> histogram;
    double sum = 0, sum_sq = 0;
    auto started = std::chrono::steady_clock::now();
    for (std::uint64_t i = 0; i < opt.count; ++i) {
        std::vector<std::uint8_t> msg(32);
        rng.fill(msg);
        lyhw19::SignStats stats;
        lyhw19::sign(msg, *sk, &stats);
        const double total = static_cast<double>(stats.total());
        sum += total;
        sum_sq += total * total;
        ++histogram[stats.total()];
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    const double n = static_cast<double>(opt.count);
    const double mean = sum / n;
    const double variance = sum_sq / n - mean * mean;
    double ref = 2;
    for (unsigned i = 2; i <= t; ++i) ref *= i;  // 2 * t!

    std::cout << "signatures:            " << opt.count << "\n";
    std::cout << "decode attempts/sig:   mean " << mean << ", variance " << variance << "\n";
    std::cout << "reference 2*t!:        " << ref << " (ratio " << mean / ref << ")\n";
    std::cout << "wall clock:            " << seconds << " s (" << seconds / n * 1e3
              << " ms/signature)\n";
    std::cout << "attempts histogram:\n";
    for (const auto& [attempts, count] : histogram)
        std::cout << "  " << attempts << ": " << count << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Code-based crypto toolbox: McEliece (ME), Modified McEliece (MME), the "
                 "LYHW19 signature, and structural key-recovery attacks"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed_hex, "hex seed (up to 64 chars) for reproducible runs");
    };

    auto* keygen = app.add_subcommand("keygen", "generate a keypair");
    keygen->add_option("--scheme", opt.scheme, "ME | MME | LYHW19")->required();
    keygen->add_option("--m", opt.m, "extension degree (3..16)")->required();
    keygen->add_option("--t", opt.t, "error weight (1..10)")->required();
    keygen->add_option("--pub", opt.pub_path, "public key output")->required();
    keygen->add_option("--key", opt.key_path, "secret key output")->required();
    add_common(keygen);

    auto* encrypt = app.add_subcommand("encrypt", "encrypt a k-bit plaintext file");
    encrypt->add_option("--pub", opt.pub_path)->required();
    encrypt->add_option("--in", opt.in_path, "plaintext (ceil(k/8) bytes)")->required();
    encrypt->add_option("--out", opt.out_path, "ciphertext JSON")->required();
    add_common(encrypt);

    auto* decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext file");
    decrypt->add_option("--key", opt.key_path)->required();
    decrypt->add_option("--in", opt.in_path, "ciphertext JSON")->required();
    decrypt->add_option("--out", opt.out_path, "plaintext output")->required();

    auto* sign = app.add_subcommand("sign", "sign a message file (LYHW19)");
    sign->add_option("--key", opt.key_path)->required();
    sign->add_option("--in", opt.in_path, "message file")->required();
    sign->add_option("--out", opt.out_path, "signature JSON")->required();

    auto* verify = app.add_subcommand("verify", "verify a signature (exit 0 accept, 1 reject)");
    verify->add_option("--pub", opt.pub_path)->required();
    verify->add_option("--in", opt.in_path, "message file")->required();
    verify->add_option("--sig", opt.sig_path, "signature JSON")->required();

    auto* attack = app.add_subcommand("attack", "run a key-recovery attack on a public key");
    attack->add_option("--target", opt.target, "mme-reduction | lyhw19-keyrecovery")->required();
    attack->add_option("--pub", opt.pub_path, "victim public key")->required();
    attack->add_option("--out", opt.out_path, "recovered secret key output");
    attack->add_option("--in", opt.in_path, "message to forge (lyhw19-keyrecovery)");
    attack->add_option("--forge-out", opt.forge_out, "forged signature output");
    attack->add_option("--report", opt.report_path, "attack report JSON");
    attack->add_option("--threads", opt.threads, "parallel candidate scan width");
    attack->add_option("--oracle", opt.oracle, "mme-reduction oracle: enum | planted");
    attack->add_option("--oracle-key", opt.oracle_key_path, "secret key for the planted oracle");
    add_common(attack);

    auto* bench = app.add_subcommand("bench", "measure signing cost (decode attempts)");
    bench->add_option("--m", opt.m);
    bench->add_option("--t", opt.t);
    bench->add_option("--key", opt.key_path, "existing LYHW19 secret key (else keygen in place)");
    bench->add_option("--count", opt.count, "number of signatures")->required();
    add_common(bench);

    auto* estimate = app.add_subcommand("estimate", "print attack cost estimates");
    estimate->add_option("--m", opt.m)->required();
    estimate->add_option("--t", opt.t)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (app.got_subcommand(keygen)) return cmd_keygen(opt);
        if (app.got_subcommand(encrypt)) return cmd_encrypt(opt);
        if (app.got_subcommand(decrypt)) return cmd_decrypt(opt);
        if (app.got_subcommand(sign)) return cmd_sign(opt);
        if (app.got_subcommand(verify)) return cmd_verify(opt);
        if (app.got_subcommand(attack)) return cmd_attack(opt);
        if (app.got_subcommand(bench)) return cmd_bench(opt);
        if (app.got_subcommand(estimate)) return cmd_estimate(opt);
    } catch (const std::out_of_range& e) {
        std::cerr << "parameter violation: " << e.what() << "\n";
        return kBadParams;
    } catch (const ParseError& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return kBadInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kOk;
}
