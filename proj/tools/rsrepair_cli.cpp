// Command-line front end: leakage-attack demo, scheme verification,
// transcript leak/repair/decode, exponential-sum queries, bandwidth reports.
//
// Exit codes: 0 success/pass, 1 usage or parse error, 2 search budget
// exceeded, 3 negative verdict (fail / ambiguous / inconsistent).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsrepair/rsrepair.hpp"

namespace {

using namespace rsrepair;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitFail = 3;

u64 search_budget() {
    if (const char* env = std::getenv("RSREPAIR_BUDGET")) {
        char* end = nullptr;
        u64 v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultSearchBudget;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump() << "\n";
    } else {
        std::ofstream ofs(out_path);
        ofs << j.dump() << "\n";
    }
}

std::string read_file(const std::string& path) {
    std::ifstream ifs(path, std::ios::binary);
    if (!ifs) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << ifs.rdbuf();
    return ss.str();
}

std::vector<u64> parse_u64_list(const std::string& csv) {
    std::vector<u64> out;
    if (csv.empty()) return out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    return out;
}

json poly_json(const Poly& f) { return json(f.normalized()); }

json verdict_json(const Verdict& v) {
    json j{{"pass", v.pass}, {"work", v.work}};
    if (v.counterexample) j["counterexample"] = poly_json(*v.counterexample);
    return j;
}

double wall_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

// ---- attack ---------------------------------------------------------------

int cmd_attack(u64 p, u64 n, u64 secret, u64 seed, u64 ell, int check_mode,
               const std::string& emit_transcript, const std::string& out) {
    RepairScheme scheme = kloosterman_repair_scheme(p, n, ell);
    const PrimeField& F = scheme.field();
    if (secret >= p) throw BadIndex("secret must lie in F_p");

    bool do_check = check_mode == 1 || (check_mode == 2 && p < 10000);
    if (check_mode == 2 && p >= 10000)
        std::cerr << "warning: skipping instance verification at p >= 10^4\n";

    if (do_check) {
        Verdict v = check_repair_condition(F, window_constraints(scheme),
                                           scheme.failed_alpha(), scheme.k(),
                                           scheme.t(), search_budget());
        if (!v.pass)
            throw UnverifiedInstance("instance (p=" + std::to_string(p) +
                                     ", n=" + std::to_string(n) +
                                     ") fails the repair condition");
    }

    // Dealer: random polynomial of degree <= k-1 with f(0) = secret.
    SplitMix64 rng(seed);
    std::vector<u64> coeffs(scheme.k());
    coeffs[0] = secret;
    for (std::size_t i = 1; i < coeffs.size(); ++i) coeffs[i] = rng.below(p);
    Poly f{F, coeffs};

    Transcript tr = leak_transcript(scheme, f);
    if (!emit_transcript.empty())
        emit(transcript_to_json(SchemeVariant(scheme), tr), emit_transcript);

    u64 recovered = repair(scheme, tr, search_budget());
    u64 truth = f.eval(scheme.failed_alpha());

    json report{{"p", p},
                {"n", n},
                {"ell", ell},
                {"seed", seed},
                {"secret", secret},
                {"ground_truth", truth},
                {"recovered", recovered},
                {"success", recovered == truth},
                {"checked", do_check},
                {"bits_per_party", scheme.bits_per_node()},
                {"total_bits", scheme.bandwidth_bits()},
                {"trivial_bits", trivial_repair_bits(p, scheme.k())},
                {"version", kVersion}};
    emit(report, out);
    return recovered == truth ? kExitOk : kExitFail;
}

// ---- verify ---------------------------------------------------------------

std::vector<WindowConstraint> repair_constraints(const PrimeField& F, u64 n,
                                                 u64 ell,
                                                 const std::string& gamma_mode) {
    std::vector<WindowConstraint> cons;
    for (u64 i = 0; i <= n; ++i) {
        if (i == ell) continue;
        u64 diff = F.sub(i % F.p(), ell % F.p());
        u64 g = gamma_mode == "inverse" ? F.inv(diff) : diff;
        cons.push_back({i % F.p(), g});
    }
    return cons;
}

json verify_line(const std::string& kind, const json& params, const Verdict& v,
                 double ms) {
    json j{{"kind", kind}, {"params", params}, {"wall_ms", ms},
           {"version", kVersion}};
    j.update(verdict_json(v));
    return j;
}

int cmd_verify_repair(u64 p, std::optional<u64> n_opt, u64 ell, u64 k,
                      std::optional<u64> t_opt, const std::string& gamma_mode,
                      const std::string& out) {
    PrimeField F(p);
    u64 n = n_opt.value_or(p - 1);
    u64 t = t_opt.value_or((p + 7) / 8);
    auto t0 = std::chrono::steady_clock::now();
    Verdict v = check_repair_condition(F, repair_constraints(F, n, ell, gamma_mode),
                                       ell % p, k, t, search_budget());
    json params{{"p", p}, {"n", n}, {"ell", ell}, {"k", k}, {"t", t},
                {"gamma", gamma_mode}};
    emit(verify_line("repair", params, v, wall_ms(t0)), out);
    return v.pass ? kExitOk : kExitFail;
}

int cmd_verify_decode(u64 p, std::optional<u64> B_opt, u64 k,
                      const std::string& missing_csv, std::optional<u64> t_opt,
                      const std::string& out) {
    PrimeField F(p);
    std::vector<u64> missing = parse_u64_list(missing_csv);
    for (auto& m : missing) m %= p;
    u64 t;
    if (t_opt)
        t = *t_opt;
    else if (B_opt)
        t = (p + (u64(1) << *B_opt) - 1) / (u64(1) << *B_opt);
    else
        throw ParseError("verify decode needs --B or --t");

    std::vector<WindowConstraint> cons;
    for (u64 i = 0; i < p; ++i) {
        bool silent = false;
        for (u64 m : missing) silent = silent || m == i;
        if (silent) continue;
        u64 prod = 1;
        for (u64 m : missing) prod = F.mul(prod, F.sub(i, m));
        cons.push_back({i, F.inv(prod)});
    }
    auto t0 = std::chrono::steady_clock::now();
    Verdict v = check_decoding_condition(F, k, cons, t, search_budget());
    json params{{"p", p}, {"k", k}, {"t", t}, {"missing", missing}};
    if (B_opt) params["B"] = *B_opt;
    emit(verify_line("decode", params, v, wall_ms(t0)), out);
    return v.pass ? kExitOk : kExitFail;
}

int cmd_verify_sweep(u64 pmin, u64 pmax, const std::string& out) {
    std::ostringstream lines;
    bool all_pass = true;
    for (u64 p = pmin; p <= pmax; ++p) {
        if (!is_prime_u64(p) || p < 11) continue;
        u64 n = static_cast<u64>(std::sqrt(static_cast<double>(p)));
        RepairScheme scheme = kloosterman_repair_scheme(p, n, 0);
        auto t0 = std::chrono::steady_clock::now();
        Verdict v = check_repair_condition(scheme.field(),
                                           window_constraints(scheme), 0,
                                           scheme.k(), scheme.t(),
                                           search_budget());
        all_pass = all_pass && v.pass;
        json params{{"p", p}, {"n", n}, {"ell", 0}, {"k", scheme.k()},
                    {"t", scheme.t()},
                    {"in_kloosterman_range", scheme.in_kloosterman_range()}};
        lines << verify_line("repair", params, v, wall_ms(t0)).dump() << "\n";
    }
    if (out.empty())
        std::cout << lines.str();
    else
        std::ofstream(out) << lines.str();
    return all_pass ? kExitOk : kExitFail;
}

// ---- leak / repair / decode ----------------------------------------------

int cmd_leak(const std::string& scheme_path, const std::string& scheme_inline,
             const std::string& poly_csv, const std::string& out) {
    json desc;
    if (!scheme_path.empty())
        desc = parse_json(read_file(scheme_path));
    else if (!scheme_inline.empty())
        desc = parse_json(scheme_inline);
    else
        throw ParseError("leak needs --scheme-file or --scheme");
    SchemeVariant scheme = scheme_from_json(desc);
    std::vector<u64> coeffs = parse_u64_list(poly_csv);
    Transcript tr = std::visit(
        [&](const auto& s) {
            Poly f{s.field(), coeffs};
            for (auto& c : f.coeffs) c %= s.field().p();
            return leak_transcript(s, f);
        },
        scheme);
    emit(transcript_to_json(scheme, tr), out);
    return kExitOk;
}

int cmd_repair_file(const std::string& path, const std::string& out) {
    auto [scheme, tr] = transcript_from_json(parse_json(read_file(path)));
    const auto* rs = std::get_if<RepairScheme>(&scheme);
    if (!rs) throw ParseError("repair needs a kloosterman scheme transcript");
    CandidateSet cs = enumerate_consistent(*rs, tr, search_budget());
    if (cs.candidates.empty())
        throw InconsistentTranscript("no consistent polynomial");
    u64 value = cs.candidates.front().eval(rs->failed_alpha());
    for (const Poly& f : cs.candidates)
        if (f.eval(rs->failed_alpha()) != value)
            throw AmbiguousRepair("candidates disagree at the failed node");
    emit(json{{"value", value},
              {"candidates", cs.candidates.size()},
              {"work", cs.work},
              {"version", kVersion}},
         out);
    return kExitOk;
}

int cmd_decode_file(const std::string& path, const std::string& out) {
    auto [scheme, tr] = transcript_from_json(parse_json(read_file(path)));
    const auto* ds = std::get_if<DecodingScheme>(&scheme);
    if (!ds) throw ParseError("decode needs a weil scheme transcript");
    CandidateSet cs = enumerate_consistent(*ds, tr, search_budget());
    if (cs.candidates.empty())
        throw InconsistentTranscript("no consistent polynomial");
    if (cs.candidates.size() > 1)
        throw AmbiguousDecoding("multiple consistent polynomials");
    emit(json{{"coeffs", poly_json(cs.candidates.front())},
              {"candidates", cs.candidates.size()},
              {"work", cs.work},
              {"version", kVersion}},
         out);
    return kExitOk;
}

// ---- sums ------------------------------------------------------------------

int cmd_sums_weil(u64 p, const std::string& poly_csv, const std::string& out) {
    PrimeField F(p);
    std::vector<u64> coeffs = parse_u64_list(poly_csv);
    for (auto& c : coeffs) c %= p;
    WeilReport rep = weil_sum(Poly{F, coeffs});
    emit(json{{"kind", "weil"},
              {"p", p},
              {"params", {{"poly", coeffs}, {"degree", rep.degree}}},
              {"re", rep.sum.value.real()},
              {"im", rep.sum.value.imag()},
              {"magnitude", rep.sum.magnitude},
              {"bound", rep.bound},
              {"within_bound", rep.within_bound},
              {"version", kVersion}},
         out);
    return kExitOk;
}

int cmd_sums_kloosterman(u64 p, u64 a, u64 b, u64 N, const std::string& out) {
    PrimeField F(p);
    SumResult r = kloosterman_sum(F, a, b, N);
    emit(json{{"kind", "kloosterman"},
              {"p", p},
              {"params", {{"a", a}, {"b", b}, {"N", N}}},
              {"re", r.value.real()},
              {"im", r.value.imag()},
              {"magnitude", r.magnitude},
              {"version", kVersion}},
         out);
    return kExitOk;
}

int cmd_sums_korolev(u64 p, u64 n, bool with_actual, const std::string& out) {
    PrimeField F(p);
    KorolevBound kb = korolev_bound(p, n);
    json j{{"kind", "korolev"},
           {"p", p},
           {"params", {{"n", n}}},
           {"D", kb.D},
           {"bound_plain", kb.bound_plain},
           {"bound_twisted", kb.bound_twisted},
           {"in_range", kb.in_range},
           {"vacuous", kb.vacuous},
           {"version", kVersion}};
    if (with_actual) {
        // Brute-force the actual maximum of |sum_{v<=n} e_p(a/v)| over a.
        double best = 0;
        for (u64 a = 1; a < p; ++a)
            best = std::max(best, kloosterman_sum(F, a, 0, n).magnitude);
        j["actual_max"] = best;
    }
    emit(j, out);
    return kExitOk;
}

int cmd_sums_progression(u64 p, u64 t, const std::string& a_csv,
                         const std::string& out) {
    PrimeField F(p);
    std::vector<i64> a;
    for (const std::string& tok : [&] {
             std::vector<std::string> toks;
             std::stringstream ss(a_csv);
             std::string item;
             while (std::getline(ss, item, ',')) toks.push_back(item);
             return toks;
         }())
        a.push_back(std::stoll(tok));
    ProgressionSumCheck r = progression_sum_check(F, a, t);
    emit(json{{"kind", "progression"},
              {"p", p},
              {"params", {{"t", t}, {"n", a.size()}}},
              {"magnitude", r.magnitude},
              {"bound", r.lower_bound},
              {"pass", r.pass},
              {"version", kVersion}},
         out);
    return r.pass ? kExitOk : kExitFail;
}

// ---- bench ------------------------------------------------------------------

int cmd_bench(const std::string& out) {
    DecodingScheme scheme = weil_decoding_scheme(101, 3, 4, {0, 1});
    auto t0 = std::chrono::steady_clock::now();
    Verdict v = check_decoding_condition(scheme.field(), scheme.k(),
                                         window_constraints(scheme), scheme.t(),
                                         search_budget());
    double check_ms = wall_ms(t0);

    SplitMix64 rng(7);
    std::vector<u64> coeffs(scheme.k());
    for (auto& c : coeffs) c = rng.below(101);
    Poly f{scheme.field(), coeffs};
    t0 = std::chrono::steady_clock::now();
    Poly g = decode(scheme, leak_transcript(scheme, f), search_budget());
    double decode_ms = wall_ms(t0);

    emit(json{{"kind", "bench"},
              {"instance", {{"p", 101}, {"B", 3}, {"k", 4}, {"missing", {0, 1}}}},
              {"check_pass", v.pass},
              {"check_work", v.work},
              {"check_ms", check_ms},
              {"decode_roundtrip_ok", g == f},
              {"decode_ms", decode_ms},
              {"version", kVersion}},
         out);
    return v.pass && g == f ? kExitOk : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-bandwidth repair and decoding of Reed-Solomon codes over prime fields"};
    app.require_subcommand(1);

    std::string out;
    app.add_option("--out", out, "write the report to a file instead of stdout");

    // attack
    auto* attack = app.add_subcommand("attack", "Shamir leakage-attack demo");
    u64 a_p = 101, a_n = 10, a_secret = 0, a_seed = 1, a_ell = 0;
    int a_check = 2; // 0 off, 1 on, 2 auto
    std::string a_emit;
    attack->add_option("--p", a_p, "prime modulus")->required();
    attack->add_option("--n", a_n, "number of parties")->required();
    attack->add_option("--secret", a_secret, "secret in F_p")->required();
    attack->add_option("--seed", a_seed, "dealer randomness seed");
    attack->add_option("--ell", a_ell, "target node (0 = the secret)");
    attack->add_flag_callback("--check", [&] { a_check = 1; },
                              "verify the instance before attacking");
    attack->add_flag_callback("--no-check", [&] { a_check = 0; },
                              "skip instance verification");
    attack->add_option("--emit-transcript", a_emit, "write the leaked transcript");

    // verify
    auto* verify = app.add_subcommand("verify", "check scheme validity conditions");
    verify->require_subcommand(1);
    auto* vrep = verify->add_subcommand("repair", "sufficient repair condition");
    u64 v_p = 0, v_ell = 0, v_k = 3;
    std::optional<u64> v_n, v_t;
    std::string v_gamma = "kloosterman";
    vrep->add_option("--p", v_p)->required();
    vrep->add_option("--n", v_n, "largest evaluation point (default p-1)");
    vrep->add_option("--ell", v_ell, "failed node");
    vrep->add_option("--k", v_k, "code dimension");
    vrep->add_option("--t", v_t, "bucket width (default ceil(p/8))");
    vrep->add_option("--gamma", v_gamma, "multiplier family: kloosterman | inverse");

    auto* vdec = verify->add_subcommand("decode", "sufficient decoding condition");
    u64 d_p = 0, d_k = 0;
    std::optional<u64> d_B, d_t;
    std::string d_missing;
    vdec->add_option("--p", d_p)->required();
    vdec->add_option("--B", d_B, "bit budget");
    vdec->add_option("--k", d_k)->required();
    vdec->add_option("--missing", d_missing, "silent nodes, comma separated");
    vdec->add_option("--t", d_t, "bucket width override");

    auto* vsweep = verify->add_subcommand("sweep", "kloosterman-instance sweep");
    u64 s_pmin = 11, s_pmax = 97;
    vsweep->add_option("--pmin", s_pmin);
    vsweep->add_option("--pmax", s_pmax);

    // leak / repair / decode
    auto* leak = app.add_subcommand("leak", "produce a transcript for a polynomial");
    std::string l_scheme_file, l_scheme, l_poly;
    leak->add_option("--scheme-file", l_scheme_file, "scheme descriptor JSON file");
    leak->add_option("--scheme", l_scheme, "scheme descriptor JSON inline");
    leak->add_option("--poly", l_poly, "coefficients, lowest first, comma separated")
        ->required();

    auto* repairc = app.add_subcommand("repair", "recover the failed symbol");
    std::string r_file;
    repairc->add_option("transcript", r_file, "transcript JSON file")->required();

    auto* decodec = app.add_subcommand("decode", "recover the full polynomial");
    std::string dc_file;
    decodec->add_option("transcript", dc_file, "transcript JSON file")->required();

    // sums
    auto* sums = app.add_subcommand("sums", "exponential-sum queries");
    sums->require_subcommand(1);
    auto* sweil = sums->add_subcommand("weil", "complete character sum of a polynomial");
    u64 sw_p = 0;
    std::string sw_poly;
    sweil->add_option("--p", sw_p)->required();
    sweil->add_option("--poly", sw_poly)->required();
    auto* skl = sums->add_subcommand("kloosterman", "incomplete Kloosterman sum");
    u64 sk_p = 0, sk_a = 0, sk_b = 0, sk_N = 0;
    skl->add_option("--p", sk_p)->required();
    skl->add_option("--a", sk_a)->required();
    skl->add_option("--b", sk_b);
    skl->add_option("--N", sk_N)->required();
    auto* skor = sums->add_subcommand("korolev", "short-Kloosterman bound report");
    u64 ko_p = 0, ko_n = 0;
    bool ko_actual = false;
    skor->add_option("--p", ko_p)->required();
    skor->add_option("--n", ko_n)->required();
    skor->add_flag("--actual", ko_actual, "also brute-force the actual maximum");
    auto* sprog = sums->add_subcommand("progression", "windowed-sum lower bound");
    u64 pr_p = 0, pr_t = 0;
    std::string pr_a;
    sprog->add_option("--p", pr_p)->required();
    sprog->add_option("--t", pr_t)->required();
    sprog->add_option("--a", pr_a, "window values, comma separated")->required();

    auto* bench = app.add_subcommand("bench", "time the canonical instance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*attack)
            return cmd_attack(a_p, a_n, a_secret, a_seed, a_ell, a_check, a_emit, out);
        if (*vrep)
            return cmd_verify_repair(v_p, v_n, v_ell, v_k, v_t, v_gamma, out);
        if (*vdec) return cmd_verify_decode(d_p, d_B, d_k, d_missing, d_t, out);
        if (*vsweep) return cmd_verify_sweep(s_pmin, s_pmax, out);
        if (*leak) return cmd_leak(l_scheme_file, l_scheme, l_poly, out);
        if (*repairc) return cmd_repair_file(r_file, out);
        if (*decodec) return cmd_decode_file(dc_file, out);
        if (*sweil) return cmd_sums_weil(sw_p, sw_poly, out);
        if (*skl) return cmd_sums_kloosterman(sk_p, sk_a, sk_b, sk_N, out);
        if (*skor) return cmd_sums_korolev(ko_p, ko_n, ko_actual, out);
        if (*sprog) return cmd_sums_progression(pr_p, pr_t, pr_a, out);
        if (*bench) return cmd_bench(out);
    } catch (const SearchBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
