// Command-line front door.  Every subcommand validates its configuration,
// runs one experiment, and writes a deterministic artifact: identical flags
// and seed give byte-identical output bodies (the wall-time metadata line is
// the one exception).

#include <complex>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmf/acceptance.hpp"
#include "dmf/besselk.hpp"
#include "dmf/coeff.hpp"
#include "dmf/experiment.hpp"
#include "dmf/lfunction.hpp"
#include "dmf/nodal.hpp"
#include "dmf/pretrace.hpp"
#include "dmf/quadfield.hpp"
#include "dmf/sieve.hpp"
#include "dmf/util.hpp"
#include "dmf/waveform.hpp"

namespace {

using dmf::CsvDocument;
using dmf::WallTimer;
using dmf::format_sig;

// Collects every violated field rule instead of stopping at the first, so a
// bad config reports all problems in one pass.
std::vector<std::string> q_violations(std::int64_t q) {
    std::vector<std::string> v;
    if (q % 4 != 1) v.push_back("q must be congruent to 1 mod 4 (q = " + std::to_string(q) + ")");
    if (q <= 8) v.push_back("q must exceed 8 (q = " + std::to_string(q) + ")");
    if (q > 200) v.push_back("q must be at most 200 (q = " + std::to_string(q) + ")");
    if (q >= 2 && !dmf::is_prime_u64(q)) v.push_back("q must be prime (q = " + std::to_string(q) + ")");
    return v;
}

dmf::FieldContext field_or_die(std::int64_t q) {
    auto v = q_violations(q);
    if (!v.empty()) {
        for (const auto& msg : v) std::cerr << "error: " << msg << "\n";
        std::exit(2);
    }
    return dmf::make_field(q);
}

// Series floor used by form construction; sits just under the lowest point
// sqrt(3)/(2q) of the scan region so every evaluated height is covered.
double default_y_floor(std::int64_t q) {
    return 0.87 * std::sqrt(3.0) / (2.0 * static_cast<double>(q));
}

// Accepts "x+yi", "x-yi", or a bare real part.
std::complex<double> parse_point(const std::string& s) {
    double x = 0.0, y = 0.0;
    std::size_t pos = 0;
    x = std::stod(s, &pos);
    if (pos < s.size()) {
        std::string rest = s.substr(pos);
        if (rest.back() != 'i')
            throw std::invalid_argument("point must look like 0.1+1.2i, got " + s);
        rest.pop_back();
        if (rest == "+" ) rest = "1";
        else if (rest == "-") rest = "-1";
        y = std::stod(rest);
    }
    return {x, y};
}

dmf::GeodesicSegment parse_segment(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("segment must look like a:b, got " + s);
    dmf::GeodesicSegment seg;
    seg.a = std::stod(s.substr(0, colon));
    seg.b = std::stod(s.substr(colon + 1));
    dmf::validate_segment(seg);
    return seg;
}

struct Shared {
    unsigned threads = 0;  // 0: DMF_THREADS env, then hardware
};

int cmd_field(std::int64_t q, std::int64_t max_norm, const std::string& out) {
    WallTimer timer;
    const auto F = field_or_die(q);
    const auto ideals = dmf::enumerate_ideals(F, max_norm);
    CsvDocument doc("field", {"norm", "a", "b", "angle", "class", "primitive"});
    doc.meta("q", q);
    doc.meta("max_norm", max_norm);
    doc.meta("eps_a", F.eps.a);
    doc.meta("eps_b", F.eps.b);
    doc.meta("log_eps", F.log_eps);
    for (const auto& r : ideals)
        doc.row(r.norm_abs, r.a, r.b, F.angle({r.a, r.b}),
                std::string(r.norm_positive ? "A1" : "A2"), int(r.primitive));
    doc.save(out, timer.seconds());
    std::cout << "field: " << ideals.size() << " ideals of norm <= " << max_norm
              << " -> " << out << "\n";
    return 0;
}

int cmd_coeffs(std::int64_t q, std::int64_t k, std::int64_t max_n, const std::string& out) {
    WallTimer timer;
    const auto F = field_or_die(q);
    if (k < 1) { std::cerr << "error: k must be >= 1\n"; return 2; }
    if (max_n < 1) { std::cerr << "error: max-n must be >= 1\n"; return 2; }
    const auto tbl = dmf::make_coeff_table(F, k, max_n);
    CsvDocument doc("coeffs", {"n", "a_k_n"});
    doc.meta("q", q);
    doc.meta("k", k);
    doc.meta("max_n", max_n);
    doc.meta("T_k", tbl.T);
    for (std::int64_t n = 1; n <= max_n; ++n) doc.row(n, tbl(n));
    doc.save(out, timer.seconds());
    std::cout << "coeffs: a_" << k << "(n) for n <= " << max_n << " -> " << out << "\n";
    return 0;
}

int cmd_bessel(double t, double x, double rel_tol) {
    if (!(x > 0.0)) { std::cerr << "error: x must be positive\n"; return 2; }
    if (!(t >= 0.0)) { std::cerr << "error: t must be nonnegative\n"; return 2; }
    (void)rel_tol;  // the evaluator's internal tolerance already sits below any useful request
    std::cout << format_sig(dmf::scaled_besselk(t, x)) << "\n";
    return 0;
}

int cmd_supnorm(std::int64_t q, std::int64_t k_min, std::int64_t k_max, double grid_res,
                const std::string& out) {
    WallTimer timer;
    const auto F = field_or_die(q);
    if (k_min < 1 || k_max < k_min) { std::cerr << "error: need 1 <= k-min <= k-max\n"; return 2; }
    if (!(grid_res >= 1.0)) { std::cerr << "error: grid-res must be >= 1\n"; return 2; }
    CsvDocument doc("supnorm", {"k", "T_k", "sup_ratio", "ratio_over_T_to_3_8",
                                "argmax_x", "argmax_y"});
    doc.meta("q", q);
    doc.meta("k_min", k_min);
    doc.meta("k_max", k_max);
    doc.meta("grid_res", grid_res);
    for (std::int64_t k = k_min; k <= k_max; ++k) {
        const auto h = dmf::make_form(F, k, default_y_floor(q));
        const auto r = dmf::supnorm_scan(h, grid_res);
        doc.row(k, h.T, r.sup_ratio, r.sup_ratio / std::pow(h.T, 0.375),
                r.argmax_x, r.argmax_y);
    }
    doc.save(out, timer.seconds());
    std::cout << "supnorm: k = " << k_min << ".." << k_max << " -> " << out << "\n";
    return 0;
}

int cmd_latticecount(std::int64_t q, const std::string& z, std::int64_t max_l, double delta,
                     const std::string& out) {
    WallTimer timer;
    const auto F = field_or_die(q);
    const auto zc = parse_point(z);
    if (!(zc.imag() > 0.0)) { std::cerr << "error: z must lie in the upper half plane\n"; return 2; }
    if (max_l < 1) { std::cerr << "error: max-l must be >= 1\n"; return 2; }
    if (!(delta > 0.0 && delta < 1.0)) { std::cerr << "error: delta must lie in (0,1)\n"; return 2; }
    CsvDocument doc("latticecount", {"l", "m_star", "m_upper", "m_parabolic"});
    doc.meta("q", q);
    doc.meta("z", z);
    doc.meta("max_l", max_l);
    doc.meta("delta", delta);
    for (std::int64_t ell = 1; ell <= max_l; ++ell) {
        dmf::LatticeQuery Q{zc.real(), zc.imag(), ell, delta, q};
        const auto M = dmf::count_matrices(Q);
        doc.row(ell, M.m_star, M.m_upper, M.m_parabolic);
    }
    doc.save(out, timer.seconds());
    std::cout << "latticecount: l = 1.." << max_l << " at z = " << z << " -> " << out << "\n";
    return 0;
}

int cmd_pretrace(std::int64_t q, std::int64_t k, std::int64_t n_amp, const std::string& z,
                 const std::string& out) {
    WallTimer timer;
    const auto F = field_or_die(q);
    if (k < 1) { std::cerr << "error: k must be >= 1\n"; return 2; }
    if (n_amp < 10) { std::cerr << "error: n-amp must be >= 10\n"; return 2; }
    const auto zc = parse_point(z);
    if (!(zc.imag() > 0.0)) { std::cerr << "error: z must lie in the upper half plane\n"; return 2; }
    const auto h = dmf::make_form(F, k, default_y_floor(q));
    const double l2 = dmf::l2_norm_numeric(h);
    const auto amp = dmf::build_amplifier(h.coeffs, n_amp);
    const auto P = dmf::test_kernel(h.T, 2.0);
    const double phi = h.eval(zc.real(), zc.imag());
    const double lhs = P.h(h.T) * amp.A * phi * phi / (l2 * l2);
    const double rhs = dmf::geometric_side(P, amp, q, zc.real(), zc.imag());
    nlohmann::ordered_json j;
    j["tool"] = "pretrace";
    j["version"] = dmf::kVersion;
    j["q"] = q;
    j["k"] = k;
    j["n_amp"] = n_amp;
    j["z"] = {{"x", zc.real()}, {"y", zc.imag()}};
    j["T_k"] = h.T;
    j["amplifier_weight"] = amp.A;
    j["phi_at_z"] = phi;
    j["l2_norm"] = l2;
    j["spectral_lhs"] = lhs;
    j["geometric_rhs"] = rhs;
    j["ratio"] = lhs / rhs;
    j["kernel_u_max"] = P.u_max;
    j["wall_seconds"] = timer.seconds();
    std::ofstream os(out);
    if (!os) { std::cerr << "error: cannot open output file: " << out << "\n"; return 1; }
    os << j.dump(2) << "\n";
    std::cout << "pretrace: lhs/rhs = " << format_sig(lhs / rhs) << " -> " << out << "\n";
    return 0;
}

int cmd_lvalue(std::int64_t q, std::int64_t k, double t) {
    const auto F = field_or_die(q);
    if (k < 1) { std::cerr << "error: k must be >= 1\n"; return 2; }
    const dmf::AfeOptions opt;
    const auto nmax = dmf::afe_required_nmax(F, k, t, opt);
    const auto tbl = dmf::make_coeff_table(F, k, nmax);
    const auto r = dmf::afe_lvalue(F, tbl, t, opt);
    std::cout << "L_half_re=" << format_sig(r.value.real()) << "\n"
              << "L_half_im=" << format_sig(r.value.imag()) << "\n"
              << "omega=" << format_sig(r.omega) << "\n"
              << "series_length=" << r.series_length << "\n";
    return 0;
}

int cmd_secondmoment(std::int64_t q, std::int64_t K, double t, const std::string& out,
                     unsigned threads) {
    WallTimer timer;
    const auto F = field_or_die(q);
    if (K < 1) { std::cerr << "error: K must be >= 1\n"; return 2; }
    const dmf::AfeOptions opt;
    const auto m = dmf::second_moment(F, K, t, opt, threads);
    CsvDocument doc("secondmoment", {"K", "t", "average", "k", "lsq"});
    doc.meta("q", q);
    doc.meta("K", K);
    doc.meta("t", t);
    doc.meta("threads", static_cast<std::int64_t>(dmf::resolve_threads(threads)));
    for (const auto& [k, lsq] : m.per_k) doc.row(K, t, m.average, k, lsq);
    doc.save(out, timer.seconds());
    std::cout << "secondmoment: average over " << K << " < k <= " << 2 * K << " is "
              << format_sig(m.average) << " -> " << out << "\n";
    return 0;
}

int cmd_anglegap(std::int64_t q, std::int64_t max_norm, const std::string& out) {
    WallTimer timer;
    const auto F = field_or_die(q);
    if (max_norm < 2) { std::cerr << "error: max-norm must be >= 2\n"; return 2; }
    const auto r = dmf::angle_gap_scan(F, max_norm);
    CsvDocument doc("anglegap", {"norm", "a", "b", "normalized_angle", "dist_to_int",
                                 "scaled_gap"});
    doc.meta("q", q);
    doc.meta("max_norm", max_norm);
    doc.meta("c_min", r.c_min);
    doc.meta("argmin_norm", r.argmin.norm_abs);
    for (const auto& rec : r.records) {
        const double scaled = dmf::zero_angle_class(rec.ideal)
                                  ? 0.0
                                  : std::sqrt(static_cast<double>(rec.ideal.norm_abs)) *
                                        rec.dist_to_int;
        doc.row(rec.ideal.norm_abs, rec.ideal.a, rec.ideal.b, rec.normalized_angle,
                rec.dist_to_int, scaled);
    }
    doc.save(out, timer.seconds());
    std::cout << "anglegap: c_min(" << max_norm << ") = " << format_sig(r.c_min)
              << " at norm " << r.argmin.norm_abs << " -> " << out << "\n";
    return 0;
}

int cmd_largesieve(std::int64_t q, std::int64_t K, std::int64_t N, std::int64_t trials,
                   std::uint64_t seed, const std::string& out) {
    WallTimer timer;
    const auto F = field_or_die(q);
    const auto rep = dmf::large_sieve_check(F, K, N, trials, seed);
    CsvDocument doc("largesieve", {"trial", "ratio"});
    doc.meta("q", q);
    doc.meta("K", K);
    doc.meta("N", N);
    doc.meta("trials", trials);
    doc.meta("seed", static_cast<std::int64_t>(seed));
    doc.meta("max_ratio", rep.max_ratio);
    doc.meta("mean_ratio", rep.mean_ratio);
    for (std::size_t i = 0; i < rep.ratios.size(); ++i)
        doc.row(static_cast<std::int64_t>(i), rep.ratios[i]);
    if (out.empty()) {
        std::cout << doc.str(timer.seconds());
    } else {
        doc.save(out, timer.seconds());
        std::cout << "largesieve: max ratio " << format_sig(rep.max_ratio) << " over "
                  << trials << " trials -> " << out << "\n";
    }
    return 0;
}

int cmd_nodal(std::int64_t q, std::int64_t k_min, std::int64_t k_max, const std::string& segment,
              const std::string& out) {
    WallTimer timer;
    const auto F = field_or_die(q);
    if (k_min < 1 || k_max < k_min) { std::cerr << "error: need 1 <= k-min <= k-max\n"; return 2; }
    const auto seg = parse_segment(segment);
    CsvDocument doc("nodal", {"k", "T_k", "S_beta", "L1", "L2", "M", "chain_slack",
                              "lower_bound_floor"});
    doc.meta("q", q);
    doc.meta("k_min", k_min);
    doc.meta("k_max", k_max);
    doc.meta("segment", segment);
    for (std::int64_t k = k_min; k <= k_max; ++k) {
        const auto h = dmf::make_form(F, k, default_y_floor(q));
        const double l2 = dmf::l2_norm_numeric(h);
        const auto rep = dmf::nodal_chain_report(h, seg, l2);
        doc.row(k, h.T, rep.sign_change_count, rep.L1, rep.L2, rep.M, rep.chain_slack,
                rep.lower_bound_floor);
    }
    doc.save(out, timer.seconds());
    std::cout << "nodal: k = " << k_min << ".." << k_max << " on [" << seg.a << ", " << seg.b
              << "] -> " << out << "\n";
    return 0;
}

int cmd_suite(const std::string& preset, const std::string& out) {
    const bool full = preset == "full";
    const auto results = dmf::run_acceptance(full, std::cout);
    if (full || !out.empty()) {
        WallTimer timer;
        CsvDocument doc("suite", {"id", "name", "pass", "measured", "bound", "seconds",
                                  "detail"});
        doc.meta("preset", preset);
        for (const auto& r : results)
            doc.row(r.id, r.name, int(r.pass), r.measured, r.bound, r.seconds, r.detail);
        const std::string path = out.empty() ? ("suite_" + preset + ".csv") : out;
        doc.save(path, timer.seconds());
        std::cout << "suite records -> " << path << "\n";
    }
    std::vector<std::string> failed;
    for (const auto& r : results)
        if (!r.pass) failed.push_back(r.name);
    if (!failed.empty()) {
        std::cerr << "error: " << failed.size() << " criteria failed:";
        for (const auto& n : failed) std::cerr << " " << n;
        std::cerr << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dihedral Maass form laboratory"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file");

    Shared shared;
    app.add_option("--threads", shared.threads,
                   "Worker thread count (0: DMF_THREADS env, then hardware)");

    std::int64_t q = 13;
    std::int64_t k = 6, k_min = 2, k_max = 12, max_n = 1000, max_norm = 100;
    std::int64_t K = 16, N = 100, trials = 50, max_l = 50, n_amp = 16;
    std::uint64_t seed = 7;
    double t = 20.0, x = 15.0, rel_tol = 1e-10, grid_res = 4.0, delta = 1e-3, toff = 0.0;
    std::string out, z = "0.1+1.2i", segment = "1:2", preset;

    auto* c_field = app.add_subcommand("field", "Enumerate ideals with canonical generators");
    c_field->add_option("--q", q, "Field discriminant (prime, 1 mod 4)")->required();
    c_field->add_option("--max-norm", max_norm, "Largest ideal norm");
    c_field->add_option("--out", out, "Output CSV path")->required();

    auto* c_coeffs = app.add_subcommand("coeffs", "Hecke eigenvalue table for one form");
    c_coeffs->add_option("--q", q)->required();
    c_coeffs->add_option("--k", k, "Character index")->required();
    c_coeffs->add_option("--max-n", max_n, "Largest index");
    c_coeffs->add_option("--out", out)->required();

    auto* c_bessel = app.add_subcommand("bessel", "Scaled Bessel probe, prints one value");
    c_bessel->add_option("--t", t, "Order parameter")->required();
    c_bessel->add_option("--x", x, "Argument")->required();
    c_bessel->add_option("--rel-tol", rel_tol, "Requested relative tolerance");

    auto* c_sup = app.add_subcommand("supnorm", "Sup-norm scan over a k range");
    c_sup->add_option("--q", q)->required();
    c_sup->add_option("--k-min", k_min)->required();
    c_sup->add_option("--k-max", k_max)->required();
    c_sup->add_option("--grid-res", grid_res, "Wavelength oversampling factor");
    c_sup->add_option("--out", out)->required();

    auto* c_lat = app.add_subcommand("latticecount", "Matrix counts in shrinking balls");
    c_lat->add_option("--q", q)->required();
    c_lat->add_option("--z", z, "Base point x+yi")->required();
    c_lat->add_option("--max-l", max_l, "Largest determinant scale");
    c_lat->add_option("--delta", delta, "Ball radius parameter");
    c_lat->add_option("--out", out)->required();

    auto* c_pre = app.add_subcommand("pretrace", "One-sided spectral inequality at a point");
    c_pre->add_option("--q", q)->required();
    c_pre->add_option("--k", k)->required();
    c_pre->add_option("--n-amp", n_amp, "Amplifier window base");
    c_pre->add_option("--z", z, "Base point x+yi")->required();
    c_pre->add_option("--out", out, "Output JSON path")->required();

    auto* c_lv = app.add_subcommand("lvalue", "Central value via the smoothed series");
    c_lv->add_option("--q", q)->required();
    c_lv->add_option("--k", k)->required();
    c_lv->add_option("--t", toff, "Offset along the critical line");

    auto* c_sm = app.add_subcommand("secondmoment", "Average |L|^2 over a dyadic family");
    c_sm->add_option("--q", q)->required();
    c_sm->add_option("--K", K, "Family parameter: averages K < k <= 2K")->required();
    c_sm->add_option("--t", toff);
    c_sm->add_option("--out", out)->required();

    auto* c_ag = app.add_subcommand("anglegap", "Scaled angle-gap scan over ideals");
    c_ag->add_option("--q", q)->required();
    c_ag->add_option("--max-norm", max_norm)->required();
    c_ag->add_option("--out", out)->required();

    auto* c_ls = app.add_subcommand("largesieve", "Monte-Carlo large-sieve ratio check");
    c_ls->add_option("--q", q)->required();
    c_ls->add_option("--K", K, "Character family size");
    c_ls->add_option("--N", N, "Ideal norm bound");
    c_ls->add_option("--trials", trials);
    c_ls->add_option("--seed", seed);
    c_ls->add_option("--out", out, "Output CSV path (default: print to stdout)");

    auto* c_nod = app.add_subcommand("nodal", "Sign changes and restricted norms on a segment");
    c_nod->add_option("--q", q)->required();
    c_nod->add_option("--k-min", k_min)->required();
    c_nod->add_option("--k-max", k_max)->required();
    c_nod->add_option("--segment", segment, "Segment a:b on the imaginary axis");
    c_nod->add_option("--out", out)->required();

    auto* c_suite = app.add_subcommand("suite", "Run the acceptance criteria");
    c_suite->add_option("preset", preset, "smoke or full")
        ->required()
        ->check(CLI::IsMember({"smoke", "full"}));
    c_suite->add_option("--out", out, "Criteria record CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_field) return cmd_field(q, max_norm, out);
        if (*c_coeffs) return cmd_coeffs(q, k, max_n, out);
        if (*c_bessel) return cmd_bessel(t, x, rel_tol);
        if (*c_sup) return cmd_supnorm(q, k_min, k_max, grid_res, out);
        if (*c_lat) return cmd_latticecount(q, z, max_l, delta, out);
        if (*c_pre) return cmd_pretrace(q, k, n_amp, z, out);
        if (*c_lv) return cmd_lvalue(q, k, toff);
        if (*c_sm) return cmd_secondmoment(q, K, toff, out, shared.threads);
        if (*c_ag) return cmd_anglegap(q, max_norm, out);
        if (*c_ls) return cmd_largesieve(q, K, N, trials, seed, out);
        if (*c_nod) return cmd_nodal(q, k_min, k_max, segment, out);
        if (*c_suite) return cmd_suite(preset, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
