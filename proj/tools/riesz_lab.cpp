// riesz_lab: sample, evaluate densities and special functions, and run
// self-checks for Riesz and beta-Riesz matrix distributions.
//
// Exit status: 0 success, 1 a verify check failed, 2 invalid input,
// 3 numerical failure.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_io.hpp"
#include "rieszlab/rieszlab.hpp"
#include "verify_suites.hpp"

namespace {

using namespace rieszlab;
using nlohmann::json;

struct DistFlags {
    std::string dist;
    int beta = 1;
    int m = 1;
    double a = 0.0;
    double b = 0.0;
    std::string kappa;
    std::string tau;
    std::string sigma_path;
};

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw DomainError("cannot parse number '" + item + "'");
        }
        require(used == item.size(), "cannot parse number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

Weight parse_weight(const std::string& s, int m) {
    if (s.empty()) return Weight::zeros(static_cast<std::size_t>(m));
    return Weight(parse_list(s));
}

enum class DistKind { Riesz, InverseRiesz, BetaRiesz };

struct Dist {
    DistKind kind;
    Variant variant;
    Family family = Family::C;
};

Dist parse_dist(const std::string& id) {
    if (id == "riesz1") return {DistKind::Riesz, Variant::TypeI};
    if (id == "riesz2") return {DistKind::Riesz, Variant::TypeII};
    if (id == "inv-riesz1") return {DistKind::InverseRiesz, Variant::TypeI};
    if (id == "inv-riesz2") return {DistKind::InverseRiesz, Variant::TypeII};
    if (id == "cbeta1") return {DistKind::BetaRiesz, Variant::TypeI, Family::C};
    if (id == "cbeta2") return {DistKind::BetaRiesz, Variant::TypeII, Family::C};
    if (id == "kbeta1") return {DistKind::BetaRiesz, Variant::TypeI, Family::K};
    if (id == "kbeta2") return {DistKind::BetaRiesz, Variant::TypeII, Family::K};
    throw DomainError("unknown distribution '" + id + "'");
}

RieszParams riesz_params(const DistFlags& f, Variant v) {
    const AlgebraTag tag(f.beta);
    require_matrix_algebra(tag, "Riesz distribution");
    if (f.sigma_path.empty()) return RieszParams::standard(tag, f.m, f.a, parse_weight(f.kappa, f.m), v);
    HermitianPD sigma(cli::read_matrix_file(f.sigma_path));
    require(sigma.tag() == tag, "sigma file beta does not match --beta");
    require(static_cast<int>(sigma.dim()) == f.m, "sigma file dimension does not match --m");
    return RieszParams(f.a, parse_weight(f.kappa, f.m), std::move(sigma), v);
}

BetaRieszParams beta_params(const DistFlags& f, const Dist& d) {
    require(f.sigma_path.empty(), "beta-Riesz distributions take no --sigma");
    return BetaRieszParams(AlgebraTag(f.beta), f.m, f.a, parse_weight(f.kappa, f.m), f.b, parse_weight(f.tau, f.m),
                           d.family, d.variant);
}

void add_dist_flags(CLI::App* app, DistFlags& f, bool with_dist) {
    if (with_dist)
        app->add_option("--dist", f.dist, "riesz1|riesz2|inv-riesz1|inv-riesz2|cbeta1|cbeta2|kbeta1|kbeta2")
            ->required();
    app->add_option("--beta", f.beta, "1, 2, 4 (8 for eig-pdf and specfun)")->required();
    app->add_option("--m", f.m, "matrix dimension")->required();
    app->add_option("--a", f.a, "shape parameter a")->required();
    app->add_option("--b", f.b, "second shape parameter b (beta-Riesz)");
    app->add_option("--kappa", f.kappa, "weight k_1,...,k_m (default zeros)");
    app->add_option("--tau", f.tau, "weight t_1,...,t_m (default zeros)");
    app->add_option("--sigma", f.sigma_path, "scale matrix JSON file (Riesz only; default identity)");
}

unsigned worker_count(std::size_t n) {
    unsigned w = 1;
    if (const char* env = std::getenv("RIESZ_LAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) w = static_cast<unsigned>(v);
    }
    return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(n, 1)));
}

int run_sample(const DistFlags& f, std::uint64_t seed, long n, const std::string& out_path, const std::string& emit,
               const std::string& format) {
    require(n >= 1, "--n must be >= 1");
    require(format == "csv" || format == "json", "--format must be csv or json");
    require(emit.empty() || emit == "eigenvalues", "--emit accepts only 'eigenvalues'");
    const bool with_eigen = emit == "eigenvalues";
    const Dist d = parse_dist(f.dist);
    std::optional<RieszParams> rp;
    std::optional<BetaRieszParams> bp;
    if (d.kind == DistKind::BetaRiesz) {
        bp = beta_params(f, d);
        bp->require_construction_domain();
    } else {
        rp = riesz_params(f, d.variant);
    }
    const std::size_t count = static_cast<std::size_t>(n);
    std::vector<std::optional<cli::SampleRow>> rows(count);
    auto draw = [&](std::size_t i) {
        Rng rng(seed, i);
        HermitianPD x = d.kind == DistKind::BetaRiesz   ? sample_beta_riesz(*bp, rng)
                        : d.kind == DistKind::Riesz     ? sample_riesz_bartlett(*rp, rng)
                                                        : sample_inverse_riesz(*rp, rng);
        cli::SampleRow r{x.matrix(), logdet_hpd(x), {}};
        if (with_eigen) r.eigenvalues = eigenvalues_hermitian(x);
        rows[i] = std::move(r);
    };
    const unsigned workers = worker_count(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) draw(i);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += workers) draw(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        require(static_cast<bool>(file), "cannot open output file " + out_path);
    }
    std::ostream& os = out_path.empty() ? std::cout : file;
    const AlgebraTag tag(f.beta);
    if (format == "csv") {
        os << cli::csv_header(tag, static_cast<std::size_t>(f.m), with_eigen) << '\n';
        for (std::size_t i = 0; i < count; ++i) os << cli::csv_row(i, *rows[i]) << '\n';
    } else {
        json arr = json::array();
        for (std::size_t i = 0; i < count; ++i) arr.push_back(cli::json_row(i, *rows[i]));
        os << arr.dump(2) << '\n';
    }
    return 0;
}

int run_pdf(const DistFlags& f, const std::string& matrix_path) {
    const Dist d = parse_dist(f.dist);
    const HermitianPD x(cli::read_matrix_file(matrix_path));
    double value;
    if (d.kind == DistKind::BetaRiesz) {
        value = log_density_beta_riesz(beta_params(f, d), x);
    } else {
        const RieszParams p = riesz_params(f, d.variant);
        value = d.kind == DistKind::Riesz ? log_density_riesz(p, x) : log_density_inverse_riesz(p, x);
    }
    std::cout << json{{"log_density", value}}.dump() << '\n';
    return 0;
}

int run_eig_pdf(const DistFlags& f, const std::string& lambdas) {
    const Dist d = parse_dist(f.dist);
    require(d.kind == DistKind::BetaRiesz, "eig-pdf applies to cbeta1, cbeta2, kbeta1, kbeta2");
    const EigenDensityParams e(beta_params(f, d));
    const std::vector<double> lam = parse_list(lambdas);
    std::cout << json{{"log_density", log_joint_eigen_density(e, lam)}, {"rho", e.rho}}.dump() << '\n';
    return 0;
}

int run_specfun(const std::string& fn, const DistFlags& f, int n, const std::string& matrix_path) {
    const AlgebraTag tag(f.beta);
    const Weight kap = parse_weight(f.kappa, f.m);
    const Weight tau = parse_weight(f.tau, f.m);
    LogValue v;
    if (fn == "ln-mv-gamma") v = ln_mv_gamma(tag, f.m, f.a);
    else if (fn == "ln-gamma-weight-pos") v = ln_gamma_weight_pos(tag, f.m, f.a, kap);
    else if (fn == "ln-gamma-weight-neg") v = ln_gamma_weight_neg(tag, f.m, f.a, kap);
    else if (fn == "gen-pochhammer") v = gen_pochhammer(tag, f.m, f.a, kap);
    else if (fn == "ln-mv-beta") v = ln_mv_beta(tag, f.m, f.a, f.b);
    else if (fn == "ln-c-beta") v = ln_c_beta(tag, f.m, f.a, kap, f.b, tau);
    else if (fn == "ln-k-beta") v = ln_k_beta(tag, f.m, f.a, kap, f.b, tau);
    else if (fn == "ln-stiefel-volume") v = ln_stiefel_volume(tag, f.m, n);
    else if (fn == "log-q-kappa") {
        require(!matrix_path.empty(), "log-q-kappa needs --matrix");
        const HermitianPD s(cli::read_matrix_file(matrix_path));
        v = LogValue::from_log(log_q_kappa(s, parse_weight(f.kappa, static_cast<int>(s.dim()))));
    } else {
        throw DomainError("unknown special function '" + fn + "'");
    }
    json j;
    j["log_abs"] = v.sign == 0 ? json(nullptr) : json(v.log_abs);
    j["sign"] = v.sign;
    std::cout << j.dump() << '\n';
    return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
    const std::vector<cli::Check> checks = cli::run_suite(suite, seed);
    json arr = json::array();
    bool all = true;
    for (const auto& c : checks) {
        arr.push_back(cli::to_json(c));
        all = all && c.report.passed;
    }
    std::cout << json{{"suite", suite}, {"seed", seed}, {"all_passed", all}, {"checks", arr}}.dump(2) << '\n';
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riesz and beta-Riesz matrix distributions"};
    app.require_subcommand(1);

    DistFlags sf;
    std::uint64_t seed = 0;
    long n = 1;
    std::string out_path, emit, format = "csv";
    auto* sample = app.add_subcommand("sample", "draw matrices and write CSV or JSON");
    add_dist_flags(sample, sf, true);
    sample->add_option("--seed", seed, "64-bit seed")->required();
    sample->add_option("--n", n, "number of draws")->required();
    sample->add_option("--out", out_path, "output file (default stdout)");
    sample->add_option("--emit", emit, "extra columns: eigenvalues");
    sample->add_option("--format", format, "csv or json");

    DistFlags pf;
    std::string matrix_path;
    auto* pdf = app.add_subcommand("pdf", "log density at a matrix");
    add_dist_flags(pdf, pf, true);
    pdf->add_option("--matrix", matrix_path, "matrix JSON file")->required();

    DistFlags ef;
    std::string lambdas;
    auto* eig = app.add_subcommand("eig-pdf", "joint eigenvalue log density");
    add_dist_flags(eig, ef, true);
    eig->add_option("--lambdas", lambdas, "strictly descending eigenvalues l_1,...,l_m")->required();

    DistFlags ff;
    std::string fn, fmatrix;
    int stiefel_n = 1;
    auto* spec = app.add_subcommand("specfun", "special functions in log form");
    spec->add_option("--fn", fn,
                     "ln-mv-gamma|ln-gamma-weight-pos|ln-gamma-weight-neg|gen-pochhammer|ln-mv-beta|"
                     "ln-c-beta|ln-k-beta|ln-stiefel-volume|log-q-kappa")
        ->required();
    spec->add_option("--beta", ff.beta, "1, 2, 4 or 8")->required();
    spec->add_option("--m", ff.m, "dimension");
    spec->add_option("--a", ff.a, "argument a");
    spec->add_option("--b", ff.b, "argument b");
    spec->add_option("--kappa", ff.kappa, "weight kappa");
    spec->add_option("--tau", ff.tau, "weight tau");
    spec->add_option("--n", stiefel_n, "Stiefel n");
    spec->add_option("--matrix", fmatrix, "matrix JSON file for log-q-kappa");

    std::string suite = "all";
    std::uint64_t vseed = 20261018;
    auto* ver = app.add_subcommand("verify", "run self-checks and print a JSON report");
    ver->add_option("--suite", suite, "specfun|riesz|beta|eigen|all");
    ver->add_option("--seed", vseed, "64-bit seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sample) return run_sample(sf, seed, n, out_path, emit, format);
        if (*pdf) return run_pdf(pf, matrix_path);
        if (*eig) return run_eig_pdf(ef, lambdas);
        if (*spec) return run_specfun(fn, ff, stiefel_n, fmatrix);
        if (*ver) return run_verify(suite, vseed);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed matrix JSON: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
