#include "zm/characters.hpp"
#include "zm/density.hpp"
#include "zm/errors.hpp"
#include "zm/ewens.hpp"
#include "zm/sampling.hpp"
#include "zm/zmeasure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace {

using json = nlohmann::ordered_json;
using namespace zm;

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

/// Everything a run depends on; serialised into every artifact.
struct RunConfig {
    std::string command;
    std::string z, zp, t;
    int n = -1;
    std::string l;
    std::string grid;
    std::uint64_t seed = 1;
    long samples = 10000;
    std::string out;
    double tol = -1.0;
    std::string mode = "auto";
    std::string method = "both";
    std::string kind = "zmeasure";

    json to_json() const {
        json j;
        j["command"] = command;
        if (!z.empty()) j["z"] = z;
        if (!zp.empty()) j["zp"] = zp;
        if (!t.empty()) j["t"] = t;
        if (n >= 0) j["n"] = n;
        if (!l.empty()) j["l"] = l;
        if (!grid.empty()) j["grid"] = grid;
        j["seed"] = seed;
        j["samples"] = samples;
        if (tol >= 0) j["tol"] = tol;
        j["mode"] = mode;
        j["method"] = method;
        j["kind"] = kind;
        j["version"] = ZM_VERSION;
        return j;
    }
};

/// Signals a malformed flag value; reported with exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("--out: cannot open '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string csv_preamble(const RunConfig& cfg) { return "# " + cfg.to_json().dump() + "\n"; }

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("--grid: expected lo:hi:step, got '" + text + "'");
    double lo, hi, step;
    try {
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        step = std::stod(parts[2]);
    } catch (const std::exception&) {
        throw UsageError("--grid: malformed number in '" + text + "'");
    }
    if (!(step > 0) || !(hi >= lo)) throw UsageError("--grid: need hi >= lo and step > 0");
    std::vector<double> xs;
    const long count = std::lround(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= count; ++k) xs.push_back(std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12);
    return xs;
}

std::vector<int> parse_l(const std::string& text) {
    if (text.empty()) throw UsageError("--l: exponent list required");
    std::vector<int> l;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size() || v < 0) throw std::invalid_argument(item);
            l.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("--l: '" + item + "' is not a nonnegative integer");
        }
    }
    return l;
}

bool has_z(const RunConfig& cfg) { return !cfg.z.empty() || !cfg.zp.empty(); }

bool exact_mode(const RunConfig& cfg) {
    if (cfg.mode == "complex") return false;
    const bool rational = is_rational_literal(cfg.z) && is_rational_literal(cfg.zp);
    if (cfg.mode == "exact" && !rational) throw UsageError("--mode exact needs rational --z and --zp");
    return rational;
}

ZParams<Rational> exact_params(const RunConfig& cfg) { return make_params(parse_rational(cfg.z), parse_rational(cfg.zp)); }

ZParams<cplx> complex_params(const RunConfig& cfg) {
    if (cfg.z.empty() || cfg.zp.empty()) throw UsageError("--z and --zp are both required");
    return make_params(parse_complex(cfg.z), parse_complex(cfg.zp));
}

int require_n(const RunConfig& cfg, int lo = 0) {
    if (cfg.n < lo) throw UsageError("--n: a value >= " + std::to_string(lo) + " is required");
    return cfg.n;
}

double tol_or(const RunConfig& cfg, double fallback) { return cfg.tol >= 0 ? cfg.tol : fallback; }

std::string show(const Rational& v) { return format_exact(v); }
std::string show(const cplx& v) { return format_complex(v); }
std::string show(double v) { return format_double(v); }

// ---------------------------------------------------------------------------------------------

template <class F>
int weights_table(std::ostream& os, const RunConfig& cfg, const std::vector<std::pair<Partition, F>>& rows) {
    os << csv_preamble(cfg) << "lambda,weight\n";
    F sum = FieldTraits<F>::from_int(0);
    for (const auto& [lambda, w] : rows) {
        os << '"' << lambda.to_string() << "\"," << show(w) << '\n';
        sum += w;
    }
    os << "sum," << show(sum) << '\n';
    return relative_gap(sum, FieldTraits<F>::from_int(1)) <= tol_or(cfg, 1e-10) ? kExitPass : kExitVerification;
}

template <class F>
std::vector<std::pair<Partition, F>> ewens_rows(int n, const EwensParams<F>& p) {
    std::vector<std::pair<Partition, F>> rows;
    for (const Partition& lambda : partitions_of(n)) rows.emplace_back(lambda, ewens_weight(lambda, p));
    return rows;
}

int cmd_weights(const RunConfig& cfg, std::ostream& os) {
    const int n = require_n(cfg);
    if (!has_z(cfg)) {
        if (cfg.t.empty()) throw UsageError("--z/--zp or --t is required");
        if (is_rational_literal(cfg.t) && cfg.mode != "complex")
            return weights_table(os, cfg, ewens_rows(n, make_ewens_params(parse_rational(cfg.t))));
        return weights_table(os, cfg, ewens_rows(n, make_ewens_params(parse_complex(cfg.t).real())));
    }
    if (exact_mode(cfg)) return weights_table(os, cfg, level_weights(n, exact_params(cfg)));
    return weights_table(os, cfg, level_weights(n, complex_params(cfg)));
}

int emit_report(std::ostream& os, const RunConfig& cfg, const VerificationReport& r, const std::string& graph) {
    json j;
    j["config"] = cfg.to_json();
    j["graph"] = graph;
    j["report"] = json::parse(r.to_json());
    os << j.dump() << '\n';
    return r.pass ? kExitPass : kExitVerification;
}

int cmd_coherence(const RunConfig& cfg, std::ostream& os) {
    const int n = require_n(cfg);
    if (!has_z(cfg)) {
        if (cfg.t.empty()) throw UsageError("--z/--zp or --t is required");
        if (is_rational_literal(cfg.t) && cfg.mode != "complex")
            return emit_report(os, cfg, verify_kingman_coherence(n, make_ewens_params(parse_rational(cfg.t))), "kingman");
        return emit_report(os, cfg,
                           verify_kingman_coherence(n, make_ewens_params(parse_complex(cfg.t).real()), tol_or(cfg, 1e-12)),
                           "kingman");
    }
    if (exact_mode(cfg)) return emit_report(os, cfg, verify_coherence(n, exact_params(cfg)), "young");
    return emit_report(os, cfg, verify_coherence(n, complex_params(cfg), tol_or(cfg, 1e-10)), "young");
}

template <class F>
int moments_rows(std::ostream& os, const RunConfig& cfg, const MomentSpec& spec, const F& a, const F& b,
                 const std::string& route_a, const std::string& route_b, const std::optional<F>& hook_sum) {
    os << csv_preamble(cfg) << "l,route,value\n";
    os << '"' << spec.to_string() << "\"," << route_a << ',' << show(a) << '\n';
    os << '"' << spec.to_string() << "\"," << route_b << ',' << show(b) << '\n';
    bool pass = relative_gap(a, b) <= tol_or(cfg, 1e-10);
    if (hook_sum) {
        os << '"' << spec.to_string() << "\",sigma1_hook_sum," << show(*hook_sum) << '\n';
        pass = pass && relative_gap(a, *hook_sum) <= tol_or(cfg, 1e-10);
    }
    os << "agreement," << (pass ? "pass" : "fail") << ",\n";
    return pass ? kExitPass : kExitVerification;
}

int cmd_moments(const RunConfig& cfg, std::ostream& os) {
    const MomentSpec spec{parse_l(cfg.l)};
    if (!has_z(cfg)) {
        if (cfg.t.empty()) throw UsageError("--z/--zp or --t is required");
        if (is_rational_literal(cfg.t) && cfg.mode != "complex") {
            const auto p = make_ewens_params(parse_rational(cfg.t));
            return moments_rows<Rational>(os, cfg, spec, sigma_t_n_moment(spec, p, EwensMomentRoute::coefficient_sum),
                                          sigma_t_n_moment(spec, p, EwensMomentRoute::set_partition_sum), "coefficient_sum",
                                          "set_partition_sum", std::nullopt);
        }
        const auto p = make_ewens_params(parse_complex(cfg.t).real());
        return moments_rows<double>(os, cfg, spec, sigma_t_n_moment(spec, p, EwensMomentRoute::coefficient_sum),
                                    sigma_t_n_moment(spec, p, EwensMomentRoute::set_partition_sum), "coefficient_sum",
                                    "set_partition_sum", std::nullopt);
    }
    const auto run = [&](const auto& p) {
        using F = std::decay_t<decltype(p.z)>;
        std::optional<F> hook;
        if (spec.order() == 1) hook = sigma1_moment(spec.l[0], p);
        return moments_rows<F>(os, cfg, spec, sigma_n_moment(spec, p, MomentRoute::frobenius_sum),
                               sigma_n_moment(spec, p, MomentRoute::character_sum), "frobenius_sum", "character_sum",
                               hook);
    };
    if (exact_mode(cfg)) return run(exact_params(cfg));
    return run(complex_params(cfg));
}

int cmd_density(const RunConfig& cfg, std::ostream& os) {
    const ZParams<cplx> p = complex_params(cfg);
    if (cfg.grid.empty()) throw UsageError("--grid is required");
    if (cfg.method != "lauricella" && cfg.method != "integral" && cfg.method != "both")
        throw UsageError("--method: expected lauricella, integral or both");
    const double agree_tol = tol_or(cfg, 1e-6);
    const std::vector<double> xs = parse_grid(cfg.grid);
    for (double x : xs)
        if (!(std::fabs(x) >= kRhoXMin && std::fabs(x) <= kRhoXMax))
            throw UsageError("--grid: " + format_double(x) + " lies outside 1e-3 <= |x| <= 1 - 1e-9");
    os << csv_preamble(cfg) << "x,rho1,method,tol_achieved,agreement\n";
    bool pass = true;
    for (double x : xs) {
        std::vector<DensityPoint> pts;
        if (cfg.method != "integral") pts.push_back(rho1(x, p, DensityMethod::lauricella));
        if (cfg.method != "lauricella") pts.push_back(rho1(x, p, DensityMethod::integral));
        std::string agreement;
        if (pts.size() == 2) {
            const double gap = relative_gap(pts[0].value, pts[1].value);
            agreement = format_double(gap);
            pass = pass && gap <= agree_tol;
        }
        for (const DensityPoint& d : pts)
            os << format_double(d.x) << ',' << format_double(d.value) << ',' << to_string(d.method) << ','
               << format_double(d.tol_achieved) << ',' << agreement << '\n';
    }
    return pass ? kExitPass : kExitVerification;
}

int cmd_laplace(const RunConfig& cfg, std::ostream& os) {
    const ZParams<cplx> p = complex_params(cfg);
    const std::vector<double> zetas = cfg.grid.empty() ? std::vector<double>{-1.0, -0.5, 0.5, 1.0} : parse_grid(cfg.grid);
    const double tol = tol_or(cfg, 1e-5);
    os << csv_preamble(cfg) << "zeta,lhs,rhs,rhs_swapped,residual,factorization_gap\n";
    bool pass = true;
    for (double zeta : zetas) {
        const LaplaceCheck c = laplace_identity_residual(cplx(zeta, 0.0), p);
        os << format_double(zeta) << ',' << format_complex(c.lhs) << ',' << format_complex(c.rhs) << ','
           << format_complex(c.rhs_swapped) << ',' << format_double(c.residual) << ','
           << format_double(c.factorization_gap) << '\n';
        pass = pass && c.residual <= tol && c.factorization_gap <= 1e-10;
    }
    return pass ? kExitPass : kExitVerification;
}

double ewens_t(const RunConfig& cfg) {
    if (cfg.t.empty()) throw UsageError("--t is required for Ewens and Poisson-Dirichlet sampling");
    const double t = parse_complex(cfg.t).real();
    make_ewens_params(t);
    return t;
}

int cmd_sample(const RunConfig& cfg, std::ostream& os) {
    if (cfg.samples < 1) throw UsageError("--samples must be positive");
    const auto count = static_cast<std::size_t>(cfg.samples);
    os << json{{"config", cfg.to_json()}}.dump() << '\n';
    if (cfg.kind == "pd") {
        const double t = ewens_t(cfg);
        const int trunc = cfg.n > 0 ? cfg.n : default_pd_truncation(t);
        const auto draws = parallel_draws<PdSample>(count, cfg.seed, [&](Rng& r) { return sample_pd(t, trunc, r); });
        for (std::size_t k = 0; k < count; ++k) {
            json j;
            json alpha = json::array();
            for (double a : draws[k].point.alpha) {
                if (a < 1e-12) break;
                alpha.push_back(a);
            }
            j["alpha"] = alpha;
            j["residual"] = draws[k].residual;
            j["sticks"] = draws[k].sticks;
            j["seed"] = Rng::chain_seed(cfg.seed, k);
            os << j.dump() << '\n';
        }
        return kExitPass;
    }
    const int n = require_n(cfg, cfg.kind == "ewens" ? 1 : 0);
    std::function<Partition(Rng&)> draw;
    if (cfg.kind == "ewens") {
        const double t = ewens_t(cfg);
        draw = [n, t](Rng& r) { return sample_ewens(n, t, r); };
    } else if (cfg.kind == "zmeasure") {
        const ZParams<cplx> p = complex_params(cfg);
        draw = [n, p](Rng& r) { return sample_partition(n, p, r); };
    } else {
        throw UsageError("--kind: expected zmeasure, ewens or pd");
    }
    const auto draws = parallel_draws<Partition>(count, cfg.seed, draw);
    for (std::size_t k = 0; k < count; ++k) os << sample_json_line(n, draws[k], Rng::chain_seed(cfg.seed, k)) << '\n';
    return kExitPass;
}

/// Empirical frequencies of partitions against exact weights, with binomial standard errors.
int compare_frequencies(const RunConfig& cfg, std::ostream& os, const std::vector<Partition>& draws,
                        const std::vector<std::pair<Partition, double>>& exact) {
    std::map<Partition, long> counts;
    for (const Partition& p : draws) ++counts[p];
    const double m = static_cast<double>(draws.size());
    const double z_max = tol_or(cfg, 3.0);
    os << csv_preamble(cfg) << "lambda,exact,empirical,stderr,z_score\n";
    bool pass = true;
    for (const auto& [lambda, p] : exact) {
        const double freq = static_cast<double>(counts[lambda]) / m;
        const double se = std::sqrt(p * (1.0 - p) / m);
        const double z = se > 0 ? (freq - p) / se : (freq == p ? 0.0 : INFINITY);
        pass = pass && std::fabs(z) <= z_max;
        os << '"' << lambda.to_string() << "\"," << format_double(p) << ',' << format_double(freq) << ','
           << format_double(se) << ',' << format_double(z) << '\n';
    }
    return pass ? kExitPass : kExitVerification;
}

int cmd_compare(const RunConfig& cfg, std::ostream& os) {
    if (cfg.samples < 2) throw UsageError("--samples must be at least 2");
    const auto count = static_cast<std::size_t>(cfg.samples);
    if (cfg.kind == "pd") {
        const double t = ewens_t(cfg);
        const std::vector<double> edges = parse_grid(cfg.grid.empty() ? "0.05:0.95:0.1" : cfg.grid);
        const int trunc = default_pd_truncation(t);
        const auto confs = parallel_draws<Configuration>(count, cfg.seed, [&](Rng& r) {
            return Configuration{sample_pd(t, trunc, r).point.alpha};
        });
        const Histogram h = empirical_density(confs, edges);
        const double z_max = tol_or(cfg, 3.0);
        os << csv_preamble(cfg) << "bin_lo,bin_hi,estimate,stderr,exact,z_score\n";
        bool pass = true;
        for (std::size_t k = 0; k < h.lo.size(); ++k) {
            const double exact = watterson_rho1_integral(h.lo[k], h.hi[k], t) / (h.hi[k] - h.lo[k]);
            const double z = (h.estimate[k] - exact) / h.stderr_[k];
            pass = pass && std::fabs(z) <= z_max;
            os << format_double(h.lo[k]) << ',' << format_double(h.hi[k]) << ',' << format_double(h.estimate[k]) << ','
               << format_double(h.stderr_[k]) << ',' << format_double(exact) << ',' << format_double(z) << '\n';
        }
        return pass ? kExitPass : kExitVerification;
    }
    const int n = require_n(cfg, 1);
    if (cfg.kind == "ewens") {
        const double t = ewens_t(cfg);
        const auto draws = parallel_draws<Partition>(count, cfg.seed, [&](Rng& r) { return sample_ewens(n, t, r); });
        return compare_frequencies(cfg, os, draws, ewens_rows(n, make_ewens_params(t)));
    }
    if (cfg.kind != "zmeasure") throw UsageError("--kind: expected zmeasure, ewens or pd");
    const ZParams<cplx> p = complex_params(cfg);
    const auto draws = parallel_draws<Partition>(count, cfg.seed, [&](Rng& r) { return sample_partition(n, p, r); });
    if (cfg.grid.empty()) {
        std::vector<std::pair<Partition, double>> exact;
        for (const auto& [lambda, w] : level_weights(n, p)) exact.emplace_back(lambda, w.real());
        return compare_frequencies(cfg, os, draws, exact);
    }
    // embedded configurations against rho_1, judged by relative deviation on bins where rho_1 > 0.2
    const std::vector<double> edges = parse_grid(cfg.grid);
    std::vector<Configuration> confs;
    confs.reserve(draws.size());
    for (const Partition& lambda : draws) confs.push_back(embed_configuration(lambda, n));
    const Histogram h = empirical_density(confs, edges);
    const double rel_tol = tol_or(cfg, 0.15);
    os << csv_preamble(cfg) << "bin_lo,bin_hi,estimate,stderr,exact,relative_deviation,judged\n";
    bool pass = true;
    for (std::size_t k = 0; k < h.lo.size(); ++k) {
        const auto f = [&](double x) { return rho1(x, p, DensityMethod::lauricella).value; };
        const double exact = quad_endpoint(f, h.lo[k], h.hi[k], 0.0, 0.0, 1e-9).value / (h.hi[k] - h.lo[k]);
        const double rel = (h.estimate[k] - exact) / exact;
        const bool judged = exact > 0.2;
        if (judged) pass = pass && std::fabs(rel) <= rel_tol;
        os << format_double(h.lo[k]) << ',' << format_double(h.hi[k]) << ',' << format_double(h.estimate[k]) << ','
           << format_double(h.stderr_[k]) << ',' << format_double(exact) << ',' << format_double(rel) << ','
           << (judged ? "yes" : "no") << '\n';
    }
    return pass ? kExitPass : kExitVerification;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--z", cfg.z, "parameter z (p/q or a+bi)");
    sub->add_option("--zp", cfg.zp, "parameter z' (p/q or a+bi)");
    sub->add_option("--t", cfg.t, "Ewens parameter t > 0");
    sub->add_option("--n", cfg.n, "level n");
    sub->add_option("--l", cfg.l, "comma-separated moment exponents");
    sub->add_option("--grid", cfg.grid, "lo:hi:step");
    sub->add_option("--seed", cfg.seed, "64-bit seed");
    sub->add_option("--samples", cfg.samples, "number of samples");
    sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
    sub->add_option("--tol", cfg.tol, "tolerance override");
    sub->add_option("--mode", cfg.mode, "auto, exact or complex")->check(CLI::IsMember({"auto", "exact", "complex"}));
    sub->add_option("--method", cfg.method, "lauricella, integral or both");
    sub->add_option("--kind", cfg.kind, "zmeasure, ewens or pd")->check(CLI::IsMember({"zmeasure", "ewens", "pd"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"z-measures, controlling measures and correlation functions"};
    app.set_version_flag("--version", std::string(ZM_VERSION));
    app.require_subcommand(1);
    RunConfig cfg;
    const std::map<std::string, std::pair<std::string, int (*)(const RunConfig&, std::ostream&)>> commands{
        {"weights", {"table of M(lambda) over a level", cmd_weights}},
        {"coherence", {"coherence report on the Young or Kingman graph", cmd_coherence}},
        {"moments", {"controlling-measure moments by two routes", cmd_moments}},
        {"density", {"rho_1 over a grid", cmd_density}},
        {"laplace-check", {"Laplace identity residuals", cmd_laplace}},
        {"sample", {"partition or Poisson-Dirichlet dumps as JSON lines", cmd_sample}},
        {"compare", {"empirical statistics against exact values", cmd_compare}},
    };
    for (const auto& [name, entry] : commands) add_common(app.add_subcommand(name, entry.first), cfg);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    try {
        Output out(cfg.out);
        return commands.at(cfg.command).second(cfg, out.stream());
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NonConvergence& e) {
        std::cerr << "no convergence: " << e.what() << '\n';
        return kExitVerification;
    }
}
