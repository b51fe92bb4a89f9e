#include "zm/ewens.hpp"

#include "zm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace zm {

namespace {

template <class F> F fint(long v) { return FieldTraits<F>::from_int(v); }
template <class F> F fbig(const BigInt& v) { return FieldTraits<F>::from_bigint(v); }

template <class F> bool positive(const F& t) {
    if constexpr (std::is_same_v<F, Rational>) return sgn(t) > 0;
    else return t > 0;
}

template <class F> F power(const F& base, int k) {
    F r = fint<F>(1);
    for (int i = 0; i < k; ++i) r *= base;
    return r;
}

}  // namespace

template <class F>
EwensParams<F> make_ewens_params(const F& t) {
    if (!positive(t)) throw DomainError("Ewens parameter t must be positive");
    return EwensParams<F>{t};
}

template <class F>
F ewens_weight(const Partition& lambda, const EwensParams<F>& params) {
    if (!positive(params.t)) throw DomainError("Ewens parameter t must be positive");
    const int n = lambda.size();
    return power(params.t, lambda.length()) * fbig<F>(factorial(n)) / (rising(params.t, n) * fbig<F>(z_lambda(lambda)));
}

template <class F>
VerificationReport verify_kingman_coherence(int n, const EwensParams<F>& params, double tol) {
    if (n < 0) throw InvalidInput("coherence needs n >= 0");
    VerificationReport r;
    F sum_lower = fint<F>(0), sum_upper = fint<F>(0);
    for (const Partition& mu : partitions_of(n)) sum_lower += ewens_weight(mu, params);
    for (const Partition& lambda : partitions_of(n + 1)) sum_upper += ewens_weight(lambda, params);
    record_check(r, sum_lower, fint<F>(1), "sum over level " + std::to_string(n), tol);
    record_check(r, sum_upper, fint<F>(1), "sum over level " + std::to_string(n + 1), tol);
    for (const Partition& mu : partitions_of(n)) {
        const BigInt d_mu = dim0(mu);
        F total = fint<F>(0);
        for (const Partition& lambda : add_boxes(mu))
            total += fbig<F>(d_mu * kingman_multiplicity(mu, lambda)) / fbig<F>(dim0(lambda)) * ewens_weight(lambda, params);
        record_check(r, ewens_weight(mu, params), total, mu.to_string(), tol);
    }
    return r;
}

std::vector<int> SetPartition::block_sizes() const {
    std::vector<int> s;
    for (const auto& b : blocks) s.push_back(static_cast<int>(b.size()));
    return s;
}

std::string SetPartition::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) s += "|";
        for (std::size_t j = 0; j < blocks[i].size(); ++j) s += (j ? "," : "") + std::to_string(blocks[i][j]);
    }
    return s + "}";
}

std::vector<SetPartition> set_partitions(int n) {
    if (n < 0 || n > kMaxSetPartitionSize)
        throw InvalidInput("set partitions are enumerated for 0 <= n <= " + std::to_string(kMaxSetPartitionSize));
    std::vector<SetPartition> out;
    std::vector<int> growth(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int max_label) {
        if (pos == n) {
            SetPartition sp;
            sp.blocks.assign(static_cast<std::size_t>(max_label + 1), {});
            for (int i = 0; i < n; ++i) sp.blocks[static_cast<std::size_t>(growth[static_cast<std::size_t>(i)])].push_back(i + 1);
            if (n == 0) sp.blocks.clear();
            out.push_back(std::move(sp));
            return;
        }
        for (int label = 0; label <= max_label + 1; ++label) {
            growth[static_cast<std::size_t>(pos)] = label;
            rec(pos + 1, std::max(max_label, label));
        }
    };
    if (n == 0) out.push_back(SetPartition{});
    else {
        growth[0] = 0;
        rec(1, 0);
    }
    return out;
}

BigInt monomial_coefficient(const std::vector<int>& l, const Partition& lambda) {
    int total = 0;
    for (int li : l) {
        if (li < 0) throw InvalidInput("moment exponents must be nonnegative");
        total += li + 1;
    }
    if (total != lambda.size()) throw SizeMismatch("sum (l_i + 1) must equal |lambda|");
    if (lambda.length() > static_cast<int>(l.size())) return BigInt(0);
    // each factor p_{l_j+1} sends its power to one variable x_i; variable i must collect exactly lambda_i
    std::vector<int> remaining = lambda.parts();
    BigInt count = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == l.size()) {
            if (std::all_of(remaining.begin(), remaining.end(), [](int v) { return v == 0; })) ++count;
            return;
        }
        for (int& rem : remaining) {
            if (rem >= l[j] + 1) {
                rem -= l[j] + 1;
                rec(j + 1);
                rem += l[j] + 1;
            }
        }
    };
    rec(0);
    return count;
}

template <class F>
F component_moment(const SetPartition& pi, const std::vector<int>& l, const EwensParams<F>& params) {
    int weight = 0;
    for (int li : l) weight += li + 1;
    F num = power(params.t, pi.rank());
    for (const auto& block : pi.blocks) {
        int m = 0;
        for (int j : block) m += l[static_cast<std::size_t>(j - 1)];
        num *= fbig<F>(factorial(m + static_cast<int>(block.size()) - 1));
    }
    return num / rising(params.t, weight);
}

template <class F>
F sigma_t_n_moment(const MomentSpec& spec, const EwensParams<F>& params, EwensMomentRoute route) {
    if (!positive(params.t)) throw DomainError("Ewens parameter t must be positive");
    if (spec.l.empty()) throw InvalidInput("moment needs at least one exponent");
    for (int li : spec.l)
        if (li < 0) throw InvalidInput("moment exponents must be nonnegative");
    F total = fint<F>(0);
    if (route == EwensMomentRoute::coefficient_sum) {
        for (const Partition& lambda : partitions_of(spec.weight())) {
            if (lambda.length() > spec.order()) continue;
            const BigInt c = monomial_coefficient(spec.l, lambda);
            if (c == 0) continue;
            total += fbig<F>(c) * ewens_weight(lambda, params) / fbig<F>(dim0(lambda));
        }
    } else {
        for (const SetPartition& pi : set_partitions(spec.order())) total += component_moment(pi, spec.l, params);
    }
    return total;
}

double watterson_rho(const std::vector<double>& x, double t) {
    if (!(t > 0)) throw DomainError("Ewens parameter t must be positive");
    double sum = 0.0, prod = 1.0;
    for (double xi : x) {
        if (!(xi > 0)) throw NonpositiveCoordinate("Watterson correlation needs positive coordinates");
        sum += xi;
        prod *= xi;
    }
    if (sum >= 1.0) return 0.0;
    return std::pow(t, static_cast<double>(x.size())) * std::pow(1.0 - sum, t - 1.0) / prod;
}

double component_density(const std::vector<int>& block_sizes, const std::vector<double>& y, double t) {
    if (block_sizes.size() != y.size()) throw SizeMismatch("one coordinate per block is required");
    double sum = 0.0, value = std::pow(t, static_cast<double>(y.size()));
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0)) throw NonpositiveCoordinate("block coordinates must be positive");
        sum += y[i];
        value *= std::pow(y[i], block_sizes[i] - 1);
    }
    if (sum >= 1.0) return 0.0;
    return value * std::pow(1.0 - sum, t - 1.0);
}

double correlation_component_density(const std::vector<int>& block_sizes, const std::vector<double>& y, double t) {
    if (block_sizes.size() != y.size()) throw SizeMismatch("one coordinate per block is required");
    double value = watterson_rho(y, t);
    for (std::size_t i = 0; i < y.size(); ++i) value *= std::pow(y[i], block_sizes[i]);
    return value;
}

double watterson_rho1_integral(double lo, double hi, double t) {
    if (!(lo > 0) || !(hi <= 1.0) || !(lo < hi)) throw DomainError("bin must satisfy 0 < lo < hi <= 1");
    const double beta = hi == 1.0 ? t - 1.0 : 0.0;
    const auto f = [&](double x) { return t / x * (hi == 1.0 ? 1.0 : std::pow(1.0 - x, t - 1.0)); };
    return quad_endpoint(f, lo, hi, 0.0, beta, 1e-13).value;
}

int default_pd_truncation(double t) { return static_cast<int>(std::ceil(10.0 * std::max(t, 1.0) * std::log(1e12))); }

PdSample sample_pd(double t, int truncation, Rng& rng) {
    if (!(t > 0)) throw DomainError("Ewens parameter t must be positive");
    if (truncation < 1) throw InvalidInput("truncation must be at least one stick");
    PdSample s;
    double remaining = 1.0;
    const double inv_t = 1.0 / t;
    for (int k = 0; k < truncation; ++k) {
        const double v = -std::expm1(inv_t * std::log1p(-rng.uniform()));
        s.point.alpha.push_back(remaining * v);
        remaining *= 1.0 - v;
    }
    std::sort(s.point.alpha.begin(), s.point.alpha.end(), std::greater<>());
    s.residual = remaining;
    s.sticks = truncation;
    return s;
}

PdSample sample_pd(double t, int truncation, std::uint64_t seed) {
    Rng rng(seed);
    return sample_pd(t, truncation, rng);
}

Partition sample_ewens(int n, double t, Rng& rng) {
    if (n < 1) throw InvalidInput("sample_ewens needs n >= 1");
    if (!(t > 0)) throw DomainError("Ewens parameter t must be positive");
    std::vector<int> table_of, sizes;
    table_of.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double u = rng.uniform();
        const double p_new = t / (t + k);
        if (k == 0 || u < p_new) {
            table_of.push_back(static_cast<int>(sizes.size()));
            sizes.push_back(1);
        } else {
            const auto j = std::min<std::size_t>(static_cast<std::size_t>((u - p_new) / (1.0 - p_new) * k),
                                                 static_cast<std::size_t>(k - 1));
            const int table = table_of[j];
            table_of.push_back(table);
            ++sizes[static_cast<std::size_t>(table)];
        }
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return Partition(std::move(sizes));
}

Partition sample_ewens(int n, double t, std::uint64_t seed) {
    Rng rng(seed);
    return sample_ewens(n, t, rng);
}

#define ZM_INSTANTIATE(F)                                                                                \
    template EwensParams<F> make_ewens_params<F>(const F&);                                              \
    template F ewens_weight<F>(const Partition&, const EwensParams<F>&);                                 \
    template VerificationReport verify_kingman_coherence<F>(int, const EwensParams<F>&, double);         \
    template F component_moment<F>(const SetPartition&, const std::vector<int>&, const EwensParams<F>&); \
    template F sigma_t_n_moment<F>(const MomentSpec&, const EwensParams<F>&, EwensMomentRoute);

ZM_INSTANTIATE(Rational)
ZM_INSTANTIATE(double)

#undef ZM_INSTANTIATE

}  // namespace zm
