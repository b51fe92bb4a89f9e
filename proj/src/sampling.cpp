#include "zm/sampling.hpp"

#include "zm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zm {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::chain_seed(std::uint64_t base, std::uint64_t k) { return splitmix64(base ^ splitmix64(k + 1)); }

template <class F>
std::vector<std::pair<Partition, F>> up_transition(const Partition& mu, const ZParams<F>& params) {
    const F m_mu = weight(mu, params);
    const BigInt dim_mu = dim(mu);
    std::vector<std::pair<Partition, F>> out;
    for (const Partition& lambda : add_boxes(mu)) {
        const F p = FieldTraits<F>::from_bigint(dim_mu) / FieldTraits<F>::from_bigint(dim(lambda)) *
                    weight(lambda, params) / m_mu;
        out.emplace_back(lambda, p);
    }
    return out;
}

namespace {

/// Contents of the addable corners (ordered by row) and of the removable corners.
void corner_contents(const std::vector<int>& parts, std::vector<int>& addable, std::vector<int>& removable) {
    addable.clear();
    removable.clear();
    const int l = static_cast<int>(parts.size());
    for (int i = 1; i <= l + 1; ++i) {
        const int row = i <= l ? parts[static_cast<std::size_t>(i - 1)] : 0;
        const int above = i >= 2 ? parts[static_cast<std::size_t>(i - 2)] : -1;
        if (i == 1 || above > row) addable.push_back(row + 1 - i);
    }
    for (int i = 1; i <= l; ++i) {
        const int row = parts[static_cast<std::size_t>(i - 1)];
        const int below = i < l ? parts[static_cast<std::size_t>(i)] : 0;
        if (row > below) removable.push_back(row - i);
    }
}

void fast_probs(const std::vector<int>& parts, int n, const ZParams<cplx>& params, std::vector<int>& addable,
                std::vector<int>& removable, std::vector<double>& probs) {
    corner_contents(parts, addable, removable);
    const double t = params.t.real();
    probs.assign(addable.size(), 0.0);
    for (std::size_t k = 0; k < addable.size(); ++k) {
        const double a = addable[k];
        double plancherel = 1.0;
        for (int b : removable) plancherel *= a - b;
        for (std::size_t j = 0; j < addable.size(); ++j)
            if (j != k) plancherel /= a - addable[j];
        probs[k] = ((params.z + a) * (params.zp + a)).real() / (t + n) * plancherel;
    }
}

}  // namespace

std::vector<double> up_transition_fast(const Partition& mu, const ZParams<cplx>& params) {
    std::vector<int> addable, removable;
    std::vector<double> probs;
    fast_probs(mu.parts(), mu.size(), params, addable, removable, probs);
    return probs;
}

template <class F>
std::map<Partition, F> path_product_law(int n, const ZParams<F>& params) {
    std::map<Partition, F> level{{Partition(), FieldTraits<F>::from_int(1)}};
    for (int k = 0; k < n; ++k) {
        std::map<Partition, F> next;
        for (const auto& [mu, mass] : level)
            for (const auto& [lambda, p] : up_transition(mu, params)) {
                auto it = next.find(lambda);
                if (it == next.end()) next.emplace(lambda, mass * p);
                else it->second += mass * p;
            }
        level = std::move(next);
    }
    return level;
}

std::size_t sample_index(const std::vector<double>& probs, double u) {
    if (probs.empty()) throw InvalidInput("cannot sample from an empty distribution");
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
        acc += probs[k];
        if (u < acc) return k;
    }
    return probs.size() - 1;
}

Partition sample_partition(int n, const ZParams<cplx>& params, Rng& rng) {
    if (n < 0) throw InvalidInput("sample_partition needs n >= 0");
    std::vector<int> parts, addable, removable;
    std::vector<double> probs;
    for (int k = 0; k < n; ++k) {
        fast_probs(parts, k, params, addable, removable, probs);
        const std::size_t idx = sample_index(probs, rng.uniform());
        // locate the row of the idx-th addable corner
        int seen = 0;
        const int l = static_cast<int>(parts.size());
        for (int i = 1; i <= l + 1; ++i) {
            const int row = i <= l ? parts[static_cast<std::size_t>(i - 1)] : 0;
            const int above = i >= 2 ? parts[static_cast<std::size_t>(i - 2)] : -1;
            if (i == 1 || above > row) {
                if (seen++ == static_cast<int>(idx)) {
                    if (i == l + 1) parts.push_back(1); else ++parts[static_cast<std::size_t>(i - 1)];
                    break;
                }
            }
        }
    }
    return Partition(std::move(parts));
}

Partition sample_partition(int n, const ZParams<cplx>& params, std::uint64_t seed) {
    Rng rng(seed);
    return sample_partition(n, params, rng);
}

Configuration embed_configuration(const Partition& lambda, int n) {
    if (n < 1 || lambda.size() != n) throw InvalidInput("embedding needs |lambda| = n >= 1");
    const FrobeniusCoords f = frobenius(lambda);
    Configuration c;
    for (int p : f.p) c.points.push_back((p + 0.5) / n);
    for (int q : f.q) c.points.push_back(-(q + 0.5) / n);
    return c;
}

Histogram empirical_density(const std::vector<Configuration>& samples, const std::vector<double>& edges) {
    if (samples.empty()) throw EmptySample("empirical_density needs at least one configuration");
    if (edges.size() < 2) throw InvalidInput("need at least one bin");
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        if (!(edges[k + 1] > edges[k])) throw InvalidInput("bin edges must increase");
        if (edges[k] < 0.0 && edges[k + 1] > 0.0) throw InvalidInput("bins must avoid the origin");
    }
    const std::size_t nb = edges.size() - 1;
    std::vector<double> sum(nb, 0.0), sum_sq(nb, 0.0), count(nb, 0.0);
    for (const Configuration& c : samples) {
        std::fill(count.begin(), count.end(), 0.0);
        for (double x : c.points) {
            const auto it = std::upper_bound(edges.begin(), edges.end(), x);
            if (it == edges.begin() || it == edges.end()) continue;
            ++count[static_cast<std::size_t>(it - edges.begin() - 1)];
        }
        for (std::size_t k = 0; k < nb; ++k) {
            sum[k] += count[k];
            sum_sq[k] += count[k] * count[k];
        }
    }
    Histogram h;
    h.samples = samples.size();
    const double m = static_cast<double>(samples.size());
    for (std::size_t k = 0; k < nb; ++k) {
        const double width = edges[k + 1] - edges[k];
        const double mean = sum[k] / m;
        const double var = m > 1 ? std::max(0.0, (sum_sq[k] - m * mean * mean) / (m - 1)) : 0.0;
        h.lo.push_back(edges[k]);
        h.hi.push_back(edges[k + 1]);
        h.estimate.push_back(mean / width);
        h.stderr_.push_back(std::sqrt(var / m) / width);
    }
    return h;
}

std::string Histogram::to_csv() const {
    std::ostringstream os;
    os << "bin_lo,bin_hi,estimate,stderr\n";
    for (std::size_t k = 0; k < lo.size(); ++k)
        os << format_double(lo[k]) << ',' << format_double(hi[k]) << ',' << format_double(estimate[k]) << ','
           << format_double(stderr_[k]) << '\n';
    return os.str();
}

std::string sample_json_line(int n, const Partition& lambda, std::uint64_t seed) {
    return "{\"n\":" + std::to_string(n) + ",\"lambda\":" + lambda.to_json() + ",\"seed\":" + std::to_string(seed) + "}";
}

template std::vector<std::pair<Partition, Rational>> up_transition<Rational>(const Partition&, const ZParams<Rational>&);
template std::vector<std::pair<Partition, cplx>> up_transition<cplx>(const Partition&, const ZParams<cplx>&);
template std::map<Partition, Rational> path_product_law<Rational>(int, const ZParams<Rational>&);
template std::map<Partition, cplx> path_product_law<cplx>(int, const ZParams<cplx>&);

}  // namespace zm
