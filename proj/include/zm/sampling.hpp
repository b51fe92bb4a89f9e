#pragma once

#include "zm/zmeasure.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace zm {

/// Reproducible uniform stream: mt19937_64 seeded through splitmix64, uniforms (x >> 11) * 2^-53.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double uniform();
    std::uint64_t seed() const { return seed_; }
    /// Seed of the independent chain number k derived from a base seed.
    static std::uint64_t chain_seed(std::uint64_t base, std::uint64_t k);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Transition probabilities mu -> lambda over add_boxes(mu), (dim mu / dim lambda) M(lambda) / M(mu).
template <class F> std::vector<std::pair<Partition, F>> up_transition(const Partition& mu, const ZParams<F>& params);

/// The same probabilities from the contents of addable (a_k) and removable (b_j) corners:
/// (z + a_k)(z' + a_k)/(t + n) * prod_j (a_k - b_j) / prod_{j != k} (a_k - a_j).
std::vector<double> up_transition_fast(const Partition& mu, const ZParams<cplx>& params);

/// Sum over all paths to each lambda of the product of up_transition probabilities.
template <class F> std::map<Partition, F> path_product_law(int n, const ZParams<F>& params);

/// Index chosen by cumulative-sum inversion; the last bucket absorbs rounding.
std::size_t sample_index(const std::vector<double>& probs, double u);

/// Grows a diagram box by box from the empty one; one uniform per step.
Partition sample_partition(int n, const ZParams<cplx>& params, Rng& rng);
Partition sample_partition(int n, const ZParams<cplx>& params, std::uint64_t seed);

/// A finite point configuration in [-1, 1] minus {0}.
struct Configuration {
    std::vector<double> points;
};

/// Points (p_i + 1/2)/n and -(q_i + 1/2)/n from the Frobenius coordinates of lambda, |lambda| = n.
Configuration embed_configuration(const Partition& lambda, int n);

/// Binned estimate of the first correlation measure: mean count per bin divided by the bin width.
struct Histogram {
    std::vector<double> lo, hi, estimate, stderr_;
    std::size_t samples = 0;
    std::string to_csv() const;
};

/// Bins are consecutive [edges[k], edges[k+1]); no bin may contain 0 in its interior.
/// The standard error uses the sample variance of the per-configuration counts.
Histogram empirical_density(const std::vector<Configuration>& samples, const std::vector<double>& edges);

/// Runs count independent draws, draw k with its own Rng(Rng::chain_seed(seed, k)); the result order
/// depends only on k, so the output is identical for every thread count (0 selects the hardware count).
template <class T>
std::vector<T> parallel_draws(std::size_t count, std::uint64_t seed, const std::function<T(Rng&)>& draw,
                              unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::vector<T> out(count);
    const auto work = [&](unsigned w) {
        for (std::size_t k = w; k < count; k += threads) {
            Rng rng(Rng::chain_seed(seed, k));
            out[k] = draw(rng);
        }
    };
    if (threads == 1) {
        work(0);
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
    return out;
}

/// One JSON line {"n":..,"lambda":[..],"seed":..}.
std::string sample_json_line(int n, const Partition& lambda, std::uint64_t seed);

}  // namespace zm
