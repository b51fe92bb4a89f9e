#pragma once

#include "zm/density.hpp"
#include "zm/sampling.hpp"
#include "zm/zmeasure.hpp"

#include <cstdint>
#include <vector>

namespace zm {

/// Parameter t > 0 of the Ewens partition structure.
template <class F>
struct EwensParams {
    F t;
};

/// Validates t > 0; throws DomainError otherwise.
template <class F> EwensParams<F> make_ewens_params(const F& t);

/// M^(t)(lambda) = t^{l(lambda)} n! / ((t)_n z_lambda).
template <class F> F ewens_weight(const Partition& lambda, const EwensParams<F>& params);

/// Normalisation of levels n and n+1 and the Kingman-graph coherence
/// M(mu) = sum_lambda dim0(mu) kappa0(mu, lambda) / dim0(lambda) M(lambda) for mu of size n.
template <class F> VerificationReport verify_kingman_coherence(int n, const EwensParams<F>& params, double tol = 1e-12);

/// A partition of {1, ..., n} into nonempty blocks, each block sorted and blocks ordered by their least element.
struct SetPartition {
    std::vector<std::vector<int>> blocks;
    int rank() const { return static_cast<int>(blocks.size()); }
    std::vector<int> block_sizes() const;
    std::string to_string() const;
};

inline constexpr int kMaxSetPartitionSize = 10;

/// All set partitions of {1, ..., n} from restricted growth strings; n <= 10 (Bell(10) = 115975).
std::vector<SetPartition> set_partitions(int n);

/// Coefficient of m_lambda in p_{l_1+1} ... p_{l_n+1}; throws SizeMismatch unless sum (l_i + 1) = |lambda|.
BigInt monomial_coefficient(const std::vector<int>& l, const Partition& lambda);

enum class EwensMomentRoute { coefficient_sum, set_partition_sum };

/// Mixed moment of the controlling measure sigma^(t)_n, by monomial coefficients over Ewens weights
/// or by the sum over set partitions of t^r prod (m_i + |pi_i| - 1)! / (t)_{|l|+n}.
template <class F> F sigma_t_n_moment(const MomentSpec& spec, const EwensParams<F>& params, EwensMomentRoute route);

/// Contribution of one set partition pi to the moment with exponents l (pi covers 1..l.size()).
template <class F> F component_moment(const SetPartition& pi, const std::vector<int>& l, const EwensParams<F>& params);

/// Watterson's correlation function t^n (1 - sum x)_+^{t-1} / prod x; throws NonpositiveCoordinate.
double watterson_rho(const std::vector<double>& x, double t);

/// Density of the component of sigma^(t)_n on the diagonal section of pi, in block coordinates y:
/// t^r prod y_i^{|pi_i| - 1} (1 - sum y)_+^{t-1}.
double component_density(const std::vector<int>& block_sizes, const std::vector<double>& y, double t);

/// The same section density assembled as prod y_i^{|pi_i|} rho_r(y) with rho_r = watterson_rho.
double correlation_component_density(const std::vector<int>& block_sizes, const std::vector<double>& y, double t);

/// Integral of watterson_rho for n = 1 over [lo, hi] inside (0, 1].
double watterson_rho1_integral(double lo, double hi, double t);

/// A truncated Poisson-Dirichlet draw: alpha sorted decreasingly, beta empty, gamma = 0.
struct PdSample {
    ThomaPoint point;
    double residual = 0.0;  ///< stick mass left after truncation
    int sticks = 0;
};

/// 10 max(t, 1) log(1e12) sticks, rounded up.
int default_pd_truncation(double t);

/// Stick breaking with V_k = 1 - U_k^{1/t} (one uniform per stick); the residual is reported, not redistributed.
PdSample sample_pd(double t, int truncation, Rng& rng);
PdSample sample_pd(double t, int truncation, std::uint64_t seed);

/// Chinese restaurant process with one uniform per customer; the table-size law is M^(t)_n.
Partition sample_ewens(int n, double t, Rng& rng);
Partition sample_ewens(int n, double t, std::uint64_t seed);

}  // namespace zm
