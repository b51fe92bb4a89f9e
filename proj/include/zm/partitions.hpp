#pragma once

#include "zm/scalar.hpp"

#include <compare>
#include <string>
#include <vector>

namespace zm {

/// A Young diagram stored as its weakly decreasing list of positive parts.
class Partition {
public:
    Partition() = default;
    /// Validates that parts are positive and weakly decreasing.
    explicit Partition(std::vector<int> parts);
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return size_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    /// 1-based row length lambda_i, zero beyond the last row.
    int row(int i) const { return i >= 1 && i <= length() ? parts_[static_cast<std::size_t>(i - 1)] : 0; }
    /// Whether the 1-based box (i, j) lies in the diagram.
    bool contains(int i, int j) const { return i >= 1 && j >= 1 && j <= row(i); }

    std::string to_string() const;
    std::string to_json() const;

    auto operator<=>(const Partition&) const = default;
    bool operator==(const Partition&) const = default;

private:
    std::vector<int> parts_;
    int size_ = 0;
};

/// Hook coordinates (p_1 > ... > p_d | q_1 > ... > q_d).
struct FrobeniusCoords {
    std::vector<int> p;
    std::vector<int> q;
    int rank() const { return static_cast<int>(p.size()); }
    std::string to_json() const;
    bool operator==(const FrobeniusCoords&) const = default;
};

/// Multiplicities r_k of each part size k (index 0 unused).
struct ExponentialForm {
    std::vector<int> r;
    int multiplicity(int k) const { return k >= 1 && k < static_cast<int>(r.size()) ? r[static_cast<std::size_t>(k)] : 0; }
};

FrobeniusCoords frobenius(const Partition& lambda);
/// Inverse of frobenius; throws InvalidInput for non-strict or unequal-length coordinates.
Partition from_frobenius(const FrobeniusCoords& f);
Partition transpose(const Partition& lambda);
ExponentialForm exponential_form(const Partition& lambda);
/// Number of diagonal boxes d(lambda).
int diagonal_length(const Partition& lambda);

/// Hook length of the 1-based box (i, j); throws BoxOutOfShape outside the diagram.
int hook_length(const Partition& lambda, int i, int j);

enum class DimMethod { hook, determinant, frobenius, paths };

/// Number of standard tableaux of shape lambda, by the requested formula.
BigInt dim(const Partition& lambda, DimMethod method = DimMethod::hook);
/// Row-determinant formula with an explicit number of rows l >= length.
BigInt dim_rows(const Partition& lambda, int l);

/// All diagrams obtained by adding one box, ordered by the row of the new box.
std::vector<Partition> add_boxes(const Partition& mu);
/// All diagrams obtained by removing one box, ordered by the row of the removed box.
std::vector<Partition> remove_boxes(const Partition& lambda);

/// Multiplicity in lambda of the part that was augmented to pass from mu to lambda.
int kingman_multiplicity(const Partition& mu, const Partition& lambda);

enum class Dim0Method { recurrence, closed_form };

/// Number of paths from the empty diagram to lambda in the Kingman graph.
BigInt dim0(const Partition& lambda, Dim0Method method = Dim0Method::closed_form);

/// z_lambda = prod_k k^{r_k} r_k!.
BigInt z_lambda(const Partition& lambda);

/// All partitions of n in reverse lexicographic order, (n) first.
std::vector<Partition> partitions_of(int n);

/// A point of the Thoma simplex with finitely many nonzero coordinates.
template <class F>
struct ThomaPointT {
    std::vector<F> alpha;
    std::vector<F> beta;
    F gamma{};
};
using ThomaPoint = ThomaPointT<double>;

/// Checks ordering, nonnegativity and sum = 1 (exactly, or within 1e-12 for doubles).
template <class F> void validate_thoma_point(const ThomaPointT<F>& w);

/// Extended power sum: 1 for n = 1, sum alpha^n + (-1)^{n-1} sum beta^n for n >= 2.
template <class F> F extended_power_sum(const ThomaPointT<F>& w, int n);

}  // namespace zm
