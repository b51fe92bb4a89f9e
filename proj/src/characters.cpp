#include "zm/characters.hpp"

#include "zm/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace zm {

namespace {

using MemoKey = std::pair<std::vector<int>, std::vector<int>>;

/// Beta numbers lambda_i + l - i of a partition with l rows, in decreasing order.
std::vector<int> beta_set(const std::vector<int>& parts) {
    const int l = static_cast<int>(parts.size());
    std::vector<int> beta(parts.size());
    for (int i = 0; i < l; ++i) beta[static_cast<std::size_t>(i)] = parts[static_cast<std::size_t>(i)] + l - 1 - i;
    return beta;
}

std::vector<int> parts_from_beta(std::vector<int> beta) {
    std::sort(beta.rbegin(), beta.rend());
    const int l = static_cast<int>(beta.size());
    std::vector<int> parts;
    for (int i = 0; i < l; ++i) {
        const int part = beta[static_cast<std::size_t>(i)] - (l - 1 - i);
        if (part > 0) parts.push_back(part);
    }
    return parts;
}

/// rho is sorted decreasingly; the longest cycle rho[0] is stripped as a rim hook.
BigInt chi_sorted(const std::vector<int>& parts, const std::vector<int>& rho) {
    if (rho.empty()) return parts.empty() ? BigInt(1) : BigInt(0);
    thread_local std::map<MemoKey, BigInt> memo;
    MemoKey key{parts, rho};
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const int k = rho.front();
    const std::vector<int> rest(rho.begin() + 1, rho.end());
    const std::vector<int> beta = beta_set(parts);
    BigInt total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const int target = beta[i] - k;
        if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        // height of the rim hook = number of beads strictly between target and beta[i]
        const auto height = std::count_if(beta.begin(), beta.end(), [&](int b) { return b > target && b < beta[i]; });
        std::vector<int> moved = beta;
        moved[i] = target;
        const BigInt sub = chi_sorted(parts_from_beta(moved), rest);
        if (height % 2 == 0) total += sub; else total -= sub;
    }
    memo.emplace(std::move(key), total);
    return total;
}

}  // namespace

BigInt chi(const Partition& lambda, const CycleType& rho) {
    for (int r : rho)
        if (r < 1) throw InvalidInput("cycle lengths must be positive");
    if (std::accumulate(rho.begin(), rho.end(), 0) != lambda.size())
        throw SizeMismatch("cycle type does not sum to |lambda| = " + std::to_string(lambda.size()));
    std::vector<int> sorted = rho;
    std::sort(sorted.rbegin(), sorted.rend());
    return chi_sorted(lambda.parts(), sorted);
}

bool chi_vanishing_check(const Partition& lambda, int n_cycles) { return diagonal_length(lambda) > n_cycles; }

}  // namespace zm
