#pragma once

#include "zm/partitions.hpp"

#include <vector>

namespace zm {

/// Cycle type rho of a permutation; entries need not be sorted.
using CycleType = std::vector<int>;

/// Irreducible character value chi^lambda_rho by the Murnaghan-Nakayama rule.
/// Throws SizeMismatch when the cycle lengths do not sum to |lambda|.
BigInt chi(const Partition& lambda, const CycleType& rho);

/// True iff d(lambda) > n_cycles, in which case chi^lambda vanishes on every class with n_cycles cycles.
bool chi_vanishing_check(const Partition& lambda, int n_cycles);

}  // namespace zm
