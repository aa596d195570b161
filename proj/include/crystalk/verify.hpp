#pragma once

#include "crystalk/crystal.hpp"
#include "crystalk/zpmod.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace crystalk {

struct CheckResult {
  std::string suite;
  std::string name;
  std::string context;  // degrees or trial index the check ran at
  bool passed = false;
  std::string detail;   // observed versus expected on failure
};

struct VerifyOptions {
  bool parallel = false;
  std::uint64_t seed = 20240229;
  std::size_t random_trials = 25;
};

// An internal error inside a check; what() carries a reproducer (p, k, m, i).
class VerificationAborted : public std::runtime_error {
 public:
  explicit VerificationAborted(const std::string& what) : std::runtime_error(what) {}
};

// Every invariant suite for one group. Closed forms use (p, k); the
// brute-force oracles use the descriptor's rho.
std::vector<CheckResult> run_verification(const GammaDescriptor& g, const VerifyOptions& opts = {});

// Pair (U, U^-1) of a random product of elementary integer matrices.
std::pair<IntMatrix, IntMatrix> random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 12);

// Random block sum of trivial, cyclotomic and regular modules of total rank
// in [1, max_rank], conjugated by a random unimodular change of basis.
ZpModule random_order_p_module(long p, std::size_t max_rank, std::mt19937_64& rng);

IntMatrix random_matrix(std::size_t rows, std::size_t cols, long bound, std::mt19937_64& rng);

}  // namespace crystalk
