#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rainbow {

// Binomial coefficients clamped to uint64 max. Indices up to n=64, k=20 cover
// every host size this library is meant for.
inline constexpr int kMaxBinomialN = 64;
inline constexpr int kMaxBinomialK = 20;

uint64_t binomial(int n, int k);

// Colexicographic rank of a sorted ascending k-subset: sum C(e[i], i+1).
uint64_t colex_rank(const int* elems, int k);
uint64_t colex_rank(const std::vector<int>& elems);

// Visits all k-subsets of {0,...,n-1} in lexicographic order.
void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn);

// Smallest k with k^h >= x, i.e. ceil(x^(1/h)) for integer x >= 1.
uint64_t ceil_nth_root(unsigned __int128 x, int h);

// k^e with overflow check against `limit`; throws std::overflow_error.
uint64_t checked_pow(uint64_t base, unsigned exp, uint64_t limit);

uint64_t factorial(int n);  // n <= 20

}  // namespace rainbow
