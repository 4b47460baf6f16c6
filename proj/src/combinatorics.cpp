#include "rainbow/combinatorics.hpp"

#include <array>
#include <limits>

namespace rainbow {

namespace {

struct BinomialTable {
    std::array<std::array<uint64_t, kMaxBinomialK + 1>, kMaxBinomialN + 1> c{};
    BinomialTable() {
        constexpr uint64_t inf = std::numeric_limits<uint64_t>::max();
        for (int n = 0; n <= kMaxBinomialN; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= kMaxBinomialK; ++k) {
                if (k > n) {
                    c[n][k] = 0;
                    continue;
                }
                uint64_t a = c[n - 1][k - 1];
                uint64_t b = n - 1 >= 0 ? c[n - 1][k] : 0;
                c[n][k] = (a == inf || b == inf || a > inf - b) ? inf : a + b;
            }
        }
    }
};

const BinomialTable& table() {
    static const BinomialTable t;
    return t;
}

}  // namespace

uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (n > kMaxBinomialN || k > kMaxBinomialK) {
        if (n - k <= kMaxBinomialK) return binomial(n, n - k);
        throw std::out_of_range("binomial: argument outside precomputed range");
    }
    return table().c[n][k];
}

uint64_t colex_rank(const int* elems, int k) {
    uint64_t rank = 0;
    for (int i = 0; i < k; ++i) rank += binomial(elems[i], i + 1);
    return rank;
}

uint64_t colex_rank(const std::vector<int>& elems) {
    return colex_rank(elems.data(), static_cast<int>(elems.size()));
}

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    if (k == 0) {
        fn(c);
        return;
    }
    while (true) {
        fn(c);
        int i = k - 1;
        while (i >= 0 && c[i] == n - k + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

uint64_t ceil_nth_root(unsigned __int128 x, int h) {
    if (h <= 0) throw std::invalid_argument("ceil_nth_root: h must be positive");
    if (x <= 1) return x == 0 ? 0 : 1;
    uint64_t lo = 1, hi = 2;
    auto pow_ge = [h](uint64_t k, unsigned __int128 target) {
        unsigned __int128 acc = 1;
        for (int i = 0; i < h; ++i) {
            acc *= k;
            if (acc >= target) return true;
        }
        return acc >= target;
    };
    while (!pow_ge(hi, x)) {
        lo = hi;
        if (hi > (uint64_t(1) << 62)) throw std::overflow_error("ceil_nth_root: out of range");
        hi *= 2;
    }
    while (lo < hi) {
        uint64_t mid = lo + (hi - lo) / 2;
        if (pow_ge(mid, x))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

uint64_t checked_pow(uint64_t base, unsigned exp, uint64_t limit) {
    uint64_t acc = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && acc > limit / base) throw std::overflow_error("checked_pow: result exceeds limit");
        acc *= base;
        if (acc > limit) throw std::overflow_error("checked_pow: result exceeds limit");
    }
    return acc;
}

uint64_t factorial(int n) {
    if (n < 0 || n > 20) throw std::out_of_range("factorial: n must be in [0,20]");
    uint64_t acc = 1;
    for (int i = 2; i <= n; ++i) acc *= uint64_t(i);
    return acc;
}

}  // namespace rainbow
