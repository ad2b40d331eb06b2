#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace crosschar {

// Error taxonomy. ArgumentError: caller passed something malformed.
// ConfigError: incompatible objects (field mismatch etc). PreconditionError:
// a mathematical hypothesis of the operation fails. RefusalError: input is
// valid but outside the supported size envelope. InternalError: a certified
// algorithm failed its own certificate; signals a bug.
struct ArgumentError : std::runtime_error {
    explicit ArgumentError(const std::string& m) : std::runtime_error(m) {}
};
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& m) : std::runtime_error(m) {}
};
struct RefusalError : std::runtime_error {
    explicit RefusalError(const std::string& m) : std::runtime_error(m) {}
};
struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& m) : std::runtime_error(m) {}
};

// splitmix64; deterministic given the seed, stable across platforms.
class Rng {
  public:
    explicit Rng(uint64_t seed = 0x9e3779b97f4a7c15ull) : s_(seed) {}
    uint64_t next() {
        uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }
    Rng fork(uint64_t salt) { return Rng(next() ^ (salt * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull)); }

  private:
    uint64_t s_;
};

inline uint64_t hash_combine(uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> ps;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// largest power of p dividing n
inline uint64_t p_part(uint64_t n, uint64_t p) {
    uint64_t m = 1;
    while (n % p == 0) {
        n /= p;
        m *= p;
    }
    return m;
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace crosschar
