#pragma once

#include <gmpxx.h>

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsig {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy, mirrored by the CLI exit codes.
struct spec_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;  // malformed input (exit 2)
};
struct cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;  // size guard exceeded (exit 3)
};
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;  // invalid data, e.g. product not in [G,G] (exit 4)
};
struct table_error : std::runtime_error {
    using std::runtime_error::runtime_error;  // no character table available (exit 5)
};

inline long gcd_l(long a, long b) { return std::gcd(a, b); }
inline long lcm_l(long a, long b) { return std::lcm(a, b); }

inline long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> small, large;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// mod in [0, m)
inline long pos_mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline Int int_from_string(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw spec_error("not an integer: '" + s + "'");
    }
}

}  // namespace gsig
