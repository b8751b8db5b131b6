#include "gsig/class_number.hpp"

#include "gsig/cyclotomic.hpp"
#include "gsig/intmat.hpp"

namespace gsig {

namespace {

void check_p(long p) {
    if (!is_prime(p) || p == 2) throw spec_error("p must be an odd prime");
    if (p > 200) throw cap_error("class number oracle capped at p <= 200");
}

long inverse_mod(long a, long p) {
    long t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        long q = r / new_r;
        std::swap(t, new_t);
        new_t -= q * t;
        std::swap(r, new_r);
        new_r -= q * r;
    }
    return pos_mod(t, p);
}

long least_primitive_root(long p) {
    std::vector<long> prime_factors;
    long m = p - 1;
    for (long q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            prime_factors.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) prime_factors.push_back(m);
    for (long g = 2; g < p; ++g) {
        bool primitive = true;
        for (long q : prime_factors) {
            long e = (p - 1) / q;
            long acc = 1, base = g;
            while (e > 0) {
                if (e & 1) acc = acc * base % p;
                base = base * base % p;
                e >>= 1;
            }
            if (acc == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw std::logic_error("no primitive root found");
}

}  // namespace

Int h_minus_maillet(long p) {
    check_p(p);
    long m = (p - 1) / 2;
    IntMatrix mat(static_cast<int>(m), static_cast<int>(m));
    for (long b = 1; b <= m; ++b) {
        long binv = inverse_mod(b, p);
        for (long a = 1; a <= m; ++a) mat.at(a - 1, b - 1) = pos_mod(a * binv, p);
    }
    Int d = det(mat);
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>((p - 3) / 2));
    Int h = abs(d);
    if (h % scale != 0) throw std::logic_error("maillet determinant is not divisible by p^((p-3)/2)");
    return h / scale;
}

Int h_minus_bernoulli(long p) {
    check_p(p);
    long n = p - 1;  // character group order
    long g = least_primitive_root(p);

    // discrete log base g: a = g^dlog[a] mod p
    std::vector<long> dlog(p, -1);
    long acc = 1;
    for (long e = 0; e < n; ++e) {
        dlog[acc] = e;
        acc = acc * g % p;
    }

    // chi_t(g^e) = zeta_n^{te}; chi_t is odd iff t is odd
    Cyclotomic prod = Cyclotomic::one(n);
    for (long t = 1; t < n; t += 2) {
        std::vector<Rat> b1(n, Rat(0));  // coefficients of sum_a a*chi_t(a), grouped by zeta power
        for (long a = 1; a < p; ++a) b1[pos_mod(t * dlog[a], n)] += a;
        Cyclotomic b = Rat(-1, 2 * p) * Cyclotomic::from_coeffs(n, b1);  // -B_{1,chi}/2
        prod = prod * b;
    }
    prod = Rat(2 * p) * prod;
    if (!prod.is_integer())
        throw std::logic_error("bernoulli product for h^- is not a rational integer");
    Int h = prod.integer_value();
    if (h <= 0) throw std::logic_error("bernoulli h^- is not positive");
    return h;
}

ClassNumberResult h_minus(long p) {
    Int a = h_minus_maillet(p);
    Int b = h_minus_bernoulli(p);
    if (a != b) throw std::logic_error("class number oracles disagree at p=" + std::to_string(p));
    return ClassNumberResult{p, a, {"maillet", "bernoulli"}};
}

}  // namespace gsig
