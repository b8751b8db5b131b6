#pragma once

#include <complex>

#include "gsig/common.hpp"

namespace gsig {

// Element of Q(zeta_N), stored as a rational polynomial in zeta_N reduced
// modulo the N-th cyclotomic polynomial. The representation is canonical, so
// equality at a common order is coefficient equality.
class Cyclotomic {
public:
    Cyclotomic() : order_(1), c_(1, Rat(0)) {}
    explicit Cyclotomic(const Rat& r) : order_(1), c_(1, r) { c_[0].canonicalize(); }

    static Cyclotomic zero(long order = 1);
    static Cyclotomic one(long order = 1);
    static Cyclotomic root_of_unity(long n, long k);  // zeta_n^k
    static Cyclotomic from_coeffs(long order, std::vector<Rat> coeffs);  // reduced mod Phi

    long order() const { return order_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    Cyclotomic promoted(long m) const;  // embed into Q(zeta_m), order | m
    Cyclotomic conj() const;            // zeta -> zeta^{-1}

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;  // requires is_rational()
    bool is_integer() const;
    Int integer_value() const;

    std::complex<double> approx() const;
    std::string to_string() const;

    Cyclotomic operator-() const;
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Rat& s, const Cyclotomic& a);
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

    // monic Phi_n over Z, low degree first, length phi(n)+1 (cached)
    static const std::vector<Int>& minimal_polynomial(long n);

private:
    long order_;
    std::vector<Rat> c_;  // length phi(order_)

    static std::vector<Rat> reduce(long n, std::vector<Rat> poly);
};

}  // namespace gsig
