#include "gsig/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace gsig {

namespace {

constexpr double kPi = 3.14159265358979323846;

// exact division of integer polynomials, remainder must vanish
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> q(num.size() - den.size() + 1, Int(0));
    for (int i = static_cast<int>(num.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
        if (num[i] == 0) continue;
        Int c = num[i] / den.back();
        if (c * den.back() != num[i]) throw std::logic_error("poly_div_exact: not divisible");
        int off = i - static_cast<int>(den.size()) + 1;
        q[off] = c;
        for (size_t j = 0; j < den.size(); ++j) num[off + j] -= c * den[j];
    }
    for (const Int& c : num)
        if (c != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
    return q;
}

}  // namespace

const std::vector<Int>& Cyclotomic::minimal_polynomial(long n) {
    static std::mutex mu;
    static std::map<long, std::vector<Int>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::function<const std::vector<Int>&(long)> phi_of = [&](long m) -> const std::vector<Int>& {
        auto found = cache.find(m);
        if (found != cache.end()) return found->second;
        std::vector<Int> num(m + 1, Int(0));
        num[0] = -1;
        num[m] = 1;
        for (long d : divisors(m)) {
            if (d == m) continue;
            num = poly_div_exact(std::move(num), phi_of(d));
        }
        return cache.emplace(m, std::move(num)).first->second;
    };
    return phi_of(n);
}

std::vector<Rat> Cyclotomic::reduce(long n, std::vector<Rat> poly) {
    const std::vector<Int>& phi = minimal_polynomial(n);
    size_t deg = phi.size() - 1;  // = phi(n)
    for (int i = static_cast<int>(poly.size()) - 1; i >= static_cast<int>(deg); --i) {
        Rat c = poly[i];
        if (c == 0) continue;
        int off = i - static_cast<int>(deg);
        for (size_t j = 0; j < phi.size(); ++j) poly[off + j] -= c * Rat(phi[j]);
    }
    poly.resize(deg);
    for (Rat& c : poly) c.canonicalize();
    return poly;
}

Cyclotomic Cyclotomic::zero(long order) {
    Cyclotomic z;
    z.order_ = order;
    z.c_.assign(euler_phi(order), Rat(0));
    return z;
}

Cyclotomic Cyclotomic::one(long order) {
    Cyclotomic z = zero(order);
    z.c_[0] = 1;
    return z;
}

Cyclotomic Cyclotomic::root_of_unity(long n, long k) {
    k = pos_mod(k, n);
    std::vector<Rat> poly(k + 1, Rat(0));
    poly[k] = 1;
    Cyclotomic z;
    z.order_ = n;
    z.c_ = reduce(n, std::move(poly));
    return z;
}

Cyclotomic Cyclotomic::from_coeffs(long order, std::vector<Rat> coeffs) {
    Cyclotomic z;
    z.order_ = order;
    z.c_ = reduce(order, std::move(coeffs));
    return z;
}

Cyclotomic Cyclotomic::promoted(long m) const {
    if (m == order_) return *this;
    if (m % order_ != 0) throw std::logic_error("promoted: old order must divide new order");
    long k = m / order_;
    std::vector<Rat> poly(static_cast<size_t>((c_.size() - 1) * k + 1), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) poly[i * k] = c_[i];
    Cyclotomic z;
    z.order_ = m;
    z.c_ = reduce(m, std::move(poly));
    return z;
}

Cyclotomic Cyclotomic::conj() const {
    std::vector<Rat> poly(order_, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) poly[(order_ - i) % order_] += c_[i];
    Cyclotomic z;
    z.order_ = order_;
    z.c_ = reduce(order_, std::move(poly));
    return z;
}

bool Cyclotomic::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::logic_error("rational_value of an irrational cyclotomic");
    return c_[0];
}

bool Cyclotomic::is_integer() const {
    return is_rational() && c_[0].get_den() == 1;
}

Int Cyclotomic::integer_value() const {
    Rat r = rational_value();
    if (r.get_den() != 1) throw std::logic_error("integer_value of a non-integer");
    return r.get_num();
}

std::complex<double> Cyclotomic::approx() const {
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        double angle = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(order_);
        acc += c_[i].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc;
}

std::string Cyclotomic::to_string() const {
    std::ostringstream os;
    bool any = false;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (any) os << " + ";
        os << c_[i].get_str();
        if (i == 1) os << "*z" << order_;
        if (i > 1) os << "*z" << order_ << "^" << i;
        any = true;
    }
    if (!any) return "0";
    return os.str();
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic z = *this;
    for (Rat& c : z.c_) c = -c;
    return z;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    long m = std::lcm(a.order_, b.order_);
    Cyclotomic x = a.promoted(m), y = b.promoted(m);
    for (size_t i = 0; i < x.c_.size(); ++i) {
        x.c_[i] += y.c_[i];
        x.c_[i].canonicalize();
    }
    return x;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    long m = std::lcm(a.order_, b.order_);
    Cyclotomic x = a.promoted(m), y = b.promoted(m);
    std::vector<Rat> poly(x.c_.size() + y.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < x.c_.size(); ++i) {
        if (x.c_[i] == 0) continue;
        for (size_t j = 0; j < y.c_.size(); ++j) {
            if (y.c_[j] == 0) continue;
            poly[i + j] += x.c_[i] * y.c_[j];
        }
    }
    return Cyclotomic::from_coeffs(m, std::move(poly));
}

Cyclotomic operator*(const Rat& s, const Cyclotomic& a) {
    Cyclotomic z = a;
    for (Rat& c : z.c_) {
        c *= s;
        c.canonicalize();
    }
    return z;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    long m = std::lcm(a.order_, b.order_);
    return a.promoted(m).c_ == b.promoted(m).c_;
}

}  // namespace gsig
