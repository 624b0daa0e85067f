#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace phantomcat {

class field_mismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The rational numbers, backed by GMP fractions kept in canonical form.
struct Rationals {
    using value_type = mpq_class;

    value_type zero() const { return value_type(0); }
    value_type one() const { return value_type(1); }
    value_type from_int(long long v) const { return value_type(static_cast<long>(v)); }

    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool is_one(const value_type& a) const { return a == 1; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const {
        if (is_zero(a)) throw std::domain_error("division by zero in Q");
        return value_type(1) / a;
    }
    value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }

    // a <- a - c*b, the elimination kernel
    void axpy_neg(value_type& a, const value_type& c, const value_type& b) const { a -= c * b; }

    value_type parse(const std::string& s) const {
        value_type v;
        if (v.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
        v.canonicalize();
        return v;
    }
    std::string format(const value_type& a) const { return a.get_str(); }

    std::size_t hash(const value_type& a) const {
        std::size_t h = mpz_get_ui(a.get_num_mpz_t());
        h ^= mpz_get_ui(a.get_den_mpz_t()) * 0x9e3779b97f4a7c15ULL;
        return sgn(a) < 0 ? ~h : h;
    }

    std::string name() const { return "Q"; }
    unsigned long characteristic() const { return 0; }

    bool operator==(const Rationals&) const { return true; }
};

/// The prime field F_p for p < 2^31.
struct PrimeField {
    using value_type = std::uint32_t;

    std::uint32_t p = 2;

    PrimeField() = default;
    explicit PrimeField(std::uint32_t prime) : p(prime) {
        if (prime < 2 || prime >= (1u << 31)) throw std::invalid_argument("prime out of range");
        for (std::uint64_t d = 2; d * d <= prime; ++d)
            if (prime % d == 0) throw std::invalid_argument("not a prime: " + std::to_string(prime));
    }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<value_type>(r);
    }

    bool is_zero(value_type a) const { return a == 0; }
    bool is_one(value_type a) const { return a == 1; }
    bool equal(value_type a, value_type b) const { return a == b; }

    value_type add(value_type a, value_type b) const {
        std::uint64_t s = std::uint64_t(a) + b;
        return static_cast<value_type>(s >= p ? s - p : s);
    }
    value_type sub(value_type a, value_type b) const {
        return a >= b ? a - b : static_cast<value_type>(std::uint64_t(a) + p - b);
    }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>((std::uint64_t(a) * b) % p);
    }
    value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
    value_type inv(value_type a) const {
        if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(p));
        std::int64_t t = 0, nt = 1, r = p, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        if (t < 0) t += p;
        return static_cast<value_type>(t);
    }
    value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

    void axpy_neg(value_type& a, value_type c, value_type b) const { a = sub(a, mul(c, b)); }

    value_type parse(const std::string& s) const {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("not an integer: " + s);
        }
        if (pos != s.size()) throw std::invalid_argument("not an integer: " + s);
        return from_int(v);
    }
    std::string format(value_type a) const { return std::to_string(a); }

    std::size_t hash(value_type a) const { return std::hash<std::uint32_t>{}(a); }

    std::string name() const { return "F" + std::to_string(p); }
    unsigned long characteristic() const { return p; }

    bool operator==(const PrimeField& o) const { return p == o.p; }
};

} // namespace phantomcat
