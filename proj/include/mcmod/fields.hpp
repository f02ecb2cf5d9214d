#pragma once

// Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
// Everything downstream is parameterized on a field object that owns the
// element operations, so the same linear algebra runs over Q and over F_p.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mcmod {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Runtime field descriptor, used at the I/O boundary ("Q" or "Fp:<p>").
struct FieldSpec {
    enum class Kind { rationals, prime };
    Kind kind = Kind::rationals;
    std::uint32_t p = 0;

    static FieldSpec rationals() { return FieldSpec{Kind::rationals, 0}; }

    static FieldSpec prime(std::uint32_t p) {
        if (!is_prime_u32(p))
            throw std::domain_error("field modulus " + std::to_string(p) + " is not prime");
        return FieldSpec{Kind::prime, p};
    }

    static FieldSpec parse(const std::string& s) {
        if (s == "Q") return rationals();
        if (s.rfind("Fp:", 0) == 0) {
            unsigned long v = 0;
            try {
                v = std::stoul(s.substr(3));
            } catch (const std::exception&) {
                throw std::invalid_argument("bad field spec: " + s);
            }
            if (v >= (1ull << 31)) throw std::domain_error("field modulus out of range: " + s);
            return prime(static_cast<std::uint32_t>(v));
        }
        throw std::invalid_argument("bad field spec: " + s + " (expected \"Q\" or \"Fp:<p>\")");
    }

    std::string str() const {
        return kind == Kind::rationals ? "Q" : "Fp:" + std::to_string(p);
    }

    bool operator==(const FieldSpec&) const = default;
};

struct RationalField {
    using Element = BigRational;

    FieldSpec spec() const { return FieldSpec::rationals(); }

    Element zero() const { return Element(0); }
    Element one() const { return Element(1); }
    Element from_long(long long v) const { return Element(v); }
    Element from_fraction(const BigInt& n, const BigInt& d) const {
        if (d == 0) throw std::domain_error("zero denominator");
        Element r(n);
        r /= Element(d);
        return r;
    }

    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }
    Element inv(const Element& a) const {
        if (a == 0) throw std::domain_error("division by zero");
        return Element(1) / a;
    }
    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

    bool is_zero(const Element& a) const { return a == 0; }
    bool eq(const Element& a, const Element& b) const { return a == b; }

    std::string str(const Element& a) const { return a.str(); }

    bool operator==(const RationalField&) const = default;
};

// F_p with 2 <= p < 2^31; elements are canonical residues in [0, p).
class PrimeField {
public:
    using Element = std::uint64_t;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (!is_prime_u32(p)) throw std::domain_error("modulus " + std::to_string(p) + " is not prime");
    }

    std::uint32_t modulus() const { return p_; }
    FieldSpec spec() const { return FieldSpec::prime(p_); }

    Element zero() const { return 0; }
    Element one() const { return 1 % p_; }
    Element from_long(long long v) const {
        long long m = v % static_cast<long long>(p_);
        if (m < 0) m += p_;
        return static_cast<Element>(m);
    }

    Element add(Element a, Element b) const { return (a + b) % p_; }
    Element sub(Element a, Element b) const { return (a + p_ - b) % p_; }
    Element mul(Element a, Element b) const { return (a * b) % p_; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }

    Element inv(Element a) const {
        if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(p_));
        // extended Euclid on (a, p)
        long long t = 0, new_t = 1;
        long long r = static_cast<long long>(p_), new_r = static_cast<long long>(a);
        while (new_r != 0) {
            long long q = r / new_r;
            long long tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += p_;
        return static_cast<Element>(t);
    }
    Element div(Element a, Element b) const { return mul(a, inv(b)); }

    bool is_zero(Element a) const { return a == 0; }
    bool eq(Element a, Element b) const { return a == b; }

    std::string str(Element a) const { return std::to_string(a); }

    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t p_;
};

}  // namespace mcmod
