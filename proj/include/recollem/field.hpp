#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>

#include "errors.hpp"

namespace recollem {

// Exact scalars.  Everything in this library is templated over a field K
// providing exact arithmetic; floating point never appears.
//
// Two fields are supported: arbitrary-precision rationals and prime fields
// with machine-word modulus.

using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

// Deterministic Miller-Rabin; bases {2, 7, 61} decide primality for all n < 2^32.
inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 7ull, 61ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// Prime-field element.  An element normally carries its modulus; elements
// created from bare integer constants (identity matrices, +-1 coefficients)
// carry modulus 0 and behave as integer literals until they meet an element
// with a known modulus, at which point they reduce.  Two distinct known
// moduli in one operation is an arithmetic error, never a silent wrap.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(int n) : v_(n), p_(0) {}
    Fp(long long n) : v_(n), p_(0) {}

    static Fp make(long long n, std::uint32_t p) {
        check_modulus(p);
        return Fp(reduce(n, p), p);
    }

    std::uint32_t modulus() const { return p_; }
    bool has_modulus() const { return p_ != 0; }

    // Canonical value in [0, p) when the modulus is known.
    long long canonical() const { return v_; }

    bool is_zero() const { return v_ == 0; }

    friend Fp operator+(Fp a, Fp b) {
        unify(a, b);
        return Fp(a.p_ ? reduce(a.v_ + b.v_, a.p_) : checked_add(a.v_, b.v_), a.p_);
    }
    friend Fp operator-(Fp a, Fp b) {
        unify(a, b);
        return Fp(a.p_ ? reduce(a.v_ - b.v_, a.p_) : checked_add(a.v_, -b.v_), a.p_);
    }
    friend Fp operator*(Fp a, Fp b) {
        unify(a, b);
        if (a.p_) {
            return Fp(static_cast<long long>(detail::mulmod_u64(
                          static_cast<std::uint64_t>(a.v_), static_cast<std::uint64_t>(b.v_), a.p_)),
                      a.p_);
        }
        return Fp(checked_mul(a.v_, b.v_), 0);
    }
    friend Fp operator/(Fp a, Fp b) {
        unify(a, b);
        if (b.v_ == 0) throw ArithmeticError("division by zero in F_p");
        if (a.p_ == 0) {
            if (b.v_ == 1) return a;
            if (b.v_ == -1) return Fp(-a.v_, 0);
            throw ArithmeticError("division of modulus-free literals is only defined by +-1");
        }
        return a * Fp(inverse_mod(b.v_, a.p_), a.p_);
    }
    Fp operator-() const { return p_ ? Fp(reduce(-v_, p_), p_) : Fp(-v_, 0); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    friend bool operator==(Fp a, Fp b) {
        unify(a, b);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

private:
    Fp(long long v, std::uint32_t p) : v_(v), p_(p) {}

    static void check_modulus(std::uint32_t p) {
        if (p < 2 || p > 0x7fffffffu || !is_prime_u32(p))
            throw ArithmeticError("modulus must be a prime below 2^31: " + std::to_string(p));
    }

    static long long reduce(long long n, std::uint32_t p) {
        long long r = n % static_cast<long long>(p);
        if (r < 0) r += p;
        return r;
    }

    static long long checked_add(long long a, long long b) {
        long long r;
        if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("literal overflow in F_p");
        return r;
    }

    static long long checked_mul(long long a, long long b) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("literal overflow in F_p");
        return r;
    }

    static long long inverse_mod(long long a, std::uint32_t p) {
        // extended Euclid; a nonzero mod p
        long long t = 0, nt = 1, r = p, nr = a % p;
        while (nr != 0) {
            long long q = r / nr;
            t = std::exchange(nt, t - q * nt);
            r = std::exchange(nr, r - q * nr);
        }
        if (r != 1) throw ArithmeticError("element not invertible mod " + std::to_string(p));
        return t < 0 ? t + p : t;
    }

    // Reconcile moduli before an operation; reduces literal operands.
    static void unify(Fp& a, Fp& b) {
        if (a.p_ == b.p_) return;
        if (a.p_ != 0 && b.p_ != 0)
            throw ArithmeticError("characteristic mismatch: F_" + std::to_string(a.p_) +
                                  " vs F_" + std::to_string(b.p_));
        if (a.p_ == 0) {
            a.v_ = reduce(a.v_, b.p_);
            a.p_ = b.p_;
        } else {
            b.v_ = reduce(b.v_, a.p_);
            b.p_ = a.p_;
        }
    }

    long long v_;
    std::uint32_t p_;
};

// Which field a computation runs over; carried by the CLI and serializers.
struct FieldSpec {
    enum class Kind { rational, prime };
    Kind kind = Kind::rational;
    std::uint32_t p = 0;

    static FieldSpec rationals() { return FieldSpec{Kind::rational, 0}; }
    static FieldSpec prime(std::uint32_t p) {
        if (p < 2 || p > 0x7fffffffu || !is_prime_u32(p))
            throw SchemaError("field modulus must be a prime below 2^31: " + std::to_string(p));
        return FieldSpec{Kind::prime, p};
    }

    // Accepts "q" or "fp:<prime>".
    static FieldSpec parse(const std::string& s) {
        if (s == "q") return rationals();
        if (s.rfind("fp:", 0) == 0) {
            const std::string digits = s.substr(3);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw SchemaError("bad field spec: " + s);
            unsigned long long v = 0;
            try {
                v = std::stoull(digits);
            } catch (const std::exception&) {
                throw SchemaError("bad field spec: " + s);
            }
            if (v > 0x7fffffffu) throw SchemaError("field modulus out of range: " + s);
            return prime(static_cast<std::uint32_t>(v));
        }
        throw SchemaError("bad field spec (want q or fp:<prime>): " + s);
    }

    std::string str() const {
        return kind == Kind::rational ? "q" : "fp:" + std::to_string(p);
    }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

namespace detail {

// Accepts ^-?[0-9]+(/-?[0-9]+)?$ and splits it into numerator / denominator.
inline bool scan_fraction(const std::string& s, std::string& num, std::string& den) {
    auto ok_int = [](const std::string& t) {
        if (t.empty()) return false;
        const std::size_t start = t[0] == '-' ? 1 : 0;
        return start < t.size() &&
               t.find_first_not_of("0123456789", start) == std::string::npos;
    };
    const std::size_t slash = s.find('/');
    const std::string a = slash == std::string::npos ? s : s.substr(0, slash);
    const std::string b = slash == std::string::npos ? std::string() : s.substr(slash + 1);
    if (!ok_int(a)) return false;
    if (slash != std::string::npos && !ok_int(b)) return false;
    num = a;
    den = slash == std::string::npos ? std::string("1") : b;
    return true;
}

}  // namespace detail

template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static constexpr const char* name = "q";

    static Rational parse(const std::string& s, const FieldSpec& spec) {
        if (spec.kind != FieldSpec::Kind::rational)
            throw SchemaError("rational scalar parsed under field " + spec.str());
        std::string num, den;
        if (!detail::scan_fraction(s, num, den))
            throw SchemaError("bad rational scalar: '" + s + "'");
        boost::multiprecision::cpp_int n(num), d(den);
        if (d == 0) throw SchemaError("zero denominator in scalar: '" + s + "'");
        Rational r(n);
        return r / Rational(d);
    }

    static std::string to_string(const Rational& x) { return x.str(); }
};

template <>
struct FieldTraits<Fp> {
    static constexpr const char* name = "fp";

    // Accepts "a" or "a/b"; fractions mean a * b^-1 mod p.
    static Fp parse(const std::string& s, const FieldSpec& spec) {
        if (spec.kind != FieldSpec::Kind::prime)
            throw SchemaError("prime-field scalar parsed under field " + spec.str());
        std::string num, den;
        if (!detail::scan_fraction(s, num, den))
            throw SchemaError("bad scalar: '" + s + "'");
        auto parse_ll = [&](const std::string& t) {
            try {
                return std::stoll(t);
            } catch (const std::exception&) {
                // Reduce digit by digit; input may exceed long long.
                bool neg = t[0] == '-';
                long long acc = 0;
                for (std::size_t k = neg ? 1 : 0; k < t.size(); ++k)
                    acc = (acc * 10 + (t[k] - '0')) % static_cast<long long>(spec.p);
                return neg ? -acc : acc;
            }
        };
        Fp n = Fp::make(parse_ll(num), spec.p);
        Fp d = Fp::make(parse_ll(den), spec.p);
        if (d.is_zero()) throw SchemaError("zero denominator in scalar: '" + s + "'");
        return n / d;
    }

    static std::string to_string(const Fp& x) { return std::to_string(x.canonical()); }
};

template <class K>
concept ExactField = std::regular<K> && requires(K a, K b) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { a / b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { K(1) };
    { FieldTraits<K>::to_string(a) } -> std::convertible_to<std::string>;
};

template <class K>
bool is_zero(const K& x) {
    return x == K(0);
}

}  // namespace recollem
