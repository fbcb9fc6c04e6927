#pragma once

// Finite fields F_q, q = p^e, p an odd prime.
//
// Elements are encoded as integers in [0, q).  For e = 1 the encoding is the
// residue mod p.  For e > 1 it is the polynomial-basis coefficient vector
// read as base-p digits, lowest degree in the least-significant digit, so the
// prime subfield {0, ..., p-1} keeps its residue encoding in every extension.

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace adg {

class field_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class division_by_zero : public std::domain_error {
public:
    division_by_zero() : std::domain_error("inverse of zero in finite field") {}
};

struct Elem {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(Elem, Elem) = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomials over F_p, coefficient vectors low degree first.
using prime_poly = std::vector<std::uint32_t>;

inline void trim(prime_poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p prime, a != 0
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

// Remainder of a modulo b over F_p; b must be nonzero.
inline prime_poly poly_mod(prime_poly a, const prime_poly& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint64_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t factor = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            const std::uint64_t sub = factor * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

// Irreducibility by exhaustive search for a monic factor of degree <= deg/2.
inline bool is_irreducible(const prime_poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg <= 1) return deg == 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        prime_poly g(d + 1, 0);
        g[d] = 1;
        std::uint64_t combos = 1;
        for (std::size_t i = 0; i < d; ++i) combos *= p;
        for (std::uint64_t idx = 0; idx < combos; ++idx) {
            std::uint64_t rest = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(rest % p);
                rest /= p;
            }
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of the given degree, comparing
// coefficient vectors from the constant term upward.
inline prime_poly smallest_irreducible(std::uint32_t p, std::uint32_t degree) {
    prime_poly f(degree + 1, 0);
    f[degree] = 1;
    // Enumerate (c0, c1, ..., c_{e-1}) with c0 the most significant position.
    for (;;) {
        if (is_irreducible(f, p)) return f;
        int pos = static_cast<int>(degree) - 1;
        while (pos >= 0) {
            if (++f[pos] < p) break;
            f[pos] = 0;
            --pos;
        }
        if (pos < 0) throw field_error("no irreducible polynomial found");
    }
}

struct field_tables {
    std::vector<std::uint16_t> add, sub, mul;
    std::vector<std::uint16_t> inv;
    std::vector<std::uint16_t> neg;
};

}  // namespace detail

/// Immutable finite field of odd characteristic.  Copies share their lookup
/// tables, so passing a Field by value is cheap.
class Field {
public:
    /// Largest field order for which full q x q operation tables are built.
    static constexpr std::uint32_t table_limit = 1024;

    static Field make(std::uint32_t p, std::uint32_t e = 1) {
        if (e == 0) throw field_error("field exponent must be positive");
        if (p == 2) throw field_error("characteristic 2 is not supported");
        if (!detail::is_prime(p))
            throw field_error(std::to_string(p) + " is not prime");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            q *= p;
            if (q > (std::uint64_t{1} << 31))
                throw field_error("field order overflows the element encoding");
        }
        Field f;
        f.p_ = p;
        f.e_ = e;
        f.q_ = static_cast<std::uint32_t>(q);
        if (e > 1) f.modulus_ = detail::smallest_irreducible(p, e);
        if (f.q_ <= table_limit) f.build_tables();
        return f;
    }

    /// Field with q elements; q must be an odd prime power.
    static Field of_order(std::uint64_t q) {
        if (q < 3) throw field_error("field order must be an odd prime power >= 3");
        std::uint64_t p = 2;
        while (q % p != 0) ++p;
        std::uint32_t e = 0;
        std::uint64_t rest = q;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (rest != 1)
            throw field_error(std::to_string(q) + " is not a prime power");
        return make(static_cast<std::uint32_t>(p), e);
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint32_t q() const { return q_; }
    bool is_prime_field() const { return e_ == 1; }

    /// Monic irreducible modulus, low degree first, length e + 1; empty for
    /// prime fields.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Elem zero() const { return Elem{0}; }
    Elem one() const { return Elem{1}; }

    /// Image of an integer in the prime subfield.
    Elem from_int(std::int64_t n) const {
        std::int64_t r = n % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return Elem{static_cast<std::uint32_t>(r)};
    }

    Elem elem(std::uint32_t value) const {
        if (value >= q_) throw field_error("element encoding out of range");
        return Elem{value};
    }

    bool contains(Elem a) const { return a.value < q_; }

    Elem add(Elem a, Elem b) const {
        if (tables_) return Elem{tables_->add[a.value * q_ + b.value]};
        if (e_ == 1) return Elem{static_cast<std::uint32_t>((std::uint64_t{a.value} + b.value) % p_)};
        return digitwise(a, b, +1);
    }

    Elem sub(Elem a, Elem b) const {
        if (tables_) return Elem{tables_->sub[a.value * q_ + b.value]};
        if (e_ == 1) return Elem{static_cast<std::uint32_t>((std::uint64_t{a.value} + p_ - b.value) % p_)};
        return digitwise(a, b, -1);
    }

    Elem neg(Elem a) const {
        if (tables_) return Elem{tables_->neg[a.value]};
        return sub(zero(), a);
    }

    Elem mul(Elem a, Elem b) const {
        if (tables_) return Elem{tables_->mul[a.value * q_ + b.value]};
        if (e_ == 1) return Elem{static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value % p_)};
        return poly_mul(a, b);
    }

    Elem inv(Elem a) const {
        if (a.value == 0) throw division_by_zero();
        if (tables_) return Elem{tables_->inv[a.value]};
        if (e_ == 1) return Elem{detail::inv_mod(a.value, p_)};
        return pow(a, q_ - 2);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t n) const {
        Elem result = one();
        Elem base = a;
        while (n > 0) {
            if (n & 1u) result = mul(result, base);
            base = mul(base, base);
            n >>= 1;
        }
        return result;
    }

    /// x -> x^p, the generator of the Galois group over F_p.
    Elem frobenius(Elem a) const { return pow(a, p_); }

    /// All q elements in encoding order.
    std::vector<Elem> elements() const {
        std::vector<Elem> out(q_);
        for (std::uint32_t v = 0; v < q_; ++v) out[v] = Elem{v};
        return out;
    }

    /// Polynomial-basis coordinates of an element, low degree first.
    std::vector<std::uint32_t> digits(Elem a) const {
        std::vector<std::uint32_t> d(e_);
        std::uint32_t v = a.value;
        for (std::uint32_t i = 0; i < e_; ++i) {
            d[i] = v % p_;
            v /= p_;
        }
        return d;
    }

    Elem from_digits(const std::vector<std::uint32_t>& d) const {
        std::uint64_t v = 0;
        for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i] % p_;
        return elem(static_cast<std::uint32_t>(v));
    }

    /// Multiplicative order of a nonzero element.
    std::uint64_t order(Elem a) const {
        if (a.value == 0) throw division_by_zero();
        std::uint64_t k = 1;
        Elem x = a;
        while (x != one()) {
            x = mul(x, a);
            ++k;
        }
        return k;
    }

    std::string name() const {
        return "F_" + std::to_string(q_);
    }

    friend bool operator==(const Field& a, const Field& b) {
        return a.p_ == b.p_ && a.e_ == b.e_;
    }

private:
    Field() = default;

    Elem digitwise(Elem a, Elem b, int sign) const {
        std::uint32_t x = a.value, y = b.value, out = 0, scale = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            const std::uint32_t dx = x % p_, dy = y % p_;
            const std::uint32_t d = sign > 0 ? (dx + dy) % p_ : (dx + p_ - dy) % p_;
            out += d * scale;
            scale *= p_;
            x /= p_;
            y /= p_;
        }
        return Elem{out};
    }

    Elem poly_mul(Elem a, Elem b) const {
        const auto da = digits(a), db = digits(b);
        detail::prime_poly prod(2 * e_ - 1, 0);
        for (std::uint32_t i = 0; i < e_; ++i) {
            if (da[i] == 0) continue;
            for (std::uint32_t j = 0; j < e_; ++j)
                prod[i + j] = static_cast<std::uint32_t>(
                    (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_);
        }
        auto rem = detail::poly_mod(std::move(prod), modulus_, p_);
        rem.resize(e_, 0);
        return from_digits(rem);
    }

    void build_tables() {
        auto t = std::make_shared<detail::field_tables>();
        const std::size_t n = std::size_t{q_} * q_;
        t->add.resize(n);
        t->sub.resize(n);
        t->mul.resize(n);
        t->inv.assign(q_, 0);
        t->neg.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            for (std::uint32_t b = 0; b < q_; ++b) {
                const std::size_t k = std::size_t{a} * q_ + b;
                if (e_ == 1) {
                    t->add[k] = static_cast<std::uint16_t>((a + b) % p_);
                    t->sub[k] = static_cast<std::uint16_t>((a + p_ - b) % p_);
                    t->mul[k] = static_cast<std::uint16_t>(std::uint64_t{a} * b % p_);
                } else {
                    t->add[k] = static_cast<std::uint16_t>(digitwise(Elem{a}, Elem{b}, +1).value);
                    t->sub[k] = static_cast<std::uint16_t>(digitwise(Elem{a}, Elem{b}, -1).value);
                    t->mul[k] = static_cast<std::uint16_t>(poly_mul(Elem{a}, Elem{b}).value);
                }
            }
        }
        for (std::uint32_t a = 0; a < q_; ++a) {
            t->neg[a] = t->sub[a];  // 0 - a
            for (std::uint32_t b = 1; b < q_; ++b)
                if (t->mul[std::size_t{a} * q_ + b] == 1) t->inv[a] = static_cast<std::uint16_t>(b);
        }
        tables_ = std::move(t);
    }

    std::uint32_t p_ = 3;
    std::uint32_t e_ = 1;
    std::uint32_t q_ = 3;
    std::vector<std::uint32_t> modulus_;
    std::shared_ptr<const detail::field_tables> tables_;
};

/// make_field(p, e)
inline Field make_field(std::uint32_t p, std::uint32_t e = 1) { return Field::make(p, e); }

inline std::vector<Elem> enumerate(const Field& f) { return f.elements(); }

}  // namespace adg
