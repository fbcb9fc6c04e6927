#pragma once

// Sparse multivariate polynomials over a Field, univariate reduction modulo
// X^q - X, permutation-polynomial tests and value sets.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adgraph/field.hpp"

namespace adg {

class arity_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Exponents = std::vector<std::uint32_t>;

class MultiPoly {
public:
    MultiPoly(Field field, std::size_t arity) : field_(std::move(field)), arity_(arity) {}

    static MultiPoly constant(const Field& f, std::size_t arity, Elem c) {
        MultiPoly r(f, arity);
        r.add_term(Exponents(arity, 0), c);
        return r;
    }

    static MultiPoly variable(const Field& f, std::size_t arity, std::size_t index) {
        if (index >= arity) throw arity_error("variable index out of range");
        MultiPoly r(f, arity);
        Exponents ex(arity, 0);
        ex[index] = 1;
        r.add_term(std::move(ex), f.one());
        return r;
    }

    static MultiPoly monomial(const Field& f, Exponents ex, Elem c) {
        MultiPoly r(f, ex.size());
        r.add_term(std::move(ex), c);
        return r;
    }

    /// Univariate polynomial from dense coefficients, constant term first.
    static MultiPoly univariate(const Field& f, std::span<const Elem> coeffs) {
        MultiPoly r(f, 1);
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            r.add_term(Exponents{static_cast<std::uint32_t>(k)}, coeffs[k]);
        return r;
    }

    const Field& field() const { return field_; }
    std::size_t arity() const { return arity_; }
    const std::map<Exponents, Elem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Accumulates c * x^ex; zero results are erased.
    void add_term(Exponents ex, Elem c) {
        if (ex.size() != arity_) throw arity_error("exponent tuple length differs from arity");
        if (c.value == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(ex), c);
        if (!inserted) {
            it->second = field_.add(it->second, c);
            if (it->second.value == 0) terms_.erase(it);
        }
    }

    Elem coefficient(const Exponents& ex) const {
        auto it = terms_.find(ex);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    /// Total degree; -1 for the zero polynomial.
    long degree() const {
        long best = -1;
        for (const auto& [ex, c] : terms_) {
            long d = 0;
            for (auto k : ex) d += k;
            best = std::max(best, d);
        }
        return best;
    }

    Elem eval(std::span<const Elem> point) const {
        if (point.size() != arity_) throw arity_error("evaluation point length differs from arity");
        Elem sum = field_.zero();
        for (const auto& [ex, c] : terms_) {
            Elem term = c;
            for (std::size_t i = 0; i < arity_; ++i)
                if (ex[i] != 0) term = field_.mul(term, field_.pow(point[i], ex[i]));
            sum = field_.add(sum, term);
        }
        return sum;
    }

    Elem eval(std::initializer_list<Elem> point) const {
        return eval(std::span<const Elem>(point.begin(), point.size()));
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        check_compatible(a, b);
        MultiPoly r = a;
        for (const auto& [ex, c] : b.terms_) r.add_term(ex, c);
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a) {
        MultiPoly r(a.field_, a.arity_);
        for (const auto& [ex, c] : a.terms_) r.terms_.emplace(ex, a.field_.neg(c));
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        check_compatible(a, b);
        MultiPoly r(a.field_, a.arity_);
        Exponents ex(a.arity_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < a.arity_; ++i) ex[i] = ea[i] + eb[i];
                r.add_term(ex, a.field_.mul(ca, cb));
            }
        }
        return r;
    }

    MultiPoly scaled(Elem c) const {
        MultiPoly r(field_, arity_);
        for (const auto& [ex, k] : terms_) r.add_term(ex, field_.mul(k, c));
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.field_ == b.field_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

private:
    static void check_compatible(const MultiPoly& a, const MultiPoly& b) {
        if (a.arity_ != b.arity_) throw arity_error("polynomial arities differ");
        if (!(a.field_ == b.field_)) throw arity_error("polynomials over different fields");
    }

    Field field_;
    std::size_t arity_;
    std::map<Exponents, Elem> terms_;
};

inline MultiPoly pow(const MultiPoly& a, std::uint32_t n) {
    MultiPoly result = MultiPoly::constant(a.field(), a.arity(), a.field().one());
    for (std::uint32_t i = 0; i < n; ++i) result = result * a;
    return result;
}

inline Elem eval(const MultiPoly& poly, std::span<const Elem> point) { return poly.eval(point); }

namespace detail {

inline void require_univariate(const MultiPoly& poly) {
    if (poly.arity() != 1) throw arity_error("univariate polynomial expected");
}

// X^k agrees with X^{((k-1) mod (q-1)) + 1} on F_q for k >= 1.
inline std::uint32_t reduced_exponent(std::uint32_t k, std::uint32_t q) {
    if (k < q) return k;
    return (k - 1) % (q - 1) + 1;
}

}  // namespace detail

/// Reduction modulo X^q - X: the unique representative of degree <= q - 1
/// inducing the same function on F_q.
inline MultiPoly reduce_mod_xq(const MultiPoly& poly) {
    detail::require_univariate(poly);
    const std::uint32_t q = poly.field().q();
    MultiPoly r(poly.field(), 1);
    for (const auto& [ex, c] : poly.terms())
        r.add_term(Exponents{detail::reduced_exponent(ex[0], q)}, c);
    return r;
}

/// poly^t reduced modulo X^q - X, reducing after every multiplication.
inline MultiPoly pow_reduced(const MultiPoly& poly, std::uint32_t t) {
    detail::require_univariate(poly);
    const MultiPoly base = reduce_mod_xq(poly);
    MultiPoly acc = MultiPoly::constant(poly.field(), 1, poly.field().one());
    for (std::uint32_t i = 0; i < t; ++i) acc = reduce_mod_xq(acc * base);
    return acc;
}

struct ValueSetReport {
    std::size_t size = 0;
    std::vector<Elem> values;  // sorted by encoding
    bool is_pp = false;
};

/// Exact value set by evaluation at every field element.
inline ValueSetReport value_set(const MultiPoly& poly) {
    detail::require_univariate(poly);
    const Field& f = poly.field();
    std::vector<bool> seen(f.q(), false);
    for (Elem x : f.elements()) seen[poly.eval({x}).value] = true;
    ValueSetReport rep;
    for (std::uint32_t v = 0; v < f.q(); ++v)
        if (seen[v]) rep.values.push_back(Elem{v});
    rep.size = rep.values.size();
    rep.is_pp = rep.size == f.q();
    return rep;
}

inline bool is_pp_bruteforce(const MultiPoly& poly) { return value_set(poly).is_pp; }

/// Hermite-Dickson criterion: exactly one root, and for every t in [1, q-2]
/// with p not dividing t, the reduction of poly^t has degree <= q - 2.
inline bool is_pp_hermite_dickson(const MultiPoly& poly) {
    detail::require_univariate(poly);
    const Field& f = poly.field();
    const std::uint32_t q = f.q();
    std::size_t roots = 0;
    for (Elem x : f.elements())
        if (poly.eval({x}).value == 0) ++roots;
    if (roots != 1) return false;

    const MultiPoly base = reduce_mod_xq(poly);
    MultiPoly acc = base;
    const long max_degree = static_cast<long>(q) - 2;
    for (std::uint32_t t = 1; t <= q - 2; ++t) {
        if (t > 1) acc = reduce_mod_xq(acc * base);
        if (t % f.p() == 0) continue;
        if (acc.degree() > max_degree) return false;
    }
    return true;
}

/// Upper bound on the value-set size of a non-permutation polynomial of
/// degree n >= 1: q - ceil((q - 1) / n).
inline std::uint64_t wan_bound(std::uint64_t n, const Field& f) {
    if (n == 0) throw std::invalid_argument("degree must be positive");
    const std::uint64_t q = f.q();
    return q - (q - 1 + n - 1) / n;
}

/// J = X^3 + c2 X^2 + c1 X + cm1 X^{q-2}; on F^x the last term is cm1 / X.
struct JPoly {
    Elem c2, c1, cm1;
};

inline MultiPoly to_poly(const JPoly& j, const Field& f) {
    MultiPoly r(f, 1);
    r.add_term({3}, f.one());
    r.add_term({2}, j.c2);
    r.add_term({1}, j.c1);
    if (j.cm1.value != 0) r.add_term({f.q() - 2}, j.cm1);
    return reduce_mod_xq(r);
}

/// Distinct values of j(t) = t^3 + c2 t^2 + c1 t + cm1 / t on F^x, or of J on
/// all of F with J(0) = 0.
inline std::size_t j_value_count(const JPoly& j, const Field& f, bool exclude_zero_input) {
    std::vector<bool> seen(f.q(), false);
    std::size_t count = 0;
    for (Elem t : f.elements()) {
        Elem v;
        if (t.value == 0) {
            if (exclude_zero_input) continue;
            v = f.zero();
        } else {
            const Elem t2 = f.mul(t, t);
            v = f.add(f.add(f.mul(t2, t), f.mul(j.c2, t2)),
                      f.add(f.mul(j.c1, t), f.mul(j.cm1, f.inv(t))));
        }
        if (!seen[v.value]) {
            seen[v.value] = true;
            ++count;
        }
    }
    return count;
}

}  // namespace adg
