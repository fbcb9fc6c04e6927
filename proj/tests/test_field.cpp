#include <gtest/gtest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "adgraph/field.hpp"

using namespace adg;

namespace {

const std::vector<std::uint64_t> small_orders = {3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49};

// Schoolbook arithmetic on digit vectors (low degree first) modulo the
// field's modulus; shares nothing with the table code.
std::vector<std::uint32_t> naive_mul(const Field& f, std::vector<std::uint32_t> a, std::vector<std::uint32_t> b) {
    const std::uint32_t p = f.p(), e = f.e();
    std::vector<std::uint64_t> prod(2 * e, 0);
    for (std::uint32_t i = 0; i < e; ++i)
        for (std::uint32_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    const auto& m = f.modulus();
    for (std::size_t k = 2 * e - 1; k >= e; --k) {
        const std::uint64_t c = prod[k];
        if (c == 0) continue;
        for (std::uint32_t i = 0; i <= e; ++i) prod[k - e + i] = (prod[k - e + i] + (p - c) * m[i]) % p;
    }
    return std::vector<std::uint32_t>(prod.begin(), prod.begin() + e);
}

}  // namespace

TEST(Field, Construction) {
    const Field f7 = make_field(7);
    EXPECT_EQ(f7.q(), 7u);
    EXPECT_TRUE(f7.modulus().empty());
    const Field f9 = make_field(3, 2);
    EXPECT_EQ(f9.modulus(), (std::vector<std::uint32_t>{1, 0, 1}));  // X^2 + 1
    EXPECT_THROW(make_field(4), field_error);
    EXPECT_THROW(make_field(2), field_error);
    EXPECT_THROW(Field::of_order(15), field_error);
    EXPECT_THROW(Field::of_order(8), field_error);
    EXPECT_THROW(Field::of_order(1), field_error);
    EXPECT_EQ(Field::of_order(125).e(), 3u);
}

TEST(Field, SmallExamples) {
    const Field f7 = make_field(7);
    EXPECT_EQ(f7.mul(Elem{3}, Elem{5}), Elem{1});
    EXPECT_EQ(f7.inv(Elem{3}), Elem{5});
    EXPECT_THROW(f7.inv(Elem{0}), division_by_zero);
    const Field f9 = make_field(3, 2);
    const Elem x{3};  // digits (0, 1)
    EXPECT_EQ(f9.mul(x, x), Elem{2});
    EXPECT_EQ(f9.frobenius(x), f9.mul(Elem{2}, x));
    EXPECT_EQ(make_field(7).frobenius(Elem{3}), Elem{3});
}

TEST(Field, Enumerate) {
    const auto f5 = enumerate(make_field(5));
    ASSERT_EQ(f5.size(), 5u);
    for (std::uint32_t i = 0; i < 5; ++i) EXPECT_EQ(f5[i], Elem{i});
    EXPECT_EQ(enumerate(Field::of_order(9)).size(), 9u);
    EXPECT_EQ(enumerate(Field::of_order(49)).size(), 49u);
}

TEST(Field, PrimeFieldsMatchIntegerArithmetic) {
    for (std::uint64_t q : {3, 5, 7, 11, 13, 41}) {
        const Field f = Field::of_order(q);
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b) {
                EXPECT_EQ(f.add(Elem{a}, Elem{b}).value, (a + b) % q);
                EXPECT_EQ(f.sub(Elem{a}, Elem{b}).value, (a + q - b) % q);
                EXPECT_EQ(f.mul(Elem{a}, Elem{b}).value, (std::uint64_t{a} * b) % q);
            }
    }
}

TEST(Field, ExtensionMultiplicationMatchesSchoolbook) {
    for (std::uint64_t q : {9, 25, 27, 49, 81, 125}) {
        const Field f = Field::of_order(q);
        for (Elem a : f.elements())
            for (Elem b : f.elements())
                ASSERT_EQ(f.mul(a, b), f.from_digits(naive_mul(f, f.digits(a), f.digits(b)))) << q;
    }
}

TEST(Field, Axioms) {
    for (std::uint64_t q : small_orders) {
        const Field f = Field::of_order(q);
        const auto els = f.elements();
        for (Elem a : els) {
            EXPECT_EQ(f.add(a, f.zero()), a);
            EXPECT_EQ(f.mul(a, f.one()), a);
            EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
            if (a.value != 0) EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
            for (Elem b : els) {
                ASSERT_EQ(f.add(a, b), f.add(b, a));
                ASSERT_EQ(f.mul(a, b), f.mul(b, a));
                ASSERT_EQ(f.sub(f.add(a, b), b), a);
                if (q > 27) continue;
                for (Elem c : els) {
                    ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST(Field, MultiplicativeGroupIsCyclic) {
    for (std::uint64_t q : small_orders) {
        const Field f = Field::of_order(q);
        bool generator = false;
        for (Elem a : f.elements())
            if (a.value != 0 && f.order(a) == q - 1) generator = true;
        EXPECT_TRUE(generator) << q;
    }
}

TEST(Field, PowMatchesRepeatedMultiplication) {
    const Field f = Field::of_order(27);
    for (Elem a : f.elements()) {
        Elem acc = f.one();
        for (std::uint64_t n = 0; n < 30; ++n) {
            ASSERT_EQ(f.pow(a, n), acc);
            acc = f.mul(acc, a);
        }
    }
}

TEST(Field, FrobeniusIsAFieldAutomorphismOfOrderE) {
    for (std::uint64_t q : {3, 9, 25, 27, 49, 81}) {
        const Field f = Field::of_order(q);
        std::set<std::uint32_t> fixed;
        for (Elem a : f.elements()) {
            Elem it = a;
            for (std::uint32_t k = 0; k < f.e(); ++k) it = f.frobenius(it);
            EXPECT_EQ(it, a);
            if (f.frobenius(a) == a) fixed.insert(a.value);
            for (Elem b : f.elements()) {
                ASSERT_EQ(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                ASSERT_EQ(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
            }
        }
        EXPECT_EQ(fixed.size(), f.p()) << "fixed field is the prime subfield";
    }
}

TEST(Field, FromIntReducesIntoPrimeSubfield) {
    const Field f = Field::of_order(25);
    EXPECT_EQ(f.from_int(-1), f.neg(f.one()));
    EXPECT_EQ(f.from_int(7), Elem{2});
    EXPECT_EQ(f.add(f.from_int(3), f.from_int(4)), f.from_int(7));
}
