#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "betakit/identities.hpp"
#include "oracles.hpp"

using namespace betakit;

namespace {

const std::vector<Rational> kRationalSValues = {
    Rational(1, 3), Rational(1, 2), Rational(1), Rational(5, 2), Rational(7), Rational(22, 7),
};

SqrtPiValue pi_value() { return SqrtPiValue::monomial(Rational(1), 2); }

bool sides_equal(const ExactSides& sides) { return (sides.lhs - sides.rhs).is_zero(); }

}  // namespace

TEST_CASE("identity registry round-trips names") {
    for (const auto& info : identity_registry()) {
        auto id = identity_from_string(info.name);
        REQUIRE(id.has_value());
        CHECK(*id == info.id);
        CHECK(std::string(to_string(*id)) == info.name);
    }
    CHECK_FALSE(identity_from_string("thm99").has_value());
}

TEST_CASE("thm21: binomial beta convolution") {
    // n=1 is the basic identity B(p1,p2) = B(p1,p2+1) + B(p1+1,p2)
    CHECK(sides_equal(thm21_sides(HalfInteger(3), HalfInteger(5), 1)));
    // n=0 is the single k=0 term
    CHECK(sides_equal(thm21_sides(HalfInteger(1), HalfInteger(4), 0)));

    // p1 = p2 = 1/2 collapses to pi for every n
    for (unsigned n = 0; n <= 20; ++n) {
        ExactSides sides = thm21_sides(HalfInteger(1), HalfInteger(1), n);
        CHECK(sides.lhs == pi_value());
        CHECK(sides.rhs == pi_value());
    }

    for (unsigned long t1 = 1; t1 <= 10; ++t1)
        for (unsigned long t2 = 1; t2 <= 10; t2 += 3)
            for (unsigned n = 0; n <= 12; n += 4)
                CHECK(sides_equal(thm21_sides(HalfInteger(t1), HalfInteger(t2), n)));
}

TEST_CASE("thm22: alternating beta sum telescopes to 1/(s+n)") {
    CHECK(thm22_sides(Rational(7, 3), 0).lhs.to_rational() == Rational(3, 7));  // B(1,s) = 1/s
    // n=1: B(1,s) - B(2,s) = 1/(s+1)
    ExactSides n1 = thm22_sides(Rational(5, 4), 1);
    CHECK(n1.rhs.to_rational() == Rational(4, 9));
    CHECK(sides_equal(n1));
    // n=2: B(1,s) - 2B(2,s) + B(3,s) = 1/(s+2)
    CHECK(sides_equal(thm22_sides(Rational(3, 2), 2)));

    for (const auto& s : kRationalSValues)
        for (unsigned n = 0; n <= 15; ++n) CHECK(sides_equal(thm22_sides(s, n)));
}

TEST_CASE("thm23: derivative identity sums to 1/(s+n)^2") {
    // n=0 single term: B(1,s)/s = 1/s^2
    CHECK(thm23_sides(Rational(4), 0).lhs.to_rational() == Rational(1, 16));
    // s=1, n=1: 1 - (1/2)(3/2) = 1/4
    ExactSides hand = thm23_sides(Rational(1), 1);
    CHECK(hand.lhs.to_rational() == Rational(1, 4));
    CHECK(hand.rhs.to_rational() == Rational(1, 4));

    std::mt19937_64 rng(101);
    std::uniform_int_distribution<long> num(1, 40), den(1, 12);
    std::uniform_int_distribution<unsigned> n_dist(0, 15);
    for (int trial = 0; trial < 40; ++trial)
        CHECK(sides_equal(thm23_sides(Rational(num(rng), den(rng)), n_dist(rng))));
    for (const auto& s : kRationalSValues)
        for (unsigned n = 0; n <= 15; ++n) CHECK(sides_equal(thm23_sides(s, n)));
}

TEST_CASE("thm24: alternating convolution at equal parameters") {
    // p=1, n=2: B(1,3) - 2B(2,2) + B(3,1) = 1/3
    ExactSides hand = thm24_sides(HalfInteger::from_integer(1), 2);
    CHECK(hand.lhs.to_rational() == Rational(1, 3));
    CHECK(hand.rhs.to_rational() == Rational(1, 3));

    for (unsigned long tp = 1; tp <= 10; ++tp)
        for (unsigned n = 1; n <= 14; ++n) CHECK(sides_equal(thm24_sides(HalfInteger(tp), n)));

    SUBCASE("odd n cancels pairwise, not merely in total") {
        for (unsigned long tp : {1ul, 2ul, 5ul, 9ul}) {
            HalfInteger p(tp);
            for (unsigned n = 1; n <= 13; n += 2) {
                CHECK(thm24_sides(p, n).rhs.is_zero());
                for (unsigned k = 0; k <= n / 2; ++k) {
                    SqrtPiValue term_k =
                        Rational(binomial(n, k)) * beta_exact({p + k, p + (n - k)});
                    SqrtPiValue term_nk =
                        Rational(binomial(n, n - k)) * beta_exact({p + (n - k), p + k});
                    if (k % 2 == 1) term_k = -term_k;
                    if ((n - k) % 2 == 1) term_nk = -term_nk;
                    CHECK((term_k + term_nk).is_zero());
                }
            }
        }
    }
}

TEST_CASE("thm24_gamma: bare gamma form") {
    for (unsigned long tp = 1; tp <= 10; ++tp)
        for (unsigned n = 1; n <= 12; ++n)
            CHECK(sides_equal(thm24_gamma_sides(HalfInteger(tp), n)));

    SUBCASE("p=1/2, n=2 evaluates to pi on both sides") {
        ExactSides sides = thm24_gamma_sides(HalfInteger(1), 2);
        CHECK(sides.lhs == pi_value());
        CHECK(sides.rhs == pi_value());
    }

    SUBCASE("odd n gives the exact zero") {
        for (unsigned n = 1; n <= 11; n += 2)
            CHECK(thm24_gamma_sides(HalfInteger(3), n).lhs.is_zero());
    }

    SUBCASE("dividing both sides by Gamma(2p+n) reproduces thm24") {
        for (unsigned long tp = 1; tp <= 6; ++tp) {
            HalfInteger p(tp);
            for (unsigned n = 1; n <= 8; ++n) {
                SqrtPiValue divisor = gamma_half(HalfInteger(2 * (p.twice_value() + n)));
                ExactSides gamma_form = thm24_gamma_sides(p, n);
                ExactSides beta_form = thm24_sides(p, n);
                CHECK(gamma_form.lhs / divisor == beta_form.lhs);
                CHECK(gamma_form.rhs / divisor == beta_form.rhs);
            }
        }
    }

    SUBCASE("p=1/2 matches cor21 after clearing pi n!/4^n") {
        for (unsigned n = 1; n <= 12; ++n) {
            BigInt four_n;
            mpz_ui_pow_ui(four_n.get_mpz_t(), 4, n);
            Rational scale(factorial(n), four_n);
            SqrtPiValue expected = SqrtPiValue::monomial(
                scale * cor21_sides(n).lhs.to_rational(), 2);
            CHECK(thm24_gamma_sides(HalfInteger(1), n).lhs == expected);
        }
    }
}

TEST_CASE("cor21: alternating central binomial convolution") {
    CHECK(cor21_sides(2).lhs.to_rational() == Rational(8));
    CHECK(cor21_sides(3).lhs.is_zero());
    CHECK(cor21_sides(4).rhs.to_rational() == Rational(96));

    testing::PascalTriangle triangle(80);
    for (unsigned n = 1; n <= 40; ++n) {
        BigInt oracle(0);
        for (unsigned k = 0; k <= n; ++k) {
            BigInt term = triangle.choose(2 * k, k) * triangle.choose(2 * (n - k), n - k);
            if (k % 2 == 0)
                oracle += term;
            else
                oracle -= term;
        }
        ExactSides sides = cor21_sides(n);
        CHECK(sides.lhs.to_rational() == Rational(oracle));
        CHECK(sides_equal(sides));
        if (n % 2 == 1) {
            CHECK(sides.rhs.is_zero());
            for (unsigned k = 0; k <= n / 2; ++k) {
                BigInt a = triangle.choose(2 * k, k) * triangle.choose(2 * (n - k), n - k);
                BigInt b = triangle.choose(2 * (n - k), n - k) * triangle.choose(2 * k, k);
                BigInt signed_sum = (k % 2 == 0) ? BigInt(a - b) : BigInt(b - a);
                CHECK(signed_sum == 0);  // summand k cancels summand n-k
            }
        }
    }
}

TEST_CASE("conv11: plain central binomial convolution equals 4^n") {
    CHECK(conv11_sides(1).lhs.to_rational() == Rational(4));
    CHECK(conv11_sides(2).lhs.to_rational() == Rational(16));

    BigInt four_30;
    mpz_ui_pow_ui(four_30.get_mpz_t(), 4, 30);
    CHECK(conv11_sides(30).lhs.to_rational() == Rational(four_30));
    testing::PascalTriangle triangle(60);
    for (unsigned n = 1; n <= 30; ++n) {
        BigInt oracle(0);
        for (unsigned k = 0; k <= n; ++k)
            oracle += triangle.choose(2 * k, k) * triangle.choose(2 * (n - k), n - k);
        CHECK(conv11_sides(n).lhs.to_rational() == Rational(oracle));
        CHECK(sides_equal(conv11_sides(n)));
    }
}

TEST_CASE("thm31: multinomial beta convolution") {
    // m=3, ps=(1,1,1), n=1: 3 B(2,1,1) = B(1,1,1) = 1/2
    std::vector<HalfInteger> ones = {HalfInteger(2), HalfInteger(2), HalfInteger(2)};
    ExactSides sides = thm31_sides(ones, 1);
    CHECK(sides.lhs.to_rational() == Rational(1, 2));
    CHECK(sides.rhs.to_rational() == Rational(1, 2));

    SUBCASE("n=0 reduces to the single empty composition") {
        CHECK(sides_equal(thm31_sides({HalfInteger(1), HalfInteger(7)}, 0)));
    }

    SUBCASE("m=2 agrees with thm21 on a shared grid") {
        for (unsigned long t1 = 1; t1 <= 7; t1 += 2)
            for (unsigned long t2 = 1; t2 <= 7; t2 += 3)
                for (unsigned n = 0; n <= 9; n += 3) {
                    ExactSides two = thm31_sides({HalfInteger(t1), HalfInteger(t2)}, n);
                    ExactSides reference = thm21_sides(HalfInteger(t1), HalfInteger(t2), n);
                    CHECK(two.lhs == reference.lhs);
                    CHECK(two.rhs == reference.rhs);
                }
    }

    SUBCASE("zero discrepancy on sampled half-integer grids, m <= 4") {
        std::mt19937_64 rng(211);
        std::uniform_int_distribution<unsigned long> twice(1, 10);
        std::uniform_int_distribution<int> m_dist(2, 4);
        std::uniform_int_distribution<unsigned> n_dist(0, 20);
        for (int trial = 0; trial < 60; ++trial) {
            int m = m_dist(rng);
            std::vector<HalfInteger> ps;
            for (int i = 0; i < m; ++i) ps.push_back(HalfInteger(twice(rng)));
            unsigned n = n_dist(rng);
            if (m == 4 && n > 14) n = 14;
            CHECK(sides_equal(thm31_sides(ps, n)));
        }
    }
}

TEST_CASE("cor31: composition convolution against the gamma ratio") {
    // m=3, n=1: 2+2+2 = 6 = 4 G(5/2)/G(3/2)
    ExactSides sides = cor31_sides(3, 1);
    CHECK(sides.lhs.to_rational() == Rational(6));
    CHECK(sides.rhs.to_rational() == Rational(6));

    SUBCASE("m=1 collapses to the central binomial coefficient") {
        for (unsigned n = 1; n <= 12; ++n) {
            ExactSides one = cor31_sides(1, n);
            CHECK(one.lhs.to_rational() == Rational(binomial(2 * n, n)));
            CHECK(sides_equal(one));
        }
    }

    SUBCASE("m=2 right side is 4^n") {
        for (unsigned n = 1; n <= 16; ++n) {
            BigInt four_n;
            mpz_ui_pow_ui(four_n.get_mpz_t(), 4, n);
            CHECK(cor31_sides(2, n).rhs.to_rational() == Rational(four_n));
        }
    }

    SUBCASE("zero discrepancy and rational right side on the full grid") {
        for (unsigned long m = 1; m <= 6; ++m)
            for (unsigned n = 1; n <= 12; ++n) {
                ExactSides grid = cor31_sides(m, n);
                CHECK(grid.rhs.is_rational());
                CHECK(grid.rhs.to_rational().is_integer());
                CHECK(sides_equal(grid));
            }
        for (unsigned long m = 1; m <= 3; ++m)
            for (unsigned n = 13; n <= 30; ++n) CHECK(sides_equal(cor31_sides(m, n)));
    }
}

TEST_CASE("mikic closed form equals the cor31 gamma-ratio form") {
    BigInt four_n;
    mpz_ui_pow_ui(four_n.get_mpz_t(), 4, 5);
    CHECK(mikic_rhs(2, 5) == Rational(four_n));
    CHECK(mikic_rhs(3, 1) == Rational(6));
    CHECK(mikic_rhs(4, 2) == Rational(48));

    for (unsigned long m = 1; m <= 9; ++m)
        for (unsigned n = 1; n <= 10; ++n)
            CHECK(mikic_rhs(m, n) == cor31_sides(m, n).rhs.to_rational());
}

TEST_CASE("eq29: three expressions agree exactly") {
    Eq29Sides trivial = eq29_sides(Rational(9, 4), 0);
    CHECK(trivial.lhs == Rational(1));
    CHECK(trivial.prod == Rational(1));
    CHECK(trivial.s_beta == Rational(1));

    // n=1: 1 - s/(s+1) = 1/(s+1)
    Eq29Sides n1 = eq29_sides(Rational(3), 1);
    CHECK(n1.lhs == Rational(1, 4));

    Eq29Sides hand = eq29_sides(Rational(2), 3);
    CHECK(hand.prod == Rational(1, 10));  // (1/3)(2/4)(3/5)

    for (const auto& s : kRationalSValues) {
        for (unsigned n = 0; n <= 15; ++n) {
            Eq29Sides sides = eq29_sides(s, n);
            CHECK(sides.lhs == sides.prod);
            CHECK(sides.prod == sides.s_beta);
        }
    }
    CHECK_THROWS_AS(eq29_sides(Rational(-1), 2), std::domain_error);
}

TEST_CASE("eq226: half-integer gamma ratio") {
    // G(5/2)/G(1/2) = 3/4
    CHECK(eq226_sides(2).lhs.to_rational() == Rational(3, 4));
    for (unsigned n = 0; n <= 30; ++n) CHECK(sides_equal(eq226_sides(n)));
}

TEST_CASE("basic23 exact on the half-integer grid") {
    for (unsigned long tx = 1; tx <= 20; ++tx)
        for (unsigned long ty = 1; ty <= 20; ++ty)
            CHECK(sides_equal(basic23_sides(HalfInteger(tx), HalfInteger(ty))));
}

TEST_CASE("binomial inversion") {
    std::vector<Rational> ones(8, Rational(1));
    std::vector<Rational> inverted = binomial_inversion(ones);
    CHECK(inverted[0] == Rational(1));
    for (std::size_t i = 1; i < inverted.size(); ++i) CHECK(inverted[i].is_zero());

    // a_j = 1/(s+j) at s=1 maps to b_n = B(n+1, 1)
    std::vector<Rational> reciprocals;
    for (long j = 0; j <= 6; ++j) reciprocals.push_back(Rational(1, 1 + j));
    std::vector<Rational> b = binomial_inversion(reciprocals);
    CHECK(b[2] == Rational(1, 3));
    for (unsigned long n = 0; n < b.size(); ++n)
        CHECK(b[n] == beta_int_rational(n, Rational(1)));

    CHECK_THROWS_AS(binomial_inversion({}), std::invalid_argument);

    SUBCASE("involution on random rational sequences") {
        std::mt19937_64 rng(307);
        std::uniform_int_distribution<long> num(-30, 30), den(1, 17);
        std::uniform_int_distribution<std::size_t> len(1, 25);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Rational> a;
            std::size_t size = len(rng);
            for (std::size_t i = 0; i < size; ++i) a.emplace_back(num(rng), den(rng));
            CHECK(binomial_inversion(binomial_inversion(a)) == a);
        }
    }
}

TEST_CASE("verify: exact mode") {
    IdentityCase c{IdentityId::thm21, {Rational(1, 2), Rational(1, 2)}, 5, EvalMode::exact};
    VerificationResult r = verify(c);
    CHECK(r.passed);
    CHECK(r.discrepancy == 0.0);
    CHECK(r.exact_lhs->to_string() == "π");
    CHECK_FALSE(r.condition_hint.has_value());

    VerificationResult cor = verify({IdentityId::cor31, {Rational(3)}, 1, EvalMode::exact});
    CHECK(cor.passed);
    CHECK(cor.exact_lhs->to_rational() == Rational(6));
    CHECK(cor.exact_rhs->to_rational() == Rational(6));

    VerificationResult inv = verify({IdentityId::eq29, {Rational(22, 7)}, 9, EvalMode::exact});
    CHECK(inv.passed);
}

TEST_CASE("verify: float mode") {
    IdentityCase odd{IdentityId::thm24, {0.7}, 3, EvalMode::floating};
    VerificationResult r = verify(odd);
    CHECK(r.passed);  // |lhs| within tol of the cancellation scale
    CHECK(r.rhs == 0.0);
    REQUIRE(r.condition_hint.has_value());
    CHECK(*r.condition_hint > 1.0);

    IdentityCase plain{IdentityId::thm21, {Rational(1, 2), 2.25}, 4, EvalMode::floating};
    VerificationResult s = verify(plain);
    CHECK(s.passed);
    CHECK(s.discrepancy <= 1e-9);
    CHECK_FALSE(s.condition_hint.has_value());
}

TEST_CASE("verify: malformed cases are rejected") {
    // float parameter in exact mode
    CHECK_THROWS_AS(verify({IdentityId::thm21, {0.5, Param(Rational(1, 2))}, 3, EvalMode::exact}),
                    std::invalid_argument);
    // non-half-integer parameter in exact mode
    CHECK_THROWS_AS(verify({IdentityId::thm21, {Rational(1, 3), Rational(1, 2)}, 3,
                            EvalMode::exact}),
                    std::invalid_argument);
    // exact-only identity asked for float mode
    CHECK_THROWS_AS(verify({IdentityId::cor21, {}, 4, EvalMode::floating}),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify({IdentityId::thm24_gamma, {0.5}, 4, EvalMode::floating}),
                    std::invalid_argument);
    // wrong parameter count
    CHECK_THROWS_AS(verify({IdentityId::thm22, {}, 4, EvalMode::exact}), std::invalid_argument);
    CHECK_THROWS_AS(verify({IdentityId::thm31, {Rational(1)}, 4, EvalMode::exact}),
                    std::invalid_argument);
    // n below the identity's domain
    CHECK_THROWS_AS(verify({IdentityId::thm24, {Rational(1)}, 0, EvalMode::exact}),
                    std::invalid_argument);
    // negative parameter
    CHECK_THROWS_AS(verify({IdentityId::thm22, {Rational(-1, 2)}, 4, EvalMode::exact}),
                    std::domain_error);
    // non-integer m for cor31
    CHECK_THROWS_AS(verify({IdentityId::cor31, {Rational(5, 2)}, 4, EvalMode::exact}),
                    std::invalid_argument);
}

TEST_CASE("float suite: plain sums at 1e-9, alternating sums at 1e-6") {
    std::mt19937_64 rng(401);
    std::uniform_real_distribution<double> param(1e-3, 30.0);
    std::uniform_int_distribution<unsigned> n15(0, 15), n8(0, 8);
    std::uniform_int_distribution<int> m_dist(2, 4);

    for (int trial = 0; trial < 100; ++trial) {
        VerificationResult r = verify(
            {IdentityId::thm21, {param(rng), param(rng)}, n15(rng), EvalMode::floating});
        CHECK(r.passed);
        CHECK(r.discrepancy <= 1e-9);
    }

    for (int trial = 0; trial < 40; ++trial) {
        int m = m_dist(rng);
        std::vector<Param> ps;
        for (int i = 0; i < m; ++i) ps.emplace_back(param(rng));
        VerificationResult r =
            verify({IdentityId::thm31, ps, std::min(n15(rng), 12u), EvalMode::floating});
        CHECK(r.passed);
        CHECK(r.discrepancy <= 1e-9);
    }

    for (int trial = 0; trial < 60; ++trial) {
        unsigned n = n8(rng);
        for (IdentityId id : {IdentityId::thm22, IdentityId::thm23}) {
            VerificationResult r = verify({id, {param(rng)}, n, EvalMode::floating});
            CHECK(r.passed);
            CHECK(r.condition_hint.has_value());
        }
        VerificationResult r =
            verify({IdentityId::thm24, {param(rng)}, std::max(1u, n), EvalMode::floating});
        CHECK(r.passed);
        CHECK(r.condition_hint.has_value());
    }
}
