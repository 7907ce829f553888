#include "doctest.h"

#include "refl/eta.hpp"

#include <random>

using namespace refl;

namespace {

using C = std::complex<long double>;

C mobius(const Mat2& M, C tau) {
    return (static_cast<long double>(M.a) * tau + static_cast<long double>(M.b)) /
           (static_cast<long double>(M.c) * tau + static_cast<long double>(M.d));
}

// distance of two logs modulo 2 pi i
long double log_dist(C x, C y) {
    C d = x - y;
    const long double tp = 2 * std::numbers::pi_v<long double>;
    long double im = d.imag() - tp * std::round(d.imag() / tp);
    return std::abs(C(d.real(), im));
}

C log_cyc(const CycNum& z) {
    auto c = z.to_complex();
    return std::log(C(c.real(), c.imag()));
}

Mat2 random_sl2(std::mt19937_64& rng, int64_t cmax) {
    while (true) {
        int64_t c = 1 + static_cast<int64_t>(rng() % cmax);
        int64_t d = static_cast<int64_t>(rng() % (4 * cmax)) - 2 * cmax;
        if (std::gcd(c, d) != 1) continue;
        // a d - b c = 1
        int64_t a = inverse_mod(d, c);
        if (d == 0) continue;
        int64_t b = (a * d - 1) / c;
        Mat2 M{a, b, c, d};
        if (M.det() == 1) return M;
    }
}

}  // namespace

TEST_SUITE("eta") {

TEST_CASE("pentagonal expansion") {
    QExp e = EtaQuotient::parse("1^1").expand(60);
    // oracle: multiply out prod (1 - q^n) directly
    std::vector<long> prod(60, 0);
    prod[0] = 1;
    for (int n = 1; n < 60; ++n)
        for (int i = 59; i >= n; --i) prod[i] -= prod[i - n];
    for (int i = 0; i < 59; ++i) REQUIRE(e.coeff(Rational(1, 24) + i) == CycNum(prod[i]));
    CHECK(EtaQuotient::parse("1^6 2^3 3^2 6^-1").expand(2).coeff(Rational(1, 2)) == CycNum(1L));
    CHECK(*EtaQuotient::parse("1^6 2^3 3^2 6^-1").expand(2).valuation() == Rational(1, 2));
}

TEST_CASE("grammar") {
    for (std::string s : {"1^6 2^3 3^2 6^-1", "1^-24", "1^-1 3^1 5^1 6^-1 10^-1 15^-1"}) CHECK(EtaQuotient::parse(s).str() == s);
    CHECK(EtaQuotient::parse("eta{1^-24}").str() == "1^-24");
    CHECK(EtaQuotient::parse("eta_{1^{-2}2^{-1}5^{2}10^{-3}}").str() == "1^-2 2^-1 5^2 10^-3");
    CHECK(EtaQuotient::parse("1^6 2^3 3^2 6^-1").level() == 6);
    CHECK(EtaQuotient::parse("1^-2 11^-2", 22).level() == 22);
    CHECK_THROWS(EtaQuotient::parse("1^x"));
    CHECK_THROWS(EtaQuotient::parse("2^1", 3));
}

TEST_CASE("multiplier examples and numeric law") {
    CHECK(eta_multiplier(Mat2::T()) == CycNum::root_of_unity(1, 24));
    CHECK(eta_multiplier(Mat2::S()) == CycNum::root_of_unity(-1, 8));
    CHECK_THROWS(eta_multiplier(Mat2{1, 0, -1, 1}));
    std::mt19937_64 rng(5);
    const C tau(0.5L, 1.5L);
    for (int k = 0; k < 200; ++k) {
        Mat2 M = random_sl2(rng, 50);
        C lhs = log_eta(mobius(M, tau));
        C rhs = log_cyc(eta_multiplier(M)) + 0.5L * std::log(static_cast<long double>(M.c) * tau + static_cast<long double>(M.d)) + log_eta(tau);
        REQUIRE(log_dist(lhs, rhs) < 1e-10L);
    }
}

TEST_CASE("multiplier cocycle") {
    std::mt19937_64 rng(9);
    const C tau(0.1L, 1.1L);
    int done = 0;
    while (done < 100) {
        Mat2 A = random_sl2(rng, 12), B = random_sl2(rng, 12), P = A * B;
        if (P.c <= 0) continue;
        CycNum ratio = eta_multiplier(P) * (eta_multiplier(A) * eta_multiplier(B)).inv();
        REQUIRE(ratio.pow(24) == CycNum(1L));
        C j1 = static_cast<long double>(A.c) * mobius(B, tau) + static_cast<long double>(A.d);
        C j2 = static_cast<long double>(B.c) * tau + static_cast<long double>(B.d);
        C j3 = static_cast<long double>(P.c) * tau + static_cast<long double>(P.d);
        C sign = std::sqrt(j1) * std::sqrt(j2) / std::sqrt(j3);
        auto r = ratio.to_complex();
        REQUIRE(std::abs(C(r.real(), r.imag()) - sign) < 1e-12L);
        ++done;
    }
}

TEST_CASE("expansions at cusps of Gamma_1(6)") {
    EtaQuotient h1 = EtaQuotient::parse("1^6 2^3 3^2 6^-1");
    CHECK(h1.weight() == 5);
    CHECK(h1.modular_gamma1());
    CHECK(h1.is_cusp_form());
    CHECK(h1.cusp_order(6) == Rational(1, 2));

    auto a = h1.expand_at_cusp({1, 1, 3, 4}, Rational(3, 2));
    QExp f = a.prefactor * a.series;
    QExp want = QExp::monomial(CycNum(Rational(-1, 2)), Rational(1, 2), Rational(3, 2));
    want.add_term(1, CycNum(Rational(3, 2)));
    CHECK(f == want);

    auto b = h1.expand_at_cusp({1, 1, 2, 3}, Rational(3, 2));
    CHECK(b.prefactor == -CycNum::i() * CycNum::sqrt_pos(3) / CycNum(3L));
    QExp sb = QExp::monomial(CycNum(1L), Rational(1, 2), Rational(3, 2));
    sb.add_term(Rational(5, 6), CycNum(-2L));
    CHECK(b.series == sb);

    auto c = h1.expand_at_cusp({1, 5, 1, 6}, Rational(4, 3));
    CHECK(c.prefactor == CycNum::i() * CycNum::sqrt_pos(3) / CycNum(6L));
    QExp sc = QExp::monomial(CycNum(1L), Rational(1, 3), Rational(4, 3));
    sc.add_term(Rational(1, 2), CycNum(1L));
    sc.add_term(Rational(5, 6), CycNum(-2L));
    sc.add_term(1, CycNum(-3L));
    CHECK(c.series == sc);

    auto d = h1.expand_at_cusp({1, 0, 6, 1}, Rational(3, 2));
    CHECK(d.prefactor * d.series == h1.expand(Rational(3, 2)));
    CHECK_THROWS(h1.expand_at_cusp({1, 0, 2, 1}, 2));
}

TEST_CASE("cusp expansions agree with numeric slash") {
    std::mt19937_64 rng(21);
    for (std::string s : {"1^6 2^3 3^2 6^-1", "1^-1 3^1 5^1 6^-1 10^-1 15^-1", "1^8 2^-16", "1^-2 11^-2", "1^3 3^-9"}) {
        EtaQuotient E = EtaQuotient::parse(s);
        const int64_t N = static_cast<int64_t>(E.level());
        const int64_t k2 = E.weight2();
        for (int trial = 0; trial < 12; ++trial) {
            int64_t c = 1 + static_cast<int64_t>(rng() % (2 * N));
            int64_t cp = N / std::gcd(c, N);
            int64_t d = 0;
            for (int64_t t = 1; t < 10000; ++t)
                if (std::gcd(t * cp, c) == 1) {
                    d = t * cp;
                    break;
                }
            int64_t a = inverse_mod(d, c);
            Mat2 M{a, (a * d - 1) / c, c, d};
            REQUIRE(M.det() == 1);
            auto ex = E.expand_at_cusp(M, 12);
            REQUIRE(*ex.series.valuation() == E.cusp_order(static_cast<uint64_t>(c)));
            const C tau(0.13L, 1.3L);
            C lhs = E.log_value(mobius(M, tau)) - static_cast<long double>(k2) * 0.5L * std::log(static_cast<long double>(c) * tau + static_cast<long double>(d));
            C rhs = log_cyc(ex.prefactor) + std::log(ex.series.evaluate(tau));
            REQUIRE(log_dist(lhs, rhs) < 1e-9L);
        }
    }
}

TEST_CASE("gamma_1 character and gamma_0 factor") {
    EtaQuotient h1 = EtaQuotient::parse("1^6 2^3 3^2 6^-1");
    // M in Gamma_1(6): slash equals the character times E
    for (Mat2 M : {Mat2{1, 0, 6, 1}, Mat2{7, 1, 48, 7}, Mat2{13, 2, 84, 13}}) {
        REQUIRE(M.det() == 1);
        auto ex = h1.expand_at_cusp(M, 4);
        CHECK(ex.prefactor * ex.series == h1.gamma0_factor(M) * h1.expand(4));
        CHECK(h1.gamma0_factor(M) == h1.gamma1_character(M));
    }
    // Delta
    EtaQuotient D = EtaQuotient::parse("1^24");
    CHECK(D.weight() == 12);
    CHECK(D.is_cusp_form());
    CHECK(D.cusp_order(1) == 1);
    EtaQuotient I = EtaQuotient::parse("1^-24");
    CHECK_FALSE(I.is_holomorphic());
    CHECK(I.cusp_order(1) == -1);
}

}
