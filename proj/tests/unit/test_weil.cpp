#include "doctest.h"

#include "refl/weil.hpp"

#include <complex>
#include <random>

using namespace refl;

namespace {

using C = std::complex<long double>;

std::vector<uint64_t> primes_upto(uint64_t n) {
    std::vector<uint64_t> ps;
    for (uint64_t p = 2; p <= n; ++p)
        if (prime_factors(p) == std::vector<uint64_t>{p}) ps.push_back(p);
    return ps;
}

std::vector<JordanSymbol> even_symbols(uint64_t bound) {
    std::vector<JordanSymbol> out;
    for (auto& s : jordan_symbols(bound, primes_upto(bound)))
        if (s.signature() % 2 == 0) out.push_back(s);
    return out;
}

CycMatrix identity(size_t n) {
    CycMatrix I(n, std::vector<CycNum>(n));
    for (size_t i = 0; i < n; ++i) I[i][i] = CycNum(1L);
    return I;
}

int64_t ext_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return std::llabs(a);
    }
    int64_t x1, y1;
    int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

Mat2 random_sl2(std::mt19937_64& rng, int64_t bound) {
    std::uniform_int_distribution<int64_t> dist(-bound, bound);
    for (;;) {
        int64_t c = dist(rng), d = dist(rng);
        if (c == 0 && d == 0) continue;
        int64_t x, y;
        if (ext_gcd(d, c, x, y) != 1) continue;
        // a d - b c = 1 with a = x, b = -y
        Mat2 M{x, -y, c, d};
        if (M.det() != 1) continue;
        return Mat2::T(dist(rng)) * M;
    }
}

uint64_t part_order(const DiscForm& D, uint64_t g) {
    uint64_t s = 1;
    for (const auto& c : D.symbol().components())
        if (g % c.p == 0)
            for (int i = 0; i < c.rank; ++i) s *= c.p;
    return s;
}

C lc(const CycNum& x) {
    auto z = x.to_complex();
    return C(z.real(), z.imag());
}

C f_num(const EtaQuotient& f, long double scale, C tau) { return scale * std::exp(f.log_value(tau)); }

C slash_num(const EtaQuotient& f, long double scale, int k, const Mat2& M, C tau) {
    C j = static_cast<long double>(M.c) * tau + static_cast<long double>(M.d);
    C t = (static_cast<long double>(M.a) * tau + static_cast<long double>(M.b)) / j;
    return std::pow(j, -k) * f_num(f, scale, t);
}

// lift component evaluated from f itself, no expansions involved
C lift_num(const DiscForm& D, const EtaQuotient& f, long double scale, int k, const Element& g, C tau) {
    const uint64_t N = D.level(), m = D.order_of(g);
    const long double x = -static_cast<long double>(D.norm_num(g)) / static_cast<long double>(N);
    const long double tp = 2 * std::numbers::pi_v<long double>;
    C total = 0;
    for (uint64_t c : divisors(N)) {
        const uint64_t cp = N / c;
        if (cp % m) continue;
        C mult = lc(xi_c(D, c)) / std::sqrt(static_cast<long double>(part_order(D, cp))) * static_cast<long double>(cp);
        C gsum = 0;
        for (uint64_t l = 0; l < cp; ++l)
            gsum += std::exp(C(0, -tp * x * static_cast<long double>(l))) *
                    slash_num(f, scale, k, cusp_matrix(c, N), tau + static_cast<long double>(l));
        total += mult * gsum / static_cast<long double>(cp);
    }
    return total;
}

struct Row1 {
    const char* disc;
    int n;
    const char* eta;
    long scale;
};

const Row1 kSmallRows[] = {
    {"2_II^+2", 10, "1^-16 2^8", 16},
    {"3^-3", 8, "1^-9 3^3", 9},
    {"5^+3", 6, "1^-5 5^1", 5},
    {"2_II^-4 3^-2", 6, "1^-3 2^-3 3^1 6^1", 3},
    {"2_II^+10", 10, "1^8 2^-16", 1},
    {"2_II^+2 7^-3", 4, "1^-2 2^1 7^-2 14^1", 2},
};

VVForm lift_row(const Row1& r, const Rational& prec) {
    DiscForm D(JordanSymbol::parse(r.disc));
    auto fc = eta_cusp_expansions(EtaQuotient::parse(r.eta), CycNum(r.scale), D.level(), prec);
    return gamma0_lift(D, 2 - r.n, fc);
}

}  // namespace

TEST_SUITE("weil") {

TEST_CASE("generators on small forms") {
    DiscForm T1;
    auto S = rho_generator(T1, Generator::S);
    REQUIRE(S.size() == 1);
    CHECK(S[0][0] == CycNum(1L));

    DiscForm D(JordanSymbol::parse("2_II^+2"));
    auto S2 = multiply(rho_generator(D, Generator::S), rho_generator(D, Generator::S));
    for (uint64_t i = 0; i < D.size(); ++i)
        for (uint64_t j = 0; j < D.size(); ++j) {
            bool neg = D.index(D.neg(D.element(j))) == i;
            CHECK(S2[i][j] == CycNum(neg ? 1L : 0L));
        }
}

TEST_CASE("dense relations agree with the fast check") {
    for (const auto& s : even_symbols(27)) {
        DiscForm D(s);
        auto S = rho_generator(D, Generator::S), T = rho_generator(D, Generator::T);
        auto S2 = multiply(S, S);
        CHECK(multiply(S2, S2) == identity(D.size()));
        auto ST = multiply(S, T);
        CHECK(multiply(multiply(ST, ST), ST) == S2);
        CycMatrix Sh(D.size(), std::vector<CycNum>(D.size()));
        for (uint64_t i = 0; i < D.size(); ++i)
            for (uint64_t j = 0; j < D.size(); ++j) Sh[i][j] = S[j][i].conj();
        CHECK(multiply(S, Sh) == identity(D.size()));
        CHECK(check_relations(D).ok());
    }
}

TEST_CASE("relations for all forms up to order 200") {
    size_t count = 0;
    for (const auto& s : even_symbols(200)) {
        auto r = check_relations(DiscForm(s));
        INFO(s.str());
        CHECK(r.s_squared);
        CHECK(r.braid);
        CHECK(r.unitary);
        ++count;
    }
    CHECK(count > 100);
}

TEST_CASE("S T words") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Mat2 M = random_sl2(rng, 40);
        CHECK(word_value(st_word(M)) == M);
    }
    CHECK(word_value(st_word(-Mat2())) == -Mat2());
    CHECK(st_word(Mat2()).empty());
}

TEST_CASE("word oracle matches dense products") {
    std::mt19937_64 rng(11);
    for (const char* sym : {"2_II^+2", "3^-3", "2_II^-2 3^+1", "5^+2", "2_II^+4"}) {
        DiscForm D(JordanSymbol::parse(sym));
        auto S = rho_generator(D, Generator::S), T = rho_generator(D, Generator::T);
        for (int t = 0; t < 4; ++t) {
            Mat2 M = random_sl2(rng, 6);
            CycMatrix R = identity(D.size());
            for (const auto& l : st_word(M)) {
                if (l.s) {
                    R = multiply(R, S);
                    continue;
                }
                CycMatrix P = identity(D.size());
                for (uint64_t i = 0; i < D.size(); ++i) P[i][i] = T[i][i].pow(l.t);
                R = multiply(R, P);
            }
            for (uint64_t g = 0; g < D.size(); ++g) {
                SparseRow dense;
                for (uint64_t j = 0; j < D.size(); ++j)
                    if (!R[g][j].is_zero()) dense.emplace_back(j, R[g][j]);
                CHECK(rows_equal(dense, transform_row_word(D, D.element(g), M)));
            }
        }
    }
}

TEST_CASE("closed form equals the word oracle") {
    auto syms = even_symbols(200);
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<size_t> pick(0, syms.size() - 1);
    size_t checked = 0;
    for (int t = 0; t < 60; ++t) {
        DiscForm D(syms[pick(rng)]);
        std::uniform_int_distribution<uint64_t> el(0, D.size() - 1);
        Element g = D.element(el(rng));
        Mat2 M = random_sl2(rng, 12);
        INFO(D.symbol().str() << " " << M.str());
        CHECK(rows_equal(transform_row(D, g, M), transform_row_word(D, g, M)));
        ++checked;
    }
    CHECK(checked >= 50);
    // the T case is the phase e(-gamma^2/2) and -1 maps gamma to -gamma
    DiscForm D(JordanSymbol::parse("2_II^-2 3^+3"));
    D.for_each([&](const Element& g) {
        auto r = transform_row(D, g, Mat2::T());
        REQUIRE(r.size() == 1);
        CHECK(r[0].first == D.index(g));
        CHECK(r[0].second == CycNum::e(-D.norm(g)));
        CHECK(rows_equal(transform_row(D, g, -Mat2()), transform_row_word(D, g, -Mat2())));
    });
}

TEST_CASE("transformation at the cusp 1/3 for N = 6") {
    for (const char* sym : {"2_II^-4 3^+4", "2_II^+2 3^-3"}) {
        DiscForm D(JordanSymbol::parse(sym));
        const int eps2 = D.symbol().find(2)->sign;
        const CycNum want = CycNum(static_cast<long>(-eps2)) * CycNum::sqrt_pos(part_order(D, 2)).inv();
        Element beta;
        bool found = false;
        D.for_each([&](const Element& x) {
            if (!found && D.order_of(x) == 2 && D.norm(x) == frac(1, 2)) {
                beta = x;
                found = true;
            }
        });
        REQUIRE(found);
        auto row = transform_row(D, beta, Mat2{1, 1, 3, 4});
        CHECK(row.size() == part_order(D, 2));
        for (const auto& [idx, c] : row) {
            Element mu = D.element(idx);
            CHECK(D.order_of(mu) <= 2);
            CHECK(c == want * CycNum::e(D.pair_num(beta, mu) == 0 ? Rational(0) : frac(1, 2)));
        }
        CHECK(rows_equal(row, transform_row_word(D, beta, Mat2{1, 1, 3, 4})));
    }
}

TEST_CASE("cusp matrices") {
    CHECK(cusp_matrix(6, 6) == Mat2{1, 0, 6, 1});
    CHECK(cusp_matrix(3, 6) == Mat2{1, 1, 3, 4});
    CHECK(cusp_matrix(2, 6) == Mat2{1, 1, 2, 3});
    CHECK(cusp_matrix(1, 6) == Mat2{1, 5, 1, 6});
    for (uint64_t N : {1, 2, 5, 30, 42})
        for (uint64_t c : divisors(N)) {
            Mat2 M = cusp_matrix(c, N);
            CHECK(M.det() == 1);
            CHECK(mod_floor(M.d, static_cast<int64_t>(N / c)) == 0);
            CHECK(mod_floor(M.d - 1, static_cast<int64_t>(c)) == 0);
        }
}

TEST_CASE("lift of 1/Delta") {
    DiscForm D;
    auto fc = eta_cusp_expansions(EtaQuotient::parse("1^-24"), CycNum(1L), 1, 3);
    VVForm F = gamma0_lift(D, -24, fc);
    CHECK(F.component(0).coeff(-1) == CycNum(1L));
    CHECK(F.component(0).coeff(0) == CycNum(24L));
    CHECK(F.component(0).coeff(1) == CycNum(324L));
    CHECK(reflectivity(F) == Reflectivity::strong);
    VVForm Z = gamma0_lift(D, -24, {{1, QExp(CycNum(), Rational(3))}});
    CHECK(Z.component(0).is_zero());
    CHECK_THROWS(gamma0_lift(DiscForm(JordanSymbol::parse("2_II^+2")), -8, fc));
}

TEST_CASE("lift for 2_II^+10") {
    VVForm F = lift_row(kSmallRows[4], 2);
    const Element z = F.form().zero();
    CHECK(F.component(z).coeff(-1) == CycNum(1L));
    CHECK(F.component(z).coeff(0) == CycNum(8L));
    CHECK(reflectivity(F) == Reflectivity::strong);
    CHECK(F.is_symmetric());
}

TEST_CASE("lift equals the coset sum") {
    for (const auto& r : kSmallRows) {
        DiscForm D(JordanSymbol::parse(r.disc));
        if (D.size() > 200) continue;
        const uint64_t N = D.level();
        const Rational prec(2);
        auto fc = eta_cusp_expansions(EtaQuotient::parse(r.eta), CycNum(r.scale), N, prec);
        VVForm F = gamma0_lift(D, 2 - r.n, fc);
        const uint64_t zero = D.index(D.zero());
        D.for_each([&](const Element& mu) {
            QExp G;
            bool first = true;
            for (uint64_t c : divisors(N)) {
                const uint64_t cp = N / c;
                for (uint64_t j = 0; j < cp; ++j) {
                    Mat2 M = cusp_matrix(c, N) * Mat2::T(static_cast<int64_t>(j));
                    CycNum coef;
                    for (const auto& [idx, v] : transform_row_word(D, mu, M.inverse()))
                        if (idx == zero) coef = v;
                    QExp term = fc.at(c).rescale_shift(1, static_cast<int64_t>(j), 1) * coef;
                    if (first) {
                        G = term;
                        first = false;
                    } else {
                        G += term;
                    }
                }
            }
            INFO(r.disc << " " << D.index(mu));
            CHECK(G.agrees_with(F.component(mu)));
        });
    }
}

TEST_CASE("lift transformation law, numerically") {
    std::mt19937_64 rng(5);
    for (const auto& r : kSmallRows) {
        DiscForm D(JordanSymbol::parse(r.disc));
        EtaQuotient f = EtaQuotient::parse(r.eta);
        const int k = 1 - r.n / 2;
        VVForm F = lift_row(r, 8);
        const Classes cl = element_classes(D);
        const C tau(0.11L, 0.93L);
        std::vector<C> val(cl.keys.size());
        for (size_t i = 0; i < cl.keys.size(); ++i) {
            val[i] = lift_num(D, f, static_cast<long double>(r.scale), k, D.element(cl.representative[i]), tau);
            C series = F.component(cl.representative[i]).evaluate(tau);
            CHECK(std::abs(series - val[i]) <= 1e-9L * (1 + std::abs(val[i])));
        }
        // F_g = F_-g
        D.for_each([&](const Element& g) { CHECK(cl.of[D.index(g)] == cl.of[D.index(D.neg(g))]); });
        std::uniform_int_distribution<uint64_t> el(0, D.size() - 1);
        for (int t = 0; t < 10; ++t) {
            Mat2 M = random_sl2(rng, 4);
            if (M.c < 0) M = -M;
            Element g = D.element(el(rng));
            C j = static_cast<long double>(M.c) * tau + static_cast<long double>(M.d);
            C lhs = std::pow(j, -k) * lift_num(D, f, static_cast<long double>(r.scale), k, g,
                                               (static_cast<long double>(M.a) * tau + static_cast<long double>(M.b)) / j);
            C rhs = 0;
            for (const auto& [idx, c] : transform_row(D, g, M)) rhs += lc(c) * val[cl.of[idx]];
            INFO(r.disc << " " << M.str());
            CHECK(std::abs(lhs - rhs) <= 1e-7L * (1 + std::abs(lhs)));
        }
    }
}

TEST_CASE("reflectivity predicate") {
    DiscForm D(JordanSymbol::parse("3^-3"));
    CHECK(reflectivity(D, {}) == Reflectivity::strong);
    Element g;
    D.for_each([&](const Element& x) {
        if (D.order_of(x) == 3 && D.norm(x) == frac(2, 3)) g = x;
    });
    REQUIRE(!g.empty());
    PrincipalPart P;
    P[{D.index(g), frac(-2, 3)}] = CycNum(1L);
    CHECK(reflectivity(D, P) == Reflectivity::none);
    PrincipalPart bad;
    bad[{D.index(g), frac(-1, 2)}] = CycNum(1L);
    CHECK_THROWS(reflectivity(D, bad));
    Element r;
    D.for_each([&](const Element& x) {
        if (D.corresponds_to_roots(x) && D.order_of(x) == 3) r = x;
    });
    PrincipalPart Q;
    Q[{D.index(r), frac(-1, 3)}] = CycNum(2L);
    CHECK(reflectivity(D, Q) == Reflectivity::reflective);
    Q[{D.index(r), frac(-1, 3)}] = CycNum(-1L);
    CHECK(reflectivity(D, Q) == Reflectivity::semi);
    Q[{D.index(r), frac(-1, 3)}] = CycNum::i();
    CHECK(reflectivity(D, Q) == Reflectivity::semi);
    Q[{D.index(r), frac(-1, 3)}] = CycNum(1L);
    CHECK(reflectivity(D, Q) == Reflectivity::strong);
}

TEST_CASE("symmetrization and lifts on isotropic subgroups") {
    VVForm F = lift_row(kSmallRows[3], 2);
    VVForm G = symmetrize(F);
    for (uint64_t i = 0; i < F.form().size(); ++i) CHECK(G.component(i) == F.component(i));
    Quotient Q0(F.form(), {});
    VVForm H = lift_on_H(F, Q0);
    for (uint64_t i = 0; i < F.form().size(); ++i) CHECK(H.component(i) == F.component(i));

    DiscForm D(JordanSymbol::parse("2_II^+4 7^-3"));
    Element h;
    D.for_each([&](const Element& x) {
        if (h.empty() && D.order_of(x) == 2 && D.norm_num(x) == 0) h = x;
    });
    REQUIRE(!h.empty());
    Quotient Q(D, {h});
    REQUIRE(Q.form().symbol() == JordanSymbol::parse("2_II^+2 7^-3"));
    VVForm FH = gamma0_lift(Q.form(), -2, eta_cusp_expansions(EtaQuotient::parse("1^-2 2^1 7^-2 14^1"), CycNum(2L), 14, 2));
    CHECK(reflectivity(FH) == Reflectivity::strong);
    VVForm L = lift_on_H(FH, Q);
    auto c = pole_counts(L);
    CHECK(c[1] == 0);
    CHECK(c[2] == 2);
    CHECK(c[7] == 0);
    CHECK(c[14] == 112);
    CHECK(L.weight2() == FH.weight2());
    CHECK(L.component(D.zero()).coeff(0) == FH.component(Q.form().zero()).coeff(0));
    CHECK(reflectivity(L) == Reflectivity::strong);
    CHECK_FALSE(L.is_symmetric());
    CHECK_THROWS(lift_on_H(F, Q));
}

TEST_CASE("automorphism orbits are the order and norm classes") {
    for (const auto& s : jordan_symbols(100, primes_upto(100))) {
        DiscForm D(s);
        const Classes cl = element_classes(D);
        std::vector<std::vector<uint64_t>> byclass(cl.keys.size());
        for (uint64_t i = 0; i < D.size(); ++i) byclass[cl.of[i]].push_back(i);
        std::sort(byclass.begin(), byclass.end());
        INFO(s.str());
        CHECK(automorphism_orbits(D) == byclass);
    }
}

TEST_CASE("valence bound and Table 2") {
    CHECK(valence_bound(-1, 23));
    CHECK_FALSE(valence_bound(-1, 29));
    CHECK(valence_bound(-12, 1));
    CHECK_FALSE(valence_bound(-12, 2));
    CHECK_THROWS(valence_bound(1, 2));
    const char* expected[4][12] = {
        {"1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1"},
        {"23", "11", "7", "5", "3", "3", "2", "2", "-", "-", "-", "-"},
        {"35", "15", "6", "6", "-", "-", "-", "-", "-", "-", "-", "-"},
        {"42", "-", "-", "-", "-", "-", "-", "-", "-", "-", "-", "-"},
    };
    auto t = table2();
    CHECK(t.size() == 48);
    for (int w = 0; w < 4; ++w)
        for (int k = 1; k <= 12; ++k) {
            auto v = t.at({-k, w});
            CHECK((v ? std::to_string(*v) : std::string("-")) == expected[w][k - 1]);
        }
}

TEST_CASE("pole bounds and characters of eta quotients") {
    for (const auto& r : kSmallRows) {
        DiscForm D(JordanSymbol::parse(r.disc));
        EtaQuotient f = EtaQuotient::parse(r.eta);
        CHECK(f.weight() == 1 - r.n / 2);
        CHECK(eta_character_matches(f, D));
        CHECK(pole_bound_check(eta_cusp_expansions(f, CycNum(r.scale), D.level(), 1), D.level()));
    }
    CHECK_FALSE(eta_character_matches(EtaQuotient::parse("1^-9 3^3"), DiscForm(JordanSymbol::parse("3^+2"))));
    auto fc = eta_cusp_expansions(EtaQuotient::parse("1^-24"), CycNum(1L), 1, 1);
    fc[1].add_term(-2, CycNum(1L));
    CHECK_FALSE(pole_bound_check(fc, 1));
}

TEST_CASE("report lines") {
    VVForm F = lift_row(kSmallRows[1], 1);
    std::string rep = vvform_report(F);
    CHECK(rep.find("order 1 norm 0 count 1 principal 0 constant 6") != std::string::npos);
    CHECK(rep.find("order 3 norm 2/3 count") != std::string::npos);
}

}  // TEST_SUITE
