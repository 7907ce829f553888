#include "doctest.h"

#include "refl/arithforms.hpp"
#include "refl/error.hpp"
#include "refl/weil.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <numbers>
#include <sstream>

using namespace refl;

namespace {

using cld = std::complex<long double>;

const NewformDB& db() {
    static NewformDB d(default_data_dir() + "/newforms");
    return d;
}

const Newform& form_named(const std::string& name) {
    for (const auto& g : db().forms())
        if (g.name == name) return g;
    FAIL("missing newform " << name);
    throw;
}


bool is_prime(uint64_t n) { return n > 1 && prime_factors(n).size() == 1 && prime_factors(n)[0] == n; }

}  // namespace

TEST_SUITE("arithforms") {

TEST_CASE("gauss sums") {
    CHECK(gauss_sum(DirichletCharacter::trivial()) == CycNum(1L));
    CHECK(gauss_sum(DirichletCharacter(3, {3})) == CycNum::i() * CycNum::sqrt_pos(3));
    CHECK(gauss_sum(DirichletCharacter(5, {5})) == CycNum::sqrt_pos(5));
    for (uint64_t p = 3; p < 60; ++p) {
        if (!is_prime(p)) continue;
        CycNum G = gauss_sum(DirichletCharacter(p, {p}));
        REQUIRE(G * G.conj() == CycNum(static_cast<long>(p)));
        CycNum expect = p % 4 == 1 ? CycNum::sqrt_pos(p) : CycNum::i() * CycNum::sqrt_pos(p);
        REQUIRE(G == expect);
        CHECK(gauss_sum(DirichletCharacter::trivial(p)) == CycNum(-1L));
    }
}

TEST_CASE("character decomposition") {
    for (uint64_t N = 1; N <= 210; ++N) {
        if (!is_squarefree(N)) continue;
        std::vector<uint64_t> odd;
        for (uint64_t p : prime_factors(N))
            if (p > 2) odd.push_back(p);
        for (uint64_t mask = 0; mask < (1u << odd.size()); ++mask) {
            std::set<uint64_t> leg;
            for (size_t i = 0; i < odd.size(); ++i)
                if (mask >> i & 1) leg.insert(odd[i]);
            DirichletCharacter chi(N, leg);
            REQUIRE(DirichletCharacter::parse(chi.str(), N) == chi);
            REQUIRE(DirichletCharacter::from_discriminant(chi.discriminant(), N) == chi);
            for (uint64_t c : divisors(N)) {
                auto a = chi.component(c), b = chi.component(N / c);
                for (int64_t x = -40; x <= 40; ++x)
                    if (std::gcd(x, static_cast<int64_t>(N)) == 1) REQUIRE(a.value(x) * b.value(x) == chi.value(x));
            }
            for (int64_t x = -40; x <= 40; ++x) {
                int v = chi.value(x);
                REQUIRE((v == 0) == (std::gcd(x, static_cast<int64_t>(N)) != 1));
                if (v) REQUIRE(v == kronecker(chi.discriminant(), x < 0 ? -x : x) * (x < 0 ? chi.value(-1) : 1));
            }
        }
    }
}

TEST_CASE("generalized Bernoulli numbers and L ratios") {
    CHECK(bernoulli(14) == Rational(7, 6));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(bernoulli_generalized(14, DirichletCharacter::trivial()) == Rational(7, 6));
    CHECK(bernoulli_generalized(7, DirichletCharacter(3, {3})) == Rational(98, 3));
    CHECK(l_ratio(7, DirichletCharacter(3, {3}), 3) == 1);
    CHECK(l_ratio(4, DirichletCharacter::trivial(), 2) == Rational(16, 15));
    CHECK_THROWS_AS(bernoulli_generalized(7, DirichletCharacter(15, {3})), Error);
    // B_k(x + 1) - B_k(x) = k x^(k-1)
    for (unsigned k = 2; k <= 12; ++k)
        for (int a = -3; a <= 3; ++a) {
            Rational x(a, 5), xp = 1;
            for (unsigned j = 1; j < k; ++j) xp *= x;
            REQUIRE(bernoulli_polynomial(k, x + 1) - bernoulli_polynomial(k, x) == Rational(k) * xp);
        }
}

TEST_CASE("L values against the Dirichlet series") {
    struct Case {
        unsigned k;
        uint64_t m;
    };
    for (Case cs : {Case{4, 1}, Case{6, 5}, Case{3, 3}, Case{5, 7}, Case{7, 3}, Case{3, 15}, Case{4, 13}}) {
        DirichletCharacter psi = cs.m == 1 ? DirichletCharacter::trivial() : DirichletCharacter(cs.m, {});
        if (cs.m > 1) {
            std::set<uint64_t> ps;
            for (uint64_t p : prime_factors(cs.m)) ps.insert(p);
            psi = DirichletCharacter(cs.m, ps);
        }
        long double s = 0;
        for (int64_t n = 2000000; n >= 1; --n) s += psi.value(n) / std::pow(static_cast<long double>(n), static_cast<long double>(cs.k));
        cld L = l_value(cs.k, psi);
        INFO("k=" << cs.k << " m=" << cs.m);
        CHECK(std::abs(L - cld(s, 0)) < 1e-12L);
        // Euler factor ratio: L(k, psi) / L(k, psi induced to N)
        uint64_t N = cs.m * (cs.m % 2 ? 2 : 1);
        long double sN = 0;
        for (int64_t n = 2000000; n >= 1; --n)
            if (std::gcd(n, static_cast<int64_t>(N)) == 1) sN += psi.value(n) / std::pow(static_cast<long double>(n), static_cast<long double>(cs.k));
        CHECK(std::abs(s / sN - static_cast<long double>(l_ratio(cs.k, psi, N).get_d())) < 1e-12L);
    }
}

TEST_CASE("number field arithmetic") {
    auto K = NumberField::parse("y^3 - 6*y - 3");
    CHECK(K->degree() == 3);
    CHECK(K->str() == "y^3 - 6*y - 3");
    NFElem y = K->gen();
    CHECK(y.pow(3) == y * Rational(6) + K->make(3));
    NFElem x = K->parse_elem("2*y^2 - 5*y - 19");
    CHECK(x * x.inv() == K->make(1));
    CHECK(x.str() == "2*y^2 - 5*y - 19");
    CHECK(y.trace() == 0);
    CHECK(y.pow(2).trace() == 12);
    CHECK(K->parse_elem("1/2*y - 3").str() == "1/2*y - 3");
    long double sum = 0;
    for (size_t j = 0; j < 3; ++j) {
        CHECK(std::abs(y.pow(3).embed(j) - 6.0L * y.embed(j) - 3.0L) < 1e-15L);
        sum += x.embed(j).real();
    }
    CHECK(std::abs(sum - static_cast<long double>(x.trace().get_d())) < 1e-12L);
    auto Q = NumberField::parse("y");
    CHECK(Q->degree() == 1);
    CHECK(Q->parse_elem("-27").str() == "-27");
    CHECK_THROWS_AS(NumberField::parse("2*y^2 - 1"), Error);
}

TEST_CASE("newform files round trip") {
    REQUIRE(db().forms().size() >= 45);
    namespace fs = std::filesystem;
    for (const auto& g : db().forms()) {
        std::ifstream in(fs::path(default_data_dir()) / "newforms" / (g.name + ".txt"));
        std::stringstream ss;
        ss << in.rdbuf();
        INFO(g.name);
        REQUIRE(serialize_newform(g) == ss.str());
        REQUIRE(serialize_newform(parse_newform(ss.str(), g.name)) == ss.str());
        CHECK(g.multiplicative());
    }
    CHECK_THROWS_AS(parse_newform("level 3\nweight 7\n", "bad"), Error);
    CHECK_THROWS_AS(parse_newform("level 3\nweight 7\ncharacter 5:legendre\nfield y\nterms 1\n1 1\n", "bad"), Error);
    CHECK_THROWS_AS(NewformDB("/nonexistent/newforms"), Error);
}

TEST_CASE("conjugate coefficients") {
    for (const auto& g : db().forms())
        for (size_t j = 0; j < g.field->degree(); ++j)
            for (uint64_t n = 1; n <= g.terms(); ++n) {
                cld z = g.coeff(n).embed(j), w = g.conj_coeff(n).embed(j);
                INFO(g.name << " n=" << n);
                REQUIRE(std::abs(std::conj(z) - w) < 1e-9L * (1 + std::abs(z)));
            }
}

TEST_CASE("level 3 weight 7 newform") {
    const Newform& g = form_named("M3_k7_d-3_1");
    CHECK(g.coeff(1).str() == "1");
    CHECK(g.coeff(2).str() == "0");
    CHECK(g.coeff(3).str() == "-27");
    CHECK(g.coeff(4).str() == "64");
    auto W = atkin_lehner(g, 3);
    CHECK(W.lambda_cyc * CycNum(W.lambda_nf.coeffs()[0]) == -CycNum::i());
    auto e3 = expansion_at_cusp(g, 3);
    CHECK(e3.scale == CycNum(1L));
    CHECK(e3.step == 1);
    CHECK(e3.coeffs[1].str() == "1");
    CHECK(e3.coeffs[3].str() == "-27");
    auto e1 = expansion_at_cusp(g, 1);
    CHECK(e1.step == Rational(1, 3));
    CycNum b1 = e1.scale * CycNum(e1.coeff_at(Rational(1, 3)).coeffs()[0]);
    CHECK(b1 == CycNum::sqrt_pos(3).pow(-7) * CycNum::i());
    // a_n^{(3)} = conj(chi_3(n) a_n) for the Legendre character at 3
    auto al = atkin_lehner_expansion(g, 1);
    for (uint64_t n = 1; n <= 20; ++n) CHECK(al.coeffs[n] == g.coeff(n));
    CHECK(al.scale == CycNum(1L));
    CuspBasisElement be{&g, 1, g.field->make(1)};
    CHECK(cusp_coefficient(be, 3, 3) == CycNum(1L));
    CHECK(cusp_coefficient(be, 3, 1) == b1);
}

TEST_CASE("Atkin-Lehner twice") {
    for (const auto& g : db().forms())
        for (uint64_t cp : divisors(g.level)) {
            const uint64_t c = g.level / cp;
            auto W1 = atkin_lehner(g, cp);
            auto W2 = atkin_lehner(W1.image, cp);
            CycNum expect = CycNum(static_cast<long>(g.chi.component(cp).value(-1) * g.chi.component(c).value(static_cast<int64_t>(cp))));
            NFElem nf = W1.lambda_nf * W2.lambda_nf;
            INFO(g.name << " c'=" << cp);
            for (uint64_t n = 1; n <= g.terms(); ++n) {
                NFElem lhs = W2.image.coeff(n) * nf;
                // lambda_cyc is rational up to the Gauss sums, whose squares are chi(-1) p
                CycNum z = W1.lambda_cyc * W2.lambda_cyc;
                REQUIRE(z.is_rational());
                REQUIRE(lhs * z.to_rational() == g.coeff(n) * expect.to_rational());
            }
        }
}

TEST_CASE("cusp expansions against the numeric slash") {
    const long double pi = std::numbers::pi_v<long double>;
    int checked = 0, at_2i = 0;
    for (const auto& g : db().forms()) {
        std::vector<uint64_t> levels = {g.level};
        for (uint64_t t : {2u, 3u, 5u})
            if (g.level % t && g.level * t <= 42) levels.push_back(g.level * t);
        for (uint64_t N : levels)
            for (uint64_t d : divisors(N / g.level))
                for (uint64_t c : divisors(N)) {
                    const Mat2 Mc = cusp_matrix(c, N);
                    const long double cp = static_cast<long double>(N / c);
                    NFExpansion e = oldform_at_cusp(g, d, N, c);
                    for (int variant = 0; variant < 2; ++variant) {
                        cld tau;
                        if (variant == 0) {
                            tau = {0, 2};
                        } else {
                            long double y = std::sqrt(cp / d) / c;
                            tau = {-static_cast<long double>(Mc.d) / Mc.c, y};
                        }
                        cld z = (static_cast<long double>(Mc.a) * tau + static_cast<long double>(Mc.b)) /
                                (static_cast<long double>(Mc.c) * tau + static_cast<long double>(Mc.d));
                        long double im_left = d * z.imag(), im_right = tau.imag() * static_cast<long double>(e.step.get_d());
                        // truncation after 120 terms below 1e-12
                        if (2 * pi * std::min(im_left, im_right) * g.terms() < 60) continue;
                        for (size_t j = 0; j < g.field->degree(); ++j) {
                            cld lhs = slash_numeric(g, j, d, Mc, tau), rhs = e.evaluate(j, tau);
                            INFO(g.name << " N=" << N << " d=" << d << " c=" << c << " j=" << j);
                            REQUIRE(std::abs(lhs - rhs) < 1e-8L * (1 + std::abs(lhs)));
                        }
                        ++checked;
                        if (variant == 0) ++at_2i;
                    }
                }
    }
    CHECK(at_2i > 40);
    CHECK(checked > 200);
    MESSAGE("slash oracle: " << checked << " cases, " << at_2i << " at tau = 2i");
}

TEST_CASE("cusp form bases have the declared dimensions") {
    int spaces = 0;
    for (const auto& s : db().spaces()) {
        auto chi = DirichletCharacter::from_discriminant(s.disc, s.level);
        auto basis = cusp_basis(db(), s.level, s.weight, chi);
        INFO("N=" << s.level << " k=" << s.weight << " D=" << s.disc);
        CHECK(basis.size() == s.dim);
        CHECK(db().space_dim(s.level, s.weight, chi) == s.dim);
        ++spaces;
    }
    CHECK(spaces == 50);
    // weight 6 level 2 trivial character is zero
    CHECK(db().space_dim(2, 6, DirichletCharacter::trivial(2)) == 0u);
}

}  // TEST_SUITE
