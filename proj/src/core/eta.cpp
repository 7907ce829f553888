#include "refl/eta.hpp"

#include "refl/error.hpp"

#include <cmath>
#include <numbers>
#include <regex>

namespace refl {

namespace {

int64_t mod24(__int128 x) {
    int64_t r = static_cast<int64_t>(x % 24);
    return r < 0 ? r + 24 : r;
}

using Series = std::vector<Integer>;

Series series_mul(const Series& a, const Series& b, size_t K) {
    Series out(K, Integer(0));
    for (size_t i = 0; i < a.size() && i < K; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size() && i + j < K; ++j)
            if (sgn(b[j])) mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return out;
}

// inverse of a series with constant term 1
Series series_inv(const Series& a, size_t K) {
    Series out(K, Integer(0));
    out[0] = 1;
    for (size_t n = 1; n < K; ++n) {
        Integer s = 0;
        for (size_t i = 1; i <= n && i < a.size(); ++i)
            if (sgn(a[i])) s += a[i] * out[n - i];
        out[n] = -s;
    }
    return out;
}

// prod_n (1 - u^(m n)) truncated to K terms, by the pentagonal number theorem
Series euler_product(int64_t m, size_t K) {
    Series out(K, Integer(0));
    out[0] = 1;
    for (int64_t k = 1;; ++k) {
        int64_t e1 = k * (3 * k - 1) / 2 * m, e2 = k * (3 * k + 1) / 2 * m;
        if (e1 >= static_cast<int64_t>(K)) break;
        int s = (k % 2) ? -1 : 1;
        out[e1] += s;
        if (e2 < static_cast<int64_t>(K)) out[e2] += s;
    }
    return out;
}

Series series_pow(const Series& a, int64_t r, size_t K) {
    Series base = r < 0 ? series_inv(a, K) : a;
    base.resize(K, Integer(0));
    uint64_t e = static_cast<uint64_t>(r < 0 ? -r : r);
    Series out(K, Integer(0));
    out[0] = 1;
    while (e) {
        if (e & 1) out = series_mul(out, base, K);
        e >>= 1;
        if (e) base = series_mul(base, base, K);
    }
    return out;
}

}  // namespace

CycNum eta_multiplier(const Mat2& M) {
    if (M.det() != 1) fail(ErrorCode::invalid_input, "eta_multiplier: determinant is not 1");
    if (M.c == 0) {
        if (M.a != 1 || M.d != 1) fail(ErrorCode::invalid_input, "eta_multiplier: c = 0 requires a = d = 1");
        return CycNum::root_of_unity(mod24(M.b), 24);
    }
    if (M.c < 0) fail(ErrorCode::invalid_input, "eta_multiplier: c must be positive");
    __int128 a = M.a, b = M.b, c = M.c, d = M.d;
    int sym;
    int64_t num;
    if (M.c % 2) {
        sym = kronecker(M.d, M.c);
        num = mod24(-3 * c + b * d * (1 - c * c) + c * (a + d));
    } else {
        sym = kronecker(M.c, M.d);
        num = mod24(3 * d - 3 + a * c * (1 - d * d) + d * (b - c));
    }
    return CycNum(static_cast<long>(sym)) * CycNum::root_of_unity(num, 24);
}

std::complex<long double> log_eta(std::complex<long double> tau) {
    using C = std::complex<long double>;
    const long double tp = 2 * std::numbers::pi_v<long double>;
    if (tau.imag() <= 0) fail(ErrorCode::invalid_input, "log_eta: tau must lie in the upper half-plane");
    C q = std::exp(C(0, tp) * tau);
    C s = C(0, tp) * tau / 24.0L;
    C qn = q;
    for (int64_t n = 1; std::abs(qn) > 1e-24L; ++n) {
        s += std::log(C(1) - qn);
        qn *= q;
    }
    return s;
}

QExp eta_product_series(const std::vector<std::pair<int64_t, int64_t>>& factors, int64_t scale, const Rational& prec) {
    Integer lead_num = 0;
    for (const auto& [m, r] : factors) lead_num += Integer(static_cast<long>(m)) * Integer(static_cast<long>(r));
    Rational lead(lead_num, Integer(24 * scale));
    lead.canonicalize();
    Rational window = (prec - lead) * Rational(static_cast<long>(scale));
    if (window <= 0) return QExp(CycNum(), prec);
    Integer kk;
    mpz_cdiv_q(kk.get_mpz_t(), window.get_num_mpz_t(), window.get_den_mpz_t());
    size_t K = kk.get_ui();
    Series acc(K, Integer(0));
    acc[0] = 1;
    for (const auto& [m, r] : factors) {
        if (r == 0) continue;
        acc = series_mul(acc, series_pow(euler_product(m, K), r, K), K);
    }
    Rational top = lead + Rational(static_cast<long>(K), static_cast<long>(scale));
    top.canonicalize();
    QExp f(CycNum(), top);
    for (size_t i = 0; i < K; ++i) {
        if (sgn(acc[i]) == 0) continue;
        Rational e = lead + Rational(static_cast<long>(i), static_cast<long>(scale));
        e.canonicalize();
        f.set(e, CycNum(acc[i]));
    }
    return f;
}

EtaQuotient::EtaQuotient(std::map<uint64_t, int64_t> exps, uint64_t level) {
    uint64_t l = 1;
    for (const auto& [delta, r] : exps) {
        if (delta == 0) fail(ErrorCode::invalid_input, "eta quotient: delta must be positive");
        if (r) exps_[delta] = r;
        l = lcm_u(l, delta);
    }
    if (level == 0) level = l;
    if (level % l) fail(ErrorCode::invalid_input, "eta quotient: deltas must divide the level");
    level_ = level;
}

EtaQuotient EtaQuotient::parse(const std::string& text, uint64_t level) {
    std::string s = text;
    static const std::regex wrap(R"(\s*eta_?\{(.*)\}\s*)");
    std::smatch m;
    if (std::regex_match(s, m, wrap)) s = m[1];
    // the subscript style writes 1^{-2}2^{-1} without spaces
    std::map<uint64_t, int64_t> exps;
    static const std::regex any(R"(([0-9]+)\^(?:\{(-?[0-9]+)\}|(-?[0-9]+)))");
    size_t consumed = 0;
    for (auto it = std::sregex_iterator(s.begin(), s.end(), any); it != std::sregex_iterator(); ++it) {
        const auto& mm = *it;
        for (size_t i = consumed; i < static_cast<size_t>(mm.position()); ++i)
            if (!std::isspace(static_cast<unsigned char>(s[i]))) fail(ErrorCode::invalid_input, "bad eta quotient '" + text + "'");
        if (consumed && mm.position() == static_cast<long>(consumed) && !mm[2].matched)
            fail(ErrorCode::invalid_input, "bad eta quotient '" + text + "'");
        consumed = mm.position() + mm.length();
        exps[std::stoull(mm[1])] += std::stoll(mm[2].matched ? mm[2].str() : mm[3].str());
    }
    for (size_t i = consumed; i < s.size(); ++i)
        if (!std::isspace(static_cast<unsigned char>(s[i]))) fail(ErrorCode::invalid_input, "bad eta quotient '" + text + "'");
    if (exps.empty()) fail(ErrorCode::invalid_input, "empty eta quotient");
    return EtaQuotient(std::move(exps), level);
}

std::string EtaQuotient::str() const {
    std::string out;
    for (const auto& [delta, r] : exps_) {
        if (!out.empty()) out += ' ';
        out += std::to_string(delta) + "^" + std::to_string(r);
    }
    return out;
}

int64_t EtaQuotient::weight2() const {
    int64_t s = 0;
    for (const auto& [delta, r] : exps_) s += r;
    return s;
}

int64_t EtaQuotient::weight() const {
    if (weight2() % 2) fail(ErrorCode::domain, "eta quotient of half-integral weight");
    return weight2() / 2;
}

QExp EtaQuotient::expand(const Rational& prec) const {
    std::vector<std::pair<int64_t, int64_t>> f;
    for (const auto& [delta, r] : exps_) f.emplace_back(static_cast<int64_t>(delta), r);
    return eta_product_series(f, 1, prec);
}

EtaQuotient::CuspExpansion EtaQuotient::expand_at_cusp(const Mat2& M, const Rational& prec) const {
    if (M.det() != 1) fail(ErrorCode::invalid_input, "expand_at_cusp: determinant is not 1");
    if (M.c <= 0) fail(ErrorCode::invalid_input, "expand_at_cusp: c must be positive");
    const uint64_t c = static_cast<uint64_t>(M.c);
    const uint64_t cp = level_ / gcd_u(c, level_);
    if (M.d % static_cast<int64_t>(cp)) fail(ErrorCode::invalid_input, "expand_at_cusp: d must be divisible by N/(c,N)");
    CycNum pre(1L);
    int64_t T = 1;
    std::vector<std::pair<uint64_t, uint64_t>> rt;
    for (const auto& [delta, e] : exps_) {
        uint64_t r = gcd_u(c, delta), t = gcd_u(cp, delta);
        if (r * t != delta) fail(ErrorCode::invalid_input, "expand_at_cusp: level is not squarefree");
        rt.emplace_back(r, t);
        T = static_cast<int64_t>(lcm_u(static_cast<uint64_t>(T), t));
    }
    std::vector<std::pair<int64_t, int64_t>> factors;
    size_t i = 0;
    for (const auto& [delta, e] : exps_) {
        auto [r, t] = rt[i++];
        const int64_t ri = static_cast<int64_t>(r), ti = static_cast<int64_t>(t);
        if ((M.d * ri) % static_cast<int64_t>(delta)) fail(ErrorCode::invalid_input, "expand_at_cusp: k does not divide dr - cs");
        Mat2 Md{M.a * ti, M.b * ri, M.c / ri, M.d / ti};
        CycNum f = eta_multiplier(Md) * CycNum::sqrt_pos(t).inv();
        pre *= f.pow(e);
        factors.emplace_back(T / ti * ri, e);
    }
    return {pre, eta_product_series(factors, T, prec)};
}

bool EtaQuotient::modular_gamma1() const {
    Integer s1 = 0, s2 = 0;
    int64_t w = 0;
    for (const auto& [delta, r] : exps_) {
        s1 += Integer(static_cast<long>(delta)) * r;
        s2 += Integer(static_cast<long>(level_ / delta)) * r;
        w += r;
    }
    s1 *= static_cast<unsigned long>(level_);
    return s1 % 24 == 0 && s2 % 24 == 0 && w % 2 == 0;
}

CycNum EtaQuotient::gamma1_character(const Mat2& M) const {
    Integer s = 0;
    for (const auto& [delta, r] : exps_) s += Integer(static_cast<long>(delta)) * r;
    Rational x(s * Integer(static_cast<long>(M.b)), Integer(24));
    x.canonicalize();
    return CycNum::e(x);
}

CycNum EtaQuotient::gamma0_factor(const Mat2& M) const {
    if (M.det() != 1) fail(ErrorCode::invalid_input, "gamma0_factor: determinant is not 1");
    if (M.c % static_cast<int64_t>(level_)) fail(ErrorCode::invalid_input, "gamma0_factor: matrix not in Gamma_0(N)");
    if (M.c == 0) {
        if (M.a != 1 || M.d != 1) fail(ErrorCode::invalid_input, "gamma0_factor: c = 0 requires a = d = 1");
        return gamma1_character(M);
    }
    if (M.c < 0) fail(ErrorCode::invalid_input, "gamma0_factor: c must be positive");
    CycNum v(1L);
    for (const auto& [delta, r] : exps_) {
        Mat2 Md{M.a, M.b * static_cast<int64_t>(delta), M.c / static_cast<int64_t>(delta), M.d};
        v *= eta_multiplier(Md).pow(r);
    }
    return v;
}

Rational EtaQuotient::cusp_order(uint64_t c) const {
    uint64_t g = gcd_u(c, level_), cp = level_ / g;
    Rational s = 0;
    for (const auto& [delta, r] : exps_) s += Rational(static_cast<long>(gcd_u(delta, g) * r), static_cast<long>(gcd_u(delta, cp)));
    s /= 24;
    s.canonicalize();
    return s;
}

std::map<uint64_t, Rational> EtaQuotient::cusp_orders() const {
    std::map<uint64_t, Rational> out;
    for (uint64_t c : divisors(level_)) out[c] = cusp_order(c);
    return out;
}

bool EtaQuotient::is_cusp_form() const {
    for (const auto& [c, o] : cusp_orders())
        if (o <= 0) return false;
    return true;
}

bool EtaQuotient::is_holomorphic() const {
    for (const auto& [c, o] : cusp_orders())
        if (o < 0) return false;
    return true;
}

std::complex<long double> EtaQuotient::log_value(std::complex<long double> tau) const {
    std::complex<long double> s = 0;
    for (const auto& [delta, r] : exps_) s += static_cast<long double>(r) * log_eta(static_cast<long double>(delta) * tau);
    return s;
}

}  // namespace refl
