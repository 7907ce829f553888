#include "refl/cyclo.hpp"

#include "refl/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>

namespace refl {

uint64_t gcd_u(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

uint64_t lcm_u(uint64_t a, uint64_t b) { return a / gcd_u(a, b) * b; }

int64_t mod_floor(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t inverse_mod(int64_t a, int64_t m) {
    if (m == 1) return 0;
    int64_t g = m, x = 0, x1 = 1, a1 = mod_floor(a, m);
    while (a1) {
        int64_t q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) fail(ErrorCode::domain, "inverse_mod: not invertible");
    return mod_floor(x, m);
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<uint64_t> divisors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        if (d * d != n) out.push_back(n / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_squarefree(uint64_t n) {
    for (uint64_t p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return n >= 1;
}

int moebius(uint64_t n) {
    if (!is_squarefree(n)) return 0;
    return prime_factors(n).size() % 2 ? -1 : 1;
}

uint64_t euler_phi(uint64_t n) {
    uint64_t r = n;
    for (uint64_t p : prime_factors(n)) r = r / p * (p - 1);
    return r;
}

namespace {

struct PrimePower {
    uint64_t p, q;
};

std::vector<PrimePower> factor_powers(uint64_t n) {
    std::vector<PrimePower> out;
    for (uint64_t p : prime_factors(n)) {
        uint64_t q = 1;
        while (n % (q * p) == 0) q *= p;
        out.push_back({p, q});
    }
    return out;
}

bool allowed(uint64_t e, const PrimePower& f) {
    uint64_t r = e % f.q;
    if (f.p == 2) return r < f.q / 2;
    return r >= f.q / f.p;
}

// Rewrite sum v[e] zeta_n^e onto basis exponents.
void reduce(std::vector<Integer>& v, uint64_t n) {
    for (const auto& f : factor_powers(n)) {
        if (f.p == 2) {
            for (uint64_t e = 0; e < n; ++e) {
                if (sgn(v[e]) == 0 || allowed(e, f)) continue;
                v[(e + n / 2) % n] -= v[e];
                v[e] = 0;
            }
            continue;
        }
        const uint64_t step = n / f.p;
        for (uint64_t e = 0; e < n; ++e) {
            if (sgn(v[e]) == 0 || allowed(e, f)) continue;
            Integer c;
            c.swap(v[e]);
            for (uint64_t t = 1; t < f.p; ++t) v[(e + t * step) % n] -= c;
        }
    }
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) { return static_cast<uint64_t>((__uint128_t)a * b % m); }

uint64_t order_mod(uint64_t a, uint64_t m) {
    uint64_t x = a % m, k = 1;
    while (x != 1 % m) {
        x = mulmod(x, a, m);
        ++k;
    }
    return k;
}

// unit congruent to g mod q and 1 mod n/q
uint64_t lift_unit(uint64_t g, uint64_t q, uint64_t n) {
    uint64_t r = n / q;
    for (uint64_t x = g % q; x < n; x += q)
        if (x % r == 1 % r) return x;
    fail(ErrorCode::internal, "lift_unit failed");
}

// generators of (Z/n)^* with their orders
std::vector<std::pair<uint64_t, uint64_t>> unit_generators(uint64_t n) {
    std::vector<std::pair<uint64_t, uint64_t>> out;
    for (const auto& f : factor_powers(n)) {
        if (f.p == 2) {
            out.emplace_back(lift_unit(f.q - 1, f.q, n), 2);
            if (f.q >= 8) out.emplace_back(lift_unit(5, f.q, n), f.q / 4);
            continue;
        }
        uint64_t phi = f.q / f.p * (f.p - 1);
        for (uint64_t g = 2; g < f.q; ++g) {
            if (g % f.p == 0) continue;
            if (order_mod(g, f.q) == phi) {
                out.emplace_back(lift_unit(g, f.q, n), phi);
                break;
            }
        }
    }
    return out;
}

// zeta_m^j for m = 2 mod 4 as a signed power of zeta_(m/2)
std::pair<int, uint64_t> halve_exponent(uint64_t m, uint64_t j) {
    uint64_t k = m / 2;
    int sign = (j % 2) ? -1 : 1;
    uint64_t e = (j % k) * ((k + 1) / 2) % k;
    return {sign, e};
}

}  // namespace

std::vector<uint64_t> basis_exponents(uint64_t m) {
    auto fs = factor_powers(m);
    std::vector<uint64_t> out;
    for (uint64_t e = 0; e < m; ++e) {
        bool ok = true;
        for (const auto& f : fs) ok = ok && allowed(e, f);
        if (ok) out.push_back(e);
    }
    return out;
}

CycNum::CycNum(long v) : num_{Integer(v)} {}
CycNum::CycNum(const Integer& v) : num_{v} {}
CycNum::CycNum(const Rational& v) : num_{v.get_num()}, den_(v.get_den()) { normalize(); }

CycNum::CycNum(uint64_t m, std::vector<Integer> num, Integer den) : m_(m), num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

bool CycNum::descend_once() {
    const uint64_t n = m_;
    for (const auto& f : factor_powers(n)) {
        if (f.q == f.p) {
            // p exactly divides n: coefficients must be constant along each coset
            const uint64_t r = n / f.p;
            std::vector<uint32_t> cnt(r, 0);
            std::vector<const Integer*> val(r, nullptr);
            bool ok = true;
            for (uint64_t e = 0; e < n && ok; ++e) {
                if (sgn(num_[e]) == 0) continue;
                uint64_t key = e % r;
                if (val[key] && *val[key] != num_[e]) ok = false;
                val[key] = &num_[e];
                ++cnt[key];
            }
            if (!ok) continue;
            for (uint64_t key = 0; key < r && ok; ++key) ok = cnt[key] == 0 || cnt[key] == f.p - 1;
            if (!ok) continue;
            std::vector<Integer> w(r, Integer(0));
            uint64_t rinv = static_cast<uint64_t>(inverse_mod(static_cast<int64_t>(r % f.p), static_cast<int64_t>(f.p)));
            for (uint64_t key = 0; key < r; ++key) {
                if (!cnt[key]) continue;
                uint64_t j = mulmod((f.p - key % f.p) % f.p, rinv, f.p);
                uint64_t e0 = key + j * r;
                w[(e0 / f.p) % r] -= *val[key];
            }
            reduce(w, r);
            m_ = r;
            num_ = std::move(w);
            return true;
        }
        uint64_t div = (f.p == 2 && f.q == 4) ? 4 : f.p;
        bool ok = true;
        for (uint64_t e = 0; e < n && ok; ++e)
            if (sgn(num_[e]) && e % f.p) ok = false;
        if (!ok) continue;
        const uint64_t d = n / div;
        std::vector<Integer> w(d, Integer(0));
        for (uint64_t e = 0; e < n; ++e)
            if (sgn(num_[e])) w[(e / div) % d] += num_[e];
        reduce(w, d);
        m_ = d;
        num_ = std::move(w);
        return true;
    }
    return false;
}

void CycNum::normalize() {
    if (sgn(den_) < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    bool all_zero = true;
    for (const auto& c : num_)
        if (sgn(c)) {
            all_zero = false;
            break;
        }
    if (all_zero) {
        m_ = 1;
        num_.assign(1, Integer(0));
        den_ = 1;
        return;
    }
    while (m_ > 1 && descend_once()) {
    }
    Integer g = den_;
    for (const auto& c : num_) {
        if (g == 1) break;
        if (sgn(c)) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (g != 1) {
        den_ /= g;
        for (auto& c : num_)
            if (sgn(c)) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
}

CycNum CycNum::from_powers(uint64_t m, const std::vector<Integer>& c) {
    if (m == 0) fail(ErrorCode::invalid_input, "from_powers: order 0");
    uint64_t L = m % 4 == 2 ? m / 2 : m;
    std::vector<Integer> v(L, Integer(0));
    for (uint64_t j = 0; j < c.size(); ++j) {
        if (sgn(c[j]) == 0) continue;
        if (L == m) {
            v[j % m] += c[j];
            continue;
        }
        auto [s, e] = halve_exponent(m, j % m);
        if (s > 0)
            v[e] += c[j];
        else
            v[e] -= c[j];
    }
    reduce(v, L);
    return CycNum(L, std::move(v), Integer(1));
}

CycNum CycNum::zeta(uint64_t m, int64_t k) {
    if (m == 0) fail(ErrorCode::invalid_input, "zeta: order 0");
    uint64_t j = static_cast<uint64_t>(mod_floor(k, static_cast<int64_t>(m)));
    uint64_t g = gcd_u(j, m);
    m /= g;
    j /= g;
    if (m == 1) return CycNum(1L);
    std::vector<Integer> c(j + 1, Integer(0));
    c[j] = 1;
    return from_powers(m, c);
}

CycNum CycNum::root_of_unity(int64_t a, uint64_t b) {
    if (b == 0) fail(ErrorCode::invalid_input, "root_of_unity: b = 0");
    return zeta(b, a);
}

CycNum CycNum::e(const Rational& x) {
    Rational y = x;
    y.canonicalize();
    Integer n = y.get_num() % y.get_den();
    return zeta(y.get_den().get_ui(), n.get_si());
}

CycNum CycNum::i() { return zeta(4, 1); }

CycNum CycNum::sqrt_pos(uint64_t n) {
    if (n == 0) fail(ErrorCode::invalid_input, "sqrt_pos: n = 0");
    uint64_t square = 1, rest = n;
    for (uint64_t p : prime_factors(n)) {
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (int t = 0; t < e / 2; ++t) square *= p;
        if (e % 2) rest *= p;
    }
    CycNum out(static_cast<long>(square));
    for (uint64_t p : prime_factors(rest)) {
        CycNum r;
        if (p == 2) {
            r = zeta(8, 1) + zeta(8, 7);
        } else {
            std::vector<Integer> g(p, Integer(0));
            for (uint64_t h = 1; h < p; ++h) g[h] = kronecker(static_cast<int64_t>(h), static_cast<int64_t>(p));
            r = from_powers(p, g);
            if (p % 4 == 3) r *= -i();
        }
        if (r.to_complex().real() <= 0) fail(ErrorCode::internal, "sqrt_pos: wrong branch");
        out *= r;
    }
    return out;
}

bool CycNum::is_zero() const { return m_ == 1 && sgn(num_[0]) == 0; }

Rational CycNum::to_rational() const {
    if (m_ != 1) fail(ErrorCode::domain, "value is not rational: " + str());
    Rational q(num_[0], den_);
    q.canonicalize();
    return q;
}

std::vector<Integer> CycNum::scattered(uint64_t L) const {
    std::vector<Integer> v(L, Integer(0));
    const uint64_t step = L / m_;
    for (uint64_t e = 0; e < m_; ++e)
        if (sgn(num_[e])) v[e * step] = num_[e];
    if (L != m_) reduce(v, L);
    return v;
}

std::vector<Rational> CycNum::coordinates(uint64_t L) const {
    if (L % 4 == 2) L /= 2;
    if (L % m_) fail(ErrorCode::domain, "coordinates: order does not divide target");
    auto v = scattered(L);
    std::vector<Rational> out;
    for (uint64_t e : basis_exponents(L)) {
        Rational q(v[e], den_);
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

CycNum CycNum::galois(int64_t a) const {
    if (m_ == 1) return *this;
    int64_t m = static_cast<int64_t>(m_);
    if (std::gcd(mod_floor(a, m), m) != 1) fail(ErrorCode::domain, "galois: exponent not a unit");
    uint64_t am = static_cast<uint64_t>(mod_floor(a, m));
    std::vector<Integer> v(m_, Integer(0));
    for (uint64_t e = 0; e < m_; ++e)
        if (sgn(num_[e])) v[mulmod(am, e, m_)] = num_[e];
    reduce(v, m_);
    return CycNum(m_, std::move(v), den_);
}

CycNum& CycNum::operator+=(const CycNum& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    uint64_t L = lcm_u(m_, o.m_);
    std::vector<Integer> a = m_ == L ? std::move(num_) : scattered(L);
    std::vector<Integer> b = o.m_ == L ? o.num_ : o.scattered(L);
    if (den_ == o.den_) {
        for (uint64_t e = 0; e < L; ++e)
            if (sgn(b[e])) a[e] += b[e];
    } else {
        for (auto& c : a)
            if (sgn(c)) c *= o.den_;
        for (uint64_t e = 0; e < L; ++e)
            if (sgn(b[e])) mpz_addmul(a[e].get_mpz_t(), b[e].get_mpz_t(), den_.get_mpz_t());
        den_ *= o.den_;
    }
    m_ = L;
    num_ = std::move(a);
    normalize();
    return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) { return *this += -o; }

CycNum CycNum::operator-() const {
    CycNum out = *this;
    for (auto& c : out.num_)
        if (sgn(c)) c = -c;
    return out;
}

CycNum& CycNum::operator*=(const CycNum& o) {
    if (is_zero() || o.is_zero()) return *this = CycNum();
    if (o.m_ == 1) {
        for (auto& c : num_)
            if (sgn(c)) c *= o.num_[0];
        den_ *= o.den_;
        normalize();
        return *this;
    }
    if (m_ == 1) {
        CycNum t = o;
        return *this = (t *= *this);
    }
    const uint64_t L = lcm_u(m_, o.m_);
    const uint64_t s1 = L / m_, s2 = L / o.m_;
    std::vector<uint64_t> ia, ib;
    for (uint64_t e = 0; e < m_; ++e)
        if (sgn(num_[e])) ia.push_back(e);
    for (uint64_t e = 0; e < o.m_; ++e)
        if (sgn(o.num_[e])) ib.push_back(e);
    std::vector<Integer> v(L, Integer(0));
    for (uint64_t i : ia) {
        uint64_t base = i * s1;
        for (uint64_t j : ib) {
            uint64_t k = base + j * s2;
            if (k >= L) k %= L;
            mpz_addmul(v[k].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
        }
    }
    reduce(v, L);
    return *this = CycNum(L, std::move(v), den_ * o.den_);
}

bool operator==(const CycNum& a, const CycNum& b) { return a.m_ == b.m_ && a.den_ == b.den_ && a.num_ == b.num_; }

CycNum CycNum::inv() const {
    if (is_zero()) fail(ErrorCode::domain, "division by zero");
    if (m_ == 1) return CycNum(Rational(den_, num_[0]));
    // norm-form inverse: multiply through by the conjugates, one cyclic factor at a time
    CycNum y = *this, acc(1L);
    for (const auto& [g, ord] : unit_generators(m_)) {
        if (y.m_ == 1) break;
        CycNum z(1L), w = y;
        for (uint64_t k = 1; k < ord; ++k) {
            w = w.galois(static_cast<int64_t>(g));
            z *= w;
        }
        acc *= z;
        y *= z;
    }
    if (y.m_ != 1) fail(ErrorCode::internal, "inverse: norm is not rational");
    return acc * CycNum(Rational(y.den_, y.num_[0]));
}

CycNum CycNum::pow(int64_t e) const {
    if (e < 0) return inv().pow(-e);
    CycNum base = *this, out(1L);
    while (e) {
        if (e & 1) out *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return out;
}

std::complex<double> CycNum::to_complex() const {
    long double re = 0, im = 0;
    const long double tau = 2 * std::numbers::pi_v<long double>;
    long double d = mpf_class(den_).get_d();
    for (size_t i = 0; i < num_.size(); ++i) {
        if (sgn(num_[i]) == 0) continue;
        long double c = mpf_class(num_[i]).get_d() / d;
        long double ang = tau * static_cast<long double>(i) / static_cast<long double>(m_);
        re += c * std::cos(ang);
        im += c * std::sin(ang);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

std::string rational_str(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) fail(ErrorCode::invalid_input, "bad rational '" + s + "'");
    if (q.get_den() == 0) fail(ErrorCode::invalid_input, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string CycNum::str() const {
    if (m_ == 1) return rational_str(Rational(num_[0], den_));
    std::string out;
    for (size_t j = 0; j < num_.size(); ++j) {
        if (sgn(num_[j]) == 0) continue;
        Rational c(num_[j], den_);
        c.canonicalize();
        bool neg = sgn(c) < 0;
        Rational mag = neg ? Rational(-c) : c;
        std::string mono = j == 0 ? "" : (j == 1 ? "z" + std::to_string(m_) : "z" + std::to_string(m_) + "^" + std::to_string(j));
        std::string body;
        if (j == 0)
            body = rational_str(mag);
        else
            body = mag == 1 ? mono : rational_str(mag) + "*" + mono;
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out;
}

std::string CycNum::decimal(int digits) const {
    auto z = to_complex();
    std::ostringstream os;
    os << std::setprecision(digits) << z.real();
    if (m_ != 1) os << (z.imag() < 0 ? "-" : "+") << std::setprecision(digits) << std::abs(z.imag()) << "i";
    return os.str();
}

int kronecker(const Integer& a, const Integer& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

int kronecker(int64_t a, int64_t n) { return kronecker(Integer(static_cast<long>(a)), Integer(static_cast<long>(n))); }

Rational frac(int64_t a, int64_t b) {
    if (b == 0) fail(ErrorCode::invalid_input, "frac: zero denominator");
    Rational q{Integer(static_cast<long>(a)), Integer(static_cast<long>(b))};
    q.canonicalize();
    return q;
}

}  // namespace refl
