#include "refl/qseries.hpp"

#include "refl/error.hpp"

#include <cmath>
#include <numbers>

namespace refl {

std::optional<Rational> min_prec(const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

QExp::QExp(const CycNum& c, std::optional<Rational> prec) : prec_(std::move(prec)) {
    if (!c.is_zero()) terms_.emplace(Rational(0), c);
    clip();
}

QExp QExp::monomial(const CycNum& c, const Rational& x, std::optional<Rational> prec) {
    QExp f;
    f.prec_ = std::move(prec);
    f.add_term(x, c);
    f.clip();
    return f;
}

void QExp::clip() {
    if (!prec_) return;
    terms_.erase(terms_.lower_bound(*prec_), terms_.end());
}

CycNum QExp::coeff(const Rational& x) const {
    if (prec_ && x >= *prec_)
        fail(ErrorCode::precision, "coefficient at q^" + rational_str(x) + " beyond precision " + rational_str(*prec_));
    auto it = terms_.find(x);
    return it == terms_.end() ? CycNum() : it->second;
}

void QExp::set(const Rational& x, const CycNum& c) {
    if (prec_ && x >= *prec_) return;
    if (c.is_zero())
        terms_.erase(x);
    else
        terms_[x] = c;
}

void QExp::add_term(const Rational& x, const CycNum& c) {
    if (c.is_zero() || (prec_ && x >= *prec_)) return;
    auto it = terms_.find(x);
    if (it == terms_.end()) {
        terms_.emplace(x, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

std::optional<Rational> QExp::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

Integer QExp::width() const {
    Integer w = 1;
    for (const auto& [x, c] : terms_) mpz_lcm(w.get_mpz_t(), w.get_mpz_t(), x.get_den_mpz_t());
    return w;
}

QExp QExp::truncated(const Rational& prec) const {
    QExp f = *this;
    f.prec_ = min_prec(prec_, prec);
    f.clip();
    return f;
}

QExp QExp::congruent_part(const Rational& x) const {
    QExp f;
    f.prec_ = prec_;
    for (const auto& [e, c] : terms_) {
        Rational d = e - x;
        d.canonicalize();
        if (d.get_den() == 1) f.terms_.emplace(e, c);
    }
    return f;
}

QExp QExp::rescale_shift(int64_t r, int64_t s, int64_t t) const {
    if (r <= 0 || t <= 0) fail(ErrorCode::invalid_input, "rescale_shift: r and t must be positive");
    QExp f;
    Rational rt(r, t), st(s, t);
    rt.canonicalize();
    st.canonicalize();
    if (prec_) f.prec_ = *prec_ * rt;
    for (const auto& [e, c] : terms_) {
        Rational ph = e * st;
        f.terms_.emplace(e * rt, s ? c * CycNum::e(ph) : c);
    }
    return f;
}

QExp QExp::map_coeffs(const std::function<CycNum(const CycNum&)>& fn) const {
    QExp f;
    f.prec_ = prec_;
    for (const auto& [e, c] : terms_) f.add_term(e, fn(c));
    return f;
}

QExp& QExp::operator+=(const QExp& o) {
    prec_ = min_prec(prec_, o.prec_);
    clip();
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

QExp& QExp::operator-=(const QExp& o) { return *this += -o; }

QExp QExp::operator-() const {
    QExp f = *this;
    for (auto& [e, c] : f.terms_) c = -c;
    return f;
}

QExp& QExp::operator*=(const CycNum& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

QExp& QExp::operator*=(const QExp& o) {
    auto va = valuation(), vb = o.valuation();
    // lower bound for the valuation; nullopt for an exact zero
    auto lower = [](const std::optional<Rational>& v, const std::optional<Rational>& p) { return v ? v : p; };
    auto la = lower(va, prec_), lb = lower(vb, o.prec_);
    QExp f;
    if (!la || !lb) return *this = QExp();
    if (o.prec_) f.prec_ = min_prec(f.prec_, *la + *o.prec_);
    if (prec_) f.prec_ = min_prec(f.prec_, *lb + *prec_);
    const auto& p = f.prec_;
    if (va && vb) {
        for (const auto& [e1, c1] : terms_) {
            if (p && e1 + *vb >= *p) break;
            for (const auto& [e2, c2] : o.terms_) {
                Rational e = e1 + e2;
                if (p && e >= *p) break;
                f.add_term(e, c1 * c2);
            }
        }
    }
    return *this = std::move(f);
}

bool QExp::agrees_with(const QExp& o) const {
    auto p = min_prec(prec_, o.prec_);
    auto check = [&](const QExp& a, const QExp& b) {
        for (const auto& [e, c] : a.terms_) {
            if (p && e >= *p) break;
            auto it = b.terms_.find(e);
            if (it == b.terms_.end() || it->second != c) return false;
        }
        return true;
    };
    return check(*this, o) && check(o, *this);
}

std::complex<long double> QExp::evaluate(std::complex<long double> tau) const {
    const long double tp = 2 * std::numbers::pi_v<long double>;
    std::complex<long double> s = 0;
    for (const auto& [e, c] : terms_) {
        long double x = e.get_d();
        auto z = c.to_complex();
        std::complex<long double> q = std::exp(std::complex<long double>(0, tp * x) * tau);
        s += std::complex<long double>(z.real(), z.imag()) * q;
    }
    return s;
}

std::string QExp::str() const {
    std::string out;
    for (const auto& [e, c] : terms_) {
        std::string cs;
        bool neg = false;
        if (c.is_rational()) {
            Rational v = c.to_rational();
            neg = v < 0 && !out.empty();
            cs = rational_str(neg ? Rational(-v) : v);
        } else {
            cs = "(" + c.str() + ")";
        }
        if (!out.empty()) out += neg ? " - " : " + ";
        out += cs + " * q^(" + rational_str(e) + ")";
    }
    if (prec_) out += (out.empty() ? "" : " + ") + std::string("O(q^(") + rational_str(*prec_) + "))";
    if (out.empty()) out = "0";
    return out;
}

}  // namespace refl
