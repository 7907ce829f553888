#pragma once

#include "refl/cyclo.hpp"

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace refl {

// Truncated expansion sum c_x q^x over rational x, exact for x < prec.
// An expansion without prec is a finite sum known exactly.
class QExp {
public:
    QExp() = default;
    explicit QExp(const CycNum& c, std::optional<Rational> prec = std::nullopt);
    static QExp monomial(const CycNum& c, const Rational& x, std::optional<Rational> prec = std::nullopt);

    const std::map<Rational, CycNum>& terms() const { return terms_; }
    const std::optional<Rational>& prec() const { return prec_; }
    bool exact() const { return !prec_.has_value(); }

    CycNum coeff(const Rational& x) const;
    void set(const Rational& x, const CycNum& c);
    void add_term(const Rational& x, const CycNum& c);

    // lowest exponent with nonzero coefficient
    std::optional<Rational> valuation() const;
    Integer width() const;
    bool is_zero() const { return terms_.empty(); }

    QExp truncated(const Rational& prec) const;
    // terms with exponent congruent to x mod 1
    QExp congruent_part(const Rational& x) const;
    // a q^e -> a e(e s / t) q^(e r / t)
    QExp rescale_shift(int64_t r, int64_t s, int64_t t) const;
    QExp map_coeffs(const std::function<CycNum(const CycNum&)>& f) const;

    QExp& operator+=(const QExp& o);
    QExp& operator-=(const QExp& o);
    QExp& operator*=(const QExp& o);
    QExp& operator*=(const CycNum& c);
    QExp operator-() const;
    friend QExp operator+(QExp a, const QExp& b) { return a += b; }
    friend QExp operator-(QExp a, const QExp& b) { return a -= b; }
    friend QExp operator*(QExp a, const QExp& b) { return a *= b; }
    friend QExp operator*(QExp a, const CycNum& c) { return a *= c; }
    friend QExp operator*(const CycNum& c, QExp a) { return a *= c; }
    // equal terms and equal precision
    friend bool operator==(const QExp& a, const QExp& b) { return a.prec_ == b.prec_ && a.terms_ == b.terms_; }
    // agreement of all coefficients below the common precision
    bool agrees_with(const QExp& o) const;

    // sum over stored terms at q = e(tau)
    std::complex<long double> evaluate(std::complex<long double> tau) const;
    std::string str() const;

private:
    std::map<Rational, CycNum> terms_;
    std::optional<Rational> prec_;
    void clip();
};

std::optional<Rational> min_prec(const std::optional<Rational>& a, const std::optional<Rational>& b);

}  // namespace refl
