#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace refl {

using Integer = mpz_class;
using Rational = mpq_class;

// Exact element of Q(zeta_m) stored as integer numerators over a common
// denominator.  Coefficients live on the phi(m) basis exponents of the
// Zumbroich basis (prime-by-prime normal form of sums of roots of unity).
// m is always the conductor of the value, so rationals have order 1 and
// m is never 2 mod 4.
class CycNum {
public:
    CycNum() = default;
    CycNum(long v);
    CycNum(const Integer& v);
    CycNum(const Rational& v);

    static CycNum zeta(uint64_t m, int64_t k = 1);
    static CycNum root_of_unity(int64_t a, uint64_t b);
    static CycNum e(const Rational& x);
    static CycNum i();
    static CycNum sqrt_pos(uint64_t n);
    // sum_j c[j] zeta_m^j for a coefficient vector of length m
    static CycNum from_powers(uint64_t m, const std::vector<Integer>& c);

    uint64_t order() const { return m_; }
    bool is_zero() const;
    bool is_rational() const { return m_ == 1; }
    Rational to_rational() const;
    // coordinates on the basis exponents of Q(zeta_L) in increasing order;
    // m must divide L
    std::vector<Rational> coordinates(uint64_t L) const;

    CycNum conj() const { return galois(-1); }
    CycNum galois(int64_t a) const;
    CycNum inv() const;
    CycNum pow(int64_t e) const;

    std::complex<double> to_complex() const;
    std::string str() const;
    std::string decimal(int digits = 12) const;

    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    CycNum& operator/=(const CycNum& o) { return *this *= o.inv(); }
    CycNum operator-() const;

    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
    friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
    friend bool operator==(const CycNum& a, const CycNum& b);
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

private:
    uint64_t m_ = 1;
    // indexed by exponent, length m_; zero off the basis
    std::vector<Integer> num_{Integer(0)};
    Integer den_ = 1;

    CycNum(uint64_t m, std::vector<Integer> num, Integer den);
    std::vector<Integer> scattered(uint64_t L) const;
    void normalize();
    bool descend_once();
};

uint64_t euler_phi(uint64_t n);
uint64_t gcd_u(uint64_t a, uint64_t b);
uint64_t lcm_u(uint64_t a, uint64_t b);
int64_t mod_floor(int64_t a, int64_t m);
int64_t inverse_mod(int64_t a, int64_t m);
std::vector<uint64_t> prime_factors(uint64_t n);
std::vector<uint64_t> divisors(uint64_t n);
bool is_squarefree(uint64_t n);
int moebius(uint64_t n);

// basis exponents of Q(zeta_m) in increasing order
std::vector<uint64_t> basis_exponents(uint64_t m);

int kronecker(const Integer& a, const Integer& n);
int kronecker(int64_t a, int64_t n);

// a/b in lowest terms
Rational frac(int64_t a, int64_t b);
std::string rational_str(const Rational& q);
Rational parse_rational(const std::string& s);

}  // namespace refl
