#pragma once

#include "refl/cyclo.hpp"
#include "refl/qseries.hpp"
#include "refl/sl2.hpp"

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace refl {

// eta multiplier: eta(M tau) = eps(M) sqrt(c tau + d) eta(tau), c > 0 or M = T^b
CycNum eta_multiplier(const Mat2& M);

// log eta(tau) by the product formula, branch continuous from q^(1/24)
std::complex<long double> log_eta(std::complex<long double> tau);

// u^(sum m r / 24) prod_i prod_n (1 - u^(m_i n))^(r_i) with u = q^(1/scale),
// exact below q^prec
QExp eta_product_series(const std::vector<std::pair<int64_t, int64_t>>& factors, int64_t scale, const Rational& prec);

class EtaQuotient {
public:
    EtaQuotient() = default;
    // level 0 means lcm of the deltas
    EtaQuotient(std::map<uint64_t, int64_t> exps, uint64_t level = 0);

    // "1^6 2^3 3^2 6^-1" or "eta{1^-24}"
    static EtaQuotient parse(const std::string& text, uint64_t level = 0);
    std::string str() const;

    uint64_t level() const { return level_; }
    const std::map<uint64_t, int64_t>& exps() const { return exps_; }
    // twice the weight
    int64_t weight2() const;
    int64_t weight() const;

    QExp expand(const Rational& prec) const;

    struct CuspExpansion {
        CycNum prefactor;
        QExp series;
    };
    // E|_k M for c > 0 and d = 0 mod N/(c,N)
    CuspExpansion expand_at_cusp(const Mat2& M, const Rational& prec) const;

    // integrality conditions of the Gamma_1(N) modularity criterion
    bool modular_gamma1() const;
    // e(b/24 sum delta r_delta)
    CycNum gamma1_character(const Mat2& M) const;
    // E|_k M = value * E for M in Gamma_0(N) with c > 0
    CycNum gamma0_factor(const Mat2& M) const;
    // order at the cusps a/c with (c, N) = c for each c | N
    std::map<uint64_t, Rational> cusp_orders() const;
    Rational cusp_order(uint64_t c) const;
    bool is_cusp_form() const;
    bool is_holomorphic() const;

    // log of E(tau) numerically
    std::complex<long double> log_value(std::complex<long double> tau) const;

    bool operator==(const EtaQuotient&) const = default;

private:
    std::map<uint64_t, int64_t> exps_;
    uint64_t level_ = 1;
};

}  // namespace refl
