#pragma once

#include "refl/cyclo.hpp"
#include "refl/qseries.hpp"
#include "refl/sl2.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace refl {

// Real Dirichlet character of squarefree modulus: the Legendre symbol at the
// primes in `legendre`, principal at the other primes of the modulus.
class DirichletCharacter {
public:
    DirichletCharacter() = default;
    DirichletCharacter(uint64_t modulus, std::set<uint64_t> legendre);
    static DirichletCharacter trivial(uint64_t modulus = 1) { return DirichletCharacter(modulus, {}); }
    // Kronecker character (D/.) of a fundamental discriminant D with odd |D|, on modulus N
    static DirichletCharacter from_discriminant(int64_t D, uint64_t modulus);
    // "3:legendre 5:trivial" or "none"
    static DirichletCharacter parse(const std::string& text, uint64_t modulus);
    std::string str() const;

    uint64_t modulus() const { return modulus_; }
    const std::set<uint64_t>& legendre() const { return legendre_; }
    uint64_t conductor() const;
    bool is_primitive() const { return conductor() == modulus_; }
    bool is_principal() const { return legendre_.empty(); }
    // the signed discriminant of the primitive character
    int64_t discriminant() const;

    int value(int64_t a) const;
    // chi_c with chi = chi_c chi_{N/c}
    DirichletCharacter component(uint64_t c) const;
    DirichletCharacter primitive() const { return component(conductor()); }
    // the character on a multiple of the modulus
    DirichletCharacter induced(uint64_t modulus) const;
    bool operator==(const DirichletCharacter&) const = default;

private:
    uint64_t modulus_ = 1;
    std::set<uint64_t> legendre_;
};

// sum_{h=1}^{p-1} chi(h) e(h/p) for modulus p prime; 1 for modulus 1
CycNum gauss_sum(const DirichletCharacter& chi);

Rational bernoulli(unsigned k);
Rational bernoulli_polynomial(unsigned k, const Rational& x);
// B_{k,psi} for psi primitive
Rational bernoulli_generalized(unsigned k, const DirichletCharacter& psi);
// L(k, psi) / L(k, chi) with chi the character mod N induced by psi
Rational l_ratio(unsigned k, const DirichletCharacter& psi, uint64_t N);
// L(k, psi) from B_{k,psi} when psi(-1) = (-1)^k
std::complex<long double> l_value(unsigned k, const DirichletCharacter& psi);

// Q[y]/(P) for a monic irreducible P
class NumberField;
class NFElem {
public:
    NFElem() = default;
    NFElem(std::shared_ptr<const NumberField> K, std::vector<Rational> c);
    const std::vector<Rational>& coeffs() const { return c_; }
    const NumberField& field() const { return *K_; }
    std::shared_ptr<const NumberField> field_ptr() const { return K_; }
    bool is_zero() const;

    NFElem& operator+=(const NFElem& o);
    NFElem& operator-=(const NFElem& o);
    NFElem& operator*=(const NFElem& o);
    NFElem& operator*=(const Rational& r);
    NFElem operator-() const;
    friend NFElem operator+(NFElem a, const NFElem& b) { return a += b; }
    friend NFElem operator-(NFElem a, const NFElem& b) { return a -= b; }
    friend NFElem operator*(NFElem a, const NFElem& b) { return a *= b; }
    friend NFElem operator*(NFElem a, const Rational& r) { return a *= r; }
    friend bool operator==(const NFElem& a, const NFElem& b) { return a.c_ == b.c_; }
    NFElem inv() const;
    NFElem pow(unsigned e) const;
    Rational trace() const;
    // value at the j-th complex root of P
    std::complex<long double> embed(size_t j) const;
    std::string str() const;

private:
    std::shared_ptr<const NumberField> K_;
    std::vector<Rational> c_;
};

class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    // P = y^d + poly[d-1] y^(d-1) + ... + poly[0]; poly has d + 1 entries, monic
    static std::shared_ptr<NumberField> create(std::vector<Rational> poly);
    static std::shared_ptr<NumberField> parse(const std::string& text);
    size_t degree() const { return poly_.size() - 1; }
    const std::vector<Rational>& poly() const { return poly_; }
    const std::vector<std::complex<long double>>& roots() const { return roots_; }
    std::string str() const;

    NFElem make(const Rational& r) const;
    NFElem gen() const;
    // polynomial in y, e.g. "2*y^2 - 4"
    NFElem parse_elem(const std::string& text) const;
    std::vector<Rational> reduce(std::vector<Rational> c) const;

private:
    std::vector<Rational> poly_;
    std::vector<std::complex<long double>> roots_;
    std::vector<Rational> power_traces_;
    friend class NFElem;
};

// a_n for n <= terms, of a newform of squarefree level
struct Newform {
    uint64_t level = 1;
    int64_t weight = 0;
    DirichletCharacter chi;
    std::shared_ptr<const NumberField> field;
    std::vector<NFElem> a;  // a[0] unused
    std::string name;

    size_t terms() const { return a.size() - 1; }
    const NFElem& coeff(uint64_t n) const;
    // conjugate of a_n inside the coefficient field
    NFElem conj_coeff(uint64_t n) const;
    // a_{mn} = a_m a_n for coprime m, n <= terms and the p^j recursion at p | level
    bool multiplicative() const;
};

Newform parse_newform(const std::string& text, const std::string& name = "");
std::string serialize_newform(const Newform& g);
Newform load_newform(const std::string& path);

struct SpaceInfo {
    uint64_t level;
    int64_t weight;
    int64_t disc;
    uint64_t dim;
};

class NewformDB {
public:
    explicit NewformDB(const std::string& dir);
    const std::vector<Newform>& forms() const { return forms_; }
    const std::vector<SpaceInfo>& spaces() const { return spaces_; }
    std::vector<const Newform*> find(uint64_t level, int64_t weight, const DirichletCharacter& chi) const;
    // declared dim S_k(Gamma_0(N), chi); nullopt when the space is not listed
    std::optional<uint64_t> space_dim(uint64_t N, int64_t weight, const DirichletCharacter& chi) const;

private:
    std::vector<Newform> forms_;
    std::vector<SpaceInfo> spaces_;
};

std::string default_data_dir();

// scale * sum_{n >= 1} coeffs[n] q^(n step), exact for n <= coeffs.size() - 1
struct NFExpansion {
    CycNum scale = CycNum(1);
    Rational step = 1;
    std::vector<NFElem> coeffs;  // coeffs[0] unused

    size_t terms() const { return coeffs.size() - 1; }
    // the expansion of sum_sigma sigma(theta) sigma(.) over the embeddings
    QExp trace(const NFElem& theta) const;
    // scale * coefficient at q^x, as scale times an element of the field
    NFElem coeff_at(const Rational& x) const;
    std::complex<long double> evaluate(size_t embedding, std::complex<long double> tau) const;
};

// g|W_{c'} = lambda sum a_n^{(c')} q^n: lambda = lambda_cyc * lambda_nf
struct AtkinLehner {
    CycNum lambda_cyc;
    NFElem lambda_nf;
    Newform image;  // sum a_n^{(c')} q^n
};
AtkinLehner atkin_lehner(const Newform& g, uint64_t cp);
NFExpansion atkin_lehner_expansion(const Newform& g, uint64_t cp);
// g|M_c with M_c = cusp_matrix(c, level)
NFExpansion expansion_at_cusp(const Newform& g, uint64_t c);
// g(d tau) as a form of level N, slashed with cusp_matrix(c, N)
NFExpansion oldform_at_cusp(const Newform& g, uint64_t d, uint64_t N, uint64_t c);

// (c tau + d)^-k g_sigma(d' M tau) with g_sigma the j-th embedding, summed to all terms
std::complex<long double> slash_numeric(const Newform& g, size_t embedding, uint64_t dilation, const Mat2& M,
                                        std::complex<long double> tau);

// the basis of S_k(Gamma_0(N), chi) by trace forms g_theta(d tau)
struct CuspBasisElement {
    const Newform* g;
    uint64_t dilation;
    NFElem theta;
    std::string name() const;
};
std::vector<CuspBasisElement> cusp_basis(const NewformDB& db, uint64_t N, int64_t weight, const DirichletCharacter& chi);
// b_c: coefficient of g_theta(d tau)|M_c at q^(1/c')
CycNum cusp_coefficient(const CuspBasisElement& e, uint64_t N, uint64_t c);

}  // namespace refl
