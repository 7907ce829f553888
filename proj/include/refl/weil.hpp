#pragma once

#include "refl/cyclo.hpp"
#include "refl/discforms.hpp"
#include "refl/eta.hpp"
#include "refl/qseries.hpp"
#include "refl/sl2.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace refl {

using CycMatrix = std::vector<std::vector<CycNum>>;

enum class Generator { S, T };

// e(sign/8) / sqrt|D|
CycNum weil_scalar(const DiscForm& D);

// dense matrix of rho_D(g); entry [i][j] is the coefficient of e_i in rho(g) e_j
CycMatrix rho_generator(const DiscForm& D, Generator g);
CycMatrix multiply(const CycMatrix& A, const CycMatrix& B);

struct RelationCheck {
    bool s_squared = false;  // rho(S)^2 e_g = e(sign/4) e_-g, hence rho(S)^4 = 1
    bool braid = false;      // (rho(S) rho(T))^3 = rho(S)^2
    bool unitary = false;    // rho(S) rho(S)^* = 1
    bool ok() const { return s_squared && braid && unitary; }
};
RelationCheck check_relations(const DiscForm& D);

// M = l_1 l_2 ... with each letter S or T^t
struct Letter {
    bool s = false;
    int64_t t = 0;
};
std::vector<Letter> st_word(const Mat2& M);
Mat2 word_value(const std::vector<Letter>& w);

// row of rho_D(M) at gamma:  F_gamma | M = sum row[mu] F_mu
using SparseRow = std::vector<std::pair<uint64_t, CycNum>>;
CycNum xi(const DiscForm& D, const Mat2& M);
SparseRow transform_row(const DiscForm& D, const Element& gamma, const Mat2& M);
// the same row from the S, T factorization of M
SparseRow transform_row_word(const DiscForm& D, const Element& gamma, const Mat2& M);
bool rows_equal(const SparseRow& a, const SparseRow& b);

struct ClassKey {
    uint64_t order;
    int64_t norm;  // norm_num
    auto operator<=>(const ClassKey&) const = default;
};

struct Classes {
    std::vector<ClassKey> keys;
    std::vector<uint64_t> size;
    std::vector<uint64_t> representative;
    std::vector<uint32_t> of;  // class of each element index
};
Classes element_classes(const DiscForm& D);

class VVForm {
public:
    VVForm(std::shared_ptr<const DiscForm> D, int64_t weight2);
    // components given by slot: component(i) = forms[slots[i]]
    VVForm(std::shared_ptr<const DiscForm> D, int64_t weight2, std::vector<uint32_t> slots, std::vector<QExp> forms);

    const DiscForm& form() const { return *D_; }
    std::shared_ptr<const DiscForm> form_ptr() const { return D_; }
    int64_t weight2() const { return weight2_; }
    const QExp& component(uint64_t index) const { return forms_[slots_[index]]; }
    const QExp& component(const Element& x) const { return component(D_->index(x)); }
    void set(uint64_t index, QExp f);

    const std::vector<uint32_t>& slots() const { return slots_; }
    const std::vector<QExp>& forms() const { return forms_; }
    bool is_symmetric() const;

private:
    std::shared_ptr<const DiscForm> D_;
    int64_t weight2_;
    std::vector<uint32_t> slots_;
    std::vector<QExp> forms_;
};

QExp component_transform(const VVForm& F, const Element& gamma, const Mat2& M);

// M_c = (1 b; c d) with d = 1 mod c and d = 0 mod N/c
Mat2 cusp_matrix(uint64_t c, uint64_t N);
CycNum xi_c(const DiscForm& D, uint64_t c);

// F_{Gamma_0(N), f, 0} from f|M_c for every c | N
VVForm gamma0_lift(const DiscForm& D, int64_t weight2, const std::map<uint64_t, QExp>& fc);
std::map<uint64_t, QExp> eta_cusp_expansions(const EtaQuotient& f, const CycNum& scale, uint64_t N, const Rational& prec);

// f has character chi_D on Gamma_0(N)
bool eta_character_matches(const EtaQuotient& f, const DiscForm& D);

// (element index, exponent) -> coefficient, exponents negative
using PrincipalPart = std::map<std::pair<uint64_t, Rational>, CycNum>;
PrincipalPart principal_part(const VVForm& F);

enum class Reflectivity { none, semi, reflective, strong };
std::string reflectivity_name(Reflectivity r);
Reflectivity reflectivity(const DiscForm& D, const PrincipalPart& P);
Reflectivity reflectivity(const VVForm& F);

// number of elements of order d with F = q^(-1/d) + O(1)
std::map<uint64_t, uint64_t> pole_counts(const VVForm& F);

VVForm symmetrize(const VVForm& F);
VVForm lift_on_H(const VVForm& FH, const Quotient& Q);

// orbits of Aut(D) by brute force, each a sorted list of indices
std::vector<std::vector<uint64_t>> automorphism_orbits(const DiscForm& D);

bool pole_bound_check(const std::map<uint64_t, QExp>& fc, uint64_t N);
bool valence_bound(int64_t k, uint64_t N);
// (k, omega) -> largest admissible N, nullopt when none
std::map<std::pair<int64_t, int>, std::optional<uint64_t>> table2();
std::vector<uint64_t> admissible_levels(int64_t k);

// one line per (order, norm) class
std::string vvform_report(const VVForm& F);

}  // namespace refl
