#pragma once

#include "refl/arithforms.hpp"
#include "refl/cyclo.hpp"
#include "refl/discforms.hpp"
#include "refl/eta.hpp"
#include "refl/weil.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace refl {

struct Candidate {
    int n = 0;
    std::shared_ptr<const DiscForm> D;

    static Candidate make(int n, const JordanSymbol& s);
    uint64_t level() const { return D->level(); }
    int64_t weight() const { return 1 + n / 2; }  // of the cusp forms
    std::string str() const;
    bool valid() const;
};

// d -> c_d for d | N
using CVector = std::map<uint64_t, int64_t>;
std::string cvector_str(const CVector& c);
// every c_d is 0 or N(D_d, 1)
bool symmetric_admissible(const DiscForm& D, const CVector& c);

// sum coeffs[u] u + constant = 0
struct LinearConstraint {
    std::map<std::string, CycNum> coeffs;
    CycNum constant;
    std::string origin;

    bool trivial() const;
    // substitute values for the named unknowns
    CycNum evaluate(const std::map<std::string, CycNum>& values) const;
    LinearConstraint scaled(const CycNum& s) const;
    std::string str() const;
};
std::string c_name(uint64_t d);
std::map<std::string, CycNum> c_values(const CVector& c);

struct Box {
    uint64_t d;
    int64_t lo, hi;
    bool even;
};
std::vector<Box> condition_A(const Candidate& cand);
std::vector<LinearConstraint> condition_B(const Candidate& cand, const NewformDB& db);
LinearConstraint condition_B_for(const Candidate& cand, const CuspBasisElement& g);

// the data of the Eisenstein condition
struct EisensteinData {
    int64_t k;
    DirichletCharacter chi, psi;
    uint64_t m;
    Rational bernoulli, lratio;
    CycNum epsilon;                          // epsilon_N
    std::map<uint64_t, CycNum> epsilon_c;    // epsilon_c
    std::map<std::pair<uint64_t, uint64_t>, CycNum> epsilon_cd;
    LinearConstraint constraint;             // sum kappa_d c_d - 1 = 0
};
DirichletCharacter character_of(const DiscForm& D);
EisensteinData eisenstein_data(const Candidate& cand);
LinearConstraint condition_C(const Candidate& cand);
bool condition_C_holds(const Candidate& cand, const CVector& c);

// vectors in the boxes satisfying every constraint, in lexicographic order of (c_d) by divisor
std::vector<CVector> solve(const Candidate& cand, const std::vector<LinearConstraint>& constraints);
std::vector<CVector> solve_ABC(const Candidate& cand, const NewformDB& db);

// cusps of Gamma_1(N): M = (a b; c d) with c > 0, d = 0 mod N/(c,N)
struct Gamma1Cusp {
    Mat2 M;
    uint64_t width;
};
std::vector<Gamma1Cusp> gamma1_cusps(uint64_t N);

// Constant term of sum_s t_s (F_gamma|M_s)(h|M_s) as a linear form in the
// coefficients x[mu] of F_mu at q^(-1/ord mu) for the roots mu, symmetrized
// over mu and -mu.
struct Pairing {
    std::map<uint64_t, CycNum> weight;  // root index -> coefficient
    std::string origin;
    CycNum evaluate(const std::function<CycNum(uint64_t)>& x) const;
    CycNum evaluate(const PrincipalPart& P, const DiscForm& D) const;
    LinearConstraint constraint(const DiscForm& D) const;
};
// h must be a cusp form of weight 1 + n/2 with character conj(chi_gamma) on Gamma_1(N)
Pairing gamma1_pairing(const DiscForm& D, int n, const Element& gamma, const EtaQuotient& h);
bool pairing_character_ok(const DiscForm& D, int n, const Element& gamma, const EtaQuotient& h);

// named sets of roots used by the grouped identities
struct Aggregate {
    std::string name;
    std::function<bool(const Element&)> member;
};
Aggregate agg_c(const DiscForm& D, uint64_t d);
Aggregate agg_a(const DiscForm& D, const Element& gamma, uint64_t d);
Aggregate agg_N(const DiscForm& D, const Element& gamma, uint64_t e);
Aggregate agg_delta(const DiscForm& D, const Element& gamma);
// sum_j coef_j * indicator_j as a weight on the roots
std::map<uint64_t, CycNum> aggregate_weight(const DiscForm& D, const std::vector<std::pair<Aggregate, CycNum>>& terms);
// p = s * t for a nonzero scalar s
bool proportional(const std::map<uint64_t, CycNum>& p, const std::map<uint64_t, CycNum>& t);
// coefficients on the classes (order, pairing with gamma, projection onto <gamma>'s part)
std::string grouped_report(const DiscForm& D, const Element& gamma, const Pairing& P);

}  // namespace refl
