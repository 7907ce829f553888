#pragma once

#include "refl/cyclo.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace refl {

// p^{sign rank}; for p = 2 the component is 2_II^{sign rank} with rank even
struct JordanComponent {
    uint64_t p = 0;
    int rank = 0;
    int sign = 1;
    bool operator==(const JordanComponent&) const = default;
};

class JordanSymbol {
public:
    JordanSymbol() = default;
    explicit JordanSymbol(std::vector<JordanComponent> comps);

    // "2_II^+4 3^-3"; the trivial symbol is "1"
    static JordanSymbol parse(const std::string& text);
    std::string str() const;

    const std::vector<JordanComponent>& components() const { return comps_; }
    const JordanComponent* find(uint64_t p) const;
    bool trivial() const { return comps_.empty(); }
    uint64_t level() const;
    uint64_t order() const;
    int signature() const;
    bool operator==(const JordanSymbol&) const = default;

private:
    std::vector<JordanComponent> comps_;
};

// II_{n,2}(D)
struct LatticeSpec {
    int n = 0;
    JordanSymbol disc;
    static LatticeSpec parse(const std::string& text);
    std::string str() const;
    bool operator==(const LatticeSpec&) const = default;
};

int component_signature(const JordanComponent& c);
// every symbol supported on the given primes with |D| <= max_order
std::vector<JordanSymbol> jordan_symbols(uint64_t max_order, const std::vector<uint64_t>& primes);
// number of elements of norm j/p mod 1 in the component
uint64_t count_component(const JordanComponent& c, int64_t j);
// forced signs from the II_{1,1} + II_{1,1}(N) splitting; 0 when unconstrained
int forced_sign(int n, const JordanSymbol& D, uint64_t p);
bool splitting_constraints(int n, const JordanSymbol& D);

using Element = std::vector<uint32_t>;

class DiscForm {
public:
    struct Block {
        uint64_t p;
        size_t offset;
        size_t dim;
        std::vector<int64_t> diag;  // odd p: q(x) = sum diag[i] x_i^2 / p
        std::vector<char> planes;   // p = 2: 'u' or 'v' for each coordinate pair
    };

    DiscForm() : DiscForm(JordanSymbol()) {}
    explicit DiscForm(JordanSymbol symbol);

    const JordanSymbol& symbol() const { return symbol_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    uint64_t level() const { return level_; }
    uint64_t size() const { return size_; }
    size_t rank() const { return moduli_.size(); }
    uint32_t modulus(size_t i) const { return moduli_[i]; }
    int signature() const { return symbol_.signature(); }

    Element zero() const { return Element(rank(), 0); }
    // mixed radix, first coordinate most significant
    Element element(uint64_t index) const;
    uint64_t index(const Element& x) const;
    void for_each(const std::function<void(const Element&)>& f) const;

    Element add(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element scale(const Element& a, int64_t k) const;

    // gamma^2/2 = norm_num / N mod 1, in [0, N)
    int64_t norm_num(const Element& x) const;
    Rational norm(const Element& x) const;
    // (gamma, beta) = pair_num / N mod 1
    int64_t pair_num(const Element& a, const Element& b) const;
    uint64_t order_of(const Element& x) const;
    // projection onto D_d along D^d
    Element project(const Element& x, uint64_t d) const;
    bool in_torsion(const Element& x, uint64_t c) const;
    bool corresponds_to_roots(const Element& x) const;

    // elements of D_c with norm j/c mod 1
    uint64_t count_norm(uint64_t c, int64_t j) const;
    // elements of exact order d with norm j/d mod 1
    uint64_t count_order_norm(uint64_t d, int64_t j) const;

    // sum over D of e(gamma^2/2) by enumeration
    CycNum gauss_sum() const;

    // norm_num of every element, by index
    std::vector<uint32_t> norm_table() const;

private:
    JordanSymbol symbol_;
    std::vector<Block> blocks_;
    std::vector<uint32_t> moduli_;
    uint64_t level_ = 1, size_ = 1;
};

// H^perp / H with the projection of H^perp onto it
class Quotient {
public:
    Quotient(const DiscForm& D, const std::vector<Element>& generators);
    const DiscForm& parent() const { return *parent_; }
    const DiscForm& form() const { return form_; }
    const std::vector<Element>& subgroup() const { return elements_; }
    bool in_perp(const Element& x) const;
    Element project(const Element& x) const;

private:
    const DiscForm* parent_;
    DiscForm form_;
    std::vector<Element> elements_;
    std::vector<Element> gens_;
    // for each coordinate of the quotient realization, the vector whose pairing
    // (times 2^-1 or (2a)^-1 for odd p) extracts it
    struct Coord {
        Element dual;
        int64_t factor;
        uint64_t p;
    };
    std::vector<Coord> coords_;
};

std::vector<Element> subgroup_closure(const DiscForm& D, const std::vector<Element>& gens);
bool is_isotropic_subgroup(const DiscForm& D, const std::vector<Element>& elems);
// all isotropic subgroups, each as a sorted list of element indices
std::vector<std::vector<uint64_t>> isotropic_subgroups(const DiscForm& D, size_t limit = 100000);

}  // namespace refl
