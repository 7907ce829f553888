#include "refl/weil.hpp"

#include "refl/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

namespace refl {

namespace {

int64_t mulmod(int64_t a, int64_t b, int64_t m) {
    return mod_floor(static_cast<int64_t>((static_cast<__int128>(mod_floor(a, m)) * mod_floor(b, m)) % m), m);
}

// in-place reduction of sum a[e] zeta_N^e to the prime-by-prime normal form
void reduce_ring(int64_t* a, uint64_t N, const std::vector<uint64_t>& primes) {
    for (uint64_t p : primes) {
        const uint64_t step = N / p;
        if (p == 2) {
            for (uint64_t e = 1; e < N; e += 2) {
                if (!a[e]) continue;
                a[(e + step) % N] -= a[e];
                a[e] = 0;
            }
            continue;
        }
        for (uint64_t e = 0; e < N; e += p) {
            const int64_t c = a[e];
            if (!c) continue;
            a[e] = 0;
            for (uint64_t t = 1; t < p; ++t) a[(e + t * step) % N] -= c;
        }
    }
}

bool ring_zero(std::vector<int64_t> a, uint64_t N, const std::vector<uint64_t>& primes) {
    reduce_ring(a.data(), N, primes);
    return std::all_of(a.begin(), a.end(), [](int64_t v) { return v == 0; });
}

CycNum ring_value(const int64_t* a, uint64_t N) {
    std::vector<Integer> c(N);
    for (uint64_t e = 0; e < N; ++e) c[e] = Integer(static_cast<long>(a[e]));
    return CycNum::from_powers(N, c);
}

uint64_t part_size(const DiscForm& D, uint64_t g) {
    uint64_t s = 1;
    for (const auto& c : D.symbol().components())
        if (g % c.p == 0)
            for (int i = 0; i < c.rank; ++i) s *= c.p;
    return s;
}

int part_signature(const DiscForm& D, uint64_t g) {
    int s = 0;
    for (const auto& c : D.symbol().components())
        if (g % c.p == 0) s += component_signature(c);
    return s;
}

// smallest orthogonal pieces of the realization: one coordinate for odd p,
// one plane for p = 2
struct Atom {
    std::vector<size_t> coords;
    std::vector<uint64_t> offs;
    std::vector<int64_t> E;
    std::vector<uint64_t> bases;  // indices whose atom coordinates vanish
    size_t m = 1;
};

std::vector<Atom> atoms_of(const DiscForm& D) {
    std::vector<uint64_t> stride(D.rank(), 1);
    for (size_t i = D.rank(); i-- > 1;) stride[i - 1] = stride[i] * D.modulus(i);
    std::vector<Atom> out;
    for (const auto& b : D.blocks()) {
        const size_t w = b.p == 2 ? 2 : 1;
        for (size_t k = 0; k < b.dim; k += w) {
            Atom A;
            for (size_t j = 0; j < w; ++j) A.coords.push_back(b.offset + k + j);
            A.m = w == 2 ? 4 : b.p;
            std::vector<Element> loc;
            for (size_t l = 0; l < A.m; ++l) {
                Element x = D.zero();
                size_t r = l;
                uint64_t off = 0;
                for (size_t j = A.coords.size(); j-- > 0;) {
                    x[A.coords[j]] = static_cast<uint32_t>(r % b.p);
                    off += (r % b.p) * stride[A.coords[j]];
                    r /= b.p;
                }
                loc.push_back(x);
                A.offs.push_back(off);
            }
            A.E.resize(A.m * A.m);
            for (size_t x = 0; x < A.m; ++x)
                for (size_t y = 0; y < A.m; ++y) A.E[x * A.m + y] = D.pair_num(loc[x], loc[y]);
            Element z = D.zero();
            for (uint64_t idx = 0; idx < D.size(); ++idx) {
                if (std::all_of(A.coords.begin(), A.coords.end(), [&](size_t c) { return z[c] == 0; })) A.bases.push_back(idx);
                for (size_t i = D.rank(); i-- > 0;) {
                    if (++z[i] < D.modulus(i)) break;
                    z[i] = 0;
                }
            }
            out.push_back(std::move(A));
        }
    }
    return out;
}

// row vector over Z[C_N] times the unnormalized S matrix, one atom at a time
void apply_s(std::vector<int64_t>& v, const DiscForm& D, const std::vector<Atom>& atoms,
             const std::vector<uint64_t>& primes) {
    const uint64_t N = D.level(), n = D.size();
    std::vector<int64_t> out(v.size());
    for (const auto& A : atoms) {
        std::fill(out.begin(), out.end(), 0);
        for (uint64_t base : A.bases)
            for (size_t x = 0; x < A.m; ++x) {
                int64_t* dst = out.data() + (base + A.offs[x]) * N;
                for (size_t y = 0; y < A.m; ++y) {
                    const int64_t* src = v.data() + (base + A.offs[y]) * N;
                    const uint64_t sh = static_cast<uint64_t>(A.E[x * A.m + y]);
                    for (uint64_t e = 0; e < N; ++e)
                        if (src[e]) dst[(e + sh) % N] += src[e];
                }
            }
        v.swap(out);
    }
    for (uint64_t i = 0; i < n; ++i) {
        reduce_ring(v.data() + i * N, N, primes);
        for (uint64_t e = 0; e < N; ++e)
            if (std::llabs(v[i * N + e]) > (int64_t(1) << 52))
                fail(ErrorCode::internal, "weil: coefficient growth in the word oracle");
    }
}

}  // namespace

CycNum weil_scalar(const DiscForm& D) {
    return CycNum::e(frac(D.signature(), 8)) * CycNum::sqrt_pos(D.size()).inv();
}

CycMatrix rho_generator(const DiscForm& D, Generator g) {
    if (D.signature() % 2) fail(ErrorCode::domain, "rho_generator: odd signature");
    const uint64_t n = D.size(), N = D.level();
    std::vector<Element> el(n);
    for (uint64_t i = 0; i < n; ++i) el[i] = D.element(i);
    CycMatrix R(n, std::vector<CycNum>(n));
    if (g == Generator::T) {
        for (uint64_t i = 0; i < n; ++i) R[i][i] = CycNum::zeta(N, -D.norm_num(el[i]));
        return R;
    }
    const CycNum s = weil_scalar(D);
    std::vector<CycNum> table(N);
    for (uint64_t k = 0; k < N; ++k) table[k] = s * CycNum::zeta(N, static_cast<int64_t>(k));
    for (uint64_t i = 0; i < n; ++i)
        for (uint64_t j = 0; j < n; ++j) R[i][j] = table[static_cast<uint64_t>(D.pair_num(el[i], el[j]))];
    return R;
}

CycMatrix multiply(const CycMatrix& A, const CycMatrix& B) {
    const size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), l = B.size();
    CycMatrix C(n, std::vector<CycNum>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < l; ++k) {
            if (A[i][k].is_zero()) continue;
            for (size_t j = 0; j < m; ++j)
                if (!B[k][j].is_zero()) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

RelationCheck check_relations(const DiscForm& D) {
    if (D.signature() % 2) fail(ErrorCode::domain, "check_relations: odd signature");
    RelationCheck out;
    const uint64_t n = D.size(), N = D.level();
    const auto primes = prime_factors(N);
    std::vector<Element> el(n);
    std::vector<int64_t> nrm(n);
    for (uint64_t i = 0; i < n; ++i) {
        el[i] = D.element(i);
        nrm[i] = D.norm_num(el[i]);
    }
    const uint64_t zero = D.index(D.zero());
    const CycNum sigma = weil_scalar(D);
    const CycNum sigma2 = sigma * sigma;

    // A(nu) = sum_mu e(nu mu),  U(nu) = e(nu^2/2) sum_mu e(mu^2/2 + nu mu)
    auto sums = [&](uint64_t i, std::vector<int64_t>& A, std::vector<int64_t>& U) {
        std::fill(A.begin(), A.end(), 0);
        std::fill(U.begin(), U.end(), 0);
        for (uint64_t j = 0; j < n; ++j) {
            const int64_t p = D.pair_num(el[i], el[j]);
            A[static_cast<uint64_t>(p)] += 1;
            U[static_cast<uint64_t>((p + nrm[j] + nrm[i]) % static_cast<int64_t>(N))] += 1;
        }
        reduce_ring(U.data(), N, primes);
    };
    std::vector<int64_t> A(N), U(N), U0(N);
    sums(zero, A, U0);
    bool a_ok = sigma2 * ring_value(A.data(), N) == CycNum::e(frac(D.signature(), 4));
    bool v_ok = true;
    for (uint64_t i = 0; i < n && (a_ok || v_ok); ++i) {
        if (i == zero) continue;
        sums(i, A, U);
        a_ok = a_ok && ring_zero(A, N, primes);
        v_ok = v_ok && U == U0;
    }
    v_ok = v_ok && ring_value(U0.data(), N) * sigma == CycNum::e(frac(D.signature(), 4));
    // entries of rho(T) rho(S) rho(T) depend on gamma - beta through the norm
    bool t_ok = true;
    for (uint64_t i = 0; i < n && t_ok; ++i)
        for (uint64_t j = 0; j < n; ++j) {
            int64_t e = mod_floor(-nrm[i] + D.pair_num(el[i], el[j]) - nrm[j], static_cast<int64_t>(N));
            if (e != mod_floor(-D.norm_num(D.add(el[i], D.neg(el[j]))), static_cast<int64_t>(N))) {
                t_ok = false;
                break;
            }
        }
    out.s_squared = a_ok;
    out.braid = a_ok && v_ok && t_ok;
    out.unitary = a_ok && sigma * sigma.conj() * CycNum(Integer(static_cast<unsigned long>(n))) == CycNum(1L);
    return out;
}

std::vector<Letter> st_word(const Mat2& M) {
    if (M.det() != 1) fail(ErrorCode::invalid_input, "st_word: determinant is not 1");
    std::vector<Letter> w;
    Mat2 X = M;
    while (X.c != 0) {
        int64_t q = X.a / X.c;
        if ((X.a % X.c != 0) && ((X.a < 0) != (X.c < 0))) --q;
        if (q) w.push_back({false, q});
        X = Mat2::T(-q) * X;
        w.push_back({true, 0});
        X = Mat2{X.c, X.d, -X.a, -X.b};
    }
    if (X.a == 1) {
        if (X.b) w.push_back({false, X.b});
    } else {
        if (X.b) w.push_back({false, -X.b});
        w.push_back({true, 0});
        w.push_back({true, 0});
    }
    return w;
}

Mat2 word_value(const std::vector<Letter>& w) {
    Mat2 X;
    for (const auto& l : w) X = X * (l.s ? Mat2::S() : Mat2::T(l.t));
    return X;
}

CycNum xi(const DiscForm& D, const Mat2& M) {
    const uint64_t N = D.level();
    const uint64_t g = M.c == 0 ? N : gcd_u(static_cast<uint64_t>(std::llabs(M.c)), N);
    const uint64_t dc = part_size(D, g), dup = D.size() / dc;
    int k = kronecker(M.d, static_cast<int64_t>(dc)) * kronecker(M.c, static_cast<int64_t>(dup));
    return CycNum(static_cast<long>(k)) * CycNum::e(frac(D.signature() - part_signature(D, g), 8));
}

SparseRow transform_row(const DiscForm& D, const Element& gamma, const Mat2& M) {
    if (M.det() != 1) fail(ErrorCode::invalid_input, "transform: determinant is not 1");
    const int64_t N = static_cast<int64_t>(D.level());
    const uint64_t g = M.c == 0 ? D.level() : gcd_u(static_cast<uint64_t>(std::llabs(M.c)), D.level());
    const uint64_t dup = D.size() / part_size(D, g);
    const CycNum pre = xi(D, M) * CycNum::sqrt_pos(dup).inv();
    const int64_t cm = N / static_cast<int64_t>(g);
    const int64_t cbar = cm == 1 ? 0 : inverse_mod(mod_floor(M.c, cm), cm);
    const int64_t ng = D.norm_num(gamma);
    const Element ag = D.scale(gamma, M.a);
    const int64_t base = -mulmod(mulmod(M.a, M.b, N), ng, N);
    SparseRow row;
    D.for_each([&](const Element& beta) {
        if (gcd_u(D.order_of(beta), g) != 1) return;
        int64_t e = base - mulmod(mulmod(M.d, cbar, N), D.norm_num(beta), N) - mulmod(M.b, D.pair_num(beta, gamma), N);
        row.emplace_back(D.index(D.add(ag, beta)), pre * CycNum::zeta(static_cast<uint64_t>(N), e));
    });
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return row;
}

SparseRow transform_row_word(const DiscForm& D, const Element& gamma, const Mat2& M) {
    const uint64_t n = D.size(), N = D.level();
    const auto primes = prime_factors(N);
    const auto atoms = atoms_of(D);
    std::vector<int64_t> nrm(n);
    for (uint64_t i = 0; i < n; ++i) nrm[i] = D.norm_num(D.element(i));
    std::vector<int64_t> v(n * N, 0);
    v[D.index(gamma) * N] = 1;
    int s = 0;
    for (const auto& l : st_word(M)) {
        if (l.s) {
            apply_s(v, D, atoms, primes);
            ++s;
            continue;
        }
        for (uint64_t i = 0; i < n; ++i) {
            const uint64_t sh = static_cast<uint64_t>(mulmod(-l.t, nrm[i], static_cast<int64_t>(N)));
            std::rotate(v.begin() + i * N, v.begin() + i * N + (N - sh) % N, v.begin() + (i + 1) * N);
        }
    }
    const CycNum scale = weil_scalar(D).pow(s);
    SparseRow row;
    for (uint64_t i = 0; i < n; ++i) {
        CycNum c = ring_value(v.data() + i * N, N);
        if (!c.is_zero()) row.emplace_back(i, c * scale);
    }
    return row;
}

bool rows_equal(const SparseRow& a, const SparseRow& b) {
    auto strip = [](const SparseRow& r) {
        SparseRow o;
        for (const auto& e : r)
            if (!e.second.is_zero()) o.push_back(e);
        return o;
    };
    return strip(a) == strip(b);
}

Classes element_classes(const DiscForm& D) {
    Classes C;
    std::map<ClassKey, uint32_t> ids;
    std::vector<ClassKey> raw(D.size());
    uint64_t k = 0;
    D.for_each([&](const Element& x) {
        raw[k] = {D.order_of(x), D.norm_num(x)};
        ids.emplace(raw[k], 0);
        ++k;
    });
    uint32_t id = 0;
    for (auto& [key, v] : ids) {
        v = id++;
        C.keys.push_back(key);
    }
    C.size.assign(C.keys.size(), 0);
    C.representative.assign(C.keys.size(), 0);
    C.of.resize(D.size());
    for (uint64_t i = 0; i < D.size(); ++i) {
        uint32_t c = ids[raw[i]];
        C.of[i] = c;
        if (C.size[c]++ == 0) C.representative[c] = i;
    }
    return C;
}

VVForm::VVForm(std::shared_ptr<const DiscForm> D, int64_t weight2)
    : D_(std::move(D)), weight2_(weight2), slots_(D_->size(), 0), forms_{QExp()} {}

VVForm::VVForm(std::shared_ptr<const DiscForm> D, int64_t weight2, std::vector<uint32_t> slots, std::vector<QExp> forms)
    : D_(std::move(D)), weight2_(weight2), slots_(std::move(slots)), forms_(std::move(forms)) {
    if (slots_.size() != D_->size()) fail(ErrorCode::invalid_input, "VVForm: slot table has wrong size");
    for (uint32_t s : slots_)
        if (s >= forms_.size()) fail(ErrorCode::invalid_input, "VVForm: slot out of range");
}

void VVForm::set(uint64_t index, QExp f) {
    slots_.at(index) = static_cast<uint32_t>(forms_.size());
    forms_.push_back(std::move(f));
}

bool VVForm::is_symmetric() const {
    const Classes C = element_classes(*D_);
    for (uint64_t i = 0; i < slots_.size(); ++i) {
        uint32_t a = slots_[i], b = slots_[C.representative[C.of[i]]];
        if (a != b && !(forms_[a] == forms_[b])) return false;
    }
    return true;
}

QExp component_transform(const VVForm& F, const Element& gamma, const Mat2& M) {
    QExp out;
    for (const auto& [idx, c] : transform_row(F.form(), gamma, M)) out += F.component(idx) * c;
    return out;
}

Mat2 cusp_matrix(uint64_t c, uint64_t N) {
    if (c == 0 || N % c) fail(ErrorCode::invalid_input, "cusp_matrix: c must divide N");
    const int64_t ci = static_cast<int64_t>(c), cp = static_cast<int64_t>(N / c);
    int64_t d = c == 1 ? static_cast<int64_t>(N) : cp * inverse_mod(cp % ci, ci);
    return {1, (d - 1) / ci, ci, d};
}

CycNum xi_c(const DiscForm& D, uint64_t c) {
    const uint64_t cp = D.level() / c;
    const uint64_t dcp = part_size(D, cp);
    return CycNum(static_cast<long>(kronecker(-static_cast<int64_t>(c), static_cast<int64_t>(dcp)))) *
           CycNum::e(frac(part_signature(D, cp), 8));
}

VVForm gamma0_lift(const DiscForm& D, int64_t weight2, const std::map<uint64_t, QExp>& fc) {
    const uint64_t N = D.level();
    const auto divs = divisors(N);
    std::map<uint64_t, CycNum> mult;
    for (uint64_t c : divs) {
        auto it = fc.find(c);
        if (it == fc.end()) fail(ErrorCode::invalid_input, "gamma0_lift: missing expansion at the cusp 1/" + std::to_string(c));
        const uint64_t cp = N / c;
        for (const auto& [x, a] : it->second.terms()) {
            Rational y = x * Rational(static_cast<long>(cp));
            y.canonicalize();
            if (y.get_den() != 1)
                fail(ErrorCode::invalid_input, "gamma0_lift: expansion at 1/" + std::to_string(c) + " is not in q^(1/" + std::to_string(cp) + ")");
        }
        mult[c] = xi_c(D, c) * CycNum::sqrt_pos(part_size(D, cp)).inv() * CycNum(static_cast<long>(cp));
    }
    for (const auto& [x, a] : fc.at(N).terms())
        if (x.get_den() != 1) fail(ErrorCode::invalid_input, "gamma0_lift: f has non-integral exponents at infinity");
    auto Dp = std::make_shared<const DiscForm>(D);
    const Classes C = element_classes(D);
    std::vector<QExp> forms;
    for (const auto& key : C.keys) {
        QExp F;
        bool first = true;
        const Rational x(-key.norm, static_cast<long>(N));
        for (uint64_t c : divs) {
            const uint64_t cp = N / c;
            if (cp % key.order) continue;
            QExp g = fc.at(c).congruent_part(x) * mult[c];
            if (first) {
                F = g;
                first = false;
            } else {
                F += g;
            }
        }
        forms.push_back(F);
    }
    return VVForm(Dp, weight2, C.of, forms);
}

std::map<uint64_t, QExp> eta_cusp_expansions(const EtaQuotient& f, const CycNum& scale, uint64_t N, const Rational& prec) {
    EtaQuotient g(f.exps(), N);
    std::map<uint64_t, QExp> out;
    for (uint64_t c : divisors(N)) {
        auto ce = g.expand_at_cusp(cusp_matrix(c, N), prec);
        out[c] = ce.series * (ce.prefactor * scale);
    }
    return out;
}

bool eta_character_matches(const EtaQuotient& f, const DiscForm& D) {
    const int64_t N = static_cast<int64_t>(D.level());
    EtaQuotient g(f.exps(), D.level());
    if (!g.modular_gamma1()) return false;
    for (int64_t d = 1; d <= N; ++d) {
        if (std::gcd(d, N) != 1) continue;
        for (int64_t shift = 0; shift < 3; ++shift) {
            const int64_t dd = d + shift * N;
            const int64_t a = N == 1 ? 1 + shift : inverse_mod(dd % N, N) + shift * N;
            const int64_t b = (a * dd - 1) / N;
            const Mat2 M{a, b, N, dd};
            if (M.det() != 1) fail(ErrorCode::internal, "eta_character_matches: bad matrix");
            if (g.gamma0_factor(M) != CycNum(static_cast<long>(kronecker(a, static_cast<int64_t>(D.size())))))
                return false;
        }
    }
    return true;
}

PrincipalPart principal_part(const VVForm& F) {
    PrincipalPart P;
    std::vector<std::vector<std::pair<Rational, CycNum>>> neg(F.forms().size());
    for (size_t s = 0; s < F.forms().size(); ++s)
        for (const auto& [x, c] : F.forms()[s].terms()) {
            if (x >= 0) break;
            neg[s].emplace_back(x, c);
        }
    for (uint64_t i = 0; i < F.slots().size(); ++i)
        for (const auto& [x, c] : neg[F.slots()[i]]) P.emplace(std::make_pair(i, x), c);
    return P;
}

std::string reflectivity_name(Reflectivity r) {
    switch (r) {
        case Reflectivity::none: return "not reflective";
        case Reflectivity::semi: return "semi-reflective";
        case Reflectivity::reflective: return "reflective";
        case Reflectivity::strong: return "strongly reflective";
    }
    return "?";
}

Reflectivity reflectivity(const DiscForm& D, const PrincipalPart& P) {
    bool refl = true, strong = true;
    for (const auto& [key, c] : P) {
        const Element g = D.element(key.first);
        Rational t = key.second + D.norm(g);
        t.canonicalize();
        if (t.get_den() != 1)
            fail(ErrorCode::invalid_input, "reflectivity: exponent " + rational_str(key.second) + " is not -gamma^2/2 mod 1");
        if (c.is_zero()) continue;
        const uint64_t m = D.order_of(g);
        if (!D.corresponds_to_roots(g) || key.second != frac(-1, static_cast<long>(m))) return Reflectivity::none;
        if (!c.is_rational()) {
            refl = false;
            continue;
        }
        const Rational r = c.to_rational();
        if (r < 0) refl = false;
        if (r > 1) strong = false;
    }
    if (!refl) return Reflectivity::semi;
    return strong ? Reflectivity::strong : Reflectivity::reflective;
}

Reflectivity reflectivity(const VVForm& F) { return reflectivity(F.form(), principal_part(F)); }

std::map<uint64_t, uint64_t> pole_counts(const VVForm& F) {
    const DiscForm& D = F.form();
    std::map<uint64_t, uint64_t> out;
    for (uint64_t d : divisors(D.level())) out[d] = 0;
    std::map<std::pair<uint32_t, uint64_t>, bool> memo;
    uint64_t i = 0;
    D.for_each([&](const Element& x) {
        const uint64_t d = D.order_of(x);
        auto key = std::make_pair(F.slots()[i], d);
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, F.component(i).coeff(frac(-1, static_cast<long>(d))) == CycNum(1L)).first;
        if (it->second) ++out[d];
        ++i;
    });
    return out;
}

VVForm symmetrize(const VVForm& F) {
    const DiscForm& D = F.form();
    const Classes C = element_classes(D);
    std::vector<std::map<uint32_t, uint64_t>> counts(C.keys.size());
    for (uint64_t i = 0; i < D.size(); ++i) ++counts[C.of[i]][F.slots()[i]];
    std::vector<QExp> forms;
    for (size_t k = 0; k < C.keys.size(); ++k) {
        QExp s;
        bool first = true;
        for (const auto& [slot, cnt] : counts[k]) {
            QExp t = F.forms()[slot] * CycNum(Integer(static_cast<unsigned long>(cnt)));
            if (first) {
                s = t;
                first = false;
            } else {
                s += t;
            }
        }
        forms.push_back(s * CycNum(frac(1, static_cast<long>(C.size[k]))));
    }
    return VVForm(F.form_ptr(), F.weight2(), C.of, forms);
}

VVForm lift_on_H(const VVForm& FH, const Quotient& Q) {
    if (!(FH.form().symbol() == Q.form().symbol()))
        fail(ErrorCode::invalid_input, "lift_on_H: form does not live on H^perp/H");
    const DiscForm& D = Q.parent();
    std::vector<QExp> forms = FH.forms();
    const uint32_t zero_slot = static_cast<uint32_t>(forms.size());
    forms.emplace_back();
    std::vector<uint32_t> slots(D.size());
    uint64_t i = 0;
    D.for_each([&](const Element& x) {
        slots[i++] = Q.in_perp(x) ? FH.slots()[Q.form().index(Q.project(x))] : zero_slot;
    });
    return VVForm(std::make_shared<const DiscForm>(D), FH.weight2(), slots, forms);
}

std::vector<std::vector<uint64_t>> automorphism_orbits(const DiscForm& D) {
    const size_t r = D.rank();
    const uint64_t n = D.size();
    std::vector<Element> unit(r, D.zero());
    for (size_t i = 0; i < r; ++i) unit[i][i] = 1;
    std::vector<uint64_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<uint64_t(uint64_t)> find = [&](uint64_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::vector<Element> all(n);
    for (uint64_t i = 0; i < n; ++i) all[i] = D.element(i);
    std::vector<Element> img(r);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == r) {
            for (uint64_t k = 0; k < n; ++k) {
                Element y = D.zero();
                for (size_t j = 0; j < r; ++j) y = D.add(y, D.scale(img[j], all[k][j]));
                uint64_t a = find(k), b = find(D.index(y));
                if (a != b) parent[a] = b;
            }
            return;
        }
        for (const auto& x : all) {
            if (D.order_of(x) != D.modulus(i) || D.norm_num(x) != D.norm_num(unit[i])) continue;
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j) ok = D.pair_num(x, img[j]) == D.pair_num(unit[i], unit[j]);
            if (!ok) continue;
            img[i] = x;
            rec(i + 1);
        }
    };
    rec(0);
    std::map<uint64_t, std::vector<uint64_t>> orb;
    for (uint64_t k = 0; k < n; ++k) orb[find(k)].push_back(k);
    std::vector<std::vector<uint64_t>> out;
    for (auto& [root, v] : orb) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

bool pole_bound_check(const std::map<uint64_t, QExp>& fc, uint64_t N) {
    for (uint64_t c : divisors(N)) {
        auto it = fc.find(c);
        if (it == fc.end()) fail(ErrorCode::invalid_input, "pole_bound_check: missing expansion at 1/" + std::to_string(c));
        auto v = it->second.valuation();
        if (v && *v < frac(-1, static_cast<long>(N / c))) return false;
    }
    return true;
}

bool valence_bound(int64_t k, uint64_t N) {
    if (k >= 0) fail(ErrorCode::invalid_input, "valence_bound: weight must be negative");
    if (!is_squarefree(N)) fail(ErrorCode::invalid_input, "valence_bound: level must be squarefree");
    uint64_t prod = 1;
    const auto ps = prime_factors(N);
    for (uint64_t p : ps) prod *= p + 1;
    return prod * static_cast<uint64_t>(-k) <= (uint64_t(12) << ps.size());
}

std::vector<uint64_t> admissible_levels(int64_t k) {
    std::vector<uint64_t> out;
    // the index exceeds N, so N < 12 * 2^omega <= 96 for any bounded case
    for (uint64_t N = 1; N <= 200; ++N)
        if (is_squarefree(N) && valence_bound(k, N)) out.push_back(N);
    return out;
}

std::map<std::pair<int64_t, int>, std::optional<uint64_t>> table2() {
    std::map<std::pair<int64_t, int>, std::optional<uint64_t>> t;
    for (int64_t k = -1; k >= -12; --k) {
        for (int w = 0; w < 4; ++w) t[{k, w}] = std::nullopt;
        for (uint64_t N : admissible_levels(k)) {
            int w = static_cast<int>(prime_factors(N).size());
            if (w < 4) t[{k, w}] = N;
        }
    }
    return t;
}

std::string vvform_report(const VVForm& F) {
    const DiscForm& D = F.form();
    const Classes C = element_classes(D);
    std::map<std::pair<uint32_t, uint32_t>, uint64_t> groups;
    for (uint64_t i = 0; i < D.size(); ++i) ++groups[{C.of[i], F.slots()[i]}];
    std::ostringstream os;
    for (const auto& [key, cnt] : groups) {
        const auto& k = C.keys[key.first];
        const QExp& f = F.forms()[key.second];
        QExp pp;
        for (const auto& [x, c] : f.terms())
            if (x < 0) pp.add_term(x, c);
        os << "order " << k.order << " norm " << rational_str(frac(k.norm, static_cast<long>(D.level())))
           << " count " << cnt << " principal " << (pp.is_zero() ? std::string("0") : pp.str()) << " constant "
           << f.coeff(0).str() << "\n";
    }
    return os.str();
}

}  // namespace refl
