#include "refl/discforms.hpp"

#include "refl/error.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

namespace refl {

namespace {

bool is_prime(uint64_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int64_t legendre(int64_t a, uint64_t p) { return kronecker(a, static_cast<int64_t>(p)); }

// smallest a > 0 with (2a/p) = s
int64_t generator_value(uint64_t p, int s) {
    for (int64_t a = 1; a < static_cast<int64_t>(p); ++a)
        if (legendre(2 * a, p) == s) return a;
    fail(ErrorCode::internal, "no generator value");
}

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

JordanSymbol::JordanSymbol(std::vector<JordanComponent> comps) : comps_(std::move(comps)) {
    std::sort(comps_.begin(), comps_.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
    for (size_t i = 0; i < comps_.size(); ++i) {
        const auto& c = comps_[i];
        if (!is_prime(c.p)) fail(ErrorCode::invalid_input, "Jordan component at non-prime " + std::to_string(c.p));
        if (c.rank < 1) fail(ErrorCode::invalid_input, "Jordan component of rank < 1");
        if (c.sign != 1 && c.sign != -1) fail(ErrorCode::invalid_input, "Jordan sign must be +1 or -1");
        if (c.p == 2 && c.rank % 2) fail(ErrorCode::invalid_input, "2-adic component must have even rank");
        if (i && comps_[i - 1].p == c.p) fail(ErrorCode::invalid_input, "repeated prime in Jordan symbol");
    }
}

JordanSymbol JordanSymbol::parse(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    std::vector<JordanComponent> comps;
    static const std::regex odd(R"(([0-9]+)\^([+-])([0-9]+))");
    static const std::regex even(R"(2_II\^([+-])([0-9]+))");
    bool any = false;
    while (in >> tok) {
        any = true;
        std::smatch m;
        if (tok == "1") continue;
        if (std::regex_match(tok, m, even)) {
            comps.push_back({2, std::stoi(m[2]), m[1] == "+" ? 1 : -1});
        } else if (std::regex_match(tok, m, odd)) {
            uint64_t p = std::stoull(m[1]);
            if (p == 2) fail(ErrorCode::invalid_input, "2-adic component must be written 2_II^..: " + tok);
            comps.push_back({p, std::stoi(m[3]), m[2] == "+" ? 1 : -1});
        } else {
            fail(ErrorCode::invalid_input, "bad Jordan component '" + tok + "'");
        }
    }
    (void)any;
    return JordanSymbol(std::move(comps));
}

std::string JordanSymbol::str() const {
    if (comps_.empty()) return "1";
    std::string out;
    for (const auto& c : comps_) {
        if (!out.empty()) out += ' ';
        out += std::to_string(c.p) + (c.p == 2 ? "_II" : "") + "^" + (c.sign > 0 ? "+" : "-") + std::to_string(c.rank);
    }
    return out;
}

const JordanComponent* JordanSymbol::find(uint64_t p) const {
    for (const auto& c : comps_)
        if (c.p == p) return &c;
    return nullptr;
}

uint64_t JordanSymbol::level() const {
    uint64_t n = 1;
    for (const auto& c : comps_) n *= c.p;
    return n;
}

uint64_t JordanSymbol::order() const {
    uint64_t n = 1;
    for (const auto& c : comps_)
        for (int i = 0; i < c.rank; ++i) n *= c.p;
    return n;
}

int component_signature(const JordanComponent& c) {
    int k = c.sign < 0 ? 1 : 0;
    if (c.p == 2) return 4 * k;
    int64_t s = -static_cast<int64_t>(c.rank) * static_cast<int64_t>(c.p - 1) + 4 * k;
    return static_cast<int>(mod_floor(s, 8));
}

int JordanSymbol::signature() const {
    int s = 0;
    for (const auto& c : comps_) s += component_signature(c);
    return s % 8;
}

LatticeSpec LatticeSpec::parse(const std::string& text) {
    static const std::regex re(R"(\s*II_\{([0-9]+),2\}(\((.*)\))?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) fail(ErrorCode::invalid_input, "bad lattice '" + text + "'");
    LatticeSpec L;
    L.n = std::stoi(m[1]);
    L.disc = m[3].matched ? JordanSymbol::parse(m[3]) : JordanSymbol();
    if (m[3].matched && L.disc.trivial()) fail(ErrorCode::invalid_input, "empty discriminant in '" + text + "'");
    return L;
}

std::string LatticeSpec::str() const {
    std::string out = "II_{" + std::to_string(n) + ",2}";
    if (!disc.trivial()) out += "(" + disc.str() + ")";
    return out;
}

uint64_t count_component(const JordanComponent& c, int64_t j) {
    const int64_t p = static_cast<int64_t>(c.p);
    j = mod_floor(j, p);
    const int n = c.rank;
    const int64_t eps = c.sign;
    int64_t r;
    if (c.p == 2) {
        int64_t a = ipow(2, n - 1), b = ipow(2, (n - 2) / 2);
        r = j ? a - eps * b : a + eps * b;
    } else if (n % 2 == 0) {
        int64_t t = eps * ipow(legendre(-1, c.p), n / 2);
        r = j ? ipow(p, n - 1) - t * ipow(p, (n - 2) / 2) : ipow(p, n - 1) + t * (ipow(p, n / 2) - ipow(p, (n - 2) / 2));
    } else {
        r = j ? ipow(p, n - 1) + eps * ipow(legendre(-1, c.p), (n - 1) / 2) * legendre(2, c.p) * legendre(j, c.p) * ipow(p, (n - 1) / 2)
              : ipow(p, n - 1);
    }
    return static_cast<uint64_t>(r);
}

int forced_sign(int n, const JordanSymbol& D, uint64_t p) {
    const JordanComponent* c = D.find(p);
    if (!c) return 0;
    int64_t m1 = legendre(-1, p);
    if (c->rank == 2) return static_cast<int>(m1);
    if (c->rank == n) {
        uint64_t rest = D.order();
        for (int i = 0; i < c->rank; ++i) rest /= p;
        return static_cast<int>(kronecker(static_cast<int64_t>(rest), static_cast<int64_t>(p)) * m1);
    }
    return 0;
}

bool splitting_constraints(int n, const JordanSymbol& D) {
    for (const auto& c : D.components()) {
        if (c.rank < 2 || c.rank > n) return false;
        int f = forced_sign(n, D, c.p);
        if (f && f != c.sign) return false;
    }
    return true;
}

DiscForm::DiscForm(JordanSymbol symbol) : symbol_(std::move(symbol)) {
    for (const auto& c : symbol_.components()) {
        Block b{c.p, moduli_.size(), static_cast<size_t>(c.rank), {}, {}};
        if (c.p == 2) {
            for (int i = 0; i + 2 < c.rank; i += 2) b.planes.push_back('u');
            b.planes.push_back(c.sign > 0 ? 'u' : 'v');
        } else {
            int64_t ap = generator_value(c.p, 1);
            for (int i = 0; i + 1 < c.rank; ++i) b.diag.push_back(ap);
            b.diag.push_back(generator_value(c.p, c.sign));
        }
        for (int i = 0; i < c.rank; ++i) moduli_.push_back(static_cast<uint32_t>(c.p));
        blocks_.push_back(std::move(b));
        level_ *= c.p;
    }
    size_ = symbol_.order();
}

Element DiscForm::element(uint64_t index) const {
    if (index >= size_) fail(ErrorCode::invalid_input, "element index out of range");
    Element x(rank());
    for (size_t i = rank(); i-- > 0;) {
        x[i] = static_cast<uint32_t>(index % moduli_[i]);
        index /= moduli_[i];
    }
    return x;
}

uint64_t DiscForm::index(const Element& x) const {
    uint64_t idx = 0;
    for (size_t i = 0; i < rank(); ++i) idx = idx * moduli_[i] + x[i];
    return idx;
}

void DiscForm::for_each(const std::function<void(const Element&)>& f) const {
    Element x = zero();
    for (uint64_t k = 0; k < size_; ++k) {
        f(x);
        for (size_t i = rank(); i-- > 0;) {
            if (++x[i] < moduli_[i]) break;
            x[i] = 0;
        }
    }
}

Element DiscForm::add(const Element& a, const Element& b) const {
    Element r(rank());
    for (size_t i = 0; i < rank(); ++i) r[i] = (a[i] + b[i]) % moduli_[i];
    return r;
}

Element DiscForm::neg(const Element& a) const {
    Element r(rank());
    for (size_t i = 0; i < rank(); ++i) r[i] = (moduli_[i] - a[i]) % moduli_[i];
    return r;
}

Element DiscForm::scale(const Element& a, int64_t k) const {
    Element r(rank());
    for (size_t i = 0; i < rank(); ++i) r[i] = static_cast<uint32_t>(mod_floor(k * static_cast<int64_t>(a[i]), moduli_[i]));
    return r;
}

int64_t DiscForm::norm_num(const Element& x) const {
    int64_t total = 0;
    const int64_t N = static_cast<int64_t>(level_);
    for (const auto& b : blocks_) {
        const int64_t p = static_cast<int64_t>(b.p);
        int64_t q = 0;
        if (b.p == 2) {
            for (size_t k = 0; k < b.planes.size(); ++k) {
                int64_t u = x[b.offset + 2 * k], v = x[b.offset + 2 * k + 1];
                q += b.planes[k] == 'u' ? u * v : u * u + u * v + v * v;
            }
        } else {
            for (size_t i = 0; i < b.dim; ++i) {
                int64_t u = x[b.offset + i];
                q += b.diag[i] * u * u;
            }
        }
        total += (q % p) * (N / p);
    }
    return total % N;
}

Rational DiscForm::norm(const Element& x) const {
    Rational q(norm_num(x), static_cast<long>(level_));
    q.canonicalize();
    return q;
}

int64_t DiscForm::pair_num(const Element& a, const Element& c) const {
    int64_t total = 0;
    const int64_t N = static_cast<int64_t>(level_);
    for (const auto& b : blocks_) {
        const int64_t p = static_cast<int64_t>(b.p);
        int64_t s = 0;
        if (b.p == 2) {
            for (size_t k = 0; k < b.planes.size(); ++k) {
                size_t o = b.offset + 2 * k;
                s += static_cast<int64_t>(a[o]) * c[o + 1] + static_cast<int64_t>(a[o + 1]) * c[o];
            }
        } else {
            for (size_t i = 0; i < b.dim; ++i) s += 2 * b.diag[i] * a[b.offset + i] * c[b.offset + i];
        }
        total += (s % p) * (N / p);
    }
    return total % N;
}

uint64_t DiscForm::order_of(const Element& x) const {
    uint64_t d = 1;
    for (const auto& b : blocks_)
        for (size_t i = 0; i < b.dim; ++i)
            if (x[b.offset + i]) {
                d *= b.p;
                break;
            }
    return d;
}

Element DiscForm::project(const Element& x, uint64_t d) const {
    Element r = x;
    for (const auto& b : blocks_)
        if (d % b.p)
            for (size_t i = 0; i < b.dim; ++i) r[b.offset + i] = 0;
    return r;
}

bool DiscForm::in_torsion(const Element& x, uint64_t c) const { return c % order_of(x) == 0; }

bool DiscForm::corresponds_to_roots(const Element& x) const {
    uint64_t k = order_of(x);
    if (level_ % k) return false;
    // norm must be 1/k mod 1
    int64_t want = static_cast<int64_t>(level_ / k) % static_cast<int64_t>(level_);
    return norm_num(x) == want;
}

uint64_t DiscForm::count_norm(uint64_t c, int64_t j) const {
    if (c == 0 || level_ % c) fail(ErrorCode::invalid_input, "count_norm: c does not divide the level");
    uint64_t r = 1;
    for (const auto& comp : symbol_.components()) {
        const uint64_t p = comp.p;
        if (c % p) continue;
        int64_t cp = static_cast<int64_t>(c / p);
        int64_t k = mod_floor(j * inverse_mod(cp, static_cast<int64_t>(p)), static_cast<int64_t>(p));
        r *= count_component(comp, k);
    }
    return r;
}

uint64_t DiscForm::count_order_norm(uint64_t d, int64_t j) const {
    if (d == 0 || level_ % d) fail(ErrorCode::invalid_input, "count_order_norm: d does not divide the level");
    uint64_t r = 1;
    for (const auto& comp : symbol_.components()) {
        const uint64_t p = comp.p;
        if (d % p) continue;
        int64_t dp = static_cast<int64_t>(d / p);
        int64_t k = mod_floor(j * inverse_mod(dp, static_cast<int64_t>(p)), static_cast<int64_t>(p));
        r *= count_component(comp, k) - (k == 0 ? 1 : 0);
    }
    return r;
}

std::vector<uint32_t> DiscForm::norm_table() const {
    std::vector<uint32_t> out;
    out.reserve(size_);
    for_each([&](const Element& x) { out.push_back(static_cast<uint32_t>(norm_num(x))); });
    return out;
}

CycNum DiscForm::gauss_sum() const {
    std::vector<Integer> cnt(level_, Integer(0));
    for_each([&](const Element& x) { cnt[norm_num(x)] += 1; });
    return CycNum::from_powers(level_, cnt);
}

std::vector<Element> subgroup_closure(const DiscForm& D, const std::vector<Element>& gens) {
    std::set<uint64_t> seen{D.index(D.zero())};
    std::vector<Element> elems{D.zero()};
    for (size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            Element y = D.add(elems[i], g);
            if (seen.insert(D.index(y)).second) elems.push_back(y);
        }
    return elems;
}

bool is_isotropic_subgroup(const DiscForm& D, const std::vector<Element>& elems) {
    std::set<uint64_t> idx;
    for (const auto& x : elems) idx.insert(D.index(x));
    if (!idx.count(D.index(D.zero()))) return false;
    for (const auto& x : elems) {
        if (D.norm_num(x) != 0) return false;
        for (const auto& y : elems)
            if (!idx.count(D.index(D.add(x, y)))) return false;
    }
    return true;
}

std::vector<std::vector<uint64_t>> isotropic_subgroups(const DiscForm& D, size_t limit) {
    std::vector<Element> iso;
    D.for_each([&](const Element& x) {
        if (D.norm_num(x) == 0 && D.order_of(x) > 1) iso.push_back(x);
    });
    std::set<std::vector<uint64_t>> found;
    std::vector<std::vector<Element>> queue{{D.zero()}};
    found.insert({D.index(D.zero())});
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        const auto S = queue[qi];
        std::set<uint64_t> idx;
        for (const auto& s : S) idx.insert(D.index(s));
        for (const auto& x : iso) {
            if (idx.count(D.index(x))) continue;
            bool orth = true;
            for (const auto& s : S)
                if (D.pair_num(x, s)) {
                    orth = false;
                    break;
                }
            if (!orth) continue;
            std::vector<Element> gens = S;
            gens.push_back(x);
            auto T = subgroup_closure(D, gens);
            std::vector<uint64_t> key;
            for (const auto& t : T) key.push_back(D.index(t));
            std::sort(key.begin(), key.end());
            if (found.insert(key).second) {
                if (found.size() > limit) fail(ErrorCode::invalid_input, "too many isotropic subgroups");
                queue.push_back(std::move(T));
            }
        }
    }
    return {found.begin(), found.end()};
}

namespace {

using Vec = std::vector<int64_t>;

// row reduce over F_p; returns the pivot rows
std::vector<Vec> row_basis(std::vector<Vec> rows, int64_t p) {
    std::vector<Vec> out;
    if (rows.empty()) return out;
    size_t n = rows[0].size();
    size_t r = 0;
    for (size_t col = 0; col < n && r < rows.size(); ++col) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][col] % p == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        int64_t inv = inverse_mod(rows[r][col], p);
        for (auto& v : rows[r]) v = mod_floor(v * inv, p);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] % p == 0) continue;
            int64_t f = rows[i][col];
            for (size_t k = 0; k < n; ++k) rows[i][k] = mod_floor(rows[i][k] - f * rows[r][k], p);
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

// solutions x of A x = 0 over F_p (A given as rows)
std::vector<Vec> nullspace(const std::vector<Vec>& A, size_t n, int64_t p) {
    auto R = row_basis(A, p);
    std::vector<int> pivot_of(n, -1);
    for (size_t i = 0; i < R.size(); ++i)
        for (size_t c = 0; c < n; ++c)
            if (R[i][c]) {
                pivot_of[c] = static_cast<int>(i);
                break;
            }
    std::vector<bool> is_pivot(n, false);
    for (size_t i = 0; i < R.size(); ++i)
        for (size_t c = 0; c < n; ++c)
            if (R[i][c]) {
                is_pivot[c] = true;
                break;
            }
    std::vector<Vec> out;
    for (size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec x(n, 0);
        x[f] = 1;
        for (size_t i = 0; i < R.size(); ++i) {
            size_t c = 0;
            while (!R[i][c]) ++c;
            x[c] = mod_floor(-R[i][f], p);
        }
        out.push_back(x);
    }
    return out;
}

struct LocalForm {
    const DiscForm* D;
    const DiscForm::Block* b;
    int64_t p;

    Element embed(const Vec& v) const {
        Element x = D->zero();
        for (size_t i = 0; i < b->dim; ++i) x[b->offset + i] = static_cast<uint32_t>(mod_floor(v[i], p));
        return x;
    }
    int64_t q(const Vec& v) const { return D->norm_num(embed(v)) / static_cast<int64_t>(D->level() / b->p); }
    int64_t pair(const Vec& v, const Vec& w) const {
        return D->pair_num(embed(v), embed(w)) / static_cast<int64_t>(D->level() / b->p);
    }
    Vec combo(const std::vector<Vec>& basis, const Vec& coef) const {
        Vec v(b->dim, 0);
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t k = 0; k < b->dim; ++k) v[k] = mod_floor(v[k] + coef[i] * basis[i][k], p);
        return v;
    }
    // first combination of basis with q = target and not in the zero vector
    bool search(const std::vector<Vec>& basis, const std::function<bool(const Vec&)>& ok, Vec& out) const {
        size_t d = basis.size();
        Vec coef(d, 0);
        while (true) {
            size_t i = d;
            while (i-- > 0) {
                if (++coef[i] < p) break;
                coef[i] = 0;
            }
            if (i == static_cast<size_t>(-1)) return false;
            Vec v = combo(basis, coef);
            if (ok(v)) {
                out = v;
                return true;
            }
        }
    }
    std::vector<Vec> orth_within(const std::vector<Vec>& basis, const std::vector<Vec>& against) const {
        std::vector<Vec> A;
        for (const auto& w : against) {
            Vec row;
            for (const auto& v : basis) row.push_back(pair(v, w));
            A.push_back(row);
        }
        auto ns = nullspace(A, basis.size(), p);
        std::vector<Vec> out;
        for (const auto& c : ns) out.push_back(combo(basis, c));
        return out;
    }
};

}  // namespace

Quotient::Quotient(const DiscForm& D, const std::vector<Element>& generators) : parent_(&D), gens_(generators) {
    elements_ = subgroup_closure(D, generators);
    if (!is_isotropic_subgroup(D, elements_)) fail(ErrorCode::invalid_input, "quotient: subgroup is not isotropic");
    std::vector<JordanComponent> comps;
    for (const auto& b : D.blocks()) {
        const int64_t p = static_cast<int64_t>(b.p);
        LocalForm L{&D, &b, p};
        std::vector<Vec> hrows;
        for (const auto& g : elements_) {
            Vec v(b.dim);
            for (size_t i = 0; i < b.dim; ++i) v[i] = g[b.offset + i];
            hrows.push_back(v);
        }
        auto hb = row_basis(hrows, p);
        std::vector<Vec> full;
        for (size_t i = 0; i < b.dim; ++i) {
            Vec e(b.dim, 0);
            e[i] = 1;
            full.push_back(e);
        }
        const JordanComponent& jc = *D.symbol().find(b.p);
        if (hb.empty()) {
            comps.push_back(jc);
            for (size_t i = 0; i < b.dim; ++i) {
                Element e = D.zero();
                if (b.p == 2) {
                    e[b.offset + (i ^ 1)] = 1;
                    coords_.push_back({e, 1, b.p});
                } else {
                    e[b.offset + i] = 1;
                    coords_.push_back({e, inverse_mod(2 * b.diag[i], p), b.p});
                }
            }
            continue;
        }
        auto perp = L.orth_within(full, hb);
        // complement of H inside H^perp
        std::vector<Vec> W, span = hb;
        for (const auto& v : perp) {
            auto t = span;
            t.push_back(v);
            if (row_basis(t, p).size() > span.size()) {
                span.push_back(v);
                W.push_back(v);
            }
        }
        if (W.empty()) continue;
        int n = static_cast<int>(W.size());
        std::vector<Vec> chosen;
        if (b.p == 2) {
            std::vector<char> planes;
            std::vector<Vec> cur = W;
            while (!cur.empty()) {
                Vec x, y;
                bool hyper = L.search(cur, [&](const Vec& v) { return L.q(v) == 0; }, x);
                if (hyper) {
                    L.search(cur, [&](const Vec& v) { return L.pair(v, x) == 1; }, y);
                    if (L.q(y)) y = L.combo({x, y}, {1, 1});
                    planes.push_back('u');
                } else {
                    if (cur.size() != 2) fail(ErrorCode::internal, "quotient: anisotropic part of dimension > 2");
                    x = cur[0];
                    y = cur[1];
                    planes.push_back('v');
                }
                chosen.push_back(x);
                chosen.push_back(y);
                cur = L.orth_within(cur, {x, y});
            }
            int sign = planes.back() == 'v' ? -1 : 1;
            comps.push_back({2, n, sign});
            for (size_t k = 0; k < planes.size(); ++k) {
                coords_.push_back({L.embed(chosen[2 * k + 1]), 1, b.p});
                coords_.push_back({L.embed(chosen[2 * k]), 1, b.p});
            }
        } else {
            int64_t ap = generator_value(b.p, 1);
            std::vector<Vec> cur = W;
            while (cur.size() > 1) {
                Vec w;
                L.search(cur, [&](const Vec& v) { return L.q(v) == ap; }, w);
                chosen.push_back(w);
                cur = L.orth_within(cur, {w});
            }
            Vec last = cur[0];
            int64_t bq = L.q(last);
            int sign = static_cast<int>(legendre(2 * bq, b.p));
            int64_t target = generator_value(b.p, sign);
            int64_t s = 1;
            while (mod_floor(s * s * bq - target, p)) ++s;
            for (auto& v : last) v = mod_floor(v * s, p);
            chosen.push_back(last);
            comps.push_back({b.p, n, sign});
            for (size_t i = 0; i < chosen.size(); ++i) {
                int64_t a = i + 1 < chosen.size() ? ap : target;
                coords_.push_back({L.embed(chosen[i]), inverse_mod(2 * a, p), b.p});
            }
        }
    }
    form_ = DiscForm(JordanSymbol(comps));
}

bool Quotient::in_perp(const Element& x) const {
    for (const auto& g : gens_)
        if (parent_->pair_num(x, g)) return false;
    return true;
}

Element Quotient::project(const Element& x) const {
    if (!in_perp(x)) fail(ErrorCode::invalid_input, "quotient: element not in H^perp");
    Element out(coords_.size());
    for (size_t i = 0; i < coords_.size(); ++i) {
        const auto& c = coords_[i];
        int64_t k = parent_->pair_num(x, c.dual) / static_cast<int64_t>(parent_->level() / c.p);
        out[i] = static_cast<uint32_t>(mod_floor(k * c.factor, static_cast<int64_t>(c.p)));
    }
    return out;
}

std::vector<JordanSymbol> jordan_symbols(uint64_t max_order, const std::vector<uint64_t>& primes) {
    std::vector<std::pair<std::vector<JordanComponent>, uint64_t>> acc{{{}, 1}};
    auto ps = primes;
    std::sort(ps.begin(), ps.end());
    for (uint64_t p : ps) {
        const size_t n = acc.size();
        for (size_t i = 0; i < n; ++i) {
            uint64_t s = acc[i].second;
            for (int r = 1; s <= max_order / p; ++r) {
                s *= p;
                if (p == 2 && r % 2) continue;
                for (int e : {1, -1}) {
                    auto c = acc[i].first;
                    c.push_back({p, r, e});
                    acc.emplace_back(std::move(c), s);
                }
            }
        }
    }
    std::vector<JordanSymbol> out;
    for (auto& [c, s] : acc) out.emplace_back(c);
    std::sort(out.begin(), out.end(), [](const JordanSymbol& a, const JordanSymbol& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.str() < b.str();
    });
    return out;
}

}  // namespace refl
