#include "refl/obstruct.hpp"

#include "refl/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace refl {

namespace {

uint64_t part_size(const DiscForm& D, uint64_t g) {
    uint64_t s = 1;
    for (const auto& c : D.symbol().components())
        if (g % c.p == 0)
            for (int i = 0; i < c.rank; ++i) s *= c.p;
    return s;
}

Rational rpow(uint64_t b, int64_t e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), Integer(static_cast<unsigned long>(b)).get_mpz_t(), static_cast<unsigned long>(std::llabs(e)));
    Rational q(r);
    return e >= 0 ? q : Rational(1) / q;
}

std::string elem_str(const Element& x) {
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
}

uint64_t common_order(const std::vector<const CycNum*>& xs) {
    uint64_t L = 1;
    for (const CycNum* x : xs) L = lcm_u(L, x->order());
    return L;
}

Integer to_integer(Rational q) {
    q.canonicalize();
    if (q.get_den() != 1) fail(ErrorCode::internal, "to_integer: not integral");
    return q.get_num();
}

}  // namespace

Candidate Candidate::make(int n, const JordanSymbol& s) {
    Candidate c;
    c.n = n;
    c.D = std::make_shared<const DiscForm>(s);
    return c;
}

std::string Candidate::str() const {
    std::string s = "II_{" + std::to_string(n) + ",2}";
    if (!D->symbol().trivial()) s += "(" + D->symbol().str() + ")";
    return s;
}

bool Candidate::valid() const {
    if (n < 4 || n % 2) return false;
    if (mod_floor(D->signature() - (n - 2), 8) != 0) return false;
    return splitting_constraints(n, D->symbol());
}

std::string cvector_str(const CVector& c) {
    std::string s;
    for (const auto& [d, v] : c) s += (s.empty() ? "" : ", ") + c_name(d) + "=" + std::to_string(v);
    return s;
}

bool symmetric_admissible(const DiscForm& D, const CVector& c) {
    for (const auto& [d, v] : c)
        if (v != 0 && static_cast<uint64_t>(v) != D.count_norm(d, 1)) return false;
    return true;
}

bool LinearConstraint::trivial() const {
    if (!constant.is_zero()) return false;
    for (const auto& [u, a] : coeffs)
        if (!a.is_zero()) return false;
    return true;
}

CycNum LinearConstraint::evaluate(const std::map<std::string, CycNum>& values) const {
    CycNum s = constant;
    for (const auto& [u, a] : coeffs) {
        if (a.is_zero()) continue;
        auto it = values.find(u);
        if (it == values.end()) fail(ErrorCode::invalid_input, "evaluate: no value for " + u);
        s += a * it->second;
    }
    return s;
}

LinearConstraint LinearConstraint::scaled(const CycNum& s) const {
    LinearConstraint r = *this;
    for (auto& [u, a] : r.coeffs) a *= s;
    r.constant *= s;
    return r;
}

std::string LinearConstraint::str() const {
    std::string s;
    for (const auto& [u, a] : coeffs) {
        if (a.is_zero()) continue;
        s += (s.empty() ? "" : " + ") + ("(" + a.str() + ") " + u);
    }
    if (!constant.is_zero() || s.empty()) s += (s.empty() ? "" : " + ") + ("(" + constant.str() + ")");
    s += " = 0";
    if (!origin.empty()) s += "  [" + origin + "]";
    return s;
}

std::string c_name(uint64_t d) { return "c_" + std::to_string(d); }

std::map<std::string, CycNum> c_values(const CVector& c) {
    std::map<std::string, CycNum> out;
    for (const auto& [d, v] : c) out[c_name(d)] = CycNum(static_cast<long>(v));
    return out;
}

std::vector<Box> condition_A(const Candidate& cand) {
    std::vector<Box> out;
    for (uint64_t d : divisors(cand.level()))
        out.push_back({d, 0, static_cast<int64_t>(cand.D->count_norm(d, 1)), d > 2});
    return out;
}

LinearConstraint condition_B_for(const Candidate& cand, const CuspBasisElement& g) {
    const DiscForm& D = *cand.D;
    const uint64_t N = D.level();
    LinearConstraint L;
    L.origin = "B " + g.name();
    for (uint64_t d : divisors(N)) {
        const uint64_t dp = N / d;
        const uint64_t nd = D.count_norm(dp, 1);
        // c_{d'} = 0 is forced by the box
        if (nd == 0) continue;
        CycNum a = xi_c(D, d).inv() * CycNum::sqrt_pos(part_size(D, dp)) * CycNum(Rational(1, static_cast<long>(nd))) *
                   cusp_coefficient(g, N, d);
        L.coeffs[c_name(dp)] += a;
    }
    return L;
}

DirichletCharacter character_of(const DiscForm& D) {
    std::set<uint64_t> ps;
    for (const auto& c : D.symbol().components())
        if (c.p != 2 && c.rank % 2) ps.insert(c.p);
    return DirichletCharacter(D.level(), ps);
}

std::vector<LinearConstraint> condition_B(const Candidate& cand, const NewformDB& db) {
    const auto chi = character_of(*cand.D);
    std::vector<LinearConstraint> out;
    for (const auto& g : cusp_basis(db, cand.level(), cand.weight(), chi)) {
        auto L = condition_B_for(cand, g);
        if (!L.trivial()) out.push_back(std::move(L));
    }
    return out;
}

EisensteinData eisenstein_data(const Candidate& cand) {
    const DiscForm& D = *cand.D;
    const uint64_t N = D.level();
    EisensteinData E;
    E.k = cand.weight();
    E.chi = character_of(D);
    E.m = E.chi.conductor();
    E.psi = E.chi.primitive();
    E.bernoulli = bernoulli_generalized(static_cast<unsigned>(E.k), E.psi);
    E.lratio = l_ratio(static_cast<unsigned>(E.k), E.psi, N);
    if (E.bernoulli == 0) fail(ErrorCode::internal, "eisenstein_data: vanishing Bernoulli number");

    auto eps_of = [&](uint64_t c) {
        const uint64_t mc = gcd_u(E.m, c);
        int s = 1;
        for (uint64_t p : prime_factors(c)) {
            const JordanComponent& J = *D.symbol().find(p);
            const int64_t ip = static_cast<int64_t>(p);
            const int m1 = kronecker(-1, ip);
            if (mc % p) {
                s *= J.sign * (J.rank / 2 % 2 && m1 < 0 ? -1 : 1);
            } else {
                s *= J.sign * kronecker(static_cast<int64_t>(mc / p), ip) * ((J.rank + 1) / 2 % 2 && m1 < 0 ? -1 : 1);
            }
        }
        return s;
    };
    for (uint64_t c : divisors(N)) E.epsilon_c[c] = CycNum(static_cast<long>(eps_of(c)));
    E.epsilon = E.epsilon_c[N];

    const Rational pre = Rational(E.k, E.k - 2) / E.bernoulli * E.lratio * rpow(E.m, E.k) / rpow(N, E.k);
    const CycNum inv_root = CycNum::sqrt_pos(E.m * D.size()).inv();
    LinearConstraint L;
    L.origin = "C";
    for (uint64_t c : divisors(N)) {
        const uint64_t cp = N / c, mc = gcd_u(E.m, c);
        const auto psi_c = E.psi.component(mc), psi_cp = E.psi.component(E.m / mc);
        const int64_t bc = prime_factors(c / mc).size() % 2 ? -1 : 1;
        for (uint64_t d : divisors(cp)) {
            const uint64_t arg = N / c * N / (d * mc);
            const Rational r2 = Rational(psi_c.value(2)) / Rational(E.psi.value(2));
            CycNum e = CycNum(static_cast<long>(psi_c.value(static_cast<int64_t>(arg)) *
                                                psi_cp.value(-static_cast<int64_t>(c)) * bc)) *
                       CycNum(r2) * E.epsilon_c[c] / E.epsilon;
            E.epsilon_cd[{c, d}] = e;
            const Rational w = rpow(N, E.k) / (rpow(c, E.k) * rpow(d, E.k - 1)) * pre;
            L.coeffs[c_name(d)] += e * CycNum::sqrt_pos(mc * part_size(D, c)) * inv_root * CycNum(w);
        }
    }
    L.constant = CycNum(-1L);
    E.constraint = std::move(L);
    return E;
}

LinearConstraint condition_C(const Candidate& cand) { return eisenstein_data(cand).constraint; }

bool condition_C_holds(const Candidate& cand, const CVector& c) {
    return condition_C(cand).evaluate(c_values(c)).is_zero();
}

std::vector<CVector> solve(const Candidate& cand, const std::vector<LinearConstraint>& constraints) {
    auto boxes = condition_A(cand);
    const size_t nv = boxes.size();
    std::map<std::string, size_t> var;
    // larger boxes first so that they become pivots
    std::vector<size_t> order(nv);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return boxes[a].hi > boxes[b].hi; });
    for (size_t j = 0; j < nv; ++j) var[c_name(boxes[order[j]].d)] = j;

    std::vector<const CycNum*> all;
    for (const auto& L : constraints) {
        for (const auto& [u, a] : L.coeffs) {
            if (!var.count(u) && !a.is_zero()) fail(ErrorCode::invalid_input, "solve: unknown " + u + " is not a count c_d");
            all.push_back(&a);
        }
        all.push_back(&L.constant);
    }
    const uint64_t Lord = common_order(all);
    std::vector<std::vector<Rational>> rows;
    for (const auto& L : constraints) {
        const size_t dim = basis_exponents(Lord).size();
        std::vector<std::vector<Rational>> block(dim, std::vector<Rational>(nv + 1));
        for (const auto& [u, a] : L.coeffs) {
            if (a.is_zero()) continue;
            auto co = a.coordinates(Lord);
            for (size_t t = 0; t < dim; ++t) block[t][var.at(u)] += co[t];
        }
        auto co = L.constant.coordinates(Lord);
        for (size_t t = 0; t < dim; ++t) block[t][nv] = co[t];
        for (auto& r : block) rows.push_back(std::move(r));
    }

    // reduced row echelon form
    std::vector<int> pivot_of(nv, -1);
    size_t rank = 0;
    for (size_t j = 0; j < nv && rank < rows.size(); ++j) {
        size_t p = rank;
        while (p < rows.size() && rows[p][j] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        const Rational inv = Rational(1) / rows[rank][j];
        for (auto& x : rows[rank]) x *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][j] == 0) continue;
            const Rational f = rows[i][j];
            for (size_t t = 0; t <= nv; ++t) rows[i][t] -= f * rows[rank][t];
        }
        pivot_of[j] = static_cast<int>(rank++);
    }
    for (size_t i = rank; i < rows.size(); ++i)
        if (rows[i][nv] != 0) return {};

    std::vector<size_t> free_vars, pivots;
    for (size_t j = 0; j < nv; ++j) (pivot_of[j] < 0 ? free_vars : pivots).push_back(j);
    double volume = 1;
    for (size_t j : free_vars) {
        const Box& b = boxes[order[j]];
        volume *= static_cast<double>((b.hi - b.lo) / (b.even ? 2 : 1) + 1);
    }
    if (volume > 5e8) fail(ErrorCode::domain, "solve: search space too large for " + cand.str());

    // pivot x = -(const + sum a_f f), scaled to integers: x = -(C + sum A_f f) / den
    struct PivotRow {
        size_t var;
        Integer den, C;
        std::vector<Integer> A;
        Integer acc;
    };
    std::vector<PivotRow> prs;
    for (size_t j : pivots) {
        const auto& r = rows[static_cast<size_t>(pivot_of[j])];
        Integer den = 1;
        for (size_t f : free_vars) den = lcm(den, r[f].get_den());
        den = lcm(den, r[nv].get_den());
        PivotRow pr{j, den, to_integer(r[nv] * den), {}, 0};
        for (size_t f : free_vars) pr.A.push_back(to_integer(r[f] * den));
        prs.push_back(std::move(pr));
    }

    std::vector<CVector> out;
    std::vector<int64_t> val(nv, 0);
    for (size_t f : free_vars) val[f] = boxes[order[f]].lo;
    auto reset_acc = [&] {
        for (auto& pr : prs) {
            pr.acc = pr.C;
            for (size_t i = 0; i < free_vars.size(); ++i) pr.acc += pr.A[i] * val[free_vars[i]];
        }
    };
    reset_acc();
    for (;;) {
        bool ok = true;
        for (auto& pr : prs) {
            Integer x = -pr.acc;
            if (x % pr.den != 0) {
                ok = false;
                break;
            }
            x /= pr.den;
            const Box& b = boxes[order[pr.var]];
            if (x < b.lo || x > b.hi || (b.even && x % 2 != 0)) {
                ok = false;
                break;
            }
            val[pr.var] = x.get_si();
        }
        if (ok) {
            CVector c;
            for (size_t j = 0; j < nv; ++j) c[boxes[order[j]].d] = val[j];
            out.push_back(std::move(c));
        }
        size_t i = 0;
        for (; i < free_vars.size(); ++i) {
            const size_t f = free_vars[i];
            const Box& b = boxes[order[f]];
            const int64_t step = b.even ? 2 : 1;
            if (val[f] + step <= b.hi) {
                val[f] += step;
                for (auto& pr : prs) pr.acc += pr.A[i] * step;
                break;
            }
            for (auto& pr : prs) pr.acc -= pr.A[i] * (val[f] - b.lo);
            val[f] = b.lo;
        }
        if (i == free_vars.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const CVector& a, const CVector& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    return out;
}

std::vector<CVector> solve_ABC(const Candidate& cand, const NewformDB& db) {
    auto cs = condition_B(cand, db);
    cs.push_back(condition_C(cand));
    return solve(cand, cs);
}

std::vector<Gamma1Cusp> gamma1_cusps(uint64_t N) {
    const int64_t n = static_cast<int64_t>(N);
    std::vector<Gamma1Cusp> out;
    std::set<std::pair<int64_t, int64_t>> seen;
    auto key = [&](int64_t a, int64_t c) {
        const int64_t cr = mod_floor(c, n), g = std::gcd(cr, n);
        return std::make_pair(cr, mod_floor(a, g));
    };
    for (int64_t c = 1; c <= n; ++c) {
        const int64_t g = std::gcd(c, n), t = n / g;
        for (int64_t a0 = 0; a0 < g; ++a0) {
            if (std::gcd(a0, g) != 1) continue;
            auto k1 = key(a0, c), k2 = key(-a0, -c);
            if (seen.count(k1) || seen.count(k2)) continue;
            seen.insert(k1);
            int64_t a = a0 == 0 ? g : a0;
            while (std::gcd(a, c) != 1) a += g;
            // d = a^-1 mod c, d = 0 mod t
            int64_t d = 0;
            const int64_t ai = c == 1 ? 0 : inverse_mod(mod_floor(a, c), c);
            for (int64_t j = 0; j < c; ++j)
                if (mod_floor(t * j, c) == mod_floor(ai, c)) {
                    d = t * j;
                    break;
                }
            if (d == 0) d = t * c;
            const int64_t b = (a * d - 1) / c;
            Mat2 M{a, b, c, d};
            if (M.det() != 1) fail(ErrorCode::internal, "gamma1_cusps: bad representative");
            out.push_back({M, static_cast<uint64_t>(t)});
        }
    }
    return out;
}

CycNum Pairing::evaluate(const std::function<CycNum(uint64_t)>& x) const {
    CycNum s;
    for (const auto& [i, w] : weight) s += w * x(i);
    return s;
}

CycNum Pairing::evaluate(const PrincipalPart& P, const DiscForm& D) const {
    return evaluate([&](uint64_t i) {
        auto it = P.find({i, Rational(-1, static_cast<long>(D.order_of(D.element(i))))});
        return it == P.end() ? CycNum() : it->second;
    });
}

LinearConstraint Pairing::constraint(const DiscForm& D) const {
    LinearConstraint L;
    L.origin = origin;
    for (const auto& [i, w] : weight)
        if (!w.is_zero()) L.coeffs["x[" + elem_str(D.element(i)) + "]"] = w;
    return L;
}

bool pairing_character_ok(const DiscForm& D, int n, const Element& gamma, const EtaQuotient& h0) {
    const int64_t N = static_cast<int64_t>(D.level());
    if (N % static_cast<int64_t>(h0.level())) return false;
    Rational y = -D.norm(gamma);
    for (const auto& [delta, r] : h0.exps()) y += Rational(static_cast<long>(delta) * r, 24);
    y.canonicalize();
    if (y.get_den() != 1) return false;
    EtaQuotient h(h0.exps(), D.level());
    if (h.weight2() != n + 2 || !h.modular_gamma1() || !h.is_cusp_form()) return false;
    const uint64_t gi = D.index(gamma);
    for (int64_t j = 1; j <= 3; ++j) {
        const int64_t c = N * j;
        for (int64_t t = 0; t < 4; ++t) {
            const int64_t d = 1 + N * t;
            if (std::gcd(d, c) != 1) continue;
            const int64_t a = c == 1 ? 1 : inverse_mod(mod_floor(d, c), c);
            const int64_t b = (a * d - 1) / c;
            const Mat2 M{a, b, c, d};
            auto row = transform_row(D, gamma, M);
            if (row.size() != 1 || row[0].first != gi) return false;
            if (row[0].second * h.gamma0_factor(M) != CycNum(1L)) return false;
        }
    }
    return true;
}

Pairing gamma1_pairing(const DiscForm& D, int n, const Element& gamma, const EtaQuotient& h0) {
    if (!pairing_character_ok(D, n, gamma, h0))
        fail(ErrorCode::invalid_input, "gamma1_pairing: " + h0.str() + " is not a cusp form of weight " + std::to_string(1 + n / 2) +
                                           " and character conj(chi_gamma)");
    EtaQuotient h(h0.exps(), D.level());
    Pairing P;
    P.origin = "pairing " + elem_str(gamma) + " with " + h0.str();
    std::map<uint64_t, CycNum> w;
    for (const auto& s : gamma1_cusps(D.level())) {
        auto hx = h.expand_at_cusp(s.M, 2);
        const CycNum t(static_cast<long>(s.width));
        for (const auto& [mu, r] : transform_row(D, gamma, s.M)) {
            const Element x = D.element(mu);
            if (!D.corresponds_to_roots(x)) continue;
            const CycNum c = hx.series.coeff(Rational(1, static_cast<long>(D.order_of(x))));
            if (c.is_zero()) continue;
            w[mu] += t * r * hx.prefactor * c;
        }
    }
    const CycNum half(Rational(1, 2));
    std::set<uint64_t> keys;
    for (const auto& [mu, v] : w) {
        keys.insert(mu);
        keys.insert(D.index(D.neg(D.element(mu))));
    }
    for (uint64_t mu : keys) {
        auto i = w.find(mu), j = w.find(D.index(D.neg(D.element(mu))));
        const CycNum s = ((i == w.end() ? CycNum() : i->second) + (j == w.end() ? CycNum() : j->second)) * half;
        if (!s.is_zero()) P.weight[mu] = s;
    }
    return P;
}

Aggregate agg_c(const DiscForm& D, uint64_t d) {
    return {c_name(d), [&D, d](const Element& x) { return D.order_of(x) == d; }};
}

Aggregate agg_a(const DiscForm& D, const Element& gamma, uint64_t d) {
    return {"a[" + elem_str(gamma) + "]^" + std::to_string(d),
            [&D, gamma, d](const Element& x) { return D.order_of(x) == d && D.pair_num(gamma, x) == 0; }};
}

Aggregate agg_N(const DiscForm& D, const Element& gamma, uint64_t e) {
    const uint64_t d = D.order_of(gamma);
    return {"N[" + elem_str(gamma) + "]^{" + std::to_string(d) + "," + std::to_string(e) + "}",
            [&D, gamma, d, e](const Element& x) { return D.order_of(x) == e && D.project(x, d) == gamma; }};
}

Aggregate agg_delta(const DiscForm& D, const Element& gamma) {
    return {"delta[" + elem_str(gamma) + ",M_" + std::to_string(D.order_of(gamma)) + "]",
            [gamma](const Element& x) { return x == gamma; }};
}

std::map<uint64_t, CycNum> aggregate_weight(const DiscForm& D, const std::vector<std::pair<Aggregate, CycNum>>& terms) {
    std::map<uint64_t, CycNum> w;
    D.for_each([&](const Element& x) {
        if (!D.corresponds_to_roots(x)) return;
        CycNum s;
        for (const auto& [a, c] : terms)
            if (a.member(x)) s += c;
        if (!s.is_zero()) w[D.index(x)] = s;
    });
    return w;
}

bool proportional(const std::map<uint64_t, CycNum>& p, const std::map<uint64_t, CycNum>& t) {
    if (p.empty() || t.empty()) return p.empty() && t.empty();
    if (p.size() != t.size()) return false;
    const CycNum s = p.begin()->second / t.begin()->second;
    for (auto i = p.begin(), j = t.begin(); i != p.end(); ++i, ++j)
        if (i->first != j->first || i->second != s * j->second) return false;
    return true;
}

std::string grouped_report(const DiscForm& D, const Element& gamma, const Pairing& P) {
    struct Key {
        uint64_t order;
        int64_t pair;
        bool is_gamma, projects;
        auto operator<=>(const Key&) const = default;
    };
    const uint64_t dg = D.order_of(gamma);
    std::map<Key, std::pair<CycNum, uint64_t>> groups;
    std::map<Key, bool> uniform;
    D.for_each([&](const Element& x) {
        if (!D.corresponds_to_roots(x)) return;
        Key k{D.order_of(x), D.pair_num(gamma, x), x == gamma, D.project(x, dg) == gamma};
        auto it = P.weight.find(D.index(x));
        const CycNum w = it == P.weight.end() ? CycNum() : it->second;
        auto [g, fresh] = groups.try_emplace(k, w, 0);
        g->second.second++;
        if (fresh) uniform[k] = true;
        else if (g->second.first != w) uniform[k] = false;
    });
    std::ostringstream os;
    for (const auto& [k, v] : groups) {
        os << "order " << k.order << " pairing " << k.pair << "/" << D.level() << (k.is_gamma ? " gamma" : "")
           << (k.projects ? " proj" : "") << " size " << v.second << ": " << (uniform[k] ? v.first.str() : "mixed") << "\n";
    }
    return os.str();
}

}  // namespace refl
