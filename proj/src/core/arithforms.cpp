#include "refl/arithforms.hpp"

#include "refl/error.hpp"
#include "refl/weil.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <numbers>
#include <sstream>

namespace refl {

namespace {

using cld = std::complex<long double>;

int64_t as_i(uint64_t x) { return static_cast<int64_t>(x); }

std::string poly_str(const std::vector<Rational>& c) {
    std::string out;
    for (size_t e = c.size(); e-- > 0;) {
        if (sgn(c[e]) == 0) continue;
        bool neg = sgn(c[e]) < 0;
        Rational mag = neg ? Rational(-c[e]) : c[e];
        std::string mono = e == 1 ? "y" : "y^" + std::to_string(e);
        std::string body = e == 0 ? rational_str(mag) : (mag == 1 ? mono : rational_str(mag) + "*" + mono);
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

std::vector<Rational> parse_poly(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) fail(ErrorCode::data_error, "empty polynomial");
    std::vector<Rational> c;
    size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        size_t end = s.find_first_of("+-", pos);
        std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? s.size() : end;
        if (term.empty()) fail(ErrorCode::data_error, "bad polynomial '" + text + "'");
        Rational coef = 1;
        size_t e = 0;
        auto ypos = term.find('y');
        if (ypos == std::string::npos) {
            coef = parse_rational(term);
        } else {
            std::string head = term.substr(0, ypos), tail = term.substr(ypos + 1);
            if (!head.empty()) {
                if (head.back() != '*') fail(ErrorCode::data_error, "bad polynomial term '" + term + "'");
                coef = parse_rational(head.substr(0, head.size() - 1));
            }
            if (tail.empty())
                e = 1;
            else if (tail[0] == '^')
                e = std::stoul(tail.substr(1));
            else
                fail(ErrorCode::data_error, "bad polynomial term '" + term + "'");
        }
        if (c.size() <= e) c.resize(e + 1, Rational(0));
        c[e] += sign * coef;
    }
    return c;
}

std::vector<cld> poly_roots(const std::vector<Rational>& P) {
    const size_t d = P.size() - 1;
    std::vector<long double> a(d + 1);
    for (size_t i = 0; i <= d; ++i) a[i] = P[i].get_d();
    auto eval = [&](cld z) {
        cld v = 0;
        for (size_t i = d + 1; i-- > 0;) v = v * z + a[i];
        return v;
    };
    auto deriv = [&](cld z) {
        cld v = 0;
        for (size_t i = d; i >= 1; --i) v = v * z + static_cast<long double>(i) * a[i];
        return v;
    };
    std::vector<cld> z(d);
    long double R = 1;
    for (size_t i = 0; i < d; ++i) R = std::max(R, 1 + std::abs(a[i]));
    for (size_t i = 0; i < d; ++i) z[i] = std::polar(R * 0.9L, 2 * std::numbers::pi_v<long double> * (i + 0.25L) / d);
    for (int it = 0; it < 2000; ++it) {
        long double moved = 0;
        for (size_t i = 0; i < d; ++i) {
            cld den = 1;
            for (size_t j = 0; j < d; ++j)
                if (j != i) den *= z[i] - z[j];
            cld step = eval(z[i]) / den;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-30L) break;
    }
    for (auto& r : z)
        for (int it = 0; it < 5; ++it) {
            cld dv = deriv(r);
            if (std::abs(dv) == 0) break;
            r -= eval(r) / dv;
        }
    for (auto& r : z)
        if (std::abs(r.imag()) < 1e-15L * (1 + std::abs(r))) r = cld(r.real(), 0);
    std::sort(z.begin(), z.end(), [](cld x, cld y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return z;
}

// n = prod p^e
std::vector<std::pair<uint64_t, unsigned>> factor(uint64_t n) {
    std::vector<std::pair<uint64_t, unsigned>> out;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) n /= p, ++e;
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

CycNum sqrt_pow(uint64_t n, int64_t e) { return CycNum::sqrt_pos(n).pow(e); }

}  // namespace

// ---------------------------------------------------------------- characters

DirichletCharacter::DirichletCharacter(uint64_t modulus, std::set<uint64_t> legendre)
    : modulus_(modulus), legendre_(std::move(legendre)) {
    if (modulus == 0 || !is_squarefree(modulus)) fail(ErrorCode::invalid_input, "character modulus must be squarefree");
    for (uint64_t p : legendre_)
        if (p < 3 || modulus % p || prime_factors(p).size() != 1 || prime_factors(p)[0] != p)
            fail(ErrorCode::invalid_input, "Legendre component at " + std::to_string(p) + " is not an odd prime of the modulus");
}

DirichletCharacter DirichletCharacter::from_discriminant(int64_t D, uint64_t modulus) {
    uint64_t a = static_cast<uint64_t>(std::llabs(D));
    std::set<uint64_t> ps;
    for (uint64_t p : prime_factors(a)) ps.insert(p);
    DirichletCharacter chi(modulus, ps);
    if (chi.discriminant() != D) fail(ErrorCode::invalid_input, "not an odd fundamental discriminant: " + std::to_string(D));
    return chi;
}

DirichletCharacter DirichletCharacter::parse(const std::string& text, uint64_t modulus) {
    std::set<uint64_t> leg, seen;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "none") continue;
        auto colon = tok.find(':');
        if (colon == std::string::npos) fail(ErrorCode::data_error, "bad character component '" + tok + "'");
        uint64_t p = std::stoull(tok.substr(0, colon));
        std::string tag = tok.substr(colon + 1);
        if (tag == "legendre")
            leg.insert(p);
        else if (tag != "trivial")
            fail(ErrorCode::data_error, "unknown character tag '" + tag + "'");
        seen.insert(p);
    }
    auto ps = prime_factors(modulus);
    if (std::set<uint64_t>(ps.begin(), ps.end()) != seen)
        fail(ErrorCode::data_error, "character '" + text + "' does not list the primes of " + std::to_string(modulus));
    return DirichletCharacter(modulus, leg);
}

std::string DirichletCharacter::str() const {
    if (modulus_ == 1) return "none";
    std::string out;
    for (uint64_t p : prime_factors(modulus_)) {
        if (!out.empty()) out += ' ';
        out += std::to_string(p) + (legendre_.count(p) ? ":legendre" : ":trivial");
    }
    return out;
}

uint64_t DirichletCharacter::conductor() const {
    uint64_t m = 1;
    for (uint64_t p : legendre_) m *= p;
    return m;
}

int64_t DirichletCharacter::discriminant() const {
    int64_t D = 1;
    for (uint64_t p : legendre_) D *= p % 4 == 1 ? as_i(p) : -as_i(p);
    return D;
}

int DirichletCharacter::value(int64_t a) const {
    if (std::gcd(a, as_i(modulus_)) != 1) return 0;
    int v = 1;
    for (uint64_t p : legendre_) v *= kronecker(a, as_i(p));
    return v;
}

DirichletCharacter DirichletCharacter::component(uint64_t c) const {
    if (modulus_ % c) fail(ErrorCode::invalid_input, "component: " + std::to_string(c) + " does not divide the modulus");
    std::set<uint64_t> ps;
    for (uint64_t p : legendre_)
        if (c % p == 0) ps.insert(p);
    return DirichletCharacter(c, ps);
}

DirichletCharacter DirichletCharacter::induced(uint64_t modulus) const {
    if (modulus % modulus_) fail(ErrorCode::invalid_input, "induced: modulus is not a multiple");
    return DirichletCharacter(modulus, legendre_);
}

CycNum gauss_sum(const DirichletCharacter& chi) {
    const uint64_t p = chi.modulus();
    if (p == 1) return CycNum(1);
    if (prime_factors(p).size() != 1) fail(ErrorCode::invalid_input, "gauss_sum: modulus must be prime");
    CycNum s;
    for (uint64_t h = 1; h < p; ++h) {
        int v = chi.value(as_i(h));
        if (v) s += CycNum(static_cast<long>(v)) * CycNum::root_of_unity(as_i(h), p);
    }
    return s;
}

// ---------------------------------------------------------------- Bernoulli

Rational bernoulli(unsigned k) {
    std::vector<Rational> B(k + 1);
    B[0] = 1;
    for (unsigned n = 1; n <= k; ++n) {
        Rational s = 0;
        Integer binom = 1;  // C(n+1, j)
        for (unsigned j = 0; j < n; ++j) {
            s += binom * B[j];
            binom = binom * (n + 1 - j) / (j + 1);
        }
        B[n] = -s / (n + 1);
        B[n].canonicalize();
    }
    return B[k];
}

Rational bernoulli_polynomial(unsigned k, const Rational& x) {
    Rational s = 0, xp = 1;
    Integer binom = 1;
    // sum_j C(k, j) B_{k-j} x^j
    for (unsigned j = 0; j <= k; ++j) {
        s += binom * bernoulli(k - j) * xp;
        xp *= x;
        binom = binom * (k - j) / (j + 1);
    }
    s.canonicalize();
    return s;
}

Rational bernoulli_generalized(unsigned k, const DirichletCharacter& psi) {
    if (!psi.is_primitive()) fail(ErrorCode::invalid_input, "bernoulli_generalized: character is not primitive");
    const uint64_t m = psi.modulus();
    Rational s = 0;
    for (uint64_t a = 1; a <= m; ++a) {
        int v = psi.value(as_i(a));
        if (v) s += v * bernoulli_polynomial(k, Rational(Integer(a), Integer(m)));
    }
    Integer mk;
    mpz_pow_ui(mk.get_mpz_t(), Integer(m).get_mpz_t(), k - 1);
    s *= mk;
    s.canonicalize();
    return s;
}

Rational l_ratio(unsigned k, const DirichletCharacter& psi, uint64_t N) {
    if (!psi.is_primitive()) fail(ErrorCode::invalid_input, "l_ratio: character is not primitive");
    if (N % psi.modulus()) fail(ErrorCode::invalid_input, "l_ratio: conductor does not divide N");
    Rational r = 1;
    for (uint64_t p : prime_factors(N)) {
        if (psi.modulus() % p == 0) continue;
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), Integer(p).get_mpz_t(), k);
        r /= 1 - Rational(psi.value(as_i(p)), pk);
    }
    r.canonicalize();
    return r;
}

cld l_value(unsigned k, const DirichletCharacter& psi) {
    const uint64_t m = psi.modulus();
    const int parity = psi.value(-1) == 1 ? 0 : 1;
    if (static_cast<int>(k % 2) != parity) fail(ErrorCode::invalid_input, "l_value: parity of k and psi differ");
    const long double pi = std::numbers::pi_v<long double>;
    cld G = 0;
    for (uint64_t a = 1; a <= m; ++a) G += static_cast<long double>(psi.value(as_i(a))) * std::polar(1.0L, 2 * pi * a / m);
    cld f = std::pow(cld(0, 2 * pi / m), static_cast<int>(k));
    long double fact = 1;
    for (unsigned j = 2; j <= k; ++j) fact *= j;
    long double sign = (k - 1) % 2 ? -1 : 1;
    return sign * G / 2.0L * f * static_cast<long double>(bernoulli_generalized(k, psi).get_d()) / fact;
}

// ---------------------------------------------------------------- number fields

std::shared_ptr<NumberField> NumberField::create(std::vector<Rational> poly) {
    while (poly.size() > 1 && sgn(poly.back()) == 0) poly.pop_back();
    if (poly.size() < 2 || poly.back() != 1) fail(ErrorCode::data_error, "field polynomial must be monic of degree >= 1");
    auto K = std::make_shared<NumberField>();
    for (auto& c : poly) c.canonicalize();
    K->poly_ = std::move(poly);
    K->roots_ = poly_roots(K->poly_);
    const size_t d = K->degree();
    // traces of y^i by Newton's identities
    K->power_traces_.assign(d, Rational(0));
    for (size_t i = 0; i < d; ++i) {
        if (i == 0) {
            K->power_traces_[0] = static_cast<long>(d);
            continue;
        }
        Rational s = Rational(static_cast<long>(i)) * K->poly_[d - i];
        for (size_t j = 1; j < i; ++j) s += K->poly_[d - j] * K->power_traces_[i - j];
        K->power_traces_[i] = -s;
    }
    return K;
}

std::shared_ptr<NumberField> NumberField::parse(const std::string& text) { return create(parse_poly(text)); }

std::string NumberField::str() const { return poly_str(poly_); }

std::vector<Rational> NumberField::reduce(std::vector<Rational> c) const {
    const size_t d = degree();
    for (size_t e = c.size(); e-- > d;) {
        if (sgn(c[e]) == 0) continue;
        Rational t = c[e];
        for (size_t i = 0; i < d; ++i) c[e - d + i] -= t * poly_[i];
        c[e] = 0;
    }
    c.resize(d, Rational(0));
    for (auto& x : c) x.canonicalize();
    return c;
}

NFElem NumberField::make(const Rational& r) const {
    std::vector<Rational> c(degree(), Rational(0));
    c[0] = r;
    return NFElem(shared_from_this(), c);
}

NFElem NumberField::gen() const {
    std::vector<Rational> c(std::max<size_t>(degree(), 2), Rational(0));
    c[1] = 1;
    return NFElem(shared_from_this(), reduce(c));
}

NFElem NumberField::parse_elem(const std::string& text) const { return NFElem(shared_from_this(), reduce(parse_poly(text))); }

NFElem::NFElem(std::shared_ptr<const NumberField> K, std::vector<Rational> c) : K_(std::move(K)), c_(std::move(c)) {
    if (c_.size() != K_->degree()) c_ = K_->reduce(c_);
}

bool NFElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

NFElem& NFElem::operator+=(const NFElem& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

NFElem& NFElem::operator-=(const NFElem& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

NFElem& NFElem::operator*=(const NFElem& o) {
    std::vector<Rational> p(2 * c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) p[i + j] += c_[i] * o.c_[j];
    }
    c_ = K_->reduce(std::move(p));
    return *this;
}

NFElem& NFElem::operator*=(const Rational& r) {
    for (auto& x : c_) x *= r;
    return *this;
}

NFElem NFElem::operator-() const {
    NFElem r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

NFElem NFElem::inv() const {
    const size_t d = c_.size();
    if (is_zero()) fail(ErrorCode::domain, "NFElem::inv: zero");
    // columns: this * y^j
    std::vector<std::vector<Rational>> A(d, std::vector<Rational>(d + 1, Rational(0)));
    NFElem col = *this, y = K_->gen();
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < d; ++i) A[i][j] = col.c_[i];
        col *= y;
    }
    A[0][d] = 1;
    for (size_t r = 0; r < d; ++r) {
        size_t piv = r;
        while (piv < d && sgn(A[piv][r]) == 0) ++piv;
        if (piv == d) fail(ErrorCode::domain, "NFElem::inv: field polynomial is reducible");
        std::swap(A[piv], A[r]);
        Rational f = A[r][r];
        for (auto& x : A[r]) x /= f;
        for (size_t i = 0; i < d; ++i) {
            if (i == r || sgn(A[i][r]) == 0) continue;
            Rational g = A[i][r];
            for (size_t j = r; j <= d; ++j) A[i][j] -= g * A[r][j];
        }
    }
    std::vector<Rational> x(d);
    for (size_t i = 0; i < d; ++i) {
        x[i] = A[i][d];
        x[i].canonicalize();
    }
    return NFElem(K_, x);
}

NFElem NFElem::pow(unsigned e) const {
    NFElem out = K_->make(1), b = *this;
    while (e) {
        if (e & 1) out *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return out;
}

Rational NFElem::trace() const {
    Rational t = 0;
    for (size_t i = 0; i < c_.size(); ++i) t += c_[i] * K_->power_traces_[i];
    t.canonicalize();
    return t;
}

cld NFElem::embed(size_t j) const {
    cld r = K_->roots_.at(j), v = 0;
    for (size_t i = c_.size(); i-- > 0;) v = v * r + static_cast<long double>(c_[i].get_d());
    return v;
}

std::string NFElem::str() const { return poly_str(c_); }

// ---------------------------------------------------------------- newforms

const NFElem& Newform::coeff(uint64_t n) const {
    if (n == 0 || n > terms())
        fail(ErrorCode::precision, name + ": coefficient a_" + std::to_string(n) + " beyond the bundled " + std::to_string(terms()));
    return a[n];
}

NFElem Newform::conj_coeff(uint64_t n) const {
    NFElem out = field->make(1);
    for (auto [p, e] : factor(n)) {
        if (level % p) {
            uint64_t pe = 1;
            for (unsigned i = 0; i < e; ++i) pe *= p;
            out *= coeff(pe) * Rational(chi.value(as_i(pe)));
            continue;
        }
        NFElem ap = coeff(p), c;
        if (chi.legendre().count(p)) {
            Integer pk;
            mpz_pow_ui(pk.get_mpz_t(), Integer(p).get_mpz_t(), static_cast<unsigned long>(weight - 1));
            c = ap.inv() * Rational(pk);
        } else {
            c = ap * Rational(chi.component(level / p).value(as_i(p)));
        }
        out *= c.pow(e);
    }
    return out;
}

bool Newform::multiplicative() const {
    const uint64_t T = terms();
    if (!(a[1] == field->make(1))) return false;
    for (uint64_t m = 2; m <= T; ++m)
        for (uint64_t n = m + 1; m * n <= T; ++n)
            if (std::gcd(m, n) == 1 && !(a[m * n] == a[m] * a[n])) return false;
    for (uint64_t p = 2; p <= T; ++p) {
        if (prime_factors(p).size() != 1 || prime_factors(p)[0] != p) continue;
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), Integer(p).get_mpz_t(), static_cast<unsigned long>(weight - 1));
        Rational hecke = Rational(chi.value(as_i(p))) * Rational(pk);
        uint64_t prev = 1, cur = p;
        while (cur * p <= T) {
            NFElem expect = level % p == 0 ? a[cur] * a[p] : a[cur] * a[p] - a[prev] * hecke;
            if (!(a[cur * p] == expect)) return false;
            prev = cur;
            cur *= p;
        }
    }
    return true;
}

Newform parse_newform(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line;
    auto header = [&](const std::string& key) {
        if (!std::getline(in, line) || line.rfind(key + " ", 0) != 0)
            fail(ErrorCode::data_error, name + ": expected '" + key + "' line");
        return line.substr(key.size() + 1);
    };
    Newform g;
    g.name = name;
    g.level = std::stoull(header("level"));
    g.weight = std::stoll(header("weight"));
    g.chi = DirichletCharacter::parse(header("character"), g.level);
    g.field = NumberField::parse(header("field"));
    const uint64_t T = std::stoull(header("terms"));
    g.a.assign(T + 1, g.field->make(0));
    for (uint64_t n = 1; n <= T; ++n) {
        if (!std::getline(in, line)) fail(ErrorCode::data_error, name + ": missing coefficient " + std::to_string(n));
        auto sp = line.find(' ');
        if (sp == std::string::npos || std::stoull(line.substr(0, sp)) != n)
            fail(ErrorCode::data_error, name + ": bad coefficient line '" + line + "'");
        g.a[n] = g.field->parse_elem(line.substr(sp + 1));
    }
    while (std::getline(in, line))
        if (!line.empty()) fail(ErrorCode::data_error, name + ": trailing data");
    return g;
}

std::string serialize_newform(const Newform& g) {
    std::string out = "level " + std::to_string(g.level) + "\nweight " + std::to_string(g.weight) + "\ncharacter " +
                      g.chi.str() + "\nfield " + g.field->str() + "\nterms " + std::to_string(g.terms()) + "\n";
    for (uint64_t n = 1; n <= g.terms(); ++n) out += std::to_string(n) + " " + g.a[n].str() + "\n";
    return out;
}

Newform load_newform(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::data_error, "cannot open newform file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_newform(ss.str(), std::filesystem::path(path).stem().string());
}

NewformDB::NewformDB(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) fail(ErrorCode::data_error, "newform directory not found: " + dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".txt" && e.path().filename() != "spaces.txt") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) forms_.push_back(load_newform(f.string()));
    std::ifstream sp(fs::path(dir) / "spaces.txt");
    if (!sp) fail(ErrorCode::data_error, "missing " + (fs::path(dir) / "spaces.txt").string());
    std::string line;
    while (std::getline(sp, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        SpaceInfo s{};
        if (!(ls >> s.level >> s.weight >> s.disc >> s.dim)) fail(ErrorCode::data_error, "bad spaces.txt line '" + line + "'");
        spaces_.push_back(s);
    }
}

std::vector<const Newform*> NewformDB::find(uint64_t level, int64_t weight, const DirichletCharacter& chi) const {
    std::vector<const Newform*> out;
    for (const auto& g : forms_)
        if (g.level == level && g.weight == weight && g.chi == chi) out.push_back(&g);
    return out;
}

std::optional<uint64_t> NewformDB::space_dim(uint64_t N, int64_t weight, const DirichletCharacter& chi) const {
    for (const auto& s : spaces_)
        if (s.level == N && s.weight == weight && s.disc == chi.discriminant()) return s.dim;
    return std::nullopt;
}

std::string default_data_dir() {
    if (const char* env = std::getenv("REFL_DATA_DIR")) return env;
#ifdef REFL_DATA_DIR
    return REFL_DATA_DIR;
#else
    return "data";
#endif
}

// ---------------------------------------------------------------- expansions

QExp NFExpansion::trace(const NFElem& theta) const {
    QExp out(CycNum(0), step * Rational(static_cast<long>(terms() + 1)));
    for (size_t n = 1; n <= terms(); ++n) {
        Rational t = (theta * coeffs[n]).trace();
        if (sgn(t)) out.add_term(step * Rational(static_cast<long>(n)), scale * CycNum(t));
    }
    return out;
}

NFElem NFExpansion::coeff_at(const Rational& x) const {
    Rational n = x / step;
    n.canonicalize();
    if (n.get_den() != 1 || sgn(n) <= 0) return coeffs.at(1) * Rational(0);
    if (n > Rational(static_cast<long>(terms()))) fail(ErrorCode::precision, "expansion known only below q^" + rational_str(step * Rational(static_cast<long>(terms() + 1))));
    return coeffs[n.get_num().get_ui()];
}

cld NFExpansion::evaluate(size_t j, cld tau) const {
    const long double pi = std::numbers::pi_v<long double>;
    const long double st = step.get_d();
    cld s = 0;
    for (size_t n = terms(); n >= 1; --n) s += coeffs[n].embed(j) * std::exp(cld(0, 2 * pi) * tau * (st * n));
    auto z = scale.to_complex();
    return cld(z.real(), z.imag()) * s;
}

AtkinLehner atkin_lehner(const Newform& g, uint64_t cp) {
    const uint64_t M = g.level;
    if (cp == 0 || M % cp) fail(ErrorCode::invalid_input, "atkin_lehner: c' must divide the level");
    const uint64_t c = M / cp;
    const auto chic = g.chi.component(c), chicp = g.chi.component(cp);
    AtkinLehner out{CycNum(1), g.field->make(1), g};
    for (uint64_t n = 1; n <= g.terms(); ++n) {
        uint64_t n1 = 1, n2 = n;
        for (uint64_t p : prime_factors(cp))
            while (n2 % p == 0) n2 /= p, n1 *= p;
        NFElem v = g.a[n2] * Rational(chicp.value(as_i(n2)));
        if (n1 > 1) v *= g.conj_coeff(n1) * Rational(chic.value(as_i(n1)));
        out.image.a[n] = v;
    }
    out.image.name = g.name + "|W" + std::to_string(cp);
    CycNum lam(static_cast<long>(chicp.value(as_i(c)) * chic.value(as_i(cp))));
    for (uint64_t p : prime_factors(cp)) {
        const auto chip = g.chi.component(p);
        lam *= CycNum(static_cast<long>(chip.value(as_i(cp / p))));
        if (chip.is_primitive())
            lam *= gauss_sum(chip) * sqrt_pow(p, -g.weight);
        else
            lam *= -sqrt_pow(p, 2 - g.weight);
        out.lambda_nf *= g.conj_coeff(p);
    }
    out.lambda_cyc = lam;
    return out;
}

NFExpansion atkin_lehner_expansion(const Newform& g, uint64_t cp) {
    auto W = atkin_lehner(g, cp);
    NFExpansion e;
    e.scale = W.lambda_cyc;
    e.coeffs = W.image.a;
    for (size_t n = 1; n < e.coeffs.size(); ++n) e.coeffs[n] *= W.lambda_nf;
    return e;
}

NFExpansion expansion_at_cusp(const Newform& g, uint64_t c) {
    const uint64_t M = g.level;
    if (c == 0 || M % c) fail(ErrorCode::invalid_input, "expansion_at_cusp: c must divide the level");
    const uint64_t cp = M / c;
    NFExpansion e = atkin_lehner_expansion(g, cp);
    int sgn_ = g.chi.component(cp).value(-1) * g.chi.component(c).value(as_i(cp));
    e.scale *= CycNum(static_cast<long>(sgn_)) * sqrt_pow(cp, -g.weight);
    e.step = Rational(1, static_cast<long>(cp));
    e.step.canonicalize();
    return e;
}

NFExpansion oldform_at_cusp(const Newform& g, uint64_t d, uint64_t N, uint64_t c) {
    const uint64_t M = g.level;
    if (N % M || (N / M) % d) fail(ErrorCode::invalid_input, "oldform_at_cusp: d must divide N / level");
    if (c == 0 || N % c) fail(ErrorCode::invalid_input, "oldform_at_cusp: c must divide N");
    const uint64_t m = gcd_u(c, M), r1 = gcd_u(c, d), r2 = d / r1;
    const Mat2 Mc = cusp_matrix(c, N), Mt = cusp_matrix(m, M);
    const int64_t D = as_i(d), R1 = as_i(r1), R2 = as_i(r2);
    // diag(d,1) Mc = A Mt diag(r1, r2)
    Mat2 X{D / R1, D * Mc.b / R2, Mc.c / R1, Mc.d / R2};
    if (Mc.c % R1 || Mc.d % R2) fail(ErrorCode::internal, "oldform_at_cusp: non-integral factorization");
    Mat2 A = X * Mt.inverse();
    if (A.det() != 1 || A.c % as_i(M)) fail(ErrorCode::internal, "oldform_at_cusp: factor not in Gamma_0(M)");
    NFExpansion e = expansion_at_cusp(g, m);
    e.scale *= CycNum(static_cast<long>(g.chi.value(A.d))) * sqrt_pow(r2, -2 * g.weight);
    e.step *= Rational(R1, R2);
    e.step.canonicalize();
    return e;
}

cld slash_numeric(const Newform& g, size_t j, uint64_t dilation, const Mat2& M, cld tau) {
    const long double pi = std::numbers::pi_v<long double>;
    cld z = (static_cast<long double>(M.a) * tau + static_cast<long double>(M.b)) /
            (static_cast<long double>(M.c) * tau + static_cast<long double>(M.d));
    z *= static_cast<long double>(dilation);
    cld s = 0;
    for (size_t n = g.terms(); n >= 1; --n) s += g.a[n].embed(j) * std::exp(cld(0, 2 * pi * n) * z);
    return s * std::pow(static_cast<long double>(M.c) * tau + static_cast<long double>(M.d), static_cast<int>(-g.weight));
}

std::string CuspBasisElement::name() const {
    return g->name + "[" + theta.str() + "](" + std::to_string(dilation) + "tau)";
}

std::vector<CuspBasisElement> cusp_basis(const NewformDB& db, uint64_t N, int64_t weight, const DirichletCharacter& chi) {
    if (chi.modulus() != N) fail(ErrorCode::invalid_input, "cusp_basis: character modulus must be N");
    std::vector<CuspBasisElement> out;
    for (uint64_t M : divisors(N)) {
        if (M % chi.conductor()) continue;
        for (const Newform* g : db.find(M, weight, chi.component(M))) {
            NFElem th = g->field->make(1), y = g->field->gen();
            std::vector<NFElem> thetas;
            for (size_t i = 0; i < g->field->degree(); ++i) {
                thetas.push_back(th);
                th *= y;
            }
            for (uint64_t d : divisors(N / M))
                for (const auto& t : thetas) out.push_back({g, d, t});
        }
    }
    return out;
}

CycNum cusp_coefficient(const CuspBasisElement& e, uint64_t N, uint64_t c) {
    auto ex = oldform_at_cusp(*e.g, e.dilation, N, c);
    Rational x(1, static_cast<long>(N / c));
    x.canonicalize();
    return ex.scale * CycNum((e.theta * ex.coeff_at(x)).trace());
}

}  // namespace refl
