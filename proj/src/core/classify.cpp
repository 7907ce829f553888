#include "refl/classify.hpp"

#include "refl/error.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace refl {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

// '|'-separated lines, '#' comments skipped
std::vector<std::vector<std::string>> read_fields(const std::string& path, size_t fields) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::data_error, "missing data file " + path);
    std::vector<std::vector<std::string>> out;
    std::string line;
    for (size_t no = 1; std::getline(in, line); ++no) {
        if (trim(line).empty() || trim(line)[0] == '#') continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string x; std::getline(ss, x, '|');) f.push_back(trim(x));
        if (f.size() != fields) fail(ErrorCode::data_error, path + ":" + std::to_string(no) + ": expected " + std::to_string(fields) + " fields");
        out.push_back(std::move(f));
    }
    return out;
}

int to_int(const std::string& s, const std::string& where) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorCode::data_error, where + ": bad integer '" + s + "'");
}

JordanSymbol parse_symbol(const std::string& s) { return s.empty() || s == "1" ? JordanSymbol() : JordanSymbol::parse(s); }

std::string dir_of(const RunConfig& cfg) { return cfg.data_dir.empty() ? default_data_dir() : cfg.data_dir; }

std::string elem_string(const Element& x) {
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);)
        if (!l.empty()) out.push_back(l);
    return out;
}

uint64_t saturating_pow(uint64_t b, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (b > 1 && r > (uint64_t(1) << 62) / b) return uint64_t(1) << 62;
        r *= b;
    }
    return r;
}

json config_json(const RunConfig& cfg) {
    json c;
    c["n"] = cfg.n ? json(*cfg.n) : json(nullptr);
    c["N"] = cfg.N ? json(*cfg.N) : json(nullptr);
    c["symbol"] = cfg.symbol;
    c["eta"] = cfg.eta;
    c["scale"] = cfg.scale;
    c["gamma"] = cfg.gamma ? json(*cfg.gamma) : json(nullptr);
    c["precision"] = cfg.precision;
    return c;
}

Report start(const RunConfig& cfg, const std::string& command) {
    Report r;
    r.doc["schema"] = report_schema;
    r.doc["command"] = command;
    r.doc["config"] = config_json(cfg);
    r.doc["results"] = json::array();
    r.doc["checks"] = json::array();
    return r;
}

void add_check(Report& r, const std::string& name, bool ok) { r.doc["checks"].push_back({{"name", name}, {"ok", ok}}); }

Report& finish(Report& r) {
    size_t failed = 0;
    for (const auto& c : r.doc["checks"])
        if (!c["ok"].get<bool>()) ++failed;
    r.doc["summary"] = {{"results", r.doc["results"].size()}, {"checks", r.doc["checks"].size()}, {"failed", failed}};
    r.doc["verdict"] = failed ? "fail" : "pass";
    return r;
}

void need_precision(const RunConfig& cfg, int minimum) {
    if (cfg.precision < minimum)
        fail(ErrorCode::invalid_input, "precision " + std::to_string(cfg.precision) + " is below the minimum " + std::to_string(minimum) +
                                           " for " + cfg.command);
}

// "II_{n,2}(sym)" or a bare symbol with n from the config
Candidate candidate_of(const RunConfig& cfg) {
    if (cfg.symbol.rfind("II_", 0) == 0) {
        auto L = LatticeSpec::parse(cfg.symbol);
        if (cfg.n && *cfg.n != L.n) fail(ErrorCode::invalid_input, "--n disagrees with " + cfg.symbol);
        return Candidate::make(L.n, L.disc);
    }
    if (!cfg.n) fail(ErrorCode::invalid_input, cfg.command + ": --n is required with a bare discriminant symbol");
    return Candidate::make(*cfg.n, parse_symbol(cfg.symbol));
}

CycNum parse_scale(const std::string& s) {
    Rational q;
    try {
        q = Rational(s);
        q.canonicalize();
    } catch (const std::exception&) {
        fail(ErrorCode::invalid_input, "bad scale '" + s + "'");
    }
    if (q == 0) fail(ErrorCode::invalid_input, "scale must be nonzero");
    return CycNum(q);
}

CVector parse_cvector(const std::string& s, const std::string& where) {
    CVector c;
    std::stringstream ss(s);
    for (std::string t; ss >> t;) {
        auto k = t.find(':');
        if (k == std::string::npos) fail(ErrorCode::data_error, where + ": bad entry '" + t + "'");
        c[static_cast<uint64_t>(to_int(t.substr(0, k), where))] = to_int(t.substr(k + 1), where);
    }
    return c;
}

}  // namespace

std::vector<std::string> command_names() { return {"bounds", "enumerate", "verify-table1", "lift", "obstruct", "pair", "eta"}; }

bool Report::passed() const { return doc.contains("verdict") && doc["verdict"] == "pass"; }

std::string Report::render(const std::string& format) const {
    if (format == "json") return doc.dump(2) + "\n";
    if (format != "table") fail(ErrorCode::invalid_input, "unknown format '" + format + "'");
    std::ostringstream os;
    os << doc["schema"].get<std::string>() << " " << doc["command"].get<std::string>() << "\n";
    if (doc["command"] == "bounds") {
        os << "omega\\k";
        for (int64_t k = -1; k >= -12; --k) os << "\t" << k;
        os << "\n";
        for (int w = 0; w < 4; ++w) {
            os << w;
            for (const auto& row : doc["results"]) {
                const auto& v = row["bounds"][static_cast<size_t>(w)];
                os << "\t" << (v.is_null() ? std::string("-") : std::to_string(v.get<uint64_t>()));
            }
            os << "\n";
        }
    } else {
        for (const auto& item : doc["results"]) {
            std::string head;
            for (const auto& [k, v] : item.items()) {
                if (v.is_array() || v.is_object()) continue;
                head += (head.empty() ? "" : "  ") + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
            }
            os << head << "\n";
            for (const auto& [k, v] : item.items()) {
                if (v.is_object()) {
                    os << "  " << k << ":";
                    for (const auto& [a, b] : v.items()) os << " " << a << "=" << (b.is_string() ? b.get<std::string>() : b.dump());
                    os << "\n";
                } else if (v.is_array()) {
                    os << "  " << k << ":" << (v.empty() ? " none" : "") << "\n";
                    for (const auto& e : v) os << "    " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
                }
            }
        }
    }
    for (const auto& c : doc["checks"])
        if (!c["ok"].get<bool>()) os << "FAIL " << c["name"].get<std::string>() << "\n";
    os << "checks " << doc["summary"]["checks"] << " failed " << doc["summary"]["failed"] << " verdict " << doc["verdict"].get<std::string>()
       << "\n";
    return os.str();
}

std::vector<Table1Row> read_table1(const std::string& data_dir) {
    const std::string path = data_dir + "/table1.txt";
    std::vector<Table1Row> out;
    for (const auto& f : read_fields(path, 4)) out.push_back({to_int(f[0], path), f[1], to_int(f[2], path), f[3]});
    return out;
}

std::vector<ExpectedRow> read_expected(const std::string& path) {
    std::vector<ExpectedRow> out;
    for (const auto& f : read_fields(path, 3)) out.push_back({to_int(f[0], path), f[1], parse_cvector(f[2], path)});
    return out;
}

std::vector<PairingEta> read_pairing_etas(const std::string& data_dir) {
    const std::string path = data_dir + "/pairing_eta.txt";
    std::vector<PairingEta> out;
    for (const auto& f : read_fields(path, 3))
        out.push_back({to_int(f[0], path), static_cast<uint64_t>(to_int(f[1], path)), EtaQuotient::parse(f[2])});
    return out;
}

std::vector<Candidate> enumerate_candidates(std::optional<int> n_filter, std::optional<uint64_t> N_filter) {
    std::vector<Candidate> out;
    for (int64_t k = -1; k >= -12; --k) {
        const int n = static_cast<int>(2 - 2 * k);
        if (n_filter && *n_filter != n) continue;
        for (uint64_t N : admissible_levels(k)) {
            if (N_filter && *N_filter != N) continue;
            for (const auto& s : jordan_symbols(saturating_pow(N, n), prime_factors(N))) {
                if (s.level() != N) continue;
                auto c = Candidate::make(n, s);
                if (c.valid()) out.push_back(std::move(c));
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.level() != b.level()) return a.level() < b.level();
        return a.D->symbol().str() < b.D->symbol().str();
    });
    return out;
}

bool gauss_milgram_holds(const DiscForm& D) {
    return D.gauss_sum() == CycNum::sqrt_pos(D.size()) * CycNum::root_of_unity(D.signature(), 8);
}

Table1Result verify_table1_row(const Table1Row& r, int precision) {
    Table1Result res;
    try {
        DiscForm D(parse_symbol(r.disc));
        const EtaQuotient f = EtaQuotient::parse(r.eta);
        res.weight = f.weight2() == 2 - r.n;
        res.character = eta_character_matches(f, D);
        if (!res.weight || !res.character) return res;
        const auto fc = eta_cusp_expansions(f, CycNum(r.scale), D.level(), Rational(precision));
        res.pole_bounds = pole_bound_check(fc, D.level());
        const VVForm F = gamma0_lift(D, 2 - r.n, fc);
        res.strong = reflectivity(F) == Reflectivity::strong;
        const CycNum c0 = F.component(D.zero()).coeff(0);
        res.f0 = c0.str();
        res.constant = c0 == CycNum(static_cast<long>(r.n - 2));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::data_error) throw;
        res.error = e.what();
    }
    return res;
}

void parallel_for(size_t count, unsigned jobs, const std::function<void(size_t)>& f) {
    const size_t threads = std::max<size_t>(1, std::min<size_t>(jobs, count));
    if (threads == 1) {
        for (size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (size_t i; (i = next++) < count;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

Report cmd_bounds(const RunConfig& cfg) {
    Report r = start(cfg, "bounds");
    const auto t = table2();
    for (int64_t k = -1; k >= -12; --k) {
        json row{{"k", k}, {"bounds", json::array()}};
        for (int w = 0; w < 4; ++w) {
            const auto& v = t.at({k, w});
            row["bounds"].push_back(v ? json(*v) : json(nullptr));
        }
        r.doc["results"].push_back(row);
    }
    return finish(r);
}

Report cmd_enumerate(const RunConfig& cfg) {
    Report r = start(cfg, "enumerate");
    const auto cands = enumerate_candidates(cfg.n, cfg.N);
    std::vector<json> items(cands.size());
    std::vector<char> milgram(cands.size());
    parallel_for(cands.size(), cfg.jobs, [&](size_t i) {
        const auto& c = cands[i];
        milgram[i] = gauss_milgram_holds(*c.D);
        items[i] = {{"lattice", c.str()},   {"n", c.n},
                    {"N", c.level()},       {"symbol", c.D->symbol().str()},
                    {"order", c.D->size()}, {"signature", c.D->signature()},
                    {"gauss_milgram", static_cast<bool>(milgram[i])}};
    });
    for (size_t i = 0; i < cands.size(); ++i) {
        r.doc["results"].push_back(items[i]);
        add_check(r, "gauss-milgram " + cands[i].str(), milgram[i]);
    }
    if (!cfg.n && !cfg.N) {
        std::set<std::pair<int, std::string>> have;
        for (const auto& c : cands) have.insert({c.n, c.D->symbol().str()});
        const std::string dir = dir_of(cfg);
        std::set<std::pair<int, std::string>> need;
        for (const auto& row : read_table1(dir)) need.insert({row.n, parse_symbol(row.disc).str()});
        for (const char* file : {"/solutions_final.txt", "/solutions_long.txt"})
            for (const auto& row : read_expected(dir + file)) need.insert({row.n, parse_symbol(row.disc).str()});
        for (const auto& [n, s] : need) add_check(r, "enumerated II_{" + std::to_string(n) + ",2}(" + s + ")", have.count({n, s}) > 0);
    }
    return finish(r);
}

Report cmd_verify_table1(const RunConfig& cfg) {
    need_precision(cfg, 1);
    Report r = start(cfg, "verify-table1");
    std::vector<Table1Row> rows;
    for (const auto& row : read_table1(dir_of(cfg))) {
        if (cfg.n && row.n != *cfg.n) continue;
        if (cfg.N && parse_symbol(row.disc).level() != *cfg.N) continue;
        rows.push_back(row);
    }
    std::vector<Table1Result> res(rows.size());
    parallel_for(rows.size(), cfg.jobs, [&](size_t i) { res[i] = verify_table1_row(rows[i], cfg.precision); });
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const auto& v = res[i];
        const std::string lattice = Candidate::make(row.n, parse_symbol(row.disc)).str();
        json item{{"lattice", lattice},
                  {"eta", row.eta},
                  {"scale", row.scale},
                  {"weight", v.weight},
                  {"character", v.character},
                  {"pole_bounds", v.pole_bounds},
                  {"strongly_reflective", v.strong},
                  {"F0_constant", v.f0},
                  {"verdict", v.ok() ? "pass" : "fail"}};
        if (!v.error.empty()) item["error"] = v.error;
        r.doc["results"].push_back(item);
        add_check(r, "table1 " + lattice + " " + row.eta, v.ok());
    }
    return finish(r);
}

Report cmd_lift(const RunConfig& cfg) {
    need_precision(cfg, 1);
    if (cfg.eta.empty() || cfg.symbol.empty()) fail(ErrorCode::invalid_input, "lift: --symbol and --eta are required");
    Report r = start(cfg, "lift");
    const EtaQuotient f = EtaQuotient::parse(cfg.eta);
    RunConfig c2 = cfg;
    if (!c2.n && cfg.symbol.rfind("II_", 0) != 0) c2.n = static_cast<int>(2 - f.weight2());
    const Candidate cand = candidate_of(c2);
    const DiscForm& D = *cand.D;
    json item{{"lattice", cand.str()}, {"eta", f.str()}, {"scale", cfg.scale}, {"weight2", f.weight2()}};
    const bool weight = f.weight2() == 2 - cand.n;
    const bool character = eta_character_matches(f, D);
    item["weight_ok"] = weight;
    item["character"] = character;
    add_check(r, "weight 1 - n/2", weight);
    add_check(r, "character chi_D", character);
    if (weight && character) {
        const auto fc = eta_cusp_expansions(f, parse_scale(cfg.scale), D.level(), Rational(cfg.precision));
        const bool poles = pole_bound_check(fc, D.level());
        item["pole_bounds"] = poles;
        add_check(r, "pole bounds", poles);
        json cusps = json::array();
        for (const auto& [c, e] : fc) {
            QExp head;
            for (const auto& [x, a] : e.terms())
                if (x <= 0) head.add_term(x, a);
            cusps.push_back("1/" + std::to_string(c) + ": " + head.str() + " + ...");
        }
        item["cusp_expansions"] = cusps;
        const VVForm F = gamma0_lift(D, 2 - cand.n, fc);
        item["reflectivity"] = reflectivity_name(reflectivity(F));
        item["F0_constant"] = F.component(D.zero()).coeff(0).str();
        json pc = json::array();
        for (const auto& [d, cnt] : pole_counts(F)) pc.push_back(c_name(d) + "=" + std::to_string(cnt));
        item["pole_counts"] = pc;
        item["classes"] = lines_of(vvform_report(F));
    }
    r.doc["results"].push_back(item);
    return finish(r);
}

Report cmd_obstruct(const RunConfig& cfg) {
    Report r = start(cfg, "obstruct");
    const std::string dir = dir_of(cfg);
    std::vector<Candidate> cands;
    if (!cfg.symbol.empty()) {
        cands.push_back(candidate_of(cfg));
        if (!cands[0].valid()) fail(ErrorCode::invalid_input, cands[0].str() + " violates the signature or splitting constraints");
    } else {
        cands = enumerate_candidates(cfg.n, cfg.N);
    }
    std::map<std::pair<int, std::string>, std::set<CVector>> expected;
    for (const char* file : {"/solutions_final.txt", "/solutions_long.txt"})
        for (const auto& row : read_expected(dir + file)) expected[{row.n, parse_symbol(row.disc).str()}].insert(row.c);
    const NewformDB db(dir + "/newforms");

    std::vector<json> items(cands.size());
    std::vector<char> ok(cands.size());
    parallel_for(cands.size(), cfg.jobs, [&](size_t i) {
        const auto& cand = cands[i];
        json item{{"lattice", cand.str()}, {"n", cand.n}, {"N", cand.level()}};
        json boxes = json::array();
        for (const auto& b : condition_A(cand))
            boxes.push_back(std::to_string(b.lo) + " <= " + c_name(b.d) + " <= " + std::to_string(b.hi) + (b.even ? ", even" : ""));
        item["boxes"] = boxes;
        auto cons = condition_B(cand, db);
        cons.push_back(condition_C(cand));
        json cj = json::array();
        for (const auto& c : cons) cj.push_back(c.origin + ": " + c.str());
        item["constraints"] = cj;
        const auto sols = solve(cand, cons);
        std::set<CVector> ns;
        json sj = json::array(), nj = json::array(), ej = json::array();
        for (const auto& s : sols) {
            sj.push_back(cvector_str(s));
            if (!symmetric_admissible(*cand.D, s)) {
                ns.insert(s);
                nj.push_back(cvector_str(s));
            }
        }
        auto it = expected.find({cand.n, cand.D->symbol().str()});
        const std::set<CVector> want = it == expected.end() ? std::set<CVector>() : it->second;
        for (const auto& s : want) ej.push_back(cvector_str(s));
        item["solutions"] = sj;
        item["non_symmetric"] = nj;
        item["expected_non_symmetric"] = ej;
        ok[i] = ns == want;
        item["verdict"] = ok[i] ? "pass" : "fail";
        items[i] = std::move(item);
    });
    for (size_t i = 0; i < cands.size(); ++i) {
        r.doc["results"].push_back(items[i]);
        add_check(r, "non-symmetric solutions " + cands[i].str(), ok[i]);
    }
    return finish(r);
}

Report cmd_pair(const RunConfig& cfg) {
    if (cfg.eta.empty() || cfg.symbol.empty()) fail(ErrorCode::invalid_input, "pair: --symbol, --n and --eta are required");
    Report r = start(cfg, "pair");
    const Candidate cand = candidate_of(cfg);
    const DiscForm& D = *cand.D;
    const EtaQuotient h = EtaQuotient::parse(cfg.eta);
    std::optional<Element> beta;
    if (cfg.gamma) {
        if (*cfg.gamma >= D.size()) fail(ErrorCode::invalid_input, "pair: element index out of range");
        beta = D.element(*cfg.gamma);
        if (!pairing_character_ok(D, cand.n, *beta, h))
            fail(ErrorCode::invalid_input, "pair: " + h.str() + " has the wrong weight or character for element " + std::to_string(*cfg.gamma));
    } else {
        for (uint64_t i = 0; i < D.size() && !beta; ++i)
            if (pairing_character_ok(D, cand.n, D.element(i), h)) beta = D.element(i);
        if (!beta) fail(ErrorCode::invalid_input, "pair: no element gamma for which " + h.str() + " has character conj(chi_gamma)");
    }
    const Pairing P = gamma1_pairing(D, cand.n, *beta, h);
    json item{{"lattice", cand.str()},
              {"eta", h.str()},
              {"gamma", elem_string(*beta)},
              {"gamma_index", D.index(*beta)},
              {"gamma_order", D.order_of(*beta)},
              {"gamma_norm", rational_str(D.norm(*beta))}};
    item["grouped"] = lines_of(grouped_report(D, *beta, P));
    item["constraint"] = P.constraint(D).str();
    json lifts = json::array();
    for (const auto& row : read_table1(dir_of(cfg))) {
        if (row.n != cand.n || !(parse_symbol(row.disc) == D.symbol())) continue;
        const auto fc = eta_cusp_expansions(EtaQuotient::parse(row.eta), CycNum(row.scale), D.level(), Rational(2));
        const CycNum v = P.evaluate(principal_part(gamma0_lift(D, 2 - row.n, fc)), D);
        lifts.push_back(std::to_string(row.scale) + " eta_{" + row.eta + "}: " + v.str());
        add_check(r, "pairing vanishes on the lift of " + row.eta, v.is_zero());
    }
    item["table1_lifts"] = lifts;
    r.doc["results"].push_back(item);
    return finish(r);
}

Report cmd_eta(const RunConfig& cfg) {
    need_precision(cfg, 1);
    if (cfg.eta.empty()) fail(ErrorCode::invalid_input, "eta: --eta is required");
    Report r = start(cfg, "eta");
    const EtaQuotient f0 = EtaQuotient::parse(cfg.eta);
    const uint64_t N = cfg.N ? *cfg.N : f0.level();
    if (N == 0 || N % f0.level()) fail(ErrorCode::invalid_input, "eta: level must be a multiple of " + std::to_string(f0.level()));
    const EtaQuotient f(f0.exps(), N);
    json item{{"eta", f.str()},
              {"level", N},
              {"weight2", f.weight2()},
              {"modular_gamma1", f.modular_gamma1()},
              {"holomorphic", f.is_holomorphic()},
              {"cusp_form", f.is_cusp_form()}};
    json orders = json::array();
    for (const auto& [c, o] : f.cusp_orders()) orders.push_back("1/" + std::to_string(c) + ": " + rational_str(o));
    item["cusp_orders"] = orders;
    item["expansion"] = f.expand(Rational(cfg.precision)).str();
    json cusps = json::array();
    for (const auto& s : gamma1_cusps(N)) {
        const auto e = f.expand_at_cusp(s.M, Rational(cfg.precision));
        cusps.push_back("(" + std::to_string(s.M.a) + "," + std::to_string(s.M.b) + ";" + std::to_string(s.M.c) + "," +
                        std::to_string(s.M.d) + ") width " + std::to_string(s.width) + ": " + e.prefactor.str() + " * (" + e.series.str() + ")");
    }
    item["gamma1_cusps"] = cusps;
    if (!cfg.symbol.empty()) {
        DiscForm D(parse_symbol(cfg.symbol.rfind("II_", 0) == 0 ? LatticeSpec::parse(cfg.symbol).disc.str() : cfg.symbol));
        const bool ch = eta_character_matches(f0, D);
        item["character_chi_D"] = ch;
        add_check(r, "character chi_D", ch);
    }
    r.doc["results"].push_back(item);
    return finish(r);
}

Report run(const RunConfig& cfg) {
    if (cfg.jobs == 0) fail(ErrorCode::invalid_input, "--jobs must be positive");
    if (cfg.command == "bounds") return cmd_bounds(cfg);
    if (cfg.command == "enumerate") return cmd_enumerate(cfg);
    if (cfg.command == "verify-table1") return cmd_verify_table1(cfg);
    if (cfg.command == "lift") return cmd_lift(cfg);
    if (cfg.command == "obstruct") return cmd_obstruct(cfg);
    if (cfg.command == "pair") return cmd_pair(cfg);
    if (cfg.command == "eta") return cmd_eta(cfg);
    fail(ErrorCode::invalid_input, "unknown command '" + cfg.command + "'");
}

}  // namespace refl
