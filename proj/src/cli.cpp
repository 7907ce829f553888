#include "refl/refl.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Options {
    std::optional<int> n;
    std::optional<uint64_t> N;
    std::string symbol, eta, scale;
    std::optional<uint64_t> gamma;
};

int fail_with(refl_status s, const std::string& where) {
    std::cerr << "reflcheck: " << where << ": " << refl_last_error() << "\n";
    return s == REFL_VERIFY_FAILED ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Checks for reflective automorphic forms on lattices of squarefree level"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", refl_version());

    int precision = 2;
    unsigned jobs = 1;
    std::string data_dir, out, format = "table";
    app.add_option("--precision", precision, "q-expansion precision")->capture_default_str();
    app.add_option("--data-dir", data_dir, "directory with table1.txt, solutions_final.txt, solutions_long.txt and newforms/");
    app.add_option("--out", out, "write the report here instead of stdout");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();

    Options o;
    auto add_filters = [&](CLI::App* s) {
        s->add_option("-n,--n", o.n, "lattice signature (n, 2)");
        s->add_option("-N,--level", o.N, "level");
    };
    auto add_symbol = [&](CLI::App* s, bool required) {
        auto* opt = s->add_option("--symbol", o.symbol, "Jordan symbol such as '2_II^+4 3^-3', or a lattice II_{n,2}(...)");
        if (required) opt->required();
    };

    app.add_subcommand("bounds", "the bounds on N by k and omega(N)");
    auto* en = app.add_subcommand("enumerate", "candidate lattices with Gauss-Milgram checks");
    add_filters(en);
    auto* vt = app.add_subcommand("verify-table1", "verify the bundled eta quotient table");
    add_filters(vt);
    auto* li = app.add_subcommand("lift", "Gamma_0(N) lift of an eta quotient");
    add_symbol(li, true);
    li->add_option("-n,--n", o.n, "lattice signature (n, 2)");
    li->add_option("--eta", o.eta, "eta quotient such as '1^-1 23^-1'")->required();
    li->add_option("--scale", o.scale, "rational factor");
    auto* ob = app.add_subcommand("obstruct", "conditions A, B, C and their solutions");
    add_filters(ob);
    add_symbol(ob, false);
    auto* pa = app.add_subcommand("pair", "Gamma_1(N) pairing with an eta quotient");
    add_symbol(pa, true);
    pa->add_option("-n,--n", o.n, "lattice signature (n, 2)");
    pa->add_option("--eta", o.eta, "cusp form eta quotient")->required();
    pa->add_option("--gamma", o.gamma, "element index; default the first admissible element");
    auto* et = app.add_subcommand("eta", "eta quotient data and expansions at the cusps of Gamma_1(N)");
    et->add_option("--eta", o.eta, "eta quotient")->required();
    et->add_option("-N,--level", o.N, "level, default the lcm of the deltas");
    add_symbol(et, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    refl_config* cfg = nullptr;
    refl_status s = refl_config_new(command.c_str(), &cfg);
    if (s != REFL_OK) return fail_with(s, "config");
    std::vector<std::pair<std::string, std::string>> kv{{"precision", std::to_string(precision)}, {"jobs", std::to_string(jobs)}};
    if (!data_dir.empty()) kv.emplace_back("data-dir", data_dir);
    if (o.n) kv.emplace_back("n", std::to_string(*o.n));
    if (o.N) kv.emplace_back("N", std::to_string(*o.N));
    if (!o.symbol.empty()) kv.emplace_back("symbol", o.symbol);
    if (!o.eta.empty()) kv.emplace_back("eta", o.eta);
    if (!o.scale.empty()) kv.emplace_back("scale", o.scale);
    if (o.gamma) kv.emplace_back("gamma", std::to_string(*o.gamma));
    for (const auto& [k, v] : kv) {
        s = refl_config_set(cfg, k.c_str(), v.c_str());
        if (s != REFL_OK) {
            refl_config_free(cfg);
            return fail_with(s, k);
        }
    }

    refl_report* rep = nullptr;
    s = refl_run(cfg, &rep);
    refl_config_free(cfg);
    if (!rep) return fail_with(s, command);
    char* text = nullptr;
    const refl_status rs = refl_report_render(rep, format.c_str(), &text);
    const int passed = refl_report_passed(rep);
    refl_report_free(rep);
    if (rs != REFL_OK) return fail_with(rs, "render");
    if (out.empty()) {
        std::fputs(text, stdout);
    } else {
        std::ofstream f(out, std::ios::binary);
        f << text;
        if (!f) {
            refl_string_free(text);
            std::cerr << "reflcheck: cannot write " << out << "\n";
            return 2;
        }
    }
    refl_string_free(text);
    return passed ? 0 : 1;
}
