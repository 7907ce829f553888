#include "doctest.h"

#include "refl/classify.hpp"
#include "refl/error.hpp"

#include <filesystem>
#include <fstream>

using namespace refl;

namespace {

RunConfig config(const std::string& command) {
    RunConfig c;
    c.command = command;
    return c;
}

bool has_lattice(const std::vector<Candidate>& cs, int n, const std::string& sym) {
    for (const auto& c : cs)
        if (c.n == n && c.D->symbol().str() == sym) return true;
    return false;
}

std::string temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("refl_classify_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("bounds report") {
    const Report r = cmd_bounds(config("bounds"));
    CHECK(r.passed());
    const auto& rows = r.doc["results"];
    REQUIRE(rows.size() == 12);
    const std::vector<std::vector<int>> want = {
        {1, 23, 35, 42}, {1, 11, 15, 0}, {1, 7, 6, 0}, {1, 5, 6, 0}, {1, 3, 0, 0}, {1, 3, 0, 0},
        {1, 2, 0, 0},    {1, 2, 0, 0},   {1, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0},
    };
    for (size_t i = 0; i < 12; ++i) {
        CHECK(rows[i]["k"] == -static_cast<int>(i) - 1);
        for (size_t w = 0; w < 4; ++w) {
            const auto& v = rows[i]["bounds"][w];
            if (want[i][w] == 0)
                CHECK(v.is_null());
            else
                CHECK(v == want[i][w]);
        }
    }
    const std::string t = r.render("table");
    CHECK(t.find("1\t23\t11\t7\t5\t3\t3\t2\t2\t-\t-\t-\t-") != std::string::npos);
    CHECK(t.find("3\t42\t-\t-") != std::string::npos);
    CHECK_THROWS_AS(r.render("xml"), Error);
}

TEST_CASE("candidate enumeration") {
    const auto all = enumerate_candidates();
    CHECK(all.size() == 194);
    CHECK(has_lattice(all, 26, "1"));
    CHECK(has_lattice(all, 10, "2_II^+10"));
    CHECK(has_lattice(all, 4, "23^-3"));
    for (const auto& c : all) {
        CHECK(c.valid());
        if (c.n == 26) CHECK(c.level() == 1);
        CHECK(c.n >= 4);
        CHECK(1 - c.n / 2 >= -12);
    }
    for (size_t i = 1; i < all.size(); ++i) {
        const auto& a = all[i - 1];
        const auto& b = all[i];
        const bool ordered = a.n < b.n || (a.n == b.n && (a.level() < b.level() || (a.level() == b.level() && a.D->symbol().str() < b.D->symbol().str())));
        CHECK(ordered);
    }
    for (const auto& row : read_table1(default_data_dir())) {
        CAPTURE(row.disc);
        CHECK(has_lattice(all, row.n, row.disc));
    }
    for (const char* f : {"/solutions_final.txt", "/solutions_long.txt"})
        for (const auto& row : read_expected(default_data_dir() + f)) CHECK(has_lattice(all, row.n, row.disc));
    CHECK(enumerate_candidates(4, 6).size() == 2);
    CHECK(enumerate_candidates(26, 2).empty());
}

TEST_CASE("gauss milgram on small candidates") {
    for (const auto& c : enumerate_candidates(4)) CHECK(gauss_milgram_holds(*c.D));
}

TEST_CASE("bundled tables parse") {
    CHECK(read_table1(default_data_dir()).size() == 40);
    CHECK(read_expected(default_data_dir() + "/solutions_final.txt").size() == 13);
    CHECK(read_expected(default_data_dir() + "/solutions_long.txt").size() == 31);
    CHECK(read_pairing_etas(default_data_dir()).size() == 17);
    const auto fin = read_expected(default_data_dir() + "/solutions_final.txt");
    CHECK(fin[1].disc == "2_II^+6");
    CHECK(fin[1].c == CVector{{1, 0}, {2, 4}});
}

TEST_CASE("missing and malformed data") {
    const std::string dir = temp_dir("bad");
    RunConfig c = config("verify-table1");
    c.data_dir = dir;
    try {
        cmd_verify_table1(c);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::data_error);
    }
    std::ofstream(dir + "/table1.txt") << "4 | 23^-3 | x | 1^-1 23^-1\n";
    CHECK_THROWS_AS(read_table1(dir), Error);
    std::ofstream(dir + "/table1.txt") << "4 | 23^-3 | 1\n";
    CHECK_THROWS_AS(read_table1(dir), Error);
}

TEST_CASE("table 1 rows") {
    auto r = verify_table1_row({4, "23^-3", 1, "1^-1 23^-1"}, 2);
    CHECK(r.ok());
    CHECK(r.f0 == "2");
    auto bad = verify_table1_row({4, "23^-3", 2, "1^-1 23^-1"}, 2);
    CHECK_FALSE(bad.ok());
    CHECK(bad.weight);
    CHECK(bad.character);
    CHECK_FALSE(bad.strong);
    auto wrong = verify_table1_row({6, "23^-3", 1, "1^-1 23^-1"}, 2);
    CHECK_FALSE(wrong.weight);
}

TEST_CASE("precision floor") {
    RunConfig c = config("verify-table1");
    c.precision = 0;
    try {
        run(c);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_input);
    }
}

TEST_CASE("reports are deterministic across job counts") {
    RunConfig c = config("verify-table1");
    c.n = 4;
    c.jobs = 1;
    const std::string a = run(c).render("json");
    c.jobs = 4;
    const std::string b = run(c).render("json");
    CHECK(a == b);
    CHECK(run(c).render("json") == b);
    RunConfig o = config("obstruct");
    o.n = 6;
    o.N = 6;
    o.jobs = 3;
    const std::string x = run(o).render("table");
    o.jobs = 1;
    CHECK(run(o).render("table") == x);
}

TEST_CASE("verify table 1 for n = 6") {
    RunConfig c = config("verify-table1");
    c.n = 6;
    const Report r = run(c);
    CHECK(r.passed());
    CHECK(r.doc["results"].size() == 13);
    CHECK(r.doc["schema"] == "refl-report/1");
}

TEST_CASE("obstruct reports") {
    RunConfig c = config("obstruct");
    c.n = 12;
    c.N = 3;
    const Report r = run(c);
    CHECK(r.passed());
    CHECK(r.doc["results"].size() == 5);
    for (const auto& item : r.doc["results"]) CHECK(item["solutions"].empty());

    RunConfig s = config("obstruct");
    s.symbol = "II_{8,2}(3^-7)";
    const Report r2 = run(s);
    CHECK(r2.passed());
    bool found = false;
    for (const auto& v : r2.doc["results"][0]["non_symmetric"]) found = found || v == "c_1=0, c_3=54";
    CHECK(found);

    s.symbol = "3^-6";
    s.n = 8;
    CHECK_THROWS_AS(run(s), Error);
}

TEST_CASE("obstruct flags a wrong expectation") {
    const std::string dir = temp_dir("tampered");
    std::filesystem::copy(default_data_dir(), dir, std::filesystem::copy_options::recursive);
    std::ofstream(dir + "/solutions_final.txt") << "10 | 2_II^+6 | 1:0 2:6\n";
    std::ofstream(dir + "/solutions_long.txt") << "";
    RunConfig c = config("obstruct");
    c.symbol = "II_{10,2}(2_II^+6)";
    c.data_dir = dir;
    const Report r = run(c);
    CHECK_FALSE(r.passed());
    CHECK(r.render("table").find("FAIL non-symmetric solutions II_{10,2}(2_II^+6)") != std::string::npos);
}

TEST_CASE("lift, pair and eta reports") {
    RunConfig l = config("lift");
    l.symbol = "23^-3";
    l.eta = "1^-1 23^-1";
    const Report lr = run(l);
    CHECK(lr.passed());
    CHECK(lr.doc["results"][0]["reflectivity"] == "strongly reflective");
    CHECK(lr.doc["results"][0]["F0_constant"] == "2");

    RunConfig p = config("pair");
    p.symbol = "2_II^-4 3^-3";
    p.n = 4;
    p.eta = "1^3 3^3";
    const Report pr = run(p);
    CHECK(pr.passed());
    CHECK(pr.doc["checks"].size() == 2);
    p.eta = "1^8";
    CHECK_THROWS_AS(run(p), Error);

    RunConfig e = config("eta");
    e.eta = "1^6 2^3 3^2 6^-1";
    const Report er = run(e);
    CHECK(er.passed());
    const auto& cusps = er.doc["results"][0]["gamma1_cusps"];
    REQUIRE(cusps.size() == 4);
    CHECK(cusps[2] == "(1,1;3,4) width 2: -1/2 * (1 * q^(1/2) - 3 * q^(1) - 6 * q^(3/2) + O(q^(2)))");
    RunConfig e2 = config("eta");
    e2.eta = "1^-1 23^-1";
    e2.symbol = "23^-3";
    CHECK(run(e2).passed());
    e2.symbol = "23^+2";
    CHECK_FALSE(run(e2).passed());
}

TEST_CASE("unknown command") { CHECK_THROWS_AS(run(config("plot")), Error); }

}  // TEST_SUITE
