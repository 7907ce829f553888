#pragma once

#include "refl/obstruct.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace refl {

inline constexpr const char* report_schema = "refl-report/1";

struct RunConfig {
    std::string command;
    std::optional<int> n;
    std::optional<uint64_t> N;
    std::string symbol;
    std::string eta;
    std::string scale = "1";
    std::optional<uint64_t> gamma;  // element index for pair
    int precision = 2;
    std::string data_dir;  // empty: the bundled data
    unsigned jobs = 1;
};

std::vector<std::string> command_names();

struct Report {
    nlohmann::json doc;
    // "pass" when every check holds
    bool passed() const;
    std::string render(const std::string& format) const;
};

struct Table1Row {
    int n;
    std::string disc;
    long scale;
    std::string eta;
};
std::vector<Table1Row> read_table1(const std::string& data_dir);

struct ExpectedRow {
    int n;
    std::string disc;
    CVector c;
};
std::vector<ExpectedRow> read_expected(const std::string& path);

struct PairingEta {
    int n;
    uint64_t N;
    EtaQuotient h;
};
std::vector<PairingEta> read_pairing_etas(const std::string& data_dir);

// n >= 4 even with 1 - n/2 >= -12, N within the valence bound, signature n - 2 mod 8,
// splitting II_{1,1} + II_{1,1}(N); sorted by n, N, symbol string
std::vector<Candidate> enumerate_candidates(std::optional<int> n = std::nullopt, std::optional<uint64_t> N = std::nullopt);

// sum of e(gamma^2/2) over D equals sqrt|D| e(sign/8)
bool gauss_milgram_holds(const DiscForm& D);

struct Table1Result {
    bool weight = false, character = false, pole_bounds = false, strong = false, constant = false;
    std::string f0;
    std::string error;
    bool ok() const { return error.empty() && weight && character && pole_bounds && strong && constant; }
};
Table1Result verify_table1_row(const Table1Row& r, int precision);

// f(i) for i < count on up to jobs threads, results in index order
void parallel_for(size_t count, unsigned jobs, const std::function<void(size_t)>& f);

Report cmd_bounds(const RunConfig& cfg);
Report cmd_enumerate(const RunConfig& cfg);
Report cmd_verify_table1(const RunConfig& cfg);
Report cmd_lift(const RunConfig& cfg);
Report cmd_obstruct(const RunConfig& cfg);
Report cmd_pair(const RunConfig& cfg);
Report cmd_eta(const RunConfig& cfg);
Report run(const RunConfig& cfg);

}  // namespace refl
