#include "refl/refl.h"

#include "refl/classify.hpp"
#include "refl/error.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct refl_config {
    refl::RunConfig cfg;
};

struct refl_report {
    refl::Report report;
};

struct refl_discform {
    refl::DiscForm D;
};

namespace {

thread_local std::string last_error;

refl_status status_of(refl::ErrorCode c) {
    switch (c) {
        case refl::ErrorCode::invalid_input:
        case refl::ErrorCode::precision:
        case refl::ErrorCode::domain:
            return REFL_ERR_INPUT;
        case refl::ErrorCode::data_error:
            return REFL_ERR_DATA;
        default:
            return REFL_ERR_INTERNAL;
    }
}

template <class F>
refl_status guarded(F&& f) {
    last_error.clear();
    try {
        return f();
    } catch (const refl::Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return REFL_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return REFL_ERR_INTERNAL;
    }
}

refl_status input_error(const std::string& what) {
    last_error = what;
    return REFL_ERR_INPUT;
}

uint64_t parse_u64(const std::string& key, const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
        refl::fail(refl::ErrorCode::invalid_input, key + ": expected a non-negative integer, got '" + v + "'");
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        refl::fail(refl::ErrorCode::invalid_input, key + ": value out of range");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    const bool neg = !v.empty() && v[0] == '-';
    const uint64_t u = parse_u64(key, neg ? v.substr(1) : v);
    if (u > 1000000) refl::fail(refl::ErrorCode::invalid_input, key + ": value out of range");
    return neg ? -static_cast<int>(u) : static_cast<int>(u);
}

}  // namespace

extern "C" {

const char* refl_version(void) { return "1.0.0"; }

const char* refl_last_error(void) { return last_error.c_str(); }

void refl_string_free(char* s) { std::free(s); }

refl_status refl_config_new(const char* command, refl_config** out) {
    if (!out) return input_error("refl_config_new: null output");
    *out = nullptr;
    if (!command) return input_error("refl_config_new: null command");
    return guarded([&] {
        bool known = false;
        for (const auto& c : refl::command_names()) known = known || c == command;
        if (!known) return input_error(std::string("unknown command '") + command + "'");
        auto* c = new refl_config;
        c->cfg.command = command;
        *out = c;
        return REFL_OK;
    });
}

refl_status refl_config_set(refl_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) return input_error("refl_config_set: null argument");
    return guarded([&] {
        const std::string k = key, v = value;
        auto& c = cfg->cfg;
        if (k == "n")
            c.n = parse_int(k, v);
        else if (k == "N")
            c.N = parse_u64(k, v);
        else if (k == "symbol")
            c.symbol = v;
        else if (k == "eta")
            c.eta = v;
        else if (k == "scale")
            c.scale = v;
        else if (k == "gamma")
            c.gamma = parse_u64(k, v);
        else if (k == "precision")
            c.precision = parse_int(k, v);
        else if (k == "data-dir")
            c.data_dir = v;
        else if (k == "jobs") {
            const uint64_t j = parse_u64(k, v);
            if (j == 0 || j > 1024) return input_error("jobs: expected 1..1024");
            c.jobs = static_cast<unsigned>(j);
        } else
            return input_error("unknown option '" + k + "'");
        return REFL_OK;
    });
}

void refl_config_free(refl_config* cfg) { delete cfg; }

refl_status refl_run(const refl_config* cfg, refl_report** out) {
    if (!cfg || !out) return input_error("refl_run: null argument");
    *out = nullptr;
    return guarded([&] {
        auto* r = new refl_report{refl::run(cfg->cfg)};
        *out = r;
        return r->report.passed() ? REFL_OK : REFL_VERIFY_FAILED;
    });
}

refl_status refl_report_render(const refl_report* r, const char* format, char** text) {
    if (!r || !format || !text) return input_error("refl_report_render: null argument");
    *text = nullptr;
    return guarded([&] {
        const std::string s = r->report.render(format);
        char* buf = static_cast<char*>(std::malloc(s.size() + 1));
        if (!buf) throw std::bad_alloc();
        std::memcpy(buf, s.c_str(), s.size() + 1);
        *text = buf;
        return REFL_OK;
    });
}

int refl_report_passed(const refl_report* r) { return r && r->report.passed() ? 1 : 0; }

void refl_report_free(refl_report* r) { delete r; }

refl_status refl_discform_new(const char* symbol, refl_discform** out) {
    if (!out) return input_error("refl_discform_new: null output");
    *out = nullptr;
    if (!symbol) return input_error("refl_discform_new: null symbol");
    return guarded([&] {
        const std::string s = symbol;
        *out = new refl_discform{refl::DiscForm(s == "1" || s.empty() ? refl::JordanSymbol() : refl::JordanSymbol::parse(s))};
        return REFL_OK;
    });
}

void refl_discform_free(refl_discform* D) { delete D; }

refl_status refl_discform_info(const refl_discform* D, uint64_t* order, uint64_t* level, int* signature) {
    if (!D) return input_error("refl_discform_info: null form");
    if (order) *order = D->D.size();
    if (level) *level = D->D.level();
    if (signature) *signature = D->D.signature();
    last_error.clear();
    return REFL_OK;
}

refl_status refl_discform_count_norm(const refl_discform* D, uint64_t c, int64_t j, uint64_t* out) {
    if (!D || !out) return input_error("refl_discform_count_norm: null argument");
    return guarded([&] {
        if (c == 0 || D->D.level() % c) return input_error("refl_discform_count_norm: c must divide the level");
        *out = D->D.count_norm(c, j);
        return REFL_OK;
    });
}

refl_status refl_discform_gauss_milgram(const refl_discform* D, int* holds) {
    if (!D || !holds) return input_error("refl_discform_gauss_milgram: null argument");
    return guarded([&] {
        *holds = refl::gauss_milgram_holds(D->D) ? 1 : 0;
        return REFL_OK;
    });
}

}  // extern "C"
