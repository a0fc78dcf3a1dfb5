#pragma once

// Property suites with machine-readable reports.
//
// A report is a pure function of the suite name and its parameters, apart from
// the wall-time field; the thread count never changes it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpart/core.hpp"

namespace fpart {

/// Invalid suite parameters (exit code 2, like a bad coding config).
class ParamError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SuiteParams {
    std::optional<int> a;
    std::optional<int> n;
    std::vector<int> m;
    std::vector<int> l;
    std::string mode;  // "exhaustive" or "random"; empty picks per suite
    std::uint64_t samples = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    // ramsey
    std::vector<int> j;
    std::optional<int> c;
    std::optional<int> r;
    std::optional<int> N;
    std::optional<int> cap;
    BigInt max_colorings = BigInt(1) << 26;
    bool prune = true;
    // coding
    std::optional<std::string> config;
    bool materialize = false;

    /// Canonical echo of the parameters that influence the result (threads excluded).
    nlohmann::json echo() const;
};

enum class Outcome { pass, violation, infeasible };
const char* to_string(Outcome o);

struct RunReport {
    std::string suite;
    nlohmann::json command;
    std::string config_digest;
    Outcome outcome = Outcome::pass;
    nlohmann::json counters = nlohmann::json::object();
    nlohmann::json witnesses = nlohmann::json::array();
    nlohmann::json warnings = nlohmann::json::array();
    double wall_time_ms = 0;

    nlohmann::json to_json(bool with_time = true) const;
    /// 0 pass, 1 violation, 3 infeasible.
    int exit_code() const;
};

/// name in {fact00, nilpotency, bijection, ramsey, coding, symmetry}.
/// Throws ParamError for unknown suites or invalid parameters, ConfigError for bad coding configs.
RunReport run_suite(const std::string& name, const SuiteParams& params);

/// Least ground sizes at which delta_l^(sum(m)+1) vanishes on every tested family, scanning
/// a = sum(l) - 1 .. a_max (never below 1). Reported as suite "feasibility".
RunReport feasibility_scan(const SizeProfile& m, const SizeProfile& l, int a_max, const SuiteParams& params);

struct CountRow {
    std::string space;
    int a = 0;
    int n = 0;
    BigInt formula = 0;
    std::optional<BigInt> enumerated;  // empty when over the enumeration budget
    bool match() const { return enumerated && *enumerated == formula; }
};

/// space in {B_n, O_n}; every a in [0, a_max] and n in [0, n_max].
std::vector<CountRow> emit_counts(const std::string& space, int a_max, int n_max,
                                  const BigInt& budget = 2'000'000);
nlohmann::json counts_json(const std::vector<CountRow>& rows);
std::string counts_csv(const std::vector<CountRow>& rows);

/// Round-trip transcript for one seeded family (or the empty family) over a config file.
nlohmann::json demo_coding(const std::string& config_path, std::uint64_t seed, bool empty_family,
                           bool materialize);

}  // namespace fpart
