// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fpart/canonical_maps.hpp"
#include "fpart/coding.hpp"
#include "fpart/enumerate.hpp"
#include "fpart/ramsey.hpp"
#include "fpart/suites.hpp"

using namespace fpart;

namespace {

// wall-clock limits per criterion, in seconds
constexpr double kBijectionLimit = 10;
constexpr double kFactLimit = 5 * 60;
constexpr double kRamseyLimit = 10 * 60;
constexpr double kCodingLimit = 15 * 60;

struct Check {
    std::ostringstream detail;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::string config_path(const std::string& name) { return std::string(FPART_CONFIG_DIR) + "/" + name; }

SuiteParams sweep(int a, std::vector<int> m, std::vector<int> l, const std::string& mode, std::uint64_t samples = 1000) {
    SuiteParams p;
    p.a = a;
    p.m = std::move(m);
    p.l = std::move(l);
    p.mode = mode;
    p.samples = samples;
    p.seed = 20240601;
    p.threads = 4;
    return p;
}

std::uint64_t counter(const RunReport& r, const char* key) {
    return r.counters.contains(key) ? r.counters.at(key).get<std::uint64_t>() : 0;
}

std::string brief(const RunReport& r) {
    return r.suite + " " + r.command.dump() + " -> " + to_string(r.outcome);
}

// ---------------------------------------------------------------------------

void bijection(Check& c) {
    for (int n = 1; n <= 3; ++n) {
        SuiteParams p;
        p.a = 4;
        p.n = n;
        const auto r = run_suite("bijection", p);
        const std::uint64_t expected = std::uint64_t{1} << (4 * n);
        c.require(r.outcome == Outcome::pass, brief(r));
        c.require(counter(r, "round_trips") == expected, "round trips for n=" + std::to_string(n));
        const auto& id = r.counters.at("identity");
        c.require(id.at("(2^a)^n") == id.at("(2^n)^a") && id.at("enumerated") == id.at("(2^a)^n"),
                  "count identity for n=" + std::to_string(n));
        c.detail << " n=" << n << ":" << counter(r, "round_trips");
    }
}

void fact_laws(Check& c) {
    for (int l : {2, 3}) {
        const auto r = run_suite("fact00", sweep(6, {1}, {l}, "exhaustive"));
        c.require(r.outcome == Outcome::pass, brief(r));
        c.require(counter(r, "families") == 64, "64 families");
        c.require(counter(r, "pairs_sampled") >= 1000, "1000 sampled pairs");
        c.detail << " m=(1),l=(" << l << "):" << counter(r, "checks") << " checks";
    }
    const auto r = run_suite("fact00", sweep(6, {2}, {3}, "exhaustive"));
    c.require(r.outcome == Outcome::pass, brief(r));
    c.require(counter(r, "families") == 32768, "2^15 families");
    c.require(counter(r, "pairs_sampled") >= 1000, "1000 sampled pairs");
    c.detail << " m=(2),l=(3):" << counter(r, "checks") << " checks";
}

void nilpotency(Check& c) {
    struct Case {
        std::vector<int> m, l;
        int a;
        std::string mode;
    };
    for (const auto& k : {Case{{1}, {2}, 6, "exhaustive"}, Case{{1}, {3}, 6, "exhaustive"},
                          Case{{1, 1}, {2, 2}, 8, "random"}}) {
        const auto scan = feasibility_scan(SizeProfile(k.m), SizeProfile(k.l), k.a, sweep(0, k.m, k.l, k.mode));
        const bool found = scan.counters.at("a_min").is_number();
        c.require(found && scan.counters.at("a_min").get<int>() <= k.a,
                  "feasibility oracle for a=" + std::to_string(k.a) + ": " + scan.counters.at("a_min").dump());
        const auto r = run_suite("nilpotency", sweep(k.a, k.m, k.l, k.mode));
        c.require(r.outcome == Outcome::pass, brief(r));
        c.require(counter(r, "families") >= (k.mode == "random" ? 1000u : 64u), "family count");
        c.detail << " " << SizeProfile(k.m).to_string() << SizeProfile(k.l).to_string() << " A_min="
                 << scan.counters.at("a_min").dump() << " families=" << counter(r, "families");
    }
    const auto cyc = run_suite("nilpotency", sweep(2, {1}, {3}, "exhaustive"));
    c.require(cyc.outcome == Outcome::violation && counter(cyc, "cycles") > 0, "cycle at a=2");
    c.require(!cyc.witnesses.empty() && cyc.witnesses[0].contains("cycle"), "cycle witness");
    c.detail << " a=2 cycles=" << counter(cyc, "cycles");
}

void ramsey(Check& c) {
    SuiteParams p;
    p.j = {2};
    p.c = 2;
    p.r = 3;
    p.threads = 4;
    const auto r33 = run_suite("ramsey", p);
    c.require(r33.outcome == Outcome::pass, brief(r33));
    c.require(r33.counters.at("min_N") == 6, "R(3,3) = 6");
    c.require(r33.counters.contains("certificate") && r33.counters.at("certificate").at("sizes") == nlohmann::json{5},
              "N=5 certificate");
    c.detail << " min_N(2,2,3)=" << r33.counters.at("min_N");

    // the same value without pruning
    SearchOptions plain;
    plain.prune = false;
    const RamseyQuery q33{{2}, 2, 3};
    c.require(has_property({6}, q33, plain).outcome == PropertyResult::Outcome::holds, "unpruned N=6");
    c.require(has_property({5}, q33, plain).outcome == PropertyResult::Outcome::fails, "unpruned N=5");

    int pigeon = 0;
    for (int colors = 1; colors <= 3; ++colors) {
        for (int r = 1; r <= 4; ++r) {
            SuiteParams q;
            q.j = {1};
            q.c = colors;
            q.r = r;
            const auto rep = run_suite("ramsey", q);
            const int want = colors * (r - 1) + 1;
            c.require(rep.outcome == Outcome::pass && rep.counters.at("min_N") == want,
                      "pigeonhole c=" + std::to_string(colors) + " r=" + std::to_string(r));
            ++pigeon;
        }
    }
    c.detail << " pigeonhole=" << pigeon << "/12";

    int validated = 0, skipped = 0;
    const std::vector<std::vector<int>> shapes{{1}, {2}, {3}, {1, 1}, {2, 1}, {1, 1, 1}, {0, 1}};
    for (const auto& j : shapes) {
        for (int colors = 1; colors <= 3; ++colors) {
            for (int r = 0; r <= 4; ++r) {
                const RamseyQuery q{j, colors, r};
                BigInt ub;
                try {
                    ub = upper_bound_R(q);
                } catch (const Infeasible&) {
                    ++skipped;
                    continue;
                }
                if (ub > 64) {
                    ++skipped;
                    continue;
                }
                const auto res = has_property(std::vector<int>(j.size(), static_cast<int>(ub)), q);
                if (res.outcome == PropertyResult::Outcome::infeasible) {
                    ++skipped;
                    continue;
                }
                c.require(res.outcome == PropertyResult::Outcome::holds, "bound for " + q.to_string());
                ++validated;
            }
        }
    }
    c.detail << " bounds validated=" << validated << " (over budget " << skipped << ")";
}

void coding(Check& c) {
    SuiteParams p;
    p.seed = 20240601;
    p.threads = 4;
    p.materialize = true;

    p.config = config_path("compact_a12.json");
    p.mode = "exhaustive";
    const auto small = run_suite("coding", p);
    c.require(small.outcome == Outcome::pass, brief(small));
    c.require(counter(small, "families") == 4096 && counter(small, "materialized") == 4096, "2^12 materialized families");

    p.mode = "random";
    p.samples = 100;
    p.config = config_path("two_slot_a23.json");
    const auto two_slot = run_suite("coding", p);
    c.require(two_slot.outcome == Outcome::pass, brief(two_slot));
    c.require(counter(two_slot, "families") == 100, "100 two-slot families");

    p.config = config_path("two_arity_a13.json");
    const auto two_arity = run_suite("coding", p);
    c.require(two_arity.outcome == Outcome::pass, brief(two_arity));
    c.require(counter(two_arity, "families") == 100, "100 arity-2 families");

    c.detail << " compact=" << counter(small, "families") << " two_slot=" << counter(two_slot, "families")
             << " (symbolic " << counter(two_slot, "symbolic_only") << ") two_arity=" << counter(two_arity, "families")
             << " (materialized " << counter(two_arity, "materialized") << ")";
}

void paper_signature(Check& c) {
    const auto sig = SizeSignature::paper();
    c.require(block_sizes(sig, 0, {1}, 0, 1) == SizeProfile({10}), "k=0 gives 10");
    c.require(block_sizes(sig, 0, {1}, 1, 1) == SizeProfile({70}), "k=1 gives 70");
    std::vector<SlotKey> domain;
    for (int j = 0; j <= 2; ++j) {
        for (int m1 = 0; m1 <= 2; ++m1) {
            domain.push_back({j, {m1}});
            for (int m2 = 0; m2 <= 2; ++m2) domain.push_back({j, {m1, m2}});
        }
    }
    const auto bad = sig.contract_violations(domain);
    c.require(bad.empty(), bad.empty() ? "" : bad.front());
    c.detail << " slots=" << domain.size();
}

void surjectivity(Check& c) {
    int cases = 0;
    for (int a = 0; a <= 5; ++a) {
        for (int n = 0; n <= 2; ++n) {
            std::set<FinitaryPartition> image;
            for (const auto& t : enum_O_n(a, n)) {
                const auto img = tuple_to_partition(a, t);
                if (img.lands_in_B_n) image.insert(img.partition);
            }
            const auto target = enum_B_n(a, n).collect();
            c.require(image == std::set<FinitaryPartition>(target.begin(), target.end()),
                      "a=" + std::to_string(a) + " n=" + std::to_string(n));
            ++cases;
        }
    }
    c.detail << " cases=" << cases;
}

void symmetry(Check& c) {
    const auto r = run_suite("symmetry", SuiteParams{});
    c.require(r.outcome == Outcome::pass, brief(r));
    c.require(counter(r, "orbit_pairs") > 0 && counter(r, "transposition_checks") > 0 && counter(r, "fibers") > 0 &&
                  counter(r, "chains") > 0,
              "every part ran");
    c.detail << " orbit_pairs=" << counter(r, "orbit_pairs") << " transpositions=" << counter(r, "transposition_checks")
             << " fibers=" << counter(r, "fibers") << " preceq_pairs=" << counter(r, "preceq_pairs")
             << " chains=" << counter(r, "chains");
}

int blocks_of_size_two_or_more(int j, int n) {
    int count = 0;
    for (const auto& p : enum_partitions(j)) {
        bool ok = static_cast<int>(p.blocks().size()) == n;
        for (auto b : p.blocks()) ok = ok && b.size() >= 2;
        count += ok;
    }
    return count;
}

void counting(Check& c) {
    int rows = 0;
    for (const auto& row : emit_counts("B_n", 7, 3)) {
        c.require(row.match(), "B_n a=" + std::to_string(row.a) + " n=" + std::to_string(row.n));
        ++rows;
    }
    const struct {
        int j, n, value;
    } pinned[] = {{4, 2, 3}, {5, 2, 10}, {3, 2, 0}};
    for (const auto& s : pinned) {
        c.require(assoc_stirling(s.j, s.n) == s.value && blocks_of_size_two_or_more(s.j, s.n) == s.value,
                  "assoc_stirling(" + std::to_string(s.j) + "," + std::to_string(s.n) + ")");
    }
    c.detail << " rows=" << rows << " stirling pinned=3";
}

void determinism(Check& c) {
    std::vector<std::pair<std::string, SuiteParams>> runs;
    runs.emplace_back("fact00", sweep(6, {2}, {3}, "random", 400));
    runs.emplace_back("nilpotency", sweep(8, {1, 1}, {2, 2}, "random", 300));
    SuiteParams bij;
    bij.a = 4;
    bij.n = 2;
    runs.emplace_back("bijection", bij);
    SuiteParams code;
    code.config = config_path("compact_a12.json");
    code.mode = "random";
    code.samples = 40;
    code.materialize = true;
    runs.emplace_back("coding", code);
    SuiteParams ram;
    ram.j = {1, 1};
    ram.c = 2;
    ram.r = 2;
    runs.emplace_back("ramsey", ram);
    for (auto& [name, p] : runs) {
        p.threads = 1;
        const auto a = run_suite(name, p).to_json(false).dump();
        const auto b = run_suite(name, p).to_json(false).dump();
        p.threads = 4;
        const auto d = run_suite(name, p).to_json(false).dump();
        c.require(a == b, name + " repeat");
        c.require(a == d, name + " serial vs parallel");
    }
    c.detail << " suites=" << runs.size();
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit;
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "bijection round trip", kBijectionLimit, bijection},
        {2, "operator laws", kFactLimit, fact_laws},
        {3, "nilpotency", 0, nilpotency},
        {4, "ramsey", kRamseyLimit, ramsey},
        {5, "coding round trip", kCodingLimit, coding},
        {6, "paper signature", 0, paper_signature},
        {7, "surjectivity", 0, surjectivity},
        {8, "symmetry", 0, symmetry},
        {9, "counting oracles", 0, counting},
        {10, "determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (cr.limit > 0 && secs >= cr.limit) {
            c.ok = false;
            c.detail << " [over the " << cr.limit << " s limit]";
        }
        failed += !c.ok;
        std::printf("%s criterion %d (%s):%s [%.2f s]\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name, c.detail.str().c_str(),
                    secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
