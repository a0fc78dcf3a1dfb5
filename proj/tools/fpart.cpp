#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fpart/canonical_maps.hpp"
#include "fpart/coding.hpp"
#include "fpart/enumerate.hpp"
#include "fpart/json_io.hpp"
#include "fpart/parallel.hpp"
#include "fpart/ramsey.hpp"
#include "fpart/suites.hpp"
#include "fpart/symmetry.hpp"

using namespace fpart;

namespace {

struct Common {
    SuiteParams p;
    std::string max_colorings = "67108864";
    bool no_prune = false;
    bool no_timing = false;
    std::string format = "json";
};

void add_sweep_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--a", c.p.a, "ground-set size");
    cmd->add_option("--n", c.p.n, "arity");
    cmd->add_option("--m", c.p.m, "lower size profile (repeatable)");
    cmd->add_option("--l", c.p.l, "upper size profile (repeatable)");
    cmd->add_option("--mode", c.p.mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
    cmd->add_option("--samples", c.p.samples, "random samples");
    cmd->add_option("--seed", c.p.seed, "base seed");
    cmd->add_option("--threads", c.p.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--no-timing", c.no_timing, "omit wall time from the report");
}

void add_ramsey_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--j", c.p.j, "exponent per coordinate (repeatable)")->required();
    cmd->add_option("--c", c.p.c, "number of colors")->required();
    cmd->add_option("--r", c.p.r, "target size")->required();
    cmd->add_option("--max-colorings", c.max_colorings, "enumeration budget");
    cmd->add_flag("--no-prune", c.no_prune, "plain enumeration of every coloring");
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

int report(const RunReport& r, const Common& c) {
    print(r.to_json(!c.no_timing));
    return r.exit_code();
}

void finalize(Common& c) {
    try {
        c.p.max_colorings = BigInt(c.max_colorings);
    } catch (const std::exception&) {
        throw ParamError("--max-colorings must be a non-negative integer");
    }
    c.p.prune = !c.no_prune;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParamError("cannot open " + path);
    return json::parse(in);
}

CodingConfig load_config(const std::string& path) { return CodingConfig::from_json(read_file(path)); }

std::vector<int> parse_ints(const std::string& s) {
    if (s.empty()) return {};
    const auto j = json::parse(s[0] == '[' ? s : "[" + s + "]");
    return j.get<std::vector<int>>();
}

Subset parse_subset(const std::string& s) { return subset_from_json(json(parse_ints(s))); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fpart: finitary partitions, the Lauchli operator calculus and the partition coding"};
    app.require_subcommand(1);
    Common c;
    c.p.threads = default_threads();
    int rc = 0;

    // enum
    auto* en = app.add_subcommand("enum", "list a combinatorial space as JSON lines");
    std::string space;
    int k = 0;
    std::size_t limit = 1000;
    bool injective = false;
    en->add_option("--space", space, "subsets, k_subsets, sequences, tuples, O_n, partitions, B_n")
        ->required()
        ->check(CLI::IsMember({"subsets", "k_subsets", "sequences", "tuples", "O_n", "partitions", "B_n"}));
    en->add_option("--a", c.p.a, "ground-set size")->required();
    en->add_option("--n", c.p.n, "arity");
    en->add_option("--k", k, "subset size or sequence length");
    en->add_option("--m", c.p.m, "size profile for tuples");
    en->add_flag("--injective", injective, "injective sequences only");
    en->add_option("--limit", limit, "maximum number of items");
    en->callback([&] {
        const int a = *c.p.a;
        auto emit = [&](auto stream) {
            for (const auto& x : stream.collect(limit)) std::cout << json_of(x).dump() << '\n';
        };
        if (space == "subsets") emit(enum_subsets(a));
        else if (space == "k_subsets") emit(enum_k_subsets(a, k));
        else if (space == "sequences") emit(enum_sequences(a, k, injective));
        else if (space == "tuples") emit(enum_disjoint_tuples(a, SizeProfile(c.p.m)));
        else if (space == "O_n") emit(enum_O_n(a, c.p.n.value_or(1)));
        else if (space == "partitions") emit(enum_partitions(a));
        else emit(enum_B_n(a, c.p.n.value_or(1)));
    });

    // count
    auto* cnt = app.add_subcommand("count", "formula counts against enumeration for every a <= --a, n <= --n");
    std::string count_space = "B_n";
    cnt->add_option("--space", count_space, "B_n or O_n")->check(CLI::IsMember({"B_n", "O_n"}));
    cnt->add_option("--a", c.p.a, "largest ground-set size")->required();
    cnt->add_option("--n", c.p.n, "largest arity")->required();
    cnt->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cnt->callback([&] {
        const auto rows = emit_counts(count_space, *c.p.a, *c.p.n);
        if (c.format == "csv") std::cout << counts_csv(rows);
        else print(counts_json(rows));
        for (const auto& r : rows) {
            if (r.enumerated && !r.match()) rc = 1;
        }
    });

    // verify
    auto* ver = app.add_subcommand("verify", "run a property suite");
    ver->require_subcommand(1);
    for (const char* name : {"fact00", "nilpotency", "bijection", "ramsey", "coding", "symmetry"}) {
        auto* s = ver->add_subcommand(name);
        add_sweep_flags(s, c);
        if (std::string(name) == "ramsey") {
            add_ramsey_flags(s, c);
            s->add_option("--N", c.p.N, "check a single grid size instead of searching");
            s->add_option("--cap", c.p.cap, "largest N searched");
        }
        if (std::string(name) == "coding") {
            s->add_option("--config", c.p.config, "coding config file")->required();
            s->add_flag("--materialize", c.p.materialize, "also decode from the materialized partitions");
        }
        s->callback([&c, &rc, s] {
            finalize(c);
            rc = report(run_suite(s->get_name(), c.p), c);
        });
    }

    // feasibility
    auto* fea = app.add_subcommand("feasibility", "scan ground sizes for the nilpotency bound");
    add_sweep_flags(fea, c);
    fea->callback([&] {
        if (!c.p.a) throw ParamError("missing --a (largest ground size scanned)");
        rc = report(feasibility_scan(SizeProfile(c.p.m), SizeProfile(c.p.l), *c.p.a, c.p), c);
    });

    // ramsey
    auto* ram = app.add_subcommand("ramsey", "polarized Ramsey property");
    ram->require_subcommand(1);
    auto* rcheck = ram->add_subcommand("check", "exhaustive check at one grid size");
    add_ramsey_flags(rcheck, c);
    rcheck->add_option("--N", c.p.N, "size of every S_i")->required();
    auto* rsearch = ram->add_subcommand("search", "least N with the property");
    add_ramsey_flags(rsearch, c);
    rsearch->add_option("--cap", c.p.cap, "largest N searched");
    auto* rbound = ram->add_subcommand("bound", "constructive upper bound");
    add_ramsey_flags(rbound, c);
    for (auto* s : {rcheck, rsearch}) {
        s->add_option("--seed", c.p.seed, "recorded in the report");
        s->add_option("--threads", c.p.threads, "worker threads")->check(CLI::PositiveNumber);
        s->add_flag("--no-timing", c.no_timing, "omit wall time from the report");
        s->callback([&] {
            finalize(c);
            rc = report(run_suite("ramsey", c.p), c);
        });
    }
    rbound->callback([&] {
        RamseyQuery q{c.p.j, *c.p.c, *c.p.r};
        q.validate();
        print({{"query", q.to_string()}, {"upper_bound", json_of(upper_bound_R(q))}});
    });

    // code
    auto* code = app.add_subcommand("code", "the partition coding");
    code->require_subcommand(1);
    std::string config, input;
    bool empty_family = false;
    auto* cenc = code->add_subcommand("encode", "family -> code book (and partitions)");
    auto* cdec = code->add_subcommand("decode", "code book or partitions -> family");
    auto* crt = code->add_subcommand("roundtrip", "transcript of encode and decode for one family");
    for (auto* s : {cenc, cdec, crt}) {
        s->add_option("--config", config, "coding config file")->required();
        s->add_flag("--materialize", c.p.materialize, "work with the materialized partition set");
    }
    cenc->add_option("--input", input, "family JSON; a seeded random family when omitted");
    cenc->add_option("--seed", c.p.seed, "seed for the random family");
    cdec->add_option("--input", input, "book JSON, or an object {\"partitions\": [...]}")->required();
    crt->add_option("--seed", c.p.seed, "seed for the random family");
    crt->add_flag("--empty", empty_family, "use the empty family");
    cenc->callback([&] {
        const auto cfg = load_config(config);
        IndexedFamily x;
        if (!input.empty()) {
            x = family_from_json(read_file(input));
        } else {
            const auto demo = demo_coding(config, c.p.seed, false, false);
            x = family_from_json(demo.at("family"));
        }
        const auto book = encode(x, cfg);
        json out{{"family", json_of(normalized(x))}, {"book", json_of(book)}};
        if (c.p.materialize) out["partitions"] = json_of(materialize(book, cfg));
        print(out);
    });
    cdec->callback([&] {
        const auto cfg = load_config(config);
        const auto in = read_file(input);
        DecodeResult res;
        if (in.is_object() && in.contains("partitions")) {
            std::set<FinitaryPartition> h;
            for (const auto& p : in.at("partitions")) h.insert(partition_from_json(cfg.a, p));
            res = decode(h, cfg);
        } else {
            res = decode(book_from_json(in.is_object() ? in.at("book") : in, cfg), cfg);
        }
        print({{"family", json_of(res.family)}, {"problems", res.problems}});
        if (!res.problems.empty()) rc = 1;
    });
    crt->callback([&] {
        const auto t = demo_coding(config, c.p.seed, empty_family, c.p.materialize);
        print(t);
        rc = t.at("verdict") == "pass" ? 0 : 1;
    });

    // symmetry
    auto* sym = app.add_subcommand("symmetry", "permutation toolkit");
    sym->require_subcommand(1);
    std::string base_s, seq_s, e_s, object_s;
    auto* sorb = sym->add_subcommand("orbits", "even and odd orbits of an injective sequence over B");
    sorb->add_option("--n", c.p.n, "sequences have length n+1")->required();
    sorb->add_option("--B", base_s, "base set of size n+2, e.g. 0,1,2 (default 0..n+1)");
    sorb->add_option("--seed", seq_s, "the sequence s, e.g. 0,1 (default the first n+1 elements of B)");
    sorb->callback([&] {
        const int n = *c.p.n;
        const Subset base = base_s.empty() ? Subset::prefix(n + 2) : parse_subset(base_s);
        std::vector<int> s = seq_s.empty() ? base.elements() : parse_ints(seq_s);
        if (seq_s.empty()) s.resize(std::min<std::size_t>(s.size(), n + 1));
        const auto op = even_odd_orbits(base, ElementSequence(s, true));
        print({{"B", json_of(base)}, {"seed", s}, {"xi", json_of(op.xi)}, {"theta", json_of(op.theta)}});
    });
    auto* ssup = sym->add_subcommand("support", "does E support a partition");
    ssup->add_option("--a", c.p.a, "ground-set size")->required();
    ssup->add_option("--E", e_s, "candidate support, e.g. 0,3");
    ssup->add_option("--P", object_s, "partition as JSON blocks")->required();
    ssup->callback([&] {
        const auto part = partition_from_json(*c.p.a, json::parse(object_s));
        const Subset e = parse_subset(e_s);
        print({{"partition", json_of(part)}, {"E", json_of(e)}, {"supports", is_support(*c.p.a, e, part)}});
    });
    auto* sfib = sym->add_subcommand("fiber", "partitions Q in B_n(A) with Q_E = P_E");
    sfib->add_option("--a", c.p.a, "ground-set size")->required();
    sfib->add_option("--n", c.p.n, "arity")->required();
    sfib->add_option("--E", e_s, "the set E");
    sfib->add_option("--P", object_s, "partition as JSON blocks")->required();
    sfib->callback([&] {
        const auto part = partition_from_json(*c.p.a, json::parse(object_s));
        const Subset e = parse_subset(e_s);
        const auto fib = fiber_of(part, e, *c.p.n);
        const BigInt bound = boost::multiprecision::pow(BigInt(*c.p.n + 1), static_cast<unsigned>(e.size()));
        print({{"P_E", json_of(restrict_outside(part, e))}, {"fiber", json_of(fib)}, {"size", fib.size()},
               {"bound", json_of(bound)}});
        if (BigInt(fib.size()) > bound) rc = 1;
    });
    auto* sch = sym->add_subcommand("chain", "longest chain without repetition in B_n(A) under the preorder");
    sch->add_option("--a", c.p.a, "ground-set size")->required();
    sch->add_option("--n", c.p.n, "arity")->required();
    sch->add_option("--E", e_s, "the set E");
    sch->callback([&] {
        const auto r = longest_chain(*c.p.a, *c.p.n, parse_subset(e_s));
        print({{"partitions", r.partitions},
               {"classes", r.classes},
               {"largest_fiber", r.largest_fiber},
               {"longest_chain", r.longest_chain},
               {"distinct_projections", r.longest_strict},
               {"bound", json_of(r.bound)},
               {"witness", json_of(r.witness)}});
        if (BigInt(r.longest_chain) > r.bound) rc = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << " (requires " << e.required() << ")\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
