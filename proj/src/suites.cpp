#include "fpart/suites.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "fpart/canonical_maps.hpp"
#include "fpart/coding.hpp"
#include "fpart/enumerate.hpp"
#include "fpart/json_io.hpp"
#include "fpart/lauchli.hpp"
#include "fpart/parallel.hpp"
#include "fpart/ramsey.hpp"
#include "fpart/symmetry.hpp"

namespace fpart {

namespace {

constexpr std::size_t kMaxWitnesses = 5;
constexpr int kMaxExhaustiveBits = 20;
constexpr std::size_t kChunk = 64;

// Counters and witnesses gathered by one task; merged in task order.
struct Tally {
    std::map<std::string, std::uint64_t> counts;
    std::vector<json> witnesses;

    void add(const std::string& key, std::uint64_t v = 1) { counts[key] += v; }
    void witness(json w) {
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
        add("violations");
    }
    void merge(const Tally& other) {
        for (const auto& [k, v] : other.counts) counts[k] += v;
        for (const auto& w : other.witnesses) {
            if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
        }
    }
};

void finish(RunReport& rep, const Tally& t) {
    for (const auto& [k, v] : t.counts) rep.counters[k] = v;
    rep.witnesses = t.witnesses;
    if (t.counts.count("violations")) rep.outcome = Outcome::violation;
}

template <class Fn>
Tally run_chunks(std::uint64_t items, unsigned threads, Fn&& body) {
    const std::size_t tasks = (items + kChunk - 1) / kChunk;
    std::vector<Tally> parts(tasks);
    parallel_for(tasks, threads, [&](std::size_t t) {
        const std::uint64_t lo = t * kChunk;
        const std::uint64_t hi = std::min<std::uint64_t>(items, lo + kChunk);
        for (std::uint64_t i = lo; i < hi; ++i) body(i, parts[t]);
    });
    Tally total;
    for (const auto& p : parts) total.merge(p);
    return total;
}

Bits bits_of_index(std::uint64_t index, std::size_t size) {
    Bits b(size);
    for (std::size_t i = 0; i < size; ++i) {
        if ((index >> i) & 1u) b.set(i);
    }
    return b;
}

Bits random_bits(std::size_t size, std::mt19937_64& rng) {
    Bits b(size);
    for (std::size_t i = 0; i < size; ++i) {
        if (rng() & 1u) b.set(i);
    }
    return b;
}

json difference(const TupleFamily& x, const TupleFamily& y) {
    return {{"only_left", json_of(x - y)}, {"only_right", json_of(y - x)}};
}

SizeProfile profile_param(const std::vector<int>& v, const char* flag) {
    if (v.empty()) throw ParamError(std::string("missing --") + flag);
    for (int x : v) {
        if (x < 0) throw ParamError(std::string("--") + flag + " entries must be non-negative");
    }
    return SizeProfile(v);
}

int require(const std::optional<int>& v, const char* flag) {
    if (!v) throw ParamError(std::string("missing --") + flag);
    return *v;
}

struct OperatorSetup {
    int a;
    SizeProfile m;
    SizeProfile l;
    std::shared_ptr<const TupleSpace> space;
    bool exhaustive;
    std::uint64_t families;
};

OperatorSetup operator_setup(const SuiteParams& p, RunReport& rep) {
    OperatorSetup s{require(p.a, "a"), profile_param(p.m, "m"), profile_param(p.l, "l"), nullptr, false, 0};
    try {
        require_ground_size(s.a);
        ProfilePair pp(s.m, s.l);
        s.space = TupleSpace::get(s.a, s.m);
    } catch (const std::invalid_argument& e) {
        throw ParamError(e.what());
    }
    const auto size = s.space->size();
    const bool fits = size <= static_cast<std::uint64_t>(kMaxExhaustiveBits);
    if (p.mode.empty()) {
        s.exhaustive = fits;
    } else if (p.mode == "exhaustive") {
        s.exhaustive = true;
    } else if (p.mode == "random") {
        s.exhaustive = false;
    } else {
        throw ParamError("--mode must be exhaustive or random");
    }
    if (s.exhaustive && !fits) {
        rep.outcome = Outcome::infeasible;
        rep.counters["required_families"] = json_of(BigInt(1) << size);
        rep.warnings.push_back("exhaustive sweep over 2^" + std::to_string(size) + " families exceeds the 2^" +
                               std::to_string(kMaxExhaustiveBits) + " budget");
        return s;
    }
    s.families = s.exhaustive ? (std::uint64_t{1} << size) : p.samples;
    rep.counters["mode"] = s.exhaustive ? "exhaustive" : "random";
    rep.counters["tuples"] = size;
    if (alpha_has_vacuous_members(s.a, s.m, s.l)) {
        rep.warnings.push_back("some tuples of profile " + s.m.to_string() + " have no extension of profile " +
                               s.l.to_string() + "; alpha accepts them vacuously");
    }
    return s;
}

TupleFamily family_at(const OperatorSetup& s, const SuiteParams& p, std::uint64_t i) {
    if (s.exhaustive) return TupleFamily(s.space, bits_of_index(i, s.space->size()));
    std::mt19937_64 rng(sample_seed(p.seed, i));
    return TupleFamily(s.space, random_bits(s.space->size(), rng));
}

// ---------------------------------------------------------------- fact00

void run_fact00(const SuiteParams& p, RunReport& rep) {
    const auto s = operator_setup(p, rep);
    if (rep.outcome == Outcome::infeasible) return;
    std::vector<int> bumped;
    for (int x : s.l.sizes) bumped.push_back(x + 1);
    const SizeProfile l2(bumped);
    const int K = s.m.total();
    const auto size = s.space->size();

    auto law = [](Tally& t, bool ok, const char* name, json detail) {
        t.add("checks");
        if (!ok) {
            detail["law"] = name;
            t.witness(std::move(detail));
        }
    };

    // Laws on single families; alpha-closed families are kept for the injectivity law.
    std::vector<std::vector<std::pair<Bits, Bits>>> closed((s.families + kChunk - 1) / kChunk);
    Tally tally = run_chunks(s.families, p.threads, [&](std::uint64_t i, Tally& t) {
        const auto x = family_at(s, p, i);
        const auto ax = alpha(x, s.l);
        const auto gx = gamma(x, s.l);
        t.add("families");
        law(t, x.subset_of(ax), "(2) X <= alpha(X)", {{"X", json_of(x)}, {"alpha", json_of(ax)}});
        const auto gax = gamma(ax, s.l);
        law(t, gax == gx, "(4) gamma(alpha(X)) = gamma(X)", {{"X", json_of(x)}, {"difference", difference(gax, gx)}});
        const auto aax = alpha(ax, s.l);
        law(t, aax == ax, "(5) alpha(alpha(X)) = alpha(X)", {{"X", json_of(x)}, {"difference", difference(aax, ax)}});
        const auto ax2 = alpha(x, l2);
        law(t, ax.subset_of(ax2), "(7) alpha_l(X) <= alpha_l'(X)",
            {{"X", json_of(x)}, {"l'", l2.sizes}, {"difference", difference(ax, ax2)}});
        law(t, !(ax2 == x) || ax == x, "(7) alpha_l'(X) = X implies alpha_l(X) = X",
            {{"X", json_of(x)}, {"l'", l2.sizes}, {"difference", difference(ax, x)}});
        auto dk = x;
        for (int k = 0; k <= K; ++k) {
            const auto next = delta(dk, s.l);
            const auto rhs = alpha(dk, s.l) - next;
            law(t, rhs == dk, "(8) delta^k(X) = alpha(delta^k(X)) \\ delta^(k+1)(X)",
                {{"X", json_of(x)}, {"k", k}, {"difference", difference(dk, rhs)}});
            dk = next;
        }
        const auto& y = s.exhaustive ? x : ax;
        if (s.exhaustive ? (ax == x) : true) closed[i / kChunk].emplace_back(gamma(y, s.l).bits(), y.bits());
    });

    // (6): gamma is injective on alpha-closed families.
    std::map<Bits, Bits> seen;
    std::uint64_t closed_count = 0;
    for (const auto& chunk : closed) {
        for (const auto& [g, y] : chunk) {
            auto [it, fresh] = seen.emplace(g, y);
            if (fresh) {
                ++closed_count;
                continue;
            }
            tally.add("checks");
            if (it->second != y) {
                tally.witness({{"law", "(6) gamma is injective on alpha-closed families"},
                               {"X", json_of(TupleFamily(s.space, it->second))},
                               {"Y", json_of(TupleFamily(s.space, y))}});
            }
        }
    }
    tally.add("checks", closed_count);
    tally.add("alpha_closed", closed_count);

    // (1), (3) on pairs X <= Y: every pair when 3^|O_m| fits, plus seeded samples.
    auto pair_laws = [&](const TupleFamily& x, const TupleFamily& y, Tally& t) {
        const auto gx = gamma(x, s.l), gy = gamma(y, s.l);
        law(t, gx.subset_of(gy), "(1) X <= Y implies gamma(X) <= gamma(Y)",
            {{"X", json_of(x)}, {"Y", json_of(y)}, {"difference", difference(gx, gy)}});
        const auto ax = alpha(x, s.l), ay = alpha(y, s.l);
        law(t, ax.subset_of(ay), "(3) X <= Y implies alpha(X) <= alpha(Y)",
            {{"X", json_of(x)}, {"Y", json_of(y)}, {"difference", difference(ax, ay)}});
    };
    BigInt all_pairs = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(size));
    if (s.exhaustive && all_pairs <= (BigInt(1) << kMaxExhaustiveBits)) {
        const auto n_pairs = static_cast<std::uint64_t>(all_pairs);
        tally.merge(run_chunks(n_pairs, p.threads, [&](std::uint64_t i, Tally& t) {
            Bits x(size), y(size);
            for (std::size_t b = 0; b < size; ++b, i /= 3) {
                if (i % 3 == 2) x.set(b);
                if (i % 3 >= 1) y.set(b);
            }
            t.add("pairs_exhaustive");
            pair_laws(TupleFamily(s.space, x), TupleFamily(s.space, y), t);
        }));
    }
    tally.merge(run_chunks(p.samples, p.threads, [&](std::uint64_t i, Tally& t) {
        std::mt19937_64 rng(sample_seed(p.seed ^ 0x5bd1e995u, i));
        const auto x = random_bits(size, rng);
        const auto y = x | random_bits(size, rng);
        t.add("pairs_sampled");
        pair_laws(TupleFamily(s.space, x), TupleFamily(s.space, y), t);
    }));
    rep.counters["laws"] = 8;
    finish(rep, tally);
}

// ---------------------------------------------------------------- nilpotency

void run_nilpotency(const SuiteParams& p, RunReport& rep) {
    const auto s = operator_setup(p, rep);
    if (rep.outcome == Outcome::infeasible) return;
    const int bound = s.m.total() + 1;
    rep.counters["bound"] = bound;
    Tally tally = run_chunks(s.families, p.threads, [&](std::uint64_t i, Tally& t) {
        const auto x = family_at(s, p, i);
        t.add("families");
        const auto res = nilpotency_index(x, s.l);
        if (const auto* cyc = std::get_if<CycleReport>(&res)) {
            t.add("cycles");
            t.witness({{"X", json_of(x)}, {"cycle", json_of(*cyc)}});
            return;
        }
        const int k = std::get<int>(res);
        t.add("index_" + std::to_string(k));
        if (k > bound) {
            t.witness({{"X", json_of(x)}, {"index", k}, {"residue", json_of(delta_power(x, s.l, bound))}});
        }
    });
    json hist = json::object();
    for (auto it = tally.counts.begin(); it != tally.counts.end();) {
        if (it->first.rfind("index_", 0) == 0) {
            hist[it->first.substr(6)] = it->second;
            it = tally.counts.erase(it);
        } else {
            ++it;
        }
    }
    rep.counters["index_histogram"] = hist;
    finish(rep, tally);
}

// ---------------------------------------------------------------- bijection

void run_bijection(const SuiteParams& p, RunReport& rep) {
    const int a = require(p.a, "a");
    const int n = require(p.n, "n");
    if (a < 0 || a > 8) throw ParamError("bijection sweep supports 0 <= a <= 8");
    if (n < 1 || n > 5) throw ParamError("bijection sweep supports 1 <= n <= 5");
    const BigInt total = boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(a * n));
    rep.counters["identity"] = {{"(2^a)^n", json_of(total)},
                                {"(2^n)^a", json_of(boost::multiprecision::pow(BigInt(1 << n), static_cast<unsigned>(a)))}};
    if (total > (BigInt(1) << 22)) {
        rep.outcome = Outcome::infeasible;
        rep.counters["required_sequences"] = json_of(total);
        return;
    }
    const auto count = static_cast<std::uint64_t>(total);
    const std::uint64_t mask = (std::uint64_t{1} << a) - 1;
    std::vector<std::vector<DisjointTuple>> images((count + kChunk - 1) / kChunk);
    Tally tally = run_chunks(count, p.threads, [&](std::uint64_t i, Tally& t) {
        std::vector<Subset> seq(n);
        for (int k = 0; k < n; ++k) seq[k] = Subset::from_bits((i >> (k * a)) & mask);
        const auto tuple = fin_to_disjoint(seq);
        const auto back = disjoint_to_fin(tuple, n);
        t.add("round_trips");
        if (tuple.arity() != (1 << n) - 1 || back != seq) {
            t.witness({{"sequence", json_of(seq)}, {"tuple", json_of(tuple)}, {"back", json_of(back)}});
        }
        images[i / kChunk].push_back(tuple);
    });
    std::set<DisjointTuple> distinct;
    for (const auto& chunk : images) distinct.insert(chunk.begin(), chunk.end());
    std::uint64_t enumerated = 0;
    for (const auto& t : enum_O_n(a, (1 << n) - 1)) {
        ++enumerated;
        if (!distinct.count(t)) tally.witness({{"tuple", json_of(t)}, {"reason", "not in the image"}});
        if (fin_to_disjoint(disjoint_to_fin(t, n)) != t) tally.witness({{"tuple", json_of(t)}, {"reason", "no round trip"}});
    }
    rep.counters["identity"]["enumerated"] = std::to_string(enumerated);
    rep.counters["distinct_images"] = distinct.size();
    if (distinct.size() != count || BigInt(enumerated) != total) {
        tally.witness({{"reason", "count identity fails"}, {"distinct_images", distinct.size()}, {"enumerated", enumerated}});
    }
    finish(rep, tally);
}

// ---------------------------------------------------------------- ramsey

const char* outcome_name(PropertyResult::Outcome o) {
    switch (o) {
        case PropertyResult::Outcome::holds: return "holds";
        case PropertyResult::Outcome::fails: return "fails";
        default: return "infeasible";
    }
}

json property_json(int N, const PropertyResult& r) {
    json out{{"N", N}, {"outcome", outcome_name(r.outcome)}, {"covered", json_of(r.covered)}};
    if (r.outcome == PropertyResult::Outcome::infeasible) out["required"] = json_of(r.required);
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

void run_ramsey(const SuiteParams& p, RunReport& rep) {
    RamseyQuery q{p.j, require(p.c, "c"), require(p.r, "r")};
    try {
        q.validate();
    } catch (const std::invalid_argument& e) {
        throw ParamError(e.what());
    }
    SearchOptions opt;
    opt.max_colorings = p.max_colorings;
    opt.prune = p.prune;
    opt.threads = p.threads;
    Tally tally;

    auto replay = [&](const PropertyResult& r) {
        if (!r.counterexample) return;
        if (const auto w = find_witness(*r.counterexample, q.r)) {
            tally.witness({{"reason", "counterexample has a monochromatic box"}, {"coloring", json_of(*r.counterexample)},
                           {"box", json_of(w->first)}, {"color", w->second + 1}});
        }
    };

    if (p.N) {
        const std::vector<int> sizes(q.arity(), *p.N);
        const auto r = has_property(sizes, q, opt);
        rep.counters["check"] = property_json(*p.N, r);
        if (r.counterexample) rep.counters["certificate"] = json_of(*r.counterexample);
        replay(r);
        if (r.outcome == PropertyResult::Outcome::infeasible) rep.outcome = Outcome::infeasible;
        finish(rep, tally);
        return;
    }

    const BigInt ub = upper_bound_R(q);
    rep.counters["upper_bound"] = json_of(ub);
    const int cap = p.cap.value_or(ub < 12 ? static_cast<int>(ub) : 12);
    const auto res = search_min_N(q, cap, opt);
    json trail = json::array();
    BigInt searched = 0;
    for (std::size_t N = 0; N < res.trail.size(); ++N) {
        trail.push_back(property_json(static_cast<int>(N), res.trail[N]));
        searched += res.trail[N].covered;
    }
    rep.counters["trail"] = trail;
    rep.counters["colorings_searched"] = json_of(searched);
    if (!res.value) {
        rep.outcome = Outcome::infeasible;
        rep.counters["min_N"] = nullptr;
        if (res.infeasible_at) rep.counters["infeasible_at"] = *res.infeasible_at;
        finish(rep, tally);
        if (!tally.witnesses.empty()) rep.outcome = Outcome::violation;
        return;
    }
    const int v = *res.value;
    rep.counters["min_N"] = v;
    for (const auto& r : res.trail) replay(r);
    if (v > 0 && res.trail[v - 1].counterexample) rep.counters["certificate"] = json_of(*res.trail[v - 1].counterexample);
    if (BigInt(v) > ub) tally.witness({{"reason", "upper bound below the exact minimum"}, {"min_N", v}, {"upper_bound", json_of(ub)}});
    if (q.j == std::vector<int>{1}) {
        const int pigeon = q.c * (q.r - 1) + 1;
        rep.counters["pigeonhole"] = pigeon;
        if (q.r >= 1 && v != pigeon) tally.witness({{"reason", "pigeonhole value differs"}, {"min_N", v}, {"expected", pigeon}});
    }
    // the bound itself and one step above the minimum, where exhaustion is feasible
    for (BigInt N : {BigInt(v + 1), ub}) {
        if (N > 64) continue;
        const auto r = has_property(std::vector<int>(q.arity(), static_cast<int>(N)), q, opt);
        const std::string key = N == ub ? "at_upper_bound" : "above_min";
        rep.counters[key] = property_json(static_cast<int>(N), r);
        if (r.outcome == PropertyResult::Outcome::fails) {
            tally.witness({{"reason", "property fails above the minimum"}, {"N", static_cast<int>(N)}});
        }
    }
    finish(rep, tally);
}

// ---------------------------------------------------------------- coding

struct SlotSampler {
    std::string kind = "uniform";
    int max_members = 0;
};

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParamError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::map<SlotKey, SlotSampler> samplers_of(const json& raw) {
    std::map<SlotKey, SlotSampler> out;
    if (!raw.contains("sampling")) return out;
    for (const auto& e : raw.at("sampling")) {
        SlotKey key{e.at("j").get<int>(), SizeProfile(e.at("m").get<std::vector<int>>())};
        SlotSampler s{e.at("kind").get<std::string>(), e.value("max_members", 0)};
        if (s.kind != "uniform" && s.kind != "sparse_or_cosparse") throw ConfigError("unknown sampling kind " + s.kind);
        out[key] = s;
    }
    return out;
}

IndexedFamily sample_family(const CodingConfig& cfg, const std::map<SlotKey, SlotSampler>& samplers,
                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::map<SlotKey, TupleFamily> slots;
    for (const auto& slot : cfg.slots) {
        const auto space = TupleSpace::get(cfg.a, slot.m);
        const auto it = samplers.find(slot);
        if (it == samplers.end() || it->second.kind == "uniform") {
            slots.emplace(slot, TupleFamily(space, random_bits(space->size(), rng)));
            continue;
        }
        Bits b(space->size());
        const auto t = std::min<std::uint64_t>(rng() % (it->second.max_members + 1), space->size());
        while (b.count() < t) b.set(rng() % space->size());
        if (rng() & 1u) b.flip();
        slots.emplace(slot, TupleFamily(space, std::move(b)));
    }
    return normalized(join_slots(slots));
}

IndexedFamily family_by_index(const CodingConfig& cfg, std::uint64_t index) {
    std::map<SlotKey, TupleFamily> slots;
    for (const auto& slot : cfg.slots) {
        const auto space = TupleSpace::get(cfg.a, slot.m);
        slots.emplace(slot, TupleFamily(space, bits_of_index(index, space->size())));
        index >>= space->size();
    }
    return normalized(join_slots(slots));
}

void check_round_trip(const IndexedFamily& x, const CodingConfig& cfg, bool materialize_it, Tally& t) {
    t.add("families");
    const auto book = encode(x, cfg);
    for (const auto& [key, y] : book.entries) {
        if (alpha(y, cfg.signature.g(key.j, key.m)) != y) {
            t.witness({{"reason", "book entry is not alpha_g-closed"}, {"key", key.to_string()}, {"X", json_of(x)}});
        }
    }
    for (const auto& [slot, d] : book.diagnostics) {
        if (!d.nesting_holds) t.witness({{"reason", "nesting identity fails"}, {"slot", slot.to_string()}, {"X", json_of(x)}});
        if (!d.nilpotent) t.add("non_nilpotent_slots");
    }
    const auto sym = decode(book, cfg);
    if (sym.family != x) {
        t.witness({{"reason", "symbolic decode differs"}, {"X", json_of(x)}, {"decoded", json_of(sym.family)},
                   {"problems", sym.problems}});
        return;
    }
    if (!materialize_it) return;
    const auto size = materialized_size(book, cfg);
    if (size > 1'000'000) {
        t.add("symbolic_only");
        return;
    }
    const auto h = materialize(book, cfg);
    t.add("materialized");
    t.add("partitions", h.size());
    for (const auto& part : h) {
        const auto ns = part.ns();
        std::set<int> sizes;
        for (auto b : ns) sizes.insert(b.size());
        if (static_cast<int>(ns.size()) != cfg.n || sizes.size() != ns.size()) {
            t.witness({{"reason", "partition shape"}, {"partition", json_of(part)}, {"X", json_of(x)}});
            return;
        }
    }
    const auto dec = decode(h, cfg);
    if (dec.family != x) {
        t.witness({{"reason", "decode from partitions differs"}, {"X", json_of(x)}, {"decoded", json_of(dec.family)},
                   {"problems", dec.problems}});
    }
}

void run_coding(const SuiteParams& p, RunReport& rep) {
    if (!p.config) throw ParamError("missing --config");
    const auto raw = read_json_file(*p.config);
    const auto cfg = CodingConfig::from_json(raw);
    const auto samplers = samplers_of(raw);
    rep.config_digest = digest_of({{"params", rep.command}, {"config", raw}});
    std::uint64_t bits = 0;
    for (const auto& slot : cfg.slots) bits += TupleSpace::get(cfg.a, slot.m)->size();
    const bool fits = bits <= 16;
    bool exhaustive = fits;
    if (p.mode == "exhaustive") exhaustive = true;
    else if (p.mode == "random") exhaustive = false;
    else if (!p.mode.empty()) throw ParamError("--mode must be exhaustive or random");
    if (exhaustive && !fits) {
        rep.outcome = Outcome::infeasible;
        rep.counters["required_families"] = json_of(BigInt(1) << bits);
        return;
    }
    rep.counters["mode"] = exhaustive ? "exhaustive" : "random";
    json sampling = json::object();
    for (const auto& slot : cfg.slots) {
        const auto it = samplers.find(slot);
        sampling[slot.to_string()] = it == samplers.end() ? "uniform" : it->second.kind;
    }
    if (!exhaustive) rep.counters["sampling"] = sampling;
    const std::uint64_t count = exhaustive ? (std::uint64_t{1} << bits) : p.samples;
    // build the relations once before fanning out
    encode(IndexedFamily{}, cfg);
    const auto tally = run_chunks(count, p.threads, [&](std::uint64_t i, Tally& t) {
        const auto x = exhaustive ? family_by_index(cfg, i) : sample_family(cfg, samplers, sample_seed(p.seed, i));
        check_round_trip(x, cfg, p.materialize, t);
    });
    finish(rep, tally);
}

// ---------------------------------------------------------------- symmetry

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<Subset> subsets_of_size(int a, int k) { return enum_k_subsets(a, k).collect(); }

void run_symmetry(const SuiteParams& p, RunReport& rep) {
    const int a = p.a.value_or(5);
    const int n = p.n.value_or(1);
    if (a < 1 || a > 7) throw ParamError("symmetry sweep supports 1 <= a <= 7");
    if (n < 1 || n > 2) throw ParamError("symmetry sweep supports 1 <= n <= 2");
    rep.counters["ranges"] = {{"orbits", "n <= 3"},
                              {"fixing_transposition", "n <= 2, a <= 7"},
                              {"fiber", "a = " + std::to_string(a) + ", n = " + std::to_string(n) + ", |E| <= 2"},
                              {"chain", "a <= " + std::to_string(std::min(a, 5)) + ", n = 1, |E| <= 1"}};
    Tally t;

    for (int k = 1; k <= 3; ++k) {
        const Subset base = Subset::prefix(k + 2);
        std::set<ElementSequence> all;
        for (const auto& s : enum_sequences(k + 2, k + 1, true)) all.insert(s);
        const auto odd = Permutation::transposition(k + 2, 0, 1);
        for (const auto& s : all) {
            const auto op = even_odd_orbits(base, s);
            t.add("orbit_pairs");
            std::set<ElementSequence> both = op.xi;
            both.insert(op.theta.begin(), op.theta.end());
            const auto half = factorial(k + 2) / 2;
            const bool ok = op.xi.size() == half && op.theta.size() == half && both.size() == 2 * half && both == all &&
                            apply_perm(odd, op.xi) == op.theta;
            if (!ok) t.witness({{"reason", "orbit pair invariant"}, {"n", k}, {"seed", s.entries}});
        }
    }

    for (int k = 1; k <= 2; ++k) {
        for (int ga = k + 2; ga <= 7; ++ga) {
            const auto bases = subsets_of_size(ga, k + 2);
            for (const auto& tuple : enum_O_n(ga, k)) {
                for (auto b : bases) {
                    t.add("transposition_checks");
                    const auto tr = find_fixing_transposition(tuple, b);
                    bool ok = tr && tr->first != tr->second && b.contains(tr->first) && b.contains(tr->second);
                    for (int i = 0; ok && i < k; ++i) ok = tuple[i].contains(tr->first) == tuple[i].contains(tr->second);
                    if (!ok) t.witness({{"reason", "no fixing transposition"}, {"tuple", json_of(tuple)}, {"B", json_of(b)}});
                }
            }
        }
    }

    const auto parts = enum_B_n(a, n).collect();
    std::vector<Subset> es;
    for (int k = 0; k <= 2; ++k) {
        for (auto e : subsets_of_size(a, k)) es.push_back(e);
    }
    for (auto e : es) {
        const BigInt bound = boost::multiprecision::pow(BigInt(n + 1), static_cast<unsigned>(e.size()));
        for (const auto& P : parts) {
            const auto fib = fiber_of(P, e, n);
            t.add("fibers");
            if (BigInt(fib.size()) > bound || !fib.count(P)) {
                t.witness({{"reason", "fiber bound"}, {"P", json_of(P)}, {"E", json_of(e)}, {"size", fib.size()},
                           {"bound", json_of(bound)}});
            }
            const auto pe = restrict_outside(P, e);
            for (const auto& Q : parts) {
                if (!preceq(Q, P, e)) continue;
                const auto qe = restrict_outside(Q, e);
                t.add("preceq_pairs");
                if (qe.size() == pe.size() && qe != pe) {
                    t.witness({{"reason", "equal-size projections differ"}, {"Q", json_of(Q)}, {"P", json_of(P)},
                               {"E", json_of(e)}});
                }
            }
        }
    }

    for (int ca = 1; ca <= std::min(a, 5); ++ca) {
        for (int k = 0; k <= 1; ++k) {
            for (auto e : subsets_of_size(ca, k)) {
                const auto ch = longest_chain(ca, 1, e);
                t.add("chains");
                if (BigInt(ch.longest_chain) > ch.bound) {
                    t.witness({{"reason", "chain longer than (n+1)^(|E|+1)"}, {"a", ca}, {"E", json_of(e)},
                               {"chain", json_of(ch.witness)}, {"bound", json_of(ch.bound)}});
                }
            }
        }
    }
    finish(rep, t);
}

void run_named(const std::string& name, const SuiteParams& p, RunReport& rep) {
    if (name == "fact00") return run_fact00(p, rep);
    if (name == "nilpotency") return run_nilpotency(p, rep);
    if (name == "bijection") return run_bijection(p, rep);
    if (name == "ramsey") return run_ramsey(p, rep);
    if (name == "coding") return run_coding(p, rep);
    if (name == "symmetry") return run_symmetry(p, rep);
    throw ParamError("unknown suite \"" + name + "\"");
}

template <class Fn>
RunReport timed(const std::string& name, const json& command, Fn&& body) {
    RunReport rep;
    rep.suite = name;
    rep.command = command;
    rep.config_digest = digest_of(command);
    const auto t0 = std::chrono::steady_clock::now();
    body(rep);
    rep.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace

json SuiteParams::echo() const {
    json j = json::object();
    if (a) j["a"] = *a;
    if (n) j["n"] = *n;
    if (!m.empty()) j["m"] = m;
    if (!l.empty()) j["l"] = l;
    if (!mode.empty()) j["mode"] = mode;
    j["samples"] = samples;
    j["seed"] = seed;
    if (!this->j.empty()) j["j"] = this->j;
    if (c) j["c"] = *c;
    if (r) j["r"] = *r;
    if (N) j["N"] = *N;
    if (cap) j["cap"] = *cap;
    j["max_colorings"] = max_colorings.str();
    j["prune"] = prune;
    if (config) j["config"] = *config;
    j["materialize"] = materialize;
    return j;
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::pass: return "pass";
        case Outcome::violation: return "violation";
        default: return "infeasible";
    }
}

json RunReport::to_json(bool with_time) const {
    json j{{"suite", suite},         {"command", command},     {"config_digest", config_digest},
           {"outcome", to_string(outcome)}, {"counters", counters}, {"witnesses", witnesses}};
    if (!warnings.empty()) j["warnings"] = warnings;
    if (with_time) j["wall_time_ms"] = wall_time_ms;
    return j;
}

int RunReport::exit_code() const {
    switch (outcome) {
        case Outcome::pass: return 0;
        case Outcome::violation: return 1;
        default: return 3;
    }
}

RunReport run_suite(const std::string& name, const SuiteParams& params) {
    json command = params.echo();
    command["suite"] = name;
    return timed(name, command, [&](RunReport& rep) { run_named(name, params, rep); });
}

RunReport feasibility_scan(const SizeProfile& m, const SizeProfile& l, int a_max, const SuiteParams& params) {
    json command = params.echo();
    command["suite"] = "feasibility";
    command["m"] = m.sizes;
    command["l"] = l.sizes;
    command["a_max"] = a_max;
    return timed("feasibility", command, [&](RunReport& rep) {
        if (a_max < 1 || a_max > GroundSet::kMaxSize) throw ParamError("a_max must lie in [1, 64]");
        json rows = json::array();
        std::optional<int> a_min;
        bool any_infeasible = false;
        for (int a = std::max(1, l.total() - 1); a <= a_max; ++a) {
            SuiteParams p = params;
            p.a = a;
            p.m = m.sizes;
            p.l = l.sizes;
            const auto r = run_suite("nilpotency", p);
            json row{{"a", a}, {"outcome", to_string(r.outcome)}};
            for (const char* key : {"mode", "families", "violations", "cycles"}) {
                if (r.counters.contains(key)) row[key] = r.counters[key];
            }
            rows.push_back(row);
            if (r.outcome == Outcome::pass) {
                if (!a_min) a_min = a;
            } else {
                a_min.reset();
                any_infeasible |= r.outcome == Outcome::infeasible;
            }
        }
        rep.counters["rows"] = rows;
        if (a_min) {
            rep.counters["a_min"] = *a_min;
        } else {
            rep.counters["a_min"] = nullptr;
            rep.outcome = any_infeasible ? Outcome::infeasible : Outcome::violation;
        }
    });
}

std::vector<CountRow> emit_counts(const std::string& space, int a_max, int n_max, const BigInt& budget) {
    if (space != "B_n" && space != "O_n") throw ParamError("count space must be B_n or O_n");
    if (a_max < 0 || a_max > GroundSet::kMaxSize || n_max < 0) throw ParamError("count ranges out of bounds");
    std::vector<CountRow> rows;
    for (int a = 0; a <= a_max; ++a) {
        for (int n = 0; n <= n_max; ++n) {
            CountRow row{space, a, n, 0, std::nullopt};
            if (space == "B_n") {
                row.formula = count_B_n(a, n);
                if (row.formula <= budget) row.enumerated = BigInt(enum_B_n(a, n).count());
            } else {
                row.formula = boost::multiprecision::pow(BigInt(n + 1), static_cast<unsigned>(a));
                if (row.formula <= budget) row.enumerated = BigInt(enum_O_n(a, n).count());
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

json counts_json(const std::vector<CountRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        out.push_back({{"space", r.space},
                       {"a", r.a},
                       {"n", r.n},
                       {"formula", json_of(r.formula)},
                       {"enumerated", r.enumerated ? json(r.enumerated->str()) : json("infeasible")},
                       {"match", r.enumerated ? json(r.match()) : json(nullptr)}});
    }
    return out;
}

std::string counts_csv(const std::vector<CountRow>& rows) {
    std::ostringstream out;
    out << "space,a,n,formula,enumerated,match\n";
    for (const auto& r : rows) {
        out << r.space << ',' << r.a << ',' << r.n << ',' << r.formula << ','
            << (r.enumerated ? r.enumerated->str() : "infeasible") << ','
            << (r.enumerated ? (r.match() ? "true" : "false") : "") << '\n';
    }
    return out.str();
}

json demo_coding(const std::string& config_path, std::uint64_t seed, bool empty_family, bool materialize_it) {
    const auto raw = read_json_file(config_path);
    const auto cfg = CodingConfig::from_json(raw);
    const auto x = empty_family ? IndexedFamily{} : sample_family(cfg, samplers_of(raw), seed);
    const auto book = encode(x, cfg);
    json out{{"config", cfg.to_json()}, {"seed", seed}, {"family", json_of(x)}, {"book", json_of(book)}};
    json slices = json::array();
    for (const auto& [key, y] : book.entries) {
        const auto l = cfg.signature.sizes(key.j, key.m, key.k);
        slices.push_back({{"key", key.to_string()},
                          {"block_sizes", l.sizes},
                          {"Y", y.size()},
                          {"Z", gamma(y, l).size()}});
    }
    out["slices"] = slices;
    const auto total = materialized_size(book, cfg);
    out["materialized_size"] = json_of(total);
    DecodeResult dec;
    if (materialize_it && total <= 1'000'000) {
        dec = decode(materialize(book, cfg), cfg);
        out["decoded_from"] = "partitions";
    } else {
        dec = decode(book, cfg);
        out["decoded_from"] = "book";
        if (materialize_it) out["note"] = "materialization over budget; decoded symbolically";
    }
    out["decoded"] = json_of(dec.family);
    out["problems"] = dec.problems;
    out["verdict"] = dec.family == normalized(x) ? "pass" : "violation";
    return out;
}

}  // namespace fpart
