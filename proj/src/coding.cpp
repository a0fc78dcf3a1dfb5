#include "fpart/coding.hpp"

#include <algorithm>
#include <climits>

#include "fpart/canonical_maps.hpp"
#include "fpart/enumerate.hpp"

namespace fpart {

std::string SlotKey::to_string() const { return "(" + std::to_string(j) + "," + m.to_string() + ")"; }

std::string BookKey::to_string() const {
    return "(" + std::to_string(j) + "," + m.to_string() + "," + std::to_string(k) + ")";
}

namespace {

int nth_prime(int i) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    if (i < 0 || i >= static_cast<int>(std::size(primes))) throw ConfigError("prime index out of range");
    return primes[i];
}

int to_int(const BigInt& v, const std::string& what) {
    if (v > INT_MAX) throw ConfigError(what + " overflows");
    return static_cast<int>(v);
}

}  // namespace

SizeSignature SizeSignature::paper() { return SizeSignature(); }

SizeSignature SizeSignature::compact(std::vector<SlotKey> slots, std::optional<int> base) {
    if (slots.empty()) throw ConfigError("compact signature needs at least one slot");
    SizeSignature s;
    s.kind_ = Kind::compact;
    int top = 0;
    for (const auto& sl : slots) {
        for (int x : sl.m.sizes) top = std::max(top, x);
        s.k_max_ = std::max(s.k_max_, sl.m.total());
    }
    s.base_ = base.value_or(top + 1);
    s.slots_ = std::move(slots);
    return s;
}

SizeProfile SizeSignature::sizes(int j, const SizeProfile& m, int k) const {
    if (k < 0 || k > m.total()) {
        throw ConfigError("k = " + std::to_string(k) + " outside [0, " + std::to_string(m.total()) + "]");
    }
    const int n = m.arity();
    std::vector<int> l(n);
    if (kind_ == Kind::paper) {
        if (j < 0) throw ConfigError("slot index j must be non-negative");
        BigInt common = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(j));
        for (int t = 0; t < n; ++t) common *= boost::multiprecision::pow(BigInt(nth_prime(t + 2)), m[t]);
        common *= boost::multiprecision::pow(BigInt(nth_prime(n + 2)), static_cast<unsigned>(k));
        for (int i = 1; i <= n; ++i) l[i - 1] = to_int((BigInt(1) << i) * common, "block size");
    } else {
        const auto it = std::find(slots_.begin(), slots_.end(), SlotKey{j, m});
        if (it == slots_.end()) throw ConfigError("slot " + SlotKey{j, m}.to_string() + " is not in the slot table");
        const BigInt slot = it - slots_.begin();
        const BigInt shift = BigInt(n + 1) * (slot * (k_max_ + 1) + k);
        for (int i = 1; i <= n; ++i) l[i - 1] = to_int(base_ + i + shift, "block size");
    }
    return SizeProfile(std::move(l));
}

std::vector<std::string> SizeSignature::contract_violations(const std::vector<SlotKey>& domain) const {
    std::vector<std::string> out;
    std::map<SizeProfile, BookKey> seen;
    for (const auto& slot : domain) {
        const auto& m = slot.m;
        std::optional<SizeProfile> prev;
        for (int k = 0; k <= m.total(); ++k) {
            SizeProfile l;
            try {
                l = sizes(slot.j, m, k);
            } catch (const ConfigError& e) {
                out.push_back("f" + BookKey{slot.j, m, k}.to_string() + " undefined: " + e.what());
                continue;
            }
            const std::string at = "f" + BookKey{slot.j, m, k}.to_string() + " = " + l.to_string();
            for (int i = 0; i < l.arity(); ++i) {
                if (l[i] < std::max(m[i], 2)) out.push_back(at + ": l_i >= max(m_i, 2) fails at i = " + std::to_string(i + 1));
                if (i > 0 && l[i - 1] >= l[i]) out.push_back(at + ": sizes are not strictly increasing");
            }
            if (prev) {
                for (int i = 0; i < l.arity(); ++i) {
                    if ((*prev)[i] > l[i]) out.push_back(at + ": not monotone in k");
                }
            }
            auto [it, fresh] = seen.emplace(l, BookKey{slot.j, m, k});
            if (!fresh) out.push_back(at + ": not injective, same sizes as f" + it->second.to_string());
            prev = l;
        }
    }
    return out;
}

SizeProfile block_sizes(const SizeSignature& sig, int j, const SizeProfile& m, int k, int n) {
    if (m.arity() != n) throw ConfigError("profile " + m.to_string() + " does not have arity " + std::to_string(n));
    const auto bad = sig.contract_violations({SlotKey{j, m}});
    if (!bad.empty()) throw ConfigError("signature contract: " + bad.front());
    return sig.sizes(j, m, k);
}

const SlotKey* CodingConfig::find_slot(int j, const SizeProfile& m) const {
    auto it = std::find(slots.begin(), slots.end(), SlotKey{j, m});
    return it == slots.end() ? nullptr : &*it;
}

void CodingConfig::validate() const {
    if (a < 0 || a > GroundSet::kMaxSize) throw ConfigError("ground size must lie in [0, 64]");
    if (n < 0) throw ConfigError("arity must be non-negative");
    if (slots.empty()) throw ConfigError("slot table is empty");
    std::set<SlotKey> uniq;
    for (const auto& s : slots) {
        if (s.j < 0) throw ConfigError("slot " + s.to_string() + " has negative j");
        if (s.m.arity() != n) throw ConfigError("slot " + s.to_string() + " does not have arity " + std::to_string(n));
        for (int x : s.m.sizes) {
            if (x < 0) throw ConfigError("slot " + s.to_string() + " has a negative size");
        }
        if (!uniq.insert(s).second) throw ConfigError("slot " + s.to_string() + " is listed twice");
    }
    if (signature.kind() == SizeSignature::Kind::compact && signature.slots() != slots) {
        throw ConfigError("compact signature was built for a different slot table");
    }
    const auto bad = signature.contract_violations(slots);
    if (!bad.empty()) throw ConfigError("signature contract: " + bad.front());
    for (const auto& s : slots) {
        const auto g = signature.g(s.j, s.m);
        if (g.total() > a) {
            throw ConfigError("ground size a = " + std::to_string(a) + " is below sum(g" + s.to_string() +
                              ") = " + std::to_string(g.total()));
        }
    }
}

CodingConfig CodingConfig::from_json(const nlohmann::json& j) {
    CodingConfig cfg;
    try {
        cfg.a = j.at("ground_size").get<int>();
        cfg.n = j.at("arity").get<int>();
        for (const auto& s : j.at("slots")) {
            cfg.slots.push_back(SlotKey{s.at("j").get<int>(), SizeProfile(s.at("m").get<std::vector<int>>())});
        }
        const auto& sig = j.at("signature");
        const auto kind = sig.at("kind").get<std::string>();
        if (kind == "paper") {
            cfg.signature = SizeSignature::paper();
        } else if (kind == "compact") {
            std::optional<int> base;
            if (sig.contains("base")) base = sig.at("base").get<int>();
            cfg.signature = SizeSignature::compact(cfg.slots, base);
        } else {
            throw ConfigError("unknown signature kind \"" + kind + "\"");
        }
        if (j.contains("notes")) cfg.notes = j.at("notes");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed coding config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

nlohmann::json CodingConfig::to_json() const {
    nlohmann::json j;
    j["ground_size"] = a;
    j["arity"] = n;
    j["signature"] = {{"kind", signature.kind() == SizeSignature::Kind::paper ? "paper" : "compact"}};
    if (signature.kind() == SizeSignature::Kind::compact) j["signature"]["base"] = signature.base();
    j["slots"] = nlohmann::json::array();
    for (const auto& s : slots) j["slots"].push_back({{"j", s.j}, {"m", s.m.sizes}});
    if (!notes.is_null()) j["notes"] = notes;
    return j;
}

std::map<SlotKey, TupleFamily> split_slots(const IndexedFamily& x, const CodingConfig& cfg) {
    std::map<SlotKey, TupleFamily> out;
    for (const auto& s : cfg.slots) out.emplace(s, TupleFamily(cfg.a, s.m));
    for (const auto& [j, members] : x) {
        for (const auto& t : members) {
            if (t.arity() != cfg.n) {
                throw ConfigError("member " + t.to_string() + " of X(" + std::to_string(j) + ") does not have arity " +
                                  std::to_string(cfg.n));
            }
            auto it = out.find(SlotKey{j, t.profile()});
            if (it == out.end()) {
                throw ConfigError("member " + t.to_string() + " of X(" + std::to_string(j) + ") has profile " +
                                  t.profile().to_string() + ", which is not admissible for j = " + std::to_string(j));
            }
            if (!t.support().subset_of(Subset::prefix(cfg.a))) {
                throw ConfigError("member " + t.to_string() + " leaves the ground set");
            }
            it->second.insert(t);
        }
    }
    return out;
}

IndexedFamily join_slots(const std::map<SlotKey, TupleFamily>& slots) {
    IndexedFamily out;
    for (const auto& [key, fam] : slots) {
        if (fam.empty()) continue;
        for (auto& t : fam.members()) out[key.j].insert(std::move(t));
    }
    return out;
}

IndexedFamily normalized(const IndexedFamily& x) {
    IndexedFamily out;
    for (const auto& [j, m] : x) {
        if (!m.empty()) out.emplace(j, m);
    }
    return out;
}

CodeBook encode(const IndexedFamily& x, const CodingConfig& cfg) {
    cfg.validate();
    CodeBook book;
    for (const auto& [slot, fam] : split_slots(x, cfg)) {
        const auto g = cfg.signature.g(slot.j, slot.m);
        const int top = slot.m.total();
        std::vector<TupleFamily> d{fam};  // d[k] = delta^(k)(X)
        std::vector<TupleFamily> y;
        for (int k = 0; k <= top; ++k) {
            y.push_back(alpha(d[k], g));
            d.push_back(y.back() - d[k]);
        }
        SlotDiagnostics diag;
        diag.nilpotent = d[top + 1].empty();
        diag.nesting_holds = true;
        for (int k = 0; k <= top; ++k) {
            diag.nesting_holds = diag.nesting_holds && (y[k] - d[k + 1]) == d[k];
            book.entries.emplace(BookKey{slot.j, slot.m, k}, std::move(y[k]));
        }
        book.diagnostics.emplace(slot, diag);
    }
    return book;
}

BigInt materialized_size(const CodeBook& book, const CodingConfig& cfg) {
    BigInt total = 0;
    for (const auto& [key, y] : book.entries) {
        if (y.empty()) continue;
        total += gamma(y, cfg.signature.sizes(key.j, key.m, key.k)).size();
    }
    return total;
}

std::set<FinitaryPartition> materialize(const CodeBook& book, const CodingConfig& cfg, const BigInt& budget) {
    const auto count = materialized_size(book, cfg);
    if (count > budget) {
        throw Infeasible("materialized partition set has " + count.str() + " members, over the budget of " +
                             budget.str(),
                         count);
    }
    std::set<FinitaryPartition> out;
    for (const auto& [key, y] : book.entries) {
        if (y.empty()) continue;
        const auto z = gamma(y, cfg.signature.sizes(key.j, key.m, key.k));
        for (const auto& q : z.members()) out.insert(tuple_to_partition(cfg.a, q).partition);
    }
    return out;
}

TupleFamily extract_slice(const std::set<FinitaryPartition>& h, const CodingConfig& cfg, int j, const SizeProfile& m,
                          int k) {
    const auto l = cfg.signature.sizes(j, m, k);
    TupleFamily z(cfg.a, l);
    for (const auto& p : h) {
        auto ns = p.ns();
        if (static_cast<int>(ns.size()) != l.arity()) continue;
        std::stable_sort(ns.begin(), ns.end(), [](Subset x, Subset y) { return x.size() < y.size(); });
        bool match = true;
        for (int i = 0; i < l.arity() && match; ++i) match = ns[i].size() == l[i];
        if (match) z.insert(DisjointTuple(std::move(ns)));
    }
    return z;
}

TupleFamily pullback_Y(const TupleFamily& z, const SizeProfile& m) { return pullback(z, m); }

namespace {

template <class SliceFn>
DecodeResult decode_with(const CodingConfig& cfg, SliceFn&& slice) {
    cfg.validate();
    DecodeResult out;
    std::map<SlotKey, TupleFamily> slots;
    for (const auto& s : cfg.slots) {
        const auto g = cfg.signature.g(s.j, s.m);
        std::vector<TupleFamily> y;
        for (int k = 0; k <= s.m.total(); ++k) {
            const auto z = slice(s, k);
            y.push_back(pullback_Y(z, s.m));
            const auto key = BookKey{s.j, s.m, k}.to_string();
            if (alpha(y.back(), g) != y.back()) out.problems.push_back("Y" + key + " is not alpha_g-closed");
            if (gamma(y.back(), z.profile()) != z) out.problems.push_back("Z" + key + " is not gamma of its pullback");
        }
        TupleFamily x = y.back();
        for (int k = s.m.total() - 1; k >= 0; --k) x = y[k] - x;
        slots.emplace(s, std::move(x));
    }
    out.family = join_slots(slots);
    return out;
}

}  // namespace

DecodeResult decode(const std::set<FinitaryPartition>& h, const CodingConfig& cfg) {
    for (const auto& p : h) {
        if (p.ground_size() != cfg.a) throw ConfigError("partition " + p.to_string() + " is over a different ground set");
    }
    return decode_with(cfg, [&](const SlotKey& s, int k) { return extract_slice(h, cfg, s.j, s.m, k); });
}

DecodeResult decode(const CodeBook& book, const CodingConfig& cfg) {
    return decode_with(cfg, [&](const SlotKey& s, int k) {
        const auto it = book.entries.find(BookKey{s.j, s.m, k});
        const auto l = cfg.signature.sizes(s.j, s.m, k);
        if (it == book.entries.end()) return TupleFamily(cfg.a, l);
        return gamma(it->second, l);
    });
}

namespace {

int seq_arity(int n) { return (1 << n) - 1; }

const CodingConfig& config_for(const std::map<int, CodingConfig>& configs, int n) {
    auto it = configs.find(n);
    if (it == configs.end()) throw ConfigError("no coding config for sequences of length " + std::to_string(n));
    if (it->second.n != seq_arity(n)) {
        throw ConfigError("config for length " + std::to_string(n) + " must have arity " +
                          std::to_string(seq_arity(n)));
    }
    return it->second;
}

int shared_ground_size(const std::map<int, CodingConfig>& configs) {
    std::optional<int> a;
    for (const auto& [n, cfg] : configs) {
        if (a && *a != cfg.a) throw ConfigError("sequence configs disagree on the ground size");
        a = cfg.a;
    }
    if (!a) throw ConfigError("no sequence configs given");
    return *a;
}

}  // namespace

SeqCode encode_seq_family(const SeqFamily& w, const std::map<int, CodingConfig>& configs) {
    const int a = shared_ground_size(configs);
    SeqCode code;
    std::map<int, IndexedFamily> by_length;
    for (const auto& s : w) {
        for (auto x : s) {
            if (!x.subset_of(Subset::prefix(a))) throw ConfigError("sequence entry " + x.to_string() + " leaves the ground set");
        }
        if (s.empty()) {
            code.empty_marker = true;
            continue;
        }
        const int n = static_cast<int>(s.size());
        config_for(configs, n);
        by_length[n][0].insert(fin_to_disjoint(s));
    }
    for (const auto& [n, x] : by_length) code.books.emplace(n, encode(x, config_for(configs, n)));
    return code;
}

SeqFamily decode_seq_family(const SeqCode& code, const std::map<int, CodingConfig>& configs) {
    SeqFamily out;
    if (code.empty_marker) out.insert(std::vector<Subset>{});
    for (const auto& [n, book] : code.books) {
        const auto res = decode(book, config_for(configs, n));
        for (const auto& [j, members] : res.family) {
            for (const auto& t : members) out.insert(disjoint_to_fin(t, n));
        }
    }
    return out;
}

std::set<FinitaryPartition> materialize_seq(const SeqCode& code, const std::map<int, CodingConfig>& configs,
                                            const BigInt& budget) {
    const int a = shared_ground_size(configs);
    std::set<FinitaryPartition> out;
    if (code.empty_marker) out.insert(FinitaryPartition::discrete(a));
    BigInt total = out.size();
    for (const auto& [n, book] : code.books) total += materialized_size(book, config_for(configs, n));
    if (total > budget) throw Infeasible("materialized sequence code has " + total.str() + " members", total);
    for (const auto& [n, book] : code.books) {
        auto part = materialize(book, config_for(configs, n), budget);
        out.insert(part.begin(), part.end());
    }
    return out;
}

SeqFamily decode_seq_partitions(const std::set<FinitaryPartition>& h, const std::map<int, CodingConfig>& configs) {
    const int a = shared_ground_size(configs);
    SeqFamily out;
    std::map<int, std::set<FinitaryPartition>> by_count;
    for (const auto& p : h) {
        if (p.ground_size() != a) throw ConfigError("partition " + p.to_string() + " is over a different ground set");
        by_count[p.ns_count()].insert(p);
    }
    if (by_count.count(0)) out.insert(std::vector<Subset>{});
    for (const auto& [n, cfg] : configs) {
        auto it = by_count.find(seq_arity(n));
        if (it == by_count.end()) continue;
        const auto res = decode(it->second, config_for(configs, n));
        for (const auto& [j, members] : res.family) {
            for (const auto& t : members) out.insert(disjoint_to_fin(t, n));
        }
    }
    return out;
}

}  // namespace fpart
