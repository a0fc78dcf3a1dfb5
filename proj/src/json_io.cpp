#include "fpart/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace fpart {

json json_of(Subset s) { return s.elements(); }

json json_of(const DisjointTuple& t) {
    json out = json::array();
    for (auto c : t.components()) out.push_back(json_of(c));
    return out;
}

json json_of(const FinitaryPartition& p) {
    json out = json::array();
    for (auto b : p.blocks()) out.push_back(json_of(b));
    return out;
}

json json_of(const BigInt& v) { return v.str(); }

json json_of(const SizeProfile& m) { return m.sizes; }

json json_of(const ElementSequence& s) { return s.entries; }

json json_of(const TupleFamily& f) { return json_of(f.members()); }

json json_of(const IndexedFamily& x) {
    json out = json::array();
    for (const auto& [j, members] : x) out.push_back({{"j", j}, {"members", json_of(members)}});
    return out;
}

json json_of(const CodeBook& book) {
    json out = json::array();
    for (const auto& [key, y] : book.entries) {
        out.push_back({{"j", key.j}, {"m", key.m.sizes}, {"k", key.k}, {"members", json_of(y)}});
    }
    return out;
}

json json_of(const ProductColoring& c) {
    json points = json::array();
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
        points.push_back({{"point", json_of(c.grid.point(i))}, {"color", c.colors[i] + 1}});
    }
    return {{"sizes", c.grid.sizes()}, {"j", c.grid.j()}, {"colors", c.c}, {"table", points}};
}

json json_of(const BfinResult& r) {
    if (const auto* u = std::get_if<Undefined>(&r)) return {{"undefined", u->reason}};
    return json_of(std::get<FinitaryPartition>(r));
}

json json_of(const CycleReport& r) {
    json cycle = json::array();
    for (const auto& f : r.cycle) cycle.push_back(json_of(f));
    return {{"first_index", r.first_index}, {"period", r.period}, {"cycle", cycle}};
}

json json_of(const Permutation& p) { return p.cycles(); }

namespace {

[[noreturn]] void malformed(const std::string& what, const json& j) {
    throw std::invalid_argument("malformed " + what + ": " + j.dump());
}

}  // namespace

Subset subset_from_json(const json& j) {
    if (!j.is_array()) malformed("subset", j);
    std::vector<int> xs;
    for (const auto& x : j) {
        if (!x.is_number_integer() || x.get<int>() < 0 || x.get<int>() >= GroundSet::kMaxSize) malformed("subset", j);
        xs.push_back(x.get<int>());
    }
    return Subset::from_elements(xs);
}

DisjointTuple tuple_from_json(const json& j) {
    if (!j.is_array()) malformed("tuple", j);
    std::vector<Subset> comps;
    for (const auto& c : j) comps.push_back(subset_from_json(c));
    try {
        return DisjointTuple(std::move(comps));
    } catch (const InvariantError& e) {
        throw std::invalid_argument(std::string("malformed tuple: ") + e.what());
    }
}

FinitaryPartition partition_from_json(int a, const json& j) {
    if (!j.is_array()) malformed("partition", j);
    std::vector<Subset> blocks;
    for (const auto& b : j) blocks.push_back(subset_from_json(b));
    try {
        return FinitaryPartition::canonicalize(a, std::move(blocks));
    } catch (const InvariantError& e) {
        throw std::invalid_argument(std::string("malformed partition: ") + e.what());
    }
}

IndexedFamily family_from_json(const json& j) {
    if (!j.is_array()) malformed("indexed family", j);
    IndexedFamily out;
    for (const auto& entry : j) {
        if (!entry.is_object() || !entry.contains("j") || !entry.contains("members")) malformed("indexed family", entry);
        auto& slot = out[entry.at("j").get<int>()];
        for (const auto& t : entry.at("members")) slot.insert(tuple_from_json(t));
    }
    return out;
}

CodeBook book_from_json(const json& j, const CodingConfig& cfg) {
    if (!j.is_array()) malformed("code book", j);
    CodeBook book;
    for (const auto& entry : j) {
        if (!entry.is_object()) malformed("code book entry", entry);
        BookKey key{entry.at("j").get<int>(), SizeProfile(entry.at("m").get<std::vector<int>>()), entry.at("k").get<int>()};
        if (!cfg.find_slot(key.j, key.m)) throw ConfigError("book key " + key.to_string() + " is not a configured slot");
        std::vector<DisjointTuple> members;
        for (const auto& t : entry.at("members")) members.push_back(tuple_from_json(t));
        book.entries.insert_or_assign(key, TupleFamily(cfg.a, key.m, members));
    }
    return book;
}

std::string digest_of(const json& j) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace fpart
