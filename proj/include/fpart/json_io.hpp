#pragma once

// JSON forms shared by the CLI and the reports.
//
//   subset     ascending integer array
//   tuple      array of subsets (empty components allowed)
//   partition  array of blocks in canonical order
//   count      decimal string
//   coloring   colors are reported 1-based

#include <nlohmann/json.hpp>

#include "fpart/canonical_maps.hpp"
#include "fpart/coding.hpp"
#include "fpart/core.hpp"
#include "fpart/lauchli.hpp"
#include "fpart/ramsey.hpp"
#include "fpart/symmetry.hpp"

namespace fpart {

using nlohmann::json;

json json_of(Subset s);
json json_of(const DisjointTuple& t);
json json_of(const FinitaryPartition& p);
json json_of(const BigInt& v);
json json_of(const SizeProfile& m);
json json_of(const ElementSequence& s);
json json_of(const TupleFamily& f);
json json_of(const IndexedFamily& x);
json json_of(const CodeBook& book);
json json_of(const ProductColoring& c);
json json_of(const BfinResult& r);
json json_of(const CycleReport& r);
json json_of(const Permutation& p);

template <class T>
json json_of(const std::vector<T>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(json_of(x));
    return out;
}

template <class T>
json json_of(const std::set<T>& s) {
    json out = json::array();
    for (const auto& x : s) out.push_back(json_of(x));
    return out;
}

/// Parsers throw std::invalid_argument on malformed input.
Subset subset_from_json(const json& j);
DisjointTuple tuple_from_json(const json& j);
FinitaryPartition partition_from_json(int a, const json& j);
IndexedFamily family_from_json(const json& j);
CodeBook book_from_json(const json& j, const CodingConfig& cfg);

/// 64-bit FNV-1a of the compact dump, as 16 hex digits.
std::string digest_of(const json& j);

}  // namespace fpart
