#pragma once

// Coding an indexed family of tuple families as a set of partitions.
//
// For each admissible slot (j, m) and k = 0..sum(m) the encoder stores
//
//   Y_{j,m,k} = alpha_g( delta_g^(k)( X_{j,m} ) ),   g = f(j, m, sum(m)),
//
// and the partition set is the union over keys of the partitions induced by
// gamma_{f(j,m,k)}(Y_{j,m,k}). The block sizes f(j,m,k) are pairwise distinct
// within a tuple, so a partition determines both its key and the order of its
// blocks. The decoder inverts each step and recovers
//
//   X_{j,m} = Y_0 \ (Y_1 \ ( ... (Y_{K-1} \ Y_K) ... )),   K = sum(m).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpart/core.hpp"
#include "fpart/lauchli.hpp"

namespace fpart {

/// Raised for configuration and signature-contract violations.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SlotKey {
    int j = 0;
    SizeProfile m;
    friend bool operator==(const SlotKey&, const SlotKey&) = default;
    friend auto operator<=>(const SlotKey&, const SlotKey&) = default;
    std::string to_string() const;
};

struct BookKey {
    int j = 0;
    SizeProfile m;
    int k = 0;
    SlotKey slot() const { return {j, m}; }
    friend bool operator==(const BookKey&, const BookKey&) = default;
    friend auto operator<=>(const BookKey&, const BookKey&) = default;
    std::string to_string() const;
};

/// f(j, m, k) -> block sizes l_1 < ... < l_n.
///
///   paper:    l_i = 2^i * 3^j * p_2^{m_1} * ... * p_{n+1}^{m_n} * p_{n+2}^k   (p_0 = 2, p_1 = 3, ...)
///   compact:  l_i = B + i + (n+1) * (slot * (K_max + 1) + k)
///             B = 1 + max component of any slot profile, K_max = max slot sum(m),
///             slot = position of (j, m) in the slot table
class SizeSignature {
public:
    enum class Kind { paper, compact };

    static SizeSignature paper();
    static SizeSignature compact(std::vector<SlotKey> slots, std::optional<int> base = std::nullopt);

    Kind kind() const { return kind_; }
    int base() const { return base_; }
    int k_max() const { return k_max_; }
    const std::vector<SlotKey>& slots() const { return slots_; }

    /// Throws ConfigError when k is outside [0, sum(m)], the slot is unknown (compact),
    /// or a size overflows int.
    SizeProfile sizes(int j, const SizeProfile& m, int k) const;
    SizeProfile g(int j, const SizeProfile& m) const { return sizes(j, m, m.total()); }

    /// Human-readable description of each violated contract clause over `domain`; empty if none.
    std::vector<std::string> contract_violations(const std::vector<SlotKey>& domain) const;

private:
    Kind kind_ = Kind::paper;
    int base_ = 0;
    int k_max_ = 0;
    std::vector<SlotKey> slots_;
};

/// Validated block sizes; throws ConfigError naming the failing contract clause.
SizeProfile block_sizes(const SizeSignature& sig, int j, const SizeProfile& m, int k, int n);

struct CodingConfig {
    int a = 0;
    int n = 0;
    SizeSignature signature;
    std::vector<SlotKey> slots;
    nlohmann::json notes;  // free-form validation record kept with the config

    /// Throws ConfigError on the first violated invariant.
    void validate() const;
    static CodingConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    const SlotKey* find_slot(int j, const SizeProfile& m) const;
};

/// j -> members of X(j), each a tuple of arity n.
using IndexedFamily = std::map<int, std::set<DisjointTuple>>;

/// Throws ConfigError when a member does not fit an admissible slot.
std::map<SlotKey, TupleFamily> split_slots(const IndexedFamily& x, const CodingConfig& cfg);
IndexedFamily join_slots(const std::map<SlotKey, TupleFamily>& slots);
/// Drops empty j entries, so families compare by content.
IndexedFamily normalized(const IndexedFamily& x);

struct SlotDiagnostics {
    bool nilpotent = false;      // delta_g^(sum(m)+1)(X) is empty
    bool nesting_holds = false;  // delta^(k) = Y_k \ delta^(k+1) for every k
};

struct CodeBook {
    std::map<BookKey, TupleFamily> entries;
    std::map<SlotKey, SlotDiagnostics> diagnostics;

    /// Equality of the encoded object; diagnostics are not compared.
    friend bool operator==(const CodeBook& x, const CodeBook& y) { return x.entries == y.entries; }
};

CodeBook encode(const IndexedFamily& x, const CodingConfig& cfg);

/// Number of partitions the book materializes to.
BigInt materialized_size(const CodeBook& book, const CodingConfig& cfg);

/// Throws Infeasible (with the exact count) when more than `budget` partitions would be produced.
std::set<FinitaryPartition> materialize(const CodeBook& book, const CodingConfig& cfg,
                                        const BigInt& budget = 1'000'000);

/// Z: tuples whose partition lies in H and whose non-singleton sizes are f(j, m, k), ordered by size.
TupleFamily extract_slice(const std::set<FinitaryPartition>& h, const CodingConfig& cfg, int j, const SizeProfile& m,
                          int k);

/// { p in O_m : every extension of p with the profile of z lies in z }.
TupleFamily pullback_Y(const TupleFamily& z, const SizeProfile& m);

struct DecodeResult {
    IndexedFamily family;
    /// Keys whose recovered Y is not alpha_g-closed, or whose slice is not gamma of that Y.
    std::vector<std::string> problems;
};

DecodeResult decode(const std::set<FinitaryPartition>& h, const CodingConfig& cfg);
DecodeResult decode(const CodeBook& book, const CodingConfig& cfg);

/// Finite sequences of finite subsets, grouped by length.
using SeqFamily = std::set<std::vector<Subset>>;

/// Arity-n sequences go through fin_to_disjoint into O_{2^n-1}; the empty sequence
/// is coded by the marker {discrete partition}.
struct SeqCode {
    bool empty_marker = false;
    std::map<int, CodeBook> books;  // n -> book of the arity 2^n - 1 encoder
    friend bool operator==(const SeqCode&, const SeqCode&) = default;
};

/// `configs` maps a sequence length n >= 1 to a config of arity 2^n - 1 with a j = 0 slot
/// for every profile that occurs. All configs must share the ground size.
SeqCode encode_seq_family(const SeqFamily& w, const std::map<int, CodingConfig>& configs);
SeqFamily decode_seq_family(const SeqCode& code, const std::map<int, CodingConfig>& configs);
std::set<FinitaryPartition> materialize_seq(const SeqCode& code, const std::map<int, CodingConfig>& configs,
                                            const BigInt& budget = 1'000'000);
/// Inverse of materialize_seq: splits partitions by their number of non-singleton blocks.
SeqFamily decode_seq_partitions(const std::set<FinitaryPartition>& h, const std::map<int, CodingConfig>& configs);

}  // namespace fpart
