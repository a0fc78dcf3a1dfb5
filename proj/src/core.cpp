#include "fpart/core.hpp"

#include <algorithm>
#include <sstream>

namespace fpart {

void require_ground_size(int a) {
    if (a < 0 || a > GroundSet::kMaxSize) {
        throw std::invalid_argument("ground size " + std::to_string(a) + " outside [0, 64]");
    }
}

GroundSet::GroundSet(int size) : size_(size) { require_ground_size(size); }

Subset Subset::of(std::initializer_list<int> elements) {
    std::vector<int> v(elements);
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
        throw InvariantError("subset literal has a repeated element");
    }
    return from_elements(v);
}

Subset Subset::from_elements(std::span<const int> elements) {
    std::uint64_t bits = 0;
    for (int x : elements) {
        if (x < 0 || x >= 64) throw InvariantError("element " + std::to_string(x) + " outside [0, 64)");
        if ((bits >> x) & 1u) throw InvariantError("duplicate element " + std::to_string(x));
        bits |= std::uint64_t{1} << x;
    }
    return Subset(bits);
}

Subset Subset::prefix(int a) {
    require_ground_size(a);
    return Subset(a == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << a) - 1);
}

std::vector<int> Subset::elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(__builtin_ctzll(b));
    return out;
}

Subset Subset::with(int x) const {
    if (x < 0 || x >= 64) throw InvariantError("element outside [0, 64)");
    return Subset(bits_ | (std::uint64_t{1} << x));
}

Subset Subset::without(int x) const {
    if (x < 0 || x >= 64) return *this;
    return Subset(bits_ & ~(std::uint64_t{1} << x));
}

std::strong_ordering operator<=>(Subset a, Subset b) {
    const std::uint64_t diff = a.bits_ ^ b.bits_;
    if (diff == 0) return std::strong_ordering::equal;
    // Below the least differing element e the two sequences agree. The one
    // containing e is smaller unless the other one has already ended.
    const int e = __builtin_ctzll(diff);
    const std::uint64_t above = e == 63 ? 0 : ~((std::uint64_t{2} << e) - 1);
    if ((a.bits_ >> e) & 1u) {
        return (b.bits_ & above) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return (a.bits_ & above) ? std::strong_ordering::greater : std::strong_ordering::less;
}

std::string Subset::to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int x : elements()) {
        if (!first) os << ',';
        os << x;
        first = false;
    }
    os << '}';
    return os.str();
}

ElementSequence::ElementSequence(std::vector<int> e, bool inj) : entries(std::move(e)), injective(inj) {
    for (int x : entries) {
        if (x < 0) throw InvariantError("sequence entry is negative");
    }
    if (injective) {
        std::vector<int> sorted = entries;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw InvariantError("injective sequence repeats an entry");
        }
    }
}

SizeProfile::SizeProfile(std::initializer_list<int> s) : SizeProfile(std::vector<int>(s)) {}

SizeProfile::SizeProfile(std::vector<int> s) : sizes(std::move(s)) {
    for (int m : sizes) {
        if (m < 0) throw InvariantError("size profile entry is negative");
    }
}

int SizeProfile::total() const {
    int t = 0;
    for (int m : sizes) t += m;
    return t;
}

bool SizeProfile::dominated_by(const SizeProfile& other) const {
    if (arity() != other.arity()) return false;
    for (int i = 0; i < arity(); ++i) {
        if (sizes[i] > other.sizes[i]) return false;
    }
    return true;
}

std::string SizeProfile::to_string() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < arity(); ++i) os << (i ? "," : "") << sizes[i];
    os << ')';
    return os.str();
}

DisjointTuple::DisjointTuple(std::initializer_list<Subset> components)
    : DisjointTuple(std::vector<Subset>(components)) {}

DisjointTuple::DisjointTuple(std::vector<Subset> components) : components_(std::move(components)) {
    Subset seen;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (components_[i].intersects(seen)) {
            throw InvariantError("tuple component " + std::to_string(i + 1) + " " +
                                 components_[i].to_string() + " meets an earlier component");
        }
        seen = seen | components_[i];
    }
}

SizeProfile DisjointTuple::profile() const {
    std::vector<int> s;
    s.reserve(components_.size());
    for (auto c : components_) s.push_back(c.size());
    return SizeProfile(std::move(s));
}

Subset DisjointTuple::support() const {
    Subset u;
    for (auto c : components_) u = u | c;
    return u;
}

std::string DisjointTuple::to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i) s += ',';
        s += components_[i].to_string();
    }
    return s + ">";
}

FinitaryPartition FinitaryPartition::canonicalize(int ground_size, std::vector<Subset> blocks) {
    require_ground_size(ground_size);
    const Subset ground = Subset::prefix(ground_size);
    Subset covered;
    for (auto b : blocks) {
        if (b.empty()) throw InvariantError("partition has an empty block");
        if (!b.subset_of(ground)) {
            throw InvariantError("block " + b.to_string() + " leaves the ground set");
        }
        if (b.intersects(covered)) {
            throw InvariantError("block " + b.to_string() + " overlaps another block at element " +
                                 std::to_string((b & covered).min()));
        }
        covered = covered | b;
    }
    if (covered != ground) {
        throw InvariantError("element " + std::to_string((ground - covered).min()) + " is uncovered");
    }
    std::sort(blocks.begin(), blocks.end(), [](Subset x, Subset y) { return x.min() < y.min(); });
    FinitaryPartition p;
    p.ground_size_ = ground_size;
    p.blocks_ = std::move(blocks);
    return p;
}

FinitaryPartition FinitaryPartition::discrete(int ground_size) {
    std::vector<Subset> blocks;
    for (int x = 0; x < ground_size; ++x) blocks.push_back(Subset::of({x}));
    return canonicalize(ground_size, std::move(blocks));
}

std::vector<Subset> FinitaryPartition::ns() const {
    std::vector<Subset> out;
    for (auto b : blocks_) {
        if (b.size() >= 2) out.push_back(b);
    }
    return out;
}

int FinitaryPartition::ns_count() const {
    int n = 0;
    for (auto b : blocks_) n += b.size() >= 2;
    return n;
}

Subset FinitaryPartition::block_of(int x) const {
    for (auto b : blocks_) {
        if (b.contains(x)) return b;
    }
    throw std::out_of_range("element " + std::to_string(x) + " not in the ground set");
}

std::string FinitaryPartition::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) s += '|';
        s += blocks_[i].to_string();
    }
    return s + "}";
}

FinitaryPartition canonicalize_partition(int ground_size, std::vector<Subset> blocks) {
    return FinitaryPartition::canonicalize(ground_size, std::move(blocks));
}

}  // namespace fpart
