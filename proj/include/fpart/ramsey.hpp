#pragma once

// The polarized Ramsey property for colorings of product grids
//
//   [S_1]^{j_1} x ... x [S_n]^{j_n} -> {0, ..., c-1}
//
// with S_i = {0, ..., N_i - 1}: every coloring admits T_i in [S_i]^r whose
// sub-grid is monochromatic. Colors are 0-based in memory and 1-based in JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpart/core.hpp"

namespace fpart {

struct RamseyQuery {
    std::vector<int> j;
    int c = 1;
    int r = 0;

    int arity() const { return static_cast<int>(j.size()); }
    void validate() const;
    std::string to_string() const;
};

/// The points of [S_1]^{j_1} x ... x [S_n]^{j_n} in lexicographic order
/// (coordinate 1 most significant).
class ProductGrid {
public:
    ProductGrid(std::vector<int> sizes, std::vector<int> j);

    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<int>& j() const { return j_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Subset>& point(std::size_t i) const { return points_[i]; }
    /// Index of a point; throws std::out_of_range when it is not on the grid.
    std::size_t index_of(const std::vector<Subset>& p) const;

    static constexpr std::size_t kMaxPoints = std::size_t{1} << 22;

private:
    std::vector<int> sizes_;
    std::vector<int> j_;
    std::vector<std::vector<Subset>> points_;
};

struct ProductColoring {
    ProductGrid grid;
    int c = 1;
    std::vector<int> colors;  // one entry per grid point, in [0, c)

    ProductColoring(ProductGrid g, int colors_count, std::vector<int> table);
    int color_of(const std::vector<Subset>& p) const { return colors[grid.index_of(p)]; }
};

/// True iff every grid point inside T_1 x ... x T_n has color d.
/// Throws std::invalid_argument unless each T_i is a subset of S_i and all T_i have the same size.
bool check_witness(const ProductColoring& coloring, const std::vector<Subset>& t, int d);

/// A monochromatic choice of T, if one exists with |T_i| = r.
std::optional<std::pair<std::vector<Subset>, int>> find_witness(const ProductColoring& coloring, int r);

struct SearchOptions {
    BigInt max_colorings = BigInt(1) << 26;
    bool prune = true;
    unsigned threads = 1;
};

struct PropertyResult {
    enum class Outcome { holds, fails, infeasible };
    Outcome outcome = Outcome::infeasible;
    /// Colorings accounted for by the search (after isomorph rejection when pruning).
    BigInt covered = 0;
    /// Colorings the search would have to cover; set when the budget is exceeded.
    BigInt required = 0;
    std::optional<ProductColoring> counterexample;
    std::string note;
};

PropertyResult has_property(const std::vector<int>& sizes, const RamseyQuery& q, const SearchOptions& opt = {});

struct MinSearchResult {
    std::optional<int> value;  // least N with the property, if found within the cap
    std::optional<int> infeasible_at;
    std::vector<PropertyResult> trail;  // one entry per N tried, starting at 0
};

MinSearchResult search_min_N(const RamseyQuery& q, int cap, const SearchOptions& opt = {});

/// A size N such that (N, ..., N) has the property. Not the least such size in general.
/// Throws Infeasible when the construction's value cannot be represented.
BigInt upper_bound_R(const RamseyQuery& q);

}  // namespace fpart
