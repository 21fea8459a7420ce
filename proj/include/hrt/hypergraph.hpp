#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hrt/base.hpp"

namespace hrt {

struct Palette {
    IndexSet index;
    std::vector<std::string> labels;  // distinct, 1 <= |labels| <= cap
    int cap = 1;

    int size() const { return static_cast<int>(labels.size()); }
};

/// Per-index edge colors, dense (vector by edge rank) or sparse
/// (default color plus overrides). Ambient objects are edge-total.
class ColorTable {
public:
    ColorTable() = default;
    static ColorTable dense(std::uint64_t n, Color fill = 0);
    static ColorTable sparse(std::uint64_t n, Color default_color);

    Color at(std::uint64_t rank) const;
    void set(std::uint64_t rank, Color c);
    std::uint64_t size() const { return n_; }
    bool is_dense() const { return dense_mode_; }
    Color default_color() const { return default_; }
    const std::map<std::uint64_t, Color>& overrides() const { return overrides_; }

private:
    bool dense_mode_ = true;
    std::uint64_t n_ = 0;
    Color default_ = 0;
    std::vector<Color> values_;
    std::map<std::uint64_t, Color> overrides_;
};

/// Ambient object: r classes, every partite edge of size <= k carries a
/// color from the palette of its index. Immutable after construction by
/// convention; all accessors are const.
struct ColoredHypergraph {
    int r = 1;
    int k = 1;
    std::vector<int> class_sizes;
    std::map<IndexSet, Palette> palettes;
    std::map<IndexSet, ColorTable> coloring;

    const Palette& palette(const IndexSet& I) const;
    std::uint64_t edge_count(const IndexSet& I) const;
    std::uint64_t edge_rank(const Edge& e) const;
    Edge edge_at(const IndexSet& I, std::uint64_t rank) const;
    Color color_of(const Edge& e) const;
    void set_color(const Edge& e, Color c);

    /// b_i^* = max over i <= |J| <= k of |C_J|.
    int b_star(int level) const;

    void validate() const;
};

/// All indices over r classes with 1 <= size <= max_size, canonical order.
std::vector<IndexSet> all_indices(int r, int max_size);

/// Uniform palettes: one palette per index, sizes given per level (1..k),
/// labels "c0", "c1", ...
std::map<IndexSet, Palette> uniform_palettes(int r, int k, const std::vector<int>& sizes_per_level);

TotalColor total_color(const ColoredHypergraph& G, const Edge& e);
std::vector<Color> frame_color(const ColoredHypergraph& G, const Edge& e);

std::set<TotalColor> tc_set(const ColoredHypergraph& G, int s);
std::set<TotalColor> tc_all(const ColoredHypergraph& G);

}  // namespace hrt
