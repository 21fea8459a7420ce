#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "hrt/errors.hpp"

namespace hrt {

using Color = int;

/// Reserved label for the per-index invisible color; never part of a palette.
inline constexpr Color kInvisible = -1;

/// A set of class ids. Ordering is the canonical one used everywhere:
/// size ascending, then lexicographic on the sorted ids.
struct IndexSet {
    std::vector<int> ids;  // strictly increasing

    IndexSet() = default;
    IndexSet(std::initializer_list<int> list);
    explicit IndexSet(std::vector<int> v);

    int size() const { return static_cast<int>(ids.size()); }
    bool empty() const { return ids.empty(); }
    bool contains(int cls) const;
    bool subset_of(const IndexSet& other) const;

    bool operator==(const IndexSet&) const = default;
    bool operator<(const IndexSet& o) const;
};

struct Vertex {
    int cls = 0;
    int local = 0;
    auto operator<=>(const Vertex&) const = default;
};

/// A partite edge: at most one vertex per class, nonempty.
struct Edge {
    std::vector<Vertex> verts;  // sorted by class

    Edge() = default;
    Edge(std::initializer_list<Vertex> list);
    explicit Edge(std::vector<Vertex> v);

    int size() const { return static_cast<int>(verts.size()); }
    IndexSet index() const;
    bool contains(const Vertex& v) const;
    std::vector<int> locals() const;

    /// e|_J, throws IndexNotContained unless {} != J subseteq index(e).
    Edge restricted(const IndexSet& J) const;
    /// Sub-edge selected by a position mask (bit i = verts[i]).
    Edge sub_edge(std::uint32_t mask) const;

    bool operator==(const Edge&) const = default;
    /// Canonical edge order: index canonical order, then locals ascending.
    bool operator<(const Edge& o) const;
};

inline Edge restrict_edge(const Edge& e, const IndexSet& J) { return e.restricted(J); }

/// Nonempty position subsets of an s-element index in canonical order
/// (popcount ascending, then lexicographic on positions). The last mask is
/// always the full set.
const std::vector<std::uint32_t>& subset_masks(int s);

/// Colors of every nonempty sub-edge of an index-I edge, one entry per
/// subset_masks(|I|) element. The last entry is the color of the edge itself;
/// the frame is everything before it.
struct TotalColor {
    IndexSet index;
    std::vector<Color> colors;

    Color top() const { return colors.back(); }
    std::vector<Color> frame() const { return {colors.begin(), colors.end() - 1}; }

    /// (sub-index, color) pairs in canonical order.
    std::vector<std::pair<IndexSet, Color>> entries() const;

    bool operator==(const TotalColor&) const = default;
    bool operator<(const TotalColor& o) const;
};

}  // namespace hrt
