#pragma once

#include <optional>
#include <set>

#include "hrt/hypergraph.hpp"

namespace hrt {

/// Pattern object: a k-bound complex. Vertices are (class, slot) pairs with
/// an explicit active mask so that induced subcomplexes keep their identity.
/// Edge colors are stored sparsely; an absent entry means invisible, which
/// keeps the coloring total and downward closure cheap to maintain.
struct Complex {
    int r = 1;
    int k = 1;
    std::vector<int> class_slots;
    std::vector<std::vector<char>> active;
    std::map<IndexSet, Palette> palettes;
    std::map<Edge, Color> colors;

    static Complex empty(int r, int k, std::map<IndexSet, Palette> palettes);

    Vertex add_vertex(int cls);
    bool is_vertex(const Vertex& v) const;
    int vertex_count() const;
    std::vector<Vertex> vertices() const;   // canonical order
    std::vector<int> class_counts() const;  // active vertices per class

    Color color_of(const Edge& e) const;  // kInvisible when unset
    void set_color(const Edge& e, Color c);
    bool is_visible(const Edge& e) const { return color_of(e) != kInvisible; }

    std::vector<Edge> visible_edges() const;          // canonical order
    std::vector<Edge> visible_edges_of_size(int s) const;
    /// Largest visible edge size (0 when nothing is visible).
    int bound() const;

    void validate() const;
};

struct Violation {
    Edge invisible_edge;
    Edge visible_super;
};

/// Downward closure of invisibility: empty iff every sub-edge of a visible
/// edge is visible.
std::vector<Violation> check_complex(const Complex& S);

Complex induced_subcomplex(const Complex& S, const std::set<Vertex>& U);
Complex delete_vertex(const Complex& S, const Vertex& u);

/// B^<i>: invisualize all edges of size > i.
Complex truncate(const Complex& B, int i);

/// Max over vertices of the number of visible-pair neighbors.
int max_degree(const Complex& B);

/// Induced subcomplex on vertices whose distance from u in the visible
/// 2-uniform skeleton lies in dists (distance 0 is u itself; unreachable
/// vertices have infinite distance and never qualify).
Complex neighborhood_complex(const Complex& B, const Vertex& u, const std::set<int>& dists);

/// S<e>: colors of all sub-edges of e as recorded in the pattern.
TotalColor pattern_total_color(const Complex& S, const Edge& e);

struct BlowupSpec {
    Complex pattern;
    std::map<Vertex, int> multiplicity;  // >= 1, one entry per pattern vertex
    int degree_cap = 1;
};

struct Blowup {
    Complex complex;
    std::map<Vertex, Vertex> projection;  // blowup vertex -> pattern vertex
};

/// Replaces each pattern vertex by its multiplicity of copies. An edge over
/// copies is visible iff its projection is a visible pattern edge (edges that
/// collapse two copies of one vertex stay invisible) and inherits the
/// projected color. Throws DegreeCapExceeded when the result violates the cap.
Blowup build_blowup(const BlowupSpec& spec);

}  // namespace hrt
