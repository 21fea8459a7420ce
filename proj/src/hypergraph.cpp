#include "hrt/hypergraph.hpp"

#include <algorithm>

namespace hrt {

ColorTable ColorTable::dense(std::uint64_t n, Color fill) {
    ColorTable t;
    t.dense_mode_ = true;
    t.n_ = n;
    t.values_.assign(n, fill);
    return t;
}

ColorTable ColorTable::sparse(std::uint64_t n, Color default_color) {
    ColorTable t;
    t.dense_mode_ = false;
    t.n_ = n;
    t.default_ = default_color;
    return t;
}

Color ColorTable::at(std::uint64_t rank) const {
    if (rank >= n_) throw std::out_of_range("ColorTable: rank out of range");
    if (dense_mode_) return values_[rank];
    auto it = overrides_.find(rank);
    return it == overrides_.end() ? default_ : it->second;
}

void ColorTable::set(std::uint64_t rank, Color c) {
    if (rank >= n_) throw std::out_of_range("ColorTable: rank out of range");
    if (dense_mode_) {
        values_[rank] = c;
    } else if (c == default_) {
        overrides_.erase(rank);
    } else {
        overrides_[rank] = c;
    }
}

const Palette& ColoredHypergraph::palette(const IndexSet& I) const {
    auto it = palettes.find(I);
    if (it == palettes.end())
        throw DanglingReference("no palette for index of size " + std::to_string(I.size()));
    return it->second;
}

std::uint64_t ColoredHypergraph::edge_count(const IndexSet& I) const {
    std::uint64_t n = 1;
    for (int cls : I.ids) n *= static_cast<std::uint64_t>(class_sizes.at(cls));
    return n;
}

std::uint64_t ColoredHypergraph::edge_rank(const Edge& e) const {
    std::uint64_t rank = 0;
    for (const auto& v : e.verts) rank = rank * class_sizes.at(v.cls) + v.local;
    return rank;
}

Edge ColoredHypergraph::edge_at(const IndexSet& I, std::uint64_t rank) const {
    std::vector<Vertex> verts(I.ids.size());
    for (int p = I.size() - 1; p >= 0; --p) {
        int n = class_sizes.at(I.ids[p]);
        verts[p] = Vertex{I.ids[p], static_cast<int>(rank % n)};
        rank /= n;
    }
    Edge e;
    e.verts = std::move(verts);
    return e;
}

Color ColoredHypergraph::color_of(const Edge& e) const {
    auto it = coloring.find(e.index());
    if (it == coloring.end())
        throw DanglingReference("no coloring for edge index");
    return it->second.at(edge_rank(e));
}

void ColoredHypergraph::set_color(const Edge& e, Color c) {
    auto it = coloring.find(e.index());
    if (it == coloring.end())
        throw DanglingReference("no coloring for edge index");
    it->second.set(edge_rank(e), c);
}

int ColoredHypergraph::b_star(int level) const {
    int best = 0;
    for (const auto& [I, pal] : palettes)
        if (I.size() >= level) best = std::max(best, pal.size());
    return best;
}

void ColoredHypergraph::validate() const {
    if (r < 1) throw SchemaError("hypergraph: r must be >= 1");
    if (k < 1 || k > r) throw SchemaError("hypergraph: need 1 <= k <= r");
    if (static_cast<int>(class_sizes.size()) != r)
        throw SchemaError("hypergraph: class_sizes length != r");
    for (int n : class_sizes)
        if (n < 0) throw SchemaError("hypergraph: negative class size");
    for (const auto& I : all_indices(r, k)) {
        auto pit = palettes.find(I);
        if (pit == palettes.end()) throw SchemaError("hypergraph: missing palette");
        const Palette& pal = pit->second;
        if (pal.size() < 1 || pal.size() > pal.cap)
            throw SchemaError("hypergraph: palette size out of [1, cap]");
        auto sorted = pal.labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw SchemaError("hypergraph: duplicate palette labels");
        auto cit = coloring.find(I);
        if (cit == coloring.end()) throw SchemaError("hypergraph: missing coloring");
        if (cit->second.size() != edge_count(I))
            throw SchemaError("hypergraph: coloring size mismatch");
        for (std::uint64_t rank = 0; rank < cit->second.size(); ++rank) {
            Color c = cit->second.at(rank);
            if (c < 0 || c >= pal.size())
                throw DanglingReference("hypergraph: edge color outside palette");
        }
    }
    if (palettes.size() != all_indices(r, k).size())
        throw SchemaError("hypergraph: unexpected palette index");
    if (coloring.size() != palettes.size())
        throw SchemaError("hypergraph: unexpected coloring index");
}

std::vector<IndexSet> all_indices(int r, int max_size) {
    std::vector<IndexSet> out;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int next, int remaining) -> void {
        if (!pick.empty()) out.push_back(IndexSet(pick));
        if (remaining == 0) return;
        for (int c = next; c < r; ++c) {
            pick.push_back(c);
            self(self, c + 1, remaining - 1);
            pick.pop_back();
        }
    };
    rec(rec, 0, max_size);
    std::sort(out.begin(), out.end());
    return out;
}

std::map<IndexSet, Palette> uniform_palettes(int r, int k, const std::vector<int>& sizes_per_level) {
    if (static_cast<int>(sizes_per_level.size()) != k)
        throw std::invalid_argument("uniform_palettes: need one size per level");
    std::map<IndexSet, Palette> out;
    for (const auto& I : all_indices(r, k)) {
        Palette pal;
        pal.index = I;
        pal.cap = sizes_per_level[I.size() - 1];
        for (int c = 0; c < sizes_per_level[I.size() - 1]; ++c)
            pal.labels.push_back("c" + std::to_string(c));
        out.emplace(I, std::move(pal));
    }
    return out;
}

TotalColor total_color(const ColoredHypergraph& G, const Edge& e) {
    TotalColor tc;
    tc.index = e.index();
    const auto& masks = subset_masks(e.size());
    tc.colors.reserve(masks.size());
    for (auto m : masks) tc.colors.push_back(G.color_of(e.sub_edge(m)));
    return tc;
}

std::vector<Color> frame_color(const ColoredHypergraph& G, const Edge& e) {
    return total_color(G, e).frame();
}

std::set<TotalColor> tc_set(const ColoredHypergraph& G, int s) {
    if (s < 1 || s > G.k) throw std::invalid_argument("tc_set: level out of range");
    std::set<TotalColor> out;
    for (const auto& I : all_indices(G.r, G.k)) {
        if (I.size() != s) continue;
        for (std::uint64_t rank = 0; rank < G.edge_count(I); ++rank)
            out.insert(total_color(G, G.edge_at(I, rank)));
    }
    return out;
}

std::set<TotalColor> tc_all(const ColoredHypergraph& G) {
    std::set<TotalColor> out;
    for (int s = 1; s <= G.k; ++s) {
        auto part = tc_set(G, s);
        out.insert(part.begin(), part.end());
    }
    return out;
}

}  // namespace hrt
