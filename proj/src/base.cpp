#include "hrt/base.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace hrt {

IndexSet::IndexSet(std::initializer_list<int> list) : IndexSet(std::vector<int>(list)) {}

IndexSet::IndexSet(std::vector<int> v) : ids(std::move(v)) {
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw std::invalid_argument("IndexSet: duplicate class id");
}

bool IndexSet::contains(int cls) const {
    return std::binary_search(ids.begin(), ids.end(), cls);
}

bool IndexSet::subset_of(const IndexSet& other) const {
    return std::includes(other.ids.begin(), other.ids.end(), ids.begin(), ids.end());
}

bool IndexSet::operator<(const IndexSet& o) const {
    if (ids.size() != o.ids.size()) return ids.size() < o.ids.size();
    return ids < o.ids;
}

Edge::Edge(std::initializer_list<Vertex> list) : Edge(std::vector<Vertex>(list)) {}

Edge::Edge(std::vector<Vertex> v) : verts(std::move(v)) {
    std::sort(verts.begin(), verts.end());
    for (std::size_t i = 1; i < verts.size(); ++i)
        if (verts[i].cls == verts[i - 1].cls)
            throw std::invalid_argument("Edge: two vertices in one class");
    if (verts.empty()) throw std::invalid_argument("Edge: empty");
}

IndexSet Edge::index() const {
    std::vector<int> ids;
    ids.reserve(verts.size());
    for (const auto& v : verts) ids.push_back(v.cls);
    return IndexSet(std::move(ids));
}

bool Edge::contains(const Vertex& v) const {
    return std::binary_search(verts.begin(), verts.end(), v);
}

std::vector<int> Edge::locals() const {
    std::vector<int> out;
    out.reserve(verts.size());
    for (const auto& v : verts) out.push_back(v.local);
    return out;
}

Edge Edge::restricted(const IndexSet& J) const {
    if (J.empty()) throw IndexNotContained("restrict_edge: empty index");
    std::vector<Vertex> sub;
    sub.reserve(J.ids.size());
    for (const auto& v : verts)
        if (J.contains(v.cls)) sub.push_back(v);
    if (static_cast<int>(sub.size()) != J.size())
        throw IndexNotContained("restrict_edge: index not contained in edge");
    Edge e;
    e.verts = std::move(sub);  // already sorted
    return e;
}

Edge Edge::sub_edge(std::uint32_t mask) const {
    Edge e;
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (mask & (1u << i)) e.verts.push_back(verts[i]);
    return e;
}

bool Edge::operator<(const Edge& o) const {
    IndexSet a = index(), b = o.index();
    if (!(a == b)) return a < b;
    return locals() < o.locals();
}

const std::vector<std::uint32_t>& subset_masks(int s) {
    static std::mutex mu;
    static std::map<int, std::vector<std::uint32_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    if (s < 1 || s > 20) throw std::invalid_argument("subset_masks: bad size");
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m < (1u << s); ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        if (pa != pb) return pa < pb;
        // lexicographic on the sorted position lists: compare from the low bit
        std::uint32_t x = a, y = b;
        while (x && y) {
            int la = __builtin_ctz(x), lb = __builtin_ctz(y);
            if (la != lb) return la < lb;
            x &= x - 1;
            y &= y - 1;
        }
        return false;
    });
    return cache.emplace(s, std::move(masks)).first->second;
}

std::vector<std::pair<IndexSet, Color>> TotalColor::entries() const {
    const auto& masks = subset_masks(index.size());
    std::vector<std::pair<IndexSet, Color>> out;
    out.reserve(masks.size());
    for (std::size_t i = 0; i < masks.size(); ++i) {
        std::vector<int> ids;
        for (int p = 0; p < index.size(); ++p)
            if (masks[i] & (1u << p)) ids.push_back(index.ids[p]);
        out.emplace_back(IndexSet(std::move(ids)), colors[i]);
    }
    return out;
}

bool TotalColor::operator<(const TotalColor& o) const {
    if (!(index == o.index)) return index < o.index;
    return colors < o.colors;
}

}  // namespace hrt
