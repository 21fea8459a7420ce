#include "hrt/complex.hpp"

#include <algorithm>
#include <deque>

namespace hrt {

Complex Complex::empty(int r, int k, std::map<IndexSet, Palette> palettes) {
    Complex s;
    s.r = r;
    s.k = k;
    s.class_slots.assign(r, 0);
    s.active.assign(r, {});
    s.palettes = std::move(palettes);
    return s;
}

Vertex Complex::add_vertex(int cls) {
    if (cls < 0 || cls >= r) throw std::invalid_argument("add_vertex: bad class");
    active[cls].push_back(1);
    class_slots[cls] = static_cast<int>(active[cls].size());
    return Vertex{cls, class_slots[cls] - 1};
}

bool Complex::is_vertex(const Vertex& v) const {
    return v.cls >= 0 && v.cls < r && v.local >= 0 && v.local < class_slots[v.cls] &&
           active[v.cls][v.local];
}

int Complex::vertex_count() const {
    int n = 0;
    for (const auto& cls : active)
        for (char a : cls) n += a ? 1 : 0;
    return n;
}

std::vector<Vertex> Complex::vertices() const {
    std::vector<Vertex> out;
    for (int c = 0; c < r; ++c)
        for (int l = 0; l < class_slots[c]; ++l)
            if (active[c][l]) out.push_back(Vertex{c, l});
    return out;
}

std::vector<int> Complex::class_counts() const {
    std::vector<int> out(r, 0);
    for (int c = 0; c < r; ++c)
        for (int l = 0; l < class_slots[c]; ++l)
            if (active[c][l]) ++out[c];
    return out;
}

Color Complex::color_of(const Edge& e) const {
    auto it = colors.find(e);
    return it == colors.end() ? kInvisible : it->second;
}

void Complex::set_color(const Edge& e, Color c) {
    if (e.size() > k) throw std::invalid_argument("set_color: edge larger than bound");
    for (const auto& v : e.verts)
        if (!is_vertex(v)) throw DanglingReference("set_color: edge over a non-vertex");
    if (c == kInvisible)
        colors.erase(e);
    else
        colors[e] = c;
}

std::vector<Edge> Complex::visible_edges() const {
    std::vector<Edge> out;
    for (const auto& [e, c] : colors)
        if (c != kInvisible) out.push_back(e);
    return out;
}

std::vector<Edge> Complex::visible_edges_of_size(int s) const {
    std::vector<Edge> out;
    for (const auto& [e, c] : colors)
        if (c != kInvisible && e.size() == s) out.push_back(e);
    return out;
}

int Complex::bound() const {
    int best = 0;
    for (const auto& [e, c] : colors)
        if (c != kInvisible) best = std::max(best, e.size());
    return best;
}

void Complex::validate() const {
    if (r < 1 || k < 1) throw SchemaError("complex: need r, k >= 1");
    if (static_cast<int>(class_slots.size()) != r || static_cast<int>(active.size()) != r)
        throw SchemaError("complex: class arrays length != r");
    for (int c = 0; c < r; ++c)
        if (static_cast<int>(active[c].size()) != class_slots[c])
            throw SchemaError("complex: active mask size mismatch");
    for (const auto& [e, col] : colors) {
        if (e.size() > k) throw SchemaError("complex: edge larger than bound");
        for (const auto& v : e.verts)
            if (!is_vertex(v)) throw DanglingReference("complex: edge over a non-vertex");
        if (col != kInvisible) {
            auto pit = palettes.find(e.index());
            if (pit == palettes.end()) throw DanglingReference("complex: no palette for edge");
            if (col < 0 || col >= pit->second.size())
                throw DanglingReference("complex: color outside palette");
        }
    }
    auto violations = check_complex(*this);
    if (!violations.empty()) throw SchemaError("complex: invisibility not downward closed");
}

std::vector<Violation> check_complex(const Complex& S) {
    std::vector<Violation> out;
    for (const auto& [e, c] : S.colors) {
        if (c == kInvisible || e.size() == 1) continue;
        const auto& masks = subset_masks(e.size());
        for (auto m : masks) {
            Edge sub = e.sub_edge(m);
            if (sub.size() == e.size()) continue;
            if (!S.is_visible(sub)) out.push_back(Violation{sub, e});
        }
    }
    return out;
}

Complex induced_subcomplex(const Complex& S, const std::set<Vertex>& U) {
    for (const auto& v : U)
        if (!S.is_vertex(v)) throw std::invalid_argument("induced_subcomplex: U not within V(S)");
    Complex out = S;
    for (int c = 0; c < out.r; ++c)
        for (int l = 0; l < out.class_slots[c]; ++l)
            if (out.active[c][l] && !U.count(Vertex{c, l})) out.active[c][l] = 0;
    for (auto it = out.colors.begin(); it != out.colors.end();) {
        bool keep = true;
        for (const auto& v : it->first.verts)
            if (!out.is_vertex(v)) keep = false;
        it = keep ? std::next(it) : out.colors.erase(it);
    }
    return out;
}

Complex delete_vertex(const Complex& S, const Vertex& u) {
    auto verts = S.vertices();
    std::set<Vertex> U(verts.begin(), verts.end());
    U.erase(u);
    return induced_subcomplex(S, U);
}

Complex truncate(const Complex& B, int i) {
    if (i < 0 || i > B.k) throw std::invalid_argument("truncate: level out of range");
    Complex out = B;
    for (auto it = out.colors.begin(); it != out.colors.end();)
        it = it->first.size() > i ? out.colors.erase(it) : std::next(it);
    return out;
}

int max_degree(const Complex& B) {
    std::map<Vertex, int> deg;
    for (const auto& [e, c] : B.colors)
        if (c != kInvisible && e.size() == 2) {
            ++deg[e.verts[0]];
            ++deg[e.verts[1]];
        }
    int best = 0;
    for (const auto& [v, d] : deg) best = std::max(best, d);
    return best;
}

Complex neighborhood_complex(const Complex& B, const Vertex& u, const std::set<int>& dists) {
    if (!B.is_vertex(u)) throw std::invalid_argument("neighborhood_complex: u not a vertex");
    std::map<Vertex, std::vector<Vertex>> adj;
    for (const auto& [e, c] : B.colors)
        if (c != kInvisible && e.size() == 2) {
            adj[e.verts[0]].push_back(e.verts[1]);
            adj[e.verts[1]].push_back(e.verts[0]);
        }
    std::map<Vertex, int> dist;
    dist[u] = 0;
    std::deque<Vertex> queue{u};
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (const auto& w : adj[v])
            if (!dist.count(w)) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    std::set<Vertex> U;
    for (const auto& v : B.vertices()) {
        auto it = dist.find(v);
        if (it != dist.end() && dists.count(it->second)) U.insert(v);
    }
    return induced_subcomplex(B, U);
}

TotalColor pattern_total_color(const Complex& S, const Edge& e) {
    TotalColor tc;
    tc.index = e.index();
    const auto& masks = subset_masks(e.size());
    tc.colors.reserve(masks.size());
    for (auto m : masks) tc.colors.push_back(S.color_of(e.sub_edge(m)));
    return tc;
}

Blowup build_blowup(const BlowupSpec& spec) {
    const Complex& S = spec.pattern;
    auto pattern_vertices = S.vertices();
    for (const auto& v : pattern_vertices) {
        auto it = spec.multiplicity.find(v);
        if (it == spec.multiplicity.end() || it->second < 1)
            throw std::invalid_argument("build_blowup: multiplicities must cover V(S) with >= 1");
    }

    Blowup out;
    out.complex = Complex::empty(S.r, S.k, S.palettes);
    // copies of each pattern vertex, in canonical vertex order
    std::map<Vertex, std::vector<Vertex>> copies;
    for (const auto& v : pattern_vertices) {
        int mult = spec.multiplicity.at(v);
        for (int i = 0; i < mult; ++i) {
            Vertex b = out.complex.add_vertex(v.cls);
            copies[v].push_back(b);
            out.projection[b] = v;
        }
    }
    // every combination of copies of a visible pattern edge becomes visible
    for (const auto& [e, col] : S.colors) {
        if (col == kInvisible) continue;
        std::vector<Vertex> pick(e.verts.size());
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (pos == e.verts.size()) {
                Edge be;
                be.verts = pick;
                out.complex.colors[be] = col;
                return;
            }
            for (const auto& b : copies[e.verts[pos]]) {
                pick[pos] = b;
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
    }
    int delta = max_degree(out.complex);
    if (delta > spec.degree_cap)
        throw DegreeCapExceeded("build_blowup: max degree " + std::to_string(delta) +
                                " exceeds cap " + std::to_string(spec.degree_cap));
    return out;
}

}  // namespace hrt
