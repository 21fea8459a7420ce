#include "hrt/ramsey.hpp"

#include <algorithm>

#include "hrt/rng.hpp"

namespace hrt {

void UniformHypergraph::normalize() {
    for (auto& e : edges) std::sort(e.begin(), e.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

void UniformHypergraph::validate() const {
    for (const auto& e : edges) {
        if (static_cast<int>(e.size()) != k)
            throw SchemaError("uniform hypergraph: edge of wrong size");
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n) throw DanglingReference("uniform hypergraph: bad vertex");
            if (i > 0 && e[i] <= e[i - 1])
                throw SchemaError("uniform hypergraph: edge not strictly sorted");
        }
    }
}

int UniformHypergraph::degree(int v) const {
    std::set<int> nbrs;
    for (const auto& e : edges)
        if (std::find(e.begin(), e.end(), v) != e.end())
            for (int w : e)
                if (w != v) nbrs.insert(w);
    return static_cast<int>(nbrs.size());
}

int UniformHypergraph::max_deg() const {
    int best = 0;
    for (int v = 0; v < n; ++v) best = std::max(best, degree(v));
    return best;
}

UniformHypergraph UniformHypergraph::complete(int n, int k) {
    UniformHypergraph h;
    h.n = n;
    h.k = k;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(pick.size()) == k) {
            h.edges.push_back(pick);
            return;
        }
        for (int v = next; v < n; ++v) {
            pick.push_back(v);
            self(self, v + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return h;
}

UniformHypergraph UniformHypergraph::single_edge(int k) {
    UniformHypergraph h;
    h.n = k;
    h.k = k;
    std::vector<int> e(k);
    for (int i = 0; i < k; ++i) e[i] = i;
    h.edges.push_back(e);
    return h;
}

UniformHypergraph UniformHypergraph::path(int vertices) {
    UniformHypergraph h;
    h.n = vertices;
    h.k = 2;
    for (int i = 0; i + 1 < vertices; ++i) h.edges.push_back({i, i + 1});
    return h;
}

std::uint64_t colex_rank(const std::vector<int>& subset) {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < subset.size(); ++i)
        rank += binomial(subset[i], static_cast<long long>(i) + 1).convert_to<std::uint64_t>();
    return rank;
}

std::vector<int> colex_unrank(std::uint64_t rank, int k) {
    std::vector<int> out(k);
    for (int i = k; i >= 1; --i) {
        int v = i - 1;
        while (binomial(v + 1, i).convert_to<std::uint64_t>() <= rank) ++v;
        out[i - 1] = v;
        rank -= binomial(v, i).convert_to<std::uint64_t>();
    }
    return out;
}

std::uint64_t ColoringAssignment::edge_count() const {
    return binomial(n, k).convert_to<std::uint64_t>();
}

bool ColoringAssignment::total() const {
    for (int c : color)
        if (c < 0) return false;
    return color.size() == edge_count();
}

int ColoringAssignment::at(const std::vector<int>& edge) const {
    return color.at(colex_rank(edge));
}

ColoringAssignment ColoringAssignment::blank(int n, int k, int b) {
    ColoringAssignment col;
    col.n = n;
    col.k = k;
    col.b = b;
    col.color.assign(col.edge_count(), -1);
    return col;
}

namespace {

// Backtracking copy search shared by the public finder and the incremental
// check inside the coloring search. `pins` maps H-vertices to hosts.
std::optional<std::vector<int>> copy_search(const UniformHypergraph& H,
                                            const ColoringAssignment& col, int c,
                                            const std::map<int, int>& pins) {
    if (H.n > col.n) return std::nullopt;
    // degree-ordered pivot: place high-degree vertices first
    std::vector<int> order;
    for (int v = 0; v < H.n; ++v)
        if (!pins.count(v)) order.push_back(v);
    std::vector<int> deg(H.n, 0);
    for (int v = 0; v < H.n; ++v) deg[v] = H.degree(v);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] > deg[b]; });

    std::vector<int> image(H.n, -1);
    std::vector<char> used(col.n, 0);
    for (const auto& [v, host] : pins) {
        if (host < 0 || host >= col.n || used[host]) return std::nullopt;
        image[v] = host;
        used[host] = 1;
    }
    // edges checked once their last vertex (by placement order) lands
    std::vector<int> place_pos(H.n, -1);
    for (std::size_t i = 0; i < order.size(); ++i) place_pos[order[i]] = static_cast<int>(i);
    std::vector<std::vector<const std::vector<int>*>> completing(order.size() + 1);
    for (const auto& e : H.edges) {
        int last = -1;
        for (int v : e) last = std::max(last, place_pos[v]);
        completing[last + 1].push_back(&e);
    }
    // edges fully pinned
    for (const auto* e : completing[0]) {
        std::vector<int> hosts;
        for (int v : *e) hosts.push_back(image[v]);
        std::sort(hosts.begin(), hosts.end());
        if (col.at(hosts) != c) return std::nullopt;
    }

    auto rec = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == order.size()) return true;
        int v = order[pos];
        for (int host = 0; host < col.n; ++host) {
            if (used[host]) continue;
            image[v] = host;
            used[host] = 1;
            bool ok = true;
            for (const auto* e : completing[pos + 1]) {
                std::vector<int> hosts;
                hosts.reserve(e->size());
                for (int w : *e) hosts.push_back(image[w]);
                std::sort(hosts.begin(), hosts.end());
                if (col.at(hosts) != c) {
                    ok = false;
                    break;
                }
            }
            if (ok && self(self, pos + 1)) return true;
            used[host] = 0;
            image[v] = -1;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return image;
}

// Does coloring edge `anchor` with c complete a monochromatic H-copy?
bool completes_mono_copy(const UniformHypergraph& H, const ColoringAssignment& col, int c,
                         const std::vector<int>& anchor) {
    std::vector<int> perm(anchor);
    std::sort(perm.begin(), perm.end());
    for (const auto& f : H.edges) {
        std::vector<int> hosts(perm);
        do {
            std::map<int, int> pins;
            for (std::size_t i = 0; i < f.size(); ++i) pins[f[i]] = hosts[i];
            if (copy_search(H, col, c, pins)) return true;
        } while (std::next_permutation(hosts.begin(), hosts.end()));
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> find_monochromatic_copy(const UniformHypergraph& H,
                                                        const ColoringAssignment& col, int c) {
    if (!col.total()) throw std::invalid_argument("find_monochromatic_copy: partial coloring");
    if (H.k != col.k) throw ShapeMismatch("find_monochromatic_copy: uniformity differs");
    return copy_search(H, col, c, {});
}

std::optional<ColoringAssignment> exists_good_coloring(int n, const UniformHypergraph& H, int b,
                                                       const SearchOptions& options,
                                                       SearchStats* stats) {
    if (b < 1) throw std::invalid_argument("exists_good_coloring: need b >= 1");
    ColoringAssignment col = ColoringAssignment::blank(n, H.k, b);
    std::uint64_t m = col.edge_count();
    auto rec = [&](auto&& self, std::uint64_t t) -> bool {
        if (t == m) return true;
        std::vector<int> edge = colex_unrank(t, H.k);
        int colors_to_try = (t == 0 && options.break_symmetry) ? 1 : b;
        for (int c = 0; c < colors_to_try; ++c) {
            col.color[t] = c;
            if (stats) ++stats->nodes;
            if (!completes_mono_copy(H, col, c, edge) && self(self, t + 1)) return true;
        }
        col.color[t] = -1;
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return col;
}

RamseyResult ramsey_number(const UniformHypergraph& H, int b, int n_max) {
    RamseyResult result;
    std::optional<ColoringAssignment> last_good;
    for (int n = 1; n <= n_max; ++n) {
        SearchStats stats;
        auto good = exists_good_coloring(n, H, b, {}, &stats);
        result.nodes_per_n.push_back(stats.nodes);
        if (good) {
            last_good = std::move(good);
            result.lower = n + 1;
        } else {
            result.value = n;
            result.upper = n;
            result.witness = std::move(last_good);
            return result;
        }
    }
    result.witness = std::move(last_good);
    return result;
}

ColoredHypergraph partition_ambient(const ColoringAssignment& col, int m, int N) {
    if (col.n != m * N) throw ShapeMismatch("partition_ambient: |V| != m*N");
    if (!col.total()) throw std::invalid_argument("partition_ambient: partial coloring");
    if (m < col.k) throw ShapeMismatch("partition_ambient: fewer classes than k");
    ColoredHypergraph G;
    G.r = m;
    G.k = col.k;
    G.class_sizes.assign(m, N);
    for (const auto& I : all_indices(m, col.k)) {
        Palette pal;
        pal.index = I;
        if (I.size() < col.k) {
            pal.labels = {"black"};
            pal.cap = 1;
        } else {
            pal.cap = col.b;
            for (int c = 0; c < col.b; ++c) pal.labels.push_back("c" + std::to_string(c));
        }
        G.palettes.emplace(I, pal);
        ColorTable table = ColorTable::dense(G.edge_count(I), 0);
        if (I.size() == col.k) {
            for (std::uint64_t rank = 0; rank < table.size(); ++rank) {
                Edge e = G.edge_at(I, rank);
                std::vector<int> raw;
                for (const auto& v : e.verts) raw.push_back(v.cls * N + v.local);
                std::sort(raw.begin(), raw.end());
                table.set(rank, col.at(raw));
            }
        }
        G.coloring.emplace(I, std::move(table));
    }
    return G;
}

namespace {

bool tuple_clean(const ColoredHypergraph& G, const std::vector<int>& tuple,
                 const std::set<Edge>& exceptional) {
    for (const auto& I : all_indices(G.r, G.k)) {
        std::vector<Vertex> verts;
        for (int cls : I.ids) verts.push_back(Vertex{cls, tuple[cls]});
        Edge e;
        e.verts = std::move(verts);
        if (exceptional.count(e)) return false;
    }
    return true;
}

}  // namespace

PipelineReport pipeline_demo(const ColoredHypergraph& Gstar, const RegularityWitness& witness,
                             const UniformHypergraph& B_input, int delta_cap,
                             const EtaProfile& profile, const Rat& alpha, std::uint64_t seed,
                             std::uint64_t restart_budget) {
    profile.validate();
    B_input.validate();
    if (B_input.k != Gstar.k) throw ShapeMismatch("pipeline: uniformity differs from ambient");
    if (B_input.max_deg() > delta_cap)
        throw std::invalid_argument("pipeline: B exceeds the stated degree cap");
    for (int n : Gstar.class_sizes)
        if (n == 0) throw EmptyAmbientClass("pipeline: empty ambient class");

    PipelineReport report;

    // (1) exceptional edges at rho_i = alpha / b_i^*
    report.exceptional = exceptional_edges(
        Gstar, [&](int level) { return alpha / Gstar.b_star(level); }, witness, alpha);
    std::set<Edge> flagged;
    for (const auto& fe : report.exceptional.edges) flagged.insert(fe.edge);

    // (2) representatives avoiding every exceptional induced edge
    Rng rng(seed);
    std::vector<int> tuple(Gstar.r, 0);
    bool found = false;
    for (std::uint64_t attempt = 0; attempt < restart_budget && !found; ++attempt) {
        ++report.tuple_attempts;
        for (int c = 0; c < Gstar.r; ++c) tuple[c] = rng.below_int(Gstar.class_sizes[c]);
        found = tuple_clean(Gstar, tuple, flagged);
    }
    if (!found) {
        // exhaustive fallback in odometer order
        std::fill(tuple.begin(), tuple.end(), 0);
        while (true) {
            ++report.tuple_attempts;
            if (tuple_clean(Gstar, tuple, flagged)) {
                found = true;
                break;
            }
            int i = Gstar.r - 1;
            while (i >= 0 && ++tuple[i] == Gstar.class_sizes[i]) tuple[i--] = 0;
            if (i < 0) break;
        }
    }
    if (!found) {
        report.failure = "NoCleanTuple";
        return report;
    }
    report.representatives = tuple;

    // (3) monochromatic clique of delta_cap + 1 representatives
    int r_needed = delta_cap + 1;
    if (r_needed > Gstar.r) {
        report.failure = "NoMonochromaticClique";
        return report;
    }
    ColoringAssignment reduced = ColoringAssignment::blank(Gstar.r, Gstar.k, 1);
    for (std::uint64_t rank = 0; rank < reduced.edge_count(); ++rank) {
        std::vector<int> classes = colex_unrank(rank, Gstar.k);
        std::vector<Vertex> verts;
        for (int cls : classes) verts.push_back(Vertex{cls, tuple[cls]});
        Edge e;
        e.verts = std::move(verts);
        std::sort(e.verts.begin(), e.verts.end());
        reduced.color[rank] = Gstar.color_of(e);
        reduced.b = std::max(reduced.b, reduced.color[rank] + 1);
    }
    UniformHypergraph clique = UniformHypergraph::complete(r_needed, Gstar.k);
    std::optional<std::vector<int>> mono;
    for (int c = 0; c < reduced.b && !mono; ++c) {
        mono = find_monochromatic_copy(clique, reduced, c);
        if (mono) report.mono_color = c;
    }
    if (!mono) {
        report.failure = "NoMonochromaticClique";
        return report;
    }
    std::vector<int> selected = *mono;
    std::sort(selected.begin(), selected.end());
    report.clique_classes = selected;

    // (4) greedy partition of the 2-skeleton and the blowup recoloring
    std::vector<std::set<int>> adjacent(B_input.n);
    for (const auto& e : B_input.edges)
        for (int u : e)
            for (int v : e)
                if (u != v) adjacent[u].insert(v);
    std::vector<int> part(B_input.n, -1);
    for (int v = 0; v < B_input.n; ++v) {
        std::set<int> taken;
        for (int w : adjacent[v])
            if (part[w] >= 0) taken.insert(part[w]);
        int c = 0;
        while (taken.count(c)) ++c;
        part[v] = c;
    }
    report.partition_class_of = part;

    auto rep_edge = [&](const std::vector<int>& classes) {
        std::vector<Vertex> verts;
        for (int cls : classes) verts.push_back(Vertex{cls, tuple[cls]});
        Edge e;
        e.verts = std::move(verts);
        std::sort(e.verts.begin(), e.verts.end());
        return e;
    };

    // pattern on the selected representatives
    Complex S = Complex::empty(Gstar.r, Gstar.k, Gstar.palettes);
    for (int cls : selected) S.add_vertex(cls);
    for (const auto& I : all_indices(Gstar.r, Gstar.k)) {
        bool inside = true;
        for (int cls : I.ids)
            if (!std::binary_search(selected.begin(), selected.end(), cls)) inside = false;
        if (!inside) continue;
        std::vector<Vertex> verts;
        for (int cls : I.ids) verts.push_back(Vertex{cls, 0});
        Edge se;
        se.verts = std::move(verts);
        S.set_color(se, Gstar.color_of(rep_edge(I.ids)));
    }

    // the input hypergraph as a blowup of S
    Complex B = Complex::empty(Gstar.r, Gstar.k, Gstar.palettes);
    std::vector<Vertex> host(B_input.n);
    for (int v = 0; v < B_input.n; ++v) host[v] = B.add_vertex(selected[part[v]]);
    for (const auto& e : B_input.edges) {
        for (auto mask : subset_masks(static_cast<int>(e.size()))) {
            std::vector<int> members;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (mask & (1u << i)) members.push_back(e[i]);
            std::vector<Vertex> verts;
            std::vector<int> classes;
            for (int v : members) {
                verts.push_back(host[v]);
                classes.push_back(host[v].cls);
            }
            std::sort(verts.begin(), verts.end());
            std::sort(classes.begin(), classes.end());
            Edge be;
            be.verts = std::move(verts);
            Color c = members.size() == e.size() ? report.mono_color
                                                 : Gstar.color_of(rep_edge(classes));
            B.set_color(be, c);
        }
    }

    // (5) injective embedding by backtracking, replacing the probabilistic step
    auto phi = find_embedding(B, Gstar, true);
    if (!phi) {
        report.failure = "NoEmbedding";
        return report;
    }
    std::map<int, std::set<int>> used;
    bool injective_ok = true;
    for (int v = 0; v < B_input.n; ++v) {
        Vertex img = phi->at(host[v]);
        report.embedding[v] = img;
        if (!used[img.cls].insert(img.local).second) injective_ok = false;
    }
    report.reverified = injective_ok && embeds(B, *phi, Gstar);
    report.success = report.reverified;
    if (!report.success) report.failure = "NoEmbedding";
    return report;
}

}  // namespace hrt
