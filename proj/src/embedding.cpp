#include "hrt/embedding.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>

namespace hrt {

const Vertex& PartitionwiseMap::at(const Vertex& v) const {
    auto it = assign.find(v);
    if (it == assign.end()) throw MissingAssignment("partitionwise map: vertex not assigned");
    return it->second;
}

Edge PartitionwiseMap::image(const Edge& e) const {
    std::vector<Vertex> verts;
    verts.reserve(e.verts.size());
    for (const auto& v : e.verts) verts.push_back(at(v));
    Edge out;
    out.verts = std::move(verts);  // class-preserving maps keep the class order
    return out;
}

PartitionwiseMap union_map(const PartitionwiseMap& phi, const PartitionwiseMap& phi2) {
    PartitionwiseMap out = phi;
    for (const auto& [w, img] : phi2.assign) {
        if (out.assign.count(w)) throw DomainOverlap("union_map: domains overlap");
        out.assign.emplace(w, img);
    }
    return out;
}

namespace {

Color translate_color(const ColorMap* cmap, const IndexSet& I, Color c, const Palette& ambient) {
    if (c == kInvisible) throw std::invalid_argument("translate_color: invisible color");
    Color mapped = c;
    if (cmap) {
        auto it = cmap->find(I);
        if (it != cmap->end()) {
            if (c < 0 || c >= static_cast<int>(it->second.size()))
                throw UnmappedColor("pattern color has no ambient counterpart");
            mapped = it->second[c];
        }
    }
    if (mapped < 0 || mapped >= ambient.size())
        throw UnmappedColor("pattern color has no ambient counterpart");
    return mapped;
}

void check_shapes(const Complex& S, const ColoredHypergraph& G) {
    if (S.r != G.r) throw ShapeMismatch("pattern and ambient class counts differ");
    if (S.k > G.k) throw ShapeMismatch("pattern bound exceeds ambient bound");
}

// One visible pattern edge, compiled against a partial order of free vertices.
struct CheckItem {
    IndexSet index;
    std::vector<int> classes;     // class of each edge slot, ascending
    std::vector<int> fixed;       // ambient local or -1 when free
    std::vector<int> positions;   // free-order position or -1 when fixed
    Color expected;
    int last_pos = -1;  // largest free position; -1 means fully pinned
};

struct Enumerator {
    const Complex& S;
    const ColoredHypergraph& G;
    bool injective;
    const ColorMap* cmap;

    std::vector<Vertex> free_verts;           // canonical order
    std::vector<std::vector<Vertex>> pinned;  // ambient images per class
    std::vector<CheckItem> items;
    bool statically_failed = false;

    std::vector<std::vector<int>> completing;  // item indices by last_pos
    std::vector<std::vector<int>> live;        // live positions per depth
    std::vector<std::vector<int>> class_future;  // classes with free verts at >= depth

    Enumerator(const Complex& s, const ColoredHypergraph& g, bool inj,
               const PartitionwiseMap* pins, const ColorMap* cm)
        : S(s), G(g), injective(inj), cmap(cm), pinned(g.r) {
        check_shapes(S, G);
        std::map<Vertex, int> position;
        std::map<Vertex, Vertex> pin_map;
        if (pins) {
            for (const auto& [v, img] : pins->assign) {
                if (!S.is_vertex(v))
                    throw std::invalid_argument("count_embeddings: pin outside V(S)");
                if (img.cls != v.cls)
                    throw std::invalid_argument("count_embeddings: pin not class-preserving");
                if (img.local < 0 || img.local >= G.class_sizes[img.cls])
                    throw DanglingReference("count_embeddings: pin outside ambient class");
                pin_map.emplace(v, img);
                pinned[img.cls].push_back(img);
            }
        }
        for (const auto& v : S.vertices()) {
            if (pin_map.count(v)) continue;
            if (G.class_sizes[v.cls] == 0)
                throw EmptyAmbientClass("ambient class " + std::to_string(v.cls) + " is empty");
            position.emplace(v, static_cast<int>(free_verts.size()));
            free_verts.push_back(v);
        }
        if (injective) {
            for (int c = 0; c < G.r; ++c) {
                std::sort(pinned[c].begin(), pinned[c].end());
                if (std::adjacent_find(pinned[c].begin(), pinned[c].end()) != pinned[c].end())
                    statically_failed = true;
            }
        }

        int F = static_cast<int>(free_verts.size());
        completing.assign(std::max(F, 1), {});
        for (const auto& [e, col] : S.colors) {
            if (col == kInvisible) continue;
            CheckItem item;
            item.index = e.index();
            item.expected = translate_color(cmap, item.index, col, G.palette(item.index));
            for (const auto& v : e.verts) {
                item.classes.push_back(v.cls);
                auto pit = pin_map.find(v);
                if (pit != pin_map.end()) {
                    item.fixed.push_back(pit->second.local);
                    item.positions.push_back(-1);
                } else {
                    item.fixed.push_back(-1);
                    int pos = position.at(v);
                    item.positions.push_back(pos);
                    item.last_pos = std::max(item.last_pos, pos);
                }
            }
            if (item.last_pos < 0) {
                // fully pinned: decide now
                Edge img;
                for (std::size_t i = 0; i < item.classes.size(); ++i)
                    img.verts.push_back(Vertex{item.classes[i], item.fixed[i]});
                if (G.color_of(img) != item.expected) statically_failed = true;
            } else {
                completing[item.last_pos].push_back(static_cast<int>(items.size()));
                items.push_back(std::move(item));
            }
        }

        // liveness: position q is live at depth p iff q < p and some item
        // containing q completes at or after p
        std::vector<int> max_last(F, -1);
        for (const auto& item : items)
            for (int q : item.positions)
                if (q >= 0) max_last[q] = std::max(max_last[q], item.last_pos);
        live.assign(F + 1, {});
        for (int p = 0; p <= F; ++p)
            for (int q = 0; q < std::min(p, F); ++q)
                if (max_last[q] >= p) live[p].push_back(q);
        class_future.assign(F + 1, {});
        if (injective) {
            for (int p = 0; p <= F; ++p) {
                std::vector<char> seen(G.r, 0);
                for (int q = p; q < F; ++q) seen[free_verts[q].cls] = 1;
                for (int c = 0; c < G.r; ++c)
                    if (seen[c]) class_future[p].push_back(c);
            }
        }
    }

    Int total_maps() const {
        Int total = 1;
        for (const auto& v : free_verts) total *= G.class_sizes[v.cls];
        return total;
    }

    bool edge_matches(const CheckItem& item, const std::vector<int>& images) const {
        Edge img;
        img.verts.reserve(item.classes.size());
        for (std::size_t i = 0; i < item.classes.size(); ++i) {
            int local = item.fixed[i] >= 0 ? item.fixed[i] : images[item.positions[i]];
            img.verts.push_back(Vertex{item.classes[i], local});
        }
        return G.color_of(img) == item.expected;
    }

    bool used_in_class(const std::vector<int>& images, int p, const Vertex& cand) const {
        for (const auto& u : pinned[cand.cls])
            if (u.local == cand.local) return true;
        for (int q = 0; q < p; ++q)
            if (free_verts[q].cls == cand.cls && images[q] == cand.local) return true;
        return false;
    }

    std::vector<int> memo_key(int p, const std::vector<int>& images) const {
        std::vector<int> key;
        for (int q : live[p]) key.push_back(images[q]);
        if (injective) {
            for (int c : class_future[p]) {
                key.push_back(-1);  // class separator
                std::vector<int> used;
                for (int q = 0; q < p; ++q)
                    if (free_verts[q].cls == c) used.push_back(images[q]);
                std::sort(used.begin(), used.end());
                key.insert(key.end(), used.begin(), used.end());
            }
        }
        return key;
    }

    Int count(int depth, std::vector<int>& images,
              std::vector<std::map<std::vector<int>, Int>>& memo) const {
        int F = static_cast<int>(free_verts.size());
        if (depth == F) return 1;
        auto key = memo_key(depth, images);
        auto it = memo[depth].find(key);
        if (it != memo[depth].end()) return it->second;
        Int total = 0;
        const Vertex& v = free_verts[depth];
        for (int a = 0; a < G.class_sizes[v.cls]; ++a) {
            if (injective && used_in_class(images, depth, Vertex{v.cls, a})) continue;
            images[depth] = a;
            bool ok = true;
            for (int idx : completing[depth])
                if (!edge_matches(items[idx], images)) {
                    ok = false;
                    break;
                }
            if (ok) total += count(depth + 1, images, memo);
        }
        images[depth] = -1;
        memo[depth].emplace(std::move(key), total);
        return total;
    }

    Int count_all() const {
        if (statically_failed) return 0;
        int F = static_cast<int>(free_verts.size());
        if (F == 0) return 1;
        int workers = thread_count();
        int n0 = G.class_sizes[free_verts[0].cls];
        if (workers <= 1 || n0 < 2) {
            std::vector<int> images(F, -1);
            std::vector<std::map<std::vector<int>, Int>> memo(F + 1);
            return count(0, images, memo);
        }
        // split the root candidates; exact addition makes the result
        // independent of scheduling
        workers = std::min(workers, n0);
        std::vector<std::future<Int>> futures;
        for (int w = 0; w < workers; ++w) {
            futures.push_back(std::async(std::launch::async, [this, w, workers, n0, F]() {
                Int sub = 0;
                for (int a = w; a < n0; a += workers) {
                    std::vector<int> images(F, -1);
                    if (injective && used_in_class(images, 0, Vertex{free_verts[0].cls, a}))
                        continue;
                    images[0] = a;
                    bool ok = true;
                    for (int idx : completing[0])
                        if (!edge_matches(items[idx], images)) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    std::vector<std::map<std::vector<int>, Int>> memo(F + 1);
                    sub += count(1, images, memo);
                }
                return sub;
            }));
        }
        Int total = 0;
        for (auto& f : futures) total += f.get();
        return total;
    }

    std::optional<PartitionwiseMap> find(const PartitionwiseMap* pins) const {
        if (statically_failed) return std::nullopt;
        int F = static_cast<int>(free_verts.size());
        std::vector<int> images(F, -1);
        auto rec = [&](auto&& self, int depth) -> bool {
            if (depth == F) return true;
            const Vertex& v = free_verts[depth];
            for (int a = 0; a < G.class_sizes[v.cls]; ++a) {
                if (injective && used_in_class(images, depth, Vertex{v.cls, a})) continue;
                images[depth] = a;
                bool ok = true;
                for (int idx : completing[depth])
                    if (!edge_matches(items[idx], images)) {
                        ok = false;
                        break;
                    }
                if (ok && self(self, depth + 1)) return true;
            }
            images[depth] = -1;
            return false;
        };
        if (!rec(rec, 0)) return std::nullopt;
        PartitionwiseMap out;
        if (pins) out = *pins;
        for (int q = 0; q < F; ++q)
            out.assign[free_verts[q]] = Vertex{free_verts[q].cls, images[q]};
        return out;
    }
};

}  // namespace

bool embeds(const Complex& S, const PartitionwiseMap& phi, const ColoredHypergraph& G,
            const ColorMap* cmap) {
    check_shapes(S, G);
    for (const auto& v : S.vertices()) {
        const Vertex& img = phi.at(v);  // MissingAssignment when absent
        if (img.cls != v.cls)
            throw std::invalid_argument("embeds: map is not class-preserving");
        if (img.local < 0 || img.local >= G.class_sizes[img.cls])
            throw DanglingReference("embeds: image outside ambient class");
    }
    for (const auto& [e, col] : S.colors) {
        if (col == kInvisible) continue;
        Color want = translate_color(cmap, e.index(), col, G.palette(e.index()));
        if (G.color_of(phi.image(e)) != want) return false;
    }
    return true;
}

EmbedCount count_embeddings(const Complex& S, const ColoredHypergraph& G, bool injective,
                            const PartitionwiseMap* pins, const ColorMap* cmap) {
    Enumerator en(S, G, injective, pins, cmap);
    return EmbedCount{en.count_all(), en.total_maps()};
}

Rat embedding_probability(const Complex& S, const ColoredHypergraph& G, const ColorMap* cmap) {
    auto c = count_embeddings(S, G, false, nullptr, cmap);
    return Rat(c.embeddings, c.total_maps);
}

Rat injective_embedding_probability(const Complex& B, const ColoredHypergraph& G,
                                    const ColorMap* cmap) {
    auto c = count_embeddings(B, G, true, nullptr, cmap);
    return Rat(c.embeddings, c.total_maps);
}

namespace {

void require_induced(const Complex& Bpp, const Complex& Bp) {
    if (Bp.r != Bpp.r || Bp.k != Bpp.k || Bp.class_slots != Bpp.class_slots)
        throw NotInducedRestriction("base complex lives on different slots");
    for (int c = 0; c < Bp.r; ++c)
        for (int l = 0; l < Bp.class_slots[c]; ++l)
            if (Bp.active[c][l] && !Bpp.active[c][l])
                throw NotInducedRestriction("base vertex missing from the extension");
    auto inside_base = [&](const Edge& e) {
        for (const auto& v : e.verts)
            if (!Bp.is_vertex(v)) return false;
        return true;
    };
    for (const auto& [e, col] : Bpp.colors)
        if (inside_base(e) && Bp.color_of(e) != col)
            throw NotInducedRestriction("colors differ on the base vertex set");
    for (const auto& [e, col] : Bp.colors)
        if (Bpp.color_of(e) != col)
            throw NotInducedRestriction("colors differ on the base vertex set");
}

}  // namespace

Rat conditional_extension_probability(const Complex& Bpp, const Complex& Bp,
                                      const PartitionwiseMap& phi, const ColoredHypergraph& G,
                                      const ColorMap* cmap) {
    require_induced(Bpp, Bp);
    if (!embeds(Bp, phi, G, cmap)) throw BaseNotEmbedded("phi does not embed the base complex");
    PartitionwiseMap pins;
    for (const auto& v : Bp.vertices()) pins.assign[v] = phi.at(v);
    auto c = count_embeddings(Bpp, G, false, &pins, cmap);
    return Rat(c.embeddings, c.total_maps);
}

std::optional<PartitionwiseMap> find_embedding(const Complex& S, const ColoredHypergraph& G,
                                               bool injective, const PartitionwiseMap* pins,
                                               const ColorMap* cmap) {
    Enumerator en(S, G, injective, pins, cmap);
    return en.find(pins);
}

bool is_pattern_embedding(const Complex& B, const std::map<Vertex, Vertex>& pi, const Complex& S) {
    for (const auto& v : B.vertices()) {
        auto it = pi.find(v);
        if (it == pi.end()) return false;
        if (it->second.cls != v.cls || !S.is_vertex(it->second)) return false;
    }
    for (const auto& [e, col] : B.colors) {
        if (col == kInvisible) continue;
        std::vector<Vertex> verts;
        for (const auto& v : e.verts) verts.push_back(pi.at(v));
        for (std::size_t i = 1; i < verts.size(); ++i)
            if (verts[i].cls == verts[i - 1].cls) return false;  // collapsed copies
        Edge img;
        img.verts = std::move(verts);
        if (S.color_of(img) != col) return false;
    }
    return true;
}

std::optional<std::map<Vertex, Vertex>> find_pattern_embedding(const Complex& B,
                                                               const Complex& S) {
    auto b_verts = B.vertices();
    std::map<Vertex, Vertex> pi;
    auto rec = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == b_verts.size()) return is_pattern_embedding(B, pi, S);
        const Vertex& v = b_verts[pos];
        for (int l = 0; l < S.class_slots[v.cls]; ++l) {
            if (!S.active[v.cls][l]) continue;
            pi[v] = Vertex{v.cls, l};
            // partial check: visible edges fully placed must match
            bool ok = true;
            for (const auto& [e, col] : B.colors) {
                if (col == kInvisible || !e.contains(v)) continue;
                bool placed = true;
                for (const auto& w : e.verts)
                    if (!pi.count(w)) placed = false;
                if (!placed) continue;
                std::vector<Vertex> verts;
                for (const auto& w : e.verts) verts.push_back(pi.at(w));
                std::sort(verts.begin(), verts.end());
                bool collapsed = false;
                for (std::size_t i = 1; i < verts.size(); ++i)
                    if (verts[i].cls == verts[i - 1].cls) collapsed = true;
                Edge img;
                img.verts = verts;
                if (collapsed || S.color_of(img) != col) {
                    ok = false;
                    break;
                }
            }
            if (ok && self(self, pos + 1)) return true;
        }
        pi.erase(v);
        return false;
    };
    if (rec(rec, 0)) return pi;
    return std::nullopt;
}

int thread_count() {
    const char* env = std::getenv("HRT_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n > 0 ? n : 1;
}

}  // namespace hrt
