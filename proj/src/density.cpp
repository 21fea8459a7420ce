#include "hrt/density.hpp"

#include <algorithm>
#include <sstream>

namespace hrt {

DensityTable density_table(const ColoredHypergraph& G, const IndexSet& I) {
    DensityTable t;
    t.edge_total = G.edge_count(I);
    for (std::uint64_t rank = 0; rank < t.edge_total; ++rank) {
        TotalColor tc = total_color(G, G.edge_at(I, rank));
        ++t.total_counts[tc.colors];
        ++t.frame_counts[tc.frame()];
    }
    return t;
}

Rat relative_density(const DensityTable& table, const TotalColor& c) {
    auto fit = table.frame_counts.find(c.frame());
    if (fit == table.frame_counts.end() || fit->second == 0)
        throw EmptyFrame("no edge realizes the frame color");
    auto tit = table.total_counts.find(c.colors);
    std::uint64_t num = tit == table.total_counts.end() ? 0 : tit->second;
    return Rat(num, fit->second);
}

Rat relative_density(const ColoredHypergraph& G, const TotalColor& c) {
    return relative_density(density_table(G, c.index), c);
}

namespace {

std::string edge_str(const Edge& e) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < e.verts.size(); ++i)
        os << (i ? "," : "") << "(" << e.verts[i].cls << "," << e.verts[i].local << ")";
    os << "}";
    return os.str();
}

}  // namespace

Rat chain_rule_product(const Complex& S, const ColoredHypergraph& G) {
    std::map<IndexSet, DensityTable> tables;
    Rat product = 1;
    for (const auto& [e, col] : S.colors) {
        if (col == kInvisible) continue;
        TotalColor tc = pattern_total_color(S, e);
        for (Color c : tc.colors)
            if (c == kInvisible)
                throw std::invalid_argument("chain_rule_product: visible edge with invisible face");
        auto it = tables.find(tc.index);
        if (it == tables.end()) it = tables.emplace(tc.index, density_table(G, tc.index)).first;
        try {
            product *= relative_density(it->second, tc);
        } catch (const EmptyFrame&) {
            throw EmptyFrame("empty frame at edge " + edge_str(e));
        }
    }
    return product;
}

Rat discrepancy(const Complex& S, const ColoredHypergraph& G) {
    return embedding_probability(S, G) - chain_rule_product(S, G);
}

Rat RegularityWitness::delta_of(const TotalColor& c) const {
    auto it = delta.find(c);
    if (it != delta.end()) return it->second;
    if (delta_default) return *delta_default;
    throw std::invalid_argument("witness delta is not defined on a realized total color");
}

void RegularityWitness::use_epsilon_table() {
    auto table = epsilon_levels;
    epsilon = [table](int level, int) -> Rat {
        if (level < 1 || level > static_cast<int>(table.size()))
            throw std::invalid_argument("witness epsilon table has no such level");
        return table[level - 1];
    };
}

bool enumerate_patterns(const ColoredHypergraph& G, int h, std::uint64_t budget,
                        const std::function<bool(const Complex&)>& yield) {
    Complex base = Complex::empty(G.r, G.k, G.palettes);
    for (int c = 0; c < G.r; ++c)
        for (int i = 0; i < h; ++i) base.add_vertex(c);

    // all partite edges over the h-per-class vertex set, canonical order
    std::vector<Edge> edges;
    for (const auto& I : all_indices(G.r, G.k)) {
        std::vector<Vertex> pick(I.ids.size());
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (pos == I.ids.size()) {
                Edge e;
                e.verts = pick;
                edges.push_back(e);
                return;
            }
            for (int l = 0; l < h; ++l) {
                pick[pos] = Vertex{I.ids[pos], l};
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
    }
    std::sort(edges.begin(), edges.end());

    std::uint64_t produced = 0;
    auto assign = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == edges.size()) {
            if (produced == budget) return false;  // a pattern beyond the budget exists
            ++produced;
            return yield(base);
        }
        const Edge& e = edges[pos];
        bool forced_invisible = false;
        if (e.size() > 1)
            for (auto m : subset_masks(e.size())) {
                Edge sub = e.sub_edge(m);
                if (sub.size() < e.size() && !base.is_visible(sub)) {
                    forced_invisible = true;
                    break;
                }
            }
        if (!forced_invisible) {
            int n_colors = G.palette(e.index()).size();
            for (Color c = 0; c < n_colors; ++c) {
                base.colors[e] = c;
                if (!self(self, pos + 1)) {
                    base.colors.erase(e);
                    return false;
                }
            }
            base.colors.erase(e);
        }
        return self(self, pos + 1);  // invisible choice last
    };
    return assign(assign, 0);
}

namespace {

// Smallest uniform slack s (within 2^-40, rounded up) such that
// P lies in prod over edges of [max(0, d-s), min(1, d+s)].
Rat min_uniform_slack(const Rat& p, const std::vector<Rat>& densities) {
    auto holds = [&](const Rat& s) {
        Rat lo = 1, hi = 1;
        for (const Rat& d : densities) {
            lo *= std::max(Rat(0), d - s);
            hi *= std::min(Rat(1), d + s);
        }
        return lo <= p && p <= hi;
    };
    if (holds(Rat(0))) return Rat(0);
    Rat lo = 0, hi = 1;
    for (int iter = 0; iter < 40; ++iter) {
        Rat mid = (lo + hi) / 2;
        if (holds(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

DensityReport check_regularity(const ColoredHypergraph& G, const RegularityWitness& witness,
                               std::uint64_t pattern_budget) {
    DensityReport report;
    std::map<IndexSet, DensityTable> tables;
    for (const auto& I : all_indices(G.r, G.k)) tables.emplace(I, density_table(G, I));

    // condition (ii): mean delta per index against epsilon(|I|, b*)
    for (const auto& I : all_indices(G.r, G.k)) {
        const auto& t = tables.at(I);
        IndexCheck check;
        check.index = I;
        check.b_star = G.b_star(I.size());
        if (t.edge_total == 0) continue;  // empty class: nothing to average
        Rat sum = 0;
        for (const auto& [colors, count] : t.total_counts) {
            TotalColor tc{I, colors};
            Rat d = witness.delta_of(tc);
            sum += d * Rat(count);
            report.densities.push_back(
                DensityEntry{tc, relative_density(t, tc), d});
        }
        check.mean_delta = sum / Rat(t.edge_total);
        check.epsilon = witness.epsilon(I.size(), check.b_star);
        check.pass = check.mean_delta <= check.epsilon;
        if (!check.pass) report.pass_ii = false;
        report.condition_ii.push_back(std::move(check));
    }

    // condition (i) over enumerated patterns
    bool exhausted = enumerate_patterns(G, witness.h, pattern_budget, [&](const Complex& S) {
        ++report.patterns_checked;
        Rat lo = 1, hi = 1;
        std::vector<Rat> densities;
        bool vacuous = false;
        for (const auto& [e, col] : S.colors) {
            if (col == kInvisible) continue;
            TotalColor tc = pattern_total_color(S, e);
            const auto& t = tables.at(tc.index);
            if (!t.frame_counts.count(tc.frame())) {
                vacuous = true;
                break;
            }
            Rat d = relative_density(t, tc);
            Rat dl = t.total_counts.count(tc.colors) ? witness.delta_of(tc) : Rat(0);
            densities.push_back(d);
            lo *= std::max(Rat(0), d - dl);
            hi *= std::min(Rat(1), d + dl);
        }
        Rat p = embedding_probability(S, G);
        if (vacuous) {
            // an unrealized face forces probability zero; nothing to bound
            ++report.patterns_vacuous;
            if (p != 0) {
                report.pass_i = false;
                report.failures.push_back(PatternFailure{S, p, Rat(0), Rat(0)});
            }
            return true;
        }
        if (p < lo || p > hi) {
            report.pass_i = false;
            report.failures.push_back(PatternFailure{S, p, lo, hi});
        }
        Rat slack = min_uniform_slack(p, densities);
        for (const auto& [e, col] : S.colors) {
            if (col == kInvisible) continue;
            TotalColor tc = pattern_total_color(S, e);
            auto it = report.min_uniform_slack.find(tc);
            if (it == report.min_uniform_slack.end())
                report.min_uniform_slack.emplace(tc, slack);
            else
                it->second = std::max(it->second, slack);
        }
        return true;
    });
    report.budget_exhausted = !exhausted;
    return report;
}

bool is_subdivision(const ColoredHypergraph& Gstar, const ColoredHypergraph& G) {
    if (Gstar.r != G.r || Gstar.k != G.k || Gstar.class_sizes != G.class_sizes)
        throw ShapeMismatch("subdivision check: objects live on different classes");
    for (const auto& I : all_indices(G.r, G.k)) {
        if (I.size() == G.k) {
            if (Gstar.palette(I).labels != G.palette(I).labels)
                throw ShapeMismatch("subdivision check: size-k palettes differ");
            for (std::uint64_t rank = 0; rank < G.edge_count(I); ++rank)
                if (Gstar.color_of(Gstar.edge_at(I, rank)) != G.color_of(G.edge_at(I, rank)))
                    return false;
        } else {
            // each G* color class must land inside one G color class
            std::map<Color, Color> refines;
            for (std::uint64_t rank = 0; rank < G.edge_count(I); ++rank) {
                Color cs = Gstar.color_of(Gstar.edge_at(I, rank));
                Color cg = G.color_of(G.edge_at(I, rank));
                auto [it, inserted] = refines.emplace(cs, cg);
                if (!inserted && it->second != cg) return false;
            }
        }
    }
    return true;
}

ExceptionalReport exceptional_edges(const ColoredHypergraph& Gstar,
                                    const std::function<Rat(int level)>& rho,
                                    const RegularityWitness& witness, const Rat& alpha) {
    ExceptionalReport report;
    for (const auto& I : all_indices(Gstar.r, Gstar.k)) {
        DensityTable t = density_table(Gstar, I);
        ExceptionalIndexStats stats;
        stats.index = I;
        stats.edges = t.edge_total;
        int level = I.size();
        int b_star = Gstar.b_star(level);
        Rat rho_i = rho(level);
        Rat delta_cut = witness.epsilon(level, b_star) / alpha;
        for (std::uint64_t rank = 0; rank < t.edge_total; ++rank) {
            Edge e = Gstar.edge_at(I, rank);
            TotalColor tc = total_color(Gstar, e);
            ExceptionalEdge flagged;
            flagged.edge = e;
            flagged.low_density = relative_density(t, tc) < rho_i;
            flagged.high_delta = witness.delta_of(tc) > delta_cut;
            if (flagged.low_density) ++stats.low_density;
            if (flagged.high_delta) ++stats.high_delta;
            if (flagged.low_density || flagged.high_delta) {
                ++stats.exceptional;
                report.edges.push_back(std::move(flagged));
            }
        }
        stats.fraction = stats.edges ? Rat(stats.exceptional, stats.edges) : Rat(0);
        stats.bound = rho_i * b_star + alpha;
        stats.within_bound = stats.fraction <= stats.bound;
        if (!stats.within_bound) report.all_within_bound = false;
        report.per_index.push_back(std::move(stats));
    }
    return report;
}

}  // namespace hrt
