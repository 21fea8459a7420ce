#include "hrt/counting.hpp"

#include <algorithm>

namespace hrt {

void EtaProfile::validate() const {
    if (eta.empty() || eta.size() != rho.size())
        throw std::invalid_argument("profile: need matching eta and rho tables");
    for (std::size_t i = 0; i < eta.size(); ++i) {
        if (eta[i] <= 0 || eta[i] >= 1)
            throw std::invalid_argument("profile: eta outside (0,1)");
        if (rho[i] <= 0 || rho[i] >= 1)
            throw std::invalid_argument("profile: rho outside (0,1)");
        if (i > 0 && (eta[i] < eta[i - 1] || rho[i] < rho[i - 1]))
            throw std::invalid_argument("profile: eta and rho must be nondecreasing");
    }
}

Rat EtaProfile::eta_at(int level) const {
    if (level < 1 || level > levels())
        throw std::invalid_argument("profile: level out of range");
    return eta[level - 1];
}

Rat EtaProfile::rho_at(int level) const {
    if (level < 1 || level > levels())
        throw std::invalid_argument("profile: level out of range");
    return rho[level - 1];
}

namespace {

// Color-preserving, class-preserving vertex bijections of S, as permutations
// of the canonical vertex list. S is tiny; plain enumeration.
std::vector<std::vector<int>> automorphisms(const Complex& S) {
    auto verts = S.vertices();
    int n = static_cast<int>(verts.size());
    std::map<Vertex, int> pos;
    for (int i = 0; i < n; ++i) pos[verts[i]] = i;

    std::vector<std::vector<int>> per_class_members(S.r);
    for (int i = 0; i < n; ++i) per_class_members[verts[i].cls].push_back(i);

    std::vector<std::vector<int>> result;
    std::vector<int> sigma(n);
    auto apply_ok = [&]() {
        for (const auto& [e, col] : S.colors) {
            std::vector<Vertex> mapped;
            for (const auto& v : e.verts) mapped.push_back(verts[sigma[pos.at(v)]]);
            Edge img;
            img.verts = std::move(mapped);
            std::sort(img.verts.begin(), img.verts.end());
            if (S.color_of(img) != col) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int cls) -> void {
        if (cls == S.r) {
            if (apply_ok()) result.push_back(sigma);
            return;
        }
        auto& members = per_class_members[cls];
        std::vector<int> perm = members;
        std::sort(perm.begin(), perm.end());
        do {
            for (std::size_t i = 0; i < members.size(); ++i) sigma[members[i]] = perm[i];
            self(self, cls + 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    rec(rec, 0);
    return result;
}

}  // namespace

std::vector<std::vector<int>> test_blowup_multiplicities(const Complex& S, int delta,
                                                         int vertex_cap) {
    if (delta < 1) throw std::invalid_argument("test blowups: delta must be positive");
    auto verts = S.vertices();
    int n = static_cast<int>(verts.size());
    if (n == 0) return {{}};

    Int size_cap_big = 2 * ipow(Int(delta), 2u * static_cast<unsigned>(S.k));
    int size_cap = vertex_cap;
    if (size_cap_big < vertex_cap) size_cap = static_cast<int>(size_cap_big);
    if (size_cap < n) return {};

    std::map<Vertex, int> pos;
    for (int i = 0; i < n; ++i) pos[verts[i]] = i;
    // visible-pair neighbors, for the blown-up degree
    std::vector<std::vector<int>> nbr(n);
    for (const auto& [e, c] : S.colors)
        if (c != kInvisible && e.size() == 2) {
            nbr[pos.at(e.verts[0])].push_back(pos.at(e.verts[1]));
            nbr[pos.at(e.verts[1])].push_back(pos.at(e.verts[0]));
        }

    auto autos = automorphisms(S);
    auto canonical = [&](const std::vector<int>& mult) {
        for (const auto& sigma : autos) {
            std::vector<int> image(n);
            for (int i = 0; i < n; ++i) image[sigma[i]] = mult[i];
            if (image < mult) return false;
        }
        return true;
    };

    std::vector<std::vector<int>> out;
    std::vector<int> mult(n, 1);
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (i == n) {
            for (int v = 0; v < n; ++v) {
                int deg = 0;
                for (int w : nbr[v]) deg += mult[w];
                if (deg > 2 * delta) return;
            }
            if (canonical(mult)) out.push_back(mult);
            return;
        }
        int headroom = size_cap - used - (n - i - 1);
        for (int m = 1; m <= headroom; ++m) {
            mult[i] = m;
            self(self, i + 1, used + m);
        }
        mult[i] = 1;
    };
    rec(rec, 0, 0);
    return out;
}

void enumerate_test_blowups(const Complex& S, int delta, int vertex_cap,
                            const std::function<bool(const Blowup&, const std::vector<int>&)>& f) {
    auto verts = S.vertices();
    for (const auto& mult : test_blowup_multiplicities(S, delta, vertex_cap)) {
        BlowupSpec spec;
        spec.pattern = S;
        spec.degree_cap = 2 * delta;
        for (std::size_t i = 0; i < verts.size(); ++i) spec.multiplicity[verts[i]] = mult[i];
        if (!f(build_blowup(spec), mult)) return;
    }
}

namespace {

// Per-edge interval [max(0, (1-eta)d), min(1, (1+eta)d)], multiplied over the
// visible edges of a complex.
void interval_product(const Complex& Sp, const ColoredHypergraph& G, const EtaProfile& profile,
                      std::map<IndexSet, DensityTable>& tables, Rat& lo, Rat& hi) {
    lo = 1;
    hi = 1;
    for (const auto& [e, col] : Sp.colors) {
        if (col == kInvisible) continue;
        TotalColor tc = pattern_total_color(Sp, e);
        auto it = tables.find(tc.index);
        if (it == tables.end()) it = tables.emplace(tc.index, density_table(G, tc.index)).first;
        Rat d = relative_density(it->second, tc);
        Rat eta = profile.eta_at(e.size());
        lo *= std::max(Rat(0), (1 - eta) * d);
        hi *= std::min(Rat(1), (1 + eta) * d);
    }
}

}  // namespace

Xx11aCheck check_hypothesis_xx11a(const Complex& S, const ColoredHypergraph& G,
                                  const EtaProfile& profile, int delta, int vertex_cap) {
    profile.validate();
    if (profile.levels() < S.k)
        throw std::invalid_argument("profile shorter than the complex bound");
    Xx11aCheck check;
    check.worst_margin = 0;
    std::map<IndexSet, DensityTable> tables;
    enumerate_test_blowups(S, delta, vertex_cap, [&](const Blowup& blowup, const auto& mult) {
        ++check.blowups_checked;
        Rat lo, hi;
        interval_product(blowup.complex, G, profile, tables, lo, hi);
        Rat p = embedding_probability(blowup.complex, G);
        Rat margin = std::max(std::max(lo - p, p - hi), Rat(0));
        if (check.worst_multiplicity.empty() || margin > check.worst_margin) {
            check.worst_margin = margin;
            check.worst_multiplicity = mult;
            check.probability = p;
            check.lower = lo;
            check.upper = hi;
        }
        if (margin > 0) {
            check.pass = false;
            return false;  // fail on the first violation
        }
        return true;
    });
    return check;
}

Xx15dCheck check_hypothesis_xx15d(const Complex& S, const ColoredHypergraph& G,
                                  const EtaProfile& profile) {
    profile.validate();
    Xx15dCheck check;
    std::map<IndexSet, DensityTable> tables;
    for (const auto& [e, col] : S.colors) {
        if (col == kInvisible) continue;
        TotalColor tc = pattern_total_color(S, e);
        auto it = tables.find(tc.index);
        if (it == tables.end()) it = tables.emplace(tc.index, density_table(G, tc.index)).first;
        EdgeDensityCheck ec;
        ec.edge = e;
        ec.density = relative_density(it->second, tc);
        ec.rho = profile.rho_at(e.size());
        ec.pass = ec.density > ec.rho;
        if (!ec.pass) {
            check.pass = false;
            check.offending.push_back(e);
        }
        check.edges.push_back(std::move(ec));
    }
    return check;
}

Rat extension_error(const PartitionwiseMap& phi, const Complex& Bp, const Complex& Bpp,
                    const ColoredHypergraph& G) {
    Rat p_ext = conditional_extension_probability(Bpp, Bp, phi, G);
    Rat product = 1;
    std::map<IndexSet, DensityTable> tables;
    for (const auto& [e, col] : Bpp.colors) {
        if (col == kInvisible) continue;
        bool inside_base = true;
        for (const auto& v : e.verts)
            if (!Bp.is_vertex(v)) inside_base = false;
        if (inside_base) continue;
        TotalColor tc = pattern_total_color(Bpp, e);
        auto it = tables.find(tc.index);
        if (it == tables.end()) it = tables.emplace(tc.index, density_table(G, tc.index)).first;
        product *= relative_density(it->second, tc);
    }
    if (product == 0) throw ZeroDensityDivisor("a new visible edge has zero density");
    Rat ratio = p_ext / product - 1;
    return ratio * ratio;
}

Blowup split_complex(const Complex& Bp, const Complex& Bpp) {
    BlowupSpec spec;
    spec.pattern = Bpp;
    spec.degree_cap = 2 * std::max(1, max_degree(Bpp));
    for (const auto& v : Bpp.vertices()) spec.multiplicity[v] = Bp.is_vertex(v) ? 1 : 2;
    Blowup out = build_blowup(spec);

    // first and second copy of every new vertex, by slot order
    std::map<Vertex, std::vector<Vertex>> copies;
    for (const auto& [w, orig] : out.projection) copies[orig].push_back(w);

    // edges meeting both copy layers of the new vertices become invisible
    for (auto it = out.complex.colors.begin(); it != out.complex.colors.end();) {
        bool has_first = false, has_second = false;
        for (const auto& v : it->first.verts) {
            const Vertex& orig = out.projection.at(v);
            if (Bp.is_vertex(orig)) continue;
            if (v == copies.at(orig).front())
                has_first = true;
            else
                has_second = true;
        }
        if (has_first && has_second)
            it = out.complex.colors.erase(it);
        else
            ++it;
    }
    return out;
}

BetaReport mean_extension_error(const Complex& Bp, const Complex& Bpp,
                                const ColoredHypergraph& G, const EtaProfile& profile,
                                int delta) {
    profile.validate();
    Int vertex_limit = ipow(Int(delta), 2u * static_cast<unsigned>(Bpp.k));
    if (Int(Bpp.vertex_count()) > vertex_limit)
        throw std::invalid_argument("mean_extension_error: |V(B'')| exceeds delta^(2k)");
    if (vertex_limit > 1000000)
        throw std::invalid_argument("mean_extension_error: delta^(2k) too large for beta");

    BetaReport report;
    report.level = std::max({Bp.bound(), Bpp.bound(), 1});
    report.beta = Rat(81, 10) *
                  Rat(ipow(Int(2), vertex_limit.convert_to<unsigned long>())) *
                  profile.eta_at(report.level);

    // interval property for the split complex, as the claim's proof uses
    {
        Blowup split = split_complex(Bp, Bpp);
        std::map<IndexSet, DensityTable> tables;
        Rat lo, hi;
        interval_product(split.complex, G, profile, tables, lo, hi);
        Rat p = embedding_probability(split.complex, G);
        report.split_hypothesis_pass = lo <= p && p <= hi;
    }

    auto base_verts = Bp.vertices();
    for (const auto& v : base_verts)
        if (G.class_sizes[v.cls] == 0) throw EmptyAmbientClass("base class empty");
    Rat total_error = 0;
    Int embeddings = 0;
    std::vector<int> images(base_verts.size(), 0);
    auto advance = [&]() {
        for (std::size_t i = images.size(); i-- > 0;) {
            if (++images[i] < G.class_sizes[base_verts[i].cls]) return true;
            images[i] = 0;
        }
        return false;
    };
    if (base_verts.empty()) {
        PartitionwiseMap phi;
        embeddings = 1;
        total_error = extension_error(phi, Bp, Bpp, G);
    } else {
        do {
            PartitionwiseMap phi;
            for (std::size_t i = 0; i < base_verts.size(); ++i)
                phi.assign[base_verts[i]] = Vertex{base_verts[i].cls, images[i]};
            if (!embeds(Bp, phi, G)) continue;
            ++embeddings;
            total_error += extension_error(phi, Bp, Bpp, G);
        } while (advance());
    }
    if (embeddings == 0) throw NoEmbeddingOfBase("no partitionwise map embeds the base complex");
    report.base_embeddings = embeddings;
    report.mean_error = total_error / Rat(embeddings);
    report.within = report.mean_error <= report.beta;
    return report;
}

LemmaReport verify_counting_inequality(const Complex& B, const Vertex& u, const Complex& S,
                                       const ColoredHypergraph& G, const EtaProfile& profile,
                                       int vertex_cap, int root_q) {
    profile.validate();
    if (root_q < 1) throw std::invalid_argument("root exponent must be positive");
    if (!B.is_vertex(u)) throw std::invalid_argument("u is not a vertex of B");
    if (!find_pattern_embedding(B, S))
        throw NotABlowup("B does not embed into the pattern complex");

    int delta = std::max(1, max_degree(B));
    LemmaReport report;
    report.root_q = root_q;
    report.hyp_xx11a = check_hypothesis_xx11a(S, G, profile, delta, vertex_cap);
    report.hyp_xx15d = check_hypothesis_xx15d(S, G, profile);

    Rat p_full = embedding_probability(B, G);
    Rat p_base = embedding_probability(delete_vertex(B, u), G);
    if (p_base == 0) throw NoEmbeddingOfBase("B minus u has no embedding");
    report.lhs = p_full / p_base;

    std::map<IndexSet, DensityTable> tables;
    report.density_product = 1;
    for (const auto& [e, col] : B.colors) {
        if (col == kInvisible || !e.contains(u)) continue;
        TotalColor tc = pattern_total_color(B, e);
        auto it = tables.find(tc.index);
        if (it == tables.end()) it = tables.emplace(tc.index, density_table(G, tc.index)).first;
        report.density_product *= relative_density(it->second, tc);
    }

    Rat eta_k = profile.eta_at(std::min(B.k, profile.levels()));
    if (report.density_product == 0) {
        report.eta_threshold = 0;
        report.holds = true;
    } else {
        Rat t = 1 - report.lhs / report.density_product;
        report.eta_threshold = t <= 0 ? Rat(0) : rat_pow(t, static_cast<unsigned long>(root_q));
        report.holds = eta_k >= report.eta_threshold;
    }
    report.rhs = (1 - root_lower(eta_k, static_cast<unsigned>(root_q))) * report.density_product;
    return report;
}

CorollaryReport verify_corollary_071020(const Complex& B, const Complex& S,
                                        const ColoredHypergraph& G, const EtaProfile& profile,
                                        int root_q) {
    profile.validate();
    if (root_q < 1) throw std::invalid_argument("root exponent must be positive");
    if (!find_pattern_embedding(B, S))
        throw NotABlowup("B does not embed into the pattern complex");

    auto counts = B.class_counts();
    for (int c = 0; c < B.r; ++c) {
        if (counts[c] == 0) continue;
        if (Rat(counts[c]) >= profile.eta.front() * Rat(G.class_sizes[c]))
            throw ClassTooSmall("class " + std::to_string(c) +
                                " does not leave an eta_1 fraction of room");
    }

    CorollaryReport report;
    report.root_q = root_q;
    report.p_injective = injective_embedding_probability(B, G);

    std::map<IndexSet, DensityTable> tables;
    report.density_product = 1;
    for (const auto& [e, col] : B.colors) {
        if (col == kInvisible) continue;
        TotalColor tc = pattern_total_color(B, e);
        auto it = tables.find(tc.index);
        if (it == tables.end()) it = tables.emplace(tc.index, density_table(G, tc.index)).first;
        report.density_product *= relative_density(it->second, tc);
    }

    Rat eta_k = profile.eta_at(std::min(B.k, profile.levels()));
    Rat factor = 1 - root_lower(eta_k, static_cast<unsigned>(root_q));
    report.bound =
        rat_pow(factor, static_cast<unsigned long>(B.vertex_count())) * report.density_product;
    report.bound_positive = report.bound > 0;
    report.holds = report.p_injective >= report.bound;

    if (report.p_injective > 0) {
        report.witness = find_embedding(B, G, true);
        if (report.witness) {
            bool injective_ok = true;
            std::map<int, std::set<int>> used;
            for (const auto& [v, img] : report.witness->assign)
                if (!used[img.cls].insert(img.local).second) injective_ok = false;
            report.witness_verified = injective_ok && embeds(B, *report.witness, G);
        }
    }
    return report;
}

}  // namespace hrt
