#pragma once

#include <functional>

#include "hrt/embedding.hpp"

namespace hrt {

/// Exact per-index counts of total colors and frame colors.
struct DensityTable {
    std::uint64_t edge_total = 0;
    std::map<std::vector<Color>, std::uint64_t> total_counts;
    std::map<std::vector<Color>, std::uint64_t> frame_counts;
};

DensityTable density_table(const ColoredHypergraph& G, const IndexSet& I);

/// d_G(c): P[top color | frame colors], exact. Throws EmptyFrame when no
/// edge realizes the frame.
Rat relative_density(const ColoredHypergraph& G, const TotalColor& c);
Rat relative_density(const DensityTable& table, const TotalColor& c);

/// Product over visible edges of d_G(S<e>). Throws EmptyFrame naming the
/// offending edge.
Rat chain_rule_product(const Complex& S, const ColoredHypergraph& G);

/// embedding_probability(S, G) - chain_rule_product(S, G).
Rat discrepancy(const Complex& S, const ColoredHypergraph& G);

struct RegularityWitness {
    std::map<TotalColor, Rat> delta;
    std::optional<Rat> delta_default;
    std::function<Rat(int level, int palette_bound)> epsilon;
    /// Table behind epsilon when the witness came from a file (per level,
    /// constant in the palette bound); kept for round-trips.
    std::vector<Rat> epsilon_levels;
    int h = 1;

    Rat delta_of(const TotalColor& c) const;
    /// Builds epsilon from epsilon_levels.
    void use_epsilon_table();
};

/// Enumerates the patterns of S_{k,h,G} (h vertices per class, colors drawn
/// from G's palettes or invisible, downward closed) in canonical order.
/// Stops when yield returns false or after budget patterns; the return value
/// says whether the enumeration was exhausted.
bool enumerate_patterns(const ColoredHypergraph& G, int h, std::uint64_t budget,
                        const std::function<bool(const Complex&)>& yield);

struct IndexCheck {
    IndexSet index;
    int b_star = 1;
    Rat mean_delta;
    Rat epsilon;
    bool pass = true;
};

struct PatternFailure {
    Complex pattern;
    Rat probability;
    Rat lower;
    Rat upper;
};

struct DensityEntry {
    TotalColor color;
    Rat density;
    Rat delta;
};

struct DensityReport {
    std::vector<IndexCheck> condition_ii;
    bool pass_ii = true;
    std::uint64_t patterns_checked = 0;
    std::uint64_t patterns_vacuous = 0;  // some edge color unrealizable in G
    bool budget_exhausted = false;
    std::vector<PatternFailure> failures;
    bool pass_i = true;
    std::vector<DensityEntry> densities;
    /// Smallest uniform slack (rounded up to 2^-40) that absorbs every
    /// enumerated pattern touching the color; a lower-bound witness for the
    /// pointwise delta that condition (i) would need.
    std::map<TotalColor, Rat> min_uniform_slack;
};

DensityReport check_regularity(const ColoredHypergraph& G, const RegularityWitness& witness,
                               std::uint64_t pattern_budget);

/// G* refines G: identical size-k colors, and lower-index color classes of
/// G* refine those of G.
bool is_subdivision(const ColoredHypergraph& Gstar, const ColoredHypergraph& G);

struct ExceptionalEdge {
    Edge edge;
    bool low_density = false;
    bool high_delta = false;
};

struct ExceptionalIndexStats {
    IndexSet index;
    std::uint64_t edges = 0;
    std::uint64_t exceptional = 0;
    std::uint64_t low_density = 0;
    std::uint64_t high_delta = 0;
    Rat fraction;
    Rat bound;  // rho_i * b_i^* + alpha
    bool within_bound = true;
};

struct ExceptionalReport {
    std::vector<ExceptionalEdge> edges;
    std::vector<ExceptionalIndexStats> per_index;
    bool all_within_bound = true;
};

/// Flags edges with d < rho(|I|) or delta > epsilon(|I|, b*)/alpha and checks
/// the per-index exceptional fraction against rho_i * b_i^* + alpha.
ExceptionalReport exceptional_edges(const ColoredHypergraph& Gstar,
                                    const std::function<Rat(int level)>& rho,
                                    const RegularityWitness& witness, const Rat& alpha);

}  // namespace hrt
