#pragma once

#include "hrt/density.hpp"
#include "hrt/counting.hpp"

namespace hrt {

struct UniformHypergraph {
    int n = 0;
    int k = 1;
    std::vector<std::vector<int>> edges;  // each sorted, list sorted

    void normalize();
    void validate() const;
    int degree(int v) const;  // number of neighbors
    int max_deg() const;

    static UniformHypergraph complete(int n, int k);
    static UniformHypergraph single_edge(int k);
    static UniformHypergraph path(int vertices);  // k = 2
};

/// b-coloring of the complete k-uniform hypergraph on [n], edges indexed by
/// colex rank; -1 marks an unassigned edge during search.
struct ColoringAssignment {
    int n = 0;
    int k = 1;
    int b = 1;
    std::vector<int> color;

    std::uint64_t edge_count() const;
    bool total() const;
    int at(const std::vector<int>& edge) const;
    static ColoringAssignment blank(int n, int k, int b);
};

std::uint64_t colex_rank(const std::vector<int>& subset);
std::vector<int> colex_unrank(std::uint64_t rank, int k);

/// Injection V(H) -> [n] mapping every edge of H onto a c-colored edge.
std::optional<std::vector<int>> find_monochromatic_copy(const UniformHypergraph& H,
                                                        const ColoringAssignment& col, int c);

struct SearchOptions {
    bool break_symmetry = true;  // pin the first edge to color 0
};
struct SearchStats {
    std::uint64_t nodes = 0;
};

/// Total b-coloring of K_n^(k) without a monochromatic H-copy, or nothing
/// after exhausting the (possibly symmetry-reduced) search space.
std::optional<ColoringAssignment> exists_good_coloring(int n, const UniformHypergraph& H, int b,
                                                       const SearchOptions& options = {},
                                                       SearchStats* stats = nullptr);

struct RamseyResult {
    std::optional<int> value;
    int lower = 1;            // R is known to be >= lower
    std::optional<int> upper;
    std::optional<ColoringAssignment> witness;  // good coloring at value-1 (or n_max)
    std::vector<std::uint64_t> nodes_per_n;
};

/// Smallest n <= n_max with no good coloring; otherwise an open bracket
/// [n_max+1, ?] with the best witness found.
RamseyResult ramsey_number(const UniformHypergraph& H, int b, int n_max);

/// m classes of N vertices each; edges touching a class twice are dropped by
/// partiteness, sizes < k get the single black color, size-k edges keep
/// their colors.
ColoredHypergraph partition_ambient(const ColoringAssignment& col, int m, int N);

struct PipelineReport {
    bool success = false;
    std::string failure;  // NoCleanTuple | NoMonochromaticClique | NoEmbedding
    ExceptionalReport exceptional;
    std::vector<int> representatives;  // chosen local per class
    std::uint64_t tuple_attempts = 0;
    std::vector<int> clique_classes;  // classes of the monochromatic clique
    int mono_color = -1;
    std::vector<int> partition_class_of;  // greedy 2-skeleton class per B vertex
    std::map<int, Vertex> embedding;      // B vertex -> ambient vertex
    bool reverified = false;
};

/// Deterministic replay of the final argument: flag exceptional edges, find a
/// representative tuple avoiding them (seeded restarts, then exhaustive),
/// extract a monochromatic clique of delta_cap + 1 representatives, recolor
/// the input hypergraph into a blowup of the induced pattern, and embed it
/// injectively by backtracking.
PipelineReport pipeline_demo(const ColoredHypergraph& Gstar, const RegularityWitness& witness,
                             const UniformHypergraph& B_input, int delta_cap,
                             const EtaProfile& profile, const Rat& alpha, std::uint64_t seed,
                             std::uint64_t restart_budget = 200);

}  // namespace hrt
