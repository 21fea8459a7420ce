#pragma once

#include <map>
#include <optional>

#include "hrt/complex.hpp"
#include "hrt/rational.hpp"

namespace hrt {

/// Class-preserving assignment of pattern vertices to ambient vertices.
struct PartitionwiseMap {
    std::map<Vertex, Vertex> assign;

    const Vertex& at(const Vertex& v) const;
    bool defined(const Vertex& v) const { return assign.count(v) > 0; }
    Edge image(const Edge& e) const;
};

/// Acts as phi on its domain, phi2 on the other; throws DomainOverlap.
PartitionwiseMap union_map(const PartitionwiseMap& phi, const PartitionwiseMap& phi2);

/// Optional per-index translation of pattern colors into ambient colors
/// (the injection identifying visible colors of S with colors of G).
/// Absent indices and an absent map mean identity.
using ColorMap = std::map<IndexSet, std::vector<Color>>;

/// True iff every visible edge of S lands on an equally colored ambient edge.
bool embeds(const Complex& S, const PartitionwiseMap& phi, const ColoredHypergraph& G,
            const ColorMap* cmap = nullptr);

/// Exact P over uniform partitionwise maps of V(S) into the ambient classes.
Rat embedding_probability(const Complex& S, const ColoredHypergraph& G,
                          const ColorMap* cmap = nullptr);

/// Exact P that a uniform map embeds B and is injective on each class.
Rat injective_embedding_probability(const Complex& B, const ColoredHypergraph& G,
                                    const ColorMap* cmap = nullptr);

/// Exact P over uniform maps of V(B'') \ V(B') that phi joined with the
/// extension embeds B''. Requires B' = B'' induced on V(B') and that phi
/// embeds B'.
Rat conditional_extension_probability(const Complex& Bpp, const Complex& Bp,
                                      const PartitionwiseMap& phi, const ColoredHypergraph& G,
                                      const ColorMap* cmap = nullptr);

/// Embedding count and map-space size behind the probabilities; pins fixes a
/// subset of V(S) and counts completions over the rest.
struct EmbedCount {
    Int embeddings;
    Int total_maps;
};
EmbedCount count_embeddings(const Complex& S, const ColoredHypergraph& G, bool injective = false,
                            const PartitionwiseMap* pins = nullptr,
                            const ColorMap* cmap = nullptr);

/// First embedding in canonical enumeration order, if any.
std::optional<PartitionwiseMap> find_embedding(const Complex& S, const ColoredHypergraph& G,
                                               bool injective = false,
                                               const PartitionwiseMap* pins = nullptr,
                                               const ColorMap* cmap = nullptr);

/// Pattern-to-pattern embedding check: every visible edge of B maps onto an
/// equally colored edge of S under pi.
bool is_pattern_embedding(const Complex& B, const std::map<Vertex, Vertex>& pi, const Complex& S);
std::optional<std::map<Vertex, Vertex>> find_pattern_embedding(const Complex& B, const Complex& S);

/// Worker count for splitting enumeration roots (HRT_THREADS, default 1).
int thread_count();

}  // namespace hrt
