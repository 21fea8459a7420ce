#pragma once

#include "hrt/density.hpp"

namespace hrt {

/// eta_1 <= ... <= eta_k in (0,1) and 0 < rho_1 <= ... <= rho_k < 1.
struct EtaProfile {
    std::vector<Rat> eta;
    std::vector<Rat> rho;

    int levels() const { return static_cast<int>(eta.size()); }
    void validate() const;
    Rat eta_at(int level) const;
    Rat rho_at(int level) const;
};

/// Multiplicity vectors (aligned with S.vertices()) of the test blowups:
/// degree at most 2*delta, vertex count at most min(2*delta^(2k), vertex_cap),
/// deduplicated under the color-preserving automorphisms of S, lexicographic
/// order.
std::vector<std::vector<int>> test_blowup_multiplicities(const Complex& S, int delta,
                                                         int vertex_cap);

/// Streams the blowups themselves; stops early when the callback returns false.
void enumerate_test_blowups(const Complex& S, int delta, int vertex_cap,
                            const std::function<bool(const Blowup&, const std::vector<int>&)>& f);

struct Xx11aCheck {
    bool pass = true;
    std::uint64_t blowups_checked = 0;
    std::vector<int> worst_multiplicity;
    Rat worst_margin;  // distance outside the interval; 0 when everything fits
    Rat probability;   // of the worst blowup
    Rat lower, upper;  // its interval
};

/// Exact check of the product-interval property for every test blowup of S,
/// with per-edge factors (1 +- eta)|d clamped into [0,1]. Stops at the first
/// violation.
Xx11aCheck check_hypothesis_xx11a(const Complex& S, const ColoredHypergraph& G,
                                  const EtaProfile& profile, int delta, int vertex_cap);

struct EdgeDensityCheck {
    Edge edge;
    Rat density;
    Rat rho;
    bool pass = true;
};

struct Xx15dCheck {
    bool pass = true;
    std::vector<EdgeDensityCheck> edges;
    std::vector<Edge> offending;
};

/// d_G(S<e>) > rho_{|e|} strictly, per visible edge.
Xx15dCheck check_hypothesis_xx15d(const Complex& S, const ColoredHypergraph& G,
                                  const EtaProfile& profile);

/// |P_ext / prod of densities of the new visible edges - 1|^2, exact.
Rat extension_error(const PartitionwiseMap& phi, const Complex& Bp, const Complex& Bpp,
                    const ColoredHypergraph& G);

/// Splitting of B'' over the base B': two disjoint copies of the new
/// vertices, edges mixing the copies invisible.
Blowup split_complex(const Complex& Bp, const Complex& Bpp);

struct BetaReport {
    Rat mean_error;
    Rat beta;
    bool within = true;  // mean_error <= beta
    int level = 1;
    Int base_embeddings;
    bool split_hypothesis_pass = true;  // interval property held for the split complex
};

/// Exact mean of extension_error over uniform phi conditioned on phi
/// embedding B', compared against beta_l = 8.1 * 2^(delta^(2k)) * eta_l.
BetaReport mean_extension_error(const Complex& Bp, const Complex& Bpp,
                                const ColoredHypergraph& G, const EtaProfile& profile, int delta);

struct LemmaReport {
    Xx11aCheck hyp_xx11a;
    Xx15dCheck hyp_xx15d;
    Rat lhs;              // exact conditional one-vertex extension expectation
    Rat rhs;              // (1 - eta_k^(1/q)) * prod, root rounded down
    Rat density_product;  // prod over visible e containing u of d_G(B<e>)
    Rat eta_threshold;    // smallest eta_k for which the conclusion holds, exact
    bool holds = false;   // exact decision, no rounding involved
    int root_q = 4;
};

/// Verifies the one-vertex counting inequality for a blowup B of S at u.
LemmaReport verify_counting_inequality(const Complex& B, const Vertex& u, const Complex& S,
                                       const ColoredHypergraph& G, const EtaProfile& profile,
                                       int vertex_cap, int root_q = 4);

struct CorollaryReport {
    Rat p_injective;
    Rat density_product;
    Rat bound;  // (1 - eta_k^(1/q))^(|V(B)|) * product, root rounded down
    bool bound_positive = false;
    bool holds = false;
    std::optional<PartitionwiseMap> witness;
    bool witness_verified = false;
    int root_q = 4;
};

/// Injective version: compares the exact injective embedding probability
/// against the corollary bound and attaches a backtracking witness whenever
/// the probability is positive. Throws ClassTooSmall when some class of B
/// fills an eta_1 fraction of its ambient class.
CorollaryReport verify_corollary_071020(const Complex& B, const Complex& S,
                                        const ColoredHypergraph& G, const EtaProfile& profile,
                                        int root_q = 4);

}  // namespace hrt
