#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgd/engine.hpp"
#include "pgd/moebius.hpp"

namespace pgd {

// A pseudogroup composite: word in the generator labels, its group element,
// and the exact domain on which every prefix stays inside U.
struct WordDomain {
    std::vector<std::string> word; // applied right to left
    GroupElement product;
    ArcSet domain;
};

struct CoveragePiece {
    std::vector<std::string> word;
    GroupElement element;
    ArcSet contribution;
};

// Witness that the union of the pieces covers the target; re-checkable with
// arc algebra alone.
struct CoverageCertificate {
    std::vector<CoveragePiece> pieces;
    ArcSet target;
    bool verified = false;
};

// Re-check a certificate from its stored arc data only.
bool reverify(const CoverageCertificate& cert);

// Enumerate all composites of at most `depth` generators with nonempty
// constrained domain, deduplicated by (product, domain).
std::vector<WordDomain> enumerate_word_domains(const PseudogroupSpec& spec, unsigned depth);

struct RecurrenceResult {
    std::optional<unsigned> N; // smallest coverage depth, if found within the cap
    CoverageCertificate certificate;
};

// Smallest N <= n_cap with U covered by the sets {x in dom(w) : w(x) in V}
// over words of length <= N. An empty result is inconclusive, not a refutation.
RecurrenceResult find_recurrence_N(const PseudogroupSpec& spec, unsigned n_cap);

struct ClaimBResult {
    bool covered = false; // false means inconclusive at the depth cap
    CoverageCertificate certificate;
    unsigned depth_used = 0;
};

// Try to cover U by translates gamma(V) with gamma outside the excluded set,
// enumerating gamma by unconstrained word length up to depth_cap.
ClaimBResult check_claim_B(const PseudogroupSpec& spec,
                           const std::vector<GroupElement>& excluded, unsigned depth_cap);

// One elementary piece of the circle: either a single point or an open
// interval between two consecutive cut points.
struct CirclePiece {
    bool is_point = false;
    ProjPoint from;
    ProjPoint to; // equal to `from` for point pieces

    std::string str() const;
};

struct PairCoverageResult {
    bool covered = false;
    // Each piece of closure(target) with the first (i, j), i < j, whose set
    // t_i^-1(V) ∩ t_j^-1(V) contains it.
    std::vector<std::pair<CirclePiece, std::pair<unsigned, unsigned>>> witness;
    std::optional<CirclePiece> uncovered;
};

// Decide closure(target) ⊆ ⋃_{i<j} t_i^-1(V) ∩ t_j^-1(V) exactly.
PairCoverageResult check_pair_coverage(const std::vector<GroupElement>& elements,
                                       const ArcSet& V, const ArcSet& target);

} // namespace pgd
