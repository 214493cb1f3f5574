#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgd/moebius.hpp"

namespace pgd {

// Semigroup ping-pong data: t_i(A_j) ⊆ A_i for all i, j, with the closures
// of the tables pairwise disjoint. Verified exactly; a valid certificate
// proves that the elements freely generate a free semigroup.
struct PingPongCertificate {
    std::vector<GroupElement> elements;
    std::vector<ArcSet> tables;
};

struct PingPongVerdict {
    bool valid = false;
    std::string reason;
    // For containment failures: (i, j) with t_i(A_j) ⊄ A_i. For disjointness
    // failures: the offending table pair.
    std::optional<std::pair<unsigned, unsigned>> witness;
};

PingPongVerdict verify_certificate(const PingPongCertificate& cert);

// Heuristic search: approximate the attracting fixed point of each element
// in floating point, round to rational arcs on the given resolution grid,
// and keep only exactly verified certificates.
std::optional<PingPongCertificate> search_certificate(const std::vector<GroupElement>& elements,
                                                      const mpq_class& resolution);

} // namespace pgd
