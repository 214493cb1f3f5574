#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pgd/moebius.hpp"

namespace pgd {

struct Generator {
    std::string label;
    GroupElement element;
};

// Finite symmetric generating set. Inverses are auto-completed on
// construction, duplicates and the identity are rejected.
class GeneratingSystem {
  public:
    explicit GeneratingSystem(const std::vector<Generator>& gens);

    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }

  private:
    std::vector<Generator> gens_;
};

// The data (S, U, V) of a compactly generated pseudogroup restriction.
struct PseudogroupSpec {
    GeneratingSystem S;
    ArcSet U;
    std::optional<ArcSet> V;

    PseudogroupSpec(GeneratingSystem s, ArcSet u, std::optional<ArcSet> v = std::nullopt);
};

struct SearchLimits {
    std::size_t max_nodes = 5'000'000;
    unsigned threads = 1;
};

struct GermBallEntry {
    GroupElement element;
    unsigned length;  // constrained word length at the base point
    ProjPoint point;  // element acting on the base point, always inside U
};

// The ball of radius R in the constrained word metric at a base point:
// all group elements whose germ at the base point has length <= R, in
// deterministic breadth-first discovery order.
class GermBall {
  public:
    GermBall(ProjPoint base, unsigned radius, std::vector<GermBallEntry> entries,
             std::vector<std::size_t> sphere_sizes);

    const ProjPoint& base() const { return base_; }
    unsigned radius() const { return radius_; }
    const std::vector<GermBallEntry>& entries() const { return entries_; }
    const std::vector<std::size_t>& sphere_sizes() const { return sphere_sizes_; }
    std::size_t size() const { return entries_.size(); }

    // Ball count up to radius r (cumulative sphere sizes).
    std::size_t count_within(unsigned r) const;
    std::optional<unsigned> length_of(const GroupElement& g) const;
    bool contains(const GroupElement& g) const { return length_of(g).has_value(); }

  private:
    ProjPoint base_;
    unsigned radius_;
    std::vector<GermBallEntry> entries_;
    std::vector<std::size_t> sphere_sizes_;
    std::unordered_map<GroupElement, std::size_t> index_;
};

GermBall germ_ball(const PseudogroupSpec& spec, const ProjPoint& x, unsigned radius,
                   const SearchLimits& limits = {});

// Orbit piece with the orbit metric distance from x, derived from the ball.
std::map<ProjPoint, unsigned> orbit_ball(const PseudogroupSpec& spec, const ProjPoint& x,
                                         unsigned radius, const SearchLimits& limits = {});
std::map<ProjPoint, unsigned> orbit_ball(const GermBall& ball);

// d(gamma, delta) at x: the constrained length of delta*gamma^-1 at gamma(x),
// found by growing a ball there. Empty when the caps are hit first.
std::optional<unsigned> germ_distance(const PseudogroupSpec& spec, const ProjPoint& x,
                                      const GroupElement& gamma, const GroupElement& delta,
                                      unsigned radius_cap, const SearchLimits& limits = {});

// Non-identity ball members fixing the base point (the germ group sample).
std::vector<GroupElement> stabilizer_elements(const PseudogroupSpec& spec, const ProjPoint& x,
                                              unsigned radius, const SearchLimits& limits = {});
std::vector<GroupElement> stabilizer_elements(const GermBall& ball);

} // namespace pgd
