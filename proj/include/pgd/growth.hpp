#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pgd/engine.hpp"
#include "pgd/moebius.hpp"

namespace pgd {

// Cumulative ball-count function r -> v(r).
struct GrowthSeries {
    std::vector<std::pair<unsigned, std::uint64_t>> counts; // radii strictly increasing

    static GrowthSeries from_sphere_sizes(const std::vector<std::size_t>& spheres);
    void validate() const;
    std::optional<std::uint64_t> step_value(const mpq_class& r) const; // step interpolation
};

enum class GrowthKind { Polynomial, Exponential, Inconclusive };

std::string to_string(GrowthKind k);

struct GrowthVerdict {
    GrowthKind kind = GrowthKind::Inconclusive;
    double estimate = 0.0;       // degree (polynomial) or rate (exponential)
    double residual_poly = 0.0;  // RMS residual of the log v ~ log r fit
    double residual_exp = 0.0;   // RMS residual of the log v ~ r fit
    unsigned window_min = 0;
    unsigned window_max = 0;
};

struct ClassifyParams {
    unsigned min_points = 4;
    double margin = 2.0;            // residual ratio needed for a verdict
    double window_fraction = 0.5;   // tail window: upper fraction of radii
};

GrowthVerdict classify_growth(const GrowthSeries& series, const ClassifyParams& params = {});

struct DominationConstants {
    mpq_class a, b, c, d; // u(r) <= a * v(b*r + c) + d
};

struct DominationCheck {
    bool holds = false;
    std::size_t applicable = 0; // radii of u whose transformed radius is in v's range
};

DominationCheck check_domination(const GrowthSeries& u, const GrowthSeries& v,
                                 const DominationConstants& k);

struct DominationGrid {
    std::vector<mpq_class> values = {1, 2, 3, 4, 5, 6, 7, 8};
};

// First grid tuple (lexicographic in a, b, c, d) under which u is dominated
// by v with at least one applicable radius.
std::optional<DominationConstants> search_domination(const GrowthSeries& u,
                                                     const GrowthSeries& v,
                                                     const DominationGrid& grid = {});

// Sphere inequalities card S(n+1) >= 2 card S(n) and card S(n) >= 2^n for the
// free-semigroup doubling argument. Requires both certificates up front.
bool sphere_doubling_check(const GermBall& ball, bool pair_coverage_ok,
                           bool pingpong_certified);

using OrbitDistance =
    std::function<std::optional<unsigned>(const ProjPoint&, const ProjPoint&)>;

// Exact pairwise orbit metric on a finite orbit piece, from germ balls grown
// at every orbit point.
OrbitDistance orbit_metric(const PseudogroupSpec& spec,
                           const std::map<ProjPoint, unsigned>& orbit, unsigned radius,
                           const SearchLimits& limits = {});

struct QuasiLatticeReport {
    std::uint64_t K_C = 0;
    unsigned delta = 0;
    bool verified = false;
    std::vector<unsigned> checked_radii;
    std::vector<unsigned> excluded_radii; // truncated at the orbit boundary
};

// Verify v_net1(x, r) <= K_C * v_net2(x', (1 + delta + C) r) on a computed
// orbit piece. Throws when either net is not a C-net of the piece.
QuasiLatticeReport compare_quasi_lattices(const std::map<ProjPoint, unsigned>& orbit,
                                          const std::set<ProjPoint>& net1,
                                          const std::set<ProjPoint>& net2, unsigned C,
                                          const OrbitDistance& dist);

struct DistortionReport {
    bool comparable = false; // false: the balls share only the identity
    double lambda = 1.0;     // max two-sided length ratio on shared elements
    unsigned additive_gap = 0;
    std::size_t shared = 0;
};

DistortionReport compare_generating_systems(const PseudogroupSpec& spec_a,
                                            const PseudogroupSpec& spec_b, const ProjPoint& x,
                                            unsigned radius, const SearchLimits& limits = {});

} // namespace pgd
