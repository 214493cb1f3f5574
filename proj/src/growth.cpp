#include "pgd/growth.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace pgd {

GrowthSeries GrowthSeries::from_sphere_sizes(const std::vector<std::size_t>& spheres) {
    GrowthSeries s;
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < spheres.size(); ++r) {
        total += spheres[r];
        s.counts.emplace_back(static_cast<unsigned>(r), total);
    }
    return s;
}

void GrowthSeries::validate() const {
    for (std::size_t i = 1; i < counts.size(); ++i) {
        if (counts[i].first <= counts[i - 1].first)
            throw InvalidInput("GrowthSeries: radii must be strictly increasing");
        if (counts[i].second < counts[i - 1].second)
            throw InvalidInput("GrowthSeries: counts must be non-decreasing");
    }
}

std::optional<std::uint64_t> GrowthSeries::step_value(const mpq_class& r) const {
    if (counts.empty()) return std::nullopt;
    if (r < counts.front().first || r > counts.back().first) return std::nullopt;
    std::uint64_t v = counts.front().second;
    for (const auto& [radius, count] : counts) {
        if (mpq_class(radius) > r) break;
        v = count;
    }
    return v;
}

std::string to_string(GrowthKind k) {
    switch (k) {
        case GrowthKind::Polynomial: return "polynomial";
        case GrowthKind::Exponential: return "exponential";
        default: return "inconclusive";
    }
}

namespace {

struct Fit {
    double slope = 0.0;
    double rms = 0.0;
};

Fit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    Fit f;
    const double denom = n * sxx - sx * sx;
    f.slope = denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
    const double intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (f.slope * xs[i] + intercept);
        ss += e * e;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

} // namespace

GrowthVerdict classify_growth(const GrowthSeries& series, const ClassifyParams& params) {
    series.validate();
    std::vector<std::pair<unsigned, std::uint64_t>> pts;
    for (const auto& p : series.counts) {
        if (p.first >= 1 && p.second >= 1) pts.push_back(p);
    }
    if (pts.empty()) throw InvalidInput("classify_growth: too few points");
    const unsigned r_lo = pts.front().first;
    const unsigned r_hi = pts.back().first;
    const unsigned cut =
        r_hi - static_cast<unsigned>(std::floor((r_hi - r_lo) * params.window_fraction));

    std::vector<double> rs, logs_r, logs_v;
    for (const auto& [r, v] : pts) {
        if (r < cut) continue;
        rs.push_back(static_cast<double>(r));
        logs_r.push_back(std::log(static_cast<double>(r)));
        logs_v.push_back(std::log(static_cast<double>(v)));
    }
    if (rs.size() < params.min_points) throw InvalidInput("classify_growth: too few points");

    const Fit poly = least_squares(logs_r, logs_v);
    const Fit expo = least_squares(rs, logs_v);

    GrowthVerdict out;
    out.residual_poly = poly.rms;
    out.residual_exp = expo.rms;
    out.window_min = cut;
    out.window_max = r_hi;

    constexpr double kEps = 1e-9;
    if (poly.rms < kEps && expo.rms < kEps) {
        // Only constants fit both models exactly.
        out.kind = GrowthKind::Polynomial;
        out.estimate = poly.slope;
    } else if (expo.rms > params.margin * poly.rms) {
        out.kind = GrowthKind::Polynomial;
        out.estimate = poly.slope;
    } else if (poly.rms > params.margin * expo.rms) {
        out.kind = GrowthKind::Exponential;
        out.estimate = expo.slope;
    }
    return out;
}

DominationCheck check_domination(const GrowthSeries& u, const GrowthSeries& v,
                                 const DominationConstants& k) {
    if (k.a <= 0 || k.b <= 0 || k.c < 0 || k.d < 0)
        throw InvalidInput("check_domination: constants must be positive");
    DominationCheck out;
    out.holds = true;
    for (const auto& [r, ur] : u.counts) {
        const mpq_class shifted = k.b * r + k.c;
        const auto vv = v.step_value(shifted);
        if (!vv) continue; // out of v's range: inapplicable at this radius
        ++out.applicable;
        if (mpq_class(static_cast<unsigned long>(ur)) >
            k.a * mpq_class(static_cast<unsigned long>(*vv)) + k.d) {
            out.holds = false;
        }
    }
    return out;
}

std::optional<DominationConstants> search_domination(const GrowthSeries& u,
                                                     const GrowthSeries& v,
                                                     const DominationGrid& grid) {
    for (const mpq_class& a : grid.values)
        for (const mpq_class& b : grid.values)
            for (const mpq_class& c : grid.values)
                for (const mpq_class& d : grid.values) {
                    DominationConstants k{a, b, c, d};
                    const DominationCheck chk = check_domination(u, v, k);
                    if (chk.holds && chk.applicable > 0) return k;
                }
    return std::nullopt;
}

bool sphere_doubling_check(const GermBall& ball, bool pair_coverage_ok,
                           bool pingpong_certified) {
    if (!pair_coverage_ok)
        throw InvalidInput("sphere_doubling_check: pair coverage not certified");
    if (!pingpong_certified)
        throw InvalidInput("sphere_doubling_check: ping-pong certificate not verified");
    const std::vector<std::size_t>& s = ball.sphere_sizes();
    mpz_class pow2 = 1;
    for (unsigned n = 0; n < ball.radius(); ++n) {
        if (mpz_class(static_cast<unsigned long>(s[n + 1])) <
            2 * mpz_class(static_cast<unsigned long>(s[n])))
            return false;
        if (mpz_class(static_cast<unsigned long>(s[n])) < pow2) return false;
        pow2 *= 2;
    }
    return true;
}

OrbitDistance orbit_metric(const PseudogroupSpec& spec,
                           const std::map<ProjPoint, unsigned>& orbit, unsigned radius,
                           const SearchLimits& limits) {
    auto table = std::make_shared<std::map<ProjPoint, std::map<ProjPoint, unsigned>>>();
    for (const auto& [y, unused] : orbit) {
        (*table)[y] = orbit_ball(spec, y, radius, limits);
    }
    return [table](const ProjPoint& y, const ProjPoint& z) -> std::optional<unsigned> {
        auto row = table->find(y);
        if (row == table->end()) return std::nullopt;
        auto cell = row->second.find(z);
        if (cell == row->second.end()) return std::nullopt;
        return cell->second;
    };
}

namespace {

// Smallest known distance from y into the net; infinity as nullopt.
std::optional<unsigned> dist_to_net(const ProjPoint& y, const std::set<ProjPoint>& net,
                                    const OrbitDistance& dist) {
    std::optional<unsigned> best;
    for (const ProjPoint& n : net) {
        const auto d = dist(y, n);
        if (d && (!best || *d < *best)) best = d;
    }
    return best;
}

} // namespace

QuasiLatticeReport compare_quasi_lattices(const std::map<ProjPoint, unsigned>& orbit,
                                          const std::set<ProjPoint>& net1,
                                          const std::set<ProjPoint>& net2, unsigned C,
                                          const OrbitDistance& dist) {
    if (net1.empty() || net2.empty())
        throw InvalidInput("compare_quasi_lattices: nets must be nonempty");
    for (const auto& net : {net1, net2}) {
        for (const ProjPoint& p : net) {
            if (!orbit.count(p))
                throw InvalidInput("compare_quasi_lattices: net point " + p.str() +
                                   " outside the orbit piece");
        }
        for (const auto& [y, unused] : orbit) {
            const auto d = dist_to_net(y, net, dist);
            if (!d || *d > C)
                throw InvalidInput("compare_quasi_lattices: not a C-net, point " + y.str() +
                                   " is farther than C from the net");
        }
    }

    auto pick_base = [&orbit](const std::set<ProjPoint>& net) {
        const ProjPoint* best = nullptr;
        for (const ProjPoint& p : net) {
            if (!best || orbit.at(p) < orbit.at(*best)) best = &p;
        }
        return *best;
    };
    const ProjPoint x = pick_base(net1);
    const ProjPoint xp = pick_base(net2);

    QuasiLatticeReport rep;
    const auto delta = dist(x, xp);
    if (!delta)
        throw InvalidInput("compare_quasi_lattices: base points not connected in the piece");
    rep.delta = *delta;

    for (const auto& [y, unused] : orbit) {
        std::uint64_t near = 0;
        for (const ProjPoint& n : net2) {
            const auto d = dist(y, n);
            if (d && *d <= C) ++near;
        }
        rep.K_C = std::max(rep.K_C, near);
    }

    // The piece is complete out to its computed radius; beyond-boundary balls
    // would be truncated, so those radii are excluded rather than checked.
    unsigned piece_radius = 0;
    for (const auto& [y, d] : orbit) piece_radius = std::max(piece_radius, d);

    const unsigned factor = 1 + rep.delta + C;
    rep.verified = true;
    for (unsigned r = 1; r <= piece_radius; ++r) {
        const unsigned long rr = static_cast<unsigned long>(factor) * r;
        if (orbit.at(x) + r > piece_radius || orbit.at(xp) + rr > piece_radius) {
            rep.excluded_radii.push_back(r);
            continue;
        }
        std::uint64_t v1 = 0, v2 = 0;
        for (const ProjPoint& n : net1) {
            const auto d = dist(x, n);
            if (d && *d <= r) ++v1;
        }
        for (const ProjPoint& n : net2) {
            const auto d = dist(xp, n);
            if (d && *d <= rr) ++v2;
        }
        rep.checked_radii.push_back(r);
        if (v1 > rep.K_C * v2) rep.verified = false;
    }
    return rep;
}

DistortionReport compare_generating_systems(const PseudogroupSpec& spec_a,
                                            const PseudogroupSpec& spec_b, const ProjPoint& x,
                                            unsigned radius, const SearchLimits& limits) {
    const GermBall ball_a = germ_ball(spec_a, x, radius, limits);
    const GermBall ball_b = germ_ball(spec_b, x, radius, limits);

    DistortionReport rep;
    for (const GermBallEntry& e : ball_a.entries()) {
        if (e.element.is_identity()) continue;
        const auto lb = ball_b.length_of(e.element);
        if (!lb) continue;
        ++rep.shared;
        rep.comparable = true;
        const double la = static_cast<double>(e.length);
        const double lbv = static_cast<double>(*lb);
        rep.lambda = std::max({rep.lambda, la / lbv, lbv / la});
        rep.additive_gap = std::max(
            rep.additive_gap, static_cast<unsigned>(std::abs(static_cast<long>(e.length) -
                                                             static_cast<long>(*lb))));
    }
    return rep;
}

} // namespace pgd
