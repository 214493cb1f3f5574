#include "pgd/pingpong.hpp"

#include <cmath>
#include <optional>

namespace pgd {

namespace {

bool closure_contains(const ArcSet& a, const ProjPoint& p) {
    if (a.contains(p)) return true;
    for (const Arc& arc : a.arcs()) {
        if (arc.from == p || arc.to == p) return true;
    }
    return false;
}

bool closures_disjoint(const ArcSet& a, const ArcSet& b) {
    if (a.is_empty() || b.is_empty()) return true;
    if (a.is_full() || b.is_full()) return false;
    if (!intersect(a, b).is_empty()) return false;
    for (const ProjPoint& p : a.boundary())
        if (closure_contains(b, p)) return false;
    for (const ProjPoint& p : b.boundary())
        if (closure_contains(a, p)) return false;
    return true;
}

// Attracting fixed point on the projective line, or nothing when the element
// is elliptic or parabolic. Floating point only; callers verify exactly.
std::optional<ProjPoint> approx_attracting_fixed_point(const GroupElement& g,
                                                       const mpq_class& resolution) {
    const double a = mpz_get_d(g.a().get_mpz_t());
    const double b = mpz_get_d(g.b().get_mpz_t());
    const double c = mpz_get_d(g.c().get_mpz_t());
    const double d = mpz_get_d(g.d().get_mpz_t());
    const double det = a * d - b * c;

    auto snap = [&resolution](double t) {
        const double res = mpq_get_d(resolution.get_mpq_t());
        mpz_class steps(static_cast<long>(std::llround(t / res)));
        return ProjPoint(mpq_class(steps) * resolution);
    };

    if (c == 0.0) {
        const double mult_inf = d / a;
        if (std::abs(mult_inf) < 0.999) return ProjPoint::infinity();
        if (a == d) return std::nullopt; // parabolic or identity
        return snap(b / (d - a));
    }
    const double disc = (d - a) * (d - a) + 4.0 * b * c;
    if (disc <= 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    for (const double t : {((a - d) + sq) / (2 * c), ((a - d) - sq) / (2 * c)}) {
        const double mult = det / ((c * t + d) * (c * t + d));
        if (std::abs(mult) < 0.999) return snap(t);
    }
    return std::nullopt;
}

} // namespace

PingPongVerdict verify_certificate(const PingPongCertificate& cert) {
    PingPongVerdict v;
    const std::size_t k = cert.elements.size();
    if (k < 2) {
        v.reason = "need at least two elements";
        return v;
    }
    if (cert.tables.size() != k) {
        v.reason = "one table per element required";
        return v;
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (cert.tables[i].is_empty()) {
            v.reason = "table " + std::to_string(i) + " is empty";
            v.witness = {static_cast<unsigned>(i), static_cast<unsigned>(i)};
            return v;
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (!closures_disjoint(cert.tables[i], cert.tables[j])) {
                v.reason = "table closures " + std::to_string(i) + " and " +
                           std::to_string(j) + " intersect";
                v.witness = {static_cast<unsigned>(i), static_cast<unsigned>(j)};
                return v;
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (!covers(cert.tables[i], image(cert.elements[i], cert.tables[j]))) {
                v.reason = "t_" + std::to_string(i) + "(A_" + std::to_string(j) +
                           ") not contained in A_" + std::to_string(i);
                v.witness = {static_cast<unsigned>(i), static_cast<unsigned>(j)};
                return v;
            }
        }
    }
    v.valid = true;
    v.reason = "ok";
    return v;
}

std::optional<PingPongCertificate> search_certificate(const std::vector<GroupElement>& elements,
                                                      const mpq_class& resolution) {
    if (elements.size() < 2)
        throw InvalidInput("search_certificate: at least two elements required");
    if (resolution <= 0) throw InvalidInput("search_certificate: resolution must be positive");

    std::vector<ProjPoint> centers;
    for (const GroupElement& g : elements) {
        auto fp = approx_attracting_fixed_point(g, resolution);
        if (!fp) return std::nullopt; // no contracting fixed point to anchor a table
        centers.push_back(*fp);
    }

    constexpr unsigned kWidthSteps = 12;
    auto table_at = [&](std::size_t i, unsigned e) {
        mpq_class w = resolution;
        for (unsigned s = 0; s < e; ++s) w *= 2;
        if (centers[i].is_infinity()) {
            // A band around inf: everything of absolute value above 1/w.
            mpq_class m = 1 / w;
            return ArcSet::arc(ProjPoint(m), ProjPoint(-m));
        }
        return ArcSet::arc(ProjPoint(centers[i].value() - w), ProjPoint(centers[i].value() + w));
    };

    const std::size_t k = elements.size();
    // Odometer over per-table width exponents, lexicographic, smallest first.
    std::vector<unsigned> exp(k, 0);
    const bool joint = k <= 3; // full grid for small k, common width otherwise
    while (true) {
        PingPongCertificate cand;
        cand.elements = elements;
        for (std::size_t i = 0; i < k; ++i) cand.tables.push_back(table_at(i, exp[i]));
        if (verify_certificate(cand).valid) return cand;

        if (joint) {
            std::size_t pos = k;
            while (pos > 0 && exp[pos - 1] + 1 == kWidthSteps) {
                exp[--pos] = 0;
            }
            if (pos == 0) return std::nullopt;
            ++exp[pos - 1];
        } else {
            if (exp[0] + 1 == kWidthSteps) return std::nullopt;
            for (auto& e : exp) ++e;
        }
    }
}

} // namespace pgd
