#include <doctest.h>

#include <random>

#include "pgd/moebius.hpp"

using namespace pgd;

namespace {

ProjPoint pt(long n, long d = 1) { return ProjPoint(n, d); }
const ProjPoint inf = ProjPoint::infinity();

std::mt19937 rng(20240817);

ProjPoint random_point(bool allow_inf = true) {
    std::uniform_int_distribution<int> num(-50, 50), den(1, 20), kind(0, 19);
    if (allow_inf && kind(rng) == 0) return ProjPoint::infinity();
    return ProjPoint(num(rng), den(rng));
}

GroupElement random_element() {
    std::uniform_int_distribution<int> e(-9, 9);
    while (true) {
        const int a = e(rng), b = e(rng), c = e(rng), d = e(rng);
        if (a * d - b * c > 0) return GroupElement(a, b, c, d);
    }
}

std::vector<Arc> random_raw_arcs() {
    std::uniform_int_distribution<int> n_arcs(1, 4);
    std::vector<Arc> raw;
    const int n = n_arcs(rng);
    for (int i = 0; i < n; ++i) {
        ProjPoint a = random_point(), b = random_point();
        while (b == a) b = random_point();
        raw.push_back(Arc{a, b});
    }
    return raw;
}

bool raw_contains(const std::vector<Arc>& raw, const ProjPoint& p) {
    for (const Arc& a : raw)
        if (a.contains(p)) return true;
    return false;
}

// Probe points: random rationals plus every endpoint in sight and points
// adjacent to them, so boundary behaviour is exercised.
std::vector<ProjPoint> probes(const std::vector<Arc>& raw_a, const std::vector<Arc>& raw_b) {
    std::vector<ProjPoint> ps{inf};
    auto add_near = [&ps](const ProjPoint& p) {
        ps.push_back(p);
        if (!p.is_infinity()) {
            ps.push_back(ProjPoint(mpq_class(p.value() + mpq_class(1, 997))));
            ps.push_back(ProjPoint(mpq_class(p.value() - mpq_class(1, 997))));
        }
    };
    for (const Arc& a : raw_a) {
        add_near(a.from);
        add_near(a.to);
    }
    for (const Arc& a : raw_b) {
        add_near(a.from);
        add_near(a.to);
    }
    for (int i = 0; i < 40; ++i) ps.push_back(random_point());
    return ps;
}

} // namespace

TEST_CASE("ccw basics") {
    CHECK(ccw(pt(0), pt(1), inf) == Orientation::Positive);
    CHECK(ccw(pt(1), pt(0), inf) == Orientation::Negative);
    CHECK(ccw(pt(-1), pt(0), pt(1)) == Orientation::Positive);
    CHECK(ccw(pt(0), pt(0), pt(1)) == Orientation::Degenerate);
    CHECK(ccw(inf, pt(0), pt(1)) == Orientation::Positive);
}

TEST_CASE("ccw antisymmetry on random triples") {
    for (int i = 0; i < 200; ++i) {
        const ProjPoint p = random_point(), q = random_point(), r = random_point();
        if (p == q || q == r || p == r) continue;
        const Orientation o = ccw(p, q, r);
        CHECK(ccw(q, p, r) == (o == Orientation::Positive ? Orientation::Negative
                                                          : Orientation::Positive));
        CHECK(ccw(p, r, q) == (o == Orientation::Positive ? Orientation::Negative
                                                          : Orientation::Positive));
        CHECK(ccw(q, r, p) == o); // cyclic
    }
}

TEST_CASE("matrix normalization and group law") {
    const GroupElement r(3, -4, 4, 3);
    CHECK(compose(GroupElement::identity(), r) == r);
    CHECK(compose(r, invert(r)) == GroupElement::identity());
    CHECK(compose(r, r) == GroupElement(7, 24, -24, 7)); // sign-normalized square
    CHECK(invert(GroupElement(1, 1, 0, 1)) == GroupElement(1, -1, 0, 1));
    CHECK(invert(GroupElement(2, 0, 0, 1)) == GroupElement(1, 0, 0, 2));
    CHECK(GroupElement(-2, 0, 0, -2) == GroupElement::identity());
    CHECK_THROWS_AS(GroupElement(1, 0, 0, -1), InvalidInput);
    CHECK_THROWS_AS(GroupElement(1, 2, 2, 4), InvalidInput);
}

TEST_CASE("normalization is a projection on random elements") {
    for (int i = 0; i < 300; ++i) {
        const GroupElement g = random_element();
        CHECK(GroupElement(g.a(), g.b(), g.c(), g.d()) == g);
        CHECK(GroupElement(3 * g.a(), 3 * g.b(), 3 * g.c(), 3 * g.d()) == g);
    }
}

TEST_CASE("group axioms on random triples") {
    for (int i = 0; i < 200; ++i) {
        const GroupElement g = random_element(), h = random_element(), k = random_element();
        CHECK(compose(compose(g, h), k) == compose(g, compose(h, k)));
        CHECK(compose(g, invert(g)) == GroupElement::identity());
        CHECK(invert(invert(g)) == g);
    }
}

TEST_CASE("action basics") {
    CHECK(act(GroupElement::identity(), pt(7, 3)) == pt(7, 3));
    CHECK(act(GroupElement(1, 1, 0, 1), pt(0)) == pt(1));
    CHECK(act(GroupElement(0, -1, 1, 0), inf) == pt(0));
    CHECK(act(GroupElement(0, -1, 1, 0), pt(0)) == inf);
    CHECK(act(GroupElement(1, 1, 0, 1), inf) == inf);
}

TEST_CASE("action compatibility and orientation preservation") {
    for (int i = 0; i < 200; ++i) {
        const GroupElement g = random_element(), h = random_element();
        const ProjPoint p = random_point();
        CHECK(act(compose(g, h), p) == act(g, act(h, p)));
        const ProjPoint q = random_point(), r = random_point();
        if (p == q || q == r || p == r) continue;
        CHECK(ccw(p, q, r) == ccw(act(g, p), act(g, q), act(g, r)));
    }
}

TEST_CASE("arcs and membership") {
    const ArcSet a = ArcSet::arc(pt(0), pt(2));
    CHECK(a.contains(pt(1)));
    CHECK(!a.contains(pt(0)));
    CHECK(!a.contains(pt(2)));
    CHECK(!a.contains(inf));
    const ArcSet through_inf = ArcSet::arc(pt(3), pt(-3));
    CHECK(through_inf.contains(inf));
    CHECK(through_inf.contains(pt(10)));
    CHECK(through_inf.contains(pt(-10)));
    CHECK(!through_inf.contains(pt(0)));
}

TEST_CASE("arcset canonicalization merges overlaps") {
    CHECK(unite(ArcSet::arc(pt(0), pt(2)), ArcSet::arc(pt(1), pt(3))) ==
          ArcSet::arc(pt(0), pt(3)));
    CHECK(intersect(ArcSet::arc(pt(0), pt(2)), ArcSet::arc(pt(1), pt(3))) ==
          ArcSet::arc(pt(1), pt(2)));
    // Touching open arcs do not merge: the shared endpoint is missing.
    const ArcSet touching = unite(ArcSet::arc(pt(0), pt(1)), ArcSet::arc(pt(1), pt(2)));
    CHECK(touching.arcs().size() == 2);
    CHECK(!touching.contains(pt(1)));
    // Two complementary arcs cover everything except their endpoints.
    const ArcSet split = unite(ArcSet::arc(pt(0), inf), ArcSet::arc(inf, pt(0)));
    CHECK(split.arcs().size() == 2);
    CHECK(!split.contains(pt(0)));
    CHECK(!split.contains(inf));
}

TEST_CASE("punctured line representation") {
    // Union covering everything except a single point.
    const ArcSet punctured = unite(ArcSet::arc(pt(0), pt(2)), ArcSet::arc(pt(1), pt(0)));
    CHECK(!punctured.is_full());
    CHECK(!punctured.contains(pt(0)));
    CHECK(punctured.contains(pt(1)));
    CHECK(punctured.contains(inf));
    CHECK(unite(punctured, ArcSet::arc(pt(-1), pt(1))).is_full());
    CHECK(complement_interior(punctured).is_empty());
}

TEST_CASE("complement with endpoint bookkeeping") {
    const ArcSet a = ArcSet::arc(pt(0), pt(2));
    const ArcSet comp = complement_interior(a);
    CHECK(comp == ArcSet::arc(pt(2), pt(0)));
    CHECK(closed_cover_is_full(unite(a, comp), a.boundary()));
    CHECK(!closed_cover_is_full(unite(a, comp), {}));
}

TEST_CASE("covers and closure covers") {
    CHECK(!covers(ArcSet::arc(pt(0), pt(4)),
                  unite(ArcSet::arc(pt(1), pt(2)), ArcSet::arc(pt(3), inf))));
    CHECK(covers(ArcSet::arc(pt(0), pt(4)),
                 unite(ArcSet::arc(pt(1), pt(2)), ArcSet::arc(pt(3), pt(4)))));
    // Open cover can miss a shared boundary point.
    const ArcSet two = unite(ArcSet::arc(pt(0), pt(1)), ArcSet::arc(pt(1), pt(2)));
    CHECK(!covers(two, ArcSet::arc(pt(0), pt(2))));
    CHECK(covers(ArcSet::arc(pt(0), pt(2)), two));
    CHECK(covers_closure(ArcSet::arc(pt(0), pt(3)), ArcSet::arc(pt(1), pt(2))));
    CHECK(!covers_closure(ArcSet::arc(pt(1), pt(2)), ArcSet::arc(pt(1), pt(2))));
    CHECK(covers_closure(ArcSet::full(), ArcSet::arc(pt(0), pt(1))));
}

TEST_CASE("image of arcs under the action") {
    const ArcSet a = ArcSet::arc(pt(1), pt(2));
    CHECK(image(GroupElement::identity(), a) == a);
    CHECK(image(GroupElement(2, 0, 0, 1), a) == ArcSet::arc(pt(2), pt(4)));
    CHECK(image(GroupElement(0, -1, 1, 0), ArcSet::arc(pt(0), inf)) ==
          ArcSet::arc(inf, pt(0)));
    CHECK(image(GroupElement(2, 0, 0, 1), ArcSet::full()).is_full());
}

TEST_CASE("set algebra agrees with a probe-point oracle") {
    for (int iter = 0; iter < 120; ++iter) {
        const std::vector<Arc> raw_a = random_raw_arcs(), raw_b = random_raw_arcs();
        const ArcSet a(raw_a), b(raw_b);
        const ArcSet u = unite(a, b), i = intersect(a, b), c = complement_interior(a);
        const GroupElement g = random_element();
        const ArcSet img = image(g, a);
        bool cov_ab = covers(a, b);
        bool oracle_cov = true;
        for (const ProjPoint& p : probes(raw_a, raw_b)) {
            const bool in_a = raw_contains(raw_a, p), in_b = raw_contains(raw_b, p);
            CHECK(a.contains(p) == in_a);
            CHECK(u.contains(p) == (in_a || in_b));
            CHECK(i.contains(p) == (in_a && in_b));
            if (c.contains(p)) CHECK(!in_a); // interior of complement
            CHECK(img.contains(act(g, p)) == in_a);
            if (in_b && !in_a) oracle_cov = false;
        }
        if (cov_ab) CHECK(oracle_cov);
        // Canonical equality is a congruence: rebuilding from scratch matches.
        std::vector<Arc> both = raw_a;
        both.insert(both.end(), raw_b.begin(), raw_b.end());
        CHECK(ArcSet(both) == u);
    }
}

TEST_CASE("serialization round trips") {
    CHECK(ProjPoint::parse("inf") == inf);
    CHECK(ProjPoint::parse("-7/3") == pt(-7, 3));
    CHECK(pt(-7, 3).str() == "-7/3");
    CHECK(pt(4).str() == "4");
    CHECK(GroupElement::parse("3 -4 4 3") == GroupElement(3, -4, 4, 3));
    CHECK(GroupElement(3, -4, 4, 3).str() == "3 -4 4 3");
    CHECK_THROWS_AS(ProjPoint::parse("x"), InvalidInput);
    CHECK_THROWS_AS(GroupElement::parse("1 2 3"), InvalidInput);
}
