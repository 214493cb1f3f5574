#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pgd/errors.hpp"

namespace pgd {

// ---------------------------------------------------------------------------
// Points of the rational projective line, in the slope chart t ∈ ℚ ∪ {inf}.
// ---------------------------------------------------------------------------

class ProjPoint {
  public:
    ProjPoint() : inf_(false), value_(0) {}
    explicit ProjPoint(mpq_class v) : inf_(false), value_(std::move(v)) {
        value_.canonicalize();
    }
    ProjPoint(long num, long den) : inf_(false), value_(num, den) {
        if (den == 0) throw InvalidInput("ProjPoint: zero denominator");
        value_.canonicalize();
    }
    static ProjPoint infinity() {
        ProjPoint p;
        p.inf_ = true;
        return p;
    }

    bool is_infinity() const { return inf_; }
    const mpq_class& value() const {
        if (inf_) throw InvalidInput("ProjPoint: inf has no rational value");
        return value_;
    }

    bool operator==(const ProjPoint& o) const {
        return inf_ == o.inf_ && (inf_ || value_ == o.value_);
    }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }

    // Total order with inf greater than every rational; fixes the canonical
    // starting arc of an ArcSet and the positive cyclic orientation.
    bool operator<(const ProjPoint& o) const {
        if (inf_) return false;
        if (o.inf_) return true;
        return value_ < o.value_;
    }

    std::size_t hash() const;
    std::string str() const;            // "p/q" (or "p" when q = 1), "inf"
    static ProjPoint parse(const std::string& s);

  private:
    bool inf_;
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const ProjPoint& p);

enum class Orientation { Positive, Negative, Degenerate };

// Cyclic orientation of three points on the projective line.
Orientation ccw(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r);

// ---------------------------------------------------------------------------
// Elements of the projective group over ℚ: integer matrices (a b; c d) with
// ad − bc > 0, content 1, first nonzero entry positive. Structural equality.
// ---------------------------------------------------------------------------

class GroupElement {
  public:
    GroupElement() : a_(1), b_(0), c_(0), d_(1) {}
    GroupElement(mpz_class a, mpz_class b, mpz_class c, mpz_class d);
    GroupElement(long a, long b, long c, long d)
        : GroupElement(mpz_class(a), mpz_class(b), mpz_class(c), mpz_class(d)) {}

    static GroupElement identity() { return GroupElement(); }
    bool is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }

    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }
    const mpz_class& c() const { return c_; }
    const mpz_class& d() const { return d_; }

    bool operator==(const GroupElement& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
    }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    bool operator<(const GroupElement& o) const; // arbitrary total order

    std::size_t hash() const;
    std::string str() const;            // "a b c d"
    static GroupElement parse(const std::string& s);

  private:
    mpz_class a_, b_, c_, d_;
    void normalize();
};

std::ostream& operator<<(std::ostream& os, const GroupElement& g);

GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement invert(const GroupElement& g);
ProjPoint act(const GroupElement& g, const ProjPoint& p);

// ---------------------------------------------------------------------------
// Open arcs and canonical finite unions of open arcs.
//
// arc(from, to) is the open arc {t : ccw(from, t, to) = Positive}. The
// degenerate case from == to denotes the complement of a single point (the
// only co-finite open set not expressible as disjoint arcs with distinct
// endpoints); it can only appear alone in a canonical ArcSet.
// ---------------------------------------------------------------------------

struct Arc {
    ProjPoint from;
    ProjPoint to;

    bool contains(const ProjPoint& p) const {
        if (from == to) return p != from;
        return ccw(from, p, to) == Orientation::Positive;
    }
    bool operator==(const Arc& o) const { return from == o.from && to == o.to; }
};

class ArcSet {
  public:
    ArcSet() : kind_(Kind::Empty) {}

    static ArcSet empty() { return ArcSet(); }
    static ArcSet full() {
        ArcSet s;
        s.kind_ = Kind::Full;
        return s;
    }
    static ArcSet arc(const ProjPoint& from, const ProjPoint& to) {
        return ArcSet(std::vector<Arc>{Arc{from, to}});
    }
    // Canonicalizes the union of the given open arcs.
    explicit ArcSet(const std::vector<Arc>& raw);

    bool is_empty() const { return kind_ == Kind::Empty; }
    bool is_full() const { return kind_ == Kind::Full; }
    const std::vector<Arc>& arcs() const { return arcs_; }

    bool contains(const ProjPoint& p) const;
    std::vector<ProjPoint> boundary() const; // endpoint list, sorted

    bool operator==(const ArcSet& o) const {
        return kind_ == o.kind_ && arcs_ == o.arcs_;
    }
    bool operator!=(const ArcSet& o) const { return !(*this == o); }

    std::string str() const;
    std::size_t hash() const;

  private:
    enum class Kind { Empty, Full, Arcs };
    Kind kind_;
    std::vector<Arc> arcs_;

    friend ArcSet resolve_by_membership(const std::vector<ProjPoint>& cuts,
                                        const std::function<bool(const ProjPoint&)>& member);
};

ArcSet unite(const ArcSet& a, const ArcSet& b);
ArcSet intersect(const ArcSet& a, const ArcSet& b);
// Interior of the set complement; the missing boundary is a.boundary().
ArcSet complement_interior(const ArcSet& a);

// b ⊆ a (both open).
bool covers(const ArcSet& a, const ArcSet& b);
// closure(b) ⊆ a.
bool covers_closure(const ArcSet& a, const ArcSet& b);
// Does open_part together with the listed points cover the whole line?
bool closed_cover_is_full(const ArcSet& open_part, const std::vector<ProjPoint>& points);

// Exact image of an arc set under a group element (orientation-preserving,
// so arcs map endpoint-to-endpoint).
ArcSet image(const GroupElement& g, const ArcSet& a);
inline ArcSet preimage(const GroupElement& g, const ArcSet& a) {
    return image(invert(g), a);
}

} // namespace pgd

template <> struct std::hash<pgd::ProjPoint> {
    std::size_t operator()(const pgd::ProjPoint& p) const { return p.hash(); }
};
template <> struct std::hash<pgd::GroupElement> {
    std::size_t operator()(const pgd::GroupElement& g) const { return g.hash(); }
};
