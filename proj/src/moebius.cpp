#include "pgd/moebius.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace pgd {

namespace {

std::size_t hash_mpz(const mpz_class& z) {
    const mpz_srcptr p = z.get_mpz_t();
    std::size_t h = static_cast<std::size_t>(mpz_sgn(p)) + 0x9e3779b97f4a7c15ULL;
    const std::size_t n = mpz_size(p);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<std::size_t>(mpz_getlimbn(p, i)) + 0x9e3779b97f4a7c15ULL +
             (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t hash_combine(std::size_t a, std::size_t b) {
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

} // namespace

// ---------------------------------------------------------------------------
// ProjPoint
// ---------------------------------------------------------------------------

std::size_t ProjPoint::hash() const {
    if (inf_) return 0x7ee1dead5eedULL;
    return hash_combine(hash_mpz(value_.get_num()), hash_mpz(value_.get_den()));
}

std::string ProjPoint::str() const {
    if (inf_) return "inf";
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

ProjPoint ProjPoint::parse(const std::string& s) {
    if (s == "inf") return infinity();
    try {
        mpq_class q(s);
        q.canonicalize();
        if (q.get_den() == 0) throw InvalidInput("ProjPoint: zero denominator in '" + s + "'");
        return ProjPoint(q);
    } catch (const std::invalid_argument&) {
        throw InvalidInput("ProjPoint: cannot parse '" + s + "'");
    }
}

std::ostream& operator<<(std::ostream& os, const ProjPoint& p) { return os << p.str(); }

Orientation ccw(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
    if (p == q || q == r || p == r) return Orientation::Degenerate;
    const bool pq = p < q, qr = q < r, rp = r < p;
    // Positive iff the three points appear in increasing cyclic order.
    const int rising = (pq ? 1 : 0) + (qr ? 1 : 0) + (rp ? 1 : 0);
    return rising == 2 ? Orientation::Positive : Orientation::Negative;
}

// ---------------------------------------------------------------------------
// GroupElement
// ---------------------------------------------------------------------------

GroupElement::GroupElement(mpz_class a, mpz_class b, mpz_class c, mpz_class d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    normalize();
}

void GroupElement::normalize() {
    mpz_class det = a_ * d_ - b_ * c_;
    if (det <= 0) throw InvalidInput("GroupElement: determinant must be positive");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d_.get_mpz_t());
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
        d_ /= g;
    }
    for (const mpz_class* e : {&a_, &b_, &c_, &d_}) {
        if (*e != 0) {
            if (*e < 0) {
                a_ = -a_;
                b_ = -b_;
                c_ = -c_;
                d_ = -d_;
            }
            break;
        }
    }
}

bool GroupElement::operator<(const GroupElement& o) const {
    int c = cmp(a_, o.a_);
    if (c != 0) return c < 0;
    c = cmp(b_, o.b_);
    if (c != 0) return c < 0;
    c = cmp(c_, o.c_);
    if (c != 0) return c < 0;
    return cmp(d_, o.d_) < 0;
}

std::size_t GroupElement::hash() const {
    std::size_t h = hash_mpz(a_);
    h = hash_combine(h, hash_mpz(b_));
    h = hash_combine(h, hash_mpz(c_));
    h = hash_combine(h, hash_mpz(d_));
    return h;
}

std::string GroupElement::str() const {
    return a_.get_str() + " " + b_.get_str() + " " + c_.get_str() + " " + d_.get_str();
}

GroupElement GroupElement::parse(const std::string& s) {
    std::istringstream in(s);
    std::string ta, tb, tc, td, rest;
    if (!(in >> ta >> tb >> tc >> td) || (in >> rest)) {
        throw InvalidInput("GroupElement: expected four integers, got '" + s + "'");
    }
    try {
        return GroupElement(mpz_class(ta), mpz_class(tb), mpz_class(tc), mpz_class(td));
    } catch (const std::invalid_argument& e) {
        throw InvalidInput("GroupElement: cannot parse '" + s + "'");
    }
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) { return os << g.str(); }

GroupElement compose(const GroupElement& g, const GroupElement& h) {
    return GroupElement(g.a() * h.a() + g.b() * h.c(), g.a() * h.b() + g.b() * h.d(),
                        g.c() * h.a() + g.d() * h.c(), g.c() * h.b() + g.d() * h.d());
}

GroupElement invert(const GroupElement& g) {
    return GroupElement(g.d(), -g.b(), -g.c(), g.a());
}

ProjPoint act(const GroupElement& g, const ProjPoint& p) {
    if (p.is_infinity()) {
        if (g.c() == 0) return ProjPoint::infinity();
        return ProjPoint(mpq_class(g.a(), g.c()));
    }
    const mpz_class& num = p.value().get_num();
    const mpz_class& den = p.value().get_den();
    mpz_class top = g.a() * num + g.b() * den;
    mpz_class bot = g.c() * num + g.d() * den;
    if (bot == 0) return ProjPoint::infinity();
    return ProjPoint(mpq_class(top, bot));
}

// ---------------------------------------------------------------------------
// ArcSet
// ---------------------------------------------------------------------------

namespace {

// A rational point strictly inside the open interval (u, v) of the cyclic
// order, where u, v are consecutive cut points (u < v in the total order,
// or v is the wrap back to the least cut).
ProjPoint interval_representative(const ProjPoint& u, const ProjPoint& v, bool wrap) {
    if (!wrap) {
        if (v.is_infinity()) return ProjPoint(u.value() + 1);
        return ProjPoint(mpq_class((u.value() + v.value()) / 2));
    }
    // Wrap interval from the greatest cut back to the least one.
    if (u.is_infinity()) return ProjPoint(v.value() - 1);
    return ProjPoint::infinity(); // inf is not a cut, so it lies inside
}

// Representative of the complement of a single cut point.
ProjPoint single_cut_representative(const ProjPoint& c) {
    return c.is_infinity() ? ProjPoint(mpq_class(0)) : ProjPoint::infinity();
}

} // namespace

// Rebuilds the canonical open set from a membership predicate sampled at the
// given cut points and at one representative inside every interval between
// consecutive cuts. All boundary points of the target set must be cuts.
ArcSet resolve_by_membership(const std::vector<ProjPoint>& cuts_in,
                             const std::function<bool(const ProjPoint&)>& member) {
    std::vector<ProjPoint> cuts = cuts_in;
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    if (cuts.empty()) {
        return member(ProjPoint(mpq_class(0))) ? ArcSet::full() : ArcSet::empty();
    }

    const std::size_t k = cuts.size();
    std::vector<bool> cut_in(k), iv_in(k); // interval i spans (cuts[i], cuts[(i+1)%k])
    for (std::size_t i = 0; i < k; ++i) {
        cut_in[i] = member(cuts[i]);
        const bool wrap = (i + 1 == k);
        const ProjPoint rep =
            (k == 1) ? single_cut_representative(cuts[0])
                     : interval_representative(cuts[i], cuts[(i + 1) % k], wrap);
        iv_in[i] = member(rep);
    }

    const std::size_t n_iv = std::count(iv_in.begin(), iv_in.end(), true);
    if (n_iv == 0) return ArcSet::empty();
    if (n_iv == k) {
        std::vector<std::size_t> missing;
        for (std::size_t i = 0; i < k; ++i)
            if (!cut_in[i]) missing.push_back(i);
        if (missing.empty()) return ArcSet::full();
        ArcSet s;
        s.kind_ = ArcSet::Kind::Arcs;
        if (missing.size() == 1) {
            const ProjPoint& p = cuts[missing[0]];
            s.arcs_ = {Arc{p, p}}; // full line minus one point
            return s;
        }
        for (std::size_t m = 0; m < missing.size(); ++m) {
            s.arcs_.push_back(
                Arc{cuts[missing[m]], cuts[missing[(m + 1) % missing.size()]]});
        }
        std::sort(s.arcs_.begin(), s.arcs_.end(),
                  [](const Arc& x, const Arc& y) { return x.from < y.from; });
        return s;
    }

    // General case: walk maximal cyclic runs of member intervals, merging
    // across a cut only when the cut itself is a member.
    std::vector<Arc> arcs;
    std::vector<bool> seen(k, false);
    for (std::size_t start = 0; start < k; ++start) {
        if (!iv_in[start] || seen[start]) continue;
        // Only begin a run at an interval whose left cut does not connect it
        // to a previous member interval.
        const std::size_t prev = (start + k - 1) % k;
        if (iv_in[prev] && cut_in[start]) continue;
        std::size_t end = start;
        seen[start] = true;
        while (true) {
            const std::size_t next = (end + 1) % k;
            if (iv_in[next] && cut_in[next] && !seen[next]) {
                end = next;
                seen[end] = true;
            } else {
                break;
            }
        }
        arcs.push_back(Arc{cuts[start], cuts[(end + 1) % k]});
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const Arc& x, const Arc& y) { return x.from < y.from; });
    ArcSet s;
    s.kind_ = ArcSet::Kind::Arcs;
    s.arcs_ = std::move(arcs);
    return s;
}

ArcSet::ArcSet(const std::vector<Arc>& raw) {
    std::vector<ProjPoint> cuts;
    for (const Arc& a : raw) {
        cuts.push_back(a.from);
        cuts.push_back(a.to);
    }
    *this = resolve_by_membership(cuts, [&raw](const ProjPoint& p) {
        return std::any_of(raw.begin(), raw.end(),
                           [&p](const Arc& a) { return a.contains(p); });
    });
}

bool ArcSet::contains(const ProjPoint& p) const {
    if (kind_ == Kind::Empty) return false;
    if (kind_ == Kind::Full) return true;
    return std::any_of(arcs_.begin(), arcs_.end(),
                       [&p](const Arc& a) { return a.contains(p); });
}

std::vector<ProjPoint> ArcSet::boundary() const {
    std::vector<ProjPoint> pts;
    for (const Arc& a : arcs_) {
        pts.push_back(a.from);
        pts.push_back(a.to);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::string ArcSet::str() const {
    if (kind_ == Kind::Empty) return "empty";
    if (kind_ == Kind::Full) return "full";
    std::string s;
    for (const Arc& a : arcs_) {
        if (!s.empty()) s += " ";
        s += "(" + a.from.str() + "," + a.to.str() + ")";
    }
    return s;
}

std::size_t ArcSet::hash() const {
    std::size_t h = static_cast<std::size_t>(kind_) + 17;
    for (const Arc& a : arcs_) {
        h = hash_combine(h, a.from.hash());
        h = hash_combine(h, a.to.hash());
    }
    return h;
}

namespace {

std::vector<ProjPoint> merged_cuts(const ArcSet& a, const ArcSet& b) {
    std::vector<ProjPoint> cuts = a.boundary();
    const std::vector<ProjPoint> bb = b.boundary();
    cuts.insert(cuts.end(), bb.begin(), bb.end());
    return cuts;
}

} // namespace

ArcSet unite(const ArcSet& a, const ArcSet& b) {
    if (a.is_full() || b.is_full()) return ArcSet::full();
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    return resolve_by_membership(merged_cuts(a, b), [&](const ProjPoint& p) {
        return a.contains(p) || b.contains(p);
    });
}

ArcSet intersect(const ArcSet& a, const ArcSet& b) {
    if (a.is_empty() || b.is_empty()) return ArcSet::empty();
    if (a.is_full()) return b;
    if (b.is_full()) return a;
    return resolve_by_membership(merged_cuts(a, b), [&](const ProjPoint& p) {
        return a.contains(p) && b.contains(p);
    });
}

ArcSet complement_interior(const ArcSet& a) {
    if (a.is_empty()) return ArcSet::full();
    if (a.is_full()) return ArcSet::empty();
    return resolve_by_membership(a.boundary(),
                                 [&](const ProjPoint& p) { return !a.contains(p); });
}

bool covers(const ArcSet& a, const ArcSet& b) {
    if (b.is_empty() || a.is_full()) return true;
    if (a.is_empty()) return b.is_empty();
    if (b.is_full()) return false; // a is not full here
    const std::vector<ProjPoint> cuts = merged_cuts(a, b);
    std::vector<ProjPoint> sorted = cuts;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const std::size_t k = sorted.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (b.contains(sorted[i]) && !a.contains(sorted[i])) return false;
        const bool wrap = (i + 1 == k);
        const ProjPoint rep =
            (k == 1) ? single_cut_representative(sorted[0])
                     : interval_representative(sorted[i], sorted[(i + 1) % k], wrap);
        if (b.contains(rep) && !a.contains(rep)) return false;
    }
    return true;
}

bool covers_closure(const ArcSet& a, const ArcSet& b) {
    if (b.is_empty()) return true;
    if (a.is_full()) return true;
    if (b.is_full() || a.is_empty()) return false;
    for (const Arc& arc : b.arcs()) {
        if (arc.from == arc.to) return false; // closure of a punctured line is full
    }
    if (!covers(a, b)) return false;
    for (const ProjPoint& p : b.boundary()) {
        if (!a.contains(p)) return false;
    }
    return true;
}

bool closed_cover_is_full(const ArcSet& open_part, const std::vector<ProjPoint>& points) {
    if (open_part.is_full()) return true;
    std::vector<ProjPoint> cuts = open_part.boundary();
    cuts.insert(cuts.end(), points.begin(), points.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.empty()) return open_part.is_full();
    const std::size_t k = cuts.size();
    for (std::size_t i = 0; i < k; ++i) {
        const bool listed = std::find(points.begin(), points.end(), cuts[i]) != points.end();
        if (!listed && !open_part.contains(cuts[i])) return false;
        const bool wrap = (i + 1 == k);
        const ProjPoint rep =
            (k == 1) ? single_cut_representative(cuts[0])
                     : interval_representative(cuts[i], cuts[(i + 1) % k], wrap);
        if (!open_part.contains(rep)) return false;
    }
    return true;
}

ArcSet image(const GroupElement& g, const ArcSet& a) {
    if (a.is_empty() || a.is_full() || g.is_identity()) return a;
    std::vector<Arc> mapped;
    mapped.reserve(a.arcs().size());
    for (const Arc& arc : a.arcs()) {
        mapped.push_back(Arc{act(g, arc.from), act(g, arc.to)});
    }
    std::sort(mapped.begin(), mapped.end(),
              [](const Arc& x, const Arc& y) { return x.from < y.from; });
    // The action is an order-preserving bijection, so the mapped arcs stay
    // pairwise disjoint; canonicalization only re-sorts and re-merges.
    return ArcSet(mapped);
}

} // namespace pgd
