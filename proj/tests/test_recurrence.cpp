#include <doctest.h>

#include <set>

#include "pgd/recurrence.hpp"

using namespace pgd;

namespace {

ProjPoint pt(long n, long d = 1) { return ProjPoint(n, d); }

const GroupElement rot(3, -4, 4, 3);
const GroupElement par(1, 1, 0, 1);
const GroupElement dil(2, 0, 0, 1);

PseudogroupSpec spec_of(const std::vector<Generator>& gens, ArcSet U,
                        std::optional<ArcSet> V = std::nullopt) {
    return PseudogroupSpec(GeneratingSystem(gens), std::move(U), std::move(V));
}

// Independent domain computation: intersect the U-preimages of every prefix.
ArcSet prefix_domain_oracle(const PseudogroupSpec& spec,
                            const std::vector<GroupElement>& letters) {
    ArcSet dom = spec.U;
    GroupElement prefix = GroupElement::identity();
    for (const GroupElement& s : letters) {
        prefix = compose(s, prefix);
        dom = intersect(dom, preimage(prefix, spec.U));
    }
    return dom;
}

void collect_words(const PseudogroupSpec& spec, unsigned depth,
                   std::vector<GroupElement>& letters, std::set<std::string>& out) {
    ArcSet dom = prefix_domain_oracle(spec, letters);
    if (dom.is_empty()) return;
    GroupElement prod = GroupElement::identity();
    for (const GroupElement& s : letters) prod = compose(s, prod);
    out.insert(prod.str() + "|" + dom.str());
    if (letters.size() == depth) return;
    for (const Generator& g : spec.S.generators()) {
        letters.push_back(g.element);
        collect_words(spec, depth, letters, out);
        letters.pop_back();
    }
}

bool certificate_is_sound(const CoverageCertificate& cert, const ArcSet& V) {
    if (!reverify(cert)) return false;
    for (const CoveragePiece& p : cert.pieces) {
        if (!covers(V, image(p.element, p.contribution))) return false;
    }
    return true;
}

} // namespace

TEST_CASE("word domain enumeration matches a prefix oracle") {
    const PseudogroupSpec spec =
        spec_of({Generator{"p", par}, Generator{"d", dil}}, ArcSet::arc(pt(0), pt(10)));
    for (unsigned depth : {0u, 1u, 2u, 3u}) {
        const auto words = enumerate_word_domains(spec, depth);
        std::set<std::string> got;
        for (const WordDomain& wd : words) {
            CHECK(wd.word.size() <= depth);
            CHECK(!wd.domain.is_empty());
            CHECK(covers(spec.U, wd.domain));
            got.insert(wd.product.str() + "|" + wd.domain.str());
        }
        CHECK(got.size() == words.size()); // deduplicated
        std::set<std::string> oracle;
        std::vector<GroupElement> letters;
        collect_words(spec, depth, letters, oracle);
        CHECK(got == oracle);
    }
}

TEST_CASE("word domains shrink along prefixes") {
    const PseudogroupSpec spec =
        spec_of({Generator{"p", par}}, ArcSet::arc(pt(0), pt(5)));
    for (const WordDomain& wd : enumerate_word_domains(spec, 4)) {
        // Every point of the domain survives the whole prefix trajectory.
        for (const ProjPoint& probe : {pt(1), pt(3, 2), pt(7, 2), pt(9, 2)}) {
            if (!wd.domain.contains(probe)) continue;
            ArcSet oracle = spec.U;
            GroupElement prefix = GroupElement::identity();
            bool inside = true;
            for (auto it = wd.word.begin(); it != wd.word.end(); ++it) {
                const GroupElement s = (*it == "p") ? par : invert(par);
                prefix = compose(s, prefix);
                inside = inside && spec.U.contains(act(prefix, probe));
            }
            CHECK(inside);
        }
    }
}

TEST_CASE("recurrence depth zero when V already covers U") {
    const PseudogroupSpec spec = spec_of({Generator{"r", rot}}, ArcSet::full(),
                                         ArcSet::full());
    const RecurrenceResult res = find_recurrence_N(spec, 4);
    REQUIRE(res.N.has_value());
    CHECK(*res.N == 0);
    CHECK(res.certificate.verified);
    CHECK(reverify(res.certificate));
}

TEST_CASE("recurrence of the infinite rotation") {
    const PseudogroupSpec spec = spec_of({Generator{"r", rot}}, ArcSet::full(),
                                         ArcSet::arc(pt(-1), pt(1)));
    const RecurrenceResult res = find_recurrence_N(spec, 8);
    REQUIRE(res.N.has_value());
    CHECK(*res.N == 1);
    CHECK(res.certificate.verified);
    CHECK(certificate_is_sound(res.certificate, *spec.V));
    CHECK(res.certificate.target == spec.U);

    // The cap is honoured: asking below the answer is inconclusive.
    const RecurrenceResult capped = find_recurrence_N(spec, 0);
    CHECK(!capped.N.has_value());
    CHECK(!capped.certificate.verified);

    // A cap above the answer returns the same minimal depth.
    const RecurrenceResult roomy = find_recurrence_N(spec, 3);
    CHECK(roomy.N == res.N);
}

TEST_CASE("recurrence depth is monotone in V") {
    const PseudogroupSpec narrow = spec_of({Generator{"r", rot}}, ArcSet::full(),
                                           ArcSet::arc(pt(-1), pt(1)));
    const PseudogroupSpec wide = spec_of({Generator{"r", rot}}, ArcSet::full(),
                                         ArcSet::arc(pt(-2), pt(2)));
    const auto n_narrow = find_recurrence_N(narrow, 8).N;
    const auto n_wide = find_recurrence_N(wide, 8).N;
    REQUIRE(n_narrow.has_value());
    REQUIRE(n_wide.has_value());
    CHECK(*n_wide <= *n_narrow);
}

TEST_CASE("translations never bring infinity back") {
    const PseudogroupSpec spec = spec_of({Generator{"p", par}}, ArcSet::full(),
                                         ArcSet::arc(pt(-1), pt(1)));
    const RecurrenceResult res = find_recurrence_N(spec, 10);
    CHECK(!res.N.has_value());
    CHECK(!res.certificate.verified);
    // Every contribution misses infinity, so no cap would ever succeed.
    for (const CoveragePiece& p : res.certificate.pieces)
        CHECK(!p.contribution.contains(ProjPoint::infinity()));
}

TEST_CASE("claim B with dilation translates") {
    const PseudogroupSpec spec = spec_of({Generator{"d", dil}},
                                         ArcSet::arc(pt(1, 2), pt(64)),
                                         ArcSet::arc(pt(1), pt(4)));
    const ClaimBResult res = check_claim_B(spec, {}, 8);
    CHECK(res.covered);
    CHECK(res.certificate.verified);
    CHECK(reverify(res.certificate));
    for (const CoveragePiece& p : res.certificate.pieces)
        CHECK(p.contribution == image(p.element, *spec.V));

    // Excluding the identity punctures the union at 2: inconclusive forever.
    const ClaimBResult excl = check_claim_B(spec, {GroupElement::identity()}, 8);
    CHECK(!excl.covered);
    ArcSet acc = ArcSet::empty();
    for (const CoveragePiece& p : excl.certificate.pieces) acc = unite(acc, p.contribution);
    CHECK(!acc.contains(pt(2)));
}

TEST_CASE("claim B for the rotation needs several translates") {
    const PseudogroupSpec spec = spec_of({Generator{"r", rot}}, ArcSet::full(),
                                         ArcSet::arc(pt(-1), pt(1)));
    const ClaimBResult res = check_claim_B(spec, {GroupElement::identity()}, 10);
    CHECK(res.covered);
    CHECK(res.depth_used >= 2);
    CHECK(res.certificate.verified);
    for (const CoveragePiece& p : res.certificate.pieces)
        CHECK(p.element != GroupElement::identity());
}

TEST_CASE("pair coverage basics") {
    CHECK(check_pair_coverage({par, dil}, ArcSet::full(), ArcSet::empty()).covered);
    // Fewer than two elements can never produce a pair.
    const auto none = check_pair_coverage({par}, ArcSet::full(), ArcSet::arc(pt(0), pt(1)));
    CHECK(!none.covered);
    REQUIRE(none.uncovered.has_value());
    // Full V with two distinct elements covers anything.
    const auto easy = check_pair_coverage({par, dil}, ArcSet::full(), ArcSet::full());
    CHECK(easy.covered);
    CHECK(!easy.witness.empty());
}

TEST_CASE("pair coverage with two translations") {
    const ArcSet V = ArcSet::arc(pt(-1), pt(1));
    const GroupElement par2 = compose(par, par);
    // pre(par) = (-2, 0), pre(par2) = (-3, -1); the pair set is (-2, -1).
    const auto in = check_pair_coverage({par, par2}, V, ArcSet::arc(pt(-7, 4), pt(-5, 4)));
    CHECK(in.covered);
    REQUIRE(!in.witness.empty());
    for (const auto& [piece, ij] : in.witness) CHECK(ij == std::pair<unsigned, unsigned>{0, 1});

    const auto out = check_pair_coverage({par, par2}, V, ArcSet::arc(pt(0), pt(1)));
    CHECK(!out.covered);
    REQUIRE(out.uncovered.has_value());

    // Closure matters: the target's endpoints must be covered too.
    const auto touch = check_pair_coverage({par, par2}, V, ArcSet::arc(pt(-2), pt(-1)));
    CHECK(!touch.covered);
    const auto inside = check_pair_coverage({par, par2}, V,
                                            ArcSet::arc(pt(-15, 8), pt(-9, 8)));
    CHECK(inside.covered);
}

TEST_CASE("pair coverage witnesses tile the closure") {
    const ArcSet V = ArcSet::arc(pt(-1), pt(1));
    const GroupElement par2 = compose(par, par);
    const ArcSet target = ArcSet::arc(pt(-15, 8), pt(-9, 8));
    const auto res = check_pair_coverage({par, par2}, V, target);
    REQUIRE(res.covered);
    const ArcSet w = intersect(preimage(par, V), preimage(par2, V));
    for (const auto& [piece, ij] : res.witness) {
        if (piece.is_point) {
            CHECK(w.contains(piece.from));
        } else {
            CHECK(covers(w, ArcSet::arc(piece.from, piece.to)));
        }
    }
}
