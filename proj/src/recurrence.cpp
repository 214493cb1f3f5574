#include "pgd/recurrence.hpp"

#include <algorithm>
#include <unordered_set>

namespace pgd {

std::string CirclePiece::str() const {
    if (is_point) return "{" + from.str() + "}";
    if (from == to) return "(full)";
    return "(" + from.str() + "," + to.str() + ")";
}

bool reverify(const CoverageCertificate& cert) {
    ArcSet acc = ArcSet::empty();
    for (const CoveragePiece& p : cert.pieces) acc = unite(acc, p.contribution);
    return covers(acc, cert.target);
}

namespace {

std::string dedup_key(const GroupElement& g, const ArcSet& dom) {
    return g.str() + "|" + dom.str();
}

// One BFS level of word extension with domain tracking and pruning.
std::vector<WordDomain> extend_level(const PseudogroupSpec& spec,
                                     const std::vector<WordDomain>& level,
                                     std::unordered_set<std::string>& seen) {
    std::vector<WordDomain> next;
    for (const WordDomain& wd : level) {
        for (const Generator& s : spec.S.generators()) {
            WordDomain ext;
            ext.word = wd.word;
            ext.word.push_back(s.label);
            ext.product = compose(s.element, wd.product);
            ext.domain = intersect(wd.domain, preimage(ext.product, spec.U));
            if (ext.domain.is_empty()) continue;
            if (!seen.insert(dedup_key(ext.product, ext.domain)).second) continue;
            next.push_back(std::move(ext));
        }
    }
    return next;
}

WordDomain empty_word(const PseudogroupSpec& spec) {
    return WordDomain{{}, GroupElement::identity(), spec.U};
}

} // namespace

std::vector<WordDomain> enumerate_word_domains(const PseudogroupSpec& spec, unsigned depth) {
    std::vector<WordDomain> all{empty_word(spec)};
    std::unordered_set<std::string> seen{dedup_key(all[0].product, all[0].domain)};
    std::vector<WordDomain> level = all;
    for (unsigned n = 1; n <= depth && !level.empty(); ++n) {
        level = extend_level(spec, level, seen);
        all.insert(all.end(), level.begin(), level.end());
    }
    return all;
}

RecurrenceResult find_recurrence_N(const PseudogroupSpec& spec, unsigned n_cap) {
    if (!spec.V) throw InvalidInput("find_recurrence_N: spec has no V");
    const ArcSet& V = *spec.V;

    RecurrenceResult res;
    res.certificate.target = spec.U;

    std::vector<WordDomain> level{empty_word(spec)};
    std::unordered_set<std::string> seen{dedup_key(level[0].product, level[0].domain)};
    ArcSet acc = ArcSet::empty();
    std::vector<CoveragePiece> pieces;

    for (unsigned n = 0; n <= n_cap; ++n) {
        if (n > 0) {
            level = extend_level(spec, level, seen);
            if (level.empty()) break; // no new composites can ever appear
        }
        for (const WordDomain& wd : level) {
            ArcSet contrib = intersect(wd.domain, preimage(wd.product, V));
            if (contrib.is_empty()) continue;
            acc = unite(acc, contrib);
            pieces.push_back(CoveragePiece{wd.word, wd.product, std::move(contrib)});
        }
        if (covers(acc, spec.U)) {
            res.N = n;
            res.certificate.pieces = pieces;
            res.certificate.verified = reverify(res.certificate);
            return res;
        }
    }
    res.certificate.pieces = std::move(pieces);
    res.certificate.verified = false;
    return res; // inconclusive at the cap
}

ClaimBResult check_claim_B(const PseudogroupSpec& spec,
                           const std::vector<GroupElement>& excluded, unsigned depth_cap) {
    if (!spec.V) throw InvalidInput("check_claim_B: spec has no V");
    const ArcSet& V = *spec.V;
    const std::unordered_set<GroupElement> skip(excluded.begin(), excluded.end());

    ClaimBResult res;
    res.certificate.target = spec.U;
    ArcSet acc = ArcSet::empty();

    struct Node {
        GroupElement g;
        std::vector<std::string> word;
    };
    std::vector<Node> level{Node{GroupElement::identity(), {}}};
    std::unordered_set<GroupElement> seen{GroupElement::identity()};

    for (unsigned depth = 0; depth <= depth_cap; ++depth) {
        for (const Node& node : level) {
            if (skip.count(node.g)) continue;
            ArcSet contrib = image(node.g, V);
            acc = unite(acc, contrib);
            res.certificate.pieces.push_back(
                CoveragePiece{node.word, node.g, std::move(contrib)});
            if (covers(acc, spec.U)) {
                res.covered = true;
                res.depth_used = depth;
                res.certificate.verified = reverify(res.certificate);
                return res;
            }
        }
        if (depth == depth_cap) break;
        std::vector<Node> next;
        for (const Node& node : level) {
            for (const Generator& s : spec.S.generators()) {
                GroupElement g = compose(s.element, node.g);
                if (!seen.insert(g).second) continue;
                Node child{std::move(g), node.word};
                child.word.push_back(s.label);
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
        if (level.empty()) break;
    }
    res.depth_used = depth_cap;
    res.certificate.verified = false;
    return res; // inconclusive: exhaustion is not a refutation
}

PairCoverageResult check_pair_coverage(const std::vector<GroupElement>& elements,
                                       const ArcSet& V, const ArcSet& target) {
    PairCoverageResult res;
    if (target.is_empty()) {
        res.covered = true;
        return res;
    }

    const std::size_t k = elements.size();
    std::vector<ArcSet> pre(k);
    for (std::size_t i = 0; i < k; ++i) pre[i] = preimage(elements[i], V);

    std::vector<std::pair<std::pair<unsigned, unsigned>, ArcSet>> pairs;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            ArcSet w = intersect(pre[i], pre[j]);
            if (!w.is_empty())
                pairs.push_back({{static_cast<unsigned>(i), static_cast<unsigned>(j)}, std::move(w)});
        }
    }

    std::vector<ProjPoint> cuts = target.boundary();
    for (const auto& [ij, w] : pairs) {
        const std::vector<ProjPoint> b = w.boundary();
        cuts.insert(cuts.end(), b.begin(), b.end());
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto classify = [&](const CirclePiece& piece, const ProjPoint& rep, bool in_closure) {
        if (!in_closure) return true;
        for (const auto& [ij, w] : pairs) {
            if (w.contains(rep)) {
                res.witness.push_back({piece, ij});
                return true;
            }
        }
        if (!res.uncovered) res.uncovered = piece;
        return false;
    };

    bool ok = true;
    if (cuts.empty()) {
        // target is full (nonempty with no boundary); a single pair set must be full.
        CirclePiece whole{false, ProjPoint(mpq_class(0)), ProjPoint(mpq_class(0))};
        ok = classify(whole, ProjPoint(mpq_class(0)), true);
        if (ok) {
            // Also probe a second point so a punctured pair set cannot slip through.
            ok = std::any_of(pairs.begin(), pairs.end(),
                             [](const auto& p) { return p.second.is_full(); });
            if (!ok && !res.uncovered) res.uncovered = whole;
        }
        res.covered = ok;
        return res;
    }

    const std::size_t n = cuts.size();
    std::vector<bool> interval_in(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ProjPoint& u = cuts[i];
        const ProjPoint& v = cuts[(i + 1) % n];
        ProjPoint rep;
        if (n == 1) {
            rep = u.is_infinity() ? ProjPoint(mpq_class(0)) : ProjPoint::infinity();
        } else if (i + 1 == n) {
            rep = u.is_infinity() ? ProjPoint(v.value() - 1) : ProjPoint::infinity();
        } else if (v.is_infinity()) {
            rep = ProjPoint(u.value() + 1);
        } else {
            rep = ProjPoint(mpq_class((u.value() + v.value()) / 2));
        }
        interval_in[i] = target.contains(rep);
        CirclePiece piece{false, u, v};
        ok &= classify(piece, rep, interval_in[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const bool in_closure =
            target.contains(cuts[i]) || interval_in[i] || interval_in[(i + n - 1) % n];
        CirclePiece piece{true, cuts[i], cuts[i]};
        ok &= classify(piece, cuts[i], in_closure);
    }
    res.covered = ok;
    return res;
}

} // namespace pgd
