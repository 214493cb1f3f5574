#include "pgd/engine.hpp"

#include <algorithm>
#include <thread>
#include <unordered_set>

namespace pgd {

GeneratingSystem::GeneratingSystem(const std::vector<Generator>& gens) {
    if (gens.empty()) throw InvalidInput("GeneratingSystem: no generators");
    std::unordered_set<GroupElement> present;
    std::unordered_set<std::string> labels;
    for (const Generator& g : gens) {
        if (g.element.is_identity())
            throw InvalidInput("GeneratingSystem: identity is not a generator");
        if (!present.insert(g.element).second)
            throw InvalidInput("GeneratingSystem: duplicate generator " + g.element.str());
        if (!labels.insert(g.label).second)
            throw InvalidInput("GeneratingSystem: duplicate label '" + g.label + "'");
    }
    // Symmetric closure: each missing inverse follows its generator.
    for (const Generator& g : gens) {
        gens_.push_back(g);
        const GroupElement inv = invert(g.element);
        if (inv != g.element && present.insert(inv).second) {
            gens_.push_back(Generator{g.label + "^-1", inv});
        }
    }
}

PseudogroupSpec::PseudogroupSpec(GeneratingSystem s, ArcSet u, std::optional<ArcSet> v)
    : S(std::move(s)), U(std::move(u)), V(std::move(v)) {
    if (U.is_empty()) throw InvalidInput("PseudogroupSpec: U must be nonempty");
    if (V && !covers_closure(U, *V))
        throw InvalidInput("PseudogroupSpec: closure(V) must be contained in U");
}

GermBall::GermBall(ProjPoint base, unsigned radius, std::vector<GermBallEntry> entries,
                   std::vector<std::size_t> sphere_sizes)
    : base_(std::move(base)), radius_(radius), entries_(std::move(entries)),
      sphere_sizes_(std::move(sphere_sizes)) {
    index_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].element, i);
}

std::size_t GermBall::count_within(unsigned r) const {
    std::size_t n = 0;
    for (unsigned i = 0; i <= r && i < sphere_sizes_.size(); ++i) n += sphere_sizes_[i];
    return n;
}

std::optional<unsigned> GermBall::length_of(const GroupElement& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return entries_[it->second].length;
}

namespace {

struct Candidate {
    GroupElement element;
    ProjPoint point;
    bool admissible = false;
};

struct BfsResult {
    std::vector<GermBallEntry> entries;
    std::vector<std::size_t> spheres;
    std::optional<unsigned> target_length;
};

// Level-synchronous breadth-first search over group elements. Candidate
// generation may run on several threads; admission is a sequential pass in
// (frontier order, generator order), so the result does not depend on the
// thread count.
BfsResult constrained_bfs(const PseudogroupSpec& spec, const ProjPoint& x, unsigned radius,
                          const SearchLimits& limits, const GroupElement* target) {
    if (!spec.U.contains(x))
        throw InvalidInput("germ ball: base point " + x.str() + " lies outside U");

    BfsResult res;
    res.entries.push_back(GermBallEntry{GroupElement::identity(), 0, x});
    res.spheres.assign(1, 1);
    if (target && target->is_identity()) {
        res.target_length = 0;
        return res;
    }

    std::unordered_map<GroupElement, std::size_t> seen;
    seen.emplace(GroupElement::identity(), 0);

    const std::vector<Generator>& gens = spec.S.generators();
    std::size_t level_begin = 0;

    for (unsigned length = 1; length <= radius; ++length) {
        const std::size_t level_end = res.entries.size();
        if (level_begin == level_end) break; // frontier exhausted, ball complete
        const std::size_t width = (level_end - level_begin) * gens.size();
        std::vector<Candidate> cand(width);

        auto expand = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t idx = lo; idx < hi; ++idx) {
                const GermBallEntry& src = res.entries[level_begin + idx / gens.size()];
                const Generator& s = gens[idx % gens.size()];
                Candidate& c = cand[idx];
                c.element = compose(s.element, src.element);
                c.point = act(s.element, src.point);
                c.admissible = spec.U.contains(c.point);
            }
        };
        const unsigned nthreads =
            std::max(1u, std::min<unsigned>(limits.threads, std::thread::hardware_concurrency()));
        if (nthreads <= 1 || width < 64) {
            expand(0, width);
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (width + nthreads - 1) / nthreads;
            for (unsigned t = 0; t < nthreads; ++t) {
                const std::size_t lo = t * chunk;
                const std::size_t hi = std::min(width, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(expand, lo, hi);
            }
            for (std::thread& th : pool) th.join();
        }

        res.spheres.push_back(0);
        for (Candidate& c : cand) {
            if (!c.admissible) continue;
            if (!seen.emplace(c.element, res.entries.size()).second) continue;
            if (res.entries.size() >= limits.max_nodes)
                throw CapExceeded("germ ball: node cap " + std::to_string(limits.max_nodes) +
                                  " exceeded at radius " + std::to_string(length));
            res.entries.push_back(GermBallEntry{std::move(c.element), length, std::move(c.point)});
            ++res.spheres.back();
            if (target && res.entries.back().element == *target) {
                res.target_length = length;
                return res;
            }
        }
        level_begin = level_end;
    }
    return res;
}

} // namespace

GermBall germ_ball(const PseudogroupSpec& spec, const ProjPoint& x, unsigned radius,
                   const SearchLimits& limits) {
    BfsResult res = constrained_bfs(spec, x, radius, limits, nullptr);
    res.spheres.resize(radius + 1, 0);
    return GermBall(x, radius, std::move(res.entries), std::move(res.spheres));
}

std::map<ProjPoint, unsigned> orbit_ball(const GermBall& ball) {
    std::map<ProjPoint, unsigned> out;
    for (const GermBallEntry& e : ball.entries()) {
        auto [it, fresh] = out.emplace(e.point, e.length);
        if (!fresh && e.length < it->second) it->second = e.length; // cannot happen in BFS order
    }
    return out;
}

std::map<ProjPoint, unsigned> orbit_ball(const PseudogroupSpec& spec, const ProjPoint& x,
                                         unsigned radius, const SearchLimits& limits) {
    return orbit_ball(germ_ball(spec, x, radius, limits));
}

std::optional<unsigned> germ_distance(const PseudogroupSpec& spec, const ProjPoint& x,
                                      const GroupElement& gamma, const GroupElement& delta,
                                      unsigned radius_cap, const SearchLimits& limits) {
    const ProjPoint gx = act(gamma, x);
    if (!spec.U.contains(gx) || !spec.U.contains(act(delta, x)))
        throw InvalidInput("germ distance: gamma and delta must both move x into U");
    const GroupElement target = compose(delta, invert(gamma));
    try {
        BfsResult res = constrained_bfs(spec, gx, radius_cap, limits, &target);
        return res.target_length;
    } catch (const CapExceeded&) {
        return std::nullopt; // unreachable within the configured caps
    }
}

std::vector<GroupElement> stabilizer_elements(const GermBall& ball) {
    std::vector<GroupElement> out;
    for (const GermBallEntry& e : ball.entries()) {
        if (!e.element.is_identity() && e.point == ball.base()) out.push_back(e.element);
    }
    return out;
}

std::vector<GroupElement> stabilizer_elements(const PseudogroupSpec& spec, const ProjPoint& x,
                                              unsigned radius, const SearchLimits& limits) {
    return stabilizer_elements(germ_ball(spec, x, radius, limits));
}

} // namespace pgd
