#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgd/engine.hpp"
#include "pgd/growth.hpp"
#include "pgd/pingpong.hpp"
#include "pgd/recurrence.hpp"

namespace pgd {

// A parsed scenario file: generating data, arc sets, base points, caps,
// classifier parameters, and free-form declared metadata.
struct Scenario {
    std::string name;
    std::vector<Generator> generators;
    ArcSet U = ArcSet::full();
    std::optional<ArcSet> V;
    std::vector<ProjPoint> base_points;

    unsigned max_radius = 16;
    std::size_t max_nodes = 5'000'000;
    unsigned n_cap = 16;
    unsigned depth_cap = 12;
    ClassifyParams classifier;

    std::vector<Generator> pingpong_elements;           // labelled t_i
    std::map<std::string, ArcSet> pingpong_tables;      // label -> table

    std::map<std::string, std::string> metadata;

    PseudogroupSpec spec() const;
    std::optional<PingPongCertificate> certificate() const;
};

// Line-oriented scenario parser; errors carry the offending line number.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// JSON encoding of arc sets, certificates, and verdicts (shared by the CLI
// and the standalone re-verifier).
std::string arcset_to_json(const ArcSet& a);
ArcSet arcset_from_json(const std::string& j);

std::string coverage_certificate_to_json(const CoverageCertificate& cert);
CoverageCertificate coverage_certificate_from_json(const std::string& j);

std::string pingpong_certificate_to_json(const PingPongCertificate& cert);
PingPongCertificate pingpong_certificate_from_json(const std::string& j);

std::string growth_verdict_to_json(const GrowthVerdict& v);

// Write-then-rename so outputs appear atomically or not at all.
void atomic_write(const std::string& path, const std::string& contents);

std::string germ_ball_csv(const GermBall& ball);
std::string orbit_ball_csv(const std::map<ProjPoint, unsigned>& orbit);
std::string growth_series_csv(const GrowthSeries& s);
std::string sphere_sizes_json(const GermBall& ball);

} // namespace pgd
