// pgdyn: scenario-driven experiments on pseudogroup orbit and germ-cover
// growth, recurrence and coverage certificates, and ping-pong verification.
//
// Exit codes: 0 success, 2 invalid input, 3 cap exhausted or inconclusive,
// 4 verification failed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgd/engine.hpp"
#include "pgd/growth.hpp"
#include "pgd/moebius.hpp"
#include "pgd/pingpong.hpp"
#include "pgd/recurrence.hpp"
#include "pgd/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalidInput = 2;
constexpr int kInconclusive = 3;
constexpr int kVerificationFailed = 4;

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw pgd::InvalidInput("cannot open '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::string default_out_dir() {
    const char* env = std::getenv("PGDYN_OUT");
    return env ? env : ".";
}

pgd::GrowthSeries orbit_series(const std::map<pgd::ProjPoint, unsigned>& orbit,
                               unsigned radius) {
    std::vector<std::size_t> spheres(radius + 1, 0);
    for (const auto& [p, d] : orbit) ++spheres[d];
    return pgd::GrowthSeries::from_sphere_sizes(spheres);
}

struct GrowthOpts {
    std::string scenario_path;
    std::string out_dir = default_out_dir();
    unsigned point_index = 0;
    unsigned threads = 1;
    int max_radius_override = -1;
};

int run_growth(const GrowthOpts& opt) {
    pgd::Scenario sc = pgd::load_scenario(opt.scenario_path);
    const pgd::PseudogroupSpec spec = sc.spec();
    if (opt.point_index >= sc.base_points.size())
        throw pgd::InvalidInput("point index out of range");
    const pgd::ProjPoint x = sc.base_points[opt.point_index];
    const unsigned radius =
        opt.max_radius_override >= 0 ? static_cast<unsigned>(opt.max_radius_override)
                                     : sc.max_radius;
    pgd::SearchLimits limits{sc.max_nodes, opt.threads};

    const pgd::GermBall ball = pgd::germ_ball(spec, x, radius, limits);
    const auto orbit = pgd::orbit_ball(ball);
    const pgd::GrowthSeries germ_series =
        pgd::GrowthSeries::from_sphere_sizes(ball.sphere_sizes());
    const pgd::GrowthSeries orb_series = orbit_series(orbit, radius);
    const pgd::GrowthVerdict germ_verdict = pgd::classify_growth(germ_series, sc.classifier);
    const pgd::GrowthVerdict orb_verdict = pgd::classify_growth(orb_series, sc.classifier);

    // Everything computed; only now touch the filesystem.
    const std::string stem =
        opt.out_dir + "/" + sc.name + "_p" + std::to_string(opt.point_index);
    pgd::atomic_write(stem + "_germ.csv", pgd::germ_ball_csv(ball));
    pgd::atomic_write(stem + "_orbit.csv", pgd::orbit_ball_csv(orbit));
    pgd::atomic_write(stem + "_germ_series.csv", pgd::growth_series_csv(germ_series));
    pgd::atomic_write(stem + "_orbit_series.csv", pgd::growth_series_csv(orb_series));
    pgd::atomic_write(stem + "_spheres.json", pgd::sphere_sizes_json(ball));
    pgd::atomic_write(stem + "_germ_verdict.json", pgd::growth_verdict_to_json(germ_verdict));
    pgd::atomic_write(stem + "_orbit_verdict.json", pgd::growth_verdict_to_json(orb_verdict));

    std::cout << "germ ball: " << ball.size() << " elements, verdict "
              << pgd::to_string(germ_verdict.kind) << "\n"
              << "orbit: " << orbit.size() << " points, verdict "
              << pgd::to_string(orb_verdict.kind) << "\n";
    return kOk;
}

int run_recurrence(const std::string& scenario_path, const std::string& out_dir) {
    pgd::Scenario sc = pgd::load_scenario(scenario_path);
    const pgd::PseudogroupSpec spec = sc.spec();
    const pgd::RecurrenceResult res = pgd::find_recurrence_N(spec, sc.n_cap);
    if (!res.N) {
        std::cout << "recurrence: NOT-FOUND within N <= " << sc.n_cap
                  << " (inconclusive, not a refutation)\n";
        return kInconclusive;
    }
    const std::string path = out_dir + "/" + sc.name + "_recurrence.json";
    pgd::atomic_write(path, pgd::coverage_certificate_to_json(res.certificate));
    std::cout << "recurrence: N = " << *res.N << ", " << res.certificate.pieces.size()
              << " pieces, certificate " << (res.certificate.verified ? "verified" : "UNVERIFIED")
              << ", written to " << path << "\n";
    return res.certificate.verified ? kOk : kVerificationFailed;
}

int run_pingpong_verify(const std::string& cert_path) {
    const pgd::PingPongCertificate cert =
        pgd::pingpong_certificate_from_json(read_file(cert_path));
    const pgd::PingPongVerdict v = pgd::verify_certificate(cert);
    json j;
    j["valid"] = v.valid;
    j["reason"] = v.reason;
    if (v.witness) j["witness"] = {v.witness->first, v.witness->second};
    std::cout << j.dump(2) << "\n";
    return v.valid ? kOk : kVerificationFailed;
}

int run_pingpong_search(const std::string& scenario_path, const std::string& resolution,
                        const std::string& out_dir) {
    pgd::Scenario sc = pgd::load_scenario(scenario_path);
    if (sc.pingpong_elements.empty())
        throw pgd::InvalidInput("scenario has no pingpong elements");
    std::vector<pgd::GroupElement> elements;
    for (const pgd::Generator& t : sc.pingpong_elements) elements.push_back(t.element);
    mpq_class res;
    try {
        res = mpq_class(resolution);
        res.canonicalize();
    } catch (const std::invalid_argument&) {
        throw pgd::InvalidInput("bad resolution '" + resolution + "'");
    }
    const auto cert = pgd::search_certificate(elements, res);
    if (!cert) {
        std::cout << "pingpong search: NOT-FOUND (not a refutation)\n";
        return kInconclusive;
    }
    const std::string path = out_dir + "/" + sc.name + "_pingpong.json";
    pgd::atomic_write(path, pgd::pingpong_certificate_to_json(*cert));
    std::cout << "pingpong search: verified certificate written to " << path << "\n";
    return kOk;
}

int run_coverage(const std::string& scenario_path, const std::string& out_dir) {
    pgd::Scenario sc = pgd::load_scenario(scenario_path);
    if (sc.pingpong_elements.empty())
        throw pgd::InvalidInput("scenario has no pingpong elements");
    if (!sc.V) throw pgd::InvalidInput("scenario has no V");
    std::vector<pgd::GroupElement> elements;
    for (const pgd::Generator& t : sc.pingpong_elements) elements.push_back(t.element);
    const pgd::PairCoverageResult res = pgd::check_pair_coverage(elements, *sc.V, sc.U);
    json j;
    j["covered"] = res.covered;
    j["witness"] = json::array();
    for (const auto& [piece, ij] : res.witness) {
        j["witness"].push_back({{"piece", piece.str()}, {"pair", {ij.first, ij.second}}});
    }
    if (res.uncovered) j["uncovered"] = res.uncovered->str();
    pgd::atomic_write(out_dir + "/" + sc.name + "_coverage.json", j.dump(2) + "\n");
    std::cout << "pair coverage: " << (res.covered ? "covered" : "NOT covered") << "\n";
    return res.covered ? kOk : kVerificationFailed;
}

pgd::GrowthSeries load_series_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    pgd::GrowthSeries s;
    bool first = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (first && line.rfind("radius", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw pgd::InvalidInput(path + ":" + std::to_string(lineno) + ": expected r,count");
        s.counts.emplace_back(static_cast<unsigned>(std::stoul(line.substr(0, comma))),
                              std::stoull(line.substr(comma + 1)));
    }
    s.validate();
    return s;
}

int run_compare_domination(const std::string& u_path, const std::string& v_path,
                           const std::vector<std::string>& constants) {
    const pgd::GrowthSeries u = load_series_csv(u_path);
    const pgd::GrowthSeries v = load_series_csv(v_path);
    json j;
    if (!constants.empty()) {
        if (constants.size() != 4) throw pgd::InvalidInput("--constants needs a b c d");
        pgd::DominationConstants k{mpq_class(constants[0]), mpq_class(constants[1]),
                                   mpq_class(constants[2]), mpq_class(constants[3])};
        const pgd::DominationCheck chk = pgd::check_domination(u, v, k);
        j["holds"] = chk.holds;
        j["applicable_radii"] = chk.applicable;
        std::cout << j.dump(2) << "\n";
        return chk.holds && chk.applicable > 0 ? kOk : kVerificationFailed;
    }
    const auto found = pgd::search_domination(u, v);
    if (!found) {
        j["found"] = false;
        std::cout << j.dump(2) << "\n";
        return kInconclusive;
    }
    j["found"] = true;
    j["constants"] = {found->a.get_str(), found->b.get_str(), found->c.get_str(),
                      found->d.get_str()};
    std::cout << j.dump(2) << "\n";
    return kOk;
}

std::set<pgd::ProjPoint> select_net(const std::string& spec_str,
                                    const std::map<pgd::ProjPoint, unsigned>& orbit) {
    std::set<pgd::ProjPoint> net;
    if (spec_str == "all") {
        for (const auto& [p, d] : orbit) net.insert(p);
    } else if (spec_str == "even" || spec_str == "odd") {
        const unsigned parity = spec_str == "even" ? 0 : 1;
        for (const auto& [p, d] : orbit)
            if (d % 2 == parity) net.insert(p);
    } else if (!spec_str.empty() && spec_str[0] == '@') {
        std::istringstream in(read_file(spec_str.substr(1)));
        for (std::string tok; in >> tok;) net.insert(pgd::ProjPoint::parse(tok));
    } else {
        throw pgd::InvalidInput("net spec must be all|even|odd|@file, got '" + spec_str + "'");
    }
    return net;
}

int run_compare_quasi_lattices(const std::string& scenario_path, unsigned point_index,
                               unsigned C, const std::string& net1_spec,
                               const std::string& net2_spec) {
    pgd::Scenario sc = pgd::load_scenario(scenario_path);
    const pgd::PseudogroupSpec spec = sc.spec();
    if (point_index >= sc.base_points.size())
        throw pgd::InvalidInput("point index out of range");
    const pgd::ProjPoint x = sc.base_points[point_index];
    pgd::SearchLimits limits{sc.max_nodes, 1};
    const auto orbit = pgd::orbit_ball(spec, x, sc.max_radius, limits);
    const auto dist = pgd::orbit_metric(spec, orbit, sc.max_radius, limits);
    const auto net1 = select_net(net1_spec, orbit);
    const auto net2 = select_net(net2_spec, orbit);
    const pgd::QuasiLatticeReport rep = pgd::compare_quasi_lattices(orbit, net1, net2, C, dist);
    json j;
    j["K_C"] = rep.K_C;
    j["delta"] = rep.delta;
    j["verified"] = rep.verified;
    j["checked_radii"] = rep.checked_radii;
    j["excluded_radii"] = rep.excluded_radii;
    std::cout << j.dump(2) << "\n";
    return rep.verified ? kOk : kVerificationFailed;
}

int run_compare_generating_systems(const std::string& path_a, const std::string& path_b,
                                   unsigned point_index, int radius_override) {
    pgd::Scenario a = pgd::load_scenario(path_a);
    pgd::Scenario b = pgd::load_scenario(path_b);
    if (point_index >= a.base_points.size())
        throw pgd::InvalidInput("point index out of range");
    const pgd::ProjPoint x = a.base_points[point_index];
    const unsigned radius =
        radius_override >= 0 ? static_cast<unsigned>(radius_override) : a.max_radius;
    const pgd::DistortionReport rep = pgd::compare_generating_systems(
        a.spec(), b.spec(), x, radius, pgd::SearchLimits{a.max_nodes, 1});
    json j;
    j["comparable"] = rep.comparable;
    j["lambda"] = rep.lambda;
    j["additive_gap"] = rep.additive_gap;
    j["shared_elements"] = rep.shared;
    std::cout << j.dump(2) << "\n";
    return rep.comparable ? kOk : kInconclusive;
}

int run_reverify(const std::string& cert_path) {
    const std::string text = read_file(cert_path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw pgd::InvalidInput(std::string("certificate JSON: ") + e.what());
    }
    const std::string type = j.value("type", "coverage");
    bool ok = false;
    if (type == "pingpong") {
        ok = pgd::verify_certificate(pgd::pingpong_certificate_from_json(text)).valid;
    } else {
        ok = pgd::reverify(pgd::coverage_certificate_from_json(text));
    }
    std::cout << (ok ? "true" : "false") << "\n";
    return ok ? kOk : kVerificationFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudogroup dynamics on the rational projective line"};
    app.require_subcommand(1);

    GrowthOpts gopt;
    auto* growth = app.add_subcommand("growth", "germ-cover and orbit growth experiment");
    growth->add_option("--scenario", gopt.scenario_path)->required();
    growth->add_option("--out", gopt.out_dir);
    growth->add_option("--point", gopt.point_index);
    growth->add_option("--threads", gopt.threads);
    growth->add_option("--max-radius", gopt.max_radius_override);

    std::string rec_scenario, rec_out = default_out_dir();
    auto* rec = app.add_subcommand("recurrence", "find the recurrence depth N with certificate");
    rec->add_option("--scenario", rec_scenario)->required();
    rec->add_option("--out", rec_out);

    std::string pp_mode, pp_cert, pp_scenario, pp_resolution = "1/4",
                         pp_out = default_out_dir();
    auto* pp = app.add_subcommand("pingpong", "verify or search free-semigroup certificates");
    pp->add_option("mode", pp_mode, "verify|search")->required();
    pp->add_option("--certificate", pp_cert);
    pp->add_option("--scenario", pp_scenario);
    pp->add_option("--resolution", pp_resolution);
    pp->add_option("--out", pp_out);

    std::string cov_scenario, cov_out = default_out_dir();
    auto* cov = app.add_subcommand("coverage", "pairwise translate coverage of closure(U)");
    cov->add_option("--scenario", cov_scenario)->required();
    cov->add_option("--out", cov_out);

    std::string cmp_mode, cmp_u, cmp_v, cmp_scenario, cmp_scenario_b;
    std::string cmp_net1 = "all", cmp_net2 = "all";
    std::vector<std::string> cmp_constants;
    unsigned cmp_point = 0, cmp_C = 1;
    int cmp_radius = -1;
    auto* cmp = app.add_subcommand("compare",
                                   "domination | quasi-lattices | generating-systems");
    cmp->add_option("mode", cmp_mode)->required();
    cmp->add_option("--u", cmp_u);
    cmp->add_option("--v", cmp_v);
    cmp->add_option("--constants", cmp_constants)->expected(4);
    cmp->add_option("--scenario", cmp_scenario);
    cmp->add_option("--scenario-b", cmp_scenario_b);
    cmp->add_option("--point", cmp_point);
    cmp->add_option("--C", cmp_C);
    cmp->add_option("--net1", cmp_net1);
    cmp->add_option("--net2", cmp_net2);
    cmp->add_option("--radius", cmp_radius);

    std::string rev_cert;
    auto* rev = app.add_subcommand("reverify", "re-check a certificate with arc algebra only");
    rev->add_option("--certificate", rev_cert)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (growth->parsed()) return run_growth(gopt);
        if (rec->parsed()) return run_recurrence(rec_scenario, rec_out);
        if (pp->parsed()) {
            if (pp_mode == "verify") {
                if (pp_cert.empty()) throw pgd::InvalidInput("pingpong verify needs --certificate");
                return run_pingpong_verify(pp_cert);
            }
            if (pp_mode == "search") {
                if (pp_scenario.empty())
                    throw pgd::InvalidInput("pingpong search needs --scenario");
                return run_pingpong_search(pp_scenario, pp_resolution, pp_out);
            }
            throw pgd::InvalidInput("pingpong mode must be verify or search");
        }
        if (cov->parsed()) return run_coverage(cov_scenario, cov_out);
        if (cmp->parsed()) {
            if (cmp_mode == "domination") {
                if (cmp_u.empty() || cmp_v.empty())
                    throw pgd::InvalidInput("compare domination needs --u and --v");
                return run_compare_domination(cmp_u, cmp_v, cmp_constants);
            }
            if (cmp_mode == "quasi-lattices") {
                if (cmp_scenario.empty())
                    throw pgd::InvalidInput("compare quasi-lattices needs --scenario");
                return run_compare_quasi_lattices(cmp_scenario, cmp_point, cmp_C, cmp_net1,
                                                  cmp_net2);
            }
            if (cmp_mode == "generating-systems") {
                if (cmp_scenario.empty() || cmp_scenario_b.empty())
                    throw pgd::InvalidInput(
                        "compare generating-systems needs --scenario and --scenario-b");
                return run_compare_generating_systems(cmp_scenario, cmp_scenario_b, cmp_point,
                                                      cmp_radius);
            }
            throw pgd::InvalidInput("unknown compare mode '" + cmp_mode + "'");
        }
        if (rev->parsed()) return run_reverify(rev_cert);
    } catch (const pgd::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const pgd::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kInconclusive;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    }
    return kInvalidInput;
}
