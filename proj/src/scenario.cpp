#include "pgd/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pgd {

using nlohmann::json;

PseudogroupSpec Scenario::spec() const {
    if (generators.empty()) throw InvalidInput("scenario '" + name + "': no generators");
    return PseudogroupSpec(GeneratingSystem(generators), U, V);
}

std::optional<PingPongCertificate> Scenario::certificate() const {
    if (pingpong_elements.empty() || pingpong_tables.empty()) return std::nullopt;
    PingPongCertificate cert;
    for (const Generator& t : pingpong_elements) {
        auto it = pingpong_tables.find(t.label);
        if (it == pingpong_tables.end())
            throw InvalidInput("scenario '" + name + "': no table for element '" + t.label + "'");
        cert.elements.push_back(t.element);
        cert.tables.push_back(it->second);
    }
    return cert;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
    throw InvalidInput("scenario parse error at line " + std::to_string(line) + ": " + msg);
}

ArcSet parse_arcset_tokens(const std::vector<std::string>& toks, std::size_t line) {
    if (toks.size() == 1 && toks[0] == "full") return ArcSet::full();
    if (toks.size() == 1 && toks[0] == "empty") return ArcSet::empty();
    if (toks.empty() || toks.size() % 2 != 0)
        parse_fail(line, "arc set needs 'full', 'empty', or endpoint pairs");
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < toks.size(); i += 2) {
        arcs.push_back(Arc{ProjPoint::parse(toks[i]), ProjPoint::parse(toks[i + 1])});
    }
    return ArcSet(arcs);
}

unsigned long parse_count(const std::string& tok, std::size_t line) {
    if (tok.empty() || tok[0] == '-' || tok.find_first_not_of("0123456789") != std::string::npos)
        parse_fail(line, "expected a non-negative integer, got '" + tok + "'");
    return std::stoul(tok);
}

GroupElement parse_matrix_tokens(const std::vector<std::string>& toks, std::size_t start,
                                 std::size_t line) {
    if (toks.size() != start + 4) parse_fail(line, "matrix needs four integers a b c d");
    std::string joined;
    for (std::size_t i = start; i < toks.size(); ++i) {
        if (!joined.empty()) joined += " ";
        joined += toks[i];
    }
    return GroupElement::parse(joined);
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    bool saw_U = false;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        const std::string key = toks[0];
        toks.erase(toks.begin());
        try {
            if (key == "name") {
                if (toks.size() != 1) parse_fail(lineno, "name takes one token");
                sc.name = toks[0];
            } else if (key == "generator") {
                if (toks.empty()) parse_fail(lineno, "generator needs a label and a matrix");
                sc.generators.push_back(
                    Generator{toks[0], parse_matrix_tokens(toks, 1, lineno)});
            } else if (key == "U") {
                sc.U = parse_arcset_tokens(toks, lineno);
                saw_U = true;
            } else if (key == "V") {
                sc.V = parse_arcset_tokens(toks, lineno);
            } else if (key == "basepoint") {
                if (toks.size() != 1) parse_fail(lineno, "basepoint takes one point");
                sc.base_points.push_back(ProjPoint::parse(toks[0]));
            } else if (key == "max-radius") {
                sc.max_radius = static_cast<unsigned>(parse_count(toks.at(0), lineno));
            } else if (key == "max-nodes") {
                sc.max_nodes = parse_count(toks.at(0), lineno);
            } else if (key == "ncap") {
                sc.n_cap = static_cast<unsigned>(parse_count(toks.at(0), lineno));
            } else if (key == "depthcap") {
                sc.depth_cap = static_cast<unsigned>(parse_count(toks.at(0), lineno));
            } else if (key == "margin") {
                sc.classifier.margin = std::stod(toks.at(0));
            } else if (key == "min-points") {
                sc.classifier.min_points = static_cast<unsigned>(parse_count(toks.at(0), lineno));
            } else if (key == "window-fraction") {
                sc.classifier.window_fraction = std::stod(toks.at(0));
            } else if (key == "pingpong") {
                if (toks.empty()) parse_fail(lineno, "pingpong needs a label and a matrix");
                sc.pingpong_elements.push_back(
                    Generator{toks[0], parse_matrix_tokens(toks, 1, lineno)});
            } else if (key == "table") {
                if (toks.size() < 2) parse_fail(lineno, "table needs a label and arc data");
                const std::string label = toks[0];
                toks.erase(toks.begin());
                sc.pingpong_tables[label] = parse_arcset_tokens(toks, lineno);
            } else if (key == "meta") {
                if (toks.size() < 2) parse_fail(lineno, "meta needs a key and a value");
                std::string value;
                for (std::size_t i = 1; i < toks.size(); ++i) {
                    if (!value.empty()) value += " ";
                    value += toks[i];
                }
                sc.metadata[toks[0]] = value;
            } else {
                parse_fail(lineno, "unknown key '" + key + "'");
            }
        } catch (const InvalidInput& e) {
            const std::string msg = e.what();
            if (msg.rfind("scenario parse error", 0) == 0) throw;
            parse_fail(lineno, msg);
        } catch (const std::exception& e) {
            parse_fail(lineno, e.what());
        }
    }
    if (!saw_U) sc.U = ArcSet::full();
    if (sc.max_radius == 0 || sc.max_nodes == 0)
        throw InvalidInput("scenario '" + sc.name + "': caps must be positive");
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_scenario(buf.str());
}

// ---------------------------------------------------------------------------
// JSON encodings
// ---------------------------------------------------------------------------

namespace {

json arcset_json(const ArcSet& a) {
    if (a.is_full()) return "full";
    if (a.is_empty()) return "empty";
    json arcs = json::array();
    for (const Arc& arc : a.arcs()) arcs.push_back({arc.from.str(), arc.to.str()});
    return arcs;
}

ArcSet arcset_unjson(const json& j) {
    if (j.is_string()) {
        if (j == "full") return ArcSet::full();
        if (j == "empty") return ArcSet::empty();
        throw InvalidInput("arc set JSON: unknown tag '" + j.get<std::string>() + "'");
    }
    std::vector<Arc> arcs;
    for (const auto& pair : j) {
        arcs.push_back(Arc{ProjPoint::parse(pair.at(0).get<std::string>()),
                           ProjPoint::parse(pair.at(1).get<std::string>())});
    }
    return ArcSet(arcs);
}

} // namespace

std::string arcset_to_json(const ArcSet& a) { return arcset_json(a).dump(); }

ArcSet arcset_from_json(const std::string& j) { return arcset_unjson(json::parse(j)); }

std::string coverage_certificate_to_json(const CoverageCertificate& cert) {
    json j;
    j["type"] = "coverage";
    j["target"] = arcset_json(cert.target);
    j["verified"] = cert.verified;
    j["pieces"] = json::array();
    for (const CoveragePiece& p : cert.pieces) {
        j["pieces"].push_back({{"word", p.word},
                               {"element", p.element.str()},
                               {"arcs", arcset_json(p.contribution)}});
    }
    return j.dump(2) + "\n";
}

CoverageCertificate coverage_certificate_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("certificate JSON: ") + e.what());
    }
    CoverageCertificate cert;
    try {
        cert.target = arcset_unjson(j.at("target"));
        cert.verified = j.value("verified", false);
        for (const auto& p : j.at("pieces")) {
            CoveragePiece piece;
            piece.word = p.value("word", std::vector<std::string>{});
            piece.element = GroupElement::parse(p.at("element").get<std::string>());
            piece.contribution = arcset_unjson(p.at("arcs"));
            cert.pieces.push_back(std::move(piece));
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("certificate JSON: ") + e.what());
    }
    return cert;
}

std::string pingpong_certificate_to_json(const PingPongCertificate& cert) {
    json j;
    j["type"] = "pingpong";
    j["elements"] = json::array();
    j["tables"] = json::array();
    for (const GroupElement& t : cert.elements) j["elements"].push_back(t.str());
    for (const ArcSet& a : cert.tables) j["tables"].push_back(arcset_json(a));
    return j.dump(2) + "\n";
}

PingPongCertificate pingpong_certificate_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("certificate JSON: ") + e.what());
    }
    PingPongCertificate cert;
    try {
        for (const auto& t : j.at("elements"))
            cert.elements.push_back(GroupElement::parse(t.get<std::string>()));
        for (const auto& a : j.at("tables")) cert.tables.push_back(arcset_unjson(a));
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("certificate JSON: ") + e.what());
    }
    return cert;
}

std::string growth_verdict_to_json(const GrowthVerdict& v) {
    json j;
    j["kind"] = to_string(v.kind);
    if (v.kind != GrowthKind::Inconclusive) {
        j[v.kind == GrowthKind::Polynomial ? "degree" : "rate"] = v.estimate;
    }
    j["residual_poly"] = v.residual_poly;
    j["residual_exp"] = v.residual_exp;
    j["window"] = {v.window_min, v.window_max};
    return j.dump(2) + "\n";
}

void atomic_write(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw InvalidInput("cannot write '" + tmp + "'");
        f << contents;
        if (!f.good()) throw InvalidInput("short write to '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw InvalidInput("cannot rename '" + tmp + "' to '" + path + "'");
    }
}

std::string germ_ball_csv(const GermBall& ball) {
    std::string out = "length,a,b,c,d,point\n";
    for (const GermBallEntry& e : ball.entries()) {
        std::string row = std::to_string(e.length);
        std::string m = e.element.str();
        for (char& ch : m)
            if (ch == ' ') ch = ',';
        out += row + "," + m + "," + e.point.str() + "\n";
    }
    return out;
}

std::string orbit_ball_csv(const std::map<ProjPoint, unsigned>& orbit) {
    std::string out = "point,distance\n";
    for (const auto& [p, d] : orbit) out += p.str() + "," + std::to_string(d) + "\n";
    return out;
}

std::string growth_series_csv(const GrowthSeries& s) {
    std::string out = "radius,count\n";
    for (const auto& [r, v] : s.counts)
        out += std::to_string(r) + "," + std::to_string(v) + "\n";
    return out;
}

std::string sphere_sizes_json(const GermBall& ball) {
    json j = json::array();
    for (std::size_t n : ball.sphere_sizes()) j.push_back(n);
    return j.dump() + "\n";
}

} // namespace pgd
