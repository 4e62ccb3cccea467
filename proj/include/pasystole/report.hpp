#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pasystole/lefschetz.hpp"
#include "pasystole/numfield.hpp"
#include "pasystole/rauzy.hpp"
#include "pasystole/search.hpp"

namespace pasystole {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "pa-systole/1";

inline Json poly_json(const ReciprocalPolynomial& p) {
    return Json(p.descending());
}

inline Json intpoly_json(const IntPoly& p) {
    // descending integer coefficients; strings only when they overflow 64 bits
    Json arr = Json::array();
    for (const Int& v : p.descending()) {
        if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
            arr.push_back(v.convert_to<long long>());
        else
            arr.push_back(v.str());
    }
    return arr;
}

inline Json stats_json(const SearchStats& s) {
    Json j;
    j["total_cases"] = s.total_cases.str();
    j["fractional_rejections"] = s.fractional.str();
    j["surviving_integral"] = s.surviving;
    j["root_rejections"] = s.root_rejections;
    j["boundary_hits"] = s.boundary_hits;
    j["ambiguous_review"] = s.ambiguous;
    return j;
}

inline Json candidate_set_json(const CandidateSet& set) {
    Json j;
    j["schema"] = kSchema;
    j["genus"] = set.genus;
    j["bound_value"] = set.bound.value;
    if (set.bound.defining_poly) j["bound_poly"] = intpoly_json(*set.bound.defining_poly);
    Json arr = Json::array();
    for (const auto& c : set.candidates) {
        Json e;
        e["poly"] = poly_json(c.poly);
        e["root"] = c.root;
        arr.push_back(e);
    }
    j["candidates"] = arr;
    j["stats"] = stats_json(set.stats);
    return j;
}

inline Json witness_json(const FeasibilityWitness& w) {
    Json j;
    Json cycles = Json::array();
    for (const auto& c : w.structure.cycles) {
        Json e;
        e["degree"] = c.degree;
        e["length"] = c.length;
        e["rotation"] = c.rotation;
        e["rotation_order"] = c.order;
        cycles.push_back(e);
    }
    j["cycles"] = cycles;
    Json ro = Json::object();
    for (auto [p, c] : w.regular_orbit_counts) ro[std::to_string(p)] = c;
    j["regular_orbits"] = ro;
    j["horizon"] = w.horizon;
    return j;
}

// aligned text table of the Lefschetz decomposition for one witness
inline std::string lefschetz_table(const LefschetzProfile& profile,
                                   const FeasibilityWitness& w) {
    const int N = static_cast<int>(profile.numbers.size());
    std::vector<std::pair<std::string, std::vector<long long>>> rows;
    rows.push_back({"L(phi^n)", profile.numbers});
    for (const auto& c : w.structure.cycles) {
        std::vector<long long> vals;
        for (int n = 1; n <= N; ++n) vals.push_back(cycle_contribution(c, profile.sign, n));
        rows.push_back({"L(" + std::to_string(c.degree) + "^" + std::to_string(c.length) + ")",
                        vals});
    }
    std::vector<long long> ro;
    for (int n = 1; n <= N; ++n) {
        long long s = 0;
        for (auto [p, cp] : w.regular_orbit_counts)
            if (n % p == 0) s += static_cast<long long>(p) * cp;
        ro.push_back(((profile.sign == -1 && n % 2 == 1) ? 1 : -1) * s);
    }
    rows.push_back({"L_ro", ro});

    std::ostringstream out;
    out << std::setw(10) << "n";
    for (int n = 1; n <= N; ++n) out << std::setw(6) << n;
    out << "\n";
    for (const auto& [label, vals] : rows) {
        out << std::setw(10) << label;
        for (long long v : vals) out << std::setw(6) << v;
        out << "\n";
    }
    return out.str();
}

inline Json field_element_json(const FieldElement& x) {
    Json arr = Json::array();
    for (const Rat& c : x.coords()) arr.push_back(rat_str(c));
    return arr;
}

inline Json certificate_json(const PseudoAnosovCertificate& cert) {
    Json j;
    j["schema"] = kSchema;
    Json loop;
    loop["permutation"] = cert.loop.base;
    loop["path"] = cert.loop.path;
    j["loop"] = loop;
    j["matrix"] = cert.matrix;
    j["minpoly"] = intpoly_json(cert.field->minpoly());
    auto [lo, hi] = cert.field->embedding();
    j["embedding"] = {rat_str(lo), rat_str(hi)};
    j["dilatation"] = field_element_json(cert.dilatation);
    j["dilatation_value"] = cert.dilatation.to_double_approx();
    Json lam = Json::array(), tau = Json::array();
    for (const auto& x : cert.lambda) lam.push_back(field_element_json(x));
    for (const auto& x : cert.tau) tau.push_back(field_element_json(x));
    j["lambda"] = lam;
    j["tau"] = tau;
    j["stratum"] = cert.stratum.degrees;
    j["genus"] = cert.stratum.genus;
    j["marked_points"] = cert.marked_points;
    return j;
}

inline std::string candidate_table(const CandidateSet& set) {
    std::ostringstream out;
    out << "genus " << set.genus << "  bound " << std::setprecision(10) << set.bound.value
        << "\n";
    out << std::setw(12) << "root" << "  polynomial\n";
    for (const auto& c : set.candidates)
        out << std::setw(12) << std::fixed << std::setprecision(6) << c.root << "  "
            << c.poly.str() << "\n";
    out << "cases " << set.stats.total_cases.str() << ", fractional "
        << set.stats.fractional.str() << ", analyzed " << set.stats.surviving << ", boundary "
        << set.stats.boundary_hits << "\n";
    return out.str();
}

inline std::string candidate_csv(const CandidateSet& set) {
    std::ostringstream out;
    out << "root,polynomial\n";
    for (const auto& c : set.candidates) {
        out << std::setprecision(12) << c.root << ",\"";
        const auto d = c.poly.descending();
        for (size_t i = 0; i < d.size(); ++i) out << (i ? " " : "") << d[i];
        out << "\"\n";
    }
    return out.str();
}

}  // namespace pasystole
