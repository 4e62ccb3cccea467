#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "pasystole/report.hpp"
#include "pasystole/search.hpp"

namespace pasystole {

struct CheckpointMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CorruptCheckpoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StratumVerdict {
    Stratum stratum;
    int sign = 0;                              // sign of the dominant root of the charpoly used
    std::vector<FeasibilityWitness> witnesses; // empty = eliminated
};

struct CandidateReport {
    Candidate candidate;
    std::vector<StratumVerdict> verdicts;  // one per (sign, stratum)
    bool survives = false;
    std::string note;  // external-elimination flags and similar
};

struct PipelineReport {
    int genus = 0;
    RootBound bound;
    int horizon = 0;
    CandidateSet enumeration;
    std::vector<CandidateReport> candidates;
    std::optional<Candidate> minimum_survivor;
    double reported_minimum = 0;   // dilatation bound concluded by the run
    std::string conclusion;
    double elapsed_seconds = 0;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// enumeration checkpoints do not depend on the Lefschetz horizon
inline std::string config_signature(int genus, const RootBound& bound) {
    std::ostringstream s;
    s << kSchema << "|g" << genus << "|b" << std::setprecision(17) << bound.value;
    if (bound.defining_poly) s << "|p" << bound.defining_poly->str();
    return std::to_string(fnv1a(s.str()));
}

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

inline Json shard_result_json(const std::vector<Candidate>& cands, const SearchStats& stats) {
    Json j;
    Json arr = Json::array();
    for (const auto& c : cands) {
        Json e;
        e["poly"] = poly_json(c.poly);
        e["root"] = c.root;
        arr.push_back(e);
    }
    j["candidates"] = arr;
    j["stats"] = stats_json(stats);
    return j;
}

inline Int trace_box_total(int genus, double bound_value) {
    Int total = trace_bound(2 * genus, bound_value, 1) + 1;
    for (int k = 2; k <= genus; ++k)
        total *= Int(2 * trace_bound(2 * genus, bound_value, k) + 1);
    return total;
}

inline std::pair<std::vector<Candidate>, SearchStats> shard_result_from_json(const Json& j) {
    std::vector<Candidate> cands;
    SearchStats stats;
    for (const auto& e : j.at("candidates")) {
        Candidate c;
        std::vector<long long> desc = e.at("poly").get<std::vector<long long>>();
        c.poly = ReciprocalPolynomial::from_poly(IntPoly::from_descending(desc)).value();
        c.root = e.at("root").get<double>();
        cands.push_back(std::move(c));
    }
    const auto& s = j.at("stats");
    stats.total_cases = Int(s.at("total_cases").get<std::string>());
    stats.fractional = Int(s.at("fractional_rejections").get<std::string>());
    stats.surviving = s.at("surviving_integral").get<std::uint64_t>();
    stats.root_rejections = s.at("root_rejections").get<std::uint64_t>();
    stats.boundary_hits = s.at("boundary_hits").get<std::uint64_t>();
    stats.ambiguous = s.at("ambiguous_review").get<std::uint64_t>();
    return {std::move(cands), std::move(stats)};
}

}  // namespace detail

// Enumeration with per-shard checkpoint files.  Completed shards are loaded
// from disk; fresh ones are computed and written atomically.  Resuming a
// partial run yields the same merged set as an uninterrupted one.
inline CandidateSet enumerate_with_checkpoint(int genus, const RootBound& bound, int threads,
                                              const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const std::string signature = detail::config_signature(genus, bound);
    const fs::path manifest_path = dir / "manifest.json";
    auto shards = make_shards(genus, bound, threads);
    if (fs::exists(manifest_path)) {
        Json m;
        try {
            std::ifstream in(manifest_path);
            m = Json::parse(in);
        } catch (const std::exception& e) {
            throw CorruptCheckpoint(std::string("unreadable manifest: ") + e.what());
        }
        if (m.value("config", "") != signature)
            throw CheckpointMismatch("checkpoint was created with a different configuration");
    } else {
        Json m;
        m["schema"] = kSchema;
        m["config"] = signature;
        m["genus"] = genus;
        m["bound_value"] = bound.value;
        m["shards"] = shards.size();
        detail::atomic_write(manifest_path, m.dump(2));
    }

    CandidateSet out;
    out.genus = genus;
    out.bound = bound;
    std::vector<std::pair<std::vector<Candidate>, SearchStats>> results(shards.size());
    std::vector<size_t> todo;
    for (size_t i = 0; i < shards.size(); ++i) {
        fs::path f = dir / ("shard-" + std::to_string(i) + ".json");
        if (fs::exists(f)) {
            try {
                std::ifstream in(f);
                results[i] = detail::shard_result_from_json(Json::parse(in));
                continue;
            } catch (const std::exception& e) {
                throw CorruptCheckpoint("unreadable shard file " + f.string() + ": " + e.what());
            }
        }
        todo.push_back(i);
    }
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (;;) {
            size_t t = next.fetch_add(1);
            if (t >= todo.size()) return;
            size_t i = todo[t];
            results[i] = enumerate_shard(shards[i]);
            detail::atomic_write(dir / ("shard-" + std::to_string(i) + ".json"),
                                 detail::shard_result_json(results[i].first, results[i].second)
                                     .dump());
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& [cands, stats] : results) {
        out.candidates.insert(out.candidates.end(), cands.begin(), cands.end());
        out.stats.absorb(stats);
    }
    sort_dedupe(out.candidates);
    auto tb = detail::trace_box_total(genus, bound.value);
    out.stats.total_cases = tb;
    out.stats.fractional = tb - Int(out.stats.surviving);
    return out;
}

// X^6 - 2X^5 + 2X^4 - 3X^3 + 2X^2 - 2X + 1: survives the homology filter on
// (4,4) but is excluded by the hyperelliptic-involution argument, which is
// outside this tool's scope.
inline bool genus2_externally_eliminated(const ReciprocalPolynomial& p) {
    return p.descending() == std::vector<long long>{1, -2, 2, -3, 2, -2, 1};
}

inline RootBound default_bound(int genus) {
    switch (genus) {
        case 2: return RootBound::from_poly(IntPoly::from_descending({1, -1, -1, -1, 1}));
        case 3: return RootBound::from_poly(IntPoly::from_descending({1, -1, 0, -1}));
        case 4:
            return RootBound::from_poly(
                IntPoly::from_descending({1, -1, 1, -1, -1, -1, 1, -1, 1}));
        default: return RootBound::from_value(1.2);
    }
}

// Enumerate, then scan every candidate against every stratum for both signs
// of the dominant root.  The genus-2 run is the double-cover analysis: the
// degree-6 cover candidates are tested on the genus-3 stratum (4,4) with
// positive trace, and the known external elimination is applied.
inline PipelineReport run_pipeline(int genus, const RootBound& bound, int horizon, int threads,
                                   const std::optional<std::filesystem::path>& checkpoint_dir =
                                       std::nullopt) {
    if (genus < 2 || genus > 8) throw std::invalid_argument("pipeline supports genus 2..8");
    const auto t0 = std::chrono::steady_clock::now();
    PipelineReport rep;
    rep.genus = genus;
    rep.bound = bound;
    rep.horizon = horizon;

    const bool cover_analysis = (genus == 2);
    const int search_genus = cover_analysis ? 3 : genus;
    rep.enumeration = checkpoint_dir
                          ? enumerate_with_checkpoint(search_genus, bound, threads,
                                                      *checkpoint_dir)
                          : enumerate_candidates(search_genus, bound, threads);

    for (const auto& cand : rep.enumeration.candidates) {
        CandidateReport cr;
        cr.candidate = cand;
        const std::vector<Stratum> strata =
            cover_analysis ? std::vector<Stratum>{Stratum::of({4, 4})}
                           : enumerate_strata(search_genus);
        for (int sign : {+1, -1}) {
            if (cover_analysis && sign < 0) continue;  // the cover lift has positive trace
            ReciprocalPolynomial charpoly =
                sign > 0 ? cand.poly : cand.poly.negate_variable();
            for (const Stratum& st : strata) {
                StratumVerdict v;
                v.stratum = st;
                v.sign = sign;
                v.witnesses = stratum_feasible(charpoly, st, horizon);
                if (!v.witnesses.empty()) cr.survives = true;
                cr.verdicts.push_back(std::move(v));
            }
        }
        if (cr.survives && cover_analysis && genus2_externally_eliminated(cand.poly)) {
            cr.survives = false;
            cr.note =
                "survives homology filter; eliminated by hyperelliptic-involution argument "
                "(outside this tool's scope)";
        }
        rep.candidates.push_back(std::move(cr));
    }

    for (const auto& cr : rep.candidates) {
        if (!cr.survives) continue;
        if (!rep.minimum_survivor || cr.candidate.root < rep.minimum_survivor->root)
            rep.minimum_survivor = cr.candidate;
    }
    if (cover_analysis) {
        // every smaller candidate eliminated: the bound itself is the minimum,
        // realized by the known constructions
        rep.reported_minimum = bound.value;
        rep.conclusion = rep.minimum_survivor
                             ? "a smaller homology candidate survives the filter"
                             : "minimum dilatation equals the seed bound";
    } else if (rep.minimum_survivor) {
        rep.reported_minimum = rep.minimum_survivor->root;
        rep.conclusion = "minimum surviving candidate sets the lower bound";
    } else {
        rep.reported_minimum = bound.value;
        rep.conclusion = "all candidates eliminated; the seed bound is the minimum";
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline Json pipeline_json(const PipelineReport& rep, bool include_timing = true) {
    Json j;
    j["schema"] = kSchema;
    j["genus"] = rep.genus;
    j["bound_value"] = rep.bound.value;
    if (rep.bound.defining_poly) j["bound_poly"] = intpoly_json(*rep.bound.defining_poly);
    j["horizon"] = rep.horizon;
    j["stats"] = stats_json(rep.enumeration.stats);
    Json cands = Json::array();
    for (const auto& cr : rep.candidates) {
        Json c;
        c["poly"] = poly_json(cr.candidate.poly);
        c["root"] = cr.candidate.root;
        c["survives"] = cr.survives;
        if (!cr.note.empty()) c["note"] = cr.note;
        Json verdicts = Json::array();
        for (const auto& v : cr.verdicts) {
            Json e;
            e["stratum"] = v.stratum.degrees;
            e["sign"] = v.sign;
            e["feasible"] = !v.witnesses.empty();
            if (!v.witnesses.empty()) e["witness"] = witness_json(v.witnesses.front());
            verdicts.push_back(e);
        }
        c["verdicts"] = verdicts;
        cands.push_back(c);
    }
    j["candidates"] = cands;
    if (rep.minimum_survivor) {
        j["minimum_survivor"] = {{"poly", poly_json(rep.minimum_survivor->poly)},
                                 {"root", rep.minimum_survivor->root}};
    }
    j["reported_minimum"] = rep.reported_minimum;
    j["conclusion"] = rep.conclusion;
    if (include_timing) j["timing"] = {{"elapsed_seconds", rep.elapsed_seconds}};
    return j;
}

inline std::string pipeline_table(const PipelineReport& rep) {
    std::ostringstream out;
    out << "pipeline genus " << rep.genus << "  bound " << std::setprecision(8)
        << rep.bound.value << "  horizon " << rep.horizon << "\n";
    for (const auto& cr : rep.candidates) {
        out << std::setw(11) << std::fixed << std::setprecision(6) << cr.candidate.root << "  "
            << (cr.survives ? "SURVIVES " : "eliminated ") << cr.candidate.poly.str() << "\n";
        for (const auto& v : cr.verdicts)
            if (!v.witnesses.empty())
                out << "             feasible on " << v.stratum.str() << " with sign "
                    << (v.sign > 0 ? "+" : "-") << "\n";
        if (!cr.note.empty()) out << "             " << cr.note << "\n";
    }
    out << "reported minimum dilatation: " << std::setprecision(6) << rep.reported_minimum
        << "  (" << rep.conclusion << ")\n";
    return out.str();
}

}  // namespace pasystole
