// Command-line frontend: enumeration, Lefschetz filtering, full pipeline,
// Rauzy-Veech certification and loop search, Dehn-twist homology actions.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pasystole/parse.hpp"
#include "pasystole/pipeline.hpp"
#include "pasystole/report.hpp"

using namespace pasystole;

namespace {

int thread_count(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("PA_SYSTOLE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

RootBound resolve_bound(int genus, const std::string& bound_text, double bound_value) {
    if (!bound_text.empty()) return RootBound::from_poly(parse_polynomial(bound_text));
    if (bound_value > 0) return RootBound::from_value(bound_value);
    return default_bound(genus);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    out << text;
}

struct CommonFlags {
    int genus = 0;
    std::string bound_text;
    double bound_value = 0;
    int max_iter = 15;
    int shards_flag = 0;
    std::string checkpoint;
    std::string out_path;
    std::string format = "table";
    bool extended = false;
};

void add_output_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--out", f.out_path, "write the result to this file");
    cmd->add_option("--format", f.format, "json|csv|table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum-dilatation search for pseudo-Anosov maps with orientable foliations"};
    app.require_subcommand(1);
    CommonFlags f;

    // ---- enumerate ----
    auto* enumerate_cmd =
        app.add_subcommand("enumerate", "all allowable reciprocal polynomials under a bound");
    enumerate_cmd->add_option("--genus", f.genus, "genus g (degree 2g)")->required();
    enumerate_cmd->add_option("--bound", f.bound_text, "bound polynomial, e.g. \"x^3-x^2-1\"");
    enumerate_cmd->add_option("--bound-value", f.bound_value, "numeric bound");
    enumerate_cmd->add_option("--shards", f.shards_flag, "worker count");
    enumerate_cmd->add_option("--checkpoint", f.checkpoint, "checkpoint directory");
    add_output_flags(enumerate_cmd, f);

    // ---- filter ----
    std::string filter_poly, filter_stratum, filter_sign = "both";
    auto* filter_cmd =
        app.add_subcommand("filter", "Lefschetz compatibility of a polynomial with strata");
    filter_cmd->add_option("--poly", filter_poly, "reciprocal polynomial")->required();
    filter_cmd->add_option("--stratum", filter_stratum, "stratum, e.g. 2,2,4 (default: all)");
    filter_cmd->add_option("--sign", filter_sign, "+|-|both")
        ->check(CLI::IsMember({"+", "-", "both"}));
    filter_cmd->add_option("--max-iter", f.max_iter, "Lefschetz horizon N (default 15)");
    add_output_flags(filter_cmd, f);

    // ---- pipeline ----
    auto* pipeline_cmd =
        app.add_subcommand("pipeline", "enumerate, filter, and report the minimum");
    pipeline_cmd->add_option("--genus", f.genus, "genus 2..8")->required();
    pipeline_cmd->add_option("--bound", f.bound_text, "bound polynomial");
    pipeline_cmd->add_option("--bound-value", f.bound_value, "numeric bound");
    pipeline_cmd->add_option("--max-iter", f.max_iter, "Lefschetz horizon N (default 15)");
    pipeline_cmd->add_option("--shards", f.shards_flag, "worker count");
    pipeline_cmd->add_option("--checkpoint", f.checkpoint, "checkpoint directory");
    pipeline_cmd->add_flag("--extended", f.extended, "allow genus 6..8 long runs");
    add_output_flags(pipeline_cmd, f);

    // ---- rauzy ----
    auto* rauzy_cmd = app.add_subcommand("rauzy", "Rauzy-Veech constructions");
    rauzy_cmd->require_subcommand(1);
    std::string rz_perm, rz_path, rz_target;
    int rz_maxlen = 14;
    auto* rz_verify = rauzy_cmd->add_subcommand("verify", "certify a closed loop");
    rz_verify->add_option("--perm", rz_perm, "permutation, e.g. 5,3,9,8,6,2,7,1,4")->required();
    rz_verify->add_option("--path", rz_path, "edge types, e.g. 0,1,0,0")->required();
    add_output_flags(rz_verify, f);
    auto* rz_search = rauzy_cmd->add_subcommand("search", "closed loops hitting a target");
    rz_search->add_option("--perm", rz_perm, "base permutation")->required();
    rz_search->add_option("--target", rz_target, "target polynomial")->required();
    rz_search->add_option("--max-len", rz_maxlen, "maximum loop length");
    add_output_flags(rz_search, f);

    // ---- twist ----
    auto* twist_cmd = app.add_subcommand("twist", "Dehn-twist homology actions");
    twist_cmd->require_subcommand(1);
    std::string tw_word, tw_target;
    int tw_maxlen = 6;
    auto* tw_act = twist_cmd->add_subcommand("act", "matrix and charpoly of a twist word");
    tw_act->add_option("--genus", f.genus, "genus")->required();
    tw_act->add_option("--word", tw_word, "word, e.g. a1.a1.b1.c1.A3")->required();
    add_output_flags(tw_act, f);
    auto* tw_search = twist_cmd->add_subcommand("search", "words with a target charpoly");
    tw_search->add_option("--genus", f.genus, "genus")->required();
    tw_search->add_option("--target", tw_target, "target polynomial")->required();
    tw_search->add_option("--max-len", tw_maxlen, "maximum word length");
    add_output_flags(tw_search, f);

    // ---- report ----
    std::string report_in;
    auto* report_cmd = app.add_subcommand("report", "re-render a stored JSON report");
    report_cmd->add_option("--in", report_in, "input JSON file")->required();
    add_output_flags(report_cmd, f);

    CLI11_PARSE(app, argc, argv);

    try {
        const int threads = thread_count(f.shards_flag);

        if (*enumerate_cmd) {
            RootBound bound = resolve_bound(f.genus, f.bound_text, f.bound_value);
            CandidateSet set =
                f.checkpoint.empty()
                    ? enumerate_candidates(f.genus, bound, threads)
                    : enumerate_with_checkpoint(f.genus, bound, threads, f.checkpoint);
            if (f.format == "json") emit(candidate_set_json(set).dump(2), f.out_path);
            else if (f.format == "csv") emit(candidate_csv(set), f.out_path);
            else emit(candidate_table(set), f.out_path);
            return set.candidates.empty() ? 2 : 0;
        }

        if (*filter_cmd) {
            ReciprocalPolynomial poly = parse_reciprocal(filter_poly);
            const int genus = poly.genus();
            std::vector<Stratum> strata = filter_stratum.empty()
                                              ? enumerate_strata(genus)
                                              : std::vector<Stratum>{parse_stratum(filter_stratum)};
            std::ostringstream text;
            Json out_json;
            out_json["schema"] = kSchema;
            Json verdicts = Json::array();
            bool any = false;
            for (int sign : {+1, -1}) {
                if (filter_sign == "+" && sign < 0) continue;
                if (filter_sign == "-" && sign > 0) continue;
                ReciprocalPolynomial charpoly = sign > 0 ? poly : poly.negate_variable();
                LefschetzProfile profile = lefschetz_sequence(charpoly, f.max_iter);
                for (const Stratum& st : strata) {
                    auto wits = stratum_feasible(charpoly, st, f.max_iter);
                    Json v;
                    v["stratum"] = st.degrees;
                    v["sign"] = sign;
                    v["feasible"] = !wits.empty();
                    text << st.str() << " sign " << (sign > 0 ? "+" : "-") << ": "
                         << (wits.empty() ? "eliminated" : "feasible") << "\n";
                    if (!wits.empty()) {
                        any = true;
                        v["witness"] = witness_json(wits.front());
                        text << lefschetz_table(profile, wits.front());
                    }
                    verdicts.push_back(v);
                }
            }
            out_json["poly"] = poly_json(poly);
            out_json["horizon"] = f.max_iter;
            out_json["verdicts"] = verdicts;
            emit(f.format == "json" ? out_json.dump(2) : text.str(), f.out_path);
            return any ? 0 : 2;
        }

        if (*pipeline_cmd) {
            if (f.genus >= 6 && !f.extended)
                throw std::runtime_error("genus 6..8 runs need --extended and a --checkpoint");
            if (f.genus >= 6 && f.checkpoint.empty())
                throw std::runtime_error("genus 6..8 runs require a --checkpoint directory");
            RootBound bound = resolve_bound(f.genus, f.bound_text, f.bound_value);
            std::optional<std::filesystem::path> ckpt;
            if (!f.checkpoint.empty()) ckpt = f.checkpoint;
            PipelineReport rep = run_pipeline(f.genus, bound, f.max_iter, threads, ckpt);
            if (f.format == "json") emit(pipeline_json(rep).dump(2), f.out_path);
            else emit(pipeline_table(rep), f.out_path);
            return (rep.minimum_survivor || rep.genus == 2) ? 0 : 2;
        }

        if (*rz_verify) {
            RauzyLoop loop{parse_permutation(rz_perm), parse_path(rz_path)};
            auto cert = veech_certificate(loop);
            if (f.format == "json") emit(certificate_json(cert).dump(2), f.out_path);
            else {
                std::ostringstream text;
                text << "dilatation " << std::setprecision(10)
                     << cert.dilatation.to_double_approx() << ", minpoly "
                     << cert.field->minpoly().str() << "\n"
                     << "stratum " << cert.stratum.str() << " genus " << cert.stratum.genus
                     << " marked points " << cert.marked_points << "\n";
                emit(text.str(), f.out_path);
            }
            return 0;
        }

        if (*rz_search) {
            auto loops = search_loops(parse_permutation(rz_perm), parse_polynomial(rz_target),
                                      rz_maxlen);
            Json arr = Json::array();
            std::ostringstream text;
            for (const auto& l : loops) {
                arr.push_back(l.path);
                for (size_t i = 0; i < l.path.size(); ++i)
                    text << (i ? "," : "") << l.path[i];
                text << "\n";
            }
            emit(f.format == "json" ? arr.dump(2) : text.str(), f.out_path);
            return loops.empty() ? 2 : 0;
        }

        if (*tw_act) {
            TwistWord w = parse_word(f.genus, tw_word);
            TwistMatrix m = word_action(w);
            IntPoly chi = charpoly_int(m);
            auto cb = casson_bleiler(chi);
            Json j;
            j["schema"] = kSchema;
            j["word"] = word_str(w);
            j["matrix"] = m;
            j["charpoly"] = intpoly_json(chi);
            j["casson_bleiler"] =
                cb.verdict == CassonBleilerVerdict::PaCandidate ? "PA-CANDIDATE" : "INCONCLUSIVE";
            if (!cb.failed_clause.empty()) j["failed_clause"] = cb.failed_clause;
            if (f.format == "json") emit(j.dump(2), f.out_path);
            else {
                std::ostringstream text;
                for (const auto& row : m) {
                    for (size_t i = 0; i < row.size(); ++i) text << (i ? " " : "") << row[i];
                    text << "\n";
                }
                text << "charpoly " << chi.str() << "\n"
                     << (cb.verdict == CassonBleilerVerdict::PaCandidate ? "PA-CANDIDATE"
                                                                         : "INCONCLUSIVE");
                if (!cb.failed_clause.empty()) text << " (" << cb.failed_clause << ")";
                text << "\n";
                emit(text.str(), f.out_path);
            }
            return 0;
        }

        if (*tw_search) {
            auto words = search_words(f.genus, parse_polynomial(tw_target), tw_maxlen);
            std::ostringstream text;
            Json arr = Json::array();
            for (const auto& w : words) {
                arr.push_back(word_str(w));
                text << word_str(w) << "\n";
            }
            emit(f.format == "json" ? arr.dump(2) : text.str(), f.out_path);
            return words.empty() ? 2 : 0;
        }

        if (*report_cmd) {
            std::ifstream in(report_in);
            if (!in) throw std::runtime_error("cannot open " + report_in);
            Json j = Json::parse(in);
            emit(j.dump(2), f.out_path);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
