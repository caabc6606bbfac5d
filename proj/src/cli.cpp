#include "qrcensus/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrcensus/census.hpp"
#include "qrcensus/laws.hpp"
#include "qrcensus/redundancy.hpp"
#include "qrcensus/report.hpp"
#include "qrcensus/sweep.hpp"

namespace qrc::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Standard output unless --output names a file.
class Sink {
public:
    Sink(std::ostream& fallback, const std::string& path) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) {
                throw IoError("cannot open output file " + path);
            }
            stream_ = &file_;
        }
    }

    std::ostream& operator*() { return *stream_; }

    void line(const std::string& text) {
        *stream_ << text << '\n';
        stream_->flush();
        check();
    }

    void write(const std::string& text) {
        *stream_ << text;
        stream_->flush();
        check();
    }

private:
    void check() {
        if (!*stream_) {
            throw IoError("write to output failed");
        }
    }

    std::ofstream file_;
    std::ostream* stream_;
};

OddModulus odd_modulus_arg(std::uint64_t n) {
    if (!is_valid_odd_modulus(n)) {
        throw UsageError("N must be odd with 3 <= N < 2^62, got " + std::to_string(n));
    }
    return OddModulus(n);
}

std::string rational_text(const Rational& r) {
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double rational_value(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Json census_json(const ResidueCensus& c, bool details) {
    Json j = Json::parse(export_census({c}, CensusFormat::json_lines));
    if (details) {
        j["residues"] = c.residues;
        j["zero_square_roots"] = c.zero_square_roots;
        Json d = Json::array();
        for (const auto& r : c.details) {
            d.push_back({{"y", r.y}, {"smallest_root", r.smallest_root}});
        }
        j["details"] = d;
    }
    return j;
}

Json classification_json(const Classification& c) {
    Json j;
    j["n"] = c.n;
    j["mode"] = std::string(to_string(c.mode));
    j["r_b"] = c.r_b;
    j["predicted_prime"] = c.predicted_prime;
    j["oracle_prime"] = c.oracle_prime;
    j["agree"] = c.agree;
    return j;
}

std::string classification_csv_header() {
    return "n,mode,r_b,predicted_prime,oracle_prime,agree";
}

std::string classification_csv(const Classification& c) {
    std::ostringstream s;
    s << c.n << ',' << to_string(c.mode) << ',' << c.r_b << ',' << c.predicted_prime << ',' << c.oracle_prime << ','
      << c.agree;
    return s.str();
}

Json law_json(const LawReport& r) {
    Json j;
    j["law"] = std::string(law_code(r.law));
    j["name"] = std::string(law_name(r.law));
    j["params"] = r.params;
    j["n"] = r.n;
    j["relation"] = std::string(to_string(r.relation));
    j["lhs"] = rational_text(r.lhs);
    j["rhs"] = rational_text(r.rhs);
    if (r.holds) j["holds"] = *r.holds;
    if (r.rel_error) {
        j["rel_error"] = rational_text(*r.rel_error);
        j["rel_error_value"] = rational_value(*r.rel_error);
    }
    if (r.printed_orientation_holds) j["printed_orientation_holds"] = *r.printed_orientation_holds;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::string law_csv_header() {
    return "law,params,n,relation,lhs,rhs,holds,rel_error";
}

std::string law_csv(const LawReport& r) {
    std::string params;
    for (std::size_t i = 0; i < r.params.size(); ++i) {
        if (i) params += ' ';
        params += std::to_string(r.params[i]);
    }
    std::ostringstream s;
    s << law_code(r.law) << ',' << params << ',' << r.n << ',' << to_string(r.relation) << ','
      << rational_text(r.lhs) << ',' << rational_text(r.rhs) << ',' << (r.holds ? (*r.holds ? "1" : "0") : "") << ','
      << (r.rel_error ? rational_text(*r.rel_error) : "");
    return s.str();
}

Json pair_json(const CollisionPair& p) {
    const Witness w = witness(p);
    Json j;
    j["a"] = p.a;
    j["b"] = p.b;
    j["shared_square"] = p.shared_square;
    j["witness_low"] = w.factor_low;
    j["witness_high"] = w.factor_high;
    j["product"] = w.product;
    j["divides"] = w.divides;
    return j;
}

std::string pair_text(const CollisionPair& p) {
    const Witness w = witness(p);
    std::ostringstream s;
    s << p.a << "^2 = " << p.b << "^2 (mod " << p.n << ") since (" << p.a << "-" << p.b << ")(" << p.a << "+" << p.b
      << ") = " << w.factor_low << "*" << w.factor_high << " = " << w.product << " and " << w.statement(p.n)
      << (w.divides ? "" : " FAILS");
    return s.str();
}

void add_common(CLI::App* sub, std::string& format, std::string& output, const std::string& default_format,
                std::vector<std::string> formats) {
    sub->add_option("--format", format, "Output format (default " + default_format + ")")
        ->check(CLI::IsMember(std::move(formats)));
    sub->add_option("--output", output, "Write data to this file instead of standard output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::stop_token stop) {
    CLI::App app{"Small quadratic residue census, primality hypothesis audit and identity checks", "qrcensus"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::string format;
    std::string output;

    // census
    std::uint64_t census_n = 0;
    bool census_details = false;
    auto* census_cmd = app.add_subcommand("census", "Residue census of one odd modulus");
    census_cmd->add_option("N", census_n, "Odd modulus")->required();
    census_cmd->add_flag("--details", census_details, "Include the residue set and smallest roots");
    add_common(census_cmd, format, output, "json", {"json", "csv"});

    // classify
    std::uint64_t classify_n = 0;
    std::string mode_text = "corrected";
    auto* classify_cmd = app.add_subcommand("classify", "Compare the R_b threshold verdict with the primality oracle");
    classify_cmd->add_option("N", classify_n, "Odd modulus")->required();
    classify_cmd->add_option("--mode", mode_text, "Threshold: strict, floor or corrected")
        ->check(CLI::IsMember({"strict", "floor", "corrected"}));
    add_common(classify_cmd, format, output, "json", {"json", "csv"});

    // sweep
    std::uint64_t sweep_from = 0, sweep_to = 0;
    unsigned jobs = 1;
    std::string checkpoint;
    bool resume = false;
    std::uint64_t checkpoint_every = 4096;
    std::uint64_t stop_after = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Classify every odd modulus in a range and report disagreements");
    sweep_cmd->add_option("--from", sweep_from, "First odd modulus")->required();
    sweep_cmd->add_option("--to", sweep_to, "Last odd modulus")->required();
    sweep_cmd->add_option("--mode", mode_text, "Threshold: strict, floor or corrected")
        ->check(CLI::IsMember({"strict", "floor", "corrected"}));
    sweep_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    sweep_cmd->add_option("--checkpoint", checkpoint, "Checkpoint file, rewritten atomically");
    sweep_cmd->add_flag("--resume", resume, "Continue from the checkpoint")->needs("--checkpoint");
    sweep_cmd->add_option("--checkpoint-every", checkpoint_every, "Moduli between checkpoint writes")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--stop-after", stop_after, "Stop after scanning this many moduli (testing aid)")
        ->group("");
    add_common(sweep_cmd, format, output, "json", {"json", "csv"});

    // laws
    std::string law_text = "all";
    std::uint64_t laws_from = 3, laws_to = 10001;
    std::vector<std::uint64_t> law_params;
    auto* laws_cmd = app.add_subcommand("laws", "Evaluate the identity and inequality catalogue");
    laws_cmd->add_option("--law", law_text, "Law code (L1..L10, A1..A3), full name, or 'all'");
    laws_cmd->add_option("--from", laws_from, "Smallest modulus to enumerate");
    laws_cmd->add_option("--to", laws_to, "Largest modulus to enumerate");
    laws_cmd->add_option("--params", law_params, "Check a single parameter tuple instead of a range")
        ->delimiter(',');
    add_common(laws_cmd, format, output, "json", {"json", "csv"});

    // table
    std::uint64_t table_n = 0;
    std::string order_text = "natural";
    std::string highlight_text = "residues";
    auto* table_cmd = app.add_subcommand("table", "Render the multiplication table");
    table_cmd->add_option("N", table_n, "Odd modulus")->required();
    table_cmd->add_option("--order", order_text, "natural or residues-first")
        ->check(CLI::IsMember({"natural", "residues-first"}));
    table_cmd->add_option("--highlight", highlight_text, "residues, small or none")
        ->check(CLI::IsMember({"residues", "small", "none"}));
    add_common(table_cmd, format, output, "plain", {"ansi", "plain", "csv", "html"});

    // pairs
    std::uint64_t pairs_n = 0;
    bool classes = false;
    auto* pairs_cmd = app.add_subcommand("pairs", "Square collisions, zero-square roots and witnesses");
    pairs_cmd->add_option("N", pairs_n, "Odd modulus")->required();
    pairs_cmd->add_flag("--classes", classes, "Also list the square classes");
    add_common(pairs_cmd, format, output, "json", {"json", "text"});

    // annex
    int which = 2;
    auto* annex_cmd = app.add_subcommand("annex", "Regenerate the collision listing (1) or the residue listing (2)");
    annex_cmd->add_option("--which", which, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    add_common(annex_cmd, format, output, "text", {"text", "json"});

    std::vector<const char*> argv{"qrcensus"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    const ThresholdMode mode = *parse_threshold_mode(mode_text);
    if (format.empty()) {
        format = table_cmd->parsed() ? "plain" : annex_cmd->parsed() ? "text" : "json";
    }

    try {
        if (census_cmd->parsed()) {
            const OddModulus n = odd_modulus_arg(census_n);
            if (n.value() >= kCensusCeiling) throw UsageError("census supports N < 2^32");
            const ResidueCensus c = census(n, {.want_details = census_details});
            Sink sink(out, output);
            if (format == "csv") {
                sink.write(export_census({c}, CensusFormat::csv));
            } else {
                sink.line(census_json(c, census_details).dump());
            }
            return kOk;
        }

        if (classify_cmd->parsed()) {
            const OddModulus n = odd_modulus_arg(classify_n);
            if (n.value() >= kCensusCeiling) throw UsageError("classify supports N < 2^32");
            const Classification c = classify(n, mode);
            Sink sink(out, output);
            if (format == "csv") {
                sink.line(classification_csv_header());
                sink.line(classification_csv(c));
            } else {
                sink.line(classification_json(c).dump());
            }
            return c.agree ? kOk : kCounterexample;
        }

        if (sweep_cmd->parsed()) {
            if (sweep_from < 3 || sweep_from % 2 == 0 || sweep_to % 2 == 0 || sweep_from > sweep_to) {
                throw UsageError("--from and --to must be odd with 3 <= from <= to");
            }
            if (sweep_to >= kCensusCeiling) throw UsageError("sweep supports --to < 2^32");
            Sink sink(out, output);
            const bool csv = format == "csv";
            if (csv) sink.line(classification_csv_header());

            SweepOptions opt;
            opt.lo = sweep_from;
            opt.hi = sweep_to;
            opt.mode = mode;
            opt.workers = jobs;
            if (!checkpoint.empty()) opt.checkpoint = checkpoint;
            opt.resume = resume;
            opt.checkpoint_interval = checkpoint_every;
            opt.stop = stop;
            if (stop_after > 0) opt.stop_after = stop_after;
            opt.on_counterexample = [&](const Classification& c) {
                sink.line(csv ? classification_csv(c) : classification_json(c).dump());
            };

            const SweepOutcome result = sweep(opt);
            const double seconds = std::chrono::duration<double>(result.elapsed).count();
            if (!csv) {
                Json summary;
                summary["summary"] = true;
                summary["lo"] = result.lo;
                summary["hi"] = result.hi;
                summary["mode"] = std::string(to_string(result.mode));
                summary["scanned"] = result.scanned;
                summary["completed"] = result.completed;
                summary["next_unscanned"] = result.next_unscanned;
                summary["counterexamples"] = result.counterexample_moduli();
                sink.line(summary.dump());
            }
            err << "sweep " << result.lo << ".." << result.hi << " mode=" << to_string(result.mode)
                << " scanned=" << result.scanned << (result.completed ? "" : " (interrupted)")
                << " counterexamples=" << result.counterexamples.size() << " elapsed=" << seconds << "s\n";
            return result.counterexamples.empty() ? kOk : kCounterexample;
        }

        if (laws_cmd->parsed()) {
            std::vector<LawId> ids;
            if (law_text == "all" || law_text == "ALL") {
                ids.assign(std::begin(kAllLaws), std::end(kAllLaws));
            } else if (auto id = parse_law(law_text)) {
                ids.push_back(*id);
            } else {
                throw UsageError("unknown law '" + law_text + "'");
            }
            if (!law_params.empty() && ids.size() != 1) {
                throw UsageError("--params needs a single --law");
            }
            Sink sink(out, output);
            const bool csv = format == "csv";
            if (csv) sink.line(law_csv_header());
            std::size_t checked = 0, failed = 0;
            const auto t0 = std::chrono::steady_clock::now();
            for (LawId id : ids) {
                std::vector<std::vector<std::uint64_t>> tuples;
                if (!law_params.empty()) {
                    tuples.push_back(law_params);
                } else {
                    tuples = law_params_in_range(id, laws_from, laws_to);
                }
                for (const auto& params : tuples) {
                    LawReport r;
                    try {
                        r = check_law(id, params);
                    } catch (const LawUsageError& e) {
                        throw UsageError(e.what());
                    }
                    ++checked;
                    if (r.holds && !*r.holds) ++failed;
                    sink.line(csv ? law_csv(r) : law_json(r).dump());
                }
            }
            const double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            err << "laws checked=" << checked << " failed=" << failed << " elapsed=" << seconds << "s\n";
            return failed == 0 ? kOk : kLawViolation;
        }

        if (table_cmd->parsed()) {
            TableSpec spec{odd_modulus_arg(table_n)};
            if (table_n > 100000) throw UsageError("table supports N <= 100000");
            spec.order = order_text == "natural" ? TableOrder::natural : TableOrder::residues_first;
            spec.highlight = highlight_text == "residues" ? HighlightKind::residues
                             : highlight_text == "small" ? HighlightKind::small_values
                                                         : HighlightKind::none;
            spec.format = format == "ansi"  ? TableFormat::ansi
                          : format == "csv" ? TableFormat::csv
                          : format == "html" ? TableFormat::html
                                             : TableFormat::plain;
            if (spec.order == TableOrder::residues_first && !is_prime(table_n)) {
                throw UsageError("residues-first order needs a prime N");
            }
            Sink sink(out, output);
            sink.write(render_mult_table(spec));
            return kOk;
        }

        if (pairs_cmd->parsed()) {
            const OddModulus n = odd_modulus_arg(pairs_n);
            if (n.value() >= kCensusCeiling) throw UsageError("pairs supports N < 2^32");
            const auto pairs = collision_pairs(n);
            const auto zeros = zero_square_roots(n);
            Sink sink(out, output);
            if (format == "text") {
                for (const auto& p : pairs) sink.line(pair_text(p));
                std::string z = "zero squares:";
                for (std::size_t i = 0; i < zeros.size(); ++i) z += (i ? ", " : " ") + std::to_string(zeros[i]);
                sink.line(z);
                if (classes) {
                    for (const auto& c : square_classes(n)) {
                        std::string line = "class " + std::to_string(c.square) + ":";
                        for (auto r : c.roots) line += " " + std::to_string(r);
                        sink.line(line);
                    }
                }
            } else {
                Json j;
                j["n"] = n.value();
                j["pairs"] = Json::array();
                for (const auto& p : pairs) j["pairs"].push_back(pair_json(p));
                j["zero_square_roots"] = zeros;
                if (classes) {
                    j["classes"] = Json::array();
                    for (const auto& c : square_classes(n)) {
                        j["classes"].push_back({{"square", c.square}, {"roots", c.roots}});
                    }
                }
                sink.line(j.dump());
            }
            return kOk;
        }

        if (annex_cmd->parsed()) {
            Sink sink(out, output);
            if (which == 1) {
                if (format == "json") {
                    Json j;
                    j["n"] = 175;
                    j["pairs"] = Json::array();
                    for (const auto& p : collision_pairs(OddModulus(175))) j["pairs"].push_back({p.a, p.b});
                    std::vector<std::uint64_t> small_zeros;
                    for (auto x : zero_square_roots(OddModulus(175))) {
                        if (x <= 87) small_zeros.push_back(x);
                    }
                    j["zero_square_roots"] = small_zeros;
                    sink.line(j.dump());
                } else {
                    sink.write(render_annex1(OddModulus(175)));
                }
            } else if (format == "json") {
                for (std::uint64_t n = 3; n <= 51; n += 2) {
                    const ResidueCensus c = census(OddModulus(n), {.want_details = true});
                    Json j;
                    j["n"] = n;
                    j["residues"] = Json::array();
                    for (const auto& d : c.details) j["residues"].push_back({{"y", d.y}, {"smallest_root", d.smallest_root}});
                    j["r_b"] = c.r_b;
                    sink.line(j.dump());
                }
            } else {
                sink.write(render_annex2(3, 51));
            }
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CheckpointMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CheckpointError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace qrc::cli
