// SPDX-License-Identifier: Apache-2.0
//
// gqf: probability that a sum of indefinite quadratic forms in complex
// Gaussian vectors is negative.
//
//   gqf prob <spec.json>     closed form / CF inversion / Monte Carlo
//   gqf params <spec.json>   reduced parameters of both parameterizations
//   gqf hist <spec.json>     Monte Carlo histogram of D as CSV (+ plot script)
//   gqf selftest             embedded sanity suite
//
// Exit codes: 0 success, 1 selftest failure, 2 invalid input, 3 numerical
// failure, 4 I/O failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gqf/gqf.hpp"

namespace {

constexpr const char* kLegacyTag = "LEGACY (known-erroneous for complex C)";
constexpr const char* kTrivialMsg = "Q not indefinite: Pr{D<0} is trivially 0 or 1";

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(10);
    ss << v;
    return ss.str();
}

// Shared preamble: load the file and short-circuit semidefinite kernels with
// the trivial answer.
gqf::RunConfig load_or_exit_trivial(const std::string& path, int& code) {
    gqf::RunConfig rc = gqf::load_spec_file(path);
    if (const auto triv = gqf::trivial_probability(rc.spec)) {
        std::cerr << kTrivialMsg << " (here: Pr{D<0} = " << fmt(*triv) << ")\n";
        code = 2;
    }
    return rc;
}

struct ProbArgs {
    std::string file;
    std::string variant = "corrected";
    std::string method = "closed";
    bool csv = false;
};

int run_prob(const ProbArgs& args) {
    int code = 0;
    const gqf::RunConfig rc = load_or_exit_trivial(args.file, code);
    if (code) return code;

    const gqf::SpecDigest digest = gqf::analyze(rc.spec);
    const gqf::EigenParams ep = gqf::eigen_params(digest);

    const bool want_corr = args.variant != "as-published";
    const bool want_ap = args.variant != "corrected";
    const bool do_closed = args.method == "closed" || args.method == "all";
    const bool do_invert = args.method == "invert" || args.method == "all";
    const bool do_mc = args.method == "mc" || args.method == "all";

    struct Row {
        std::string method, variant, p, unc, note;
    };
    std::vector<Row> rows;
    bool ap_failed = false;
    bool invert_stalled = false;

    if (do_closed) {
        if (want_corr) {
            const std::size_t L = rc.spec.branches();
            const double r = -ep.delta1 / ep.delta2;
            const double p = L == 1 ? gqf::negativity_single(ep.delta1, ep.delta2,
                                                             ep.a, ep.b)
                                    : gqf::negativity_series(L, r, ep.a, ep.b);
            rows.push_back({"closed", "corrected", fmt(p), "", ""});
        }
        if (want_ap) {
            try {
                const double p =
                    gqf::probability_legacy(rc.spec, gqf::Variant::AsPublished);
                rows.push_back({"closed", "as-published", fmt(p), "", kLegacyTag});
            } catch (const gqf::NegativeRadicandError& e) {
                ap_failed = true;
                rows.push_back({"closed", "as-published", "n/a", "",
                                std::string(kLegacyTag) + ": " + e.what()});
            }
        }
    }
    if (do_invert) {
        const gqf::InversionResult r = gqf::invert_cf_report(digest, rc.quad_tol);
        Row row{"invert", "-", fmt(r.probability), fmt(r.error_estimate), ""};
        if (!r.converged) {
            row.note = "did not reach requested tolerance";
            invert_stalled = true;
        }
        rows.push_back(row);
    }
    if (do_mc) {
        const gqf::McEstimate est = gqf::estimate_probability(rc.spec, rc.mc);
        rows.push_back({"mc", "-", fmt(est.p_hat), fmt(est.std_err),
                        "n=" + std::to_string(est.samples)});
    }

    if (args.csv) {
        std::cout << "method,variant,p,uncertainty,note\n";
        for (const Row& r : rows) {
            // Values never contain commas; quote the free-text note.
            std::cout << r.method << ',' << r.variant << ',' << r.p << ',' << r.unc
                      << ",\"" << r.note << "\"\n";
        }
    } else {
        std::cout << "L = " << rc.spec.branches() << ", delta1 = " << fmt(ep.delta1)
                  << ", delta2 = " << fmt(ep.delta2) << ", a = " << fmt(ep.a)
                  << ", b = " << fmt(ep.b) << "\n";
        for (const Row& r : rows) {
            std::string line = r.method + " (" + r.variant + "): Pr{D<0} = " + r.p;
            if (!r.unc.empty()) line += "  +/- " + r.unc;
            if (r.variant == "as-published") {
                // The legacy tag leads the line so it cannot be missed.
                std::string rest = r.note.substr(std::string(kLegacyTag).size());
                line = std::string(kLegacyTag) + "\n  " + line + rest;
            } else if (!r.note.empty()) {
                line += "  (" + r.note + ")";
            }
            std::cout << line << "\n";
        }
    }

    if (ap_failed && args.variant == "as-published" && args.method == "closed")
        return 3; // the only requested number could not be produced
    if (invert_stalled) return 3;
    return 0;
}

struct ParamsArgs {
    std::string file;
    std::string variant = "both";
};

int run_params(const ParamsArgs& args) {
    int code = 0;
    const gqf::RunConfig rc = load_or_exit_trivial(args.file, code);
    if (code) return code;

    const gqf::EigenParams ep = gqf::eigen_params(rc.spec);
    std::cout << "eigen: delta1 = " << fmt(ep.delta1) << ", delta2 = " << fmt(ep.delta2)
              << ", a = " << fmt(ep.a) << ", b = " << fmt(ep.b) << "\n";

    std::vector<gqf::Variant> variants;
    if (args.variant != "as-published") variants.push_back(gqf::Variant::Corrected);
    if (args.variant != "corrected") variants.push_back(gqf::Variant::AsPublished);

    bool sole_failure = variants.size() == 1;
    for (const gqf::Variant v : variants) {
        const char* name = gqf::variant_name(v);
        try {
            const gqf::LegacyParams lp = gqf::legacy_params(rc.spec, v);
            std::cout << "variant " << name;
            if (v == gqf::Variant::AsPublished) std::cout << "  [" << kLegacyTag << "]";
            std::cout << ":\n";
            std::cout << "  w  = " << fmt(lp.w) << "\n";
            std::cout << "  v1 = " << fmt(lp.v1) << "\n";
            std::cout << "  v2 = " << fmt(lp.v2) << "\n";
            for (std::size_t k = 0; k < lp.alpha1.size(); ++k) {
                std::cout << "  alpha1[" << k << "] = " << fmt(lp.alpha1[k]) << "\n";
                std::cout << "  alpha2[" << k << "] = " << fmt(lp.alpha2[k]) << "\n";
            }
            std::cout << "  a  = " << fmt(lp.a) << "\n";
            std::cout << "  b  = " << fmt(lp.b) << "\n";
        } catch (const gqf::NegativeRadicandError& e) {
            std::cout << "variant " << name << "  [" << kLegacyTag
                      << "]: failed: " << e.what() << "\n";
            if (sole_failure) return 3;
        }
    }
    return 0;
}

struct HistArgs {
    std::string file;
    std::string out = "histogram.csv";
    std::string plot_script;
    std::size_t bins = 60;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    std::vector<double> range; // empty or {lo, hi}
};

int run_hist(const HistArgs& args) {
    int code = 0;
    gqf::RunConfig rc = load_or_exit_trivial(args.file, code);
    if (code) return code;

    if (args.samples) rc.mc.samples = *args.samples;
    if (args.seed) rc.mc.seed = *args.seed;

    double lo, hi;
    if (args.range.size() == 2) {
        lo = args.range[0];
        hi = args.range[1];
    } else {
        std::tie(lo, hi) = gqf::default_histogram_range(rc.spec, rc.mc.seed);
    }

    const gqf::Histogram h =
        gqf::histogram_decision(rc.spec, rc.mc, args.bins, lo, hi);

    {
        std::ofstream out(args.out, std::ios::binary);
        if (!out) throw gqf::IoError("cannot open '" + args.out + "' for writing");
        h.write_csv(out);
        if (!out) throw gqf::IoError("write failure on '" + args.out + "'");
    }
    if (!args.plot_script.empty()) {
        std::ofstream ps(args.plot_script, std::ios::binary);
        if (!ps)
            throw gqf::IoError("cannot open '" + args.plot_script + "' for writing");
        ps << "# render the histogram written by 'gqf hist'\n"
           << "# usage: gnuplot -persist " << args.plot_script << "\n"
           << "set datafile separator ','\n"
           << "set xlabel 'D'\n"
           << "set ylabel 'count'\n"
           << "set style fill solid 0.55\n"
           << "plot '" << args.out
           << "' skip 1 using (($1+$2)/2):3:($2-$1) with boxes notitle\n";
        if (!ps)
            throw gqf::IoError("write failure on '" + args.plot_script + "'");
    }

    std::cout << "wrote " << args.out << ": " << args.bins << " bins over ["
              << fmt(lo) << ", " << fmt(hi) << "), " << h.total
              << " samples (below range: " << h.below
              << ", above: " << h.above << ")\n";
    if (!args.plot_script.empty())
        std::cout << "wrote " << args.plot_script << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pr{D<0} for sums of indefinite quadratic forms in complex "
                 "Gaussian vectors"};
    app.require_subcommand(1);

    ProbArgs prob;
    CLI::App* prob_cmd =
        app.add_subcommand("prob", "compute Pr{D<0} from a problem file");
    prob_cmd->add_option("file", prob.file, "problem file (JSON)")->required();
    prob_cmd->add_option("--variant", prob.variant, "parameterization variant")
        ->check(CLI::IsMember({"corrected", "as-published", "both"}))
        ->capture_default_str();
    prob_cmd->add_option("--method", prob.method, "computation route")
        ->check(CLI::IsMember({"closed", "invert", "mc", "all"}))
        ->capture_default_str();
    prob_cmd->add_flag("--csv", prob.csv, "machine-readable CSV output");

    ParamsArgs params;
    CLI::App* params_cmd =
        app.add_subcommand("params", "print reduced parameters of a problem");
    params_cmd->add_option("file", params.file, "problem file (JSON)")->required();
    params_cmd->add_option("--variant", params.variant, "parameterization variant")
        ->check(CLI::IsMember({"corrected", "as-published", "both"}))
        ->capture_default_str();

    HistArgs hist;
    CLI::App* hist_cmd =
        app.add_subcommand("hist", "Monte Carlo histogram of D, written as CSV");
    hist_cmd->add_option("file", hist.file, "problem file (JSON)")->required();
    hist_cmd->add_option("--out", hist.out, "output CSV path")->capture_default_str();
    hist_cmd->add_option("--bins", hist.bins, "number of bins")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    hist_cmd->add_option("--samples", hist.samples, "sample count override");
    hist_cmd->add_option("--seed", hist.seed, "seed override");
    hist_cmd->add_option("--range", hist.range, "histogram range: lo hi")
        ->expected(2);
    hist_cmd->add_option("--plot-script", hist.plot_script,
                         "also write a gnuplot script rendering the CSV");

    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "run the embedded sanity suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e); // prints help or the usage error
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*prob_cmd) return run_prob(prob);
        if (*params_cmd) return run_params(params);
        if (*hist_cmd) return run_hist(hist);
        if (*selftest_cmd) return gqf::run_selftest(std::cout) ? 0 : 1;
    } catch (const gqf::SpecFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gqf::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const gqf::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gqf::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
