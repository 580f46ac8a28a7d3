// Command-line front end: deterministic experiment execution with CSV/JSON
// reports.  A JSON config file supplies defaults; flags win.

#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "levywn/io.hpp"
#include "levywn/poisson_eq.hpp"
#include "levywn/prm.hpp"
#include "levywn/verify.hpp"

using namespace levywn;
using nlohmann::json;

namespace {

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

// Defaults loaded from --config before CLI11 parses the flags.
json load_config(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            return json::parse(read_text_file(argv[i + 1]));
        }
    }
    return json::object();
}

template <typename T>
T cfg(const json& config, const std::string& key, T fallback) {
    return config.value(key, fallback);
}

LevyMeasureModel load_measure(const json& config, const std::string& measure_path) {
    if (!measure_path.empty()) return measure_from_json_file(measure_path);
    if (config.contains("measure")) {
        const json& m = config.at("measure");
        if (m.is_string()) return measure_from_json_file(m.get<std::string>());
        return measure_from_json(m.dump());
    }
    throw std::invalid_argument("no measure given: pass --measure <json file> or a config entry");
}

Domain make_domain(const std::string& name, std::size_t dim, int series_order) {
    if (name == "interval") return Domain::unit_interval();
    if (name == "disk") return Domain::unit_disk();
    if (name == "ball") return Domain::unit_ball();
    if (name == "hypercube") return Domain::unit_hypercube(dim, series_order);
    throw std::invalid_argument("unknown domain '" + name + "'");
}

std::string point_json(std::span<const double> x) {
    std::string s = "[";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0) s += ',';
        s += format_double(x[i]);
    }
    return s + "]";
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
    } else {
        write_text_file(path, content);
    }
}

int run_basis(const json& config, const std::string& measure_path, int M,
              const std::string& out) {
    const LevyMeasureModel model = load_measure(config, measure_path);
    const OrthonormalJumpBasis basis = build_jump_basis(model, static_cast<std::size_t>(M));
    if (basis.capped) {
        std::cerr << "note: basis capped at " << basis.M << " of " << basis.requested
                  << " polynomials (Gram rank)\n";
    }
    emit(out, jump_basis_to_csv(basis, model));
    return 0;
}

int run_sample(const json& config, const std::string& measure_path,
               const std::string& box_spec, const std::string& box_lo_spec, double eps,
               std::uint64_t seed, std::size_t n, const std::string& out) {
    const LevyMeasureModel model = load_measure(config, measure_path);
    Box box = Box::from_lengths(parse_list(box_spec));
    if (!box_lo_spec.empty()) {
        box.lo = parse_list(box_lo_spec);
        if (box.lo.size() != box.hi.size()) {
            throw std::invalid_argument("--box-lo must match --box in length");
        }
    }
    const PrmSampler sampler(model, box, eps);

    std::ostringstream csv;
    csv << "sample";
    for (std::size_t j = 1; j <= box.dim(); ++j) csv << ",x" << j;
    csv << ",z\n";
    const RandomSource base(seed);
    MomentAccumulator counts;
    for (std::size_t i = 0; i < n; ++i) {
        RandomSource stream = base.split(i);
        const PointConfiguration configuration = sampler.sample(stream);
        counts.add(static_cast<double>(configuration.points.size()));
        for (const auto& p : configuration.points) {
            csv << i;
            for (std::size_t j = 0; j < box.dim(); ++j) csv << ',' << format_double(p.x[j]);
            csv << ',' << format_double(p.z) << '\n';
        }
    }
    emit(out, csv.str());

    json summary;
    summary["n_configs"] = n;
    summary["mass"] = sampler.mass();
    summary["mean_count"] = counts.mean();
    summary["mean_count_se"] = counts.mean_se();
    summary["truncation_var"] = sampler.truncation_variance();
    summary["seed"] = seed;
    summary["eps"] = eps;
    std::cout << summary.dump() << "\n";
    return 0;
}

int run_solve(const json& config, const std::string& measure_path, const std::string& domain_name,
              std::size_t dim, int series_order, const std::string& x_spec, std::uint64_t K,
              std::size_t mc_samples, std::uint64_t seed, double eps, const std::string& out,
              const std::string& summary_path) {
    const LevyMeasureModel model = load_measure(config, measure_path);
    const Domain domain = make_domain(domain_name, dim, series_order);
    const std::vector<double> x = parse_list(x_spec);
    if (x.size() != domain.dim()) {
        throw std::invalid_argument("--x has wrong dimension for the domain");
    }

    const SolutionField field = solve_chaos(domain, model, x, K);

    std::ostringstream csv;
    csv << "k,cantor_index,coefficient,partial_variance\n";
    double partial = 0.0;
    for (std::uint64_t k = 1; k <= K; ++k) {
        const std::uint64_t index = cantor_pair(k, 1);
        const double c = field.chaos.coefficient(MultiIndex::unit(index));
        partial += c * c;
        csv << k << ',' << index << ',' << format_double(c) << ',' << format_double(partial)
            << '\n';
    }
    emit(out, csv.str());

    json summary;
    summary["x"] = json::parse(point_json(x));
    summary["K"] = K;
    summary["variance_partial"] = partial;
    if (field.variance_exact.has_value()) {
        summary["variance_exact"] = *field.variance_exact;
    } else {
        summary["variance_exact"] = nullptr;
    }
    if (domain.kind() == Domain::Kind::hypercube) {
        const double tail = domain.series_tail_bound();
        if (std::isfinite(tail)) summary["series_tail_bound"] = tail;
    }
    if (mc_samples > 0 && domain.dim() <= 3) {
        const PrmSampler sampler(model, domain.bounding_box(), eps);
        const MomentAccumulator acc =
            mc_accumulate(sampler, RandomSource(seed), mc_samples,
                          [&](const PointConfiguration& c) { return solve_mc(domain, model, c, x); });
        summary["mc_var"] = acc.variance();
        summary["mc_se"] = acc.variance_se();
        summary["mc_samples"] = mc_samples;
        summary["truncation_var"] = sampler.truncation_variance();
    } else {
        summary["mc_var"] = nullptr;
        summary["mc_se"] = nullptr;
    }
    summary["eps"] = eps;
    summary["seed"] = seed;
    const std::string text = summary.dump() + "\n";
    if (summary_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(summary_path, text);
    }
    return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& out) {
    const std::vector<CheckResult> results = run_acceptance_suite(suite, seed);
    bool all_passed = true;
    std::vector<McReportRow> rows;
    int index = 0;
    for (const CheckResult& r : results) {
        ++index;
        std::printf("[%s] %2d %-28s %s (%.1fs)\n", r.passed ? "PASS" : "FAIL", index,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        all_passed = all_passed && r.passed;
        rows.insert(rows.end(), r.rows.begin(), r.rows.end());
    }
    if (!out.empty()) write_text_file(out, mc_report_to_csv(rows));
    return all_passed ? 0 : 1;
}

int run_moments(const json& config, const std::string& measure_path, const std::string& box_spec,
                int max_order, const std::string& fn_name, std::size_t mc_samples,
                std::uint64_t seed, double eps, const std::string& out) {
    const LevyMeasureModel model = load_measure(config, measure_path);
    const Box box = Box::from_lengths(parse_list(box_spec));

    PointFunction f;
    if (fn_name == "chi") {
        f = [](std::span<const double>, double) { return 1.0; };
    } else if (fn_name == "z") {
        f = [](std::span<const double>, double z) { return z; };
    } else if (fn_name == "yz") {
        f = [](std::span<const double> x, double z) { return x[0] * z; };
    } else if (fn_name == "z2") {
        f = [](std::span<const double>, double z) { return z * z; };
    } else {
        throw std::invalid_argument("unknown test function '" + fn_name + "' (chi|z|yz|z2)");
    }

    const PrmSampler sampler(model, box, eps);
    std::vector<McReportRow> rows;
    for (int p = 1; p <= max_order; ++p) {
        const double theory = moment_formula(model, box, f, p);
        const MomentAccumulator acc = mc_accumulate(
            sampler, RandomSource(seed + static_cast<std::uint64_t>(p)), mc_samples,
            [&](const PointConfiguration& c) { return std::pow(pair_raw(c, f), p); });
        McReportRow row;
        row.quantity = "moment_" + std::to_string(p) + "_" + fn_name;
        row.estimate = acc.mean();
        row.theory = theory;
        row.std_error = acc.mean_se();
        row.n_samples = mc_samples;
        row.seed = seed + static_cast<std::uint64_t>(p);
        row.eps = eps;
        row.truncation_var = sampler.truncation_variance();
        rows.push_back(row);
    }
    // Characteristic functional at f (unit phase).
    const CharFunctionalResult cf =
        char_functional_check(model, box, eps, f, mc_samples, RandomSource(seed));
    McReportRow re_row;
    re_row.quantity = "char_functional_re_" + fn_name;
    re_row.estimate = cf.empirical.real();
    re_row.theory = cf.theory.real();
    re_row.std_error = cf.std_error;
    re_row.n_samples = mc_samples;
    re_row.seed = seed;
    re_row.eps = eps;
    re_row.truncation_var = sampler.truncation_variance();
    rows.push_back(re_row);
    McReportRow im_row = re_row;
    im_row.quantity = "char_functional_im_" + fn_name;
    im_row.estimate = cf.empirical.imag();
    im_row.theory = cf.theory.imag();
    rows.push_back(im_row);

    emit(out, mc_report_to_csv(rows));
    return 0;
}

int run_divergence(std::size_t dim, const std::string& x_spec, const std::string& deltas_spec,
                   const std::string& out) {
    const std::vector<double> x = parse_list(x_spec);
    const std::vector<double> deltas = parse_list(deltas_spec);
    const auto profile = divergence_profile(dim, x, deltas);
    std::ostringstream csv;
    csv << "delta,I_delta\n";
    for (const auto& [delta, value] : profile) {
        csv << format_double(delta) << ',' << format_double(value) << '\n';
    }
    emit(out, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        const json config = load_config(argc, argv);

        CLI::App app{"Levy white-noise calculus: chaos expansions, Poisson random measures, "
                     "and the stochastic Poisson equation"};
        app.require_subcommand(1);
        std::string config_path;
        const char* config_help = "JSON config file with defaults (flags win)";
        app.add_option("--config", config_path, config_help);

        // basis
        auto* basis_cmd = app.add_subcommand("basis", "emit the orthonormal jump-polynomial basis");
        std::string measure_path = cfg<std::string>(config, "measure_path", "");
        int M = cfg<int>(config, "M", 4);
        std::string out = cfg<std::string>(config, "out", "");
        basis_cmd->add_option("--measure", measure_path, "Levy measure JSON file");
        basis_cmd->add_option("--M", M, "number of polynomials");
        basis_cmd->add_option("--out", out, "output CSV path (default stdout)");

        // sample
        auto* sample_cmd = app.add_subcommand("sample", "draw Poisson random measure realizations");
        std::string box_spec = cfg<std::string>(config, "box", "1");
        std::string box_lo_spec = cfg<std::string>(config, "box_lo", "");
        double eps = cfg<double>(config, "eps", 0.0);
        std::uint64_t seed = cfg<std::uint64_t>(config, "seed", 0);
        std::size_t n_samples = cfg<std::size_t>(config, "n", 1);
        sample_cmd->add_option("--measure", measure_path, "Levy measure JSON file");
        sample_cmd->add_option("--box", box_spec, "box upper corner, comma separated");
        sample_cmd->add_option("--box-lo", box_lo_spec, "box lower corner (default zeros)");
        sample_cmd->add_option("--eps", eps, "jump truncation threshold");
        auto* sample_seed = sample_cmd->add_option("--seed", seed, "random seed (required)");
        sample_cmd->add_option("--n", n_samples, "number of configurations");
        sample_cmd->add_option("--out", out, "output CSV path (default stdout)");

        // solve
        auto* solve_cmd = app.add_subcommand("solve", "chaos/Monte-Carlo solution of the "
                                                      "stochastic Poisson equation");
        std::string domain_name = cfg<std::string>(config, "domain", "interval");
        std::size_t dim = cfg<std::size_t>(config, "dim", 1);
        int series_order = cfg<int>(config, "series_order", 40);
        std::string x_spec = cfg<std::string>(config, "x", "0.5");
        std::uint64_t K = cfg<std::uint64_t>(config, "K", 100);
        std::size_t mc_samples = cfg<std::size_t>(config, "mc_samples", 0);
        std::string summary_path = cfg<std::string>(config, "summary", "");
        solve_cmd->add_option("--measure", measure_path, "Levy measure JSON file");
        solve_cmd->add_option("--domain", domain_name, "interval|disk|ball|hypercube");
        solve_cmd->add_option("--dim", dim, "dimension (hypercube only; others fix it)");
        solve_cmd->add_option("--series-order", series_order, "hypercube eigen-series order");
        solve_cmd->add_option("--x", x_spec, "evaluation point, comma separated");
        solve_cmd->add_option("--K", K, "chaos truncation");
        solve_cmd->add_option("--mc-samples", mc_samples, "Monte Carlo replicates (0 = none)");
        auto* solve_seed = solve_cmd->add_option("--seed", seed, "random seed (required)");
        solve_cmd->add_option("--eps", eps, "jump truncation threshold");
        solve_cmd->add_option("--out", out, "coefficient CSV path (default stdout)");
        solve_cmd->add_option("--summary", summary_path, "summary JSON path (default stdout)");

        // verify
        auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suites");
        std::string suite = cfg<std::string>(config, "suite", "all");
        verify_cmd->add_option("--suite", suite, "suite name or 'all'");
        auto* verify_seed = verify_cmd->add_option("--seed", seed, "random seed (required)");
        verify_cmd->add_option("--out", out, "MC report CSV path");

        // moments
        auto* moments_cmd =
            app.add_subcommand("moments", "moment formula and characteristic functional checks");
        int max_order = cfg<int>(config, "n_max", 4);
        std::string fn_name = cfg<std::string>(config, "f", "chi");
        std::size_t mom_samples = cfg<std::size_t>(config, "mc_samples", 100000);
        moments_cmd->add_option("--measure", measure_path, "Levy measure JSON file");
        moments_cmd->add_option("--box", box_spec, "box upper corner, comma separated");
        moments_cmd->add_option("--n", max_order, "highest moment order (<= 4)");
        moments_cmd->add_option("--f", fn_name, "test function: chi|z|yz|z2");
        moments_cmd->add_option("--mc-samples", mom_samples, "Monte Carlo replicates");
        auto* moments_seed = moments_cmd->add_option("--seed", seed, "random seed (required)");
        moments_cmd->add_option("--eps", eps, "jump truncation threshold");
        moments_cmd->add_option("--out", out, "MC report CSV path (default stdout)");

        // divergence
        auto* div_cmd = app.add_subcommand("divergence", "I(delta) profile of the Green kernel");
        std::string deltas_spec = cfg<std::string>(config, "deltas", "0.2,0.1,0.05,0.025");
        div_cmd->add_option("--dim", dim, "dimension 1..4");
        div_cmd->add_option("--x", x_spec, "interior point, comma separated");
        div_cmd->add_option("--deltas", deltas_spec, "decreasing radii, comma separated");
        div_cmd->add_option("--out", out, "output CSV path (default stdout)");

        for (CLI::App* sub : app.get_subcommands({})) {
            sub->add_option("--config", config_path, config_help);
        }

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            return app.exit(e);
        }

        const bool config_has_seed = config.contains("seed");
        const auto require_seed = [&](CLI::Option* opt) {
            if (opt->count() == 0 && !config_has_seed) {
                throw std::invalid_argument("--seed is required (no entropy defaults)");
            }
        };

        if (basis_cmd->parsed()) return run_basis(config, measure_path, M, out);
        if (sample_cmd->parsed()) {
            require_seed(sample_seed);
            return run_sample(config, measure_path, box_spec, box_lo_spec, eps, seed, n_samples,
                              out);
        }
        if (solve_cmd->parsed()) {
            if (mc_samples > 0) require_seed(solve_seed);
            return run_solve(config, measure_path, domain_name, dim, series_order, x_spec, K,
                             mc_samples, seed, eps, out, summary_path);
        }
        if (verify_cmd->parsed()) {
            require_seed(verify_seed);
            return run_verify(suite, seed, out);
        }
        if (moments_cmd->parsed()) {
            require_seed(moments_seed);
            return run_moments(config, measure_path, box_spec, max_order, fn_name, mom_samples,
                               seed, eps, out);
        }
        if (div_cmd->parsed()) return run_divergence(dim, x_spec, deltas_spec, out);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
}
