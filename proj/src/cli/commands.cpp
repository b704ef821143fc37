#include "cptsq/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cptsq/analysis.hpp"
#include "cptsq/analytic_spin.hpp"
#include "cptsq/error.hpp"
#include "cptsq/langevin.hpp"
#include "cptsq/sweep.hpp"

namespace cptsq::cli {

namespace {

langevin::FluctuationModel stable_model(const RunConfig& config)
{
    langevin::FluctuationModel model = langevin::build_model(config.params, config.I);
    if (!langevin::stability(model)) {
        throw UnstableOperatingPoint("operating point C=" + format_number(config.params.C)
                                     + " delta=" + format_number(config.params.delta_bar)
                                     + " phi=" + format_number(config.params.phi) + " I=" + format_number(config.I)
                                     + " is unstable (max Re eig = " + format_number(model.growth_rate) + ")");
    }
    return model;
}

std::vector<langevin::TwoModeSpectrum> spectra_for(const RunConfig& config)
{
    const auto model = stable_model(config);
    const auto omegas = config.omegas();
    return sweep::parallel::spectra(model, omegas, resolve_threads(config.threads));
}

std::vector<analysis::EPRResult> entanglement_for(const RunConfig& config)
{
    const auto spectra = spectra_for(config);
    analysis::EntanglementOptions options;
    options.seed = config.seed;
    return sweep::parallel::entanglement(spectra, options, resolve_threads(config.threads));
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues preset_description(const RunConfig& c, const std::string& prefix)
{
    return {{prefix + "C", format_number(c.params.C)},     {prefix + "kappa", format_number(c.params.kappa)},
            {prefix + "phi", format_number(c.params.phi)}, {prefix + "delta", format_number(c.params.delta_bar)},
            {prefix + "I", format_number(c.I)}};
}

}  // namespace

Table cmd_steady(const RunConfig& config)
{
    config.params.validate();
    const auto deltas = config.delta_range.values();
    const auto rows =
        sweep::parallel::steady(config.params, config.I, deltas, config.exact_stability, resolve_threads(config.threads));
    Table t;
    t.schema = "steady/1";
    t.columns = {"delta_bar", "I", "A", "phi_nl", "I_in", "re_r", "im_r", "stable"};
    for (const auto& r : rows) {
        t.rows.push_back({r.delta_bar, r.I, r.absorption, r.phase_nl, r.input_intensity, r.reflectivity.real(),
                          r.reflectivity.imag(), r.stable});
    }
    return t;
}

Table cmd_spectrum(const RunConfig& config)
{
    Table t;
    t.schema = "spectrum/1";
    t.columns = {"omega", "s_a1", "s_a2", "s_ax", "s_ay", "theta_a1", "theta_a2", "theta_ax", "theta_ay"};
    for (const auto& s : spectra_for(config)) {
        const auto r = sweep::squeezing_point(s);
        t.rows.push_back({r.omega, r.a1.s_star, r.a2.s_star, r.ax.s_star, r.ay.s_star, r.a1.theta_star, r.a2.theta_star,
                          r.ax.theta_star, r.ay.theta_star});
    }
    return t;
}

Table cmd_entangle(const RunConfig& config)
{
    Table t;
    t.schema = "entangle/1";
    t.columns = {"omega", "e_star", "e_star_db", "t", "psi", "chi", "theta_a", "theta_b"};
    for (const auto& r : entanglement_for(config)) {
        t.rows.push_back({r.omega, r.E_star, analysis::entanglement_db(r.E_star), r.t, r.psi, r.chi, r.basis.theta_a,
                          r.basis.theta_b});
    }
    return t;
}

Table cmd_spin(const RunConfig& config)
{
    config.params.validate();
    const auto phis = config.phi_range.values();
    const auto rows = sweep::parallel::spin(config.params, phis, config.alpha, resolve_threads(config.threads));
    Table t;
    t.schema = "spin/1";
    t.columns = {"phi", "alpha", "var_numeric", "var_analytic", "gamma_z_fit", "gamma_z_analytic"};
    for (const auto& r : rows) {
        t.rows.push_back({r.phi, r.alpha, r.var_numeric, r.var_analytic, r.gamma_z_fit, r.gamma_z_analytic});
    }
    return t;
}

std::vector<std::pair<std::string, Table>> cmd_fig(const RunConfig& config)
{
    RunConfig preset = config;
    preset.params = SystemParams{};
    preset.alpha.reset();
    std::vector<std::pair<std::string, Table>> out;
    switch (config.figure) {
    case 1: {
        preset.params.C = 100.0;
        preset.params.phi = 0.0;
        preset.I = 1.0;
        preset.delta_range = GridSpec{-3.0, 3.0, 601, false};
        Table t = cmd_steady(preset);
        t.schema = "fig1/1";
        t.config = preset_description(preset, "");
        t.config.emplace_back("delta-range", preset.delta_range.to_string());
        out.emplace_back("fig1.csv", std::move(t));
        break;
    }
    case 3: {
        preset.params.C = 100.0;
        preset.params.kappa = 2.0;
        preset.params.delta_bar = 1.0;
        preset.params.phi = 1.0;
        preset.I = 144.0;
        Table full = cmd_spectrum(preset);
        Table t;
        t.schema = "fig3/1";
        t.columns = {"omega", "s_a1", "s_a2", "s_ax", "s_ay"};
        t.config = preset_description(preset, "");
        t.config.emplace_back("omega-range", preset.omega_range ? preset.omega_range->to_string() : "hybrid:0.001:100:400");
        for (auto& row : full.rows) t.rows.emplace_back(row.begin(), row.begin() + 5);
        out.emplace_back("fig3.csv", std::move(t));
        break;
    }
    case 4: {
        RunConfig a = preset;
        a.params.C = 100.0;
        a.params.kappa = 2.0;
        a.params.delta_bar = 1.0;
        a.params.phi = 1.0;
        a.I = 144.0;
        RunConfig b = preset;
        b.params.C = 1000.0;
        b.params.kappa = 2.0;
        b.params.delta_bar = 0.1;
        b.params.phi = 2.0;
        b.I = 49.0;
        const auto ea = entanglement_for(a);
        const auto eb = entanglement_for(b);
        Table t;
        t.schema = "fig4/1";
        t.columns = {"omega", "e_star_a", "e_star_a_db", "e_star_b", "e_star_b_db"};
        t.config = preset_description(a, "a.");
        for (auto& kv : preset_description(b, "b.")) t.config.push_back(kv);
        t.config.emplace_back("omega-range", a.omega_range ? a.omega_range->to_string() : "hybrid:0.001:100:400");
        t.config.emplace_back("seed", std::to_string(config.seed));
        for (std::size_t i = 0; i < ea.size(); ++i) {
            t.rows.push_back({ea[i].omega, ea[i].E_star, analysis::entanglement_db(ea[i].E_star), eb[i].E_star,
                              analysis::entanglement_db(eb[i].E_star)});
        }
        out.emplace_back("fig4.csv", std::move(t));
        break;
    }
    case 5: {
        preset.params.kappa = 2.0;
        preset.params.delta_bar = 0.005;
        preset.phi_range = GridSpec{0.25, 5.0, 39, false};
        const auto phis = preset.phi_range.values();
        SystemParams strong = preset.params;
        strong.C = 1000.0;
        SystemParams weak = preset.params;
        weak.C = 100.0;
        const int threads = resolve_threads(config.threads);
        const auto b = sweep::parallel::spin(strong, phis, std::nullopt, threads);
        const auto c = sweep::parallel::spin(weak, phis, std::nullopt, threads);
        Table t;
        t.schema = "fig5/1";
        t.columns = {"phi", "var_a", "var_b", "var_c"};
        t.config = {{"var_a", "analytic"},
                    {"var_b.C", format_number(strong.C)},
                    {"var_c.C", format_number(weak.C)},
                    {"kappa", format_number(preset.params.kappa)},
                    {"delta", format_number(preset.params.delta_bar)},
                    {"alpha", "optimal"},
                    {"phi-range", preset.phi_range.to_string()}};
        for (std::size_t i = 0; i < phis.size(); ++i) {
            t.rows.push_back({phis[i], analytic_spin::optimal_alpha(phis[i]).var_star, b[i].var_numeric, c[i].var_numeric});
        }
        out.emplace_back("fig5.csv", std::move(t));
        break;
    }
    default:
        throw InvalidArgument("figure must be one of 1, 3, 4, 5");
    }
    return out;
}

}  // namespace cptsq::cli

namespace cptsq::cli {

std::string export_matrices(const RunConfig& config)
{
    const auto model = langevin::build_model(config.params, config.I);
    const auto labels = langevin::basis_labels();
    std::ostringstream os;
    os << "# basis:";
    for (const auto& l : labels) os << ' ' << l;
    os << "\n# growth_rate: " << format_number(model.growth_rate) << "\n";
    os << "matrix,row,col,re,im\n";
    auto dump = [&](const char* name, const auto& m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                os << name << ',' << r << ',' << c << ',' << format_number(m(r, c).real()) << ','
                   << format_number(m(r, c).imag()) << '\n';
            }
        }
    };
    dump("M", model.M);
    dump("D", model.D);
    dump("B", model.B);
    return os.str();
}

namespace {

std::vector<std::string> with_config_file(std::vector<std::string> args)
{
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty() || args.size() < 2) return args;
    auto given = [&](const std::string& key) {
        for (const auto& a : args) {
            if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
            if (key.size() == 1 && a.rfind("-" + key, 0) == 0) return true;
        }
        return false;
    };
    std::vector<std::string> extra;
    for (const auto& [key, value] : read_config_file(path)) {
        if (key == "config") throw InvalidArgument("config files cannot include other config files");
        if (given(key)) continue;
        if (key == "exact-stability") {
            if (value == "true" || value == "1") extra.push_back("--exact-stability");
            else if (value != "false" && value != "0") throw InvalidArgument("exact-stability must be true or false");
            continue;
        }
        extra.push_back("--" + key + "=" + value);
    }
    args.insert(args.begin() + 2, extra.begin(), extra.end());
    return args;
}

GridSpec parse_grid(const std::string& text, const char* what)
{
    try {
        return GridSpec::parse(text);
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(std::string(what) + ": " + e.what());
    }
}

}  // namespace

int run(int argc, const char* const* argv)
{
    std::vector<std::string> args(argv, argv + argc);
    RunConfig cfg;
    std::optional<double> C, kappa, phi, delta, gamma0, N, I, alpha;
    std::string delta_range, omega_range, phi_range, format = "csv", config_path;
    int figure = 0;

    CLI::App app{"Steady state, output squeezing, entanglement and spin squeezing of a CPT medium in a two-mode cavity",
                 "cpt-sim"};
    app.require_subcommand(1);
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-C,--C", C, "cooperativity g^2 N / (2 kappa gamma)");
        sub->add_option("--kappa", kappa, "cavity field decay rate (units of gamma)");
        sub->add_option("--phi", phi, "cavity detuning in units of kappa");
        sub->add_option("--delta", delta, "half two-photon detuning delta_bar");
        sub->add_option("--gamma0", gamma0, "ground-state dephasing rate");
        sub->add_option("--N", N, "atom number (spin variances are normalized per atom)");
        sub->add_option("--out", cfg.out, "output path, '-' for stdout (fig: directory)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", cfg.seed, "seed for randomized optimizer starts");
        sub->add_option("--threads", cfg.threads, "OpenMP threads (default: CPT_SIM_THREADS or runtime)");
        sub->add_option("--config", config_path, "file of key = value defaults");
    };
    auto* steady = app.add_subcommand("steady", "reflectivity and absorption versus two-photon detuning");
    auto* spectrum = app.add_subcommand("spectrum", "minimal quadrature noise spectra of the output modes");
    auto* entangle = app.add_subcommand("entangle", "optimized EPR entanglement measure versus frequency");
    auto* spin = app.add_subcommand("spin", "atomic spin squeezing versus cavity detuning");
    auto* fig = app.add_subcommand("fig", "regenerate a figure data set (1, 3, 4 or 5)");
    for (auto* sub : {steady, spectrum, entangle, spin, fig}) add_common(sub);
    for (auto* sub : {steady, spectrum, entangle}) sub->add_option("--I", I, "intracavity intensity (2 Omega^2)");
    steady->add_option("--delta-range", delta_range, "detuning grid start:stop:count");
    steady->add_flag("--exact-stability", cfg.exact_stability, "decide stability from the full drift matrix");
    for (auto* sub : {spectrum, entangle}) {
        sub->add_option("--omega-range", omega_range, "frequency grid start:stop:count[:log]");
        sub->add_option("--export-matrices", cfg.export_matrices, "write M, D and B as CSV to this path");
    }
    spin->add_option("--phi-range", phi_range, "cavity detuning grid start:stop:count");
    spin->add_option("--alpha", alpha, "distance from threshold delta_s/delta (default: optimal)");
    fig->add_option("figure", figure, "figure number")->required()->check(CLI::IsMember({1, 3, 4, 5}));

    try {
        args = with_config_file(std::move(args));
        std::vector<const char*> cargs;
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    } catch (const InvalidArgument& e) {
        std::cerr << "cpt-sim: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        cfg.command = chosen->get_name();
        SystemParams& p = cfg.params;
        if (cfg.command == "steady") {
            p.C = 100.0;
            p.kappa = 2.0;
            cfg.I = 1.0;
        } else if (cfg.command == "spectrum" || cfg.command == "entangle") {
            p.C = 100.0;
            p.kappa = 2.0;
            p.delta_bar = 1.0;
            p.phi = 1.0;
            cfg.I = 144.0;
        } else if (cfg.command == "spin") {
            p.C = 1000.0;
            p.kappa = 2.0;
            p.delta_bar = 0.005;
        }
        if (C) p.C = *C;
        if (kappa) p.kappa = *kappa;
        if (phi) p.phi = *phi;
        if (delta) p.delta_bar = *delta;
        if (gamma0) p.gamma0 = *gamma0;
        if (N) p.N = *N;
        if (I) cfg.I = *I;
        cfg.alpha = alpha;
        if (!delta_range.empty()) cfg.delta_range = parse_grid(delta_range, "--delta-range");
        if (!omega_range.empty()) cfg.omega_range = parse_grid(omega_range, "--omega-range");
        if (!phi_range.empty()) cfg.phi_range = parse_grid(phi_range, "--phi-range");
        cfg.format = format == "json" ? Format::Json : Format::Csv;
        cfg.figure = figure;
        p.validate();
        detail::require_finite(cfg.I, "I");
        if (cfg.I < 0.0) throw InvalidArgument("I must be non-negative");
        if (cfg.alpha && !(*cfg.alpha > 1.0)) throw InvalidArgument("alpha must exceed 1");
        if (cfg.threads < 0) throw InvalidArgument("threads must be non-negative");
    } catch (const InvalidArgument& e) {
        std::cerr << "cpt-sim: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (!cfg.export_matrices.empty()) write_output(cfg.export_matrices, export_matrices(cfg));
        if (cfg.command == "fig") {
            const std::string dir = cfg.out == "-" ? "." : cfg.out;
            std::filesystem::create_directories(dir);
            for (const auto& [name, table] : cmd_fig(cfg)) {
                const auto path = (std::filesystem::path(dir) / name).string();
                write_output(path, render(table, table.config.empty() ? cfg.describe() : table.config, Format::Csv));
                std::cerr << "wrote " << path << '\n';
            }
            return kOk;
        }
        Table table;
        if (cfg.command == "steady") table = cmd_steady(cfg);
        else if (cfg.command == "spectrum") table = cmd_spectrum(cfg);
        else if (cfg.command == "entangle") table = cmd_entangle(cfg);
        else table = cmd_spin(cfg);
        write_output(cfg.out, render(table, cfg.describe(), cfg.format));
        return kOk;
    } catch (const InvalidArgument& e) {
        std::cerr << "cpt-sim: " << e.what() << '\n';
        return kConfigError;
    } catch (const UnstableOperatingPoint& e) {
        std::cerr << "cpt-sim: unstable: " << e.what() << '\n';
        return kUnstable;
    } catch (const std::exception& e) {
        std::cerr << "cpt-sim: solver failure: " << e.what() << '\n';
        return kSolverFailure;
    }
}

}  // namespace cptsq::cli
