#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "csv.hpp"

using namespace wvl::cli;

namespace {

/// Turns leftover "--a.b value" / "--a.b=value" tokens into overrides.
std::vector<Override> dotted_overrides(const std::vector<std::string>& extras) {
    std::vector<Override> out;
    for (std::size_t k = 0; k < extras.size(); ++k) {
        const std::string& tok = extras[k];
        if (tok.rfind("--", 0) != 0 || tok.size() <= 2) throw ConfigError("unexpected argument '" + tok + "'");
        const std::string body = tok.substr(2);
        const auto eq = body.find('=');
        if (eq != std::string::npos) {
            out.emplace_back(body.substr(0, eq), body.substr(eq + 1));
        } else {
            if (k + 1 >= extras.size()) throw ConfigError("override '" + tok + "' needs a value");
            out.emplace_back(body, extras[++k]);
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Wigner/Vlasov states of the oscillator with time-dependent frequency"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string states;
    std::string rank4_sign;
    double t0 = 0.0;
    double t1 = 0.0;
    double dt = 0.0;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"simulate", "sigma(t), densities, velocity and potential tables"},
        {"wigner", "Wigner grids, ellipse geometry and rank-4 slices"},
        {"spectrum", "energy spectra by quadrature and by characteristic trajectory"},
        {"stability", "Floquet classification raster over (a, g)"},
        {"verify", "residual and invariant battery; exit 0 iff every check passes"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->allow_extras();
        sub->add_option("--config", config_path, "scenario JSON file")->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--n", states, "comma-separated state orders, e.g. 0,1,2");
        sub->add_option("--t0", t0, "first output time");
        sub->add_option("--t1", t1, "last output time");
        sub->add_option("--dt", dt, "output time spacing");
        sub->add_option("--rank4-sign", rank4_sign, "rank-4 exponent sign")->check(CLI::IsMember({"paper", "reduced"}));
        sub->footer("Any config field can be overridden with its dotted name, e.g. --grid.x.points 301.");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    CLI::App* chosen = nullptr;
    for (CLI::App* sub : subs) {
        if (sub->parsed()) chosen = sub;
    }

    try {
        std::vector<Override> overrides = dotted_overrides(chosen->remaining());
        if (!out_dir.empty()) overrides.emplace_back("output.dir", nlohmann::json(out_dir).dump());
        if (!states.empty()) overrides.emplace_back("states", "[" + states + "]");
        if (chosen->count("--t0")) overrides.emplace_back("time.t0", format_number(t0));
        if (chosen->count("--t1")) overrides.emplace_back("time.t1", format_number(t1));
        if (chosen->count("--dt")) overrides.emplace_back("time.dt", format_number(dt));
        if (!rank4_sign.empty()) overrides.emplace_back("rank4.sign", nlohmann::json(rank4_sign).dump());

        const ScenarioConfig cfg = load_config(config_path, overrides);
        const CommandReport report = run_command(chosen->get_name(), cfg);
        for (const auto& f : report.files) std::cout << (cfg.out_dir / f.name).string() << '\n';
        if (report.exit_code != 0) {
            std::cerr << "wvl: " << report.message << '\n';
            return report.exit_code;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "wvl: " << e.what() << '\n';
        return exit_code_for(e);
    }
}
