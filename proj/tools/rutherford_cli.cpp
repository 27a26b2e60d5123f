// Command-line driver: run a head-on collision comparison, validate a
// configuration, or print the analytic classical turning distance.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rutherford/rutherford.hpp"

namespace {

rutherford::RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rutherford::Error("cannot open config " + path);
    return rutherford::parse_config(in);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum vs classical head-on Coulomb collision"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    auto* run = app.add_subcommand("run", "Run the comparison and write series.csv, metrics.txt, metadata.txt");
    run->add_option("--config", config_path, "Configuration file (key = value)")->required();
    run->add_option("--out-dir", out_dir, "Output directory")->required();

    auto* validate = app.add_subcommand("validate", "Parse a configuration and print it with defaults filled in");
    validate->add_option("--config", config_path, "Configuration file (key = value)")->required();

    double energy = 0.0;
    int z1 = 2;
    int z2 = 79;
    auto* oracle = app.add_subcommand("oracle", "Print the head-on closest-approach distance k/E in fm");
    oracle->add_option("--energy", energy, "Energy in MeV")->required();
    oracle->add_option("--z1", z1, "Projectile charge number")->required();
    oracle->add_option("--z2", z2, "Target charge number")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto config = load_config(config_path);
            rutherford::UnitSystem units;
            units.mass_alpha = config.mass;
            const auto result = rutherford::run_comparison(config, units);
            const auto bundle = rutherford::write_bundle(config, result, units, out_dir);
            std::cout << bundle.series_csv.string() << '\n'
                      << bundle.metrics.string() << '\n'
                      << bundle.metadata.string() << '\n';
        } else if (*validate) {
            std::cout << rutherford::render_config(load_config(config_path));
        } else if (*oracle) {
            const double k = rutherford::coupling_constant(z1, z2);
            std::cout << rutherford::format_double(rutherford::analytic_closest_approach(energy, k)) << '\n';
        }
    } catch (const rutherford::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
