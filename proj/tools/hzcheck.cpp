// hzcheck: run verification campaigns and write report.json plus csv tables
#include <CLI11.hpp>

#include <unistd.h>

#include <filesystem>
#include <iostream>

#include "hz/campaign.hpp"
#include "hz/parallel.hpp"

namespace {

constexpr int kExitAssert = 2;
constexpr int kExitConfig = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heisenberg-group Hartree verification campaigns"};
    std::string config_path, out, robin_csv;
    std::vector<std::string> campaigns;
    int n = 1, workers = 0;
    double mu = 2.0;
    std::uint64_t seed = 1;
    std::int64_t samples = 0;
    auto* o_config = app.add_option("--config", config_path, "JSON run file");
    auto* o_campaign =
        app.add_option("--campaign", campaigns, "group cayley constants spectral bubble pohozaev reduced all");
    auto* o_n = app.add_option("-n", n, "complex dimension of H^n");
    auto* o_mu = app.add_option("--mu", mu, "Riesz exponent, 0 < mu < 2n+2");
    auto* o_seed = app.add_option("--seed", seed, "Monte Carlo seed");
    auto* o_samples = app.add_option("--samples", samples, "Monte Carlo samples");
    auto* o_out = app.add_option("--out", out, "output directory");
    auto* o_robin = app.add_option("--robin-csv", robin_csv, "tabulated Robin field for the reduced campaign");
    app.add_option("--workers", workers, "worker threads (results do not depend on it)");
    o_config->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    hz::RunConfig cfg;
    try {
        if (*o_config) cfg = hz::load_config(config_path);
        // flags win over the run file
        const int nn = *o_n ? n : cfg.params.n;
        const double mm = *o_mu ? mu : cfg.params.mu;
        try {
            cfg.params = hz::Params::make(nn, mm);
        } catch (const std::invalid_argument& e) {
            throw hz::ConfigError(std::string("flags -n/--mu: ") + e.what());
        }
        if (*o_seed) cfg.quadrature.seed = seed;
        if (*o_samples) cfg.quadrature.samples = samples;
        if (*o_out) cfg.output_path = out;
        if (*o_robin) cfg.robin_csv = robin_csv;
        if (*o_campaign) cfg.campaigns = campaigns;
        hz::normalize_campaigns(cfg);
    } catch (const hz::ConfigError& e) {
        std::cerr << "hzcheck: " << e.what() << "\n";
        return kExitConfig;
    }
    if (workers > 0) hz::set_workers(workers);
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_path, ec);
    if (ec || access(cfg.output_path.c_str(), W_OK) != 0) {
        std::cerr << "hzcheck: output path '" << cfg.output_path << "' is not writable\n";
        return kExitConfig;
    }

    hz::Report rep;
    try {
        rep = hz::run(cfg);
    } catch (const hz::ConfigError& e) {
        std::cerr << "hzcheck: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        hz::write_report(rep, cfg.output_path);
    } catch (const std::exception& e) {
        std::cerr << "hzcheck: " << e.what() << "\n";
        return kExitConfig;
    }
    for (const auto& c : rep.body["campaigns"]) {
        std::cout << c["name"].get<std::string>() << ": " << c["status"].get<std::string>();
        for (const auto& k : c["checks"])
            if (k["status"] == "fail") std::cout << "\n  FAIL " << k["name"].get<std::string>();
        std::cout << "  (" << rep.timings[c["name"].get<std::string>()].get<double>() << " s)\n";
    }
    std::cout << "report: " << cfg.output_path << "/report.json\n";
    return rep.all_passed ? 0 : kExitAssert;
}
