#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "runner.hpp"

using namespace crc;

namespace
{

struct Overrides {
    std::string config_path;
    int n = 0;
    int degree = 0;
    int zorder = 0;
    int steps = 0;
    std::uint64_t seed = 0;
    int lambda_samples = 0;
    std::string side;
    double x0 = 0;
    int pairs = 0;
    double leg1_bend = 0;
    double leg2_bend = 0;
    std::string out_dir;
    int workers = 0;
    bool timing = false;
};

void add_options(CLI::App *app, Overrides &o)
{
    app->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--n", o.n, "n >= 2");
    app->add_option("--degree", o.degree, "series degree D");
    app->add_option("--zorder", o.zorder, "z-window Z (default D + 2)");
    app->add_option("--steps", o.steps, "path steps per leg (>= 100)");
    app->add_option("--seed", o.seed, "seed for lambda samples and random points");
    app->add_option("--lambda-samples", o.lambda_samples, "number of random lambda samples");
    app->add_option("--side", o.side, "X or Y")->check(CLI::IsMember({"X", "Y", "x", "y"}));
    app->add_option("--x0", o.x0, "x0 (or y0) for iseries");
    app->add_option("--pairs", o.pairs, "random class pairs for the pairing check");
    app->add_option("--leg1-bend", o.leg1_bend, "leg-1 detour (0 = literal path)");
    app->add_option("--leg2-bend", o.leg2_bend, "leg-2 detour (0 = literal path)");
    app->add_option("--out-dir", o.out_dir, "write <command>-n<n>.json here");
    app->add_option("--workers", o.workers, "worker threads");
    app->add_flag("--timing", o.timing, "include wall time in the report");
}

RunConfig build_config(const CLI::App *app, const Overrides &o)
{
    RunConfig c;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception &e) {
            throw ConfigError(std::string("cannot parse config: ") + e.what());
        }
        c = config_from_json(j);
    }
    if (const char *e = std::getenv("CRC_OUT_DIR")) {
        c.out_dir = e;
    }
    if (const char *e = std::getenv("CRC_WORKERS")) {
        try {
            c.workers = std::stoi(e);
        } catch (const std::exception &) {
            throw ConfigError("CRC_WORKERS must be an integer");
        }
    }
    auto given = [app](const char *name) { return app->count(name) > 0; };
    if (given("--n")) {
        c.n = o.n;
    }
    if (given("--degree")) {
        c.degree = o.degree;
    }
    if (given("--zorder")) {
        c.zorder = o.zorder;
    }
    if (given("--steps")) {
        c.steps = o.steps;
    }
    if (given("--seed")) {
        c.seed = o.seed;
    }
    if (given("--lambda-samples")) {
        c.lambda_samples = o.lambda_samples;
        c.lambdas.clear();
    }
    if (given("--side")) {
        c.side = (o.side == "X" || o.side == "x") ? Space::X : Space::Y;
    }
    if (given("--x0")) {
        c.x0 = Complex(o.x0);
    }
    if (given("--pairs")) {
        c.pairs = o.pairs;
    }
    if (given("--leg1-bend")) {
        c.leg1_bend = o.leg1_bend;
    }
    if (given("--leg2-bend")) {
        c.leg2_bend = o.leg2_bend;
    }
    if (given("--out-dir")) {
        c.out_dir = o.out_dir;
    }
    if (given("--workers")) {
        c.workers = o.workers;
    }
    if (given("--timing")) {
        c.timing = true;
    }
    validate(c);
    return c;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"crepant resolution correspondence checks for [C^2/Z_n]"};
    app.require_subcommand(1);
    Overrides o;
    for (const auto &name : command_names()) {
        add_options(app.add_subcommand(name), o);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const CLI::App *sub = app.get_subcommands().front();
    try {
        const RunConfig cfg = build_config(sub, o);
        const Report rep = run(sub->get_name(), cfg);
        const std::string text = to_json(rep, cfg.timing).dump(2) + "\n";
        std::cout << text;
        if (!cfg.out_dir.empty()) {
            std::filesystem::create_directories(cfg.out_dir);
            const auto path = std::filesystem::path(cfg.out_dir) / (sub->get_name() + "-n" + std::to_string(cfg.n) + ".json");
            std::ofstream(path) << text;
        }
        return rep.pass() ? 0 : 1;
    } catch (const ConfigError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
