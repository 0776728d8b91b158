#ifndef CRC_RUNNER_HPP
#define CRC_RUNNER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <crc/cohomology.hpp>
#include <crc/continuation.hpp>

namespace crc
{

// Bad configuration; the CLI maps it to exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

struct RunConfig {
    int n = 2;
    std::optional<int> degree;  // per-command default when unset
    std::optional<int> zorder;  // degree + 2 when unset
    int steps = 2000;
    std::uint64_t seed = 1;
    int lambda_samples = 3;
    std::vector<LambdaPair> lambdas;  // explicit samples override the seed
    std::optional<Space> side;        // products/iseries; both sides when unset for products
    Complex x0{0};
    int pairs = 100;
    Real leg1_bend = default_leg1_bend;
    Real leg2_bend = default_leg2_bend;
    std::map<std::string, Real> tolerances;  // overrides by check name
    std::string out_dir;
    int workers = 1;
    bool timing = false;
};

const std::vector<std::string> &command_names();

// Schema-checked; unknown keys and out-of-range values raise ConfigError.
RunConfig config_from_json(const nlohmann::json &j);
nlohmann::json to_json(const RunConfig &c);
void validate(const RunConfig &c);

struct Check {
    std::string name;
    Real value = 0;
    Real tolerance = 0;
    bool pass = false;
};

struct Report {
    std::string command;
    nlohmann::json config;
    std::vector<Check> checks;
    nlohmann::json error_budget = nlohmann::json::object();
    nlohmann::json data = nlohmann::json::object();
    double wall_time = 0;

    bool pass() const;
};

nlohmann::json to_json(const Report &r, bool timing);

// Default tolerance for a check name, after config overrides.
Real tolerance(const RunConfig &c, const std::string &name);

Report run(const std::string &command, const RunConfig &config);

std::string artifact_version();

} // namespace crc

#endif
