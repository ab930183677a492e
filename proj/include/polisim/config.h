#ifndef POLISIM_CONFIG_H
#define POLISIM_CONFIG_H

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polisim
{

/// Raised for invalid parameters, unknown keys and malformed input files.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/**
 * Run-level settings: population sizes, horizon, regional design and output location.
 */
struct SimParams {
    int num_days      = 5040;
    int num_agents    = 1000;
    int num_families  = 400;
    int num_dwellings = 440;
    int num_firms     = 110;
    int num_regions   = 1;
    std::uint64_t seed = 1;
    int num_runs       = 1;
    std::filesystem::path output_dir = "out";

    bool operator==(const SimParams&) const = default;
};

/**
 * Exogenous behavioural parameters of the economy.
 */
struct ModelParams {
    double alpha                    = 0.25;  ///< production and wage exponent
    double beta                     = 0.87;  ///< consumption exponent
    double price_change_quantity    = 10.0;  ///< inventory threshold for price changes
    double labor_market_frequency   = 0.28;  ///< monthly probability a firm skips the labor market
    double markup                   = 0.03;
    int market_size                 = 100;   ///< firms sampled by each shopper
    double consumption_satisfaction = 0.01;  ///< loaded and fingerprinted, not used by the economy
    double housing_entry_share      = 0.021;
    double tax_consumption          = 0.21;
    double wage_base                = 0.65;

    bool operator==(const ModelParams&) const = default;
};

/**
 * Uniform ranges used when generating the initial population.
 * These are implementation choices; they are exposed so that they can be changed from a config file.
 */
struct InitRanges {
    int age_min               = 1;
    int age_max               = 90;
    int qualification_min     = 1;
    int qualification_max     = 21;
    double cash_min           = 0.0;
    double cash_max           = 5.0;
    int dwelling_size_min     = 20;
    int dwelling_size_max     = 120;
    double sqm_value_min      = 1.0;
    double sqm_value_max      = 2.0;
    double firm_capital_min   = 50.0;
    double firm_capital_max   = 150.0;

    bool operator==(const InitRanges&) const = default;
};

struct Params {
    SimParams sim;
    ModelParams model;
    InitRanges init;

    bool operator==(const Params&) const = default;
};

/// Names of every configurable key, in canonical order.
std::vector<std::string> parameter_names();

/// True if `key` names a configurable parameter.
bool is_parameter(std::string_view key);

/// Assigns a single parameter from its textual value. Throws ConfigError on unknown key or bad value.
void set_parameter(Params& params, std::string_view key, std::string_view value);

/// Textual value of one parameter, in the same form `canonical_text` uses.
std::string get_parameter(const Params& params, std::string_view key);

/// Checks every parameter against its admissible interval and the cross-parameter constraints.
void validate(const Params& params);

/// Parses flat `key = value` text. Blank lines and `#` comments are ignored.
void apply_config_text(Params& params, std::string_view text, std::string_view origin = "<text>");

/**
 * Loads parameters from defaults, then `file` (if non-empty), then `overrides` ("key=value").
 * The result is validated.
 */
Params load_config(const std::filesystem::path& file, const std::vector<std::string>& overrides = {});

/// Config text that reproduces `params` exactly when loaded again.
std::string canonical_text(const Params& params);

/// Canonical parameters plus the RNG algorithm identifier.
std::string fingerprint(const Params& params);

} // namespace polisim

#endif // POLISIM_CONFIG_H
