#include "polisim/config.h"
#include "polisim/rng.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace polisim
{
namespace
{

enum class Kind { integer, unsigned64, real, path };

struct Interval {
    double lower;
    double upper;
    bool lower_open;
    bool upper_open;

    bool contains(double v) const
    {
        bool lo = lower_open ? v > lower : v >= lower;
        bool hi = upper_open ? v < upper : v <= upper;
        return lo && hi;
    }

    std::string to_string() const
    {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%c%.17g, %.17g%c", lower_open ? '(' : '[', lower, upper,
                      upper_open ? ')' : ']');
        return buf;
    }
};

constexpr double inf = std::numeric_limits<double>::infinity();

struct Descriptor {
    const char* name;
    Kind kind;
    Interval interval;
    std::function<void(Params&, double)> set_number;
    std::function<double(const Params&)> get_number;
};

template <class T>
std::function<void(Params&, double)> setter(T Params::*group, auto member)
{
    return [group, member](Params& p, double v) {
        using Field = std::remove_reference_t<decltype((p.*group).*member)>;
        (p.*group).*member = static_cast<Field>(v);
    };
}

template <class T>
std::function<double(const Params&)> getter(T Params::*group, auto member)
{
    return [group, member](const Params& p) { return static_cast<double>((p.*group).*member); };
}

#define POLISIM_INT(group, field, lo, hi)                                                          \
    Descriptor{#field, Kind::integer, {lo, hi, false, false}, setter(&Params::group, &decltype(Params::group)::field), \
               getter(&Params::group, &decltype(Params::group)::field)}
#define POLISIM_REAL(group, field, lo, hi, lo_open, hi_open)                                       \
    Descriptor{#field, Kind::real, {lo, hi, lo_open, hi_open}, setter(&Params::group, &decltype(Params::group)::field), \
               getter(&Params::group, &decltype(Params::group)::field)}

const std::vector<Descriptor>& descriptors()
{
    static const std::vector<Descriptor> table = {
        POLISIM_INT(sim, num_days, 63, 12800),
        POLISIM_INT(sim, num_agents, 10, 10000),
        POLISIM_INT(sim, num_families, 4, 2000),
        POLISIM_INT(sim, num_dwellings, 5, 2200),
        POLISIM_INT(sim, num_firms, 2, 1000),
        POLISIM_INT(sim, num_regions, 1, 7),
        Descriptor{"seed", Kind::unsigned64, {0, inf, false, false}, nullptr, nullptr},
        POLISIM_INT(sim, num_runs, 1, 100000),
        Descriptor{"output_dir", Kind::path, {0, 0, false, false}, nullptr, nullptr},

        POLISIM_REAL(model, alpha, 0.0, 1.0, true, false),
        POLISIM_REAL(model, beta, 0.0, 1.0, true, false),
        // The published default (10) lies outside the published interval (100, 2000); the lower bound is relaxed to 1.
        POLISIM_REAL(model, price_change_quantity, 1.0, 2000.0, false, false),
        POLISIM_REAL(model, labor_market_frequency, 0.0, 1.0, false, true),
        POLISIM_REAL(model, markup, 0.0, 1.0, false, true),
        POLISIM_INT(model, market_size, 1, 1000),
        POLISIM_REAL(model, consumption_satisfaction, 0.0, 1.0, false, true),
        POLISIM_REAL(model, housing_entry_share, 0.0, 1.0, true, true),
        POLISIM_REAL(model, tax_consumption, 0.0, 1.0, true, true),
        POLISIM_REAL(model, wage_base, 0.0, 10.0, true, false),

        POLISIM_INT(init, age_min, 0, 120),
        POLISIM_INT(init, age_max, 0, 120),
        POLISIM_INT(init, qualification_min, 1, 30),
        POLISIM_INT(init, qualification_max, 1, 30),
        POLISIM_REAL(init, cash_min, 0.0, 1e6, false, false),
        POLISIM_REAL(init, cash_max, 0.0, 1e6, false, false),
        POLISIM_INT(init, dwelling_size_min, 1, 10000),
        POLISIM_INT(init, dwelling_size_max, 1, 10000),
        POLISIM_REAL(init, sqm_value_min, 0.0, 1e6, true, false),
        POLISIM_REAL(init, sqm_value_max, 0.0, 1e6, true, false),
        POLISIM_REAL(init, firm_capital_min, 0.0, 1e9, false, false),
        POLISIM_REAL(init, firm_capital_max, 0.0, 1e9, false, false),
    };
    return table;
}

#undef POLISIM_INT
#undef POLISIM_REAL

const Descriptor* find(std::string_view key)
{
    for (const auto& d : descriptors()) {
        if (key == d.name) {
            return &d;
        }
    }
    return nullptr;
}

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_number(std::string_view key, std::string_view text, Kind kind)
{
    std::string s(text);
    if (kind == Kind::integer) {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw ConfigError("parameter '" + std::string(key) + "' expects an integer, got '" + s + "'");
        }
        return static_cast<double>(v);
    }
    char* end  = nullptr;
    double v   = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw ConfigError("parameter '" + std::string(key) + "' expects a real number, got '" + s + "'");
    }
    return v;
}

void check_interval(const Descriptor& d, double v)
{
    if (!d.interval.contains(v)) {
        throw ConfigError("parameter '" + std::string(d.name) + "' = " + format_real(v) + " is outside " +
                          d.interval.to_string());
    }
}

} // namespace

std::vector<std::string> parameter_names()
{
    std::vector<std::string> names;
    for (const auto& d : descriptors()) {
        names.emplace_back(d.name);
    }
    return names;
}

bool is_parameter(std::string_view key)
{
    return find(key) != nullptr;
}

void set_parameter(Params& params, std::string_view key, std::string_view value)
{
    const Descriptor* d = find(key);
    if (!d) {
        throw ConfigError("unknown parameter '" + std::string(key) + "'");
    }
    value = trim(value);
    switch (d->kind) {
    case Kind::path:
        params.sim.output_dir = std::filesystem::path(std::string(value));
        return;
    case Kind::unsigned64: {
        std::uint64_t v = 0;
        auto [ptr, ec]  = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
            throw ConfigError("parameter '" + std::string(key) + "' expects an unsigned 64-bit integer, got '" +
                              std::string(value) + "'");
        }
        params.sim.seed = v;
        return;
    }
    case Kind::integer:
    case Kind::real: {
        double v = parse_number(key, value, d->kind);
        check_interval(*d, v);
        d->set_number(params, v);
        return;
    }
    }
}

std::string get_parameter(const Params& params, std::string_view key)
{
    const Descriptor* d = find(key);
    if (!d) {
        throw ConfigError("unknown parameter '" + std::string(key) + "'");
    }
    switch (d->kind) {
    case Kind::path:
        return params.sim.output_dir.string();
    case Kind::unsigned64:
        return std::to_string(params.sim.seed);
    case Kind::integer:
        return std::to_string(static_cast<long long>(d->get_number(params)));
    case Kind::real:
        return format_real(d->get_number(params));
    }
    return {};
}

void validate(const Params& params)
{
    for (const auto& d : descriptors()) {
        if (d.get_number) {
            check_interval(d, d.get_number(params));
        }
    }
    const auto& s = params.sim;
    if (s.num_regions != 1 && s.num_regions != 4 && s.num_regions != 7) {
        throw ConfigError("parameter 'num_regions' = " + std::to_string(s.num_regions) + " must be one of {1, 4, 7}");
    }
    if (s.num_dwellings <= s.num_families) {
        throw ConfigError("num_dwellings (" + std::to_string(s.num_dwellings) +
                          ") must be greater than num_families (" + std::to_string(s.num_families) + ")");
    }
    const auto& i = params.init;
    auto ordered = [](auto lo, auto hi, const char* what) {
        if (lo > hi) {
            throw ConfigError(std::string("initial range for ") + what + " has min > max");
        }
    };
    ordered(i.age_min, i.age_max, "age");
    ordered(i.qualification_min, i.qualification_max, "qualification");
    ordered(i.cash_min, i.cash_max, "cash");
    ordered(i.dwelling_size_min, i.dwelling_size_max, "dwelling size");
    ordered(i.sqm_value_min, i.sqm_value_max, "square meter value");
    ordered(i.firm_capital_min, i.firm_capital_max, "firm capital");
}

void apply_config_text(Params& params, std::string_view text, std::string_view origin)
{
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        set_parameter(params, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
    }
}

Params load_config(const std::filesystem::path& file, const std::vector<std::string>& overrides)
{
    Params params;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) {
            throw ConfigError("cannot open config file '" + file.string() + "'");
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        apply_config_text(params, buffer.str(), file.string());
    }
    for (const auto& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("override '" + kv + "' is not of the form key=value");
        }
        set_parameter(params, trim(std::string_view(kv).substr(0, eq)), std::string_view(kv).substr(eq + 1));
    }
    validate(params);
    return params;
}

std::string canonical_text(const Params& params)
{
    std::string out;
    for (const auto& d : descriptors()) {
        out += d.name;
        out += " = ";
        out += get_parameter(params, d.name);
        out += '\n';
    }
    return out;
}

std::string fingerprint(const Params& params)
{
    std::string out;
    for (const auto& d : descriptors()) {
        if (d.kind == Kind::path) {
            continue;
        }
        out += d.name;
        out += " = ";
        out += get_parameter(params, d.name);
        out += '\n';
    }
    out += "rng = ";
    out += RngStream::algorithm;
    out += '\n';
    return out;
}

} // namespace polisim
