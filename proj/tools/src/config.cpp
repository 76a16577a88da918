#include "aqc_cli/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "aqc/csv_io.hpp"
#include "aqc/errors.hpp"

namespace aqc::cli {

namespace {

constexpr std::array kKeys = {
    KeySpec{"delta-max", KeyType::Number, "1", "maximal gap (energy unit)"},
    KeySpec{"delta-min", KeyType::Number, "0.01", "minimal gap at tau-star"},
    KeySpec{"tau-star", KeyType::Number, "10", "time of the gap minimum"},
    KeySpec{"gamma", KeyType::Number, "0.02", "relaxation rate eta0/m0 of the ohmic bath"},
    KeySpec{"gamma-tau", KeyType::Number, "", "sets gamma = gamma-tau / tau-star (overrides gamma)"},
    KeySpec{"kT", KeyType::Number, "1", "bath temperature"},
    KeySpec{"t-end", KeyType::Number, "", "final time (default 2 tau-star)"},
    KeySpec{"grid", KeyType::Count, "1000", "number of uniform output times"},
    KeySpec{"rtol", KeyType::Number, "1e-9", "relative tolerance of the stepper"},
    KeySpec{"atol", KeyType::Number, "1e-12", "absolute tolerance of the stepper"},
    KeySpec{"cutoff", KeyType::Count, "", "fixed Fock cutoff (disables automatic doubling)"},
    KeySpec{"generalized-R", KeyType::Boolean, "true", "R = gamma kT tau/(delta-max - delta-min)"},
    KeySpec{"format", KeyType::Choice, "csv", "output format", "csv|json"},
    KeySpec{"out", KeyType::Text, "", "output path (default stdout)"},
    KeySpec{"summary", KeyType::Text, "", "also write a JSON summary to this path"},
    KeySpec{"schedule", KeyType::Choice, "landau-zener", "gap schedule kind",
            "landau-zener|constant|tabulated"},
    KeySpec{"delta", KeyType::Number, "", "gap of a constant schedule (default delta-max)"},
    KeySpec{"schedule-file", KeyType::Text, "", "CSV (time, energy) for a tabulated schedule"},
    KeySpec{"mass", KeyType::Number, "1", "constant oscillator mass"},
    KeySpec{"mass-file", KeyType::Text, "", "CSV (time, mass) for a tabulated mass"},
    KeySpec{"bath", KeyType::Choice, "ohmic", "spectral density kind", "ohmic|power-law|tabulated"},
    KeySpec{"bath-prefactor", KeyType::Number, "1", "power-law amplitude"},
    KeySpec{"bath-exponent", KeyType::Number, "1", "power-law exponent s"},
    KeySpec{"bath-cutoff", KeyType::Number, "", "power-law hard cutoff (default none)"},
    KeySpec{"bath-file", KeyType::Text, "", "CSV (omega, J) for a tabulated spectrum"},
    KeySpec{"occupation", KeyType::Choice, "bose-einstein", "target occupation N(t)",
            "bose-einstein|high-temperature"},
    KeySpec{"regime", KeyType::Choice, "example1", "closed-form approximation",
            "example1|example2"},
    KeySpec{"input", KeyType::Text, "", "fit input CSV with header kT,pg or R,pg"},
    KeySpec{"table1", KeyType::Boolean, "false", "refit the embedded exact-cover dataset"},
    KeySpec{"alpha", KeyType::Number, "", "fitting prefactor for predict"},
    KeySpec{"values", KeyType::Text, "", "comma-separated R or kT values for predict"},
    KeySpec{"by", KeyType::Choice, "R", "meaning of predict values", "R|kT"},
    KeySpec{"gap-scale", KeyType::Number, "1", "spectrum scaling factor applied before R"},
    KeySpec{"gap-scaling", KeyType::Choice, "uniform", "which gaps gap-scale shrinks",
            "uniform|max-only"},
    KeySpec{"sweep", KeyType::List, "", "axis key=min:max:count (repeatable, up to 3)"},
    KeySpec{"threads", KeyType::Count, "1", "sweep worker threads (0: all cores)"},
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

bool allowed_choice(std::string_view choices, std::string_view value) {
    std::size_t start = 0;
    while (start <= choices.size()) {
        const auto bar = choices.find('|', start);
        const auto piece = choices.substr(start, bar == std::string_view::npos ? bar : bar - start);
        if (piece == value) return true;
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return false;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
    const std::string t = trim(text);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw InputError("'" + std::string(key) + "' expects a non-negative integer, got '" +
                         std::string(text) + "'");
    }
    return v;
}

void check_value(const KeySpec& spec, const std::string& value) {
    switch (spec.type) {
        case KeyType::Number:
            try {
                io::parse_double(value);
            } catch (const InputError&) {
                throw InputError("'" + std::string(spec.name) + "' expects a finite number, got '" +
                                 value + "'");
            }
            break;
        case KeyType::Count:
            parse_count(spec.name, value);
            break;
        case KeyType::Boolean:
            try {
                parse_boolean(value);
            } catch (const InputError&) {
                throw InputError("'" + std::string(spec.name) + "' expects true or false, got '" +
                                 value + "'");
            }
            break;
        case KeyType::Choice:
            if (!allowed_choice(spec.choices, value)) {
                throw InputError("'" + std::string(spec.name) + "' must be one of " +
                                 std::string(spec.choices) + ", got '" + value + "'");
            }
            break;
        case KeyType::Text:
        case KeyType::List:
            break;
    }
}

const KeySpec& require_key(std::string_view name) {
    const KeySpec* spec = find_key(name);
    if (!spec) throw InputError("unknown configuration key '" + std::string(name) + "'");
    return *spec;
}

}  // namespace

std::span<const KeySpec> known_keys() { return kKeys; }

const KeySpec* find_key(std::string_view name) {
    for (const auto& k : kKeys) {
        if (k.name == name) return &k;
    }
    return nullptr;
}

bool parse_boolean(std::string_view text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw InputError("expected a boolean, got '" + t + "'");
}

void RunConfig::set(const std::string& key, const std::string& value) {
    const auto& spec = require_key(key);
    if (spec.type == KeyType::List) {
        lists_[key] = {trim(value)};
        return;
    }
    const std::string v = trim(value);
    check_value(spec, v);
    values_[key] = v;
}

void RunConfig::append(const std::string& key, const std::string& value) {
    const auto& spec = require_key(key);
    if (spec.type != KeyType::List) throw InputError("'" + key + "' takes a single value");
    lists_[key].push_back(trim(value));
}

void RunConfig::load(std::istream& in, const std::string& origin) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto hash = body.find(" #");
        if (hash != std::string::npos) body = trim(body.substr(0, hash));
        const auto eq = body.find('=');
        const std::string where = origin + ":" + std::to_string(number);
        if (eq == std::string::npos) throw InputError(where + ": expected 'key = value'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        try {
            const auto& spec = require_key(key);
            if (spec.type == KeyType::List) {
                append(key, value);
            } else {
                if (values_.contains(key)) throw InputError("duplicate key '" + key + "'");
                set(key, value);
            }
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        }
    }
}

void RunConfig::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file " + path.string());
    load(in, path.string());
}

void RunConfig::overlay(const RunConfig& other) {
    for (const auto& [k, v] : other.values_) values_[k] = v;
    for (const auto& [k, v] : other.lists_) lists_[k] = v;
}

const std::string* RunConfig::raw(std::string_view key) const {
    const auto it = values_.find(key);
    if (it != values_.end()) return &it->second;
    return nullptr;
}

bool RunConfig::has(std::string_view key) const {
    return raw(key) != nullptr || lists_.contains(key);
}

std::optional<double> RunConfig::optional_number(std::string_view key) const {
    const auto& spec = require_key(key);
    if (const auto* v = raw(key)) return io::parse_double(*v);
    if (!spec.fallback.empty()) return io::parse_double(spec.fallback);
    return std::nullopt;
}

double RunConfig::number(std::string_view key) const {
    const auto v = optional_number(key);
    if (!v) throw InputError("missing required value '" + std::string(key) + "'");
    return *v;
}

std::size_t RunConfig::count(std::string_view key) const {
    const auto& spec = require_key(key);
    if (const auto* v = raw(key)) return parse_count(key, *v);
    if (spec.fallback.empty()) throw InputError("missing required value '" + std::string(key) + "'");
    return parse_count(key, spec.fallback);
}

bool RunConfig::boolean(std::string_view key) const {
    const auto& spec = require_key(key);
    if (const auto* v = raw(key)) return parse_boolean(*v);
    return parse_boolean(spec.fallback);
}

std::optional<std::string> RunConfig::optional_text(std::string_view key) const {
    const auto& spec = require_key(key);
    if (const auto* v = raw(key)) return *v;
    if (!spec.fallback.empty()) return std::string(spec.fallback);
    return std::nullopt;
}

std::string RunConfig::text(std::string_view key) const {
    const auto v = optional_text(key);
    if (!v) throw InputError("missing required value '" + std::string(key) + "'");
    return *v;
}

std::vector<std::string> RunConfig::list(std::string_view key) const {
    const auto it = lists_.find(key);
    return it == lists_.end() ? std::vector<std::string>{} : it->second;
}

}  // namespace aqc::cli
