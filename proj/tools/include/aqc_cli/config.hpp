// config.hpp: flat key = value run configuration shared by all subcommands

#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aqc::cli {

enum class KeyType { Number, Count, Boolean, Text, Choice, List };

struct KeySpec {
    std::string_view name;
    KeyType type;
    std::string_view fallback;  // empty: no default
    std::string_view help;
    std::string_view choices = {};  // '|'-separated, for KeyType::Choice
};

// Every key accepted in a config file or as a --flag.
std::span<const KeySpec> known_keys();
const KeySpec* find_key(std::string_view name);

class RunConfig {
public:
    // Validates the key and the value's type; throws InputError.
    void set(const std::string& key, const std::string& value);
    void append(const std::string& key, const std::string& value);  // List keys

    // Config file: one "key = value" per line, '#' comments, blank lines.
    // Keys may appear once, except list keys.
    void load(std::istream& in, const std::string& origin);
    void load_file(const std::filesystem::path& path);

    // Later settings win; list keys are replaced as a whole.
    void overlay(const RunConfig& other);

    bool has(std::string_view key) const;
    double number(std::string_view key) const;
    std::optional<double> optional_number(std::string_view key) const;
    std::size_t count(std::string_view key) const;
    bool boolean(std::string_view key) const;
    std::string text(std::string_view key) const;
    std::optional<std::string> optional_text(std::string_view key) const;
    std::vector<std::string> list(std::string_view key) const;

private:
    const std::string* raw(std::string_view key) const;

    std::map<std::string, std::string, std::less<>> values_;
    std::map<std::string, std::vector<std::string>, std::less<>> lists_;
};

bool parse_boolean(std::string_view text);

}  // namespace aqc::cli
