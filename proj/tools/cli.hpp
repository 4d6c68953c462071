#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stringss/analysis.hpp"

namespace stringss::cli {

enum class Format { Text, Csv, Json };

struct RunConfig {
    Variant variant = Variant::Loop;
    int n = 1;
    Field field = Field::rational();
    std::vector<int> components;
    int cutoff = 30;
    std::optional<int> generator_cutoff;
    Grading grading = Grading::Ordinary;
    Format format = Format::Text;
    std::optional<std::string> output;
    bool series = false;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kComputeError = 3;
inline constexpr int kIoError = 4;

/// "q" or "f<p>".
Field parse_field(const std::string& spec);

/// "a..b", "a,b,c" or a single integer.
std::vector<int> parse_components(const std::string& spec);

std::string render_json(const BettiTable& table, bool with_series);
std::string render_csv(const BettiTable& table);
std::string render_text(const BettiTable& table, bool with_series);

/// Runs the command line (argv without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stringss::cli
