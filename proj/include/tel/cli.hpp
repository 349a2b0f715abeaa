#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace tel::cli {

enum class Command { check, ground, facts, solve, stats };
enum class Format { text, json };

enum ExitCode : int { ok = 0, domain_error = 1, parse_error = 2, resource_cap = 3 };

struct RunConfig {
    Command command = Command::check;
    std::string input;
    bool baseline = false;
    bool strict_paper = false;
    std::vector<std::string> extension;
    std::size_t max_prefix = 2;
    std::size_t max_loop = 1;
    std::size_t node_limit = 5'000'000;
    Format format = Format::text;
};

/// Runs one command on the program text. Diagnostics go to err.
int run_text(const RunConfig& config, const std::string& text, std::ostream& out, std::ostream& err);

/// Reads config.input, then run_text.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Command-line entry point.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace tel::cli
