// Command layer behind henkin-forge.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace henkin {

struct RunConfig {
    std::string command;  // check | extract | roundtrip | nbe | info
    std::string engine = "core";
    std::optional<std::string> theory_file;
    std::optional<std::string> formula;
    std::optional<std::string> proof_file;
    std::optional<std::string> witness;
    bool trace = false;
    std::string format = "tree";  // tree | term
    std::size_t max_replays = 1024;
};

// Exit status: 0 when the final checker verdict succeeds, 1 when checking or
// extraction fails, 2 on malformed input.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace henkin
