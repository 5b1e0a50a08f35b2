#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace lifts::cli
{
    enum ExitCode : int
    {
        yes = 0,
        no = 1,
        error = 2
    };

    struct CommandResult
    {
        int exit_code = yes;
        std::string human;
        nlohmann::json machine = nlohmann::json::object();
    };

    /// Runs one command line (without the program name); returns the exit code.
    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
