// Command-line front end. run() is the whole program minus process plumbing,
// so tests can drive it with in-memory streams.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rabiring::cli {

enum ExitCode : int { Success = 0, BadArguments = 2, SolverFailure = 3, IoFailure = 4 };

/// args excludes the program name. Data goes to --out or, without it, to out;
/// errors are written to err as a single JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "0.49pi", "-pi", "pi/2", "1.2" -> radians (plain numbers are taken as is).
double parse_angle(const std::string& text);

/// "lo:hi:count", endpoints inclusive, each endpoint parsed with parse_angle.
std::vector<double> parse_grid(const std::string& text);

}  // namespace rabiring::cli
