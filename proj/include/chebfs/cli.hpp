#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it with in-memory streams.
//
// Exit codes: 0 success, 1 domain or accuracy error (JSON {"error", "message"}
// on the error stream), 2 usage error.

#include <ostream>
#include <string>
#include <vector>

#include "chebfs/json_io.hpp"
#include "chebfs/linalg_hermitian.hpp"

namespace chebfs {

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Matrix argument: "identityN", "diag:a,b,...", "cosh:t" (the counterexample
// path at time t) or a path to a matrix JSON file.
PosDefHermitian resolve_matrix(const std::string& spec);

// Path argument: "counterexample" or a path to a path JSON file.
FSGeodesicPath resolve_path(const std::string& spec);

// "0,0.5,1" or "a:b:k" for k uniform points from a to b inclusive.
std::vector<double> parse_times(const std::string& spec);

std::vector<double> parse_reals(const std::string& spec);

// Full counterexample pipeline report.
Json counterexample_report();

}  // namespace chebfs
