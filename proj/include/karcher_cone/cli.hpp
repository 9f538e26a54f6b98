#ifndef KARCHER_CONE_CLI_HPP
#define KARCHER_CONE_CLI_HPP

#include <cstdint>
#include <iosfwd>

namespace karcher_cone::cli {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_not_converged = 2;

/// Entry point of `karcher-cone <mean|distance|barycenter|approx|verify>`.
/// The result document goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

/// --seed when given, else $KARCHER_CONE_SEED, else the built-in default.
std::uint64_t resolve_seed(const std::uint64_t* flag);

}  // namespace karcher_cone::cli

#endif  // KARCHER_CONE_CLI_HPP
