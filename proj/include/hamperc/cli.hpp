#ifndef HAMPERC_CLI_HPP
#define HAMPERC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hamperc::cli {

inline constexpr char const* kVersion = "0.1.0";

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputDomain = 1;
inline constexpr int kCapability = 2;
inline constexpr int kDiagnostic = 3;

// args excludes the program name. Documents go to `out` (or --out FILE),
// messages to `err`.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

struct SelftestOptions
{
    // "u-binom" replaces the binomial inside U with an off-by-one variant.
    std::string fault;
    std::uint64_t seed = 1;
};

// Prints one PASS/FAIL/SKIP line per check. Returns kOk or kDiagnostic.
int selftest(SelftestOptions const& opts, std::ostream& out);

} // namespace hamperc::cli

#endif
