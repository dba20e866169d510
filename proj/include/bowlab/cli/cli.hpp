#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bowlab::cli {

inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

// Runs one command line (args[0] is the program name). Output goes to `out`,
// diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Built-in examples; one PASS/FAIL line each. Returns kOk when all pass.
int selftest(std::uint64_t seed, std::ostream& out);

// "1.5", "-2i", "1+2i", "0.5-3e-2i"; throws std::invalid_argument.
std::complex<double> parse_complex(const std::string& text);
std::vector<std::complex<double>> parse_complex_list(const std::string& text);
// Integers or fractions "p/q", scaled to a common denominator.
std::vector<long long> parse_theta_list(const std::string& text);

}  // namespace bowlab::cli
