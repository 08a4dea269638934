#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ontocell {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Binary NetPBM P5 (8-bit grayscale). Deterministic bytes for fixed input.
void write_pgm(const std::string& path, int width, int height,
               const std::vector<unsigned char>& pixels);

std::string pgm_bytes(int width, int height, const std::vector<unsigned char>& pixels);

/// 17-significant-digit decimal rendering, locale-independent.
std::string fmt_g17(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const std::string& bytes);

/// Exact rational p/q with q > 0, normalised.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Parses "p/q", "p" or a plain decimal ("0.5"); decimals are accepted only
/// when exactly representable with denominator <= 10^6.
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace ontocell
