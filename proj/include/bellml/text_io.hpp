#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellml {

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric output convention: 12 significant digits for data and metrics
// files, 17 (round-trip exact) for model weights and plan axes.
std::string fmt_g12(double v);
std::string fmt_g17(double v);

double parse_double(const std::string& token, const std::string& context);
long long parse_int(const std::string& token, const std::string& context);

std::vector<std::string> split_ws(const std::string& line);

// Writes content to path via a temp file in the same directory followed by a
// rename, so a re-run over an existing file is atomic.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// FNV-1a over a byte string; used for config hashes and row digests.
std::uint64_t fnv1a(const std::string& bytes);

std::string to_hex(std::uint64_t value);

}  // namespace bellml
