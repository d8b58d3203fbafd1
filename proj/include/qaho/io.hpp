#pragma once
// File and formatting helpers shared by the CLI and exporters.

#include <filesystem>
#include <string>

namespace qaho::io {

// Fixed-precision decimal with trailing-zero trimming (but never "1." forms);
// the single formatter used by every CSV so artifacts are byte-stable.
std::string format_double(double v, int precision = 12);

// Write via a sibling temp file + rename so failures leave no partial file.
void atomic_write(const std::filesystem::path& path, const std::string& text);

}  // namespace qaho::io
