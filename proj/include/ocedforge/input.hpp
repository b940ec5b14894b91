#pragma once

#include <string>
#include <string_view>

namespace ocedforge {

/// True when the buffer starts with the gzip magic bytes.
bool is_gzip(std::string_view bytes);

/// Inflates a gzip stream. Throws IoError on corrupt input.
std::string gunzip(std::string_view bytes);

/// Reads a whole file (or standard input for "-") and transparently
/// decompresses gzip content. Throws IoError when the source is unreadable.
std::string read_input(const std::string& path);

} // namespace ocedforge
