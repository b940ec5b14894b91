#include "ocedforge/input.hpp"

#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ocedforge/error.hpp"

namespace ocedforge {

bool is_gzip(std::string_view bytes) {
    return bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
           static_cast<unsigned char>(bytes[1]) == 0x8b;
}

std::string gunzip(std::string_view bytes) {
    z_stream zs{};
    // 16 + MAX_WBITS: expect a gzip header.
    if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) {
        throw IoError("cannot initialise gzip decoder");
    }
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
    zs.avail_in = static_cast<uInt>(bytes.size());

    std::string out;
    char buf[64 * 1024];
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof buf;
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw IoError(std::string("corrupt gzip stream: ") + (zs.msg ? zs.msg : "truncated input"));
        }
        out.append(buf, sizeof buf - zs.avail_out);
        if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
            inflateEnd(&zs);
            throw IoError("corrupt gzip stream: truncated input");
        }
    }
    inflateEnd(&zs);
    return out;
}

std::string read_input(const std::string& path) {
    std::string bytes;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        bytes = std::move(ss).str();
    } else {
        std::error_code ec;
        if (std::filesystem::is_directory(path, ec)) {
            throw IoError("'" + path + "' is a directory");
        }
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw IoError("cannot open '" + path + "'");
        }
        bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        if (in.bad()) {
            throw IoError("cannot read '" + path + "'");
        }
    }
    return is_gzip(bytes) ? gunzip(bytes) : bytes;
}

} // namespace ocedforge
