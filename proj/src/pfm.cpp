#include "mvd/pfm.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mvd {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error("pfm: " + what + " in '" + path + "'");
}

uint32_t swap32(uint32_t v) {
    return (v >> 24) | ((v >> 8) & 0x0000ff00u) | ((v << 8) & 0x00ff0000u) | (v << 24);
}

constexpr bool host_little_endian() { return std::endian::native == std::endian::little; }

// Reads one whitespace-terminated token; the terminating byte is consumed.
std::string next_token(const std::string& buf, size_t& pos, const std::string& path,
                       const char* field) {
    std::string tok;
    while (pos < buf.size() && !std::isspace(static_cast<unsigned char>(buf[pos]))) tok += buf[pos++];
    if (tok.empty() || pos >= buf.size()) fail(path, std::string("truncated header at ") + field);
    ++pos;  // single whitespace separator
    return tok;
}

}  // namespace

DepthMap read_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string buf = ss.str();

    size_t pos = 0;
    const std::string magic = next_token(buf, pos, path, "magic");
    if (magic != "Pf") fail(path, "bad magic '" + magic + "' (expected 'Pf')");

    const std::string ws = next_token(buf, pos, path, "width");
    const std::string hs = next_token(buf, pos, path, "height");
    int w = 0, h = 0;
    try {
        w = std::stoi(ws);
        h = std::stoi(hs);
    } catch (const std::exception&) {
        fail(path, "bad dimensions '" + ws + " " + hs + "'");
    }
    if (w <= 0 || h <= 0) fail(path, "non-positive dimensions");

    const std::string scale_s = next_token(buf, pos, path, "scale");
    double scale = 0.0;
    try {
        scale = std::stod(scale_s);
    } catch (const std::exception&) {
        fail(path, "unparseable scale '" + scale_s + "'");
    }
    if (!std::isfinite(scale)) fail(path, "non-finite scale");
    if (scale == 0.0) fail(path, "zero scale");
    const bool file_little = scale < 0.0;

    const size_t need = static_cast<size_t>(w) * h * 4;
    if (buf.size() - pos < need)
        fail(path, "truncated payload (need " + std::to_string(need) + " bytes, got " +
                       std::to_string(buf.size() - pos) + ")");

    DepthMap map(w, h);
    const bool swap = file_little != host_little_endian();
    // Rows are stored bottom-to-top.
    for (int row = 0; row < h; ++row) {
        const int y = h - 1 - row;
        for (int x = 0; x < w; ++x) {
            uint32_t bits;
            std::memcpy(&bits, buf.data() + pos, 4);
            pos += 4;
            if (swap) bits = swap32(bits);
            map.at(y, x) = static_cast<double>(std::bit_cast<float>(bits));
        }
    }
    return map;
}

void write_pfm(const std::string& path, const DepthMap& map) {
    if (map.empty()) throw std::runtime_error("pfm: refusing to write empty map to '" + path + "'");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("pfm: cannot open '" + path + "' for writing");

    char header[64];
    const double scale = host_little_endian() ? -1.0 : 1.0;
    const int n = std::snprintf(header, sizeof(header), "Pf\n%d %d\n%.4f\n", map.width, map.height, scale);
    out.write(header, n);

    std::vector<char> row(static_cast<size_t>(map.width) * 4);
    for (int r = map.height - 1; r >= 0; --r) {
        for (int x = 0; x < map.width; ++x) {
            const float v = static_cast<float>(map.at(r, x));
            std::memcpy(row.data() + static_cast<size_t>(x) * 4, &v, 4);
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw std::runtime_error("pfm: short write to '" + path + "'");
}

}  // namespace mvd
