#include "mvd/ppm.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mvd {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error("ppm: " + what + " in '" + path + "'");
}

// Token reader with '#' comment support.
std::string next_token(const std::string& buf, size_t& pos, const std::string& path) {
    while (pos < buf.size()) {
        if (buf[pos] == '#') {
            while (pos < buf.size() && buf[pos] != '\n') ++pos;
        } else if (std::isspace(static_cast<unsigned char>(buf[pos]))) {
            ++pos;
        } else {
            break;
        }
    }
    std::string tok;
    while (pos < buf.size() && !std::isspace(static_cast<unsigned char>(buf[pos]))) tok += buf[pos++];
    if (tok.empty()) fail(path, "truncated header");
    return tok;
}

}  // namespace

Image read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string buf = ss.str();

    size_t pos = 0;
    const std::string magic = next_token(buf, pos, path);
    if (magic != "P6") fail(path, "bad magic '" + magic + "' (expected 'P6')");
    int w = 0, h = 0, maxval = 0;
    try {
        w = std::stoi(next_token(buf, pos, path));
        h = std::stoi(next_token(buf, pos, path));
        maxval = std::stoi(next_token(buf, pos, path));
    } catch (const std::exception&) {
        fail(path, "bad header numbers");
    }
    if (w <= 0 || h <= 0) fail(path, "non-positive dimensions");
    if (maxval != 255) fail(path, "maxval " + std::to_string(maxval) + " (expected 255)");
    ++pos;  // single whitespace after maxval

    const size_t need = static_cast<size_t>(w) * h * 3;
    if (buf.size() - pos < need) fail(path, "truncated payload");

    Image img(w, h, 3);
    for (size_t i = 0; i < need; ++i)
        img.data[i] = static_cast<unsigned char>(buf[pos + i]) / 255.0f;
    return img;
}

void write_ppm(const std::string& path, const Image& img) {
    if (img.empty() || img.channels != 3)
        throw std::runtime_error("ppm: need a non-empty 3-channel image for '" + path + "'");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("ppm: cannot open '" + path + "' for writing");
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    std::vector<char> bytes(img.data.size());
    for (size_t i = 0; i < img.data.size(); ++i) {
        const long q = std::lround(static_cast<double>(img.data[i]) * 255.0);
        bytes[i] = static_cast<char>(static_cast<unsigned char>(std::min(255L, std::max(0L, q))));
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("ppm: short write to '" + path + "'");
}

}  // namespace mvd
