#pragma once

#include <string>

#include "mvd/image.hpp"

namespace mvd {

// Binary PPM (P6) with maxval 255. Bytes map to [0,1] as v/255.
Image read_ppm(const std::string& path);
void write_ppm(const std::string& path, const Image& img);

}  // namespace mvd
