#pragma once

#include <string>

#include "mvd/image.hpp"

namespace mvd {

// Grayscale PFM ("Pf"): header line "Pf", line "W H", line scale, then
// H rows of W 32-bit floats stored bottom-to-top. A negative scale marks a
// little-endian payload. The scale magnitude is not applied to the values.
// Payload float bits pass through untouched, so write(read(f)) is
// bit-identical for any finite payload including -0.0 and subnormals.
DepthMap read_pfm(const std::string& path);
void write_pfm(const std::string& path, const DepthMap& map);

}  // namespace mvd
