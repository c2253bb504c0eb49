#pragma once
#include <string>

#include "gestrec/image.hpp"

namespace gestrec {

// Binary PGM (P5) / PPM (P6), maxval 255. Masks are stored as 0/255 PGM.
Image read_pnm(const std::string& path);
void write_pnm(const Image& img, const std::string& path);

BinaryMask read_mask(const std::string& path);
void write_mask(const BinaryMask& mask, const std::string& path);

} // namespace gestrec
