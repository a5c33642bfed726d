#pragma once

#include <string>

#include "bregpnp/image.hpp"

namespace bregpnp {

struct LoadedImage {
    Image image;          ///< intensities mapped linearly to [0, 1]
    unsigned maxval = 0;  ///< integer full-scale value of the file (255, 65535, ...)

    /// Integer sample values as stored in the file.
    Image raw() const;
};

/// Reads PGM (P2/P5) or 8/16-bit grayscale PNG, chosen by file contents.
LoadedImage load_image(const std::string& path);

/// Writes `image` (values in [0, 1], clipped) as PGM or PNG depending on the extension.
/// `bits` is 8 or 16.
void save_image(const std::string& path, const Image& image, int bits = 8);

/// Writes nonnegative integer-valued samples verbatim as a 16-bit binary PGM.
/// Throws IoError when a value is not an integer in [0, 65535].
void save_counts_pgm(const std::string& path, const Image& counts);

} // namespace bregpnp
