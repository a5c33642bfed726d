#include "bregpnp/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

#include "bregpnp/errors.hpp"

namespace bregpnp {

Image LoadedImage::raw() const {
    Image out = image;
    for (double& v : out.values()) v = std::round(v * maxval);
    return out;
}

namespace {

bool has_suffix(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(),
                      [](char a, char b) { return std::tolower(a) == std::tolower(b); });
}

unsigned long read_pnm_token(std::istream& in, const std::string& path) {
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (!std::isspace(ch)) {
            break;
        }
        ch = in.get();
    }
    if (ch == EOF || !std::isdigit(ch)) throw IoError("malformed PGM header in " + path);
    unsigned long value = 0;
    while (ch != EOF && std::isdigit(ch)) {
        value = value * 10 + static_cast<unsigned long>(ch - '0');
        ch = in.get();
    }
    // The single whitespace after the last header token is consumed here.
    return value;
}

LoadedImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) {
        throw IoError(path + " is not a P2/P5 PGM file");
    }
    const bool binary = magic[1] == '5';
    const unsigned long width = read_pnm_token(in, path);
    const unsigned long height = read_pnm_token(in, path);
    const unsigned long maxval = read_pnm_token(in, path);
    if (width == 0 || height == 0 || maxval == 0 || maxval > 65535) {
        throw IoError("unsupported PGM header in " + path);
    }
    std::vector<double> data(width * height);
    if (binary) {
        const std::size_t bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> buf(data.size() * bytes);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (static_cast<std::size_t>(in.gcount()) != buf.size()) throw IoError("truncated PGM " + path);
        for (std::size_t i = 0; i < data.size(); ++i) {
            const unsigned v = bytes == 2 ? (unsigned(buf[2 * i]) << 8) | buf[2 * i + 1] : buf[i];
            data[i] = static_cast<double>(v);
        }
    } else {
        for (double& v : data) {
            unsigned long s = 0;
            in >> s;
            if (!in) throw IoError("truncated PGM " + path);
            v = static_cast<double>(s);
        }
    }
    for (double& v : data) {
        if (v > static_cast<double>(maxval)) throw IoError("sample exceeds maxval in " + path);
        v /= static_cast<double>(maxval);
    }
    return {Image(Shape{width, height}, std::move(data)), static_cast<unsigned>(maxval)};
}

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

LoadedImage load_png(const std::string& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw IoError("cannot open " + path);
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng initialisation failed");
    }
    std::vector<png_bytep> rows;
    std::vector<unsigned char> pixels;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("corrupt PNG " + path);
    }
    png_init_io(png, file.get());
    png_read_info(png, info);
    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int color = png_get_color_type(png, info);
    int depth = png_get_bit_depth(png, info);
    if (color != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": only grayscale PNG without alpha is supported");
    }
    if (depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
        depth = 8;
    }
    png_read_update_info(png, info);
    const std::size_t bytes = depth == 16 ? 2 : 1;
    pixels.resize(std::size_t(width) * height * bytes);
    rows.resize(height);
    for (png_uint_32 r = 0; r < height; ++r) rows[r] = pixels.data() + std::size_t(r) * width * bytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    const unsigned maxval = depth == 16 ? 65535u : 255u;
    std::vector<double> data(std::size_t(width) * height);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const unsigned v = bytes == 2 ? (unsigned(pixels[2 * i]) << 8) | pixels[2 * i + 1] : pixels[i];
        data[i] = static_cast<double>(v) / maxval;
    }
    return {Image(Shape{width, height}, std::move(data)), maxval};
}

std::vector<unsigned> quantize(const Image& image, unsigned maxval) {
    std::vector<unsigned> out(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
        const double v = std::clamp(image[i], 0.0, 1.0);
        out[i] = static_cast<unsigned>(std::lround(v * maxval));
    }
    return out;
}

void write_pgm(const std::string& path, std::size_t width, std::size_t height,
               const std::vector<unsigned>& samples, unsigned maxval) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P5\n" << width << " " << height << "\n" << maxval << "\n";
    std::vector<unsigned char> buf;
    buf.reserve(samples.size() * 2);
    for (unsigned v : samples) {
        if (maxval > 255) buf.push_back(static_cast<unsigned char>(v >> 8));
        buf.push_back(static_cast<unsigned char>(v & 0xff));
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("failed writing " + path);
}

void write_png(const std::string& path, std::size_t width, std::size_t height,
               const std::vector<unsigned>& samples, int bits) {
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw IoError("cannot write " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng initialisation failed");
    }
    const std::size_t bytes = bits == 16 ? 2 : 1;
    std::vector<unsigned char> pixels(samples.size() * bytes);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (bytes == 2) {
            pixels[2 * i] = static_cast<unsigned char>(samples[i] >> 8);
            pixels[2 * i + 1] = static_cast<unsigned char>(samples[i] & 0xff);
        } else {
            pixels[i] = static_cast<unsigned char>(samples[i]);
        }
    }
    std::vector<png_bytep> rows(height);
    for (std::size_t r = 0; r < height; ++r) rows[r] = pixels.data() + r * width * bytes;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed writing PNG " + path);
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), bits,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace

LoadedImage load_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError("cannot open " + path);
    unsigned char sig[8] = {0};
    probe.read(reinterpret_cast<char*>(sig), 8);
    probe.close();
    if (png_sig_cmp(sig, 0, 8) == 0) return load_png(path);
    return load_pgm(path);
}

void save_image(const std::string& path, const Image& image, int bits) {
    if (bits != 8 && bits != 16) throw IoError("only 8 or 16 bit output is supported");
    const unsigned maxval = bits == 16 ? 65535u : 255u;
    const auto samples = quantize(image, maxval);
    if (has_suffix(path, ".png")) {
        write_png(path, image.width(), image.height(), samples, bits);
    } else {
        write_pgm(path, image.width(), image.height(), samples, maxval);
    }
}

void save_counts_pgm(const std::string& path, const Image& counts) {
    std::vector<unsigned> samples(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double v = counts[i];
        if (!(v >= 0.0 && v <= 65535.0) || v != std::floor(v)) {
            throw IoError("count image holds a value that is not an integer in [0, 65535]");
        }
        samples[i] = static_cast<unsigned>(v);
    }
    write_pgm(path, counts.width(), counts.height(), samples, 65535u);
}

} // namespace bregpnp
