#include "gestrec/pnm.hpp"

#include <fstream>

namespace gestrec {

namespace {

// Reads the next token, skipping whitespace and # comment lines.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) continue;
        tok.push_back(static_cast<char>(c));
        while ((c = in.get()) != EOF && !std::isspace(c) && c != '#') tok.push_back(static_cast<char>(c));
        if (c == '#') in.unget();
        break;
    }
    return tok;
}

int parse_int(std::istream& in, const std::string& what, const std::string& path) {
    std::string tok = next_token(in);
    if (tok.empty()) throw ParseError(path + ": missing " + what);
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(path + ": bad " + what + " '" + tok + "'");
    }
}

} // namespace

Image read_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open");

    std::string magic = next_token(in);
    int channels;
    if (magic == "P5")
        channels = 1;
    else if (magic == "P6")
        channels = 3;
    else
        throw ParseError(path + ": unsupported magic '" + magic + "' (want P5 or P6)");

    int w = parse_int(in, "width", path);
    int h = parse_int(in, "height", path);
    // The token scan consumes the single whitespace byte that separates the
    // maxval from the binary samples.
    int maxval = parse_int(in, "maxval", path);
    if (w < 1 || h < 1) throw ParseError(path + ": bad dimensions");
    if (maxval != 255) throw ParseError(path + ": only maxval 255 is supported");

    Image img(w, h, channels, channels == 3 ? Colorspace::RGB : Colorspace::Gray);
    in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.data.size())
        throw ParseError(path + ": truncated pixel data");
    return img;
}

void write_pnm(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << (img.channels == 3 ? "P6" : "P5") << "\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
    if (!out) throw ParseError(path + ": write failed");
}

BinaryMask read_mask(const std::string& path) {
    Image img = read_pnm(path);
    if (img.channels != 1) throw ParseError(path + ": mask must be a P5 gray image");
    BinaryMask mask(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) mask.bits[i] = img.data[i] >= 128 ? 1 : 0;
    return mask;
}

void write_mask(const BinaryMask& mask, const std::string& path) {
    Image img(mask.width, mask.height, 1, Colorspace::Gray);
    for (std::size_t i = 0; i < mask.bits.size(); ++i) img.data[i] = mask.bits[i] ? 255 : 0;
    write_pnm(img, path);
}

} // namespace gestrec
