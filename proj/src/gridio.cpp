#include "lqg/gridio.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace lqg {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_grid_file(const std::string& path, const GridSpec& grid,
                     std::span<const double> values) {
    if (values.size() != grid.size()) throw std::invalid_argument("value/grid shape mismatch");
    std::vector<std::uint8_t> out;
    out.reserve(16 + values.size() * 8);
    put_u32(out, grid_file_magic);
    put_u32(out, static_cast<std::uint32_t>(grid.n));
    std::uint64_t sp;
    std::memcpy(&sp, &grid.spacing, 8);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>((sp >> (8 * b)) & 0xff));
    for (double v : values) {
        std::uint64_t u;
        std::memcpy(&u, &v, 8);
        for (int b = 0; b < 8; ++b)
            out.push_back(static_cast<std::uint8_t>((u >> (8 * b)) & 0xff));
    }
    write_bytes(path, out);
}

GridFileData read_grid_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::array<std::uint8_t, 16> header{};
    f.read(reinterpret_cast<char*>(header.data()), 16);
    if (!f) throw std::runtime_error("truncated grid file: " + path);
    auto get_u32 = [&](int off) {
        return static_cast<std::uint32_t>(header[off]) |
               (static_cast<std::uint32_t>(header[off + 1]) << 8) |
               (static_cast<std::uint32_t>(header[off + 2]) << 16) |
               (static_cast<std::uint32_t>(header[off + 3]) << 24);
    };
    if (get_u32(0) != grid_file_magic) throw std::runtime_error("bad magic in " + path);
    const int n = static_cast<int>(get_u32(4));
    std::uint64_t sp = 0;
    for (int b = 0; b < 8; ++b) sp |= static_cast<std::uint64_t>(header[8 + b]) << (8 * b);
    double spacing;
    std::memcpy(&spacing, &sp, 8);

    GridFileData out;
    out.grid = build_grid(n, 0.5 * n * spacing);
    out.values.resize(out.grid.size());
    f.read(reinterpret_cast<char*>(out.values.data()),
           static_cast<std::streamsize>(out.values.size() * 8));
    if (!f) throw std::runtime_error("truncated grid data: " + path);
    return out;
}

void write_cell_csv(const std::string& path, const GridSpec& grid,
                    std::span<const double> values, const std::string& value_name) {
    if (values.size() != grid.size()) throw std::invalid_argument("value/grid shape mismatch");
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << "index,x,y," << value_name << "\n";
    f.precision(17);
    for (int iy = 0; iy < grid.n; ++iy)
        for (int ix = 0; ix < grid.n; ++ix) {
            const std::size_t c = grid.index(ix, iy);
            f << c << ',' << grid.cx(ix) << ',' << grid.cy(iy) << ',' << values[c] << "\n";
        }
}

void write_mask_rle_csv(const std::string& path, const GridSpec& grid,
                        std::span<const std::uint8_t> mask) {
    if (mask.size() != grid.size()) throw std::invalid_argument("mask/grid shape mismatch");
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << "row,start_col,length\n";
    for (int iy = 0; iy < grid.n; ++iy) {
        int run_start = -1;
        for (int ix = 0; ix <= grid.n; ++ix) {
            const bool on = ix < grid.n && mask[grid.index(ix, iy)] != 0;
            if (on && run_start < 0) run_start = ix;
            if (!on && run_start >= 0) {
                f << iy << ',' << run_start << ',' << ix - run_start << "\n";
                run_start = -1;
            }
        }
    }
}

namespace {

void png_chunk(std::vector<std::uint8_t>& out, const char type[4],
               const std::vector<std::uint8_t>& data) {
    const std::uint32_t len = static_cast<std::uint32_t>(data.size());
    for (int b = 3; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((len >> (8 * b)) & 0xff));
    std::vector<std::uint8_t> body(type, type + 4);
    body.insert(body.end(), data.begin(), data.end());
    out.insert(out.end(), body.begin(), body.end());
    const std::uint32_t crc =
        static_cast<std::uint32_t>(crc32(0, body.data(), static_cast<uInt>(body.size())));
    for (int b = 3; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((crc >> (8 * b)) & 0xff));
}

// raw: filtered scanlines (filter byte + pixel data per row)
void write_png(const std::string& path, int width, int height, int bit_depth, int color_type,
               const std::vector<std::uint8_t>& raw) {
    std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    std::vector<std::uint8_t> ihdr;
    for (int b = 3; b >= 0; --b)
        ihdr.push_back(static_cast<std::uint8_t>((static_cast<std::uint32_t>(width) >> (8 * b)) & 0xff));
    for (int b = 3; b >= 0; --b)
        ihdr.push_back(static_cast<std::uint8_t>((static_cast<std::uint32_t>(height) >> (8 * b)) & 0xff));
    ihdr.push_back(static_cast<std::uint8_t>(bit_depth));
    ihdr.push_back(static_cast<std::uint8_t>(color_type));
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);
    png_chunk(out, "IHDR", ihdr);

    uLongf comp_len = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> comp(comp_len);
    if (compress2(comp.data(), &comp_len, raw.data(), static_cast<uLong>(raw.size()), 9) != Z_OK)
        throw std::runtime_error("png compression failed");
    comp.resize(comp_len);
    png_chunk(out, "IDAT", comp);
    png_chunk(out, "IEND", {});
    write_bytes(path, out);
}

}  // namespace

void write_mask_png(const std::string& path, int n, std::span<const std::uint8_t> mask) {
    if (mask.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("mask shape mismatch");
    const int row_bytes = (n + 7) / 8;
    std::vector<std::uint8_t> raw;
    raw.reserve(static_cast<std::size_t>(n) * (row_bytes + 1));
    // image rows top to bottom = grid rows high y to low y
    for (int iy = n - 1; iy >= 0; --iy) {
        raw.push_back(0);  // filter none
        for (int bx = 0; bx < row_bytes; ++bx) {
            std::uint8_t byte = 0;
            for (int bit = 0; bit < 8; ++bit) {
                const int ix = bx * 8 + bit;
                if (ix < n && mask[static_cast<std::size_t>(iy) * n + ix])
                    byte |= static_cast<std::uint8_t>(0x80 >> bit);
            }
            raw.push_back(byte);
        }
    }
    write_png(path, n, n, 1, 0, raw);
}

void write_field_png(const std::string& path, int n, std::span<const double> values) {
    if (values.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("field shape mismatch");
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
    std::vector<std::uint8_t> raw;
    raw.reserve(static_cast<std::size_t>(n) * (n + 1));
    for (int iy = n - 1; iy >= 0; --iy) {
        raw.push_back(0);
        for (int ix = 0; ix < n; ++ix) {
            const double v = values[static_cast<std::size_t>(iy) * n + ix];
            raw.push_back(static_cast<std::uint8_t>((v - lo) * scale));
        }
    }
    write_png(path, n, n, 8, 0, raw);
}

void write_label_png(const std::string& path, int n, std::span<const std::uint16_t> labels) {
    if (labels.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("label shape mismatch");
    static const std::uint8_t palette[12][3] = {
        {31, 119, 180}, {255, 127, 14}, {44, 160, 44},  {214, 39, 40},
        {148, 103, 189}, {140, 86, 75}, {227, 119, 194}, {127, 127, 127},
        {188, 189, 34}, {23, 190, 207}, {174, 199, 232}, {255, 187, 120}};
    std::vector<std::uint8_t> raw;
    raw.reserve(static_cast<std::size_t>(n) * (3 * n + 1));
    for (int iy = n - 1; iy >= 0; --iy) {
        raw.push_back(0);
        for (int ix = 0; ix < n; ++ix) {
            const std::uint16_t l = labels[static_cast<std::size_t>(iy) * n + ix];
            if (l == 0) {
                raw.push_back(255);
                raw.push_back(255);
                raw.push_back(255);
            } else {
                const std::uint8_t* c = palette[(l - 1) % 12];
                raw.push_back(c[0]);
                raw.push_back(c[1]);
                raw.push_back(c[2]);
            }
        }
    }
    write_png(path, n, n, 8, 2, raw);
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[65536];
    while (f) {
        f.read(buf, sizeof buf);
        const std::streamsize got = f.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<std::uint8_t>(buf[i]);
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

}  // namespace lqg
