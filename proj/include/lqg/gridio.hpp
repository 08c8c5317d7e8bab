#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lqg/grid.hpp"

namespace lqg {

// Flat binary grid file: 16-byte header (u32 magic 'LQGF', u32 n, f64 spacing)
// followed by n*n little-endian doubles, row-major.
inline constexpr std::uint32_t grid_file_magic = 0x4647514Cu;

void write_grid_file(const std::string& path, const GridSpec& grid,
                     std::span<const double> values);

struct GridFileData {
    GridSpec grid;
    std::vector<double> values;
};

GridFileData read_grid_file(const std::string& path);

// CSV with one row per cell: index,x,y,value
void write_cell_csv(const std::string& path, const GridSpec& grid,
                    std::span<const double> values, const std::string& value_name);

// Run-length CSV for boolean masks: row,start_col,length
void write_mask_rle_csv(const std::string& path, const GridSpec& grid,
                        std::span<const std::uint8_t> mask);

// PNG writers (zlib-deflated). Masks are 1-bit grayscale; scalar fields are
// 8-bit grayscale scaled to [min, max]; label images map 0 to white and
// positive labels through a fixed palette.
void write_mask_png(const std::string& path, int n, std::span<const std::uint8_t> mask);
void write_field_png(const std::string& path, int n, std::span<const double> values);
void write_label_png(const std::string& path, int n, std::span<const std::uint16_t> labels);

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);
std::uint64_t fnv1a64_file(const std::string& path);

}  // namespace lqg
