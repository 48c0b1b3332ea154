// Orbit-tile scans over parameter space, boundaries and coverage checks.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tribill/common.hpp"
#include "tribill/word.hpp"

namespace tribill {

struct Region {
    double x1min = 0, x1max = 0, x2min = 0, x2max = 0;
};

// Membership sampled at cell centers; cell (i, j) has x1 index i, x2 index j.
struct TileRaster {
    Word word;
    Region region;
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> member;  // j * nx + i
    std::vector<double> separation;    // min top height - max bottom height

    ParameterPoint center(int i, int j) const;
    bool at(int i, int j) const { return member[size_t(j) * nx + i] != 0; }
    double sep(int i, int j) const { return separation[size_t(j) * nx + i]; }
    size_t count() const;
    double cell_width() const { return (region.x1max - region.x1min) / nx; }
    double cell_height() const { return (region.x2max - region.x2min) / ny; }
};

// Throws InvalidArgument for an empty word or a region outside the obtuse
// triangles, Precondition for an unstable word.
TileRaster scan(const Word& w, const Region& r, int nx, int ny);

// Smallest m <= m_max with (x, x) in O(Y_{n,m}^2); requires pi/(2n+2) < x < pi/(2n).
std::optional<int> coverage_Y(int n, double x, int m_max = 64);

// Zero level set of the separation, by marching squares with linear interpolation.
using Polyline = std::vector<ParameterPoint>;
std::vector<Polyline> boundary_polyline(const TileRaster& r);

// Quadrant of V_n: signs of (x1 - pi/2n, x2 - pi/2n).
struct Quadrant {
    int s1 = -1, s2 = -1;
};

struct QuadrantCoverage {
    int n = 4;
    Quadrant q;
    double epsilon = 0;  // 0 if no working epsilon was found
    int halvings = 0;
    size_t cells_checked = 0;
    size_t misses_at_start = 0;  // cells outside the tile at the starting epsilon
};
// Halves epsilon from eps0 until every cell center of a res x res raster of
// the quadrant box that lies in the open quarter-disk is in O(w).
QuadrantCoverage quadrant_epsilon(const Word& w, int n, Quadrant q, int res = 256, double eps0 = 1e-2,
                                  double eps_min = 1e-7);

// Raster of O(W_{nk}) in the coordinates Y = zeta_n k^2 (X - V_n) against Omega_n.
struct OmegaComparison {
    int n = 3, k = 20, res = 0;
    double omega_area = 0;
    double tile_area = 0;
    double sym_diff_area = 0;
    double ratio() const { return sym_diff_area / omega_area; }
};
OmegaComparison omega_comparison(int n, int k, int res = 200);

std::string raster_svg(const TileRaster& r);
// Writes an 8-bit grayscale PNG (members dark), x2 increasing upward.
void raster_png(const TileRaster& r, const std::string& path);
std::string raster_png_bytes(const TileRaster& r);

}  // namespace tribill
