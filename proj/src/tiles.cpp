#include "tribill/tiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>

#include <fmt/format.h>
#include <png.h>
#include <tbb/parallel_for.h>

#include "tribill/families.hpp"
#include "tribill/rescaling.hpp"
#include "tribill/unfolding.hpp"

namespace tribill {

ParameterPoint TileRaster::center(int i, int j) const {
    return {region.x1min + (i + 0.5) * cell_width(), region.x2min + (j + 0.5) * cell_height()};
}

size_t TileRaster::count() const { return size_t(std::count(member.begin(), member.end(), std::uint8_t(1))); }

TileRaster scan(const Word& w, const Region& r, int nx, int ny) {
    validate_word(w);
    if (nx < 1 || ny < 1) fail_arg("resolution must be positive");
    if (!(r.x1min < r.x1max) || !(r.x2min < r.x2max)) fail_arg("empty region");
    for (double a : {r.x1min, r.x1max})
        for (double b : {r.x2min, r.x2max})
            if (a <= 0 || b <= 0 || a + b >= kPi / 2) fail_arg("region must lie inside the obtuse triangles");
    Word ww = w.size() % 2 == 1 ? w + w : w;
    if (!is_stable_parity(ww)) fail_pre("unstable word: first and last sides are not parallel");

    TileRaster t;
    t.word = w;
    t.region = r;
    t.nx = nx;
    t.ny = ny;
    t.member.assign(size_t(nx) * ny, 0);
    t.separation.assign(size_t(nx) * ny, 0);
    tbb::parallel_for(0, ny, [&](int j) {
        for (int i = 0; i < nx; ++i) {
            Membership m = membership_geometric(ww, t.center(i, j), true);
            t.member[size_t(j) * nx + i] = m.member ? 1 : 0;
            t.separation[size_t(j) * nx + i] = m.separation;
        }
    });
    return t;
}

std::optional<int> coverage_Y(int n, double x, int m_max) {
    if (n < 2) fail_arg("n must be at least 2");
    if (!(x > kPi / (2 * n + 2) && x < kPi / (2 * n))) fail_pre("x must lie in (pi/(2n+2), pi/(2n))");
    for (int m = 1; m <= m_max; ++m) {
        Word y = gen_Y(n, m);
        if (membership_geometric(y + y, {x, x}, true).member) return m;
    }
    return std::nullopt;
}

std::vector<Polyline> boundary_polyline(const TileRaster& r) {
    // Segments between edge crossings of each square of four cell centers.
    struct Key {
        int i, j, dir;  // dir 0: horizontal edge (i,j)-(i+1,j); 1: vertical edge (i,j)-(i,j+1)
        bool operator<(const Key& o) const { return std::tie(i, j, dir) < std::tie(o.i, o.j, o.dir); }
    };
    auto crossing = [&](const Key& k) {
        int i2 = k.i + (k.dir == 0), j2 = k.j + (k.dir == 1);
        double a = r.sep(k.i, k.j), b = r.sep(i2, j2);
        double t = a / (a - b);
        ParameterPoint p = r.center(k.i, k.j), q = r.center(i2, j2);
        return ParameterPoint{p.x1 + t * (q.x1 - p.x1), p.x2 + t * (q.x2 - p.x2)};
    };
    auto in = [&](int i, int j) { return r.sep(i, j) > 0; };
    std::map<Key, std::vector<Key>> adj;
    for (int j = 0; j + 1 < r.ny; ++j)
        for (int i = 0; i + 1 < r.nx; ++i) {
            std::vector<Key> cut;
            Key edges[4] = {{i, j, 0}, {i + 1, j, 1}, {i, j + 1, 0}, {i, j, 1}};
            for (const Key& e : edges) {
                int i2 = e.i + (e.dir == 0), j2 = e.j + (e.dir == 1);
                if (in(e.i, e.j) != in(i2, j2)) cut.push_back(e);
            }
            // Saddles (four crossings) are paired in cyclic order.
            for (size_t c = 0; c + 1 < cut.size(); c += 2) {
                adj[cut[c]].push_back(cut[c + 1]);
                adj[cut[c + 1]].push_back(cut[c]);
            }
        }
    std::vector<Polyline> out;
    std::map<Key, bool> used;
    auto walk = [&](Key start) {
        Polyline line{crossing(start)};
        used[start] = true;
        Key cur = start;
        while (true) {
            bool moved = false;
            for (const Key& nb : adj[cur])
                if (!used[nb]) {
                    used[nb] = true;
                    line.push_back(crossing(nb));
                    cur = nb;
                    moved = true;
                    break;
                }
            if (!moved) break;
        }
        return line;
    };
    // Open chains first (endpoints have one neighbour), then closed loops.
    for (auto& [k, nbs] : adj)
        if (nbs.size() == 1 && !used[k]) out.push_back(walk(k));
    for (auto& [k, nbs] : adj)
        if (!used[k]) {
            Polyline l = walk(k);
            l.push_back(l.front());
            out.push_back(std::move(l));
        }
    return out;
}

QuadrantCoverage quadrant_epsilon(const Word& w, int n, Quadrant q, int res, double eps0, double eps_min) {
    if (std::abs(q.s1) != 1 || std::abs(q.s2) != 1) fail_arg("quadrant signs must be +1 or -1");
    if (res < 2) fail_arg("resolution must be at least 2");
    const ParameterPoint V = ParameterPoint::veech(n);
    QuadrantCoverage c;
    c.n = n;
    c.q = q;
    for (double eps = eps0; eps >= eps_min; eps /= 2, ++c.halvings) {
        Region r{std::min(V.x1, V.x1 + q.s1 * eps), std::max(V.x1, V.x1 + q.s1 * eps),
                 std::min(V.x2, V.x2 + q.s2 * eps), std::max(V.x2, V.x2 + q.s2 * eps)};
        TileRaster t = scan(w, r, res, res);
        size_t checked = 0, misses = 0;
        for (int j = 0; j < res; ++j)
            for (int i = 0; i < res; ++i) {
                ParameterPoint p = t.center(i, j);
                if (std::hypot(p.x1 - V.x1, p.x2 - V.x2) >= eps) continue;
                ++checked;
                if (!t.at(i, j)) ++misses;
            }
        if (c.halvings == 0) c.misses_at_start = misses;
        c.cells_checked = checked;
        if (misses == 0) {
            c.epsilon = eps;
            return c;
        }
    }
    return c;
}

OmegaComparison omega_comparison(int n, int k, int res) {
    if (k < 1) fail_arg("k must be positive");
    LimitQuadrilateral om = omega(n);
    double lo1 = 1e300, hi1 = -1e300, lo2 = 1e300, hi2 = -1e300;
    for (const auto& v : om.vertices) {
        lo1 = std::min(lo1, v[1]);
        hi1 = std::max(hi1, v[1]);
        lo2 = std::min(lo2, v[2]);
        hi2 = std::max(hi2, v[2]);
    }
    // Half the diameter of margin on each side catches tile parts outside Omega.
    double m1 = (hi1 - lo1) / 2, m2 = (hi2 - lo2) / 2;
    lo1 -= m1, hi1 += m1, lo2 -= m2, hi2 += m2;
    const ParameterPoint V = ParameterPoint::veech(n);
    const double s = om.zeta * double(k) * k;
    TileRaster t = scan(gen_W(n, k), {V.x1 + lo1 / s, V.x1 + hi1 / s, V.x2 + lo2 / s, V.x2 + hi2 / s}, res, res);
    OmegaComparison c;
    c.n = n;
    c.k = k;
    c.res = res;
    c.omega_area = om.area();
    const double cell = (hi1 - lo1) / res * (hi2 - lo2) / res;
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i) {
            ParameterPoint p = t.center(i, j);
            bool a = t.at(i, j), b = om.contains((p.x1 - V.x1) * s, (p.x2 - V.x2) * s);
            if (a) c.tile_area += cell;
            if (a != b) c.sym_diff_area += cell;
        }
    return c;
}

std::string raster_svg(const TileRaster& r) {
    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\" shape-rendering=\"crispEdges\">\n"
        "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
        r.nx, r.ny, r.nx, r.ny);
    for (int j = 0; j < r.ny; ++j) {
        int y = r.ny - 1 - j;
        for (int i = 0; i < r.nx;) {
            if (!r.at(i, j)) {
                ++i;
                continue;
            }
            int i0 = i;
            while (i < r.nx && r.at(i, j)) ++i;
            s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"1\" fill=\"#234\"/>\n", i0, y, i - i0);
        }
    }
    s += "</svg>\n";
    return s;
}

std::string raster_png_bytes(const TileRaster& r) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) throw Error(ErrorKind::Internal, "libpng initialisation failed");
    std::string out;
    std::vector<png_byte> row(size_t(r.nx));
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error(ErrorKind::Internal, "libpng write failed");
    }
    png_set_write_fn(
        png, &out,
        [](png_structp p, png_bytep data, png_size_t len) {
            static_cast<std::string*>(png_get_io_ptr(p))->append(reinterpret_cast<const char*>(data), len);
        },
        nullptr);
    png_set_IHDR(png, info, png_uint_32(r.nx), png_uint_32(r.ny), 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int j = r.ny - 1; j >= 0; --j) {
        for (int i = 0; i < r.nx; ++i) row[size_t(i)] = r.at(i, j) ? 40 : 255;
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

void raster_png(const TileRaster& r, const std::string& path) {
    std::string bytes = raster_png_bytes(r);
    std::unique_ptr<FILE, int (*)(FILE*)> f(std::fopen(path.c_str(), "wb"), std::fclose);
    if (!f) fail_arg("cannot open " + path);
    if (std::fwrite(bytes.data(), 1, bytes.size(), f.get()) != bytes.size())
        throw Error(ErrorKind::Internal, "cannot write " + path);
}

}  // namespace tribill
