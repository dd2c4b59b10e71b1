#pragma once
// ROI resizing: uniform grid partition, active-cell tagging by reported-position
// density, and grouping of active cells into rectangular enclosed regions.
#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "d2ps/scenario.hpp"

namespace d2ps {

struct Cell {
    RoiBounds bounds;
    std::vector<int> receiver_ids;
    bool active = false;
};

struct GridPartition {
    RoiBounds roi;
    std::size_t nx = 0, ny = 0;
    std::vector<Cell> cells;  // row-major, cell (0,0) at the (a1, b1) corner
    std::size_t out_of_roi = 0;

    Cell& cell(std::size_t ix, std::size_t iy) { return cells[iy * nx + ix]; }
    const Cell& cell(std::size_t ix, std::size_t iy) const { return cells[iy * nx + ix]; }
};

inline GridPartition partition(const RoiBounds& roi, std::size_t nx, std::size_t ny) {
    roi.validate();
    if (nx < 1 || ny < 1) throw std::invalid_argument("partition: divisions must be >= 1");
    GridPartition g;
    g.roi = roi;
    g.nx = nx;
    g.ny = ny;
    g.cells.resize(nx * ny);
    const double wx = roi.dx() / static_cast<double>(nx);
    const double wy = roi.dy() / static_cast<double>(ny);
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix)
            g.cell(ix, iy).bounds = {roi.a1 + wx * static_cast<double>(ix),
                                     roi.a1 + wx * static_cast<double>(ix + 1),
                                     roi.b1 + wy * static_cast<double>(iy),
                                     roi.b1 + wy * static_cast<double>(iy + 1)};
    return g;
}

// Half-open cells [lo, hi); the last row/column is closed so the grid tiles the ROI.
inline GridPartition map_and_tag(GridPartition grid, const std::vector<ReceiverTruth>& receivers,
                                 std::size_t threshold) {
    if (threshold < 1) throw std::invalid_argument("map_and_tag: threshold >= 1");
    for (auto& c : grid.cells) {
        c.receiver_ids.clear();
        c.active = false;
    }
    grid.out_of_roi = 0;
    const double wx = grid.roi.dx() / static_cast<double>(grid.nx);
    const double wy = grid.roi.dy() / static_cast<double>(grid.ny);
    for (const auto& rec : receivers) {
        const Vec2 p = rec.reported_position;
        if (p.x < grid.roi.a1 || p.x > grid.roi.a2 || p.y < grid.roi.b1 || p.y > grid.roi.b2) {
            ++grid.out_of_roi;
            continue;
        }
        auto ix = static_cast<std::size_t>((p.x - grid.roi.a1) / wx);
        auto iy = static_cast<std::size_t>((p.y - grid.roi.b1) / wy);
        ix = std::min(ix, grid.nx - 1);
        iy = std::min(iy, grid.ny - 1);
        grid.cell(ix, iy).receiver_ids.push_back(rec.id);
    }
    for (auto& c : grid.cells) c.active = c.receiver_ids.size() > threshold;
    return grid;
}

struct EnclosedRegion {
    RoiBounds bounds;
    std::size_t x0 = 0, x1 = 0, y0 = 0, y1 = 0;  // inclusive cell index ranges
    std::vector<std::size_t> member_cells;       // row-major indices
    std::vector<int> receiver_ids;
};

// All maximal axis-aligned all-active rectangles. A cell may belong to several
// regions; overlap between regions is allowed.
inline std::vector<EnclosedRegion> enclose(const GridPartition& grid) {
    std::vector<EnclosedRegion> out;
    auto all_active = [&](std::size_t x0, std::size_t x1, std::size_t y0, std::size_t y1) {
        for (std::size_t iy = y0; iy <= y1; ++iy)
            for (std::size_t ix = x0; ix <= x1; ++ix)
                if (!grid.cell(ix, iy).active) return false;
        return true;
    };
    for (std::size_t y0 = 0; y0 < grid.ny; ++y0)
        for (std::size_t y1 = y0; y1 < grid.ny; ++y1)
            for (std::size_t x0 = 0; x0 < grid.nx; ++x0)
                for (std::size_t x1 = x0; x1 < grid.nx; ++x1) {
                    if (!all_active(x0, x1, y0, y1)) continue;
                    // maximal: no all-active rectangle extends it by one row/column
                    if (x0 > 0 && all_active(x0 - 1, x1, y0, y1)) continue;
                    if (x1 + 1 < grid.nx && all_active(x0, x1 + 1, y0, y1)) continue;
                    if (y0 > 0 && all_active(x0, x1, y0 - 1, y1)) continue;
                    if (y1 + 1 < grid.ny && all_active(x0, x1, y0, y1 + 1)) continue;
                    EnclosedRegion r;
                    r.x0 = x0;
                    r.x1 = x1;
                    r.y0 = y0;
                    r.y1 = y1;
                    r.bounds = {grid.cell(x0, y0).bounds.a1, grid.cell(x1, y0).bounds.a2,
                                grid.cell(x0, y0).bounds.b1, grid.cell(x0, y1).bounds.b2};
                    for (std::size_t iy = y0; iy <= y1; ++iy)
                        for (std::size_t ix = x0; ix <= x1; ++ix) {
                            r.member_cells.push_back(iy * grid.nx + ix);
                            const auto& ids = grid.cell(ix, iy).receiver_ids;
                            r.receiver_ids.insert(r.receiver_ids.end(), ids.begin(), ids.end());
                        }
                    std::sort(r.receiver_ids.begin(), r.receiver_ids.end());
                    out.push_back(std::move(r));
                }
    return out;
}

struct RegionInput {
    EnclosedRegion region;
    std::vector<EpochMeasurements> epochs;  // restricted to member receivers
    std::vector<std::size_t> receiver_rows;  // rows of the original measurement matrix
};

// Restrict measurements to each region's member receivers; regions with fewer
// than two receivers are skipped (counted by the caller via output size).
inline std::vector<RegionInput> per_region_detection_inputs(
    const std::vector<EnclosedRegion>& regions, const std::vector<EpochMeasurements>& epochs) {
    // No active cell (sparse receivers) is a legitimate outcome: nothing to test.
    std::vector<RegionInput> out;
    for (const auto& reg : regions) {
        if (reg.receiver_ids.size() < 2) continue;
        RegionInput ri;
        ri.region = reg;
        for (const int id : reg.receiver_ids)
            ri.receiver_rows.push_back(static_cast<std::size_t>(id));
        for (const auto& ep : epochs) {
            EpochMeasurements sub;
            sub.epoch_index = ep.epoch_index;
            sub.n_receivers = ri.receiver_rows.size();
            sub.n_satellites = ep.n_satellites;
            sub.pseudoranges.reserve(sub.n_receivers * sub.n_satellites);
            for (const std::size_t row : ri.receiver_rows)
                for (std::size_t i = 0; i < ep.n_satellites; ++i)
                    sub.pseudoranges.push_back(ep.rho(row, i));
            ri.epochs.push_back(std::move(sub));
        }
        out.push_back(std::move(ri));
    }
    return out;
}

}  // namespace d2ps
