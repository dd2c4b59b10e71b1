#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "d2ps/criteria_util.hpp"
#include "d2ps/resize.hpp"

using namespace d2ps;

namespace {
GridPartition mask_grid(std::size_t nx, std::size_t ny, const std::vector<int>& mask) {
    GridPartition g = partition(RoiBounds{0.0, double(nx), 0.0, double(ny)}, nx, ny);
    for (std::size_t i = 0; i < mask.size(); ++i) g.cells[i].active = mask[i] != 0;
    return g;
}
}  // namespace

TEST_CASE("partition tiles the ROI") {
    const auto g = partition(RoiBounds{0.0, 100.0, 0.0, 50.0}, 5, 2);
    CHECK(g.cells.size() == 10);
    CHECK(g.cell(0, 0).bounds.a1 == 0.0);
    CHECK(g.cell(4, 1).bounds.a2 == doctest::Approx(100.0));
    CHECK(g.cell(4, 1).bounds.b2 == doctest::Approx(50.0));
    CHECK(g.cell(2, 0).bounds.dx() == doctest::Approx(20.0));
    CHECK_THROWS(partition(RoiBounds{0.0, 1.0, 0.0, 1.0}, 0, 3));
}

TEST_CASE("mapping is half-open with a closed final row/column") {
    GridPartition g = partition(RoiBounds{0.0, 10.0, 0.0, 10.0}, 2, 2);
    std::vector<ReceiverTruth> recs(4);
    recs[0].id = 0;
    recs[0].reported_position = {5.0, 1.0};   // boundary x -> upper cell (half-open)
    recs[1].id = 1;
    recs[1].reported_position = {10.0, 1.0};  // ROI edge -> clamped to last column
    recs[2].id = 2;
    recs[2].reported_position = {11.0, 1.0};  // outside
    recs[3].id = 3;
    recs[3].reported_position = {4.9, 9.9};
    g = map_and_tag(g, recs, 1);
    CHECK(g.cell(1, 0).receiver_ids == std::vector<int>{0, 1});
    CHECK(g.cell(0, 1).receiver_ids == std::vector<int>{3});
    CHECK(g.out_of_roi == 1);
    // threshold is strict: a cell with exactly `threshold` receivers stays inactive
    CHECK_FALSE(g.cell(0, 1).active);
    CHECK(g.cell(1, 0).active);
}

TEST_CASE("L-shape splits into two overlapping maximal rectangles") {
    // active: full left column plus bottom row of a 3x3 grid
    const auto g = mask_grid(3, 3, {1, 1, 1,
                                    1, 0, 0,
                                    1, 0, 0});
    const auto regions = enclose(g);
    REQUIRE(regions.size() == 2);
    bool has_row = false, has_col = false;
    for (const auto& r : regions) {
        if (r.x0 == 0 && r.x1 == 2 && r.y0 == 0 && r.y1 == 0) has_row = true;
        if (r.x0 == 0 && r.x1 == 0 && r.y0 == 0 && r.y1 == 2) has_col = true;
    }
    CHECK(has_row);
    CHECK(has_col);
}

TEST_CASE("single active cell and empty mask") {
    auto g = mask_grid(4, 4, std::vector<int>(16, 0));
    CHECK(enclose(g).empty());
    g.cells[5].active = true;
    const auto regions = enclose(g);
    REQUIRE(regions.size() == 1);
    CHECK(regions[0].member_cells == std::vector<std::size_t>{5});
}

TEST_CASE("enclose matches the exhaustive oracle on random masks") {
    Rng rng(31);
    for (int t = 0; t < 60; ++t) {
        GridPartition g = partition(RoiBounds::centered(50.0, 50.0), 5, 5);
        for (auto& c : g.cells) c.active = rng.uniform() < 0.5;
        CHECK(criteria::same_regions(enclose(g), criteria::oracle_maximal_rectangles(g)));
    }
}

TEST_CASE("per-region inputs restrict the measurement matrix") {
    GridPartition g = partition(RoiBounds{0.0, 10.0, 0.0, 10.0}, 2, 1);
    std::vector<ReceiverTruth> recs(6);
    for (int i = 0; i < 6; ++i) {
        recs[i].id = i;
        recs[i].reported_position = {i < 4 ? 1.0 : 6.0, 5.0};
    }
    g = map_and_tag(g, recs, 1);
    const auto regions = enclose(g);  // only the left cell is active (4 > 1, 2 > 1 both)...
    EpochMeasurements ep;
    ep.n_receivers = 6;
    ep.n_satellites = 2;
    ep.pseudoranges = {0, 1, 10, 11, 20, 21, 30, 31, 40, 41, 50, 51};
    const auto inputs = per_region_detection_inputs(regions, {ep});
    REQUIRE(!inputs.empty());
    for (const auto& in : inputs) {
        CHECK(in.epochs[0].n_receivers == in.region.receiver_ids.size());
        for (std::size_t r = 0; r < in.receiver_rows.size(); ++r)
            for (std::size_t i = 0; i < 2; ++i)
                CHECK(in.epochs[0].rho(r, i) == ep.rho(in.receiver_rows[r], i));
    }
}
