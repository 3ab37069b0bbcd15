#include "arrcert/arrangement.hpp"

#include <gtest/gtest.h>

using namespace arrcert;
using namespace arrcert::arr;
using geom::Cyclotomic;

namespace {

ProjLine rl(long a, long b, long c) {
    return ProjLine(Cyclotomic(a), Cyclotomic(b), Cyclotomic(c));
}

Arrangement generic_triangle() {
    return Arrangement({rl(1, 0, 0), rl(0, 1, 0), rl(0, 0, 1)}, "triangle");
}

TEST(Arrangement, ThreeGenericLinesHaveThreeNodes) {
    auto lat = intersection_lattice(generic_triangle());
    EXPECT_EQ(lat.points.size(), 3u);
    EXPECT_EQ(lat.node_count, 3);
    EXPECT_TRUE(lat.t_points.empty());
    EXPECT_TRUE(lat.checks.pair_identity);
    EXPECT_TRUE(lat.checks.per_line_identity);
}

TEST(Arrangement, RejectsDegenerateInput) {
    EXPECT_THROW(Arrangement({rl(1, 0, 0), rl(0, 1, 0)}, "too-small"), invalid_parameter);
    EXPECT_THROW(Arrangement({rl(1, 0, 0), rl(2, 0, 0), rl(0, 1, 0)}, "dup"),
                 degenerate_input);
}

TEST(Arrangement, PencilDetection) {
    // Three lines through (0:0:1).
    Arrangement pencil({rl(1, 0, 0), rl(0, 1, 0), rl(1, 1, 0)}, "pencil");
    EXPECT_TRUE(is_pencil(pencil));
    EXPECT_FALSE(is_pencil(generic_triangle()));
}

LinForm4 f4(long a, long b, long c, long d) {
    return {Cyclotomic(a), Cyclotomic(b), Cyclotomic(c), Cyclotomic(d)};
}

TEST(RestrictToPlane, CoordinateHyperplanes) {
    // x, y, z, t cut by 2x + 5y - 9z - t = 0: four lines in general position.
    std::vector<LinForm4> forms = {f4(1, 0, 0, 0), f4(0, 1, 0, 0), f4(0, 0, 1, 0),
                                   f4(0, 0, 0, 1)};
    Arrangement A = restrict_to_plane(forms, f4(2, 5, -9, -1), "coords");
    EXPECT_EQ(A.size(), 4u);
    auto lat = intersection_lattice(A);
    // Oracle: direct lattice computation; general position means 6 nodes.
    EXPECT_EQ(lat.points.size(), 6u);
    EXPECT_EQ(lat.node_count, 6);
    // The restriction of t is the trace of the plane equation itself.
    EXPECT_EQ(A.lines[3], rl(2, 5, -9));
}

TEST(RestrictToPlane, EliminationVariableDoesNotChangeCounts) {
    std::vector<LinForm4> forms = {f4(1, 0, 0, 0), f4(0, 1, 0, 0), f4(0, 0, 1, 0),
                                   f4(0, 0, 0, 1), f4(1, 1, 1, 1)};
    LinForm4 plane = f4(2, 5, -9, -1);
    std::vector<std::vector<std::pair<int, int>>> profiles;
    for (int e : {0, 1, 2, 3}) {
        Arrangement A = restrict_to_plane(forms, plane, "probe", e);
        auto lat = intersection_lattice(A);
        std::vector<std::pair<int, int>> prof;
        for (const auto& pl : lat.per_line) prof.push_back({pl.k, pl.d});
        profiles.push_back(prof);
    }
    for (std::size_t i = 1; i < profiles.size(); ++i) EXPECT_EQ(profiles[i], profiles[0]);
}

TEST(RestrictToPlane, PlaneProportionalToFormFails) {
    std::vector<LinForm4> forms = {f4(1, 0, 0, 0), f4(0, 1, 0, 0), f4(2, 5, -9, -1)};
    EXPECT_THROW(restrict_to_plane(forms, f4(2, 5, -9, -1), "bad"), invalid_parameter);
}

TEST(RestrictToPlane, NonGenericPlaneIsRejected) {
    // The plane x + y = 0 contains the intersection line {x = y = 0} of the
    // first two forms and the flat of (x, x+y) collapses onto it as well.
    std::vector<LinForm4> forms = {f4(1, 0, 0, 0), f4(0, 1, 0, 0), f4(0, 0, 1, 0),
                                   f4(0, 0, 0, 1)};
    EXPECT_THROW(restrict_to_plane(forms, f4(1, 1, 0, 0), "bad"), error);
}

TEST(Arrangement, MixedFieldLinesUnify) {
    Cyclotomic i = Cyclotomic::zeta(4);
    Arrangement A({ProjLine(Cyclotomic::one(4), i, Cyclotomic::zero(4)), rl(0, 1, 0),
                   rl(0, 0, 1)},
                  "mixed");
    EXPECT_EQ(A.field_order, 4u);
    for (const auto& l : A.lines)
        for (const auto& c : l.c) EXPECT_EQ(c.order(), 4u);
}

}  // namespace
