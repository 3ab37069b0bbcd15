#include "arrcert/linear_system.hpp"

#include <gtest/gtest.h>

using namespace arrcert::geom;

namespace {

ProjPoint rp(long a, long b, long c) {
    return ProjPoint(Cyclotomic(a), Cyclotomic(b), Cyclotomic(c));
}

Cyclotomic eval_curve(const std::vector<Cyclotomic>& coeffs, unsigned d, const ProjPoint& p,
                      unsigned order) {
    const auto monos = monomials(d);
    Cyclotomic s = Cyclotomic::zero(order);
    for (std::size_t k = 0; k < monos.size(); ++k) {
        Cyclotomic term = coeffs[k];
        for (int i = 0; i < 3; ++i)
            for (unsigned e = 0; e < monos[k][i]; ++e)
                term *= p.c[i].order() == order
                            ? p.c[i]
                            : Cyclotomic::from_rational(p.c[i].rational_part(), order);
        s += term;
    }
    return s;
}

TEST(CurveSystem, LineThroughTwoPoints) {
    auto sys = curve_system(1, {{rp(1, 0, 0), 1}, {rp(0, 1, 0), 1}});
    EXPECT_EQ(sys.dimension, 1u);
    // The only degree-1 curve through both basis points is z = 0.
    ASSERT_EQ(sys.basis.size(), 1u);
    EXPECT_TRUE(sys.basis[0][0].is_zero());
    EXPECT_TRUE(sys.basis[0][1].is_zero());
    EXPECT_FALSE(sys.basis[0][2].is_zero());
}

TEST(CurveSystem, EmptyConditionsGiveFullSystem) {
    auto sys = curve_system(3, {});
    EXPECT_EQ(sys.dimension, 10u);
}

TEST(CurveSystem, DoublePointConditionsUseThreeRows) {
    auto sys = curve_system(2, {{rp(0, 0, 1), 2}});
    // Conics singular at a point form the 3-dimensional space spanned by
    // x^2, xy, y^2 when the point is (0:0:1).
    EXPECT_EQ(sys.dimension, 3u);
    for (const auto& v : sys.basis) {
        EXPECT_TRUE(eval_curve(v, 2, rp(0, 0, 1), sys.field_order).is_zero());
    }
}

TEST(CurveSystem, RejectsBadInput) {
    EXPECT_THROW(curve_system(0, {}), arrcert::invalid_parameter);
    EXPECT_THROW(curve_system(2, {{rp(1, 1, 1), 0}}), arrcert::invalid_parameter);
    EXPECT_THROW(curve_system(2, {{rp(1, 1, 1), 1}, {rp(1, 1, 1), 1}}),
                 arrcert::degenerate_input);
}

TEST(ConicThroughFive, GeneralPosition) {
    std::vector<ProjPoint> pts = {rp(1, 0, 0), rp(0, 1, 0), rp(0, 0, 1), rp(1, 1, 1),
                                  rp(1, 2, 4)};
    auto res = conic_through_five(pts);
    ASSERT_TRUE(res.unique);
    for (const ProjPoint& p : pts) EXPECT_TRUE(eval_conic(res.conic, p, 1).is_zero());
    // Oracle: the full degree-2 system through the same points has dimension 1
    // and the returned conic spans it.
    auto sys = curve_system(2, {{pts[0], 1}, {pts[1], 1}, {pts[2], 1}, {pts[3], 1}, {pts[4], 1}});
    ASSERT_EQ(sys.dimension, 1u);
    EXPECT_EQ(canonical_coeffs(sys.basis[0]), res.conic);
}

TEST(ConicThroughFive, ThreeCollinearStillUnique) {
    // Three points on y = 0 plus two generic ones: the unique conic is the
    // line pair, not a "non-unique" verdict.
    std::vector<ProjPoint> pts = {rp(0, 0, 1), rp(1, 0, 1), rp(2, 0, 1), rp(1, 1, 1),
                                  rp(3, 2, 1)};
    auto res = conic_through_five(pts);
    ASSERT_TRUE(res.unique);
    // The conic vanishes on a fourth point of the line, hence contains it.
    EXPECT_TRUE(eval_conic(res.conic, rp(7, 0, 1), 1).is_zero());
}

TEST(ConicThroughFive, FourCollinearIsNonUnique) {
    std::vector<ProjPoint> pts = {rp(0, 0, 1), rp(1, 0, 1), rp(2, 0, 1), rp(3, 0, 1),
                                  rp(1, 1, 1)};
    auto res = conic_through_five(pts);
    EXPECT_FALSE(res.unique);
    EXPECT_EQ(res.dimension, 2u);
}

TEST(CurveSystem, CubicThroughTenGeneralPointsIsEmpty) {
    // Ten points, no cubic: rank of the 10x10 evaluation matrix is full for
    // a generic configuration.
    std::vector<PointCondition> conds;
    long data[10][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 2, 4},
                        {1, 3, 9}, {2, 5, 1}, {3, 1, 7}, {5, 2, 3}, {1, 7, 2}};
    for (auto& d : data) conds.push_back({rp(d[0], d[1], d[2]), 1});
    EXPECT_EQ(curve_system(3, conds).dimension, 0u);
}

}  // namespace
