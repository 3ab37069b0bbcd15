#include "arrcert/certify.hpp"

#include <gtest/gtest.h>

using namespace arrcert;
using namespace arrcert::certify;
using arrcert::arr::Arrangement;
using arrcert::arr::gen_ceva;
using arrcert::arr::gen_g31_section;
using arrcert::arr::gen_hexagonal;
using arrcert::arr::gen_near_pencils;
using arrcert::arr::HexagonVariant;
using arrcert::arr::intersection_lattice;
using geom::Cyclotomic;
using geom::Rational;
using lsys::SystemSpec;

namespace {

TEST(Cdo, FindsAClearLine) {
    Arrangement A = gen_hexagonal(HexagonVariant::on_conic);
    auto lat = intersection_lattice(A);
    // Generic monodromy: no vertex sum is forced integral, T_{=1} is empty.
    auto part = lsys::partition_symbolic(lat, {});
    auto line = criterion_cdo(lat, part);
    ASSERT_TRUE(line.has_value());
    EXPECT_EQ(*line, 0);
}

TEST(Cdo, NoneOnG31Order6) {
    Arrangement A = gen_g31_section();
    auto lat = intersection_lattice(A);
    auto part = lsys::partition(lat, lsys::milnor_system(60, 6));
    EXPECT_FALSE(criterion_cdo(lat, part).has_value());
}

TEST(Cdo, NoneOnCevaOrderM) {
    for (unsigned m : {3u, 4u, 5u}) {
        Arrangement A = gen_ceva(m);
        auto lat = intersection_lattice(A);
        auto part = lsys::partition(lat, lsys::milnor_system(3 * m, m));
        EXPECT_FALSE(criterion_cdo(lat, part).has_value()) << "m=" << m;
    }
}

TEST(SingleBad, CevaWitness) {
    Arrangement A = gen_ceva(5);
    auto lat = intersection_lattice(A);
    auto part = lsys::partition(lat, lsys::milnor_system(15, 5));
    auto res = criterion_single_bad_point(A, lat, part);
    ASSERT_TRUE(res.witness.has_value());
    EXPECT_TRUE(part.in_eq1(res.witness->second));
    // The witness point is the vertex of multiplicity 5 on the line.
    EXPECT_EQ(lat.points[res.witness->second].multiplicity, 5);
}

TEST(SingleBad, HexagonHasTwoPointsPerLine) {
    Arrangement A = gen_hexagonal(HexagonVariant::on_conic);
    auto lat = intersection_lattice(A);
    auto part = lsys::partition_symbolic(lat, {1, 2, 3, 4, 5, 6});
    auto res = criterion_single_bad_point(A, lat, part);
    EXPECT_FALSE(res.witness.has_value());
    EXPECT_FALSE(res.any_single);
}

TEST(SingleBad, NearPencilBlockedByTransversal) {
    Arrangement A = gen_near_pencils({3, 3});
    auto lat = intersection_lattice(A);
    lsys::LocalSystem L(std::vector<Rational>(6, Rational(1, 3)));
    auto part = lsys::partition(lat, L);
    ASSERT_EQ(part.eq1.size(), 2u);
    auto res = criterion_single_bad_point(A, lat, part);
    EXPECT_FALSE(res.witness.has_value());
    EXPECT_TRUE(res.any_single);
    ASSERT_FALSE(res.failed.empty());
    // The blocking line is the transversal z = 0 through both centers.
    EXPECT_EQ(res.failed[0].bad_line,
              geom::ProjLine(Cyclotomic(0), Cyclotomic(0), Cyclotomic(1)));
}

TEST(Certify, G31Order6FullPipeline) {
    Arrangement A = gen_g31_section();
    auto lat = intersection_lattice(A);
    auto rep = certify_vanishing(A, lat, SystemSpec::from_milnor(60, 6));
    EXPECT_EQ(rep.status, Status::vanishing_certified);
    ASSERT_TRUE(rep.criterion.has_value());
    EXPECT_EQ(*rep.criterion, Criterion::full_pipeline);
    ASSERT_TRUE(rep.pipeline.has_value());
    const auto& ev = *rep.pipeline;
    EXPECT_EQ(ev.blown_points, 350u);
    EXPECT_EQ(ev.support_size, 380u);
    EXPECT_TRUE(ev.normal_crossing_by_construction);
    ASSERT_TRUE(ev.nm.has_value());
    EXPECT_EQ(ev.self_intersection, Rational(1225));
    EXPECT_TRUE(ev.connected);
    EXPECT_TRUE(ev.exclusion.bound_proven);
    EXPECT_EQ(ev.exclusion.d_max, 4u);
    EXPECT_TRUE(ev.exclusion.complete());
}

TEST(Certify, CevaOrder5ViaSingleBadPoint) {
    Arrangement A = gen_ceva(5);
    auto lat = intersection_lattice(A);
    auto rep = certify_vanishing(A, lat, SystemSpec::from_milnor(15, 5));
    EXPECT_EQ(rep.status, Status::vanishing_certified);
    EXPECT_EQ(*rep.criterion, Criterion::single_bad_point);
    ASSERT_TRUE(rep.single_bad_certificate.has_value());
    // The constructive divisor re-verifies.
    auto model = blowup::make_model_all_t(A, lat);
    EXPECT_TRUE(blowup::verify_nm(model, *rep.single_bad_certificate).ok);
}

TEST(Certify, HexagonOnConicInconclusiveWithCandidate) {
    Arrangement A = gen_hexagonal(HexagonVariant::on_conic);
    auto lat = intersection_lattice(A);
    auto rep = certify_vanishing(A, lat, SystemSpec::from_partition({1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(rep.status, Status::inconclusive);
    ASSERT_TRUE(rep.pipeline.has_value());
    EXPECT_TRUE(rep.pipeline->nm.has_value());  // D' supports an NM divisor
    EXPECT_TRUE(rep.pipeline->connected);
    EXPECT_FALSE(rep.pipeline->exclusion.complete());
    // The degree-2 candidate is the conic through the six vertices.
    const auto& d2 = rep.pipeline->exclusion.degrees[1];
    EXPECT_EQ(d2.status, badcurve::DegreeStatus::candidate);
}

TEST(Certify, HexagonOffConicBoundedExclusionOnly) {
    Arrangement A = gen_hexagonal(HexagonVariant::off_conic);
    auto lat = intersection_lattice(A);
    auto rep = certify_vanishing(A, lat, SystemSpec::from_partition({1, 2, 3, 4, 5, 6}));
    // Everything excluded up to the user bound, but the bound is not proven,
    // so the verdict must stay inconclusive.
    EXPECT_EQ(rep.status, Status::inconclusive);
    ASSERT_TRUE(rep.pipeline.has_value());
    EXPECT_TRUE(rep.pipeline->exclusion.complete());
    EXPECT_FALSE(rep.pipeline->exclusion.bound_proven);
}

TEST(Certify, NearPencilInconclusiveWithLineCandidate) {
    Arrangement A = gen_near_pencils({3, 3, 3});
    auto lat = intersection_lattice(A);
    auto rep = certify_vanishing(
        A, lat, SystemSpec::from_exponents(lsys::LocalSystem(
                    std::vector<Rational>(9, Rational(1, 3)))));
    EXPECT_EQ(rep.status, Status::inconclusive);
    ASSERT_TRUE(rep.pipeline.has_value());
    EXPECT_TRUE(rep.pipeline->exclusion.bound_proven);  // c = 1 profile
    EXPECT_EQ(rep.pipeline->exclusion.d_max, 1u);
    EXPECT_EQ(rep.pipeline->exclusion.degrees[0].status,
              badcurve::DegreeStatus::candidate);
    bool noted = false;
    for (const auto& n : rep.notes) noted |= n.find("single T_{=1}") != std::string::npos;
    EXPECT_TRUE(noted);
}

TEST(Certify, HypothesesViolations) {
    Arrangement A = gen_ceva(3);
    auto lat = intersection_lattice(A);
    // Non-strict: one exponent zero.
    std::vector<Rational> exps(9, Rational(1, 3));
    exps[0] = 0;
    exps[1] = Rational(2, 3);
    auto rep = certify_vanishing(A, lat, SystemSpec::from_exponents(lsys::LocalSystem(exps)));
    EXPECT_EQ(rep.status, Status::hypotheses_violated);

    Arrangement pencil({arr::ProjLine(Cyclotomic(1), Cyclotomic(0), Cyclotomic(0)),
                        arr::ProjLine(Cyclotomic(0), Cyclotomic(1), Cyclotomic(0)),
                        arr::ProjLine(Cyclotomic(1), Cyclotomic(1), Cyclotomic(0))},
                       "pencil");
    auto plat = intersection_lattice(pencil);
    auto prep = certify_vanishing(pencil, plat,
                                  SystemSpec::from_exponents(lsys::LocalSystem(
                                      std::vector<Rational>(3, Rational(1, 3)))));
    EXPECT_EQ(prep.status, Status::hypotheses_violated);
}

TEST(Certify, PipelineAgreesWithCdo) {
    // With T_{=1} empty the cdo criterion certifies; the full pipeline must
    // not contradict it.
    Arrangement A = gen_hexagonal(HexagonVariant::on_conic);
    auto lat = intersection_lattice(A);
    auto spec = SystemSpec::from_partition({});
    auto quick = certify_vanishing(A, lat, spec);
    EXPECT_EQ(quick.status, Status::vanishing_certified);
    EXPECT_EQ(*quick.criterion, Criterion::cdo);
    CertifyOptions opt;
    opt.try_cdo = false;
    opt.try_single_bad_point = false;
    auto full = certify_vanishing(A, lat, spec, opt);
    EXPECT_EQ(full.status, Status::vanishing_certified);
    EXPECT_EQ(*full.criterion, Criterion::full_pipeline);
    EXPECT_TRUE(full.pipeline->exclusion.bound_proven);
    EXPECT_EQ(full.pipeline->exclusion.d_max, 0u);
}

TEST(Sweep, G31WithExternalAssumptions) {
    Arrangement A = gen_g31_section();
    auto lat = intersection_lattice(A);
    SweepOptions opt;
    opt.assume_excluded = {{2, "MPP"}, {3, "MPP"}};
    auto sweep = milnor_sweep(A, lat, opt);
    EXPECT_EQ(sweep.orders, (std::vector<unsigned>{2, 3, 6}));
    EXPECT_TRUE(sweep.identity);
    ASSERT_EQ(sweep.entries.size(), 3u);
    EXPECT_EQ(sweep.entries[0].kind, SweepEntry::Kind::externally_excluded);
    EXPECT_EQ(sweep.entries[0].citation, "MPP");
    EXPECT_EQ(sweep.entries[2].kind, SweepEntry::Kind::certified);
    EXPECT_EQ(*sweep.entries[2].report->criterion, Criterion::full_pipeline);
}

TEST(Sweep, G31WithoutAssumptionsIsUndetermined) {
    Arrangement A = gen_g31_section();
    auto lat = intersection_lattice(A);
    auto sweep = milnor_sweep(A, lat, {});
    EXPECT_FALSE(sweep.identity);
    // Orders 2 and 3 stay undetermined without the external exclusions.
    EXPECT_EQ(sweep.entries[0].kind, SweepEntry::Kind::undetermined);
    EXPECT_EQ(sweep.entries[1].kind, SweepEntry::Kind::undetermined);
    EXPECT_EQ(sweep.entries[2].kind, SweepEntry::Kind::certified);
}

TEST(Sweep, CevaFamily) {
    // Orders k | m with k != 3 certify through the single-bad-point witness;
    // order 3 stays undetermined with the cited dimension.
    for (unsigned m : {3u, 4u, 5u, 6u}) {
        Arrangement A = gen_ceva(m);
        auto lat = intersection_lattice(A);
        SweepOptions opt;
        opt.cited_dimensions = {{3u, {m % 3 == 0 ? 2 : 1, "MP"}}};
        auto sweep = milnor_sweep(A, lat, opt);
        EXPECT_FALSE(sweep.identity) << "m=" << m;
        for (const auto& e : sweep.entries) {
            if (e.order == 3) {
                EXPECT_EQ(e.kind, SweepEntry::Kind::undetermined) << "m=" << m;
                ASSERT_TRUE(e.cited_dimension.has_value());
                EXPECT_EQ(e.cited_dimension->first, m % 3 == 0 ? 2 : 1);
                EXPECT_EQ(e.cited_dimension->second, "MP");
            } else {
                EXPECT_EQ(e.kind, SweepEntry::Kind::certified)
                    << "m=" << m << " k=" << e.order;
                EXPECT_EQ(*e.report->criterion, Criterion::single_bad_point);
            }
        }
    }
}

TEST(Sweep, GenericTriangleHasNoOrdersToCheck) {
    Arrangement A({arr::ProjLine(Cyclotomic(1), Cyclotomic(0), Cyclotomic(0)),
                   arr::ProjLine(Cyclotomic(0), Cyclotomic(1), Cyclotomic(0)),
                   arr::ProjLine(Cyclotomic(0), Cyclotomic(0), Cyclotomic(1))},
                  "triangle");
    auto lat = intersection_lattice(A);
    auto sweep = milnor_sweep(A, lat, {});
    EXPECT_TRUE(sweep.orders.empty());
    EXPECT_TRUE(sweep.identity);
}

}  // namespace
