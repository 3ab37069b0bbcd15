#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arrcert/badcurve.hpp"
#include "arrcert/blowup.hpp"
#include "arrcert/generators.hpp"
#include "arrcert/localsys.hpp"

namespace arrcert::certify {

using arr::Arrangement;
using arr::IntersectionLattice;
using geom::Rational;
using lsys::Partition;
using lsys::SystemSpec;

enum class Criterion { cdo, single_bad_point, full_pipeline };
enum class Status { vanishing_certified, inconclusive, hypotheses_violated };

inline const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::cdo: return "cdo";
        case Criterion::single_bad_point: return "single_bad_point";
        case Criterion::full_pipeline: return "full_pipeline";
    }
    return "";
}
inline const char* to_string(Status s) {
    switch (s) {
        case Status::vanishing_certified: return "vanishing_certified";
        case Status::inconclusive: return "inconclusive";
        case Status::hypotheses_violated: return "hypotheses_violated";
    }
    return "";
}

// A line carrying no T_{=1} point certifies vanishing on its own.
inline std::optional<int> criterion_cdo(const IntersectionLattice& lat, const Partition& part) {
    if (!part.strict) throw hypothesis_violation("requires a strict local system");
    for (std::size_t i = 0; i < lat.per_line.size(); ++i) {
        bool clean = true;
        for (int idx : lat.per_line[i].multiple_points)
            if (part.in_eq1(idx)) clean = false;
        if (clean) return static_cast<int>(i);
    }
    return std::nullopt;
}

struct SingleBadResult {
    std::optional<std::pair<int, int>> witness;  // (line, T_{=1} point on it)
    struct FailedCandidate {
        int line = -1;
        int point = -1;
        geom::ProjLine bad_line;  // through the point, meeting the arrangement inside T_{=1}
    };
    std::vector<FailedCandidate> failed;
    bool any_single = false;
};

// A line whose T_{=1} trace is a single point p certifies vanishing provided
// no line through p meets the arrangement entirely inside T_{=1}. Candidate
// lines are exactly the joins of p with the other T_{=1} points: any bad
// line picks up a second T_{=1} point from an arrangement line missing p
// (the arrangement is not a pencil).
inline SingleBadResult criterion_single_bad_point(const Arrangement& A,
                                                  const IntersectionLattice& lat,
                                                  const Partition& part) {
    if (!part.strict) throw hypothesis_violation("requires a strict local system");
    if (arr::is_pencil(A)) throw hypothesis_violation("pencil arrangement");
    SingleBadResult res;
    const int n = static_cast<int>(A.size());
    for (int h0 = 0; h0 < n; ++h0) {
        std::vector<int> eq1_here;
        for (int idx : lat.per_line[h0].multiple_points)
            if (part.in_eq1(idx)) eq1_here.push_back(idx);
        if (eq1_here.size() != 1) continue;
        res.any_single = true;
        const int p = eq1_here[0];
        std::optional<geom::ProjLine> bad;
        std::set<geom::ProjLine> tried;
        for (int q : part.eq1) {
            if (q == p) continue;
            geom::ProjLine cand = geom::join(lat.points[p].point, lat.points[q].point);
            if (!tried.insert(cand).second) continue;
            bool in_arrangement = false;
            for (const auto& l : A.lines) in_arrangement |= l == cand;
            if (in_arrangement) continue;
            // The candidate is bad iff every arrangement line meets it in a
            // T_{=1} point, i.e. passes through a T_{=1} point on it.
            std::vector<char> covered(n, 0);
            for (int t : part.eq1)
                if (geom::on_line(lat.points[t].point, cand))
                    for (int line : lat.points[t].incident) covered[line] = 1;
            bool all = true;
            for (int line = 0; line < n; ++line) all &= covered[line] != 0;
            if (all) {
                bad = cand;
                break;
            }
        }
        if (!bad) {
            res.witness = {h0, p};
            return res;
        }
        res.failed.push_back({h0, p, *bad});
    }
    return res;
}

// Evidence bundle of the blow-everything pipeline.
struct PipelineEvidence {
    std::size_t blown_points = 0;
    std::size_t support_size = 0;
    bool normal_crossing_by_construction = false;
    std::optional<blowup::NMCertificate> nm;
    std::optional<blowup::NmInfeasibility> nm_infeasible;
    Rational self_intersection = Rational(0);
    bool self_positive = false;
    bool connected = false;
    badcurve::CurveExclusionReport exclusion;
};

struct VanishingReport {
    std::string arrangement;
    std::string system;
    Status status = Status::inconclusive;
    std::optional<Criterion> criterion;
    std::optional<int> cdo_line;
    std::optional<std::pair<int, int>> single_bad_witness;
    std::optional<blowup::QDivisor> single_bad_certificate;
    std::optional<PipelineEvidence> pipeline;
    std::vector<std::string> notes;
    std::map<unsigned, std::string> external_assumptions;
    std::vector<std::string> citations;
};

struct CertifyOptions {
    badcurve::DegreePolicy degree_policy{4};  // user fallback when no bound is proven
    bool try_cdo = true;
    bool try_single_bad_point = true;
};

inline VanishingReport certify_vanishing(const Arrangement& A, const IntersectionLattice& lat,
                                         const SystemSpec& spec,
                                         const CertifyOptions& opt = {}) {
    VanishingReport rep;
    rep.arrangement = A.label;
    rep.system = spec.describe();

    if (spec.kind != SystemSpec::Kind::symbolic &&
        spec.system->size() != A.size()) {
        rep.status = Status::hypotheses_violated;
        rep.notes.push_back("exponent count differs from the line count");
        return rep;
    }
    if (!spec.strict()) {
        rep.status = Status::hypotheses_violated;
        rep.notes.push_back("local system has a trivial line monodromy (t_i = 1)");
        return rep;
    }
    if (arr::is_pencil(A)) {
        rep.status = Status::hypotheses_violated;
        rep.notes.push_back("arrangement is a pencil");
        return rep;
    }
    const Partition part = spec.make_partition(lat);

    if (opt.try_cdo) {
        if (auto line = criterion_cdo(lat, part)) {
            rep.status = Status::vanishing_certified;
            rep.criterion = Criterion::cdo;
            rep.cdo_line = *line;
            rep.citations = {"vanishing for a line clear of rigid points"};
            return rep;
        }
    }
    if (opt.try_single_bad_point) {
        auto sb = criterion_single_bad_point(A, lat, part);
        if (sb.witness) {
            blowup::DivisorModel model = blowup::make_model_all_t(A, lat);
            rep.status = Status::vanishing_certified;
            rep.criterion = Criterion::single_bad_point;
            rep.single_bad_witness = sb.witness;
            rep.single_bad_certificate = blowup::certificate_from_single_bad_point(
                model, sb.witness->first, sb.witness->second, part);
            rep.citations = {"nakai-moishezon ampleness criterion",
                             "affine complement of an effective ample divisor",
                             "twisted vanishing on affine complements"};
            return rep;
        }
        if (sb.any_single)
            rep.notes.push_back(
                "a line with a single T_{=1} point exists, but a line through its point meets "
                "the arrangement inside T_{=1}");
    }

    // Full pipeline: blow up every multiple point, so the total transform is
    // normal crossing along D' by construction; D' = strict lines plus the
    // exceptionals over T_{!=1}.
    blowup::DivisorModel model = blowup::make_model_all_t(A, lat);
    PipelineEvidence ev;
    ev.blown_points = lat.t_points.size();
    ev.normal_crossing_by_construction = true;
    auto support = blowup::dprime_support(model, part);
    ev.support_size = support.size();
    auto search = blowup::nm_search(model, support);
    bool nm_ok = false;
    if (search.divisor) {
        auto v = blowup::verify_nm(model, *search.divisor);
        ev.nm = v.certificate;
        ev.self_intersection = v.certificate->self_intersection;
        ev.self_positive = ev.self_intersection > 0;
        nm_ok = true;
    } else {
        ev.nm_infeasible = search.infeasible;
        rep.notes.push_back("no positive divisor on D' has all slacks positive");
    }
    ev.connected = blowup::divisor_connected(model, support);
    if (!ev.connected) rep.notes.push_back("D' is not connected");
    ev.exclusion = badcurve::exclude_bad_curves(lat, part, opt.degree_policy);

    const bool excluded_all = ev.exclusion.complete();
    const bool certified = nm_ok && ev.self_positive && ev.connected &&
                           ev.exclusion.bound_proven && excluded_all;
    if (!excluded_all)
        rep.notes.push_back("exclusion found candidate curves (irreducibility untested)");
    else if (!ev.exclusion.bound_proven)
        rep.notes.push_back("bounded exclusion only: no proven degree bound for this profile");
    if (nm_ok && !ev.self_positive) rep.notes.push_back("self-intersection not positive");

    rep.pipeline = std::move(ev);
    rep.criterion = Criterion::full_pipeline;
    rep.status = certified ? Status::vanishing_certified : Status::inconclusive;
    if (certified)
        rep.citations = {"nakai-moishezon ampleness criterion",
                         "affine complement of an effective ample divisor",
                         "removing closed curves keeps a surface affine",
                         "twisted vanishing on affine complements"};
    return rep;
}

// One Milnor order in the sweep.
struct SweepEntry {
    unsigned order = 0;
    enum class Kind { certified, externally_excluded, undetermined } kind = Kind::undetermined;
    std::string citation;  // for external exclusions
    std::optional<std::pair<int, std::string>> cited_dimension;  // for undetermined orders
    std::optional<VanishingReport> report;
};

struct SweepOptions {
    std::map<unsigned, std::string> assume_excluded;
    std::map<unsigned, std::pair<int, std::string>> cited_dimensions;
    CertifyOptions certify;
};

struct SweepReport {
    std::string arrangement;
    std::vector<unsigned> orders;  // surviving the order filter
    std::vector<SweepEntry> entries;
    bool identity = false;  // monodromy identity on H^1
    std::vector<std::string> citations;
};

// Certifies every eigenvalue order surviving the per-line multiplicity
// filter, honoring externally excluded orders; the aggregate verdict is
// "identity" exactly when nothing stays undetermined.
inline SweepReport milnor_sweep(const Arrangement& A, const IntersectionLattice& lat,
                                const SweepOptions& opt = {}) {
    SweepReport sweep;
    sweep.arrangement = A.label;
    sweep.orders = lsys::milnor_order_filter(lat);
    sweep.citations = {"eigenvalue orders outside the per-line multiplicity profile vanish"};
    bool all_settled = true;
    for (unsigned k : sweep.orders) {
        SweepEntry entry;
        entry.order = k;
        auto ex = opt.assume_excluded.find(k);
        if (ex != opt.assume_excluded.end()) {
            entry.kind = SweepEntry::Kind::externally_excluded;
            entry.citation = ex->second;
        } else {
            VanishingReport rep = certify_vanishing(
                A, lat, SystemSpec::from_milnor(static_cast<unsigned>(A.size()), k),
                opt.certify);
            const bool ok = rep.status == Status::vanishing_certified;
            entry.kind = ok ? SweepEntry::Kind::certified : SweepEntry::Kind::undetermined;
            if (!ok) {
                auto dim = opt.cited_dimensions.find(k);
                if (dim != opt.cited_dimensions.end()) entry.cited_dimension = dim->second;
            }
            entry.report = std::move(rep);
        }
        if (entry.kind == SweepEntry::Kind::undetermined) all_settled = false;
        sweep.entries.push_back(std::move(entry));
    }
    sweep.identity = all_settled;
    return sweep;
}

}  // namespace arrcert::certify
