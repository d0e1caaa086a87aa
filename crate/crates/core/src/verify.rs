//! Named verification suites over one field: every closed-form claim is
//! recomputed by brute force and the comparisons are tallied into
//! [`VerificationReport`]s. A suite passes when every report has an empty
//! failure list.

use crate::classify::{
    census, classify_case, pgammal_equivalent, pgl_equivalent, predicted_spectrum,
    weight_two_points, CaseLabel, GroupFlavor,
};
use crate::error::Result;
use crate::field::{Felt, FieldSpec};
use crate::geometry;
use crate::linear_set::linear_set_of_b;
use crate::oracle::{
    bf_pgammal_equivalent, bf_pgl_equivalent, gammal_class_census, verify_glone_matrix,
    OracleLimits, VerificationReport,
};

/// Weight spectra: brute-force spectrum of every L_{U(b)} against the
/// case prediction, the size trichotomy, and the q³+1 size bound.
pub fn verify_weights(field: &FieldSpec) -> VerificationReport {
    let q = field.q();
    let sizes = [
        q * q * q + q * q + q + 1,
        q * q * q + q * q + 1,
        q * q * q + 1,
    ];
    let mut report = VerificationReport::new("weights", q);
    for b in field.elements() {
        let ls = linear_set_of_b(field, b);
        let case = classify_case(field, b);
        let ok = ls.spectrum() == predicted_spectrum(field, case)
            && sizes.contains(&ls.size())
            && ls.size() > q * q * q
            && weight_two_points(field, b) == ls.points_of_weight(2);
        report.record(ok, || {
            format!(
                "b = {}: case {} predicts {}, brute force gives {}",
                b,
                case,
                predicted_spectrum(field, case),
                ls.spectrum()
            )
        });
    }
    report
}

/// Census counts against the closed-form class numbers, plus, within the
/// oracle size guards, full agreement between the norm-invariant predicates
/// and the exhaustive PGL/PΓL scans on class representatives and on
/// `random_pairs` deterministic pseudo-random pairs.
pub fn verify_orbits(
    field: &FieldSpec,
    limits: &OracleLimits,
    random_pairs: u64,
) -> Result<Vec<VerificationReport>> {
    let q = field.q();
    let mut reports = Vec::new();

    let mut counts = VerificationReport::new("orbit census counts", q);
    let pgl = census(field, GroupFlavor::Pgl);
    counts.record(
        pgl.class_count(CaseLabel::Scattered) == q * (q - 1) / 2,
        || format!("scattered PGL classes: expected q(q−1)/2 = {}", q * (q - 1) / 2),
    );
    counts.record(pgl.class_count(CaseLabel::OneDoublePoint) == 1, || {
        "one-double-point PGL classes: expected 1".into()
    });
    counts.record(pgl.class_count(CaseLabel::QPlusOneDoublePoints) == q, || {
        format!("q+1-double-point PGL classes: expected q = {q}")
    });
    // for prime q the PΓL count of scattered classes is (q²−1)/4
    if field.e() == 1 && q % 2 == 1 {
        let pgammal = census(field, GroupFlavor::PGammaL);
        counts.record(
            pgammal.class_count(CaseLabel::Scattered) == (q * q - 1) / 4,
            || format!("scattered PΓL classes: expected (q²−1)/4 = {}", (q * q - 1) / 4),
        );
    }
    reports.push(counts);

    if q <= limits.max_pointset_q {
        let mut agreement = VerificationReport::new("oracle agreement", q);
        let reps: Vec<Felt> = pgl.classes.iter().map(|c| c.rep).collect();
        let mut pairs: Vec<(Felt, Felt)> = Vec::new();
        for &b in &reps {
            for &c in &reps {
                pairs.push((b, c));
            }
        }
        // deterministic pseudo-random pairs (splitmix-style walk)
        let mut state = 0x9e3779b97f4a7c15u64 ^ field.q4();
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 23) % field.q4()
        };
        for _ in 0..random_pairs {
            pairs.push((Felt::new(next()), Felt::new(next())));
        }
        for (b, c) in pairs {
            let closed = pgl_equivalent(field, b, c);
            let brute = bf_pgl_equivalent(field, b, c, limits)?.is_some();
            agreement.record(closed == brute, || {
                format!("PGL b = {b}, c = {c}: classifier {closed}, oracle {brute}")
            });
            let closed = pgammal_equivalent(field, b, c);
            let brute = bf_pgammal_equivalent(field, b, c, limits)?.is_some();
            agreement.record(closed == brute, || {
                format!("PGammaL b = {b}, c = {c}: classifier {closed}, oracle {brute}")
            });
        }
        reports.push(agreement);
    }
    Ok(reports)
}

/// GL-class-one checks: the explicit diagonal matrix identity for every b,
/// and (within the graph-census guard) the exhaustive scan over all (q⁴)⁴
/// graph subspaces defining each L_{U(b)}.
pub fn verify_glclass(field: &FieldSpec, limits: &OracleLimits) -> Result<Vec<VerificationReport>> {
    let q = field.q();
    let mut reports = Vec::new();
    let mut diag = VerificationReport::new("gl-class-one matrix identity", q);
    for b in field.elements() {
        diag.record(verify_glone_matrix(field, b), || {
            format!("b = {b}: diagonal matrix does not map U(b) onto U(b)^{{q²}}")
        });
    }
    reports.push(diag);
    if q <= limits.max_graph_q {
        let mut scan = VerificationReport::new("graph subspace census", q);
        for b in field.elements() {
            let census = gammal_class_census(field, b, limits)?;
            scan.record(census.single_gl_orbit, || {
                format!(
                    "b = {b}: {} matching graphs, not a single GL-orbit",
                    census.matching_polynomials
                )
            });
        }
        reports.push(scan);
    }
    Ok(reports)
}

/// Geometry suite: the subgeometry scans, the projection identity for
/// every b, and the spread/special-line battery for every scattered b.
pub fn verify_geometry(field: &FieldSpec) -> Vec<VerificationReport> {
    let q = field.q();
    let mut reports = Vec::new();

    // the O(q¹²) whole-space scans stay affordable up to q = 4
    if q <= 4 {
        let mut subgeometries = VerificationReport::new("subgeometry fixed-point scans", q);
        subgeometries.record(
            geometry::sigma_power_fixed_scan(field, 1) == geometry::sigma_subgeometry(field),
            || "Fix(σ) differs from the canonical subgeometry".into(),
        );
        subgeometries.record(
            geometry::sigma_power_fixed_scan(field, 2) == geometry::sigma_prime_subgeometry(field),
            || "Fix(σ²) differs from the order-q² subgeometry".into(),
        );
        reports.push(subgeometries);
    }

    let mut projection = VerificationReport::new("projection reproduces linear set", q);
    let mut battery = VerificationReport::new("scattered spread and special line", q);
    // the spread/special-line battery walks every spread line point by
    // point; past q = 4 that is minutes per b, so it stays desk-scale
    let run_battery = q <= 4;
    for b in field.elements() {
        if run_battery {
            let report = geometry::geometry_report(field, b);
            projection.record(report.projection_matches_linear_set, || {
                format!("b = {b}: projection from the vertex line mismatches L_U(b)")
            });
            if classify_case(field, b) == CaseLabel::Scattered {
                let ok = !report.vertex_meets_sigma_prime
                    && report.spread.as_ref().is_some_and(|s| {
                        s.size == field.q4() + 1
                            && s.pairwise_disjoint_on_sigma_prime
                            && s.covers_sigma_prime
                            && s.sigma_invariant_lines == 0
                            && s.sigma2_invariant_lines == field.q4() + 1
                    })
                    && report.special_line.as_ref().is_some_and(|sl| {
                        !sl.solid_meets_k
                            && sl.tau_orbit_size == 2
                            && sl.tau_orbit_swapped
                            && sl.meets_vertex
                            && sl.partner_meets_vertex
                            && sl.skew_partner
                            && sl.sigma2_invariant
                            && sl.agrees_with_exhaustive_search
                    });
                battery.record(ok, || format!("b = {b}: geometry battery failed"));
            }
        } else {
            let matches = geometry::project_linear_set(field, b)
                .map(|pts| {
                    pts.iter().map(|p| p.code()).collect::<Vec<_>>()
                        == linear_set_of_b(field, b).point_codes()
                })
                .unwrap_or(false);
            projection.record(matches, || {
                format!("b = {b}: projection from the vertex line mismatches L_U(b)")
            });
        }
    }
    reports.push(projection);
    if run_battery {
        reports.push(battery);
    }
    reports
}

/// Runs every suite that fits the guards.
pub fn verify_all(
    field: &FieldSpec,
    limits: &OracleLimits,
    random_pairs: u64,
) -> Result<Vec<VerificationReport>> {
    let mut reports = vec![verify_weights(field)];
    reports.extend(verify_orbits(field, limits, random_pairs)?);
    reports.extend(verify_glclass(field, limits)?);
    reports.extend(verify_geometry(field));
    Ok(reports)
}
