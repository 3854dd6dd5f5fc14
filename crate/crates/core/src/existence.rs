//! Existence of smooth curves with prescribed degree and genus on smooth
//! quartic surfaces, enumeration of candidate classes, and the bulk scan
//! that hunts for non-reduced Hilbert-scheme components.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::Signed;

use crate::classify::{classify_curve, Assumptions, ClassificationReport, HilbertStatus};
use crate::cone::SurfaceModel;
use crate::lattice::{Ambient, DivisorClass};

/// Whether some smooth quartic surface in ℙ³ contains a smooth connected
/// curve of degree d > 0 and genus g ≥ 0: exactly when 8(g − 1) = d², or
/// 8g < d² and (d, g) ≠ (5, 3).
pub fn mori_exists(d: &BigInt, g: &BigInt) -> bool {
    debug_assert!(d.is_positive() && !g.is_negative());
    let d2 = d * d;
    let eight_g = BigInt::from(8) * g;
    if &eight_g - 8 == d2 {
        return true;
    }
    eight_g < d2 && !(*d == BigInt::from(5) && *g == BigInt::from(3))
}

/// All classes (a, b) with b ≠ 0, degree exactly `d`, and genus ≥ 0 —
/// the candidates for smooth connected curves — optionally filtered to a
/// single genus.  Sorted lexicographically.
///
/// Finiteness: with Gram matrix (4, e; e, s) and Δ = e² − 4s > 0,
/// 4·C² = d² − b²Δ, so genus ≥ 0 (C² ≥ −2) bounds b² ≤ (d² + 8)/Δ.
pub fn enumerate_classes(surface: &SurfaceModel, d: i64, g: Option<i64>) -> Vec<DivisorClass> {
    assert!(d > 0, "degree must be positive");
    let (e, s) = surface.gram();
    let disc = (e as i128) * (e as i128) - 4 * (s as i128);
    let b_bound = (((d as i128) * (d as i128) + 8) / disc).sqrt();
    let mut found = Vec::new();
    for b in -b_bound..=b_bound {
        if b == 0 {
            continue;
        }
        let numerator = d as i128 - b * e as i128;
        if numerator.rem_euclid(4) != 0 {
            continue;
        }
        let a = numerator.div_euclid(4);
        let class = DivisorClass::new(a, b);
        debug_assert_eq!(surface.degree(&class), BigInt::from(d));
        let genus = surface.genus(&class);
        if genus.is_negative() {
            continue;
        }
        if let Some(g) = g {
            if genus != BigInt::from(g) {
                continue;
            }
        }
        found.push(class);
    }
    found.sort_by(|p, q| (&p.x, &p.y).cmp(&(&q.x, &q.y)));
    found
}

/// Classify every candidate class of degree ≤ `d_max` and keep the ones
/// certified as generically non-reduced components.  Each surviving
/// report is cross-checked against `mori_exists`, so every class in the
/// output is realized by an actual curve on an actual surface.  Output
/// is ordered by degree, then lexicographically by class.
pub fn scan_nonreduced(
    ambient: Ambient,
    surface: &SurfaceModel,
    d_max: i64,
    assumptions: &Assumptions,
) -> Vec<ClassificationReport> {
    assert!(d_max >= 1, "scan needs a positive degree cutoff");
    let mut reports = Vec::new();
    for d in 1..=d_max {
        for class in enumerate_classes(surface, d, None) {
            let report = classify_curve(ambient, surface, &class, assumptions);
            if report.status == HilbertStatus::GenericallyNonReducedComponent {
                assert!(
                    mori_exists(&report.degree, &report.genus),
                    "certified class {class} has unrealizable (d, g)"
                );
                reports.push(report);
            }
        }
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::GeneratorKind;
    use num_traits::Zero;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn conic_surface() -> SurfaceModel {
        SurfaceModel::from_family(GeneratorKind::Rational, 2, None).unwrap()
    }

    fn granted() -> Assumptions {
        Assumptions {
            normal_bundle_globally_generated: true,
            pi_map_nonsurjective_elliptic: true,
        }
    }

    #[test]
    fn degree_genus_existence_matches_known_cases() {
        assert!(!mori_exists(&big(5), &big(3)));
        assert!(mori_exists(&big(4), &big(3)));
        assert!(mori_exists(&big(6), &big(2)));
        assert!(mori_exists(&big(1), &big(0)));
        assert!(mori_exists(&big(5), &big(2)));
        // Genus above the parabola, and not on it: no curve.
        assert!(!mori_exists(&big(5), &big(4)));
        assert!(!mori_exists(&big(6), &big(5)));
    }

    #[test]
    fn boundary_parabola_cases_exist() {
        for d in [4i64, 8, 12] {
            let g = d * d / 8 + 1;
            assert!(mori_exists(&big(d), &big(g)), "d = {d}");
            // One above the parabola fails.
            assert!(!mori_exists(&big(d), &big(g + 1)), "d = {d}");
        }
    }

    #[test]
    fn enumeration_on_the_conic_lattice() {
        let s = conic_surface();
        assert_eq!(
            enumerate_classes(&s, 12, Some(13)),
            vec![DivisorClass::new(2, 2), DivisorClass::new(4, -2)]
        );
        assert_eq!(enumerate_classes(&s, 12, Some(19)), vec![]);
        let all = enumerate_classes(&s, 12, None);
        assert!(all.contains(&DivisorClass::new(2, 2)));
        for class in &all {
            assert_eq!(s.degree(class), big(12));
            assert!(!s.genus(class).is_negative());
            assert!(!class.y.is_zero());
        }
    }

    #[test]
    fn enumeration_on_the_plane_cubic_lattice() {
        let s = SurfaceModel::plane_cubic();
        assert_eq!(
            enumerate_classes(&s, 22, Some(57)),
            vec![DivisorClass::new(4, 2), DivisorClass::new(7, -2)]
        );
    }

    #[test]
    fn enumeration_respects_the_genus_bound() {
        let s = conic_surface();
        for d in 1..=20i64 {
            for class in enumerate_classes(&s, d, None) {
                assert_eq!(s.degree(&class), big(d));
                assert!(s.self_intersection(&class) >= big(-2));
            }
        }
    }

    #[test]
    fn conic_scan_finds_the_diagonal_family() {
        let s = conic_surface();
        let reports = scan_nonreduced(Ambient::QuarticThreefold, &s, 18, &granted());
        let classes: Vec<&DivisorClass> = reports.iter().map(|r| &r.curve_class).collect();
        assert!(classes.contains(&&DivisorClass::new(2, 2)));
        assert!(classes.contains(&&DivisorClass::new(3, 3)));
        for report in &reports {
            assert_eq!(report.h1_adjoint, big(1));
            assert!(report.preconditions.all_pass());
            assert!(report.degree <= big(18));
            assert!(mori_exists(&report.degree, &report.genus));
        }
    }

    #[test]
    fn degree_cutoff_is_respected() {
        let s = conic_surface();
        let reports = scan_nonreduced(Ambient::QuarticThreefold, &s, 11, &granted());
        assert!(reports.is_empty());
    }

    #[test]
    fn plane_cubic_scan_finds_the_pencil_example() {
        let s = SurfaceModel::plane_cubic();
        let reports = scan_nonreduced(Ambient::ProjectiveSpace3, &s, 22, &Assumptions::default());
        let classes: Vec<&DivisorClass> = reports.iter().map(|r| &r.curve_class).collect();
        assert!(classes.contains(&&DivisorClass::new(4, 2)));
    }
}
