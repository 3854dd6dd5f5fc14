//! Extremal rays of the Mori cone and the positivity predicates built on
//! them: nefness, effectivity, and reduction by (−2)-curve base
//! components.
//!
//! On each surface family the closed cone of curves is spanned by two
//! rays, and everything else (nef cone, effective cone, h⁰) follows from
//! pairing against them:
//!
//! * **rational generator**, even e = 2m: the (−2)-curves E = (0, 1) and
//!   E′ = (m, −1);
//! * **rational generator**, odd e: E and the second (−2)-curve
//!   E′ = (2Y, −(X − eY)) where (X, Y) is the fundamental solution of
//!   X² − (e² + 8)Y² = 1 — the minimal nonzero solution of
//!   y² + exy − 2x² = 1 in disguise;
//! * **elliptic generator**: the fiber classes F = (0, 1) and
//!   F′ = (e/2, −1) for even e, (e, −2) for odd e;
//! * **line generator** (e = 1): the line E = (0, 1) and the elliptic
//!   pencil class F = (1, −1) of degree 3;
//! * **no special curves**: both boundary rays of the positive cone are
//!   irrational, and no integral class sits on them.
//!
//! A class is nef iff it pairs ≥ 0 with both rays.  Effectivity is
//! decided by repeatedly subtracting a (−2)-ray that pairs negatively
//! (each subtraction removes a forced base component, preserving
//! effectivity in both directions) and inspecting the remainder.
//!
//! The surface with an elliptic plane-cubic generator, Gram (4, 3; 3, 0),
//! carries the very same cone as the line-generator surface: the basis
//! change E = h − F identifies them, since E² = 4 − 2·3 = −2 and
//! h·E = 1.  [`SurfaceModel::plane_cubic`] performs that identification
//! once and all predicates then speak the caller's (h, F) coordinates.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::lattice::{
    pairing_with_gram, DivisorClass, GeneratorKind, LatticeError, PicardLattice,
};
use crate::pell;

/// One extremal ray of the Mori cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtremalRay {
    /// The class of a smooth rational curve with square −2.
    MinusTwoCurve(DivisorClass),
    /// The class of an elliptic pencil fiber (square 0).
    EllipticFiber(DivisorClass),
    /// An irrational boundary ray of the positive cone; carries no
    /// integral class.
    IrrationalNullBoundary,
}

impl ExtremalRay {
    pub fn class(&self) -> Option<&DivisorClass> {
        match self {
            ExtremalRay::MinusTwoCurve(c) | ExtremalRay::EllipticFiber(c) => Some(c),
            ExtremalRay::IrrationalNullBoundary => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ExtremalRay::MinusTwoCurve(_) => "minus-two-curve",
            ExtremalRay::EllipticFiber(_) => "elliptic-fiber",
            ExtremalRay::IrrationalNullBoundary => "irrational-null-boundary",
        }
    }
}

/// The two extremal rays spanning the closed cone of curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoriCone {
    pub ray1: ExtremalRay,
    pub ray2: ExtremalRay,
}

impl MoriCone {
    pub fn rays(&self) -> [&ExtremalRay; 2] {
        [&self.ray1, &self.ray2]
    }

    /// Classes of the rays that are (−2)-curves.
    pub fn minus_two_classes(&self) -> Vec<&DivisorClass> {
        self.rays()
            .into_iter()
            .filter_map(|r| match r {
                ExtremalRay::MinusTwoCurve(c) => Some(c),
                _ => None,
            })
            .collect()
    }

    /// Classes of the rays that are elliptic fibers.
    pub fn elliptic_classes(&self) -> Vec<&DivisorClass> {
        self.rays()
            .into_iter()
            .filter_map(|r| match r {
                ExtremalRay::EllipticFiber(c) => Some(c),
                _ => None,
            })
            .collect()
    }
}

/// Result of stripping (−2)-ray base components from a class:
/// D = nef_part + Σ subtracted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativePartReduction {
    pub nef_part: DivisorClass,
    /// The subtracted ray classes with multiplicity, in subtraction order.
    pub subtracted: Vec<DivisorClass>,
}

/// A surface together with its Mori cone, ready for positivity queries.
///
/// All classes entering and leaving the public methods are written in the
/// caller's basis (h, G).  For the plane-cubic surface that basis is
/// (h, F) with Gram (4, 3; 3, 0) while the cone structure is the
/// line-generator one; the translation is internal.
#[derive(Debug, Clone)]
pub struct SurfaceModel {
    lattice: PicardLattice,
    gram: (i64, i64),
    cone: MoriCone,
    rebased: bool,
}

impl SurfaceModel {
    /// Builds the model for a validated lattice.
    pub fn new(lattice: PicardLattice) -> Self {
        let e = lattice.e();
        let cone = match lattice.kind() {
            GeneratorKind::Rational => {
                let e_prime = if e % 2 == 0 {
                    DivisorClass::new(e / 2, -1)
                } else {
                    let sol = pell::fundamental_solution(e * e + 8)
                        .expect("e² + 8 is a square only at e = 1");
                    let x = BigInt::from(2) * &sol.y;
                    let y = &sol.x - BigInt::from(e) * &sol.y;
                    DivisorClass { x, y: -y }
                };
                MoriCone {
                    ray1: ExtremalRay::MinusTwoCurve(DivisorClass::new(0, 1)),
                    ray2: ExtremalRay::MinusTwoCurve(e_prime),
                }
            }
            GeneratorKind::Elliptic => {
                let f_prime = if e % 2 == 0 {
                    DivisorClass::new(e / 2, -1)
                } else {
                    DivisorClass::new(e, -2)
                };
                MoriCone {
                    ray1: ExtremalRay::EllipticFiber(DivisorClass::new(0, 1)),
                    ray2: ExtremalRay::EllipticFiber(f_prime),
                }
            }
            GeneratorKind::Line => MoriCone {
                ray1: ExtremalRay::MinusTwoCurve(DivisorClass::new(0, 1)),
                ray2: ExtremalRay::EllipticFiber(DivisorClass::new(1, -1)),
            },
            GeneratorKind::NoSpecialCurves => MoriCone {
                ray1: ExtremalRay::IrrationalNullBoundary,
                ray2: ExtremalRay::IrrationalNullBoundary,
            },
        };
        let gram = (lattice.e(), lattice.s());
        SurfaceModel { lattice, gram, cone, rebased: false }
    }

    /// The surface whose generator is an elliptic plane cubic: caller
    /// basis (h, F) with Gram (4, 3; 3, 0), cone structure that of the
    /// line-generator surface under E = h − F.
    pub fn plane_cubic() -> Self {
        let lattice = PicardLattice::new(1, -2, GeneratorKind::Line)
            .expect("line lattice is valid");
        let line_model = SurfaceModel::new(lattice);
        let map = |c: &DivisorClass| rebase(c);
        let cone = MoriCone {
            ray1: match &line_model.cone.ray1 {
                ExtremalRay::MinusTwoCurve(c) => ExtremalRay::MinusTwoCurve(map(c)),
                _ => unreachable!(),
            },
            ray2: match &line_model.cone.ray2 {
                ExtremalRay::EllipticFiber(c) => ExtremalRay::EllipticFiber(map(c)),
                _ => unreachable!(),
            },
        };
        SurfaceModel {
            lattice: line_model.lattice,
            gram: (3, 0),
            cone,
            rebased: true,
        }
    }

    /// Convenience constructor from a family request, as the CLI issues
    /// them.  `s` is required for `NoSpecialCurves` and checked for
    /// consistency otherwise.  An elliptic request with e = 3 yields the
    /// plane-cubic surface.
    pub fn from_family(
        kind: GeneratorKind,
        e: i64,
        s: Option<i64>,
    ) -> Result<Self, LatticeError> {
        let expect_s = |required: i64| match s {
            Some(v) if v != required => Err(LatticeError::KindMismatch(format!(
                "this family has G² = {required}, got {v}"
            ))),
            _ => Ok(required),
        };
        match kind {
            GeneratorKind::Rational => {
                let s = expect_s(-2)?;
                Ok(SurfaceModel::new(PicardLattice::new(e, s, kind)?))
            }
            GeneratorKind::Elliptic => {
                let s = expect_s(0)?;
                if e == 3 {
                    Ok(SurfaceModel::plane_cubic())
                } else {
                    Ok(SurfaceModel::new(PicardLattice::new(e, s, kind)?))
                }
            }
            GeneratorKind::Line => {
                let s = expect_s(-2)?;
                Ok(SurfaceModel::new(PicardLattice::new(e, s, kind)?))
            }
            GeneratorKind::NoSpecialCurves => {
                let s = s.ok_or_else(|| {
                    LatticeError::KindMismatch(
                        "G² must be given for a no-special-curves lattice".into(),
                    )
                })?;
                Ok(SurfaceModel::new(PicardLattice::new(e, s, kind)?))
            }
        }
    }

    /// The validated lattice the cone was computed on.  For the
    /// plane-cubic surface this is the line-generator lattice.
    pub fn lattice(&self) -> &PicardLattice {
        &self.lattice
    }

    /// The cone structure governing the positivity predicates.
    pub fn kind(&self) -> GeneratorKind {
        self.lattice.kind()
    }

    /// The Gram pair (e, s) of the caller's basis.
    pub fn gram(&self) -> (i64, i64) {
        self.gram
    }

    /// True when the caller's basis is the plane-cubic one.
    pub fn rebased(&self) -> bool {
        self.rebased
    }

    /// The extremal rays in the caller's basis.
    pub fn mori_cone(&self) -> &MoriCone {
        &self.cone
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> BigInt {
        pairing_with_gram(self.gram.0, self.gram.1, a, b)
    }

    pub fn self_intersection(&self, d: &DivisorClass) -> BigInt {
        self.intersect(d, d)
    }

    pub fn degree(&self, d: &DivisorClass) -> BigInt {
        BigInt::from(4) * &d.x + BigInt::from(self.gram.0) * &d.y
    }

    pub fn genus(&self, d: &DivisorClass) -> BigInt {
        self.self_intersection(d) / 2 + 1
    }

    pub fn euler_characteristic(&self, d: &DivisorClass) -> BigInt {
        self.self_intersection(d) / 2 + 2
    }

    /// Nef ⟺ D pairs ≥ 0 with both rays; on the no-special-curves
    /// surface the rays are irrational and nef ⟺ D² ≥ 0, D·h ≥ 0.
    pub fn is_nef(&self, d: &DivisorClass) -> bool {
        if self.kind() == GeneratorKind::NoSpecialCurves {
            return !self.self_intersection(d).is_negative()
                && !self.degree(d).is_negative();
        }
        self.cone.rays().into_iter().all(|ray| {
            let class = ray.class().expect("integral rays");
            !self.intersect(d, class).is_negative()
        })
    }

    /// Strips (−2)-ray base components: while some (−2)-ray E has
    /// D·E < 0 and deg D ≥ 0, replace D by D − E.  For an effective
    /// class this ends at its nef moving part.
    pub fn reduce_negative_part(&self, d: &DivisorClass) -> NegativePartReduction {
        let mut current = d.clone();
        let mut subtracted = Vec::new();
        'outer: while !self.degree(&current).is_negative() {
            for ray in self.cone.minus_two_classes() {
                if self.intersect(&current, ray).is_negative() {
                    current = &current - ray;
                    subtracted.push(ray.clone());
                    continue 'outer;
                }
            }
            break;
        }
        NegativePartReduction { nef_part: current, subtracted }
    }

    /// Whether the class is linearly equivalent to a nonzero effective
    /// divisor.  The zero class is not effective here.
    pub fn is_effective(&self, d: &DivisorClass) -> bool {
        if d.is_zero() {
            return false;
        }
        if self.kind() == GeneratorKind::NoSpecialCurves {
            // The effective cone is the closed positive cone, which
            // contains no nonzero integral boundary class.
            return self.self_intersection(d).is_positive()
                && self.degree(d).is_positive();
        }
        let reduction = self.reduce_negative_part(d);
        let p = &reduction.nef_part;
        if p.is_zero() {
            // D is a sum of (−2)-ray curves.
            return true;
        }
        for fiber in self.cone.elliptic_classes() {
            if self.intersect(p, fiber).is_negative() {
                return false;
            }
        }
        if self.degree(p).is_negative() {
            return false;
        }
        debug_assert!(self.is_nef(p));
        // A nonzero nef class has positive degree and moves by
        // Riemann–Roch.
        self.degree(p).is_positive()
    }
}

/// The involution (a, b) ↦ (a + b, −b) exchanging the (h, F) basis of the
/// plane-cubic surface with the (h, E) basis of the line surface.
fn rebase(c: &DivisorClass) -> DivisorClass {
    DivisorClass { x: &c.x + &c.y, y: -&c.y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform;
    use num_traits::Zero;

    fn surface(kind: GeneratorKind, e: i64) -> SurfaceModel {
        SurfaceModel::from_family(kind, e, None).unwrap()
    }

    fn minus_two_rays(s: &SurfaceModel) -> Vec<DivisorClass> {
        s.mori_cone().minus_two_classes().into_iter().cloned().collect()
    }

    #[test]
    fn conic_lattice_rays() {
        let s = surface(GeneratorKind::Rational, 2);
        assert_eq!(
            minus_two_rays(&s),
            vec![DivisorClass::new(0, 1), DivisorClass::new(1, -1)]
        );
    }

    #[test]
    fn second_ray_table_for_small_degrees() {
        // (e, x, y, degree) with the second (−2)-curve written xh − yG.
        let expected: [(i64, i64, i64, i64); 8] = [
            (2, 1, 1, 2),
            (3, 16, 9, 37),
            (4, 2, 1, 4),
            (5, 8, 3, 17),
            (6, 3, 1, 6),
            (7, 40, 11, 83),
            (8, 4, 1, 8),
            (9, 106_000, 23_001, 216_991),
        ];
        for (e, x, y, deg) in expected {
            let s = surface(GeneratorKind::Rational, e);
            let rays = minus_two_rays(&s);
            assert_eq!(rays.len(), 2);
            let e_prime = &rays[1];
            assert_eq!(e_prime.x, BigInt::from(x), "e = {e}");
            assert_eq!(e_prime.y, BigInt::from(-y), "e = {e}");
            assert_eq!(s.degree(e_prime), BigInt::from(deg), "e = {e}");
        }
    }

    #[test]
    fn both_rational_rays_are_minus_two_classes_up_to_e_50() {
        for e in 2..=50 {
            let s = surface(GeneratorKind::Rational, e);
            for ray in minus_two_rays(&s) {
                assert_eq!(s.self_intersection(&ray), BigInt::from(-2), "e = {e}");
                assert!(s.degree(&ray).is_positive(), "e = {e}");
            }
            // No null classes on these lattices (e ≥ 2).
            assert!(quadform::null_rays(s.lattice()).rays.is_empty());
        }
    }

    #[test]
    fn elliptic_rays_have_square_zero_up_to_e_50() {
        for e in 4..=50 {
            let s = surface(GeneratorKind::Elliptic, e);
            let rays: Vec<_> =
                s.mori_cone().elliptic_classes().into_iter().cloned().collect();
            assert_eq!(rays.len(), 2);
            for ray in &rays {
                assert!(s.self_intersection(ray).is_zero(), "e = {e}");
                assert!(s.degree(ray).is_positive(), "e = {e}");
            }
            assert_eq!(rays[0], DivisorClass::new(0, 1));
            let f_prime = if e % 2 == 0 {
                DivisorClass::new(e / 2, -1)
            } else {
                DivisorClass::new(e, -2)
            };
            assert_eq!(rays[1], f_prime, "e = {e}");
        }
    }

    #[test]
    fn line_surface_rays() {
        let s = surface(GeneratorKind::Line, 1);
        let cone = s.mori_cone();
        assert_eq!(
            cone.ray1,
            ExtremalRay::MinusTwoCurve(DivisorClass::new(0, 1))
        );
        assert_eq!(
            cone.ray2,
            ExtremalRay::EllipticFiber(DivisorClass::new(1, -1))
        );
        // The pencil class has degree 3.
        assert_eq!(s.degree(cone.ray2.class().unwrap()), BigInt::from(3));
    }

    #[test]
    fn plane_cubic_surface_is_the_rebased_line_surface() {
        let s = SurfaceModel::plane_cubic();
        assert!(s.rebased());
        assert_eq!(s.gram(), (3, 0));
        let cone = s.mori_cone();
        // In the (h, F) basis the line is h − F and the pencil is F.
        assert_eq!(
            cone.ray1,
            ExtremalRay::MinusTwoCurve(DivisorClass::new(1, -1))
        );
        assert_eq!(cone.ray2, ExtremalRay::EllipticFiber(DivisorClass::new(0, 1)));
        assert_eq!(s.self_intersection(&DivisorClass::new(1, -1)), BigInt::from(-2));
        assert_eq!(s.degree(&DivisorClass::new(0, 1)), BigInt::from(3));
    }

    #[test]
    fn nef_examples_on_the_conic_lattice() {
        let s = surface(GeneratorKind::Rational, 2);
        assert!(s.is_nef(&DivisorClass::new(1, 1)));
        assert!(!s.is_nef(&DivisorClass::new(1, 2)));
        assert!(s.is_nef(&DivisorClass::new(1, 0)));
        assert!(s.is_nef(&DivisorClass::zero()));
    }

    #[test]
    fn negative_part_reduction_on_the_line_surface() {
        let s = surface(GeneratorKind::Line, 1);
        let reduction = s.reduce_negative_part(&DivisorClass::new(1, 2));
        assert_eq!(reduction.nef_part, DivisorClass::new(1, 0));
        assert_eq!(
            reduction.subtracted,
            vec![DivisorClass::new(0, 1), DivisorClass::new(0, 1)]
        );
    }

    #[test]
    fn negative_part_reduction_examples() {
        let s = surface(GeneratorKind::Rational, 2);
        let r = s.reduce_negative_part(&DivisorClass::new(1, 2));
        assert_eq!(r.nef_part, DivisorClass::new(1, 1));
        assert_eq!(r.subtracted, vec![DivisorClass::new(0, 1)]);

        // Already nef: nothing subtracted.
        let r = s.reduce_negative_part(&DivisorClass::new(1, 1));
        assert_eq!(r.nef_part, DivisorClass::new(1, 1));
        assert!(r.subtracted.is_empty());

        // A rigid sum of (−2)-curves reduces to zero.
        let r = s.reduce_negative_part(&DivisorClass::new(0, 2));
        assert_eq!(r.nef_part, DivisorClass::zero());
        assert_eq!(r.subtracted.len(), 2);
    }

    #[test]
    fn effectivity_examples()  {
        let s = surface(GeneratorKind::Rational, 2);
        assert!(s.is_effective(&DivisorClass::new(1, 2)));
        assert!(s.is_effective(&DivisorClass::new(0, 1)));
        assert!(s.is_effective(&DivisorClass::new(0, 2)));
        assert!(s.is_effective(&DivisorClass::new(1, -1)));
        assert!(!s.is_effective(&DivisorClass::zero()));
        assert!(!s.is_effective(&DivisorClass::new(-1, 0)));
        assert!(!s.is_effective(&DivisorClass::new(0, -1)));

        let elliptic = surface(GeneratorKind::Elliptic, 4);
        assert!(elliptic.is_effective(&DivisorClass::new(0, 3)));
        assert!(!elliptic.is_effective(&DivisorClass::new(-1, 1)));

        let none = SurfaceModel::from_family(GeneratorKind::NoSpecialCurves, 6, Some(2))
            .unwrap();
        assert!(none.is_effective(&DivisorClass::new(0, 1)));
        assert!(none.is_effective(&DivisorClass::new(1, 1)));
        assert!(!none.is_effective(&DivisorClass::new(1, -1))); // square −6
    }

    #[test]
    fn effective_classes_have_positive_degree() {
        let families = [
            surface(GeneratorKind::Rational, 3),
            surface(GeneratorKind::Elliptic, 5),
            surface(GeneratorKind::Line, 1),
            SurfaceModel::from_family(GeneratorKind::NoSpecialCurves, 6, Some(2)).unwrap(),
        ];
        for s in &families {
            for x in -8..=8i64 {
                for y in -8..=8i64 {
                    let d = DivisorClass::new(x, y);
                    if s.is_effective(&d) {
                        assert!(
                            s.degree(&d).is_positive(),
                            "{:?} {d}",
                            s.kind()
                        );
                        assert!(!s.is_effective(&-&d), "{:?} {d}", s.kind());
                    }
                    if s.is_nef(&d) && !d.is_zero() {
                        assert!(s.is_effective(&d), "{:?} {d}", s.kind());
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_lands_on_a_nef_part_or_negative_degree() {
        let s = surface(GeneratorKind::Rational, 5);
        for x in -6..=6i64 {
            for y in -6..=6i64 {
                let d = DivisorClass::new(x, y);
                let r = s.reduce_negative_part(&d);
                let p = &r.nef_part;
                let settled = s
                    .mori_cone()
                    .minus_two_classes()
                    .into_iter()
                    .all(|ray| !s.intersect(p, ray).is_negative());
                assert!(settled || s.degree(p).is_negative(), "{d}");
            }
        }
    }
}
