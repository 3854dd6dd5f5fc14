//! The decision engine: given an ambient 3-fold, a surface family and a
//! curve class, decide the local structure of the Hilbert scheme of
//! curves along the family swept out by deformations of the pair.
//!
//! Write C for the curve class, K for the restriction of the ambient
//! canonical class, and D = C + K for the adjoint class.  The engine
//! first audits four hypotheses:
//!
//! * the general member of |C| is a smooth connected curve,
//! * C is not a multiple of the hyperplane class (such curves are
//!   complete intersections and deform with too much freedom),
//! * deg C exceeds the ambient bound (16 in ℙ³, 4 in the quartic
//!   3-fold), so that surfaces of the family through the curve have no
//!   extra sections of the twisted normal bundle,
//! * D is effective.
//!
//! Any failure yields `OutOfScope` with the audit trail; the numeric
//! invariants are still reported.  When all hold, the sign of the
//! obstruction is read off h¹(S, D):
//!
//! * h¹(D) = 0: the family is a generically smooth component of the
//!   Hilbert scheme of dimension g + 33 (ℙ³) or g + 3 (quartic 3-fold).
//! * D meets a (−2)-ray E in exactly −2 with D ≠ E, D² ≥ 0 and
//!   h¹(D − 3E) = 0: a generically non-reduced component (h¹(D) = 1);
//!   on the quartic 3-fold this additionally needs the normal bundle of
//!   the rigid curve to be globally generated, supplied as an assumption.
//! * D = mF for an elliptic fiber F and m ≥ 2: h¹(D) = m − 1.  For
//!   m = 2 the family is again a generically non-reduced component; for
//!   m > 2 it is obstructed but its component status is left open — the
//!   report never claims a component there.  On the quartic 3-fold this
//!   branch needs the pencil comparison map to be non-surjective,
//!   supplied as an assumption.
//!
//! Anything else (for example D·E ≤ −3 on a ray) is out of scope:
//! adjacent positivity patterns genuinely need different methods and the
//! engine refuses to guess.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cohomology::PreconditionError;
use crate::cone::SurfaceModel;
use crate::lattice::{Ambient, DivisorClass, GeneratorKind};

/// Geometric hypotheses that are not decidable from lattice data alone.
/// Both are automatic over ℙ³ and must be granted explicitly over the
/// quartic 3-fold.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Assumptions {
    /// The rigid rational curve spanning the contact ray has globally
    /// generated normal bundle in the ambient 3-fold.
    pub normal_bundle_globally_generated: bool,
    /// The comparison map from first-order deformations of the surface
    /// to those of an elliptic fiber is not surjective.
    pub pi_map_nonsurjective_elliptic: bool,
}

impl Assumptions {
    fn rigid_ray_hypothesis(&self, ambient: Ambient) -> bool {
        ambient == Ambient::ProjectiveSpace3 || self.normal_bundle_globally_generated
    }

    fn pencil_hypothesis(&self, ambient: Ambient) -> bool {
        ambient == Ambient::ProjectiveSpace3 || self.pi_map_nonsurjective_elliptic
    }
}

/// Verdict about the Hilbert scheme of the ambient 3-fold near the
/// family of curves through the given class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HilbertStatus {
    /// The curve is an isolated smooth point of the Hilbert scheme.
    /// Never produced by the rank-2 families here; present so reports
    /// can speak about the unobstructed rigid case.
    SmoothPoint,
    /// The family is an irreducible component, smooth at its generic
    /// point.
    GenericallySmoothComponent,
    /// The family is an irreducible component carrying nilpotents at its
    /// generic point.
    GenericallyNonReducedComponent,
    /// Every point of the family is obstructed, but whether it is a
    /// whole component is not decided by these methods.
    ObstructedComponentStatusOpen,
    /// Some hypothesis of the decision rules fails; the reason records
    /// which one.
    OutOfScope(String),
}

impl HilbertStatus {
    /// Stable machine-readable tag.
    pub fn label(&self) -> &'static str {
        match self {
            HilbertStatus::SmoothPoint => "smooth-point",
            HilbertStatus::GenericallySmoothComponent => "generically-smooth",
            HilbertStatus::GenericallyNonReducedComponent => "generically-non-reduced",
            HilbertStatus::ObstructedComponentStatusOpen => "obstructed-status-open",
            HilbertStatus::OutOfScope(_) => "out-of-scope",
        }
    }

    /// The explanation attached to an out-of-scope verdict.
    pub fn reason(&self) -> Option<&str> {
        match self {
            HilbertStatus::OutOfScope(reason) => Some(reason),
            _ => None,
        }
    }
}

impl fmt::Display for HilbertStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason() {
            Some(reason) => write!(f, "{} ({reason})", self.label()),
            None => f.write_str(self.label()),
        }
    }
}

/// Pass/fail record of the four hypotheses audited before any rule runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PreconditionLedger {
    /// The general member of |C| is a smooth connected curve.
    pub smooth_connected_member: bool,
    /// C is not a multiple of the hyperplane class.
    pub not_complete_intersection: bool,
    /// deg C exceeds the ambient degree bound.
    pub degree_above_bound: bool,
    /// D = C + K is effective.
    pub adjoint_effective: bool,
}

impl PreconditionLedger {
    pub fn all_pass(&self) -> bool {
        self.smooth_connected_member
            && self.not_complete_intersection
            && self.degree_above_bound
            && self.adjoint_effective
    }

    /// Names of the failed checks, in audit order.
    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            (self.smooth_connected_member, "smooth-connected-member"),
            (self.not_complete_intersection, "not-complete-intersection"),
            (self.degree_above_bound, "degree-above-bound"),
            (self.adjoint_effective, "adjoint-effective"),
        ];
        checks
            .into_iter()
            .filter_map(|(passed, name)| (!passed).then_some(name))
            .collect()
    }
}

/// Everything the engine can say about one curve class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub ambient: Ambient,
    pub curve_class: DivisorClass,
    pub degree: BigInt,
    pub genus: BigInt,
    /// D = C + K, the class whose cohomology controls the obstruction.
    pub adjoint_class: DivisorClass,
    pub adjoint_effective: bool,
    pub adjoint_nef: bool,
    /// D paired with the two extremal rays, in cone order; absent when
    /// the rays carry no rational class.
    pub adjoint_ray_pairings: Option<(BigInt, BigInt)>,
    /// h¹(S, D), the dimension of the obstruction space.
    pub h1_adjoint: BigInt,
    pub status: HilbertStatus,
    /// Dimension of the family of curves swept out on moving surfaces:
    /// g + 33 over ℙ³, g + 3 over the quartic 3-fold.  Populated when
    /// all preconditions pass and a rule fires.
    pub family_dimension: Option<BigInt>,
    /// h⁰(C, N_{C/V}) = family_dimension + h¹(S, D).
    pub normal_bundle_sections: Option<BigInt>,
    pub preconditions: PreconditionLedger,
    /// Present when the surface model answers in a basis other than the
    /// one its cone was computed in.
    pub model_note: Option<String>,
}

/// Which shape of obstruction the adjoint class exhibits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionClause {
    /// The lattice carries no (−2)-classes and no elliptic classes, so
    /// every effective class is unobstructed.
    NoSpecialClasses,
    /// D meets a (−2)-ray E in exactly −2, with D ≠ E, D² ≥ 0 and
    /// h¹(D − 3E) = 0.
    NegativeRayContact,
    /// D is a multiple mF, m ≥ 2, of an elliptic fiber.
    EllipticMultiple,
    /// None of the recognized shapes.
    Unrecognized,
}

/// The clause together with the evidence that was inspected to reach it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionProfile {
    pub clause: ObstructionClause,
    /// D paired with every (−2)-ray of the cone.
    pub ray_pairings: Vec<(DivisorClass, BigInt)>,
    /// The ray realizing the contact, when the contact clause fires.
    pub contact_ray: Option<DivisorClass>,
    /// h¹(D − 3E) for the contact ray.
    pub h1_contact_twist: Option<BigInt>,
    /// m when D = mF.
    pub fiber_multiplicity: Option<BigInt>,
}

/// Degree and genus of a curve class, as a pair.
pub fn curve_numerics(surface: &SurfaceModel, curve: &DivisorClass) -> (BigInt, BigInt) {
    (surface.degree(curve), surface.genus(curve))
}

/// Dimension of the family swept out by curves of genus g moving on
/// surfaces of the family: (−K)²/2 + g + 1, i.e. g + 33 over ℙ³ and
/// g + 3 over the quartic 3-fold.
pub fn hilbert_flag_dimension(ambient: Ambient, genus: &BigInt) -> BigInt {
    let k = ambient.canonical_restriction();
    let k_square = BigInt::from(4) * &k.x * &k.x;
    k_square / 2 + genus + 1
}

/// Inspect the adjoint class and report which obstruction shape it has,
/// with the evidence.  Requires D effective or zero.
pub fn obstruction_profile(
    surface: &SurfaceModel,
    d: &DivisorClass,
) -> Result<ObstructionProfile, PreconditionError> {
    if !d.is_zero() && !surface.is_effective(d) {
        return Err(PreconditionError::Effective);
    }
    let cone = surface.mori_cone();
    let ray_pairings: Vec<(DivisorClass, BigInt)> = cone
        .minus_two_classes()
        .into_iter()
        .map(|e| (e.clone(), surface.intersect(d, e)))
        .collect();

    if surface.kind() == GeneratorKind::NoSpecialCurves {
        return Ok(ObstructionProfile {
            clause: ObstructionClause::NoSpecialClasses,
            ray_pairings,
            contact_ray: None,
            h1_contact_twist: None,
            fiber_multiplicity: None,
        });
    }

    let minus_two = BigInt::from(-2);
    let mut contact: Option<(DivisorClass, BigInt)> = None;
    for (e, pairing) in &ray_pairings {
        if *pairing == minus_two
            && d != e
            && !surface.self_intersection(d).is_negative()
        {
            let twist = d - &e.scaled(&BigInt::from(3));
            let h1 = surface.cohomology(&twist).h1;
            if h1.is_zero() {
                contact = Some((e.clone(), h1));
                break;
            }
        }
    }
    if let Some((ray, h1)) = contact {
        return Ok(ObstructionProfile {
            clause: ObstructionClause::NegativeRayContact,
            ray_pairings,
            contact_ray: Some(ray),
            h1_contact_twist: Some(h1),
            fiber_multiplicity: None,
        });
    }

    for f in cone.elliptic_classes() {
        if let Some(m) = d.positive_multiple_of(f) {
            if m >= BigInt::from(2) {
                return Ok(ObstructionProfile {
                    clause: ObstructionClause::EllipticMultiple,
                    ray_pairings,
                    contact_ray: None,
                    h1_contact_twist: None,
                    fiber_multiplicity: Some(m),
                });
            }
        }
    }

    Ok(ObstructionProfile {
        clause: ObstructionClause::Unrecognized,
        ray_pairings,
        contact_ray: None,
        h1_contact_twist: None,
        fiber_multiplicity: None,
    })
}

/// Run the full audit-and-decide pipeline for one curve class.
pub fn classify_curve(
    ambient: Ambient,
    surface: &SurfaceModel,
    curve: &DivisorClass,
    assumptions: &Assumptions,
) -> ClassificationReport {
    let (degree, genus) = curve_numerics(surface, curve);
    let adjoint = curve + &ambient.canonical_restriction();
    let adjoint_effective = surface.is_effective(&adjoint);
    let adjoint_nef = surface.is_nef(&adjoint);
    let rays = surface.mori_cone().rays();
    let adjoint_ray_pairings = match (rays[0].class(), rays[1].class()) {
        (Some(a), Some(b)) => Some((surface.intersect(&adjoint, a), surface.intersect(&adjoint, b))),
        _ => None,
    };
    let h1_adjoint = surface.cohomology(&adjoint).h1;

    let preconditions = PreconditionLedger {
        smooth_connected_member: surface
            .general_member_smooth_connected(curve)
            .unwrap_or(false),
        not_complete_intersection: !curve.y.is_zero(),
        degree_above_bound: degree > BigInt::from(ambient.degree_bound()),
        adjoint_effective,
    };
    let model_note = surface.rebased().then(|| {
        "cone and effectivity computed on the line-generator lattice via fiber = hyperplane − line"
            .to_string()
    });

    let mut report = ClassificationReport {
        ambient,
        curve_class: curve.clone(),
        degree,
        genus,
        adjoint_class: adjoint.clone(),
        adjoint_effective,
        adjoint_nef,
        adjoint_ray_pairings,
        h1_adjoint,
        status: HilbertStatus::OutOfScope(String::new()),
        family_dimension: None,
        normal_bundle_sections: None,
        preconditions,
        model_note,
    };

    if !preconditions.all_pass() {
        report.status = HilbertStatus::OutOfScope(format!(
            "preconditions failed: {}",
            preconditions.failures().join(", ")
        ));
        return report;
    }

    if report.h1_adjoint.is_zero() {
        report.status = HilbertStatus::GenericallySmoothComponent;
        populate_dimensions(&mut report);
        return report;
    }

    let profile = obstruction_profile(surface, &adjoint)
        .expect("adjoint effectivity was audited");
    report.status = match profile.clause {
        ObstructionClause::NegativeRayContact => {
            if assumptions.rigid_ray_hypothesis(ambient) {
                assert!(
                    report.h1_adjoint.is_one(),
                    "ray contact forces a one-dimensional obstruction space"
                );
                HilbertStatus::GenericallyNonReducedComponent
            } else {
                HilbertStatus::OutOfScope("normal-bundle assumption not granted".to_string())
            }
        }
        ObstructionClause::EllipticMultiple => {
            let m = profile
                .fiber_multiplicity
                .expect("multiplicity accompanies the pencil clause");
            if assumptions.pencil_hypothesis(ambient) {
                assert_eq!(
                    report.h1_adjoint,
                    &m - 1,
                    "pencil multiple mF has an (m−1)-dimensional obstruction space"
                );
                if m == BigInt::from(2) {
                    HilbertStatus::GenericallyNonReducedComponent
                } else {
                    HilbertStatus::ObstructedComponentStatusOpen
                }
            } else {
                HilbertStatus::OutOfScope("pi-map assumption not granted".to_string())
            }
        }
        // A lattice with no special classes cannot reach here: effective
        // classes on it are nef with h¹ = 0, so the smooth rule fired.
        ObstructionClause::NoSpecialClasses | ObstructionClause::Unrecognized => {
            HilbertStatus::OutOfScope("uncovered positivity pattern".to_string())
        }
    };
    if !matches!(report.status, HilbertStatus::OutOfScope(_)) {
        populate_dimensions(&mut report);
    }
    report
}

fn populate_dimensions(report: &mut ClassificationReport) {
    let dim = hilbert_flag_dimension(report.ambient, &report.genus);
    report.normal_bundle_sections = Some(&dim + &report.h1_adjoint);
    report.family_dimension = Some(dim);
}
