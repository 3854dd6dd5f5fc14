//! Rank-2 intersection lattices of smooth quartic K3 surfaces.
//!
//! The Picard group is ℤh ⊕ ℤG for the hyperplane class h and one
//! distinguished generator G, with Gram matrix
//!
//! ```text
//!     ( h·h  h·G )   ( 4  e )
//!     ( G·h  G·G ) = ( e  s )
//! ```
//!
//! A divisor class is an integer pair (x, y) meaning xh + yG.  The
//! lattice is even (s even, so D·D is always even) and hyperbolic
//! (4s − e² < 0, signature (1,1)).  On a K3 surface adjunction and
//! Riemann–Roch close up to
//!
//! ```text
//!     g(D) = D²/2 + 1        χ(O(D)) = D²/2 + 2
//! ```
//!
//! and every other module consumes these two formulas.
//!
//! Coordinates are arbitrary-precision: the second (−2)-ray of the Mori
//! cone already needs six-digit entries at e = 9, and their squares feed
//! back into D² and χ.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::quadform;

/// What kind of special curve generates the second summand of the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// G is a smooth rational curve of degree e ≥ 2, G² = −2.
    Rational,
    /// G is a smooth elliptic curve of degree e ≥ 4, G² = 0.
    Elliptic,
    /// G is a line: degree 1, G² = −2.
    Line,
    /// The lattice represents neither −2 nor 0 nontrivially: the surface
    /// carries no smooth rational and no elliptic curves at all.
    NoSpecialCurves,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GeneratorKind::Rational => "rational",
            GeneratorKind::Elliptic => "elliptic",
            GeneratorKind::Line => "line",
            GeneratorKind::NoSpecialCurves => "none",
        };
        f.write_str(name)
    }
}

/// An integral divisor class xh + yG on the surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub x: BigInt,
    pub y: BigInt,
}

impl DivisorClass {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        DivisorClass { x: x.into(), y: y.into() }
    }

    pub fn zero() -> Self {
        DivisorClass { x: BigInt::zero(), y: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// The hyperplane class h = (1, 0).
    pub fn hyperplane() -> Self {
        DivisorClass::new(1, 0)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        DivisorClass { x: &self.x * k, y: &self.y * k }
    }

    /// Divides out the gcd of the coordinates (the zero class stays zero).
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.x.gcd(&self.y);
        DivisorClass { x: &self.x / &g, y: &self.y / &g }
    }

    /// The multiplier k ≥ 1 with `self` = k·`ray`, if one exists.
    pub fn positive_multiple_of(&self, ray: &DivisorClass) -> Option<BigInt> {
        if ray.is_zero() || self.is_zero() {
            return None;
        }
        let k = if !ray.x.is_zero() {
            let (q, r) = self.x.div_rem(&ray.x);
            if !r.is_zero() {
                return None;
            }
            q
        } else {
            let (q, r) = self.y.div_rem(&ray.y);
            if !r.is_zero() {
                return None;
            }
            q
        };
        if k >= BigInt::one() && self == &ray.scaled(&k) {
            Some(k)
        } else {
            None
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass { x: &self.x + &rhs.x, y: &self.y + &rhs.y }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass { x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass { x: -&self.x, y: -&self.y }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl FromStr for DivisorClass {
    type Err = String;

    /// Parses "x,y" with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (xs, ys) = trimmed
            .split_once(',')
            .ok_or_else(|| format!("expected \"x,y\", got {s:?}"))?;
        let x = BigInt::from_str(xs.trim()).map_err(|e| format!("bad x coordinate: {e}"))?;
        let y = BigInt::from_str(ys.trim()).map_err(|e| format!("bad y coordinate: {e}"))?;
        Ok(DivisorClass { x, y })
    }
}

/// The 3-fold the surface sits in.  It determines the restriction of the
/// canonical class to the surface and the degree threshold above which
/// the dimension formula for the maximal family of surfaces through a
/// curve applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// ℙ³, with the surface a quartic hypersurface.
    ProjectiveSpace3,
    /// A smooth quartic 3-fold, with the surface a hyperplane section.
    QuarticThreefold,
}

impl Ambient {
    /// K_V restricted to the surface: −4h on ℙ³, −h on a quartic 3-fold.
    pub fn canonical_restriction(&self) -> DivisorClass {
        match self {
            Ambient::ProjectiveSpace3 => DivisorClass::new(-4, 0),
            Ambient::QuarticThreefold => DivisorClass::new(-1, 0),
        }
    }

    /// Curves of degree strictly above this bound admit no surface of the
    /// family through them with a section of the twisted normal bundle,
    /// which is what makes the maximal-family dimension formula exact.
    pub fn degree_bound(&self) -> i64 {
        match self {
            Ambient::ProjectiveSpace3 => 16,
            Ambient::QuarticThreefold => 4,
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::ProjectiveSpace3 => f.write_str("projective-space-3"),
            Ambient::QuarticThreefold => f.write_str("quartic-threefold"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("G·G must be even on a K3 surface, got {0}")]
    OddSelfIntersection(i64),
    #[error("Gram determinant 4·{s} − {e}² = {det} must be negative")]
    NonHyperbolic { e: i64, s: i64, det: i64 },
    #[error("generator kind constraint violated: {0}")]
    KindMismatch(String),
}

/// A validated rank-2 lattice ⟨h, G⟩ with h² = 4, h·G = e, G² = s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardLattice {
    e: i64,
    s: i64,
    kind: GeneratorKind,
}

/// The bilinear pairing of (x₁,y₁) and (x₂,y₂) under the Gram matrix
/// (4, e; e, s): 4x₁x₂ + e(x₁y₂ + x₂y₁) + s·y₁y₂.
pub(crate) fn pairing_with_gram(e: i64, s: i64, a: &DivisorClass, b: &DivisorClass) -> BigInt {
    let four_xx = BigInt::from(4) * &a.x * &b.x;
    let cross = BigInt::from(e) * (&a.x * &b.y + &b.x * &a.y);
    let yy = BigInt::from(s) * &a.y * &b.y;
    four_xx + cross + yy
}

impl PicardLattice {
    /// Validates and builds the lattice.
    ///
    /// Checks, in order: s even; 4s − e² < 0; e ≥ 1 and the per-kind
    /// constraints (Rational: s = −2 and e ≥ 2; Elliptic: s = 0 and
    /// e ≥ 4; Line: s = −2 and e = 1; NoSpecialCurves: the form must
    /// represent neither −2 nor 0 nontrivially).
    pub fn new(e: i64, s: i64, kind: GeneratorKind) -> Result<Self, LatticeError> {
        if s.rem_euclid(2) != 0 {
            return Err(LatticeError::OddSelfIntersection(s));
        }
        let det = 4i64
            .checked_mul(s)
            .zip(e.checked_mul(e))
            .and_then(|(t, e2)| t.checked_sub(e2))
            .ok_or(LatticeError::NonHyperbolic { e, s, det: i64::MAX })?;
        if det >= 0 {
            return Err(LatticeError::NonHyperbolic { e, s, det });
        }
        if e < 1 {
            return Err(LatticeError::KindMismatch(format!(
                "degree h·G must be ≥ 1, got {e}"
            )));
        }
        match kind {
            GeneratorKind::Rational => {
                if s != -2 {
                    return Err(LatticeError::KindMismatch(format!(
                        "rational generator needs G² = −2, got {s}"
                    )));
                }
                if e < 2 {
                    return Err(LatticeError::KindMismatch(format!(
                        "rational generator needs e ≥ 2, got {e} (e = 1 is the line family)"
                    )));
                }
            }
            GeneratorKind::Elliptic => {
                if s != 0 {
                    return Err(LatticeError::KindMismatch(format!(
                        "elliptic generator needs G² = 0, got {s}"
                    )));
                }
                if e < 4 {
                    return Err(LatticeError::KindMismatch(format!(
                        "elliptic generator needs e ≥ 4, got {e}"
                    )));
                }
            }
            GeneratorKind::Line => {
                if s != -2 || e != 1 {
                    return Err(LatticeError::KindMismatch(format!(
                        "line generator needs (e, s) = (1, −2), got ({e}, {s})"
                    )));
                }
            }
            GeneratorKind::NoSpecialCurves => {
                if !quadform::no_special_curves_form(e, s) {
                    return Err(LatticeError::KindMismatch(format!(
                        "form 4x² + {}xy + {s}y² represents −2 or 0 nontrivially",
                        2 * e
                    )));
                }
            }
        }
        Ok(PicardLattice { e, s, kind })
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    /// D₁·D₂ under the Gram matrix.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> BigInt {
        pairing_with_gram(self.e, self.s, a, b)
    }

    pub fn self_intersection(&self, d: &DivisorClass) -> BigInt {
        self.intersect(d, d)
    }

    /// D·h = 4x + ey, the degree of the class as a space curve.
    pub fn degree(&self, d: &DivisorClass) -> BigInt {
        BigInt::from(4) * &d.x + BigInt::from(self.e) * &d.y
    }

    /// Arithmetic genus g = D²/2 + 1.
    pub fn genus(&self, d: &DivisorClass) -> BigInt {
        self.self_intersection(d) / 2 + 1
    }

    /// Euler characteristic χ(O(D)) = D²/2 + 2.
    pub fn euler_characteristic(&self, d: &DivisorClass) -> BigInt {
        self.self_intersection(d) / 2 + 2
    }
}
