//! Representation problems for the lattice form Q(x, y) = 4x² + 2e·xy + s·y².
//!
//! Q is the self-intersection of xh + yG, an even indefinite binary
//! quadratic form of discriminant 4(e² − 4s) > 0.  Three questions are
//! answered exactly:
//!
//! * does Q take a given value n at a nonzero integer vector (with a
//!   witness when it does),
//! * what are the primitive null directions of Q (the classes of square
//!   zero), and
//! * does the lattice avoid both −2 and nontrivial 0 — the certificate
//!   that the surface carries no smooth rational and no elliptic curve.
//!
//! For n = 0 the answer is the rational root test on the dehomogenized
//! quadratic: nonzero null vectors exist iff e² − 4s is a perfect square,
//! and then the two primitive directions are (−e ± √(e²−4s), 4)/gcd.
//!
//! For n ≠ 0 two complete procedures are used depending on whether the
//! discriminant is a square:
//!
//! * **non-square** (anisotropic over ℚ): strip the content of the form,
//!   then for each square divisor g² of the target test primitive
//!   representability of n/g² classically — n is primitively represented
//!   iff some form (n, B, C) of the same discriminant is properly
//!   equivalent to Q, which is decided by Gauss reduction and walking the
//!   cycle of reduced forms.  The accumulated SL₂(ℤ) transforms turn a
//!   cycle match into an explicit witness.
//! * **square** (isotropic): Q factors over ℚ as
//!   4·Q = (4x + (e−t)y)(4x + (e+t)y) with t = √(e²−4s), so solutions
//!   biject with factorizations u·v = 4n subject to two divisibility
//!   conditions; divisor enumeration decides the question.
//!
//! A modular rejection pass (no solution of Q ≡ n over ℤ/m for a small
//! modulus m) short-circuits many negatives, e.g. Q = 4x² + 12xy + 2y²
//! never takes the value −2 because −2 is not a square modulo 7.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{pairing_with_gram, DivisorClass, PicardLattice};

/// Outcome of asking whether Q represents n at a nonzero vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationResult {
    pub representable: bool,
    /// A nonzero class with Q(witness) = n, when representable.
    pub witness: Option<DivisorClass>,
}

/// The primitive null directions of the lattice form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullRays {
    /// Zero or two primitive classes of square zero, normalized to
    /// positive degree and sorted lexicographically.
    pub rays: Vec<DivisorClass>,
    /// True when √(e² − 4s) is irrational, i.e. no null classes exist.
    pub irrational: bool,
}

pub fn represents(lattice: &PicardLattice, n: &BigInt) -> RepresentationResult {
    represents_form(lattice.e(), lattice.s(), n)
}

pub fn null_rays(lattice: &PicardLattice) -> NullRays {
    null_rays_form(lattice.e(), lattice.s())
}

/// True iff the lattice represents neither −2 nor 0 nontrivially.
pub fn verify_no_special_curves(lattice: &PicardLattice) -> bool {
    no_special_curves_form(lattice.e(), lattice.s())
}

/// Form-level variant of [`represents`] for a Gram pair (e, s) that need
/// not satisfy any generator-kind constraint.  Requires s even and
/// 4s − e² < 0.
pub fn represents_form(e: i64, s: i64, n: &BigInt) -> RepresentationResult {
    assert_valid_gram(e, s);
    if n.is_zero() {
        let rays = null_rays_form(e, s);
        return RepresentationResult {
            representable: !rays.rays.is_empty(),
            witness: rays.rays.into_iter().next(),
        };
    }
    if modular_obstruction(e, s, n) {
        return RepresentationResult { representable: false, witness: None };
    }
    if let Some(w) = small_witness(e, s, n) {
        return RepresentationResult { representable: true, witness: Some(w) };
    }
    let disc = BigInt::from(e) * e - BigInt::from(4) * s;
    let witness = match exact_sqrt(&disc) {
        Some(t) => represent_isotropic(e, s, n, &t),
        None => represent_anisotropic(e, s, n),
    };
    match witness {
        Some(w) => {
            debug_assert_eq!(pairing_with_gram(e, s, &w, &w), *n);
            RepresentationResult { representable: true, witness: Some(w) }
        }
        None => RepresentationResult { representable: false, witness: None },
    }
}

/// Form-level variant of [`null_rays`].
pub fn null_rays_form(e: i64, s: i64) -> NullRays {
    assert_valid_gram(e, s);
    let disc = BigInt::from(e) * e - BigInt::from(4) * s;
    let t = match exact_sqrt(&disc) {
        Some(t) => t,
        None => return NullRays { rays: Vec::new(), irrational: true },
    };
    // Roots of 4x² + 2exy + sy² = 0 as directions x : y = (−e ± t) : 4.
    let mut rays: Vec<DivisorClass> = [&t - e, -&t - e]
        .into_iter()
        .map(|top| {
            let dir = DivisorClass { x: top, y: BigInt::from(4) }.primitive();
            let degree = BigInt::from(4) * &dir.x + BigInt::from(e) * &dir.y;
            debug_assert!(!degree.is_zero());
            if degree.is_negative() {
                -&dir
            } else {
                dir
            }
        })
        .collect();
    rays.sort();
    NullRays { rays, irrational: false }
}

/// Form-level variant of [`verify_no_special_curves`].
pub fn no_special_curves_form(e: i64, s: i64) -> bool {
    !represents_form(e, s, &BigInt::from(-2)).representable
        && null_rays_form(e, s).rays.is_empty()
}

fn assert_valid_gram(e: i64, s: i64) {
    assert!(s % 2 == 0, "G·G must be even, got {s}");
    assert!(
        (4 * s).checked_sub(e * e).is_some_and(|d| d < 0),
        "Gram pair ({e}, {s}) is not hyperbolic"
    );
}

/// ⌊√d⌋ when d is a perfect square, else None.
fn exact_sqrt(d: &BigInt) -> Option<BigInt> {
    if d.is_negative() {
        return None;
    }
    let r = d.sqrt();
    (&r * &r == *d).then_some(r)
}

/// Sound rejection: if Q(x, y) ≡ n (mod m) has no solution for one small
/// modulus m, then Q(x, y) = n has none over ℤ.
fn modular_obstruction(e: i64, s: i64, n: &BigInt) -> bool {
    const MODULI: [i64; 6] = [16, 9, 5, 7, 11, 13];
    'moduli: for m in MODULI {
        let nm = n.mod_floor(&BigInt::from(m));
        let nm: i64 = (&nm).try_into().expect("residue fits i64");
        let em = e.rem_euclid(m);
        let sm = s.rem_euclid(m);
        for x in 0..m {
            for y in 0..m {
                if (4 * x * x + 2 * em * x * y + sm * y * y - nm).rem_euclid(m) == 0 {
                    continue 'moduli;
                }
            }
        }
        return true;
    }
    false
}

/// Deterministic search over small vectors, innermost shells first.  This
/// keeps witnesses readable and short-circuits most representable cases.
fn small_witness(e: i64, s: i64, n: &BigInt) -> Option<DivisorClass> {
    const BOUND: i64 = 12;
    for r in 1..=BOUND {
        for x_abs in 0..=r {
            let xs: &[i64] = if x_abs == 0 { &[0] } else { &[x_abs, -x_abs] };
            for &x in xs {
                for y in (-r..=r).rev() {
                    if x_abs.max(y.abs()) != r {
                        continue;
                    }
                    let w = DivisorClass::new(x, y);
                    if pairing_with_gram(e, s, &w, &w) == *n {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

/// Isotropic case: 4·Q = (4x + (e−t)y)(4x + (e+t)y) with t² = e² − 4s.
/// Solutions of Q = n correspond to factorizations u·v = 4n with
/// 2t | v − u and 4 | u − (e−t)(v−u)/(2t).
fn represent_isotropic(e: i64, s: i64, n: &BigInt, t: &BigInt) -> Option<DivisorClass> {
    let target = BigInt::from(4) * n;
    let two_t = BigInt::from(2) * t;
    let e_minus_t = BigInt::from(e) - t;
    for d in divisors(&target.abs()) {
        for u in [d.clone(), -&d] {
            let v = &target / &u;
            let (y, rem) = (&v - &u).div_rem(&two_t);
            if !rem.is_zero() {
                continue;
            }
            let num = &u - &e_minus_t * &y;
            let (x, rem) = num.div_rem(&BigInt::from(4));
            if !rem.is_zero() {
                continue;
            }
            let w = DivisorClass { x, y };
            debug_assert_eq!(pairing_with_gram(e, s, &w, &w), *n);
            return Some(w);
        }
    }
    None
}

/// Positive divisors of m > 0 in ascending order, by trial division.
fn divisors(m: &BigInt) -> Vec<BigInt> {
    debug_assert!(m.is_positive());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    let root = m.sqrt();
    while d <= root {
        if m.is_multiple_of(&d) {
            let q = m / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Anisotropic case via reduction of indefinite forms.
fn represent_anisotropic(e: i64, s: i64, n: &BigInt) -> Option<DivisorClass> {
    let f = Form {
        a: BigInt::from(4),
        b: BigInt::from(2 * e),
        c: BigInt::from(s),
    };
    // The content of Q divides every represented value.
    let content = f.a.gcd(&f.b).gcd(&f.c);
    let (m0, rem) = n.div_rem(&content);
    if !rem.is_zero() {
        return None;
    }
    let f0 = Form {
        a: &f.a / &content,
        b: &f.b / &content,
        c: &f.c / &content,
    };
    let disc = f0.discriminant();
    debug_assert!(exact_sqrt(&disc).is_none());
    let sigma = disc.sqrt();
    // Q represents m₀·content iff Q/content primitively represents m₀/g²
    // for some square divisor g² of m₀.
    let mut g = BigInt::one();
    while &g * &g <= m0.abs() {
        let g2 = &g * &g;
        if m0.is_multiple_of(&g2) {
            let m_prim = &m0 / &g2;
            if let Some((x, y)) = represent_primitive(&f0, &m_prim, &sigma, &disc) {
                return Some(DivisorClass { x: x * &g, y: y * &g });
            }
        }
        g += 1;
    }
    None
}

/// Primitive representation of m ≠ 0 by the primitive form f: search all
/// residues B with B² ≡ Δ (mod 4|m|) and test whether (m, B, ·) lies on
/// the reduction cycle of f.  A match yields the witness through the
/// accumulated transforms: f∘U = g = h∘V gives f∘(U·V⁻¹) = h, and the
/// first column of U·V⁻¹ evaluates f to h(1,0) = m.
fn represent_primitive(
    f: &Form,
    m: &BigInt,
    sigma: &BigInt,
    disc: &BigInt,
) -> Option<(BigInt, BigInt)> {
    debug_assert!(!m.is_zero());
    let two_m = BigInt::from(2) * m.abs();
    let four_m = BigInt::from(4) * m.abs();
    let mut b = BigInt::zero();
    while b < two_m {
        if (&b * &b - disc).mod_floor(&four_m).is_zero() {
            let c = (&b * &b - disc) / (BigInt::from(4) * m);
            let h = Form { a: m.clone(), b: b.clone(), c };
            debug_assert_eq!(h.discriminant(), *disc);
            if let Some(u) = proper_equivalence(f, &h, sigma, disc) {
                debug_assert_eq!(f.eval(&u.m00, &u.m10), *m);
                return Some((u.m00, u.m10));
            }
        }
        b += 1;
    }
    None
}

/// ax² + bxy + cy².
#[derive(Debug, Clone, PartialEq, Eq)]
struct Form {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Form {
    fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// Reduced in the indefinite sense: 0 < b < √Δ and
    /// |√Δ − 2|a|| < b, evaluated with σ = ⌊√Δ⌋ (√Δ irrational here, so
    /// all comparisons are strict in exact arithmetic).
    fn is_reduced(&self, sigma: &BigInt) -> bool {
        let two_abs_a = BigInt::from(2) * self.a.abs();
        self.b.is_positive()
            && self.b <= *sigma
            && *sigma < &self.b + &two_abs_a
            && two_abs_a <= &self.b + sigma
    }
}

/// Column-major 2×2 integer matrix acting on forms by substitution
/// (x, y) ↦ (m00·x + m01·y, m10·x + m11·y).
#[derive(Debug, Clone, PartialEq, Eq)]
struct Unimodular {
    m00: BigInt,
    m01: BigInt,
    m10: BigInt,
    m11: BigInt,
}

impl Unimodular {
    fn identity() -> Self {
        Unimodular {
            m00: BigInt::one(),
            m01: BigInt::zero(),
            m10: BigInt::zero(),
            m11: BigInt::one(),
        }
    }

    fn mul(&self, o: &Unimodular) -> Self {
        Unimodular {
            m00: &self.m00 * &o.m00 + &self.m01 * &o.m10,
            m01: &self.m00 * &o.m01 + &self.m01 * &o.m11,
            m10: &self.m10 * &o.m00 + &self.m11 * &o.m10,
            m11: &self.m10 * &o.m01 + &self.m11 * &o.m11,
        }
    }

    /// Inverse of a determinant-one matrix.
    fn inverse(&self) -> Self {
        debug_assert!((&self.m00 * &self.m11 - &self.m01 * &self.m10).is_one());
        Unimodular {
            m00: self.m11.clone(),
            m01: -&self.m01,
            m10: -&self.m10,
            m11: self.m00.clone(),
        }
    }
}

/// One reduction step (c, r, (r² − Δ)/4c) with r ≡ −b (mod 2|c|) chosen
/// in the normalization window; the corresponding substitution matrix is
/// [[0, −1], [1, (b + r)/2c]] of determinant one.
fn rho(f: &Form, sigma: &BigInt, disc: &BigInt) -> (Form, Unimodular) {
    debug_assert!(!f.c.is_zero());
    let c_abs = f.c.abs();
    let two_c_abs = BigInt::from(2) * &c_abs;
    let hi = if c_abs > *sigma { c_abs } else { sigma.clone() };
    let base = (-&f.b).mod_floor(&two_c_abs);
    let r = &hi - (&hi - &base).mod_floor(&two_c_abs);
    let m = (&f.b + &r) / (BigInt::from(2) * &f.c);
    let c_new = (&r * &r - disc) / (BigInt::from(4) * &f.c);
    let next = Form { a: f.c.clone(), b: r, c: c_new };
    debug_assert_eq!(next.discriminant(), *disc);
    let step = Unimodular {
        m00: BigInt::zero(),
        m01: -BigInt::one(),
        m10: BigInt::one(),
        m11: m,
    };
    (next, step)
}

/// Reduce f, returning the reduced form and U with f∘U = reduced.
fn reduce(f: &Form, sigma: &BigInt, disc: &BigInt) -> (Form, Unimodular) {
    let mut g = f.clone();
    let mut u = Unimodular::identity();
    let mut guard = 0u32;
    while !g.is_reduced(sigma) {
        let (next, step) = rho(&g, sigma, disc);
        u = u.mul(&step);
        g = next;
        guard += 1;
        assert!(guard < 100_000, "reduction failed to terminate");
    }
    debug_assert_eq!(transform(f, &u), g);
    (g, u)
}

fn transform(f: &Form, u: &Unimodular) -> Form {
    let a = f.eval(&u.m00, &u.m10);
    let c = f.eval(&u.m01, &u.m11);
    let b = BigInt::from(2) * &f.a * &u.m00 * &u.m01
        + &f.b * (&u.m00 * &u.m11 + &u.m01 * &u.m10)
        + BigInt::from(2) * &f.c * &u.m10 * &u.m11;
    Form { a, b, c }
}

/// For non-square discriminants, two reduced forms are properly
/// equivalent iff they lie on the same cycle under ρ.  Returns U with
/// f∘U = h when equivalent.
fn proper_equivalence(
    f: &Form,
    h: &Form,
    sigma: &BigInt,
    disc: &BigInt,
) -> Option<Unimodular> {
    let (f_red, u0) = reduce(f, sigma, disc);
    let (h_red, v) = reduce(h, sigma, disc);
    let v_inv = v.inverse();
    let mut g = f_red.clone();
    let mut u = u0;
    let mut guard = 0u32;
    loop {
        if g == h_red {
            let w = u.mul(&v_inv);
            debug_assert_eq!(transform(f, &w), *h);
            return Some(w);
        }
        let (next, step) = rho(&g, sigma, disc);
        u = u.mul(&step);
        g = next;
        if g == f_red {
            return None;
        }
        guard += 1;
        assert!(guard < 1_000_000, "cycle walk failed to terminate");
    }
}
