//! The Pell equation X² − N·Y² = 1 via continued fractions.
//!
//! For non-square N ≥ 2 the continued fraction of √N is eventually
//! periodic from the very first partial quotient:
//!
//! ```text
//!     √N = [a₀; a₁, a₂, …, a_r]  with  a_r = 2a₀  closing the period.
//! ```
//!
//! The quotients come from the integer recurrence
//! m₀ = 0, d₀ = 1, a₀ = ⌊√N⌋ and
//!
//! ```text
//!     m_{k+1} = d_k·a_k − m_k
//!     d_{k+1} = (N − m_{k+1}²)/d_k        (always an exact division)
//!     a_{k+1} = ⌊(a₀ + m_{k+1}) / d_{k+1}⌋
//! ```
//!
//! Writing p_k/q_k for the convergents, p_{r−1}² − N·q_{r−1}² = (−1)^r.
//! So the fundamental solution of X² − N·Y² = 1 is the convergent at the
//! end of the first period when the period length r is even; when r is
//! odd that convergent solves X² − N·Y² = −1 instead and the walk is
//! doubled to 2r.  Convergents grow exponentially, hence `BigInt`.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PellError {
    #[error("N must be ≥ 2, got {0}")]
    TooSmall(i64),
    #[error("{0} = {1}² is a perfect square, √N has no period")]
    PerfectSquare(i64, i64),
}

/// A solution of X² − N·Y² = 1 with X, Y > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub x: BigInt,
    pub y: BigInt,
    pub n: i64,
}

/// The continued-fraction expansion √N = [a₀; period…], with the period
/// ending at the canonical closing quotient 2a₀.
pub fn sqrt_continued_fraction(n: i64) -> Result<(i64, Vec<i64>), PellError> {
    if n < 2 {
        return Err(PellError::TooSmall(n));
    }
    let a0 = n.sqrt();
    if a0 * a0 == n {
        return Err(PellError::PerfectSquare(n, a0));
    }
    let mut period = Vec::new();
    let (mut m, mut d, mut a) = (0i64, 1i64, a0);
    loop {
        m = d * a - m;
        d = (n - m * m) / d;
        a = (a0 + m) / d;
        period.push(a);
        if a == 2 * a0 {
            return Ok((a0, period));
        }
    }
}

/// The minimal solution of X² − N·Y² = 1 in positive integers.
pub fn fundamental_solution(n: i64) -> Result<PellSolution, PellError> {
    let (a0, period) = sqrt_continued_fraction(n)?;
    let r = period.len();
    // Convergent index r−1 closes the period; for odd r the identity
    // there has right-hand side −1, so walk a second period.
    let steps = if r % 2 == 0 { r - 1 } else { 2 * r - 1 };
    let (mut p_prev, mut p) = (BigInt::one(), BigInt::from(a0));
    let (mut q_prev, mut q) = (BigInt::from(0), BigInt::one());
    for i in 0..steps {
        let a = BigInt::from(period[i % r]);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    debug_assert_eq!(&p * &p - BigInt::from(n) * &q * &q, BigInt::one());
    Ok(PellSolution { x: p, y: q, n })
}
