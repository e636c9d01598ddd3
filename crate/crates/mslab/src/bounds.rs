//! Interval arithmetic for the parameter b(r), the extremal construction
//! f_alpha, the closed-form upper bound it attains, and the catalogue of
//! settled gamma(n,d,r) values.
//!
//! All interval comparisons are exact (integer cross-multiplication or
//! [`Rational`]); intervals are left-open and right-closed throughout.

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::weights::WeightFunction;
use std::fmt;

/// The unique integer r with (d-1)(n-k)/d < r <= (d-1)(n-k+1)/d, when one
/// exists; there is none exactly when n-k is divisible by d.
pub fn interval_integer(n: usize, d: usize, k: usize) -> Result<Option<usize>> {
    if d < 2 {
        return Err(Error::Domain(format!("interval integer needs d >= 2, got {d}")));
    }
    if k < 1 || k > n {
        return Err(Error::Domain(format!("k={k} outside 1..={n}")));
    }
    if (n - k).is_multiple_of(d) {
        return Ok(None);
    }
    Ok(Some((d - 1) * (n - k + 1) / d))
}

/// Checks d <= r <= (d-1)n/d exactly.
fn check_r_range(n: usize, d: usize, r: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Domain(format!("b(r) needs d >= 2, got {d}")));
    }
    if r < d || r * d > (d - 1) * n {
        return Err(Error::Domain(format!(
            "r={r} outside the range d <= r <= (d-1)n/d for n={n}, d={d}"
        )));
    }
    Ok(())
}

/// The unique b in {1..n-r-1} with (d-1)(n-b)/d < r <= (d-1)(n-b+1)/d.
pub fn compute_b(n: usize, d: usize, r: usize) -> Result<usize> {
    check_r_range(n, d, r)?;
    for b in 1..n - r {
        if (d - 1) * (n - b) < r * d && r * d <= (d - 1) * (n - b + 1) {
            return Ok(b);
        }
    }
    Err(Error::InvariantViolation(format!(
        "no b located for n={n}, d={d}, r={r}"
    )))
}

/// Exclusive upper bound of the alpha window for f_alpha:
/// min{ r/b, d/h - 1, (d/b)(r - (d-1)(n-b)/d) } with h = min(b, d-1).
pub fn alpha_window(n: usize, d: usize, r: usize) -> Result<Rational> {
    let b = compute_b(n, d, r)?;
    let h = b.min(d - 1);
    let rb = Rational::new(r as i128, b as i128);
    let dh = Rational::new(d as i128, h as i128) - Rational::ONE;
    let slack = Rational::from_int(r as i128)
        - Rational::new(((d - 1) * (n - b)) as i128, d as i128);
    let third = Rational::new(d as i128, b as i128) * slack;
    let upper = rb.min(dh).min(third);
    debug_assert!(upper.is_positive());
    Ok(upper)
}

/// The extremal construction: r values of 1, b(r) values of -alpha, and
/// n-r-b(r) values of -beta with beta chosen so the total is exactly 0.
pub fn build_f_alpha(n: usize, d: usize, r: usize, alpha: Rational) -> Result<WeightFunction> {
    let b = compute_b(n, d, r)?;
    let upper = alpha_window(n, d, r)?;
    if !alpha.is_positive() || alpha >= upper {
        return Err(Error::Domain(format!(
            "alpha={alpha} outside the open window (0, {upper}) for n={n}, d={d}, r={r}"
        )));
    }
    let tail = n - r - b;
    let beta = (Rational::from_int(r as i128) - Rational::from_int(b as i128) * alpha)
        / Rational::from_int(tail as i128);
    let mut values = vec![Rational::ONE; r];
    values.extend(std::iter::repeat_n(-alpha, b));
    values.extend(std::iter::repeat_n(-beta, tail));
    let f = WeightFunction::new(values)?;
    debug_assert!(f.total().is_zero());
    debug_assert_eq!(f.nonneg_count(), r);
    Ok(f)
}

/// The value phi(f_alpha, d) takes everywhere in the alpha window:
/// sum over j = 0..h of C(b,j) C(r,d-j).
pub fn upper_bound_sum(n: usize, d: usize, r: usize) -> Result<u64> {
    let b = compute_b(n, d, r)?;
    let h = b.min(d - 1);
    let mut total = 0u64;
    for j in 0..=h {
        total += binomial(b as u64, j as u64)? * binomial(r as u64, (d - j) as u64)?;
    }
    Ok(total)
}

/// Provenance of a settled gamma(n,d,r) value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaStatus {
    /// Established by the two theorems this crate certifies directly
    /// (n = 2d+2 with r = 2d-1, and r = (d-1)n/d).
    ProvedHere,
    /// Claimed in earlier literature; catalogued, not re-proved here.
    PriorClaimed,
    /// The r <= d <= n/2 row, whose published proof has a known gap.
    StarUncertain,
}

impl fmt::Display for GammaStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaStatus::ProvedHere => write!(f, "proved-here"),
            GammaStatus::PriorClaimed => write!(f, "prior-claimed"),
            GammaStatus::StarUncertain => write!(f, "star-uncertain"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaCase {
    pub value: u64,
    pub status: GammaStatus,
}

/// The catalogue of known gamma(n,d,r) values, in priority order; the two
/// proved regimes win over catalogue rows when they overlap. Both proved
/// regimes use the value C(r,d) + C(r,d-1). Returns `None` when no case
/// applies.
pub fn gamma_known(n: usize, d: usize, r: usize) -> Result<Option<GammaCase>> {
    if n < 1 || d < 1 || d > n || r < 1 || r > n {
        return Err(Error::Domain(format!(
            "gamma lookup needs 1 <= d,r <= n, got n={n}, d={d}, r={r}"
        )));
    }
    let c = |a: usize, b: usize| binomial(a as u64, b as u64);
    // (a) n = 2d+2 and r = 2d-1
    if d >= 2 && n == 2 * d + 2 && r == 2 * d - 1 {
        return Ok(Some(GammaCase {
            value: c(r, d)? + c(r, d - 1)?,
            status: GammaStatus::ProvedHere,
        }));
    }
    // (b) r = (d-1)n/d, which forces d | n
    if d >= 2 && n.is_multiple_of(d) && r == (d - 1) * n / d && r >= d {
        return Ok(Some(GammaCase {
            value: c(r, d)? + c(r, d - 1)?,
            status: GammaStatus::ProvedHere,
        }));
    }
    // (c) r = 1
    if r == 1 {
        return Ok(Some(GammaCase {
            value: c(n - 1, d - 1)?,
            status: GammaStatus::PriorClaimed,
        }));
    }
    // (d) r <= d < n and r < n/(n-d)
    if r <= d && d < n && r * (n - d) < n {
        return Ok(Some(GammaCase {
            value: c(n - r, d - r)?,
            status: GammaStatus::PriorClaimed,
        }));
    }
    // (e) d < r < n and r > (d-1)n/d
    if d < r && r < n && r * d > (d - 1) * n {
        return Ok(Some(GammaCase {
            value: c(r, d)?,
            status: GammaStatus::PriorClaimed,
        }));
    }
    // (f) r <= d <= n/2
    if r <= d && 2 * d <= n {
        return Ok(Some(GammaCase {
            value: c(n - 1, d - 1)?,
            status: GammaStatus::StarUncertain,
        }));
    }
    Ok(None)
}

/// True when the minimum at n = 2d+2, r = 2d-1 beats the conjectured
/// floor, i.e. C(2d-1,d) + C(2d-1,d-1) < C(2d+1,d-1).
pub fn counterexample_check(d: usize) -> Result<bool> {
    if d < 2 {
        return Err(Error::Domain(format!("counterexample check needs d >= 2, got {d}")));
    }
    let lhs = binomial((2 * d - 1) as u64, d as u64)?
        + binomial((2 * d - 1) as u64, (d - 1) as u64)?;
    let rhs = binomial((2 * d + 1) as u64, (d - 1) as u64)?;
    Ok(lhs < rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_integer_examples() {
        assert_eq!(interval_integer(8, 3, 1).unwrap(), Some(5));
        assert_eq!(interval_integer(10, 3, 1).unwrap(), None);
        assert_eq!(interval_integer(10, 3, 2).unwrap(), Some(6));
        assert!(interval_integer(8, 3, 0).is_err());
        assert!(interval_integer(8, 3, 9).is_err());
        assert!(interval_integer(8, 1, 1).is_err());
    }

    /// Brute interval scan: r satisfies (d-1)(n-k) < rd <= (d-1)(n-k+1).
    #[test]
    fn interval_integer_matches_direct_scan() {
        for n in 1..=14 {
            for d in 2..=6 {
                for k in 1..=n {
                    let hits: Vec<usize> = (0..=n + d)
                        .filter(|&r| {
                            (d - 1) * (n - k) < r * d && r * d <= (d - 1) * (n - k + 1)
                        })
                        .collect();
                    let got = interval_integer(n, d, k).unwrap();
                    match got {
                        Some(r) => assert_eq!(hits, vec![r], "n={n} d={d} k={k}"),
                        None => {
                            assert!(hits.is_empty(), "n={n} d={d} k={k}");
                            assert_eq!((n - k) % d, 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn compute_b_examples() {
        assert_eq!(compute_b(8, 3, 5).unwrap(), 1);
        assert_eq!(compute_b(12, 3, 6).unwrap(), 4);
        assert_eq!(compute_b(12, 4, 9).unwrap(), 1);
        assert!(compute_b(8, 3, 2).is_err());
        assert!(compute_b(8, 3, 6).is_err());
    }

    #[test]
    fn compute_b_chain_holds_everywhere() {
        for n in 2..=20 {
            for d in 2..=n {
                for r in d..=(d - 1) * n / d {
                    if r * d > (d - 1) * n {
                        continue;
                    }
                    let b = compute_b(n, d, r).unwrap();
                    assert!((1..=n - r - 1).contains(&b), "n={n} d={d} r={r} b={b}");
                    assert!((d - 1) * (n - b) < r * d);
                    assert!(r * d <= (d - 1) * (n - b + 1));
                }
            }
        }
    }

    #[test]
    fn alpha_window_examples() {
        assert_eq!(alpha_window(8, 3, 5).unwrap(), Rational::ONE);
        assert_eq!(alpha_window(12, 3, 6).unwrap(), Rational::new(1, 2));
        assert_eq!(alpha_window(12, 4, 9).unwrap(), Rational::from_int(3));
    }

    #[test]
    fn f_alpha_examples() {
        let f = build_f_alpha(8, 3, 5, Rational::new(1, 2)).unwrap();
        let expect: Vec<Rational> = [
            (1, 1),
            (1, 1),
            (1, 1),
            (1, 1),
            (1, 1),
            (-1, 2),
            (-9, 4),
            (-9, 4),
        ]
        .iter()
        .map(|&(p, q)| Rational::new(p, q))
        .collect();
        assert_eq!(f.values(), &expect[..]);
        assert!(f.total().is_zero());
        assert_eq!(f.nonneg_count(), 5);
        assert_eq!(f.count_dplus(3).unwrap(), 20);

        let f = build_f_alpha(6, 2, 3, Rational::new(1, 4)).unwrap();
        let expect: Vec<Rational> = [(1, 1), (1, 1), (1, 1), (-1, 4), (-11, 8), (-11, 8)]
            .iter()
            .map(|&(p, q)| Rational::new(p, q))
            .collect();
        assert_eq!(f.values(), &expect[..]);

        assert!(build_f_alpha(8, 3, 5, Rational::ONE).is_err());
        assert!(build_f_alpha(8, 3, 5, Rational::ZERO).is_err());
    }

    #[test]
    fn upper_bound_sum_examples() {
        assert_eq!(upper_bound_sum(8, 3, 5).unwrap(), 20);
        assert_eq!(upper_bound_sum(12, 3, 6).unwrap(), 116);
        assert_eq!(upper_bound_sum(12, 4, 9).unwrap(), 210);
    }

    #[test]
    fn upper_bound_collapses_when_b_is_one() {
        for n in 4..=16 {
            for d in 2..=n {
                for r in d..=(d - 1) * n / d {
                    if r * d > (d - 1) * n {
                        continue;
                    }
                    if compute_b(n, d, r).unwrap() == 1 {
                        let expect = binomial(r as u64, d as u64).unwrap()
                            + binomial(r as u64, d as u64 - 1).unwrap();
                        assert_eq!(upper_bound_sum(n, d, r).unwrap(), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_known_examples() {
        let g = gamma_known(8, 3, 5).unwrap().unwrap();
        assert_eq!((g.value, g.status), (20, GammaStatus::ProvedHere));

        let g = gamma_known(6, 2, 3).unwrap().unwrap();
        assert_eq!((g.value, g.status), (6, GammaStatus::ProvedHere));

        let g = gamma_known(8, 3, 6).unwrap().unwrap();
        assert_eq!((g.value, g.status), (20, GammaStatus::PriorClaimed));

        let g = gamma_known(8, 3, 1).unwrap().unwrap();
        assert_eq!((g.value, g.status), (21, GammaStatus::PriorClaimed));

        let g = gamma_known(10, 4, 7).unwrap().unwrap();
        assert_eq!((g.value, g.status), (70, GammaStatus::ProvedHere));

        // star row: r <= d <= n/2
        let g = gamma_known(8, 3, 2).unwrap().unwrap();
        assert_eq!((g.value, g.status), (21, GammaStatus::StarUncertain));

        // small-d, small-r corner: r < n/(n-d)
        let g = gamma_known(4, 3, 2).unwrap().unwrap();
        assert_eq!((g.value, g.status), (2, GammaStatus::PriorClaimed));

        // no case applies
        assert_eq!(gamma_known(8, 3, 4).unwrap(), None);

        assert!(gamma_known(8, 0, 1).is_err());
        assert!(gamma_known(8, 3, 9).is_err());
    }

    #[test]
    fn counterexample_examples() {
        assert!(!counterexample_check(2).unwrap()); // 6 > 5
        assert!(counterexample_check(3).unwrap()); // 20 < 21
        assert!(counterexample_check(4).unwrap()); // 70 < 84
        assert!(counterexample_check(2).is_ok());
        assert!(counterexample_check(1).is_err());
    }
}
