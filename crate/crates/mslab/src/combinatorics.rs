//! Exact integer combinatorics: binomial coefficients, lexicographic
//! enumeration of q-strings, and almost-complementary families on a
//! ground set of 2q+1 elements.

use crate::error::{Error, Result};
use std::fmt;

/// Largest `n` accepted by [`binomial`]; keeps every intermediate product
/// comfortably inside `u128` without arbitrary-precision arithmetic.
pub const BINOMIAL_MAX_N: u64 = 40;

/// Enumerations larger than this are refused rather than attempted.
const ENUMERATION_CAP: u64 = 10_000_000;

/// Exact C(n,k); zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if n > BINOMIAL_MAX_N {
        return Err(Error::Capacity(format!(
            "binomial({n},{k}): n exceeds the exact-arithmetic bound {BINOMIAL_MAX_N}"
        )));
    }
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - k as u128 + i) / i;
    }
    Ok(acc as u64)
}

/// A strictly increasing tuple of distinct 1-based indices.
///
/// The canonical text rendering joins elements with commas (`"1,2,3"`);
/// the compact digit form (`"123"`) is only defined while every element
/// is a single digit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QString {
    elements: Vec<usize>,
}

impl QString {
    /// Validates elements against the ground-set bound `n`.
    pub fn new(elements: Vec<usize>, n: usize) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Domain("a q-string must be nonempty".into()));
        }
        for w in elements.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Domain(format!(
                    "elements must be strictly increasing, got {:?}",
                    elements
                )));
            }
        }
        if elements[0] < 1 || *elements.last().unwrap() > n {
            return Err(Error::Domain(format!(
                "elements {:?} outside ground set 1..={n}",
                elements
            )));
        }
        Ok(QString { elements })
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        QString { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_disjoint(&self, other: &QString) -> bool {
        self.elements.iter().all(|&x| !other.contains(x))
    }

    pub fn max_element(&self) -> usize {
        *self.elements.last().unwrap()
    }

    /// Digit-concatenated form, e.g. `123`; only when all elements are
    /// single digits.
    pub fn digits(&self) -> Option<String> {
        if self.max_element() > 9 {
            return None;
        }
        Some(self.elements.iter().map(|e| e.to_string()).collect())
    }
}

impl fmt::Display for QString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.elements {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// All q-strings on {1..n} in increasing lexicographic order.
///
/// The first is (1..q), the last is (n-q+1..n), and the list has exactly
/// C(n,q) entries.
pub fn enumerate_qstrings(n: usize, q: usize) -> Result<Vec<QString>> {
    if n < 1 {
        return Err(Error::Domain("ground set must be nonempty".into()));
    }
    if q < 1 || q > n {
        return Err(Error::Domain(format!(
            "q={q} outside 1..={n} for q-string enumeration"
        )));
    }
    let count = binomial(n as u64, q as u64)?;
    if count > ENUMERATION_CAP {
        return Err(Error::Capacity(format!(
            "C({n},{q}) = {count} q-strings exceed the enumeration cap"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur: Vec<usize> = (1..=q).collect();
    loop {
        out.push(QString::from_sorted_unchecked(cur.clone()));
        // rightmost element that can still advance
        let mut i = q;
        while i > 0 && cur[i - 1] == n - q + i {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cur[i - 1] += 1;
        for j in i..q {
            cur[j] = cur[j - 1] + 1;
        }
    }
    Ok(out)
}

/// The family of all q-strings on {1..n} \ A, in decreasing lexicographic
/// order; requires n = 2q+1, so the family has exactly q+1 members.
pub fn complement_family(a: &QString, n: usize) -> Result<Vec<QString>> {
    let q = a.len();
    if n != 2 * q + 1 {
        return Err(Error::Domain(format!(
            "complement family needs a ground set of 2q+1 = {} elements, got {n}",
            2 * q + 1
        )));
    }
    if a.max_element() > n {
        return Err(Error::Domain(format!(
            "q-string {a} does not live in 1..={n}"
        )));
    }
    let rest: Vec<usize> = (1..=n).filter(|&x| !a.contains(x)).collect();
    debug_assert_eq!(rest.len(), q + 1);
    // q-subsets of a (q+1)-set: drop one element at a time; dropping the
    // first element gives the lexicographically largest string.
    let mut family = Vec::with_capacity(q + 1);
    for skip in 0..rest.len() {
        let elems: Vec<usize> = rest
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, &x)| x)
            .collect();
        family.push(QString::from_sorted_unchecked(elems));
    }
    debug_assert!(family.windows(2).all(|w| w[0] > w[1]));
    Ok(family)
}

/// The unique element of {1..n} outside two disjoint q-strings on a
/// ground set with n = 2q+1.
pub fn residual_element(a: &QString, c: &QString, n: usize) -> Result<usize> {
    let q = a.len();
    if c.len() != q {
        return Err(Error::Domain(format!(
            "q-strings of different lengths: {} vs {}",
            a.len(),
            c.len()
        )));
    }
    if n != 2 * q + 1 {
        return Err(Error::Domain(format!(
            "residual element needs n = 2q+1 = {}, got {n}",
            2 * q + 1
        )));
    }
    if !a.is_disjoint(c) {
        return Err(Error::Domain(format!("q-strings {a} and {c} overlap")));
    }
    if a.max_element() > n || c.max_element() > n {
        return Err(Error::Domain("q-string outside ground set".into()));
    }
    let mut missing = (1..=n).filter(|&x| !a.contains(x) && !c.contains(x));
    let found = missing.next().ok_or_else(|| {
        Error::InvariantViolation("no residual element found".into())
    })?;
    debug_assert!(missing.next().is_none());
    Ok(found)
}
