//! Pairings of almost-complementaries on Omega = {1..2q+1}: the greedy
//! construction, a matching-based construction whose success is
//! guaranteed by Hall's theorem, and verification.

use crate::combinatorics::{binomial, complement_family, enumerate_qstrings, QString};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Largest q accepted by the constructions (C(17,8) = 24310 strings).
pub const MAX_PAC_Q: usize = 8;

/// A bijection on the q-strings of {1..2q+1} sending each string to one
/// of its almost-complementaries. `pairs` is indexed by the lexicographic
/// rank of the left-hand string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacMapping {
    pub q: usize,
    pub pairs: Vec<(QString, QString)>,
}

impl PacMapping {
    pub fn ground_set_size(&self) -> usize {
        2 * self.q + 1
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Looks up the image of a domain string.
    pub fn image_of(&self, a: &QString) -> Option<&QString> {
        self.pairs
            .binary_search_by(|(dom, _)| dom.cmp(a))
            .ok()
            .map(|i| &self.pairs[i].1)
    }

    /// The right-hand sides, read as a system of distinct representatives
    /// of the complement families of the left-hand sides.
    pub fn sdr_certificate(&self) -> SdrCertificate {
        SdrCertificate {
            q: self.q,
            representatives: self.pairs.iter().map(|(_, c)| c.clone()).collect(),
        }
    }
}

/// One distinct representative per complement family, in the
/// lexicographic order of the family owners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdrCertificate {
    pub q: usize,
    pub representatives: Vec<QString>,
}

impl SdrCertificate {
    /// Distinctness plus membership of each representative in the family
    /// it represents.
    pub fn verify(&self) -> Result<bool> {
        let n = 2 * self.q + 1;
        let owners = enumerate_qstrings(n, self.q)?;
        if owners.len() != self.representatives.len() {
            return Ok(false);
        }
        let distinct: BTreeSet<&QString> = self.representatives.iter().collect();
        if distinct.len() != self.representatives.len() {
            return Ok(false);
        }
        for (owner, rep) in owners.iter().zip(&self.representatives) {
            if !complement_family(owner, n)?.contains(rep) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Result of the greedy construction: either a complete mapping or the
/// first left-hand string whose candidates were all taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyOutcome {
    Complete(PacMapping),
    Stuck {
        /// 1-based position in the lexicographic enumeration.
        index: usize,
        domain: QString,
    },
}

fn check_q(q: usize) -> Result<()> {
    if q < 1 {
        return Err(Error::Domain("q must be >= 1".into()));
    }
    if q > MAX_PAC_Q {
        return Err(Error::Capacity(format!(
            "q={q} exceeds the construction capacity q <= {MAX_PAC_Q}"
        )));
    }
    Ok(())
}

/// The greedy pairing: walks the q-strings in increasing lexicographic
/// order and assigns each one the first unused member of its complement
/// family, candidates taken in decreasing lexicographic order.
pub fn greedy_qpac(q: usize) -> Result<GreedyOutcome> {
    check_q(q)?;
    let n = 2 * q + 1;
    let domain = enumerate_qstrings(n, q)?;
    let mut used: BTreeSet<QString> = BTreeSet::new();
    let mut pairs = Vec::with_capacity(domain.len());
    for (i, a) in domain.iter().enumerate() {
        let candidates = complement_family(a, n)?;
        match candidates.into_iter().find(|c| !used.contains(c)) {
            Some(c) => {
                used.insert(c.clone());
                pairs.push((a.clone(), c));
            }
            None => {
                return Ok(GreedyOutcome::Stuck {
                    index: i + 1,
                    domain: a.clone(),
                })
            }
        }
    }
    Ok(GreedyOutcome::Complete(PacMapping { q, pairs }))
}

/// Builds a pairing through maximum bipartite matching: left vertices
/// are the q-strings in domain role, right vertices the same strings in
/// image role, with an edge where the right string is an
/// almost-complementary of the left one. Hall's condition holds (every
/// string lies in exactly q+1 families), so a perfect matching exists;
/// failure to find one is reported as an invariant violation.
///
/// Vertices are scanned in lexicographic order, so the output is
/// reproducible.
pub fn matching_qpac(q: usize) -> Result<PacMapping> {
    check_q(q)?;
    let n = 2 * q + 1;
    let strings = enumerate_qstrings(n, q)?;
    let p = strings.len();
    let rank: BTreeMap<&QString, usize> =
        strings.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(p);
    for a in &strings {
        let fam = complement_family(a, n)?;
        adj.push(fam.iter().map(|c| rank[c]).collect());
    }

    let mut match_left: Vec<Option<usize>> = vec![None; p];
    let mut match_right: Vec<Option<usize>> = vec![None; p];
    // cheap first pass, then augmenting paths for the leftovers
    for (l, neighbors) in adj.iter().enumerate() {
        if let Some(&r) = neighbors.iter().find(|&&r| match_right[r].is_none()) {
            match_left[l] = Some(r);
            match_right[r] = Some(l);
        }
    }
    for l in 0..p {
        if match_left[l].is_none() {
            let mut seen = vec![false; p];
            if !augment(l, &adj, &mut seen, &mut match_left, &mut match_right) {
                return Err(Error::InvariantViolation(format!(
                    "matching failed to saturate string {} at q={q}",
                    strings[l]
                )));
            }
        }
    }

    let pairs = strings
        .iter()
        .enumerate()
        .map(|(l, a)| {
            let r = match_left[l].expect("saturated matching");
            (a.clone(), strings[r].clone())
        })
        .collect();
    Ok(PacMapping { q, pairs })
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let free = match match_right[r] {
            None => true,
            Some(owner) => augment(owner, adj, seen, match_left, match_right),
        };
        if free {
            match_left[l] = Some(r);
            match_right[r] = Some(l);
            return true;
        }
    }
    false
}

/// Outcome of [`verify_qpac`]: overall validity plus one message per
/// violated condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacVerification {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Checks the three defining conditions: the domain enumerates all
/// q-strings in lexicographic order, the images are pairwise distinct,
/// and every image is an almost-complementary of its domain string.
pub fn verify_qpac(m: &PacMapping) -> Result<PacVerification> {
    let n = 2 * m.q + 1;
    let mut violations = Vec::new();
    let expected = enumerate_qstrings(n, m.q)?;
    if m.pairs.len() != expected.len() {
        violations.push(format!(
            "{} pairs present, expected C({n},{}) = {}",
            m.pairs.len(),
            m.q,
            expected.len()
        ));
    }
    for (want, (got, _)) in expected.iter().zip(&m.pairs) {
        if want != got {
            violations.push(format!(
                "domain out of order: expected {want}, found {got}"
            ));
            break;
        }
    }
    let mut seen: BTreeMap<&QString, &QString> = BTreeMap::new();
    for (a, c) in &m.pairs {
        if let Some(prev) = seen.insert(c, a) {
            violations.push(format!("image {c} repeated (for {prev} and {a})"));
        }
        if c.len() != m.q || c.max_element() > n {
            violations.push(format!("image {c} is not a q-string on 1..={n}"));
        } else if !a.is_disjoint(c) {
            violations.push(format!("pair {a} -> {c} shares elements"));
        }
    }
    Ok(PacVerification {
        ok: violations.is_empty(),
        violations,
    })
}

/// For each q-string C on {1..2q+1}, the number of complement families
/// containing it. Every count equals q+1.
pub fn degree_census(q: usize) -> Result<BTreeMap<QString, usize>> {
    if q < 1 {
        return Err(Error::Domain("q must be >= 1".into()));
    }
    if q > 6 {
        return Err(Error::Capacity(format!("degree census capped at q <= 6, got {q}")));
    }
    let n = 2 * q + 1;
    let all = enumerate_qstrings(n, q)?;
    let mut census: BTreeMap<QString, usize> = all.iter().map(|s| (s.clone(), 0)).collect();
    for a in &all {
        for c in complement_family(a, n)? {
            *census.get_mut(&c).expect("census covers all strings") += 1;
        }
    }
    Ok(census)
}

/// Expected pair count p = C(2q+1, q).
pub fn pac_size(q: usize) -> Result<u64> {
    binomial((2 * q + 1) as u64, q as u64)
}
