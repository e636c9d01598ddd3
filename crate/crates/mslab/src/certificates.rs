//! Lower-bound witnesses for the two settled regimes: the row
//! configuration built from a (d-1)-pairing for n = 2d+2, r = 2d-1, and
//! block-disjoint partition systems for r = (d-1)(n-r). Each witness
//! comes with an exhaustive verifier.

use crate::combinatorics::{binomial, residual_element, QString};
use crate::error::{Error, Result};
use crate::pac::{greedy_qpac, matching_qpac, GreedyOutcome, PacMapping};
use crate::weights::WeightFunction;
use std::collections::BTreeSet;

/// One row of the configuration: three disjoint strings over I_n whose
/// union is all of I_n. `a_part` and `c_part` are d-strings (q
/// nonnegative elements plus one negative element each), `i_part` pairs
/// the leftover nonnegative element with the most negative one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigRow {
    pub a_part: QString,
    pub c_part: QString,
    pub i_part: QString,
}

/// The full configuration over n = 2d+2 with r = 2d-1: one row per
/// q-string of {1..r}, q = d-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub d: usize,
    pub rows: Vec<ConfigRow>,
}

impl Configuration {
    pub fn n(&self) -> usize {
        2 * self.d + 2
    }

    pub fn r(&self) -> usize {
        2 * self.d - 1
    }
}

fn with_extra(base: &QString, extra: usize) -> QString {
    let mut elems = base.elements().to_vec();
    elems.push(extra);
    debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
    QString::from_sorted_unchecked(elems)
}

/// Builds the configuration from a (d-1)-pairing on {1..2d-1}; the greedy
/// construction is used first, with the matching construction as
/// fallback when greedy gets stuck.
pub fn build_configuration(d: usize) -> Result<Configuration> {
    if d < 2 {
        return Err(Error::Domain(format!("configuration needs d >= 2, got {d}")));
    }
    let q = d - 1;
    let pac: PacMapping = match greedy_qpac(q)? {
        GreedyOutcome::Complete(m) => m,
        GreedyOutcome::Stuck { .. } => matching_qpac(q)?,
    };
    let r = 2 * d - 1;
    let n = 2 * d + 2;
    let mut rows = Vec::with_capacity(pac.len());
    for (a, c) in &pac.pairs {
        let i = residual_element(a, c, r)?;
        rows.push(ConfigRow {
            a_part: with_extra(a, r + 1),
            c_part: with_extra(c, r + 2),
            i_part: QString::new(vec![i, r + 3], n)?,
        });
    }
    Ok(Configuration { d, rows })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigVerification {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Exhaustive check of the configuration invariants: row count
/// C(2d-1,d-1), each row a partition of I_n into parts of sizes d, d, 2
/// with the right negative elements, and no a-part or c-part repeated.
pub fn verify_configuration(c: &Configuration) -> Result<ConfigVerification> {
    let mut violations = Vec::new();
    let d = c.d;
    let n = c.n();
    let r = c.r();
    let expected_rows = binomial(r as u64, (d - 1) as u64)?;
    if c.rows.len() as u64 != expected_rows {
        violations.push(format!(
            "{} rows present, expected C({r},{}) = {expected_rows}",
            c.rows.len(),
            d - 1
        ));
    }
    for (idx, row) in c.rows.iter().enumerate() {
        let s = idx + 1;
        if row.a_part.len() != d || !row.a_part.contains(r + 1) {
            violations.push(format!("row {s}: a-part {} malformed", row.a_part));
        }
        if row.c_part.len() != d || !row.c_part.contains(r + 2) {
            violations.push(format!("row {s}: c-part {} malformed", row.c_part));
        }
        if row.i_part.len() != 2 || !row.i_part.contains(r + 3) {
            violations.push(format!("row {s}: i-part {} malformed", row.i_part));
        }
        let mut union: Vec<usize> = row
            .a_part
            .elements()
            .iter()
            .chain(row.c_part.elements())
            .chain(row.i_part.elements())
            .copied()
            .collect();
        union.sort_unstable();
        let covers: Vec<usize> = (1..=n).collect();
        if union != covers {
            violations.push(format!("row {s}: parts do not partition 1..={n}"));
        }
    }
    let a_side: BTreeSet<&QString> = c.rows.iter().map(|row| &row.a_part).collect();
    if a_side.len() != c.rows.len() {
        violations.push("a-parts are not pairwise distinct".into());
    }
    let c_side: BTreeSet<&QString> = c.rows.iter().map(|row| &row.c_part).collect();
    if c_side.len() != c.rows.len() {
        violations.push("c-parts are not pairwise distinct".into());
    }
    Ok(ConfigVerification {
        ok: violations.is_empty(),
        violations,
    })
}

/// Certifies the row floor for a weight function meeting the hypothesis
/// x_k + y_{n-r} < 0 for every k = 1..r. Each row's i-part must then sum
/// negative, which forces one of the two d-strings in the row to sum
/// nonnegative; the returned row count p = C(r,d-1), together with the
/// C(r,d) all-nonnegative d-strings, gives phi(f,d) >= C(r,d) + C(r,d-1).
pub fn certified_row_floor(f: &WeightFunction, c: &Configuration) -> Result<u64> {
    let n = c.n();
    let r = c.r();
    if f.n() != n {
        return Err(Error::Domain(format!(
            "weight function has n={}, configuration needs n={n}",
            f.n()
        )));
    }
    if f.nonneg_count() != r {
        return Err(Error::Domain(format!(
            "weight function has {} nonnegative values, configuration needs r={r}",
            f.nonneg_count()
        )));
    }
    let y_last = f.value(n);
    for k in 1..=r {
        if (f.value(k) + y_last).is_nonnegative() {
            return Err(Error::Hypothesis {
                k,
                detail: format!(
                    "x_{k} + y_{} = {} is nonnegative, hypothesis requires it negative",
                    n - r,
                    f.value(k) + y_last
                ),
            });
        }
    }
    for (idx, row) in c.rows.iter().enumerate() {
        let s = idx + 1;
        if !f.subset_sum(&row.i_part)?.is_negative() {
            return Err(Error::InvariantViolation(format!(
                "row {s}: i-part {} sums nonnegative despite the hypothesis",
                row.i_part
            )));
        }
        let a_ok = f.subset_sum(&row.a_part)?.is_nonnegative();
        let c_ok = f.subset_sum(&row.c_part)?.is_nonnegative();
        if !a_ok && !c_ok {
            return Err(Error::InvariantViolation(format!(
                "row {s}: neither {} nor {} has a nonnegative sum",
                row.a_part, row.c_part
            )));
        }
    }
    Ok(c.rows.len() as u64)
}

/// A family of block-disjoint partitions of I_n. Every block is a
/// d-string of d-1 elements from {1..r} plus one element from {r+1..n},
/// where r = (d-1)n/d; every partition splits I_n into n-r such blocks
/// and no block appears in two partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSystem {
    pub n: usize,
    pub d: usize,
    pub partitions: Vec<Vec<QString>>,
}

impl PartitionSystem {
    pub fn r(&self) -> usize {
        (self.d - 1) * self.n / self.d
    }

    pub fn block_count(&self) -> usize {
        self.partitions.iter().map(|p| p.len()).sum()
    }
}

fn partition_system_params(n: usize, d: usize) -> Result<(usize, usize)> {
    if d < 2 {
        return Err(Error::Domain(format!("partition systems need d >= 2, got {d}")));
    }
    if !n.is_multiple_of(d) {
        return Err(Error::Domain(format!(
            "partition systems need d | n; {d} does not divide {n}"
        )));
    }
    let r = (d - 1) * n / d;
    if r < d {
        return Err(Error::Domain(format!(
            "r = (d-1)n/d = {r} must be at least d = {d}"
        )));
    }
    Ok((r, n - r))
}

/// Enumerates all (d-1)-subsets of `pool`, lexicographically.
fn subsets_of(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(pool: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..pool.len() {
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(pool, k, 0, &mut cur, &mut out);
    out
}

/// Constructs the complete system of C(r-1,d-2)(n-r) block-disjoint
/// partitions by exact-cover backtracking: candidate partitions are
/// generated lexicographically, and the search selects a set of them
/// using every candidate block exactly once. Exhaustion without a cover
/// is reported as a construction failure rather than papered over.
pub fn build_partition_systems(n: usize, d: usize) -> Result<PartitionSystem> {
    if n > 9 {
        return Err(Error::Capacity(format!(
            "partition-system construction capped at n <= 9, got {n}"
        )));
    }
    let (r, tail) = partition_system_params(n, d)?;

    // candidate blocks in lexicographic order
    let nonnegs: Vec<usize> = (1..=r).collect();
    let mut blocks: Vec<QString> = Vec::new();
    for subset in subsets_of(&nonnegs, d - 1) {
        for neg in r + 1..=n {
            let mut elems = subset.clone();
            elems.push(neg);
            blocks.push(QString::from_sorted_unchecked(elems));
        }
    }
    let block_rank = |q: &QString| -> usize {
        blocks.binary_search(q).expect("candidate block")
    };
    debug_assert!(blocks.windows(2).all(|w| w[0] < w[1]));
    assert!(blocks.len() <= 64, "block bitmask capacity");

    // candidate partitions: assign a (d-1)-subset of the remaining
    // nonnegative elements to each negative element in turn
    let mut partitions: Vec<Vec<QString>> = Vec::new();
    let mut masks: Vec<u64> = Vec::new();
    fn gen(
        n: usize,
        d: usize,
        neg: usize,
        remaining: &[usize],
        acc: &mut Vec<QString>,
        out: &mut Vec<Vec<QString>>,
    ) {
        if neg > n {
            out.push(acc.clone());
            return;
        }
        for subset in subsets_of(remaining, d - 1) {
            let rest: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|x| !subset.contains(x))
                .collect();
            let mut elems = subset.clone();
            elems.push(neg);
            acc.push(QString::from_sorted_unchecked(elems));
            gen(n, d, neg + 1, &rest, acc, out);
            acc.pop();
        }
    }
    gen(n, d, r + 1, &nonnegs, &mut Vec::new(), &mut partitions);
    for p in &partitions {
        let mask = p
            .iter()
            .fold(0u64, |m, q| m | (1u64 << block_rank(q)));
        masks.push(mask);
    }

    // rows containing each block, in generation (lexicographic) order
    let mut rows_with: Vec<Vec<usize>> = vec![Vec::new(); blocks.len()];
    for (row, mask) in masks.iter().enumerate() {
        let mut m = *mask;
        while m != 0 {
            let bit = m.trailing_zeros() as usize;
            rows_with[bit].push(row);
            m &= m - 1;
        }
    }

    let full: u64 = if blocks.len() == 64 {
        u64::MAX
    } else {
        (1u64 << blocks.len()) - 1
    };
    let mut chosen: Vec<usize> = Vec::new();
    fn cover(
        covered: u64,
        full: u64,
        masks: &[u64],
        rows_with: &[Vec<usize>],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if covered == full {
            return true;
        }
        let first = (!covered & full).trailing_zeros() as usize;
        for &row in &rows_with[first] {
            if masks[row] & covered == 0 {
                chosen.push(row);
                if cover(covered | masks[row], full, masks, rows_with, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if !cover(0, full, &masks, &rows_with, &mut chosen) {
        return Err(Error::ConstructionFailure(format!(
            "no block-disjoint partition system covers all {} candidate blocks for n={n}, d={d}",
            blocks.len()
        )));
    }

    let selected = chosen
        .iter()
        .map(|&row| {
            let mut blocks = partitions[row].clone();
            blocks.sort();
            blocks
        })
        .collect();
    let system = PartitionSystem {
        n,
        d,
        partitions: selected,
    };
    let expected = binomial((r - 1) as u64, (d - 2) as u64)? * tail as u64;
    if system.partitions.len() as u64 != expected {
        return Err(Error::InvariantViolation(format!(
            "exact cover selected {} partitions, expected {expected}",
            system.partitions.len()
        )));
    }
    Ok(system)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionVerification {
    pub ok: bool,
    pub violations: Vec<String>,
    /// C(r-1,d-2)(n-r), reported when a weight function was supplied and
    /// every check passed.
    pub certified_floor: Option<u64>,
}

/// Checks the partition-system invariants, and with a weight function
/// additionally checks that every partition holds at least one block with
/// nonnegative sum (forced by the total sum being nonnegative), in which
/// case the certified floor C(r-1,d-2)(n-r) = C(r,d-1) is returned.
pub fn verify_partition_systems(
    sys: &PartitionSystem,
    f: Option<&WeightFunction>,
) -> Result<PartitionVerification> {
    let mut violations = Vec::new();
    let (r, tail) = match partition_system_params(sys.n, sys.d) {
        Ok(pair) => pair,
        Err(e) => {
            return Ok(PartitionVerification {
                ok: false,
                violations: vec![e.to_string()],
                certified_floor: None,
            })
        }
    };
    let n = sys.n;
    let d = sys.d;
    let expected = binomial((r - 1) as u64, (d - 2) as u64)? * tail as u64;
    if sys.partitions.len() as u64 != expected {
        violations.push(format!(
            "{} partitions present, expected C({},{})({}) = {expected}",
            sys.partitions.len(),
            r - 1,
            d - 2,
            tail
        ));
    }
    for (pi, partition) in sys.partitions.iter().enumerate() {
        if partition.len() != tail {
            violations.push(format!("partition {}: {} blocks, expected {tail}", pi + 1, partition.len()));
        }
        let mut union: Vec<usize> = Vec::with_capacity(n);
        for block in partition {
            if block.len() != d {
                violations.push(format!("partition {}: block {block} is not a d-string", pi + 1));
            }
            let pos = block.elements().iter().filter(|&&e| e <= r).count();
            let neg = block.len() - pos;
            if pos != d - 1 || neg != 1 {
                violations.push(format!(
                    "partition {}: block {block} is not of type (d-1 nonnegative, 1 negative)",
                    pi + 1
                ));
            }
            union.extend(block.elements());
        }
        union.sort_unstable();
        let covers: Vec<usize> = (1..=n).collect();
        if union != covers {
            violations.push(format!("partition {} does not partition 1..={n}", pi + 1));
        }
    }
    let mut seen: BTreeSet<&QString> = BTreeSet::new();
    for partition in &sys.partitions {
        for block in partition {
            if !seen.insert(block) {
                violations.push(format!("block {block} appears in two partitions"));
            }
        }
    }
    let mut certified_floor = None;
    if let Some(f) = f {
        if f.n() != n {
            violations.push(format!("weight function has n={}, system needs n={n}", f.n()));
        } else if f.nonneg_count() != r {
            violations.push(format!(
                "weight function has f+={}, system needs r={r}",
                f.nonneg_count()
            ));
        } else {
            for (pi, partition) in sys.partitions.iter().enumerate() {
                let any = partition
                    .iter()
                    .map(|b| f.subset_sum(b))
                    .collect::<Result<Vec<_>>>()?
                    .iter()
                    .any(|s| s.is_nonnegative());
                if !any {
                    violations.push(format!(
                        "partition {} has no block with nonnegative sum",
                        pi + 1
                    ));
                }
            }
            if violations.is_empty() {
                certified_floor = Some(expected);
            }
        }
    }
    Ok(PartitionVerification {
        ok: violations.is_empty(),
        violations,
        certified_floor,
    })
}
