//! Weight functions on I_n = {1..n} with exact rational values, and the
//! exhaustive counter for nonnegative d-subsets.
//!
//! A weight function stores its values in canonical form: the r
//! nonnegative values first in non-increasing order (zeros at the end of
//! that block), then the strictly negative values, also non-increasing.
//! phi(f,d) is computed by enumerating all C(n,d) subsets; every sign is
//! decided in exact arithmetic.

use crate::combinatorics::QString;
use crate::error::{Error, Result};
use crate::rational::Rational;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    values: Vec<Rational>, // canonical: non-increasing, nonnegatives first
    nonneg: usize,         // r = f^+
}

impl WeightFunction {
    /// Canonicalizes a raw value list. The multiset of values is
    /// preserved; fails if the list is empty or the total sum is
    /// negative.
    pub fn new(raw: Vec<Rational>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Validation("a weight function needs n >= 1 values".into()));
        }
        let total: Rational = raw.iter().copied().sum();
        if total.is_negative() {
            return Err(Error::Validation(format!(
                "total sum {total} is negative; not a weight function"
            )));
        }
        let mut values = raw;
        values.sort_by(|a, b| b.cmp(a));
        let nonneg = values.iter().take_while(|v| v.is_nonnegative()).count();
        Ok(WeightFunction { values, nonneg })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// f^+ : the number of indices with value >= 0 (zeros included).
    pub fn nonneg_count(&self) -> usize {
        self.nonneg
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Value at the 1-based index `i`.
    pub fn value(&self, i: usize) -> Rational {
        self.values[i - 1]
    }

    pub fn total(&self) -> Rational {
        self.values.iter().copied().sum()
    }

    /// Exact sum of the values over the indices of `s`.
    pub fn subset_sum(&self, s: &QString) -> Result<Rational> {
        if s.max_element() > self.n() {
            return Err(Error::Domain(format!(
                "subset {s} exceeds ground set 1..={}",
                self.n()
            )));
        }
        Ok(s.elements().iter().map(|&i| self.values[i - 1]).sum())
    }

    /// Multiplies every value by a positive rational.
    pub fn scale(&self, lambda: Rational) -> Result<WeightFunction> {
        if !lambda.is_positive() {
            return Err(Error::Domain(format!("scale factor {lambda} must be positive")));
        }
        WeightFunction::new(self.values.iter().map(|&v| v * lambda).collect())
    }

    /// phi(f,d): the number of d-subsets of I_n with nonnegative sum,
    /// by full enumeration of all C(n,d) subsets.
    pub fn count_dplus(&self, d: usize) -> Result<u64> {
        self.check_d(d)?;
        let mut count = 0u64;
        self.walk_dplus(d, &mut |_| count += 1);
        Ok(count)
    }

    /// The nonnegative d-subsets themselves, in lexicographic order.
    pub fn dplus_subsets(&self, d: usize) -> Result<Vec<QString>> {
        self.check_d(d)?;
        let mut out = Vec::new();
        self.walk_dplus(d, &mut |s| out.push(QString::from_sorted_unchecked(s.to_vec())));
        Ok(out)
    }

    fn check_d(&self, d: usize) -> Result<()> {
        if d < 1 || d > self.n() {
            return Err(Error::Domain(format!(
                "d={d} outside 1..={} for counting",
                self.n()
            )));
        }
        Ok(())
    }

    /// Lexicographic depth-first enumeration carrying exact partial sums.
    fn walk_dplus(&self, d: usize, visit: &mut impl FnMut(&[usize])) {
        let n = self.n();
        let mut chosen: Vec<usize> = Vec::with_capacity(d);
        let mut sums: Vec<Rational> = Vec::with_capacity(d + 1);
        sums.push(Rational::ZERO);
        self.walk_rec(1, n, d, &mut chosen, &mut sums, visit);
    }

    fn walk_rec(
        &self,
        from: usize,
        n: usize,
        d: usize,
        chosen: &mut Vec<usize>,
        sums: &mut Vec<Rational>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if chosen.len() == d {
            if sums.last().unwrap().is_nonnegative() {
                visit(chosen);
            }
            return;
        }
        let need = d - chosen.len();
        for i in from..=n.saturating_sub(need - 1) {
            chosen.push(i);
            sums.push(*sums.last().unwrap() + self.values[i - 1]);
            self.walk_rec(i + 1, n, d, chosen, sums, visit);
            sums.pop();
            chosen.pop();
        }
    }

    /// Bar notation for a subset: nonnegative elements verbatim, then
    /// `|`, then the negative elements shifted down by r. Digits are
    /// concatenated while both sides stay single-digit, otherwise the
    /// tokens are comma-separated.
    pub fn format_string(&self, s: &QString) -> Result<String> {
        if s.max_element() > self.n() {
            return Err(Error::Domain(format!(
                "subset {s} exceeds ground set 1..={}",
                self.n()
            )));
        }
        let r = self.nonneg;
        let compact = r <= 9 && self.n() - r <= 9;
        let join = |parts: &[usize]| -> String {
            if compact {
                parts.iter().map(|e| e.to_string()).collect()
            } else {
                parts
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        let pos: Vec<usize> = s.elements().iter().copied().filter(|&e| e <= r).collect();
        let neg: Vec<usize> = s
            .elements()
            .iter()
            .copied()
            .filter(|&e| e > r)
            .map(|e| e - r)
            .collect();
        Ok(format!("{}|{}", join(&pos), join(&neg)))
    }

    /// Writes the plain-text file format: header `n r`, then the
    /// canonical values whitespace-separated.
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "{} {}", self.n(), self.nonneg)?;
        let line: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        writeln!(w, "{}", line.join(" "))?;
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        self.write_to(&mut f)
    }

    /// Parses the file format. Lines starting with `#` are comments.
    /// The header r is re-derived from the values and must agree.
    pub fn read_from(r: &mut impl BufRead) -> Result<WeightFunction> {
        let mut header: Option<(usize, usize, usize)> = None; // (n, r, line)
        let mut values: Vec<Rational> = Vec::new();
        let mut value_line = 0usize;
        for (idx, line) in r.lines().enumerate() {
            let lineno = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            match header {
                None => {
                    let mut it = trimmed.split_whitespace();
                    let n: usize = it
                        .next()
                        .ok_or_else(|| Error::Parse {
                            line: lineno,
                            msg: "missing n in header".into(),
                        })?
                        .parse()
                        .map_err(|_| Error::Parse {
                            line: lineno,
                            msg: "header n is not an integer".into(),
                        })?;
                    let rr: usize = it
                        .next()
                        .ok_or_else(|| Error::Parse {
                            line: lineno,
                            msg: "missing r in header".into(),
                        })?
                        .parse()
                        .map_err(|_| Error::Parse {
                            line: lineno,
                            msg: "header r is not an integer".into(),
                        })?;
                    if it.next().is_some() {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "header must be exactly `n r`".into(),
                        });
                    }
                    if n == 0 || rr > n {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("header n={n} r={rr} is not sensible"),
                        });
                    }
                    header = Some((n, rr, lineno));
                }
                Some((n, _, _)) => {
                    for tok in trimmed.split_whitespace() {
                        let v: Rational = tok.parse().map_err(|e| match e {
                            Error::Parse { msg, .. } => Error::Parse { line: lineno, msg },
                            other => other,
                        })?;
                        values.push(v);
                        value_line = lineno;
                        if values.len() > n {
                            return Err(Error::Parse {
                                line: lineno,
                                msg: format!("more than n={n} values supplied"),
                            });
                        }
                    }
                }
            }
        }
        let (n, rr, hline) = header.ok_or(Error::Parse {
            line: 0,
            msg: "empty weight-function file".into(),
        })?;
        if values.len() != n {
            return Err(Error::Parse {
                line: value_line.max(hline),
                msg: format!("expected n={n} values, found {}", values.len()),
            });
        }
        let wf = WeightFunction::new(values)?;
        if wf.nonneg_count() != rr {
            return Err(Error::Parse {
                line: hline,
                msg: format!(
                    "header says r={rr} but the values have {} nonnegative entries",
                    wf.nonneg_count()
                ),
            });
        }
        Ok(wf)
    }

    pub fn load(path: &Path) -> Result<WeightFunction> {
        let f = std::fs::File::open(path)?;
        WeightFunction::read_from(&mut std::io::BufReader::new(f))
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
