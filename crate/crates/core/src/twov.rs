//! Elements of the Brin-Thompson group 2V as numbered pattern pairs.
//!
//! A [`PatternPair`] lists `(domain, range)` rectangle pairs; the domains and the
//! ranges each partition `C²`, and the element acts on each domain rectangle by
//! the prefix replacement onto its range. Composition is written left to right:
//! `compose(f, g)` applies `f` first.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::cantor::{kraft_sum_is_one, DyadicPoint, Rect, Word};
use crate::error::ParseError;

/// `domain → range`, the unique prefix replacement between the two rectangles.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RectPair {
    pub domain: Rect,
    pub range: Rect,
}

impl RectPair {
    pub fn new(domain: Rect, range: Rect) -> Self {
        RectPair { domain, range }
    }

    /// Image of a point of `domain`. The caller guarantees membership.
    pub fn map_point(&self, p: &DyadicPoint) -> DyadicPoint {
        let first = self
            .range
            .first
            .concat(&p.first().suffix_from(self.domain.first.len()));
        let second = self
            .range
            .second
            .concat(&p.second().suffix_from(self.domain.second.len()));
        DyadicPoint::new(first, second)
    }

    /// Splits this pair along `axis` consistently in domain and range.
    pub fn bisect(&self, axis: usize) -> (RectPair, RectPair) {
        let (d0, d1) = self.domain.bisect(axis);
        let (r0, r1) = self.range.bisect(axis);
        (RectPair::new(d0, r0), RectPair::new(d1, r1))
    }

    /// Restricts the pair to the sub-rectangle `sub` of its range, yielding the
    /// matching sub-rectangle of the domain.
    fn pull_back(&self, sub: &Rect) -> Rect {
        Rect::new(
            self.domain
                .first
                .concat(&sub.first.suffix_from(self.range.first.len())),
            self.domain
                .second
                .concat(&sub.second.suffix_from(self.range.second.len())),
        )
    }

    /// Image of the sub-rectangle `sub` of the domain.
    fn push_forward(&self, sub: &Rect) -> Rect {
        Rect::new(
            self.range
                .first
                .concat(&sub.first.suffix_from(self.domain.first.len())),
            self.range
                .second
                .concat(&sub.second.suffix_from(self.domain.second.len())),
        )
    }

    /// The sibling pair along `axis` and the merged parent, if this pair is
    /// the result of a bisection along that axis.
    fn sibling(&self, axis: usize) -> Option<(RectPair, RectPair)> {
        let (dw, rw) = if axis == 0 {
            (&self.domain.first, &self.range.first)
        } else {
            (&self.domain.second, &self.range.second)
        };
        let (dp, db) = dw.parent()?;
        let (rp, rb) = rw.parent()?;
        if db != rb {
            return None;
        }
        let flip = 1 - db;
        let (sib, parent) = if axis == 0 {
            (
                RectPair::new(
                    Rect::new(dp.child(flip), self.domain.second.clone()),
                    Rect::new(rp.child(flip), self.range.second.clone()),
                ),
                RectPair::new(
                    Rect::new(dp, self.domain.second.clone()),
                    Rect::new(rp, self.range.second.clone()),
                ),
            )
        } else {
            (
                RectPair::new(
                    Rect::new(self.domain.first.clone(), dp.child(flip)),
                    Rect::new(self.range.first.clone(), rp.child(flip)),
                ),
                RectPair::new(
                    Rect::new(self.domain.first.clone(), dp),
                    Rect::new(self.range.first.clone(), rp),
                ),
            )
        };
        Some((sib, parent))
    }
}

impl fmt::Debug for RectPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.domain, self.range)
    }
}

/// A numbered pattern pair. The position of a pair in the list is its number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternPair {
    pairs: Vec<RectPair>,
}

/// One way a list of rectangles fails to partition `C²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionFault {
    Empty,
    Overlap(usize, usize),
    UnderCoverage,
}

/// Which side of a pattern pair a fault belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Domain,
    Range,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Domain => "domain",
            Side::Range => "range",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ValidationReport {
    pub faults: Vec<(Side, PartitionFault)>,
}

impl ValidationReport {
    pub fn faults_on(&self, side: Side) -> impl Iterator<Item = &PartitionFault> {
        self.faults
            .iter()
            .filter(move |(s, _)| *s == side)
            .map(|(_, f)| f)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .faults
            .iter()
            .map(|(side, fault)| match fault {
                PartitionFault::Empty => format!("{side} is empty"),
                PartitionFault::Overlap(i, j) => format!("{side} overlap at pairs ({i},{j})"),
                PartitionFault::UnderCoverage => format!("{side} does not cover C²"),
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks that `rects` is a dyadic subdivision of `C²`.
pub fn partition_faults(rects: &[&Rect]) -> Vec<PartitionFault> {
    if rects.is_empty() {
        return vec![PartitionFault::Empty];
    }
    let mut faults = Vec::new();
    for i in 0..rects.len() {
        for j in i + 1..rects.len() {
            if rects[i].intersection(rects[j]).is_some() {
                faults.push(PartitionFault::Overlap(i, j));
            }
        }
    }
    // Disjoint rectangles cover C² exactly when their measures sum to 1.
    if faults.is_empty() {
        let depths: Vec<usize> = rects.iter().map(|r| r.depth()).collect();
        if !kraft_sum_is_one(&depths, 2) {
            faults.push(PartitionFault::UnderCoverage);
        }
    }
    faults
}

/// The point lies in no domain rectangle; only possible for invalid elements.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("no domain rectangle contains {0}")]
pub struct Uncovered(pub DyadicPoint);

impl PatternPair {
    /// Wraps pairs without checking them; see [`PatternPair::validate`].
    pub fn from_pairs(pairs: Vec<RectPair>) -> Self {
        PatternPair { pairs }
    }

    /// Wraps pairs, rejecting anything that is not a valid element.
    pub fn new(pairs: Vec<RectPair>) -> Result<Self, ValidationReport> {
        let f = PatternPair { pairs };
        f.validate()?;
        Ok(f)
    }

    pub fn identity() -> Self {
        PatternPair {
            pairs: vec![RectPair::new(Rect::full(), Rect::full())],
        }
    }

    pub fn pairs(&self) -> &[RectPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn validate(&self) -> Result<(), ValidationReport> {
        let domains: Vec<&Rect> = self.pairs.iter().map(|p| &p.domain).collect();
        let ranges: Vec<&Rect> = self.pairs.iter().map(|p| &p.range).collect();
        let mut faults: Vec<(Side, PartitionFault)> = partition_faults(&domains)
            .into_iter()
            .map(|f| (Side::Domain, f))
            .collect();
        faults.extend(partition_faults(&ranges).into_iter().map(|f| (Side::Range, f)));
        if faults.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { faults })
        }
    }

    /// Index of the pair whose domain contains `p`.
    pub fn locate(&self, p: &DyadicPoint) -> Option<usize> {
        self.pairs.iter().position(|pair| pair.domain.contains_point(p))
    }

    pub fn apply(&self, p: &DyadicPoint) -> Result<DyadicPoint, Uncovered> {
        let i = self.locate(p).ok_or_else(|| Uncovered(p.clone()))?;
        Ok(self.pairs[i].map_point(p))
    }

    /// Swaps domain and range in every pair; numbering is kept.
    pub fn invert(&self) -> PatternPair {
        PatternPair {
            pairs: self
                .pairs
                .iter()
                .map(|p| RectPair::new(p.range.clone(), p.domain.clone()))
                .collect(),
        }
    }

    /// `f` then `g`, reduced and sorted.
    pub fn compose(&self, g: &PatternPair) -> PatternPair {
        compose_raw(self, g).reduce()
    }

    pub fn then(&self, g: &PatternPair) -> PatternPair {
        self.compose(g)
    }

    /// True iff the element fixes every point.
    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|p| p.domain == p.range)
    }

    /// Equality as functions, decided by testing `f·g⁻¹` for the identity.
    pub fn equals(&self, g: &PatternPair) -> bool {
        compose_raw(self, &g.invert()).is_identity()
    }

    /// Merges sibling pairs until none remain. The function is unchanged.
    pub fn reduce(&self) -> PatternPair {
        let mut live: BTreeSet<RectPair> = self.pairs.iter().cloned().collect();
        let mut work: Vec<RectPair> = live.iter().rev().cloned().collect();
        while let Some(p) = work.pop() {
            if !live.contains(&p) {
                continue;
            }
            for axis in 0..2 {
                if let Some((sib, parent)) = p.sibling(axis) {
                    if live.contains(&sib) {
                        live.remove(&p);
                        live.remove(&sib);
                        live.insert(parent.clone());
                        work.push(parent);
                        break;
                    }
                }
            }
        }
        PatternPair {
            pairs: live.into_iter().collect(),
        }
    }

    /// Pairs ordered by domain, the deterministic presentation.
    pub fn sorted(&self) -> PatternPair {
        let mut pairs = self.pairs.clone();
        pairs.sort();
        PatternPair { pairs }
    }

    pub fn power(&self, k: u64) -> PatternPair {
        let mut result = PatternPair::identity();
        let mut base = self.reduce();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base);
            }
        }
        result
    }

    /// Least `k ≤ max` with `f^k` the identity. Never asserts infinite order.
    pub fn order_bounded(&self, max: u64) -> OrderSearch {
        let base = self.reduce();
        let mut acc = base.clone();
        for k in 1..=max {
            if acc.is_identity() {
                return OrderSearch::Finite(k);
            }
            if k < max {
                acc = acc.compose(&base);
            }
        }
        OrderSearch::UnknownBeyond(max)
    }

    /// Longest word occurring in any rectangle.
    pub fn max_prefix_len(&self) -> usize {
        self.pairs
            .iter()
            .flat_map(|p| {
                [
                    p.domain.first.len(),
                    p.domain.second.len(),
                    p.range.first.len(),
                    p.range.second.len(),
                ]
            })
            .max()
            .unwrap_or(0)
    }

    /// Refines every pair by bisection until each domain is `R(α, β)` with
    /// `|α| = first_len` and `|β| = second_len`. Lengths must be at least the
    /// current maximum in each coordinate.
    pub fn refine_domains_to(&self, first_len: usize, second_len: usize) -> PatternPair {
        let mut out = Vec::new();
        let mut stack: Vec<RectPair> = self.pairs.iter().rev().cloned().collect();
        while let Some(p) = stack.pop() {
            let axis = if p.domain.first.len() < first_len {
                0
            } else if p.domain.second.len() < second_len {
                1
            } else {
                out.push(p);
                continue;
            };
            let (a, b) = p.bisect(axis);
            stack.push(b);
            stack.push(a);
        }
        PatternPair { pairs: out }
    }

    /// Refines each pair on its shorter domain coordinate until both domain
    /// words have the same length, so that every domain is addressed by a
    /// word over `{00, 01, 10, 11}`.
    pub fn square_domains(&self) -> PatternPair {
        let mut out = Vec::new();
        let mut stack: Vec<RectPair> = self.pairs.iter().rev().cloned().collect();
        while let Some(p) = stack.pop() {
            let (a, b) = (p.domain.first.len(), p.domain.second.len());
            if a == b {
                out.push(p);
                continue;
            }
            let (lo, hi) = p.bisect(if a < b { 0 } else { 1 });
            stack.push(hi);
            stack.push(lo);
        }
        PatternPair { pairs: out }
    }
}

/// Composition by common refinement of `f`'s ranges and `g`'s domains, unreduced.
fn compose_raw(f: &PatternPair, g: &PatternPair) -> PatternPair {
    let mut pairs = Vec::new();
    for fp in &f.pairs {
        for gp in &g.pairs {
            if let Some(cell) = fp.range.intersection(&gp.domain) {
                pairs.push(RectPair::new(fp.pull_back(&cell), gp.push_forward(&cell)));
            }
        }
    }
    pairs.sort();
    PatternPair { pairs }
}

pub fn compose(f: &PatternPair, g: &PatternPair) -> PatternPair {
    f.compose(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderSearch {
    Finite(u64),
    UnknownBeyond(u64),
}

impl fmt::Display for OrderSearch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderSearch::Finite(k) => write!(f, "order {k}"),
            OrderSearch::UnknownBeyond(n) => write!(f, "unknown beyond {n}"),
        }
    }
}

impl fmt::Display for PatternPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "2v {}", self.pairs.len())?;
        for p in &self.pairs {
            writeln!(f, "{} -> {}", p.domain, p.range)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PatternPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.pairs).finish()
    }
}

/// Parses the element format. Structure only; call [`PatternPair::validate`]
/// to check the partition conditions.
impl FromStr for PatternPair {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| ParseError::at(1, "missing `2v <n>` header"))?;
        let n: usize = header
            .strip_prefix("2v ")
            .and_then(|n| n.trim().parse().ok())
            .ok_or_else(|| ParseError::at(1, format!("expected `2v <n>`, found {header:?}")))?;
        let mut pairs = Vec::with_capacity(n);
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let (d, r) = line
                .split_once("->")
                .ok_or_else(|| ParseError::at(lineno, "expected `R(a,b) -> R(c,d)`"))?;
            let domain: Rect = d.parse().map_err(|e: ParseError| e.with_line(lineno))?;
            let range: Rect = r.parse().map_err(|e: ParseError| e.with_line(lineno))?;
            pairs.push(RectPair::new(domain, range));
        }
        if pairs.len() != n {
            return Err(ParseError::new(format!(
                "header announces {n} pairs but {} were listed",
                pairs.len()
            )));
        }
        Ok(PatternPair { pairs })
    }
}

/// Builds `f` from literal strings: `[("0","-","1","-"), …]`.
pub fn element(pairs: &[(&str, &str, &str, &str)]) -> PatternPair {
    PatternPair::from_pairs(
        pairs
            .iter()
            .map(|&(a, b, c, d)| {
                RectPair::new(
                    Rect::new(a.parse::<Word>().unwrap(), b.parse().unwrap()),
                    Rect::new(c.parse().unwrap(), d.parse().unwrap()),
                )
            })
            .collect(),
    )
}

/// Exchanges the two halves of the first coordinate.
pub fn halfswap() -> PatternPair {
    element(&[("0", "-", "1", "-"), ("1", "-", "0", "-")])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::{pt, rect};

    #[test]
    fn validate_examples() {
        assert_eq!(PatternPair::identity().validate(), Ok(()));
        let bad = element(&[("0", "-", "0", "-"), ("0", "-", "1", "-")]);
        let report = bad.validate().unwrap_err();
        assert_eq!(
            report.faults_on(Side::Domain).collect::<Vec<_>>(),
            vec![&PartitionFault::Overlap(0, 1)]
        );
        assert_eq!(report.faults_on(Side::Range).count(), 0);
        assert_eq!(report.to_string(), "domain overlap at pairs (0,1)");
    }

    #[test]
    fn validate_reports_under_coverage_and_empty() {
        let f = element(&[("0", "-", "-", "-")]);
        let report = f.validate().unwrap_err();
        assert_eq!(
            report.faults,
            vec![(Side::Domain, PartitionFault::UnderCoverage)]
        );
        let report = PatternPair::from_pairs(vec![]).validate().unwrap_err();
        assert_eq!(report.faults_on(Side::Domain).next(), Some(&PartitionFault::Empty));
    }

    #[test]
    fn apply_examples() {
        let id = PatternPair::identity();
        assert_eq!(id.apply(&pt("101", "1")).unwrap(), pt("101", "1"));
        assert_eq!(halfswap().apply(&pt("01", "-")).unwrap(), pt("11", "-"));
        let partial = element(&[("0", "-", "0", "-")]);
        assert!(partial.apply(&pt("1", "-")).is_err());
    }

    #[test]
    fn invert_examples() {
        let f = element(&[("0", "-", "-", "0"), ("1", "-", "-", "1")]);
        let g = element(&[("-", "0", "0", "-"), ("-", "1", "1", "-")]);
        assert_eq!(f.invert(), g);
        assert_eq!(f.invert().invert(), f);
        assert_eq!(PatternPair::identity().invert(), PatternPair::identity());
    }

    #[test]
    fn compose_examples() {
        let h = halfswap();
        assert!(h.compose(&h).is_identity());
        assert!(PatternPair::identity().compose(&h).equals(&h));
        assert!(h.compose(&PatternPair::identity()).equals(&h));
        let f = element(&[("0", "-", "-", "0"), ("1", "-", "-", "1")]);
        // f moves the first bit of the first coordinate onto the second.
        let ff = f.compose(&f);
        assert_eq!(f.apply(&pt("01", "1")).unwrap(), pt("1", "01"));
        assert_eq!(ff.apply(&pt("01", "1")).unwrap(), pt("-", "101"));
        assert!(f.compose(&f.invert()).is_identity());
    }

    #[test]
    fn identity_examples() {
        assert!(PatternPair::identity().is_identity());
        let refined = element(&[("0", "-", "0", "-"), ("1", "0", "1", "0"), ("1", "1", "1", "1")]);
        assert!(refined.is_identity());
        assert!(!halfswap().is_identity());
    }

    #[test]
    fn equality_examples() {
        let h = halfswap();
        let refined = PatternPair::from_pairs({
            let (a, b) = h.pairs()[0].bisect(1);
            vec![a, b, h.pairs()[1].clone()]
        });
        assert!(refined.validate().is_ok());
        assert!(h.equals(&refined) && refined.equals(&h));
        assert!(!PatternPair::identity().equals(&h));
    }

    #[test]
    fn reduce_examples() {
        let f = element(&[("0", "-", "0", "-"), ("1", "-", "1", "-")]);
        assert_eq!(f.reduce(), PatternPair::identity());
        assert_eq!(PatternPair::identity().reduce(), PatternPair::identity());
        let h = halfswap();
        let (a, b) = h.pairs()[1].bisect(0);
        let refined = PatternPair::from_pairs(vec![h.pairs()[0].clone(), a, b]);
        assert_eq!(refined.len(), 3);
        assert_eq!(refined.reduce(), h.sorted());
    }

    #[test]
    fn reduce_does_not_merge_mismatched_bits() {
        // (00 -> 01) and (01 -> 00) are siblings in the domain but the range bits cross.
        let f = element(&[("00", "-", "01", "-"), ("01", "-", "00", "-"), ("1", "-", "1", "-")]);
        assert_eq!(f.reduce().len(), 3);
    }

    #[test]
    fn power_examples() {
        let h = halfswap();
        assert!(h.power(2).is_identity());
        assert!(h.power(1).equals(&h));
        assert_eq!(h.power(0), PatternPair::identity());
        assert!(h.power(7).equals(&h));
    }

    #[test]
    fn order_examples() {
        assert_eq!(PatternPair::identity().order_bounded(10), OrderSearch::Finite(1));
        assert_eq!(halfswap().order_bounded(10), OrderSearch::Finite(2));
        let shift = element(&[("0", "-", "-", "0"), ("1", "-", "-", "1")]);
        assert_eq!(shift.order_bounded(6), OrderSearch::UnknownBeyond(6));
        assert_eq!(OrderSearch::UnknownBeyond(6).to_string(), "unknown beyond 6");
    }

    #[test]
    fn element_format_round_trips() {
        let text = "2v 2\nR(0,-) -> R(1,-)\nR(1,-) -> R(0,-)\n";
        let f: PatternPair = text.parse().unwrap();
        assert_eq!(f, halfswap());
        assert_eq!(f.to_string(), text);
        assert!("2v 3\nR(0,-) -> R(1,-)\n".parse::<PatternPair>().is_err());
        let err = "2v 1\nR(0,-) => R(1,-)\n".parse::<PatternPair>().unwrap_err();
        assert_eq!(err.line, Some(2));
    }

    #[test]
    fn refine_domains_equalizes_lengths() {
        let f = element(&[("0", "-", "-", "0"), ("1", "-", "-", "1")]);
        let g = f.refine_domains_to(2, 2);
        assert_eq!(g.len(), 16);
        assert!(g.pairs().iter().all(|p| p.domain.first.len() == 2 && p.domain.second.len() == 2));
        assert!(g.equals(&f));
        assert_eq!(g.pairs()[0].domain, rect("00", "00"));
    }
}
