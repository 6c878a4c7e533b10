//! Forward orbits of dyadic points under elements of 2V.
//!
//! Dyadic points are finitely representable, so revisits are detected exactly.
//! Every query takes an explicit step budget: reachability and convergence
//! are undecidable in general, and the inconclusive outcomes say so.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use crate::cantor::{DyadicPoint, Rect, Word};
use crate::twov::{PatternPair, RectPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `points[entry + period] == points[entry]`.
    CycleDetected { entry: usize, period: usize },
    BudgetExhausted,
    RectangleHit(usize),
    ConvergedWitness(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::CycleDetected { entry, period } => {
                write!(f, "cycle detected (entry {entry}, period {period})")
            }
            Verdict::BudgetExhausted => f.write_str("budget exhausted"),
            Verdict::RectangleHit(k) => write!(f, "hit at step {k}"),
            Verdict::ConvergedWitness(k) => write!(f, "converged witness at step {k}"),
        }
    }
}

/// `points[0]` is the start and `points[i + 1] = f(points[i])`. When a cycle
/// is detected the repeated point is included as the last entry.
#[derive(Clone, Debug)]
pub struct OrbitTrace<'a> {
    pub element: &'a PatternPair,
    pub start: DyadicPoint,
    pub points: Vec<DyadicPoint>,
    pub verdict: Verdict,
}

impl OrbitTrace<'_> {
    /// Replays `apply` along the trace and checks the verdict's claims.
    pub fn check(&self) -> bool {
        if self.points.first() != Some(&self.start) {
            return false;
        }
        let steps_ok = self
            .points
            .windows(2)
            .all(|w| self.element.apply(&w[0]).ok().as_ref() == Some(&w[1]));
        let verdict_ok = match self.verdict {
            Verdict::CycleDetected { entry, period } => {
                period > 0 && self.points.get(entry + period) == self.points.get(entry) && entry + period < self.points.len()
            }
            _ => true,
        };
        steps_ok && verdict_ok
    }

    /// One line `k: (first, second) [pair]` per point, then the verdict.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for (k, p) in self.points.iter().enumerate() {
            let rect = match self.element.locate(p) {
                Some(i) => i.to_string(),
                None => "-".to_string(),
            };
            let _ = writeln!(out, "{k}: {p} [{rect}]");
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }
}

enum Walk {
    Stopped(usize),
    Cycle { entry: usize, period: usize },
    Exhausted,
}

/// Iterates `f` from `p` for at most `budget` steps, calling `stop` on every
/// point (the start included) before looking for revisits.
fn walk(
    f: &PatternPair,
    p: &DyadicPoint,
    budget: usize,
    mut stop: impl FnMut(usize, &DyadicPoint) -> bool,
) -> (Vec<DyadicPoint>, Walk) {
    let mut points = vec![p.clone()];
    let mut seen: HashMap<DyadicPoint, usize> = HashMap::new();
    seen.insert(p.clone(), 0);
    if stop(0, p) {
        return (points, Walk::Stopped(0));
    }
    for k in 0..budget {
        let next = f.apply(&points[k]).expect("orbit of a valid element");
        if let Some(&entry) = seen.get(&next) {
            points.push(next);
            return (points, Walk::Cycle { entry, period: k + 1 - entry });
        }
        if stop(k + 1, &next) {
            points.push(next);
            return (points, Walk::Stopped(k + 1));
        }
        seen.insert(next.clone(), k + 1);
        points.push(next);
    }
    (points, Walk::Exhausted)
}

fn trace<'a>(f: &'a PatternPair, p: &DyadicPoint, points: Vec<DyadicPoint>, verdict: Verdict) -> OrbitTrace<'a> {
    OrbitTrace {
        element: f,
        start: p.clone(),
        points,
        verdict,
    }
}

/// The orbit of `p` for up to `budget` steps, stopping at the first revisit.
pub fn iterate<'a>(f: &'a PatternPair, p: &DyadicPoint, budget: usize) -> OrbitTrace<'a> {
    let (points, walk) = walk(f, p, budget, |_, _| false);
    let verdict = match walk {
        Walk::Cycle { entry, period } => Verdict::CycleDetected { entry, period },
        _ => Verdict::BudgetExhausted,
    };
    trace(f, p, points, verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HitVerdict {
    HitAt(usize),
    /// Inconclusive: the orbit may still reach the rectangle later.
    NoHitWithinBudget,
    /// The orbit closed into a cycle that never meets the rectangle.
    CycleWithoutHit,
}

impl fmt::Display for HitVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HitVerdict::HitAt(k) => write!(f, "hit at step {k}"),
            HitVerdict::NoHitWithinBudget => {
                f.write_str("no hit within budget (inconclusive: reachability is undecidable in general)")
            }
            HitVerdict::CycleWithoutHit => f.write_str("cycle without hit"),
        }
    }
}

/// The orbit up to its first point in `r`.
pub fn hit_trace<'a>(f: &'a PatternPair, p: &DyadicPoint, r: &Rect, budget: usize) -> (OrbitTrace<'a>, HitVerdict) {
    let (points, walk) = walk(f, p, budget, |_, x| r.contains_point(x));
    let (verdict, hit) = match walk {
        Walk::Stopped(k) => (Verdict::RectangleHit(k), HitVerdict::HitAt(k)),
        Walk::Cycle { entry, period } => (Verdict::CycleDetected { entry, period }, HitVerdict::CycleWithoutHit),
        Walk::Exhausted => (Verdict::BudgetExhausted, HitVerdict::NoHitWithinBudget),
    };
    (trace(f, p, points, verdict), hit)
}

/// Least `k ≤ budget` with `fᵏ(p) ∈ r`.
pub fn hits_rectangle(f: &PatternPair, p: &DyadicPoint, r: &Rect, budget: usize) -> HitVerdict {
    hit_trace(f, p, r, budget).1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convergence {
    ConvergedWitness(usize),
    /// The orbit closed into a cycle not reduced to the fixed point `q`.
    DivergenceWitness { entry: usize, period: usize },
    /// Convergence is undecidable in general; the budget ran out.
    Inconclusive,
}

impl fmt::Display for Convergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Convergence::ConvergedWitness(k) => write!(f, "converged witness at step {k}"),
            Convergence::DivergenceWitness { entry, period } => {
                write!(f, "divergence witness: cycle (entry {entry}, period {period})")
            }
            Convergence::Inconclusive => {
                f.write_str("inconclusive within budget (convergence is undecidable in general)")
            }
        }
    }
}

/// Whether `pair` maps its domain `R(a, b)` onto `R(a·0ⁱ, b·0ʲ)` with
/// `i, j ≥ 1`. Iterating it then drives every point of the domain to `(a, b)`.
pub fn is_contracting_trap(pair: &RectPair) -> bool {
    let (d, r) = (&pair.domain, &pair.range);
    let grows = |a: &Word, b: &Word| a.len() < b.len() && a.is_prefix_of(b) && b.suffix_from(a.len()).is_zero_run();
    grows(&d.first, &r.first) && grows(&d.second, &r.second)
}

/// The limit point of a contracting trap.
pub fn trap_limit(pair: &RectPair) -> DyadicPoint {
    DyadicPoint::new(pair.domain.first.clone(), pair.domain.second.clone())
}

/// Indices of the pairs of `f` that are contracting traps with limit `q`.
pub fn traps_for(f: &PatternPair, q: &DyadicPoint) -> Vec<usize> {
    f.pairs()
        .iter()
        .enumerate()
        .filter(|(_, pair)| is_contracting_trap(pair) && &trap_limit(pair) == q)
        .map(|(i, _)| i)
        .collect()
}

/// The orbit up to the first witness of convergence to `q`: entry into a
/// contracting trap whose limit is `q`, or arrival at `q` when `f(q) = q`.
pub fn convergence_trace<'a>(
    f: &'a PatternPair,
    p: &DyadicPoint,
    q: &DyadicPoint,
    budget: usize,
) -> (OrbitTrace<'a>, Convergence) {
    let traps: Vec<&Rect> = traps_for(f, q).into_iter().map(|i| &f.pairs()[i].domain).collect();
    let q_fixed = f.apply(q).ok().as_ref() == Some(q);
    let (points, walk) = walk(f, p, budget, |_, x| {
        (q_fixed && x == q) || traps.iter().any(|d| d.contains_point(x))
    });
    let (verdict, conv) = match walk {
        Walk::Stopped(k) => (Verdict::ConvergedWitness(k), Convergence::ConvergedWitness(k)),
        Walk::Cycle { entry, period } => (
            Verdict::CycleDetected { entry, period },
            Convergence::DivergenceWitness { entry, period },
        ),
        Walk::Exhausted => (Verdict::BudgetExhausted, Convergence::Inconclusive),
    };
    (trace(f, p, points, verdict), conv)
}

pub fn converges_to(f: &PatternPair, p: &DyadicPoint, q: &DyadicPoint, budget: usize) -> Convergence {
    convergence_trace(f, p, q, budget).1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasinClass {
    InBasin(usize),
    NotInBasin,
    Unknown,
}

impl fmt::Display for BasinClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasinClass::InBasin(k) => write!(f, "in basin (step {k})"),
            BasinClass::NotInBasin => f.write_str("not in basin"),
            BasinClass::Unknown => f.write_str("unknown"),
        }
    }
}

impl From<Convergence> for BasinClass {
    fn from(c: Convergence) -> Self {
        match c {
            Convergence::ConvergedWitness(k) => BasinClass::InBasin(k),
            Convergence::DivergenceWitness { .. } => BasinClass::NotInBasin,
            Convergence::Inconclusive => BasinClass::Unknown,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BasinCounts {
    pub in_basin: usize,
    pub not_in_basin: usize,
    pub unknown: usize,
}

impl BasinCounts {
    pub fn tally(classes: &[BasinClass]) -> Self {
        let mut c = BasinCounts::default();
        for class in classes {
            match class {
                BasinClass::InBasin(_) => c.in_basin += 1,
                BasinClass::NotInBasin => c.not_in_basin += 1,
                BasinClass::Unknown => c.unknown += 1,
            }
        }
        c
    }
}

impl fmt::Display for BasinCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "in basin {}, not in basin {}, unknown {}",
            self.in_basin, self.not_in_basin, self.unknown
        )
    }
}

/// Classifies each sample by [`converges_to`], in sample order.
pub fn basin_sample(f: &PatternPair, q: &DyadicPoint, samples: &[DyadicPoint], budget: usize) -> Vec<BasinClass> {
    samples.iter().map(|p| converges_to(f, p, q, budget).into()).collect()
}

/// [`basin_sample`] split over `jobs` threads; the result does not depend on `jobs`.
pub fn basin_sample_parallel(
    f: &PatternPair,
    q: &DyadicPoint,
    samples: &[DyadicPoint],
    budget: usize,
    jobs: usize,
) -> Vec<BasinClass> {
    let jobs = jobs.max(1);
    if jobs == 1 || samples.len() < 2 {
        return basin_sample(f, q, samples, budget);
    }
    let chunk = samples.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = samples
            .chunks(chunk)
            .map(|part| scope.spawn(move || basin_sample(f, q, part, budget)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("basin worker panicked"))
            .collect()
    })
}

/// Every dyadic point whose coordinates have at most `max_len` bits, each once.
pub fn points_up_to(max_len: usize) -> Vec<DyadicPoint> {
    let words: Vec<Word> = (0..=max_len)
        .flat_map(|len| {
            (0..1usize << len).map(move |v| Word::from_bits((0..len).rev().map(move |i| ((v >> i) & 1) as u8)))
        })
        // Canonical words end in 1 (or are empty); the others repeat a shorter point.
        .filter(|w| w.bits().last() != Some(&0))
        .collect();
    words
        .iter()
        .flat_map(|a| words.iter().map(move |b| DyadicPoint::new(a.clone(), b.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::{pt, rect};
    use crate::turing::{compile, default_scheme, eta_region, fixtures, CodeStyle, Configuration, Mode};
    use crate::twov::halfswap;

    fn halting_element() -> PatternPair {
        let m = fixtures::halting_two_state();
        let scheme = default_scheme(&m, Mode::Halting, CodeStyle::ExampleStyle).unwrap();
        compile(&m, &scheme).unwrap()
    }

    fn halting_start(cells: &[(i64, usize)]) -> DyadicPoint {
        let m = fixtures::halting_two_state();
        let scheme = default_scheme(&m, Mode::Halting, CodeStyle::ExampleStyle).unwrap();
        scheme.encode_config(&Configuration::new(0, cells.iter().copied()))
    }

    #[test]
    fn iterate_examples() {
        let id = PatternPair::identity();
        let t = iterate(&id, &pt("01", "1"), 10);
        assert_eq!(t.verdict, Verdict::CycleDetected { entry: 0, period: 1 });
        assert!(t.check());

        let h = halfswap();
        let t = iterate(&h, &pt("0", ""), 10);
        assert_eq!(t.verdict, Verdict::CycleDetected { entry: 0, period: 2 });
        assert_eq!(t.points.len(), 3);
        assert!(t.check());

        let t = iterate(&h, &pt("0", ""), 0);
        assert_eq!(t.points.len(), 1);
        assert_eq!(t.verdict, Verdict::BudgetExhausted);
    }

    #[test]
    fn hit_examples() {
        let f = halting_element();
        assert_eq!(halting_start(&[(1, 1)]), pt("0", "101"));
        assert_eq!(hits_rectangle(&f, &halting_start(&[(1, 1)]), &eta_region(), 100), HitVerdict::HitAt(2));
        assert_eq!(hits_rectangle(&f, &halting_start(&[]), &eta_region(), 100), HitVerdict::NoHitWithinBudget);
        let t = iterate(&f, &halting_start(&[]), 100);
        assert_eq!(t.verdict, Verdict::BudgetExhausted);
        assert_eq!(t.points.len(), 101);
        let id = PatternPair::identity();
        assert_eq!(hits_rectangle(&id, &pt("0", "0"), &rect("1", "-"), 5), HitVerdict::CycleWithoutHit);
        assert_eq!(hits_rectangle(&id, &pt("1", "0"), &rect("1", "-"), 0), HitVerdict::HitAt(0));
    }

    #[test]
    fn convergence_examples() {
        let f = halting_element();
        let q = pt("1", "");
        assert_eq!(converges_to(&f, &halting_start(&[(1, 1)]), &q, 100), Convergence::ConvergedWitness(2));
        assert_eq!(converges_to(&f, &halting_start(&[]), &q, 100), Convergence::Inconclusive);
        assert!(matches!(
            converges_to(&halfswap(), &pt("0", ""), &q, 10),
            Convergence::DivergenceWitness { period: 2, .. }
        ));
        let id = PatternPair::identity();
        assert_eq!(converges_to(&id, &pt("01", "1"), &pt("01", "1"), 0), Convergence::ConvergedWitness(0));
        assert!(matches!(converges_to(&id, &pt("0", "1"), &q, 3), Convergence::DivergenceWitness { .. }));
    }

    #[test]
    fn basin_examples() {
        let f = halting_element();
        let q = pt("1", "");
        let samples: Vec<DyadicPoint> = points_up_to(4).into_iter().filter(|p| eta_region().contains_point(p)).collect();
        assert!(!samples.is_empty());
        let classes = basin_sample(&f, &q, &samples, 200);
        assert!(classes.iter().all(|c| matches!(c, BasinClass::InBasin(_))));
        assert_eq!(basin_sample_parallel(&f, &q, &samples, 200, 3), classes);

        let id = PatternPair::identity();
        let classes = basin_sample(&id, &q, &[pt("0", ""), pt("11", "1")], 5);
        assert_eq!(classes, vec![BasinClass::NotInBasin; 2]);
        assert_eq!(basin_sample(&f, &q, &[halting_start(&[])], 300), vec![BasinClass::Unknown]);
    }

    #[test]
    fn points_enumeration() {
        // 1 + 1 + 2 + 4 canonical words of length ≤ 3.
        assert_eq!(points_up_to(3).len(), 8 * 8);
        assert_eq!(points_up_to(0), vec![DyadicPoint::origin()]);
    }

    #[test]
    fn export_format() {
        let h = halfswap();
        let text = iterate(&h, &pt("0", ""), 5).export();
        assert_eq!(text, "0: (-, -) [0]\n1: (1, -) [1]\n2: (-, -) [0]\nverdict: cycle detected (entry 0, period 2)\n");
    }
}
