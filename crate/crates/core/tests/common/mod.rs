//! Independent reference implementations used as test oracles. Nothing here
//! calls the library's stepping, applying or checking code.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::Rng;
use rtm2v::transducer::Transducer;
use rtm2v::turing::{fixtures, Direction, Instruction};
use rtm2v::{Configuration, DyadicPoint, PatternPair, TuringMachine};

/// A configuration as a moving-head simulator sees it: absolute tape and a
/// head position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sim {
    pub state: usize,
    pub head: i64,
    pub tape: HashMap<i64, usize>,
}

impl Sim {
    pub fn from_config(c: &Configuration) -> Sim {
        Sim {
            state: c.state,
            head: 0,
            tape: c.cells().collect(),
        }
    }

    /// Back to head-relative coordinates, dropping blanks.
    pub fn to_config(&self) -> Configuration {
        Configuration::new(
            self.state,
            self.tape.iter().map(|(&p, &s)| (p - self.head, s)).filter(|&(_, s)| s != 0),
        )
    }

    fn under_head(&self) -> usize {
        self.tape.get(&self.head).copied().unwrap_or(0)
    }
}

/// Every instruction of `table` that applies to `c`, each with its result.
pub fn successors(table: &[Instruction], c: &Sim) -> Vec<Sim> {
    let mut out = Vec::new();
    for ins in table {
        match *ins {
            Instruction::Move { from, dir, to } if from == c.state => {
                let mut next = c.clone();
                next.state = to;
                next.head += match dir {
                    Direction::Left => -1,
                    Direction::Right => 1,
                };
                out.push(next);
            }
            Instruction::Write { from, read, to, write } if from == c.state && read == c.under_head() => {
                let mut next = c.clone();
                next.state = to;
                next.tape.insert(c.head, write);
                out.push(next);
            }
            _ => {}
        }
    }
    out
}

/// The oracle's single step; `None` when halted, panics when ambiguous.
pub fn oracle_step(m: &TuringMachine, c: &Configuration) -> Option<Configuration> {
    let next = successors(m.table(), &Sim::from_config(c));
    assert!(next.len() <= 1, "oracle_step on a nondeterministic configuration");
    next.first().map(Sim::to_config)
}

/// All configurations whose tape is supported in `[lo, hi]`.
pub fn window_configs(m: &TuringMachine, lo: i64, hi: i64) -> Vec<Configuration> {
    let width = (hi - lo + 1) as u32;
    let n = m.num_symbols();
    let mut out = Vec::new();
    for s in 0..m.num_states() {
        for code in 0..n.pow(width) {
            let mut v = code;
            let mut cells = Vec::new();
            for pos in lo..=hi {
                cells.push((pos, v % n));
                v /= n;
            }
            out.push(Configuration::new(s, cells));
        }
    }
    out
}

#[derive(Debug, PartialEq, Eq)]
pub struct WindowVerdicts {
    pub deterministic: bool,
    pub reversible: bool,
    pub complete: bool,
    pub halting_pairs: Vec<(usize, usize)>,
}

/// Applicability and preimage counts over every `(state, width-3 window)`.
pub fn window_verdicts(m: &TuringMachine) -> WindowVerdicts {
    let configs = window_configs(m, -1, 1);
    let mut deterministic = true;
    let mut complete = true;
    let mut halting = Vec::new();
    let mut preimages: HashMap<Configuration, usize> = HashMap::new();
    for c in &configs {
        let next = successors(m.table(), &Sim::from_config(c));
        match next.len() {
            0 => {
                complete = false;
                halting.push((c.state, c.read(0)));
            }
            1 => {}
            _ => deterministic = false,
        }
        let distinct: HashSet<Configuration> = next.iter().map(Sim::to_config).collect();
        for r in distinct {
            *preimages.entry(r).or_default() += 1;
        }
    }
    halting.sort();
    halting.dedup();
    let injective = preimages.values().all(|&k| k <= 1);
    WindowVerdicts {
        deterministic,
        reversible: deterministic && injective,
        complete,
        halting_pairs: halting,
    }
}

/// Bit `i` of `w·000…`.
fn padded(w: &[u8], i: usize) -> u8 {
    w.get(i).copied().unwrap_or(0)
}

fn word_bits(s: &rtm2v::Word) -> Vec<u8> {
    s.bits().to_vec()
}

/// Applies `f` by scanning for the domain whose prefixes match and swapping them.
pub fn oracle_apply(f: &PatternPair, p: &DyadicPoint) -> DyadicPoint {
    let (x, y) = (word_bits(p.first()), word_bits(p.second()));
    for pair in f.pairs() {
        let (a, b) = (word_bits(&pair.domain.first), word_bits(&pair.domain.second));
        let matches = (0..a.len()).all(|i| padded(&x, i) == a[i]) && (0..b.len()).all(|i| padded(&y, i) == b[i]);
        if matches {
            let tail = |v: &[u8], n: usize| -> Vec<u8> { v.iter().skip(n).copied().collect() };
            let mut nx = word_bits(&pair.range.first);
            nx.extend(tail(&x, a.len()));
            let mut ny = word_bits(&pair.range.second);
            ny.extend(tail(&y, b.len()));
            return DyadicPoint::new(rtm2v::Word::from_bits(nx), rtm2v::Word::from_bits(ny));
        }
    }
    panic!("point {p} not covered");
}

/// Runs a transducer by reading its transition table directly.
pub fn oracle_run(t: &Transducer, input: &[usize]) -> Vec<usize> {
    let mut state = t.initial();
    let mut out = Vec::new();
    for &a in input {
        let (next, w) = t.transition(state, a);
        out.extend_from_slice(w);
        state = *next;
    }
    out
}

/// Degenerate iff some reachable state starts an empty-output walk of length `depth`.
pub fn oracle_degenerate(t: &Transducer, depth: usize) -> bool {
    let n = t.num_states();
    let arity = t.alphabet().len();
    let mut reach = vec![false; n];
    reach[t.initial()] = true;
    for _ in 0..n {
        for s in 0..n {
            if reach[s] {
                for a in 0..arity {
                    reach[t.transition(s, a).0] = true;
                }
            }
        }
    }
    let mut walk = vec![true; n];
    for _ in 0..depth {
        walk = (0..n)
            .map(|s| (0..arity).any(|a| {
                let (to, out) = t.transition(s, a);
                out.is_empty() && walk[*to]
            }))
            .collect();
    }
    (0..n).any(|s| reach[s] && walk[s])
}

/// A random transducer; roughly `empty_percent`% of transitions emit nothing.
pub fn random_transducer<R: Rng>(rng: &mut R, arity: usize, states: usize, empty_percent: u32) -> Transducer {
    let alphabet: Vec<String> = (0..arity).map(|a| a.to_string()).collect();
    let names = (0..states).map(|s| format!("q{s}")).collect();
    let delta = (0..states)
        .map(|_| {
            (0..arity)
                .map(|_| {
                    let to = rng.gen_range(0..states);
                    let len = if rng.gen_range(0..100) < empty_percent { 0 } else { rng.gen_range(1..=3) };
                    (to, (0..len).map(|_| rng.gen_range(0..arity)).collect())
                })
                .collect()
        })
        .collect();
    Transducer::new(alphabet, names, 0, delta).unwrap()
}

/// A random configuration with support inside `[-radius, radius]`.
pub fn random_config<R: Rng>(rng: &mut R, m: &TuringMachine, radius: i64) -> Configuration {
    let mut cells = BTreeMap::new();
    for p in -radius..=radius {
        if rng.gen_bool(0.6) {
            cells.insert(p, rng.gen_range(0..m.num_symbols()));
        }
    }
    Configuration::new(rng.gen_range(0..m.num_states()), cells)
}

/// Fixture machines, most of them from files, plus seeded random ones.
pub fn machine_pool<R: Rng>(rng: &mut R, random: usize) -> Vec<(String, TuringMachine)> {
    let mut pool: Vec<(String, TuringMachine)> = [
        ("four_state", include_str!("../../fixtures/four_state.tm")),
        ("halting", include_str!("../../fixtures/halting.tm")),
        ("toggle", include_str!("../../fixtures/toggle.tm")),
        ("shift", include_str!("../../fixtures/shift.tm")),
        ("merge", include_str!("../../fixtures/merge.tm")),
        ("nondeterministic", include_str!("../../fixtures/nondeterministic.tm")),
    ]
    .into_iter()
    .map(|(n, s)| (n.to_string(), s.parse().unwrap()))
    .collect();
    pool.push(("inverse four_state".into(), invert_machine(&fixtures::four_state())));
    for i in 0..random {
        let states = rng.gen_range(1..=4);
        let symbols = rng.gen_range(2..=3);
        pool.push((format!("random {i}"), rtm2v::gen::random_machine(rng, states, symbols)));
    }
    pool
}

/// The machine running `m` backwards: moves are reversed and writes swapped.
pub fn invert_machine(m: &TuringMachine) -> TuringMachine {
    let table = m
        .table()
        .iter()
        .map(|ins| match *ins {
            Instruction::Move { from, dir, to } => Instruction::Move {
                from: to,
                dir: match dir {
                    Direction::Left => Direction::Right,
                    Direction::Right => Direction::Left,
                },
                to: from,
            },
            Instruction::Write { from, read, to, write } => Instruction::Write {
                from: to,
                read: write,
                to: from,
                write: read,
            },
        })
        .collect();
    TuringMachine::new(m.states().to_vec(), m.symbols().to_vec(), table).unwrap()
}
