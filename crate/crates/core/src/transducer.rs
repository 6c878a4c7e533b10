//! Asynchronous transducers: finite-state machines emitting a finite, possibly
//! empty, word for every input symbol.
//!
//! Besides streaming evaluation this module builds the transducers that realize
//! elements of 2V over the 4-letter alphabet `{00, 01, 10, 11}`: splicing along
//! a prefix code, shift registers that prepend fixed words to each coordinate,
//! and the compiler [`from_element`] that combines the two.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::cantor::{check_prefix_code, interleave, CodeError, DyadicPoint, Quad, QuadWord, Word};
use crate::error::ParseError;
use crate::twov::PatternPair;

/// `(next state, output word)` for one `(state, symbol)` pair. Symbols are
/// indices into the alphabet.
pub type Step = (usize, Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: usize,
    /// `delta[state][symbol]`, total.
    delta: Vec<Vec<Step>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransducerError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("no states")]
    NoStates,
    #[error("initial state {0} is not a state")]
    BadInitial(usize),
    #[error("transition missing for state {state:?} and symbol {symbol:?}")]
    Missing { state: String, symbol: String },
    #[error("transition for state {0:?} refers outside the machine")]
    OutOfRange(String),
    #[error("input symbol at position {0} is not in the alphabet")]
    UnknownSymbol(usize),
    #[error("transducers have different alphabets")]
    AlphabetMismatch,
    #[error("splice needs one part per code word ({words} words, {parts} parts)")]
    PartCount { words: usize, parts: usize },
    #[error("splice code: {0}")]
    Code(CodeError),
}

/// The names `00 01 10 11`, in [`Quad::index`] order.
pub fn quad_alphabet() -> Vec<String> {
    Quad::ALL.iter().map(|q| q.to_string()).collect()
}

pub fn quads_to_symbols(q: &[Quad]) -> Vec<usize> {
    q.iter().map(|s| s.index()).collect()
}

pub fn symbols_to_quads(s: &[usize]) -> QuadWord {
    s.iter().map(|&i| Quad::from_index(i)).collect()
}

impl Transducer {
    pub fn new(
        alphabet: Vec<String>,
        states: Vec<String>,
        initial: usize,
        delta: Vec<Vec<Step>>,
    ) -> Result<Self, TransducerError> {
        if alphabet.is_empty() {
            return Err(TransducerError::EmptyAlphabet);
        }
        if states.is_empty() {
            return Err(TransducerError::NoStates);
        }
        if initial >= states.len() {
            return Err(TransducerError::BadInitial(initial));
        }
        if delta.len() != states.len() {
            return Err(TransducerError::Missing {
                state: states.get(delta.len()).cloned().unwrap_or_default(),
                symbol: alphabet[0].clone(),
            });
        }
        for (s, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(TransducerError::Missing {
                    state: states[s].clone(),
                    symbol: alphabet[row.len().min(alphabet.len() - 1)].clone(),
                });
            }
            for (to, out) in row {
                if *to >= states.len() || out.iter().any(|&a| a >= alphabet.len()) {
                    return Err(TransducerError::OutOfRange(states[s].clone()));
                }
            }
        }
        Ok(Transducer {
            alphabet,
            states,
            initial,
            delta,
        })
    }

    /// One state copying every symbol.
    pub fn echo(alphabet: Vec<String>) -> Self {
        let row = (0..alphabet.len()).map(|a| (0, vec![a])).collect();
        Transducer {
            alphabet,
            states: vec!["q0".to_string()],
            initial: 0,
            delta: vec![row],
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn transition(&self, state: usize, symbol: usize) -> &Step {
        &self.delta[state][symbol]
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == name)
    }

    /// Runs from the initial state.
    pub fn run(&self, input: &[usize]) -> Result<(Vec<usize>, usize), TransducerError> {
        self.run_from(self.initial, input)
    }

    pub fn run_from(&self, state: usize, input: &[usize]) -> Result<(Vec<usize>, usize), TransducerError> {
        let mut run = RunState::at(state);
        let mut out = Vec::new();
        for (i, &a) in input.iter().enumerate() {
            if a >= self.alphabet.len() {
                return Err(TransducerError::UnknownSymbol(i));
            }
            out.extend_from_slice(run.feed(self, a));
        }
        Ok((out, run.current))
    }

    /// Runs on symbol names, e.g. `["00", "01"]`.
    pub fn run_names(&self, input: &[&str]) -> Result<(Vec<String>, String), TransducerError> {
        let symbols = input
            .iter()
            .enumerate()
            .map(|(i, n)| self.symbol_index(n).ok_or(TransducerError::UnknownSymbol(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let (out, end) = self.run(&symbols)?;
        Ok((
            out.into_iter().map(|a| self.alphabet[a].clone()).collect(),
            self.states[end].clone(),
        ))
    }

    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            i += 1;
            for &(t, _) in &self.delta[s] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// Drops unreachable states, keeping breadth-first discovery order.
    /// With `rename`, states become `q0, q1, …` in that order.
    pub fn pruned(&self, rename: bool) -> Transducer {
        let order = self.reachable();
        let mut index = vec![usize::MAX; self.num_states()];
        for (new, &old) in order.iter().enumerate() {
            index[old] = new;
        }
        let states = order
            .iter()
            .enumerate()
            .map(|(new, &old)| {
                if rename {
                    format!("q{new}")
                } else {
                    self.states[old].clone()
                }
            })
            .collect();
        let delta = order
            .iter()
            .map(|&old| {
                self.delta[old]
                    .iter()
                    .map(|(t, out)| (index[*t], out.clone()))
                    .collect()
            })
            .collect();
        Transducer {
            alphabet: self.alphabet.clone(),
            states,
            initial: 0,
            delta,
        }
    }

    /// `Ok` iff every infinite input produces infinite output. Otherwise a cycle
    /// of empty-output transitions through reachable states, as
    /// `(state, symbol)` edges.
    pub fn check_nondegenerate(&self) -> Result<(), DegenerateCycle> {
        let mut reachable = vec![false; self.num_states()];
        for s in self.reachable() {
            reachable[s] = true;
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = vec![0u8; self.num_states()];
        for root in 0..self.num_states() {
            if !reachable[root] || color[root] != 0 {
                continue;
            }
            let mut path: Vec<(usize, usize)> = Vec::new();
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            color[root] = 1;
            while let Some(&mut (s, ref mut next)) = stack.last_mut() {
                if *next == self.alphabet.len() {
                    color[s] = 2;
                    stack.pop();
                    path.pop();
                    continue;
                }
                let a = *next;
                *next += 1;
                let (t, out) = &self.delta[s][a];
                if !out.is_empty() {
                    continue;
                }
                match color[*t] {
                    0 => {
                        color[*t] = 1;
                        path.push((s, a));
                        stack.push((*t, 0));
                    }
                    1 => {
                        path.push((s, a));
                        let start = path.iter().position(|&(q, _)| q == *t).unwrap_or(0);
                        return Err(DegenerateCycle {
                            edges: path[start..]
                                .iter()
                                .map(|&(q, b)| (self.states[q].clone(), self.alphabet[b].clone()))
                                .collect(),
                        });
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Checks every input of length up to `depth` for a position where the
    /// output disagrees with the input. Output lagging behind the input is
    /// allowed. A clean result is evidence, not a proof.
    pub fn bounded_identity_check(&self, depth: usize) -> IdentityCheck {
        let mut frontier: Vec<(Vec<usize>, usize, Vec<usize>)> = vec![(Vec::new(), self.initial, Vec::new())];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(frontier.len() * self.alphabet.len());
            for (input, state, output) in &frontier {
                for a in 0..self.alphabet.len() {
                    let (t, out) = &self.delta[*state][a];
                    let mut inp = input.clone();
                    inp.push(a);
                    let mut outp = output.clone();
                    outp.extend_from_slice(out);
                    let n = inp.len().min(outp.len());
                    if inp[..n] != outp[..n] {
                        return IdentityCheck::Counterexample {
                            input: inp,
                            output: outp,
                        };
                    }
                    next.push((inp, *t, outp));
                }
            }
            frontier = next;
        }
        IdentityCheck::ConsistentWithIdentity { depth }
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            "-".to_string()
        } else {
            word.iter()
                .map(|&a| self.alphabet[a].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Graphviz rendering; the initial state is double-circled.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph transducer {\n  rankdir=LR;\n");
        for (i, name) in self.states.iter().enumerate() {
            let shape = if i == self.initial { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  \"{name}\" [shape={shape}];");
        }
        for (i, row) in self.delta.iter().enumerate() {
            for (a, (t, out)) in row.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  \"{}\" -> \"{}\" [label=\"{} | {}\"];",
                    self.states[i],
                    self.states[*t],
                    self.alphabet[a],
                    self.format_word(out)
                );
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Where a run currently is and how much it has emitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunState {
    pub current: usize,
    pub emitted: usize,
}

impl RunState {
    pub fn at(state: usize) -> Self {
        RunState {
            current: state,
            emitted: 0,
        }
    }

    /// Consumes one symbol, returning the word emitted for it.
    pub fn feed<'t>(&mut self, t: &'t Transducer, symbol: usize) -> &'t [usize] {
        let (next, out) = &t.delta[self.current][symbol];
        self.current = *next;
        self.emitted += out.len();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateCycle {
    pub edges: Vec<(String, String)>,
}

impl fmt::Display for DegenerateCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|(s, a)| format!("{s} --{a}-->"))
            .collect();
        let back = self.edges.first().map(|(s, _)| s.as_str()).unwrap_or("");
        write!(f, "cycle: {} {back}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityCheck {
    /// No divergence among inputs of length up to `depth`. Not a proof.
    ConsistentWithIdentity { depth: usize },
    Counterexample { input: Vec<usize>, output: Vec<usize> },
}

/// Splices `parts` along a complete prefix code: on input `code[i]·w` the
/// result behaves as `parts[i]` on `w`.
pub fn splice(code: &[Vec<usize>], parts: &[Transducer]) -> Result<Transducer, TransducerError> {
    if code.len() != parts.len() {
        return Err(TransducerError::PartCount {
            words: code.len(),
            parts: parts.len(),
        });
    }
    let entries: Vec<(usize, usize)> = parts.iter().enumerate().map(|(i, p)| (i, p.initial)).collect();
    splice_entries(code, parts, &entries)
}

/// The general splice: code word `i` hands off to state `entries[i].1` of
/// `banks[entries[i].0]`. Banks may be shared between code words.
pub fn splice_entries(
    code: &[Vec<usize>],
    banks: &[Transducer],
    entries: &[(usize, usize)],
) -> Result<Transducer, TransducerError> {
    let alphabet = banks.first().ok_or(TransducerError::PartCount { words: code.len(), parts: 0 })?.alphabet.clone();
    if banks.iter().any(|b| b.alphabet != alphabet) {
        return Err(TransducerError::AlphabetMismatch);
    }
    assert_eq!(code.len(), entries.len(), "one entry per code word");
    let narrow: Vec<Vec<u8>> = code
        .iter()
        .map(|w| w.iter().map(|&a| a.min(u8::MAX as usize) as u8).collect())
        .collect();
    check_prefix_code(narrow.iter().map(|w| w.as_slice()), alphabet.len()).map_err(TransducerError::Code)?;

    let prefixes: BTreeSet<&[usize]> = code
        .iter()
        .flat_map(|w| (0..w.len()).map(move |k| &w[..k]))
        .collect();
    let node_index: HashMap<&[usize], usize> = prefixes.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let word_index: HashMap<&[usize], usize> = code.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();

    let mut offsets = Vec::with_capacity(banks.len());
    let mut total = prefixes.len();
    for b in banks {
        offsets.push(total);
        total += b.num_states();
    }

    let mut states: Vec<String> = prefixes
        .iter()
        .map(|p| format!("p{}", p.iter().map(|a| alphabet[*a].as_str()).collect::<String>()))
        .collect();
    let mut delta: Vec<Vec<Step>> = Vec::with_capacity(total);
    for p in &prefixes {
        let row = (0..alphabet.len())
            .map(|a| {
                let mut ext = p.to_vec();
                ext.push(a);
                if let Some(&n) = node_index.get(ext.as_slice()) {
                    (n, Vec::new())
                } else {
                    let j = word_index[ext.as_slice()];
                    let (bank, state) = entries[j];
                    (offsets[bank] + state, Vec::new())
                }
            })
            .collect();
        delta.push(row);
    }
    for (b, bank) in banks.iter().enumerate() {
        for (s, row) in bank.delta.iter().enumerate() {
            states.push(format!("b{b}.{}", bank.states[s]));
            delta.push(row.iter().map(|(t, out)| (offsets[b] + t, out.clone())).collect());
        }
    }
    // A code consisting of the empty word has no proper prefixes.
    let initial = if prefixes.is_empty() {
        let (bank, state) = entries[0];
        offsets[bank] + state
    } else {
        node_index[&[][..]]
    };
    Ok(Transducer {
        alphabet,
        states,
        initial,
        delta,
    }
    .pruned(true))
}

/// All register states of width `(m, n)` over the 4-letter alphabet: on input
/// `(d, e)` the registers shift left, taking in `d` and `e` and emitting the
/// evicted bits. State index is `x << n | y`.
fn register_bank(m: usize, n: usize) -> Transducer {
    let count = 1usize << (m + n);
    let shift = |reg: usize, width: usize, bit: usize| -> (usize, usize) {
        if width == 0 {
            (0, bit)
        } else {
            let out = (reg >> (width - 1)) & 1;
            (((reg << 1) | bit) & ((1 << width) - 1), out)
        }
    };
    let bits = |v: usize, width: usize| -> String {
        if width == 0 {
            "-".to_string()
        } else {
            (0..width).rev().map(|i| if (v >> i) & 1 == 1 { '1' } else { '0' }).collect()
        }
    };
    let mut states = Vec::with_capacity(count);
    let mut delta = Vec::with_capacity(count);
    for id in 0..count {
        let (x, y) = (id >> n, id & ((1 << n) - 1));
        states.push(format!("{}|{}", bits(x, m), bits(y, n)));
        let row = Quad::ALL
            .iter()
            .map(|q| {
                let (nx, ob) = shift(x, m, q.first as usize);
                let (ny, oe) = shift(y, n, q.second as usize);
                ((nx << n) | ny, vec![Quad::new(ob as u8, oe as u8).index()])
            })
            .collect();
        delta.push(row);
    }
    Transducer {
        alphabet: quad_alphabet(),
        states,
        initial: 0,
        delta,
    }
}

fn register_id(a: &Word, b: &Word) -> usize {
    let val = |w: &Word| w.bits().iter().fold(0usize, |acc, &bit| (acc << 1) | bit as usize);
    (val(a) << b.len()) | val(b)
}

/// Realizes `(ψ, ω) ↦ (αψ, βω)` on interleaved inputs with a pair of shift
/// registers initialized to `(α, β)`.
pub fn shift_transducer(alpha: &Word, beta: &Word) -> Transducer {
    let mut bank = register_bank(alpha.len(), beta.len());
    bank.initial = register_id(alpha, beta);
    bank.pruned(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("depth {depth} is shorter than the point's heads ({needed})")]
pub struct DepthTooSmall {
    pub depth: usize,
    pub needed: usize,
}

/// The first `depth` symbols of the interleaving of `p`'s coordinates.
pub fn pi_encode(p: &DyadicPoint, depth: usize) -> Result<QuadWord, DepthTooSmall> {
    let needed = p.first().len().max(p.second().len());
    if depth < needed {
        return Err(DepthTooSmall { depth, needed });
    }
    Ok(interleave(&p.first().padded_to(depth), &p.second().padded_to(depth)).expect("equal lengths"))
}

pub fn pi_decode(q: &[Quad]) -> (Word, Word) {
    crate::cantor::deinterleave(q)
}

/// The transducer realizing `f` on interleaved sequences, together with the
/// longest domain address `L`: the output lags the input by at most `L` symbols.
pub fn from_element_with_delay(f: &PatternPair) -> (Transducer, usize) {
    let refined = f.square_domains();
    let len = refined.pairs().iter().map(|p| p.domain.first.len()).max().unwrap_or(0);
    let mut shapes: Vec<(usize, usize)> = Vec::new();
    let mut code = Vec::with_capacity(refined.len());
    let mut entries = Vec::with_capacity(refined.len());
    for pair in refined.pairs() {
        let addr = interleave(&pair.domain.first, &pair.domain.second).expect("equalized");
        code.push(quads_to_symbols(&addr));
        let shape = (pair.range.first.len(), pair.range.second.len());
        let bank = shapes.iter().position(|s| *s == shape).unwrap_or_else(|| {
            shapes.push(shape);
            shapes.len() - 1
        });
        entries.push((bank, register_id(&pair.range.first, &pair.range.second)));
    }
    let banks: Vec<Transducer> = shapes.iter().map(|&(m, n)| register_bank(m, n)).collect();
    let t = splice_entries(&code, &banks, &entries).expect("refined domains form a complete code");
    (t, len)
}

/// Composes `f`'s domain address code with shift transducers for its ranges.
/// Pieces whose ranges have equal lengths share one register bank.
pub fn from_element(f: &PatternPair) -> Transducer {
    from_element_with_delay(f).0
}

/// `T1` then `T2`: the output of `T1` is fed to `T2`.
pub fn compose_transducers(t1: &Transducer, t2: &Transducer) -> Result<Transducer, TransducerError> {
    if t1.alphabet != t2.alphabet {
        return Err(TransducerError::AlphabetMismatch);
    }
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let start = (t1.initial, t2.initial);
    index.insert(start, 0);
    queue.push_back(start);
    let mut delta = Vec::new();
    while let Some((s1, s2)) = queue.pop_front() {
        let mut row = Vec::with_capacity(t1.alphabet.len());
        for a in 0..t1.alphabet.len() {
            let (n1, mid) = &t1.delta[s1][a];
            let (out, n2) = t2.run_from(s2, mid).expect("same alphabet");
            let next = (*n1, n2);
            let fresh = index.len();
            let id = *index.entry(next).or_insert_with(|| {
                queue.push_back(next);
                fresh
            });
            row.push((id, out));
        }
        delta.push(row);
    }
    let states = (0..delta.len()).map(|i| format!("q{i}")).collect();
    Ok(Transducer {
        alphabet: t1.alphabet.clone(),
        states,
        initial: 0,
        delta,
    })
}

impl fmt::Display for Transducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet {}", self.alphabet.join(" "))?;
        writeln!(f, "states {}", self.states.join(" "))?;
        writeln!(f, "initial {}", self.states[self.initial])?;
        for (s, row) in self.delta.iter().enumerate() {
            for (a, (t, out)) in row.iter().enumerate() {
                writeln!(
                    f,
                    "{}, {} -> {}, {}",
                    self.states[s],
                    self.alphabet[a],
                    self.states[*t],
                    self.format_word(out)
                )?;
            }
        }
        Ok(())
    }
}

impl FromStr for Transducer {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut alphabet: Option<Vec<String>> = None;
        let mut states: Option<Vec<String>> = None;
        let mut initial: Option<(usize, String)> = None;
        let mut rules = Vec::new();
        for (idx, line) in s.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let words = |rest: &str| rest.split_whitespace().map(str::to_string).collect::<Vec<_>>();
            if let Some(rest) = line.strip_prefix("alphabet ") {
                alphabet = Some(words(rest));
            } else if let Some(rest) = line.strip_prefix("states ") {
                states = Some(words(rest));
            } else if let Some(rest) = line.strip_prefix("initial ") {
                initial = Some((lineno, rest.trim().to_string()));
            } else {
                rules.push((lineno, line));
            }
        }
        let alphabet = alphabet.ok_or_else(|| ParseError::new("missing `alphabet` line"))?;
        let states = states.ok_or_else(|| ParseError::new("missing `states` line"))?;
        let (init_line, init) = initial.ok_or_else(|| ParseError::new("missing `initial` line"))?;
        let state_of = |lineno: usize, name: &str| {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| ParseError::at(lineno, format!("unknown state {name:?}")))
        };
        let symbol_of = |lineno: usize, name: &str| {
            alphabet
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| ParseError::at(lineno, format!("unknown symbol {name:?}")))
        };
        let initial = state_of(init_line, &init)?;
        let mut delta: Vec<Vec<Option<Step>>> = vec![vec![None; alphabet.len()]; states.len()];
        for (lineno, line) in rules {
            let bad = || ParseError::at(lineno, "expected `state, symbol -> state, output`");
            let (lhs, rhs) = line.split_once("->").ok_or_else(bad)?;
            let (s, a) = lhs.split_once(',').ok_or_else(bad)?;
            let (t, out) = rhs.split_once(',').ok_or_else(bad)?;
            let (s, a, t) = (state_of(lineno, s.trim())?, symbol_of(lineno, a.trim())?, state_of(lineno, t.trim())?);
            let out = match out.trim() {
                "-" => Vec::new(),
                o => o
                    .split_whitespace()
                    .map(|x| symbol_of(lineno, x))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            if delta[s][a].replace((t, out)).is_some() {
                return Err(ParseError::at(lineno, "transition defined twice"));
            }
        }
        let delta = delta
            .into_iter()
            .enumerate()
            .map(|(s, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(a, step)| {
                        step.ok_or_else(|| {
                            ParseError::new(format!(
                                "transition missing for state {:?} and symbol {:?}",
                                states[s], alphabet[a]
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Transducer::new(alphabet, states, initial, delta).map_err(|e| ParseError::new(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::{pt, w};
    use crate::twov::halfswap;

    fn binary() -> Vec<String> {
        vec!["0".into(), "1".into()]
    }

    fn bits(s: &str) -> Vec<usize> {
        s.chars().map(|c| (c == '1') as usize).collect()
    }

    fn head_deleter() -> Transducer {
        let echo = Transducer::echo(binary());
        splice(&[vec![0], vec![1]], &[echo.clone(), echo]).unwrap()
    }

    fn swallower() -> Transducer {
        Transducer::new(binary(), vec!["s".into()], 0, vec![vec![(0, vec![]), (0, vec![])]]).unwrap()
    }

    #[test]
    fn run_examples() {
        let echo = Transducer::echo(binary());
        assert_eq!(echo.run(&[]).unwrap(), (vec![], 0));
        assert_eq!(echo.run(&bits("0110")).unwrap(), (bits("0110"), 0));
        let (out, end) = head_deleter().run(&bits("0110")).unwrap();
        assert_eq!(out, bits("110"));
        assert_ne!(end, head_deleter().initial());
        assert_eq!(echo.run(&[2]), Err(TransducerError::UnknownSymbol(0)));
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(Transducer::echo(binary()).check_nondegenerate().is_ok());
        let cycle = swallower().check_nondegenerate().unwrap_err();
        assert_eq!(cycle.edges, vec![("s".to_string(), "0".to_string())]);
        assert!(cycle.to_string().starts_with("cycle: s --0--> s"));
        assert!(head_deleter().check_nondegenerate().is_ok());
    }

    #[test]
    fn splice_examples() {
        let echo = Transducer::echo(binary());
        let single = splice(&[vec![]], &[head_deleter()]).unwrap();
        assert_eq!(single.run(&bits("0110")).unwrap().0, bits("110"));
        let three = splice(&[vec![0], vec![1, 0], vec![1, 1]], &[echo.clone(), echo.clone(), echo.clone()]).unwrap();
        assert_eq!(three.run(&bits("100111")).unwrap().0, bits("0111"));
    }

    #[test]
    fn splice_rejects_bad_codes() {
        let echo = Transducer::echo(binary());
        let err = splice(&[vec![0], vec![0, 1], vec![1]], &[echo.clone(), echo.clone(), echo.clone()]).unwrap_err();
        assert_eq!(err, TransducerError::Code(CodeError::NotAntichain { prefix: 0, word: 1 }));
        let err = splice(&[vec![0], vec![1, 0]], &[echo.clone(), echo.clone()]).unwrap_err();
        assert_eq!(err, TransducerError::Code(CodeError::Incomplete));
        assert!(matches!(splice(&[vec![0], vec![1]], &[echo]), Err(TransducerError::PartCount { .. })));
    }

    #[test]
    fn shift_examples() {
        let t = shift_transducer(&w("-"), &w("-"));
        assert_eq!(t.num_states(), 1);
        let input = quads_to_symbols(&[Quad::new(0, 1), Quad::new(1, 1)]);
        assert_eq!(t.run(&input).unwrap().0, input);

        let t = shift_transducer(&w("1"), &w("-"));
        let out = t.run(&quads_to_symbols(&[Quad::new(0, 0), Quad::new(1, 1)])).unwrap().0;
        assert_eq!(symbols_to_quads(&out), vec![Quad::new(1, 0), Quad::new(0, 1)]);

        let t = shift_transducer(&w("0"), &w("11"));
        for a in 0..4 {
            for b in 0..4 {
                let out = symbols_to_quads(&t.run(&[a, b]).unwrap().0);
                assert_eq!(pi_decode(&out).1, w("11"));
            }
        }
    }

    #[test]
    fn pi_examples() {
        assert_eq!(pi_encode(&pt("-", "-"), 2).unwrap(), vec![Quad::new(0, 0); 2]);
        assert_eq!(pi_encode(&pt("1", "01"), 2).unwrap(), vec![Quad::new(1, 0), Quad::new(0, 1)]);
        assert!(pi_encode(&pt("111", "-"), 2).is_err());
        assert_eq!(pi_decode(&pi_encode(&pt("1", "01"), 4).unwrap()), (w("1000"), w("0100")));
    }

    #[test]
    fn identity_compiles_to_echo() {
        let t = from_element(&PatternPair::identity());
        assert_eq!(t.num_states(), 1);
        assert_eq!(t.bounded_identity_check(6), IdentityCheck::ConsistentWithIdentity { depth: 6 });
    }

    #[test]
    fn halfswap_compiles_and_agrees() {
        let f = halfswap();
        let (t, delay) = from_element_with_delay(&f);
        assert_eq!(delay, 1);
        for p in [pt("01", "1"), pt("1", "-"), pt("-", "111")] {
            let input = quads_to_symbols(&pi_encode(&p, 64).unwrap());
            let out = t.run(&input).unwrap().0;
            let expected = quads_to_symbols(&pi_encode(&f.apply(&p).unwrap(), 64).unwrap());
            assert_eq!(out.len(), 63);
            assert_eq!(&expected[..63], &out[..]);
        }
        assert!(t.check_nondegenerate().is_ok());
    }

    #[test]
    fn composition_examples() {
        let echo = Transducer::echo(binary());
        let hd = head_deleter();
        let twice = compose_transducers(&hd, &hd).unwrap();
        assert_eq!(twice.run(&bits("0110")).unwrap().0, bits("10"));
        let a = compose_transducers(&echo, &hd).unwrap();
        let b = compose_transducers(&hd, &echo).unwrap();
        for word in ["", "0", "0110", "111010"] {
            assert_eq!(a.run(&bits(word)).unwrap().0, hd.run(&bits(word)).unwrap().0);
            assert_eq!(b.run(&bits(word)).unwrap().0, hd.run(&bits(word)).unwrap().0);
        }
        let quad = Transducer::echo(quad_alphabet());
        assert_eq!(compose_transducers(&echo, &quad), Err(TransducerError::AlphabetMismatch));
    }

    #[test]
    fn identity_check_examples() {
        assert_eq!(
            Transducer::echo(binary()).bounded_identity_check(8),
            IdentityCheck::ConsistentWithIdentity { depth: 8 }
        );
        assert_eq!(
            head_deleter().bounded_identity_check(4),
            IdentityCheck::Counterexample { input: bits("01"), output: bits("1") }
        );
        let h = from_element(&halfswap());
        let hh = compose_transducers(&h, &h).unwrap();
        assert_eq!(hh.bounded_identity_check(8), IdentityCheck::ConsistentWithIdentity { depth: 8 });
    }

    #[test]
    fn text_format_round_trips() {
        let t = head_deleter();
        let text = t.to_string();
        let back: Transducer = text.parse().unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_string(), text);
        let missing = "alphabet 0 1\nstates q0\ninitial q0\nq0, 0 -> q0, 0\n";
        assert!(missing.parse::<Transducer>().is_err());
        let bad = "alphabet 0 1\nstates q0\ninitial q0\nq0, 0 -> q9, 0\nq0, 1 -> q0, 1\n";
        assert_eq!(bad.parse::<Transducer>().unwrap_err().line, Some(4));
    }

    #[test]
    fn dot_export() {
        let dot = head_deleter().to_dot();
        assert!(dot.starts_with("digraph transducer {"));
        assert!(dot.contains("\"q0\" [shape=doublecircle];"));
        assert!(dot.contains("[label=\"0 | -\"]"));
    }
}
