//! Turing machines whose head stays at cell 0 while the tape moves, their
//! table-level checkers, and the encodings that turn reversible machines into
//! elements of 2V.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::cantor::{comb_code, rect, CodeError, DyadicPoint, PrefixCode, Rect, Word};
use crate::error::ParseError;
use crate::twov::{PatternPair, RectPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Left,
    Right,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Left => "L",
            Direction::Right => "R",
        })
    }
}

/// States and symbols are indices into the machine's name lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Instruction {
    Move { from: usize, dir: Direction, to: usize },
    Write { from: usize, read: usize, to: usize, write: usize },
}

impl Instruction {
    pub fn from_state(&self) -> usize {
        match *self {
            Instruction::Move { from, .. } | Instruction::Write { from, .. } => from,
        }
    }

    pub fn to_state(&self) -> usize {
        match *self {
            Instruction::Move { to, .. } | Instruction::Write { to, .. } => to,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MachineError {
    #[error("a machine needs at least one state")]
    NoStates,
    #[error("a machine needs at least one tape symbol")]
    NoSymbols,
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("instruction {0} refers to an undeclared state or symbol")]
    OutOfRange(usize),
    #[error("instruction {0} is listed twice")]
    DuplicateInstruction(usize),
}

/// Two instructions that together violate determinism or reversibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub first: Instruction,
    pub second: Instruction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReversibilityError {
    NotDeterministic(Conflict),
    /// Both instructions can produce the same configuration.
    Collision(Conflict),
}

impl ReversibilityError {
    pub fn conflict(&self) -> Conflict {
        match *self {
            ReversibilityError::NotDeterministic(c) | ReversibilityError::Collision(c) => c,
        }
    }
}

/// A machine `(S, A, T)`. Symbol 0 is the blank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    states: Vec<String>,
    symbols: Vec<String>,
    table: Vec<Instruction>,
}

impl TuringMachine {
    pub fn new(
        states: Vec<String>,
        symbols: Vec<String>,
        table: Vec<Instruction>,
    ) -> Result<Self, MachineError> {
        if states.is_empty() {
            return Err(MachineError::NoStates);
        }
        if symbols.is_empty() {
            return Err(MachineError::NoSymbols);
        }
        for names in [&states, &symbols] {
            for (i, n) in names.iter().enumerate() {
                if names[..i].contains(n) {
                    return Err(MachineError::DuplicateName(n.clone()));
                }
            }
        }
        let (m, n) = (states.len(), symbols.len());
        for (i, ins) in table.iter().enumerate() {
            let ok = match *ins {
                Instruction::Move { from, to, .. } => from < m && to < m,
                Instruction::Write { from, read, to, write } => {
                    from < m && to < m && read < n && write < n
                }
            };
            if !ok {
                return Err(MachineError::OutOfRange(i));
            }
            if table[..i].contains(ins) {
                return Err(MachineError::DuplicateInstruction(i));
            }
        }
        Ok(TuringMachine { states, symbols, table })
    }

    /// A machine with states `s1..sm` and symbols `a1..an`.
    pub fn indexed(m: usize, n: usize, table: Vec<Instruction>) -> Result<Self, MachineError> {
        TuringMachine::new(
            (1..=m).map(|i| format!("s{i}")).collect(),
            (1..=n).map(|i| format!("a{i}")).collect(),
            table,
        )
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn table(&self) -> &[Instruction] {
        &self.table
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    /// The instruction in machine-file syntax.
    pub fn describe(&self, ins: &Instruction) -> String {
        match *ins {
            Instruction::Move { from, dir, to } => {
                format!("move {} {} {}", self.states[from], dir, self.states[to])
            }
            Instruction::Write { from, read, to, write } => format!(
                "write {} {} {} {}",
                self.states[from], self.symbols[read], self.states[to], self.symbols[write]
            ),
        }
    }

    fn outgoing(&self, s: usize) -> impl Iterator<Item = &Instruction> {
        self.table.iter().filter(move |i| i.from_state() == s)
    }

    fn incoming(&self, s: usize) -> impl Iterator<Item = &Instruction> {
        self.table.iter().filter(move |i| i.to_state() == s)
    }

    /// Every configuration has at most one successor.
    ///
    /// Per state: a single move and nothing else, or writes with pairwise
    /// distinct read symbols.
    pub fn check_deterministic(&self) -> Result<(), Conflict> {
        for s in 0..self.num_states() {
            let out: Vec<&Instruction> = self.outgoing(s).collect();
            if let Some(mv) = out.iter().find(|i| matches!(i, Instruction::Move { .. })) {
                if let Some(other) = out.iter().find(|i| *i != mv) {
                    return Err(Conflict { first: **mv, second: **other });
                }
                continue;
            }
            for (i, a) in out.iter().enumerate() {
                for b in &out[i + 1..] {
                    if let (Instruction::Write { read: ra, .. }, Instruction::Write { read: rb, .. }) = (a, b) {
                        if ra == rb {
                            return Err(Conflict { first: **a, second: **b });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Deterministic, and every configuration has at most one predecessor.
    ///
    /// Per final state: a single incoming move and nothing else, or incoming
    /// writes with pairwise distinct write symbols.
    pub fn check_reversible(&self) -> Result<(), ReversibilityError> {
        self.check_deterministic()
            .map_err(ReversibilityError::NotDeterministic)?;
        for s in 0..self.num_states() {
            let inc: Vec<&Instruction> = self.incoming(s).collect();
            if let Some(mv) = inc.iter().find(|i| matches!(i, Instruction::Move { .. })) {
                if let Some(other) = inc.iter().find(|i| *i != mv) {
                    return Err(ReversibilityError::Collision(Conflict {
                        first: **mv,
                        second: **other,
                    }));
                }
                continue;
            }
            for (i, a) in inc.iter().enumerate() {
                for b in &inc[i + 1..] {
                    if let (Instruction::Write { write: wa, .. }, Instruction::Write { write: wb, .. }) = (a, b) {
                        if wa == wb {
                            return Err(ReversibilityError::Collision(Conflict {
                                first: **a,
                                second: **b,
                            }));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `(state, read symbol)` pairs with no applicable instruction.
    pub fn halting_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for s in 0..self.num_states() {
            if self.outgoing(s).any(|i| matches!(i, Instruction::Move { .. })) {
                continue;
            }
            for a in 0..self.num_symbols() {
                let covered = self
                    .outgoing(s)
                    .any(|i| matches!(*i, Instruction::Write { read, .. } if read == a));
                if !covered {
                    pairs.push((s, a));
                }
            }
        }
        pairs
    }

    /// `Ok` when no configuration halts, otherwise the halting pairs.
    pub fn check_complete(&self) -> Result<(), Vec<(usize, usize)>> {
        let pairs = self.halting_pairs();
        if pairs.is_empty() {
            Ok(())
        } else {
            Err(pairs)
        }
    }

    /// `(state, symbol at 0)` pairs with no predecessor, as
    /// `(state, Some(symbol))`, or `(state, None)` when nothing enters the state.
    pub fn inverse_halting_pairs(&self) -> Vec<(usize, Option<usize>)> {
        let mut pairs = Vec::new();
        for s in 0..self.num_states() {
            let inc: Vec<&Instruction> = self.incoming(s).collect();
            if inc.is_empty() {
                pairs.push((s, None));
                continue;
            }
            if inc.iter().any(|i| matches!(i, Instruction::Move { .. })) {
                continue;
            }
            for a in 0..self.num_symbols() {
                if !inc
                    .iter()
                    .any(|i| matches!(**i, Instruction::Write { write, .. } if write == a))
                {
                    pairs.push((s, Some(a)));
                }
            }
        }
        pairs
    }

    fn applicable(&self, c: &Configuration) -> Option<&Instruction> {
        let here = c.read(0);
        self.outgoing(c.state).find(|i| match **i {
            Instruction::Move { .. } => true,
            Instruction::Write { read, .. } => read == here,
        })
    }

    /// One transition, or `None` for a halting configuration.
    pub fn step(&self, c: &Configuration) -> Option<Configuration> {
        Some(match *self.applicable(c)? {
            Instruction::Move { dir, to, .. } => Configuration {
                state: to,
                tape: c.shifted(dir),
            },
            Instruction::Write { to, write, .. } => c.written(to, write),
        })
    }

    /// The unique predecessor, or `None` for an inverse halting configuration.
    pub fn step_back(&self, c: &Configuration) -> Option<Configuration> {
        let here = c.read(0);
        let ins = self.incoming(c.state).find(|i| match **i {
            Instruction::Move { .. } => true,
            Instruction::Write { write, .. } => write == here,
        })?;
        Some(match *ins {
            Instruction::Move { from, dir, .. } => {
                let back = match dir {
                    Direction::Left => Direction::Right,
                    Direction::Right => Direction::Left,
                };
                Configuration {
                    state: from,
                    tape: c.shifted(back),
                }
            }
            Instruction::Write { from, read, .. } => c.written(from, read),
        })
    }

    /// Parses a configuration literal such as `s1 | -1:a2, 1:a3`.
    pub fn parse_config(&self, s: &str) -> Result<Configuration, ParseError> {
        let (state, cells) = s
            .split_once('|')
            .ok_or_else(|| ParseError::new("expected `state | pos:symbol, …`"))?;
        let state_name = state.trim();
        let state = self
            .state_index(state_name)
            .ok_or_else(|| ParseError::new(format!("unknown state {state_name:?}")))?;
        let mut tape = Vec::new();
        for cell in cells.split(',').map(str::trim).filter(|c| !c.is_empty()) {
            let (pos, sym) = cell
                .split_once(':')
                .ok_or_else(|| ParseError::new(format!("expected pos:symbol, found {cell:?}")))?;
            let pos: i64 = pos
                .trim()
                .parse()
                .map_err(|_| ParseError::new(format!("invalid position {pos:?}")))?;
            let sym = self
                .symbol_index(sym.trim())
                .ok_or_else(|| ParseError::new(format!("unknown symbol {:?}", sym.trim())))?;
            tape.push((pos, sym));
        }
        Ok(Configuration::new(state, tape))
    }

    pub fn format_config(&self, c: &Configuration) -> String {
        let cells: Vec<String> = c
            .cells()
            .map(|(pos, sym)| format!("{pos}:{}", self.symbols[sym]))
            .collect();
        if cells.is_empty() {
            format!("{} |", self.states[c.state])
        } else {
            format!("{} | {}", self.states[c.state], cells.join(", "))
        }
    }
}

impl fmt::Display for TuringMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states {}", self.states.join(" "))?;
        writeln!(f, "alphabet {}", self.symbols.join(" "))?;
        for ins in &self.table {
            writeln!(f, "{}", self.describe(ins))?;
        }
        Ok(())
    }
}

/// The machine file format. Blank lines and `#` comments are skipped.
impl FromStr for TuringMachine {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut states: Option<Vec<String>> = None;
        let mut symbols: Option<Vec<String>> = None;
        let mut raw = Vec::new();
        for (idx, line) in s.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens[0] {
                "states" => states = Some(tokens[1..].iter().map(|t| t.to_string()).collect()),
                "alphabet" => symbols = Some(tokens[1..].iter().map(|t| t.to_string()).collect()),
                "move" | "write" => raw.push((lineno, tokens)),
                other => {
                    return Err(ParseError::at(lineno, format!("unknown directive {other:?}")));
                }
            }
        }
        let states = states.ok_or_else(|| ParseError::new("missing `states` line"))?;
        let symbols = symbols.ok_or_else(|| ParseError::new("missing `alphabet` line"))?;
        let state = |lineno: usize, name: &str| {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| ParseError::at(lineno, format!("unknown state {name:?}")))
        };
        let symbol = |lineno: usize, name: &str| {
            symbols
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| ParseError::at(lineno, format!("unknown symbol {name:?}")))
        };
        let mut table = Vec::with_capacity(raw.len());
        let mut lines = Vec::with_capacity(raw.len());
        for (lineno, t) in raw {
            let ins = match (t[0], t.len()) {
                ("move", 4) => Instruction::Move {
                    from: state(lineno, t[1])?,
                    dir: match t[2] {
                        "L" => Direction::Left,
                        "R" => Direction::Right,
                        d => {
                            return Err(ParseError::at(lineno, format!("direction must be L or R, found {d:?}")));
                        }
                    },
                    to: state(lineno, t[3])?,
                },
                ("write", 5) => Instruction::Write {
                    from: state(lineno, t[1])?,
                    read: symbol(lineno, t[2])?,
                    to: state(lineno, t[3])?,
                    write: symbol(lineno, t[4])?,
                },
                ("move", _) => return Err(ParseError::at(lineno, "expected `move <state> L|R <state>`")),
                _ => return Err(ParseError::at(lineno, "expected `write <state> <symbol> <state> <symbol>`")),
            };
            table.push(ins);
            lines.push(lineno);
        }
        TuringMachine::new(states, symbols, table).map_err(|e| match e {
            MachineError::OutOfRange(i) | MachineError::DuplicateInstruction(i) => {
                ParseError::at(lines[i], e.to_string())
            }
            other => ParseError::new(other.to_string()),
        })
    }
}

/// A state and a finitely supported tape; cells not stored hold the blank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: usize,
    tape: BTreeMap<i64, usize>,
}

impl Configuration {
    pub fn new<I: IntoIterator<Item = (i64, usize)>>(state: usize, cells: I) -> Self {
        let tape = cells.into_iter().filter(|&(_, s)| s != 0).collect();
        Configuration { state, tape }
    }

    pub fn blank(state: usize) -> Self {
        Configuration {
            state,
            tape: BTreeMap::new(),
        }
    }

    pub fn read(&self, pos: i64) -> usize {
        self.tape.get(&pos).copied().unwrap_or(0)
    }

    /// Non-blank cells in position order.
    pub fn cells(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.tape.iter().map(|(&p, &s)| (p, s))
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.tape.keys().next()?, *self.tape.keys().next_back()?))
    }

    fn shifted(&self, dir: Direction) -> BTreeMap<i64, usize> {
        // M(τ, L)(n) = τ(n − 1), M(τ, R)(n) = τ(n + 1)
        let delta = match dir {
            Direction::Left => 1,
            Direction::Right => -1,
        };
        self.tape.iter().map(|(&p, &s)| (p + delta, s)).collect()
    }

    fn written(&self, state: usize, symbol: usize) -> Configuration {
        let mut tape = self.tape.clone();
        if symbol == 0 {
            tape.remove(&0);
        } else {
            tape.insert(0, symbol);
        }
        Configuration { state, tape }
    }
}

/// Whether configurations fill `C²` or only `R(-,1)`, leaving room for the
/// halting and inverse-halting regions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Complete,
    Halting,
}

/// How [`default_scheme`] picks state codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeStyle {
    Comb,
    /// Fixed-length state codes when the state count is a power of two.
    ExampleStyle,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SchemeError {
    #[error("state code: {0}")]
    StateCode(CodeError),
    #[error("symbol code: {0}")]
    SymbolCode(CodeError),
    #[error("machine has {expected} states but the state code has {found} words")]
    StateCount { expected: usize, found: usize },
    #[error("machine has {expected} symbols but the symbol code has {found} words")]
    SymbolCount { expected: usize, found: usize },
    #[error("the blank's code must be a nonempty run of zeros, found {0}")]
    BlankCode(Word),
}

/// Codes `σ` for states and `α` for symbols, plus the encoding mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingScheme {
    state_codes: PrefixCode,
    symbol_codes: PrefixCode,
    mode: Mode,
}

impl EncodingScheme {
    pub fn new(
        machine: &TuringMachine,
        state_codes: Vec<Word>,
        symbol_codes: Vec<Word>,
        mode: Mode,
    ) -> Result<Self, SchemeError> {
        let state_codes = PrefixCode::new(state_codes).map_err(SchemeError::StateCode)?;
        let symbol_codes = PrefixCode::new(symbol_codes).map_err(SchemeError::SymbolCode)?;
        Self::from_codes(machine, state_codes, symbol_codes, mode)
    }

    fn from_codes(
        machine: &TuringMachine,
        state_codes: PrefixCode,
        symbol_codes: PrefixCode,
        mode: Mode,
    ) -> Result<Self, SchemeError> {
        if state_codes.len() != machine.num_states() {
            return Err(SchemeError::StateCount {
                expected: machine.num_states(),
                found: state_codes.len(),
            });
        }
        if symbol_codes.len() != machine.num_symbols() {
            return Err(SchemeError::SymbolCount {
                expected: machine.num_symbols(),
                found: symbol_codes.len(),
            });
        }
        let blank = symbol_codes.get(0);
        if blank.is_empty() || !blank.is_zero_run() {
            return Err(SchemeError::BlankCode(blank.clone()));
        }
        Ok(EncodingScheme {
            state_codes,
            symbol_codes,
            mode,
        })
    }

    pub fn state_code(&self, s: usize) -> &Word {
        self.state_codes.get(s)
    }

    pub fn symbol_code(&self, a: usize) -> &Word {
        self.symbol_codes.get(a)
    }

    pub fn state_codes(&self) -> &PrefixCode {
        &self.state_codes
    }

    pub fn symbol_codes(&self) -> &PrefixCode {
        &self.symbol_codes
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The word every second coordinate starts with: `1` in halting mode.
    fn tape_prefix(&self) -> Word {
        match self.mode {
            Mode::Complete => Word::empty(),
            Mode::Halting => Word::ones(1),
        }
    }

    /// Concatenated codes of a half tape, up to its last non-blank symbol.
    pub fn encode_tape_half<I: IntoIterator<Item = usize>>(&self, half: I) -> Word {
        let symbols: Vec<usize> = half.into_iter().collect();
        let end = symbols.iter().rposition(|&s| s != 0).map_or(0, |i| i + 1);
        symbols[..end]
            .iter()
            .fold(Word::empty(), |acc, &s| acc.concat(self.symbol_code(s)))
    }

    pub fn encode_config(&self, c: &Configuration) -> DyadicPoint {
        let (lo, hi) = c.support().unwrap_or((0, -1));
        let left = (lo.min(0)..0).rev().map(|p| c.read(p));
        let right = (0..=hi.max(-1)).map(|p| c.read(p));
        DyadicPoint::new(
            self.state_code(c.state).concat(&self.encode_tape_half(left)),
            self.tape_prefix().concat(&self.encode_tape_half(right)),
        )
    }

    fn decode_half(&self, bits: &Word, mut offset: usize) -> Vec<usize> {
        let mut half = Vec::new();
        while offset < bits.len() {
            let s = self
                .symbol_codes
                .match_padded(bits, offset)
                .expect("complete prefix code matches every sequence");
            half.push(s);
            offset += self.symbol_code(s).len();
        }
        half
    }

    pub fn decode_config(&self, p: &DyadicPoint) -> Result<Configuration, NotInImage> {
        if self.mode == Mode::Halting && p.second().padded_bit(0) != 1 {
            return Err(NotInImage(p.clone()));
        }
        let state = self
            .state_codes
            .match_padded(p.first(), 0)
            .expect("complete prefix code matches every sequence");
        let left = self.decode_half(p.first(), self.state_code(state).len());
        let right = self.decode_half(p.second(), self.tape_prefix().len());
        let cells = left
            .into_iter()
            .enumerate()
            .map(|(i, s)| (-(i as i64) - 1, s))
            .chain(right.into_iter().enumerate().map(|(i, s)| (i as i64, s)));
        Ok(Configuration::new(state, cells))
    }

    /// `R(σ_s, [1]α_a)`: configurations in state `s` reading `a`.
    fn cell_rect(&self, s: usize, a: Option<usize>) -> Rect {
        let mut second = self.tape_prefix();
        if let Some(a) = a {
            second = second.concat(self.symbol_code(a));
        }
        Rect::new(self.state_code(s).clone(), second)
    }

    /// The rectangles each instruction contributes, mapping `Φ(c)` to `Φ(step(c))`.
    fn instruction_pairs(&self, machine: &TuringMachine) -> Vec<RectPair> {
        let prefix = self.tape_prefix();
        let mut pairs = Vec::new();
        for ins in machine.table() {
            match *ins {
                Instruction::Move { from, dir: Direction::Left, to } => {
                    for k in 0..machine.num_symbols() {
                        let ak = self.symbol_code(k);
                        pairs.push(RectPair::new(
                            Rect::new(self.state_code(from).concat(ak), prefix.clone()),
                            Rect::new(self.state_code(to).clone(), prefix.concat(ak)),
                        ));
                    }
                }
                Instruction::Move { from, dir: Direction::Right, to } => {
                    for k in 0..machine.num_symbols() {
                        let ak = self.symbol_code(k);
                        pairs.push(RectPair::new(
                            Rect::new(self.state_code(from).clone(), prefix.concat(ak)),
                            Rect::new(self.state_code(to).concat(ak), prefix.clone()),
                        ));
                    }
                }
                Instruction::Write { from, read, to, write } => {
                    pairs.push(RectPair::new(
                        self.cell_rect(from, Some(read)),
                        self.cell_rect(to, Some(write)),
                    ));
                }
            }
        }
        pairs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{0} is not the image of any configuration")]
pub struct NotInImage(pub DyadicPoint);

/// Comb codes for states and symbols, or fixed-length state codes when
/// `style` asks for them and the state count is a power of two.
pub fn default_scheme(
    machine: &TuringMachine,
    mode: Mode,
    style: CodeStyle,
) -> Result<EncodingScheme, SchemeError> {
    let m = machine.num_states();
    let state_codes = match style {
        CodeStyle::ExampleStyle if m.is_power_of_two() => {
            PrefixCode::fixed_length(m.trailing_zeros() as usize)
        }
        _ => comb_code(m).map_err(SchemeError::StateCode)?,
    };
    let symbol_codes = comb_code(machine.num_symbols()).map_err(SchemeError::SymbolCode)?;
    EncodingScheme::from_codes(machine, state_codes, symbol_codes, mode)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CompileError {
    #[error("machine is not deterministic")]
    NotDeterministic(Conflict),
    #[error("machine is not reversible")]
    NotReversible(Conflict),
    #[error("machine is not complete")]
    Incomplete(Vec<(usize, usize)>),
    #[error("machine is complete; compile it in complete mode")]
    Complete,
    #[error("encoding scheme is in the wrong mode for this construction")]
    WrongMode,
}

impl From<ReversibilityError> for CompileError {
    fn from(e: ReversibilityError) -> Self {
        match e {
            ReversibilityError::NotDeterministic(c) => CompileError::NotDeterministic(c),
            ReversibilityError::Collision(c) => CompileError::NotReversible(c),
        }
    }
}

/// The element `Φ ∘ F ∘ Φ⁻¹` of a complete reversible machine.
pub fn element_of(machine: &TuringMachine, scheme: &EncodingScheme) -> Result<PatternPair, CompileError> {
    if scheme.mode() != Mode::Complete {
        return Err(CompileError::WrongMode);
    }
    machine.check_reversible()?;
    machine.check_complete().map_err(CompileError::Incomplete)?;
    let mut pairs = scheme.instruction_pairs(machine);
    pairs.sort();
    Ok(PatternPair::from_pairs(pairs))
}

/// `Φ(H)`: one rectangle per halting `(state, symbol)` pair.
pub fn halting_rects(machine: &TuringMachine, scheme: &EncodingScheme) -> Vec<Rect> {
    machine
        .halting_pairs()
        .into_iter()
        .map(|(s, a)| scheme.cell_rect(s, Some(a)))
        .collect()
}

/// `Φ(H̄)`: configurations no instruction can produce.
pub fn inverse_halting_rects(machine: &TuringMachine, scheme: &EncodingScheme) -> Vec<Rect> {
    machine
        .inverse_halting_pairs()
        .into_iter()
        .map(|(s, a)| scheme.cell_rect(s, a))
        .collect()
}

/// The region for inverse halting: `R(0,0)`.
pub fn zeta_region() -> Rect {
    rect("0", "0")
}

/// The attracting region for halting: `R(1,0)`.
pub fn eta_region() -> Rect {
    rect("1", "0")
}

/// The machine region in halting mode: `R(-,1)`.
pub fn machine_region() -> Rect {
    rect("-", "1")
}

/// Pairs two finite lists of rectangles by prefix replacements after
/// bisecting the last rectangle of the longer list (first coordinate, then
/// second, alternating) until the counts agree.
pub fn count_match(mut sources: Vec<Rect>, mut targets: Vec<Rect>) -> Vec<RectPair> {
    assert!(!sources.is_empty() && !targets.is_empty(), "cannot match an empty list");
    let mut axis = 0;
    while sources.len() != targets.len() {
        let longer = if sources.len() > targets.len() {
            &mut targets
        } else {
            &mut sources
        };
        let last = longer.pop().expect("nonempty");
        let (a, b) = last.bisect(axis);
        longer.push(a);
        longer.push(b);
        axis ^= 1;
    }
    sources
        .into_iter()
        .zip(targets)
        .map(|(d, r)| RectPair::new(d, r))
        .collect()
}

/// The element simulating an incomplete reversible machine inside `R(-,1)`,
/// feeding inverse-halting configurations from `R(0,0)` and sending halting
/// ones into `R(1,0)`, where the orbit converges to `(10̄, 0̄)`.
pub fn element_of_incomplete(
    machine: &TuringMachine,
    scheme: &EncodingScheme,
) -> Result<PatternPair, CompileError> {
    if scheme.mode() != Mode::Halting {
        return Err(CompileError::WrongMode);
    }
    machine.check_reversible()?;
    if machine.check_complete().is_ok() {
        return Err(CompileError::Complete);
    }
    let mut pairs = scheme.instruction_pairs(machine);

    let mut feeders = inverse_halting_rects(machine, scheme);
    feeders.sort();
    feeders.push(zeta_region());
    pairs.extend(count_match(vec![zeta_region()], feeders));

    let mut halting = halting_rects(machine, scheme);
    halting.sort();
    pairs.extend(count_match(halting, vec![rect("10", "01"), rect("11", "0")]));
    pairs.push(RectPair::new(eta_region(), rect("10", "00")));

    pairs.sort();
    Ok(PatternPair::from_pairs(pairs))
}

/// Dispatches on the scheme's mode.
pub fn compile(machine: &TuringMachine, scheme: &EncodingScheme) -> Result<PatternPair, CompileError> {
    match scheme.mode() {
        Mode::Complete => element_of(machine, scheme),
        Mode::Halting => element_of_incomplete(machine, scheme),
    }
}

pub mod fixtures {
    //! Machines used throughout the tests and documentation.

    use super::{Direction::*, Instruction, Instruction::*, TuringMachine};

    fn mv(from: usize, dir: super::Direction, to: usize) -> Instruction {
        Move { from, dir, to }
    }

    fn wr(from: usize, read: usize, to: usize, write: usize) -> Instruction {
        Write { from, read, to, write }
    }

    /// Four states, three symbols; complete and reversible.
    pub fn four_state() -> TuringMachine {
        TuringMachine::indexed(
            4,
            3,
            vec![
                mv(0, Right, 1),
                wr(1, 0, 0, 0),
                wr(1, 1, 0, 2),
                wr(1, 2, 2, 1),
                mv(2, Left, 3),
                wr(3, 0, 2, 0),
                wr(3, 1, 0, 1),
                wr(3, 2, 2, 2),
            ],
        )
        .unwrap()
    }

    /// Two states, two symbols; reversible, halts in `s2` reading `a2`.
    pub fn halting_two_state() -> TuringMachine {
        TuringMachine::indexed(2, 2, vec![mv(0, Right, 1), wr(1, 0, 0, 1)]).unwrap()
    }

    /// Flips the symbol under the head and the state on every step; period 2.
    pub fn toggle() -> TuringMachine {
        TuringMachine::indexed(
            2,
            2,
            vec![wr(0, 0, 1, 1), wr(0, 1, 1, 0), wr(1, 0, 0, 1), wr(1, 1, 0, 0)],
        )
        .unwrap()
    }

    /// One state that moves right forever: the binary shift.
    pub fn shift() -> TuringMachine {
        TuringMachine::indexed(1, 2, vec![mv(0, Right, 0)]).unwrap()
    }
}
