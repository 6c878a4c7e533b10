//! Seeded random generators for elements, refinements, points and machines.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cantor::{DyadicPoint, Rect, Word};
use crate::turing::{Direction, Instruction, TuringMachine};
use crate::twov::{PatternPair, RectPair};

/// A dyadic subdivision of `C²` into `pieces` rectangles, by random bisections.
pub fn random_subdivision<R: Rng + ?Sized>(rng: &mut R, pieces: usize) -> Vec<Rect> {
    let mut rects = vec![Rect::full()];
    while rects.len() < pieces.max(1) {
        let i = rng.gen_range(0..rects.len());
        let (a, b) = rects[i].bisect(rng.gen_range(0..2));
        rects[i] = a;
        rects.push(b);
    }
    rects
}

/// A random element whose pattern pair has `pieces` rectangles.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, pieces: usize) -> PatternPair {
    let domains = random_subdivision(rng, pieces);
    let mut ranges = random_subdivision(rng, pieces);
    ranges.shuffle(rng);
    let mut pairs: Vec<RectPair> = domains
        .into_iter()
        .zip(ranges)
        .map(|(d, r)| RectPair::new(d, r))
        .collect();
    pairs.sort();
    PatternPair::from_pairs(pairs)
}

/// Applies `splits` random consistent bisections to `f`'s pairs.
pub fn random_refinement<R: Rng + ?Sized>(rng: &mut R, f: &PatternPair, splits: usize) -> PatternPair {
    let mut pairs = f.pairs().to_vec();
    for _ in 0..splits {
        let i = rng.gen_range(0..pairs.len());
        let (a, b) = pairs[i].bisect(rng.gen_range(0..2));
        pairs[i] = a;
        pairs.push(b);
    }
    pairs.shuffle(rng);
    PatternPair::from_pairs(pairs)
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_bits((0..len).map(|_| rng.gen_range(0..2u8)))
}

pub fn random_point<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> DyadicPoint {
    DyadicPoint::new(random_word(rng, max_len), random_word(rng, max_len))
}

/// A random machine with `states · symbols` possible instruction slots. Each
/// state gets a move with probability `1/3`, otherwise a random subset of
/// writes. The result is well formed but usually neither reversible nor complete.
pub fn random_machine<R: Rng + ?Sized>(rng: &mut R, states: usize, symbols: usize) -> TuringMachine {
    let mut table = Vec::new();
    for s in 0..states {
        if rng.gen_ratio(1, 3) {
            let dir = if rng.gen() { Direction::Left } else { Direction::Right };
            table.push(Instruction::Move {
                from: s,
                dir,
                to: rng.gen_range(0..states),
            });
            if rng.gen_ratio(1, 6) {
                table.push(Instruction::Write {
                    from: s,
                    read: rng.gen_range(0..symbols),
                    to: rng.gen_range(0..states),
                    write: rng.gen_range(0..symbols),
                });
            }
        } else {
            for a in 0..symbols {
                if rng.gen_ratio(3, 4) {
                    table.push(Instruction::Write {
                        from: s,
                        read: a,
                        to: rng.gen_range(0..states),
                        write: rng.gen_range(0..symbols),
                    });
                }
            }
        }
    }
    table.dedup();
    TuringMachine::indexed(states, symbols, table).expect("generated machine is well formed")
}
