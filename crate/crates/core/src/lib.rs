//! Exact computation with reversible Turing machines, the Brin-Thompson group
//! 2V acting on `C² = {0,1}^∞ × {0,1}^∞`, and asynchronous transducers.
//!
//! - [`cantor`]: binary words, prefix codes, dyadic rectangles and points.
//! - [`twov`]: pattern-pair elements of 2V and their group calculus.
//! - [`turing`]: machines, checkers, configuration encodings and compilers into 2V.
//! - [`transducer`]: asynchronous transducers and the compiler from 2V.
//! - [`orbit`]: orbit traces, rectangle hits, convergence witnesses, basins.

pub mod cantor;
pub mod error;
pub mod gen;
pub mod orbit;
pub mod render;
pub mod transducer;
pub mod turing;
pub mod twov;

pub use cantor::{DyadicPoint, PrefixCode, Quad, QuadWord, Rect, Word};
pub use error::ParseError;
pub use orbit::{OrbitTrace, Verdict};
pub use transducer::Transducer;
pub use turing::{Configuration, EncodingScheme, Instruction, Mode, TuringMachine};
pub use twov::{OrderSearch, PatternPair, RectPair};
