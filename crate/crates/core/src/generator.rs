//! The six generators of the Schrödinger Lie algebra and their brackets.
//!
//! The algebra is spanned by `f, q, h, z, p, e` with non-zero brackets
//!
//! ```text
//! [h,e] = 2e   [h,p] = p    [h,f] = -2f   [e,q] = p   [e,f] = h
//! [p,f] = -q   [h,q] = -q   [p,q] = z
//! ```
//!
//! and all other brackets of basis elements zero; in particular `z` is
//! central and `e, f, h` span a copy of `sl(2)` acting on the Heisenberg
//! part spanned by `p, q, z`.
//!
//! The fixed generator order used for PBW monomials throughout the crate is
//! `q < f < p < e < h < z`.

use std::fmt;

use serde::{Serialize, Serializer};

/// A basis generator of the Schrödinger Lie algebra.
///
/// The declaration order is the PBW order `q < f < p < e < h < z`; the
/// derived `Ord` instance is relied on by the normal-form machinery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Q,
    F,
    P,
    E,
    H,
    Z,
}

impl Generator {
    /// All generators in PBW order.
    pub const ALL: [Generator; 6] = [
        Generator::Q,
        Generator::F,
        Generator::P,
        Generator::E,
        Generator::H,
        Generator::Z,
    ];

    /// Position in the PBW order (`q` is 0, `z` is 5).
    pub fn position(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            Generator::Q => 'q',
            Generator::F => 'f',
            Generator::P => 'p',
            Generator::E => 'e',
            Generator::H => 'h',
            Generator::Z => 'z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'q' => Some(Generator::Q),
            'f' => Some(Generator::F),
            'p' => Some(Generator::P),
            'e' => Some(Generator::E),
            'h' => Some(Generator::H),
            'z' => Some(Generator::Z),
            _ => None,
        }
    }

    /// How the generator shifts `h`-weights: it maps the weight space of
    /// weight `λ` into the one of weight `λ + weight_shift()`.
    pub fn weight_shift(self) -> i64 {
        match self {
            Generator::Q => -1,
            Generator::F => -2,
            Generator::P => 1,
            Generator::E => 2,
            Generator::H | Generator::Z => 0,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.symbol().to_string())
    }
}

/// `[a, b]` as an integer multiple of a single generator, or `None` when the
/// bracket vanishes.  Every bracket of two basis generators in this algebra
/// is of that shape.
pub(crate) fn bracket_term(a: Generator, b: Generator) -> Option<(i64, Generator)> {
    use Generator::*;
    match (a, b) {
        (H, E) => Some((2, E)),
        (E, H) => Some((-2, E)),
        (H, P) => Some((1, P)),
        (P, H) => Some((-1, P)),
        (H, F) => Some((-2, F)),
        (F, H) => Some((2, F)),
        (E, Q) => Some((1, P)),
        (Q, E) => Some((-1, P)),
        (E, F) => Some((1, H)),
        (F, E) => Some((-1, H)),
        (P, F) => Some((-1, Q)),
        (F, P) => Some((1, Q)),
        (H, Q) => Some((-1, Q)),
        (Q, H) => Some((1, Q)),
        (P, Q) => Some((1, Z)),
        (Q, P) => Some((-1, Z)),
        _ => None,
    }
}
