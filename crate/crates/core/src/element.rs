//! PBW normal forms in the enveloping algebra and its Ore localizations.
//!
//! Elements are finite rational linear combinations of ordered monomials
//! `q^{i1} f^{i2} p^{i3} e^{i4} h^{i5} z^{i6}`.  In the plain enveloping
//! algebra all exponents are non-negative; the two Ore localizations invert
//! the multiplicative set generated by `q` (resp. `f`), so exactly that one
//! generator may carry negative exponents.
//!
//! Products are computed by a confluent rewriting procedure that swaps one
//! adjacent out-of-order pair of generator powers at a time:
//!
//! * `a·b = b·a + [a,b]` for plain powers, and
//! * `s·u⁻¹ = u⁻¹·s − u⁻¹·[s,u]·u⁻¹` across an inverted generator `u`,
//!
//! iterated to a fixed point.  Termination is guaranteed because every
//! bracket lowers the filtration degree and because `ad_u` is nilpotent on
//! generators for `u ∈ {q, f}`; soundness (independence of rewriting order)
//! is exercised by the randomized property suite rather than assumed.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::generator::{bracket_term, Generator};
use crate::scalar::Scalar;

/// Which multiplicative set, if any, has been inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LocalizationMode {
    /// The plain enveloping algebra; all exponents non-negative.
    None,
    /// Localization at the powers of `q`.
    AtQ,
    /// Localization at the powers of `f`.
    AtF,
}

impl LocalizationMode {
    /// The generator whose powers are inverted, if any.
    pub fn localized(self) -> Option<Generator> {
        match self {
            LocalizationMode::None => None,
            LocalizationMode::AtQ => Some(Generator::Q),
            LocalizationMode::AtF => Some(Generator::F),
        }
    }

    /// True when `g^e` is a legal monomial factor in this mode.
    pub fn allows(self, g: Generator, e: i64) -> bool {
        e >= 0 || self.localized() == Some(g)
    }

    pub fn name(self) -> &'static str {
        match self {
            LocalizationMode::None => "none",
            LocalizationMode::AtQ => "at_q",
            LocalizationMode::AtF => "at_f",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "none" => Some(LocalizationMode::None),
            "at_q" => Some(LocalizationMode::AtQ),
            "at_f" => Some(LocalizationMode::AtF),
            _ => None,
        }
    }
}

impl fmt::Display for LocalizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An ordered monomial `q^{i1} f^{i2} p^{i3} e^{i4} h^{i5} z^{i6}`.
///
/// Exponents are keyed by [`Generator`] in PBW order.  Monomials are ordered
/// by graded lexicographic comparison of the exponent tuple (total degree
/// first, then the tuple itself), which is also the printing order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PbwMonomial {
    exps: [i64; 6],
}

impl PbwMonomial {
    /// The empty monomial `1`.
    pub fn unit() -> Self {
        PbwMonomial { exps: [0; 6] }
    }

    /// The monomial consisting of a single generator.
    pub fn generator(g: Generator) -> Self {
        Self::power(g, 1)
    }

    /// `g^e`.
    pub fn power(g: Generator, e: i64) -> Self {
        let mut exps = [0; 6];
        exps[g.position()] = e;
        PbwMonomial { exps }
    }

    /// Monomial with the given exponents in PBW order `(q, f, p, e, h, z)`.
    pub fn from_exponents(exps: [i64; 6]) -> Self {
        PbwMonomial { exps }
    }

    pub fn exponent(&self, g: Generator) -> i64 {
        self.exps[g.position()]
    }

    pub fn exponents(&self) -> [i64; 6] {
        self.exps
    }

    /// Sum of all exponents (negative exponents count negatively).
    pub fn degree(&self) -> i64 {
        self.exps.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// The monomial as a word of `(generator, exponent)` factors in PBW
    /// order, skipping zero exponents.
    pub fn to_word(self) -> Vec<(Generator, i64)> {
        Generator::ALL
            .iter()
            .filter_map(|&g| {
                let e = self.exponent(g);
                (e != 0).then_some((g, e))
            })
            .collect()
    }

    /// How this monomial shifts `h`-weights when acting on a weight vector.
    pub fn weight_shift(&self) -> i64 {
        Generator::ALL
            .iter()
            .map(|&g| g.weight_shift() * self.exponent(g))
            .sum()
    }
}

impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.exps).cmp(&(other.degree(), other.exps))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Word = Vec<(Generator, i64)>;

/// Append `g^e` to a word, merging with an equal trailing generator and
/// dropping zero exponents.
fn push_merged(word: &mut Word, g: Generator, e: i64) {
    if e == 0 {
        return;
    }
    if let Some(last) = word.last_mut() {
        if last.0 == g {
            last.1 += e;
            if last.1 == 0 {
                word.pop();
            }
            return;
        }
    }
    word.push((g, e));
}

fn merged_word(parts: impl IntoIterator<Item = (Generator, i64)>) -> Word {
    let mut w = Word::new();
    for (g, e) in parts {
        push_merged(&mut w, g, e);
    }
    w
}

fn add_term(terms: &mut BTreeMap<PbwMonomial, Scalar>, mono: PbwMonomial, coeff: Scalar) {
    if coeff.is_zero() {
        return;
    }
    let entry = terms.entry(mono).or_insert_with(Scalar::zero);
    *entry += coeff;
    if entry.is_zero() {
        terms.remove(&mono);
    }
}

/// Rewrite `coeff · word` into PBW normal form, accumulating into `terms`.
///
/// Invariant maintained by the worklist: words are merged (no adjacent equal
/// generators, no zero exponents) and negative exponents only ever occur on
/// the localized generator of `mode`.
fn straighten(mode: LocalizationMode, word: Word, coeff: Scalar, terms: &mut BTreeMap<PbwMonomial, Scalar>) {
    let mut queue: Vec<(Scalar, Word)> = vec![(coeff, word)];
    while let Some((c, w)) = queue.pop() {
        // Find the leftmost adjacent pair that is out of PBW order.
        let inversion = (0..w.len().saturating_sub(1))
            .find(|&k| w[k].0.position() > w[k + 1].0.position());
        let Some(k) = inversion else {
            let mut exps = [0i64; 6];
            for &(g, e) in &w {
                debug_assert!(mode.allows(g, e), "illegal exponent materialized");
                exps[g.position()] += e;
            }
            add_term(terms, PbwMonomial::from_exponents(exps), c);
            continue;
        };

        let (a, m) = w[k];
        let (b, n) = w[k + 1];
        let prefix = w[..k].iter().copied();
        let suffix = w[k + 2..].iter().copied();
        let rebuild = |mid: Vec<(Generator, i64)>| {
            merged_word(prefix.clone().chain(mid).chain(suffix.clone()))
        };

        match (m > 0, n > 0) {
            (true, true) => {
                // a^m b^n = a^{m-1} (b a) b^{n-1} + a^{m-1} [a,b] b^{n-1}
                queue.push((c.clone(), rebuild(vec![(a, m - 1), (b, 1), (a, 1), (b, n - 1)])));
                if let Some((cf, g)) = bracket_term(a, b) {
                    queue.push((c * Scalar::from_int(cf), rebuild(vec![(a, m - 1), (g, 1), (b, n - 1)])));
                }
            }
            (true, false) => {
                // b is the inverted generator u with n < 0:
                // a^m u^n = a^{m-1} u^{-1} a u^{n+1} − a^{m-1} u^{-1} [a,u] u^{n}
                queue.push((c.clone(), rebuild(vec![(a, m - 1), (b, -1), (a, 1), (b, n + 1)])));
                if let Some((cf, g)) = bracket_term(a, b) {
                    queue.push((-(c * Scalar::from_int(cf)), rebuild(vec![(a, m - 1), (b, -1), (g, 1), (b, n)])));
                }
            }
            (false, true) => {
                // a is the inverted generator u with m < 0:
                // u^m b^n = u^{m+1} b u^{-1} b^{n-1} − u^{m} [u,b] u^{-1} b^{n-1}
                queue.push((c.clone(), rebuild(vec![(a, m + 1), (b, 1), (a, -1), (b, n - 1)])));
                if let Some((cf, g)) = bracket_term(a, b) {
                    queue.push((-(c * Scalar::from_int(cf)), rebuild(vec![(a, m), (g, 1), (a, -1), (b, n - 1)])));
                }
            }
            (false, false) => {
                unreachable!("only one generator can be inverted, so two negative powers never collide")
            }
        }
    }
}

/// Straighten a word of generator powers into PBW normal form.
///
/// The word is read left to right as a product.  Negative exponents are
/// rejected unless they sit on the generator inverted by `mode`.
pub fn normalize(word: &[(Generator, i64)], mode: LocalizationMode) -> Result<AlgebraElement> {
    for &(g, e) in word {
        if !mode.allows(g, e) {
            return Err(Error::IllegalNegativeExponent {
                generator: g,
                exponent: e,
                mode,
            });
        }
    }
    let mut terms = BTreeMap::new();
    straighten(mode, merged_word(word.iter().copied()), Scalar::one(), &mut terms);
    Ok(AlgebraElement { mode, terms })
}

/// The bracket `[a, b]` of two generators as a normal-form element of the
/// plain enveloping algebra.
pub fn bracket_table(a: Generator, b: Generator) -> AlgebraElement {
    let mut el = AlgebraElement::zero(LocalizationMode::None);
    if let Some((cf, g)) = bracket_term(a, b) {
        add_term(&mut el.terms, PbwMonomial::generator(g), Scalar::from_int(cf));
    }
    el
}

/// Default iteration cap for [`ad_nilpotency_index`].
pub const DEFAULT_AD_CAP: u32 = 64;

/// The smallest `n ≥ 0` with `ad_s^n(target) = 0`, i.e. the length of the
/// chain `target, [s,target], [s,[s,target]], …` until it vanishes.
///
/// `ad_s` is locally nilpotent for `s ∈ {p, q, e, f}`, so the index is
/// finite whenever `s` is one of those; for `s ∈ {h, z}` and a target that
/// `ad_s` rescales the iteration cannot vanish and the cap fires.
pub fn ad_nilpotency_index(s: Generator, target: &AlgebraElement) -> Result<u32> {
    ad_nilpotency_index_with_cap(s, target, DEFAULT_AD_CAP)
}

/// [`ad_nilpotency_index`] with an explicit iteration cap (diagnostic only;
/// exceeding it reports [`Error::NotNilpotent`]).
pub fn ad_nilpotency_index_with_cap(s: Generator, target: &AlgebraElement, cap: u32) -> Result<u32> {
    let s_el = AlgebraElement::generator(s, target.mode());
    let mut current = target.clone();
    let mut n = 0u32;
    while !current.is_zero() {
        if n >= cap {
            return Err(Error::NotNilpotent { generator: s, cap });
        }
        current = s_el.bracket(&current)?;
        n += 1;
    }
    Ok(n)
}

/// A finite rational linear combination of PBW monomials, together with the
/// localization it lives in.
///
/// Terms are kept in a sorted map with non-zero coefficients, so structural
/// equality is exact equality in the algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    mode: LocalizationMode,
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero(mode: LocalizationMode) -> Self {
        AlgebraElement {
            mode,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit.
    pub fn one(mode: LocalizationMode) -> Self {
        Self::constant(Scalar::one(), mode)
    }

    /// A constant multiple of the unit monomial.
    pub fn constant(c: Scalar, mode: LocalizationMode) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, PbwMonomial::unit(), c);
        AlgebraElement { mode, terms }
    }

    /// A single generator.
    pub fn generator(g: Generator, mode: LocalizationMode) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, PbwMonomial::generator(g), Scalar::one());
        AlgebraElement { mode, terms }
    }

    /// The monomial `g^e`; `e` may be negative only on the localized
    /// generator of `mode`.
    pub fn generator_power(g: Generator, e: i64, mode: LocalizationMode) -> Result<Self> {
        Self::monomial(PbwMonomial::power(g, e), mode)
    }

    /// A single monomial with coefficient 1.
    pub fn monomial(mono: PbwMonomial, mode: LocalizationMode) -> Result<Self> {
        for g in Generator::ALL {
            if !mode.allows(g, mono.exponent(g)) {
                return Err(Error::IllegalNegativeExponent {
                    generator: g,
                    exponent: mono.exponent(g),
                    mode,
                });
            }
        }
        let mut terms = BTreeMap::new();
        add_term(&mut terms, mono, Scalar::one());
        Ok(AlgebraElement { mode, terms })
    }

    /// Build an element from explicit `(monomial, coefficient)` terms.
    pub fn from_terms(mode: LocalizationMode, parts: Vec<(PbwMonomial, Scalar)>) -> Result<Self> {
        let mut el = AlgebraElement::zero(mode);
        for (mono, c) in parts {
            for g in Generator::ALL {
                if !mode.allows(g, mono.exponent(g)) {
                    return Err(Error::IllegalNegativeExponent {
                        generator: g,
                        exponent: mono.exponent(g),
                        mode,
                    });
                }
            }
            add_term(&mut el.terms, mono, c);
        }
        Ok(el)
    }

    pub fn mode(&self) -> LocalizationMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomials with non-zero coefficient.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order of the monomials.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PbwMonomial, &Scalar)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coefficient(&self, mono: &PbwMonomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Re-tag the element in another localization.  Embedding the plain
    /// algebra into a localization always succeeds; leaving a localization
    /// requires that no negative exponent is present.
    pub fn into_mode(self, mode: LocalizationMode) -> Result<Self> {
        if mode == self.mode {
            return Ok(self);
        }
        for (mono, _) in self.terms.iter() {
            for g in Generator::ALL {
                if !mode.allows(g, mono.exponent(g)) {
                    return Err(Error::IllegalNegativeExponent {
                        generator: g,
                        exponent: mono.exponent(g),
                        mode,
                    });
                }
            }
        }
        Ok(AlgebraElement {
            mode,
            terms: self.terms,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return AlgebraElement::zero(self.mode);
        }
        AlgebraElement {
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v * c))
                .collect(),
        }
    }

    fn assert_same_mode(&self, other: &Self) {
        assert_eq!(
            self.mode, other.mode,
            "cannot combine elements from different localizations"
        );
    }

    /// The product in the (localized) enveloping algebra, straightened into
    /// PBW normal form.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: other.mode,
            });
        }
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            let w1 = m1.to_word();
            for (m2, c2) in &other.terms {
                let word = merged_word(w1.iter().copied().chain(m2.to_word()));
                straighten(self.mode, word, c1 * c2, &mut terms);
            }
        }
        Ok(AlgebraElement {
            mode: self.mode,
            terms,
        })
    }

    /// The commutator `[self, other] = self·other − other·self`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        Ok(self.multiply(other)? - other.multiply(self)?)
    }

    /// `self^k` for `k ≥ 0`.
    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = AlgebraElement::one(self.mode);
        for _ in 0..k {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        self.assert_same_mode(&rhs);
        let mut terms = self.terms;
        for (m, c) in rhs.terms {
            add_term(&mut terms, m, c);
        }
        AlgebraElement {
            mode: self.mode,
            terms,
        }
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        self.assert_same_mode(&rhs);
        let mut terms = self.terms;
        for (m, c) in rhs.terms {
            add_term(&mut terms, m, -c);
        }
        AlgebraElement {
            mode: self.mode,
            terms,
        }
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            mode: self.mode,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}
