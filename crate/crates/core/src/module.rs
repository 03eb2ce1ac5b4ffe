//! The explicit weight-module families and their twists.
//!
//! Three families are realized intensionally (actions are evaluated from
//! closed formulas on basis indices; no matrices are stored):
//!
//! * `M(λ, c)` for `λ ∉ −1/2 + ℕ`, `c ≠ 0`: basis `v_{i,j}` with
//!   `i, j ≥ 0`;
//! * `N(λ, c)` for `λ ∈ −1/2 + ℕ`, `c ≠ 0`: basis `v_{i,j}` with `i ≥ 0`
//!   and `0 ≤ j ≤ λ + 1/2`, where the top row is folded back by a binomial
//!   formula for the `f`-action;
//! * `B_x(N(λ, c))`: the same rows with `i` ranging over all of `ℤ` and
//!   every occurrence of `i` in a coefficient replaced by `i + x`.
//!
//! On top of these, [`twist_module`] forms the *generic* twist of any base
//! module by a twisting automorphism: generators act through their `Θ_x`
//! images, with negative powers of the twisting generator realized by exact
//! per-weight-space linear solves (cached per weight).  The identity
//! `B_x ≅ twist by x of B_0` is a theorem about these constructions and is
//! enforced by the verification suite, not assumed anywhere.
//!
//! All basis vectors are `h`-eigenvectors; every generator action is weight
//! homogeneous, which is what makes the per-weight-space machinery exact.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::element::{AlgebraElement, PbwMonomial};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::linalg::{invert, Matrix};
use crate::scalar::{binomial, Scalar};
use crate::twist::{TwistGenerator, TwistSpec};

/// An inclusive range of `i`-indices delimiting a finite slab of a module.
///
/// Module actions themselves are always exact and unwindowed; windows only
/// bound which basis vectors a verification pass enumerates.  For the
/// `M(λ, c)` family (whose indices live in `ℕ²`) the upper bound acts as a
/// depth bound on `i + 2j` and the lower bound is ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    i_min: i64,
    i_max: i64,
}

impl Window {
    /// The default window `[-8, 8]` used by command-line verification.
    pub const DEFAULT: Window = Window { i_min: -8, i_max: 8 };

    /// Panics if `i_min > i_max`.
    pub fn new(i_min: i64, i_max: i64) -> Self {
        assert!(i_min <= i_max, "window bounds out of order");
        Window { i_min, i_max }
    }

    pub fn i_min(&self) -> i64 {
        self.i_min
    }

    pub fn i_max(&self) -> i64 {
        self.i_max
    }

    pub fn contains(&self, i: i64) -> bool {
        self.i_min <= i && i <= self.i_max
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.i_min..=self.i_max
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.i_min, self.i_max)
    }
}

/// Position of a basis vector `v_{i,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisIndex {
    pub i: i64,
    pub j: i64,
}

impl BasisIndex {
    pub fn new(i: i64, j: i64) -> Self {
        BasisIndex { i, j }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// A finite rational linear combination of basis vectors of one module.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModuleVector {
    terms: BTreeMap<BasisIndex, Scalar>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector::default()
    }

    pub fn basis(idx: BasisIndex) -> Self {
        let mut v = ModuleVector::zero();
        v.add_term(idx, Scalar::one());
        v
    }

    pub fn from_terms(parts: impl IntoIterator<Item = (BasisIndex, Scalar)>) -> Self {
        let mut v = ModuleVector::zero();
        for (idx, c) in parts {
            v.add_term(idx, c);
        }
        v
    }

    pub fn add_term(&mut self, idx: BasisIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BasisIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &BasisIndex) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return ModuleVector::zero();
        }
        ModuleVector {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Shift every index by `delta` in the `i` direction.
    pub fn shift_i(&self, delta: i64) -> Self {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (BasisIndex::new(k.i + delta, k.j), v.clone()))
                .collect(),
        }
    }
}

impl std::ops::Add for ModuleVector {
    type Output = ModuleVector;
    fn add(mut self, rhs: ModuleVector) -> ModuleVector {
        for (idx, c) in rhs.terms {
            self.add_term(idx, c);
        }
        self
    }
}

impl std::ops::Sub for ModuleVector {
    type Output = ModuleVector;
    fn sub(mut self, rhs: ModuleVector) -> ModuleVector {
        for (idx, c) in rhs.terms {
            self.add_term(idx, -c);
        }
        self
    }
}

impl std::ops::Neg for ModuleVector {
    type Output = ModuleVector;
    fn neg(self) -> ModuleVector {
        ModuleVector {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

/// A deliberate single-sign corruption of the `p`-action.
///
/// This exists so verification suites can demonstrate *sensitivity*: a
/// checker that passes the true action tables must fail each mutant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionMutation {
    /// Flip the sign of the `−j·v_{i+1,j−1}` term of the `p`-action.
    FlipPShiftTerm,
    /// Flip the sign of the `c·(i+x)·v_{i−1,j}` term of the `p`-action.
    FlipPCentralTerm,
}

/// The defining data of a module: which family, and its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    /// `M(λ, c)`, `λ ∉ −1/2 + ℕ`, `c ≠ 0`; basis indexed by `ℕ²`.
    VermaQuotientM { lambda: Scalar, c: Scalar },
    /// `N(λ, c)`, `λ ∈ −1/2 + ℕ`, `c ≠ 0`; rows `0 ≤ j ≤ λ + 1/2`.
    TopRowN { lambda: Scalar, c: Scalar },
    /// `B_x(N(λ, c))`: rows as in `N`, columns over all of `ℤ`.
    TwistedBq { lambda: Scalar, c: Scalar, x: Scalar },
    /// A base module acted on through the twisting automorphism `Θ_x` in
    /// the direction `u`; requires `u` to act bijectively on the base.
    GenericTwist {
        base: Box<ModuleSpec>,
        u: TwistGenerator,
        x: Scalar,
    },
}

impl ModuleSpec {
    /// `M(λ, c)`.  Rejects `λ ∈ −1/2 + ℕ` (those parameters belong to the
    /// `N` family: the defining formulas of `M` stop being a module there)
    /// and `c = 0`.
    pub fn verma_quotient_m(lambda: Scalar, c: Scalar) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidModuleSpec(
                "central charge c must be non-zero".into(),
            ));
        }
        if lambda.is_half_odd_nonneg() {
            return Err(Error::InvalidModuleSpec(format!(
                "λ = {lambda} lies in −1/2 + ℕ; the M family is not defined there (use the N family)"
            )));
        }
        Ok(ModuleSpec::VermaQuotientM { lambda, c })
    }

    /// `N(λ, c)`.  Requires `λ ∈ −1/2 + ℕ` (so the row count `λ + 3/2` and
    /// top row `λ + 1/2` are integers) and `c ≠ 0`.
    pub fn top_row_n(lambda: Scalar, c: Scalar) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidModuleSpec(
                "central charge c must be non-zero".into(),
            ));
        }
        if !lambda.is_half_odd_nonneg() {
            return Err(Error::InvalidModuleSpec(format!(
                "λ = {lambda} is not in −1/2 + ℕ; the N family requires a half-odd λ ≥ −1/2"
            )));
        }
        Ok(ModuleSpec::TopRowN { lambda, c })
    }

    /// `B_x(N(λ, c))` for any rational `x`.  The canonical representative
    /// of its isomorphism class has `x ∈ [0, 1)`; see [`ModuleSpec::canonicalize`].
    pub fn twisted_bq(lambda: Scalar, c: Scalar, x: Scalar) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidModuleSpec(
                "central charge c must be non-zero".into(),
            ));
        }
        if !lambda.is_half_odd_nonneg() {
            return Err(Error::InvalidModuleSpec(format!(
                "λ = {lambda} is not in −1/2 + ℕ; the B family twists N(λ, c)"
            )));
        }
        Ok(ModuleSpec::TwistedBq { lambda, c, x })
    }

    /// The generic twist of `base` by `Θ_x` in direction `u`.  Whether `u`
    /// really acts bijectively on the base is checked lazily: a failed
    /// per-weight-space solve surfaces as [`Error::SingularAction`].
    pub fn generic_twist(base: ModuleSpec, u: TwistGenerator, x: Scalar) -> Self {
        ModuleSpec::GenericTwist {
            base: Box::new(base),
            u,
            x,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            ModuleSpec::VermaQuotientM { .. } => "VermaQuotientM",
            ModuleSpec::TopRowN { .. } => "TopRowN",
            ModuleSpec::TwistedBq { .. } => "TwistedB_q",
            ModuleSpec::GenericTwist { .. } => "GenericTwist",
        }
    }

    /// The highest-weight parameter of the underlying family.
    pub fn lambda(&self) -> &Scalar {
        match self {
            ModuleSpec::VermaQuotientM { lambda, .. }
            | ModuleSpec::TopRowN { lambda, .. }
            | ModuleSpec::TwistedBq { lambda, .. } => lambda,
            ModuleSpec::GenericTwist { base, .. } => base.lambda(),
        }
    }

    /// The central charge: the scalar by which `z` acts (twists fix `z`).
    pub fn central_charge(&self) -> &Scalar {
        match self {
            ModuleSpec::VermaQuotientM { c, .. }
            | ModuleSpec::TopRowN { c, .. }
            | ModuleSpec::TwistedBq { c, .. } => c,
            ModuleSpec::GenericTwist { base, .. } => base.central_charge(),
        }
    }

    /// The twist parameter used for reporting: `x` for `B_x` and generic
    /// twists, `0` for the untwisted families.
    pub fn report_x(&self) -> Scalar {
        match self {
            ModuleSpec::VermaQuotientM { .. } | ModuleSpec::TopRowN { .. } => Scalar::zero(),
            ModuleSpec::TwistedBq { x, .. } => x.clone(),
            ModuleSpec::GenericTwist { x, .. } => x.clone(),
        }
    }

    /// The top row index `m = λ + 1/2` for the row-truncated families.
    pub fn top_row(&self) -> Option<i64> {
        match self {
            ModuleSpec::VermaQuotientM { .. } => None,
            ModuleSpec::TopRowN { lambda, .. } | ModuleSpec::TwistedBq { lambda, .. } => {
                (lambda.clone() + Scalar::new(1, 2)).to_i64()
            }
            ModuleSpec::GenericTwist { base, .. } => base.top_row(),
        }
    }

    /// True when `v_{i,j}` is a basis vector of this module.
    pub fn in_domain(&self, idx: BasisIndex) -> bool {
        match self {
            ModuleSpec::VermaQuotientM { .. } => idx.i >= 0 && idx.j >= 0,
            ModuleSpec::TopRowN { .. } => {
                idx.i >= 0 && idx.j >= 0 && idx.j <= self.top_row().expect("validated")
            }
            ModuleSpec::TwistedBq { .. } => {
                idx.j >= 0 && idx.j <= self.top_row().expect("validated")
            }
            ModuleSpec::GenericTwist { base, .. } => base.in_domain(idx),
        }
    }

    /// The `h`-eigenvalue of the basis vector `v_{i,j}`.
    pub fn weight_of(&self, idx: BasisIndex) -> Scalar {
        match self {
            ModuleSpec::VermaQuotientM { lambda, .. } | ModuleSpec::TopRowN { lambda, .. } => {
                lambda.clone() - Scalar::from_int(idx.i + 2 * idx.j)
            }
            ModuleSpec::TwistedBq { lambda, x, .. } => {
                lambda.clone() - x.clone() - Scalar::from_int(idx.i + 2 * idx.j)
            }
            ModuleSpec::GenericTwist { base, u, x } => {
                // Twisting by Θ_x shifts every weight by −x (direction q)
                // or −2x (direction f), because Θ_x(h) = h − x resp. h − 2x.
                let shift = match u {
                    TwistGenerator::Q => x.clone(),
                    TwistGenerator::F => Scalar::from_int(2) * x,
                };
                base.weight_of(idx) - shift
            }
        }
    }

    /// All basis indices of the exact weight space of `weight`, in index
    /// order.  Weight spaces of every family here are finite, so no window
    /// is needed.
    pub fn weight_space(&self, weight: &Scalar) -> Vec<BasisIndex> {
        let mut out = match self {
            ModuleSpec::VermaQuotientM { lambda, .. } => {
                let n = lambda.clone() - weight.clone();
                match n.to_i64() {
                    Some(n) if n >= 0 => (0..=n / 2)
                        .map(|j| BasisIndex::new(n - 2 * j, j))
                        .collect(),
                    _ => Vec::new(),
                }
            }
            ModuleSpec::TopRowN { lambda, .. } => {
                let m = self.top_row().expect("validated");
                let n = lambda.clone() - weight.clone();
                match n.to_i64() {
                    Some(n) if n >= 0 => (0..=(n / 2).min(m))
                        .map(|j| BasisIndex::new(n - 2 * j, j))
                        .collect(),
                    _ => Vec::new(),
                }
            }
            ModuleSpec::TwistedBq { lambda, x, .. } => {
                let m = self.top_row().expect("validated");
                let n = lambda.clone() - x.clone() - weight.clone();
                match n.to_i64() {
                    Some(n) => (0..=m).map(|j| BasisIndex::new(n - 2 * j, j)).collect(),
                    None => Vec::new(),
                }
            }
            ModuleSpec::GenericTwist { base, u, x } => {
                let shift = match u {
                    TwistGenerator::Q => x.clone(),
                    TwistGenerator::F => Scalar::from_int(2) * x,
                };
                base.weight_space(&(weight.clone() + shift))
            }
        };
        out.sort();
        out
    }

    /// All basis indices inside the window, in index order.  For the
    /// `M` family the window's upper bound is read as a depth bound on
    /// `i + 2j`.
    pub fn enumerate(&self, window: Window) -> Vec<BasisIndex> {
        match self {
            ModuleSpec::VermaQuotientM { .. } => {
                let depth = window.i_max().max(0);
                let mut out = Vec::new();
                for i in 0..=depth {
                    for j in 0..=(depth - i) / 2 {
                        out.push(BasisIndex::new(i, j));
                    }
                }
                out
            }
            ModuleSpec::TopRowN { .. } => {
                let m = self.top_row().expect("validated");
                let lo = window.i_min().max(0);
                (lo..=window.i_max())
                    .flat_map(|i| (0..=m).map(move |j| BasisIndex::new(i, j)))
                    .collect()
            }
            ModuleSpec::TwistedBq { .. } => {
                let m = self.top_row().expect("validated");
                window
                    .iter()
                    .flat_map(|i| (0..=m).map(move |j| BasisIndex::new(i, j)))
                    .collect()
            }
            ModuleSpec::GenericTwist { base, .. } => base.enumerate(window),
        }
    }

    /// For `B_x`: the representative with twist parameter in `[0, 1)` and
    /// the integer shift that carries this module onto it.  The
    /// representative with `x' = 0` is the non-simple boundary point (it
    /// contains `N(λ, c)` as a submodule).
    pub fn canonicalize(&self) -> Result<(ModuleSpec, i64)> {
        match self {
            ModuleSpec::TwistedBq { lambda, c, x } => {
                let floor = x.floor();
                let shift = floor.to_i64().expect("floor of a rational fits i64");
                let canonical =
                    ModuleSpec::twisted_bq(lambda.clone(), c.clone(), x.clone() - floor)?;
                Ok((canonical, shift))
            }
            other => Err(Error::InvalidModuleSpec(format!(
                "canonical form is defined for the TwistedB_q family, not {}",
                other.family_name()
            ))),
        }
    }
}

/// Cached exact inverse of one generator on one weight space.
struct InverseSolve {
    /// Basis of the preimage weight space.
    source: Vec<BasisIndex>,
    /// Basis of the image weight space (coordinates of the input vector).
    target: Vec<BasisIndex>,
    inverse: Matrix,
}

struct TwistData {
    base: Box<Module>,
    u: TwistGenerator,
    /// `Θ_x` images of the six generators, in PBW normal form.
    images: Vec<AlgebraElement>,
}

/// A module ready to act: the family parameters plus the caches that make repeated
/// evaluation cheap.  Safe to share across threads; the inverse-solve cache
/// is internally synchronized.
pub struct Module {
    spec: ModuleSpec,
    mutation: Option<ActionMutation>,
    twist: Option<TwistData>,
    inverse_cache: Mutex<BTreeMap<(Generator, Scalar), Arc<InverseSolve>>>,
}

impl Module {
    pub fn new(spec: ModuleSpec) -> Self {
        let twist = match &spec {
            ModuleSpec::GenericTwist { base, u, x } => {
                let t = TwistSpec::new(*u, x.clone());
                Some(TwistData {
                    base: Box::new(Module::new((**base).clone())),
                    u: *u,
                    images: Generator::ALL
                        .iter()
                        .map(|&g| t.generator_image(g))
                        .collect(),
                })
            }
            _ => None,
        };
        Module {
            spec,
            mutation: None,
            twist,
            inverse_cache: Mutex::new(BTreeMap::new()),
        }
    }

    /// Corrupt the `p`-action of the innermost direct family (a test hook
    /// for demonstrating checker sensitivity; see [`ActionMutation`]).
    pub fn with_mutation(mut self, mutation: ActionMutation) -> Self {
        match self.twist {
            Some(twist_data) => {
                let base = (*twist_data.base).spec().clone();
                let mutated = Module::new(base).with_mutation(mutation);
                self.twist = Some(TwistData {
                    base: Box::new(mutated),
                    u: twist_data.u,
                    images: twist_data.images,
                });
            }
            None => self.mutation = Some(mutation),
        }
        self
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    /// Action of a single generator on a basis vector.
    ///
    /// Panics if the index is outside the module's domain.
    pub fn act_basis(&self, g: Generator, idx: BasisIndex) -> Result<ModuleVector> {
        assert!(
            self.spec.in_domain(idx),
            "basis index {idx} outside the domain of {}",
            self.spec.family_name()
        );
        if let Some(twist) = &self.twist {
            let image = twist.images[g.position()].clone();
            return twist.base.act_inverting(&image, &ModuleVector::basis(idx), twist.u);
        }

        let (lambda, c, x) = match &self.spec {
            ModuleSpec::VermaQuotientM { lambda, c } | ModuleSpec::TopRowN { lambda, c } => {
                (lambda.clone(), c.clone(), Scalar::zero())
            }
            ModuleSpec::TwistedBq { lambda, c, x } => (lambda.clone(), c.clone(), x.clone()),
            ModuleSpec::GenericTwist { .. } => unreachable!("handled above"),
        };
        let (i, j) = (idx.i, idx.j);
        // Every occurrence of the column index in a coefficient is `i + x`.
        let ix = Scalar::from_int(i) + x;
        let mut out = ModuleVector::zero();
        match g {
            Generator::Q => out.add_term(BasisIndex::new(i + 1, j), Scalar::one()),
            Generator::Z => out.add_term(idx, c),
            Generator::H => {
                out.add_term(idx, lambda - ix - Scalar::from_int(2 * j));
            }
            Generator::F => match self.spec.top_row() {
                Some(m) if j == m => {
                    // Top row: f folds back along the binomial formula
                    //   f·v_{i,m} = −Σ_{s=0}^{m} (2c)^{s−m−1}·C(m+1, s)·v_{i+2m+2−2s, s}.
                    let two_c = Scalar::from_int(2) * &c;
                    for s in 0..=m {
                        let coeff = -(binomial(m + 1, s)
                            * two_c.pow(-((m + 1 - s) as i32)));
                        out.add_term(BasisIndex::new(i + 2 * m + 2 - 2 * s, s), coeff);
                    }
                }
                _ => out.add_term(BasisIndex::new(i, j + 1), Scalar::one()),
            },
            Generator::P => {
                let mut shift_coeff = Scalar::from_int(-j);
                let mut central_coeff = c * &ix;
                match self.mutation {
                    Some(ActionMutation::FlipPShiftTerm) => shift_coeff = -shift_coeff,
                    Some(ActionMutation::FlipPCentralTerm) => central_coeff = -central_coeff,
                    None => {}
                }
                out.add_term(BasisIndex::new(i + 1, j - 1), shift_coeff);
                out.add_term(BasisIndex::new(i - 1, j), central_coeff);
            }
            Generator::E => {
                let drop_row = Scalar::from_int(j)
                    * &(lambda + Scalar::one() - ix.clone() - Scalar::from_int(j));
                let central = Scalar::new(1, 2) * &c * &ix * &(ix.clone() - Scalar::one());
                out.add_term(BasisIndex::new(i, j - 1), drop_row);
                out.add_term(BasisIndex::new(i - 2, j), central);
            }
        }
        Ok(out)
    }

    /// Linear extension of [`Module::act_basis`].
    pub fn act_generator(&self, g: Generator, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (idx, coeff) in v.terms() {
            out = out + self.act_basis(g, *idx)?.scale(coeff);
        }
        Ok(out)
    }

    /// Action of an algebra element in PBW normal form.
    ///
    /// Monomials act right to left.  Negative exponents are allowed only
    /// for `q` in the `at_q` localization acting on the `B_x` family, where
    /// `q⁻¹` is the exact inverse index shift; other negative powers report
    /// [`Error::NonInvertibleAction`].
    pub fn act_element(&self, a: &AlgebraElement, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (mono, coeff) in a.terms() {
            out = out + self.act_monomial(mono, v)?.scale(coeff);
        }
        Ok(out)
    }

    fn act_monomial(&self, mono: &PbwMonomial, v: &ModuleVector) -> Result<ModuleVector> {
        let mut cur = v.clone();
        for &g in Generator::ALL.iter().rev() {
            let e = mono.exponent(g);
            if e == 0 {
                continue;
            }
            if e > 0 {
                for _ in 0..e {
                    cur = self.act_generator(g, &cur)?;
                }
            } else {
                let direct_shift = g == Generator::Q
                    && matches!(self.spec, ModuleSpec::TwistedBq { .. });
                if !direct_shift {
                    return Err(Error::NonInvertibleAction { generator: g });
                }
                // q acts as the shift i ↦ i+1 with coefficient 1, so its
                // inverse is the opposite shift.
                cur = cur.shift_i(e);
            }
        }
        Ok(cur)
    }

    /// Split a vector into its weight-homogeneous components.
    pub fn split_by_weight(&self, v: &ModuleVector) -> BTreeMap<Scalar, ModuleVector> {
        let mut out: BTreeMap<Scalar, ModuleVector> = BTreeMap::new();
        for (idx, c) in v.terms() {
            out.entry(self.spec.weight_of(*idx))
                .or_insert_with(ModuleVector::zero)
                .add_term(*idx, c.clone());
        }
        out
    }

    /// Exact preimage of `w` under the action of `u ∈ {q, f}`.
    ///
    /// `w` must be supported on a single weight space, whose preimage space
    /// must lie inside `window`; the solve itself is windowless and exact.
    /// Reports [`Error::SingularAction`] when `u` is not bijective between
    /// the two weight spaces.
    pub fn invert_generator_on_weight_space(
        &self,
        u: Generator,
        w: &ModuleVector,
        window: Window,
    ) -> Result<ModuleVector> {
        assert!(
            matches!(u, Generator::Q | Generator::F),
            "only q and f are ever inverted"
        );
        if w.is_zero() {
            return Ok(ModuleVector::zero());
        }
        let split = self.split_by_weight(w);
        assert!(
            split.len() == 1,
            "invert_generator_on_weight_space needs a weight-homogeneous input"
        );
        let (weight, component) = split.into_iter().next().expect("non-empty");
        let source_weight = weight.clone() - Scalar::from_int(u.weight_shift());
        for idx in self.spec.weight_space(&source_weight) {
            if !window.contains(idx.i) {
                return Err(Error::WindowTooSmall {
                    window,
                    reason: format!(
                        "preimage weight space of weight {source_weight} needs index {idx}"
                    ),
                });
            }
        }
        self.invert_u(u, &component)
    }

    /// Per-weight-space inversion of `u`, cached by image weight.
    fn invert_u(&self, u: Generator, v: &ModuleVector) -> Result<ModuleVector> {
        if v.is_zero() {
            return Ok(ModuleVector::zero());
        }
        // Fast exact path: on B_x the q-action is the pure shift i ↦ i+1.
        if u == Generator::Q && matches!(self.spec, ModuleSpec::TwistedBq { .. }) {
            return Ok(v.shift_i(-1));
        }
        let mut out = ModuleVector::zero();
        for (weight, component) in self.split_by_weight(v) {
            let solve = self.inverse_solve_for(u, &weight)?;
            let coords: Vec<Scalar> = solve
                .target
                .iter()
                .map(|idx| component.coefficient(idx))
                .collect();
            let solution = solve.inverse.apply(&coords);
            for (k, idx) in solve.source.iter().enumerate() {
                out.add_term(*idx, solution[k].clone());
            }
        }
        Ok(out)
    }

    fn inverse_solve_for(&self, u: Generator, weight: &Scalar) -> Result<Arc<InverseSolve>> {
        let key = (u, weight.clone());
        if let Some(hit) = self.inverse_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let target = self.spec.weight_space(weight);
        let source_weight = weight.clone() - Scalar::from_int(u.weight_shift());
        let source = self.spec.weight_space(&source_weight);
        if source.is_empty() || source.len() != target.len() {
            return Err(Error::SingularAction {
                generator: u,
                weight: weight.clone(),
            });
        }
        // Column k of the action matrix is u·(source basis vector k) in the
        // coordinates of the target weight space.
        let mut matrix = Matrix::zero(target.len(), source.len());
        for (k, src) in source.iter().enumerate() {
            let image = self.act_basis(u, *src)?;
            for (idx, c) in image.terms() {
                let row = target
                    .iter()
                    .position(|t| t == idx)
                    .expect("weight-homogeneous action stays in the weight space");
                *matrix.at_mut(row, k) = c.clone();
            }
        }
        let inverse = invert(&matrix).ok_or_else(|| Error::SingularAction {
            generator: u,
            weight: weight.clone(),
        })?;
        let solve = Arc::new(InverseSolve {
            source,
            target,
            inverse,
        });
        self.inverse_cache.lock().unwrap().insert(key, solve.clone());
        Ok(solve)
    }

    /// Act by an element of the localization at `u`, with negative powers
    /// of `u` realized through exact per-weight-space inversion on `self`.
    fn act_inverting(
        &self,
        a: &AlgebraElement,
        v: &ModuleVector,
        u: TwistGenerator,
    ) -> Result<ModuleVector> {
        let ug = u.generator();
        let mut out = ModuleVector::zero();
        for (mono, coeff) in a.terms() {
            let mut cur = v.clone();
            for &g in Generator::ALL.iter().rev() {
                let e = mono.exponent(g);
                if e == 0 {
                    continue;
                }
                if e > 0 {
                    for _ in 0..e {
                        cur = self.act_generator(g, &cur)?;
                    }
                } else {
                    debug_assert_eq!(g, ug, "negative power off the twisting direction");
                    for _ in 0..(-e) {
                        cur = self.invert_u(ug, &cur)?;
                    }
                }
                if cur.is_zero() {
                    break;
                }
            }
            out = out + cur.scale(coeff);
        }
        Ok(out)
    }
}

/// The twist of a module by the automorphism `Θ_x` in direction `u`: same
/// underlying space, with every generator acting through its `Θ_x` image.
pub fn twist_module(base: ModuleSpec, u: TwistGenerator, x: Scalar) -> ModuleSpec {
    ModuleSpec::generic_twist(base, u, x)
}

/// The index-shift intertwiner `v_{i,j} ↦ v_{i−n,j}` from `B_x(N(λ,c))` to
/// `B_{x+n}(N(λ,c))` for an integer `n`.
///
/// Every coefficient in the `B` action tables depends on `i` only through
/// `i + x`, which the simultaneous shift of `i` by `−n` and of `x` by `+n`
/// leaves unchanged; [`ShiftIsomorphism::verify_intertwining`] re-derives
/// that on a window rather than trusting it.
#[derive(Clone, Debug)]
pub struct ShiftIsomorphism {
    source: ModuleSpec,
    target: ModuleSpec,
    n: i64,
}

impl ShiftIsomorphism {
    /// Requires the source to be of the `B` family.
    pub fn new(source: &ModuleSpec, n: i64) -> Result<Self> {
        match source {
            ModuleSpec::TwistedBq { lambda, c, x } => {
                let target = ModuleSpec::twisted_bq(
                    lambda.clone(),
                    c.clone(),
                    x.clone() + Scalar::from_int(n),
                )?;
                Ok(ShiftIsomorphism {
                    source: source.clone(),
                    target,
                    n,
                })
            }
            other => Err(Error::InvalidModuleSpec(format!(
                "shift isomorphisms connect TwistedB_q modules, not {}",
                other.family_name()
            ))),
        }
    }

    pub fn shift(&self) -> i64 {
        self.n
    }

    pub fn source_spec(&self) -> &ModuleSpec {
        &self.source
    }

    pub fn target_spec(&self) -> &ModuleSpec {
        &self.target
    }

    /// Apply the intertwiner to a vector of the source module.
    pub fn apply(&self, v: &ModuleVector) -> ModuleVector {
        v.shift_i(-self.n)
    }

    /// Apply the inverse intertwiner to a vector of the target module.
    pub fn apply_inverse(&self, v: &ModuleVector) -> ModuleVector {
        v.shift_i(self.n)
    }

    /// Check `Φ(g·v) = g·Φ(v)` for every generator and every basis vector
    /// of the source window.  Returns the violating pairs (empty = pass).
    pub fn verify_intertwining(&self, window: Window) -> Result<Vec<(Generator, BasisIndex)>> {
        let source = Module::new(self.source.clone());
        let target = Module::new(self.target.clone());
        let mut defects = Vec::new();
        for idx in self.source.enumerate(window) {
            let v = ModuleVector::basis(idx);
            for g in Generator::ALL {
                let through = self.apply(&source.act_generator(g, &v)?);
                let around = target.act_generator(g, &self.apply(&v))?;
                if through != around {
                    defects.push((g, idx));
                }
            }
        }
        Ok(defects)
    }
}

/// Convenience constructor matching the mapping-object contract: the shift
/// intertwiner out of `spec` (a `B` module) onto its shift by `n`.
pub fn shift_isomorphism(spec: &ModuleSpec, n: i64) -> Result<ShiftIsomorphism> {
    ShiftIsomorphism::new(spec, n)
}
