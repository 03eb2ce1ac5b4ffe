//! The twisting automorphisms `Θ_x` of the localized enveloping algebras.
//!
//! For `u ∈ {q, f}` and a rational parameter `x`, `Θ_x` is the algebra
//! automorphism of the localization at `u` given on generators by
//!
//! * at `q`:  `q^{±1} ↦ q^{±1}`, `f ↦ f`, `z ↦ z`, `h ↦ h − x`,
//!   `p ↦ p + x·q⁻¹z`, `e ↦ e + x·q⁻¹p + ½x(x−1)·q⁻²z`;
//! * at `f`:  `q ↦ q`, `f^{±1} ↦ f^{±1}`, `z ↦ z`, `h ↦ h − 2x`,
//!   `p ↦ p − x·q·f⁻¹`, `e ↦ e + x·(h − 1 − x)·f⁻¹`.
//!
//! For natural-number `x` this is conjugation `g ↦ u^{−x}·g·u^{x}`, which
//! is the independent oracle the unit tests pin the formulas against.  That `Θ_x`
//! respects every bracket for *all* rational `x` is a polynomial identity in
//! `x` of degree at most 4 per generator pair (images are degree ≤ 2 in
//! `x`), so checking it at 5 or more distinct rational points certifies it
//! exactly; [`verify_theta_homomorphism`] does precisely that.

use std::fmt;

use serde::Serialize;

use crate::element::{AlgebraElement, LocalizationMode};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::scalar::Scalar;

/// The generator a localization inverts: the only legal twisting directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwistGenerator {
    Q,
    F,
}

impl TwistGenerator {
    pub fn generator(self) -> Generator {
        match self {
            TwistGenerator::Q => Generator::Q,
            TwistGenerator::F => Generator::F,
        }
    }

    pub fn mode(self) -> LocalizationMode {
        match self {
            TwistGenerator::Q => LocalizationMode::AtQ,
            TwistGenerator::F => LocalizationMode::AtF,
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "q" => Some(TwistGenerator::Q),
            "f" => Some(TwistGenerator::F),
            _ => None,
        }
    }
}

impl fmt::Display for TwistGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.generator())
    }
}

impl Serialize for TwistGenerator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A twisting automorphism: the direction `u` and the rational parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSpec {
    pub u: TwistGenerator,
    pub x: Scalar,
}

impl TwistSpec {
    pub fn new(u: TwistGenerator, x: Scalar) -> Self {
        TwistSpec { u, x }
    }

    /// The image of a single generator, in PBW normal form in the
    /// localization at `u`.
    pub fn generator_image(&self, g: Generator) -> AlgebraElement {
        let mode = self.u.mode();
        let x = &self.x;
        let gen = |g| AlgebraElement::generator(g, mode);
        let power = |g, e| AlgebraElement::generator_power(g, e, mode).expect("legal power");
        match (self.u, g) {
            // The localized generator, its partner, and the center are fixed.
            (_, Generator::Q) => gen(Generator::Q),
            (_, Generator::F) => gen(Generator::F),
            (_, Generator::Z) => gen(Generator::Z),

            (TwistGenerator::Q, Generator::H) => {
                gen(Generator::H) - AlgebraElement::constant(x.clone(), mode)
            }
            (TwistGenerator::Q, Generator::P) => {
                // p + x·q⁻¹z
                let tail = power(Generator::Q, -1)
                    .multiply(&gen(Generator::Z))
                    .expect("same mode");
                gen(Generator::P) + tail.scale(x)
            }
            (TwistGenerator::Q, Generator::E) => {
                // e + x·q⁻¹p + ½x(x−1)·q⁻²z
                let mid = power(Generator::Q, -1)
                    .multiply(&gen(Generator::P))
                    .expect("same mode");
                let tail = power(Generator::Q, -2)
                    .multiply(&gen(Generator::Z))
                    .expect("same mode");
                let half_xx1 = Scalar::new(1, 2) * x * &(x.clone() - Scalar::one());
                gen(Generator::E) + mid.scale(x) + tail.scale(&half_xx1)
            }

            (TwistGenerator::F, Generator::H) => {
                gen(Generator::H)
                    - AlgebraElement::constant(Scalar::from_int(2) * x, mode)
            }
            (TwistGenerator::F, Generator::P) => {
                // p − x·q·f⁻¹
                let tail = gen(Generator::Q)
                    .multiply(&power(Generator::F, -1))
                    .expect("same mode");
                gen(Generator::P) - tail.scale(x)
            }
            (TwistGenerator::F, Generator::E) => {
                // e + x·(h − 1 − x)·f⁻¹
                let shifted_h = gen(Generator::H)
                    - AlgebraElement::constant(Scalar::one() + x, mode);
                let tail = shifted_h
                    .multiply(&power(Generator::F, -1))
                    .expect("same mode");
                gen(Generator::E) + tail.scale(x)
            }
        }
    }

    /// Apply the automorphism to an element of the localization at `u`.
    ///
    /// Monomials are mapped to the ordered product of the generator images;
    /// negative powers only occur on `u` itself, whose image is again `u`.
    pub fn theta(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        let mode = self.u.mode();
        if a.mode() != mode {
            return Err(Error::ModeMismatch {
                left: mode,
                right: a.mode(),
            });
        }
        let images: Vec<AlgebraElement> =
            Generator::ALL.iter().map(|&g| self.generator_image(g)).collect();
        let mut out = AlgebraElement::zero(mode);
        for (mono, coeff) in a.terms() {
            let mut term = AlgebraElement::one(mode);
            for g in Generator::ALL {
                let e = mono.exponent(g);
                if e == 0 {
                    continue;
                }
                let factor = if e > 0 {
                    images[g.position()].pow(e as u32)?
                } else {
                    // Only the localized generator can be inverted, and it
                    // is fixed by the automorphism.
                    AlgebraElement::generator_power(g, e, mode)?
                };
                term = term.multiply(&factor)?;
            }
            out = out + term.scale(coeff);
        }
        Ok(out)
    }
}

/// Deterministic distinct rational sample points for polynomial-identity
/// certification: a fixed mixed list (integers and non-integers, positive
/// and negative), extended with fresh integers when more are requested.
pub fn sample_points(count: usize) -> Vec<Scalar> {
    let base = [
        Scalar::from_int(1),
        Scalar::new(1, 2),
        Scalar::new(-1, 2),
        Scalar::new(1, 3),
        Scalar::new(-2, 3),
        Scalar::new(7, 5),
    ];
    let mut out: Vec<Scalar> = base.iter().take(count).cloned().collect();
    let mut next = 2i64;
    while out.len() < count {
        out.push(Scalar::from_int(next));
        next += 1;
    }
    out
}

/// The generators of the localization at `u`: the six algebra generators
/// plus the inverse of `u`, with display names.
pub fn localized_generators(u: TwistGenerator) -> Vec<(String, AlgebraElement)> {
    let mode = u.mode();
    let mut gens: Vec<(String, AlgebraElement)> = Generator::ALL
        .iter()
        .map(|&g| (g.to_string(), AlgebraElement::generator(g, mode)))
        .collect();
    gens.push((
        format!("{}^-1", u.generator()),
        AlgebraElement::generator_power(u.generator(), -1, mode).expect("legal power"),
    ));
    gens
}

/// A generator pair and sample point where `Θ_x` failed to respect the
/// bracket.  An empty violation list is the certificate.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaPairViolation {
    pub x: Scalar,
    pub left: String,
    pub right: String,
    pub defect: AlgebraElement,
}

/// Outcome of sampling the homomorphism property of `Θ_x`.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaHomReport {
    pub u: TwistGenerator,
    pub samples: Vec<Scalar>,
    pub pairs_checked: usize,
    pub violations: Vec<ThetaPairViolation>,
}

impl ThetaHomReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check `Θ_x[s, t] = [Θ_x s, Θ_x t]` for every unordered pair of localized
/// generators (including `u⁻¹`) at `sample_count` distinct rational values
/// of `x`.
///
/// Both sides are polynomial in `x` of degree at most 4, so agreement at 5
/// or more distinct points certifies the identity for all rational `x`;
/// `sample_count` below 5 is therefore rejected.
pub fn verify_theta_homomorphism(u: TwistGenerator, sample_count: usize) -> ThetaHomReport {
    assert!(
        sample_count >= 5,
        "at least 5 sample points are required to certify a degree-4 polynomial identity"
    );
    let samples = sample_points(sample_count);
    let gens = localized_generators(u);
    let mut violations = Vec::new();
    let mut pairs_checked = 0usize;
    for x in &samples {
        let t = TwistSpec::new(u, x.clone());
        for (a, (name_a, el_a)) in gens.iter().enumerate() {
            for (name_b, el_b) in gens.iter().skip(a + 1) {
                pairs_checked += 1;
                let lhs = t
                    .theta(&el_a.bracket(el_b).expect("same mode"))
                    .expect("same mode");
                let rhs = t
                    .theta(el_a)
                    .expect("same mode")
                    .bracket(&t.theta(el_b).expect("same mode"))
                    .expect("same mode");
                let defect = lhs - rhs;
                if !defect.is_zero() {
                    violations.push(ThetaPairViolation {
                        x: x.clone(),
                        left: name_a.clone(),
                        right: name_b.clone(),
                        defect,
                    });
                }
            }
        }
    }
    ThetaHomReport {
        u,
        samples,
        pairs_checked,
        violations,
    }
}

/// A generator and parameter pair where `Θ_x ∘ Θ_y ≠ Θ_{x+y}`.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaAdditivityViolation {
    pub x: Scalar,
    pub y: Scalar,
    pub generator: String,
    pub defect: AlgebraElement,
}

/// Outcome of checking the one-parameter group law of `Θ`.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaAdditivityReport {
    pub u: TwistGenerator,
    pub checks: usize,
    pub violations: Vec<ThetaAdditivityViolation>,
}

impl ThetaAdditivityReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check `Θ_x(Θ_y(g)) = Θ_{x+y}(g)` on every localized generator
/// (including `u⁻¹`) for each supplied parameter pair.
pub fn verify_theta_additivity(u: TwistGenerator, pairs: &[(Scalar, Scalar)]) -> ThetaAdditivityReport {
    let gens = localized_generators(u);
    let mut violations = Vec::new();
    let mut checks = 0usize;
    for (x, y) in pairs {
        let tx = TwistSpec::new(u, x.clone());
        let ty = TwistSpec::new(u, y.clone());
        let txy = TwistSpec::new(u, x.clone() + y.clone());
        for (name, el) in &gens {
            checks += 1;
            let composed = tx.theta(&ty.theta(el).expect("same mode")).expect("same mode");
            let direct = txy.theta(el).expect("same mode");
            let defect = composed - direct;
            if !defect.is_zero() {
                violations.push(ThetaAdditivityViolation {
                    x: x.clone(),
                    y: y.clone(),
                    generator: name.clone(),
                    defect,
                });
            }
        }
    }
    ThetaAdditivityReport {
        u,
        checks,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{normalize, PbwMonomial};
    use LocalizationMode::{AtF, AtQ};

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    fn mono(mode: LocalizationMode, exps: [i64; 6], num: i64, den: i64) -> AlgebraElement {
        AlgebraElement::from_terms(mode, vec![(PbwMonomial::from_exponents(exps), s(num, den))])
            .unwrap()
    }

    #[test]
    fn q_twist_images_in_normal_form() {
        let t = TwistSpec::new(TwistGenerator::Q, s(1, 2));
        assert_eq!(
            t.generator_image(Generator::P),
            mono(AtQ, [0, 0, 1, 0, 0, 0], 1, 1) + mono(AtQ, [-1, 0, 0, 0, 0, 1], 1, 2)
        );
        // ½x(x−1) = ½·½·(−½) = −1/8 at x = 1/2.
        assert_eq!(
            t.generator_image(Generator::E),
            mono(AtQ, [0, 0, 0, 1, 0, 0], 1, 1)
                + mono(AtQ, [-1, 0, 1, 0, 0, 0], 1, 2)
                + mono(AtQ, [-2, 0, 0, 0, 0, 1], -1, 8)
        );
        assert_eq!(
            t.generator_image(Generator::H),
            mono(AtQ, [0, 0, 0, 0, 1, 0], 1, 1) + mono(AtQ, [0, 0, 0, 0, 0, 0], -1, 2)
        );
        for fixed in [Generator::Q, Generator::F, Generator::Z] {
            assert_eq!(
                t.generator_image(fixed),
                AlgebraElement::generator(fixed, AtQ)
            );
        }
    }

    #[test]
    fn f_twist_images_in_normal_form() {
        let t = TwistSpec::new(TwistGenerator::F, s(1, 2));
        assert_eq!(
            t.generator_image(Generator::P),
            mono(AtF, [0, 0, 1, 0, 0, 0], 1, 1) + mono(AtF, [1, -1, 0, 0, 0, 0], -1, 2)
        );
        // x(h−1−x)f⁻¹ straightens to x·f⁻¹h + x(1−x)·f⁻¹.
        assert_eq!(
            t.generator_image(Generator::E),
            mono(AtF, [0, 0, 0, 1, 0, 0], 1, 1)
                + mono(AtF, [0, -1, 0, 0, 1, 0], 1, 2)
                + mono(AtF, [0, -1, 0, 0, 0, 0], 1, 4)
        );
        assert_eq!(
            t.generator_image(Generator::H),
            mono(AtF, [0, 0, 0, 0, 1, 0], 1, 1) + mono(AtF, [0, 0, 0, 0, 0, 0], -1, 1)
        );
    }

    #[test]
    fn natural_parameter_is_conjugation() {
        // For x ∈ ℕ the automorphism is conjugation by u^{−x}, i.e.
        // g ↦ u^{−x}·g·u^{x} (check the sign on h: Θ_x(h) = h − x, and
        // q⁻¹·h·q = h − 1): the defining property that pins all six image
        // formulas independently.
        for u in [TwistGenerator::Q, TwistGenerator::F] {
            let mode = u.mode();
            for n in [1i64, 2, 3] {
                let t = TwistSpec::new(u, Scalar::from_int(n));
                let un = AlgebraElement::generator_power(u.generator(), n, mode).unwrap();
                let un_inv = AlgebraElement::generator_power(u.generator(), -n, mode).unwrap();
                for g in Generator::ALL {
                    let conj = un_inv
                        .multiply(&AlgebraElement::generator(g, mode))
                        .unwrap()
                        .multiply(&un)
                        .unwrap();
                    assert_eq!(
                        t.generator_image(g),
                        conj,
                        "conjugation mismatch for u={u}, n={n}, g={g}"
                    );
                }
            }
        }
    }

    #[test]
    fn theta_fixes_inverse_powers_and_zero_parameter_is_identity() {
        for u in [TwistGenerator::Q, TwistGenerator::F] {
            let mode = u.mode();
            let t = TwistSpec::new(u, s(5, 7));
            let uinv = AlgebraElement::generator_power(u.generator(), -3, mode).unwrap();
            assert_eq!(t.theta(&uinv).unwrap(), uinv);

            let id = TwistSpec::new(u, Scalar::zero());
            let sample = normalize(
                &[(Generator::E, 1), (u.generator(), -2), (Generator::H, 1)],
                mode,
            )
            .unwrap();
            assert_eq!(id.theta(&sample).unwrap(), sample);
        }
    }

    #[test]
    fn theta_is_multiplicative_on_a_sample() {
        let t = TwistSpec::new(TwistGenerator::Q, s(2, 3));
        let a = normalize(&[(Generator::P, 1), (Generator::Q, -1)], AtQ).unwrap();
        let b = normalize(&[(Generator::E, 1), (Generator::F, 2)], AtQ).unwrap();
        let lhs = t.theta(&a.multiply(&b).unwrap()).unwrap();
        let rhs = t.theta(&a).unwrap().multiply(&t.theta(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn homomorphism_certificate_passes() {
        for u in [TwistGenerator::Q, TwistGenerator::F] {
            let report = verify_theta_homomorphism(u, 5);
            assert!(report.pass(), "violations: {:?}", report.violations);
            assert_eq!(report.pairs_checked, 5 * 21);
        }
    }

    #[test]
    #[should_panic(expected = "at least 5 sample points")]
    fn homomorphism_rejects_insufficient_samples() {
        verify_theta_homomorphism(TwistGenerator::Q, 4);
    }

    #[test]
    fn additivity_certificate_passes() {
        let pairs = [
            (s(1, 2), s(1, 3)),
            (s(-2, 3), s(5, 7)),
            (Scalar::from_int(2), s(-1, 2)),
        ];
        for u in [TwistGenerator::Q, TwistGenerator::F] {
            let report = verify_theta_additivity(u, &pairs);
            assert!(report.pass(), "violations: {:?}", report.violations);
            assert_eq!(report.checks, pairs.len() * 7);
        }
    }

    #[test]
    fn sample_points_are_distinct() {
        let pts = sample_points(12);
        assert_eq!(pts.len(), 12);
        for (a, pa) in pts.iter().enumerate() {
            for pb in pts.iter().skip(a + 1) {
                assert_ne!(pa, pb);
            }
        }
    }
}
