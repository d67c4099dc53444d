//! Classification and evaluation of invertible topological field theories.
//!
//! Four-dimensional theories: the nonextended classes are pairs
//! (λ₁, λ₂) acting on a closed manifold by λ₁^σ·λ₂^{(χ−σ)/2}; the fully
//! extended classes over a top-complex target with no middle homotopy form a
//! Z/6-extension of C× × C× × π₀(Pic), computed through the two-term
//! mapping-group machinery rather than looked up. Crane–Yetter evaluation,
//! reflection positivity, the two-dimensional oriented/unoriented/super
//! story, partial SO(k)-structures and partially extended theories round out
//! the catalog.

use crate::abelian::FgAbGroup;
use crate::descriptor::GroupDescriptor;
use crate::manifolds::{Manifold4, Surface};
use crate::scalar::Scalar;
use crate::spectra::{
    e4_spectrum, genauer_inclusion, mapping_group, nonextended_bordism_spectrum, so3_spectrum,
    surface_spectrum, MappingGroupResult, SpectraError, SplitKnown, TangentialStructure,
};
use crate::stablecoh::CohomologyValue;
use crate::targets::{picard, PicardSpectrum, TargetError, TargetName, WittElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TqftError {
    #[error("target does not satisfy the classification hypotheses: {0:?}")]
    HypothesisViolated(Vec<String>),
    #[error("invalid modular data: {0}")]
    InvalidModularData(String),
    #[error("unsupported structure level: {0}")]
    UnsupportedK(String),
    #[error(transparent)]
    Target(#[from] TargetError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

// ---- nonextended 4d theories ----

/// A nonextended invertible 4d theory: Z(X) = λ₁^{σ(X)}·λ₂^{(χ(X)−σ(X))/2}.
#[derive(Debug, Clone, PartialEq)]
pub struct NonextendedClass4d {
    pub lambda1: Scalar,
    pub lambda2: Scalar,
}

impl NonextendedClass4d {
    pub fn new(lambda1: Scalar, lambda2: Scalar) -> Self {
        Self { lambda1, lambda2 }
    }
}

/// Evaluation on SKK coordinates; χ ≡ σ (mod 2) is required.
pub fn eval_on_skk(cls: &NonextendedClass4d, chi: i64, sigma: i64) -> Scalar {
    assert_eq!((chi - sigma).rem_euclid(2), 0, "chi and sigma must agree mod 2");
    cls.lambda1
        .powi(sigma)
        .mul(&cls.lambda2.powi((chi - sigma) / 2))
}

pub fn eval_nonextended(cls: &NonextendedClass4d, m: &Manifold4) -> Scalar {
    eval_on_skk(cls, m.chi(), m.sigma())
}

/// Restriction of a 4d theory to the once-categorified (SO(3)) level: the
/// upward-extension coordinate is the value on the generator of the kernel
/// of the Euler-characteristic projection, computed from the catalog
/// inclusion rather than hard-coded.
pub fn so3_restriction_value(cls: &NonextendedClass4d) -> Scalar {
    let image = genauer_inclusion().apply(&[BigInt::one()]);
    let chi = i64::try_from(&image[0]).expect("catalog coordinates are small");
    let sigma = i64::try_from(&image[1]).expect("catalog coordinates are small");
    eval_on_skk(cls, chi, sigma)
}

/// Reflection positivity, decided algebraically: Z(S⁴) = λ₂ must be a
/// positive real and the Euler-normalized assignment X ↦ Z(X)·Z(S⁴)^{−χ/2}
/// must be a phase for every X, which holds exactly when |λ₁|² = |λ₂|.
pub fn is_reflection_positive(cls: &NonextendedClass4d) -> bool {
    cls.lambda2.is_positive_real()
        && cls.lambda2.magnitude_rational() == Some(cls.lambda1.magnitude_squared())
}

// ---- modular data and Crane–Yetter ----

/// Numerical shadow of a modular fusion category: global dimension ≥ 1 and
/// central charge, a rational number of eighths stored modulo 8.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularData {
    global_dim: BigRational,
    central_charge: BigRational,
}

impl ModularData {
    pub fn new(global_dim: BigRational, central_charge: BigRational) -> Result<Self, TqftError> {
        if global_dim < BigRational::one() {
            return Err(TqftError::InvalidModularData(format!(
                "global dimension must be at least 1, got {global_dim}"
            )));
        }
        let eight = BigRational::from_integer(BigInt::from(8));
        let reduced = &central_charge - (&central_charge / &eight).floor() * &eight;
        Ok(Self {
            global_dim,
            central_charge: reduced,
        })
    }

    pub fn global_dim(&self) -> &BigRational {
        &self.global_dim
    }

    pub fn central_charge(&self) -> &BigRational {
        &self.central_charge
    }
}

/// The invertible-theory class of the Crane–Yetter theory: λ₂ = dim C and
/// λ₁ = (dim C)^{1/2}·e(c/8), with the positive square root.
pub fn crane_yetter_class(md: &ModularData) -> NonextendedClass4d {
    let dim = Scalar::from_rational(md.global_dim.clone()).expect("global dimension is positive");
    let sqrt = dim.sqrt_positive();
    let phase = Scalar::phase_turns(&md.central_charge / BigRational::from_integer(BigInt::from(8)));
    NonextendedClass4d {
        lambda1: sqrt.mul(&phase),
        lambda2: dim,
    }
}

/// Direct evaluation of the Crane–Yetter partition function,
/// (dim C)^{χ/2}·e^{2πi·cσ/8}, kept independent of `eval_nonextended` so the
/// two routes can be compared.
pub fn eval_crane_yetter(md: &ModularData, m: &Manifold4) -> Scalar {
    let sqrt_dim = Scalar::from_rational(md.global_dim.clone())
        .expect("global dimension is positive")
        .sqrt_positive();
    let magnitude = sqrt_dim.powi(m.chi());
    let turns = &md.central_charge * BigRational::new(BigInt::from(m.sigma()), BigInt::from(8));
    magnitude.mul(&Scalar::phase_turns(turns))
}

// ---- fully extended 4d classification ----

/// How a classification result was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassificationRoute {
    /// Through the two-term mapping-group short exact sequence.
    MappingGroup,
    /// Through the universal property of character-dual targets: exactly one
    /// extended class per partition function.
    BrownComenetz,
}

#[derive(Debug, Clone)]
pub struct ClassificationResult {
    pub target: TargetName,
    pub kernel: GroupDescriptor,
    pub quotient: GroupDescriptor,
    pub obstruction: CohomologyValue,
    pub split_known: SplitKnown,
    pub route: ClassificationRoute,
    pub notes: Vec<String>,
}

fn require_four_dim_hypotheses(spectrum: &PicardSpectrum) -> Result<(), TqftError> {
    let violations = spectrum.four_dim_hypothesis_violations();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(TqftError::HypothesisViolated(violations))
    }
}

/// Classification of fully extended invertible 4d theories with the given
/// target: the short exact sequence 0 → Z/6 → π₀ → C× × C× × π₀(Pic) → 0,
/// computed by mapping out of the truncated bordism spectrum. Character-dual
/// targets collapse to one class per nonextended theory instead.
pub fn classify_extended(target: TargetName) -> Result<ClassificationResult, TqftError> {
    let spectrum = picard(target)?;
    if spectrum.brown_comenetz && spectrum.cat_dim == 4 {
        return Ok(ClassificationResult {
            target,
            kernel: GroupDescriptor::zero(),
            quotient: GroupDescriptor::circles(2),
            obstruction: CohomologyValue::Group(GroupDescriptor::zero()),
            split_known: SplitKnown::Yes,
            route: ClassificationRoute::BrownComenetz,
            notes: vec![
                "character-dual target: exactly one fully extended class per partition function"
                    .to_string(),
            ],
        });
    }
    require_four_dim_hypotheses(&spectrum)?;
    let f = spectrum.as_two_term().ok_or_else(|| {
        TqftError::HypothesisViolated(vec![
            "target Picard spectrum is not a two-term spectrum".to_string()
        ])
    })?;
    let e = e4_spectrum();
    let result: MappingGroupResult = mapping_group(&e, &f)?;
    Ok(ClassificationResult {
        target,
        kernel: result.kernel,
        quotient: result.quotient,
        obstruction: result.obstruction,
        split_known: result.split_known,
        route: ClassificationRoute::MappingGroup,
        notes: vec![result.quotient_description],
    })
}

/// The π₀(Pic) coordinate of an extended class.
#[derive(Debug, Clone, PartialEq)]
pub enum PicardClass {
    Trivial,
    Witt(WittElement),
}

impl PicardClass {
    fn compatible_with(&self, target: TargetName) -> bool {
        match (self, target) {
            (PicardClass::Witt(_), TargetName::BrFus) => true,
            (PicardClass::Trivial, TargetName::BrFus) => false,
            (PicardClass::Trivial, _) => true,
            (PicardClass::Witt(_), _) => false,
        }
    }
}

/// An equivalence class of a fully extended invertible 4d theory. The z6
/// label is a torsor coordinate relative to the enumeration base; classes
/// are equal exactly when all four fields agree.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedClass4d {
    pub lambda1: Scalar,
    pub lambda2: Scalar,
    pub picard_class: PicardClass,
    pub z6: u8,
}

impl ExtendedClass4d {
    pub fn forget(&self) -> NonextendedClass4d {
        NonextendedClass4d {
            lambda1: self.lambda1.clone(),
            lambda2: self.lambda2.clone(),
        }
    }
}

/// All extended classes over a fixed nonextended theory and Picard
/// coordinate: six for a mapping-group target, one for a character-dual
/// target.
pub fn enumerate_point_extensions(
    target: TargetName,
    picard_class: PicardClass,
    lambda1: Scalar,
    lambda2: Scalar,
) -> Result<Vec<ExtendedClass4d>, TqftError> {
    let classification = classify_extended(target)?;
    if !picard_class.compatible_with(target) {
        return Err(TqftError::HypothesisViolated(vec![format!(
            "point data {picard_class:?} does not match π₀(Pic) of {target}"
        )]));
    }
    let count = match classification.route {
        ClassificationRoute::BrownComenetz => 1u8,
        ClassificationRoute::MappingGroup => {
            let kernel_order = classification
                .kernel
                .order()
                .expect("mapping-group kernel is finite in the cataloged cases");
            u8::try_from(kernel_order.to_u64_digits().first().copied().unwrap_or(0))
                .expect("kernel order is small")
        }
    };
    Ok((0..count)
        .map(|z6| ExtendedClass4d {
            lambda1: lambda1.clone(),
            lambda2: lambda2.clone(),
            picard_class: picard_class.clone(),
            z6,
        })
        .collect())
}

// ---- nonextended classification (all dimensions ≤ 4) ----

/// Equivalence classes of nonextended invertible d-dimensional theories with
/// values in the given 1-categorical target: homomorphisms out of SKK_d
/// that kill every mapping-torus class Y × S¹, encoded in the k-invariant of
/// the two-term bordism spectrum and evaluated through the mapping group.
pub fn classify_nonextended(target: TargetName, d: usize) -> Result<GroupDescriptor, TqftError> {
    if !matches!(target, TargetName::Vect | TargetName::SVect) {
        return Err(TargetError::NotInCatalog(format!(
            "nonextended classification is cataloged for Vect and sVect, got {target}"
        ))
        .into());
    }
    let e = nonextended_bordism_spectrum(d)?;
    let f = picard(target)?
        .as_two_term()
        .expect("Vect and sVect Picard spectra are two-term");
    let result = mapping_group(&e, &f)?;
    // Ext into the circle vanishes, so the mapping group is the admissible
    // pair group itself.
    debug_assert!(result.kernel.is_zero());
    Ok(result.quotient)
}

// ---- two-dimensional theories ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoDTarget {
    Alg,
    SAlg,
}

impl std::fmt::Display for TwoDTarget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TwoDTarget::Alg => write!(f, "Alg"),
            TwoDTarget::SAlg => write!(f, "sAlg"),
        }
    }
}

/// A 2d extended invertible theory class in the λ-model: the trace value
/// attached to the point, a stellar sign for unoriented theories, and a
/// super flag.
#[derive(Debug, Clone, PartialEq)]
pub struct Frobenius2dClass {
    pub lambda: Scalar,
    /// Sign data for unoriented theories; None for oriented ones.
    pub stellar_sign: Option<i8>,
    pub super_target: bool,
}

impl Frobenius2dClass {
    pub fn oriented(lambda: Scalar, super_target: bool) -> Self {
        Self {
            lambda,
            stellar_sign: None,
            super_target,
        }
    }

    pub fn unoriented(lambda: Scalar, sign: i8, super_target: bool) -> Self {
        assert!(sign == 1 || sign == -1);
        Self {
            lambda,
            stellar_sign: Some(sign),
            super_target,
        }
    }
}

/// Partition function on a closed oriented surface: λ^{χ(Σ)}. The stellar
/// sign never enters oriented evaluation.
pub fn eval_2d(cls: &Frobenius2dClass, surface: &Surface) -> Scalar {
    cls.lambda.powi(surface.chi())
}

/// Whether two 2d classes are identified by the catalog equivalences:
/// super targets identify λ with −λ (oriented) and (λ, s) with (−λ, −s)
/// (unoriented).
pub fn classes_equivalent_2d(a: &Frobenius2dClass, b: &Frobenius2dClass) -> bool {
    if a.super_target != b.super_target {
        return false;
    }
    if a == b {
        return true;
    }
    if !a.super_target {
        return false;
    }
    let negated = Frobenius2dClass {
        lambda: b.lambda.mul(&Scalar::minus_one()),
        stellar_sign: b.stellar_sign.map(|s| -s),
        super_target: b.super_target,
    };
    a == &negated
}

/// The squaring sequence 0 → Z/2 → C× → C× → 0 admits no homomorphic
/// section: a section would give −1 a square root of order dividing two,
/// and both square roots of −1 have order four. Checked on exact scalars.
pub fn squaring_sequence_is_nonsplit() -> bool {
    let minus_one = Scalar::minus_one();
    let roots = [
        Scalar::phase_turns(BigRational::new(BigInt::from(1), BigInt::from(4))),
        Scalar::phase_turns(BigRational::new(BigInt::from(3), BigInt::from(4))),
    ];
    roots.iter().all(|r| {
        let squares_to_minus_one = r.powi(2) == minus_one;
        let order_divides_two = r.powi(2).is_one();
        squares_to_minus_one && !order_divides_two
    })
}

#[derive(Debug, Clone)]
pub struct TwoDClassification {
    pub target: TwoDTarget,
    pub structure: TangentialStructure,
    /// Kernel of the restriction to nonextended theories.
    pub kernel: GroupDescriptor,
    /// The nonextended classes.
    pub quotient: GroupDescriptor,
    /// Some(true): the sequence is established nonsplit; Some(false): split.
    pub nonsplit: Option<bool>,
    pub class_model: String,
    pub notes: Vec<String>,
}

/// The 2d classification per target and tangential structure, with the
/// sequence data computed through the mapping group where the Picard
/// spectrum is two-term (Alg), and by the catalog equivalences for the super
/// target.
pub fn classify_2d(
    target: TwoDTarget,
    structure: TangentialStructure,
) -> Result<TwoDClassification, TqftError> {
    match target {
        TwoDTarget::Alg => {
            let e = surface_spectrum(structure);
            let f = picard(TargetName::Alg)?
                .as_two_term()
                .expect("the algebra target's Picard spectrum is two-term");
            let result = mapping_group(&e, &f)?;
            let (nonsplit, model, notes) = match structure {
                TangentialStructure::So => (
                    Some(squaring_sequence_is_nonsplit()),
                    "λ ∈ C×, restricting to the nonextended theory λ²; λ and −λ have equal partition functions".to_string(),
                    vec![
                        "the extension is the squaring sequence on C×, nonsplit by the exact order-two argument".to_string(),
                    ],
                ),
                TangentialStructure::O => (
                    Some(false),
                    "(λ, s) ∈ C× × {±1}, restricting to the unoriented nonextended theory λ·s".to_string(),
                    vec![
                        "the truncated unoriented surface spectrum has zero k-invariant, so the extension splits".to_string(),
                        "s is the stellar-structure sign on the point algebra".to_string(),
                    ],
                ),
            };
            Ok(TwoDClassification {
                target,
                structure,
                kernel: result.kernel,
                quotient: result.quotient,
                nonsplit,
                class_model: model,
                notes,
            })
        }
        TwoDTarget::SAlg => {
            // The super target's Picard spectrum has three nonzero homotopy
            // groups; its classification is the catalog identification on
            // the λ-model instead.
            let (model, notes) = match structure {
                TangentialStructure::So => (
                    "λ ∈ C× with λ ~ −λ identified (odd-line Morita equivalence)".to_string(),
                    vec![
                        "the partition function determines the extended theory for the character-dual target".to_string(),
                    ],
                ),
                TangentialStructure::O => (
                    "(λ, s) with (λ, s) ~ (−λ, −s) identified".to_string(),
                    vec!["the odd line negates both the trace and the stellar sign".to_string()],
                ),
            };
            Ok(TwoDClassification {
                target,
                structure,
                kernel: GroupDescriptor::cyclic(2),
                quotient: GroupDescriptor::circle(),
                nonsplit: None,
                class_model: model,
                notes,
            })
        }
    }
}

/// Exact check that the square
///
/// ```text
///   C× × {±}  --(λ,s)↦λs-->  C×
///       |                     |
///    (λ,s)↦λ                μ↦μ²
///       v                     v
///      C×     --λ↦λ²---->    C×
/// ```
///
/// commutes and is a pullback with both kernels Z/2, verified on the given
/// sample scalars plus the full order-two subgroup.
pub fn verify_unoriented_pullback_square(samples: &[Scalar]) -> bool {
    let minus_one = Scalar::minus_one();
    // Commutativity: (λs)² = λ² for both signs.
    for lambda in samples {
        for sign in [Scalar::one(), minus_one.clone()] {
            let top_then_right = lambda.mul(&sign).powi(2);
            let left_then_bottom = lambda.powi(2);
            if top_then_right != left_then_bottom {
                return false;
            }
        }
    }
    // Pullback: each pair (a, b) with a² = b² has exactly one preimage
    // (λ, s) = (a, b/a), and b/a must be ±1.
    for a in samples {
        for b in [a.clone(), a.mul(&minus_one)] {
            debug_assert!(a.powi(2) == b.powi(2));
            let s = b.mul(&a.inv());
            let is_plus = s.is_one();
            let is_minus = s == minus_one;
            if !(is_plus ^ is_minus) {
                return false;
            }
        }
    }
    // Kernels on the order-two subgroup {±1} × {±}: the vertical kernel is
    // {(1, ±1)} and the horizontal kernel is {(1, 1), (−1, −1)}, both of
    // order two.
    let mut vertical = 0;
    let mut horizontal = 0;
    for lambda in [Scalar::one(), minus_one.clone()] {
        for sign in [Scalar::one(), minus_one.clone()] {
            if lambda.is_one() {
                vertical += 1;
            }
            if lambda.mul(&sign).is_one() {
                horizontal += 1;
            }
        }
    }
    vertical == 2 && horizontal == 2
}

// ---- partial SO(k) structures and partial extensions ----

#[derive(Debug, Clone)]
pub struct SoKClassification {
    pub target: TargetName,
    pub k: usize,
    /// Z/6 kernel for k = 3; absent for k = 1.
    pub kernel: Option<GroupDescriptor>,
    pub quotient: GroupDescriptor,
    /// For k = 3: extensions up to full SO(4) structure are classified by
    /// this group, via evaluation on the signature-two Euler-zero class.
    pub upward_fiber: Option<GroupDescriptor>,
    pub notes: Vec<String>,
}

/// Classification of invertible theories with partial SO(k) tangential
/// structure, k ∈ {1, 3}; k = 2 is rejected because the surface-level
/// truncation has nonzero middle homotopy.
pub fn classify_so_k(target: TargetName, k: usize) -> Result<SoKClassification, TqftError> {
    let spectrum = picard(target)?;
    match k {
        1 => Ok(SoKClassification {
            target,
            k,
            kernel: None,
            quotient: spectrum.pi(0),
            upward_fiber: None,
            notes: vec![
                "framed theories are classified by invertible objects of the target".to_string(),
            ],
        }),
        2 => Err(TqftError::UnsupportedK(
            "the two-term classification does not apply for k = 2: the truncated spectrum has nonzero homotopy in the middle degree (π₂ = Z)"
                .to_string(),
        )),
        3 => {
            require_four_dim_hypotheses(&spectrum)?;
            let f = spectrum.as_two_term().ok_or_else(|| {
                TqftError::HypothesisViolated(vec![
                    "target Picard spectrum is not a two-term spectrum".to_string(),
                ])
            })?;
            let result = mapping_group(&so3_spectrum(), &f)?;
            Ok(SoKClassification {
                target,
                k,
                kernel: Some(result.kernel),
                quotient: result.quotient,
                upward_fiber: Some(GroupDescriptor::circle()),
                notes: vec![
                    "upward extensions to SO(4) are classified by the value on the (χ, σ) = (0, 2) class".to_string(),
                ],
            })
        }
        other => Err(TqftError::UnsupportedK(format!(
            "partial SO(k) structures are cataloged for k ∈ {{1, 3}}, got {other}"
        ))),
    }
}

#[derive(Debug, Clone)]
pub struct PartialExtensionReport {
    pub target: TargetName,
    /// The π₀(Pic) coordinate of the remaining ambiguity.
    pub pi0_pic: GroupDescriptor,
    /// The finite coordinate of the remaining ambiguity (Z/6, collapsing to
    /// the trivial group for character-dual targets).
    pub z6: FgAbGroup,
    pub notes: Vec<String>,
}

/// A nonextended invertible theory extends uniquely through every partial
/// level (the connective covers of the truncated bordism spectrum agree in
/// degrees 1..4); the ambiguity of extending fully down to points is an
/// element of π₀(Pic) and a sixth root of unity.
pub fn partial_extension_ambiguity(target: TargetName) -> Result<PartialExtensionReport, TqftError> {
    let classification = classify_extended(target)?;
    let spectrum = picard(target)?;
    let (z6, notes) = match classification.route {
        ClassificationRoute::BrownComenetz => (
            FgAbGroup::trivial(),
            vec!["character-dual target: the extension down to points is unique".to_string()],
        ),
        ClassificationRoute::MappingGroup => (
            FgAbGroup::cyclic(6),
            vec![
                "partial extensions through levels 1..4 restrict isomorphically to the nonextended classes"
                    .to_string(),
            ],
        ),
    };
    Ok(PartialExtensionReport {
        target,
        pi0_pic: spectrum.pi(0),
        z6,
        notes,
    })
}
