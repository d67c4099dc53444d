//! Exact nonzero complex scalars of the shape r·e^{2πi·t} with r = a·√b for
//! positive rationals a, b and t a rational number of turns.
//!
//! This covers every value the partition-function formulas produce: integer
//! powers of the classifying parameters, square roots of global dimensions,
//! and roots of unity. Multiplication, inversion, integer powers and square
//! roots of positive rationals are all exact; floating point appears only in
//! display.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("scalar parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("magnitude must be positive")]
    NonPositiveMagnitude,
}

/// A nonzero complex number with positive magnitude `rat·√rad` and phase
/// `phase` in turns (so phase 1/2 is −1). `rad` is kept square-reduced
/// opportunistically: perfect-square parts are folded into `rat`.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    rat: BigRational,
    rad: BigRational,
    phase: BigRational,
}

fn exact_sqrt(x: &BigUint) -> Option<BigUint> {
    let r = x.sqrt();
    if &(&r * &r) == x {
        Some(r)
    } else {
        None
    }
}

fn reduce_phase(p: BigRational) -> BigRational {
    let f = p.floor();
    p - f
}

impl Scalar {
    pub fn one() -> Self {
        Self::from_rational(BigRational::one()).unwrap()
    }

    /// A positive rational magnitude with phase zero.
    pub fn from_rational(r: BigRational) -> Result<Self, ScalarError> {
        if !r.is_positive() {
            return Err(ScalarError::NonPositiveMagnitude);
        }
        Ok(Self {
            rat: r,
            rad: BigRational::one(),
            phase: BigRational::zero(),
        })
    }

    pub fn from_integer(n: i64) -> Result<Self, ScalarError> {
        if n > 0 {
            Self::from_rational(BigRational::from_integer(BigInt::from(n)))
        } else if n < 0 {
            Ok(Self::from_rational(BigRational::from_integer(BigInt::from(-n)))?
                .mul(&Self::minus_one()))
        } else {
            Err(ScalarError::NonPositiveMagnitude)
        }
    }

    pub fn minus_one() -> Self {
        Self {
            rat: BigRational::one(),
            rad: BigRational::one(),
            phase: BigRational::new(BigInt::one(), BigInt::from(2)),
        }
    }

    /// A root of unity e^{2πi·turns}.
    pub fn phase_turns(turns: BigRational) -> Self {
        Self {
            rat: BigRational::one(),
            rad: BigRational::one(),
            phase: reduce_phase(turns),
        }
    }

    pub fn with_phase(magnitude: BigRational, turns: BigRational) -> Result<Self, ScalarError> {
        Ok(Self::from_rational(magnitude)?.mul(&Self::phase_turns(turns)))
    }

    fn normalize(mut self) -> Self {
        // Fold perfect-square parts of rad into rat.
        let (num, den) = (self.rad.numer().to_biguint(), self.rad.denom().to_biguint());
        if let (Some(num), Some(den)) = (num, den) {
            if let (Some(sn), Some(sd)) = (exact_sqrt(&num), exact_sqrt(&den)) {
                self.rat *= BigRational::new(sn.into(), sd.into());
                self.rad = BigRational::one();
            }
        }
        self.phase = reduce_phase(self.phase);
        self
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        Scalar {
            rat: &self.rat * &other.rat,
            rad: &self.rad * &other.rad,
            phase: &self.phase + &other.phase,
        }
        .normalize()
    }

    pub fn inv(&self) -> Scalar {
        // 1/(a√b) = (1/(ab))·√b
        Scalar {
            rat: (&self.rat * &self.rad).recip(),
            rad: self.rad.clone(),
            phase: -&self.phase,
        }
        .normalize()
    }

    pub fn powi(&self, n: i64) -> Scalar {
        if n == 0 {
            return Scalar::one();
        }
        let base = if n < 0 { self.inv() } else { self.clone() };
        let e = n.unsigned_abs();
        // (a√b)^e = a^e·b^{e/2}·(√b)^{e mod 2}
        let ei = BigInt::from(e);
        let rat_pow = pow_rational(&base.rat, &ei);
        let half = pow_rational(&base.rad, &BigInt::from(e / 2));
        let (rat, rad) = if e.is_multiple_of(2) {
            (rat_pow * half, BigRational::one())
        } else {
            (rat_pow * half, base.rad.clone())
        };
        Scalar {
            rat,
            rad,
            phase: &base.phase * BigRational::from_integer(BigInt::from(e)),
        }
        .normalize()
    }

    /// The positive square root of a positive rational scalar (phase 0).
    /// Panics when the phase is nonzero; callers take square roots only of
    /// global dimensions, which are positive reals.
    pub fn sqrt_positive(&self) -> Scalar {
        assert!(self.phase.is_zero(), "square root only of positive reals");
        assert!(self.rad.is_one(), "iterated radicals not needed nor supported");
        Scalar {
            rat: BigRational::one(),
            rad: self.rat.clone(),
            phase: BigRational::zero(),
        }
        .normalize()
    }

    pub fn phase(&self) -> &BigRational {
        &self.phase
    }

    /// The square of the magnitude, always an exact rational.
    pub fn magnitude_squared(&self) -> BigRational {
        &self.rat * &self.rat * &self.rad
    }

    /// The magnitude as an exact rational when it is one.
    pub fn magnitude_rational(&self) -> Option<BigRational> {
        if self.rad.is_one() {
            Some(self.rat.clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.rad.is_one() && self.phase.is_zero()
    }

    /// True when the value is a positive real number.
    pub fn is_positive_real(&self) -> bool {
        self.phase.is_zero()
    }

    pub fn magnitude_f64(&self) -> f64 {
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        let b = self.rad.to_f64().unwrap_or(f64::NAN);
        a * b.sqrt()
    }

    /// Approximate equality on the (magnitude, phase) pair, used only for
    /// display-level comparisons. Exact data should be compared with ==.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        let dm = (self.magnitude_f64() - other.magnitude_f64()).abs();
        let p1 = self.phase.to_f64().unwrap_or(f64::NAN);
        let p2 = other.phase.to_f64().unwrap_or(f64::NAN);
        let dp = (p1 - p2).abs().min(1.0 - (p1 - p2).abs());
        dm < tol && dp < tol
    }

    /// Parses the scalar grammar: `r`, `-r`, `r*e(p/q)`, `e(p/q)` where `r`
    /// is a decimal or rational literal. Plain numbers are reals; a leading
    /// minus contributes phase 1/2.
    pub fn parse(text: &str) -> Result<Scalar, ScalarError> {
        let s = text.trim();
        let mut rest = s;
        let mut negate = false;
        if let Some(r) = rest.strip_prefix('-') {
            negate = true;
            rest = r;
        }
        let (mag_str, phase_str) = match rest.split_once("*e(") {
            Some((m, p)) => {
                let p = p.strip_suffix(')').ok_or_else(|| ScalarError::Parse {
                    position: s.len(),
                    message: "expected closing ')'".into(),
                })?;
                (m, Some(p))
            }
            None => match rest.strip_prefix("e(") {
                Some(p) => {
                    let p = p.strip_suffix(')').ok_or_else(|| ScalarError::Parse {
                        position: s.len(),
                        message: "expected closing ')'".into(),
                    })?;
                    ("1", Some(p))
                }
                None => (rest, None),
            },
        };
        let mag = parse_positive_rational(mag_str).map_err(|message| ScalarError::Parse {
            position: 0,
            message,
        })?;
        let mut out = Scalar::from_rational(mag)?;
        if let Some(p) = phase_str {
            let turns = parse_signed_rational(p).map_err(|message| ScalarError::Parse {
                position: 0,
                message,
            })?;
            out = out.mul(&Scalar::phase_turns(turns));
        }
        if negate {
            out = out.mul(&Scalar::minus_one());
        }
        Ok(out)
    }
}

fn pow_rational(r: &BigRational, e: &BigInt) -> BigRational {
    let e = e.to_u32().expect("exponent fits in u32");
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// Parses `a/b`, an integer, or a decimal like `2.5` into a positive rational.
pub fn parse_positive_rational(s: &str) -> Result<BigRational, String> {
    let r = parse_signed_rational(s)?;
    if !r.is_positive() {
        return Err(format!("expected a positive number, got {s}"));
    }
    Ok(r)
}

pub fn parse_signed_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
        let d: BigInt = d.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|e| format!("bad integer part: {e}"))?
        };
        let digits = frac.len() as u32;
        let frac_n: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().map_err(|e| format!("bad fractional part: {e}"))?
        };
        let denom = BigInt::from(10u32).pow(digits);
        let frac_r = BigRational::new(if neg { -frac_n } else { frac_n }, denom);
        return Ok(BigRational::from_integer(int) + frac_r);
    }
    let n: BigInt = s.parse().map_err(|e| format!("bad number: {e}"))?;
    Ok(BigRational::from_integer(n))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.rat.is_one() {
            parts.push(self.rat.to_string());
        }
        if !self.rad.is_one() {
            parts.push(format!("sqrt({})", self.rad));
        }
        if !self.phase.is_zero() {
            parts.push(format!("e({})", self.phase));
        }
        if parts.is_empty() {
            parts.push("1".to_string());
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn multiplication_adds_phases_and_multiplies_magnitudes() {
        let a = Scalar::with_phase(rat(2, 1), rat(1, 3)).unwrap();
        let b = Scalar::with_phase(rat(3, 2), rat(5, 6)).unwrap();
        let c = a.mul(&b);
        assert_eq!(c.magnitude_rational(), Some(rat(3, 1)));
        assert_eq!(c.phase(), &rat(1, 6));
    }

    #[test]
    fn square_roots_are_exact() {
        let two = Scalar::from_integer(2).unwrap();
        let r = two.sqrt_positive();
        assert_eq!(r.magnitude_squared(), rat(2, 1));
        // √2 cubed has magnitude² = 8.
        let c = r.powi(3);
        assert_eq!(c.magnitude_squared(), rat(8, 1));
        // √(9/4) folds back to 3/2 exactly.
        let q = Scalar::from_rational(rat(9, 4)).unwrap().sqrt_positive();
        assert_eq!(q.magnitude_rational(), Some(rat(3, 2)));
    }

    #[test]
    fn negative_powers() {
        let x = Scalar::with_phase(rat(2, 1), rat(1, 8)).unwrap();
        let y = x.powi(-2);
        assert_eq!(y.magnitude_rational(), Some(rat(1, 4)));
        assert_eq!(y.phase(), &rat(3, 4));
        assert!(x.powi(0).is_one());
        assert!(x.mul(&x.inv()).is_one());
    }

    #[test]
    fn minus_one_squares_to_one() {
        let m = Scalar::minus_one();
        assert!(m.powi(2).is_one());
        assert!(!m.is_one());
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(Scalar::parse("3").unwrap(), Scalar::from_integer(3).unwrap());
        assert_eq!(
            Scalar::parse("-3").unwrap(),
            Scalar::from_integer(3).unwrap().mul(&Scalar::minus_one())
        );
        let s = Scalar::parse("2*e(1/8)").unwrap();
        assert_eq!(s.magnitude_rational(), Some(rat(2, 1)));
        assert_eq!(s.phase(), &rat(1, 8));
        let d = Scalar::parse("2.5").unwrap();
        assert_eq!(d.magnitude_rational(), Some(rat(5, 2)));
        let e = Scalar::parse("e(3/4)").unwrap();
        assert_eq!(e.phase(), &rat(3, 4));
        assert!(Scalar::parse("0").is_err());
        assert!(Scalar::parse("x").is_err());
    }

    #[test]
    fn approximate_comparison_is_display_level_only() {
        let exact = Scalar::from_integer(2).unwrap().sqrt_positive();
        let close = Scalar::parse("1.414213562373").unwrap();
        assert!(exact.approx_eq(&close, 1e-9));
        assert_ne!(exact, close);
        let far = Scalar::parse("1.4143").unwrap();
        assert!(!exact.approx_eq(&far, 1e-9));
    }

    #[test]
    fn display_round_trips_visually() {
        let s = Scalar::from_integer(2)
            .unwrap()
            .sqrt_positive()
            .mul(&Scalar::phase_turns(rat(1, 8)));
        assert_eq!(s.to_string(), "sqrt(2)*e(1/8)");
    }
}
