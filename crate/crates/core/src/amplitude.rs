//! Exact amplitudes in the ring ℤ[ω, 1/√2], ω = e^{iπ/4}.
//!
//! Every amplitude reachable from |0…0⟩ with the gates I, X, Z, S, T, H and
//! CNOT lives in this ring, so equality and in particular the zero test used
//! for destructive interference are exact.
//!
//! An element is stored as `num / √2^k` where `num` is a cyclotomic integer
//! `a0 + a1·ω + a2·ω² + a3·ω³` (with ω⁴ = −1). The canonical form keeps `k`
//! minimal, which makes the representation unique.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::scalar::{c, Coeff};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("integer overflow in exact amplitude arithmetic")]
    Overflow,
    /// `x · conj(x)` had a nonzero imaginary part. Indicates a bug.
    #[error("internal error: modulus squared is not real")]
    NonRealModulus,
}

/// An element of ℤ[ω]: `a0 + a1·ω + a2·ω² + a3·ω³`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloInt<C> {
    coeffs: [C; 4],
}

impl<C: Coeff> CycloInt<C> {
    pub fn new(a0: C, a1: C, a2: C, a3: C) -> Self {
        CycloInt { coeffs: [a0, a1, a2, a3] }
    }

    pub fn zero() -> Self {
        Self::new(C::zero(), C::zero(), C::zero(), C::zero())
    }

    pub fn one() -> Self {
        Self::from_int(C::one())
    }

    pub fn from_int(n: C) -> Self {
        Self::new(n, C::zero(), C::zero(), C::zero())
    }

    /// ω^j for any integer `j` (taken mod 8).
    pub fn omega_pow(j: i64) -> Self {
        let j = j.rem_euclid(8) as usize;
        let mut coeffs = [C::zero(), C::zero(), C::zero(), C::zero()];
        coeffs[j % 4] = if j < 4 { C::one() } else { -C::one() };
        CycloInt { coeffs }
    }

    /// √2 = ω − ω³.
    pub fn sqrt2() -> Self {
        Self::new(C::zero(), C::one(), C::zero(), -C::one())
    }

    pub fn coeffs(&self) -> &[C; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_zero())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let [a0, a1, a2, a3] = &self.coeffs;
        let [b0, b1, b2, b3] = &other.coeffs;
        Ok(Self::new(a0.add_c(b0)?, a1.add_c(b1)?, a2.add_c(b2)?, a3.add_c(b3)?))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<Self, ArithError> {
        let [a0, a1, a2, a3] = &self.coeffs;
        Ok(Self::new(a0.neg_c()?, a1.neg_c()?, a2.neg_c()?, a3.neg_c()?))
    }

    pub fn checked_scale(&self, s: &C) -> Result<Self, ArithError> {
        let [a0, a1, a2, a3] = &self.coeffs;
        Ok(Self::new(a0.mul_c(s)?, a1.mul_c(s)?, a2.mul_c(s)?, a3.mul_c(s)?))
    }

    /// Polynomial product reduced modulo ω⁴ + 1.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let mut out = [C::zero(), C::zero(), C::zero(), C::zero()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a.mul_c(b)?;
                let k = i + j;
                out[k % 4] = if k < 4 { out[k % 4].add_c(&prod)? } else { out[k % 4].sub_c(&prod)? };
            }
        }
        Ok(CycloInt { coeffs: out })
    }

    /// Complex conjugate: ω ↦ ω⁷ = −ω³, ω² ↦ −ω², ω³ ↦ −ω.
    pub fn checked_conj(&self) -> Result<Self, ArithError> {
        let [a0, a1, a2, a3] = &self.coeffs;
        Ok(Self::new(a0.clone(), a3.neg_c()?, a2.neg_c()?, a1.neg_c()?))
    }

    /// Multiplication by √2 = ω − ω³.
    pub fn checked_mul_sqrt2(&self) -> Result<Self, ArithError> {
        let [a0, a1, a2, a3] = &self.coeffs;
        Ok(Self::new(a1.sub_c(a3)?, a0.add_c(a2)?, a1.add_c(a3)?, a2.sub_c(a0)?))
    }

    /// √2 divides `a0 + a1ω + a2ω² + a3ω³` in ℤ[ω] iff a0 ≡ a2 and a1 ≡ a3 (mod 2).
    pub fn is_divisible_by_sqrt2(&self) -> bool {
        let [a0, a1, a2, a3] = &self.coeffs;
        a0.is_even() == a2.is_even() && a1.is_even() == a3.is_even()
    }

    /// `self / √2`, or `None` when √2 does not divide `self`.
    pub fn checked_div_sqrt2(&self) -> Result<Option<Self>, ArithError> {
        if !self.is_divisible_by_sqrt2() {
            return Ok(None);
        }
        // x/√2 = x·√2/2, and x·√2 has only even coefficients here.
        let t = self.checked_mul_sqrt2()?;
        let [b0, b1, b2, b3] = &t.coeffs;
        Ok(Some(Self::new(b0.half(), b1.half(), b2.half(), b3.half())))
    }

    /// Multiply by (√2)^exp.
    pub fn checked_mul_sqrt2_pow(&self, exp: u32) -> Result<Self, ArithError> {
        let mut out = self.checked_scale(&C::pow2(exp / 2)?)?;
        if exp % 2 == 1 {
            out = out.checked_mul_sqrt2()?;
        }
        Ok(out)
    }

    pub fn to_complex(&self) -> Complex64 {
        let [a0, a1, a2, a3] = &self.coeffs;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (a0, a1, a2, a3) = (a0.as_f64(), a1.as_f64(), a2.as_f64(), a3.as_f64());
        Complex64::new(a0 + (a1 - a3) * h, a2 + (a1 + a3) * h)
    }
}

/// `num / √2^sqrt2_exp`.
///
/// Values produced by the constructors and arithmetic are canonical: either
/// `sqrt2_exp == 0` or √2 does not divide `num`, and zero is `(0, 0)`.
/// Derived equality is structural, so it coincides with numeric equality on
/// canonical values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Amplitude<C> {
    num: CycloInt<C>,
    sqrt2_exp: u32,
}

impl<C: Coeff> Amplitude<C> {
    /// Canonicalizing constructor.
    pub fn new(num: CycloInt<C>, sqrt2_exp: u32) -> Result<Self, ArithError> {
        Self::from_parts_unreduced(num, sqrt2_exp).canonicalize()
    }

    /// Builds the value without reducing it. The result may be non-canonical.
    pub fn from_parts_unreduced(num: CycloInt<C>, sqrt2_exp: u32) -> Self {
        Amplitude { num, sqrt2_exp }
    }

    pub fn zero() -> Self {
        Amplitude { num: CycloInt::zero(), sqrt2_exp: 0 }
    }

    pub fn one() -> Self {
        Self::from_int(C::one())
    }

    pub fn from_int(n: C) -> Self {
        Amplitude { num: CycloInt::from_int(n), sqrt2_exp: 0 }
    }

    pub fn omega_pow(j: i64) -> Self {
        Amplitude { num: CycloInt::omega_pow(j), sqrt2_exp: 0 }
    }

    /// The imaginary unit, ω².
    pub fn i() -> Self {
        Self::omega_pow(2)
    }

    pub fn sqrt2() -> Self {
        Amplitude { num: CycloInt::sqrt2(), sqrt2_exp: 0 }
    }

    pub fn frac_1_sqrt2() -> Self {
        Amplitude { num: CycloInt::one(), sqrt2_exp: 1 }
    }

    /// `n / 2^k`.
    pub fn dyadic(n: C, k: u32) -> Result<Self, ArithError> {
        Self::new(CycloInt::from_int(n), 2 * k)
    }

    pub fn num(&self) -> &CycloInt<C> {
        &self.num
    }

    pub fn sqrt2_exp(&self) -> u32 {
        self.sqrt2_exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.sqrt2_exp == 0 && self.num == CycloInt::one()
    }

    pub fn is_canonical(&self) -> bool {
        if self.num.is_zero() {
            self.sqrt2_exp == 0
        } else {
            self.sqrt2_exp == 0 || !self.num.is_divisible_by_sqrt2()
        }
    }

    /// Strip factors of √2 from the numerator while the exponent allows it.
    pub fn canonicalize(&self) -> Result<Self, ArithError> {
        if self.num.is_zero() {
            return Ok(Self::zero());
        }
        let mut num = self.num.clone();
        let mut k = self.sqrt2_exp;
        while k > 0 {
            match num.checked_div_sqrt2()? {
                Some(q) => {
                    num = q;
                    k -= 1;
                }
                None => break,
            }
        }
        Ok(Amplitude { num, sqrt2_exp: k })
    }

    fn aligned(&self, other: &Self) -> Result<(CycloInt<C>, CycloInt<C>, u32), ArithError> {
        let k = self.sqrt2_exp.max(other.sqrt2_exp);
        let a = self.num.checked_mul_sqrt2_pow(k - self.sqrt2_exp)?;
        let b = other.num.checked_mul_sqrt2_pow(k - other.sqrt2_exp)?;
        Ok((a, b, k))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (a, b, k) = self.aligned(other)?;
        Self::new(a.checked_add(&b)?, k)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<Self, ArithError> {
        Ok(Amplitude { num: self.num.checked_neg()?, sqrt2_exp: self.sqrt2_exp })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let k = self.sqrt2_exp.checked_add(other.sqrt2_exp).ok_or(ArithError::Overflow)?;
        Self::new(self.num.checked_mul(&other.num)?, k)
    }

    pub fn conj(&self) -> Result<Self, ArithError> {
        Ok(Amplitude { num: self.num.checked_conj()?, sqrt2_exp: self.sqrt2_exp })
    }

    /// |x|², exactly.
    pub fn mod_sq(&self) -> Result<ExactReal<C>, ArithError> {
        let prod = self.num.checked_mul(&self.num.checked_conj()?)?;
        real_over_sqrt2_pow(&prod, 2 * self.sqrt2_exp)?.ok_or(ArithError::NonRealModulus)
    }

    /// The value as an [`ExactReal`] when it is real.
    pub fn to_exact_real(&self) -> Result<Option<ExactReal<C>>, ArithError> {
        real_over_sqrt2_pow(&self.num, self.sqrt2_exp)
    }

    pub fn to_complex(&self) -> Complex64 {
        let scale = 0.5f64.powi((self.sqrt2_exp / 2) as i32)
            * if self.sqrt2_exp % 2 == 1 { std::f64::consts::FRAC_1_SQRT_2 } else { 1.0 };
        self.num.to_complex() * scale
    }

    /// When the value is `±√2^m` for some integer `m` (possibly negative),
    /// returns the sign and `m`. Used to accept divisors in coefficient text.
    pub fn as_signed_sqrt2_power(&self) -> Option<(bool, i64)> {
        let mut num = self.num.clone();
        let mut m = -(self.sqrt2_exp as i64);
        loop {
            if num == CycloInt::one() {
                return Some((false, m));
            }
            if num == CycloInt::from_int(-C::one()) {
                return Some((true, m));
            }
            match num.checked_div_sqrt2().ok()? {
                Some(q) if !num.is_zero() => {
                    num = q;
                    m += 1;
                }
                _ => return None,
            }
        }
    }

    /// `self · √2^{-m}` for any integer `m`.
    pub fn checked_div_sqrt2_pow(&self, m: i64) -> Result<Self, ArithError> {
        if m >= 0 {
            let k = self.sqrt2_exp.checked_add(u32::try_from(m).map_err(|_| ArithError::Overflow)?);
            Self::new(self.num.clone(), k.ok_or(ArithError::Overflow)?)
        } else {
            let up = u32::try_from(-m).map_err(|_| ArithError::Overflow)?;
            Self::new(self.num.checked_mul_sqrt2_pow(up)?, self.sqrt2_exp)
        }
    }

    /// Splits off a sign and renders the magnitude as a coefficient in the
    /// state notation, e.g. `1/sqrt2`, `i/2`, `(1 + w)/sqrt2`.
    pub fn coefficient_text(&self) -> (bool, String) {
        let (negative, numerator) = numerator_text(&self.num, Style::Ascii);
        let text = match denominator_text(self.sqrt2_exp, Style::Ascii) {
            None => numerator,
            Some(den) => format!("{numerator}/{den}"),
        };
        (negative, text)
    }

    /// Same shape as [`Amplitude::coefficient_text`] but as LaTeX math.
    pub fn coefficient_latex(&self) -> (bool, String) {
        let (negative, numerator) = numerator_text(&self.num, Style::Latex);
        let text = match denominator_text(self.sqrt2_exp, Style::Latex) {
            None => numerator,
            Some(den) => format!("\\frac{{{numerator}}}{{{den}}}"),
        };
        (negative, text)
    }
}

/// Interprets `num / √2^k` as a real number when its imaginary part vanishes.
fn real_over_sqrt2_pow<C: Coeff>(num: &CycloInt<C>, k: u32) -> Result<Option<ExactReal<C>>, ArithError> {
    let [a0, a1, a2, a3] = num.coeffs();
    // Im = a2 + (a1 + a3)/√2, so realness means a2 = 0 and a3 = -a1; the
    // value is then a0 + a1·√2.
    if !a2.is_zero() || !a1.add_c(a3)?.is_zero() {
        return Ok(None);
    }
    let real = if k.is_multiple_of(2) {
        ExactReal::new(a0.clone(), a1.clone(), k / 2)?
    } else {
        ExactReal::new(a1.mul_c(&C::two())?, a0.clone(), k.div_ceil(2))?
    };
    Ok(Some(real))
}

#[derive(Clone, Copy)]
enum Style {
    Ascii,
    Latex,
}

fn numerator_text<C: Coeff>(num: &CycloInt<C>, style: Style) -> (bool, String) {
    let nonzero: Vec<usize> = (0..4).filter(|&j| !num.coeffs()[j].is_zero()).collect();
    let units = match style {
        Style::Ascii => ["", "w", "i", "w^3"],
        Style::Latex => ["", "\\omega", "i", "\\omega^{3}"],
    };
    if let [j] = nonzero[..] {
        let a = &num.coeffs()[j];
        let mag = a.abs();
        let text = match (mag.is_one(), j) {
            (_, 0) => mag.to_string(),
            (true, _) => units[j].to_string(),
            (false, _) => match style {
                Style::Ascii => format!("{mag}*{}", units[j]),
                Style::Latex => format!("{mag}{}", units[j]),
            },
        };
        return (a.is_negative(), text);
    }
    let [_, a1, _, a3] = num.coeffs();
    if nonzero == [1, 3] && *a3 == -a1.clone() {
        // n·√2 only occurs canonically with no denominator.
        let mag = a1.abs();
        let root = match style {
            Style::Ascii => "sqrt2",
            Style::Latex => "\\sqrt{2}",
        };
        let text = if mag.is_one() {
            root.to_string()
        } else if matches!(style, Style::Ascii) {
            format!("{mag}*{root}")
        } else {
            format!("{mag}{root}")
        };
        return (a1.is_negative(), text);
    }
    let mut body = String::new();
    for &j in &nonzero {
        let a = &num.coeffs()[j];
        let mag = a.abs();
        let sep = if body.is_empty() {
            if a.is_negative() {
                "-"
            } else {
                ""
            }
        } else if a.is_negative() {
            " - "
        } else {
            " + "
        };
        body.push_str(sep);
        let term = match (j, mag.is_one(), style) {
            (0, _, _) => mag.to_string(),
            (_, true, _) => units[j].to_string(),
            (_, false, Style::Ascii) => format!("{mag}*{}", units[j]),
            (_, false, Style::Latex) => format!("{mag}{}", units[j]),
        };
        body.push_str(&term);
    }
    (false, format!("({body})"))
}

fn denominator_text(k: u32, style: Style) -> Option<String> {
    if k == 0 {
        return None;
    }
    let pow = |e: u32| 2u128.checked_pow(e).map(|v| v.to_string()).unwrap_or_else(|| format!("2^{e}"));
    Some(match (k % 2, style) {
        (0, _) => pow(k / 2),
        (_, Style::Ascii) if k == 1 => "sqrt2".to_string(),
        (_, Style::Latex) if k == 1 => "\\sqrt{2}".to_string(),
        (_, Style::Ascii) => format!("({}*sqrt2)", pow(k / 2)),
        (_, Style::Latex) => format!("{}\\sqrt{{2}}", pow(k / 2)),
    })
}

/// Diagnostic form `(a0 + a1·w + a2·w^2 + a3·w^3)/sqrt2^k`, listing only
/// nonzero terms.
impl<C: Coeff> fmt::Display for Amplitude<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = ["", "w", "w^2", "w^3"];
        let mut body = String::new();
        for (j, a) in self.num.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            let sep = match (body.is_empty(), a.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            body.push_str(sep);
            if j == 0 {
                body.push_str(&mag.to_string());
            } else if mag.is_one() {
                body.push_str(names[j]);
            } else {
                body.push_str(&format!("{mag}·{}", names[j]));
            }
        }
        if self.sqrt2_exp == 0 {
            write!(f, "({body})")
        } else {
            write!(f, "({body})/sqrt2^{}", self.sqrt2_exp)
        }
    }
}

/// `(p + q·√2) / 2^k`: the real numbers that Born probabilities take here.
///
/// Canonical: `k == 0` or `p`, `q` not both even; zero is `(0, 0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactReal<C> {
    p: C,
    q: C,
    k: u32,
}

impl<C: Coeff> ExactReal<C> {
    pub fn new(p: C, q: C, k: u32) -> Result<Self, ArithError> {
        let mut out = ExactReal { p, q, k };
        if out.p.is_zero() && out.q.is_zero() {
            out.k = 0;
        }
        while out.k > 0 && out.p.is_even() && out.q.is_even() {
            out.p = out.p.half();
            out.q = out.q.half();
            out.k -= 1;
        }
        Ok(out)
    }

    pub fn zero() -> Self {
        ExactReal { p: C::zero(), q: C::zero(), k: 0 }
    }

    pub fn one() -> Self {
        ExactReal { p: C::one(), q: C::zero(), k: 0 }
    }

    /// `n / 2^k`.
    pub fn dyadic(n: C, k: u32) -> Result<Self, ArithError> {
        Self::new(n, C::zero(), k)
    }

    pub fn parts(&self) -> (&C, &C, u32) {
        (&self.p, &self.q, self.k)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let k = self.k.max(other.k);
        let sa = C::pow2(k - self.k)?;
        let sb = C::pow2(k - other.k)?;
        let p = self.p.mul_c(&sa)?.add_c(&other.p.mul_c(&sb)?)?;
        let q = self.q.mul_c(&sa)?.add_c(&other.q.mul_c(&sb)?)?;
        Self::new(p, q, k)
    }

    pub fn checked_neg(&self) -> Result<Self, ArithError> {
        Ok(ExactReal { p: self.p.neg_c()?, q: self.q.neg_c()?, k: self.k })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let two = C::two();
        let p = self.p.mul_c(&other.p)?.add_c(&self.q.mul_c(&other.q)?.mul_c(&two)?)?;
        let q = self.p.mul_c(&other.q)?.add_c(&self.q.mul_c(&other.p)?)?;
        let k = self.k.checked_add(other.k).ok_or(ArithError::Overflow)?;
        Self::new(p, q, k)
    }

    /// Sign of `p + q√2`, decided exactly.
    pub fn signum(&self) -> Result<std::cmp::Ordering, ArithError> {
        use std::cmp::Ordering::*;
        let sp = self.p.cmp(&C::zero());
        let sq = self.q.cmp(&C::zero());
        Ok(match (sp, sq) {
            (Equal, s) | (s, Equal) => s,
            (a, b) if a == b => a,
            // Opposite signs: compare p² with 2q².
            _ => {
                let p2 = self.p.mul_c(&self.p)?;
                let q2 = self.q.mul_c(&self.q)?.mul_c(&C::two())?;
                match p2.cmp(&q2) {
                    Greater => sp,
                    Less => sq,
                    Equal => unreachable!("√2 is irrational"),
                }
            }
        })
    }

    pub fn is_positive(&self) -> Result<bool, ArithError> {
        Ok(self.signum()? == std::cmp::Ordering::Greater)
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<std::cmp::Ordering, ArithError> {
        self.checked_sub(other)?.signum()
    }

    pub fn to_f64(&self) -> f64 {
        (self.p.as_f64() + self.q.as_f64() * std::f64::consts::SQRT_2) * 0.5f64.powi(self.k as i32)
    }

    /// The same number as an [`Amplitude`].
    pub fn to_amplitude(&self) -> Result<Amplitude<C>, ArithError> {
        let num = CycloInt::new(self.p.clone(), self.q.clone(), C::zero(), self.q.neg_c()?);
        Amplitude::new(num, 2 * self.k)
    }

    pub fn to_latex(&self) -> String {
        let num = self.numerator_with(|| "\\sqrt{2}".to_string(), "");
        if self.k == 0 {
            num
        } else {
            format!("\\frac{{{}}}{{{}}}", num.trim_start_matches('(').trim_end_matches(')'), self.denominator())
        }
    }

    fn denominator(&self) -> String {
        C::pow2(self.k).map(|d| d.to_string()).unwrap_or_else(|_| format!("2^{}", self.k))
    }

    fn numerator_with(&self, root: impl Fn() -> String, mul: &str) -> String {
        let (p, q) = (&self.p, &self.q);
        if q.is_zero() {
            return p.to_string();
        }
        let qmag = q.abs();
        let qtext = if qmag.is_one() { root() } else { format!("{qmag}{mul}{}", root()) };
        if p.is_zero() {
            return if q.is_negative() { format!("-{qtext}") } else { qtext };
        }
        let sep = if q.is_negative() { " - " } else { " + " };
        format!("({p}{sep}{qtext})")
    }
}

/// `p`, `p/2^k` or `(p + q*sqrt2)/2^k` with the power of two evaluated.
impl<C: Coeff> fmt::Display for ExactReal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator_with(|| "sqrt2".to_string(), "*");
        if self.k == 0 {
            f.write_str(&num)
        } else {
            write!(f, "{num}/{}", self.denominator())
        }
    }
}

impl<C: Coeff> std::ops::Add for &Amplitude<C> {
    type Output = Amplitude<C>;
    /// Panics on coefficient overflow; use [`Amplitude::checked_add`] to handle it.
    fn add(self, rhs: Self) -> Amplitude<C> {
        self.checked_add(rhs).expect("amplitude coefficient overflow")
    }
}

impl<C: Coeff> std::ops::Mul for &Amplitude<C> {
    type Output = Amplitude<C>;
    /// Panics on coefficient overflow; use [`Amplitude::checked_mul`] to handle it.
    fn mul(self, rhs: Self) -> Amplitude<C> {
        self.checked_mul(rhs).expect("amplitude coefficient overflow")
    }
}

impl<C: Coeff> std::ops::Neg for &Amplitude<C> {
    type Output = Amplitude<C>;
    fn neg(self) -> Amplitude<C> {
        self.checked_neg().expect("amplitude coefficient overflow")
    }
}

/// `n / 2^k` as an amplitude, for tests and constants.
pub fn dyadic<C: Coeff>(n: i64, k: u32) -> Amplitude<C> {
    Amplitude::dyadic(c(n), k).expect("small dyadic constant")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type A = Amplitude<i64>;

    fn cyc(a: [i64; 4]) -> CycloInt<i64> {
        CycloInt::new(a[0], a[1], a[2], a[3])
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn half_plus_half_is_sqrt2() {
        let h = A::frac_1_sqrt2();
        let s = h.checked_add(&h).unwrap();
        assert_eq!(s.num(), &cyc([0, 1, 0, -1]));
        assert_eq!(s.sqrt2_exp(), 0);
        assert_eq!(s, A::sqrt2());
    }

    #[test]
    fn opposite_halves_cancel() {
        let sum = dyadic::<i64>(1, 1).checked_add(&dyadic(-1, 1)).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum, A::zero());
        assert_eq!(sum.sqrt2_exp(), 0);
    }

    #[test]
    fn products() {
        let h = A::frac_1_sqrt2();
        assert_eq!(h.checked_mul(&h).unwrap(), dyadic(1, 1));
        assert_eq!(A::omega_pow(1).checked_mul(&A::omega_pow(3)).unwrap(), A::from_int(-1));
    }

    #[test]
    fn conjugation() {
        assert_eq!(A::frac_1_sqrt2().conj().unwrap(), A::frac_1_sqrt2());
        assert_eq!(A::omega_pow(1).conj().unwrap(), A::omega_pow(3).checked_neg().unwrap());
    }

    #[test]
    fn modulus_squared() {
        assert_eq!(A::frac_1_sqrt2().mod_sq().unwrap(), ExactReal::dyadic(1, 1).unwrap());
        assert_eq!(A::zero().mod_sq().unwrap(), ExactReal::zero());
        // (1 + i)/√2 has modulus 1.
        let x = A::new(cyc([1, 0, 1, 0]), 1).unwrap();
        assert!((x.to_complex().norm_sqr() - 1.0).abs() < 1e-12);
        assert_eq!(x.mod_sq().unwrap(), ExactReal::one());
    }

    #[test]
    fn canonicalize_reduces_exponent() {
        let raw = A::from_parts_unreduced(cyc([2, 0, 0, 0]), 2);
        assert!(!raw.is_canonical());
        let canon = raw.canonicalize().unwrap();
        assert_eq!(canon, A::one());
        assert_eq!(canon.sqrt2_exp(), 0);
        let zero = A::from_parts_unreduced(CycloInt::zero(), 5).canonicalize().unwrap();
        assert_eq!(zero.sqrt2_exp(), 0);
    }

    #[test]
    fn float_views() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(A::frac_1_sqrt2().to_complex(), Complex64::new(h, 0.0)));
        assert!(close(A::omega_pow(1).to_complex(), Complex64::new(h, h)));
    }

    #[test]
    fn diagnostic_text() {
        assert_eq!(A::frac_1_sqrt2().to_string(), "(1)/sqrt2^1");
        assert_eq!(A::sqrt2().to_string(), "(w - w^3)");
        assert_eq!(A::new(cyc([1, 2, 0, -1]), 3).unwrap().to_string(), "(1 + 2·w - w^3)/sqrt2^3");
        assert_eq!(A::zero().to_string(), "0");
    }

    #[test]
    fn coefficient_text_forms() {
        assert_eq!(A::frac_1_sqrt2().coefficient_text(), (false, "1/sqrt2".into()));
        assert_eq!(dyadic::<i64>(-1, 1).coefficient_text(), (true, "1/2".into()));
        assert_eq!(A::i().coefficient_text(), (false, "i".into()));
        assert_eq!(A::omega_pow(5).coefficient_text(), (true, "w".into()));
        assert_eq!(A::new(cyc([1, 0, 0, 0]), 3).unwrap().coefficient_text(), (false, "1/(2*sqrt2)".into()));
        assert_eq!(A::new(cyc([1, 1, 0, 0]), 1).unwrap().coefficient_text(), (false, "(1 + w)/sqrt2".into()));
        assert_eq!(A::frac_1_sqrt2().coefficient_latex(), (false, "\\frac{1}{\\sqrt{2}}".into()));
    }

    #[test]
    fn exact_real_text() {
        assert_eq!(ExactReal::<i64>::dyadic(1, 1).unwrap().to_string(), "1/2");
        assert_eq!(ExactReal::<i64>::one().to_string(), "1");
        assert_eq!(ExactReal::<i64>::new(2, 1, 2).unwrap().to_string(), "(2 + sqrt2)/4");
        assert_eq!(ExactReal::<i64>::new(2, -1, 2).unwrap().to_latex(), "\\frac{2 - \\sqrt{2}}{4}");
    }

    #[test]
    fn exact_real_sign() {
        use std::cmp::Ordering::*;
        assert_eq!(ExactReal::<i64>::new(2, -1, 0).unwrap().signum().unwrap(), Greater);
        assert_eq!(ExactReal::<i64>::new(1, -1, 0).unwrap().signum().unwrap(), Less);
        assert_eq!(ExactReal::<i64>::new(-3, 2, 0).unwrap().signum().unwrap(), Less);
        assert_eq!(ExactReal::<i64>::zero().signum().unwrap(), Equal);
    }

    #[test]
    fn exact_real_amplitude_round_trip() {
        let r = ExactReal::<i64>::new(2, 1, 2).unwrap();
        assert_eq!(r.to_amplitude().unwrap().to_exact_real().unwrap(), Some(r));
        assert_eq!(A::i().to_exact_real().unwrap(), None);
    }

    #[test]
    fn i64_overflow_is_reported() {
        let big = A::from_int(i64::MAX);
        assert_eq!(big.checked_add(&A::one()), Err(ArithError::Overflow));
        assert_eq!(A::from_int(i64::MIN).checked_neg(), Err(ArithError::Overflow));
        let b = Amplitude::<BigInt>::from_int(BigInt::from(i64::MAX));
        assert!(b.checked_add(&Amplitude::one()).is_ok());
    }

    #[test]
    fn sqrt2_power_detection() {
        assert_eq!(A::sqrt2().as_signed_sqrt2_power(), Some((false, 1)));
        assert_eq!(dyadic::<i64>(-1, 1).as_signed_sqrt2_power(), Some((true, -2)));
        assert_eq!(A::from_int(4).as_signed_sqrt2_power(), Some((false, 4)));
        assert_eq!(A::from_int(3).as_signed_sqrt2_power(), None);
        assert_eq!(A::i().as_signed_sqrt2_power(), None);
    }
}
