//! Exact arithmetic in the number field Q(i, √2).
//!
//! Every coefficient in this crate lives in the field generated over the
//! rationals by the imaginary unit and √2, written on the fixed basis
//! {1, i, √2, i·√2}. The representation is componentwise and unique, so
//! scalar equality is structural equality and every identity check built
//! on top of it is a decidable, bit-for-bit reproducible comparison.
//! There is no floating point anywhere.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

/// Scalars the linear algebra in this crate can run on: an exact field
/// with decidable equality. [`Rational`] and [`FieldElem`] both qualify.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Div<Output = T>
        + Send
        + Sync
{
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("zero has no multiplicative inverse")]
    ZeroInversion,
    #[error("invalid scalar token '{0}'")]
    Parse(String),
}

/// Element a + b·i + c·√2 + d·i·√2 of Q(i, √2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElem {
    /// Coefficient of 1.
    pub a: Rational,
    /// Coefficient of i.
    pub b: Rational,
    /// Coefficient of √2.
    pub c: Rational,
    /// Coefficient of i·√2.
    pub d: Rational,
}

fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl FieldElem {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_rational(a: Rational) -> Self {
        Self::new(a, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    /// √2.
    pub fn sqrt2() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    fn component(&self, k: usize) -> &Rational {
        match k {
            0 => &self.a,
            1 => &self.b,
            2 => &self.c,
            _ => &self.d,
        }
    }

    fn component_mut(&mut self, k: usize) -> &mut Rational {
        match k {
            0 => &mut self.a,
            1 => &mut self.b,
            2 => &mut self.c,
            _ => &mut self.d,
        }
    }

    /// Conjugation i ↦ −i.
    pub fn conj_i(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.c.clone(), -self.d.clone())
    }

    /// Conjugation √2 ↦ −√2.
    pub fn conj_sqrt2(&self) -> Self {
        Self::new(self.a.clone(), self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self::new(&self.a * r, &self.b * r, &self.c * r, &self.d * r)
    }

    /// Multiplicative inverse, computed by multiplying the conjugates
    /// under i ↦ −i and √2 ↦ −√2 down to a rational norm.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroInversion);
        }
        let ci = self.conj_i();
        let y = self * &ci; // lies in Q(√2)
        let cy = y.conj_sqrt2();
        let norm = &y * &cy; // rational, nonzero for nonzero input
        debug_assert!(norm.is_rational() && !norm.a.is_zero());
        let num = &ci * &cy;
        Ok(num.scale_rational(&norm.a.recip()))
    }

    /// Full four-term form used in serialized documents, e.g.
    /// `1/2 + 0*i + -3/1*r2 + 0*i*r2`.
    pub fn canonical_string(&self) -> String {
        format!(
            "{} + {}*i + {}*r2 + {}*i*r2",
            canon_rat(&self.a),
            canon_rat(&self.b),
            canon_rat(&self.c),
            canon_rat(&self.d)
        )
    }
}

fn canon_rat(r: &Rational) -> String {
    if r.is_zero() {
        "0".to_owned()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn compact_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElem {
    /// Compact form: zero terms omitted, `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        if !self.a.is_zero() {
            terms.push(compact_rat(&self.a));
        }
        if !self.b.is_zero() {
            terms.push(format!("{}*i", compact_rat(&self.b)));
        }
        if !self.c.is_zero() {
            terms.push(format!("{}*r2", compact_rat(&self.c)));
        }
        if !self.d.is_zero() {
            terms.push(format!("{}*i*r2", compact_rat(&self.d)));
        }
        write!(f, "{}", terms.join(" + "))
    }
}

// Products of basis slots {1, i, r2, i*r2}: (slot, integer factor).
const SLOT_MUL: [[(usize, i64); 4]; 4] = [
    [(0, 1), (1, 1), (2, 1), (3, 1)],
    [(1, 1), (0, -1), (3, 1), (2, -1)],
    [(2, 1), (3, 1), (0, 2), (1, 2)],
    [(3, 1), (2, -1), (1, 2), (0, -2)],
];

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::new(&self.a + &rhs.a, &self.b + &rhs.b, &self.c + &rhs.c, &self.d + &rhs.d)
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::new(&self.a - &rhs.a, &self.b - &rhs.b, &self.c - &rhs.c, &self.d - &rhs.d)
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        if self.is_zero() || rhs.is_zero() {
            return FieldElem::zero();
        }
        if self.is_rational() {
            return rhs.scale_rational(&self.a);
        }
        if rhs.is_rational() {
            return self.scale_rational(&rhs.a);
        }
        let mut out = FieldElem::zero();
        for s in 0..4 {
            let xs = self.component(s);
            if xs.is_zero() {
                continue;
            }
            for t in 0..4 {
                let yt = rhs.component(t);
                if yt.is_zero() {
                    continue;
                }
                let (slot, factor) = SLOT_MUL[s][t];
                let mut p = xs * yt;
                match factor {
                    1 => {}
                    -1 => p = -p,
                    2 => p = &p + &p,
                    _ => {
                        let doubled = &p + &p;
                        p = -doubled;
                    }
                }
                *out.component_mut(slot) += p;
            }
        }
        out
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::new(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                $trait::$method(self, &rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl Div for FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: FieldElem) -> FieldElem {
        let inv = rhs.inv().expect("division by zero field element");
        &self * &inv
    }
}

impl AddAssign for FieldElem {
    fn add_assign(&mut self, rhs: FieldElem) {
        self.a += rhs.a;
        self.b += rhs.b;
        self.c += rhs.c;
        self.d += rhs.d;
    }
}

impl SubAssign for FieldElem {
    fn sub_assign(&mut self, rhs: FieldElem) {
        self.a -= rhs.a;
        self.b -= rhs.b;
        self.c -= rhs.c;
        self.d -= rhs.d;
    }
}

impl Zero for FieldElem {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl One for FieldElem {
    fn one() -> Self {
        Self::from_int(1)
    }
}

enum BasisMark {
    Unit,
    I,
    R2,
    IR2,
}

fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let bad = || ScalarError::Parse(s.to_owned());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

fn parse_term(term: &str) -> Result<FieldElem, ScalarError> {
    let compact: String = term.chars().filter(|ch| !ch.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ScalarError::Parse(term.to_owned()));
    }
    let (coeff, mark) = if let Some(p) = compact.strip_suffix("*i*r2") {
        (p.to_owned(), BasisMark::IR2)
    } else if let Some(p) = compact.strip_suffix("*r2*i") {
        (p.to_owned(), BasisMark::IR2)
    } else if let Some(p) = compact.strip_suffix("*r2") {
        (p.to_owned(), BasisMark::R2)
    } else if let Some(p) = compact.strip_suffix("*i") {
        (p.to_owned(), BasisMark::I)
    } else if compact == "i" || compact == "-i" || compact == "r2" || compact == "-r2"
        || compact == "i*r2" || compact == "-i*r2"
    {
        let (sign, rest) = match compact.strip_prefix('-') {
            Some(r) => ("-1", r),
            None => ("1", compact.as_str()),
        };
        let mark = match rest {
            "i" => BasisMark::I,
            "r2" => BasisMark::R2,
            _ => BasisMark::IR2,
        };
        (sign.to_owned(), mark)
    } else {
        (compact.clone(), BasisMark::Unit)
    };
    let q = parse_rational(&coeff)?;
    let mut out = FieldElem::zero();
    match mark {
        BasisMark::Unit => out.a = q,
        BasisMark::I => out.b = q,
        BasisMark::R2 => out.c = q,
        BasisMark::IR2 => out.d = q,
    }
    Ok(out)
}

impl FromStr for FieldElem {
    type Err = ScalarError;

    /// Parses the scalar grammar: terms `p/q`, `p/q*i`, `p/q*r2`,
    /// `p/q*i*r2` joined by `+`, with zero terms omissible and bare
    /// `i`/`r2`/`i*r2` accepted.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(ScalarError::Parse(s.to_owned()));
        }
        let mut out = FieldElem::zero();
        for term in trimmed.split('+') {
            out += parse_term(term)?;
        }
        Ok(out)
    }
}
