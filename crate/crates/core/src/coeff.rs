//! Exact Laurent-polynomial scalars in two formal variables.
//!
//! A [`LaurentScalar`] is an element of `Z[s, 1/s, r, 1/r]` where the
//! deformation parameter is `q = s^2`. Working in `s` keeps half-integer
//! powers of `q` integral, which the pair transformations need.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sparse integer Laurent polynomial in `s` and `r`.
///
/// Keys are `(s_exponent, r_exponent)`; zero coefficients are never stored,
/// so structural equality is ring equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentScalar {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * s^s_exp * r^r_exp`.
    pub fn monomial(c: impl Into<BigInt>, s_exp: i64, r_exp: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(s_exp, r_exp, c.into());
        out
    }

    /// `s^half_exponent`, i.e. `q^(half_exponent / 2)`.
    pub fn q_pow(half_exponent: i64) -> Self {
        Self::monomial(1, half_exponent, 0)
    }

    /// The deformation parameter `q = s^2`.
    pub fn q() -> Self {
        Self::q_pow(2)
    }

    pub fn r_pow(exponent: i64) -> Self {
        Self::monomial(1, 0, exponent)
    }

    /// The quantum integer `(1 - r^n) / (1 - r)`, a Laurent polynomial in `r`
    /// for every integer `n`.
    pub fn quantum_integer(n: i64) -> Self {
        let mut out = Self::zero();
        if n >= 0 {
            for k in 0..n {
                out.add_term(0, k, BigInt::one());
            }
        } else {
            for k in 1..=-n {
                out.add_term(0, -k, -BigInt::one());
            }
        }
        out
    }

    /// Evaluate at `r = 1`, merging terms that collide.
    pub fn substitute_r_one(&self) -> Self {
        let mut out = Self::zero();
        for (&(s, _), c) in &self.terms {
            out.add_term(s, 0, c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    /// True if any term carries a nonzero power of `r`.
    pub fn has_r(&self) -> bool {
        self.terms.keys().any(|&(_, r)| r != 0)
    }

    /// Returns `(sign, s_exp, r_exp)` when the scalar is `±s^a r^b`.
    pub fn as_unit_monomial(&self) -> Option<(i8, i64, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(s, r), c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((1, s, r))
        } else if (-c).is_one() {
            Some((-1, s, r))
        } else {
            None
        }
    }

    /// Multiplicative inverse of a unit monomial `±s^a r^b`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (sign, s, r) = self.as_unit_monomial()?;
        Some(Self::monomial(i64::from(sign), -s, -r))
    }

    /// Multiply by `s^s_exp r^r_exp` (exponent shift).
    pub fn shift(&self, s_exp: i64, r_exp: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(s, r), c)| ((s + s_exp, r + r_exp), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, s_exp: i64, r_exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((s_exp, r_exp)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

impl From<i64> for LaurentScalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        for (&(s, r), c) in &rhs.terms {
            self.add_term(s, r, c.clone());
        }
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(mut self, rhs: LaurentScalar) -> LaurentScalar {
        self += &rhs;
        self
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        self + &(-rhs)
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: LaurentScalar) -> LaurentScalar {
        &self - &rhs
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (&(s1, r1), c1) in &self.terms {
            for (&(s2, r2), c2) in &rhs.terms {
                out.add_term(s1 + s2, r1 + r2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}

/// Writes `|c| * s^a * r^b`, dropping unit factors.
fn write_term_magnitude(
    f: &mut fmt::Formatter<'_>,
    c: &BigInt,
    s: i64,
    r: i64,
    force_coefficient: bool,
) -> fmt::Result {
    let mut parts: Vec<String> = Vec::with_capacity(3);
    let mag = c.abs();
    if !mag.is_one() || force_coefficient || (s == 0 && r == 0) {
        parts.push(mag.to_string());
    }
    if s != 0 {
        parts.push(if s == 1 { "s".into() } else { format!("s^{s}") });
    }
    if r != 0 {
        parts.push(if r == 1 { "r".into() } else { format!("r^{r}") });
    }
    f.write_str(&parts.join(" * "))
}

/// Writes `Σ c · m`: multi-term coefficients are parenthesized, unit
/// coefficients dropped, and an empty sum prints `0`.
pub(crate) fn write_combination<'a, M: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a M, bool, &'a LaurentScalar)>,
) -> fmt::Result {
    let mut empty = true;
    for (idx, (mono, mono_is_one, c)) in terms.enumerate() {
        empty = false;
        if c.len() > 1 {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if mono_is_one {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) * {mono}")?;
            }
            continue;
        }
        let (&(s, r), coeff) = c.terms.iter().next().expect("nonzero coefficient");
        match (idx, coeff.is_negative()) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if mono_is_one {
            write_term_magnitude(f, coeff, s, r, false)?;
        } else {
            if !(coeff.abs().is_one() && s == 0 && r == 0) {
                write_term_magnitude(f, coeff, s, r, false)?;
                f.write_str(" * ")?;
            }
            write!(f, "{mono}")?;
        }
    }
    if empty {
        f.write_str("0")?;
    }
    Ok(())
}

/// Canonical text: terms sorted by `(s, r)` ascending, each `c * s^a * r^b`.
impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&(s, r), c)) in self.terms.iter().enumerate() {
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_term_magnitude(f, c, s, r, false)?;
        }
        Ok(())
    }
}
