//! Upper-triangular 2×2 matrices over triangular-algebra elements.

use std::fmt;

use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};
use crate::talgebra::{Element, Family, Generator};

/// Which generator matrix of the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    U1,
    U2,
}

impl Which {
    fn generators(self) -> (Generator, Generator, Generator) {
        match self {
            Which::U1 => (Generator::Alpha1, Generator::Beta1, Generator::Gamma1),
            Which::U2 => (Generator::Alpha2, Generator::Beta2, Generator::Gamma2),
        }
    }
}

/// `[[a11, a12], [0, a22]]`; the lower-left zero is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UTMatrix {
    a11: Element,
    a12: Element,
    a22: Element,
}

/// Rewrites a word that is known to stay inside the β-degree ≤ 1 subspace.
fn word(family: Family, w: &[(Generator, i64)]) -> Element {
    Element::from_word(family, w).expect("closed-form words are reducible")
}

impl UTMatrix {
    pub fn new(a11: Element, a12: Element, a22: Element) -> Result<Self> {
        for e in [&a12, &a22] {
            if e.family() != a11.family() {
                return Err(Error::FamilyMismatch(a11.family(), e.family()));
            }
        }
        Ok(Self { a11, a12, a22 })
    }

    pub fn identity(family: Family) -> Self {
        Self {
            a11: Element::one(family),
            a12: Element::zero(family),
            a22: Element::one(family),
        }
    }

    /// `Uᵢ = [[αᵢ, βᵢ], [0, γᵢ]]`.
    pub fn generator(which: Which, family: Family) -> Self {
        let (a, b, g) = which.generators();
        Self {
            a11: word(family, &[(a, 1)]),
            a12: word(family, &[(b, 1)]),
            a22: word(family, &[(g, 1)]),
        }
    }

    pub fn family(&self) -> Family {
        self.a11.family()
    }

    pub fn a11(&self) -> &Element {
        &self.a11
    }

    pub fn a12(&self) -> &Element {
        &self.a12
    }

    pub fn a22(&self) -> &Element {
        &self.a22
    }

    pub fn entries(&self) -> [&Element; 3] {
        [&self.a11, &self.a12, &self.a22]
    }

    pub fn mul(&self, other: &UTMatrix) -> Result<UTMatrix> {
        let corner = &self.a11.mul(&other.a12)? + &self.a12.mul(&other.a22)?;
        Ok(UTMatrix {
            a11: self.a11.mul(&other.a11)?,
            a12: corner,
            a22: self.a22.mul(&other.a22)?,
        })
    }

    /// `[[a⁻¹, -a⁻¹ b c⁻¹], [0, c⁻¹]]`.
    pub fn inverse(&self) -> Result<UTMatrix> {
        let a_inv = self.a11.inverse()?;
        let c_inv = self.a22.inverse()?;
        let corner = -&a_inv.mul(&self.a12)?.mul(&c_inv)?;
        Ok(UTMatrix {
            a11: a_inv,
            a12: corner,
            a22: c_inv,
        })
    }

    /// Iterated product; negative powers iterate the inverse.
    pub fn pow(&self, n: i64) -> Result<UTMatrix> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut out = UTMatrix::identity(self.family());
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentScalar) -> UTMatrix {
        UTMatrix {
            a11: self.a11.scale(c),
            a12: self.a12.scale(c),
            a22: self.a22.scale(c),
        }
    }

    /// Multiply every entry on the left by `e`.
    pub fn left_mul(&self, e: &Element) -> Result<UTMatrix> {
        Ok(UTMatrix {
            a11: e.mul(&self.a11)?,
            a12: e.mul(&self.a12)?,
            a22: e.mul(&self.a22)?,
        })
    }

    /// Multiply every entry on the right by `e`.
    pub fn right_mul(&self, e: &Element) -> Result<UTMatrix> {
        Ok(UTMatrix {
            a11: self.a11.mul(e)?,
            a12: self.a12.mul(e)?,
            a22: self.a22.mul(e)?,
        })
    }

    /// Replace the corner entry by `c · a12`.
    pub fn scale_corner(&self, c: &LaurentScalar) -> UTMatrix {
        UTMatrix {
            a11: self.a11.clone(),
            a12: self.a12.scale(c),
            a22: self.a22.clone(),
        }
    }

    /// `Uᵢⁿ = [[αᵢⁿ, n̄ βᵢ γᵢ^{n-1}], [0, γᵢⁿ]]`, with `n̄` the quantum integer
    /// in `r` (which the family collapses to `n` when `r = 1`).
    pub fn closed_power(which: Which, n: i64, family: Family) -> UTMatrix {
        let (a, b, g) = which.generators();
        UTMatrix {
            a11: word(family, &[(a, n)]),
            a12: word(family, &[(b, 1), (g, n - 1)]).scale(&LaurentScalar::quantum_integer(n)),
            a22: word(family, &[(g, n)]),
        }
    }

    /// Closed form of `U₁ⁿ U₂ᵐ`:
    /// `[[α₁ⁿα₂ᵐ, m̄ α₁ⁿβ₂γ₂^{m-1} + n̄ β₁γ₁^{n-1}γ₂ᵐ], [0, γ₁ⁿγ₂ᵐ]]`.
    pub fn closed_product_entries(n: i64, m: i64, family: Family) -> UTMatrix {
        use Generator::*;
        let first = word(family, &[(Alpha1, n), (Beta2, 1), (Gamma2, m - 1)])
            .scale(&LaurentScalar::quantum_integer(m));
        let second = word(family, &[(Beta1, 1), (Gamma1, n - 1), (Gamma2, m)])
            .scale(&LaurentScalar::quantum_integer(n));
        UTMatrix {
            a11: word(family, &[(Alpha1, n), (Alpha2, m)]),
            a12: &first + &second,
            a22: word(family, &[(Gamma1, n), (Gamma2, m)]),
        }
    }

    /// Finds `λ` with `self = λ · other`.
    pub fn ratio(&self, other: &UTMatrix) -> Option<LaurentScalar> {
        let lambda = self.a11.ratio(&other.a11)?;
        (other.scale(&lambda) == *self).then_some(lambda)
    }
}

impl fmt::Display for UTMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [0, {}]]", self.a11, self.a12, self.a22)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::talgebra::{Beta, TriMonomial};
    use Generator::*;

    fn u(which: Which, family: Family) -> UTMatrix {
        UTMatrix::generator(which, family)
    }

    fn el(family: Family, w: &[(Generator, i64)]) -> Element {
        Element::from_word(family, w).unwrap()
    }

    #[test]
    fn generator_matrices() {
        let m = u(Which::U1, Family::TypeII);
        assert_eq!(m.a11(), &el(Family::TypeII, &[(Alpha1, 1)]));
        assert_eq!(m.a22(), &el(Family::TypeII, &[(Gamma1, 1)]));
        let m = u(Which::U2, Family::TypeI);
        assert_eq!(
            m.a22(),
            &Element::from_monomial(Family::TypeI, TriMonomial::new(None, [0, -1, 0, 0]), 1.into())
                .unwrap()
        );
        assert_eq!(m.a12(), &el(Family::TypeI, &[(Beta2, 1)]));
    }

    #[test]
    fn product_and_q_commutation() {
        for family in Family::ALL {
            let (u1, u2) = (u(Which::U1, family), u(Which::U2, family));
            let p = u1.mul(&u2).unwrap();
            let corner = &el(family, &[(Alpha1, 1), (Beta2, 1)]) + &el(family, &[(Beta1, 1), (Gamma2, 1)]);
            assert_eq!(p.a12(), &corner);
            assert_eq!(p, u2.mul(&u1).unwrap().scale(&LaurentScalar::q()));
            assert_eq!(u1.mul(&UTMatrix::identity(family)).unwrap(), u1);
        }
    }

    #[test]
    fn inverse() {
        for family in Family::ALL {
            let inv = u(Which::U1, family).inverse().unwrap();
            let expected = -&el(family, &[(Alpha1, -1), (Beta1, 1), (Gamma1, -1)]);
            assert_eq!(inv.a12(), &expected);
            let id = UTMatrix::identity(family);
            assert_eq!(id.inverse().unwrap(), id);
            let u2 = u(Which::U2, family);
            assert_eq!(u2.inverse().unwrap().inverse().unwrap(), u2);
        }
        let bad = UTMatrix::new(
            el(Family::TypeII, &[(Beta1, 1)]),
            Element::zero(Family::TypeII),
            Element::one(Family::TypeII),
        )
        .unwrap();
        assert!(matches!(bad.inverse(), Err(Error::NonInvertibleEntry(_))));
    }

    #[test]
    fn powers() {
        for family in Family::ALL {
            let u1 = u(Which::U1, family);
            assert_eq!(u1.pow(0).unwrap(), UTMatrix::identity(family));
            assert_eq!(u1.pow(-1).unwrap(), u1.inverse().unwrap());
        }
        let sq = u(Which::U1, Family::TypeII).pow(2).unwrap();
        assert_eq!(sq.a12(), &el(Family::TypeII, &[(Beta1, 1), (Gamma1, 1)]).scale(&2.into()));
    }

    #[test]
    fn closed_forms() {
        let c = UTMatrix::closed_power(Which::U1, 2, Family::TypeIII);
        let expected = el(Family::TypeIII, &[(Beta1, 1), (Gamma1, 1)])
            .scale(&(&LaurentScalar::one() + &LaurentScalar::r_pow(1)));
        assert_eq!(c.a12(), &expected);
        for family in Family::ALL {
            assert_eq!(UTMatrix::closed_power(Which::U2, 0, family), UTMatrix::identity(family));
        }
        // n = -1: n̄ = -r⁻¹
        let c = UTMatrix::closed_power(Which::U1, -1, Family::TypeIII);
        let expected = Element::from_monomial(
            Family::TypeIII,
            TriMonomial::new(Some(Beta::B1), [0, 0, -2, 0]),
            LaurentScalar::monomial(-1, 0, -1),
        )
        .unwrap();
        assert_eq!(c.a12(), &expected);
    }

    #[test]
    fn closed_products() {
        assert_eq!(
            UTMatrix::closed_product_entries(1, 0, Family::TypeII),
            u(Which::U1, Family::TypeII)
        );
        let c = UTMatrix::closed_product_entries(1, 1, Family::TypeIII);
        let corner = &el(Family::TypeIII, &[(Alpha1, 1), (Beta2, 1)])
            + &el(Family::TypeIII, &[(Beta1, 1), (Gamma2, 1)]);
        assert_eq!(c.a12(), &corner);
        // α₁²β₂ + 2β₁γ₁γ₂, expanded by hand as U₁·U₁·U₂ corner:
        // α₁(α₁β₂ + β₁γ₂) + β₁γ₁γ₂ = α₁²β₂ + α₁β₁γ₂ + β₁γ₁γ₂ and α₁β₁ = β₁γ₁ (IND1).
        let c = UTMatrix::closed_product_entries(2, 1, Family::TypeII);
        let corner = &el(Family::TypeII, &[(Alpha1, 2), (Beta2, 1)])
            + &el(Family::TypeII, &[(Beta1, 1), (Gamma1, 1), (Gamma2, 1)]).scale(&2.into());
        assert_eq!(c.a12(), &corner);
    }
}
