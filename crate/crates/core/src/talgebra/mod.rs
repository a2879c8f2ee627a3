//! The triangular pair algebra generated by `α₁ β₁ γ₁ α₂ β₂ γ₂` (with
//! inverses of the diagonal generators) under one of three relation
//! families.
//!
//! Elements are kept in the normal form `α₁^a α₂^b [β] γ₁^c γ₂^d` with
//! β-degree at most one. Multiplication concatenates monomials and rewrites
//! them back to normal form:
//!
//! 1. diagonal generators are sorted into the order `α₁ α₂ γ₁ γ₂`, each block
//!    swap contributing `κ^{nm}` for the tabulated pair factor `κ`;
//! 2. α's standing left of a β are pushed through it and become γ's;
//! 3. under Type I, γ's of β-free words are replaced by α inverses, and the
//!    right-hand segment of a β word is written with γ's only.
//!
//! Type I never consults a γ entry of the swap table: every diagonal word is
//! rewritten into α's first, so its commutation comes from `α₁α₂ = qα₂α₁`
//! and `αᵢγᵢ = 1` alone.

pub mod oracle;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::coeff::{write_combination, LaurentScalar};
use crate::error::{Error, Result};

pub use oracle::oracle_reduce;

/// Relation family of a triangular pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `αᵢγᵢ = γᵢαᵢ = 1`, `αᵢβᵢ = βᵢγᵢ`.
    TypeI,
    /// `αᵢγᵢ = γᵢαᵢ`, `αᵢβᵢ = βᵢγᵢ`.
    TypeII,
    /// `αᵢγᵢ = γᵢαᵢ`, `αᵢβᵢ = rβᵢγᵢ` with formal `r`.
    TypeIII,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::TypeI, Family::TypeII, Family::TypeIII];

    pub fn label(self) -> &'static str {
        match self {
            Family::TypeI => "I",
            Family::TypeII => "II",
            Family::TypeIII => "III",
        }
    }

    /// Types I and II fix `r = 1`.
    pub fn has_formal_r(self) -> bool {
        self == Family::TypeIII
    }

    /// Brings a coefficient into this family's scalar ring.
    pub fn normalize(self, c: LaurentScalar) -> LaurentScalar {
        if self.has_formal_r() {
            c
        } else {
            c.substitute_r_one()
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "1" | "typei" | "type1" => Ok(Family::TypeI),
            "ii" | "2" | "typeii" | "type2" => Ok(Family::TypeII),
            "iii" | "3" | "typeiii" | "type3" => Ok(Family::TypeIII),
            other => Err(format!("unknown relation family `{other}` (expected I, II or III)")),
        }
    }
}

/// One of the six matrix-entry generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Alpha1,
    Alpha2,
    Beta1,
    Beta2,
    Gamma1,
    Gamma2,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Alpha1,
        Generator::Alpha2,
        Generator::Beta1,
        Generator::Beta2,
        Generator::Gamma1,
        Generator::Gamma2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Alpha1 => "a1",
            Generator::Alpha2 => "a2",
            Generator::Beta1 => "b1",
            Generator::Beta2 => "b2",
            Generator::Gamma1 => "g1",
            Generator::Gamma2 => "g2",
        }
    }

    pub fn is_beta(self) -> bool {
        matches!(self, Generator::Beta1 | Generator::Beta2)
    }

    fn piece(self, exponent: i64) -> Result<Option<Piece>> {
        Ok(match self {
            Generator::Alpha1 => Some(Piece::Diag(A1, exponent)),
            Generator::Alpha2 => Some(Piece::Diag(A2, exponent)),
            Generator::Gamma1 => Some(Piece::Diag(G1, exponent)),
            Generator::Gamma2 => Some(Piece::Diag(G2, exponent)),
            Generator::Beta1 | Generator::Beta2 => {
                let beta = if self == Generator::Beta1 { Beta::B1 } else { Beta::B2 };
                match exponent {
                    0 => None,
                    1 => Some(Piece::Beta(beta)),
                    e => return Err(Error::BetaExponent(e)),
                }
            }
        })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown generator `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Beta {
    B1,
    B2,
}

impl Beta {
    pub fn generator(self) -> Generator {
        match self {
            Beta::B1 => Generator::Beta1,
            Beta::B2 => Generator::Beta2,
        }
    }
}

pub(crate) const A1: usize = 0;
pub(crate) const A2: usize = 1;
pub(crate) const G1: usize = 2;
pub(crate) const G2: usize = 3;
const DIAG_NAMES: [&str; 4] = ["a1", "a2", "g1", "g2"];

/// `later · earlier = s^k · earlier · later`, indexed `[later][earlier]`
/// in the canonical order `α₁ α₂ γ₁ γ₂`.
const SWAP_S: [[i64; 4]; 4] = [
    [0, 0, 0, 0],
    [-2, 0, 0, 0], // α₂α₁ = q⁻¹ α₁α₂
    [0, -2, 0, 0], // γ₁α₁ = α₁γ₁,  γ₁α₂ = q⁻¹ α₂γ₁
    [2, 0, -2, 0], // γ₂α₁ = q α₁γ₂, γ₂α₂ = α₂γ₂, γ₂γ₁ = q⁻¹ γ₁γ₂
];

/// `αᵢ βⱼ = s^k r^l βⱼ γᵢ`, returned as `(k, l)`.
fn push_factor(alpha: usize, beta: Beta) -> (i64, i64) {
    match (alpha, beta) {
        (A1, Beta::B1) | (A2, Beta::B2) => (0, 1),
        (A1, Beta::B2) => (2, 0),
        (A2, Beta::B1) => (-2, 0),
        _ => unreachable!("push_factor takes an alpha index"),
    }
}

/// Normal-form monomial `α₁^a α₂^b [β] γ₁^c γ₂^d`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriMonomial {
    beta: Option<Beta>,
    exps: [i64; 4],
}

impl TriMonomial {
    pub const ONE: TriMonomial = TriMonomial {
        beta: None,
        exps: [0; 4],
    };

    /// Exponents are `[α₁, α₂, γ₁, γ₂]`.
    pub fn new(beta: Option<Beta>, exps: [i64; 4]) -> Self {
        Self { beta, exps }
    }

    pub fn beta(&self) -> Option<Beta> {
        self.beta
    }

    pub fn exponents(&self) -> [i64; 4] {
        self.exps
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// Whether this monomial is irreducible under `family`'s rules.
    pub fn is_normal_for(&self, family: Family) -> bool {
        match self.beta {
            Some(_) => self.exps[A1] == 0 && self.exps[A2] == 0,
            None => family != Family::TypeI || (self.exps[G1] == 0 && self.exps[G2] == 0),
        }
    }

    fn pieces(&self) -> impl Iterator<Item = Piece> + '_ {
        let left = [Piece::Diag(A1, self.exps[A1]), Piece::Diag(A2, self.exps[A2])];
        let right = [Piece::Diag(G1, self.exps[G1]), Piece::Diag(G2, self.exps[G2])];
        left.into_iter()
            .chain(self.beta.map(Piece::Beta))
            .chain(right)
    }
}

impl fmt::Display for TriMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let diag = |idx: usize, parts: &mut Vec<String>| match self.exps[idx] {
            0 => {}
            1 => parts.push(DIAG_NAMES[idx].to_string()),
            e => parts.push(format!("{}^{e}", DIAG_NAMES[idx])),
        };
        diag(A1, &mut parts);
        diag(A2, &mut parts);
        if let Some(b) = self.beta {
            parts.push(b.generator().name().to_string());
        }
        diag(G1, &mut parts);
        diag(G2, &mut parts);
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

/// A word segment handed to the rewrite kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Piece {
    Diag(usize, i64),
    Beta(Beta),
}

/// Accumulated scalar `s^s r^r` produced by rewriting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Factor {
    pub s: i64,
    pub r: i64,
}

impl Factor {
    fn scalar(self) -> LaurentScalar {
        LaurentScalar::monomial(1, self.s, self.r)
    }
}

/// Sort a diagonal segment into canonical order. Appending `g^n` to an
/// already sorted word moves it left past every later block `X^e`, which
/// costs `κ(X, g)^{e·n}` by the power form of the swap relation.
fn sort_diagonal(segment: &[(usize, i64)], factor: &mut Factor) -> [i64; 4] {
    let mut e = [0i64; 4];
    for &(g, n) in segment {
        if n == 0 {
            continue;
        }
        for later in (g + 1)..4 {
            factor.s += SWAP_S[later][g] * e[later] * n;
        }
        e[g] += n;
    }
    e
}

/// Rewrite `γᵢ^n` as `αᵢ^{-n}` (Type I).
fn to_alpha(segment: &[(usize, i64)]) -> Vec<(usize, i64)> {
    segment
        .iter()
        .map(|&(g, n)| if g >= G1 { (g - 2, -n) } else { (g, n) })
        .collect()
}

fn describe(segment: &[(usize, i64)], beta: Option<Beta>, beta_first: bool) -> String {
    let diag: Vec<String> = segment
        .iter()
        .filter(|(_, n)| *n != 0)
        .map(|&(g, n)| format!("{}^{n}", DIAG_NAMES[g]))
        .collect();
    let b = beta.map(|b| b.generator().name().to_string());
    let mut parts = Vec::new();
    if beta_first {
        parts.extend(b);
        parts.extend(diag);
    } else {
        parts.extend(diag);
        parts.extend(b);
    }
    parts.join(" * ")
}

/// Rewrite an arbitrary word of generator powers to a single normal-form
/// monomial and its scalar factor.
pub(crate) fn normalize_word(family: Family, pieces: &[Piece]) -> Result<(Factor, TriMonomial)> {
    let mut left: Vec<(usize, i64)> = Vec::new();
    let mut right: Vec<(usize, i64)> = Vec::new();
    let mut beta = None;
    for piece in pieces {
        match *piece {
            Piece::Beta(b) => {
                if beta.is_some() {
                    return Err(Error::BetaDegreeExceeded);
                }
                beta = Some(b);
            }
            Piece::Diag(g, n) => {
                if beta.is_some() {
                    right.push((g, n));
                } else {
                    left.push((g, n));
                }
            }
        }
    }

    let type_i = family == Family::TypeI;
    let mut factor = Factor::default();
    let Some(b) = beta else {
        let e = if type_i {
            sort_diagonal(&to_alpha(&left), &mut factor)
        } else {
            sort_diagonal(&left, &mut factor)
        };
        return Ok((factor, TriMonomial::new(None, e)));
    };

    let l = if type_i {
        sort_diagonal(&to_alpha(&left), &mut factor)
    } else {
        sort_diagonal(&left, &mut factor)
    };
    if l[G1] != 0 || l[G2] != 0 {
        let stuck = [(G1, l[G1]), (G2, l[G2])];
        return Err(Error::NonReducible(describe(&stuck, beta, false)));
    }

    // α₁^a α₂^b β = α₁^a (f₂^b β γ₂^b) = f₂^b f₁^a β γ₁^a γ₂^b
    for (alpha, n) in [(A2, l[A2]), (A1, l[A1])] {
        let (ds, dr) = push_factor(alpha, b);
        factor.s += ds * n;
        factor.r += dr * n;
    }
    let mut tail = vec![(G1, l[A1]), (G2, l[A2])];
    tail.extend(right);

    let e = if type_i {
        let x = sort_diagonal(&to_alpha(&tail), &mut factor);
        [0, 0, -x[A1], -x[A2]]
    } else {
        let x = sort_diagonal(&tail, &mut factor);
        if x[A1] != 0 || x[A2] != 0 {
            let stuck = [(A1, x[A1]), (A2, x[A2])];
            return Err(Error::NonReducible(describe(&stuck, beta, true)));
        }
        x
    };
    Ok((factor, TriMonomial::new(Some(b), e)))
}

/// A linear combination of normal-form monomials with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    family: Family,
    terms: BTreeMap<TriMonomial, LaurentScalar>,
}

impl Element {
    pub fn zero(family: Family) -> Self {
        Self {
            family,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(family: Family) -> Self {
        Self::scalar(family, LaurentScalar::one())
    }

    pub fn scalar(family: Family, c: LaurentScalar) -> Self {
        let mut out = Self::zero(family);
        out.add_term(TriMonomial::ONE, c);
        out
    }

    /// `name^exponent`; β only admits exponents 0 and 1.
    pub fn generator(family: Family, name: Generator, exponent: i64) -> Result<Self> {
        let pieces: Vec<Piece> = name.piece(exponent)?.into_iter().collect();
        Self::from_pieces(family, &pieces)
    }

    /// Product of generator powers, rewritten in one pass.
    pub fn from_word(family: Family, word: &[(Generator, i64)]) -> Result<Self> {
        let mut pieces = Vec::with_capacity(word.len());
        for &(g, n) in word {
            pieces.extend(g.piece(n)?);
        }
        Self::from_pieces(family, &pieces)
    }

    /// `c · m` for a monomial already in normal form for `family`.
    pub fn from_monomial(family: Family, monomial: TriMonomial, c: LaurentScalar) -> Result<Self> {
        if !monomial.is_normal_for(family) {
            return Err(Error::NonReducible(format!(
                "{monomial} is not a type {family} normal form"
            )));
        }
        let mut out = Self::zero(family);
        out.add_term(monomial, c);
        Ok(out)
    }

    pub(crate) fn from_pieces(family: Family, pieces: &[Piece]) -> Result<Self> {
        let (factor, mono) = normalize_word(family, pieces)?;
        let mut out = Self::zero(family);
        out.add_term(mono, factor.scalar());
        Ok(out)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TriMonomial, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_beta_free(&self) -> bool {
        self.terms.keys().all(|m| m.beta.is_none())
    }

    /// Largest β-degree among the terms.
    pub fn beta_degree(&self) -> usize {
        usize::from(self.terms.keys().any(|m| m.beta.is_some()))
    }

    /// The coefficient of `monomial`, zero if absent.
    pub fn coefficient(&self, monomial: &TriMonomial) -> LaurentScalar {
        self.terms.get(monomial).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, monomial: TriMonomial, c: LaurentScalar) {
        let c = self.family.normalize(c);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_family(&self, other: &Element) -> Result<()> {
        if self.family == other.family {
            Ok(())
        } else {
            Err(Error::FamilyMismatch(self.family, other.family))
        }
    }

    /// Bilinear product; every pair of monomials is concatenated and rewritten.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_family(other)?;
        let mut out = Element::zero(self.family);
        let mut pieces = Vec::with_capacity(10);
        for (mx, cx) in &self.terms {
            for (my, cy) in &other.terms {
                pieces.clear();
                pieces.extend(mx.pieces());
                pieces.extend(my.pieces());
                let (factor, mono) = normalize_word(self.family, &pieces)?;
                out.add_term(mono, (cx * cy).shift(factor.s, factor.r));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentScalar) -> Element {
        let mut out = Element::zero(self.family);
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    /// Returns the single term when the element is `c · m` with `c = ±s^a r^b`.
    pub fn as_unit_monomial(&self) -> Option<(&TriMonomial, &LaurentScalar)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        c.as_unit_monomial().map(|_| (m, c))
    }

    /// Inverse of a β-free unit monomial.
    pub fn inverse(&self) -> Result<Element> {
        let not_invertible = || Error::NonInvertibleEntry(self.to_string());
        let (mono, c) = self.as_unit_monomial().ok_or_else(not_invertible)?;
        if mono.beta.is_some() {
            return Err(not_invertible());
        }
        let c_inv = c.unit_inverse().ok_or_else(not_invertible)?;
        let e = mono.exps;
        let reversed = [
            Piece::Diag(G2, -e[G2]),
            Piece::Diag(G1, -e[G1]),
            Piece::Diag(A2, -e[A2]),
            Piece::Diag(A1, -e[A1]),
        ];
        Ok(Element::from_pieces(self.family, &reversed)?.scale(&c_inv))
    }

    /// Integer power; negative exponents need an invertible element.
    pub fn pow(&self, n: i64) -> Result<Element> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut out = Element::one(self.family);
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    /// Finds `λ` with `self = λ · other`, where `λ` is read off a unit term of
    /// `other` and then confirmed on every term.
    pub fn ratio(&self, other: &Element) -> Option<LaurentScalar> {
        if self.family != other.family {
            return None;
        }
        if other.is_zero() {
            return self.is_zero().then(LaurentScalar::one);
        }
        let (mono, c) = other
            .terms
            .iter()
            .find(|(_, c)| c.as_unit_monomial().is_some())?;
        let lambda = &self.coefficient(mono) * &c.unit_inverse()?;
        (other.scale(&lambda) == *self).then_some(lambda)
    }
}

impl Add for &Element {
    type Output = Element;

    /// Panics if the families differ.
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.family, rhs.family, "adding elements of different families");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&LaurentScalar::from_int(-1))
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.iter().map(|(m, c)| (m, m.is_one(), c)))
    }
}
