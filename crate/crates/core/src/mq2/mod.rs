//! PBW normal forms for `M_q(2)` and `GL_q(2)`.
//!
//! Generators `a b c d` satisfy
//! `ab = qba`, `ac = qca`, `bc = cb`, `bd = qdb`, `cd = qdc`,
//! `ad − da = (q − q⁻¹)bc`, and `Di` stands for the central inverse of
//! `D_q = ad − qbc`. A second, primed copy commutes with the first.
//!
//! Monomials are `a^i b^j c^k d^l Di^m` per copy. When `i`, `l` and `m` are
//! all positive one `a` is moved next to a `d` and `ad·Di = 1 + qbc·Di` is
//! substituted, so normal monomials never carry all three.

pub mod rewrite;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use rayon::prelude::*;

use crate::coeff::{write_combination, LaurentScalar};
use crate::error::{Error, Result};
use crate::pairs::{Params, RelationOutcome, RelationReport};

pub use rewrite::{reduce_word, Strategy};

const I: usize = 0;
const J: usize = 1;
const K: usize = 2;
const L: usize = 3;
const M: usize = 4;

/// Label used for this module's reports.
pub const FAMILY_LABEL: &str = "GL";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QGGenerator {
    A,
    B,
    C,
    D,
    /// `D_q⁻¹`.
    Di,
}

impl QGGenerator {
    pub const ALL: [QGGenerator; 5] = [
        QGGenerator::A,
        QGGenerator::B,
        QGGenerator::C,
        QGGenerator::D,
        QGGenerator::Di,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QGGenerator::A => "a",
            QGGenerator::B => "b",
            QGGenerator::C => "c",
            QGGenerator::D => "d",
            QGGenerator::Di => "Di",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

/// A generator of one of the two commuting copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QGLetter {
    pub primed: bool,
    pub generator: QGGenerator,
}

impl QGLetter {
    pub fn new(generator: QGGenerator, primed: bool) -> Self {
        Self { primed, generator }
    }
}

impl fmt::Display for QGLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.generator.name())?;
        if self.primed {
            f.write_str("'")?;
        }
        Ok(())
    }
}

impl FromStr for QGLetter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (base, primed) = match s.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (s, false),
        };
        QGGenerator::ALL
            .into_iter()
            .find(|g| g.name() == base)
            .map(|g| QGLetter::new(g, primed))
            .ok_or_else(|| format!("unknown quantum-group generator '{s}'"))
    }
}

type Block = [u32; 5];

/// `a^i b^j c^k d^l Di^m` for the unprimed copy followed by the same for
/// the primed copy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PBWMonomial {
    unprimed: Block,
    primed: Block,
}

impl PBWMonomial {
    pub const ONE: PBWMonomial = PBWMonomial {
        unprimed: [0; 5],
        primed: [0; 5],
    };

    /// Exponents are `[i, j, k, l, m]` for `a b c d Di`.
    pub fn new(unprimed: [u32; 5], primed: [u32; 5]) -> Self {
        Self { unprimed, primed }
    }

    pub fn letter(letter: QGLetter) -> Self {
        let mut out = Self::ONE;
        out.block_mut(letter.primed)[letter.generator.slot()] = 1;
        out
    }

    pub fn unprimed(&self) -> [u32; 5] {
        self.unprimed
    }

    pub fn primed(&self) -> [u32; 5] {
        self.primed
    }

    fn block_mut(&mut self, primed: bool) -> &mut Block {
        if primed {
            &mut self.primed
        } else {
            &mut self.unprimed
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// Neither copy admits the `ad·Di` absorption.
    pub fn is_normal(&self) -> bool {
        !absorbable(&self.unprimed) && !absorbable(&self.primed)
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (primed, block) in [(false, &self.unprimed), (true, &self.primed)] {
            for g in QGGenerator::ALL {
                let letter = QGLetter::new(g, primed);
                match block[g.slot()] {
                    0 => {}
                    1 => parts.push(letter.to_string()),
                    e => parts.push(format!("{letter}^{e}")),
                }
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

fn absorbable(b: &Block) -> bool {
    b[I] >= 1 && b[L] >= 1 && b[M] >= 1
}

fn q_pow(k: i64) -> LaurentScalar {
    LaurentScalar::q_pow(2 * k)
}

/// `q − q⁻¹`.
fn lambda() -> LaurentScalar {
    &q_pow(1) - &q_pow(-1)
}

type BlockSum = BTreeMap<Block, LaurentScalar>;

fn add_to(map: &mut BlockSum, b: Block, c: LaurentScalar) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(b).or_insert_with(LaurentScalar::zero);
    *slot += &c;
    if slot.is_zero() {
        map.remove(&b);
    }
}

/// `a^i b^j c^k d^l · x` for one generator `x`.
fn times_letter(b: Block, g: QGGenerator, c: &LaurentScalar, out: &mut BlockSum) {
    let mut next = b;
    let l = i64::from(b[L]);
    match g {
        QGGenerator::D => {
            next[L] += 1;
            add_to(out, next, c.clone());
        }
        QGGenerator::C => {
            next[K] += 1;
            add_to(out, next, c * &q_pow(-l));
        }
        QGGenerator::B => {
            next[J] += 1;
            add_to(out, next, c * &q_pow(-l));
        }
        QGGenerator::A => {
            // dˡa = a dˡ − λ Σ_{t<l} q^{-2t} bc dˡ⁻¹, then a moves past bʲcᵏ.
            next[I] += 1;
            add_to(out, next, c * &q_pow(-i64::from(b[J] + b[K])));
            if l > 0 {
                let mut sum = LaurentScalar::zero();
                for t in 0..l {
                    sum += &q_pow(-2 * t);
                }
                let mut tail = b;
                tail[J] += 1;
                tail[K] += 1;
                tail[L] -= 1;
                add_to(out, tail, -&(&(c * &lambda()) * &sum));
            }
        }
        QGGenerator::Di => {
            next[M] += 1;
            add_to(out, next, c.clone());
        }
    }
}

/// Applies `a bʲ cᵏ d·Di = q^{j+k} bʲcᵏ (1 + qbc·Di)` until no monomial has
/// `i, l, m ≥ 1`.
fn absorb(map: BlockSum) -> BlockSum {
    let mut pending: Vec<(Block, LaurentScalar)> = map.into_iter().collect();
    let mut done = BlockSum::new();
    while let Some((b, c)) = pending.pop() {
        if !absorbable(&b) {
            add_to(&mut done, b, c);
            continue;
        }
        let jk = i64::from(b[J] + b[K]);
        let mut first = b;
        first[I] -= 1;
        first[L] -= 1;
        first[M] -= 1;
        let mut second = b;
        second[I] -= 1;
        second[L] -= 1;
        second[J] += 1;
        second[K] += 1;
        pending.push((first, &c * &q_pow(jk)));
        pending.push((second, &c * &q_pow(jk + 1)));
    }
    done
}

/// Normal form of the product of two normal monomials of one copy.
fn block_mul(x: &Block, y: &Block) -> BlockSum {
    let mut current = BlockSum::new();
    current.insert(*x, LaurentScalar::one());
    for g in [QGGenerator::A, QGGenerator::B, QGGenerator::C, QGGenerator::D] {
        for _ in 0..y[g.slot()] {
            let mut next = BlockSum::new();
            for (b, c) in &current {
                times_letter(*b, g, c, &mut next);
            }
            current = next;
        }
    }
    if y[M] > 0 {
        current = current
            .into_iter()
            .map(|(mut b, c)| {
                b[M] += y[M];
                (b, c)
            })
            .collect();
    }
    absorb(current)
}

/// Element of `GL_q(2) ⊗ GL_q(2)'` in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QGElement {
    terms: BTreeMap<PBWMonomial, LaurentScalar>,
}

impl QGElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(LaurentScalar::one())
    }

    pub fn scalar(c: LaurentScalar) -> Self {
        Self::from_monomial(PBWMonomial::ONE, c)
    }

    pub fn letter(letter: QGLetter) -> Self {
        Self::from_monomial(PBWMonomial::letter(letter), LaurentScalar::one())
    }

    pub fn generator(g: QGGenerator) -> Self {
        Self::letter(QGLetter::new(g, false))
    }

    pub fn primed(g: QGGenerator) -> Self {
        Self::letter(QGLetter::new(g, true))
    }

    /// Any monomial; absorbable ones are rewritten.
    pub fn from_monomial(m: PBWMonomial, c: LaurentScalar) -> Self {
        let mut out = Self::zero();
        for (u, cu) in absorb(BlockSum::from([(m.unprimed, c)])) {
            for (p, cp) in absorb(BlockSum::from([(m.primed, LaurentScalar::one())])) {
                out.add_term(PBWMonomial::new(u, p), &cu * &cp);
            }
        }
        out
    }

    fn add_term(&mut self, m: PBWMonomial, c: LaurentScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(LaurentScalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &LaurentScalar)> {
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

    pub fn coefficient(&self, m: &PBWMonomial) -> LaurentScalar {
        self.terms.get(m).cloned().unwrap_or_else(LaurentScalar::zero)
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    pub fn mul(&self, other: &QGElement) -> QGElement {
        let mut out = Self::zero();
        for (mx, cx) in &self.terms {
            for (my, cy) in &other.terms {
                let c = cx * cy;
                let unprimed = block_mul(&mx.unprimed, &my.unprimed);
                let primed = block_mul(&mx.primed, &my.primed);
                for (u, cu) in &unprimed {
                    let cu = &c * cu;
                    for (p, cp) in &primed {
                        out.add_term(PBWMonomial::new(*u, *p), &cu * cp);
                    }
                }
            }
        }
        out
    }

    /// Non-negative powers only.
    pub fn pow(&self, n: u32) -> QGElement {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

/// Bilinear product in normal form.
pub fn qg_mul(x: &QGElement, y: &QGElement) -> QGElement {
    x.mul(y)
}

impl Add for &QGElement {
    type Output = QGElement;

    fn add(self, rhs: &QGElement) -> QGElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Neg for &QGElement {
    type Output = QGElement;

    fn neg(self) -> QGElement {
        self.scale(&LaurentScalar::from_int(-1))
    }
}

impl Sub for &QGElement {
    type Output = QGElement;

    fn sub(self, rhs: &QGElement) -> QGElement {
        self + &(-rhs)
    }
}

impl fmt::Display for QGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.iter().map(|(m, c)| (m, m.is_one(), c)))
    }
}

/// General 2×2 matrix `[[m11, m12], [m21, m22]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FullMatrix {
    pub entries: [[QGElement; 2]; 2],
}

impl FullMatrix {
    pub fn new(m11: QGElement, m12: QGElement, m21: QGElement, m22: QGElement) -> Self {
        Self {
            entries: [[m11, m12], [m21, m22]],
        }
    }

    pub fn identity() -> Self {
        Self::new(QGElement::one(), QGElement::zero(), QGElement::zero(), QGElement::one())
    }

    /// `U = [[a, b], [c, d]]`, or `U'` from the primed copy.
    pub fn generator(primed: bool) -> Self {
        let g = |x| QGElement::letter(QGLetter::new(x, primed));
        Self::new(g(QGGenerator::A), g(QGGenerator::B), g(QGGenerator::C), g(QGGenerator::D))
    }

    /// `U⁻¹ = Di · [[d, −q⁻¹b], [−qc, a]]`.
    pub fn inverse_generator(primed: bool) -> Self {
        let g = |x| QGElement::letter(QGLetter::new(x, primed));
        let di = g(QGGenerator::Di);
        let entry = |x: QGElement, k: i64, sign: i64| {
            di.mul(&x).scale(&LaurentScalar::monomial(sign, 2 * k, 0))
        };
        Self::new(
            entry(g(QGGenerator::D), 0, 1),
            entry(g(QGGenerator::B), -1, -1),
            entry(g(QGGenerator::C), 1, -1),
            entry(g(QGGenerator::A), 0, 1),
        )
    }

    /// `Uⁿ` for any integer `n`; negative powers iterate the inverse.
    pub fn pow_generator(n: i64, primed: bool) -> Self {
        let base = if n < 0 {
            Self::inverse_generator(primed)
        } else {
            Self::generator(primed)
        };
        base.pow(n.unsigned_abs() as u32)
    }

    pub fn m11(&self) -> &QGElement {
        &self.entries[0][0]
    }

    pub fn m12(&self) -> &QGElement {
        &self.entries[0][1]
    }

    pub fn m21(&self) -> &QGElement {
        &self.entries[1][0]
    }

    pub fn m22(&self) -> &QGElement {
        &self.entries[1][1]
    }

    pub fn mul(&self, o: &FullMatrix) -> FullMatrix {
        let e = |i: usize, j: usize| {
            &self.entries[i][0].mul(&o.entries[0][j]) + &self.entries[i][1].mul(&o.entries[1][j])
        };
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn pow(&self, n: u32) -> FullMatrix {
        (0..n).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &LaurentScalar) -> FullMatrix {
        let e = |i: usize, j: usize| self.entries[i][j].scale(c);
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl fmt::Display for FullMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m11(),
            self.m12(),
            self.m21(),
            self.m22()
        )
    }
}

/// `m11·m22 − q·m12·m21`.
pub fn quantum_determinant(m: &FullMatrix) -> QGElement {
    quantum_determinant_with(m, 2)
}

/// Quantum determinant with `q` replaced by `s^half_q_exponent`.
pub fn quantum_determinant_with(m: &FullMatrix, half_q_exponent: i64) -> QGElement {
    let cross = m.m12().mul(m.m21()).scale(&LaurentScalar::q_pow(half_q_exponent));
    &m.m11().mul(m.m22()) - &cross
}

fn engine_report(params: Params) -> RelationReport {
    RelationReport::new("mq2", FAMILY_LABEL, params)
}

/// The six defining relations among the entries `[[A, B], [C, D]]` of `m`,
/// with `Q = s^half_q_exponent` in place of `q`.
#[allow(non_snake_case)]
pub fn check_R(m: &FullMatrix, half_q_exponent: i64) -> RelationReport {
    let (a, b, c, d) = (m.m11(), m.m12(), m.m21(), m.m22());
    let q = LaurentScalar::q_pow(half_q_exponent);
    let q_inv = LaurentScalar::q_pow(-half_q_exponent);
    let mut report = engine_report(Params::none());
    let commute = |name: &str, x: &QGElement, y: &QGElement, factor: &LaurentScalar| {
        RelationOutcome::compare(name, &x.mul(y), &y.mul(x).scale(factor))
    };
    report.push(commute("AB=Q.BA", a, b, &q));
    report.push(commute("AC=Q.CA", a, c, &q));
    report.push(RelationOutcome::compare(
        "AD-DA=(Q-Q^-1).BC",
        &(&a.mul(d) - &d.mul(a)),
        &b.mul(c).scale(&(&q - &q_inv)),
    ));
    report.push(commute("BC=CB", b, c, &LaurentScalar::one()));
    report.push(commute("BD=Q.DB", b, d, &q));
    report.push(commute("CD=Q.DC", c, d, &q));
    report
}

fn compare_full(report: &mut RelationReport, name: &str, lhs: &FullMatrix, rhs: &FullMatrix) {
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        report.push(RelationOutcome::compare(
            format!("{name}[{}{}]", i + 1, j + 1),
            &lhs.entries[i][j],
            &rhs.entries[i][j],
        ));
    }
}

/// For each `|n| ≤ n_range`: the defining relations for `Uⁿ` and for
/// `UⁿU'ⁿ` with `q ↦ qⁿ`, and `UⁿU⁻ⁿ = I`. One extra report (without
/// parameters) checks that `D_q` is central and that
/// `det_{q²}(U²) = D_q²`.
pub fn verify_results(n_range: i64) -> Vec<RelationReport> {
    let mut reports: Vec<RelationReport> = (-n_range..=n_range)
        .into_par_iter()
        .map(|n| {
            let mut report = engine_report(Params::n(n));
            let un = FullMatrix::pow_generator(n, false);
            report.absorb("U^n", check_R(&un, 2 * n));
            let prod = un.mul(&FullMatrix::pow_generator(n, true));
            report.absorb("U^nU'^n", check_R(&prod, 2 * n));
            let back = un.mul(&FullMatrix::pow_generator(-n, false));
            compare_full(&mut report, "U^nU^-n=I", &back, &FullMatrix::identity());
            report
        })
        .collect();

    let mut central = engine_report(Params::none());
    let dq = quantum_determinant(&FullMatrix::generator(false));
    for g in [QGGenerator::A, QGGenerator::B, QGGenerator::C, QGGenerator::D] {
        let x = QGElement::generator(g);
        central.push(RelationOutcome::compare(
            format!("Dq.{0}={0}.Dq", g.name()),
            &dq.mul(&x),
            &x.mul(&dq),
        ));
    }
    central.push(RelationOutcome::compare(
        "Dq.Di=1",
        &dq.mul(&QGElement::generator(QGGenerator::Di)),
        &QGElement::one(),
    ));
    central.push(RelationOutcome::compare(
        "det_q^2(U^2)=Dq^2",
        &quantum_determinant_with(&FullMatrix::pow_generator(2, false), 4),
        &dq.pow(2),
    ));
    reports.push(central);
    crate::pairs::sort_reports(&mut reports);
    reports
}

/// Parses a single generator name such as `a`, `Di` or `c'`.
pub fn parse_letter(s: &str, column: usize) -> Result<QGLetter> {
    s.parse().map_err(|message| Error::Parse { column, message })
}

#[cfg(test)]
mod tests {
    use super::*;
    use QGGenerator::*;

    fn g(x: QGGenerator) -> QGElement {
        QGElement::generator(x)
    }

    fn mono(u: [u32; 5]) -> PBWMonomial {
        PBWMonomial::new(u, [0; 5])
    }

    #[test]
    fn defining_rules() {
        let q = LaurentScalar::q();
        let q_inv = LaurentScalar::q_pow(-2);
        assert_eq!(g(B).mul(&g(A)), g(A).mul(&g(B)).scale(&q_inv));
        assert_eq!(g(C).mul(&g(A)), g(A).mul(&g(C)).scale(&q_inv));
        assert_eq!(g(C).mul(&g(B)), g(B).mul(&g(C)));
        let da = g(D).mul(&g(A));
        let expected = &g(A).mul(&g(D)) - &g(B).mul(&g(C)).scale(&(&q - &q_inv));
        assert_eq!(da, expected);
        assert_eq!(da.to_string(), "(s^-2 - s^2) * b * c + a * d");
    }

    #[test]
    fn absorption() {
        let addi = g(A).mul(&g(D)).mul(&g(Di));
        let expected = &QGElement::one() + &QGElement::from_monomial(mono([0, 1, 1, 0, 1]), LaurentScalar::q());
        assert_eq!(addi, expected);
        assert!(QGElement::from_monomial(mono([2, 0, 0, 3, 2]), 1.into()).terms().all(|(m, _)| m.is_normal()));
    }

    #[test]
    fn primed_copy_commutes() {
        let a_p = QGElement::primed(A);
        assert_eq!(a_p.mul(&g(A)), g(A).mul(&a_p));
        assert_eq!(g(A).mul(&a_p).to_string(), "a * a'");
    }

    #[test]
    fn determinant_and_inverse() {
        let u = FullMatrix::generator(false);
        let dq = quantum_determinant(&u);
        assert_eq!(dq.to_string(), "-s^2 * b * c + a * d");
        assert_eq!(quantum_determinant(&FullMatrix::identity()), QGElement::one());
        let inv = FullMatrix::inverse_generator(false);
        assert_eq!(inv.m12().to_string(), "-s^-2 * b * Di");
        assert_eq!(u.mul(&inv), FullMatrix::identity());
        assert_eq!(inv.mul(&u), FullMatrix::identity());
        assert_eq!(FullMatrix::pow_generator(0, true), FullMatrix::identity());
    }

    #[test]
    fn relations() {
        assert!(check_R(&FullMatrix::generator(false), 2).holds());
        assert!(check_R(&FullMatrix::pow_generator(2, false), 4).holds());
        assert!(check_R(&FullMatrix::pow_generator(-1, false), -2).holds());
        assert!(!check_R(&FullMatrix::generator(false), 4).holds());
    }

    #[test]
    fn letters() {
        assert_eq!("Di'".parse::<QGLetter>().unwrap(), QGLetter::new(Di, true));
        assert!("e".parse::<QGLetter>().is_err());
    }
}
