//! The `SL(2, ℤ)` action on Type I and Type II pairs.
//!
//! A word denotes a composite map, so its rightmost letter acts first:
//! `ST` sends `(U₁, U₂)` to `S(T(U₁, U₂))`. Under this reading
//! [`word_to_matrix`] is the product of the letter matrices in word order,
//! and row `i` of it holds the exponents of `U₁, U₂` in component `i`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};
use crate::matrix::UTMatrix;
use crate::pairs::{compare_matrices, rescale_pair, sort_reports, Params, QPair, RelationOutcome, RelationReport};
use crate::talgebra::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModularLetter {
    S,
    SInv,
    T,
    TInv,
}

impl ModularLetter {
    pub const ALL: [ModularLetter; 4] = [
        ModularLetter::S,
        ModularLetter::SInv,
        ModularLetter::T,
        ModularLetter::TInv,
    ];

    pub fn inverse(self) -> Self {
        match self {
            ModularLetter::S => ModularLetter::SInv,
            ModularLetter::SInv => ModularLetter::S,
            ModularLetter::T => ModularLetter::TInv,
            ModularLetter::TInv => ModularLetter::T,
        }
    }

    pub fn matrix(self) -> SL2ZMatrix {
        match self {
            ModularLetter::S => SL2ZMatrix::new(0, 1, -1, 0),
            ModularLetter::SInv => SL2ZMatrix::new(0, -1, 1, 0),
            ModularLetter::T => SL2ZMatrix::new(1, 1, 0, 1),
            ModularLetter::TInv => SL2ZMatrix::new(1, -1, 0, 1),
        }
    }
}

impl fmt::Display for ModularLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModularLetter::S => "S",
            ModularLetter::SInv => "S'",
            ModularLetter::T => "T",
            ModularLetter::TInv => "T'",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModularWord(pub Vec<ModularLetter>);

impl ModularWord {
    pub fn letters(&self) -> &[ModularLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cancels adjacent inverse letters until none remain.
    pub fn free_reduce(&self) -> ModularWord {
        let mut out: Vec<ModularLetter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        ModularWord(out)
    }

    pub fn concat(&self, other: &ModularWord) -> ModularWord {
        ModularWord(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Every word of exactly `len` letters, in a fixed order.
    pub fn all_of_length(len: usize) -> Vec<ModularWord> {
        let mut words = vec![ModularWord::default()];
        for _ in 0..len {
            words = words
                .into_iter()
                .flat_map(|w| {
                    ModularLetter::ALL.iter().map(move |&l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        ModularWord(v)
                    })
                })
                .collect();
        }
        words
    }
}

impl fmt::Display for ModularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Letters `S`, `T`, optionally primed for the inverse; whitespace is
/// ignored, so `"S T'"` and `"ST'"` are the same word.
impl FromStr for ModularWord {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let mut letters: Vec<ModularLetter> = Vec::new();
        for (idx, ch) in src.chars().enumerate() {
            let column = idx + 1;
            match ch {
                'S' => letters.push(ModularLetter::S),
                'T' => letters.push(ModularLetter::T),
                '\'' => match letters.last_mut() {
                    Some(l @ (ModularLetter::S | ModularLetter::T)) => *l = l.inverse(),
                    _ => {
                        return Err(Error::Parse {
                            column,
                            message: "prime must follow S or T".into(),
                        })
                    }
                },
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse {
                        column,
                        message: format!("unexpected character '{c}' in modular word"),
                    })
                }
            }
        }
        Ok(ModularWord(letters))
    }
}

/// `[[a, b], [c, d]]` with determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SL2ZMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl SL2ZMatrix {
    pub const IDENTITY: SL2ZMatrix = SL2ZMatrix { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &SL2ZMatrix) -> SL2ZMatrix {
        SL2ZMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn rows(&self) -> [(i64, i64); 2] {
        [(self.a, self.b), (self.c, self.d)]
    }
}

impl fmt::Display for SL2ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn word_to_matrix(w: &ModularWord) -> SL2ZMatrix {
    w.0.iter()
        .fold(SL2ZMatrix::IDENTITY, |acc, l| acc.mul(&l.matrix()))
}

fn check_family(p: &QPair) -> Result<()> {
    match p.family() {
        Family::TypeIII => Err(Error::UnsupportedFamily(Family::TypeIII)),
        _ => Ok(()),
    }
}

/// Type I prefactor exponent (in `s`) of the `T` map: `q^{-1/2}`.
fn t_prefactor(p: &QPair) -> Result<i64> {
    if p.family() != Family::TypeI {
        return Ok(0);
    }
    if p.q_half() % 2 != 0 {
        return Err(Error::UnsupportedTransform {
            family: p.family(),
            n: 1,
            m: 1,
            s: 0,
            t: 1,
        });
    }
    Ok(-p.q_half() / 2)
}

fn apply_letter(l: ModularLetter, p: &QPair) -> Result<QPair> {
    let (v1, v2) = (&p.u1, &p.u2);
    let (w1, w2) = match l {
        ModularLetter::S => (v2.clone(), v1.inverse()?),
        ModularLetter::SInv => (v2.inverse()?, v1.clone()),
        ModularLetter::T => {
            let k = t_prefactor(p)?;
            (v1.mul(v2)?.scale(&LaurentScalar::q_pow(k)), v2.clone())
        }
        ModularLetter::TInv => {
            let k = t_prefactor(p)?;
            (v1.mul(&v2.inverse()?)?.scale(&LaurentScalar::q_pow(-k)), v2.clone())
        }
    };
    QPair::new(w1, w2, p.q_half(), p.r_exp())
}

/// Applies the composite map named by `w`, rightmost letter first.
pub fn apply_word(w: &ModularWord, p: &QPair) -> Result<QPair> {
    check_family(p)?;
    w.0.iter().rev().try_fold(p.clone(), |acc, &l| apply_letter(l, &acc))
}

/// `S⁴ = id` and `(ST)³ = id` on `p`, entry by entry.
pub fn verify_presentation(p: &QPair) -> RelationReport {
    let mut report = RelationReport::new("theorem3", p.family().label(), Params::none());
    let relations = [("S^4", "S S S S"), ("(ST)^3", "S T S T S T")];
    for (name, word) in relations {
        let w: ModularWord = word.parse().expect("fixed words parse");
        match apply_word(&w, p) {
            Ok(image) => {
                compare_matrices(&mut report, &format!("{name}.U1"), &image.u1, &p.u1);
                compare_matrices(&mut report, &format!("{name}.U2"), &image.u2, &p.u2);
            }
            Err(e) => report.push(RelationOutcome::engine_error(name, &e)),
        }
    }
    report
}

/// Checks that each component of `apply_word(w, p)` is `λ · U₁ᵃ U₂ᵇ` with
/// `λ = ±sᵏ` and `(a, b)` the matching row of [`word_to_matrix`].
pub fn check_correspondence(w: &ModularWord, p: &QPair) -> Result<RelationReport> {
    let image = apply_word(w, p)?;
    let m = word_to_matrix(w);
    let mut report = RelationReport::new("theorem3", p.family().label(), Params::none());
    for (label, component, (a, b)) in [("V1", &image.u1, m.rows()[0]), ("V2", &image.u2, m.rows()[1])] {
        let expected = p.u1.pow(a)?.mul(&p.u2.pow(b)?)?;
        let lambda = component.ratio(&expected).ok_or_else(|| {
            Error::CorrespondenceBroken(format!(
                "{label} of [{w}] is not a multiple of U1^{a} U2^{b}"
            ))
        })?;
        match lambda.as_unit_monomial() {
            Some((_, _, 0)) => {}
            _ => {
                return Err(Error::CorrespondenceBroken(format!(
                    "{label} of [{w}] carries the prefactor {lambda}, not a monomial in s"
                )))
            }
        }
        report.push(RelationOutcome::compare(
            format!("[{w}].{label}=({lambda}).U1^{a}U2^{b}"),
            component,
            &expected.scale(&lambda),
        ));
    }
    Ok(report)
}

fn compare_pairs(report: &mut RelationReport, name: &str, lhs: &QPair, rhs: &QPair) {
    compare_matrices(report, &format!("{name}.V1"), &lhs.u1, &rhs.u1);
    compare_matrices(report, &format!("{name}.V2"), &lhs.u2, &rhs.u2);
}

/// Presentation relations on the generator pair and on a rescaled pair, the
/// `ST` image, and for every word up to `max_len` letters: the lattice
/// correspondence and invariance under free reduction.
pub fn verify_theorem3(family: Family, max_len: usize) -> Result<Vec<RelationReport>> {
    if family == Family::TypeIII {
        return Err(Error::UnsupportedFamily(family));
    }
    let label = family.label();
    let base = QPair::generators(family);
    let mut reports = Vec::new();

    let mut presentation = verify_presentation(&base);
    presentation.params = Params::n(0);
    reports.push(presentation);
    let mut rescaled = rescale_pair(&base, &LaurentScalar::q(), &LaurentScalar::one())
        .map(|p| verify_presentation(&p))?;
    rescaled.params = Params::n(1);
    reports.push(rescaled);

    let mut st = RelationReport::new("theorem3", label, Params::n(2));
    let image = apply_word(&"S T".parse()?, &base)?;
    let prefactor = if family == Family::TypeI { 1 } else { 0 };
    let expected_v2 = base.u2.inverse()?.mul(&base.u1.inverse()?)?.scale(&LaurentScalar::q_pow(prefactor));
    let expected = QPair::new(base.u2.clone(), expected_v2, base.q_half(), base.r_exp())?;
    compare_pairs(&mut st, "ST", &image, &expected);
    reports.push(st);

    let words: Vec<(usize, usize, ModularWord)> = (1..=max_len)
        .flat_map(|len| {
            ModularWord::all_of_length(len)
                .into_iter()
                .enumerate()
                .map(move |(idx, w)| (len, idx, w))
        })
        .collect();
    let mut word_reports: Vec<RelationReport> = words
        .par_iter()
        .map(|(len, idx, w)| {
            let mut report = RelationReport::new("theorem3", label, Params::nm(*len as i64, *idx as i64));
            report.absorb_result("correspondence", check_correspondence(w, &base));
            let reduced = w.free_reduce();
            match (apply_word(w, &base), apply_word(&reduced, &base)) {
                (Ok(full), Ok(short)) => compare_pairs(&mut report, &format!("free[{w}]"), &full, &short),
                (Err(e), _) | (_, Err(e)) => report.push(RelationOutcome::engine_error("free", &e)),
            }
            report
        })
        .collect();
    reports.append(&mut word_reports);
    sort_reports(&mut reports);
    Ok(reports)
}

/// Image of the generator pair under `w`.
pub fn apply_to_generators(w: &ModularWord, family: Family) -> Result<(UTMatrix, UTMatrix)> {
    let image = apply_word(w, &QPair::generators(family))?;
    Ok((image.u1, image.u2))
}
