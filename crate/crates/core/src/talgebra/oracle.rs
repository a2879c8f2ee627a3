//! Naive rewriter over single letters, kept apart from the bulk kernel so the
//! two can be compared.
//!
//! Every generator power is expanded into unit letters `x^{±1}`; the first
//! applicable rule (scanning left to right) fires until none does. Rules are
//! derived at run time from the defining relations exactly as written, never
//! from the kernel's swap table.

use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};

use super::{Beta, Element, Family, Generator, TriMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sym {
    A1,
    A2,
    G1,
    G2,
    B1,
    B2,
}

impl Sym {
    fn is_beta(self) -> bool {
        matches!(self, Sym::B1 | Sym::B2)
    }

    fn is_alpha(self) -> bool {
        matches!(self, Sym::A1 | Sym::A2)
    }

    fn is_gamma(self) -> bool {
        matches!(self, Sym::G1 | Sym::G2)
    }

    /// Position in the normal-form order `α₁ α₂ γ₁ γ₂`.
    fn rank(self) -> usize {
        match self {
            Sym::A1 => 0,
            Sym::A2 => 1,
            Sym::G1 => 2,
            Sym::G2 => 3,
            Sym::B1 | Sym::B2 => unreachable!("beta has no diagonal rank"),
        }
    }

    /// αᵢ ↔ γᵢ.
    fn partner(self) -> Sym {
        match self {
            Sym::A1 => Sym::G1,
            Sym::A2 => Sym::G2,
            Sym::G1 => Sym::A1,
            Sym::G2 => Sym::A2,
            b => b,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Letter {
    sym: Sym,
    sign: i64,
}

/// `x y = s^k y x`.
const DIAGONAL_RELATIONS: [(Sym, Sym, i64); 6] = [
    (Sym::A1, Sym::A2, 2),
    (Sym::A1, Sym::G2, -2),
    (Sym::A2, Sym::G1, 2),
    (Sym::G1, Sym::G2, 2),
    (Sym::A1, Sym::G1, 0),
    (Sym::A2, Sym::G2, 0),
];

/// Non-diagonal relations in the form they are usually written.
enum Push {
    /// `α β = s^k r^l β γ`
    AlphaBeta(Sym, Sym, i64, i64),
    /// `β γ = s^k r^l α β`
    BetaGamma(Sym, Sym, i64, i64),
}

const PUSH_RELATIONS: [Push; 4] = [
    Push::AlphaBeta(Sym::A1, Sym::B1, 0, 1),
    Push::AlphaBeta(Sym::A2, Sym::B2, 0, 1),
    Push::AlphaBeta(Sym::A1, Sym::B2, 2, 0),
    Push::BetaGamma(Sym::B1, Sym::G2, 2, 0),
];

/// `k` with `y x = s^k x y` for the out-of-order pair `(y, x)`.
fn swap_factor(later: Sym, earlier: Sym) -> i64 {
    DIAGONAL_RELATIONS
        .iter()
        .find_map(|&(x, y, k)| (x == earlier && y == later).then_some(-k))
        .expect("every diagonal pair has a defining relation")
}

/// `(k, l)` with `α β = s^k r^l β γ`.
fn push_factor(alpha: Sym, beta: Sym) -> (i64, i64) {
    PUSH_RELATIONS
        .iter()
        .find_map(|rel| match *rel {
            Push::AlphaBeta(a, b, s, r) if a == alpha && b == beta => Some((s, r)),
            // β γ = f α β  ⇒  α β = f⁻¹ β γ
            Push::BetaGamma(b, g, s, r) if b == beta && g.partner() == alpha => Some((-s, -r)),
            _ => None,
        })
        .expect("every alpha/beta pair has a defining relation")
}

fn expand(word: &[(Generator, i64)]) -> Result<Vec<Letter>> {
    let mut letters = Vec::new();
    for &(g, n) in word {
        let sym = match g {
            Generator::Alpha1 => Sym::A1,
            Generator::Alpha2 => Sym::A2,
            Generator::Gamma1 => Sym::G1,
            Generator::Gamma2 => Sym::G2,
            Generator::Beta1 => Sym::B1,
            Generator::Beta2 => Sym::B2,
        };
        if sym.is_beta() && !(0..=1).contains(&n) {
            return Err(Error::BetaExponent(n));
        }
        let sign = n.signum();
        letters.extend((0..n.unsigned_abs()).map(|_| Letter { sym, sign }));
    }
    Ok(letters)
}

fn render(letters: &[Letter]) -> String {
    letters
        .iter()
        .map(|l| {
            let name = match l.sym {
                Sym::A1 => "a1",
                Sym::A2 => "a2",
                Sym::G1 => "g1",
                Sym::G2 => "g2",
                Sym::B1 => "b1",
                Sym::B2 => "b2",
            };
            if l.sign < 0 {
                format!("{name}^-1")
            } else {
                name.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// One rewrite step; returns false when no rule applies.
fn step(family: Family, w: &mut Vec<Letter>, s: &mut i64, r: &mut i64) -> bool {
    let beta_pos = w.iter().position(|l| l.sym.is_beta());
    for i in 0..w.len() {
        let x = w[i];
        if family == Family::TypeI && !x.sym.is_beta() {
            let eliminate = match beta_pos {
                None => x.sym.is_gamma(),
                Some(p) => (i < p && x.sym.is_gamma()) || (i > p && x.sym.is_alpha()),
            };
            if eliminate {
                w[i] = Letter {
                    sym: x.sym.partner(),
                    sign: -x.sign,
                };
                return true;
            }
        }
        let Some(&y) = w.get(i + 1) else { break };
        if x.sym == y.sym && x.sign == -y.sign && !x.sym.is_beta() {
            w.drain(i..=i + 1);
            return true;
        }
        if !x.sym.is_beta() && !y.sym.is_beta() && x.sym.rank() > y.sym.rank() {
            *s += swap_factor(x.sym, y.sym) * x.sign * y.sign;
            w.swap(i, i + 1);
            return true;
        }
        if x.sym.is_alpha() && y.sym.is_beta() {
            let (ds, dr) = push_factor(x.sym, y.sym);
            *s += ds * x.sign;
            *r += dr * x.sign;
            w[i] = y;
            w[i + 1] = Letter {
                sym: x.sym.partner(),
                sign: x.sign,
            };
            return true;
        }
    }
    false
}

/// Reduce a word of generator powers by naive single-letter rewriting.
pub fn oracle_reduce(word: &[(Generator, i64)], family: Family) -> Result<Element> {
    let mut w = expand(word)?;
    if w.iter().filter(|l| l.sym.is_beta()).count() > 1 {
        return Err(Error::BetaDegreeExceeded);
    }
    let (mut s, mut r) = (0i64, 0i64);
    while step(family, &mut w, &mut s, &mut r) {}

    let beta_pos = w.iter().position(|l| l.sym.is_beta());
    let mut exps = [0i64; 4];
    let mut beta = None;
    for (i, l) in w.iter().enumerate() {
        if l.sym.is_beta() {
            beta = Some(if l.sym == Sym::B1 { Beta::B1 } else { Beta::B2 });
            continue;
        }
        if let Some(p) = beta_pos {
            let stuck = i < p || !l.sym.is_gamma();
            if stuck {
                return Err(Error::NonReducible(render(&w)));
            }
        }
        exps[l.sym.rank()] += l.sign;
    }
    Element::from_monomial(
        family,
        TriMonomial::new(beta, exps),
        LaurentScalar::monomial(1, s, r),
    )
}
