//! Naive rewriting of generator words, one adjacent pair at a time.
//!
//! Used to cross-check the block multiplication: the letter order is
//! `a < b < c < d < Di` with the unprimed copy first, and every out-of-order
//! adjacent pair is rewritten by a defining relation (or swapped, when one
//! side is central or from the other copy). The sorted words are then handed
//! to the normal-form constructor, which only applies the `ad·Di` absorption.

use std::collections::BTreeMap;

use crate::coeff::LaurentScalar;

use super::{PBWMonomial, QGElement, QGGenerator, QGLetter};

/// Which out-of-order pair of a word is rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

type Word = Vec<QGLetter>;

fn q_pow(k: i64) -> LaurentScalar {
    LaurentScalar::q_pow(2 * k)
}

/// `x y` with `x > y` rewritten as a sum of words.
fn rewrite_pair(x: QGLetter, y: QGLetter) -> Vec<(Vec<QGLetter>, LaurentScalar)> {
    use QGGenerator::*;
    let swapped = vec![y, x];
    if x.primed != y.primed || x.generator == Di || y.generator == Di {
        return vec![(swapped, LaurentScalar::one())];
    }
    let p = x.primed;
    let l = |g| QGLetter::new(g, p);
    match (x.generator, y.generator) {
        (B, A) | (C, A) | (D, B) | (D, C) => vec![(swapped, q_pow(-1))],
        (C, B) => vec![(swapped, LaurentScalar::one())],
        (D, A) => vec![
            (swapped, LaurentScalar::one()),
            (vec![l(B), l(C)], &q_pow(-1) - &q_pow(1)),
        ],
        _ => unreachable!("pair is out of order"),
    }
}

fn first_disorder(w: &Word, strategy: Strategy) -> Option<usize> {
    let mut positions = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]);
    match strategy {
        Strategy::Leftmost => positions.next(),
        Strategy::Rightmost => positions.last(),
    }
}

fn to_monomial(w: &Word) -> PBWMonomial {
    let mut m = PBWMonomial::ONE;
    for l in w {
        m.block_mut(l.primed)[l.generator.slot()] += 1;
    }
    m
}

/// Reduces the product of `word`'s letters by adjacent-pair rewriting.
pub fn reduce_word(word: &[QGLetter], strategy: Strategy) -> QGElement {
    let mut pending: BTreeMap<Word, LaurentScalar> = BTreeMap::new();
    pending.insert(word.to_vec(), LaurentScalar::one());
    let mut out = QGElement::zero();
    while let Some((w, c)) = pending.pop_first() {
        let Some(i) = first_disorder(&w, strategy) else {
            out = &out + &QGElement::from_monomial(to_monomial(&w), c);
            continue;
        };
        for (middle, f) in rewrite_pair(w[i], w[i + 1]) {
            let mut next = w[..i].to_vec();
            next.extend(middle);
            next.extend_from_slice(&w[i + 2..]);
            let slot = pending.entry(next.clone()).or_insert_with(LaurentScalar::zero);
            *slot += &(&c * &f);
            if slot.is_zero() {
                pending.remove(&next);
            }
        }
    }
    out
}
