//! The general linear Lie superalgebra `gl(M|N)` in its elementary-matrix basis.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn parity(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn from_digit(d: u8) -> Option<Sign> {
        match d {
            0 => Some(Sign::Plus),
            1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Index of a basis vector of `k^{M|N}`, ordered `1 < … < M < 1̄ < … < N̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxIndex {
    pub sign: Sign,
    pub ordinal: u16,
}

impl BoxIndex {
    pub const fn plus(ordinal: u16) -> Self {
        BoxIndex { sign: Sign::Plus, ordinal }
    }

    pub const fn minus(ordinal: u16) -> Self {
        BoxIndex { sign: Sign::Minus, ordinal }
    }

    pub fn parity(self) -> u8 {
        self.sign.parity()
    }
}

impl fmt::Display for BoxIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.ordinal),
            Sign::Minus => {
                for ch in self.ordinal.to_string().chars() {
                    write!(f, "{ch}\u{0304}")?;
                }
                Ok(())
            }
        }
    }
}

/// `tp(i)`.
pub fn parity(i: BoxIndex) -> u8 {
    i.parity()
}

/// Parity of the elementary matrix `e_{i,j}`.
pub fn pair_parity(i: BoxIndex, j: BoxIndex) -> u8 {
    (i.parity() + j.parity()) % 2
}

/// Shape of `gl(M|N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GlShape {
    pub plus: usize,
    pub minus: usize,
}

impl GlShape {
    pub fn new(plus: usize, minus: usize) -> Self {
        GlShape { plus, minus }
    }

    pub fn size(&self) -> usize {
        self.plus + self.minus
    }

    /// All indices in the order of `I`.
    pub fn indices(&self) -> Vec<BoxIndex> {
        (1..=self.plus as u16)
            .map(BoxIndex::plus)
            .chain((1..=self.minus as u16).map(BoxIndex::minus))
            .collect()
    }

    pub fn contains(&self, i: BoxIndex) -> bool {
        i.ordinal >= 1
            && match i.sign {
                Sign::Plus => (i.ordinal as usize) <= self.plus,
                Sign::Minus => (i.ordinal as usize) <= self.minus,
            }
    }

    /// Position of `i` in `I`, starting at 0.
    pub fn position(&self, i: BoxIndex) -> usize {
        match i.sign {
            Sign::Plus => i.ordinal as usize - 1,
            Sign::Minus => self.plus + i.ordinal as usize - 1,
        }
    }

    pub fn basis(&self) -> Vec<(BoxIndex, BoxIndex)> {
        let idx = self.indices();
        idx.iter().flat_map(|&i| idx.iter().map(move |&j| (i, j))).collect()
    }

    pub fn basis_of_parity(&self, p: u8) -> Vec<(BoxIndex, BoxIndex)> {
        self.basis().into_iter().filter(|&(i, j)| pair_parity(i, j) == p).collect()
    }
}

/// A sparse element `Σ c_{ij} e_{i,j}` of `gl(M|N)` with rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LieSuperElement {
    terms: BTreeMap<(BoxIndex, BoxIndex), Rational>,
}

impl LieSuperElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: BoxIndex, j: BoxIndex) -> Self {
        Self::term(i, j, Rational::one())
    }

    pub fn term(i: BoxIndex, j: BoxIndex, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(i, j, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((BoxIndex, BoxIndex), Rational)>) -> Self {
        let mut e = Self::zero();
        for ((i, j), c) in terms {
            e.add_term(i, j, c);
        }
        e
    }

    pub fn add_term(&mut self, i: BoxIndex, j: BoxIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(BoxIndex, BoxIndex), &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: BoxIndex, j: BoxIndex) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(p)` when every term has parity `p`; the zero element is even.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|&(i, j)| pair_parity(i, j));
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|&(i, j)| pair_parity(i, j) == 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }
}

impl fmt::Display for LieSuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((i, j), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} · e({i},{j})")?;
        }
        Ok(())
    }
}

/// `[e_{ij}, e_{kl}] = δ_{jk} e_{il} − (−1)^{p(e_ij) p(e_kl)} δ_{li} e_{kj}`.
pub fn bracket_basis(i: BoxIndex, j: BoxIndex, k: BoxIndex, l: BoxIndex) -> Vec<((BoxIndex, BoxIndex), i8)> {
    let mut out = Vec::with_capacity(2);
    if j == k {
        out.push(((i, l), 1));
    }
    if l == i {
        let s = if pair_parity(i, j) * pair_parity(k, l) == 1 { 1 } else { -1 };
        if let Some(pos) = out.iter().position(|(p, _)| *p == (k, j)) {
            out[pos].1 += s;
            if out[pos].1 == 0 {
                out.remove(pos);
            }
        } else {
            out.push(((k, j), s));
        }
    }
    out
}

/// The supercommutator, extended bilinearly to inhomogeneous elements.
pub fn bracket(x: &LieSuperElement, y: &LieSuperElement) -> LieSuperElement {
    let mut out = LieSuperElement::zero();
    for (&(i, j), a) in x.terms() {
        for (&(k, l), b) in y.terms() {
            for ((p, q), s) in bracket_basis(i, j, k, l) {
                out.add_term(p, q, a * b * Rational::from_integer(s.into()));
            }
        }
    }
    out
}

/// `(x, y) = str(xy)`; the supertrace weights minus-diagonal entries by −1.
pub fn superform(x: &LieSuperElement, y: &LieSuperElement) -> Rational {
    let mut total = Rational::zero();
    for (&(i, j), a) in x.terms() {
        for (&(k, l), b) in y.terms() {
            if j == k && l == i {
                let v = a * b;
                if i.parity() == 0 {
                    total += v;
                } else {
                    total -= v;
                }
            }
        }
    }
    total
}

/// Matrix of `ad x` from the span of `domain` into the span of `codomain`,
/// one row per codomain vector.
pub fn ad_matrix(
    x: &LieSuperElement,
    domain: &[(BoxIndex, BoxIndex)],
    codomain: &[(BoxIndex, BoxIndex)],
) -> Vec<Vec<Rational>> {
    let row_of: BTreeMap<(BoxIndex, BoxIndex), usize> = codomain.iter().enumerate().map(|(n, &b)| (b, n)).collect();
    let mut m = vec![vec![Rational::zero(); domain.len()]; codomain.len()];
    for (col, &(i, j)) in domain.iter().enumerate() {
        let image = bracket(x, &LieSuperElement::basis(i, j));
        for (key, c) in image.terms() {
            if let Some(&row) = row_of.get(key) {
                m[row][col] += c;
            }
        }
    }
    m
}

/// `(d0, d1)`: codimensions of the centralizer of `e` in the even and odd parts.
pub fn centralizer_dims(shape: GlShape, e: &LieSuperElement) -> Result<(usize, usize)> {
    if !e.is_even() {
        return Err(Error::OddElement);
    }
    let mut dims = [0usize; 2];
    for p in 0..2u8 {
        let part = shape.basis_of_parity(p);
        // ad e preserves parity since e is even, so the rank is the codimension
        // of the kernel inside this part.
        let m = ad_matrix(e, &part, &part);
        dims[p as usize] = linalg::dense_rank(&m);
    }
    Ok((dims[0], dims[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    const P1: BoxIndex = BoxIndex::plus(1);
    const P2: BoxIndex = BoxIndex::plus(2);
    const M1: BoxIndex = BoxIndex::minus(1);

    fn e(i: BoxIndex, j: BoxIndex) -> LieSuperElement {
        LieSuperElement::basis(i, j)
    }

    #[test]
    fn parity_of_indices() {
        assert_eq!(parity(P1), 0);
        assert_eq!(parity(M1), 1);
        assert_eq!(parity(BoxIndex::plus(3)), 0);
        assert!(P2 < M1);
    }

    #[test]
    fn even_bracket() {
        let got = bracket(&e(P1, P2), &e(P2, P1));
        assert_eq!(got, e(P1, P1).sub(&e(P2, P2)));
    }

    #[test]
    fn odd_brackets() {
        assert_eq!(bracket(&e(P1, M1), &e(M1, P1)), e(P1, P1).add(&e(M1, M1)));
        assert!(bracket(&e(P1, M1), &e(P1, M1)).is_zero());
    }

    #[test]
    fn superform_values() {
        assert_eq!(superform(&e(P1, P1), &e(P1, P1)), int(1));
        assert_eq!(superform(&e(M1, M1), &e(M1, M1)), int(-1));
        assert_eq!(superform(&e(P1, P2), &e(P2, P1)), int(1));
        assert_eq!(superform(&e(P1, P2), &e(P1, P2)), int(0));
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(centralizer_dims(GlShape::new(1, 1), &LieSuperElement::zero()).unwrap(), (0, 0));
        assert_eq!(centralizer_dims(GlShape::new(2, 0), &e(P1, P2)).unwrap(), (2, 0));
        assert_eq!(centralizer_dims(GlShape::new(1, 1), &e(P1, M1)), Err(Error::OddElement));
    }

    #[test]
    fn display_uses_bars() {
        assert_eq!(BoxIndex::minus(12).to_string(), "1\u{304}2\u{304}");
        assert_eq!(e(P1, M1).to_string(), "1 · e(1,1\u{304})");
    }
}
