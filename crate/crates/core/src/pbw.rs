//! The enveloping superalgebra `U(gl(M|N))` as a straightening engine.
//!
//! Elements are sparse sums of PBW monomials. A monomial is a nondecreasing
//! list of basis ranks; an even basis vector may repeat (its exponent), an
//! odd one may not. Products are brought to normal form by moving each left
//! factor rightward with `x·y = (−1)^{p(x)p(y)} y·x + [x, y]`, memoizing
//! `(generator, monomial)` products.
//!
//! For a pyramid the basis order lists `p` first (diagonal `h`, off-diagonal
//! `h`, then `p′` by degree) and `m` last. Because `I_χ` is the *left* ideal
//! generated by `a − χ(a)`, a normal monomial `p₁⋯p_k·m₁⋯m_l` projects to
//! `χ(m₁)⋯χ(m_l)·p₁⋯p_k`, so `pr_χ` is a per-monomial substitution.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::rc::Rc;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gl::{self, BoxIndex, GlShape, LieSuperElement};
use crate::pyramid::{Part, Pyramid};
use crate::scalar::Rational;

pub type Monomial = SmallVec<[u16; 6]>;

/// A sparse linear combination of PBW monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UeaElement {
    terms: FxHashMap<Monomial, Rational>,
}

impl UeaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(Monomial::new(), c);
        e
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn add_scaled_ref(&mut self, other: &UeaElement, c: &Rational) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u16]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The coefficient of the empty monomial.
    pub fn constant(&self) -> Rational {
        self.coefficient(&[])
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_ref(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_ref(other, &-Rational::one());
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled_ref(self, c);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.add_scaled_ref(other, &Rational::one());
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        self.add_scaled_ref(other, c);
    }

    /// Largest monomial length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }
}

/// `U(gl(M|N))` with a fixed PBW order of the basis `e_{i,j}`.
#[derive(Debug)]
pub struct Uea {
    shape: GlShape,
    basis: Vec<(BoxIndex, BoxIndex)>,
    rank_of: FxHashMap<(BoxIndex, BoxIndex), u16>,
    parity: Vec<u8>,
    brackets: Vec<Vec<(u16, i8)>>,
    p_len: u16,
    chi: Vec<Rational>,
    memo: RefCell<FxHashMap<(u16, Monomial), Rc<UeaElement>>>,
}

impl Uea {
    /// `order` lists every basis pair once; the first `p_len` form `p`, the
    /// rest form `m` and carry the character values `chi`.
    pub fn with_order(shape: GlShape, order: Vec<(BoxIndex, BoxIndex)>, p_len: usize, chi: Vec<Rational>) -> Self {
        let n = order.len();
        assert_eq!(n, shape.size() * shape.size(), "order must list the whole basis");
        assert_eq!(chi.len(), n);
        let rank_of: FxHashMap<_, _> = order.iter().enumerate().map(|(r, &b)| (b, r as u16)).collect();
        let parity = order.iter().map(|&(i, j)| gl::pair_parity(i, j)).collect();
        let mut brackets = Vec::with_capacity(n * n);
        for &(i, j) in &order {
            for &(k, l) in &order {
                brackets.push(gl::bracket_basis(i, j, k, l).into_iter().map(|(p, s)| (rank_of[&p], s)).collect());
            }
        }
        Uea {
            shape,
            basis: order,
            rank_of,
            parity,
            brackets,
            p_len: p_len as u16,
            chi,
            memo: RefCell::new(FxHashMap::default()),
        }
    }

    /// Lexicographic order with no `m` part.
    pub fn plain(shape: GlShape) -> Self {
        let basis = shape.basis();
        let n = basis.len();
        Self::with_order(shape, basis, n, vec![Rational::zero(); n])
    }

    /// The order adapted to the good grading of `py`.
    pub fn for_pyramid(py: &Pyramid) -> Self {
        let h = py.graded_basis(Part::H);
        let mut order: Vec<(BoxIndex, BoxIndex)> = h.iter().copied().filter(|(i, j)| i == j).collect();
        order.extend(h.iter().copied().filter(|(i, j)| i != j));
        let mut pprime = py.graded_basis(Part::PPrime);
        pprime.sort_by_key(|&(i, j)| (py.degree(i, j), i, j));
        order.extend(pprime);
        let p_len = order.len();
        let mut m = py.graded_basis(Part::M);
        m.sort_by_key(|&(i, j)| (py.degree(i, j), i, j));
        order.extend(m);
        let e = py.e_pi();
        let chi = order
            .iter()
            .enumerate()
            .map(|(r, &(i, j))| {
                if r < p_len {
                    Rational::zero()
                } else {
                    gl::superform(&e, &LieSuperElement::basis(i, j))
                }
            })
            .collect();
        Self::with_order(py.shape(), order, p_len, chi)
    }

    pub fn shape(&self) -> GlShape {
        self.shape
    }

    pub fn rank(&self, i: BoxIndex, j: BoxIndex) -> u16 {
        self.rank_of[&(i, j)]
    }

    pub fn pair(&self, rank: u16) -> (BoxIndex, BoxIndex) {
        self.basis[rank as usize]
    }

    pub fn in_p(&self, rank: u16) -> bool {
        rank < self.p_len
    }

    pub fn generator(&self, i: BoxIndex, j: BoxIndex) -> UeaElement {
        UeaElement::monomial(SmallVec::from_slice(&[self.rank(i, j)]), Rational::one())
    }

    pub fn from_lie(&self, x: &LieSuperElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (&(i, j), c) in x.terms() {
            out.add_term(SmallVec::from_slice(&[self.rank(i, j)]), c.clone());
        }
        out
    }

    pub fn monomial_parity(&self, m: &[u16]) -> u8 {
        m.iter().map(|&r| self.parity[r as usize]).sum::<u8>() % 2
    }

    /// Splits into (even part, odd part).
    pub fn split_parity(&self, u: &UeaElement) -> (UeaElement, UeaElement) {
        let mut even = UeaElement::zero();
        let mut odd = UeaElement::zero();
        for (m, c) in u.terms() {
            if self.monomial_parity(m) == 0 {
                even.add_term(m.clone(), c.clone());
            } else {
                odd.add_term(m.clone(), c.clone());
            }
        }
        (even, odd)
    }

    /// `Some(p)` for a homogeneous element; zero counts as even.
    pub fn parity_of(&self, u: &UeaElement) -> Option<u8> {
        let mut it = u.terms().map(|(m, _)| self.monomial_parity(m));
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    pub fn cache_len(&self) -> usize {
        self.memo.borrow().len()
    }

    pub fn clear_cache(&self) {
        self.memo.borrow_mut().clear();
    }

    /// `x · m` in normal form, for a basis rank `x` and a normal monomial `m`.
    fn gen_times_mono(&self, x: u16, mono: &[u16]) -> Rc<UeaElement> {
        let prepend = || {
            let mut m = Monomial::with_capacity(mono.len() + 1);
            m.push(x);
            m.extend_from_slice(mono);
            Rc::new(UeaElement::monomial(m, Rational::one()))
        };
        match mono.first() {
            None => return prepend(),
            Some(&y) if x < y => return prepend(),
            Some(&y) if x == y => {
                if self.parity[x as usize] == 1 {
                    // x² = ½[x, x], and [x, x] vanishes for odd basis vectors of gl(M|N).
                    debug_assert!(self.brackets[x as usize * self.basis.len() + x as usize].is_empty());
                    return Rc::new(UeaElement::zero());
                }
                return prepend();
            }
            _ => {}
        }
        let key = (x, Monomial::from_slice(mono));
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }
        let y = mono[0];
        let rest = &mono[1..];
        let mut out = UeaElement::zero();
        let swapped = self.gen_times_mono(x, rest);
        let sign = if self.parity[x as usize] & self.parity[y as usize] == 1 {
            -Rational::one()
        } else {
            Rational::one()
        };
        for (m, c) in swapped.terms() {
            let prod = self.gen_times_mono(y, m);
            out.add_scaled_ref(&prod, &(c * &sign));
        }
        let bracket = &self.brackets[x as usize * self.basis.len() + y as usize];
        for &(z, s) in bracket {
            let prod = self.gen_times_mono(z, rest);
            out.add_scaled_ref(&prod, &Rational::from_integer(s.into()));
        }
        let out = Rc::new(out);
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn mono_times_mono(&self, a: &[u16], b: &Monomial, coeff: &Rational, out: &mut UeaElement) {
        if a.is_empty() {
            out.add_term(b.clone(), coeff.clone());
            return;
        }
        if b.is_empty() || a[a.len() - 1] < b[0] {
            let mut m = Monomial::with_capacity(a.len() + b.len());
            m.extend_from_slice(a);
            m.extend_from_slice(b);
            out.add_term(m, coeff.clone());
            return;
        }
        let mut cur = UeaElement::monomial(b.clone(), coeff.clone());
        for &x in a.iter().rev() {
            let mut next = UeaElement::zero();
            for (m, c) in cur.terms() {
                next.add_scaled_ref(&self.gen_times_mono(x, m), c);
            }
            cur = next;
        }
        out.add_assign(&cur);
    }

    pub fn mul(&self, a: &UeaElement, b: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                self.mono_times_mono(ma, mb, &(ca * cb), &mut out);
            }
        }
        out
    }

    /// `[x, y] = xy − (−1)^{p(x)p(y)} yx`, extended over homogeneous parts.
    pub fn supercommutator(&self, x: &UeaElement, y: &UeaElement) -> UeaElement {
        let (x0, x1) = self.split_parity(x);
        let (y0, y1) = self.split_parity(y);
        let mut out = UeaElement::zero();
        for (xa, pa) in [(&x0, 0u8), (&x1, 1)] {
            if xa.is_zero() {
                continue;
            }
            for (yb, pb) in [(&y0, 0u8), (&y1, 1)] {
                if yb.is_zero() {
                    continue;
                }
                out.add_assign(&self.mul(xa, yb));
                let s = if pa & pb == 1 { Rational::one() } else { -Rational::one() };
                out.add_scaled(&self.mul(yb, xa), &s);
            }
        }
        out
    }

    pub fn pow(&self, a: &UeaElement, k: usize) -> UeaElement {
        let mut out = UeaElement::one();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    pub fn is_in_up(&self, u: &UeaElement) -> bool {
        u.terms().all(|(m, _)| m.iter().all(|&r| r < self.p_len))
    }

    /// Projection along the left ideal generated by `a − χ(a)`, `a ∈ m`.
    pub fn pr_chi(&self, u: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (m, c) in u.terms() {
            let split = m.iter().position(|&r| r >= self.p_len).unwrap_or(m.len());
            let mut coeff = c.clone();
            for &r in &m[split..] {
                coeff *= &self.chi[r as usize];
                if coeff.is_zero() {
                    break;
                }
            }
            out.add_term(Monomial::from_slice(&m[..split]), coeff);
        }
        out
    }

    /// `a · y = pr_χ([a, y])` for a basis vector `a ∈ m` and `y ∈ U(p)`.
    pub fn twisted_action(&self, a: (BoxIndex, BoxIndex), y: &UeaElement) -> Result<UeaElement> {
        let r = self.rank(a.0, a.1);
        if r < self.p_len {
            return Err(Error::NotInUp(format!("e({},{}) is not in m", a.0, a.1)));
        }
        if !self.is_in_up(y) {
            return Err(Error::NotInUp("argument has m-supported monomials".into()));
        }
        let gen = UeaElement::monomial(SmallVec::from_slice(&[r]), Rational::one());
        Ok(self.pr_chi(&self.supercommutator(&gen, y)))
    }

    /// Basis vectors of `m`, in PBW order.
    pub fn m_basis(&self) -> Vec<(BoxIndex, BoxIndex)> {
        self.basis[self.p_len as usize..].to_vec()
    }

    /// Membership in `U(p)^m` under the twisted action.
    pub fn is_w_invariant(&self, y: &UeaElement) -> Result<bool> {
        for a in self.m_basis() {
            if !self.twisted_action(a, y)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Value of `u ∈ U(p)` on the one-dimensional module where `e_{i,i}`
    /// acts by `diag[i]` and every off-diagonal basis vector acts by 0.
    pub fn evaluate_one_dim(&self, u: &UeaElement, diag: &BTreeMap<BoxIndex, Rational>) -> Result<Rational> {
        if !self.is_in_up(u) {
            return Err(Error::NotInUp("cannot evaluate outside U(p)".into()));
        }
        let mut total = Rational::zero();
        'terms: for (m, c) in u.terms() {
            let mut v = c.clone();
            for &r in m.iter() {
                let (i, j) = self.basis[r as usize];
                if i != j {
                    continue 'terms;
                }
                match diag.get(&i) {
                    Some(d) => v *= d,
                    None => continue 'terms,
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// The terms made only of diagonal basis elements. Every other term
    /// evaluates to zero on a one-dimensional weight.
    pub fn diagonal_part(&self, u: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (m, c) in u.terms() {
            if m.iter().all(|&r| {
                let (i, j) = self.basis[r as usize];
                i == j
            }) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Deterministic text form: terms sorted by length, then by basis pairs.
    pub fn render(&self, u: &UeaElement) -> String {
        if u.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(Vec<(BoxIndex, BoxIndex)>, &Rational)> =
            u.terms().map(|(m, c)| (m.iter().map(|&r| self.basis[r as usize]).collect(), c)).collect();
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        let mut s = String::new();
        for (n, (pairs, c)) in terms.iter().enumerate() {
            if n > 0 {
                s.push_str(" + ");
            }
            if pairs.is_empty() {
                let _ = write!(s, "{c}");
                continue;
            }
            let _ = write!(s, "{c} ·");
            let mut k = 0;
            while k < pairs.len() {
                let mut e = 1;
                while k + e < pairs.len() && pairs[k + e] == pairs[k] {
                    e += 1;
                }
                let (i, j) = pairs[k];
                if e == 1 {
                    let _ = write!(s, " e({i},{j})");
                } else {
                    let _ = write!(s, " e({i},{j})^{e}");
                }
                k += e;
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pyramid::ShiftMatrix;
    use crate::scalar::int;

    const P1: BoxIndex = BoxIndex::plus(1);
    const P2: BoxIndex = BoxIndex::plus(2);
    const M1: BoxIndex = BoxIndex::minus(1);

    fn example() -> Pyramid {
        let shift = ShiftMatrix::new(vec![vec![0, 1, 1], vec![0, 0, 0], vec![1, 1, 0]]).unwrap();
        Pyramid::from_signs_str(shift, 4, "101").unwrap()
    }

    #[test]
    fn single_straightening_step() {
        let u = Uea::plain(GlShape::new(2, 0));
        let e21 = u.generator(P2, P1);
        let e12 = u.generator(P1, P2);
        // Lexicographic order puts e(1,2) before e(2,1).
        let got = u.mul(&e21, &e12);
        let expect = u.mul(&e12, &e21).add(&u.generator(P2, P2)).sub(&u.generator(P1, P1));
        assert_eq!(got, expect);
        assert_eq!(u.render(&got), "-1 · e(1,1) + 1 · e(2,2) + 1 · e(1,2) e(2,1)");
    }

    #[test]
    fn identity_and_odd_square() {
        let u = Uea::plain(GlShape::new(1, 1));
        let x = u.generator(P1, M1);
        assert_eq!(u.mul(&UeaElement::one(), &x), x);
        assert!(u.mul(&x, &x).is_zero());
        let y = u.generator(M1, P1);
        let anti = u.mul(&x, &y).add(&u.mul(&y, &x));
        assert_eq!(anti, u.generator(P1, P1).add(&u.generator(M1, M1)));
    }

    #[test]
    fn projection_examples() {
        let py = example();
        let u = Uea::for_pyramid(&py);
        let e21 = u.generator(P2, P1);
        let e11 = u.generator(P1, P1);
        assert_eq!(u.pr_chi(&e21), UeaElement::one());
        assert_eq!(u.pr_chi(&e11), e11);
        // e(2,1) e(1,1) = e(1,1) e(2,1) + e(2,1), projecting to e(1,1) + 1.
        assert_eq!(u.pr_chi(&u.mul(&e21, &e11)), e11.add(&UeaElement::one()));
    }

    #[test]
    fn twisted_action_examples() {
        let py = example();
        let u = Uea::for_pyramid(&py);
        assert!(u.twisted_action((P2, P1), &UeaElement::one()).unwrap().is_zero());
        let e11 = u.generator(P1, P1);
        // [e(2,1), e(1,1)] = e(2,1), and χ(e(2,1)) = 1.
        assert_eq!(u.twisted_action((P2, P1), &e11).unwrap(), UeaElement::scalar(int(1)));
        assert!(u.twisted_action((P1, P1), &e11).is_err());
        assert!(u.twisted_action((P2, P1), &u.generator(P2, P1)).is_err());
        assert!(!u.is_w_invariant(&e11).unwrap());
        assert!(u.is_w_invariant(&UeaElement::one()).unwrap());
    }

    #[test]
    fn evaluation() {
        let py = example();
        let u = Uea::for_pyramid(&py);
        let diag: BTreeMap<_, _> = [(P1, int(3)), (P2, int(5))].into_iter().collect();
        assert_eq!(u.evaluate_one_dim(&UeaElement::one(), &diag).unwrap(), int(1));
        let x = u.generator(P1, P1).add(&u.generator(P2, P2));
        assert_eq!(u.evaluate_one_dim(&x, &diag).unwrap(), int(8));
        assert_eq!(u.evaluate_one_dim(&u.generator(P1, P2), &diag).unwrap(), int(0));
        assert!(u.evaluate_one_dim(&u.generator(P2, P1), &diag).is_err());
    }

    #[test]
    fn gl2_second_generator_is_invariant() {
        // One row of two plus boxes: D^(2) = −e12 + (e11 − 1) e22.
        let py = Pyramid::from_intervals(&[(1, 2)], &[crate::gl::Sign::Plus]).unwrap();
        let u = Uea::for_pyramid(&py);
        let e11 = u.generator(P1, P1).sub(&UeaElement::one());
        let d2 = u.mul(&e11, &u.generator(P2, P2)).sub(&u.generator(P1, P2));
        assert!(u.is_w_invariant(&d2).unwrap());
    }
}
