//! Explicit generators of the finite W-superalgebra inside `U(p)`.
//!
//! `T_{i,j;x}^{(r)}` is a signed sum of products `ẽ_{i_1,j_1} ⋯ ẽ_{i_s,j_s}`
//! over box sequences that walk from row `i` to row `j`. Each factor costs
//! `col(j_t) − col(i_t) + 1` of the level budget `r`; consecutive factors
//! share a row, and the column of the next start box is bounded above or
//! below depending on whether that row lies at or above row `x`. The sum is
//! evaluated right to left with memoized tails.

pub mod relations;

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::gl::BoxIndex;
use crate::linalg::{Echelon, SparseRow};
use crate::pbw::{Monomial, Uea, UeaElement};
use crate::pyramid::Pyramid;
use crate::scalar::{sign_pow, Rational};
use crate::weights::{self, Weight};

/// Which generator family an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    D,
    DPrime,
    E,
    F,
    EHigh,
    FHigh,
}

/// A named generator: `D_i^{(r)}`, `E_i^{(r)}`, `E_{i,j}^{(r)}`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub kind: GenKind,
    pub i: usize,
    pub j: usize,
    pub r: u32,
}

impl GeneratorId {
    pub fn d(i: usize, r: u32) -> Self {
        GeneratorId { kind: GenKind::D, i, j: i, r }
    }

    pub fn e(i: usize, r: u32) -> Self {
        GeneratorId { kind: GenKind::E, i, j: i + 1, r }
    }

    pub fn f(i: usize, r: u32) -> Self {
        GeneratorId { kind: GenKind::F, i: i + 1, j: i, r }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::D => write!(f, "D_{}^({})", self.i, self.r),
            GenKind::DPrime => write!(f, "D'_{}^({})", self.i, self.r),
            GenKind::E => write!(f, "E_{}^({})", self.i, self.r),
            GenKind::F => write!(f, "F_{}^({})", self.j, self.r),
            GenKind::EHigh => write!(f, "E_{},{}^({})", self.i, self.j, self.r),
            GenKind::FHigh => write!(f, "F_{},{}^({})", self.i, self.j, self.r),
        }
    }
}

/// Lower bound on the start column of the next factor in a `T` sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum StartColumn {
    Any,
    Above(usize),
    AtMost(usize),
}

impl StartColumn {
    fn allows(self, c: usize) -> bool {
        match self {
            StartColumn::Any => true,
            StartColumn::Above(b) => c > b,
            StartColumn::AtMost(b) => c <= b,
        }
    }
}

/// Generator factory for one pyramid. Holds the PBW context and caches.
pub struct WGen {
    py: Pyramid,
    uea: Uea,
    eta: Weight,
    t_cache: RefCell<FxHashMap<(usize, usize, usize, u32), Rc<UeaElement>>>,
    higher_cache: RefCell<FxHashMap<GeneratorId, Rc<UeaElement>>>,
    diagonal_cache: RefCell<FxHashMap<GeneratorId, Rc<UeaElement>>>,
}

impl WGen {
    pub fn new(py: &Pyramid) -> Self {
        WGen {
            uea: Uea::for_pyramid(py),
            eta: weights::eta(py),
            py: py.clone(),
            t_cache: RefCell::new(FxHashMap::default()),
            higher_cache: RefCell::new(FxHashMap::default()),
            diagonal_cache: RefCell::new(FxHashMap::default()),
        }
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.py
    }

    pub fn uea(&self) -> &Uea {
        &self.uea
    }

    pub fn rows(&self) -> usize {
        self.py.num_rows()
    }

    /// `ẽ_{i,j} = (−1)^{col(j) − col(i)}(e_{i,j} + η(e_{i,j}))`.
    pub fn e_tilde(&self, i: BoxIndex, j: BoxIndex) -> Result<UeaElement> {
        if !self.py.in_p(i, j) {
            return Err(Error::NotInP(i.to_string(), j.to_string()));
        }
        let mut x = self.uea.generator(i, j);
        if i == j {
            x.add_term(Monomial::new(), self.eta.get(i));
        }
        let s = sign_pow(self.py.col_of(j) as i64 - self.py.col_of(i) as i64);
        Ok(x.scale(&s))
    }

    /// `T_{i,j;x}^{(r)}`; rows are 1-based and `0 ≤ x ≤ m + n`.
    pub fn t(&self, i: usize, j: usize, x: usize, r: u32) -> Result<Rc<UeaElement>> {
        let n = self.rows();
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) || x > n {
            return Err(Error::OutOfRange(format!("T indices ({i}, {j}; {x}) for {n} rows")));
        }
        let key = (i, j, x, r);
        if let Some(hit) = self.t_cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let mut memo = FxHashMap::default();
        let out = Rc::new(self.t_tail(i, StartColumn::Any, r, j, x, &mut memo));
        self.t_cache.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// Sum over sequences whose first factor starts in `row` within `start`
    /// and which spend exactly `budget`, ending in row `j`.
    fn t_tail(
        &self,
        row: usize,
        start: StartColumn,
        budget: u32,
        j: usize,
        x: usize,
        memo: &mut FxHashMap<(usize, StartColumn, u32), UeaElement>,
    ) -> UeaElement {
        if let Some(hit) = memo.get(&(row, start, budget)) {
            return hit.clone();
        }
        let mut out = UeaElement::zero();
        let ell = self.py.ell();
        for &a in &self.py.row(row).boxes.clone() {
            let ca = self.py.col_of(a);
            if !start.allows(ca) {
                continue;
            }
            let sign_a = sign_pow(a.parity() as i64);
            for cb in ca..=ell {
                let cost = (cb - ca + 1) as u32;
                if cost > budget {
                    break;
                }
                for b in self.py.column(cb) {
                    let rb = self.py.row_of(b);
                    let et = self.e_tilde(a, b).expect("col(a) ≤ col(b)");
                    if cost == budget {
                        if rb == j {
                            out.add_scaled(&et, &sign_a);
                        }
                        continue;
                    }
                    let (next, trans) = if rb > x {
                        (StartColumn::Above(cb), Rational::one())
                    } else {
                        (StartColumn::AtMost(cb), -Rational::one())
                    };
                    let tail = self.t_tail(rb, next, budget - cost, j, x, memo);
                    if tail.is_zero() {
                        continue;
                    }
                    out.add_scaled(&self.uea.mul(&et, &tail), &(&sign_a * trans));
                }
            }
        }
        memo.insert((row, start, budget), out.clone());
        out
    }

    /// `D_i^{(r)} = T_{i,i;i−1}^{(r)}`, with `D_i^{(0)} = 1`.
    pub fn d(&self, i: usize, r: u32) -> Result<Rc<UeaElement>> {
        if r == 0 {
            self.check_row(i)?;
            return Ok(Rc::new(UeaElement::one()));
        }
        self.check_row(i)?;
        self.t(i, i, i - 1, r)
    }

    /// `E_i^{(r)} = T_{i,i+1;i}^{(r)}`, defined for `r > s_{i,i+1}`.
    pub fn e(&self, i: usize, r: u32) -> Result<Rc<UeaElement>> {
        self.check_pair(i)?;
        if r <= self.py.s(i, i + 1) {
            return Err(Error::Inadmissible(format!("E_{i}^({r}) needs r > s_{{{i},{}}} = {}", i + 1, self.py.s(i, i + 1))));
        }
        self.t(i, i + 1, i, r)
    }

    /// `F_i^{(r)} = T_{i+1,i;i}^{(r)}`, defined for `r > s_{i+1,i}`.
    pub fn f(&self, i: usize, r: u32) -> Result<Rc<UeaElement>> {
        self.check_pair(i)?;
        if r <= self.py.s(i + 1, i) {
            return Err(Error::Inadmissible(format!("F_{i}^({r}) needs r > s_{{{},{i}}} = {}", i + 1, self.py.s(i + 1, i))));
        }
        self.t(i + 1, i, i, r)
    }

    /// The `T` element behind `E_i^{(r)}`, without the level gate.
    pub fn e_raw(&self, i: usize, r: u32) -> Result<Rc<UeaElement>> {
        self.check_pair(i)?;
        self.t(i, i + 1, i, r)
    }

    /// The `T` element behind `F_i^{(r)}`, without the level gate.
    pub fn f_raw(&self, i: usize, r: u32) -> Result<Rc<UeaElement>> {
        self.check_pair(i)?;
        self.t(i + 1, i, i, r)
    }

    /// `D′_i^{(r)}` from `D′^{(0)} = 1`, `D′^{(r)} = −Σ_{t=1}^{r} D^{(t)} D′^{(r−t)}`.
    pub fn d_prime(&self, i: usize, r: u32) -> Result<UeaElement> {
        let d: Vec<UeaElement> = (1..=r).map(|t| self.d(i, t).map(|x| (*x).clone())).collect::<Result<_>>()?;
        Ok(d_prime_series(&self.uea, &d).pop().unwrap_or_else(UeaElement::one))
    }

    /// Row parity `|i|`.
    pub fn row_parity(&self, i: usize) -> u8 {
        self.py.row_parity(i)
    }

    /// Parity of `E_{i,j}` and `F_{j,i}`: `|i| + |j|`.
    pub fn root_parity(&self, i: usize, j: usize) -> u8 {
        (self.row_parity(i) + self.row_parity(j)) % 2
    }

    /// `E_{i,j}^{(r)}`, `i < j`, `r > s_{i,j}`; `E_{i,i+1} = E_i` and
    /// `E_{i,j}^{(r)} = (−1)^{|j−1|}[E_{i,j−1}^{(r − s_{j−1,j})}, E_{j−1}^{(s_{j−1,j}+1)}]`.
    pub fn higher_e(&self, i: usize, j: usize, r: u32) -> Result<Rc<UeaElement>> {
        if i >= j || j > self.rows() {
            return Err(Error::OutOfRange(format!("E_{{{i},{j}}}")));
        }
        if r <= self.py.s(i, j) {
            return Err(Error::Inadmissible(format!("E_{{{i},{j}}}^({r}) needs r > s_{{{i},{j}}}")));
        }
        if j == i + 1 {
            return self.e(i, r);
        }
        let id = GeneratorId { kind: GenKind::EHigh, i, j, r };
        if let Some(hit) = self.higher_cache.borrow().get(&id) {
            return Ok(hit.clone());
        }
        let step = self.py.s(j - 1, j);
        let left = self.higher_e(i, j - 1, r - step)?;
        let right = self.e(j - 1, step + 1)?;
        let out = self.uea.supercommutator(&left, &right).scale(&sign_pow(self.row_parity(j - 1) as i64));
        let out = Rc::new(out);
        self.higher_cache.borrow_mut().insert(id, out.clone());
        Ok(out)
    }

    /// `F_{j,i}^{(t)}`, `i < j`, `t > s_{j,i}`; `F_{i+1,i} = F_i` and
    /// `F_{j,i}^{(t)} = (−1)^{|j−1|}[F_{j−1}^{(s_{j,j−1}+1)}, F_{j−1,i}^{(t − s_{j,j−1})}]`.
    pub fn higher_f(&self, j: usize, i: usize, t: u32) -> Result<Rc<UeaElement>> {
        if i >= j || j > self.rows() {
            return Err(Error::OutOfRange(format!("F_{{{j},{i}}}")));
        }
        if t <= self.py.s(j, i) {
            return Err(Error::Inadmissible(format!("F_{{{j},{i}}}^({t}) needs t > s_{{{j},{i}}}")));
        }
        if j == i + 1 {
            return self.f(i, t);
        }
        let id = GeneratorId { kind: GenKind::FHigh, i: j, j: i, r: t };
        if let Some(hit) = self.higher_cache.borrow().get(&id) {
            return Ok(hit.clone());
        }
        let step = self.py.s(j, j - 1);
        let left = self.f(j - 1, step + 1)?;
        let right = self.higher_f(j - 1, i, t - step)?;
        let out = self.uea.supercommutator(&left, &right).scale(&sign_pow(self.row_parity(j - 1) as i64));
        let out = Rc::new(out);
        self.higher_cache.borrow_mut().insert(id, out.clone());
        Ok(out)
    }

    /// Element for a generator id.
    pub fn element(&self, id: GeneratorId) -> Result<Rc<UeaElement>> {
        match id.kind {
            GenKind::D => self.d(id.i, id.r),
            GenKind::DPrime => self.d_prime(id.i, id.r).map(Rc::new),
            GenKind::E => self.e(id.i, id.r),
            GenKind::F => self.f(id.j, id.r),
            GenKind::EHigh => self.higher_e(id.i, id.j, id.r),
            GenKind::FHigh => self.higher_f(id.i, id.j, id.r),
        }
    }

    /// Diagonal part of a generator, cached. Enough to evaluate it on
    /// one-dimensional weights.
    pub fn diagonal_part(&self, id: GeneratorId) -> Result<Rc<UeaElement>> {
        if let Some(hit) = self.diagonal_cache.borrow().get(&id) {
            return Ok(hit.clone());
        }
        let out = Rc::new(self.uea.diagonal_part(&*self.element(id)?));
        self.diagonal_cache.borrow_mut().insert(id, out.clone());
        Ok(out)
    }

    /// Whether `T_{1,1;0}^{(r)}` vanishes; requires `r > p_1`.
    pub fn truncation_vanishing(&self, r: u32) -> Result<bool> {
        let p1 = self.py.p_at(1) as u32;
        if r <= p1 {
            return Err(Error::OutOfRange(format!("truncation level {r} must exceed p_1 = {p1}")));
        }
        Ok(self.d(1, r)?.is_zero())
    }

    /// `D_i^{(r)}` for `r ≤ max_level`, and admissible `E_i^{(r)}`, `F_i^{(r)}` up to the same level.
    pub fn basic_generators(&self, max_level: u32) -> Vec<GeneratorId> {
        let n = self.rows();
        let mut out = Vec::new();
        for i in 1..=n {
            for r in 1..=max_level {
                out.push(GeneratorId::d(i, r));
            }
        }
        for i in 1..n {
            for r in self.py.s(i, i + 1) + 1..=max_level {
                out.push(GeneratorId::e(i, r));
            }
            for r in self.py.s(i + 1, i) + 1..=max_level {
                out.push(GeneratorId::f(i, r));
            }
        }
        out
    }

    /// Checks W-invariance of each listed generator.
    pub fn membership(&self, ids: &[GeneratorId]) -> Result<Vec<(GeneratorId, bool)>> {
        ids.iter().map(|&id| Ok((id, self.uea.is_w_invariant(&*self.element(id)?)?))).collect()
    }

    /// The generators whose ordered monomials span the truncated Yangian:
    /// `D_i^{(r)}` (`r ≤ p_i`), `E_{i,j}^{(r)}` (`s_{i,j} < r ≤ s_{i,j} + p_i`)
    /// and `F_{j,i}^{(r)}` (`s_{j,i} < r ≤ s_{j,i} + p_i`).
    pub fn spanning_generators(&self) -> Vec<GeneratorId> {
        let n = self.rows();
        let mut out = Vec::new();
        for i in 1..=n {
            for r in 1..=self.py.p_at(i) as u32 {
                out.push(GeneratorId::d(i, r));
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                let p = self.py.p_at(i) as u32;
                for r in self.py.s(i, j) + 1..=self.py.s(i, j) + p {
                    out.push(GeneratorId { kind: GenKind::EHigh, i, j, r });
                }
                for r in self.py.s(j, i) + 1..=self.py.s(j, i) + p {
                    out.push(GeneratorId { kind: GenKind::FHigh, i: j, j: i, r });
                }
            }
        }
        out
    }

    /// Rank of the ordered monomials of length `≤ max_len` in the spanning
    /// generators, against their number. Odd generators are not repeated.
    pub fn spanning_rank(&self, max_len: usize) -> Result<(usize, usize)> {
        let gens = self.spanning_generators();
        let elems: Vec<Rc<UeaElement>> = gens.iter().map(|&g| self.element(g)).collect::<Result<_>>()?;
        let parity: Vec<u8> = elems.iter().map(|e| self.uea.parity_of(e).unwrap_or(0)).collect();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut frontier: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                let start = w.last().copied().unwrap_or(0);
                for g in start..gens.len() {
                    if w.last() == Some(&g) && parity[g] == 1 {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push(g);
                    next.push(w2);
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let mut columns: BTreeMap<Monomial, usize> = BTreeMap::new();
        let mut ech = Echelon::new();
        for w in &words {
            let mut prod = UeaElement::one();
            for &g in w {
                prod = self.uea.mul(&prod, &elems[g]);
            }
            let mut row = SparseRow::new();
            for (m, c) in prod.terms() {
                let next = columns.len();
                let col = *columns.entry(m.clone()).or_insert(next);
                row.insert(col, c.clone());
            }
            ech.insert(row);
        }
        Ok((ech.rank(), words.len()))
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if (1..=self.rows()).contains(&i) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("row {i}")))
        }
    }

    fn check_pair(&self, i: usize) -> Result<()> {
        if i >= 1 && i < self.rows() {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("simple root index {i}")))
        }
    }
}

/// `D′^{(1..=r)}` from `D^{(1..=r)}` by `D′^{(r)} = −Σ_{t=1}^{r} D^{(t)} D′^{(r−t)}`.
pub fn d_prime_series(uea: &Uea, d: &[UeaElement]) -> Vec<UeaElement> {
    let mut dp: Vec<UeaElement> = vec![UeaElement::one()];
    for r in 1..=d.len() {
        let mut acc = UeaElement::zero();
        for t in 1..=r {
            acc.add_assign(&uea.mul(&d[t - 1], &dp[r - t]));
        }
        dp.push(acc.scale(&-Rational::one()));
    }
    dp.split_off(1)
}

/// Scalar version of `d_prime_series`.
pub fn d_prime_scalars(d: &[Rational]) -> Vec<Rational> {
    let mut dp = vec![Rational::one()];
    for r in 1..=d.len() {
        let mut acc = Rational::zero();
        for t in 1..=r {
            acc += &d[t - 1] * &dp[r - t];
        }
        dp.push(-acc);
    }
    dp.split_off(1)
}

/// `D′^{(1..=r)}` through `1 + Σ_k (−1)^k (Σ_{t≥1} D^{(t)} u^{−t})^k`, truncated at `u^{−r}`.
pub fn d_prime_by_expansion(uea: &Uea, d: &[UeaElement]) -> Vec<UeaElement> {
    let r = d.len();
    // Coefficients of u^{-0..=r} of the current power of the series.
    let mut power: Vec<UeaElement> = vec![UeaElement::zero(); r + 1];
    power[0] = UeaElement::one();
    let mut total: Vec<UeaElement> = vec![UeaElement::zero(); r + 1];
    for k in 1..=r {
        let mut next = vec![UeaElement::zero(); r + 1];
        for (a, pa) in power.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for t in 1..=r - a {
                next[a + t].add_assign(&uea.mul(pa, &d[t - 1]));
            }
        }
        power = next;
        let s = sign_pow(k as i64);
        for (deg, p) in power.iter().enumerate() {
            total[deg].add_scaled(p, &s);
        }
    }
    total.split_off(1)
}
