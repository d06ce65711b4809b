//! Weights on the diagonal torus, indexed by box.
//!
//! All weights here are built from the pyramid's super column heights `q̌`,
//! super row numbers `row̌` and `h = m − n`. The closed formulas are paired
//! with root-sum expressions so the two can be compared exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::gl::BoxIndex;
use crate::modules1d::Tableau;
use crate::pyramid::Pyramid;
use crate::scalar::{frac, int, sign_pow, Rational};

/// `Σ coords[i] ε_i`; zero coordinates are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Weight {
    coords: BTreeMap<BoxIndex, Rational>,
}

impl Weight {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_fn(py: &Pyramid, f: impl Fn(BoxIndex) -> Rational) -> Self {
        let mut w = Self::zero();
        for b in py.boxes() {
            w.set(b, f(b));
        }
        w
    }

    pub fn get(&self, i: BoxIndex) -> Rational {
        self.coords.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: BoxIndex, c: Rational) {
        if c.is_zero() {
            self.coords.remove(&i);
        } else {
            self.coords.insert(i, c);
        }
    }

    pub fn add_to(&mut self, i: BoxIndex, c: &Rational) {
        let v = self.get(i) + c;
        self.set(i, v);
    }

    pub fn coords(&self) -> &BTreeMap<BoxIndex, Rational> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, c) in &other.coords {
            out.add_to(i, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (&i, v) in &self.coords {
            out.set(i, v * c);
        }
        out
    }

    /// Value on every box of `py`, zero entries included.
    pub fn diag(&self, py: &Pyramid) -> BTreeMap<BoxIndex, Rational> {
        py.boxes().map(|b| (b, self.get(b))).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.coords.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·ε({i})")?;
        }
        Ok(())
    }
}

fn tp_sign(i: BoxIndex) -> i64 {
    if i.parity() == 0 {
        1
    } else {
        -1
    }
}

/// `(q̌_1, …, q̌_ℓ)` prefix sums, so `heights[c]` sums columns `1..=c`.
fn column_prefix(py: &Pyramid) -> Vec<i64> {
    let mut acc = vec![0i64];
    for q in py.super_stats().column_heights {
        acc.push(acc.last().unwrap() + q);
    }
    acc
}

/// `Σ_i a_i ε_i`.
pub fn lambda_a(a: &Tableau<Rational>) -> Weight {
    Weight::from_fn(a.pyramid(), |b| a.entry(b).clone())
}

/// `η(e_{i,i}) = (−1)^{tp(i)}(h − q̌_{col(i)} − … − q̌_ℓ)`.
pub fn eta(py: &Pyramid) -> Weight {
    let pre = column_prefix(py);
    let total = *pre.last().unwrap();
    let h = py.h();
    Weight::from_fn(py, |i| {
        let tail = total - pre[py.col_of(i) - 1];
        int(tp_sign(i) * (h - tail))
    })
}

/// `ρ_h(e_{i,i}) = −(−1)^{tp(i)} row̌(i)`.
pub fn rho_h(py: &Pyramid) -> Weight {
    let stats = py.super_stats();
    Weight::from_fn(py, |i| int(-tp_sign(i) * stats.box_rows[&i]))
}

/// `β(e_{i,i}) = (−1)^{tp(i)}((q̌_1 + … + q̌_{col(i)−1}) − (q̌_{col(i)+1} + … + q̌_ℓ))`.
pub fn beta(py: &Pyramid) -> Weight {
    let pre = column_prefix(py);
    let total = *pre.last().unwrap();
    Weight::from_fn(py, |i| {
        let c = py.col_of(i);
        int(tp_sign(i) * (pre[c - 1] - (total - pre[c])))
    })
}

/// `ρ̄(e_{i,i}) = −(−1)^{tp(i)}((q̌_1 + … + q̌_{col(i)−1}) + row̌(i) − (h − q̌_{col(i)}))`.
pub fn rho_bar(py: &Pyramid) -> Weight {
    let pre = column_prefix(py);
    let stats = py.super_stats();
    let h = py.h();
    Weight::from_fn(py, |i| {
        let c = py.col_of(i);
        let q_c = pre[c] - pre[c - 1];
        int(-tp_sign(i) * (pre[c - 1] + stats.box_rows[&i] - (h - q_c)))
    })
}

/// `δ = ((M − N + 1)/2) Σ ε_i`.
pub fn delta(py: &Pyramid) -> Weight {
    let shape = py.shape();
    let c = frac(shape.plus as i64 - shape.minus as i64 + 1, 2);
    Weight::from_fn(py, |_| c.clone())
}

/// `½ Σ ((−1)^{tp(i)}(M − N) + 1) ε_i`: agrees with `delta` on plus boxes and
/// is `(N − M + 1)/2` on minus boxes. The half-sum expressions for `ρ̃` and
/// `ρ̄` hold with this shift on every pyramid; with `delta` they fail on every
/// minus box once `M ≠ N`.
pub fn delta_signed(py: &Pyramid) -> Weight {
    let shape = py.shape();
    let d = shape.plus as i64 - shape.minus as i64;
    Weight::from_fn(py, |i| frac(tp_sign(i) * d + 1, 2))
}

/// `ρ̃(e_{i,i}) = (−1)^{tp(i)}(h − row̌(i) − (q̌_{col(i)} + … + q̌_ℓ))`.
pub fn rho_tilde(py: &Pyramid) -> Weight {
    let pre = column_prefix(py);
    let total = *pre.last().unwrap();
    let stats = py.super_stats();
    let h = py.h();
    Weight::from_fn(py, |i| {
        let tail = total - pre[py.col_of(i) - 1];
        int(tp_sign(i) * (h - stats.box_rows[&i] - tail))
    })
}

/// Sign of a comparison, used to file roots by row and by column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Region {
    Plus,
    Zero,
    Minus,
}

impl Region {
    fn of(a: usize, b: usize) -> Self {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Region::Plus,
            std::cmp::Ordering::Equal => Region::Zero,
            std::cmp::Ordering::Greater => Region::Minus,
        }
    }
}

/// The roots `ε_i − ε_j` (`i ≠ j`) filed by row comparison and column comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootPartition {
    roots: Vec<(BoxIndex, BoxIndex, Region, Region)>,
}

impl RootPartition {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `Φ^ξ` for `row = Some(ξ)`, `Φ(η)` for `col = Some(η)`, `Φ(η)^ξ` for both.
    pub fn select(&self, col: Option<Region>, row: Option<Region>) -> Vec<(BoxIndex, BoxIndex)> {
        self.roots
            .iter()
            .filter(|r| col.is_none_or(|c| r.3 == c) && row.is_none_or(|x| r.2 == x))
            .map(|r| (r.0, r.1))
            .collect()
    }
}

pub fn root_partitions(py: &Pyramid) -> RootPartition {
    let boxes: Vec<BoxIndex> = py.boxes().collect();
    let mut roots = Vec::new();
    for &i in &boxes {
        for &j in &boxes {
            if i != j {
                roots.push((i, j, Region::of(py.row_of(i), py.row_of(j)), Region::of(py.col_of(i), py.col_of(j))));
            }
        }
    }
    RootPartition { roots }
}

/// `Σ (−1)^{tp(α)} α` over the given roots.
pub fn signed_root_sum(roots: &[(BoxIndex, BoxIndex)]) -> Weight {
    let mut w = Weight::zero();
    for &(i, j) in roots {
        let s = sign_pow((i.parity() + j.parity()) as i64);
        w.add_to(i, &s);
        w.add_to(j, &-s);
    }
    w
}

/// `½ Σ_{Φ(−) ∪ Φ(0)^+} (−1)^{tp(α)} α − shift`.
pub fn rho_tilde_from_roots(py: &Pyramid, shift: &Weight) -> Weight {
    let part = root_partitions(py);
    let mut roots = part.select(Some(Region::Minus), None);
    roots.extend(part.select(Some(Region::Zero), Some(Region::Plus)));
    signed_root_sum(&roots).scale(&frac(1, 2)).sub(shift)
}

/// `½ Σ_{Φ(+) ∪ Φ(0)^+} (−1)^{tp(α)} α − shift`.
pub fn rho_bar_from_roots(py: &Pyramid, shift: &Weight) -> Weight {
    let part = root_partitions(py);
    let mut roots = part.select(Some(Region::Plus), None);
    roots.extend(part.select(Some(Region::Zero), Some(Region::Plus)));
    signed_root_sum(&roots).scale(&frac(1, 2)).sub(shift)
}

/// `Σ_{Φ(−)} (−1)^{tp(α)} α`.
pub fn beta_from_roots(py: &Pyramid) -> Weight {
    signed_root_sum(&root_partitions(py).select(Some(Region::Minus), None))
}

/// Whether `λ` is the weight of a one-dimensional `U(h)`-module: equal values
/// on same-column boxes of equal parity, opposite values on mixed parity.
pub fn is_onedim_h_weight(py: &Pyramid, lam: &Weight) -> bool {
    (1..=py.ell()).all(|c| {
        let col = py.column(c);
        col.iter().enumerate().all(|(k, &i)| {
            col[k + 1..].iter().all(|&j| {
                if i.parity() == j.parity() {
                    lam.get(i) == lam.get(j)
                } else {
                    (lam.get(i) + lam.get(j)).is_zero()
                }
            })
        })
    })
}

/// For each vertically adjacent pair (upper `i`, lower `j`):
/// `ρ̃_i = ρ̃_j + 1` at equal parity and `ρ̃_i + ρ̃_j = −1` otherwise.
pub fn vertical_shift_check(py: &Pyramid) -> bool {
    let rho = rho_tilde(py);
    py.vertical_adjacencies().into_iter().all(|(i, j)| {
        if i.parity() == j.parity() {
            rho.get(i) == rho.get(j) + int(1)
        } else {
            rho.get(i) + rho.get(j) == int(-1)
        }
    })
}

/// All identities among the weights above, as one verdict per identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightIdentities {
    pub rho_tilde_is_eta_plus_rho_h: bool,
    pub rho_tilde_is_rho_bar_plus_beta: bool,
    /// Half sums with `delta`.
    pub rho_tilde_half_sum: bool,
    pub rho_bar_half_sum: bool,
    /// Half sums with `delta_signed`.
    pub rho_tilde_half_sum_signed: bool,
    pub rho_bar_half_sum_signed: bool,
    pub beta_root_sum: bool,
    pub vertical_shift: bool,
}

impl WeightIdentities {
    /// Every identity that does not involve the half sums.
    pub fn closed_forms_hold(&self) -> bool {
        self.rho_tilde_is_eta_plus_rho_h && self.rho_tilde_is_rho_bar_plus_beta && self.beta_root_sum && self.vertical_shift
    }

    pub fn holds(&self) -> bool {
        self.closed_forms_hold() && self.rho_tilde_half_sum && self.rho_bar_half_sum
    }

    pub fn holds_signed(&self) -> bool {
        self.closed_forms_hold() && self.rho_tilde_half_sum_signed && self.rho_bar_half_sum_signed
    }
}

pub fn weight_identities(py: &Pyramid) -> WeightIdentities {
    let rt = rho_tilde(py);
    let (d, ds) = (delta(py), delta_signed(py));
    WeightIdentities {
        rho_tilde_is_eta_plus_rho_h: rt == eta(py).add(&rho_h(py)),
        rho_tilde_is_rho_bar_plus_beta: rt == rho_bar(py).add(&beta(py)),
        rho_tilde_half_sum: rt == rho_tilde_from_roots(py, &d),
        rho_bar_half_sum: rho_bar(py) == rho_bar_from_roots(py, &d),
        rho_tilde_half_sum_signed: rt == rho_tilde_from_roots(py, &ds),
        rho_bar_half_sum_signed: rho_bar(py) == rho_bar_from_roots(py, &ds),
        beta_root_sum: beta(py) == beta_from_roots(py),
        vertical_shift: vertical_shift_check(py),
    }
}
