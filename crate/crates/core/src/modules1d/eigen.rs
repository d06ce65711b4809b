//! Eigenvalue data `a_i^{(r)}` of the one-dimensional modules and the
//! quotient relation tying consecutive rows together.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::pyramid::Pyramid;
use crate::scalar::{self, Rational, Scalar};
use crate::wgen::d_prime_scalars;

use super::Tableau;

/// `e_r(values)`, with `e_0 = 1`.
pub fn elementary_symmetric<S: Scalar>(r: usize, values: &[S]) -> Result<S> {
    if r > values.len() {
        return Err(Error::OutOfRange(format!("e_{r} of {} values", values.len())));
    }
    Ok(elementary_all(values).swap_remove(r))
}

/// `e_0, …, e_n` of `values`.
pub fn elementary_all<S: Scalar>(values: &[S]) -> Vec<S> {
    let mut e = vec![S::one()];
    for v in values {
        e.push(S::zero());
        for r in (1..e.len()).rev() {
            let add = e[r - 1].clone() * v.clone();
            e[r] = e[r].clone() + add;
        }
    }
    e
}

/// `full[i - 1][r - 1] = a_i^{(r)}` for `1 ≤ r ≤ p_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueData<S = Rational> {
    pub full: Vec<Vec<S>>,
}

impl<S: Scalar> EigenvalueData<S> {
    pub fn levels(&self) -> Vec<usize> {
        self.full.iter().map(Vec::len).collect()
    }

    /// `a_i^{(r)}` for `1 ≤ r ≤ p_i − p_{i−1}`.
    pub fn reduced(&self) -> Vec<Vec<S>> {
        let mut prev = 0;
        self.full
            .iter()
            .map(|row| {
                let k = row.len().saturating_sub(prev);
                prev = row.len();
                row[..k].to_vec()
            })
            .collect()
    }

    /// Recovers the full data of stacked levels `p` from the reduced data.
    pub fn from_reduced(p: &[usize], reduced: &[Vec<S>]) -> Result<Self> {
        check_reduced_shape(p, reduced)?;
        let mut full: Vec<Vec<S>> = Vec::with_capacity(p.len());
        for (k, red) in reduced.iter().enumerate() {
            let row = match full.last() {
                None => red.clone(),
                Some(prev) => {
                    let new = new_part(prev, red);
                    convolve(prev, &new, p[k])
                }
            };
            full.push(row);
        }
        Ok(EigenvalueData { full })
    }
}

pub(crate) fn check_reduced_shape<S>(p: &[usize], reduced: &[Vec<S>]) -> Result<()> {
    if reduced.len() != p.len() {
        return Err(Error::ShapeMismatch(format!("{} rows of eigenvalues for {} pyramid rows", reduced.len(), p.len())));
    }
    let mut prev = 0;
    for (k, (row, &pi)) in reduced.iter().zip(p).enumerate() {
        if pi < prev {
            return Err(Error::InvalidPyramid("row lengths must weakly increase downwards".into()));
        }
        if row.len() != pi - prev {
            return Err(Error::ShapeMismatch(format!(
                "row {} needs {} reduced eigenvalues, got {}",
                k + 1,
                pi - prev,
                row.len()
            )));
        }
        prev = pi;
    }
    Ok(())
}

/// Coefficients `c^{(1..=k)}` with `Σ_t prev^{(t)} c^{(r−t)} = target^{(r)}` for `r ≤ k`.
pub(crate) fn new_part<S: Scalar>(prev: &[S], target: &[S]) -> Vec<S> {
    let mut c: Vec<S> = Vec::with_capacity(target.len());
    for r in 1..=target.len() {
        let mut v = target[r - 1].clone();
        for t in 1..=r.min(prev.len()) {
            let back = if t == r { S::one() } else { c[r - t - 1].clone() };
            v = v - prev[t - 1].clone() * back;
        }
        c.push(v);
    }
    c
}

/// Coefficients `1..=len` of `(1 + Σ a^{(t)} u^t)(1 + Σ b^{(t)} u^t)`.
fn convolve<S: Scalar>(a: &[S], b: &[S], len: usize) -> Vec<S> {
    let at = |t: usize, v: &[S]| if t == 0 { Some(S::one()) } else { v.get(t - 1).cloned() };
    (1..=len)
        .map(|r| {
            (0..=r).fold(S::zero(), |acc, t| match (at(t, a), at(r - t, b)) {
                (Some(x), Some(y)) => acc + x * y,
                _ => acc,
            })
        })
        .collect()
}

/// `a_i^{(r)} = (−1)^{r|i|} e_r(a_{i,1} + (−1)^{|i|} r̂ow(i), …)`.
pub fn eigenvalues_of<S: Scalar>(a: &Tableau<S>) -> EigenvalueData<S> {
    let py = a.pyramid();
    let stats = py.super_stats();
    let full = (1..=py.num_rows())
        .map(|i| {
            let odd = py.row_parity(i) == 1;
            let shift = S::from_int(if odd { -stats.row_numbers[i - 1] } else { stats.row_numbers[i - 1] });
            let vals: Vec<S> = a.row(i).iter().map(|x| x.clone() + shift.clone()).collect();
            let e = elementary_all(&vals);
            (1..=vals.len())
                .map(|r| if odd && r % 2 == 1 { -e[r].clone() } else { e[r].clone() })
                .collect()
        })
        .collect();
    EigenvalueData { full }
}

/// `Σ_{t=0}^{r} d′_j^{(r−t)} d_{j+1}^{(t)} = 0` for `1 ≤ j < rows` and
/// `p_{j+1} − p_j < r ≤ p_j + p_{j+1}`; beyond that bound every term vanishes
/// on data coming from a tableau.
pub fn quotient_relation_check(a: &EigenvalueData) -> bool {
    let p = a.levels();
    (0..p.len().saturating_sub(1)).all(|j| {
        let top = p[j] + p[j + 1];
        let mut d = a.full[j].clone();
        d.resize(top, Rational::from_integer(0.into()));
        let dp = d_prime_scalars(&d);
        let lower = &a.full[j + 1];
        let coeff = |v: &[Rational], t: usize| -> Rational {
            if t == 0 {
                scalar::int(1)
            } else {
                v.get(t - 1).cloned().unwrap_or_else(|| scalar::int(0))
            }
        };
        (p[j + 1].saturating_sub(p[j]) + 1..=top).all(|r| {
            let sum: Rational = (0..=r).map(|t| coeff(&dp, r - t) * coeff(lower, t)).sum();
            sum == scalar::int(0)
        })
    })
}

/// Keys `"a[i][r]"` with rationals rendered as strings.
pub fn eigenvalues_to_json(rows: &[Vec<Rational>]) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for (k, row) in rows.iter().enumerate() {
        for (r, v) in row.iter().enumerate() {
            out.insert(format!("a[{}][{}]", k + 1, r + 1), scalar::render_rational(v));
        }
    }
    out
}

fn parse_key(key: &str) -> Option<(usize, usize)> {
    let rest = key.strip_prefix("a[")?.strip_suffix(']')?;
    let (i, r) = rest.split_once("][")?;
    Some((i.parse().ok()?, r.parse().ok()?))
}

/// Reads reduced data for `py`. Keys up to `r ≤ p_i` are accepted; those past
/// the reduced range are ignored.
pub fn reduced_from_json(py: &Pyramid, map: &BTreeMap<String, String>) -> Result<Vec<Vec<Rational>>> {
    let p = py.p();
    let mut rows: Vec<Vec<Option<Rational>>> = Vec::new();
    let mut prev = 0;
    for &pi in &p {
        rows.push(vec![None; pi - prev]);
        prev = pi;
    }
    for (key, val) in map {
        let (i, r) = parse_key(key).ok_or_else(|| Error::Parse(format!("bad eigenvalue key `{key}`")))?;
        if i == 0 || i > p.len() || r == 0 || r > p[i - 1] {
            return Err(Error::OutOfRange(format!("eigenvalue key `{key}`")));
        }
        let v = scalar::parse_rational(val)?;
        if let Some(slot) = rows[i - 1].get_mut(r - 1) {
            *slot = Some(v);
        }
    }
    rows.into_iter()
        .enumerate()
        .map(|(k, row)| {
            row.into_iter()
                .enumerate()
                .map(|(r, v)| v.ok_or_else(|| Error::Parse(format!("missing eigenvalue a[{}][{}]", k + 1, r + 1))))
                .collect()
        })
        .collect()
}
