//! The shifted super Yangian relations, checked on the explicit generators.
//!
//! Each family is a [`Relation`] registered under a short id ("3.4", ...).
//! A family lists index templates with the least admissible value of each
//! level variable; the runner expands them into instances and compares the
//! straightened normal forms of both sides.

use std::borrow::Borrow;
use std::fmt;

use crate::error::{Error, Result};
use crate::pbw::UeaElement;
use crate::pyramid::Pyramid;
use crate::scalar::{sign_pow, Rational};

use super::{d_prime_by_expansion, WGen};

/// Indices of one relation family with the least admissible level values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub indices: Vec<usize>,
    pub min_levels: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Instance {
    pub indices: Vec<usize>,
    pub levels: Vec<u32>,
}

/// Which level tuples to expand a template into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelBound {
    /// Largest value of any single level variable.
    pub max_level: u32,
    /// Largest sum of the level variables, if any.
    pub max_sum: Option<u32>,
    /// Use only the least admissible levels.
    pub minimal: bool,
}

impl LevelBound {
    pub fn up_to(max_level: u32) -> Self {
        LevelBound { max_level, max_sum: None, minimal: false }
    }

    pub fn sum_at_most(max_sum: u32) -> Self {
        LevelBound { max_level: max_sum, max_sum: Some(max_sum), minimal: false }
    }

    pub fn minimal() -> Self {
        LevelBound { max_level: u32::MAX, max_sum: None, minimal: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationOutcome {
    pub id: &'static str,
    pub indices: Vec<usize>,
    pub levels: Vec<u32>,
    pub ok: bool,
    pub error: Option<String>,
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RelationOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rel={} indices={} levels={} {}",
            self.id,
            join(&self.indices),
            join(&self.levels),
            if self.ok { "ok" } else { "FAIL" }
        )?;
        if let Some(e) = &self.error {
            write!(f, " ({e})")?;
        }
        Ok(())
    }
}

pub trait Relation: Send + Sync {
    fn id(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn templates(&self, py: &Pyramid) -> Vec<Template>;
    /// Left and right sides, straightened.
    fn sides(&self, w: &WGen, indices: &[usize], levels: &[u32]) -> Result<(UeaElement, UeaElement)>;

    fn instances(&self, py: &Pyramid, bound: &LevelBound) -> Vec<Instance> {
        let mut out = Vec::new();
        for t in self.templates(py) {
            if bound.minimal {
                out.push(Instance { indices: t.indices.clone(), levels: t.min_levels.clone() });
                continue;
            }
            let mut levels = t.min_levels.clone();
            expand(&t.min_levels, 0, &mut levels, bound, &mut |lv| {
                out.push(Instance { indices: t.indices.clone(), levels: lv.to_vec() })
            });
        }
        out
    }

    fn check(&self, w: &WGen, inst: &Instance) -> RelationOutcome {
        let (ok, error) = match self.sides(w, &inst.indices, &inst.levels) {
            Ok((l, r)) => (l == r, None),
            Err(e) => (false, Some(e.to_string())),
        };
        RelationOutcome { id: self.id(), indices: inst.indices.clone(), levels: inst.levels.clone(), ok, error }
    }
}

fn expand(mins: &[u32], k: usize, cur: &mut Vec<u32>, bound: &LevelBound, emit: &mut dyn FnMut(&[u32])) {
    if k == mins.len() {
        if bound.max_sum.is_none_or(|m| cur.iter().sum::<u32>() <= m) {
            emit(cur);
        }
        return;
    }
    for v in mins[k]..=bound.max_level {
        cur[k] = v;
        if bound.max_sum.is_some_and(|m| cur[..=k].iter().sum::<u32>() + mins[k + 1..].iter().sum::<u32>() > m) {
            break;
        }
        expand(mins, k + 1, cur, bound, emit);
    }
    cur[k] = mins[k];
}

type TemplateFn = fn(&Pyramid) -> Vec<Template>;
type SidesFn = fn(&WGen, &[usize], &[u32]) -> Result<(UeaElement, UeaElement)>;

/// A relation family given by plain functions.
pub struct Family {
    id: &'static str,
    summary: &'static str,
    templates: TemplateFn,
    sides: SidesFn,
}

impl Relation for Family {
    fn id(&self) -> &'static str {
        self.id
    }

    fn summary(&self) -> &'static str {
        self.summary
    }

    fn templates(&self, py: &Pyramid) -> Vec<Template> {
        (self.templates)(py)
    }

    fn sides(&self, w: &WGen, indices: &[usize], levels: &[u32]) -> Result<(UeaElement, UeaElement)> {
        (self.sides)(w, indices, levels)
    }
}

fn tpl(indices: Vec<usize>, min_levels: Vec<u32>) -> Template {
    Template { indices, min_levels }
}

fn sc(w: &WGen, a: &impl Borrow<UeaElement>, b: &impl Borrow<UeaElement>) -> UeaElement {
    w.uea().supercommutator(a.borrow(), b.borrow())
}

fn mul(w: &WGen, a: &impl Borrow<UeaElement>, b: &impl Borrow<UeaElement>) -> UeaElement {
    w.uea().mul(a.borrow(), b.borrow())
}

fn par(w: &WGen, i: usize) -> i64 {
    w.row_parity(i) as i64
}

fn e_min(py: &Pyramid, i: usize) -> u32 {
    py.s(i, i + 1) + 1
}

fn f_min(py: &Pyramid, i: usize) -> u32 {
    py.s(i + 1, i) + 1
}

fn delta(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

fn t_unit(py: &Pyramid) -> Vec<Template> {
    (1..=py.num_rows()).map(|i| tpl(vec![i], vec![])).collect()
}

fn sides_unit(w: &WGen, idx: &[usize], _: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let i = idx[0];
    let lhs = w.d(i, 0)?.add(&w.d_prime(i, 0)?);
    Ok((lhs, UeaElement::scalar(Rational::from_integer(2.into()))))
}

fn t_inverse(py: &Pyramid) -> Vec<Template> {
    (1..=py.num_rows()).map(|i| tpl(vec![i], vec![1])).collect()
}

/// `Σ_{t=0}^{r} D^{(t)} D′^{(r−t)} = δ_{r,0}`, with `D′` from the inverse series.
fn sides_inverse(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let (i, r) = (idx[0], lv[0]);
    let d: Vec<UeaElement> = (1..=r).map(|t| w.d(i, t).map(|x| (*x).clone())).collect::<Result<_>>()?;
    let mut dp = vec![UeaElement::one()];
    dp.extend(d_prime_by_expansion(w.uea(), &d));
    let mut lhs = UeaElement::zero();
    for t in 0..=r {
        lhs.add_assign(&mul(w, &w.d(i, t)?, &dp[(r - t) as usize]));
    }
    Ok((lhs, UeaElement::zero()))
}

fn t_dd(py: &Pyramid) -> Vec<Template> {
    let n = py.num_rows();
    (1..=n).flat_map(|i| (i..=n).map(move |j| tpl(vec![i, j], vec![1, 1]))).collect()
}

fn sides_dd(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    Ok((sc(w, &w.d(idx[0], lv[0])?, &w.d(idx[1], lv[1])?), UeaElement::zero()))
}

fn t_de(py: &Pyramid) -> Vec<Template> {
    let n = py.num_rows();
    (1..=n).flat_map(|i| (1..n).map(move |j| tpl(vec![i, j], vec![1, e_min(py, j)]))).collect()
}

fn sides_de(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let (i, j, r, s) = (idx[0], idx[1], lv[0], lv[1]);
    let lhs = sc(w, &w.d(i, r)?, &w.e(j, s)?);
    let coeff = delta(i, j) - delta(i, j + 1);
    let mut rhs = UeaElement::zero();
    if coeff != 0 {
        for t in 0..r {
            rhs.add_assign(&mul(w, &w.d(i, t)?, &w.e(j, r + s - 1 - t)?));
        }
        rhs = rhs.scale(&(sign_pow(par(w, i)) * Rational::from_integer(coeff.into())));
    }
    Ok((lhs, rhs))
}

fn t_df(py: &Pyramid) -> Vec<Template> {
    let n = py.num_rows();
    (1..=n).flat_map(|i| (1..n).map(move |j| tpl(vec![i, j], vec![1, f_min(py, j)]))).collect()
}

fn sides_df(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let (i, j, r, s) = (idx[0], idx[1], lv[0], lv[1]);
    let lhs = sc(w, &w.d(i, r)?, &w.f(j, s)?);
    let coeff = delta(i, j + 1) - delta(i, j);
    let mut rhs = UeaElement::zero();
    if coeff != 0 {
        for t in 0..r {
            rhs.add_assign(&mul(w, &w.f(j, r + s - 1 - t)?, &w.d(i, t)?));
        }
        rhs = rhs.scale(&(sign_pow(par(w, i)) * Rational::from_integer(coeff.into())));
    }
    Ok((lhs, rhs))
}

fn t_ef(py: &Pyramid) -> Vec<Template> {
    let n = py.num_rows();
    (1..n).flat_map(|i| (1..n).map(move |j| tpl(vec![i, j], vec![e_min(py, i), f_min(py, j)]))).collect()
}

fn sides_ef(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let (i, j, r, s) = (idx[0], idx[1], lv[0], lv[1]);
    let lhs = sc(w, &w.e(i, r)?, &w.f(j, s)?);
    let mut rhs = UeaElement::zero();
    if i == j {
        let top = r + s - 1;
        for t in 0..=top {
            rhs.add_assign(&mul(w, &w.d_prime(i, top - t)?, &w.d(i + 1, t)?));
        }
        rhs = rhs.scale(&sign_pow(par(w, i + 1) + 1));
    }
    Ok((lhs, rhs))
}

fn t_ee(py: &Pyramid) -> Vec<Template> {
    (1..py.num_rows()).map(|i| tpl(vec![i], vec![e_min(py, i), e_min(py, i)])).collect()
}

fn sides_ee(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let (i, r, s) = (idx[0], lv[0], lv[1]);
    let lhs = sc(w, &w.e(i, r)?, &w.e(i, s)?);
    let low = w.pyramid().s(i, i + 1) + 1;
    let mut rhs = UeaElement::zero();
    for t in low..s {
        rhs.add_assign(&mul(w, &w.e(i, r + s - 1 - t)?, &w.e(i, t)?));
    }
    for t in low..r {
        rhs = rhs.sub(&mul(w, &w.e(i, r + s - 1 - t)?, &w.e(i, t)?));
    }
    Ok((lhs, rhs.scale(&sign_pow(par(w, i + 1)))))
}

fn t_ff(py: &Pyramid) -> Vec<Template> {
    (1..py.num_rows()).map(|i| tpl(vec![i], vec![f_min(py, i), f_min(py, i)])).collect()
}

fn sides_ff_with(w: &WGen, idx: &[usize], lv: &[u32], first_low: u32) -> Result<(UeaElement, UeaElement)> {
    let (i, r, s) = (idx[0], lv[0], lv[1]);
    let lhs = sc(w, &w.f(i, r)?, &w.f(i, s)?);
    let low = w.pyramid().s(i + 1, i) + 1;
    let mut rhs = UeaElement::zero();
    for t in first_low..r {
        rhs.add_assign(&mul(w, &w.f_raw(i, r + s - 1 - t)?, &w.f_raw(i, t)?));
    }
    for t in low..s {
        rhs = rhs.sub(&mul(w, &w.f(i, r + s - 1 - t)?, &w.f(i, t)?));
    }
    Ok((lhs, rhs.scale(&sign_pow(par(w, i)))))
}

fn sides_ff(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    sides_ff_with(w, idx, lv, w.pyramid().s(idx[0] + 1, idx[0]) + 1)
}

/// First sum read from 1, i.e. with the shift entry `s_{i+1,i+1} = 0`.
fn sides_ff_alt(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    sides_ff_with(w, idx, lv, 1)
}

fn t_ee_next(py: &Pyramid) -> Vec<Template> {
    (1..py.num_rows().saturating_sub(1)).map(|i| tpl(vec![i], vec![e_min(py, i), e_min(py, i + 1)])).collect()
}

fn sides_ee_next(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let (i, r, s) = (idx[0], lv[0], lv[1]);
    let lhs = sc(w, &w.e(i, r + 1)?, &w.e(i + 1, s)?).sub(&sc(w, &w.e(i, r)?, &w.e(i + 1, s + 1)?));
    let rhs = mul(w, &w.e(i, r)?, &w.e(i + 1, s)?).scale(&sign_pow(par(w, i + 1)));
    Ok((lhs, rhs))
}

fn t_ff_next(py: &Pyramid) -> Vec<Template> {
    (1..py.num_rows().saturating_sub(1)).map(|i| tpl(vec![i], vec![f_min(py, i), f_min(py, i + 1)])).collect()
}

fn ff_next_lhs(w: &WGen, i: usize, r: u32, s: u32) -> Result<(UeaElement, Rational)> {
    let lhs = sc(w, &w.f(i, r + 1)?, &w.f(i + 1, s)?).sub(&sc(w, &w.f(i, r)?, &w.f(i + 1, s + 1)?));
    let (a, b, c) = (par(w, i), par(w, i + 1), par(w, i + 2));
    Ok((lhs, sign_pow(1 + a * b + b * c + a * c)))
}

/// Right side `F_i^{(s)} F_i^{(r)}` as printed.
fn sides_ff_next(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let (i, r, s) = (idx[0], lv[0], lv[1]);
    let (lhs, sign) = ff_next_lhs(w, i, r, s)?;
    Ok((lhs, mul(w, &w.f_raw(i, s)?, &w.f(i, r)?).scale(&sign)))
}

/// Right side `F_{i+1}^{(s)} F_i^{(r)}`.
fn sides_ff_next_alt(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let (i, r, s) = (idx[0], lv[0], lv[1]);
    let (lhs, sign) = ff_next_lhs(w, i, r, s)?;
    Ok((lhs, mul(w, &w.f(i + 1, s)?, &w.f(i, r)?).scale(&sign)))
}

fn t_ee_far(py: &Pyramid) -> Vec<Template> {
    let n = py.num_rows();
    (1..n).flat_map(|i| (i + 2..n).map(move |j| tpl(vec![i, j], vec![e_min(py, i), e_min(py, j)]))).collect()
}

fn sides_ee_far(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    Ok((sc(w, &w.e(idx[0], lv[0])?, &w.e(idx[1], lv[1])?), UeaElement::zero()))
}

fn t_ff_far(py: &Pyramid) -> Vec<Template> {
    let n = py.num_rows();
    (1..n).flat_map(|i| (i + 2..n).map(move |j| tpl(vec![i, j], vec![f_min(py, i), f_min(py, j)]))).collect()
}

fn sides_ff_far(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    Ok((sc(w, &w.f(idx[0], lv[0])?, &w.f(idx[1], lv[1])?), UeaElement::zero()))
}

fn adjacent_pairs(py: &Pyramid) -> Vec<(usize, usize)> {
    let n = py.num_rows();
    (1..n).flat_map(|i| [i.wrapping_sub(1), i + 1].into_iter().filter(move |&j| j >= 1 && j < n).map(move |j| (i, j))).collect()
}

fn t_serre_e(py: &Pyramid) -> Vec<Template> {
    adjacent_pairs(py).into_iter().map(|(i, j)| tpl(vec![i, j], vec![e_min(py, i), e_min(py, i), e_min(py, j)])).collect()
}

fn sides_serre_e(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let (i, j, r, s, t) = (idx[0], idx[1], lv[0], lv[1], lv[2]);
    let (er, es, ej) = (w.e(i, r)?, w.e(i, s)?, w.e(j, t)?);
    let lhs = sc(w, &er, &sc(w, &es, &ej)).add(&sc(w, &es, &sc(w, &er, &ej)));
    Ok((lhs, UeaElement::zero()))
}

fn t_serre_f(py: &Pyramid) -> Vec<Template> {
    adjacent_pairs(py).into_iter().map(|(i, j)| tpl(vec![i, j], vec![f_min(py, i), f_min(py, i), f_min(py, j)])).collect()
}

fn sides_serre_f(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let (i, j, r, s, t) = (idx[0], idx[1], lv[0], lv[1], lv[2]);
    let (fr, fs, fj) = (w.f(i, r)?, w.f(i, s)?, w.f(j, t)?);
    let lhs = sc(w, &fr, &sc(w, &fs, &fj)).add(&sc(w, &fs, &sc(w, &fr, &fj)));
    Ok((lhs, UeaElement::zero()))
}

/// Middle rows `i` (with `i − 1` and `i + 1` simple roots) where `E_i` is odd.
fn odd_middle(py: &Pyramid) -> Vec<usize> {
    let n = py.num_rows();
    if n < 4 {
        return vec![];
    }
    (2..=n - 2).filter(|&i| py.row_parity(i) != py.row_parity(i + 1)).collect()
}

fn t_quartic_e(py: &Pyramid) -> Vec<Template> {
    odd_middle(py).into_iter().map(|i| tpl(vec![i], vec![e_min(py, i - 1), e_min(py, i + 1)])).collect()
}

fn sides_quartic_e(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let (i, r, s) = (idx[0], lv[0], lv[1]);
    let mid = w.e(i, e_min(w.pyramid(), i))?;
    let left = sc(w, &w.e(i - 1, r)?, &mid);
    let right = sc(w, &mid, &w.e(i + 1, s)?);
    Ok((sc(w, &left, &right), UeaElement::zero()))
}

fn t_quartic_f(py: &Pyramid) -> Vec<Template> {
    odd_middle(py).into_iter().map(|i| tpl(vec![i], vec![f_min(py, i - 1), f_min(py, i + 1)])).collect()
}

fn sides_quartic_f(w: &WGen, idx: &[usize], lv: &[u32]) -> Result<(UeaElement, UeaElement)> {
    let (i, r, s) = (idx[0], lv[0], lv[1]);
    let mid = w.f(i, f_min(w.pyramid(), i))?;
    let left = sc(w, &w.f(i - 1, r)?, &mid);
    let right = sc(w, &mid, &w.f(i + 1, s)?);
    Ok((sc(w, &left, &right), UeaElement::zero()))
}

/// All families in id order, variants directly after their base family.
pub fn registry() -> Vec<Box<dyn Relation>> {
    let fam = |id, summary, templates, sides| -> Box<dyn Relation> { Box::new(Family { id, summary, templates, sides }) };
    vec![
        fam("3.2", "D_i^(0) = D'_i^(0) = 1", t_unit as TemplateFn, sides_unit as SidesFn),
        fam("3.3", "sum_t D_i^(t) D'_i^(r-t) = delta_{r,0}", t_inverse, sides_inverse),
        fam("3.4", "[D_i^(r), D_j^(s)] = 0", t_dd, sides_dd),
        fam("3.5", "[D_i^(r), E_j^(s)]", t_de, sides_de),
        fam("3.6", "[D_i^(r), F_j^(s)]", t_df, sides_df),
        fam("3.7", "[E_i^(r), F_j^(s)]", t_ef, sides_ef),
        fam("3.8", "[E_i^(r), E_i^(s)]", t_ee, sides_ee),
        fam("3.9", "[F_i^(r), F_i^(s)], first sum from s_{i+1,i} + 1", t_ff, sides_ff),
        fam("3.9-alt", "[F_i^(r), F_i^(s)], first sum from 1", t_ff, sides_ff_alt),
        fam("3.10", "[E_i^(r+1), E_{i+1}^(s)] - [E_i^(r), E_{i+1}^(s+1)]", t_ee_next, sides_ee_next),
        fam("3.11", "[F_i^(r+1), F_{i+1}^(s)] - [F_i^(r), F_{i+1}^(s+1)] against F_i^(s) F_i^(r)", t_ff_next, sides_ff_next),
        fam("3.11-alt", "[F_i^(r+1), F_{i+1}^(s)] - [F_i^(r), F_{i+1}^(s+1)] against F_{i+1}^(s) F_i^(r)", t_ff_next, sides_ff_next_alt),
        fam("3.12", "[E_i^(r), E_j^(s)] = 0 for |i - j| > 1", t_ee_far, sides_ee_far),
        fam("3.13", "[F_i^(r), F_j^(s)] = 0 for |i - j| > 1", t_ff_far, sides_ff_far),
        fam("3.14", "E Serre relation for |i - j| = 1", t_serre_e, sides_serre_e),
        fam("3.15", "F Serre relation for |i - j| = 1", t_serre_f, sides_serre_f),
        fam("3.16", "quartic E relation at an odd E_i", t_quartic_e, sides_quartic_e),
        fam("3.17", "quartic F relation at an odd F_i", t_quartic_f, sides_quartic_f),
    ]
}

pub fn relation_ids() -> Vec<&'static str> {
    registry().iter().map(|r| r.id()).collect()
}

/// Families for the given ids, in registry order; an empty list selects all.
pub fn select(ids: &[&str]) -> Result<Vec<Box<dyn Relation>>> {
    let all = registry();
    if ids.is_empty() {
        return Ok(all);
    }
    for id in ids {
        if !all.iter().any(|r| r.id() == *id) {
            return Err(Error::Unknown { kind: "relation", name: id.to_string() });
        }
    }
    Ok(all.into_iter().filter(|r| ids.contains(&r.id())).collect())
}

/// Checks every instance of every family, in registry then instance order.
pub fn run_suite(w: &WGen, families: &[Box<dyn Relation>], bound: &LevelBound) -> Vec<RelationOutcome> {
    let mut out = Vec::new();
    for fam in families {
        let mut insts = fam.instances(w.pyramid(), bound);
        insts.sort();
        for inst in insts {
            out.push(fam.check(w, &inst));
        }
    }
    out
}
