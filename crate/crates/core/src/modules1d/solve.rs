//! The inverse problem: from reduced eigenvalue data back to a
//! column-connected tableau.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pyramid::Pyramid;
use crate::scalar::{Rational, Scalar};

use super::eigen::{check_reduced_shape, new_part};
use super::Tableau;

/// Roots, with multiplicity, of `t^k + c_1 t^{k−1} + … + c_k` given `c_1..=c_k`.
pub trait RootFinder<S: Scalar> {
    fn name(&self) -> &'static str;
    fn roots(&self, coeffs: &[S]) -> Result<Vec<S>>;
}

pub const ROOT_FINDERS: [&str; 2] = ["exact", "numeric"];

/// Rational roots only; fails when the polynomial does not split over ℚ.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactRoots;

/// Aberth iteration on complex floats.
#[derive(Debug, Clone, Copy)]
pub struct NumericRoots {
    /// Bound on the relative residual `|f(z)| / Σ|c_k||z|^k`.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for NumericRoots {
    fn default() -> Self {
        NumericRoots { tolerance: 1e-10, max_iterations: 1000 }
    }
}

fn horner<S: Scalar>(coeffs: &[S], z: &S) -> S {
    coeffs.iter().fold(S::one(), |acc, c| acc * z.clone() + c.clone())
}

impl RootFinder<Complex64> for NumericRoots {
    fn name(&self) -> &'static str {
        "numeric"
    }

    fn roots(&self, coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
        let k = coeffs.len();
        if k == 0 {
            return Ok(vec![]);
        }
        let radius = 1.0 + coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> =
            (0..k).map(|n| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * n as f64 / k as f64)).collect();
        let deriv: Vec<Complex64> = (0..k - 1).map(|n| coeffs[n] * (k - 1 - n) as f64 / k as f64).collect();
        for _ in 0..self.max_iterations {
            let mut moved = 0.0f64;
            for a in 0..k {
                let f = horner(coeffs, &z[a]);
                // f' = k · (t^{k−1} + Σ deriv_n t^{k−2−n})
                let df = horner(&deriv, &z[a]) * k as f64;
                if f.norm() == 0.0 {
                    continue;
                }
                let ratio = f / df;
                let repel: Complex64 = (0..k).filter(|&b| b != a).map(|b| (z[a] - z[b]).inv()).sum();
                let step = ratio / (Complex64::one() - ratio * repel);
                if step.is_finite() {
                    z[a] -= step;
                    moved = moved.max(step.norm() / (1.0 + z[a].norm()));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        polish_clusters(coeffs, &mut z);
        for r in &z {
            let scale: f64 = 1.0 + coeffs.iter().enumerate().map(|(n, c)| c.norm() * r.norm().powi((k - 1 - n) as i32)).sum::<f64>()
                + r.norm().powi(k as i32);
            if horner(coeffs, r).norm() > self.tolerance * scale {
                return Err(Error::NoConvergence(format!("root {r} leaves residual above {}", self.tolerance)));
            }
        }
        Ok(z)
    }
}

/// Repeated roots come out spread around the true value. A root of
/// multiplicity `m` is a simple root of `f^{(m−1)}`, so each cluster is
/// replaced by the Newton limit of that derivative started at the mean.
fn polish_clusters(coeffs: &[Complex64], z: &mut [Complex64]) {
    let n = z.len();
    let mut group: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in a + 1..n {
            if (z[a] - z[b]).norm() <= 1e-4 * (1.0 + z[a].norm()) {
                let (ga, gb) = (group[a], group[b]);
                group.iter_mut().filter(|g| **g == gb).for_each(|g| *g = ga);
            }
        }
    }
    let mut full: Vec<Complex64> = vec![Complex64::one()];
    full.extend_from_slice(coeffs);
    for g in 0..n {
        let members: Vec<usize> = (0..n).filter(|&k| group[k] == g).collect();
        if members.len() < 2 {
            continue;
        }
        let m = members.len();
        let mut poly = full.clone();
        for _ in 1..m {
            poly = derivative(&poly);
        }
        let dpoly = derivative(&poly);
        let mut x = members.iter().map(|&k| z[k]).sum::<Complex64>() / m as f64;
        for _ in 0..100 {
            let step = eval(&poly, x) / eval(&dpoly, x);
            if !step.is_finite() {
                break;
            }
            x -= step;
            if step.norm() <= 1e-16 * (1.0 + x.norm()) {
                break;
            }
        }
        members.iter().for_each(|&k| z[k] = x);
    }
}

fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    let deg = p.len() - 1;
    p[..deg].iter().enumerate().map(|(n, c)| c * (deg - n) as f64).collect()
}

fn eval(p: &[Complex64], x: Complex64) -> Complex64 {
    p.iter().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}

/// `f / (t − root)` for the monic integer polynomial with lower coefficients `c`, if exact.
fn deflate(c: &[BigInt], root: &BigInt) -> Option<Vec<BigInt>> {
    let mut out = Vec::with_capacity(c.len());
    let mut acc = BigInt::one();
    for (n, cn) in c.iter().enumerate() {
        acc = acc * root + cn;
        if n + 1 < c.len() {
            out.push(acc.clone());
        }
    }
    acc.is_zero().then_some(out)
}

/// Divisors of `n > 0` found by trial division; `None` past the search limit.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u128().filter(|&n| n <= 1u128 << 60)?;
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Integer roots of a monic integer polynomial: numeric estimates first,
/// then divisors of the constant term for whatever is left.
fn integer_roots(mut c: Vec<BigInt>) -> Result<Vec<BigInt>> {
    let mut roots = Vec::new();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
        roots.push(BigInt::zero());
    }
    let mut guided = true;
    while !c.is_empty() {
        let before = roots.len();
        let cands = if guided { guess_roots(&c) } else { divisor_root(&c)?.into_iter().collect() };
        for r in cands {
            while let Some(q) = deflate(&c, &r) {
                c = q;
                roots.push(r.clone());
            }
        }
        if roots.len() == before {
            if !guided {
                return Err(Error::NonSplit(format!("degree {} factor has no rational root", c.len())));
            }
            guided = false;
        }
    }
    Ok(roots)
}

/// Nearest integers to the numerically computed roots.
fn guess_roots(c: &[BigInt]) -> Vec<BigInt> {
    let approx: Vec<Complex64> = c.iter().map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0)).collect();
    if approx.iter().any(|x| !x.re.is_finite()) {
        return vec![];
    }
    let finder = NumericRoots { tolerance: f64::INFINITY, max_iterations: 500 };
    let Ok(z) = finder.roots(&approx) else { return vec![] };
    let mut cands: Vec<BigInt> = Vec::new();
    for r in z {
        let base = r.re.round();
        if !base.is_finite() || base.abs() > 1e17 {
            continue;
        }
        for off in [0.0, -1.0, 1.0] {
            let v = BigInt::from((base + off) as i128);
            if !cands.contains(&v) {
                cands.push(v);
            }
        }
    }
    cands
}

fn divisor_root(c: &[BigInt]) -> Result<Option<BigInt>> {
    let constant = c.last().unwrap().abs();
    let divs = divisors(&constant)
        .ok_or_else(|| Error::NonSplit(format!("constant term {constant} too large for the rational root search")))?;
    Ok(divs.into_iter().flat_map(|d| [d.clone(), -d]).find(|r| deflate(c, r).is_some()))
}

impl RootFinder<Rational> for ExactRoots {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn roots(&self, coeffs: &[Rational]) -> Result<Vec<Rational>> {
        // t = y / den turns the polynomial into a monic integer one in y.
        let den = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut scale = Rational::one();
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|q| {
                scale *= Rational::from_integer(den.clone());
                (q * &scale).to_integer()
            })
            .collect();
        let mut roots: Vec<Rational> =
            integer_roots(ints)?.into_iter().map(|y| Rational::new(y, den.clone())).collect();
        roots.sort();
        Ok(roots)
    }
}

/// Lower coefficients of `Π(t − b)` from `e_r(b)`.
fn monic_from_elementary<S: Scalar>(e: &[S]) -> Vec<S> {
    e.iter().enumerate().map(|(n, v)| if n % 2 == 0 { -v.clone() } else { v.clone() }).collect()
}

/// Values `b_{i,·}` with `e_r(b_{i,·}) = a_i^{(r)}`, row `i` inheriting row
/// `i − 1` in its last `p_{i−1}` positions.
pub fn solve_b<S: Scalar>(p: &[usize], reduced: &[Vec<S>], finder: &dyn RootFinder<S>) -> Result<Vec<Vec<S>>> {
    solve_rows(p, reduced, finder, |i| p[i - 1] - if i > 1 { p[i - 2] } else { 0 })
}

/// As `solve_b`, but the inherited values sit under the row above, at
/// positions `s_{i,i−1} + 1 … s_{i,i−1} + p_{i−1}`.
pub fn solve_b_shifted<S: Scalar>(py: &Pyramid, reduced: &[Vec<S>], finder: &dyn RootFinder<S>) -> Result<Vec<Vec<S>>> {
    solve_rows(&py.p(), reduced, finder, |i| {
        if i == 1 {
            0
        } else {
            py.s(i, i - 1) as usize
        }
    })
}

fn solve_rows<S: Scalar>(
    p: &[usize],
    reduced: &[Vec<S>],
    finder: &dyn RootFinder<S>,
    offset: impl Fn(usize) -> usize,
) -> Result<Vec<Vec<S>>> {
    check_reduced_shape(p, reduced)?;
    let mut b: Vec<Vec<S>> = Vec::with_capacity(p.len());
    for (k, red) in reduced.iter().enumerate() {
        let above: &[S] = b.last().map(Vec::as_slice).unwrap_or(&[]);
        let prev_e = super::eigen::elementary_all(above);
        let c = new_part(&prev_e[1..], red);
        let mut fresh = finder.roots(&monic_from_elementary(&c))?.into_iter();
        let off = offset(k + 1);
        let row: Vec<S> = (0..p[k])
            .map(|pos| match pos.checked_sub(off).filter(|&q| q < above.len()) {
                Some(q) => above[q].clone(),
                None => fresh.next().expect("root count matches the new part"),
            })
            .collect();
        b.push(row);
    }
    Ok(b)
}

/// `a_{i,j} = (−1)^{|i|}(b_{i,j} − r̂ow(i))` on the shifted solution.
pub fn tableau_from_eigenvalues<S: Scalar>(
    py: &Pyramid,
    reduced: &[Vec<S>],
    finder: &dyn RootFinder<S>,
) -> Result<Tableau<S>> {
    let b = solve_b_shifted(py, reduced, finder)?;
    Tableau::from_shifted_rows(py.clone(), b)
}

/// Either kind of solution, picked by root finder name.
#[derive(Debug, Clone, PartialEq)]
pub enum Solved {
    Exact(Tableau<Rational>),
    Numeric(Tableau<Complex64>),
}

pub fn solve_with(name: &str, py: &Pyramid, reduced: &[Vec<Rational>]) -> Result<Solved> {
    match name {
        "exact" => Ok(Solved::Exact(tableau_from_eigenvalues(py, reduced, &ExactRoots)?)),
        "numeric" => {
            let z: Vec<Vec<Complex64>> =
                reduced.iter().map(|r| r.iter().map(Complex64::from_rational).collect()).collect();
            Ok(Solved::Numeric(tableau_from_eigenvalues(py, &z, &NumericRoots::default())?))
        }
        other => Err(Error::Unknown { kind: "root finder", name: other.into() }),
    }
}
