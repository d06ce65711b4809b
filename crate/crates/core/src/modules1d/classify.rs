//! Column-connected representatives and the classification over a finite pool.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::pyramid::Pyramid;
use crate::scalar::{Rational, Scalar};
use crate::weights::{lambda_a, rho_tilde};
use crate::wgen::{GeneratorId, WGen};

use super::eigen::eigenvalues_of;
use super::Tableau;

/// A column-connected tableau row-equivalent to `a`, if one exists.
///
/// In shifted values `b` a column-connected tableau is constant down columns,
/// and each row's columns contain the columns of the row above. So a witness
/// exists iff every row's multiset of `b` values contains the one above; it
/// is built top down, copying each row under the row above.
pub fn find_cc_representative<S: Scalar>(a: &Tableau<S>) -> Option<Tableau<S>> {
    let py = a.pyramid();
    let mut shifted = a.shifted_rows();
    for row in &mut shifted {
        row.sort_by(|x, y| x.total_cmp(y));
    }
    let mut b: Vec<Vec<S>> = Vec::with_capacity(shifted.len());
    for (k, mut pool) in shifted.into_iter().enumerate() {
        let row = py.row(k + 1);
        let mut placed: Vec<Option<S>> = vec![None; row.len()];
        if let Some(above) = b.last() {
            let up = py.row(k);
            for (q, v) in above.iter().enumerate() {
                let pos = pool.iter().position(|x| x.approx_eq(v))?;
                placed[up.first_col + q - row.first_col] = Some(pool.remove(pos));
            }
        }
        let mut rest = pool.into_iter();
        b.push(placed.into_iter().map(|v| v.unwrap_or_else(|| rest.next().expect("sizes match"))).collect());
    }
    Tableau::from_shifted_rows(py.clone(), b).ok()
}

/// Checks on the weight `λ_A − ρ̃` that `D_i^{(r)}` acts by `a_i^{(r)}` for
/// `r ≤ p_i` and that `E_i^{(s)}`, `F_i^{(s)}` act by zero at their two
/// lowest admissible levels.
pub fn symbolic_module_check(w: &WGen, a: &Tableau) -> Result<bool> {
    if !a.is_column_connected() {
        return Err(Error::NotColumnConnected);
    }
    let py = w.pyramid();
    if a.pyramid() != py {
        return Err(Error::ShapeMismatch("tableau and generators live on different pyramids".into()));
    }
    let diag = lambda_a(a).sub(&rho_tilde(py)).diag(py);
    let uea = w.uea();
    let ev = eigenvalues_of(a);
    for i in 1..=py.num_rows() {
        for r in 1..=py.p_at(i) as u32 {
            if uea.evaluate_one_dim(&*w.diagonal_part(GeneratorId::d(i, r))?, &diag)? != ev.full[i - 1][r as usize - 1] {
                return Ok(false);
            }
        }
    }
    let zero = Rational::from_integer(0.into());
    for i in 1..py.num_rows() {
        for s in py.s(i, i + 1) + 1..=py.s(i, i + 1) + 2 {
            if uea.evaluate_one_dim(&*w.diagonal_part(GeneratorId::e(i, s))?, &diag)? != zero {
                return Ok(false);
            }
        }
        for s in py.s(i + 1, i) + 1..=py.s(i + 1, i) + 2 {
            if uea.evaluate_one_dim(&*w.diagonal_part(GeneratorId::f(i, s))?, &diag)? != zero {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Canonical forms of all column-connected tableaux with entries in `pool`,
/// sorted. Each column carries one shifted value, so the enumeration runs
/// over per-column choices.
pub fn classify(py: &Pyramid, pool: &[Rational]) -> Vec<Tableau> {
    let stats = py.super_stats();
    let entry_for = |row: usize, b: &Rational| -> Rational {
        let d = b - Rational::from_integer(stats.row_numbers[row - 1].into());
        if py.row_parity(row) == 1 {
            -d
        } else {
            d
        }
    };
    let choices: Vec<Vec<Rational>> = (1..=py.ell())
        .map(|c| {
            let rows: Vec<usize> = py.column(c).iter().map(|&b| py.row_of(b)).collect();
            let mut vals: Vec<Rational> = pool
                .iter()
                .map(|x| {
                    let top = rows[0];
                    let shift = Rational::from_integer(stats.row_numbers[top - 1].into());
                    if py.row_parity(top) == 1 {
                        shift - x
                    } else {
                        shift + x
                    }
                })
                .filter(|b| rows.iter().all(|&r| pool.contains(&entry_for(r, b))))
                .collect();
            vals.sort();
            vals.dedup();
            vals
        })
        .collect();
    let mut seen: BTreeSet<Vec<Vec<Rational>>> = BTreeSet::new();
    let mut pick = vec![0usize; choices.len()];
    if choices.iter().any(Vec::is_empty) {
        return vec![];
    }
    loop {
        let t = Tableau::from_fn(py.clone(), |b| {
            let v = &choices[py.col_of(b) - 1][pick[py.col_of(b) - 1]];
            entry_for(py.row_of(b), v)
        });
        seen.insert(t.canonical_row_form().rows().to_vec());
        let mut k = 0;
        loop {
            if k == pick.len() {
                return seen.into_iter().map(|rows| Tableau::new(py.clone(), rows).expect("shape")).collect();
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// Every choice of a sorted multiset per row, drawn from `pool`, as canonical tableaux.
pub fn row_multiset_classes(py: &Pyramid, pool: &[Rational]) -> Vec<Tableau> {
    let mut pool = pool.to_vec();
    pool.sort();
    pool.dedup();
    fn multisets(pool: &[Rational], len: usize, start: usize, cur: &mut Vec<Rational>, out: &mut Vec<Vec<Rational>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for k in start..pool.len() {
            cur.push(pool[k].clone());
            multisets(pool, len, k, cur, out);
            cur.pop();
        }
    }
    let per_row: Vec<Vec<Vec<Rational>>> = py
        .p()
        .into_iter()
        .map(|n| {
            let mut out = Vec::new();
            multisets(&pool, n, 0, &mut Vec::new(), &mut out);
            out
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; per_row.len()];
    if per_row.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let rows = pick.iter().zip(&per_row).map(|(&k, r)| r[k].clone()).collect();
        out.push(Tableau::new(py.clone(), rows).expect("shape"));
        let mut k = 0;
        loop {
            if k == pick.len() {
                return out;
            }
            pick[k] += 1;
            if pick[k] < per_row[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl::Sign;
    use crate::pyramid::ShiftMatrix;
    use crate::scalar::int;

    fn example() -> Pyramid {
        let shift = ShiftMatrix::new(vec![vec![0, 1, 1], vec![0, 0, 0], vec![1, 1, 0]]).unwrap();
        Pyramid::from_signs_str(shift, 4, "101").unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn representatives() {
        let a = Tableau::from_ints(example(), &[&[-2, -2], &[1, 1, 1], &[-2, -2, -2, 3]]).unwrap();
        let w = find_cc_representative(&a).unwrap();
        assert_eq!(w.row(3), &ints(&[3, -2, -2, -2])[..]);
        let cc = Tableau::from_ints(example(), &[&[-2, -2], &[1, 1, 1], &[3, -2, -2, -2]]).unwrap();
        assert_eq!(find_cc_representative(&cc).unwrap(), cc);
        let z = Tableau::from_ints(example(), &[&[0, 0], &[1, 1, 1], &[0, 0, 0, 0]]).unwrap();
        assert!(find_cc_representative(&z).is_none());
    }

    #[test]
    fn small_classifications() {
        let single = Pyramid::from_intervals(&[(1, 1)], &[Sign::Plus]).unwrap();
        assert_eq!(classify(&single, &ints(&[0, 1])).len(), 2);
        assert_eq!(classify(&single, &ints(&[0])).len(), 1);
        let two_plus = Pyramid::from_intervals(&[(1, 1), (1, 1)], &[Sign::Plus, Sign::Plus]).unwrap();
        let c = classify(&two_plus, &ints(&[0, 1]));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].rows(), &[ints(&[1]), ints(&[0])]);
        let mixed = Pyramid::from_intervals(&[(1, 1), (1, 1)], &[Sign::Plus, Sign::Minus]).unwrap();
        let c: Vec<_> = classify(&mixed, &ints(&[0, -1])).into_iter().map(|t| t.rows().to_vec()).collect();
        assert_eq!(c, vec![vec![ints(&[-1]), ints(&[0])], vec![ints(&[0]), ints(&[-1])]]);
    }

    #[test]
    fn classes_cover_the_classification() {
        let py = example();
        let pool = ints(&[-2, -1, 0, 1]);
        let mut found: Vec<_> = row_multiset_classes(&py, &pool)
            .iter()
            .filter_map(|t| find_cc_representative(t).map(|w| w.canonical_row_form().rows().to_vec()))
            .collect();
        found.sort();
        let classes: Vec<_> = classify(&py, &pool).iter().map(|t| t.rows().to_vec()).collect();
        assert_eq!(found, classes);
        assert_eq!(row_multiset_classes(&py, &pool).len(), 10 * 20 * 35);
    }

    #[test]
    fn symbolic_check_on_example() {
        let a = Tableau::from_ints(example(), &[&[-2, -2], &[1, 1, 1], &[3, -2, -2, -2]]).unwrap();
        let w = WGen::new(&example());
        assert!(symbolic_module_check(&w, &a).unwrap());
        let z = Tableau::from_ints(example(), &[&[0, 0], &[1, 1, 1], &[0, 0, 0, 0]]).unwrap();
        assert!(matches!(symbolic_module_check(&w, &z), Err(Error::NotColumnConnected)));
    }
}
