//! Fillings of a pyramid and the column-connected condition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gl::BoxIndex;
use crate::pyramid::{Pyramid, PyramidJson};
use crate::scalar::{self, Rational, Scalar};

/// A filling of every box of a pyramid; `rows[i - 1]` lists row `i` left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct Tableau<S = Rational> {
    pyramid: Pyramid,
    rows: Vec<Vec<S>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub pyramid: PyramidJson,
    pub rows: Vec<Vec<String>>,
}

impl<S: Scalar> Tableau<S> {
    pub fn new(pyramid: Pyramid, rows: Vec<Vec<S>>) -> Result<Self> {
        let p = pyramid.p();
        if rows.len() != p.len() || rows.iter().zip(&p).any(|(r, &n)| r.len() != n) {
            return Err(Error::ShapeMismatch(format!(
                "row lengths {:?} do not match pyramid rows {:?}",
                rows.iter().map(Vec::len).collect::<Vec<_>>(),
                p
            )));
        }
        Ok(Tableau { pyramid, rows })
    }

    pub fn from_fn(pyramid: Pyramid, mut f: impl FnMut(BoxIndex) -> S) -> Self {
        let rows = pyramid.rows().iter().map(|r| r.boxes.iter().map(|&b| f(b)).collect()).collect();
        Tableau { pyramid, rows }
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.pyramid
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    /// Row `i`, 1-based.
    pub fn row(&self, i: usize) -> &[S] {
        &self.rows[i - 1]
    }

    pub fn entry(&self, b: BoxIndex) -> &S {
        let i = self.pyramid.row_of(b);
        let c = self.pyramid.col_of(b);
        &self.rows[i - 1][c - self.pyramid.row(i).first_col]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tableau<T> {
        Tableau { pyramid: self.pyramid.clone(), rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    /// `a_i = a_j + 1` down a column when parities agree, `a_i + a_j = −1` otherwise.
    pub fn is_column_connected(&self) -> bool {
        self.pyramid.vertical_adjacencies().into_iter().all(|(u, l)| {
            let (a, b) = (self.entry(u).clone(), self.entry(l).clone());
            if u.parity() == l.parity() {
                a.approx_eq(&(b + S::one()))
            } else {
                (a + b).approx_eq(&-S::one())
            }
        })
    }

    /// Each row sorted by the scalar total order.
    pub fn canonical_row_form(&self) -> Self {
        let mut rows = self.rows.clone();
        for r in &mut rows {
            r.sort_by(|a, b| a.total_cmp(b));
        }
        Tableau { pyramid: self.pyramid.clone(), rows }
    }

    pub fn row_equivalent(&self, other: &Self) -> Result<bool> {
        if self.pyramid != other.pyramid {
            return Err(Error::ShapeMismatch("tableaux live on different pyramids".into()));
        }
        let (a, b) = (self.canonical_row_form(), other.canonical_row_form());
        Ok(a.rows.iter().zip(&b.rows).all(|(x, y)| x.iter().zip(y).all(|(s, t)| s.approx_eq(t))))
    }

    /// `b_{i,k} = (−1)^{|i|} a_{i,k} + r̂ow(i)`. Column-connected tableaux are
    /// exactly those whose shifted values are constant down each column.
    pub fn shifted_rows(&self) -> Vec<Vec<S>> {
        let stats = self.pyramid.super_stats();
        self.rows
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let shift = S::from_int(stats.row_numbers[k]);
                let odd = self.pyramid.row_parity(k + 1) == 1;
                r.iter().map(|a| if odd { -a.clone() } else { a.clone() } + shift.clone()).collect()
            })
            .collect()
    }

    /// Inverse of `shifted_rows`.
    pub fn from_shifted_rows(pyramid: Pyramid, b: Vec<Vec<S>>) -> Result<Self> {
        let stats = pyramid.super_stats();
        let rows = b
            .into_iter()
            .enumerate()
            .map(|(k, r)| {
                let shift = S::from_int(stats.row_numbers[k]);
                let odd = pyramid.row_parity(k + 1) == 1;
                r.into_iter()
                    .map(|v| {
                        let d = v - shift.clone();
                        if odd {
                            -d
                        } else {
                            d
                        }
                    })
                    .collect()
            })
            .collect();
        Tableau::new(pyramid, rows)
    }
}

impl Tableau<Rational> {
    pub fn from_json(j: &TableauJson) -> Result<Self> {
        let py = Pyramid::from_json(&j.pyramid)?;
        let rows = j
            .rows
            .iter()
            .map(|r| r.iter().map(|s| scalar::parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Tableau::new(py, rows)
    }

    pub fn to_json(&self) -> TableauJson {
        TableauJson {
            pyramid: self.pyramid.to_json(),
            rows: self.rows.iter().map(|r| r.iter().map(scalar::render_rational).collect()).collect(),
        }
    }

    pub fn from_ints(pyramid: Pyramid, rows: &[&[i64]]) -> Result<Self> {
        Tableau::new(pyramid, rows.iter().map(|r| r.iter().map(|&v| scalar::int(v)).collect()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl::Sign;
    use crate::pyramid::ShiftMatrix;

    fn example() -> Pyramid {
        let shift = ShiftMatrix::new(vec![vec![0, 1, 1], vec![0, 0, 0], vec![1, 1, 0]]).unwrap();
        Pyramid::from_signs_str(shift, 4, "101").unwrap()
    }

    #[test]
    fn column_connected_examples() {
        let a = Tableau::from_ints(example(), &[&[-2, -2], &[1, 1, 1], &[3, -2, -2, -2]]).unwrap();
        assert!(a.is_column_connected());
        let z = Tableau::from_ints(example(), &[&[0, 0], &[1, 1, 1], &[0, 0, 0, 0]]).unwrap();
        assert!(!z.is_column_connected());
        let single = Pyramid::from_intervals(&[(1, 1)], &[Sign::Minus]).unwrap();
        assert!(Tableau::from_ints(single, &[&[17]]).unwrap().is_column_connected());
    }

    #[test]
    fn shifted_values_are_constant_on_columns() {
        let a = Tableau::from_ints(example(), &[&[-2, -2], &[1, 1, 1], &[3, -2, -2, -2]]).unwrap();
        let b = a.shifted_rows();
        assert_eq!(b[0], vec![scalar::int(1), scalar::int(1)]);
        assert_eq!(b[2][0], scalar::int(-4));
        assert_eq!(Tableau::from_shifted_rows(example(), b).unwrap(), a);
    }

    #[test]
    fn row_forms() {
        let py = Pyramid::from_intervals(&[(1, 2)], &[Sign::Plus]).unwrap();
        let a = Tableau::from_ints(py.clone(), &[&[2, 1]]).unwrap();
        assert_eq!(a.canonical_row_form().row(1), &[scalar::int(1), scalar::int(2)]);
        let a = Tableau::from_ints(example(), &[&[-2, 5], &[1, 2, 3], &[3, -2, -2, -2]]).unwrap();
        let rev = Tableau::from_ints(example(), &[&[5, -2], &[1, 2, 3], &[3, -2, -2, -2]]).unwrap();
        let moved = Tableau::from_ints(example(), &[&[-2, 3], &[1, 2, 5], &[3, -2, -2, -2]]).unwrap();
        assert!(a.row_equivalent(&rev).unwrap());
        assert!(!a.row_equivalent(&moved).unwrap());
        assert!(a.row_equivalent(&Tableau::from_ints(py, &[&[1, 2]]).unwrap()).is_err());
    }

    #[test]
    fn shape_checked() {
        assert!(Tableau::from_ints(example(), &[&[1], &[1, 1, 1], &[0, 0, 0, 0]]).is_err());
    }
}
