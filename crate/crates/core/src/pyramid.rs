//! Pyramids: nested rows of boxes with a parity label per row.
//!
//! A pyramid is fixed by its shift matrix, the bottom-row length `ℓ` and a
//! `0^m1^n` sign word. Rows are numbered top to bottom from 1 and columns
//! left to right from 1. Boxes are 2 units wide and the pyramid is centred
//! on the origin, so a box in column `c` sits at `col_x = 2c − ℓ − 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gl::{self, BoxIndex, GlShape, LieSuperElement, Sign};
use crate::linalg;
use crate::scalar::{int, Rational};

/// Row indentations `s_{i,j}`; `s_{i,j}` (`i < j`) is the right indentation
/// of row `i` relative to row `j` and `s_{j,i}` its left indentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShiftMatrix(Vec<Vec<u32>>);

impl ShiftMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidShift("empty matrix".into()));
        }
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidShift("matrix is not square".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row[i] != 0 {
                return Err(Error::InvalidShift(format!("diagonal entry s[{0}][{0}] is not zero", i + 1)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ordered = (i <= j && j <= k) || (i >= j && j >= k);
                    if ordered && entries[i][k] != entries[i][j] + entries[j][k] {
                        return Err(Error::InvalidShift(format!(
                            "s[{}][{}] != s[{}][{}] + s[{}][{}]",
                            i + 1,
                            k + 1,
                            i + 1,
                            j + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(ShiftMatrix(entries))
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// `s_{i,j}` with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.0[i - 1][j - 1]
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub sign: Sign,
    pub first_col: usize,
    pub last_col: usize,
    /// Boxes from left to right.
    pub boxes: Vec<BoxIndex>,
}

impl Row {
    pub fn len(&self) -> usize {
        self.last_col + 1 - self.first_col
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pyramid {
    shift: ShiftMatrix,
    ell: usize,
    signs: Vec<Sign>,
    rows: Vec<Row>,
    shape: GlShape,
    position: BTreeMap<BoxIndex, (usize, usize)>,
}

/// Which graded piece of `gl(M|N)` to list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// Negative degrees.
    M,
    /// Degree zero.
    H,
    /// Nonnegative degrees.
    P,
    /// Positive degrees.
    PPrime,
}

/// Per-column and per-row signed counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperStats {
    /// `q̌_c`, indexed by column − 1.
    pub column_heights: Vec<i64>,
    /// `row̌(i)` for every box.
    pub box_rows: BTreeMap<BoxIndex, i64>,
    /// `r̂ow(i)`, indexed by row − 1.
    pub row_numbers: Vec<i64>,
}

/// Outcome of the six good-pair axioms for `(e_π, h_π)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPairReport {
    pub eigen_equation: bool,
    pub integral_grading: bool,
    pub center_in_degree_zero: bool,
    pub injective_below: bool,
    pub surjective_above: bool,
    pub even_grading: bool,
}

impl GoodPairReport {
    pub fn holds(&self) -> bool {
        self.eigen_equation
            && self.integral_grading
            && self.center_in_degree_zero
            && self.injective_below
            && self.surjective_above
            && self.even_grading
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidJson {
    pub shift: Vec<Vec<u32>>,
    pub ell: u32,
    pub signs: String,
}

fn parse_signs(word: &str) -> Result<Vec<Sign>> {
    word.chars()
        .map(|c| match c {
            '0' => Ok(Sign::Plus),
            '1' => Ok(Sign::Minus),
            other => Err(Error::InvalidSigns(format!("unexpected character `{other}`"))),
        })
        .collect()
}

impl Pyramid {
    pub fn from_shift(shift: ShiftMatrix, ell: usize, signs: &[Sign]) -> Result<Self> {
        let n = shift.order();
        if signs.len() != n {
            return Err(Error::InvalidSigns(format!("expected {n} signs, got {}", signs.len())));
        }
        let mut intervals = Vec::with_capacity(n);
        for i in 1..=n {
            let left = shift.get(n, i) as usize;
            let right = shift.get(i, n) as usize;
            if left + right >= ell {
                return Err(Error::InvalidPyramid(format!("ℓ = {ell} leaves row {i} empty")));
            }
            intervals.push((left + 1, ell - right));
        }
        let lengths: Vec<usize> = intervals.iter().map(|(a, b)| b + 1 - a).collect();
        if lengths.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPyramid(format!("row lengths {lengths:?} are not weakly increasing")));
        }
        let py = Self::build(intervals, signs.to_vec(), ell)?;
        debug_assert_eq!(py.shift, shift);
        Ok(py)
    }

    pub fn from_signs_str(shift: ShiftMatrix, ell: usize, signs: &str) -> Result<Self> {
        Self::from_shift(shift, ell, &parse_signs(signs)?)
    }

    /// Builds a pyramid from explicit row placements `(first_col, last_col)`,
    /// listed top to bottom with 1-based columns.
    pub fn from_intervals(intervals: &[(usize, usize)], signs: &[Sign]) -> Result<Self> {
        if intervals.is_empty() || intervals.len() != signs.len() {
            return Err(Error::InvalidPyramid("need one sign per row".into()));
        }
        let (first, last) = *intervals.last().unwrap();
        if first != 1 || last < first {
            return Err(Error::InvalidPyramid("bottom row must start in column 1".into()));
        }
        for w in intervals.windows(2) {
            let ((a0, b0), (a1, b1)) = (w[0], w[1]);
            if a0 > b0 || a0 < a1 || b0 > b1 {
                return Err(Error::InvalidPyramid("rows must be nested downward".into()));
            }
        }
        Self::build(intervals.to_vec(), signs.to_vec(), last)
    }

    fn build(intervals: Vec<(usize, usize)>, signs: Vec<Sign>, ell: usize) -> Result<Self> {
        let n = intervals.len();
        let mut shift = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                shift[i][j] = (intervals[j].1 - intervals[i].1) as u32;
                shift[j][i] = (intervals[i].0 - intervals[j].0) as u32;
            }
        }
        let shift = ShiftMatrix::new(shift)?;

        // Number plus boxes and minus boxes separately, down each column,
        // columns from left to right.
        let mut grid: Vec<Vec<Option<BoxIndex>>> = vec![vec![None; ell + 1]; n];
        let mut position = BTreeMap::new();
        let (mut plus, mut minus) = (0u16, 0u16);
        for col in 1..=ell {
            for (r, &(a, b)) in intervals.iter().enumerate() {
                if a <= col && col <= b {
                    let idx = match signs[r] {
                        Sign::Plus => {
                            plus += 1;
                            BoxIndex::plus(plus)
                        }
                        Sign::Minus => {
                            minus += 1;
                            BoxIndex::minus(minus)
                        }
                    };
                    grid[r][col] = Some(idx);
                    position.insert(idx, (r + 1, col));
                }
            }
        }
        let rows = intervals
            .iter()
            .enumerate()
            .map(|(r, &(a, b))| Row {
                sign: signs[r],
                first_col: a,
                last_col: b,
                boxes: (a..=b).map(|c| grid[r][c].unwrap()).collect(),
            })
            .collect();
        Ok(Pyramid {
            shift,
            ell,
            signs,
            rows,
            shape: GlShape::new(plus as usize, minus as usize),
            position,
        })
    }

    pub fn from_json(j: &PyramidJson) -> Result<Self> {
        let shift = ShiftMatrix::new(j.shift.clone())?;
        Self::from_signs_str(shift, j.ell as usize, &j.signs)
    }

    pub fn to_json(&self) -> PyramidJson {
        PyramidJson {
            shift: self.shift.entries().to_vec(),
            ell: self.ell as u32,
            signs: self.signs_string(),
        }
    }

    pub fn signs_string(&self) -> String {
        self.signs.iter().map(|s| if *s == Sign::Plus { '0' } else { '1' }).collect()
    }

    pub fn shift(&self) -> &ShiftMatrix {
        &self.shift
    }

    /// `s_{i,j}` with 1-based row indices.
    pub fn s(&self, i: usize, j: usize) -> u32 {
        self.shift.get(i, j)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn shape(&self) -> GlShape {
        self.shape
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Row `i`, 1-based.
    pub fn row(&self, i: usize) -> &Row {
        &self.rows[i - 1]
    }

    /// `|i|`: 0 for a plus row, 1 for a minus row.
    pub fn row_parity(&self, i: usize) -> u8 {
        self.rows[i - 1].sign.parity()
    }

    /// Row lengths `p_1 ≤ … ≤ p_{m+n}`.
    pub fn p(&self) -> Vec<usize> {
        self.rows.iter().map(Row::len).collect()
    }

    /// `p_i` with `p_0 = 0`.
    pub fn p_at(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.rows[i - 1].len()
        }
    }

    /// `(m, n)`: number of plus rows and minus rows.
    pub fn row_counts(&self) -> (usize, usize) {
        let m = self.signs.iter().filter(|s| **s == Sign::Plus).count();
        (m, self.signs.len() - m)
    }

    /// `h = m − n`.
    pub fn h(&self) -> i64 {
        let (m, n) = self.row_counts();
        m as i64 - n as i64
    }

    pub fn boxes(&self) -> impl Iterator<Item = BoxIndex> + '_ {
        self.position.keys().copied()
    }

    pub fn row_of(&self, b: BoxIndex) -> usize {
        self.position[&b].0
    }

    pub fn col_of(&self, b: BoxIndex) -> usize {
        self.position[&b].1
    }

    pub fn col_x(&self, b: BoxIndex) -> i64 {
        2 * self.col_of(b) as i64 - self.ell as i64 - 1
    }

    /// Box in (row, column), if any.
    pub fn box_at(&self, row: usize, col: usize) -> Option<BoxIndex> {
        let r = self.rows.get(row.checked_sub(1)?)?;
        (r.first_col <= col && col <= r.last_col).then(|| r.boxes[col - r.first_col])
    }

    /// Boxes of column `c`, top to bottom.
    pub fn column(&self, c: usize) -> Vec<BoxIndex> {
        (1..=self.num_rows()).filter_map(|r| self.box_at(r, c)).collect()
    }

    /// Pairs `(upper, lower)` of vertically adjacent boxes.
    pub fn vertical_adjacencies(&self) -> Vec<(BoxIndex, BoxIndex)> {
        (1..=self.ell)
            .flat_map(|c| {
                let col = self.column(c);
                col.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()
            })
            .collect()
    }

    /// Grading degree of `e_{i,j}`: `col_x(j) − col_x(i)`.
    pub fn degree(&self, i: BoxIndex, j: BoxIndex) -> i64 {
        self.col_x(j) - self.col_x(i)
    }

    pub fn super_stats(&self) -> SuperStats {
        let column_heights = (1..=self.ell)
            .map(|c| {
                self.column(c).iter().map(|b| if b.parity() == 0 { 1 } else { -1 }).sum()
            })
            .collect();
        let mut row_numbers = Vec::with_capacity(self.num_rows());
        let mut acc = 0i64;
        for r in &self.rows {
            acc += if r.sign == Sign::Plus { 1 } else { -1 };
            row_numbers.push(acc);
        }
        let box_rows = self.boxes().map(|b| (b, row_numbers[self.row_of(b) - 1])).collect();
        SuperStats { column_heights, box_rows, row_numbers }
    }

    /// `q̌_c + … + q̌_ℓ`.
    pub fn column_tail(&self, c: usize) -> i64 {
        let stats = self.super_stats();
        stats.column_heights[c - 1..].iter().sum()
    }

    pub fn e_pi(&self) -> LieSuperElement {
        let mut e = LieSuperElement::zero();
        for r in &self.rows {
            for w in r.boxes.windows(2) {
                e.add_term(w[0], w[1], int(1));
            }
        }
        e
    }

    pub fn h_pi(&self) -> LieSuperElement {
        LieSuperElement::from_terms(self.shape.indices().into_iter().map(|b| ((b, b), int(-self.col_x(b)))))
    }

    pub fn graded_basis(&self, part: Part) -> Vec<(BoxIndex, BoxIndex)> {
        self.shape
            .basis()
            .into_iter()
            .filter(|&(i, j)| {
                let d = self.degree(i, j);
                match part {
                    Part::M => d < 0,
                    Part::H => d == 0,
                    Part::P => d >= 0,
                    Part::PPrime => d > 0,
                }
            })
            .collect()
    }

    pub fn in_p(&self, i: BoxIndex, j: BoxIndex) -> bool {
        self.degree(i, j) >= 0
    }

    /// `χ(x) = (e_π, x)`.
    pub fn chi(&self, x: &LieSuperElement) -> Rational {
        gl::superform(&self.e_pi(), x)
    }

    /// Rows `i` with `|i| ≠ |i+1|`.
    pub fn odd_generator_rows(&self) -> Vec<usize> {
        (1..self.num_rows()).filter(|&i| self.signs[i - 1] != self.signs[i]).collect()
    }

    pub fn good_pair_check(&self) -> GoodPairReport {
        good_pair_report(self.shape, &self.e_pi(), &self.h_pi())
    }

    pub fn centralizer_dims(&self) -> (usize, usize) {
        gl::centralizer_dims(self.shape, &self.e_pi()).expect("e_π is even")
    }

    /// `p^{d0/2} · 2^{d1/2}`; fails if either codimension is odd.
    pub fn minimal_dimension(&self, p: u32) -> Result<BigInt> {
        let (d0, d1) = self.centralizer_dims();
        if d0 % 2 == 1 || d1 % 2 == 1 {
            return Err(Error::InvalidPyramid(format!("odd centralizer codimension ({d0}, {d1})")));
        }
        Ok(num_traits::pow(BigInt::from(p), d0 / 2) * num_traits::pow(BigInt::from(2u32), d1 / 2))
    }
}

/// Checks the good-pair axioms for a diagonal `h`.
pub fn good_pair_report(shape: GlShape, e: &LieSuperElement, h: &LieSuperElement) -> GoodPairReport {
    let diag: BTreeMap<BoxIndex, Rational> =
        shape.indices().into_iter().map(|b| (b, h.coefficient(b, b))).collect();
    let diagonal = h.terms().all(|(&(i, j), _)| i == j);

    let eigen_equation = gl::bracket(h, e) == e.scale(&int(2));

    let mut degrees: BTreeMap<i64, Vec<(BoxIndex, BoxIndex)>> = BTreeMap::new();
    let mut integral_grading = diagonal;
    for (i, j) in shape.basis() {
        let d = &diag[&i] - &diag[&j];
        if !d.is_integer() {
            integral_grading = false;
            continue;
        }
        let d = i64::try_from(d.to_integer()).unwrap_or(i64::MAX);
        degrees.entry(d).or_default().push((i, j));
    }

    // The identity commutes with everything; it lies in degree zero exactly
    // when ad h kills it.
    let identity = LieSuperElement::from_terms(shape.indices().into_iter().map(|b| ((b, b), int(1))));
    let center_in_degree_zero = gl::bracket(h, &identity).is_zero();

    let even_grading = degrees.keys().all(|d| d % 2 == 0);

    let empty = Vec::new();
    let mut injective_below = true;
    let mut surjective_above = true;
    if integral_grading {
        for (&d, domain) in &degrees {
            let codomain = degrees.get(&(d + 2)).unwrap_or(&empty);
            let rank = linalg::dense_rank(&gl::ad_matrix(e, domain, codomain));
            if d <= -1 && rank != domain.len() {
                injective_below = false;
            }
            if d >= -1 && rank != codomain.len() {
                surjective_above = false;
            }
        }
        // Degrees whose piece is empty but whose target is not.
        for (&d, codomain) in &degrees {
            let src = d - 2;
            if src >= -1 && !degrees.contains_key(&src) && !codomain.is_empty() {
                surjective_above = false;
            }
        }
    }
    GoodPairReport {
        eigen_equation,
        integral_grading,
        center_in_degree_zero,
        injective_below,
        surjective_above,
        even_grading,
    }
}

/// Every pyramid with at most `max_boxes` boxes, with every sign word.
pub fn all_pyramids(max_boxes: usize) -> Vec<Pyramid> {
    let mut shapes: Vec<Vec<(usize, usize)>> = Vec::new();
    fn extend(stack: &mut Vec<(usize, usize)>, used: usize, max: usize, out: &mut Vec<Vec<(usize, usize)>>) {
        out.push(stack.iter().rev().copied().collect());
        let (a, b) = *stack.last().unwrap();
        for a2 in a..=b {
            for b2 in a2..=b {
                let len = b2 + 1 - a2;
                if used + len <= max {
                    stack.push((a2, b2));
                    extend(stack, used + len, max, out);
                    stack.pop();
                }
            }
        }
    }
    for ell in 1..=max_boxes {
        let mut stack = vec![(1, ell)];
        extend(&mut stack, ell, max_boxes, &mut shapes);
    }
    let mut out = Vec::new();
    for intervals in shapes {
        let k = intervals.len();
        for mask in 0..(1u32 << k) {
            let signs: Vec<Sign> =
                (0..k).map(|r| if mask >> r & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect();
            out.push(Pyramid::from_intervals(&intervals, &signs).expect("generated shape is valid"));
        }
    }
    out
}
