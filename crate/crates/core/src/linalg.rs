//! Exact linear algebra over the rationals.
//!
//! Vectors are [`Element`]s: coordinates are indexed by monomials, and the
//! pivot of a row is its smallest monomial. Dense [`Matrix`] handles the small
//! square blocks of pairings and bivectors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{Element, Monomial, Truncation};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

type Tag = BTreeMap<usize, Scalar>;

fn tag_axpy(acc: &mut Tag, c: &Scalar, t: &Tag) {
    for (k, v) in t {
        let e = acc.entry(*k).or_insert_with(scalar::zero);
        *e += c * v;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

/// Row echelon form keyed by pivot monomial, tracking how each row was combined.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<Monomial, (Element, Tag)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v`, returning the remainder and the combination of stored rows subtracted.
    fn reduce_tagged(&self, v: &Element) -> (Element, Tag) {
        let mut cur = v.clone();
        let mut used = Tag::new();
        let mut last: Option<Monomial> = None;
        loop {
            let next = cur
                .terms()
                .filter(|(m, _)| last.as_ref().is_none_or(|l| *m > l))
                .find(|(m, _)| self.rows.contains_key(*m))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = next else { break };
            let (row, tag) = &self.rows[&m];
            cur = &cur - &row.scale(&c);
            tag_axpy(&mut used, &c, tag);
            last = Some(m);
        }
        (cur, used)
    }

    pub fn reduce(&self, v: &Element) -> Element {
        self.reduce_tagged(v).0
    }

    pub fn contains(&self, v: &Element) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert `v` tagged as input number `index`; returns whether the rank grew.
    pub fn insert_tagged(&mut self, v: &Element, index: usize) -> bool {
        let (rem, used) = self.reduce_tagged(v);
        let mut tag = Tag::new();
        tag.insert(index, scalar::one());
        tag_axpy(&mut tag, &-scalar::one(), &used);
        self.push_reduced(rem, tag)
    }

    pub fn insert(&mut self, v: &Element) -> bool {
        let rem = self.reduce(v);
        self.push_reduced(rem, Tag::new())
    }

    fn push_reduced(&mut self, rem: Element, tag: Tag) -> bool {
        let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) else {
            return false;
        };
        let inv = scalar::one() / c;
        let mut scaled = Tag::new();
        tag_axpy(&mut scaled, &inv, &tag);
        self.rows.insert(m, (rem.scale(&inv), scaled));
        true
    }

    pub fn basis(&self) -> Vec<Element> {
        self.rows.values().map(|(r, _)| r.clone()).collect()
    }
}

fn combine(inputs: &[Element], tag: &Tag) -> Element {
    let mut out = Element::zero();
    for (k, c) in tag {
        out += &inputs[*k].scale(c);
    }
    out
}

/// Basis of `{Σ cᵢ inputsᵢ : Σ cᵢ imagesᵢ = 0}`.
pub fn kernel(inputs: &[Element], images: &[Element]) -> Vec<Element> {
    assert_eq!(inputs.len(), images.len());
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let (rem, used) = ech.reduce_tagged(img);
        let mut tag = Tag::new();
        tag.insert(i, scalar::one());
        tag_axpy(&mut tag, &-scalar::one(), &used);
        if rem.is_zero() {
            out.push(combine(inputs, &tag));
        } else {
            ech.push_reduced(rem, tag);
        }
    }
    out
}

/// Coefficients `c` with `Σ cᵢ columnsᵢ = target`, supported on pivot columns.
///
/// Columns are scanned in order and the first column contributing a new pivot
/// is kept, so the choice of solution is deterministic.
pub fn solve(columns: &[Element], target: &Element) -> Option<Vec<Scalar>> {
    let mut ech = Echelon::new();
    for (i, c) in columns.iter().enumerate() {
        ech.insert_tagged(c, i);
    }
    let (rem, used) = ech.reduce_tagged(target);
    if !rem.is_zero() {
        return None;
    }
    let mut out = vec![scalar::zero(); columns.len()];
    for (k, c) in used {
        out[k] = c;
    }
    Some(out)
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data = rows.into_iter().flat_map(|row| {
            assert_eq!(row.len(), c, "ragged matrix");
            row
        });
        Matrix { rows: r, cols: c, data: data.collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form and the list of pivot columns.
    fn rref(&self) -> (Matrix, Vec<usize>, Scalar) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut det_factor = scalar::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
                det_factor = -det_factor;
            }
            let inv = scalar::one() / m.get(r, c).clone();
            det_factor *= m.get(r, c).clone();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, det_factor)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : Mv = 0}` from the reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (red, pivots, _) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![scalar::zero(); self.cols];
                v[f] = scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -red.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let (_, pivots, f) = self.rref();
        if pivots.len() == self.rows {
            f
        } else {
            scalar::zero()
        }
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, scalar::one());
        }
        let (red, pivots, _) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Square matrix with entries in a commutative (even-degree) slice of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementMatrix {
    pub entries: Vec<Vec<Element>>,
}

impl ElementMatrix {
    pub fn new(entries: Vec<Vec<Element>>) -> Self {
        ElementMatrix { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn augmentation(&self) -> Matrix {
        Matrix::from_rows(self.entries.iter().map(|r| r.iter().map(Element::constant_term).collect()).collect())
    }

    pub fn from_scalars(m: &Matrix) -> Self {
        ElementMatrix {
            entries: (0..m.rows()).map(|i| (0..m.cols()).map(|j| Element::scalar(m.get(i, j).clone())).collect()).collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().flatten().all(Element::is_constant)
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i][j]
    }

    pub fn transpose(&self) -> ElementMatrix {
        let n = self.size();
        ElementMatrix { entries: (0..n).map(|i| (0..n).map(|j| self.entries[j][i].clone()).collect()).collect() }
    }

    pub fn mul(&self, other: &ElementMatrix, t: &Truncation) -> ElementMatrix {
        let n = self.size();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = Element::zero();
                        for k in 0..n {
                            acc += &self.entries[i][k].mul_truncated(&other.entries[k][j], t);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        ElementMatrix { entries }
    }

    fn sub(&self, other: &ElementMatrix) -> ElementMatrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect();
        ElementMatrix { entries }
    }

    fn add(&self, other: &ElementMatrix) -> ElementMatrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        ElementMatrix { entries }
    }

    fn neg(&self) -> ElementMatrix {
        ElementMatrix { entries: self.entries.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Element::is_zero)
    }

    /// Inverse over the truncated power-series ring: `M = M₀ + N` with `N`
    /// nilpotent under the order truncation, inverted by a finite Neumann series.
    pub fn inverse(&self, t: &Truncation) -> Result<ElementMatrix> {
        let m0 = self.augmentation();
        let m0_inv = m0.inverse().ok_or(Error::NotInvertible)?;
        let m0_inv_e = ElementMatrix::from_scalars(&m0_inv);
        let nil = self.sub(&ElementMatrix::from_scalars(&m0));
        if nil.is_zero() {
            return Ok(m0_inv_e);
        }
        let Some(bound) = t.max_order else {
            return Err(Error::NonFormal("non-constant matrix over an untruncated algebra".into()));
        };
        // u = −M₀⁻¹N; M⁻¹ = Σ uᵏ M₀⁻¹.
        let u = m0_inv_e.mul(&nil, t).neg();
        let mut power = ElementMatrix::from_scalars(&Matrix::identity(self.size()));
        let mut sum = ElementMatrix::from_scalars(&Matrix::zeros(self.size(), self.size()));
        for _ in 0..=bound + 1 {
            sum = sum.add(&power);
            power = power.mul(&u, t);
            if power.is_zero() {
                break;
            }
        }
        if !power.is_zero() {
            return Err(Error::NonFormal("Neumann series did not terminate".into()));
        }
        Ok(sum.mul(&m0_inv_e, t))
    }
}

pub fn is_one(q: &Scalar) -> bool {
    q.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1], &[5, 3]]);
        assert_eq!(a.determinant(), int(1));
        assert_eq!(a.mul(&a.inverse().unwrap()), Matrix::identity(2));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.determinant(), int(0));
        assert!(s.inverse().is_none());
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), int(-1));
    }

    #[test]
    fn kernel_and_solve_on_monomial_vectors() {
        let x = Generator::new("x", 0, 0);
        let ex = Element::generator(&x);
        let inputs = vec![Element::one(), ex.clone(), ex.pow(2)];
        // map: 1 ↦ x, x ↦ 2x, x² ↦ x²
        let images = vec![ex.clone(), ex.scale(&int(2)), ex.pow(2)];
        let k = kernel(&inputs, &images);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], &ex - &Element::one().scale(&int(2)));
        let sol = solve(&images, &(&ex.scale(&int(3)) + &ex.pow(2))).unwrap();
        assert_eq!(sol, vec![int(3), int(0), int(1)]);
        assert!(solve(&images, &Element::one()).is_none());
    }

    #[test]
    fn truncated_inverse() {
        let x = Generator::new("x", 0, 0);
        let t = Truncation::order(3);
        let ex = Element::generator(&x);
        let a = ElementMatrix::new(vec![vec![&Element::one() + &ex]]);
        let inv = a.inverse(&t).unwrap();
        let expected = &(&(&Element::one() - &ex) + &ex.pow(2)) - &ex.pow(3);
        assert_eq!(inv.entries[0][0], expected);
        assert!(a.inverse(&Truncation::none()).is_err());
    }
}
