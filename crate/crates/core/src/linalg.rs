//! Dense exact linear algebra over `F_p(z)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::rfield::{parse_ratfun, Derivation, ParseMode, Prime, RatFun};

/// Row-major matrix of rational functions.
#[derive(Clone, PartialEq, Eq)]
pub struct FunMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<RatFun>,
}

impl FunMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FunMatrix { p, rows, cols, data: vec![RatFun::zero(p); rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, RatFun::one(p));
        }
        m
    }

    pub fn diag(p: Prime, entries: &[RatFun]) -> Self {
        let mut m = Self::zeros(p, entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(p: Prime, rows: Vec<Vec<RatFun>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("ragged rows: {} vs {}", bad.len(), cols)));
        }
        if rows.iter().flatten().any(|e| e.prime() != p) {
            return Err(Error::ContextMismatch);
        }
        let n = rows.len();
        Ok(FunMatrix { p, rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// A `1 x n` matrix.
    pub fn row_vector(p: Prime, v: &[RatFun]) -> Self {
        FunMatrix { p, rows: 1, cols: v.len(), data: v.to_vec() }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFun {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFun) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFun] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<RatFun> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<RatFun>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFun::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mat_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + &(a * b);
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[RatFun]) -> Result<Vec<RatFun>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(Self::row_vector(self.p, v).mat_mul(self)?.data)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if rows.iter().any(|&i| i >= self.rows) || cols.iter().any(|&j| j >= self.cols) {
            return Err(Error::DimensionMismatch("submatrix index out of range".into()));
        }
        let mut out = Self::zeros(self.p, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!("hstack {} rows with {} rows", self.rows, rhs.rows)));
        }
        let rows = (0..self.rows).map(|i| self.row(i).iter().chain(rhs.row(i)).cloned().collect()).collect();
        let mut out = Self::from_rows(self.p, rows)?;
        out.cols = self.cols + rhs.cols;
        Ok(out)
    }

    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!("vstack {} cols with {} cols", self.cols, rhs.cols)));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(FunMatrix { p: self.p, rows: self.rows + rhs.rows, cols: self.cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss-Jordan elimination in place; returns the pivot columns.
    ///
    /// Columns are scanned left to right and the first nonzero entry at or
    /// below the current row is taken as pivot.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let rv = self.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&factor * rv);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate();
        (m, pivots)
    }

    pub fn rref(&self) -> Self {
        self.rref_with_pivots().0
    }

    /// Reduced column echelon form, `transpose(rref(transpose(M)))`.
    pub fn rcef(&self) -> Self {
        self.transpose().rref().transpose()
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// One solution `x` of `x * self = b`.
    pub fn solve_left(&self, b: &[RatFun]) -> Result<Vec<RatFun>> {
        if b.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} columns",
                b.len(),
                self.cols
            )));
        }
        let rhs = FunMatrix { p: self.p, rows: self.cols, cols: 1, data: b.to_vec() };
        let (reduced, pivots) = self.transpose().hstack(&rhs)?.rref_with_pivots();
        if pivots.last() == Some(&self.rows) {
            return Err(Error::InconsistentSystem);
        }
        let mut x = vec![RatFun::zero(self.p); self.rows];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = reduced.get(r, self.rows).clone();
        }
        Ok(x)
    }

    /// Basis (as rows) of `{ x : x * self = 0 }`.
    pub fn left_kernel(&self) -> Self {
        let (reduced, pivots) = self.transpose().rref_with_pivots();
        let n = self.rows;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.p, free.len(), n);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, RatFun::one(self.p));
            for (r, &c) in pivots.iter().enumerate() {
                out.set(k, c, -reduced.get(r, f));
            }
        }
        out
    }

    /// Text form: `;`-separated entries, one row per line.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(RatFun::to_text).collect::<Vec<_>>().join("; "))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn parse(text: &str, p: Prime, mode: ParseMode) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| line.split(';').map(|e| parse_ratfun(e, p, mode)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(p, rows)
    }
}

impl fmt::Debug for FunMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FunMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i).iter().map(RatFun::to_text).collect::<Vec<_>>().join("; "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for FunMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `k x n` Wronskian with entry `(i, j) = delta^i(c_j)`.
pub fn wronskian(der: &Derivation, elements: &[RatFun], k: usize) -> Result<FunMatrix> {
    if elements.is_empty() || k == 0 {
        return Err(Error::DimensionMismatch("Wronskian needs k >= 1 and at least one element".into()));
    }
    let p = der.prime();
    let mut m = FunMatrix::zeros(p, k, elements.len());
    for (j, c) in elements.iter().enumerate() {
        for (i, v) in der.orbit(c, k).into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn mat(p: u32, rows: &[&[&str]]) -> FunMatrix {
        let rows = rows.iter().map(|r| r.iter().map(|e| RatFun::parse(e, pr(p)).unwrap()).collect()).collect();
        FunMatrix::from_rows(pr(p), rows).unwrap()
    }

    #[test]
    fn identity_is_fixed_by_rref() {
        let i = FunMatrix::identity(pr(5), 4);
        assert_eq!(i.rref(), i);
        assert_eq!(i.rcef(), i);
        assert!(i.is_invertible());
    }

    #[test]
    fn rank_of_zero_matrix() {
        assert_eq!(FunMatrix::zeros(pr(7), 3, 4).rank(), 0);
    }

    #[test]
    fn wronskian_examples() {
        let der = Derivation::standard(pr(11));
        let w1 = wronskian(&der, &[RatFun::parse("1/z", pr(11)).unwrap()], 1).unwrap();
        assert_eq!(w1, mat(11, &[&["1/z"]]));
        let w2 = wronskian(&der, &[RatFun::parse("1/z", pr(11)).unwrap(), RatFun::parse("1/z^2", pr(11)).unwrap()], 2)
            .unwrap();
        assert_eq!(w2, mat(11, &[&["1/z", "1/z^2"], &["10/z^2", "9/z^3"]]));
        assert!(wronskian(&der, &[], 2).is_err());
        assert!(wronskian(&der, w1.row(0), 0).is_err());
    }

    #[test]
    fn wronskian_detects_constant_dependence() {
        let p = pr(5);
        let der = Derivation::new(RatFun::parse("z+1", p).unwrap()).unwrap();
        let f = RatFun::parse("(z^2+3)/(z+4)", p).unwrap();
        let g = &f * &RatFun::parse("z^5+2", p).unwrap();
        assert!(!wronskian(&der, &[f.clone(), g], 2).unwrap().is_invertible());
        let h = &f * &RatFun::z(p);
        assert!(wronskian(&der, &[f, h], 2).unwrap().is_invertible());
    }

    #[test]
    fn solve_left_examples() {
        let p = pr(7);
        let b = vec![RatFun::parse("z", p).unwrap(), RatFun::parse("3/(z+1)", p).unwrap()];
        assert_eq!(FunMatrix::identity(p, 2).solve_left(&b).unwrap(), b);
        let a = mat(7, &[&["1", "z"], &["2", "1/z"], &["0", "1"]]);
        let x = a.solve_left(&b).unwrap();
        assert_eq!(a.left_apply(&x).unwrap(), b);
        let singular = mat(7, &[&["1", "z"], &["2", "2*z"]]);
        assert_eq!(singular.solve_left(&b).unwrap_err(), Error::InconsistentSystem);
    }

    #[test]
    fn left_kernel_examples() {
        assert_eq!(FunMatrix::identity(pr(5), 3).left_kernel().rows(), 0);
        let m = mat(5, &[&["1", "z"], &["z", "z^2"], &["0", "1/z"]]);
        let k = m.left_kernel();
        assert_eq!(k.rows(), 1);
        assert!(k.mat_mul(&m).unwrap().is_zero());
    }

    #[test]
    fn rcef_preserves_column_space() {
        let m = mat(11, &[&["z", "1", "z+1"], &["1", "1/z", "(z+1)/z"], &["3", "z^2", "z^2+3"]]);
        let c = m.rcef();
        assert_eq!(c, m.transpose().rref().transpose());
        assert_eq!(c.rank(), 2);
        assert_eq!(m.hstack(&c).unwrap().rank(), 2);
        assert_eq!(c.rcef(), c);
        // first two rows are dependent, so the pivots sit in rows 0 and 2
        assert_eq!(c.col(0)[0], RatFun::one(pr(11)));
        assert_eq!(c.col(1)[2], RatFun::one(pr(11)));
        assert!(c.col(2).iter().all(RatFun::is_zero));
    }

    #[test]
    fn dimension_checks() {
        let a = FunMatrix::zeros(pr(5), 2, 3);
        assert!(a.mat_mul(&a).is_err());
        assert!(a.hstack(&FunMatrix::zeros(pr(5), 3, 1)).is_err());
        assert!(a.vstack(&FunMatrix::zeros(pr(5), 1, 2)).is_err());
        assert!(a.submatrix(&[0, 2], &[0]).is_err());
        assert_eq!(a.hstack(&FunMatrix::zeros(pr(5), 2, 1)).unwrap().cols(), 4);
    }

    #[test]
    fn text_round_trip() {
        let m = mat(11, &[&["1", "10/z"], &["(z+1)/(z^2+3)", "0"]]);
        assert_eq!(m.to_text(), "1; 10/z\n(z+1)/(z^2+3); 0");
        assert_eq!(FunMatrix::parse(&m.to_text(), pr(11), ParseMode::Strict).unwrap(), m);
    }
}
