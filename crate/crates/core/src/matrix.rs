//! Sparse matrices over [`LaurentScalar`] and fraction-free elimination.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::ParseError;
use crate::scalars::LaurentScalar;

/// Row-major sparse matrix; every stored entry is nonzero and each row is
/// sorted by column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, LaurentScalar)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &LaurentScalar::one())
    }

    pub fn scalar(n: usize, c: &LaurentScalar) -> Self {
        let mut m = Self::zeros(n, n);
        if !c.is_zero() {
            for i in 0..n {
                m.data[i].push((i, c.clone()));
            }
        }
        m
    }

    /// Builds from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triples<I>(rows: usize, cols: usize, triples: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, LaurentScalar)>,
    {
        let mut acc: Vec<BTreeMap<usize, LaurentScalar>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            let slot = acc[r].entry(c).or_default();
            *slot += &v;
        }
        let data = acc.into_iter().map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        Self { rows, cols, data }
    }

    pub fn from_dense(rows: Vec<Vec<LaurentScalar>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        Self::from_triples(
            n,
            m,
            rows.into_iter().enumerate().flat_map(|(i, row)| row.into_iter().enumerate().map(move |(j, v)| (i, j, v))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, LaurentScalar)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> LaurentScalar {
        self.data[r].binary_search_by_key(&c, |(j, _)| *j).map(|idx| self.data[r][idx].1.clone()).unwrap_or_default()
    }

    /// Stored entries in row-major order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &LaurentScalar)> + '_ {
        self.data.iter().enumerate().flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<LaurentScalar>> {
        let mut out = vec![vec![LaurentScalar::zero(); self.cols]; self.rows];
        for (i, j, v) in self.triples() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut data = Vec::with_capacity(self.rows);
        let mut acc: Vec<Option<LaurentScalar>> = vec![None; rhs.cols];
        let mut touched = Vec::new();
        for row in &self.data {
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    let prod = a * b;
                    match &mut acc[*j] {
                        Some(v) => *v += &prod,
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out_row = Vec::with_capacity(touched.len());
            for j in touched.drain(..) {
                let v = acc[j].take().unwrap();
                if !v.is_zero() {
                    out_row.push((j, v));
                }
            }
            data.push(out_row);
        }
        SparseMatrix { rows: self.rows, cols: rhs.cols, data }
    }

    fn combine(&self, rhs: &SparseMatrix, sign: i64) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in sum");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| {
                let mut merged: BTreeMap<usize, LaurentScalar> = a.iter().cloned().collect();
                for (j, v) in b {
                    let slot = merged.entry(*j).or_default();
                    *slot += &v.scale(sign);
                }
                merged.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.combine(rhs, 1)
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.combine(rhs, -1)
    }

    pub fn scale(&self, c: &LaurentScalar) -> SparseMatrix {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|row| row.iter().map(|(j, v)| (*j, v * c)).collect()).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Divides every entry exactly; `None` if some entry is not divisible.
    pub fn div_exact(&self, c: &LaurentScalar) -> Option<SparseMatrix> {
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut out = Vec::with_capacity(row.len());
            for (j, v) in row {
                out.push((*j, v.div_exact(c)?));
            }
            data.push(out);
        }
        Some(SparseMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Coordinate dump: one `row<TAB>col<TAB>laurent` line per stored entry,
    /// row-major.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, j, v) in self.triples() {
            out.push_str(&format!("{i}\t{j}\t{v}\n"));
        }
        out
    }

    /// Parses the format written by [`SparseMatrix::dump`].
    pub fn parse_dump(rows: usize, cols: usize, text: &str) -> Result<SparseMatrix, ParseError> {
        let mut triples = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let trimmed = line.trim_end_matches('\n');
            if !trimmed.trim().is_empty() {
                let mut fields = trimmed.splitn(3, '\t');
                let r = fields.next().and_then(|s| s.trim().parse::<usize>().ok());
                let c = fields.next().and_then(|s| s.trim().parse::<usize>().ok());
                let (Some(r), Some(c), Some(v)) = (r, c, fields.next()) else {
                    return Err(ParseError::new(offset, "expected row<TAB>col<TAB>value"));
                };
                if r >= rows || c >= cols {
                    return Err(ParseError::new(offset, "coordinate out of range"));
                }
                let v: LaurentScalar = v.parse().map_err(|e: ParseError| e.offset(offset))?;
                triples.push((r, c, v));
            }
            offset += line.len();
        }
        Ok(SparseMatrix::from_triples(rows, cols, triples))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> LaurentScalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_dense();
        let mut prev = LaurentScalar::one();
        let mut sign = 1;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return LaurentScalar::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = LaurentScalar::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return LaurentScalar::one();
        }
        a[n - 1][n - 1].scale(sign)
    }

    /// Fraction-free Gauss-Jordan inversion over the fraction field of the
    /// Laurent ring: returns `(d, B)` with `self * B = d * I` and `d` the
    /// determinant, or `None` when the matrix is singular.
    pub fn adjugate_inverse(&self) -> Option<(LaurentScalar, SparseMatrix)> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<LaurentScalar>> = self
            .to_dense()
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| if i == j { LaurentScalar::one() } else { LaurentScalar::zero() }));
                row
            })
            .collect();
        let mut prev = LaurentScalar::one();
        let mut sign = 1i64;
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r][k].is_zero())?;
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            let pivot_row = a[k].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let factor = row[k].clone();
                for j in 0..2 * n {
                    if j == k {
                        continue;
                    }
                    let num = &(&pivot_row[k] * &row[j]) - &(&factor * &pivot_row[j]);
                    row[j] = num.div_exact(&prev).expect("fraction-free Gauss-Jordan division is exact");
                }
                row[k] = LaurentScalar::zero();
            }
            prev = pivot_row[k].clone();
        }
        // Now the left block is prev * I, prev = sign * det.
        let det = prev.scale(sign);
        let inv = SparseMatrix::from_triples(
            n,
            n,
            a.into_iter()
                .enumerate()
                .flat_map(|(i, row)| row.into_iter().skip(n).enumerate().map(move |(j, v)| (i, j, v.scale(sign)))),
        );
        Some((det, inv))
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for (i, j, v) in self.triples() {
            writeln!(f, "  ({i},{j}) {v}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::qint;

    fn lp(s: &str) -> LaurentScalar {
        s.parse().unwrap()
    }

    fn m(rows: &[&[&str]]) -> SparseMatrix {
        SparseMatrix::from_dense(rows.iter().map(|r| r.iter().map(|s| lp(s)).collect()).collect())
    }

    #[test]
    fn product_and_identity() {
        let a = m(&[&["1", "q"], &["0", "q^-1"]]);
        let i = SparseMatrix::identity(2);
        assert_eq!(a.mul(&i), a);
        assert_eq!(i.mul(&a), a);
        let sq = a.mul(&a);
        assert_eq!(sq, m(&[&["1", "q + 1"], &["0", "q^-2"]]));
    }

    #[test]
    fn zero_entries_are_not_stored() {
        let a = m(&[&["q", "0"], &["0", "0"]]);
        assert_eq!(a.nnz(), 1);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn determinant_small() {
        let a = m(&[&["q", "1"], &["1", "q^-1"]]);
        assert!(a.determinant().is_zero());
        let b = m(&[&["2", "1", "0"], &["1", "2", "1"], &["0", "1", "2"]]);
        assert_eq!(b.determinant(), lp("4"));
        let c = m(&[&["0", "1"], &["1", "0"]]);
        assert_eq!(c.determinant(), lp("-1"));
    }

    #[test]
    fn adjugate_inverse_satisfies_definition() {
        let a = m(&[&["q", "1", "0"], &["0", "q + q^-1", "1"], &["1", "0", "q^2"]]);
        let (d, b) = a.adjugate_inverse().unwrap();
        assert_eq!(d, a.determinant());
        assert_eq!(a.mul(&b), SparseMatrix::scalar(3, &d));
        assert_eq!(b.mul(&a), SparseMatrix::scalar(3, &d));
        let singular = m(&[&["q", "1"], &["q^2", "q"]]);
        assert!(singular.adjugate_inverse().is_none());
        let perm = m(&[&["0", "1"], &["1", "0"]]);
        let (d, b) = perm.adjugate_inverse().unwrap();
        assert_eq!(perm.mul(&b), SparseMatrix::scalar(2, &d));
    }

    #[test]
    fn exact_matrix_division() {
        let a = SparseMatrix::scalar(2, &(&qint(2) * &qint(3)));
        assert_eq!(a.div_exact(&qint(2)), Some(SparseMatrix::scalar(2, &qint(3))));
        assert!(SparseMatrix::identity(2).div_exact(&qint(2)).is_none());
    }

    #[test]
    fn dump_round_trip() {
        let a = m(&[&["1", "q - 2q^3"], &["0", "-q^-1"]]);
        let text = a.dump();
        assert_eq!(text, "0\t0\t1\n0\t1\tq - 2q^3\n1\t1\t-q^-1\n");
        assert_eq!(SparseMatrix::parse_dump(2, 2, &text).unwrap(), a);
        assert!(SparseMatrix::parse_dump(2, 2, "0\t5\t1\n").is_err());
    }
}
