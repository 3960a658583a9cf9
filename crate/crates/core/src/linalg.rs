//! Dense matrices over a [`FiniteField`] with Gaussian elimination.

use crate::fields::{Elem, FiniteField};

/// Row-major dense matrix of field handles. The field is passed to every
/// arithmetic operation rather than stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &FiniteField, size: usize) -> Self {
        let mut m = Matrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: Vec<Vec<Elem>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn add(&self, field: &FiniteField, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, field: &FiniteField, c: Elem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| field.mul(c, a)).collect(),
        }
    }

    pub fn mul_vec(&self, field: &FiniteField, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    pub fn mul(&self, field: &FiniteField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, field: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = field.inv(self.get(row, col));
            for c in col..self.cols {
                let v = field.mul(inv, self.get(row, c));
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = field.sub(self.get(r, c), field.mul(factor, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &FiniteField) -> usize {
        self.clone().rref(field).len()
    }

    pub fn is_invertible(&self, field: &FiniteField) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }

    /// Basis of `{v : self · v = 0}`.
    pub fn nullspace(&self, field: &FiniteField) -> Vec<Vec<Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Elem::ZERO; self.cols];
                v[f] = field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg(m.get(r, f));
                }
                v
            })
            .collect()
    }

    /// Plain-text dump with aligned columns, entries rendered by `show`.
    pub fn to_text(&self, show: impl Fn(Elem) -> String) -> String {
        let cells: Vec<String> = self.data.iter().map(|&x| show(x)).collect();
        let width = cells.iter().map(|s| s.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| format!("{:>width$}", cells[r * self.cols + c]))
                .collect();
            out.push_str("[ ");
            out.push_str(&line.join("  "));
            out.push_str(" ]\n");
        }
        out
    }
}

/// Rank of a set of vectors.
pub fn span_rank(field: &FiniteField, vectors: &[Vec<Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank(field)
}

/// Whether two families of vectors span the same subspace.
pub fn same_span(field: &FiniteField, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> bool {
    let ra = span_rank(field, a);
    let rb = span_rank(field, b);
    let joint: Vec<Vec<Elem>> = a.iter().chain(b).cloned().collect();
    ra == rb && span_rank(field, &joint) == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    #[test]
    fn rank_and_nullspace_over_f3() {
        let f = make_field(3, 1).unwrap();
        let e = |c| f.from_prime(c);
        let m = Matrix::from_rows(vec![
            vec![e(1), e(2), e(0)],
            vec![e(2), e(1), e(0)],
            vec![e(0), e(0), e(1)],
        ]);
        // Row 2 = 2 * row 1 over F_3.
        assert_eq!(m.rank(&f), 2);
        let ns = m.nullspace(&f);
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&f, &ns[0]).iter().all(|x| x.is_zero()));
        assert!(Matrix::identity(&f, 4).is_invertible(&f));
    }

    #[test]
    fn spans() {
        let f = make_field(2, 2).unwrap();
        let (o, w) = (f.one(), f.primitive());
        let a = vec![vec![o, Elem::ZERO], vec![Elem::ZERO, o]];
        let b = vec![vec![o, w], vec![w, o]];
        // det = 1 - w^2 = w in F_4
        assert!(same_span(&f, &a, &b));
        assert!(!same_span(&f, &a[..1], &a[1..]));
    }
}
