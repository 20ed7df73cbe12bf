//! Matrices of polynomials and exact determinants.

use std::collections::HashMap;

use num_traits::Zero;

use crate::rational::Rational;

use super::{PolyError, Polynomial};

/// Row-major matrix of polynomials sharing one ambient variable count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self, PolyError> {
        if entries.len() != rows * cols {
            return Err(PolyError::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if let Some(first) = entries.first() {
            if entries.iter().any(|p| p.variable_count() != first.variable_count()) {
                return Err(PolyError::MixedVariableCounts);
            }
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row * self.cols + col]
    }

    pub fn variable_count(&self) -> usize {
        self.entries
            .first()
            .map(Polynomial::variable_count)
            .unwrap_or(0)
    }

    /// Submatrix on the given rows and columns (indices strictly increasing).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.entry(r, c).clone());
            }
        }
        PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Matrix-vector product; `vector` length must equal the column count.
    #[allow(clippy::needless_range_loop)]
    pub fn apply(&self, vector: &[Polynomial]) -> Result<Vec<Polynomial>, PolyError> {
        if vector.len() != self.cols {
            return Err(PolyError::DimensionMismatch {
                expected: self.cols,
                got: vector.len(),
            });
        }
        let nvars = self.variable_count();
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = Polynomial::zero(nvars);
            for c in 0..self.cols {
                acc = acc.add(&self.entry(r, c).mul(&vector[c]));
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Exact determinant by cofactor expansion, memoized on column subsets.
    pub fn determinant(&self) -> Result<Polynomial, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let nvars = self.variable_count();
        if self.rows == 0 {
            return Ok(Polynomial::one(nvars));
        }
        let full_mask: u64 = (1u64 << self.cols) - 1;
        let mut memo: HashMap<u64, Polynomial> = HashMap::new();
        Ok(self.det_rec(0, full_mask, nvars, &mut memo))
    }

    fn det_rec(
        &self,
        row: usize,
        col_mask: u64,
        nvars: usize,
        memo: &mut HashMap<u64, Polynomial>,
    ) -> Polynomial {
        if col_mask == 0 {
            return Polynomial::one(nvars);
        }
        if let Some(hit) = memo.get(&col_mask) {
            return hit.clone();
        }
        let mut acc = Polynomial::zero(nvars);
        let mut sign_positive = true;
        for col in 0..self.cols {
            if col_mask & (1 << col) == 0 {
                continue;
            }
            let entry = self.entry(row, col);
            if !entry.is_zero() {
                let minor = self.det_rec(row + 1, col_mask & !(1 << col), nvars, memo);
                let contribution = entry.mul(&minor);
                acc = if sign_positive {
                    acc.add(&contribution)
                } else {
                    acc.sub(&contribution)
                };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(col_mask, acc.clone());
        acc
    }

    /// Evaluates every entry at a floating-point point, row-major.
    pub fn eval_f64(&self, point: &[f64]) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.entry(r, c).eval_f64(point)).collect())
            .collect()
    }

    /// Evaluates every entry at an exact rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>, PolyError> {
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for c in 0..self.cols {
                row.push(self.entry(r, c).evaluate(point)?);
            }
            out.push(row);
        }
        Ok(out)
    }
}

/// Determinant of a square matrix of rationals by Gaussian elimination.
#[allow(clippy::needless_range_loop)] // split-borrow elimination kernel
pub fn rational_determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    let mut m: Vec<Vec<Rational>> = matrix.to_vec();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => return Rational::zero(),
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, vars: &[&str]) -> Polynomial {
        Polynomial::parse(text, vars).unwrap()
    }

    #[test]
    fn determinant_examples() {
        let vars = ["x1", "x2"];
        let identity = PolyMatrix::new(
            2,
            2,
            vec![p("1", &vars), p("0", &vars), p("0", &vars), p("1", &vars)],
        )
        .unwrap();
        assert_eq!(identity.determinant().unwrap(), p("1", &vars));

        let diagonal = PolyMatrix::new(
            2,
            2,
            vec![p("1", &vars), p("0", &vars), p("0", &vars), p("2*x2", &vars)],
        )
        .unwrap();
        assert_eq!(diagonal.determinant().unwrap(), p("2*x2", &vars));

        let lower = PolyMatrix::new(
            2,
            2,
            vec![
                p("1", &vars),
                p("0", &vars),
                p("x2", &vars),
                p("3*x2^2 + x1", &vars),
            ],
        )
        .unwrap();
        assert_eq!(lower.determinant().unwrap(), p("3*x2^2 + x1", &vars));
    }

    #[test]
    fn non_square_is_rejected() {
        let vars = ["x1"];
        let m = PolyMatrix::new(1, 2, vec![p("x1", &vars), p("1", &vars)]).unwrap();
        assert!(matches!(
            m.determinant(),
            Err(PolyError::NonSquareMatrix { rows: 1, cols: 2 })
        ));
    }

    #[test]
    fn rational_determinant_matches_cofactor_route() {
        use crate::rational::rational;
        let m = vec![
            vec![rational(2), rational(1), rational(0)],
            vec![rational(0), rational(3), rational(-1)],
            vec![rational(4), rational(0), rational(1)],
        ];
        // Cofactor expansion by hand: 2*(3*1 - (-1)*0) - 1*(0*1 - (-1)*4) = 6 - 4 = 2.
        assert_eq!(rational_determinant(&m), rational(2));
    }
}
