//! Affine systems assembled equation by equation, with unknowns that are
//! blocks of a single variable vector. Matrix-valued unknowns are stored row
//! major, so the coefficient of `X[s][u]` in entry `(i, j)` of `L·X·R` is
//! `L[i][s]·R[u][j]`.

use super::field::{Field, Scalar};
use super::matrix::{solve_from_augmented, AffineSolution, Matrix, RankWitness};
use super::rowspace::RowSpace;

/// A matrix-shaped block of unknowns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unknown {
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Unknown {
    pub fn var(&self, r: usize, c: usize) -> usize {
        self.offset + r * self.cols + c
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Reads this block out of a solution vector.
    pub fn extract(&self, field: Field, x: &[Scalar]) -> Matrix {
        Matrix::from_fn(field, self.rows, self.cols, |r, c| x[self.var(r, c)].clone())
    }
}

/// `coef · left · X · right`, with `None` standing for an identity.
pub struct Term<'a> {
    pub unknown: Unknown,
    pub left: Option<&'a Matrix>,
    pub right: Option<&'a Matrix>,
    pub coef: Scalar,
}

impl<'a> Term<'a> {
    pub fn new(unknown: Unknown, left: Option<&'a Matrix>, right: Option<&'a Matrix>) -> Self {
        let field = left.or(right).map(Matrix::field).unwrap_or(Field::Rationals);
        Term {
            unknown,
            left,
            right,
            coef: field.one(),
        }
    }

    pub fn negated(mut self) -> Self {
        self.coef = -self.coef;
        self
    }

    fn out_rows(&self) -> usize {
        self.left.map_or(self.unknown.rows, Matrix::rows)
    }

    fn out_cols(&self) -> usize {
        self.right.map_or(self.unknown.cols, Matrix::cols)
    }
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: Field,
    vars: usize,
    aug: RowSpace,
    equations: usize,
}

impl LinearSystem {
    pub fn new(field: Field, vars: usize) -> Self {
        LinearSystem {
            field,
            vars,
            aug: RowSpace::new(field, vars + 1),
            equations: 0,
        }
    }

    /// Allocates unknown blocks back to back.
    pub fn layout(shapes: &[(usize, usize)]) -> (Vec<Unknown>, usize) {
        let mut offset = 0;
        let blocks = shapes
            .iter()
            .map(|&(rows, cols)| {
                let u = Unknown { offset, rows, cols };
                offset += rows * cols;
                u
            })
            .collect();
        (blocks, offset)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn equations(&self) -> usize {
        self.equations
    }

    pub fn add_equation<I: IntoIterator<Item = (usize, Scalar)>>(&mut self, coeffs: I, rhs: Scalar) {
        let mut row = vec![self.field.zero(); self.vars + 1];
        for (v, c) in coeffs {
            row[v] += &c;
        }
        row[self.vars] = rhs;
        self.equations += 1;
        self.aug.insert(&row);
    }

    /// Adds `Σ terms = rhs` entrywise; `rhs = None` means zero.
    pub fn add_matrix_equation(&mut self, terms: &[Term<'_>], rhs: Option<&Matrix>) {
        let Some(first) = terms.first() else { return };
        let (rows, cols) = (first.out_rows(), first.out_cols());
        for t in terms {
            assert_eq!((t.out_rows(), t.out_cols()), (rows, cols), "term shape mismatch");
        }
        if let Some(r) = rhs {
            assert_eq!((r.rows(), r.cols()), (rows, cols), "right-hand side shape mismatch");
        }
        for i in 0..rows {
            for j in 0..cols {
                let mut coeffs = Vec::new();
                for t in terms {
                    let u = t.unknown;
                    let lefts: Vec<(usize, Scalar)> = match t.left {
                        Some(l) => (0..u.rows)
                            .filter(|&s| !l.get(i, s).is_zero())
                            .map(|s| (s, l.get(i, s).clone()))
                            .collect(),
                        None => vec![(i, self.field.one())],
                    };
                    let rights: Vec<(usize, Scalar)> = match t.right {
                        Some(r) => (0..u.cols)
                            .filter(|&s| !r.get(s, j).is_zero())
                            .map(|s| (s, r.get(s, j).clone()))
                            .collect(),
                        None => vec![(j, self.field.one())],
                    };
                    for (s, a) in &lefts {
                        let ca = a * &t.coef;
                        for (w, b) in &rights {
                            coeffs.push((u.var(*s, *w), &ca * b));
                        }
                    }
                }
                let r = rhs.map_or_else(|| self.field.zero(), |m| m.get(i, j).clone());
                self.add_equation(coeffs, r);
            }
        }
    }

    pub fn solve(&self) -> Result<AffineSolution, RankWitness> {
        solve_from_augmented(&self.aug, self.vars)
    }

    pub fn is_consistent(&self) -> bool {
        self.solve().is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commuting_matrices() {
        // Matrices commuting with a Jordan block are polynomials in it.
        let q = Field::Rationals;
        let j = Matrix::from_i64(q, &[&[0, 1], &[0, 0]]);
        let (blocks, vars) = LinearSystem::layout(&[(2, 2)]);
        let x = blocks[0];
        let mut sys = LinearSystem::new(q, vars);
        sys.add_matrix_equation(&[Term::new(x, None, Some(&j)), Term::new(x, Some(&j), None).negated()], None);
        let sol = sys.solve().unwrap();
        assert_eq!(sol.kernel.len(), 2);
        for v in &sol.kernel {
            let m = x.extract(q, v);
            assert_eq!(&m * &j, &j * &m);
        }
    }

    #[test]
    fn inconsistent_witness() {
        let q = Field::Rationals;
        let mut sys = LinearSystem::new(q, 1);
        sys.add_equation([(0, q.one())], q.one());
        sys.add_equation([(0, q.one())], q.zero());
        assert_eq!(
            sys.solve(),
            Err(RankWitness {
                rank: 1,
                augmented_rank: 2
            })
        );
    }
}
