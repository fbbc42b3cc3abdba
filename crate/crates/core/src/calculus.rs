//! Matrices of polynomials: Jacobians, Hessians, exact determinants, traces
//! and nilpotency.

use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Polynomial};
use crate::yagzhev::PolyMap;

/// Largest matrix size accepted by [`PolyMatrix::determinant`].
pub const DEFAULT_DETERMINANT_LIMIT: usize = 12;

/// Largest size for which [`PolyMatrix::nilpotency`] pins down the exact index.
pub const DEFAULT_REFINE_LIMIT: usize = 6;

/// Dense row-major matrix of polynomials sharing one arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    arity: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                left_rows: rows,
                left_cols: cols,
                right_rows: entries.len(),
                right_cols: 1,
            });
        }
        let arity = entries[0].arity();
        if let Some(bad) = entries.iter().find(|p| p.arity() != arity) {
            return Err(Error::ArityMismatch { expected: arity, found: bad.arity() });
        }
        Ok(Self { rows, cols, arity, entries })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<Polynomial>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j)?);
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn zero(rows: usize, cols: usize, arity: usize) -> Self {
        Self { rows, cols, arity, entries: vec![Polynomial::zero(arity); rows * cols] }
    }

    pub fn identity(size: usize, arity: usize) -> Self {
        let mut m = Self::zero(size, size, arity);
        for i in 0..size {
            m.entries[i * size + i] = Polynomial::one(arity);
        }
        m
    }

    /// `J[i][j] = d polys[i] / d x_j`.
    pub fn jacobian_of(polys: &[Polynomial]) -> Result<Self> {
        let arity = polys.first().map_or(0, Polynomial::arity);
        Self::from_fn(polys.len(), arity, |i, j| polys[i].partial_derivative(j))
    }

    pub fn hessian(p: &Polynomial) -> Result<Self> {
        let gradient = (0..p.arity())
            .map(|k| p.partial_derivative(k))
            .collect::<Result<Vec<_>>>()?;
        Self::jacobian_of(&gradient)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[Polynomial] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    fn shape_error(&self, other: &PolyMatrix) -> Error {
        Error::ShapeMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    fn require_same_arity(&self, other: &PolyMatrix) -> Result<()> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch { expected: self.arity, found: other.arity })
        }
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.shape_error(other));
        }
        self.require_same_arity(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(PolyMatrix { entries, ..*self })
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(self.shape_error(other));
        }
        self.require_same_arity(other)?;
        PolyMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Polynomial::zero(self.arity);
            for k in 0..self.cols {
                acc.add_product(self.get(i, k), other.get(k, j), false)?;
            }
            Ok(acc)
        })
    }

    pub fn transpose(&self) -> PolyMatrix {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix { rows: self.cols, cols: self.rows, arity: self.arity, entries }
    }

    pub fn scale(&self, c: &GaussianRational) -> PolyMatrix {
        PolyMatrix { entries: self.entries.iter().map(|p| p.scale(c)).collect(), ..*self }
    }

    /// Multiplies every entry by the polynomial `p`.
    pub fn scale_by(&self, p: &Polynomial) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(|e| e.try_mul(p)).collect::<Result<_>>()?;
        Ok(PolyMatrix { entries, ..*self })
    }

    pub fn trace(&self) -> Result<Polynomial> {
        self.require_square()?;
        Ok((0..self.rows).fold(Polynomial::zero(self.arity), |acc, i| &acc + self.get(i, i)))
    }

    pub fn is_symmetric(&self) -> Result<bool> {
        self.require_square()?;
        Ok((0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i))))
    }

    /// Substitutes `value` for `x_index` in every entry.
    pub fn substitute_variable(&self, index: usize, value: &Polynomial) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.substitute_variable(index, value))
            .collect::<Result<_>>()?;
        Ok(PolyMatrix { entries, ..*self })
    }

    /// The submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PolyMatrix> {
        PolyMatrix::from_fn(rows.len(), cols.len(), |i, j| Ok(self.get(rows[i], cols[j]).clone()))
    }

    /// Exact determinant, with the default size bound.
    pub fn determinant(&self) -> Result<Polynomial> {
        self.determinant_with_limit(DEFAULT_DETERMINANT_LIMIT)
    }

    /// Exact determinant by Laplace expansion along rows, memoized over
    /// column subsets: `minors[mask]` is the determinant of the leading
    /// `popcount(mask)` rows restricted to the columns in `mask`. Costs
    /// `O(2^m * m)` polynomial products.
    pub fn determinant_with_limit(&self, limit: usize) -> Result<Polynomial> {
        self.require_square()?;
        let m = self.rows;
        if m > limit {
            return Err(Error::DimensionTooLarge { size: m, limit });
        }
        let mut minors: Vec<Polynomial> = vec![Polynomial::zero(self.arity); 1 << m];
        minors[0] = Polynomial::one(self.arity);
        for mask in 1usize..(1 << m) {
            let row = mask.count_ones() as usize - 1;
            let mut acc = Polynomial::zero(self.arity);
            for col in 0..m {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let entry = self.get(row, col);
                let rest = &minors[mask & !(1 << col)];
                if entry.is_zero() || rest.is_zero() {
                    continue;
                }
                // sign (-1)^(row + position of col among the columns of mask)
                let negate = (mask >> (col + 1)).count_ones() % 2 == 1;
                acc.add_product(entry, rest, negate)?;
            }
            minors[mask] = acc;
        }
        Ok(minors.pop().expect("non-empty table"))
    }

    pub fn nilpotency(&self) -> Result<Nilpotency> {
        self.nilpotency_with_refinement(DEFAULT_REFINE_LIMIT)
    }

    /// Decides `A^m = 0` for an `m x m` matrix by repeated squaring.
    ///
    /// The first vanishing power `2^j` bounds the index from above. For
    /// `m <= refine_limit` the exact index is located by a linear scan
    /// between `2^(j-1)` and `2^j`. Every power of a nilpotent matrix is
    /// traceless, so a power with nonzero trace ends the test early.
    pub fn nilpotency_with_refinement(&self, refine_limit: usize) -> Result<Nilpotency> {
        self.require_square()?;
        let m = self.rows;
        let mut peak_terms = max_terms(self);
        if self.is_zero() {
            return Ok(Nilpotency { nilpotent: true, index: Some(1), exact: true, peak_terms });
        }
        let not_nilpotent = |peak_terms| Nilpotency { nilpotent: false, index: None, exact: true, peak_terms };
        let mut previous = self.clone();
        let mut exponent = 1usize;
        loop {
            if exponent >= m || !previous.trace()?.is_zero() {
                return Ok(not_nilpotent(peak_terms));
            }
            let squared = previous.mul(&previous)?;
            peak_terms = peak_terms.max(max_terms(&squared));
            let doubled = exponent * 2;
            if squared.is_zero() {
                let mut index = doubled;
                let exact = m <= refine_limit;
                if exact {
                    // A^exponent != 0 and A^(2*exponent) == 0
                    let mut power = previous;
                    for j in exponent + 1..doubled {
                        power = power.mul(self)?;
                        peak_terms = peak_terms.max(max_terms(&power));
                        if power.is_zero() {
                            index = j;
                            break;
                        }
                    }
                }
                return Ok(Nilpotency { nilpotent: true, index: Some(index), exact, peak_terms });
            }
            previous = squared;
            exponent = doubled;
        }
    }
}

fn max_terms(m: &PolyMatrix) -> usize {
    m.entries.iter().map(Polynomial::num_terms).max().unwrap_or(0)
}

/// Outcome of a nilpotency test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nilpotency {
    pub nilpotent: bool,
    /// Smallest verified vanishing power; exact when `exact` is set,
    /// otherwise the smallest power of two at or above the true index.
    pub index: Option<usize>,
    pub exact: bool,
    /// Largest entry term count seen among the computed powers.
    pub peak_terms: usize,
}

/// `JF[i][j] = dF_i / dx_j`.
pub fn jacobian(map: &PolyMap) -> Result<PolyMatrix> {
    PolyMatrix::jacobian_of(map.coordinates())
}

/// `Hess(P)[i][j] = d^2 P / dx_i dx_j`.
pub fn hessian(p: &Polynomial) -> Result<PolyMatrix> {
    PolyMatrix::hessian(p)
}
