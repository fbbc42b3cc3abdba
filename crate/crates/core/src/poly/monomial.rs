use std::cmp::Ordering;

/// Exponent vector of a monomial `x1^e1 * ... * xn^en`.
///
/// Ordered by graded reverse lexicographic order: higher total degree is
/// greater; on ties, the monomial with the smaller exponent in the last
/// differing variable is greater.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(arity: usize) -> Self {
        Self { exponents: vec![0; arity] }
    }

    /// The monomial `x_index`.
    pub fn variable(arity: usize, index: usize) -> Self {
        let mut exponents = vec![0; arity];
        exponents[index] = 1;
        Self { exponents }
    }

    pub fn arity(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exponents[index]
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial {
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
        }
    }

    /// Copy with the exponent of `index` replaced.
    pub fn with_exponent(&self, index: usize, exp: u32) -> Monomial {
        let mut exponents = self.exponents.clone();
        exponents[index] = exp;
        Monomial { exponents }
    }

    /// Copy with one extra trailing variable of the given exponent.
    pub fn extended(&self, exp: u32) -> Monomial {
        let mut exponents = self.exponents.clone();
        exponents.push(exp);
        Monomial { exponents }
    }

    /// Divides by `x_index`, if possible.
    pub fn div_variable(&self, index: usize) -> Option<Monomial> {
        (self.exponents[index] > 0).then(|| self.with_exponent(index, self.exponents[index] - 1))
    }

    /// Relabels variables: variable `i` becomes variable `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut exponents = vec![0; self.exponents.len()];
        for (i, &e) in self.exponents.iter().enumerate() {
            exponents[perm[i]] = e;
        }
        Monomial { exponents }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.exponents.iter().zip(&other.exponents).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            self.exponents.len().cmp(&other.exponents.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
