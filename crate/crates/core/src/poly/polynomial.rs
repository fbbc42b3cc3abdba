use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{GaussianRational, Monomial};
use crate::error::{Error, Result};

/// Total degree of a polynomial.
///
/// The zero polynomial has its own marker and counts as homogeneous of
/// every degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Zero,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Zero => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Sparse multivariate polynomial over `Q(i)` with a fixed number of variables.
///
/// Terms live in a map keyed by grevlex-ordered monomials, and zero
/// coefficients are never stored, so two polynomials are equal exactly when
/// their term maps are. Variables are addressed by 0-based index.
///
/// The arithmetic operators panic on arity mismatch; the `try_*` methods
/// report it as [`Error::ArityMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, GaussianRational::one())
    }

    pub fn constant(arity: usize, c: GaussianRational) -> Self {
        Self::monomial(Monomial::one(arity), c)
    }

    /// `c * m`.
    pub fn monomial(m: Monomial, c: GaussianRational) -> Self {
        let arity = m.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { arity, terms }
    }

    /// The polynomial `x_index`.
    ///
    /// Panics if `index >= arity`.
    pub fn variable(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable index {index} out of range for arity {arity}");
        Self::monomial(Monomial::variable(arity, index), GaussianRational::one())
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut p = Self::zero(arity);
        for (m, c) in terms {
            if m.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: m.arity() });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Coefficient of the monomial with the given exponent vector.
    pub fn coefficient_of(&self, exponents: &[u32]) -> GaussianRational {
        self.coefficient(&Monomial::new(exponents.to_vec()))
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coefficient(&Monomial::one(self.arity))
    }

    /// The value of a constant polynomial, or `None` if it has a positive-degree term.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        self.terms
            .keys()
            .all(Monomial::is_constant)
            .then(|| self.constant_term())
    }

    fn check_arity(&self, other: &Polynomial) -> Result<()> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch { expected: self.arity, found: other.arity })
        }
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.arity {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, arity: self.arity })
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.arity);
        out.add_product(self, other, false)?;
        Ok(out)
    }

    /// `self += a * b`, or `self -= a * b` when `negate` is set, without
    /// materializing the product.
    pub fn add_product(&mut self, a: &Polynomial, b: &Polynomial, negate: bool) -> Result<()> {
        self.check_arity(a)?;
        self.check_arity(b)?;
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = ca * cb;
                self.add_term(ma.mul(mb), &if negate { -c } else { c });
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.arity);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::Zero, |m| Degree::Finite(m.degree()))
    }

    /// Whether every term has total degree `d`; always true for zero.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// The sum of the terms of total degree `d`.
    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        self.filter_terms(|m| m.degree() == d)
    }

    pub(crate) fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to `x_index`.
    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial> {
        self.check_index(index)?;
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e > 0 {
                out.add_term(m.with_exponent(index, e - 1), &(c * &GaussianRational::from(e as i64)));
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: point.len() });
        }
        let mut total = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    term = &term * &x.pow(e);
                }
            }
            total += &term;
        }
        Ok(total)
    }

    /// Replaces `x_index` by `value` and expands.
    pub fn substitute_variable(&self, index: usize, value: &Polynomial) -> Result<Polynomial> {
        self.check_index(index)?;
        self.check_arity(value)?;
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(self.arity)];
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.exponent(index) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = Polynomial::monomial(m.with_exponent(index, 0), c.clone());
            for (mm, cc) in (&rest * &powers[e]).terms {
                out.add_term(mm, &cc);
            }
        }
        Ok(out)
    }

    /// Substitutes a constant for `x_index`.
    pub fn substitute_constant(&self, index: usize, value: &GaussianRational) -> Result<Polynomial> {
        self.substitute_variable(index, &Polynomial::constant(self.arity, value.clone()))
    }

    /// Pads every term with a new trailing variable so the result is
    /// homogeneous of degree `deg self`; the result has arity `n + 1`.
    pub fn homogenize(&self) -> Result<Polynomial> {
        let d = self.degree().finite().ok_or(Error::ZeroPolynomialInput)?;
        Ok(Polynomial {
            arity: self.arity + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extended(d - m.degree()), c.clone()))
                .collect(),
        })
    }

    /// Drops the last variable after setting it to 1; inverse of [`homogenize`](Self::homogenize).
    pub fn dehomogenize(&self) -> Result<Polynomial> {
        if self.arity < 2 {
            return Err(Error::ArityTooSmall { arity: self.arity, minimum: 2 });
        }
        let last = self.arity - 1;
        let mut out = Polynomial::zero(last);
        for (m, c) in &self.terms {
            out.add_term(Monomial::new(m.exponents()[..last].to_vec()), c);
        }
        Ok(out)
    }

    /// Embeds into a ring with more variables, appended at the end.
    pub fn extend_arity(&self, arity: usize) -> Result<Polynomial> {
        if arity < self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: arity });
        }
        Ok(Polynomial {
            arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.resize(arity, 0);
                    (Monomial::new(e), c.clone())
                })
                .collect(),
        })
    }

    /// True iff every term has positive `x_index` exponent (vacuously for zero).
    pub fn divides_by_variable(&self, index: usize) -> Result<bool> {
        self.check_index(index)?;
        Ok(self.terms.keys().all(|m| m.exponent(index) > 0))
    }

    pub fn divide_by_variable(&self, index: usize) -> Result<Polynomial> {
        if !self.divides_by_variable(index)? {
            return Err(Error::NotDivisible { variable: index });
        }
        Ok(Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.div_variable(index).expect("checked above"), c.clone()))
                .collect(),
        })
    }

    pub fn is_free_of(&self, index: usize) -> bool {
        self.terms.keys().all(|m| m.exponent(index) == 0)
    }

    /// Splits `self = sum_j x_index^j * p_j` with every `p_j` free of `x_index`.
    /// Only nonzero components are returned.
    pub fn variable_degree_components(&self, index: usize) -> Result<BTreeMap<u32, Polynomial>> {
        self.check_index(index)?;
        let mut parts: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.exponent(index))
                .or_insert_with(|| Polynomial::zero(self.arity))
                .add_term(m.with_exponent(index, 0), c);
        }
        Ok(parts)
    }

    /// Relabels variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute_variables(&self, perm: &[usize]) -> Result<Polynomial> {
        if perm.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: perm.len() });
        }
        Ok(Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone())).collect(),
        })
    }

    /// Exchanges `x_a` and `x_b`.
    pub fn swap_variables(&self, a: usize, b: usize) -> Result<Polynomial> {
        self.check_index(a)?;
        self.check_index(b)?;
        let mut perm: Vec<usize> = (0..self.arity).collect();
        perm.swap(a, b);
        self.permute_variables(&perm)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial arity mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.check_arity(rhs).expect("polynomial arity mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        self.check_arity(rhs).expect("polynomial arity mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-GaussianRational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, k: usize) -> Polynomial {
        Polynomial::variable(n, k)
    }

    fn c(n: usize, v: i64) -> Polynomial {
        Polynomial::constant(n, v.into())
    }

    fn ci(n: usize, re: i64, im: i64) -> Polynomial {
        Polynomial::constant(n, GaussianRational::from_integers(re, im))
    }

    /// (x1 + i x2) in two variables.
    fn isotropic() -> Polynomial {
        &x(2, 0) + &(&ci(2, 0, 1) * &x(2, 1))
    }

    #[test]
    fn difference_of_squares() {
        let p = &x(2, 0) + &x(2, 1);
        let q = &x(2, 0) - &x(2, 1);
        assert_eq!(&p * &q, &x(2, 0).pow(2) - &x(2, 1).pow(2));
    }

    #[test]
    fn zero_absorbs() {
        let p = &x(3, 0).pow(3) + &c(3, 7);
        assert!((&p * &Polynomial::zero(3)).is_zero());
    }

    #[test]
    fn planted_reducible_expansion() {
        let q = &(&c(3, 1) + &x(3, 1).pow(2)) - &x(3, 2).pow(2);
        let lhs = &x(3, 0) * &q;
        let expected = Polynomial::from_terms(
            3,
            [
                (Monomial::new(vec![1, 0, 0]), 1.into()),
                (Monomial::new(vec![1, 2, 0]), 1.into()),
                (Monomial::new(vec![1, 0, 2]), (-1).into()),
            ],
        )
        .unwrap();
        assert_eq!(lhs, expected);
    }

    #[test]
    fn arity_mismatch_is_reported() {
        assert_eq!(
            x(2, 0).try_add(&x(3, 0)),
            Err(Error::ArityMismatch { expected: 2, found: 3 })
        );
        assert!(x(2, 0).try_mul(&x(1, 0)).is_err());
    }

    #[test]
    fn simple_partials() {
        let p = &x(2, 0) * &x(2, 1).pow(3);
        assert_eq!(p.partial_derivative(0).unwrap(), x(2, 1).pow(3));
        assert_eq!(
            p.partial_derivative(1).unwrap(),
            &c(2, 3) * &(&x(2, 0) * &x(2, 1).pow(2))
        );
        assert_eq!(p.partial_derivative(2), Err(Error::IndexOutOfRange { index: 2, arity: 2 }));
    }

    #[test]
    fn chain_rule_on_isotropic_quartic() {
        // d/dx2 (x1 + i x2)^4 = 4i (x1 + i x2)^3
        let u = isotropic();
        let lhs = u.pow(4).partial_derivative(1).unwrap();
        assert_eq!(lhs, &ci(2, 0, 4) * &u.pow(3));
    }

    #[test]
    fn evaluation() {
        let p = &x(2, 0).pow(2) + &x(2, 1);
        assert_eq!(p.evaluate(&[2.into(), 3.into()]).unwrap(), 7.into());
        let q = &p + &c(2, -5);
        assert_eq!(q.evaluate(&[0.into(), 0.into()]).unwrap(), q.constant_term());
        let at_isotropic = isotropic()
            .pow(4)
            .evaluate(&[1.into(), GaussianRational::i()])
            .unwrap();
        assert!(at_isotropic.is_zero());
        assert!(p.evaluate(&[1.into()]).is_err());
    }

    #[test]
    fn substitution() {
        let p = &x(3, 0) + &(&x(3, 1) * &x(3, 2).pow(2));
        assert_eq!(p.substitute_variable(2, &Polynomial::zero(3)).unwrap(), x(3, 0));
        assert_eq!(p.substitute_variable(1, &x(3, 1)).unwrap(), p);
        let q = &(&x(3, 0) * &x(3, 2).pow(2)) + &x(3, 1).pow(3);
        assert_eq!(
            q.substitute_variable(2, &Polynomial::one(3)).unwrap(),
            &x(3, 0) + &x(3, 1).pow(3)
        );
        assert!(p.substitute_variable(3, &Polynomial::one(3)).is_err());
        assert!(p.substitute_variable(0, &Polynomial::one(2)).is_err());
    }

    #[test]
    fn degrees() {
        let p = &x(3, 0).pow(2) + &(&x(3, 1) * &x(3, 2));
        assert_eq!(p.degree(), Degree::Finite(2));
        assert!(p.is_homogeneous(2));
        let q = &x(1, 0) + &x(1, 0).pow(3);
        assert_eq!(q.degree(), Degree::Finite(3));
        assert!(!q.is_homogeneous(3));
        let z = Polynomial::zero(4);
        assert_eq!(z.degree(), Degree::Zero);
        assert!((0..10).all(|d| z.is_homogeneous(d)));
    }

    #[test]
    fn homogenization() {
        let p = &x(2, 0) + &x(2, 1).pow(3);
        let expected = &(&x(3, 0) * &x(3, 2).pow(2)) + &x(3, 1).pow(3);
        assert_eq!(p.homogenize().unwrap(), expected);

        let h = &x(2, 0).pow(2) + &x(2, 1).pow(2);
        assert_eq!(h.homogenize().unwrap(), h.extend_arity(3).unwrap());

        let r = &x(1, 0) + &x(1, 0).pow(3);
        let hom = r.homogenize().unwrap();
        assert_eq!(hom, &x(2, 0) * &(&x(2, 1).pow(2) + &x(2, 0).pow(2)));

        assert_eq!(Polynomial::zero(2).homogenize(), Err(Error::ZeroPolynomialInput));
    }

    #[test]
    fn variable_division() {
        let p = &(&x(3, 0).pow(2) * &x(3, 1)) + &(&x(3, 0) * &x(3, 2).pow(2));
        assert!(p.divides_by_variable(0).unwrap());
        assert_eq!(
            p.divide_by_variable(0).unwrap(),
            &(&x(3, 0) * &x(3, 1)) + &x(3, 2).pow(2)
        );
        assert!(!x(3, 1).pow(3).divides_by_variable(0).unwrap());
        assert_eq!(
            x(3, 1).pow(3).divide_by_variable(0),
            Err(Error::NotDivisible { variable: 0 })
        );
        // 4(x1 + i x2)^3 contains -4i x2^3
        let cubic = &c(2, 4) * &isotropic().pow(3);
        assert!(!cubic.divides_by_variable(0).unwrap());
        assert_eq!(cubic.coefficient_of(&[0, 3]), GaussianRational::from_integers(0, -4));
        assert!(Polynomial::zero(2).divides_by_variable(1).unwrap());
    }

    #[test]
    fn components() {
        let p = &(&x(3, 2).pow(2) * &(&x(3, 0) * &x(3, 1))) + &x(3, 0).pow(4);
        let parts = p.variable_degree_components(2).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&2], &x(3, 0) * &x(3, 1));
        assert_eq!(parts[&0], x(3, 0).pow(4));

        let q = &x(2, 0) * &x(2, 1).pow(3);
        let parts = q.variable_degree_components(1).unwrap();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![3]);
        assert_eq!(parts[&3], x(2, 0));

        let r = x(2, 0).pow(4);
        let parts = r.variable_degree_components(1).unwrap();
        assert_eq!(parts[&0], r);
    }

    #[test]
    fn as_constant_detects_positive_degree() {
        assert_eq!(c(2, 5).as_constant(), Some(5.into()));
        assert_eq!(Polynomial::zero(2).as_constant(), Some(GaussianRational::zero()));
        assert_eq!((&c(2, 1) + &x(2, 0)).as_constant(), None);
    }
}
