//! Bounded brute-force search for a linear factor of `x_k t^2 + H_k`.
//!
//! Any factorization of a cubic form has a linear factor, so searching
//! linear forms covers every factorization of the homogenized coordinate.
//! The search is independent of the divisibility criterion: it enumerates
//! normalized linear forms with coefficients from a bounded set of Gaussian
//! rationals and tests exact divisibility.
//!
//! Coefficients are assigned one variable at a time. A partial assignment
//! `L_d` is extended only if it divides `G_d`, the part of `G` in the
//! assigned variables (`G_d = L_d * M_d` follows from `G = L * M` by setting
//! the unassigned variables to 0). The enumeration visits `x_k` and `t`
//! first because `G_2 = x_k t^2 + c x_k^3` is never zero, which keeps the
//! tree narrow. A linear form is normalized by making its first nonzero
//! coefficient in this visiting order equal to 1.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Monomial, Polynomial};

/// A linear factor of the homogenized coordinate and its cofactor, both in
/// `n + 1` variables (the last one is the homogenizing variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor {
    pub linear: Polynomial,
    pub quotient: Polynomial,
}

/// Splits `f = x_k + H_k` into `(k, H_k)`.
pub fn coordinate_shape(f: &Polynomial) -> Result<(usize, Polynomial)> {
    let n = f.arity();
    let linear = f.homogeneous_component(1);
    let k = (0..n).find(|&k| linear == Polynomial::variable(n, k));
    let cubic = f.homogeneous_component(3);
    let stray = &(f - &linear) - &cubic;
    match k {
        Some(k) if stray.is_zero() => Ok((k, cubic)),
        _ => {
            let coordinate = k.unwrap_or(0);
            Err(Error::NotYagzhevForm { coordinate, stray: f - &cubic })
        }
    }
}

/// `x_k t^2 + H_k` in `n + 1` variables.
pub fn homogenized_coordinate(k: usize, cubic: &Polynomial) -> Result<Polynomial> {
    let n = cubic.arity();
    let t = Polynomial::variable(n + 1, n);
    Ok(&(&Polynomial::variable(n + 1, k) * &(&t * &t)) + &cubic.extend_arity(n + 1)?)
}

/// Rationals `p/q` with `|p| <= bound` and `1 <= q <= bound`, zero first,
/// then by height and value.
fn bounded_rationals(bound: u32) -> Vec<BigRational> {
    let b = bound as i64;
    let set: BTreeSet<BigRational> = (-b..=b)
        .flat_map(|p| (1..=b).map(move |q| BigRational::new(BigInt::from(p), BigInt::from(q))))
        .collect();
    let mut values: Vec<BigRational> = set.into_iter().collect();
    values.sort_by(|a, b| {
        height(a)
            .cmp(&height(b))
            .then_with(|| a.abs().cmp(&b.abs()))
            .then_with(|| a.cmp(b))
    });
    values
}

fn height(r: &BigRational) -> BigInt {
    let n = r.numer().magnitude().clone();
    let d = r.denom().magnitude().clone();
    BigInt::from(n.max(d))
}

fn candidate_values(bound: u32) -> Vec<GaussianRational> {
    let reals = bounded_rationals(bound);
    let mut values = Vec::with_capacity(reals.len() * reals.len());
    for im in &reals {
        for re in &reals {
            values.push(GaussianRational::new(re.clone(), im.clone()));
        }
    }
    // (0, 0) is first: both lists start at zero
    values
}

/// Exact quotient `g / l` for a nonzero linear form `l`, or `None` when `l`
/// does not divide `g`. Synthetic division in a variable where `l` has a
/// nonzero coefficient.
pub fn divide_by_linear(g: &Polynomial, l: &Polynomial) -> Option<Polynomial> {
    let n = l.arity();
    let (v, c) = (0..n)
        .rev()
        .map(|v| (v, l.coefficient(&Monomial::variable(n, v))))
        .find(|(_, c)| !c.is_zero())?;
    let c_inv = c.inv().ok()?;
    // l = c (x_v - r)
    let rest = &Polynomial::variable(n, v).scale(&c) - l;
    let r = rest.scale(&c_inv);
    let parts = g.variable_degree_components(v).ok()?;
    let top = match parts.keys().next_back() {
        Some(&d) => d,
        None => return Some(Polynomial::zero(n)),
    };
    let part = |j: u32| parts.get(&j).cloned().unwrap_or_else(|| Polynomial::zero(n));
    let mut quotient = Polynomial::zero(n);
    let mut b = Polynomial::zero(n);
    let xv = Polynomial::variable(n, v);
    for j in (1..=top).rev() {
        b = &part(j) + &(&r * &b);
        quotient = &quotient + &(&xv.pow(j - 1) * &b);
    }
    let remainder = &part(0) + &(&r * &b);
    remainder.is_zero().then(|| quotient.scale(&c_inv))
}

struct Search {
    order: Vec<usize>,
    /// `restrictions[d]` is `G` with only the first `d` visited variables kept.
    restrictions: Vec<Polynomial>,
    values: Vec<GaussianRational>,
    arity: usize,
}

impl Search {
    fn restricted(g: &Polynomial, keep: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(g.arity());
        for (m, c) in g.terms() {
            if m.exponents().iter().enumerate().all(|(v, &e)| e == 0 || keep.contains(&v)) {
                out = &out + &Polynomial::monomial(m.clone(), c.clone());
            }
        }
        out
    }

    /// Extends `coeffs` (one entry per visited variable) depth-first.
    fn extend(&self, coeffs: &mut Vec<GaussianRational>) -> Option<LinearFactor> {
        let depth = coeffs.len();
        let linear = self.linear_form(coeffs);
        let g_d = &self.restrictions[depth];
        let quotient = if linear.is_zero() {
            if !g_d.is_zero() {
                return None;
            }
            None
        } else {
            Some(divide_by_linear(g_d, &linear)?)
        };
        if depth == self.order.len() {
            return quotient.map(|quotient| LinearFactor { linear, quotient });
        }

        let var = self.order[depth];
        let leader = coeffs.iter().position(|c| !c.is_zero());
        let zero = GaussianRational::zero();
        let one = GaussianRational::one();
        let choices: Vec<&GaussianRational> = match leader {
            None => vec![&one, &zero],
            Some(_) => self.values.iter().collect(),
        };
        // necessary condition on the pair (leader, var): x_u + a x_var must
        // divide the part of G in those two variables
        let pair = leader.map(|u| {
            let keep = [self.order[u], var];
            (keep, Self::restricted(&self.restrictions[self.order.len()], &keep))
        });
        for value in choices {
            if let Some(([u_var, v_var], pair_poly)) = &pair {
                if !value.is_zero() && !pair_poly.is_zero() {
                    let mut point = vec![GaussianRational::zero(); self.arity];
                    point[*u_var] = -value;
                    point[*v_var] = GaussianRational::one();
                    if !pair_poly.evaluate(&point).ok()?.is_zero() {
                        continue;
                    }
                }
            }
            coeffs.push(value.clone());
            let found = self.extend(coeffs);
            coeffs.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn linear_form(&self, coeffs: &[GaussianRational]) -> Polynomial {
        let mut l = Polynomial::zero(self.arity);
        for (c, &v) in coeffs.iter().zip(&self.order) {
            if !c.is_zero() {
                l = &l + &Polynomial::variable(self.arity, v).scale(c);
            }
        }
        l
    }
}

/// Searches for a linear factor of `x_k t^2 + H_k` whose normalized
/// coefficients have real and imaginary parts `p/q` with `|p|, q <= bound`.
///
/// `f` must be a Yagzhev coordinate `x_k + H_k`. Returns the first factor in
/// enumeration order, or `None` when the bounded search space is exhausted.
pub fn oracle_factor_search(f: &Polynomial, bound: u32) -> Result<Option<LinearFactor>> {
    let (k, cubic) = coordinate_shape(f)?;
    let g = homogenized_coordinate(k, &cubic)?;
    let n = f.arity();
    let mut order = vec![k, n];
    order.extend((0..n).filter(|&v| v != k));
    let restrictions = (0..=order.len())
        .map(|d| Search::restricted(&g, &order[..d]))
        .collect();
    let search = Search {
        order,
        restrictions,
        values: candidate_values(bound.max(1)),
        arity: n + 1,
    };
    Ok(search.extend(&mut Vec::new()))
}
