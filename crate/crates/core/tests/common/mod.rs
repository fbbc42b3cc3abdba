#![allow(dead_code)]

use proptest::prelude::*;
use yagzhev_core::{GaussianRational, Monomial, Polynomial};

pub fn coefficient() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(a, b, c, d)| {
        &GaussianRational::from_ratio(a, b) + &(&GaussianRational::from_ratio(c, d) * &GaussianRational::i())
    })
}

pub fn integer_coefficient(bound: i64) -> impl Strategy<Value = GaussianRational> {
    (-bound..=bound, -bound..=bound).prop_map(|(re, im)| GaussianRational::from_integers(re, im))
}

/// Up to `terms` monomials of total degree at most `max_degree`.
pub fn polynomial(arity: usize, max_degree: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    let monomial = prop::collection::vec(0..=max_degree, arity)
        .prop_filter("degree bound", move |e| e.iter().sum::<u32>() <= max_degree);
    prop::collection::vec((monomial, coefficient()), 0..=terms).prop_map(move |raw| {
        let mut p = Polynomial::zero(arity);
        for (e, c) in raw {
            p = &p + &Polynomial::monomial(Monomial::new(e), c);
        }
        p
    })
}

/// A homogeneous form of degree `degree` with at most `terms` terms.
pub fn form(arity: usize, degree: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    polynomial(arity, degree, terms).prop_map(move |p| p.homogeneous_component(degree))
}

/// `(arity, p)` with the arity drawn from `arities`.
pub fn sized_polynomial(
    arities: std::ops::RangeInclusive<usize>,
    max_degree: u32,
    terms: usize,
) -> impl Strategy<Value = Polynomial> {
    arities.prop_flat_map(move |n| polynomial(n, max_degree, terms))
}

pub fn point(arity: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    prop::collection::vec(coefficient(), arity)
}
