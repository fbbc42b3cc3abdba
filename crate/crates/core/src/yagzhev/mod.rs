//! Yagzhev-form maps `F = x + H` with cubic homogeneous `H`, their quartic
//! potentials, and constant-Jacobian checks.

mod generate;
mod replay;

pub use generate::{
    generate_divisible_potential, generate_isotropic_potential, generate_planted_reducible,
    instance_rng, instance_seed, random_form, InstanceRng,
};
pub use replay::{
    replay_proof, replay_proof_with, CoefficientRelation, Contradiction, ContradictionKind,
    DecompositionStep, ProofReplayReport, ProofStep, ReconstructionStep, RelationsStep,
    ReplayOptions, RestrictionStep, TraceStep,
};

use num_traits::One;

use crate::calculus::{jacobian, PolyMatrix};
use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Polynomial};

/// A polynomial map `C^n -> C^n`: `n` coordinates in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    coordinates: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(coordinates: Vec<Polynomial>) -> Result<Self> {
        let n = coordinates.len();
        if n == 0 {
            return Err(Error::NotSquareMap { coordinates: 0, arity: 0 });
        }
        if let Some(bad) = coordinates.iter().find(|p| p.arity() != n) {
            return Err(Error::NotSquareMap { coordinates: n, arity: bad.arity() });
        }
        Ok(Self { coordinates })
    }

    pub fn identity(n: usize) -> Self {
        Self { coordinates: (0..n).map(|k| Polynomial::variable(n, k)).collect() }
    }

    pub fn arity(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[Polynomial] {
        &self.coordinates
    }

    pub fn coordinate(&self, k: usize) -> &Polynomial {
        &self.coordinates[k]
    }
}

/// The cubic parts `H_1, ..., H_n` of a Yagzhev map; each is zero or a cubic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YagzhevData {
    cubic_parts: Vec<Polynomial>,
}

impl YagzhevData {
    pub fn new(cubic_parts: Vec<Polynomial>) -> Result<Self> {
        let n = cubic_parts.len();
        for (k, h) in cubic_parts.iter().enumerate() {
            if h.arity() != n {
                return Err(Error::NotSquareMap { coordinates: n, arity: h.arity() });
            }
            if !h.is_homogeneous(3) {
                let stray = h.filter_terms(|m| m.degree() != 3);
                return Err(Error::NotYagzhevForm { coordinate: k, stray });
            }
        }
        Ok(Self { cubic_parts })
    }

    pub fn arity(&self) -> usize {
        self.cubic_parts.len()
    }

    pub fn cubic_parts(&self) -> &[Polynomial] {
        &self.cubic_parts
    }

    pub fn cubic_part(&self, k: usize) -> &Polynomial {
        &self.cubic_parts[k]
    }

    /// `f_k = x_k + H_k`.
    pub fn coordinate(&self, k: usize) -> Polynomial {
        &Polynomial::variable(self.arity(), k) + &self.cubic_parts[k]
    }

    pub fn to_map(&self) -> PolyMap {
        PolyMap { coordinates: (0..self.arity()).map(|k| self.coordinate(k)).collect() }
    }
}

/// A homogeneous quartic (or zero) potential `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    polynomial: Polynomial,
}

impl Potential {
    pub fn new(polynomial: Polynomial) -> Result<Self> {
        if polynomial.is_homogeneous(4) {
            Ok(Self { polynomial })
        } else {
            Err(Error::NotQuartic)
        }
    }

    pub fn arity(&self) -> usize {
        self.polynomial.arity()
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.polynomial
    }

    pub fn into_polynomial(self) -> Polynomial {
        self.polynomial
    }
}

/// Extracts `H_k = F_k - x_k`, rejecting any coordinate whose remainder is
/// not a cubic form.
pub fn check_yagzhev_form(map: &PolyMap) -> Result<YagzhevData> {
    let n = map.arity();
    let parts = map
        .coordinates
        .iter()
        .enumerate()
        .map(|(k, f)| f - &Polynomial::variable(n, k))
        .collect();
    YagzhevData::new(parts)
}

/// `F_i = x_i + dP/dx_i`.
pub fn map_from_potential(potential: &Potential) -> PolyMap {
    let p = potential.polynomial();
    let n = p.arity();
    let coordinates = (0..n)
        .map(|k| &Polynomial::variable(n, k) + &p.partial_derivative(k).expect("index < arity"))
        .collect();
    PolyMap { coordinates }
}

/// Recovers the potential of a symmetric Yagzhev map.
///
/// The candidate `P = (1/4) * sum_k x_k * H_k` is the only possibility by
/// Euler's identity; it is accepted only if `dP/dx_k = H_k` for every `k`.
pub fn potential_from_map(map: &PolyMap) -> Result<Potential> {
    let data = check_yagzhev_form(map)?;
    potential_from_cubic_parts(&data)
}

pub(crate) fn potential_from_cubic_parts(data: &YagzhevData) -> Result<Potential> {
    let n = data.arity();
    let mut sum = Polynomial::zero(n);
    for (k, h) in data.cubic_parts().iter().enumerate() {
        sum = &sum + &(&Polynomial::variable(n, k) * h);
    }
    let candidate = sum.scale(&GaussianRational::from_ratio(1, 4));
    for (k, h) in data.cubic_parts().iter().enumerate() {
        let residue = &candidate.partial_derivative(k)? - h;
        if !residue.is_zero() {
            return Err(Error::NotSymmetric { coordinate: k, residue });
        }
    }
    Potential::new(candidate)
}

/// Result of a constant-Jacobian check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JacobianVerdict {
    Constant(GaussianRational),
    NonConstant(Polynomial),
}

impl JacobianVerdict {
    pub fn is_unit(&self) -> bool {
        matches!(self, JacobianVerdict::Constant(c) if c.is_one())
    }

    /// The determinant as a polynomial of the given arity.
    pub fn determinant(&self, arity: usize) -> Polynomial {
        match self {
            JacobianVerdict::Constant(c) => Polynomial::constant(arity, c.clone()),
            JacobianVerdict::NonConstant(p) => p.clone(),
        }
    }
}

/// Computes `det JF` exactly and classifies it.
///
/// For a Yagzhev map the constant term of `det JF` is `det I = 1`, so a
/// constant Jacobian is always exactly 1.
pub fn check_constant_jacobian(map: &PolyMap) -> Result<JacobianVerdict> {
    let det = jacobian(map)?.determinant()?;
    Ok(match det.as_constant() {
        Some(c) => {
            debug_assert!(
                check_yagzhev_form(map).is_err() || c.is_one(),
                "Yagzhev map with constant jacobian {c} != 1"
            );
            JacobianVerdict::Constant(c)
        }
        None => JacobianVerdict::NonConstant(det),
    })
}

/// `JF = I + Hess(P)` for the map of a potential.
pub fn jacobian_of_potential(potential: &Potential) -> Result<PolyMatrix> {
    let n = potential.arity();
    PolyMatrix::identity(n, n).add(&PolyMatrix::hessian(potential.polynomial())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, k: usize) -> Polynomial {
        Polynomial::variable(n, k)
    }

    fn c(n: usize, re: i64, im: i64) -> Polynomial {
        Polynomial::constant(n, GaussianRational::from_integers(re, im))
    }

    fn u2() -> Polynomial {
        &x(2, 0) + &(&c(2, 0, 1) * &x(2, 1))
    }

    fn map(coords: Vec<Polynomial>) -> PolyMap {
        PolyMap::new(coords).unwrap()
    }

    #[test]
    fn yagzhev_form_recognition() {
        let id = check_yagzhev_form(&PolyMap::identity(3)).unwrap();
        assert!(id.cubic_parts().iter().all(Polynomial::is_zero));

        let f = map(vec![&x(2, 0) + &x(2, 1).pow(3), x(2, 1)]);
        let data = check_yagzhev_form(&f).unwrap();
        assert_eq!(data.cubic_parts(), &[x(2, 1).pow(3), Polynomial::zero(2)]);
        assert_eq!(data.to_map(), f);

        let bad = map(vec![&x(2, 0) + &x(2, 0).pow(2), x(2, 1)]);
        match check_yagzhev_form(&bad) {
            Err(Error::NotYagzhevForm { coordinate, stray }) => {
                assert_eq!(coordinate, 0);
                assert_eq!(stray, x(2, 0).pow(2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn poly_map_must_be_square() {
        assert!(matches!(
            PolyMap::new(vec![x(3, 0), x(3, 1)]),
            Err(Error::NotSquareMap { coordinates: 2, arity: 3 })
        ));
    }

    #[test]
    fn maps_from_potentials() {
        assert_eq!(
            map_from_potential(&Potential::new(Polynomial::zero(3)).unwrap()),
            PolyMap::identity(3)
        );

        let p = Potential::new(&x(2, 0) * &x(2, 1).pow(3)).unwrap();
        let expected = map(vec![
            &x(2, 0) + &x(2, 1).pow(3),
            &x(2, 1) + &(&c(2, 3, 0) * &(&x(2, 0) * &x(2, 1).pow(2))),
        ]);
        assert_eq!(map_from_potential(&p), expected);

        let q = Potential::new(u2().pow(4)).unwrap();
        let cube = &c(2, 4, 0) * &u2().pow(3);
        let expected = map(vec![&x(2, 0) + &cube, &x(2, 1) + &(&c(2, 0, 1) * &cube)]);
        assert_eq!(map_from_potential(&q), expected);

        assert_eq!(Potential::new(x(2, 0).pow(3)), Err(Error::NotQuartic));
    }

    #[test]
    fn potentials_from_maps() {
        assert!(potential_from_map(&PolyMap::identity(2)).unwrap().polynomial().is_zero());

        let f = map(vec![
            &x(2, 0) + &x(2, 1).pow(3),
            &x(2, 1) + &(&c(2, 3, 0) * &(&x(2, 0) * &x(2, 1).pow(2))),
        ]);
        assert_eq!(potential_from_map(&f).unwrap().polynomial(), &(&x(2, 0) * &x(2, 1).pow(3)));

        let asym = map(vec![&x(2, 0) + &x(2, 1).pow(3), x(2, 1)]);
        assert!(matches!(potential_from_map(&asym), Err(Error::NotSymmetric { .. })));
        let not_cubic = map(vec![&x(2, 0) + &x(2, 1).pow(2), x(2, 1)]);
        assert!(matches!(potential_from_map(&not_cubic), Err(Error::NotYagzhevForm { .. })));
    }

    #[test]
    fn constant_jacobian_verdicts() {
        assert_eq!(
            check_constant_jacobian(&PolyMap::identity(3)).unwrap(),
            JacobianVerdict::Constant(GaussianRational::one())
        );
        let iso = map_from_potential(&Potential::new(u2().pow(4)).unwrap());
        assert!(check_constant_jacobian(&iso).unwrap().is_unit());

        let f = map(vec![&x(2, 0) + &x(2, 0).pow(3), x(2, 1)]);
        assert_eq!(
            check_constant_jacobian(&f).unwrap(),
            JacobianVerdict::NonConstant(&c(2, 1, 0) + &(&c(2, 3, 0) * &x(2, 0).pow(2)))
        );
    }

    #[test]
    fn jacobian_is_identity_plus_hessian() {
        let p = Potential::new(&x(2, 0) * &x(2, 1).pow(3)).unwrap();
        let f = map_from_potential(&p);
        assert_eq!(jacobian(&f).unwrap(), jacobian_of_potential(&p).unwrap());
        let expected = PolyMatrix::new(
            2,
            2,
            vec![
                c(2, 1, 0),
                &c(2, 3, 0) * &x(2, 1).pow(2),
                &c(2, 3, 0) * &x(2, 1).pow(2),
                &c(2, 1, 0) + &(&c(2, 6, 0) * &(&x(2, 0) * &x(2, 1))),
            ],
        )
        .unwrap();
        assert_eq!(jacobian(&f).unwrap(), expected);
    }
}
