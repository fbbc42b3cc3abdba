//! Irreducibility of Yagzhev coordinates `f_k = x_k + H_k`.
//!
//! For `H_k != 0`, `f_k` is reducible exactly when `x_k` divides `H_k`; the
//! factorization is then `x_k * (1 + H_k / x_k)`. [`theorem_check`] combines
//! this with the hypotheses on the whole map (Yagzhev form, symmetric
//! Jacobian, constant Jacobian) under which no coordinate can be divisible.

mod oracle;

pub use oracle::{coordinate_shape, divide_by_linear, homogenized_coordinate, oracle_factor_search, LinearFactor};

use num_traits::Zero;

use crate::calculus::{hessian, Nilpotency};
use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Polynomial};
use crate::yagzhev::{
    check_constant_jacobian, check_yagzhev_form, potential_from_cubic_parts, JacobianVerdict,
    PolyMap, YagzhevData,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    IrreducibleCubicCoordinate,
    ReducibleWithWitness,
    /// `H_k = 0`, so `f_k = x_k`.
    TrivialLinear,
}

/// Factors `f_k = p1 * p2`, dehomogenized (arity `n`) and homogenized
/// (arity `n + 1`, `x_k t^2 + H_k = p1 * p2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorWitness {
    pub p1: Polynomial,
    pub p2: Polynomial,
    pub homogeneous_p1: Polynomial,
    pub homogeneous_p2: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateVerdict {
    pub coordinate: usize,
    pub verdict: Verdict,
    pub witness: Option<FactorWitness>,
}

impl CoordinateVerdict {
    pub fn is_reducible(&self) -> bool {
        self.verdict == Verdict::ReducibleWithWitness
    }
}

pub fn decide_coordinate(data: &YagzhevData, k: usize) -> Result<CoordinateVerdict> {
    if k >= data.arity() {
        return Err(Error::IndexOutOfRange { index: k, arity: data.arity() });
    }
    decide_cubic(k, data.cubic_part(k))
}

/// Decides a single coordinate polynomial `f = x_k + H_k`.
pub fn decide_polynomial_coordinate(f: &Polynomial, k: usize) -> Result<CoordinateVerdict> {
    let n = f.arity();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, arity: n });
    }
    let cubic = f - &Polynomial::variable(n, k);
    if !cubic.is_homogeneous(3) {
        let stray = &cubic - &cubic.homogeneous_component(3);
        return Err(Error::NotYagzhevForm { coordinate: k, stray });
    }
    decide_cubic(k, &cubic)
}

fn decide_cubic(k: usize, cubic: &Polynomial) -> Result<CoordinateVerdict> {
    let n = cubic.arity();
    if cubic.is_zero() {
        return Ok(CoordinateVerdict { coordinate: k, verdict: Verdict::TrivialLinear, witness: None });
    }
    if !cubic.divides_by_variable(k)? {
        return Ok(CoordinateVerdict {
            coordinate: k,
            verdict: Verdict::IrreducibleCubicCoordinate,
            witness: None,
        });
    }
    let q = cubic.divide_by_variable(k)?;
    let xk = Polynomial::variable(n, k);
    let p1 = xk.clone();
    let p2 = &Polynomial::one(n) + &q;
    let f = &xk + cubic;
    assert_eq!(&p1 * &p2, f, "factor witness does not multiply back");

    let t = Polynomial::variable(n + 1, n);
    let homogeneous_p1 = p1.extend_arity(n + 1)?;
    let homogeneous_p2 = &(&t * &t) + &q.extend_arity(n + 1)?;
    debug_assert_eq!(&homogeneous_p1 * &homogeneous_p2, homogenized_coordinate(k, cubic)?);
    Ok(CoordinateVerdict {
        coordinate: k,
        verdict: Verdict::ReducibleWithWitness,
        witness: Some(FactorWitness { p1, p2, homogeneous_p1, homogeneous_p2 }),
    })
}

/// `p1 = alpha t + l1`, `p2 = beta t^2 + l2 t + q` with `l1, l2` linear and
/// `q` quadratic forms in `x_1..x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorParametrization {
    pub alpha: GaussianRational,
    pub beta: GaussianRational,
    pub l1: Polynomial,
    pub l2: Polynomial,
    pub q: Polynomial,
}

impl FactorParametrization {
    /// The parametrization of a divisibility witness: `alpha = 0`, `beta = 1`,
    /// `l1 = x_k`, `l2 = 0`, `q = H_k / x_k`.
    pub fn from_witness(verdict: &CoordinateVerdict) -> Option<Self> {
        let w = verdict.witness.as_ref()?;
        let n = w.p1.arity();
        Some(Self {
            alpha: GaussianRational::zero(),
            beta: GaussianRational::from(1),
            l1: w.p1.clone(),
            l2: Polynomial::zero(n),
            q: &w.p2 - &Polynomial::one(n),
        })
    }

    /// `(p1, p2)` in `n + 1` variables.
    pub fn factors(&self) -> Result<(Polynomial, Polynomial)> {
        let n = self.l1.arity();
        let t = Polynomial::variable(n + 1, n);
        let p1 = &t.scale(&self.alpha) + &self.l1.extend_arity(n + 1)?;
        let p2 = &(&(&t * &t).scale(&self.beta) + &(&t * &self.l2.extend_arity(n + 1)?))
            + &self.q.extend_arity(n + 1)?;
        Ok((p1, p2))
    }
}

/// Outcome of the four coefficient conditions obtained by expanding
/// `p1 * p2 = x_k t^2 + H_k` in powers of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametrizationConditions {
    /// `alpha beta = 0`
    pub a: bool,
    /// `alpha l2 + beta l1 = x_k`
    pub b: bool,
    /// `alpha q + l1 l2 = 0`
    pub c: bool,
    /// `l1 q = H_k`
    pub d: bool,
    /// Direct expansion of `p1 * p2` against `x_k t^2 + H_k`.
    pub product_matches: bool,
}

impl ParametrizationConditions {
    pub fn all_hold(&self) -> bool {
        self.a && self.b && self.c && self.d
    }
}

pub fn verify_parametrization_conditions(
    param: &FactorParametrization,
    k: usize,
    cubic: &Polynomial,
) -> Result<ParametrizationConditions> {
    let n = cubic.arity();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, arity: n });
    }
    let checks = [
        (&param.l1, 1, "l1 must be a linear form"),
        (&param.l2, 1, "l2 must be a linear form"),
        (&param.q, 2, "q must be a quadratic form"),
        (cubic, 3, "H_k must be a cubic form"),
    ];
    for (p, d, msg) in checks {
        if p.arity() != n || !p.is_homogeneous(d) {
            return Err(Error::DegreeMismatch(msg.into()));
        }
    }
    let (alpha, beta) = (&param.alpha, &param.beta);
    let xk = Polynomial::variable(n, k);
    let a = (alpha * beta).is_zero();
    let b = &param.l2.scale(alpha) + &param.l1.scale(beta) == xk;
    let c = (&param.q.scale(alpha) + &(&param.l1 * &param.l2)).is_zero();
    let d = &(&param.l1 * &param.q) == cubic;
    let (p1, p2) = param.factors()?;
    let product_matches = &p1 * &p2 == homogenized_coordinate(k, cubic)?;
    Ok(ParametrizationConditions { a, b, c, d, product_matches })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    YagzhevForm,
    SymmetricJacobian,
    ConstantJacobian,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremOutcome {
    /// Every coordinate is irreducible or linear.
    Verified,
    HypothesisViolation {
        hypothesis: Hypothesis,
        coordinate: Option<usize>,
        residue: Polynomial,
    },
    /// A divisible coordinate under all hypotheses. Never expected.
    TheoremCounterexample { coordinate: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub outcome: TheoremOutcome,
    pub potential: Option<Polynomial>,
    pub jacobian: Option<JacobianVerdict>,
    /// Reported alongside the determinant check, not used to decide the outcome.
    pub hessian_nilpotency: Option<Nilpotency>,
    /// Present whenever the map is in Yagzhev form.
    pub verdicts: Vec<CoordinateVerdict>,
}

/// Checks the hypotheses in order, then decides every coordinate.
pub fn theorem_check(map: &PolyMap) -> Result<TheoremReport> {
    let mut report = TheoremReport {
        outcome: TheoremOutcome::Verified,
        potential: None,
        jacobian: None,
        hessian_nilpotency: None,
        verdicts: Vec::new(),
    };
    let data = match check_yagzhev_form(map) {
        Ok(data) => data,
        Err(Error::NotYagzhevForm { coordinate, stray }) => {
            report.outcome = TheoremOutcome::HypothesisViolation {
                hypothesis: Hypothesis::YagzhevForm,
                coordinate: Some(coordinate),
                residue: stray,
            };
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.verdicts = (0..data.arity())
        .map(|k| decide_coordinate(&data, k))
        .collect::<Result<_>>()?;

    let potential = match potential_from_cubic_parts(&data) {
        Ok(p) => p,
        Err(Error::NotSymmetric { coordinate, residue }) => {
            report.outcome = TheoremOutcome::HypothesisViolation {
                hypothesis: Hypothesis::SymmetricJacobian,
                coordinate: Some(coordinate),
                residue,
            };
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.hessian_nilpotency = Some(hessian(potential.polynomial())?.nilpotency()?);
    report.potential = Some(potential.into_polynomial());

    let jacobian = check_constant_jacobian(map)?;
    report.jacobian = Some(jacobian.clone());
    if !jacobian.is_unit() {
        report.outcome = TheoremOutcome::HypothesisViolation {
            hypothesis: Hypothesis::ConstantJacobian,
            coordinate: None,
            residue: jacobian.determinant(map.arity()),
        };
        return Ok(report);
    }

    if let Some(bad) = report.verdicts.iter().find(|v| v.is_reducible()) {
        report.outcome = TheoremOutcome::TheoremCounterexample { coordinate: bad.coordinate };
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_polynomial, PolyExpressionSource};
    use crate::yagzhev::{generate_isotropic_potential, map_from_potential};

    fn parse(t: &str) -> Polynomial {
        crate::text::parse(t).unwrap()
    }

    fn p(text: &str, n: usize) -> Polynomial {
        parse_polynomial(&PolyExpressionSource::with_arity(text, n)).unwrap()
    }

    fn data(parts: &[&str]) -> YagzhevData {
        let n = parts.len();
        YagzhevData::new(parts.iter().map(|t| p(t, n)).collect()).unwrap()
    }

    fn map(coords: &[&str]) -> PolyMap {
        let n = coords.len();
        PolyMap::new(coords.iter().map(|t| p(t, n)).collect()).unwrap()
    }

    #[test]
    fn planted_cube_is_reducible() {
        let v = decide_coordinate(&data(&["x1^3"]), 0).unwrap();
        assert_eq!(v.verdict, Verdict::ReducibleWithWitness);
        let w = v.witness.unwrap();
        assert_eq!(w.p1, p("x1", 1));
        assert_eq!(w.p2, p("1 + x1^2", 1));
        assert_eq!(w.homogeneous_p2, p("x2^2 + x1^2", 2));
    }

    #[test]
    fn non_divisible_is_irreducible() {
        let v = decide_coordinate(&data(&["x2^3", "0"]), 0).unwrap();
        assert_eq!(v.verdict, Verdict::IrreducibleCubicCoordinate);
        assert!(v.witness.is_none());
    }

    #[test]
    fn zero_cubic_is_linear() {
        let v = decide_coordinate(&data(&["0", "x1^3"]), 0).unwrap();
        assert_eq!(v.verdict, Verdict::TrivialLinear);
        assert!(decide_coordinate(&data(&["0"]), 3).is_err());
    }

    #[test]
    fn witness_multiplies_back() {
        let d = data(&["x1*x2^2 - x1*x3^2", "0", "0"]);
        let v = decide_coordinate(&d, 0).unwrap();
        let w = v.witness.clone().unwrap();
        assert_eq!(w.p2, p("1 + x2^2 - x3^2", 3));
        assert_eq!(&w.p1 * &w.p2, d.coordinate(0));
        let param = FactorParametrization::from_witness(&v).unwrap();
        let cond = verify_parametrization_conditions(&param, 0, d.cubic_part(0)).unwrap();
        assert!(cond.all_hold() && cond.product_matches);
    }

    #[test]
    fn polynomial_coordinate_entry_point() {
        let v = decide_polynomial_coordinate(&parse("x1 + x1^3"), 0).unwrap();
        assert!(v.is_reducible());
        assert!(matches!(
            decide_polynomial_coordinate(&parse("x1 + x1^2"), 0),
            Err(Error::NotYagzhevForm { .. })
        ));
    }

    #[test]
    fn parametrization_conditions() {
        let param = FactorParametrization {
            alpha: GaussianRational::zero(),
            beta: 1.into(),
            l1: p("x1", 3),
            l2: Polynomial::zero(3),
            q: p("x2^2 + x3^2", 3),
        };
        let h = p("x1*x2^2 + x1*x3^2", 3);
        let cond = verify_parametrization_conditions(&param, 0, &h).unwrap();
        assert!(cond.all_hold());
        assert!(cond.product_matches);

        let both = FactorParametrization { alpha: 1.into(), ..param.clone() };
        let cond = verify_parametrization_conditions(&both, 0, &h).unwrap();
        assert!(!cond.a);
        assert!(!cond.product_matches);

        let wrong = FactorParametrization { l1: p("x2", 3), ..param.clone() };
        let cond = verify_parametrization_conditions(&wrong, 0, &h).unwrap();
        assert!(!cond.b);
        assert!(!cond.product_matches);

        let malformed = FactorParametrization { l1: p("x1^2", 3), ..param };
        assert!(matches!(
            verify_parametrization_conditions(&malformed, 0, &h),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn theorem_holds_on_isotropic_maps() {
        for seed in 0..5 {
            let f = map_from_potential(&generate_isotropic_potential(4, seed, 3).unwrap());
            let report = theorem_check(&f).unwrap();
            assert_eq!(report.outcome, TheoremOutcome::Verified);
            assert!(report.hessian_nilpotency.unwrap().nilpotent);
        }
    }

    #[test]
    fn theorem_check_reports_violations() {
        let report = theorem_check(&map(&["x1 + x1^3", "x2"])).unwrap();
        assert_eq!(
            report.outcome,
            TheoremOutcome::HypothesisViolation {
                hypothesis: Hypothesis::ConstantJacobian,
                coordinate: None,
                residue: p("1 + 3*x1^2", 2),
            }
        );
        let report = theorem_check(&map(&["x1 + x2^3", "x2"])).unwrap();
        assert!(matches!(
            report.outcome,
            TheoremOutcome::HypothesisViolation { hypothesis: Hypothesis::SymmetricJacobian, .. }
        ));
        let report = theorem_check(&map(&["x1 + x2^2", "x2"])).unwrap();
        assert!(matches!(
            report.outcome,
            TheoremOutcome::HypothesisViolation { hypothesis: Hypothesis::YagzhevForm, .. }
        ));
    }
}
