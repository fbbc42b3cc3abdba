//! Executable replay of the irreducibility argument for symmetric Yagzhev maps.
//!
//! Given a symmetric Yagzhev map `F = x + grad P` and a coordinate `k` with
//! `x_k | H_k`, the argument derives a chain of consequences of `det JF = 1`
//! that ends in `Q = 0` while `H_k = x_k Q` with `Q != 0`. On real inputs
//! some hypothesis must fail along the way; the replay evaluates every
//! intermediate claim exactly and reports where the chain breaks.
//!
//! Internally the pivot is swapped into the last variable, matching the
//! block layout of `JF`, and every reported polynomial and index is swapped
//! back.

use num_traits::Zero;

use super::{check_constant_jacobian, check_yagzhev_form, potential_from_cubic_parts, JacobianVerdict, PolyMap};
use crate::calculus::{hessian, jacobian, Nilpotency, PolyMatrix};
use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProofStep {
    /// `P = x_k^2 g + h` with `h` free of `x_k`.
    Decomposition = 1,
    /// `c_ll = a_ll`, `c_lj = 2 a_lj`, `c_lk = 3 a_lk`.
    CoefficientRelations = 2,
    /// `det JF` at `x_k = 0` equals `det(block) * (1 + R)`.
    Restriction = 3,
    /// `P = h + sum_l a_lk x_l x_k^3 + (c_kk / 4) x_k^4`.
    Reconstruction = 4,
    /// `Tr Hess P` has no `x_k`-dependent part.
    HessianTrace = 5,
}

impl ProofStep {
    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContradictionKind {
    /// `P` has a component linear in `x_k`, or `g` vanishes.
    DecompositionFailed,
    /// The coefficient matrix `A` of `g`'s interaction with `x_k` is not symmetric.
    AsymmetricInteraction,
    RelationViolated,
    /// `R = Q(x_k = 0)` is nonzero, so `det JF` is not constant on `x_k = 0`.
    RestrictedQuadraticNonZero,
    /// `R = 0` but the remaining block determinant is not 1.
    RestrictedBlockNonUnit,
    ReconstructionMismatch,
    /// The `x_k`-dependent part of `Tr Hess P` is nonzero, so `Hess P` is
    /// not nilpotent.
    TraceResidueNonZero,
    /// Every hypothesis held and the forced coefficients give `Q = 0`,
    /// against `Q != 0`.
    QuadraticForcedZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contradiction {
    pub step: ProofStep,
    pub kind: ContradictionKind,
    pub residue: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ReplayOptions {
    /// Keep evaluating later steps after the first contradiction.
    pub continue_after_contradiction: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionStep {
    pub g: Polynomial,
    pub h: Polynomial,
    /// Component of `P` linear in `x_k`; zero whenever `x_k | dP/dx_k`.
    pub linear_component: Polynomial,
    /// `a[l][j]` is the coefficient of `x_k^2 x_j` in `H_l`; row `k` is unused.
    pub a: Vec<Vec<GaussianRational>>,
    pub a_symmetric: bool,
    /// `Q = H_k / x_k`.
    pub q: Polynomial,
    /// `c[i][j]` (`i <= j`) is the coefficient of `x_i x_j` in `Q`.
    pub c: Vec<Vec<GaussianRational>>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientRelation {
    pub row: usize,
    pub col: usize,
    /// 1, 2 or 3 in `c_row,col = multiplier * a_row,col`.
    pub multiplier: u32,
    pub c: GaussianRational,
    pub a: GaussianRational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationsStep {
    pub relations: Vec<CoefficientRelation>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionStep {
    /// `det JF` with `x_k = 0`.
    pub restricted_determinant: Polynomial,
    /// Determinant of the block of `JF` on the other variables, at `x_k = 0`.
    pub block_determinant: Polynomial,
    /// `R = Q(x_k = 0)`.
    pub r: Polynomial,
    pub r_vanishes: bool,
    /// Whether `a_lj = 0` for all `l, j != k`.
    pub a_block_vanishes: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionStep {
    pub reconstructed: Polynomial,
    pub matches: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub trace: Polynomial,
    /// `w = Tr Hess P` at `x_k = 0`.
    pub w: Polynomial,
    /// `Tr Hess P - w`.
    pub residue: Polynomial,
    /// `6 sum_l a_lk x_l x_k + 3 c_kk x_k^2`.
    pub predicted_residue: Polynomial,
    /// `(l, a_lk)` for every `l != k`; the trace condition forces all to zero.
    pub forced_a: Vec<(usize, GaussianRational)>,
    pub forced_c: GaussianRational,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofReplayReport {
    pub pivot: usize,
    pub potential: Polynomial,
    pub jacobian: JacobianVerdict,
    pub hessian_nilpotency: Nilpotency,
    pub decomposition: Option<DecompositionStep>,
    pub relations: Option<RelationsStep>,
    pub restriction: Option<RestrictionStep>,
    pub reconstruction: Option<ReconstructionStep>,
    pub trace: Option<TraceStep>,
    /// In step order; never empty.
    pub contradictions: Vec<Contradiction>,
}

impl ProofReplayReport {
    /// The first step at which the argument breaks.
    pub fn localized(&self) -> &Contradiction {
        &self.contradictions[0]
    }

    pub fn all_steps_passed(&self) -> bool {
        [
            self.decomposition.as_ref().map(|s| s.passed),
            self.relations.as_ref().map(|s| s.passed),
            self.restriction.as_ref().map(|s| s.passed),
            self.reconstruction.as_ref().map(|s| s.passed),
            self.trace.as_ref().map(|s| s.passed),
        ]
        .iter()
        .all(|s| *s == Some(true))
    }
}

pub fn replay_proof(map: &PolyMap, k: usize) -> Result<ProofReplayReport> {
    replay_proof_with(map, k, ReplayOptions::default())
}

pub fn replay_proof_with(map: &PolyMap, k: usize, options: ReplayOptions) -> Result<ProofReplayReport> {
    let n = map.arity();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, arity: n });
    }
    let data = check_yagzhev_form(map)?;
    let potential = potential_from_cubic_parts(&data)?;
    let hk = data.cubic_part(k);
    if hk.is_zero() {
        return Err(Error::PreconditionNotMet {
            coordinate: k,
            reason: "cubic part is zero".into(),
        });
    }
    if !hk.divides_by_variable(k)? {
        return Err(Error::PreconditionNotMet {
            coordinate: k,
            reason: format!("x{} does not divide the cubic part", k + 1),
        });
    }

    let jacobian_verdict = check_constant_jacobian(map)?;
    let hessian_nilpotency = hessian(potential.polynomial())?.nilpotency()?;

    let swap = Swap { a: k, b: n - 1 };
    let p = swap.poly(potential.polynomial());
    let mut replay = Replay::new(swap.map(map)?, p);
    replay.run(options)?;

    Ok(ProofReplayReport {
        pivot: k,
        potential: potential.into_polynomial(),
        jacobian: jacobian_verdict,
        hessian_nilpotency,
        decomposition: replay.decomposition.map(|s| swap.decomposition(s)),
        relations: replay.relations.map(|s| swap.relations(s)),
        restriction: replay.restriction.map(|s| swap.restriction(s)),
        reconstruction: replay.reconstruction.map(|s| swap.reconstruction(s)),
        trace: replay.trace.map(|s| swap.trace(s)),
        contradictions: replay
            .contradictions
            .into_iter()
            .map(|c| Contradiction { residue: swap.poly(&c.residue), ..c })
            .collect(),
    })
}

/// A transposition of two variables; its own inverse.
struct Swap {
    a: usize,
    b: usize,
}

impl Swap {
    fn index(&self, i: usize) -> usize {
        if i == self.a {
            self.b
        } else if i == self.b {
            self.a
        } else {
            i
        }
    }

    fn poly(&self, p: &Polynomial) -> Polynomial {
        p.swap_variables(self.a, self.b).expect("indices checked")
    }

    fn map(&self, map: &PolyMap) -> Result<PolyMap> {
        // F'(y) = sigma F(sigma y): relabel variables and reorder coordinates
        let n = map.arity();
        PolyMap::new((0..n).map(|i| self.poly(map.coordinate(self.index(i)))).collect())
    }

    fn matrix(&self, m: Vec<Vec<GaussianRational>>) -> Vec<Vec<GaussianRational>> {
        let n = m.len();
        (0..n)
            .map(|i| (0..n).map(|j| m[self.index(i)][self.index(j)].clone()).collect())
            .collect()
    }

    fn upper(&self, m: Vec<Vec<GaussianRational>>) -> Vec<Vec<GaussianRational>> {
        let n = m.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j < i {
                            return GaussianRational::zero();
                        }
                        let (si, sj) = (self.index(i), self.index(j));
                        m[si.min(sj)][si.max(sj)].clone()
                    })
                    .collect()
            })
            .collect()
    }

    fn decomposition(&self, s: DecompositionStep) -> DecompositionStep {
        DecompositionStep {
            g: self.poly(&s.g),
            h: self.poly(&s.h),
            linear_component: self.poly(&s.linear_component),
            a: self.matrix(s.a),
            q: self.poly(&s.q),
            c: self.upper(s.c),
            ..s
        }
    }

    fn relations(&self, s: RelationsStep) -> RelationsStep {
        let mut relations: Vec<_> = s
            .relations
            .into_iter()
            .map(|r| {
                let (i, j) = (self.index(r.row), self.index(r.col));
                CoefficientRelation { row: i.min(j), col: i.max(j), ..r }
            })
            .collect();
        relations.sort_by_key(|r| (r.row, r.col));
        RelationsStep { relations, ..s }
    }

    fn restriction(&self, s: RestrictionStep) -> RestrictionStep {
        RestrictionStep {
            restricted_determinant: self.poly(&s.restricted_determinant),
            block_determinant: self.poly(&s.block_determinant),
            r: self.poly(&s.r),
            ..s
        }
    }

    fn reconstruction(&self, s: ReconstructionStep) -> ReconstructionStep {
        ReconstructionStep { reconstructed: self.poly(&s.reconstructed), ..s }
    }

    fn trace(&self, s: TraceStep) -> TraceStep {
        let mut forced_a: Vec<_> = s.forced_a.into_iter().map(|(l, v)| (self.index(l), v)).collect();
        forced_a.sort_by_key(|(l, _)| *l);
        TraceStep {
            trace: self.poly(&s.trace),
            w: self.poly(&s.w),
            residue: self.poly(&s.residue),
            predicted_residue: self.poly(&s.predicted_residue),
            forced_a,
            ..s
        }
    }
}

/// Replay state with the pivot in the last variable.
struct Replay {
    map: PolyMap,
    p: Polynomial,
    n: usize,
    pivot: usize,
    a: Vec<Vec<GaussianRational>>,
    c: Vec<Vec<GaussianRational>>,
    q: Polynomial,
    h: Polynomial,
    decomposition: Option<DecompositionStep>,
    relations: Option<RelationsStep>,
    restriction: Option<RestrictionStep>,
    reconstruction: Option<ReconstructionStep>,
    trace: Option<TraceStep>,
    contradictions: Vec<Contradiction>,
}

impl Replay {
    fn new(map: PolyMap, p: Polynomial) -> Self {
        let n = map.arity();
        Self {
            map,
            p,
            n,
            pivot: n - 1,
            a: Vec::new(),
            c: Vec::new(),
            q: Polynomial::zero(n),
            h: Polynomial::zero(n),
            decomposition: None,
            relations: None,
            restriction: None,
            reconstruction: None,
            trace: None,
            contradictions: Vec::new(),
        }
    }

    fn run(&mut self, options: ReplayOptions) -> Result<()> {
        let steps: [fn(&mut Self) -> Result<()>; 5] = [
            Self::decompose,
            Self::check_relations,
            Self::restrict,
            Self::reconstruct,
            Self::trace_condition,
        ];
        for step in steps {
            step(self)?;
            if !self.contradictions.is_empty() && !options.continue_after_contradiction {
                break;
            }
        }
        Ok(())
    }

    fn contradict(&mut self, step: ProofStep, kind: ContradictionKind, residue: Polynomial) {
        self.contradictions.push(Contradiction { step, kind, residue });
    }

    /// `x_pivot^e * prod x_j` as an exponent vector.
    fn pivot_monomial(&self, pivot_exp: u32, others: &[usize]) -> Monomial {
        let mut e = vec![0u32; self.n];
        e[self.pivot] = pivot_exp;
        for &j in others {
            e[j] += 1;
        }
        Monomial::new(e)
    }

    fn decompose(&mut self) -> Result<()> {
        let (n, pv) = (self.n, self.pivot);
        let parts = self.p.variable_degree_components(pv)?;
        let xp = Polynomial::variable(n, pv);
        let linear_component = parts.get(&1).cloned().unwrap_or_else(|| Polynomial::zero(n));
        self.h = parts.get(&0).cloned().unwrap_or_else(|| Polynomial::zero(n));
        let mut g = Polynomial::zero(n);
        for (&j, part) in parts.range(2..) {
            g = &g + &(&xp.pow(j - 2) * part);
        }

        let cubic = |l: usize| self.map.coordinate(l) - &Polynomial::variable(n, l);
        self.a = vec![vec![GaussianRational::zero(); n]; n];
        for l in 0..pv {
            let hl = cubic(l);
            for j in 0..pv {
                self.a[l][j] = hl.coefficient(&self.pivot_monomial(2, &[j]));
            }
            self.a[l][pv] = hl.coefficient(&self.pivot_monomial(3, &[]));
        }
        let a_symmetric = (0..pv).all(|l| (0..l).all(|j| self.a[l][j] == self.a[j][l]));

        self.q = cubic(pv).divide_by_variable(pv)?;
        self.c = vec![vec![GaussianRational::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut e = vec![0u32; n];
                e[i] += 1;
                e[j] += 1;
                self.c[i][j] = self.q.coefficient_of(&e);
            }
        }

        let passed = linear_component.is_zero() && !g.is_zero() && a_symmetric;
        if !linear_component.is_zero() || g.is_zero() {
            let residue = &xp * &linear_component;
            self.contradict(ProofStep::Decomposition, ContradictionKind::DecompositionFailed, residue);
        } else if !a_symmetric {
            self.contradict(
                ProofStep::Decomposition,
                ContradictionKind::AsymmetricInteraction,
                g.clone(),
            );
        }
        self.decomposition = Some(DecompositionStep {
            g,
            h: self.h.clone(),
            linear_component,
            a: self.a.clone(),
            a_symmetric,
            q: self.q.clone(),
            c: self.c.clone(),
            passed,
        });
        Ok(())
    }

    fn check_relations(&mut self) -> Result<()> {
        let pv = self.pivot;
        let mut relations = Vec::new();
        for l in 0..pv {
            for j in l..=pv {
                let multiplier = if j == l {
                    1
                } else if j == pv {
                    3
                } else {
                    2
                };
                let a = self.a[l][j].clone();
                let c = self.c[l][j].clone();
                let holds = c == &a * &GaussianRational::from(multiplier as i64);
                relations.push(CoefficientRelation { row: l, col: j, multiplier, c, a, holds });
            }
        }
        let passed = relations.iter().all(|r| r.holds);
        if !passed {
            let n = self.n;
            let mut residue = Polynomial::zero(n);
            for r in relations.iter().filter(|r| !r.holds) {
                let diff = &r.c - &(&r.a * &GaussianRational::from(r.multiplier as i64));
                let mut e = vec![0u32; n];
                e[r.row] += 1;
                e[r.col] += 1;
                residue = &residue + &Polynomial::monomial(Monomial::new(e), diff);
            }
            self.contradict(ProofStep::CoefficientRelations, ContradictionKind::RelationViolated, residue);
        }
        self.relations = Some(RelationsStep { relations, passed });
        Ok(())
    }

    fn restrict(&mut self) -> Result<()> {
        let (n, pv) = (self.n, self.pivot);
        let zero = Polynomial::zero(n);
        let restricted: PolyMatrix = jacobian(&self.map)?.substitute_variable(pv, &zero)?;
        let restricted_determinant = restricted.determinant()?;
        let others: Vec<usize> = (0..pv).collect();
        let block_determinant = if others.is_empty() {
            Polynomial::one(n)
        } else {
            restricted.submatrix(&others, &others)?.determinant()?
        };
        let r = self.q.substitute_variable(pv, &zero)?;
        let r_vanishes = r.is_zero();
        let a_block_vanishes = (0..pv).all(|l| (0..pv).all(|j| self.a[l][j].is_zero()));
        let one = Polynomial::one(n);
        let passed = r_vanishes && restricted_determinant == one;
        if !r_vanishes {
            self.contradict(
                ProofStep::Restriction,
                ContradictionKind::RestrictedQuadraticNonZero,
                r.clone(),
            );
        } else if restricted_determinant != one {
            self.contradict(
                ProofStep::Restriction,
                ContradictionKind::RestrictedBlockNonUnit,
                &block_determinant - &one,
            );
        }
        self.restriction = Some(RestrictionStep {
            restricted_determinant,
            block_determinant,
            r,
            r_vanishes,
            a_block_vanishes,
            passed,
        });
        Ok(())
    }

    fn reconstruct(&mut self) -> Result<()> {
        let (n, pv) = (self.n, self.pivot);
        let xp = Polynomial::variable(n, pv);
        let xp3 = xp.pow(3);
        let mut reconstructed = self.h.clone();
        for l in 0..pv {
            let term = (&Polynomial::variable(n, l) * &xp3).scale(&self.a[l][pv]);
            reconstructed = &reconstructed + &term;
        }
        let quarter = &self.c[pv][pv] * &GaussianRational::from_ratio(1, 4);
        reconstructed = &reconstructed + &xp.pow(4).scale(&quarter);
        let matches = reconstructed == self.p;
        if !matches {
            let residue = &self.p - &reconstructed;
            self.contradict(ProofStep::Reconstruction, ContradictionKind::ReconstructionMismatch, residue);
        }
        self.reconstruction = Some(ReconstructionStep { reconstructed, matches, passed: matches });
        Ok(())
    }

    fn trace_condition(&mut self) -> Result<()> {
        let (n, pv) = (self.n, self.pivot);
        let trace = hessian(&self.p)?.trace()?;
        let w = trace.substitute_variable(pv, &Polynomial::zero(n))?;
        let residue = &trace - &w;
        let xp = Polynomial::variable(n, pv);
        let mut predicted_residue = (&xp * &xp).scale(&(&self.c[pv][pv] * &GaussianRational::from(3)));
        for l in 0..pv {
            let coeff = &self.a[l][pv] * &GaussianRational::from(6);
            predicted_residue = &predicted_residue + &(&Polynomial::variable(n, l) * &xp).scale(&coeff);
        }
        let forced_a: Vec<_> = (0..pv).map(|l| (l, self.a[l][pv].clone())).collect();
        let forced_c = self.c[pv][pv].clone();
        let passed = residue.is_zero();
        if passed {
            // a_lk = c_kk = 0, and with R = 0 from step 3 this leaves Q = 0
            let q = self.q.clone();
            self.contradict(ProofStep::HessianTrace, ContradictionKind::QuadraticForcedZero, q);
        } else {
            self.contradict(
                ProofStep::HessianTrace,
                ContradictionKind::TraceResidueNonZero,
                residue.clone(),
            );
        }
        self.trace = Some(TraceStep {
            trace,
            w,
            residue,
            predicted_residue,
            forced_a,
            forced_c,
            passed,
        });
        Ok(())
    }
}
