//! Seeded instance generators.
//!
//! Every generator is a pure function of its parameters and seed. Batch
//! drivers derive per-instance seeds with [`instance_rng`], which selects an
//! independent ChaCha stream per instance index, so instances can be built
//! in any order or in parallel with identical results.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Potential, YagzhevData};
use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Monomial, Polynomial};

pub type InstanceRng = ChaCha8Rng;

const ISOTROPIC_STREAM: u64 = 1;
const PLANTED_STREAM: u64 = 2;
const DIVISIBLE_STREAM: u64 = 3;

/// RNG for instance `index` of a batch seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> InstanceRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Seed of instance `index` in a batch seeded with `seed`.
pub fn instance_seed(seed: u64, index: u64) -> u64 {
    instance_rng(seed, index).next_u64()
}

fn generator_rng(seed: u64, stream: u64) -> InstanceRng {
    instance_rng(seed, stream)
}

fn random_coefficient<R: Rng>(rng: &mut R, bound: u32) -> GaussianRational {
    let b = bound as i64;
    loop {
        let re = rng.random_range(-b..=b);
        let im = rng.random_range(-b..=b);
        if re != 0 || im != 0 {
            return GaussianRational::from_integers(re, im);
        }
    }
}

/// A random form of the given degree in the listed variables with `terms`
/// monomial draws and Gaussian-integer coefficients whose parts lie in
/// `[-bound, bound]`. Repeated draws merge, so the term count may be lower
/// and the result may be zero.
pub fn random_form<R: Rng>(
    rng: &mut R,
    arity: usize,
    variables: &[usize],
    degree: u32,
    terms: usize,
    bound: u32,
) -> Polynomial {
    let mut out = Polynomial::zero(arity);
    if variables.is_empty() || bound == 0 {
        return out;
    }
    for _ in 0..terms {
        let mut exponents = vec![0u32; arity];
        for _ in 0..degree {
            exponents[variables[rng.random_range(0..variables.len())]] += 1;
        }
        let term = Polynomial::monomial(Monomial::new(exponents), random_coefficient(rng, bound));
        out = &out + &term;
    }
    out
}

/// A quartic potential with nilpotent Hessian.
///
/// Builds the `floor(n/2)` forms `u_j = x_{2j-1} + i x_{2j}`, whose gradients
/// are pairwise orthogonal under the bilinear dot product, mixes them by a
/// random unimodular integer matrix and relabels the variables by a random
/// signed permutation (both keep the gradient Gram matrix zero). `P` is a
/// random quartic in the mixed forms with `richness` term draws and
/// Gaussian-integer coefficients bounded by `richness`. Writing `u = Jx`,
/// `Hess P = J^T M J` and `J J^T = 0`, so `(Hess P)^2 = 0`.
pub fn generate_isotropic_potential(n: usize, seed: u64, richness: u32) -> Result<Potential> {
    if n < 2 {
        return Err(Error::ArityTooSmall { arity: n, minimum: 2 });
    }
    let mut rng = generator_rng(seed, ISOTROPIC_STREAM);
    let m = n / 2;

    // coefficient rows of the linear forms
    let mut forms: Vec<Vec<GaussianRational>> = (0..m)
        .map(|j| {
            let mut row = vec![GaussianRational::from(0); n];
            row[2 * j] = GaussianRational::from(1);
            row[2 * j + 1] = GaussianRational::i();
            row
        })
        .collect();

    if m > 1 {
        for _ in 0..2 * m {
            let a = rng.random_range(0..m);
            let mut b = rng.random_range(0..m - 1);
            if b >= a {
                b += 1;
            }
            let t = GaussianRational::from([-2i64, -1, 1, 2][rng.random_range(0..4)]);
            let added: Vec<_> = forms[b].iter().map(|v| v * &t).collect();
            for (dst, v) in forms[a].iter_mut().zip(&added) {
                *dst += v;
            }
        }
    }

    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let signs: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    let forms: Vec<Polynomial> = forms
        .iter()
        .map(|row| {
            let mut form = Polynomial::zero(n);
            for (k, coeff) in row.iter().enumerate() {
                let c = if signs[k] { -coeff } else { coeff.clone() };
                form = &form + &Polynomial::variable(n, perm[k]).scale(&c);
            }
            form
        })
        .collect();
    debug_assert!(gram_is_zero(&forms));

    let mut p = Polynomial::zero(n);
    for _ in 0..richness {
        let mut term = Polynomial::constant(n, random_coefficient(&mut rng, richness));
        for _ in 0..4 {
            term = &term * &forms[rng.random_range(0..m)];
        }
        p = &p + &term;
    }
    Potential::new(p)
}

fn gram_is_zero(forms: &[Polynomial]) -> bool {
    let n = forms.first().map_or(0, Polynomial::arity);
    let grads: Vec<Vec<GaussianRational>> = forms
        .iter()
        .map(|f| (0..n).map(|k| f.coefficient(&Monomial::variable(n, k))).collect())
        .collect();
    grads.iter().all(|a| {
        grads.iter().all(|b| {
            a.iter()
                .zip(b)
                .fold(GaussianRational::from(0), |acc, (x, y)| &acc + &(x * y))
                == GaussianRational::from(0)
        })
    })
}

/// Random cubic parts with `H_k = x_k * q` for a random nonzero quadratic `q`.
/// The other coordinates are unconstrained random cubic forms (possibly zero).
pub fn generate_planted_reducible(n: usize, k: usize, seed: u64) -> Result<YagzhevData> {
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, arity: n });
    }
    let mut rng = generator_rng(seed, PLANTED_STREAM);
    let all: Vec<usize> = (0..n).collect();
    let parts = (0..n)
        .map(|l| {
            if l == k {
                let q = nonzero_form(&mut rng, n, &all, 2, 3);
                &Polynomial::variable(n, k) * &q
            } else {
                let terms = rng.random_range(0..=3);
                random_form(&mut rng, n, &all, 3, terms, 3)
            }
        })
        .collect();
    YagzhevData::new(parts)
}

fn nonzero_form<R: Rng>(
    rng: &mut R,
    arity: usize,
    variables: &[usize],
    degree: u32,
    bound: u32,
) -> Polynomial {
    loop {
        let terms = rng.random_range(1..=3);
        let q = random_form(rng, arity, variables, degree, terms, bound);
        if !q.is_zero() {
            return q;
        }
    }
}

/// A quartic potential whose coordinate `k` is divisible by `x_k`:
/// `P = x_k^2 g + h` with `g` a nonzero quadratic and `h` free of `x_k`.
///
/// Half the seeds use a generic `g`; the other half use `g = x_k L + c x_k^2`
/// with `h` drawn from the nilpotent-Hessian family in the other variables,
/// which keeps `det JF` equal to 1 on `x_k = 0`.
pub fn generate_divisible_potential(n: usize, k: usize, seed: u64) -> Result<Potential> {
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, arity: n });
    }
    let mut rng = generator_rng(seed, DIVISIBLE_STREAM);
    let others: Vec<usize> = (0..n).filter(|&l| l != k).collect();
    let all: Vec<usize> = (0..n).collect();
    let xk = Polynomial::variable(n, k);

    let (g, h) = if rng.random_bool(0.5) {
        let g = nonzero_form(&mut rng, n, &all, 2, 3);
        let terms = rng.random_range(0..=3);
        let h = random_form(&mut rng, n, &others, 4, terms, 3);
        (g, h)
    } else {
        let g = loop {
            let terms = rng.random_range(0..=2);
            let linear = random_form(&mut rng, n, &others, 1, terms, 3);
            let c = if rng.random_bool(0.5) {
                GaussianRational::from(rng.random_range(1..=3i64))
            } else {
                GaussianRational::from(0)
            };
            let g = &(&xk * &linear) + &(&xk * &xk).scale(&c);
            if !g.is_zero() {
                break g;
            }
        };
        let h = if others.len() >= 2 {
            let sub = generate_isotropic_potential(others.len(), rng.random(), 2)?;
            embed(sub.polynomial(), n, &others)
        } else {
            Polynomial::zero(n)
        };
        (g, h)
    };
    Potential::new(&(&(&xk * &xk) * &g) + &h)
}

/// Places a polynomial in `targets.len()` variables into arity `n`, sending
/// variable `i` to `targets[i]`.
fn embed(p: &Polynomial, n: usize, targets: &[usize]) -> Polynomial {
    let mut out = Polynomial::zero(n);
    for (m, c) in p.terms() {
        let mut exponents = vec![0; n];
        for (i, &e) in m.exponents().iter().enumerate() {
            exponents[targets[i]] = e;
        }
        out = &out + &Polynomial::monomial(Monomial::new(exponents), c.clone());
    }
    out
}
