//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use yagzhev_core::calculus::{hessian, PolyMatrix};
use yagzhev_core::irreducibility::{decide_coordinate, oracle_factor_search, theorem_check, TheoremOutcome, Verdict};
use yagzhev_core::text::{parse_polynomial, print_canonical, PolyExpressionSource};
use yagzhev_core::yagzhev::{
    check_constant_jacobian, generate_divisible_potential, generate_isotropic_potential, generate_planted_reducible,
    instance_seed, map_from_potential, potential_from_map, random_form, replay_proof, JacobianVerdict, ProofStep,
    Potential, YagzhevData,
};
use yagzhev_core::{Error, GaussianRational, Monomial, Polynomial};

const SEED: u64 = 20240917;

struct Check {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> Check {
    Check { passed, detail: detail.into() }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    rng.set_stream(stream);
    rng
}

/// Criterion and oracle on 1000 coordinates, half of them planted.
fn lemma_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = rng(1);
    let (mut agree, mut reducible, mut witnesses_ok) = (0, 0, true);
    let total = 1000;
    let mut first_failure = None;
    for i in 0..total {
        let n = rng.random_range(1..=4usize);
        let k = rng.random_range(0..n);
        let data = if i % 2 == 0 {
            generate_planted_reducible(n, k, rng.random()).unwrap()
        } else {
            let all: Vec<usize> = (0..n).collect();
            let parts = (0..n)
                .map(|_| {
                    let terms = rng.random_range(1..=4);
                    random_form(&mut rng, n, &all, 3, terms, 3)
                })
                .collect();
            YagzhevData::new(parts).unwrap()
        };
        let v = decide_coordinate(&data, k).unwrap();
        let found = oracle_factor_search(&data.coordinate(k), 3).unwrap();
        let says_reducible = v.verdict != Verdict::IrreducibleCubicCoordinate;
        if says_reducible == found.is_some() {
            agree += 1;
        } else if first_failure.is_none() {
            first_failure = Some(format!("instance {i}: F{} = {}", k + 1, data.coordinate(k)));
        }
        if let Some(w) = &v.witness {
            reducible += 1;
            witnesses_ok &= &w.p1 * &w.p2 == data.coordinate(k);
        }
    }
    let elapsed = start.elapsed();
    let mut detail = format!(
        "{agree}/{total} agree, {reducible} reducible witnesses re-multiply: {witnesses_ok}, {:.1} s (limit 60 s)",
        elapsed.as_secs_f64()
    );
    if let Some(f) = first_failure {
        detail.push_str(&format!("; first disagreement {f}"));
    }
    check(agree == total && witnesses_ok && elapsed < Duration::from_secs(60), detail)
}

fn isotropic_set() -> Vec<Potential> {
    (0..200u64)
        .map(|i| {
            let n = 2 + (i % 5) as usize;
            generate_isotropic_potential(n, instance_seed(SEED, i), 3).unwrap()
        })
        .collect()
}

/// Every generated instance is verified: det JF = 1 and no divisible coordinate.
fn theorem_reproduction(set: &[Potential]) -> Check {
    let start = Instant::now();
    let mut verified = 0;
    for p in set {
        let report = theorem_check(&map_from_potential(p)).unwrap();
        let unit = matches!(&report.jacobian, Some(j) if j.is_unit());
        let none_divisible = report.verdicts.iter().all(|v| !v.is_reducible());
        if report.outcome == TheoremOutcome::Verified && unit && none_divisible {
            verified += 1;
        }
    }
    let elapsed = start.elapsed();
    check(
        verified == set.len() && elapsed < Duration::from_secs(300),
        format!("{verified}/{} Verified, n in 2..=6, {:.1} s (limit 300 s)", set.len(), elapsed.as_secs_f64()),
    )
}

/// Nilpotency and unit determinant agree; an added x_k^4 flips both.
fn nilpotency_determinant(set: &[Potential]) -> Check {
    let mut rng = rng(3);
    let (mut agree, mut flipped) = (0, 0);
    for p in set {
        let n = p.arity();
        let h = hessian(p.polynomial()).unwrap();
        let nilpotent = h.nilpotency().unwrap().nilpotent;
        let unit = check_constant_jacobian(&map_from_potential(p)).unwrap().is_unit();
        if nilpotent == unit {
            agree += 1;
        }

        let k = rng.random_range(0..n);
        let xk = Polynomial::variable(n, k);
        let bumped = p.polynomial() + &xk.pow(4);
        let hb = hessian(&bumped).unwrap();
        let nil_fails = !hb.nilpotency().unwrap().nilpotent;
        let det = PolyMatrix::identity(n, n).add(&hb).unwrap().determinant().unwrap();
        let det_nonconstant = det.as_constant().is_none();
        let verdict_nonconstant = matches!(
            check_constant_jacobian(&map_from_potential(&Potential::new(bumped).unwrap())).unwrap(),
            JacobianVerdict::NonConstant(_)
        );
        // 3 c x_k^2 with c = 4, the x_k^2 coefficient of dP/dx_k / x_k
        let residue = (&xk * &xk).scale(&GaussianRational::from(12));
        let trace_matches = hb.trace().unwrap() == residue;
        if nil_fails && det_nonconstant && verdict_nonconstant && trace_matches {
            flipped += 1;
        }
    }
    check(
        agree == set.len() && flipped == set.len(),
        format!("detectors agree on {agree}/{}, perturbation flips both with trace 12*x_k^2 on {flipped}/{}", set.len(), set.len()),
    )
}

fn random_quartic(rng: &mut ChaCha8Rng, n: usize) -> Polynomial {
    let all: Vec<usize> = (0..n).collect();
    let terms = rng.random_range(1..=12);
    let p = random_form(rng, n, &all, 4, terms, 5);
    // rational coefficients too
    let d = rng.random_range(1..=6);
    p.scale(&GaussianRational::from_ratio(1, d))
}

fn potential_round_trip() -> Check {
    let mut rng = rng(4);
    let total = 500;
    let mut ok = 0;
    for _ in 0..total {
        let n = rng.random_range(1..=6);
        let p = random_quartic(&mut rng, n);
        let map = map_from_potential(&Potential::new(p.clone()).unwrap());
        if potential_from_map(&map).map(|q| q.into_polynomial() == p).unwrap_or(false) {
            ok += 1;
        }
    }
    check(ok == total, format!("{ok}/{total} exact round trips, n in 1..=6"))
}

fn replay_localization(set: &[Potential]) -> Check {
    let mut rng = rng(5);
    let total = 60;
    let (mut localized, mut at3, mut at5) = (0, 0, 0);
    for _ in 0..total {
        let n = rng.random_range(2..=5);
        let k = rng.random_range(0..n);
        let p = generate_divisible_potential(n, k, rng.random()).unwrap();
        let report = replay_proof(&map_from_potential(&p), k).unwrap();
        let step = report.localized().step;
        if !report.all_steps_passed() && matches!(step, ProofStep::Restriction | ProofStep::HessianTrace) {
            localized += 1;
            if step == ProofStep::Restriction {
                at3 += 1;
            } else {
                at5 += 1;
            }
        }
    }
    let (mut valid_ok, mut coords) = (0, 0);
    for p in set {
        let map = map_from_potential(p);
        let all = (0..p.arity()).all(|k| {
            coords += 1;
            matches!(replay_proof(&map, k), Err(Error::PreconditionNotMet { .. }))
        });
        if all {
            valid_ok += 1;
        }
    }
    check(
        localized == total && valid_ok == set.len(),
        format!(
            "{localized}/{total} broken maps localized (step 3: {at3}, step 5: {at5}); \
             {valid_ok}/{} valid maps report PreconditionNotMet on all {coords} coordinates",
            set.len()
        ),
    )
}

fn random_polynomial(rng: &mut ChaCha8Rng) -> Polynomial {
    let n = rng.random_range(1..=8);
    let terms = rng.random_range(0..=8);
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let degree = rng.random_range(0..=4);
        let mut e = vec![0u32; n];
        for _ in 0..degree {
            e[rng.random_range(0..n)] += 1;
        }
        let re = GaussianRational::from_ratio(rng.random_range(-9..=9), rng.random_range(1..=9));
        let im = GaussianRational::from_ratio(rng.random_range(-9..=9), rng.random_range(1..=9));
        let c = &re + &(&im * &GaussianRational::i());
        p = &p + &Polynomial::monomial(Monomial::new(e), c);
    }
    p
}

fn run_verify(jobs: &str) -> (Vec<u8>, Vec<u8>) {
    let exe = env!("CARGO_BIN_EXE_yagzhev");
    let base = ["verify", "--n", "4", "--count", "40", "--seed", "7", "--jobs", jobs];
    let text = Command::new(exe).args(base).output().expect("run yagzhev");
    let json = Command::new(exe).args(base).arg("--json").output().expect("run yagzhev");
    (text.stdout, json.stdout)
}

fn parser_round_trip() -> Check {
    let mut rng = rng(6);
    let total = 1000;
    let mut ok = 0;
    for _ in 0..total {
        let p = random_polynomial(&mut rng);
        let printed = print_canonical(&p);
        let src = PolyExpressionSource::with_arity(&printed, p.arity());
        if parse_polynomial(&src).map(|q| q == p).unwrap_or(false) {
            ok += 1;
        }
    }
    let first = run_verify("1");
    let repeat = run_verify("1");
    let parallel = run_verify("4");
    let identical = first == repeat && first == parallel && !first.0.is_empty() && !first.1.is_empty();
    check(
        ok == total && identical,
        format!("{ok}/{total} parse(print(p)) = p; verify reports byte-identical across runs and --jobs 1/4: {identical}"),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn main() -> ExitCode {
    let set = isotropic_set();
    let criteria: Vec<Criterion> = vec![
        ("divisibility criterion agrees with factor search", Box::new(lemma_equivalence)),
        ("nilpotent-Hessian maps have only irreducible coordinates", Box::new(|| theorem_reproduction(&set))),
        ("nilpotency agrees with unit determinant", Box::new(|| nilpotency_determinant(&set))),
        ("potential round trip", Box::new(potential_round_trip)),
        ("proof replay localization", Box::new(|| replay_localization(&set))),
        ("parser/printer round trip and deterministic reports", Box::new(parser_round_trip)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        let mark = if v.passed { "PASS" } else { "FAIL" };
        println!("{mark} [{}] {name}: {}", i + 1, v.detail);
        if !v.passed {
            failed += 1;
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
