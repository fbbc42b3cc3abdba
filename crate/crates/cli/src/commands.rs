use std::fmt::Write as _;
use std::io::Read as _;
use std::path::Path;

use rayon::prelude::*;
use yagzhev_core::calculus::jacobian;
use yagzhev_core::irreducibility::{
    coordinate_shape, decide_coordinate, decide_polynomial_coordinate, oracle_factor_search, theorem_check,
    TheoremOutcome,
};
use yagzhev_core::text::{format_map, format_polynomial, print_canonical, ParseError, PolyFile};
use yagzhev_core::yagzhev::{
    check_yagzhev_form, generate_divisible_potential, generate_isotropic_potential, instance_seed,
    map_from_potential, potential_from_map, replay_proof, ContradictionKind, PolyMap, Potential,
};
use yagzhev_core::Error;

use crate::args::{FileArg, GenArgs, IrreducibleArgs, ReplayArgs, VerifyArgs};
use crate::report::{
    digest, nilpotency_text, HypothesisChecks, InstanceRecord, JacobianRecord, OracleRecord,
    OutcomeRecord, ReplayRecord, RunReport, VerdictRecord,
};
use crate::{EXIT_COUNTEREXAMPLE, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_OK};

pub struct Run {
    pub report: RunReport,
    pub text: String,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::input(format!("parse error: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::input(e.to_string())
    }
}

type CmdResult = Result<Run, Failure>;

struct Input {
    text: String,
    digest: String,
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::input(format!("cannot read standard input: {e}")))?;
        buf
    } else {
        std::fs::read(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?
    };
    let digest = digest(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| Failure::input("input is not valid UTF-8"))?;
    Ok(Input { text, digest })
}

/// A report for an input that parsed but violates a structural hypothesis,
/// or a failure for anything else.
fn violation(mut report: RunReport, e: Error) -> CmdResult {
    match OutcomeRecord::from_error(&e) {
        Some(outcome) => {
            let text = format!("outcome: HypothesisViolation\n{e}\n");
            report.outcome = Some(outcome);
            report.exit_status = EXIT_HYPOTHESIS;
            Ok(Run { report, text })
        }
        None => Err(e.into()),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn parse(args: &FileArg) -> CmdResult {
    let input = read_input(&args.file)?;
    let polys = PolyFile::parse(&input.text)?.to_polynomials()?;
    let mut report = RunReport::new("parse", input.digest);
    report.polynomials = polys.iter().map(print_canonical).collect();
    let mut text = String::new();
    for p in &report.polynomials {
        writeln!(text, "{p}").unwrap();
    }
    Ok(Run { report, text })
}

pub fn jacobian_cmd(args: &FileArg) -> CmdResult {
    let input = read_input(&args.file)?;
    let map = PolyFile::parse(&input.text)?.to_map()?;
    let jm = jacobian(&map)?;
    let det = jm.determinant()?;
    let n = map.arity();
    let matrix: Vec<Vec<String>> = (0..n).map(|i| jm.row(i).iter().map(print_canonical).collect()).collect();
    let mut text = String::new();
    for (i, row) in matrix.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            writeln!(text, "J[{}][{}] = {entry}", i + 1, j + 1).unwrap();
        }
    }
    let symmetric = jm.is_symmetric()?;
    writeln!(text, "det = {}", print_canonical(&det)).unwrap();
    writeln!(text, "symmetric: {}", yes_no(symmetric)).unwrap();
    let mut report = RunReport::new("jacobian", input.digest);
    report.jacobian = Some(JacobianRecord { matrix, determinant: print_canonical(&det), symmetric });
    Ok(Run { report, text })
}

pub fn from_potential(args: &FileArg) -> CmdResult {
    let input = read_input(&args.file)?;
    let p = PolyFile::parse(&input.text)?.to_polynomial()?;
    let report = RunReport::new("from-potential", input.digest);
    let potential = match Potential::new(p) {
        Ok(potential) => potential,
        Err(e) => return violation(report, e),
    };
    let map = map_from_potential(&potential);
    let mut report = report;
    report.polynomials = map.coordinates().iter().map(print_canonical).collect();
    Ok(Run { report, text: format_map(&map) })
}

pub fn to_potential(args: &FileArg) -> CmdResult {
    let input = read_input(&args.file)?;
    let map = PolyFile::parse(&input.text)?.to_map()?;
    let mut report = RunReport::new("to-potential", input.digest);
    match potential_from_map(&map) {
        Ok(p) => {
            report.polynomials = vec![print_canonical(p.polynomial())];
            Ok(Run { report, text: format_polynomial(p.polynomial()) })
        }
        Err(e) => violation(report, e),
    }
}

pub fn check_map(args: &FileArg) -> CmdResult {
    let input = read_input(&args.file)?;
    let map = PolyFile::parse(&input.text)?.to_map()?;
    let tr = theorem_check(&map)?;
    let mut report = RunReport::new("check-map", input.digest);
    let checks = HypothesisChecks::from_theorem(&tr, map.arity());
    let mut text = String::new();
    writeln!(text, "yagzhev form: {}", yes_no(checks.yagzhev_form)).unwrap();
    if let Some(s) = checks.symmetric_jacobian {
        writeln!(text, "symmetric jacobian: {}", yes_no(s)).unwrap();
    }
    if let (Some(c), Some(det)) = (checks.constant_jacobian, &checks.determinant) {
        writeln!(text, "constant jacobian: {} (det = {det})", yes_no(c)).unwrap();
    }
    if let Some(nil) = &tr.hessian_nilpotency {
        writeln!(text, "nilpotent hessian: {}", nilpotency_text(nil)).unwrap();
    }
    if let Some(p) = &tr.potential {
        writeln!(text, "potential: {}", print_canonical(p)).unwrap();
    }
    report.verdicts = tr.verdicts.iter().map(VerdictRecord::new).collect();
    for v in &report.verdicts {
        write_verdict(&mut text, v);
    }
    let outcome = OutcomeRecord::from_theorem(&tr.outcome);
    write_outcome(&mut text, &outcome);
    report.exit_status = match tr.outcome {
        TheoremOutcome::Verified => EXIT_OK,
        TheoremOutcome::HypothesisViolation { .. } => EXIT_HYPOTHESIS,
        TheoremOutcome::TheoremCounterexample { .. } => EXIT_COUNTEREXAMPLE,
    };
    report.hypotheses = Some(checks);
    report.outcome = Some(outcome);
    Ok(Run { report, text })
}

fn write_verdict(text: &mut String, v: &VerdictRecord) {
    match &v.witness {
        Some(w) => writeln!(text, "F{}: {}, witness {w}", v.coordinate, v.label()).unwrap(),
        None => writeln!(text, "F{}: {}", v.coordinate, v.label()).unwrap(),
    }
    if let Some(o) = &v.oracle {
        match (&o.linear_factor, &o.cofactor) {
            (Some(l), Some(q)) => {
                writeln!(text, "F{}: oracle (bound {}): linear factor {l}, cofactor {q}", v.coordinate, o.bound).unwrap()
            }
            _ => writeln!(text, "F{}: oracle (bound {}): no linear factor", v.coordinate, o.bound).unwrap(),
        }
    }
}

fn write_outcome(text: &mut String, o: &OutcomeRecord) {
    write!(text, "outcome: {}", o.result).unwrap();
    let mut extra = Vec::new();
    if let Some(h) = &o.hypothesis {
        extra.push(h.clone());
    }
    if let Some(k) = o.coordinate {
        extra.push(format!("coordinate {k}"));
    }
    if let Some(r) = &o.residue {
        extra.push(format!("residue {r}"));
    }
    if let Some(s) = &o.summary {
        extra.push(s.clone());
    }
    if !extra.is_empty() {
        write!(text, " ({})", extra.join(", ")).unwrap();
    }
    text.push('\n');
}

fn coordinate_index(c: u64, n: usize) -> Result<usize, Failure> {
    let k = c as usize - 1;
    if k >= n {
        return Err(Failure::input(format!("coordinate {c} out of range for arity {n}")));
    }
    Ok(k)
}

pub fn irreducible(args: &IrreducibleArgs) -> CmdResult {
    let input = read_input(&args.file)?;
    let file = PolyFile::parse(&input.text)?;
    let report = RunReport::new("irreducible", input.digest);
    // (coordinate index, coordinate polynomial, verdict)
    let mut decided = Vec::new();
    if file.lines.len() == 1 {
        let f = file.to_polynomial()?;
        let k = match args.coordinate {
            Some(c) => coordinate_index(c, f.arity())?,
            None => match coordinate_shape(&f) {
                Ok((k, _)) => k,
                Err(e) => return violation(report, e),
            },
        };
        match decide_polynomial_coordinate(&f, k) {
            Ok(v) => decided.push((f, v)),
            Err(e) => return violation(report, e),
        }
    } else {
        let map = file.to_map()?;
        let data = match check_yagzhev_form(&map) {
            Ok(data) => data,
            Err(e) => return violation(report, e),
        };
        let ks: Vec<usize> = match args.coordinate {
            Some(c) => vec![coordinate_index(c, map.arity())?],
            None => (0..map.arity()).collect(),
        };
        for k in ks {
            decided.push((data.coordinate(k), decide_coordinate(&data, k)?));
        }
    }

    let mut report = report;
    let mut text = String::new();
    for (f, v) in decided {
        let mut record = VerdictRecord::new(&v);
        if let Some(bound) = args.bound {
            let found = oracle_factor_search(&f, bound)?;
            record.oracle = Some(OracleRecord::new(bound, found.as_ref()));
        }
        writeln!(text, "F{} = {}", record.coordinate, print_canonical(&f)).unwrap();
        write_verdict(&mut text, &record);
        report.verdicts.push(record);
    }
    Ok(Run { report, text })
}

pub fn replay(args: &ReplayArgs) -> CmdResult {
    let input = read_input(&args.file)?;
    let map = PolyFile::parse(&input.text)?.to_map()?;
    let mut report = RunReport::new("replay", input.digest);
    let ks: Vec<usize> = match args.coordinate {
        Some(c) => vec![coordinate_index(c, map.arity())?],
        None => (0..map.arity()).collect(),
    };
    let mut text = String::new();
    let mut counterexample = false;
    for k in ks {
        let record = match replay_proof(&map, k) {
            Ok(r) => {
                counterexample |= r.localized().kind == ContradictionKind::QuadraticForcedZero;
                ReplayRecord::from_report(&r, map.arity())
            }
            Err(Error::PreconditionNotMet { coordinate, reason }) => {
                ReplayRecord::precondition_not_met(coordinate, reason)
            }
            Err(e) => return violation(report, e),
        };
        write_replay(&mut text, &record);
        report.replay.push(record);
    }
    let localized = report.replay.iter().filter(|r| !r.contradictions.is_empty()).count();
    let outcome = if counterexample {
        report.exit_status = EXIT_COUNTEREXAMPLE;
        OutcomeRecord::plain("TheoremCounterexample")
    } else if localized > 0 {
        report.exit_status = EXIT_HYPOTHESIS;
        OutcomeRecord {
            summary: Some(format!("{localized} divisible coordinate(s), each with a localized contradiction")),
            ..OutcomeRecord::plain("HypothesisViolation")
        }
    } else {
        OutcomeRecord {
            summary: Some("no coordinate meets the replay precondition".into()),
            ..OutcomeRecord::plain("PreconditionNotMet")
        }
    };
    write_outcome(&mut text, &outcome);
    report.outcome = Some(outcome);
    Ok(Run { report, text })
}

fn write_replay(text: &mut String, r: &ReplayRecord) {
    if let Some(reason) = &r.reason {
        writeln!(text, "coordinate {}: precondition not met ({reason})", r.coordinate).unwrap();
        return;
    }
    writeln!(text, "coordinate {}: divisible, replaying", r.coordinate).unwrap();
    if let Some(c) = &r.checks {
        let det = c.determinant.as_deref().unwrap_or("?");
        let nil = c.nilpotent_hessian.map(yes_no).unwrap_or("?");
        writeln!(text, "  det JF = {det}; nilpotent hessian: {nil}").unwrap();
    }
    for s in &r.steps {
        let mark = if s.passed { "pass" } else { "FAIL" };
        writeln!(text, "  step {} {}: {mark}", s.step, s.name).unwrap();
        for (key, value) in &s.details {
            writeln!(text, "    {key} = {value}").unwrap();
        }
    }
    for c in &r.contradictions {
        writeln!(text, "  contradiction at step {}: {} (residue {})", c.step, c.kind, c.residue).unwrap();
    }
}

fn generated(n: usize, seed: u64, richness: u32, coordinate: Option<usize>) -> Result<Potential, Error> {
    match coordinate {
        Some(k) => generate_divisible_potential(n, k, seed),
        None => generate_isotropic_potential(n, seed, richness),
    }
}

pub fn gen(args: &GenArgs) -> CmdResult {
    let n = args.n as usize;
    let coordinate = args.coordinate.map(|c| coordinate_index(c, n)).transpose()?;
    let params = format!(
        "gen n={} count={} seed={} richness={} coordinate={}",
        args.n,
        args.count,
        args.seed,
        args.richness,
        args.coordinate.map_or("none".into(), |c| c.to_string())
    );
    let mut report = RunReport::new("gen", digest(params.as_bytes()));
    let mut text = String::new();
    for index in 0..args.count {
        let seed = instance_seed(args.seed, index);
        let potential = generated(n, seed, args.richness, coordinate)?;
        let map = map_from_potential(&potential);
        writeln!(text, "# instance {index} seed {seed}").unwrap();
        writeln!(text, "# potential {}", print_canonical(potential.polynomial())).unwrap();
        text.push_str(&format_map(&map));
        report.instances.push(InstanceRecord {
            index,
            seed,
            outcome: None,
            determinant: None,
            nilpotency_index: None,
            potential: Some(print_canonical(potential.polynomial())),
            map: map.coordinates().iter().map(print_canonical).collect(),
        });
    }
    Ok(Run { report, text })
}

struct Checked {
    record: InstanceRecord,
    outcome: TheoremOutcome,
}

fn verify_instance(n: usize, base_seed: u64, richness: u32, index: u64) -> Result<Checked, Error> {
    let seed = instance_seed(base_seed, index);
    let potential = generate_isotropic_potential(n, seed, richness)?;
    let map: PolyMap = map_from_potential(&potential);
    let tr = theorem_check(&map)?;
    let record = InstanceRecord {
        index,
        seed,
        outcome: Some(OutcomeRecord::from_theorem(&tr.outcome).result),
        determinant: tr.jacobian.as_ref().map(|j| print_canonical(&j.determinant(n))),
        nilpotency_index: tr.hessian_nilpotency.as_ref().and_then(|h| h.index),
        potential: None,
        map: Vec::new(),
    };
    Ok(Checked { record, outcome: tr.outcome })
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    let n = args.n as usize;
    let run = |index| verify_instance(n, args.seed, args.richness, index);
    let results: Vec<Result<Checked, Error>> = if args.jobs <= 1 {
        (0..args.count).map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs as usize)
            .build()
            .map_err(|e| Failure::input(format!("cannot start worker pool: {e}")))?;
        // indexed collect keeps instance order
        pool.install(|| (0..args.count).into_par_iter().map(run).collect())
    };
    let checked = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let params = format!("verify n={} count={} seed={} richness={}", args.n, args.count, args.seed, args.richness);
    let mut report = RunReport::new("verify", digest(params.as_bytes()));
    let mut text = format!("{params}\n");
    let mut verified = 0;
    for c in &checked {
        let r = &c.record;
        let outcome = r.outcome.as_deref().unwrap_or("?");
        write!(text, "instance {} seed {}: {outcome}", r.index, r.seed).unwrap();
        if let (Some(det), Some(idx)) = (&r.determinant, r.nilpotency_index) {
            write!(text, " (det {det}, nilpotency index {idx})").unwrap();
        }
        text.push('\n');
        match c.outcome {
            TheoremOutcome::Verified => verified += 1,
            TheoremOutcome::TheoremCounterexample { .. } => report.exit_status = EXIT_COUNTEREXAMPLE,
            TheoremOutcome::HypothesisViolation { .. } => {
                if report.exit_status == EXIT_OK {
                    report.exit_status = EXIT_HYPOTHESIS;
                }
            }
        }
    }
    let summary = format!("{verified}/{} Verified", args.count);
    writeln!(text, "{summary}").unwrap();
    let result = match report.exit_status {
        EXIT_OK => "Verified",
        EXIT_COUNTEREXAMPLE => "TheoremCounterexample",
        _ => "HypothesisViolation",
    };
    report.outcome = Some(OutcomeRecord { summary: Some(summary), ..OutcomeRecord::plain(result) });
    report.instances = checked.into_iter().map(|c| c.record).collect();
    Ok(Run { report, text })
}
