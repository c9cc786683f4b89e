//! Command-line front end: build and verify groups, run the parameter search,
//! regenerate tables and check identity suites.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value as Json};

use chtg::cosearch::{run_suite, search, IdentitySuite, SearchConfig};
use chtg::exact::{AComplex, Cyclo, DEFAULT_PREC};
use chtg::linalg::{classify_isometry, classify_isometry_exact, eigenvalues3, projective_order, Mat3};
use chtg::reports::{
    check_claims, closed_forms, detH_closed_form, find_closed_form, signature_csv, signature_scan, signature_text,
    theorem_table, CandidateId,
};
use chtg::trigroup::{
    build_symmetric, evaluate_word, evaluate_word_exact, eigen_relation_residual, trace_invariants, verify_symmetry,
    BraidReport, Group, Word,
};
use chtg::Error;

#[derive(Parser)]
#[command(name = "chtg", version, about = "Symmetric complex hyperbolic triangle groups, exactly")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct RunArgs {
    /// Working precision in bits.
    #[arg(long, global = true, env = "CHTG_PREC", default_value_t = DEFAULT_PREC)]
    prec: usize,
    /// Residual tolerance is 10^-TOL.
    #[arg(long, global = true, default_value_t = 30)]
    tol: i32,
    #[arg(long, global = true, default_value_t = 24)]
    max_braid: u32,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone, Copy)]
struct GroupArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    im_sign: i8,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a symmetric group and print its matrices.
    Build(GroupArgs),
    /// Check the symmetry relations, traces, braid lengths and eigenvalues.
    Verify {
        #[command(flatten)]
        g: GroupArgs,
        /// Scan `p ..= p_max` instead of a single `p`.
        #[arg(long)]
        p_max: Option<u32>,
    },
    /// Search the trace equations for `(n, m)` solutions.
    Search {
        #[arg(long, default_value_t = 90)]
        den_max: u32,
        #[arg(long, default_value_t = 12)]
        m_max: u32,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        /// Evaluate every pair exactly instead of prefiltering in f64.
        #[arg(long)]
        audit: bool,
    },
    /// Signature tables, determinant closed forms, stated claims, parameter table.
    Tables {
        #[arg(long, value_enum, default_value_t = TableKind::Signature)]
        kind: TableKind,
        /// Candidates such as `3,4` or `3,5*`; all when absent.
        #[arg(long = "candidate")]
        candidates: Vec<String>,
        #[arg(long, default_value_t = 2)]
        p_min: u32,
        #[arg(long, default_value_t = 12)]
        p_max: u32,
        /// `k` for the diagonal rows.
        #[arg(long, default_value_t = 5)]
        k: u32,
    },
    /// Check an identity suite exactly.
    Identities {
        /// monaghan, solutions, lemma-nm, half-angle or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 60)]
        den_max: i64,
    },
    /// Evaluate a word in the generators and classify it.
    Classify {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 200)]
        max_order: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Signature,
    ClosedForm,
    Claims,
    Theorem,
}

/// Why a command did not succeed.
enum Fail {
    Check(String),
    Usage(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

type Out = Box<dyn Write>;

struct Ctx {
    run: RunArgs,
    out: Out,
    stop: Arc<AtomicBool>,
}

impl Ctx {
    fn tol(&self) -> f64 {
        10f64.powi(-self.run.tol)
    }

    fn line(&mut self, v: &impl Serialize) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, v)?;
        self.out.write_all(b"\n")
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::SeqCst)
    }
}

fn num(z: &AComplex) -> Json {
    let (re, im) = z.to_decimal(30);
    json!({ "re": re, "im": im })
}

fn entry(x: Option<&Cyclo>, z: &AComplex) -> Json {
    let mut v = num(z);
    if let Some(x) = x {
        v["exact"] = json!(x.to_string());
    }
    v
}

fn matrix(x: Option<&Mat3<Cyclo>>, f: &Mat3<AComplex>) -> Json {
    let rows: Vec<Json> =
        (0..3).map(|i| Json::Array((0..3).map(|j| entry(x.map(|x| x.get(i, j)), f.get(i, j))).collect())).collect();
    Json::Array(rows)
}

fn group(ctx: &Ctx, a: GroupArgs) -> Result<Group, Fail> {
    Ok(build_symmetric(a.p, a.n, a.m, a.im_sign, ctx.run.prec)?)
}

fn cmd_build(ctx: &mut Ctx, a: GroupArgs) -> Result<(), Fail> {
    let g = group(ctx, a)?;
    let prec = g.prec();
    let x = g.exact.as_ref();
    let f = &g.float;
    let s = f.s.as_ref().expect("symmetric group");
    let tr_s = x.and_then(|x| x.s.as_ref()).map(|s| s.trace());
    let v = json!({
        "p": a.p, "n": a.n, "m": a.m, "im_sign": a.im_sign,
        "exact": g.is_exact(),
        "rho": entry(g.params.rho.exact(), &g.params.rho.to_float(prec)),
        "sigma": entry(g.params.sigma.exact(), &g.params.sigma.to_float(prec)),
        "tau": entry(g.params.tau.exact(), &g.params.tau.to_float(prec)),
        "R1": matrix(x.map(|x| &x.r1), &f.r1),
        "R2": matrix(x.map(|x| &x.r2), &f.r2),
        "R3": matrix(x.map(|x| &x.r3), &f.r3),
        "H": matrix(x.map(|x| &x.h), &f.h),
        "S": matrix(x.and_then(|x| x.s.as_ref()), s),
        "trace_S": entry(tr_s.as_ref(), &s.trace()),
        "signature": g.signature,
        "verdict": g.signature.verdict(),
        "warning": g.warning,
    });
    match ctx.run.format {
        Format::Json => ctx.line(&v)?,
        _ => {
            let w = &mut ctx.out;
            writeln!(w, "(p, n, m) = ({}, {}, {})  im_sign {}", a.p, a.n, a.m, a.im_sign)?;
            writeln!(w, "rho   = {}", g.params.rho.to_float(prec))?;
            writeln!(w, "sigma = {}", g.params.sigma.to_float(prec))?;
            writeln!(w, "tr S  = {}", s.trace())?;
            writeln!(w, "signature {} -> {}", g.signature, g.signature.verdict())?;
            if let Some(msg) = &g.warning {
                writeln!(w, "warning: {msg}")?;
            }
        }
    }
    Ok(())
}

fn verify_one(ctx: &mut Ctx, a: GroupArgs, failures: &mut Vec<String>) -> Result<(), Fail> {
    let g = group(ctx, a)?;
    let tol = ctx.tol();
    let p = a.p;
    let sym = verify_symmetry(&g, tol)?;
    for c in sym.identities.iter().chain(&sym.vectors) {
        ctx.line(&json!({ "kind": "identity", "p": p, "name": c.name, "residual": c.residual, "exact": c.exact, "pass": c.pass }))?;
        if !c.pass {
            failures.push(format!("p={p} {}: residual {:e}", c.name, c.residual));
        }
    }
    match trace_invariants(&g, tol) {
        Ok(t) => ctx.line(&json!({ "kind": "traces", "p": p, "residual": t.residual, "exact": t.exact, "pass": true }))?,
        Err(e) => {
            ctx.line(&json!({ "kind": "traces", "p": p, "error": e.to_string(), "pass": false }))?;
            failures.push(format!("p={p} traces: {e}"));
        }
    }
    let br = BraidReport::compute(&g, ctx.run.max_braid, tol);
    let want = [Some(a.n), Some(a.n), Some(a.m), Some(a.m)];
    let hyperbolic = g.signature.verdict() == "(2,1)";
    let braid_ok = !hyperbolic || br.as_tuple() == want;
    ctx.line(&json!({
        "kind": "braid", "p": p, "lengths": br.to_string(), "expected": format!("({},{},{};{})", a.n, a.n, a.m, a.m),
        "checked": hyperbolic, "pass": braid_ok,
    }))?;
    if !braid_ok {
        failures.push(format!("p={p} braid lengths {br}"));
    }
    let lemma = eigen_relation_residual(&g, tol)?;
    ctx.line(&json!({ "kind": "eigenvalues", "p": p, "residual": lemma, "pass": lemma <= tol }))?;
    if lemma > tol {
        failures.push(format!("p={p} eigenvalues of R1R2: residual {lemma:e}"));
    }
    ctx.line(&json!({ "kind": "signature", "p": p, "verdict": g.signature.verdict(), "warning": g.warning }))?;
    Ok(())
}

fn cmd_verify(ctx: &mut Ctx, a: GroupArgs, p_max: Option<u32>) -> Result<(), Fail> {
    let mut failures = Vec::new();
    let last = p_max.unwrap_or(a.p).max(a.p);
    let mut done = 0;
    for p in a.p..=last {
        if ctx.stopped() {
            break;
        }
        verify_one(ctx, GroupArgs { p, ..a }, &mut failures)?;
        done += 1;
    }
    let complete = done == last - a.p + 1;
    let status = if !complete { "incomplete" } else if failures.is_empty() { "pass" } else { "fail" };
    ctx.line(&json!({ "kind": "summary", "status": status, "groups": done, "failures": failures.len(), "first_failure": failures.first() }))?;
    match failures.first() {
        Some(f) => Err(Fail::Check(f.clone())),
        None if !complete => Err(Fail::Check("interrupted".into())),
        None => Ok(()),
    }
}

fn cmd_search(ctx: &mut Ctx, den_max: u32, m_max: u32, n_max: u32, audit: bool) -> Result<(), Fail> {
    let cfg = SearchConfig { m_max, n_max, den_max, audit, workers: ctx.run.workers, ..SearchConfig::default() };
    let stop = ctx.stop.clone();
    let outcome = search(&cfg, Some(&stop))?;
    match ctx.run.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut ctx.out, &outcome.candidates).map_err(io::Error::from)?;
            ctx.out.write_all(b"\n")?;
        }
        _ => {
            for c in &outcome.candidates {
                writeln!(ctx.out, "({},{})  a = {:?}  b = {:?}  confirmed {}  feasible {}", c.n, c.m, c.a, c.b, c.exact_confirmed, c.parameter_feasible)?;
            }
        }
    }
    let summary = json!({
        "kind": "summary",
        "status": if outcome.cancelled { "incomplete" } else { "complete" },
        "angles": outcome.angles, "pairs_scanned": outcome.pairs_scanned,
        "prefilter_hits": outcome.prefilter_hits, "refuted": outcome.refuted,
        "candidates": outcome.candidates.len(),
        "nm": outcome.nm_pairs(),
    });
    eprintln!("{summary}");
    if outcome.cancelled {
        return Err(Fail::Check("interrupted".into()));
    }
    Ok(())
}

fn candidates(list: &[String]) -> Result<Vec<CandidateId>, Fail> {
    if list.is_empty() {
        let mut all = Vec::new();
        for (n, m) in [(3, 3), (3, 4), (3, 5), (4, 3), (4, 4), (5, 4), (5, 5), (8, 6)] {
            for conj in [false, true] {
                all.push(CandidateId::new(n, m, conj)?);
            }
        }
        return Ok(all);
    }
    list.iter().map(|s| s.parse::<CandidateId>().map_err(Fail::from)).collect()
}

fn cmd_tables(ctx: &mut Ctx, kind: TableKind, list: &[String], p_min: u32, p_max: u32, k: u32) -> Result<(), Fail> {
    match kind {
        TableKind::Signature => {
            let reports = candidates(list)?
                .into_iter()
                .map(|c| signature_scan(c, p_min, p_max))
                .collect::<Result<Vec<_>, _>>()?;
            match ctx.run.format {
                Format::Csv => ctx.out.write_all(signature_csv(&reports).as_bytes())?,
                Format::Text => ctx.out.write_all(signature_text(&reports).as_bytes())?,
                Format::Json => {
                    for r in &reports {
                        ctx.line(r)?;
                    }
                }
            }
            Ok(())
        }
        TableKind::ClosedForm => {
            let forms = if list.is_empty() {
                closed_forms(k)
            } else {
                list.iter().map(|id| find_closed_form(id)).collect::<Result<Vec<_>, _>>()?
            };
            let mut first = None;
            if ctx.run.format == Format::Csv {
                writeln!(ctx.out, "form,p,closed_form,matrix_det,agree")?;
            }
            for f in &forms {
                for p in p_min..=p_max {
                    let c = detH_closed_form(f, p)?;
                    if !c.agree && first.is_none() {
                        first = Some(format!("closed form {} at p={p}: {} vs det {}", c.id, c.closed_form, c.matrix_det));
                    }
                    match ctx.run.format {
                        Format::Json => ctx.line(&json!({ "kind": "closed-form", "quote": f.quote, "comparison": c }))?,
                        Format::Csv => writeln!(ctx.out, "\"{}\",{},{},{},{}", c.id, p, c.closed_form, c.matrix_det, c.agree)?,
                        Format::Text => writeln!(ctx.out, "{:<6} {:>3}  {:<40} {:<40} {}", c.id, p, c.closed_form, c.matrix_det, if c.agree { "agree" } else { "DIFFER" })?,
                    }
                }
            }
            first.map_or(Ok(()), |f| Err(Fail::Check(f)))
        }
        TableKind::Claims => {
            let checks = check_claims(p_min, p_max)?;
            let mismatches: Vec<_> = checks.iter().filter(|c| !c.matches).collect();
            for c in &checks {
                match ctx.run.format {
                    Format::Json => ctx.line(c)?,
                    _ => writeln!(ctx.out, "{:<8} {:<8} p={:<3} stated {:<11} exact {:<11} {}", c.candidate.to_string(), c.source, c.p, c.expected, c.got, if c.matches { "ok" } else { "MISMATCH" })?,
                }
            }
            for c in &mismatches {
                eprintln!("mismatch {} p={} ({}): stated {} but exact {}; source text: {}", c.candidate, c.p, c.source, c.expected, c.got, c.quote);
            }
            match mismatches.first() {
                Some(c) => Err(Fail::Check(format!("{} p={}: stated {}, exact {}", c.candidate, c.p, c.expected, c.got))),
                None => Ok(()),
            }
        }
        TableKind::Theorem => {
            let rows = theorem_table(k)?;
            for r in &rows {
                match ctx.run.format {
                    Format::Json => ctx.line(r)?,
                    _ => writeln!(ctx.out, "({},{})  rho = {}  s = {}  sigma = {}  {}", r.n, r.m, r.rho, r.s, r.sigma, if r.pass() { "ok" } else { "FAIL" })?,
                }
            }
            match rows.iter().find(|r| !r.pass()) {
                Some(r) => Err(Fail::Check(format!("parameter table row ({},{})", r.n, r.m))),
                None => Ok(()),
            }
        }
    }
}

fn cmd_identities(ctx: &mut Ctx, suite: &str, trials: usize, den_max: i64) -> Result<(), Fail> {
    let suites: Vec<IdentitySuite> =
        if suite == "all" { IdentitySuite::ALL.to_vec() } else { vec![suite.parse::<IdentitySuite>()?] };
    let mut total = 0;
    let mut failed = Vec::new();
    for s in suites {
        if ctx.stopped() {
            break;
        }
        for r in run_suite(s, trials, den_max, ctx.run.seed)? {
            total += 1;
            if !r.pass {
                failed.push(format!("{}/{}", r.suite, r.id));
            }
            match ctx.run.format {
                Format::Json => ctx.line(&r)?,
                _ => writeln!(ctx.out, "{}/{} phi={:?} psi={:?} {}", r.suite, r.id, r.phi, r.psi, if r.pass { "pass" } else { "FAIL" })?,
            }
        }
    }
    let status = if ctx.stopped() { "incomplete" } else if failed.is_empty() { "pass" } else { "fail" };
    ctx.line(&json!({ "kind": "summary", "status": status, "checked": total, "failures": failed.len(), "first_failure": failed.first() }))?;
    match failed.first() {
        Some(f) => Err(Fail::Check(format!("identity {f} failed"))),
        None => Ok(()),
    }
}

fn cmd_classify(ctx: &mut Ctx, a: GroupArgs, word: &str, max_order: u32) -> Result<(), Fail> {
    let g = group(ctx, a)?;
    let w: Word = word.parse()?;
    let m = evaluate_word(&g, &w);
    let tol = ctx.tol();
    let exact = evaluate_word_exact(&g, &w);
    let kind = match &exact {
        Some(x) => classify_isometry_exact(&x.trace())?,
        None => classify_isometry(&m.trace(), tol),
    };
    let order = match &exact {
        Some(x) => projective_order(x, max_order, 0.0),
        None => projective_order(&m, max_order, tol),
    };
    let eig: Vec<Json> = eigenvalues3(&m, g.prec()).iter().map(num).collect();
    let lemma = if w.letters() == [1, 2] { Some(eigen_relation_residual(&g, tol)?) } else { None };
    let v = json!({
        "word": w.to_string(), "p": a.p, "n": a.n, "m": a.m,
        "trace": entry(exact.as_ref().map(|x| x.trace()).as_ref(), &m.trace()),
        "type": kind, "projective_order": order, "eigenvalues": eig,
        "eigen_residual": lemma, "eigen_pass": lemma.map(|r| r <= tol),
    });
    match ctx.run.format {
        Format::Json => ctx.line(&v)?,
        _ => writeln!(ctx.out, "{} : {} order {:?} lemma {:?}", w, kind, order, lemma)?,
    }
    match lemma {
        Some(r) if r > tol => Err(Fail::Check(format!("eigenvalues of R1R2 off by {r:e}"))),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), Fail> {
    let r = &cli.run;
    if r.prec < 53 {
        return Err(Fail::Usage(format!("precision must be at least 53 bits, got {}", r.prec)));
    }
    if r.tol < 6 {
        return Err(Fail::Usage(format!("tolerance exponent must be at least 6, got {}", r.tol)));
    }
    if r.workers == Some(0) {
        return Err(Fail::Usage("worker count must be at least 1".into()));
    }
    let out: Out = match &r.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let stop = Arc::new(AtomicBool::new(false));
    let flag = stop.clone();
    // A second handler install fails harmlessly (e.g. in tests); interruption is then just unavailable.
    let _ = ctrlc::set_handler(move || flag.store(true, Ordering::SeqCst));
    let mut ctx = Ctx { run: cli.run, out, stop };
    let res = match &cli.cmd {
        Cmd::Build(a) => cmd_build(&mut ctx, *a),
        Cmd::Verify { g, p_max } => cmd_verify(&mut ctx, *g, *p_max),
        Cmd::Search { den_max, m_max, n_max, audit } => cmd_search(&mut ctx, *den_max, *m_max, *n_max, *audit),
        Cmd::Tables { kind, candidates, p_min, p_max, k } => cmd_tables(&mut ctx, *kind, candidates, *p_min, *p_max, *k),
        Cmd::Identities { suite, trials, den_max } => cmd_identities(&mut ctx, suite, *trials, *den_max),
        Cmd::Classify { g, word, max_order } => cmd_classify(&mut ctx, *g, word, *max_order),
    };
    ctx.out.flush()?;
    res
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
