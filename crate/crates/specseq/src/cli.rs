//! Command-line driver: datum loading, command dispatch, report
//! emission, exit codes (0 success/VALID, 2 verdict failure, 1 error).

use std::collections::BTreeMap;
use std::path::Path;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::builders::{
    build_contraction_pages, build_divisor_pages, build_isolated_pages, build_log_pages,
    ConePages, DivisorPages, E1Page, LogPages,
};
use crate::bundled::heisenberg_control;
use crate::cdga::{purity_check, PurityReport};
use crate::datum::{builtin, parse_datum, print_datum, DatumFile, DatumKind, BUILTIN_NAMES};
use crate::formality::{
    purity_witness_e1, rho_witness_e1, semi_purity_check, triple_massey, FormalityError,
    PurityVerdict, Shape,
};
use crate::linalg::SparseVec;
use crate::pages::{ring_page, FinitePage, RingPage};
use crate::report::Report;
use crate::scalar::q1;
use crate::sullivan::{minimal_model, SullivanError};

#[derive(Parser)]
#[command(name = "specseq", version, about = "Weight spectral sequences, formality witnesses, and weight-graded rational homotopy over exact rationals")]
struct Cli {
    /// Emit the JSON report on stdout instead of the text rendering.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// First-page dimension table (finite and polynomial-form routes).
    E1 { datum: String },
    /// First- and second-page dimension tables.
    E2 { datum: String },
    /// Weight table with purity and semi-purity verdicts.
    Weights { datum: String },
    /// Multiplicative-section and purity witnesses.
    Formality {
        /// Hypothesis family: surface | smooth-divisor | connected-link | contraction.
        #[arg(long)]
        shape: Option<String>,
        /// Also require purity through degree R (r-formality).
        #[arg(short)]
        r: Option<i64>,
        datum: String,
    },
    /// Weight-graded rational homotopy via a minimal Sullivan model.
    Homotopy {
        #[arg(long, default_value_t = 7)]
        max_degree: i64,
        datum: String,
    },
    /// Triple Massey product of three cohomology classes.
    Massey {
        /// Comma-separated class names from the second-page basis.
        #[arg(long)]
        classes: String,
        datum: String,
    },
    /// Run every bundled golden and cross-check.
    Selftest,
}

enum Built {
    Cone(ConePages),
    Div(DivisorPages),
    Log(LogPages),
}

impl Built {
    fn e1_dims(&self) -> BTreeMap<(i64, i64), usize> {
        match self {
            Built::Cone(p) => p.e1_dims.clone(),
            Built::Div(p) => p.e1_dims.clone(),
            Built::Log(p) => p.e1.cell_dims(),
        }
    }

    fn e2(&self) -> &RingPage {
        match self {
            Built::Cone(p) => &p.e2,
            Built::Div(p) => &p.e2,
            Built::Log(p) => &p.e2,
        }
    }

    fn weight_table(&self) -> &BTreeMap<(i64, i64), usize> {
        match self {
            Built::Cone(p) => &p.table,
            Built::Div(p) => &p.table,
            Built::Log(p) => &p.table,
        }
    }

    fn purity(&self) -> PurityReport {
        match self {
            Built::Cone(p) => p.purity.clone(),
            Built::Div(p) => purity_check(&p.e2.cdga),
            Built::Log(p) => purity_check(&p.e2.cdga),
        }
    }
}

#[derive(Debug)]
enum CliError {
    /// Hard error: bad input, parse failure, broken invariant (exit 1).
    Error(String),
}

fn err(msg: impl Into<String>) -> CliError {
    CliError::Error(msg.into())
}

fn load(datum: &str) -> Result<DatumFile, CliError> {
    if Path::new(datum).exists() {
        let text = std::fs::read_to_string(datum)
            .map_err(|e| err(format!("cannot read `{datum}`: {e}")))?;
        return parse_datum(&text).map_err(|e| err(format!("{datum}: {e}")));
    }
    builtin(datum).ok_or_else(|| {
        err(format!(
            "`{datum}` is neither a file nor a bundled datum (bundled: {})",
            BUILTIN_NAMES.join(", ")
        ))
    })
}

fn build(file: &DatumFile) -> Result<Built, CliError> {
    let res = match file.kind {
        DatumKind::Variety(Shape::Contraction) => build_contraction_pages(&file.datum).map(Built::Cone),
        DatumKind::Variety(_) => build_isolated_pages(&file.datum).map(Built::Cone),
        DatumKind::Divisor => build_divisor_pages(&file.datum).map(Built::Div),
        DatumKind::Log => build_log_pages(&file.datum).map(Built::Log),
    };
    res.map_err(|e| err(e.to_string()))
}

fn cmd_e1(name: &str, file: &DatumFile) -> Result<Report, CliError> {
    let built = build(file)?;
    let mut r = Report::new("e1", name);
    r.table("e1", "E1 dimensions", &built.e1_dims(), "q", "p");
    r.line("finite and polynomial-form routes agree (reconciled during the build)");
    Ok(r)
}

fn cmd_e2(name: &str, file: &DatumFile) -> Result<Report, CliError> {
    let built = build(file)?;
    let mut r = Report::new("e2", name);
    r.table("e1", "E1 dimensions", &built.e1_dims(), "q", "p");
    r.table("e2", "E2 dimensions", &built.e2().cdga.cell_dims(), "q", "p");
    Ok(r)
}

fn cmd_weights(name: &str, file: &DatumFile) -> Result<Report, CliError> {
    let built = build(file)?;
    let mut r = Report::new("weights", name);
    r.table("weights", "Gr^W_m H^k dimensions", built.weight_table(), "m", "k");
    let purity = built.purity();
    r.set("purity", serde_json::to_value(&purity).unwrap());
    r.line(format!("purity: pure through degree {}", purity.pure_through));
    for (k, m, d) in &purity.impure_cells {
        r.line(format!("  impure cell: Gr^W_{m} H^{k} has dimension {d}"));
    }
    if let DatumKind::Variety(_) = file.kind {
        let semi = semi_purity_check(&built.e2().cdga, file.datum.n);
        r.set(
            "semi_purity",
            json!({ "holds": semi.holds, "failures": semi.failures }),
        );
        if semi.holds {
            r.line("semi-purity: OK");
        } else {
            for (k, m, d) in &semi.failures {
                r.line(format!("  semi-purity fails at (k={k}, m={m}), dimension {d}"));
            }
            r.line("semi-purity: FAIL (non-algebraic obstruction)");
            r.exit = 2;
        }
    }
    Ok(r)
}

fn cone_pages(built: &Built) -> Result<&ConePages, CliError> {
    match built {
        Built::Cone(p) => Ok(p),
        _ => Err(err("this command applies to projective variety data (surface, smooth-divisor, connected-link, contraction shapes)")),
    }
}

fn cmd_formality(
    name: &str,
    file: &DatumFile,
    shape_flag: Option<&str>,
    r_bound: Option<i64>,
) -> Result<Report, CliError> {
    let shape = match shape_flag {
        Some(s) => Shape::parse(s).ok_or_else(|| err(format!("unknown shape `{s}`")))?,
        None => match file.kind {
            DatumKind::Variety(s) => s,
            _ => return Err(err("--shape is required for non-variety data")),
        },
    };
    let built = build(file)?;
    let pages = cone_pages(&built)?;
    let mut r = Report::new("formality", name);
    r.set("shape", json!(shape.name()));

    let mut verdict_ok = true;
    match rho_witness_e1(&pages.e1, shape) {
        Ok(rho) => {
            let w = &rho.witness;
            let pairs = w.residual_zero.len();
            let zero = w.residual_zero.values().filter(|z| **z).count();
            r.set(
                "rho_witness",
                json!({
                    "valid": w.valid,
                    "pairs_checked": pairs,
                    "zero_residuals": zero,
                    "offending_pair": w.offending_pair,
                }),
            );
            r.line(format!(
                "rho witness ({}): {} ({zero}/{pairs} zero multiplicativity residuals)",
                shape.name(),
                if w.valid { "VALID" } else { "INVALID" }
            ));
            verdict_ok &= w.valid;
        }
        Err(FormalityError::ShapeHypothesisViolation(msg)) => {
            r.set("rho_witness", json!({ "valid": false, "shape_violation": msg }));
            r.line(format!("rho witness ({}): shape hypothesis violated: {msg}", shape.name()));
            verdict_ok = false;
        }
        Err(e) => return Err(err(e.to_string())),
    }

    match purity_witness_e1(&pages.e1, r_bound) {
        Ok(p) => {
            let formal = matches!(p.verdict, PurityVerdict::RFormal);
            r.set(
                "purity_witness",
                json!({
                    "pure_through": p.pure_through,
                    "r_formal": formal,
                    "counterexample": match &p.verdict {
                        PurityVerdict::RFormal => None,
                        PurityVerdict::Counterexample { cell } => Some(*cell),
                    },
                    "phi_valid": p.phi.valid,
                    "psi_valid": p.psi.valid,
                }),
            );
            match (&p.verdict, r_bound) {
                (PurityVerdict::RFormal, Some(b)) => {
                    r.line(format!("purity witness: {b}-formal (pure through degree {})", p.pure_through));
                }
                (PurityVerdict::RFormal, None) => {
                    r.line(format!("purity witness: formal (pure through degree {})", p.pure_through));
                }
                (PurityVerdict::Counterexample { cell: (k, m) }, _) => {
                    r.line(format!(
                        "purity witness: pure through degree {} only (impure cell Gr^W_{m} H^{k})",
                        p.pure_through
                    ));
                    if r_bound.is_some() {
                        verdict_ok = false;
                    }
                }
            }
        }
        Err(e) => return Err(err(e.to_string())),
    }

    r.set("verdict", json!(if verdict_ok { "VALID" } else { "INVALID" }));
    r.line(if verdict_ok { "verdict: VALID" } else { "verdict: INVALID" });
    if !verdict_ok {
        r.exit = 2;
    }
    Ok(r)
}

fn cmd_homotopy(name: &str, file: &DatumFile, max_degree: i64) -> Result<Report, CliError> {
    let built = build(file)?;
    let target = &built.e2().cdga;
    let model = minimal_model(target, max_degree).map_err(|e| match e {
        SullivanError::NotSimplyConnected => err("target is not simply connected; no Sullivan model"),
        other => err(other.to_string()),
    })?;
    let mut r = Report::new("homotopy", name);
    r.table(
        "homotopy",
        &format!("dim Gr^W_m pi_k for k <= {max_degree}"),
        &model.homotopy_table(),
        "m",
        "k",
    );
    r.set("max_degree", json!(max_degree));
    r.set("quasi_iso", json!(model.quasi_iso.ok));
    r.line(format!("degrees >= {max_degree}: not computed (bound reached)"));
    Ok(r)
}

/// Page-and-ring pair for Massey evaluation, including the bundled
/// Heisenberg control algebra.
fn massey_on<T: crate::pages::Contracted>(
    page: &T,
    ring: &RingPage,
    names: &[&str],
    r: &mut Report,
) -> Result<bool, CliError> {
    let mut classes: Vec<SparseVec> = vec![];
    for n in names {
        let idx = ring
            .cdga
            .basis
            .iter()
            .position(|b| b.name == *n)
            .ok_or_else(|| {
                let avail: Vec<&str> =
                    ring.cdga.basis.iter().map(|b| b.name.as_str()).collect();
                err(format!("unknown class `{n}`; available: {}", avail.join(", ")))
            })?;
        classes.push([(idx, q1())].into_iter().collect());
    }
    let res = triple_massey(page, ring, &classes[0], &classes[1], &classes[2]).map_err(|e| match e {
        FormalityError::ProductNotZero(msg) => err(format!("triple not admissible: {msg}")),
        other => err(other.to_string()),
    })?;
    let rep: Vec<(usize, String)> =
        res.rep_class.iter().map(|(i, c)| (*i, c.to_string())).collect();
    r.set(
        "massey",
        json!({
            "representative_class": rep,
            "indeterminacy_dim": res.indeterminacy.len(),
            "contains_zero": res.contains_zero,
        }),
    );
    r.line(format!(
        "triple Massey product: {} (indeterminacy dimension {})",
        if res.contains_zero { "contains zero" } else { "does NOT contain zero" },
        res.indeterminacy.len()
    ));
    Ok(res.contains_zero)
}

/// Split class names on commas that are not inside brackets (basis
/// names such as `E2[1,2]#0` contain commas of their own).
fn split_classes(spec: &str) -> Vec<&str> {
    let mut out = vec![];
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in spec.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(spec[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(spec[start..].trim());
    out
}

fn cmd_massey(name: &str, classes: &str) -> Result<Report, CliError> {
    let names: Vec<&str> = split_classes(classes);
    if names.len() != 3 {
        return Err(err("--classes takes exactly three comma-separated names"));
    }
    let mut r = Report::new("massey", name);
    let vanishes = if name == "heisenberg" {
        let h = heisenberg_control();
        let page = FinitePage(&h);
        let ring = ring_page(&page, "H", (1, 0));
        massey_on(&page, &ring, &names, &mut r)?
    } else {
        let file = load(name)?;
        let built = build(&file)?;
        let pages = cone_pages(&built)?;
        match &pages.e1 {
            E1Page::Pure(c) => {
                let page = FinitePage(c);
                massey_on(&page, &pages.e2, &names, &mut r)?
            }
            E1Page::Cone(cp) => massey_on(cp, &pages.e2, &names, &mut r)?,
        }
    };
    if !vanishes {
        r.exit = 2;
    }
    Ok(r)
}

fn cmd_selftest() -> Result<Report, CliError> {
    let mut r = Report::new("selftest", "bundled");
    let mut failures = 0usize;
    let mut check = |r: &mut Report, what: &str, ok: bool| {
        r.line(format!("{}: {what}", if ok { "ok" } else { "FAIL" }));
        if !ok {
            failures += 1;
        }
    };

    // Every bundled datum parses, round-trips, and builds cleanly.
    for name in BUILTIN_NAMES {
        let file = builtin(name).unwrap();
        let text = print_datum(&file, None);
        let round = parse_datum(&text).map(|f| print_datum(&f, None)) == Ok(text);
        check(&mut r, &format!("{name} round-trips"), round);
        check(&mut r, &format!("{name} builds"), build(&file).is_ok());
    }

    // Witness goldens.
    let witness_golden = |n: &str| -> bool {
        let file = builtin(n).unwrap();
        let built = match build(&file) {
            Ok(b) => b,
            Err(_) => return false,
        };
        let pages = match cone_pages(&built) {
            Ok(p) => p,
            Err(_) => return false,
        };
        let shape = match file.kind {
            DatumKind::Variety(s) => s,
            _ => return false,
        };
        match rho_witness_e1(&pages.e1, shape) {
            Ok(rho) => rho.witness.valid && rho.witness.residual_zero.values().all(|z| *z),
            Err(_) => false,
        }
    };
    for name in ["nodal_curve:3,4,1", "segre", "cone_over_curve:2,1", "two_lines_cp2"] {
        check(&mut r, &format!("{name} rho witness VALID, zero residuals"), witness_golden(name));
    }

    // Purity and semi-purity facts.
    let cone = builtin("cone_over_curve:2,1").unwrap();
    let cone_formal = build(&cone).ok().and_then(|b| {
        let p = cone_pages(&b).ok()?.clone_purity();
        Some(p)
    });
    check(
        &mut r,
        "cone_over_curve:2,1 purity witness certifies formality",
        cone_formal == Some(true),
    );
    let two = builtin("two_lines_cp2").unwrap();
    let semi_fails = build(&two)
        .ok()
        .and_then(|b| {
            let p = cone_pages(&b).ok()?;
            Some(semi_purity_check(&p.e2.cdga, two.datum.n).failures == vec![(3, 2, 1)])
        })
        .unwrap_or(false);
    check(&mut r, "two_lines_cp2 semi-purity fails exactly at (3, 2)", semi_fails);
    let segre_semi = builtin("segre")
        .and_then(|f| build(&f).ok().map(|b| (f, b)))
        .map(|(f, b)| semi_purity_check(&b.e2().cdga, f.datum.n).holds)
        .unwrap_or(false);
    check(&mut r, "segre semi-purity holds", segre_semi);

    // Log-complement sanity: P¹ minus 3 points has H¹ = Q² in weight 2.
    let log_ok = builtin("punctured_line:3")
        .and_then(|f| build(&f).ok())
        .map(|b| {
            let t = b.weight_table();
            t.get(&(0, 0)) == Some(&1) && t.get(&(1, 2)) == Some(&2)
        })
        .unwrap_or(false);
    check(&mut r, "punctured_line:3 reproduces H*(C* x ...) weights", log_ok);

    // Massey control: the Heisenberg triple does not vanish.
    let h = heisenberg_control();
    let page = FinitePage(&h);
    let ring = ring_page(&page, "H", (1, 0));
    let a = ring.cdga.basis.iter().position(|b| b.name.contains("#0") && b.degree() == 1);
    let massey_ok = match a {
        Some(ia) => {
            let ib = ring
                .cdga
                .basis
                .iter()
                .position(|b| b.degree() == 1 && ring.cdga.basis.iter().position(|x| x.name == b.name) != Some(ia))
                .unwrap_or(ia);
            let va: SparseVec = [(ia, q1())].into_iter().collect();
            let vb: SparseVec = [(ib, q1())].into_iter().collect();
            triple_massey(&page, &ring, &va, &va, &vb)
                .map(|m| !m.contains_zero)
                .unwrap_or(false)
        }
        None => false,
    };
    check(&mut r, "heisenberg triple Massey product does not vanish", massey_ok);

    r.set("failures", json!(failures));
    if failures > 0 {
        r.line(format!("selftest: {failures} failure(s)"));
        r.exit = 2;
    } else {
        r.line("selftest: all goldens pass");
    }
    Ok(r)
}

impl ConePages {
    fn clone_purity(&self) -> bool {
        matches!(
            purity_witness_e1(&self.e1, None).map(|p| p.verdict),
            Ok(PurityVerdict::RFormal)
        )
    }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match &cli.cmd {
        Cmd::E1 { datum } => cmd_e1(datum, &load(datum)?),
        Cmd::E2 { datum } => cmd_e2(datum, &load(datum)?),
        Cmd::Weights { datum } => cmd_weights(datum, &load(datum)?),
        Cmd::Formality { shape, r, datum } => {
            cmd_formality(datum, &load(datum)?, shape.as_deref(), *r)
        }
        Cmd::Homotopy { max_degree, datum } => cmd_homotopy(datum, &load(datum)?, *max_degree),
        Cmd::Massey { classes, datum } => cmd_massey(datum, classes),
        Cmd::Selftest => cmd_selftest(),
    }
}

/// Entry point for the `specseq` binary.
pub fn cli_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report.json).unwrap());
            } else {
                print!("{}", report.text);
            }
            report.exit
        }
        Err(CliError::Error(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_named(cmd: Cmd) -> Result<Report, CliError> {
        run(Cli { json: false, cmd })
    }

    #[test]
    fn formality_on_the_cone_is_valid() {
        let r = run_named(Cmd::Formality {
            shape: Some("smooth-divisor".into()),
            r: None,
            datum: "cone_over_curve:2,1".into(),
        })
        .unwrap();
        assert_eq!(r.exit, 0);
        assert_eq!(r.json["verdict"], json!("VALID"));
        assert!(r.text.contains("VALID"));
    }

    #[test]
    fn weights_on_two_lines_flags_semi_purity() {
        let r = run_named(Cmd::Weights { datum: "two_lines_cp2".into() }).unwrap();
        assert_eq!(r.exit, 2);
        assert!(r.text.contains("semi-purity: FAIL (non-algebraic obstruction)"));
        assert!(r.text.contains("Gr^W"));
        // Gr^W_2 H^3 is the impure, weight-drop cell.
        assert_eq!(r.json["semi_purity"]["failures"], json!([[3, 2, 1]]));
    }

    #[test]
    fn e2_on_segre_reports_both_tables() {
        let r = run_named(Cmd::E2 { datum: "segre".into() }).unwrap();
        assert_eq!(r.exit, 0);
        assert!(r.json["e1"].is_array() && r.json["e2"].is_array());
        let e2 = r.json["e2"].as_array().unwrap();
        assert!(e2.contains(&json!([1, 2, 5])));
        assert!(e2.contains(&json!([0, 4, 6])));
    }

    #[test]
    fn homotopy_on_the_two_lines_matches_the_model() {
        let r = run_named(Cmd::Homotopy { max_degree: 7, datum: "two_lines_cp2".into() }).unwrap();
        assert_eq!(r.exit, 0);
        let t = r.json["homotopy"].as_array().unwrap();
        assert!(t.contains(&json!([3, 2, 1])));
        assert!(t.contains(&json!([4, 4, 1])));
        assert!(r.text.contains("not computed"));
    }

    #[test]
    fn massey_control_returns_verdict_failure() {
        let h = heisenberg_control();
        let page = FinitePage(&h);
        let ring = ring_page(&page, "H", (1, 0));
        let names: Vec<String> = ring.cdga.basis.iter().map(|b| b.name.clone()).collect();
        // Degree-1 classes: [a], [b].
        let deg1: Vec<&str> = ring
            .cdga
            .basis
            .iter()
            .filter(|b| b.degree() == 1)
            .map(|b| b.name.as_str())
            .collect();
        assert_eq!(deg1.len(), 2, "basis: {names:?}");
        let spec = format!("{},{},{}", deg1[0], deg1[0], deg1[1]);
        let r = run_named(Cmd::Massey { classes: spec, datum: "heisenberg".into() }).unwrap();
        assert_eq!(r.exit, 2);
        assert_eq!(r.json["massey"]["contains_zero"], json!(false));
    }

    #[test]
    fn selftest_passes() {
        let r = run_named(Cmd::Selftest).unwrap();
        assert_eq!(r.exit, 0, "selftest output:\n{}", r.text);
    }

    #[test]
    fn errors_map_to_exit_one_material() {
        assert!(matches!(
            run_named(Cmd::E1 { datum: "no_such_datum".into() }),
            Err(CliError::Error(_))
        ));
    }
}
