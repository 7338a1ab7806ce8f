//! Command dispatch for the `schemeforge` binary. [`run_command`] is pure
//! apart from file and stdin access, so tests drive it directly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use schemeforge_core::exact::to_f64;
use schemeforge_core::minpoly::{hoffman_from_parts, minimal_polynomial};
use schemeforge_core::predistance::{predistance_basis, verify_hoffman_sum};
use schemeforge_core::report::{
    AnalysisReport, ClassificationReport, DecompositionReport, HoffmanReport, IdempotentSection,
    PerronSection, PredistanceReport, SchemeReport, SpectrumReport,
};
use schemeforge_core::scheme::detect_scheme;
use schemeforge_core::spectral::{
    idempotents, perron_check, roots, DEFAULT_CHECK_TOL, DEFAULT_ITER_TOL, DEFAULT_MAX_ITER,
};
use schemeforge_core::stochastic::{classify, entry_decomposition, random_lambda_ds, random_normal_lambda_ds};
use schemeforge_core::{parse_matrix, serialize_matrix, RationalMatrix};

pub const SEED_ENV: &str = "SCHEMEFORGE_SEED";
pub const DEFAULT_SEED: u64 = 20_240_601;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "schemeforge", version, about = "Exact Hoffman polynomials, predistance bases and association scheme detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the matrix: nonnegativity, line sums, normality, irreducibility.
    Analyze(Input),
    /// Minimal and Hoffman polynomials.
    Hoffman(Input),
    /// Predistance polynomials p_0..p_d.
    Predistance(Input),
    /// Decide whether the matrix generates a commutative association scheme.
    Scheme(Input),
    /// Split the matrix by distinct entry values.
    Decompose(Input),
    /// Numeric eigenvalues, Perron check and idempotent residuals.
    Spectrum {
        #[command(flatten)]
        input: Input,
        /// Iteration tolerance for the root finder.
        #[arg(long, default_value_t = DEFAULT_ITER_TOL)]
        tol: f64,
        /// Tolerance for the numeric invariant checks.
        #[arg(long, default_value_t = DEFAULT_CHECK_TOL)]
        check_tol: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
    },
    /// Write a random λ-doubly stochastic matrix Σ c_i P_i.
    Gen {
        /// Order of the matrix.
        n: usize,
        /// Number of permutation terms.
        k: usize,
        /// Overrides SCHEMEFORGE_SEED and the built-in default.
        #[arg(long)]
        seed: Option<u64>,
        /// Use powers of a single permutation, giving a normal matrix.
        #[arg(long)]
        normal: bool,
        /// Output file; stdout when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Input {
    /// Matrix file, or `-` for stdin.
    file: PathBuf,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn input_error(message: String) -> Self {
        Self { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Analyze(input) => with_matrix(&input, analyze),
        Command::Hoffman(input) => with_matrix(&input, hoffman),
        Command::Predistance(input) => with_matrix(&input, predistance),
        Command::Scheme(input) => with_matrix(&input, scheme),
        Command::Decompose(input) => with_matrix(&input, decompose),
        Command::Spectrum { input, tol, check_tol, max_iter } => {
            with_matrix(&input, |b, json| spectrum(b, json, tol, check_tol, max_iter))
        }
        Command::Gen { n, k, seed, normal, out } => gen(n, k, seed, normal, out.as_deref()),
    }
}

pub fn read_matrix(path: &Path) -> Result<RationalMatrix, String> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| format!("stdin: {e}"))?
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    parse_matrix(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn with_matrix(input: &Input, f: impl FnOnce(&RationalMatrix, bool) -> (i32, String)) -> Outcome {
    match read_matrix(&input.file) {
        Ok(b) => {
            let (code, stdout) = f(&b, input.json);
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(message) => Outcome::input_error(message),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

fn classification_text(c: &ClassificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "order: {}", c.order);
    let _ = writeln!(out, "nonnegative: {}", yes_no(c.nonnegative));
    let _ = writeln!(out, "line sum λ: {}", c.lambda.as_deref().unwrap_or("none (row/column sums differ)"));
    let _ = writeln!(out, "λ-doubly stochastic: {}", yes_no(c.lambda_doubly_stochastic));
    let _ = writeln!(out, "irreducible: {}", yes_no(c.irreducible));
    let _ = writeln!(out, "normal: {}", yes_no(c.normal));
    out
}

fn analyze(b: &RationalMatrix, json: bool) -> (i32, String) {
    let class = classify(b);
    let report = ClassificationReport::from(&class);
    let code = if class.check_hoffman_hypotheses().is_ok() { EXIT_OK } else { EXIT_REJECTED };
    let text = if json {
        to_json(&AnalysisReport { classification: Some(report), ..Default::default() })
    } else {
        classification_text(&report)
    };
    (code, text)
}

fn failure(report: AnalysisReport, json: bool, message: String) -> (i32, String) {
    if json {
        (EXIT_REJECTED, to_json(&AnalysisReport { error: Some(message), ..report }))
    } else {
        (EXIT_REJECTED, format!("{message}\n"))
    }
}

fn hoffman(b: &RationalMatrix, json: bool) -> (i32, String) {
    let class = classify(b);
    let base = AnalysisReport { classification: Some((&class).into()), ..Default::default() };
    let minimal = minimal_polynomial(b);
    let hp = match hoffman_from_parts(b, &class, &minimal) {
        Ok(hp) => hp,
        Err(e) => return failure(base, json, e.to_string()),
    };
    let report = HoffmanReport::from(&hp);
    if json {
        return (EXIT_OK, to_json(&AnalysisReport { hoffman: Some(report), ..base }));
    }
    let mut out = String::new();
    let _ = writeln!(out, "λ = {}", report.lambda);
    let _ = writeln!(out, "minimal polynomial m(t) = {}", hp.minimal);
    let _ = writeln!(out, "q(t) = m(t)/(t - λ) = {}", hp.q);
    let _ = writeln!(out, "h(t) = {}", hp.h);
    let _ = writeln!(out, "h coefficients (ascending): {}", report.h.join(" "));
    let _ = writeln!(out, "h(B) = J: verified exactly");
    (EXIT_OK, out)
}

fn predistance(b: &RationalMatrix, json: bool) -> (i32, String) {
    let class = classify(b);
    let base = AnalysisReport { classification: Some((&class).into()), ..Default::default() };
    let basis = match predistance_basis(b) {
        Ok(basis) => basis,
        Err(e) => return failure(base, json, e.to_string()),
    };
    let sum_ok = verify_hoffman_sum(&basis, b);
    let report = PredistanceReport::new(&basis, sum_ok);
    let code = if sum_ok { EXIT_OK } else { EXIT_REJECTED };
    if json {
        return (code, to_json(&AnalysisReport { predistance: Some(report), ..base }));
    }
    let mut out = String::new();
    let _ = writeln!(out, "λ = {}, d = {}", report.lambda, report.d);
    for (i, (p, norm)) in basis.polys.iter().zip(&basis.norms_sq).enumerate() {
        let _ = writeln!(out, "p_{i}(t) = {p}    ‖p_{i}‖² = p_{i}(λ) = {norm}");
    }
    let _ = writeln!(out, "Σ p_i = h = {}", basis.hoffman);
    let _ = writeln!(out, "Σ p_i(B) = J: {}", if sum_ok { "verified exactly" } else { "FAILED" });
    (code, out)
}

fn grid_text(grid: &[Vec<u8>]) -> String {
    grid.iter().map(|row| row.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn scheme(b: &RationalMatrix, json: bool) -> (i32, String) {
    let cert = detect_scheme(b);
    let report = SchemeReport::from(&cert);
    let code = if cert.accepted() { EXIT_OK } else { EXIT_REJECTED };
    if json {
        return (code, to_json(&report));
    }
    let mut out = String::new();
    match &report.reason {
        None => {
            let _ = writeln!(out, "accepted: {}-class commutative association scheme", report.diameter.unwrap_or(0));
        }
        Some(reason) => {
            let _ = writeln!(out, "rejected: {reason}");
        }
    }
    if let Some(l) = &report.lambda {
        let _ = writeln!(out, "λ = {l}");
    }
    if let (Some(d), Some(diameter)) = (report.d, report.diameter) {
        let _ = writeln!(out, "d = {d}, D = {diameter}");
    }
    if let Some(h) = &cert.hoffman {
        let _ = writeln!(out, "h(t) = {h}");
    }
    for (i, p) in cert.generator_polynomials.iter().enumerate() {
        let _ = writeln!(out, "p_{i}(t) = {p}");
    }
    if let (Some(tensor), Some(map)) = (&report.intersection_numbers, &report.transpose_map) {
        let _ = writeln!(out, "transpose map: {map:?}");
        for (i, grid) in report.classes.iter().enumerate() {
            let _ = writeln!(out, "A_{i}:\n{}", grid_text(grid));
        }
        let _ = writeln!(out, "intersection numbers p^h_ij (row i, column j, entries h = 0..D):");
        for (i, row) in tensor.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|hs| format!("({})", hs.join(","))).collect();
            let _ = writeln!(out, "  i={i}: {}", cells.join(" "));
        }
    }
    (code, out)
}

fn decompose(b: &RationalMatrix, json: bool) -> (i32, String) {
    let report = DecompositionReport::from(&entry_decomposition(b));
    if json {
        return (EXIT_OK, to_json(&AnalysisReport { decomposition: Some(report), ..Default::default() }));
    }
    let mut out = format!("{} distinct nonzero entries\n", report.coefficients.len());
    for (c, grid) in report.coefficients.iter().zip(&report.indicators) {
        let _ = writeln!(out, "value {c}:\n{}", grid_text(grid));
    }
    (EXIT_OK, out)
}

fn complex_text(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.12}", z.re)
    } else {
        format!("{:.12} {} {:.12}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
    }
}

fn spectrum(b: &RationalMatrix, json: bool, tol: f64, check_tol: f64, max_iter: usize) -> (i32, String) {
    let minimal = minimal_polynomial(b);
    let class = classify(b);
    let mut spec = match roots(minimal.poly(), tol, max_iter) {
        Ok(s) => s,
        Err(e) => return failure(AnalysisReport::default(), json, e.to_string()),
    };
    let lambda = class.check_hoffman_hypotheses().ok();
    if let Some(l) = &lambda {
        spec = spec.perron_first(to_f64(l));
    }
    let mut report = SpectrumReport::new(&spec);
    let perron = lambda.as_ref().map(|l| perron_check(b, l, &spec, check_tol));
    report.perron = perron.as_ref().map(PerronSection::from);
    match idempotents(b, &spec, check_tol) {
        Ok(family) => report.idempotents = Some(IdempotentSection::new(&family, family.power_identity_residual(b, 3))),
        Err(e) => report.idempotent_error = Some(e.to_string()),
    }
    let code = if perron.as_ref().is_none_or(|p| p.passed()) { EXIT_OK } else { EXIT_REJECTED };
    if json {
        return (code, to_json(&AnalysisReport { spectrum: Some(report), ..Default::default() }));
    }
    let mut out = String::new();
    let _ = writeln!(out, "minimal polynomial m(t) = {}", minimal.poly());
    let _ = writeln!(out, "eigenvalues (residual |m(μ)|/‖m‖):");
    for (z, r) in spec.eigenvalues.iter().zip(&spec.residuals) {
        let _ = writeln!(out, "  {}    {r:.2e}", complex_text(*z));
    }
    if let Some(p) = &report.perron {
        let _ = writeln!(
            out,
            "Perron: λ = {} eigenvalue {}, dominant {}, simple {}, B·1 = λ·1 {}",
            p.lambda,
            yes_no(p.lambda_is_eigenvalue),
            yes_no(p.lambda_is_dominant),
            yes_no(p.lambda_is_simple),
            yes_no(p.ones_is_eigenvector)
        );
    }
    match (&report.idempotents, &report.idempotent_error) {
        (Some(r), _) => {
            let _ = writeln!(out, "idempotent residuals (max entry):");
            let _ = writeln!(out, "  E_i E_j - δ_ij E_i: {:.2e}", r.orthogonality);
            let _ = writeln!(out, "  Σ E_i - I:          {:.2e}", r.completeness);
            let _ = writeln!(out, "  B - Σ λ_i E_i:      {:.2e}", r.reconstruction);
            let _ = writeln!(out, "  E_i* - E_i:         {:.2e}", r.hermitian);
            let _ = writeln!(out, "  B^h - Σ λ_i^h E_i:  {:.2e} (h ≤ 3)", r.power_identity);
        }
        (None, Some(e)) => {
            let _ = writeln!(out, "idempotents unavailable: {e}");
        }
        (None, None) => {}
    }
    (code, out)
}

/// Seed precedence: explicit flag, then `SCHEMEFORGE_SEED`, then [`DEFAULT_SEED`].
pub fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{SEED_ENV}={v} is not an unsigned 64-bit integer")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn gen(n: usize, k: usize, seed: Option<u64>, normal: bool, out: Option<&Path>) -> Outcome {
    if n == 0 || k == 0 {
        return Outcome::input_error("gen needs n ≥ 1 and k ≥ 1".into());
    }
    let seed = match resolve_seed(seed) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(e),
    };
    let b = if normal { random_normal_lambda_ds(n, k, seed) } else { random_lambda_ds(n, k, seed) };
    let kind = if normal { "normal " } else { "" };
    let text = format!("# random {kind}λ-doubly stochastic, n={n} k={k} seed={seed}\n{}", serialize_matrix(&b));
    match out {
        None => Outcome::ok(text),
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome::ok(format!("wrote {}\n", path.display())),
            Err(e) => Outcome::input_error(format!("{}: {e}", path.display())),
        },
    }
}
