//! Command implementations behind the `relmod` binary.
//!
//! Every command returns an [`Outcome`] instead of exiting, so the binary
//! and the tests share one code path. Exit codes: 0 all checks pass,
//! 1 a mathematical check failed or a certificate was rejected, 2 usage,
//! parse or I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use relmod::certificate::check::{check_certificate_json, CheckError};
use relmod::certificate::file::ComplexFile;
use relmod::certificate::{
    alpha, basis_change, build_certificate, euler_characteristic, splitting_report, Certificate,
};
use relmod::foxcomplex::{apply, chain_composite, d2_matrix, fox_derivative};
use relmod::relmodule::{check_module_identities, check_torsion_relation};
use relmod::sample::random_word;
use relmod::text::parse_word;
use relmod::{Error, Params, RingElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_R: &[u64] = &[2, 3, 5];
pub const DEFAULT_SEED: u64 = 1;
pub const FOX_SAMPLE_WORDS: usize = 1000;
pub const FOX_SAMPLE_MAX_LEN: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: Params,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(r: &[u64]) -> Result<Self, Error> {
        Ok(RunConfig {
            params: Params::new(r.to_vec())?,
            out: None,
            format: Format::Text,
            seed: DEFAULT_SEED,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "relmod",
    version,
    about = "Relation-module generators for free products of C_r x Z"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Comma-separated pairwise coprime orders, each at least 2.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_R.to_vec())]
    r: Vec<u64>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every identity check and report PASS/FAIL per group.
    Verify(CommonArgs),
    /// Emit the generation certificate as JSON.
    Certificate(CommonArgs),
    /// Independently re-check a certificate file.
    CheckCert {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export d1, d2, d3', the basis change and the Euler characteristic.
    Complex(CommonArgs),
    /// Print the normal form of a word in G.
    Normalize {
        word: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

impl CommonArgs {
    fn config(self) -> Result<RunConfig, Outcome> {
        let params = Params::new(self.r).map_err(|e| Outcome::usage(format!("usage error: {e}")))?;
        Ok(RunConfig {
            params,
            out: self.out,
            format: self.format,
            seed: self.seed,
        })
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::usage(text)
            };
        }
    };
    let with_config = |common: CommonArgs, f: &dyn Fn(&RunConfig) -> Outcome| match common.config() {
        Ok(cfg) => f(&cfg),
        Err(outcome) => outcome,
    };
    match cli.command {
        Command::Verify(c) => with_config(c, &cmd_verify),
        Command::Certificate(c) => with_config(c, &cmd_certificate),
        Command::CheckCert { path, format } => cmd_check_cert(&path, format),
        Command::Complex(c) => with_config(c, &cmd_complex),
        Command::Normalize { word, common } => with_config(common, &|cfg| cmd_normalize(&word, cfg)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: &'static str,
    pub anchor: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub r: Vec<u64>,
    pub seed: u64,
    pub checks: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let r: Vec<String> = self.r.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "relmod verify r=({}) seed={}", r.join(","), self.seed);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIPPED",
            };
            let _ = writeln!(out, "{status:<8} {:<28} {}  [{}]", c.name, c.detail, c.anchor);
        }
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        let _ = writeln!(
            out,
            "{} check groups: {} passed, {} failed, {} skipped",
            self.checks.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped)
        );
        out
    }
}

fn line(name: &'static str, anchor: &'static str, ok: bool, detail: String) -> CheckLine {
    CheckLine {
        name,
        anchor,
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn skipped(name: &'static str, anchor: &'static str) -> CheckLine {
    CheckLine {
        name,
        anchor,
        status: Status::Skipped,
        detail: "n < 2".into(),
    }
}

fn per_index<F>(params: &Params, f: F) -> (bool, String)
where
    F: Fn(usize) -> relmod::Result<bool>,
{
    let failed: Vec<String> = (1..=params.n())
        .filter(|&i| !f(i).unwrap_or(false))
        .map(|i| i.to_string())
        .collect();
    if failed.is_empty() {
        (true, format!("i=1..{}", params.n()))
    } else {
        (false, format!("failed for i={}", failed.join(",")))
    }
}

/// Fox identity `Σ_x (x^-1 - 1) star(∂w/∂x) = star(w) - 1` on seeded words.
pub fn fox_identity_sample(params: &Params, seed: u64, count: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = RingElement::one();
    (0..count)
        .filter(|_| {
            let w = random_word(&mut rng, params, FOX_SAMPLE_MAX_LEN);
            let lhs: RingElement = params
                .generators()
                .map(|x| {
                    let x_inv = RingElement::from_group(params.generator_power(x, &(-1).into()));
                    let dx = fox_derivative(&w, x, params).expect("valid word").star(params);
                    (&x_inv - &one).mul(&dx, params)
                })
                .sum();
            let rhs = &RingElement::from_group(params.project(&w).expect("valid word")).star(params) - &one;
            lhs != rhs
        })
        .count()
}

pub fn verify_report(cfg: &RunConfig) -> VerifyReport {
    let p = &cfg.params;
    let n = p.n();
    let mut checks = Vec::new();

    let (ok, detail) = per_index(p, |i| Ok(p.verify_free_identities(i)?.all()));
    checks.push(line(
        "free-group identities",
        "Π_j a_i^-j R_i a_i^j = (a_i^-1 R_i)^r_i a_i^r_i = b_i S_i^-1 b_i^-1 S_i; a_i^-1 S_i^-1 a_i S_i = e",
        ok,
        detail,
    ));
    let (ok, detail) = per_index(p, |i| Ok(p.check_ring_identities(i)?.all()));
    checks.push(line(
        "group-ring identities",
        "(1-a_i)Σ_i = 0, Σ_i^2 = Σ_i r_i, (1-a_i)Γ_i = Σ_i - r_i",
        ok,
        detail,
    ));
    let (ok, detail) = per_index(p, |i| Ok(check_module_identities(i, p)?.all()));
    checks.push(line(
        "relation-module identities",
        "D_i Σ_i = E_i(1-b_i^-1), E_i(1-a_i) = 0",
        ok,
        detail,
    ));
    let (ok, detail) = per_index(p, |i| Ok(check_torsion_relation(i, p)?.all()));
    checks.push(line(
        "X_i w_i = D_i r_i^2",
        "(E_i + D_i(1-a_i))((1-b_i^-1)Σ_i + (Σ_i-r_i)Γ_i) = D_i r_i^2, four expanded terms",
        ok,
        detail,
    ));
    let ok = chain_composite(p).iter().all(RingElement::is_zero);
    checks.push(line(
        "chain condition",
        "d1 ∘ d2 = 0",
        ok,
        format!("{} basis vectors", 2 * n),
    ));
    let bad = fox_identity_sample(p, cfg.seed, FOX_SAMPLE_WORDS);
    checks.push(line(
        "Fox fundamental identity",
        "Σ_x (x^-1 - 1) star(∂w/∂x) = star(w) - 1",
        bad == 0,
        format!("{} words, {} mismatches", FOX_SAMPLE_WORDS, bad),
    ));

    let cert_anchor = "X_1..X_{n+1} generate M via CRT on r_j^2";
    let cert = match build_certificate(p) {
        Ok(cert) => match cert.check() {
            Ok(rep) => {
                checks.push(line(
                    "generation certificate",
                    cert_anchor,
                    true,
                    format!("built and re-checked ({} identities)", rep.verified.len()),
                ));
                Some(cert)
            }
            Err(e) => {
                checks.push(line("generation certificate", cert_anchor, false, e.to_string()));
                None
            }
        },
        Err(e) => {
            checks.push(line("generation certificate", cert_anchor, false, e.to_string()));
            None
        }
    };

    let alpha_anchor = "α_i = D̂_i - Σ_k X̂_k λ_ki ∈ ker d2";
    let basis_anchor = "α_1..α_{n-1}, X̂_1..X̂_{n+1} is a basis of C_2";
    let split_anchor = "d3' identifies C_3 with the summand A";
    if n < 2 {
        checks.push(skipped("alpha kernel", alpha_anchor));
        checks.push(skipped("basis change", basis_anchor));
        checks.push(skipped("splitting", split_anchor));
    } else if let Some(cert) = &cert {
        checks.push(alpha_line(cert, alpha_anchor));
        checks.push(match basis_change(cert) {
            Ok(bc) => line(
                "basis change",
                basis_anchor,
                true,
                format!(
                    "P·Q = Q·P = I ({}x{}), {} row operations",
                    bc.p.height(),
                    bc.p.width(),
                    bc.ops.len()
                ),
            ),
            Err(e) => line("basis change", basis_anchor, false, e.to_string()),
        });
        checks.push(match splitting_report(cert) {
            Ok(rep) => line(
                "splitting",
                split_anchor,
                rep.all(),
                format!(
                    "d2∘d3' = 0: {}, inclusion: {}, ranks {}+{}={}",
                    rep.boundary_vanishes, rep.inclusion_onto_first, rep.alpha_rank, rep.x_rank, rep.total_rank
                ),
            ),
            Err(e) => line("splitting", split_anchor, false, e.to_string()),
        });
    } else {
        for (name, anchor) in [
            ("alpha kernel", alpha_anchor),
            ("basis change", basis_anchor),
            ("splitting", split_anchor),
        ] {
            checks.push(line(name, anchor, false, "no certificate".into()));
        }
    }

    let chi = euler_characteristic(n);
    checks.push(line(
        "Euler characteristic",
        "1 - 2n + 2n - (n-1) = 2 - n",
        chi == 2 - n as i64,
        format!("χ = {chi}"),
    ));

    VerifyReport {
        r: p.r().to_vec(),
        seed: cfg.seed,
        checks,
    }
}

fn alpha_line(cert: &Certificate, anchor: &'static str) -> CheckLine {
    let p = &cert.params;
    let d2 = d2_matrix(p);
    let failed: Vec<String> = (1..p.n())
        .filter(|&i| {
            alpha(i, cert)
                .and_then(|a| apply(&d2, &a.coords, p))
                .map(|v| !v.is_zero())
                .unwrap_or(true)
        })
        .map(|i| i.to_string())
        .collect();
    let detail = if failed.is_empty() {
        format!("i=1..{}", p.n() - 1)
    } else {
        format!("failed for i={}", failed.join(","))
    };
    line("alpha kernel", anchor, failed.is_empty(), detail)
}

pub fn cmd_verify(cfg: &RunConfig) -> Outcome {
    let report = verify_report(cfg);
    let code = if report.passed() { EXIT_OK } else { EXIT_FALSIFIED };
    let stdout = match cfg.format {
        Format::Text => report.to_text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
    };
    emit(cfg.out.as_deref(), stdout, code)
}

fn emit(out: Option<&Path>, body: String, code: i32) -> Outcome {
    match out {
        None => Outcome {
            code,
            stdout: body,
            stderr: String::new(),
        },
        Some(path) => match std::fs::write(path, body) {
            Ok(()) => Outcome {
                code,
                stdout: format!("wrote {}\n", path.display()),
                stderr: String::new(),
            },
            Err(e) => Outcome::usage(format!("cannot write {}: {e}", path.display())),
        },
    }
}

pub fn cmd_certificate(cfg: &RunConfig) -> Outcome {
    match build_certificate(&cfg.params) {
        Ok(cert) => emit(cfg.out.as_deref(), cert.to_json(), EXIT_OK),
        Err(e) => Outcome {
            code: EXIT_FALSIFIED,
            stdout: String::new(),
            stderr: e.to_string(),
        },
    }
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    accepted: bool,
    verified: Vec<String>,
    failed_identity: Option<&'a str>,
    detail: Option<String>,
}

pub fn cmd_check_cert(path: &Path, format: Format) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("cannot read {}: {e}", path.display())),
    };
    let result = check_certificate_json(&text);
    let (code, output) = match &result {
        Ok(rep) => (
            EXIT_OK,
            CheckOutput {
                accepted: true,
                verified: rep.verified.clone(),
                failed_identity: None,
                detail: None,
            },
        ),
        Err(CheckError::Rejected(r)) => (
            EXIT_FALSIFIED,
            CheckOutput {
                accepted: false,
                verified: Vec::new(),
                failed_identity: Some(&r.identity),
                detail: Some(r.detail.clone()),
            },
        ),
        Err(CheckError::Malformed(e)) => return Outcome::usage(format!("{}: {e}", path.display())),
    };
    let stdout = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&output).expect("serializes");
            s.push('\n');
            s
        }
        Format::Text => match &result {
            Ok(rep) => format!(
                "ACCEPTED {} ({} identities verified)\n",
                path.display(),
                rep.verified.len()
            ),
            Err(e) => format!("REJECTED {}: {}\n", path.display(), e),
        },
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

pub fn cmd_complex(cfg: &RunConfig) -> Outcome {
    match build_certificate(&cfg.params).and_then(|c| ComplexFile::build(&c)) {
        Ok(cx) => emit(cfg.out.as_deref(), cx.to_json(), EXIT_OK),
        Err(e) => Outcome {
            code: EXIT_FALSIFIED,
            stdout: String::new(),
            stderr: e.to_string(),
        },
    }
}

pub fn cmd_normalize(word: &str, cfg: &RunConfig) -> Outcome {
    let parsed = parse_word(word, &cfg.params).and_then(|w| cfg.params.project(&w));
    match parsed {
        Ok(g) => {
            let body = match cfg.format {
                Format::Text => format!("{g}\n"),
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({ "input": word, "normal_form": g.to_string() })
                ),
            };
            emit(cfg.out.as_deref(), body, EXIT_OK)
        }
        Err(e) => Outcome::usage(e.to_string()),
    }
}
