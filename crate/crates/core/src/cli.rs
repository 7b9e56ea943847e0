//! The `norm-lab` command line: configuration, dispatch and artifacts.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

use crate::bisector::trace_symmetric;
use crate::error::{Error, Result};
use crate::norm::{Norm, NormDef};
use crate::report::{to_json, trace_csv, write_atomic, Report};
use crate::svg;
use crate::theorems::{
    classify, lemma_suite, verify_prop_strict, witness_nonstrict_prop, witness_nonstrict_theorem,
    witness_strictconvex_theorem, NormClass, PairCheck, SearchConfig,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_VIOLATION: u8 = 2;
pub const EXIT_SEARCH: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Trace the bisector B(-x, x) to CSV and SVG.
    Trace,
    /// Produce a cross-radius witness (constructive or searched).
    Witness,
    /// Check pairwise unit bisectors, or build the flat-segment witness.
    Verify,
    /// Run the chord-frame property suites.
    Props,
    /// Classify the norm.
    Classify,
}

impl Command {
    fn stem(self) -> &'static str {
        match self {
            Command::Trace => "trace",
            Command::Witness => "witness",
            Command::Verify => "verify",
            Command::Props => "props",
            Command::Classify => "classify",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "norm-lab", version, about = "Bisectors and isosceles orthogonality in normed planes")]
pub struct RunConfig {
    pub command: Command,
    /// JSON norm definition.
    #[arg(long = "norm", value_name = "FILE")]
    pub norm_file: PathBuf,
    /// Radius ratio for `witness`; positive and different from 1.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 8.0)]
    pub t_max: f64,
    /// Points per bisector trace (odd).
    #[arg(long, default_value_t = 201)]
    pub count: usize,
    #[arg(long, default_value_t = 200)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "out", value_name = "DIR", default_value = ".")]
    pub out_dir: PathBuf,
    /// Direction of x for `trace`, in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Chord frames for `props`.
    #[arg(long, default_value_t = 10)]
    pub frames: usize,
    /// Samples per frame for `props`.
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
}

impl RunConfig {
    pub fn new(command: Command, norm_file: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            command,
            norm_file: norm_file.into(),
            lambda: None,
            t_max: 8.0,
            count: 201,
            pairs: 200,
            seed: 0,
            out_dir: out_dir.into(),
            theta: 0.0,
            frames: 10,
            samples: 500,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Precondition(m));
        match (self.command, self.lambda) {
            (Command::Witness, None) => return bad("--lambda is required for witness".into()),
            (Command::Witness, Some(l)) if !(l.is_finite() && l > 0.0) => {
                return bad(format!("lambda must be positive, got {l}"))
            }
            (Command::Witness, Some(1.0)) => return bad("lambda must differ from 1".into()),
            (c, Some(_)) if c != Command::Witness => {
                return bad(format!("--lambda only applies to witness, not {}", c.stem()))
            }
            _ => {}
        }
        if self.count.is_multiple_of(2) || self.count < 3 {
            return bad(format!("count must be odd and at least 3, got {}", self.count));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return bad(format!("t-max must be positive, got {}", self.t_max));
        }
        if !self.theta.is_finite() {
            return bad("theta must be finite".into());
        }
        if self.command == Command::Verify && self.pairs == 0 {
            return bad("pairs must be positive".into());
        }
        if self.command == Command::Props && (self.frames == 0 || self.samples == 0) {
            return bad("frames and samples must be positive".into());
        }
        Ok(())
    }
}

/// What a successful run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: u8,
    pub files: Vec<PathBuf>,
    pub summary: String,
}

/// Exit status for a failed run.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::SearchExhausted(_) => EXIT_SEARCH,
        _ => EXIT_INPUT,
    }
}

fn load_norm(path: &Path) -> Result<(NormDef, Norm)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let def = NormDef::from_json(&text)?;
    let norm = Norm::from_def(&def)?;
    Ok((def, norm))
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    config.validate()?;
    let (def, n) = load_norm(&config.norm_file)?;
    std::fs::create_dir_all(&config.out_dir)?;
    let out = |ext: &str| config.out_dir.join(format!("{}.{ext}", config.command.stem()));
    let classification = classify(&n)?;
    let mut report = Report { norm: def, classification, suites: Vec::new(), witnesses: Vec::new() };
    let mut status = EXIT_OK;
    let summary;

    match config.command {
        Command::Classify => {
            summary = format!(
                "{:?} (parallelogram residual {:e})",
                report.classification.class, report.classification.parallelogram_residual
            );
        }
        Command::Trace => {
            let x = n.unit_point(config.theta);
            let trace = trace_symmetric(&n, x, config.t_max, config.count)?;
            let (csv, svg_path) = (out("csv"), out("svg"));
            write_atomic(&csv, trace_csv(&trace).as_bytes())?;
            write_atomic(&svg_path, svg::render(&n, std::slice::from_ref(&trace)).as_bytes())?;
            let wide = trace.roots.iter().filter(|r| r.width() > 1e-9).count();
            return Ok(Outcome {
                status,
                files: vec![csv, svg_path],
                summary: format!("traced {} lines through x = {:?}; {wide} wide roots", trace.roots.len(), x),
            });
        }
        Command::Witness => {
            let lambda = config.lambda.expect("validated");
            let w = match report.classification.flat_segment {
                Some(_) => witness_nonstrict_theorem(&n, lambda)?,
                None => witness_strictconvex_theorem(&n, lambda, SearchConfig::default())?,
            };
            summary = format!("witness x = {:?}, y = {:?}, z = {:?}", w.x, w.y, w.z);
            report.witnesses.push(w.record());
        }
        Command::Verify => match report.classification.class {
            NormClass::NotStrictlyConvex => {
                let w = witness_nonstrict_prop(&n)?;
                summary = format!("not strictly convex; unit witness z = {:?}", w.z);
                report.witnesses.push(w.record());
            }
            _ => {
                let check =
                    PairCheck { pairs: config.pairs, t_max: config.t_max, count: config.count, seed: config.seed };
                let pr = verify_prop_strict(&n, check)?;
                if !pr.violations.is_empty() {
                    status = EXIT_VIOLATION;
                }
                summary = format!("{} pairs checked, {} violations", pr.pairs_checked, pr.violations.len());
                report.witnesses.extend(pr.violations.iter().map(|w| w.record()));
                report.suites.push(pr.to_suite());
            }
        },
        Command::Props => {
            if report.classification.class == NormClass::NotStrictlyConvex {
                return Err(Error::Precondition("props requires a strictly convex norm".into()));
            }
            let suites = lemma_suite(&n, config.frames, config.samples, config.seed)?;
            let failed: Vec<&str> = suites.iter().filter(|s| !s.passed()).map(|s| s.name.as_str()).collect();
            if !failed.is_empty() {
                status = EXIT_VIOLATION;
                summary = format!("violations in {}", failed.join(", "));
            } else {
                summary = format!("{} suites passed", suites.len());
            }
            report.suites = suites;
        }
    }

    let path = out("json");
    write_atomic(&path, to_json(&report).as_bytes())?;
    Ok(Outcome { status, files: vec![path], summary })
}
