//! Randomized checks of every identity in the catalog, per backend.

pub mod catalog;
pub mod evaluate;
pub mod generators;
pub mod refine;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Dendriform, SingularQuasiShuffle};
use crate::error::{Error, Result};
use crate::linear::{int, LinComb};
use crate::prelie::{brace, flavored, iota, star, Flavor, FlavorShuffle};
use crate::process::{Grid, JumpPattern, PathAlgebra, PathKind};
use crate::rota_baxter::{rb_to_quasi_shuffle, NilpotentMultiplier, RBStructure, RotaBaxterOperator, Scaled, Summation};
use crate::words::{Word, WordAlgebra};

pub use catalog::{find, resolve, CheckSpec, Group, CATALOG, OUT_OF_SCOPE};
pub use evaluate::eval_generic;
pub use generators::{path_triple, rb_triple, small_poly, trial_seed, word_triple, PathFamily};
pub use refine::{measure, refinement_study, RefinementRow, RefinementTable, ASYMPTOTIC_IDS};

/// Grid size for process-backend trials.
pub const SUITE_STEPS: usize = 256;
/// Sequence length and matrix size for the Rota–Baxter backend.
pub const RB_LEN: usize = 16;
pub const RB_DIM: usize = 3;
/// Default grids for asymptotic checks.
pub const DEFAULT_REFINE: [usize; 3] = [256, 1024, 4096];
pub const KARANDIKAR_TOL: f64 = 1e-12;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Words over `(ℤ₊, +)`, bracket counted as jump.
    Words,
    /// Words in the strictly upper-triangular `3×3` matrix units; continuous,
    /// non-commutative bracket whose triple fusions vanish.
    WordsRegular,
    /// Pure-jump matrix paths.
    Jump,
    /// Jump-free matrix paths.
    Continuous,
    /// Paths with both parts.
    Mixed,
    /// Matrix sequences under the summation operator.
    Rb,
}

impl Backend {
    pub const ALL: [Backend; 6] = [Backend::Words, Backend::WordsRegular, Backend::Jump, Backend::Continuous, Backend::Mixed, Backend::Rb];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Words => "words",
            Backend::WordsRegular => "words-regular",
            Backend::Jump => "jump",
            Backend::Continuous => "continuous",
            Backend::Mixed => "mixed",
            Backend::Rb => "rb",
        }
    }

    fn exact(self) -> bool {
        matches!(self, Backend::Words | Backend::WordsRegular)
    }

    fn refine_kind(self) -> Option<PathKind> {
        match self {
            Backend::Continuous => Some(PathKind::Brownian),
            Backend::Mixed => Some(PathKind::Mixed),
            _ => None,
        }
    }

    /// How check `c` runs on this backend.
    pub fn class_of(self, c: &CheckSpec, tol: Option<f64>) -> Class {
        use Backend::*;
        let float = Class::ExactFloat(tol.unwrap_or(if c.group == Group::Karandikar { KARANDIKAR_TOL } else { DEFAULT_TOL }));
        let ok = if self.exact() { Class::ExactRational } else { float };
        let na = |why: &str| Class::NotApplicable(why.to_string());
        match c.id {
            "S19" if matches!(self, Continuous | Mixed) => Class::Asymptotic,
            "REGULAR" => match self {
                WordsRegular => ok,
                Continuous => Class::Asymptotic,
                _ => na("backend is not regular"),
            },
            "SH27" | "SH28" | "SH29" => match self {
                WordsRegular | Continuous => ok,
                _ => na("needs a jump-free regular backend"),
            },
            "PRELIE-STRAT" | "COMM-STRAT" => match self {
                WordsRegular => ok,
                _ => na("Stratonovich pre-Lie relation needs a regular backend"),
            },
            "BRACE-SYM" | "OG-ASSOC" | "IOTA-MORPH" => match self {
                Words | WordsRegular => ok,
                _ => na("needs a word backend"),
            },
            "RB13" | "RB-ASSOC" => match self {
                Rb => ok,
                _ => na("needs the rb backend"),
            },
            _ => ok,
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Backend::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown backend `{s}` (expected words, words-regular, jump, continuous, mixed or rb)")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Class {
    ExactRational,
    ExactFloat(f64),
    Asymptotic,
    NotApplicable(String),
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub backend: Backend,
    pub catalog: String,
    pub seed: u64,
    pub trials: usize,
    pub tol: Option<f64>,
    pub refine: Option<Vec<usize>>,
    pub refine_seeds: Option<usize>,
}

impl SuiteConfig {
    pub fn new(backend: Backend) -> Self {
        SuiteConfig { backend, catalog: "all".into(), seed: 0, trials: 100, tol: None, refine: None, refine_seeds: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub paper_ref: String,
    pub class: String,
    pub max_residual: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_trial: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refinement: Option<Vec<RefinementRow>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub backend: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl AxiomReport {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// `id,class,max_residual,pass` rows.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "class", "max_residual", "pass"])?;
        for c in &self.checks {
            w.write_record([c.id.clone(), c.class.clone(), format!("{:.16e}", c.max_residual), c.pass.to_string()])?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))
    }
}

fn class_label(c: &Class, ks: &[usize], seeds: usize) -> String {
    match c {
        Class::ExactRational => "EXACT_RATIONAL".into(),
        Class::ExactFloat(t) => format!("EXACT_FLOAT({t:e})"),
        Class::Asymptotic => format!("ASYMPTOTIC(K={};seeds={seeds})", ks.iter().join(",")),
        Class::NotApplicable(_) => "SKIPPED".into(),
    }
}

type TrialResiduals = Vec<f64>;

fn run_trials<F>(trials: usize, ids: &[&'static str], eval: F) -> Result<Vec<TrialResiduals>>
where
    F: Fn(u64, &[&'static str]) -> Result<TrialResiduals> + Sync,
{
    (0..trials as u64).into_par_iter().map(|t| eval(t, ids)).collect()
}

fn generic<B: SingularQuasiShuffle>(b: &B, id: &str, t: &[B::Elem; 3]) -> Result<f64> {
    eval_generic(b, id, t)?.ok_or_else(|| Error::UnknownCheckId(id.to_string()))
}

fn word_checks<M>(b: &WordAlgebra<M>, flavor: Flavor, max_letter: u32, seed: u64, trial: u64, ids: &[&'static str]) -> Result<TrialResiduals>
where
    M: crate::words::LetterMonoid,
{
    let t = word_triple(seed, trial, max_letter, 4);
    ids.iter()
        .map(|&id| match id {
            "BRACE-SYM" => brace_symmetry(b, flavor, seed, trial, max_letter),
            "OG-ASSOC" | "IOTA-MORPH" => {
                let p = flavored(b, flavor);
                let [a, bb, c] = [0, 1, 2].map(|i| small_poly(seed, trial, i, max_letter));
                if id == "OG-ASSOC" {
                    let l = star(&p, &star(&p, &a, &bb)?, &c)?;
                    let r = star(&p, &a, &star(&p, &bb, &c)?)?;
                    Ok(l.minus(&r).max_abs())
                } else {
                    let d = FlavorShuffle::new(b, flavor);
                    let lhs = iota(&d, &star(&p, &a, &bb)?)?;
                    let rhs = iota(&d, &a)?.mul(&d, &iota(&d, &bb)?, |x, y| d.product(x, y))?;
                    let scalar = if lhs.scalar == rhs.scalar { 0.0 } else { 1.0 };
                    Ok(lhs.elem.minus(&rhs.elem).max_abs().max(scalar))
                }
            }
            _ => generic(b, id, &t),
        })
        .collect()
}

fn brace_symmetry<M: crate::words::LetterMonoid>(b: &WordAlgebra<M>, flavor: Flavor, seed: u64, trial: u64, max_letter: u32) -> Result<f64> {
    let p = flavored(b, flavor);
    let slots = word_triple(seed, trial + (1 << 40), max_letter, 2);
    let [x, ..] = word_triple(seed, trial + (1 << 41), max_letter, 2);
    let base = brace(&p, &slots, &x)?;
    let mut worst: f64 = 0.0;
    for perm in (0..3).permutations(3) {
        let s: Vec<LinComb<Word>> = perm.iter().map(|&i| slots[i].clone()).collect();
        worst = worst.max(brace(&p, &s, &x)?.minus(&base).max_abs());
    }
    Ok(worst)
}

fn rb_operator(theta: i64) -> Box<dyn RotaBaxterOperator> {
    if theta == 0 {
        Box::new(NilpotentMultiplier::corner(RB_DIM))
    } else {
        Box::new(Scaled { factor: int(theta), inner: Summation })
    }
}

impl RotaBaxterOperator for Box<dyn RotaBaxterOperator> {
    fn apply(&self, f: &crate::rota_baxter::RBSequence) -> crate::rota_baxter::RBSequence {
        (**self).apply(f)
    }
    fn weight(&self) -> crate::linear::Rational {
        (**self).weight()
    }
}

fn rb_checks(seed: u64, trial: u64, ids: &[&'static str]) -> Result<TrialResiduals> {
    let b = rb_to_quasi_shuffle(RBStructure::default(), RB_LEN, RB_DIM)?;
    let t = rb_triple(seed, trial, RB_LEN, RB_DIM);
    let [x, y, z] = &t;
    ids.iter()
        .map(|&id| match id {
            "RB13" => Ok(b.structure().relation_residual(x, y)?.max(b.structure().relation_residual(y, z)?)),
            "RB-ASSOC" => {
                let mut worst: f64 = 0.0;
                for theta in [0, 1, -1, 2] {
                    let s = RBStructure::new(rb_operator(theta));
                    let l = s.product(&s.product(x, y)?, z)?;
                    let r = s.product(x, &s.product(y, z)?)?;
                    worst = worst.max(l.max_abs_diff(&r)?);
                }
                Ok(worst)
            }
            _ => generic(&b, id, &t),
        })
        .collect()
}

fn path_checks(family: PathFamily, grid: &Arc<Grid>, seed: u64, trial: u64, ids: &[&'static str]) -> Result<TrialResiduals> {
    let t = path_triple(family, grid, seed, trial)?;
    let b = PathAlgebra::new(grid.clone(), t[0].dim());
    ids.iter().map(|&id| generic(&b, id, &t)).collect()
}

/// Runs the selected checks on `trials` random triples (and refinement studies
/// for asymptotic checks). Deterministic in the configuration.
pub fn run_suite(cfg: &SuiteConfig) -> Result<AxiomReport> {
    let start = Instant::now();
    let specs = resolve(&cfg.catalog)?;
    let classes: Vec<Class> = specs.iter().map(|c| cfg.backend.class_of(c, cfg.tol)).collect();
    let trial_ids: Vec<&'static str> = specs
        .iter()
        .zip(&classes)
        .filter(|(_, k)| matches!(k, Class::ExactRational | Class::ExactFloat(_)))
        .map(|(c, _)| c.id)
        .collect();
    let seed = cfg.seed;
    let table = if trial_ids.is_empty() {
        Vec::new()
    } else {
        match cfg.backend {
            Backend::Words => {
                let b = WordAlgebra::integer();
                run_trials(cfg.trials, &trial_ids, |t, ids| word_checks(&b, Flavor::Ito, 5, seed, t, ids))?
            }
            Backend::WordsRegular => {
                let b = WordAlgebra::upper_units(3);
                run_trials(cfg.trials, &trial_ids, |t, ids| word_checks(&b, Flavor::Strat, 3, seed, t, ids))?
            }
            Backend::Rb => run_trials(cfg.trials, &trial_ids, |t, ids| rb_checks(seed, t, ids))?,
            Backend::Jump | Backend::Continuous | Backend::Mixed => {
                let family = match cfg.backend {
                    Backend::Jump => PathFamily { float_kinds: [PathKind::CompoundJump; 2], integer_pattern: JumpPattern::PureJumpSubset },
                    Backend::Continuous => PathFamily { float_kinds: [PathKind::Brownian, PathKind::FiniteVariation], integer_pattern: JumpPattern::None },
                    _ => PathFamily { float_kinds: [PathKind::Mixed; 2], integer_pattern: JumpPattern::Mixed },
                };
                let grid = Arc::new(Grid::uniform(SUITE_STEPS, 1.0)?);
                run_trials(cfg.trials, &trial_ids, |t, ids| path_checks(family, &grid, seed, t, ids))?
            }
        }
    };
    let ks = cfg.refine.clone().unwrap_or_else(|| DEFAULT_REFINE.to_vec());
    let seeds = cfg.refine_seeds.unwrap_or(cfg.trials.clamp(1, 50));
    let mut checks = Vec::with_capacity(specs.len());
    for (entry, class) in specs.iter().zip(&classes) {
        let mut r = CheckResult {
            id: entry.id.to_string(),
            paper_ref: entry.formula.to_string(),
            class: class_label(class, &ks, seeds),
            max_residual: 0.0,
            pass: true,
            failing_trial: None,
            skipped: None,
            refinement: None,
        };
        match class {
            Class::NotApplicable(why) => r.skipped = Some(why.clone()),
            Class::Asymptotic => {
                let t = refinement_study(entry.id, cfg.backend.refine_kind(), 2, &ks, seeds, seed)?;
                r.max_residual = t.rows.last().map_or(0.0, |row| row.median);
                r.pass = t.pass;
                r.refinement = Some(t.rows);
            }
            Class::ExactRational | Class::ExactFloat(_) => {
                let col = trial_ids.iter().position(|id| *id == entry.id).expect("trial check");
                let tol = if let Class::ExactFloat(t) = class { *t } else { 0.0 };
                for (trial, row) in table.iter().enumerate() {
                    let v = row[col];
                    if v > r.max_residual || v.is_nan() {
                        r.max_residual = v;
                    }
                    if (v > tol || v.is_nan()) && r.failing_trial.is_none() {
                        r.failing_trial = Some(trial as u64);
                    }
                }
                r.pass = r.failing_trial.is_none();
            }
        }
        checks.push(r);
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(AxiomReport { backend: cfg.backend.name().to_string(), seed, trials: cfg.trials, checks, pass, wall_time: start.elapsed() })
}
