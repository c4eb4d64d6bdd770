//! Batch command-line front end: argument parsing, job dispatch, disk cache
//! and machine-readable reports.

pub mod cache;
mod error;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::blocks::{self, RANK_TOLERANCE};
use crate::boundary;
use crate::exact::Q;
use crate::fusion::{self, SimpleCurrentGroup, INTEGRALITY_TOLERANCE};
use crate::liealg::{self, AlgebraSpec, SimpleLieAlgebra, DEFAULT_WEYL_CAP};
use crate::modular::{CMat, ModularData, ModularResiduals, C64};
use crate::orbifold::{self, Orientation, OrbifoldInput, Sector};
use crate::simplecurrent::{self, SJProvider, TheorySJ};
use crate::theory::{Direct, ModularSource, Theory, TheorySpec};

pub use cache::DiskCache;
pub use error::{CliError, ErrorCode};
pub use report::{Format, Report, Residual, Table};

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "MODWZW_CACHE_DIR";
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "modwzw", author, version, about = "Modular data, simple-current extensions, Z2 orbifolds and boundary classifying algebras for WZW models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Tolerance for floating-point invariants (unitarity, modular relations, ...).
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Largest Weyl group that will be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_WEYL_CAP)]
    pub weyl_cap: usize,
    /// Directory for cached modular data; no caching when unset.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Output format; JSON for constructions and CSV for sweeps by default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct TheoryArgs {
    /// Algebra such as `A1`, or a complete theory such as `A1_k2*A1_k2`.
    pub theory: String,
    /// Level (a range `2-8` or list `1,3` for sweeps).
    #[arg(long)]
    pub level: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kac–Peterson modular data with its residual table.
    ModularData(TheoryArgs),
    /// Verlinde fusion rules and simple currents.
    Fusion(TheoryArgs),
    /// Simple-current extension: classes, S matrix and modular invariant.
    Extend {
        #[command(flatten)]
        theory: TheoryArgs,
        /// `center` for all simple currents, or a list of generating currents.
        #[arg(long, default_value = "center")]
        group: String,
    },
    /// Z2 orbifold by an inner automorphism exp(2 pi i ad H_s).
    Orbifold {
        #[command(flatten)]
        theory: TheoryArgs,
        /// Shift s in fundamental-coweight coordinates, e.g. `1/2,0`.
        #[arg(long)]
        shift: String,
    },
    /// Classifying algebra for boundaries of the Z2 orbifold.
    Boundary {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long)]
        shift: String,
    },
    /// Traces of current-induced maps on conformal blocks.
    Trace {
        #[command(flatten)]
        theory: TheoryArgs,
        /// 1: simple-current automorphisms; 2: orbifold twisted sectors.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        conjecture: u8,
        /// Insertion labels, by index or Dynkin label, e.g. `(1),(1),(2)`.
        #[arg(long)]
        insertions: String,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// One current per insertion; all central tuples when omitted.
        #[arg(long)]
        tuple: Option<String>,
        #[arg(long, default_value = "center")]
        group: String,
        #[arg(long)]
        shift: Option<String>,
        #[arg(long, value_enum, default_value = "fixed-row")]
        orientation: Orientation,
    },
    /// Runs every invariant on the modular data, fusion ring and currents.
    Check(TheoryArgs),
    /// Trace sweep over levels and all insertion multisets.
    Sweep {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 1)]
        conjecture: u8,
        /// Numbers of insertions to sweep over.
        #[arg(long, default_value = "3,4")]
        insertions: String,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, default_value = "center")]
        group: String,
        #[arg(long)]
        shift: Option<String>,
    },
}

/// The construction and its parameters, as echoed in reports.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "construction", rename_all = "kebab-case")]
pub enum Construction {
    ModularData,
    Fusion,
    Extend {
        group: String,
    },
    Orbifold {
        shift: String,
    },
    Boundary {
        shift: String,
    },
    Trace {
        conjecture: u8,
        insertions: String,
        genus: u32,
        tuple: Option<String>,
        group: String,
        shift: Option<String>,
        orientation: Orientation,
    },
    Check,
    Sweep {
        conjecture: u8,
        insertions: String,
        genus: u32,
        group: String,
        shift: Option<String>,
    },
}

impl Construction {
    pub fn name(&self) -> &'static str {
        match self {
            Construction::ModularData => "modular-data",
            Construction::Fusion => "fusion",
            Construction::Extend { .. } => "extend",
            Construction::Orbifold { .. } => "orbifold",
            Construction::Boundary { .. } => "boundary",
            Construction::Trace { .. } => "trace",
            Construction::Check => "check",
            Construction::Sweep { .. } => "sweep",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JobConfig {
    pub theory: String,
    pub level: Option<String>,
    #[serde(flatten)]
    pub construction: Construction,
    pub tolerance: f64,
    pub weyl_cap: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

impl From<Cli> for JobConfig {
    fn from(cli: Cli) -> JobConfig {
        let (t, construction) = match cli.command {
            Command::ModularData(t) => (t, Construction::ModularData),
            Command::Fusion(t) => (t, Construction::Fusion),
            Command::Extend { theory, group } => (theory, Construction::Extend { group }),
            Command::Orbifold { theory, shift } => (theory, Construction::Orbifold { shift }),
            Command::Boundary { theory, shift } => (theory, Construction::Boundary { shift }),
            Command::Trace {
                theory,
                conjecture,
                insertions,
                genus,
                tuple,
                group,
                shift,
                orientation,
            } => (
                theory,
                Construction::Trace {
                    conjecture,
                    insertions,
                    genus,
                    tuple,
                    group,
                    shift,
                    orientation,
                },
            ),
            Command::Check(t) => (t, Construction::Check),
            Command::Sweep {
                theory,
                conjecture,
                insertions,
                genus,
                group,
                shift,
            } => (
                theory,
                Construction::Sweep {
                    conjecture,
                    insertions,
                    genus,
                    group,
                    shift,
                },
            ),
        };
        let default_format = match construction {
            Construction::Sweep { .. } => Format::Csv,
            _ => Format::Json,
        };
        JobConfig {
            theory: t.theory,
            level: t.level,
            construction,
            tolerance: cli.tolerance,
            weyl_cap: cli.weyl_cap,
            cache_dir: cli.cache_dir,
            format: cli.format.unwrap_or(default_format),
        }
    }
}

impl JobConfig {
    pub fn input_echo(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(CliError::parse(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.weyl_cap == 0 {
            return Err(CliError::parse("weyl cap must be positive"));
        }
        Ok(())
    }

    fn tolerances(&self) -> Value {
        json!({
            "invariant": self.tolerance,
            "integrality": INTEGRALITY_TOLERANCE,
            "rank": RANK_TOLERANCE,
            "weyl_cap": self.weyl_cap,
        })
    }
}

// ---------------------------------------------------------------- parsing

fn parse_level(s: &str) -> Result<i64, CliError> {
    s.trim()
        .parse::<i64>()
        .ok()
        .filter(|k| *k >= 0)
        .ok_or_else(|| CliError::parse(format!("level must be a non-negative integer, got {s:?}")))
}

/// `3`, `1,3,5` or `2-8`.
pub fn parse_levels(s: &str) -> Result<Vec<i64>, CliError> {
    if let Some((a, b)) = s.split_once('-').or_else(|| s.split_once("..")) {
        let (a, b) = (parse_level(a)?, parse_level(b)?);
        if a > b {
            return Err(CliError::parse(format!("empty level range {s:?}")));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(parse_level).collect()
}

/// A theory from `A1 --level 2` or from a full spec like `A1_k2*A1_k2`.
pub fn resolve_theory(theory: &str, level: Option<&str>) -> Result<TheorySpec, CliError> {
    if theory.contains("_k") {
        if level.is_some() {
            return Err(CliError::parse(format!("{theory} already carries its level")));
        }
        return Ok(theory.parse::<TheorySpec>()?);
    }
    let level = level.ok_or_else(|| CliError::parse(format!("--level is required for {theory}")))?;
    Ok(TheorySpec::wzw(theory, parse_level(level)?)?)
}

/// Splits on commas that are not inside parentheses or brackets.
fn split_top(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else if !ch.is_whitespace() {
            cur.push(ch);
        }
    }
    if !cur.is_empty() || !out.is_empty() {
        out.push(cur);
    }
    out
}

/// Labels given by index or by their printed form, e.g. `0,(2),[(1)|(1)]`.
pub fn parse_labels(s: &str, md: &ModularData) -> Result<Vec<usize>, CliError> {
    split_top(s)
        .iter()
        .map(|tok| {
            if let Ok(i) = tok.parse::<usize>() {
                return if i < md.len() {
                    Ok(i)
                } else {
                    Err(CliError::parse(format!("label index {i} out of range (theory has {})", md.len())))
                };
            }
            md.labels
                .iter()
                .position(|l| l.to_string() == *tok)
                .ok_or_else(|| CliError::parse(format!("unknown label {tok:?}")))
        })
        .collect()
}

pub fn parse_shift(s: &str) -> Result<Vec<Q>, CliError> {
    split_top(s)
        .iter()
        .map(|t| {
            t.parse::<Q>()
                .map_err(|_| CliError::parse(format!("shift entry {t:?} is not a rational number")))
        })
        .collect()
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, CliError> {
    split_top(s)
        .iter()
        .map(|t| {
            t.parse::<usize>()
                .ok()
                .filter(|m| *m >= 1)
                .ok_or_else(|| CliError::parse(format!("insertion count {t:?} is not a positive integer")))
        })
        .collect()
}

// ---------------------------------------------------------------- helpers

fn q_text(x: &Q) -> String {
    x.to_string()
}

fn c_json(z: C64) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| c_json(m[(i, j)])).collect()))
            .collect(),
    )
}

fn label_names(md: &ModularData, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| md.labels[i].to_string()).collect()
}

fn all_labels(md: &ModularData) -> Vec<String> {
    md.labels.iter().map(|l| l.to_string()).collect()
}

fn quantum_dimension(md: &ModularData, mu: usize) -> f64 {
    (md.s[(md.vacuum, mu)] / md.s[(md.vacuum, md.vacuum)]).re
}

fn add_modular(res: &mut BTreeMap<String, Residual>, prefix: &str, r: &ModularResiduals, tol: f64) {
    for (name, v) in r.named() {
        res.insert(format!("{prefix}{name}"), Residual::new(v, tol));
    }
}

fn integer_distance(z: C64) -> f64 {
    ((z.re - z.re.round()).powi(2) + z.im.powi(2)).sqrt()
}

fn nonneg_integer_distance(z: C64) -> f64 {
    integer_distance(z) + (-z.re).max(0.0)
}

fn simple(th: &Theory) -> Result<(&SimpleLieAlgebra, i64), CliError> {
    th.simple_factor()
        .ok_or_else(|| CliError::precondition("this construction needs a single WZW factor"))
}

fn current_group(th: &Theory, ring: &fusion::FusionRing, group: &str) -> Result<SimpleCurrentGroup, CliError> {
    if group == "center" {
        Ok(fusion::simple_currents(&th.md, ring)?)
    } else {
        let gens = parse_labels(group, &th.md)?;
        Ok(SimpleCurrentGroup::generated(ring, &gens)?)
    }
}

struct Job<'a> {
    cfg: &'a JobConfig,
    source: &'a mut dyn ModularSource,
}

impl Job<'_> {
    fn theory(&mut self) -> Result<Theory, CliError> {
        let spec = resolve_theory(&self.cfg.theory, self.cfg.level.as_deref())?;
        Ok(Theory::build(&spec, self.cfg.weyl_cap, self.source)?)
    }

    fn orbifold_input(&mut self, shift: &str) -> Result<(Theory, OrbifoldInput), CliError> {
        let th = self.theory()?;
        let c = parse_shift(shift)?;
        let (alg, k) = simple(&th)?;
        let input = orbifold::inner_orbifold_input(alg, k, &th.md, &c)?;
        Ok((th, input))
    }
}

// ---------------------------------------------------------------- commands

type Output = (Value, BTreeMap<String, Residual>, Table);

fn modular_data(job: &mut Job) -> Result<Output, CliError> {
    let th = job.theory()?;
    let md = &th.md;
    let mut res = BTreeMap::new();
    add_modular(&mut res, "", &md.residuals(), job.cfg.tolerance);
    let mut table = Table::new(&["label", "conformal_weight", "t_exponent", "quantum_dimension"]);
    for mu in 0..md.len() {
        table.push(vec![
            md.labels[mu].to_string(),
            q_text(&md.delta[mu]),
            q_text(&md.t_exponent(mu)),
            format!("{}", quantum_dimension(md, mu)),
        ]);
    }
    let result = json!({
        "theory": th.spec.to_string(),
        "central_charge": q_text(&md.c),
        "labels": all_labels(md),
        "vacuum": md.vacuum,
        "conformal_weights": md.delta.iter().map(q_text).collect::<Vec<_>>(),
        "t_exponents": (0..md.len()).map(|m| q_text(&md.t_exponent(m))).collect::<Vec<_>>(),
        "s": matrix_json(&md.s),
    });
    Ok((result, res, table))
}

fn fusion_rules(job: &mut Job) -> Result<Output, CliError> {
    let th = job.theory()?;
    let md = &th.md;
    let (ring, rounding) = fusion::verlinde_with_report(md, INTEGRALITY_TOLERANCE)?;
    ring.check_axioms()?;
    let group = fusion::simple_currents(md, &ring)?;
    let mut res = BTreeMap::new();
    res.insert("verlinde_rounding".into(), Residual::new(rounding.max_residual, INTEGRALITY_TOLERANCE));
    let mut table = Table::new(&["lambda", "mu", "nu", "n"]);
    let mut rules = Vec::new();
    for (l, m, n, c) in ring.triples() {
        let names = label_names(md, &[l, m, n]);
        rules.push(json!([names[0], names[1], names[2], c]));
        table.push(vec![names[0].clone(), names[1].clone(), names[2].clone(), c.to_string()]);
    }
    let result = json!({
        "theory": th.spec.to_string(),
        "labels": all_labels(md),
        "conjugation": label_names(md, &ring.conjugation),
        "simple_currents": label_names(md, &group.elements),
        "current_orders": group.orders,
        "rules": rules,
    });
    Ok((result, res, table))
}

fn extend(job: &mut Job, group: &str) -> Result<Output, CliError> {
    let th = job.theory()?;
    let md = &th.md;
    let gens = if group == "center" {
        None
    } else {
        Some(parse_labels(group, md)?)
    };
    let ext = simplecurrent::extend(&th, gens.as_deref())?;
    let x = &ext.extended;
    let mut res = BTreeMap::new();
    add_modular(&mut res, "extended ", &x.checks.residuals, job.cfg.tolerance);
    res.insert(
        "extended verlinde_rounding".into(),
        Residual::new(x.checks.fusion_rounding, INTEGRALITY_TOLERANCE),
    );
    let mut table = Table::new(&["class", "orbit", "d", "conformal_weight", "quantum_dimension"]);
    let mut classes = Vec::new();
    for (i, c) in x.classes.iter().enumerate() {
        let orbit = label_names(md, &ext.data.orbits[c.orbit]);
        table.push(vec![
            c.label.to_string(),
            orbit.join(" "),
            x.d[i].to_string(),
            q_text(&x.md.delta[i]),
            format!("{}", quantum_dimension(&x.md, i)),
        ]);
        classes.push(json!({
            "label": c.label.to_string(),
            "representative": md.labels[c.rep].to_string(),
            "orbit": orbit,
            "d": x.d[i],
            "conformal_weight": q_text(&x.md.delta[i]),
        }));
    }
    let all_currents = (0..x.md.len()).all(|i| x.ring.is_simple_current(i));
    let result = json!({
        "theory": th.spec.to_string(),
        "currents": label_names(md, &ext.data.group.elements),
        "classes": classes,
        "s": matrix_json(&x.md.s),
        "t_exponents": (0..x.md.len()).map(|m| q_text(&x.md.t_exponent(m))).collect::<Vec<_>>(),
        "z": ext.z,
        "extended_fusion_all_simple_currents": all_currents,
        "phase_adjustments": x.checks.phase_adjustments,
    });
    Ok((result, res, table))
}

fn sector_kind(s: &Sector) -> &'static str {
    match s {
        Sector::Orbit { .. } => "orbit",
        Sector::Fixed { .. } => "fixed",
        Sector::Twisted { .. } => "twisted",
    }
}

fn orbifold_output(
    input: &OrbifoldInput,
    orb: &orbifold::OrbifoldModularData,
    tol: f64,
) -> (Value, BTreeMap<String, Residual>, Table) {
    let md = &orb.md;
    let mut res = BTreeMap::new();
    add_modular(&mut res, "orbifold ", &orb.checks.residuals, tol);
    res.insert(
        "orbifold verlinde_rounding".into(),
        Residual::new(orb.checks.fusion_rounding, INTEGRALITY_TOLERANCE),
    );
    if let Some(sp) = &orb.checks.s0_squared {
        res.insert("S0 S0 signed permutation".into(), Residual::new(sp.residual, tol));
    }
    res.insert("P^2 signed permutation".into(), Residual::new(orb.checks.p_squared.residual, tol));
    if let Some(ok) = orb.checks.p_matches_s0 {
        res.insert("|P^2| = |S0 S0|".into(), Residual::flag(ok));
    }
    let mut table = Table::new(&["label", "sector", "conformal_weight", "quantum_dimension"]);
    for (i, s) in orb.sectors.iter().enumerate() {
        table.push(vec![
            md.labels[i].to_string(),
            sector_kind(s).into(),
            q_text(&md.delta[i]),
            format!("{}", quantum_dimension(md, i)),
        ]);
    }
    let result = json!({
        "base": input.base.name,
        "shift": input.shift.as_ref().map(|c| c.iter().map(q_text).collect::<Vec<_>>()),
        "eta_exponents": input.eta.iter().map(q_text).collect::<Vec<_>>(),
        "labels": all_labels(md),
        "sectors": orb.sectors.iter().map(sector_kind).collect::<Vec<_>>(),
        "central_charge": q_text(&md.c),
        "conformal_weights": md.delta.iter().map(q_text).collect::<Vec<_>>(),
        "sqrt_t1_exponents": orb.t1_half.iter().map(q_text).collect::<Vec<_>>(),
        "dual_current": md.labels[orb.dual_current].to_string(),
        "s": matrix_json(&md.s),
        "p": matrix_json(&orb.p),
    });
    (result, res, table)
}

fn orbifold_cmd(job: &mut Job, shift: &str) -> Result<Output, CliError> {
    let (_, input) = job.orbifold_input(shift)?;
    let orb = orbifold::assemble_orbifold(&input)?;
    Ok(orbifold_output(&input, &orb, job.cfg.tolerance))
}

fn boundary_cmd(job: &mut Job, shift: &str) -> Result<Output, CliError> {
    let tol = job.cfg.tolerance;
    let (_, input) = job.orbifold_input(shift)?;
    let orb = orbifold::assemble_orbifold(&input)?;
    let alg = boundary::orbifold_classifying_algebra(&orb, None)?;
    let r = boundary::reflection_coefficients(&alg)?;
    let reps = boundary::representation_residual(&alg, &r);
    let dec = boundary::automorphism_type_decomposition(&alg)?;
    let z2 = boundary::z2_table_check(&input, &orb, &alg)?;
    let mut res = BTreeMap::new();
    res.insert("unit".into(), Residual::new(alg.unit_residual, tol));
    res.insert("associativity".into(), Residual::new(alg.associativity_residual, tol));
    res.insert(
        "one-dimensional representations".into(),
        Residual::new(reps.iter().copied().fold(0.0, f64::max), tol),
    );
    res.insert("automorphism-type ideals".into(), Residual::new(dec.residual, tol));
    res.insert("S^ against table".into(), Residual::new(z2.s_hat_residual, tol));
    res.insert("structure constants against table".into(), Residual::new(z2.structure_residual, tol));
    res.insert(
        "raised constants = orbifold fusion".into(),
        Residual::new(z2.orbifold_fusion_residual, tol),
    );
    let mut table = Table::new(&["boundary", "twisted", "representation_residual"]);
    for (b, rr) in alg.boundary.iter().zip(&reps) {
        table.push(vec![b.label.to_string(), b.twisted.to_string(), format!("{rr:e}")]);
    }
    let result = json!({
        "orbifold": orb.md.name,
        "bulk_labels": alg.hat.iter().map(|h| h.label.to_string()).collect::<Vec<_>>(),
        "boundary_labels": alg.boundary.iter().map(|b| b.label.to_string()).collect::<Vec<_>>(),
        "twisted": alg.boundary.iter().map(|b| b.twisted).collect::<Vec<_>>(),
        "counts": {
            "fixed_bulk": z2.counts[0],
            "orbit_bulk": z2.counts[1],
            "untwisted_boundary": z2.counts[2],
            "twisted_boundary": z2.counts[3],
        },
        "ideals": dec.parts,
    });
    Ok((result, res, table))
}

fn trace_conj1(
    job: &mut Job,
    insertions: &str,
    genus: u32,
    tuple: Option<&str>,
    group: &str,
) -> Result<Output, CliError> {
    let th = job.theory()?;
    let md = &th.md;
    let ring = fusion::verlinde(md)?;
    let g = current_group(&th, &ring, group)?;
    let mut provider = TheorySJ::new(&th);
    let data = simplecurrent::orbit_data(md, &g, &mut provider)?;
    let ins = parse_labels(insertions, md)?;
    let mut res = BTreeMap::new();
    let mut table = Table::new(&["tuple", "trace_re", "trace_im"]);
    let tuple_names = |t: &[usize]| t.iter().map(|&a| md.labels[a].to_string()).collect::<Vec<_>>().join(" ");
    let result = match tuple {
        Some(t) => {
            let labels = parse_labels(t, md)?;
            let pos: Vec<usize> = labels
                .iter()
                .map(|&l| {
                    g.position(l)
                        .ok_or_else(|| CliError::precondition(format!("{} is not in the current group", md.labels[l])))
                })
                .collect::<Result<_, _>>()?;
            let rank = blocks::rank(genus, &ins, md)?;
            let tr = blocks::conjecture1_trace(genus, &ins, &pos, md, &data, &mut provider)?;
            res.insert("trace integrality".into(), Residual::new(integer_distance(tr), RANK_TOLERANCE));
            table.push(vec![tuple_names(&labels), tr.re.to_string(), tr.im.to_string()]);
            json!({"rank": rank, "tuple": label_names(md, &labels), "trace": c_json(tr)})
        }
        None => {
            let rep = blocks::trace_report(genus, &ins, md, &data, &mut provider)?;
            let worst_trace = rep
                .traces
                .iter()
                .map(|&(a, b)| integer_distance(C64::new(a, b)))
                .fold(0.0, f64::max);
            let worst_dim = rep
                .dims
                .iter()
                .map(|&(a, b)| nonneg_integer_distance(C64::new(a, b)))
                .fold(0.0, f64::max);
            res.insert("trace integrality".into(), Residual::new(worst_trace, RANK_TOLERANCE));
            res.insert("eigendimension integrality".into(), Residual::new(worst_dim, RANK_TOLERANCE));
            res.insert("identity tuple = rank".into(), Residual::flag(rep.identity_matches_rank));
            for (t, &(a, b)) in rep.tuples.iter().zip(&rep.traces) {
                table.push(vec![tuple_names(t), a.to_string(), b.to_string()]);
            }
            json!({
                "rank": rep.rank,
                "tuples": rep.tuples.iter().map(|t| label_names(md, t)).collect::<Vec<_>>(),
                "traces": rep.traces,
                "eigendimensions": rep.dims,
            })
        }
    };
    let result = json!({
        "theory": th.spec.to_string(),
        "genus": genus,
        "insertions": label_names(md, &ins),
        "currents": label_names(md, &g.elements),
        "traces": result,
    });
    Ok((result, res, table))
}

fn trace_conj2(
    job: &mut Job,
    insertions: &str,
    genus: u32,
    shift: Option<&str>,
    orientation: Orientation,
) -> Result<Output, CliError> {
    if genus != 0 {
        return Err(CliError::new(ErrorCode::NotImplemented, "orbifold traces are implemented at genus 0"));
    }
    let shift = shift.ok_or_else(|| CliError::parse("--shift is required for --conjecture 2"))?;
    let (_, input) = job.orbifold_input(shift)?;
    let ins = parse_labels(insertions, &input.base)?;
    let rep = orbifold::conjecture2_trace(&ins, &input, orientation)?;
    let worst = rep
        .dims
        .iter()
        .map(|&(a, b)| nonneg_integer_distance(C64::new(a, b)))
        .fold(0.0, f64::max);
    let mut res = BTreeMap::new();
    res.insert("eigendimension integrality".into(), Residual::new(worst, INTEGRALITY_TOLERANCE));
    let mut table = Table::new(&["rank", "trace_re", "trace_im", "dim_plus", "dim_minus"]);
    table.push(vec![
        rep.rank.to_string(),
        rep.trace.0.to_string(),
        rep.trace.1.to_string(),
        rep.dims[0].0.to_string(),
        rep.dims[1].0.to_string(),
    ]);
    let result = json!({
        "base": input.base.name,
        "insertions": label_names(&input.base, &ins),
        "orientation": orientation,
        "rank": rep.rank,
        "trace": [rep.trace.0, rep.trace.1],
        "eigendimensions": rep.dims,
    });
    Ok((result, res, table))
}

fn check(job: &mut Job) -> Result<Output, CliError> {
    let tol = job.cfg.tolerance;
    let th = job.theory()?;
    let md = &th.md;
    let mut res = BTreeMap::new();
    add_modular(&mut res, "", &md.residuals(), tol);
    let (ring, rounding) = fusion::verlinde_with_report(md, INTEGRALITY_TOLERANCE)?;
    res.insert("verlinde_rounding".into(), Residual::new(rounding.max_residual, INTEGRALITY_TOLERANCE));
    res.insert("fusion ring axioms".into(), Residual::flag(ring.check_axioms().is_ok()));
    let group = fusion::simple_currents(md, &ring)?;
    let mut center = Value::Null;
    if let Some((alg, k)) = th.simple_factor() {
        if k > 0 {
            let c = liealg::center_group(alg);
            let up_to = c.order().max(group.order() as i64);
            let same = group.signature(up_to) == liealg::cyclic_signature(&c.factors, up_to);
            res.insert("simple currents = center".into(), Residual::flag(same));
            center = json!(c.factors);
        }
    }
    let mut provider = TheorySJ::new(&th);
    let mut sj_unitarity: f64 = 0.0;
    for &j in &group.elements[1..] {
        sj_unitarity = sj_unitarity.max(provider.sj(j)?.unitarity_residual());
    }
    res.insert("S^J unitarity".into(), Residual::new(sj_unitarity, tol));
    let mut table = Table::new(&["invariant", "value", "tolerance", "pass"]);
    for (k, r) in &res {
        table.push(vec![k.clone(), format!("{:e}", r.value), format!("{:e}", r.tolerance), r.pass.to_string()]);
    }
    let result = json!({
        "theory": th.spec.to_string(),
        "sectors": md.len(),
        "simple_currents": label_names(md, &group.elements),
        "center_factors": center,
    });
    Ok((result, res, table))
}

fn sweep(
    job: &mut Job,
    conjecture: u8,
    insertions: &str,
    genus: u32,
    group: &str,
    shift: Option<&str>,
) -> Result<Output, CliError> {
    if job.cfg.theory.contains("_k") {
        return Err(CliError::parse("sweeps take an algebra and --level range"));
    }
    let alg: AlgebraSpec = job.cfg.theory.parse()?;
    let levels = parse_levels(
        job.cfg
            .level
            .as_deref()
            .ok_or_else(|| CliError::parse("--level is required"))?,
    )?;
    let sizes = parse_sizes(insertions)?;
    let mut res = BTreeMap::new();
    let result = if conjecture == 1 {
        let mut table = Table::new(&[
            "theory",
            "genus",
            "insertions",
            "rank",
            "central_tuples",
            "traces_integral",
            "dims_valid",
            "identity_matches_rank",
            "max_trace_residual",
        ]);
        let (mut worst, mut lists, mut bad) = (0.0f64, 0usize, 0usize);
        for &k in &levels {
            let spec = TheorySpec::Wzw { algebra: alg, level: k };
            let th = Theory::build(&spec, job.cfg.weyl_cap, job.source)?;
            let md = &th.md;
            let ring = fusion::verlinde(md)?;
            let g = current_group(&th, &ring, group)?;
            let mut provider = TheorySJ::new(&th);
            let data = simplecurrent::orbit_data(md, &g, &mut provider)?;
            for &m in &sizes {
                for ins in blocks::insertion_multisets(md.len(), m) {
                    let rep = blocks::trace_report(genus, &ins, md, &data, &mut provider)?;
                    let w = rep
                        .traces
                        .iter()
                        .map(|&(a, b)| integer_distance(C64::new(a, b)))
                        .fold(0.0, f64::max);
                    worst = worst.max(w);
                    lists += 1;
                    let ok = rep.traces_integral && rep.dims_valid && rep.identity_matches_rank;
                    bad += usize::from(!ok);
                    table.push(vec![
                        th.spec.to_string(),
                        genus.to_string(),
                        label_names(md, &ins).join(" "),
                        rep.rank.to_string(),
                        rep.tuples.len().to_string(),
                        rep.traces_integral.to_string(),
                        rep.dims_valid.to_string(),
                        rep.identity_matches_rank.to_string(),
                        format!("{w:e}"),
                    ]);
                }
            }
        }
        res.insert("trace integrality".into(), Residual::new(worst, RANK_TOLERANCE));
        res.insert("all insertion lists pass".into(), Residual::flag(bad == 0));
        (json!({"algebra": alg.to_string(), "levels": levels, "insertion_lists": lists, "failing": bad}), table)
    } else {
        if genus != 0 {
            return Err(CliError::new(ErrorCode::NotImplemented, "orbifold traces are implemented at genus 0"));
        }
        let shift = shift.ok_or_else(|| CliError::parse("--shift is required for --conjecture 2"))?;
        let c = parse_shift(shift)?;
        let mut table = Table::new(&[
            "theory",
            "orientation",
            "insertions",
            "rank",
            "trace_re",
            "trace_im",
            "dim_plus",
            "dim_minus",
            "integral",
        ]);
        let mut passing: BTreeMap<String, bool> = BTreeMap::new();
        for &k in &levels {
            let spec = TheorySpec::Wzw { algebra: alg, level: k };
            let th = Theory::build(&spec, job.cfg.weyl_cap, job.source)?;
            let (a, _) = simple(&th)?;
            let input = orbifold::inner_orbifold_input(a, k, &th.md, &c)?;
            for &m in &sizes {
                for (o, reports) in orbifold::conjecture2_sweep(&input, m)? {
                    let key = serde_json::to_value(o).expect("orientation serializes");
                    let key = key.as_str().unwrap_or_default().to_string();
                    let entry = passing.entry(key.clone()).or_insert(true);
                    for r in reports {
                        *entry &= r.integral;
                        table.push(vec![
                            th.spec.to_string(),
                            key.clone(),
                            label_names(&input.base, &r.insertions).join(" "),
                            r.rank.to_string(),
                            r.trace.0.to_string(),
                            r.trace.1.to_string(),
                            r.dims[0].0.to_string(),
                            r.dims[1].0.to_string(),
                            r.integral.to_string(),
                        ]);
                    }
                }
            }
        }
        res.insert(
            "some orientation passes throughout".into(),
            Residual::flag(passing.values().any(|&p| p)),
        );
        (json!({"algebra": alg.to_string(), "levels": levels, "orientations": passing}), table)
    };
    let (value, table) = result;
    Ok((value, res, table))
}

// ---------------------------------------------------------------- entry points

/// Runs one job against the given source of WZW modular data.
pub fn run_with_source(cfg: &JobConfig, source: &mut dyn ModularSource) -> Result<Report, CliError> {
    cfg.validate()?;
    let mut job = Job { cfg, source };
    let (result, residuals, table) = match &cfg.construction {
        Construction::ModularData => modular_data(&mut job)?,
        Construction::Fusion => fusion_rules(&mut job)?,
        Construction::Extend { group } => extend(&mut job, group)?,
        Construction::Orbifold { shift } => orbifold_cmd(&mut job, shift)?,
        Construction::Boundary { shift } => boundary_cmd(&mut job, shift)?,
        Construction::Trace {
            conjecture,
            insertions,
            genus,
            tuple,
            group,
            shift,
            orientation,
        } => match conjecture {
            1 => trace_conj1(&mut job, insertions, *genus, tuple.as_deref(), group)?,
            _ => trace_conj2(&mut job, insertions, *genus, shift.as_deref(), *orientation)?,
        },
        Construction::Check => check(&mut job)?,
        Construction::Sweep {
            conjecture,
            insertions,
            genus,
            group,
            shift,
        } => sweep(&mut job, *conjecture, insertions, *genus, group, shift.as_deref())?,
    };
    let report = Report {
        command: cfg.construction.name().to_string(),
        input: cfg.input_echo(),
        tolerances: cfg.tolerances(),
        result,
        residuals,
        table,
    };
    let failures = report.failures();
    if !failures.is_empty() {
        let mut err = CliError::new(
            ErrorCode::Invariant,
            format!("invariants failed: {}", failures.join(", ")),
        );
        err.details = Some(json!({"residuals": report.residuals, "result": report.result}));
        return Err(err);
    }
    Ok(report)
}

/// Runs one job, using the disk cache when a directory is configured.
pub fn run(cfg: &JobConfig) -> Result<Report, CliError> {
    match &cfg.cache_dir {
        Some(dir) => {
            let mut cache = DiskCache::new(dir, cfg.weyl_cap);
            let out = run_with_source(cfg, &mut cache);
            log::info!("cache {}: {} hits, {} misses", dir.display(), cache.hits, cache.misses);
            out
        }
        None => run_with_source(cfg, &mut Direct { weyl_cap: cfg.weyl_cap }),
    }
}

/// Parses arguments, runs the job and prints the report or error object;
/// returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let err = CliError::parse(e.to_string().trim().to_string());
            print!("{}", report::json_text(&report::error_json("", &Value::Null, &err)));
            return err.code.exit_status();
        }
    };
    let cfg = JobConfig::from(cli);
    let outcome = run(&cfg).and_then(|r| r.render(cfg.format));
    match outcome {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(err) => {
            log::error!("{err}");
            let obj = report::error_json(cfg.construction.name(), &cfg.input_echo(), &err);
            print!("{}", report::json_text(&obj));
            err.code.exit_status()
        }
    }
}
