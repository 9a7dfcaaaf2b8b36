//! Command-line surface.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use ordcalc_core::arith::format_ratio;
use ordcalc_core::class2::classify_pair;
use ordcalc_core::hall::{class_constants, factored_constants, formal_commutator_count, Factored, FreeNilpotent, MAX_GAMMA};
use ordcalc_core::order::jungnickel_data;
use ordcalc_core::FiniteGroup;

use crate::catalog::{catalog, lookup};
use crate::census::{census_problems, ratio_census};
use crate::checks::Check;
use crate::error::AppError;
use crate::golden;
use crate::parse::parse_member;
use crate::report::{self, Format};
use crate::spec::{class_text, GroupSpec};
use crate::sweep::{sweep, PairSpace, SweepReport};

#[derive(Debug, Parser)]
#[command(name = "ordcalc", version, about = "Orders of products in finite groups: mutual orders, Hall polynomials and verification sweeps")]
pub struct Cli {
    /// Largest group the closure may produce.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order data of one pair of elements.
    Order {
        /// Catalog name or path to a group spec file.
        #[arg(long)]
        group: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Hall basis, power polynomials and class constants.
    Hall {
        #[arg(long = "class")]
        gamma: usize,
        /// Compare the polynomial table with this file.
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = MAX_GAMMA)]
        max_gamma: usize,
    },
    /// Run the checks over every ordered pair.
    #[command(group(ArgGroup::new("target").required(true).args(["group", "all"])))]
    Verify {
        /// Catalog name or path to a group spec file.
        #[arg(long)]
        group: Option<String>,
        /// Every catalog entry.
        #[arg(long)]
        all: bool,
        /// Comma-separated checks; defaults to every check that applies.
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Print per-group timing on standard error.
        #[arg(long)]
        timing: bool,
    },
    /// List catalog entries.
    Catalog,
}

/// A group ready to use, with how its pairs should be visited.
pub struct Source {
    pub name: String,
    pub group: FiniteGroup,
    pub space: PairSpace,
}

pub fn load_group(src: &str, cap: usize) -> Result<Source, AppError> {
    if let Some(entry) = lookup(src) {
        let group = entry.spec.build(cap)?;
        let space = entry.sample.map_or(PairSpace::All, PairSpace::Sampled);
        return Ok(Source { name: entry.spec.name, group, space });
    }
    let path = Path::new(src);
    if path.exists() || src.ends_with(".toml") {
        let spec = GroupSpec::read(path)?;
        let group = spec.build(cap)?;
        return Ok(Source { name: spec.name, group, space: PairSpace::All });
    }
    Err(AppError::UnknownGroup(src.to_string()))
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), AppError> {
    if cli.cap == 0 {
        return Err(AppError::Usage("cap must be at least 1".into()));
    }
    match cli.command {
        Command::Order { group, a, b } => order(&group, &a, &b, cli.cap, out),
        Command::Hall { gamma, golden, format, max_gamma } => hall(gamma, max_gamma, golden.as_deref(), format, out),
        Command::Verify { group, all, checks, workers, format, output, timing } => {
            let names: Vec<String> = if all { catalog().iter().map(|e| e.name().to_string()).collect() } else { group.into_iter().collect() };
            let checks = checks.as_deref().map(Check::parse_list).transpose()?;
            verify(&names, checks.as_deref(), workers, format, output.as_deref(), timing, cli.cap, out)
        }
        Command::Catalog => {
            writeln!(out, "name\torder\tclass\tprime\tpairs")?;
            for e in catalog() {
                let pairs = e.sample.map_or_else(|| "all".to_string(), |k| format!("sample {k}"));
                let prime = e.prime.map_or_else(|| "-".to_string(), |p| p.to_string());
                writeln!(out, "{}\t{}\t{}\t{prime}\t{pairs}", e.name(), e.spec.expected_order.unwrap_or(0), class_text(e.spec.expected_class))?;
            }
            Ok(())
        }
    }
}

fn order(src: &str, a: &str, b: &str, cap: usize, out: &mut dyn Write) -> Result<(), AppError> {
    let s = load_group(src, cap)?;
    let g = &s.group;
    let a = g.id_of(&parse_member(a, g)?)?;
    let b = g.id_of(&parse_member(b, g)?)?;
    let r = jungnickel_data(g, &a, &b)?;
    let mut t = String::new();
    let _ = writeln!(t, "group {} order {} class {}", s.name, g.size(), class_text(g.nilpotency_class()));
    let _ = writeln!(t, "a #{} {}", a.0, g.element(a));
    let _ = writeln!(t, "b #{} {}", b.0, g.element(b));
    let _ = writeln!(t, "m {}", r.m);
    let _ = writeln!(t, "n {}", r.n);
    let _ = writeln!(t, "e {}", r.e);
    let _ = writeln!(t, "D {}", r.d);
    let _ = writeln!(t, "epsilon {}", r.epsilon);
    let _ = writeln!(t, "o(a,b) {}", r.mutual_order);
    let _ = writeln!(t, "o(ab) {}", r.product_order);
    let _ = writeln!(t, "ratio {}", format_ratio(&r.ratio));
    let _ = writeln!(t, "r {}", r.r_commutator);
    if g.nilpotency_class().is_some_and(|c| c <= 2) {
        let v = classify_pair(g, a, b)?;
        let _ = writeln!(t, "case {}", v.case_tag);
        let _ = writeln!(t, "q {}", v.q);
        let _ = writeln!(t, "predicted {}", format_ratio(&v.predicted_ratio));
        let _ = writeln!(t, "correction {}", format_ratio(&v.correction));
        if let Some(w) = v.witness {
            let _ = writeln!(t, "witness equality {} quotient-odd {}", w.equality, w.quotient_odd);
        }
    }
    out.write_all(t.as_bytes())?;
    Ok(())
}

fn factored_text(f: &Factored) -> String {
    if f.0.is_empty() {
        return "1".into();
    }
    f.0.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect::<Vec<_>>().join(" ")
}

fn hall(gamma: usize, max_gamma: usize, golden_path: Option<&Path>, format: Format, out: &mut dyn Write) -> Result<(), AppError> {
    if max_gamma > MAX_GAMMA {
        return Err(AppError::Usage(format!("max class {max_gamma} above the supported {MAX_GAMMA}")));
    }
    let f = FreeNilpotent::with_max(gamma, max_gamma)?;
    let recs = golden::records(&f)?;
    if let Some(p) = golden_path {
        golden::compare(p, &recs)?;
    }
    let mut t = String::new();
    match format {
        Format::Tsv => {
            for r in &recs {
                let _ = writeln!(t, "{}", r.to_line());
            }
        }
        Format::Text => {
            let _ = writeln!(t, "class {gamma}");
            let _ = writeln!(t, "basis {}", f.basis().len());
            for c in f.basis() {
                let _ = writeln!(t, "  c{} {} weight {}", c.index, f.render(c.index), c.weight);
            }
            let _ = writeln!(t, "polynomials");
            for r in &recs {
                let lam: Vec<String> = r.lambda.iter().map(|l| l.to_string()).collect();
                let _ = writeln!(t, "  c{} {} lambda {}", r.k, f.render(r.k), lam.join(" "));
            }
            let (counts, r_formal) = formal_commutator_count(gamma);
            let counts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(t, "formal-commutators {} r {r_formal}", counts.join(" "));
            let k = class_constants(gamma)?;
            let (fa, fb, fc) = factored_constants(gamma)?;
            let _ = writeln!(t, "A {} = {}", k.a, factored_text(&fa));
            let _ = writeln!(t, "B {} = {}", k.b, factored_text(&fb));
            let _ = writeln!(t, "C {} = {}", k.c, factored_text(&fc));
            let _ = writeln!(t, "B' {}", k.b_prime);
            let _ = writeln!(t, "C' {}", k.c_prime);
            if golden_path.is_some() {
                let _ = writeln!(t, "golden match");
            }
        }
    }
    out.write_all(t.as_bytes())?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn verify(
    names: &[String],
    checks: Option<&[Check]>,
    workers: usize,
    format: Format,
    output: Option<&Path>,
    timing: bool,
    cap: usize,
    out: &mut dyn Write,
) -> Result<(), AppError> {
    let mut runs: Vec<(SweepReport, FiniteGroup)> = Vec::new();
    for name in names {
        let s = load_group(name, cap)?;
        let selected = checks.map_or_else(|| Check::applicable(s.group.nilpotency_class()), <[Check]>::to_vec);
        let r = sweep(&s.name, &s.group, &selected, &s.space, workers)?;
        if timing {
            eprintln!("timing {} {} pairs {:.3} s", r.group, r.tally.pairs, r.elapsed.as_secs_f64());
        }
        runs.push((r, s.group));
    }
    let census = (names.len() > 1).then(|| ratio_census(runs.iter().map(|(r, _)| r)));
    let pairs: Vec<(&SweepReport, &FiniteGroup)> = runs.iter().map(|(r, g)| (r, g)).collect();
    let text = match format {
        Format::Text => report::text(&pairs, census.as_ref()),
        Format::Tsv => report::tsv(&pairs, census.as_ref())?,
    };
    match output {
        Some(p) => std::fs::write(p, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    let violations: usize = runs.iter().map(|(r, _)| r.tally.violations.len()).sum();
    let problems = census.as_ref().map(census_problems).unwrap_or_default();
    if violations > 0 || !problems.is_empty() {
        let mut msg = format!("{violations} violations");
        if let Some(p) = problems.first() {
            let _ = write!(msg, "; census: {p}");
        }
        return Err(AppError::Violation(msg));
    }
    Ok(())
}
