//! Command-line front end. The `palab` binary calls [`run`].
//!
//! Exit codes: 0 when every check holds, 1 when a checked property or a
//! precondition fails, 2 on malformed input or an exceeded cap.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{enumerate_congruences, power, quotient, Congruence, FiniteAlgebra};
use crate::checks::{
    check_2_associative, check_derived_abc, check_group_collapse, check_lemma31_consistency, check_protomodular,
    check_rc_i, check_rc_ii, check_rc_iii, check_rc_iv_semantic, check_rc_v, check_right_identity, derive_ti,
    CheckReport, Route,
};
use crate::error::{Error, Result};
use crate::example45::verify_example_4_5;
use crate::limits::Limits;
use crate::parallel::with_workers;
use crate::search::{catalog_lines, classify, search_with, Filter, SearchSpec, Strategy};
use crate::topology::{check_lemma_4_1, check_theorem_4_2, compatible_topologies, sep_axioms, FiniteTopology, SepAxioms};
use crate::uniformity::{check_lemma_4_4_with, verify_c_conditions_with, NeighborhoodBase};

pub const CHECK_NAMES: [&str; 12] = [
    "protomodular",
    "rc-i",
    "rc-ii",
    "rc-iii",
    "rc-iv",
    "rc-v",
    "lemma31",
    "2-assoc",
    "group",
    "abc",
    "right-identity",
    "derive-ti",
];

#[derive(Parser, Debug)]
#[command(name = "palab", version, about = "Finite-model checks for topological protomodular algebras")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true, env = "PALAB_WORKERS", value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    /// Largest carrier whose topologies are enumerated (at most 5).
    #[arg(long, global = true, env = "PALAB_TOPOLOGY_S_MAX", value_parser = clap::value_parser!(u64).range(1..))]
    pub topology_s_max: Option<u64>,
    #[arg(long, global = true, env = "PALAB_TABLE_ENTRY_MAX", value_parser = clap::value_parser!(u64).range(1..))]
    pub table_entry_max: Option<u64>,
    #[arg(long, global = true, env = "PALAB_CONGRUENCE_S_MAX", value_parser = clap::value_parser!(u64).range(1..))]
    pub congruence_s_max: Option<u64>,
    #[arg(long, global = true, env = "PALAB_SEARCH_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    pub search_budget: Option<u64>,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

impl Config {
    pub fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            table_entry_max: self.table_entry_max.map_or(d.table_entry_max, u128::from),
            congruence_s_max: self.congruence_s_max.map_or(d.congruence_s_max, |v| v as usize),
            topology_s_max: self.topology_s_max.map_or(d.topology_s_max, |v| v as usize),
            search_budget: self.search_budget.map_or(d.search_budget, u128::from),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run named identity checks on an algebra file.
    Verify {
        algebra: PathBuf,
        /// Comma-separated: protomodular, rc-i … rc-v, lemma31, 2-assoc, group, abc, right-identity, derive-ti.
        #[arg(long, value_delimiter = ',', default_value = "protomodular,rc-i")]
        checks: Vec<String>,
    },
    /// Enumerate the topologies compatible with an algebra.
    Topologies {
        algebra: PathBuf,
        /// Keep only topologies satisfying this axiom.
        #[arg(long, value_enum)]
        axiom: Option<Axiom>,
        /// Print the topologies as JSON lines instead of a table.
        #[arg(long)]
        list: bool,
        /// Check T0 ⇒ T1 over the compatible topologies.
        #[arg(long)]
        lemma41: bool,
        /// Check T0 ⇒ completely regular over the compatible topologies.
        #[arg(long)]
        theorem42: bool,
    },
    /// Check (C1)–(C4) and the induced topology for an algebra and topology.
    Uniformity {
        algebra: PathBuf,
        topology: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        base: Base,
    },
    /// Exhaustive search over small carriers.
    Search {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        /// Repeatable or comma-separated: protomodular, rc-i, 2-assoc, right-identity.
        #[arg(long = "filter", value_delimiter = ',')]
        filters: Vec<String>,
        /// Keep one canonical form per relabeling class.
        #[arg(long)]
        dedup: bool,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        /// Write a JSON-lines catalog of the hits.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print counts per predicate combination.
        #[arg(long)]
        classify: bool,
    },
    /// Direct power of an algebra.
    Product {
        algebra: PathBuf,
        #[arg(long)]
        power: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient of an algebra by a congruence file.
    Quotient {
        algebra: PathBuf,
        congruence: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every congruence of an algebra.
    Congruences { algebra: PathBuf },
    /// Run every check on E45, its square and cube, and all their quotients.
    Example45,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Axiom {
    T0,
    T1,
    T2,
    Regular,
    CompletelyRegular,
}

impl Axiom {
    fn holds(self, ax: &SepAxioms) -> bool {
        match self {
            Axiom::T0 => ax.t0,
            Axiom::T1 => ax.t1,
            Axiom::T2 => ax.t2,
            Axiom::Regular => ax.regular,
            Axiom::CompletelyRegular => ax.completely_regular,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Base {
    All,
    Minimal,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum StrategyArg {
    Auto,
    FreeTheta,
    Raw,
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let workers = cli.config.workers.unwrap_or(0) as usize;
    let result = with_workers(workers, || {
        let mut buf = Vec::new();
        let r = dispatch(&cli, &mut buf);
        (r, buf)
    });
    let (result, buf) = result;
    let _ = out.write_all(&buf);
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Precondition { .. } | Error::Invariant(_) => 1,
        Error::Input { .. } | Error::Limit { .. } | Error::Io(_) | Error::Json(_) => 2,
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::input(path.display().to_string(), e.to_string()))
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

fn write_or_print(out: &mut dyn Write, path: Option<&Path>, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string(value)?;
    match path {
        Some(p) => fs::write(p, format!("{text}\n"))?,
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

fn print_reports(out: &mut dyn Write, json: bool, reports: &[CheckReport]) -> Result<bool> {
    if json {
        emit_json(out, &reports)?;
    } else {
        for r in reports {
            writeln!(out, "{r}")?;
            if let Some(c) = &r.counterexample {
                writeln!(out, "  counterexample: {}", serde_json::to_string(c)?)?;
            }
        }
    }
    Ok(reports.iter().all(|r| r.holds))
}

/// Returns whether everything checked holds.
fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let limits = cli.config.limits();
    let json = cli.config.json;
    match &cli.command {
        Command::Verify { algebra, checks } => {
            let alg: FiniteAlgebra = read_json(algebra)?;
            for c in checks {
                if !CHECK_NAMES.contains(&c.as_str()) {
                    return Err(Error::input("checks", format!("unknown check `{c}`")));
                }
            }
            let mut reports = Vec::new();
            for c in checks {
                reports.extend(named_check(&alg, c, &limits)?);
            }
            print_reports(out, json, &reports)
        }
        Command::Topologies {
            algebra,
            axiom,
            list,
            lemma41,
            theorem42,
        } => {
            let alg: FiniteAlgebra = read_json(algebra)?;
            let topos = compatible_topologies(&alg, &limits)?;
            let rows: Vec<(FiniteTopology, SepAxioms)> = topos
                .into_iter()
                .map(|t| {
                    let ax = sep_axioms(&t);
                    (t, ax)
                })
                .filter(|(_, ax)| axiom.is_none_or(|a| a.holds(ax)))
                .collect();
            let mut reports = Vec::new();
            if *lemma41 {
                reports.push(check_lemma_4_1(&alg, &limits)?.report);
            }
            if *theorem42 {
                reports.push(check_theorem_4_2(&alg, &limits)?.report);
            }
            if json {
                let listed: Vec<_> = rows.iter().map(|(t, ax)| json!({"topology": t, "axioms": ax})).collect();
                emit_json(out, &json!({"compatible": listed, "reports": reports}))?;
            } else if *list {
                for (t, _) in &rows {
                    emit_json(out, t)?;
                }
                print_reports(out, false, &reports)?;
            } else {
                writeln!(out, "{} compatible topologies", rows.len())?;
                writeln!(out, "{:<4}{:<5}{:<5}{:<5}{:<5}{:<6}opens", "#", "T0", "T1", "T2", "reg", "creg")?;
                let mark = |b: bool| if b { "yes" } else { "no" };
                for (k, (t, ax)) in rows.iter().enumerate() {
                    writeln!(
                        out,
                        "{:<4}{:<5}{:<5}{:<5}{:<5}{:<6}{}",
                        k,
                        mark(ax.t0),
                        mark(ax.t1),
                        mark(ax.t2),
                        mark(ax.regular),
                        mark(ax.completely_regular),
                        serde_json::to_string(&crate::topology::sorted_element_lists(t.opens()))?
                    )?;
                }
                print_reports(out, false, &reports)?;
            }
            Ok(reports.iter().all(|r| r.holds))
        }
        Command::Uniformity { algebra, topology, base } => {
            let alg: FiniteAlgebra = read_json(algebra)?;
            let topo: FiniteTopology = read_json(topology)?;
            if topo.s() != alg.s() {
                return Err(Error::input("topology", "carrier size differs from the algebra"));
            }
            check_rc_i(&alg).require()?;
            let base = match base {
                Base::All => NeighborhoodBase::All,
                Base::Minimal => NeighborhoodBase::Minimal,
            };
            let u = verify_c_conditions_with(&alg, &topo, base, &limits)?;
            let t0 = sep_axioms(&topo).t0;
            let lemma = if t0 { Some(check_lemma_4_4_with(&alg, &topo, base)?) } else { None };
            if json {
                emit_json(out, &json!({"uniformity": u, "lemma44": lemma}))?;
            } else {
                writeln!(out, "{} generator coverings", u.generators.len())?;
                for g in &u.generators {
                    writeln!(
                        out,
                        "  H = {}  blocks {}",
                        serde_json::to_string(&crate::topology::sorted_element_lists(g.h.sets()))?,
                        serde_json::to_string(&g.covering)?
                    )?;
                }
                print_reports(out, false, &[u.c1.clone(), u.c2.clone()])?;
                print_reports(out, false, std::slice::from_ref(&u.c3))?;
                for (h, r) in &u.refinements {
                    writeln!(
                        out,
                        "  star refinement of {} by {}",
                        serde_json::to_string(&crate::topology::sorted_element_lists(h.sets()))?,
                        serde_json::to_string(&crate::topology::sorted_element_lists(r.sets()))?
                    )?;
                }
                print_reports(out, false, std::slice::from_ref(&u.c4))?;
                match &lemma {
                    Some(l) => {
                        print_reports(out, false, std::slice::from_ref(&l.report))?;
                        if !l.report.holds {
                            writeln!(out, "  induced topology: {}", serde_json::to_string(&l.induced)?)?;
                        }
                    }
                    None => writeln!(out, "lemma-4.4: not run, topology is not T0")?,
                }
            }
            Ok(u.all_hold() && lemma.is_some_and(|l| l.report.holds))
        }
        Command::Search {
            s,
            n,
            filters,
            dedup,
            strategy,
            out: path,
            classify: want_classes,
        } => {
            let filters = filters.iter().map(|f| f.parse()).collect::<Result<Vec<Filter>>>()?;
            let spec = SearchSpec::new(*s, *n, &filters, *dedup);
            let strategy = match strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::FreeTheta => Strategy::FreeTheta,
                StrategyArg::Raw => Strategy::Raw,
            };
            let result = search_with(&spec, strategy, &limits)?;
            if let Some(p) = path {
                let mut text = catalog_lines(&result)?.join("\n");
                if !text.is_empty() {
                    text.push('\n');
                }
                fs::write(p, text)?;
            }
            let classes = if *want_classes { Some(classify(&spec, &limits)?) } else { None };
            if json {
                emit_json(
                    out,
                    &json!({
                        "spec": spec,
                        "found": result.algebras.len(),
                        "candidates": result.candidates,
                        "classification": classes,
                    }),
                )?;
            } else {
                writeln!(
                    out,
                    "{} results ({} candidates examined)",
                    result.algebras.len(),
                    result.candidates
                )?;
                if let Some(c) = &classes {
                    writeln!(out, "rc-i {}, 2-assoc {}", c.rc_i, c.two_associative)?;
                    if let Some(g) = c.groups {
                        writeln!(out, "groups {g}, group-collapse violations {}", c.group_collapse_violations)?;
                    }
                    for (flags, count) in &c.combinations {
                        writeln!(out, "  {count:>8}  {}", serde_json::to_string(flags)?)?;
                    }
                }
            }
            Ok(classes.is_none_or(|c| c.group_collapse_violations == 0))
        }
        Command::Product { algebra, power: k, out: path } => {
            let alg: FiniteAlgebra = read_json(algebra)?;
            let p = power(&alg, *k, &limits)?;
            write_or_print(out, path.as_deref(), &p)?;
            Ok(true)
        }
        Command::Quotient {
            algebra,
            congruence,
            out: path,
        } => {
            let alg: FiniteAlgebra = read_json(algebra)?;
            let r: Congruence = read_json(congruence)?;
            let q = quotient(&alg, &r)?;
            write_or_print(out, path.as_deref(), &q)?;
            Ok(true)
        }
        Command::Congruences { algebra } => {
            let alg: FiniteAlgebra = read_json(algebra)?;
            let cs = enumerate_congruences(&alg, &limits)?;
            if json {
                emit_json(out, &cs)?;
            } else {
                writeln!(out, "{} congruences", cs.len())?;
                for c in &cs {
                    emit_json(out, c)?;
                }
            }
            Ok(true)
        }
        Command::Example45 => {
            let bundle = verify_example_4_5(&limits)?;
            if json {
                emit_json(out, &bundle)?;
            } else {
                for e in &bundle.entries {
                    let at = match &e.topology {
                        Some(t) => format!(" on {}", serde_json::to_string(t)?),
                        None => String::new(),
                    };
                    for r in &e.reports {
                        writeln!(out, "[{}{at}] {r}", e.algebra)?;
                    }
                }
                for label in &bundle.topology_skipped {
                    writeln!(out, "[{label}] topology checks skipped: carrier above topology cap")?;
                }
                let failures = bundle.failures().len();
                if failures == 0 {
                    writeln!(out, "all checks pass")?;
                } else {
                    writeln!(out, "{failures} checks fail")?;
                }
            }
            Ok(bundle.all_pass())
        }
    }
}

fn named_check(alg: &FiniteAlgebra, name: &str, limits: &Limits) -> Result<Vec<CheckReport>> {
    Ok(match name {
        "protomodular" => vec![check_protomodular(alg)],
        "rc-i" => vec![check_rc_i(alg)],
        "rc-ii" => vec![check_rc_ii(alg)],
        "rc-iii" => vec![check_rc_iii(alg)],
        "rc-iv" => vec![check_rc_iv_semantic(alg)?],
        "rc-v" => vec![check_rc_v(alg)],
        "lemma31" => vec![check_lemma31_consistency(alg)?],
        "2-assoc" => vec![check_2_associative(alg)],
        "group" => vec![check_group_collapse(alg)?.report()],
        "abc" => check_derived_abc(alg)?.to_vec(),
        "right-identity" => vec![check_right_identity(alg)?],
        "derive-ti" => vec![
            derive_ti(alg, Route::ViaII, limits)?.1,
            derive_ti(alg, Route::ViaIII, limits)?.1,
        ],
        other => return Err(Error::input("checks", format!("unknown check `{other}`"))),
    })
}
