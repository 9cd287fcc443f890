//! `ambrep` subcommands. Exit codes: 0 success, 1 law or invariant failure,
//! 2 parse or usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use ambrep_core::catalog::meet_quantale;
use ambrep_core::dual::flip_name;
use ambrep_core::fuzzy::{compose_fuzzy, fuzzy_pinv};
use ambrep_core::{lawson_dual, pinv, MeetSemilattice, Quantale};
use clap::{Parser, Subcommand, ValueEnum};

use crate::demos::{demo_dual_gallery, demo_segments, render_gallery};
use crate::dsl::{render, render_item, Document};
use crate::gen::GeneratorConfig;
use crate::laws::{replay, run_suite, Instance, LawCtx, Outcome, Suite};
use crate::resolve::{fuzzy_item, load, poset_item, rep_item, Kind, ResolveOptions, Resolved};
use crate::Failure;

#[derive(Debug, Parser)]
#[command(name = "ambrep", version, about = "Workbench for finite semilattices and their representations")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a file and print it in canonical form.
    Parse { file: PathBuf },
    /// Validate the objects of a file, or replay one law on them.
    Check {
        file: PathBuf,
        #[arg(long)]
        object: Option<String>,
        /// Replace invalid representations by their least completion.
        #[arg(long)]
        normalize: bool,
        /// Run one law on the file's objects, as written by `laws`.
        #[arg(long)]
        law: Option<String>,
        #[arg(long, hide = true)]
        mutate_pinv: bool,
    },
    /// Print the Lawson dual of a semilattice, iterated K times.
    Dual {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long, default_value_t = 1)]
        iterate: usize,
    },
    /// Print the pseudo-inverse of a representation over the canonical duals.
    Pinv {
        file: PathBuf,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        normalize: bool,
    },
    /// Compose two representations, crisp or lattice-valued.
    Compose {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        reps: Vec<String>,
        #[arg(long)]
        quantale: Option<String>,
        #[arg(long)]
        normalize: bool,
    },
    /// Run a seeded law suite.
    Laws {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, env = "AMBREP_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long = "max-size", default_value_t = 6)]
        max_size: usize,
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true)]
        mutate_pinv: bool,
    },
    /// Print one of the worked examples.
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
        /// Grid size for the segments demo.
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DemoKind {
    Segments,
    Duals,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_file(path: &Path, normalize: bool) -> Result<(Document, Resolved), Failure> {
    load(&read(path)?, ResolveOptions { normalize })
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(format!("write failed: {e}"))
}

fn semilattice<'a>(r: &'a Resolved, name: &str) -> Result<&'a Arc<MeetSemilattice>, Failure> {
    r.semilattices
        .get(name)
        .ok_or_else(|| Failure::Usage(format!("no semilattice named `{name}`")))
}

fn carrier_name(r: &Resolved, s: &Arc<MeetSemilattice>) -> String {
    r.name_of(s).unwrap_or("?").to_owned()
}

fn describe(r: &Resolved, name: &str, kind: Kind) -> String {
    match kind {
        Kind::Poset => {
            let p = &r.posets[name];
            let shape = if r.lattices.contains_key(name) {
                "lattice"
            } else if r.semilattices.contains_key(name) {
                "meet-semilattice with zero"
            } else {
                "poset without all meets or a zero"
            };
            let noun = if p.len() == 1 { "element" } else { "elements" };
            format!("poset {name}: {} {noun}, {shape}", p.len())
        }
        Kind::Map => {
            let f = &r.maps[name];
            let (a, b) = (carrier_name(r, f.source()), carrier_name(r, f.target()));
            format!("map {name} : {a} -> {b}: zero-preserving meet morphism")
        }
        Kind::Rep => {
            let rep = &r.reps[name];
            let (a, b) = (carrier_name(r, rep.source()), carrier_name(r, rep.target()));
            let inv = match rep.pseudo_invertibility_witness() {
                None => "pseudo-invertible".to_string(),
                Some(w) => format!("not pseudo-invertible ({w})"),
            };
            let arrow = match rep.sem0_witness() {
                None => "induced by a morphism".to_string(),
                Some(w) => format!("not induced by a morphism ({w})"),
            };
            format!("rep {name} : {a} => {b}: valid, {inv}, {arrow}")
        }
        Kind::FuzzyRep => {
            let rep = &r.fuzzy[name];
            let (a, b) = (carrier_name(r, rep.source()), carrier_name(r, rep.target()));
            let inv = match rep.pseudo_invertibility_witness() {
                None => "pseudo-invertible".to_string(),
                Some(w) => format!("not pseudo-invertible ({w})"),
            };
            format!("fuzzyrep {name} : {a} => {b}: valid, {inv}")
        }
        Kind::Quantale => {
            let q = &r.quantales[name];
            let l = q.lattice();
            let mut props = vec![format!("unit {}", l.name(q.unit()))];
            if q.is_commutative() {
                props.push("commutative".into());
            }
            if q.is_integral() {
                props.push("integral".into());
            }
            format!("quantale {name}: {}", props.join(", "))
        }
    }
}

fn cmd_check(
    out: &mut dyn Write,
    file: &Path,
    object: Option<&str>,
    normalize: bool,
    law: Option<&str>,
    mutate_pinv: bool,
) -> Result<(), Failure> {
    let (doc, r) = load_file(file, normalize)?;
    if let Some(id) = law {
        let inst = Instance::from_resolved(&doc, &r);
        let ctx = LawCtx { mutate_pinv };
        return match replay(id, &inst, &ctx) {
            None => Err(Failure::Usage(format!("unknown law `{id}`"))),
            Some(Outcome::Pass) => writeln!(out, "{id}: pass").map_err(io),
            Some(Outcome::Skip) => writeln!(out, "{id}: not applicable").map_err(io),
            Some(Outcome::Fail(detail)) => Err(Failure::Invariant(format!("{id}: fail: {detail}"))),
        };
    }
    let mut shown = 0;
    for (name, kind) in &r.order {
        if object.is_some_and(|o| o != name) {
            continue;
        }
        shown += 1;
        writeln!(out, "{}", describe(&r, name, *kind)).map_err(io)?;
    }
    match object {
        Some(o) if shown == 0 => Err(Failure::Usage(format!("no object named `{o}`"))),
        _ => Ok(()),
    }
}

fn cmd_dual(out: &mut dyn Write, file: &Path, object: &str, iterate: usize) -> Result<(), Failure> {
    let (_, r) = load_file(file, false)?;
    let base = semilattice(&r, object)?.clone();
    let mut doc = Document::default();
    let mut current = base.clone();
    let mut name = object.to_owned();
    for _ in 0..iterate {
        current = lawson_dual(&current).semilattice().clone();
        name = format!("^{name}");
        doc.push(poset_item(&name, current.poset()));
    }
    write!(out, "{}", render(&doc)).map_err(io)?;
    writeln!(
        out,
        "# after {iterate} step(s): isomorphic to {object}: {}",
        current.is_isomorphic(base.poset())
    )
    .map_err(io)
}

fn cmd_pinv(out: &mut dyn Write, file: &Path, rep: &str, normalize: bool) -> Result<(), Failure> {
    let (doc, r) = load_file(file, normalize)?;
    let mut result = Document::default();
    let push_carriers = |result: &mut Document, s: &str, t: &str| {
        for (name, carrier) in [(t, &r.semilattices[t]), (s, &r.semilattices[s])] {
            if result.get(&flip_name(name)).is_none() {
                result.push(poset_item(&flip_name(name), lawson_dual(carrier).semilattice().poset()));
            }
        }
    };
    if let Some(x) = r.reps.get(rep) {
        let (s, t) = (carrier_name(&r, x.source()), carrier_name(&r, x.target()));
        push_carriers(&mut result, &s, &t);
        result.push(rep_item(&flip_name(rep), &flip_name(&t), &flip_name(&s), &pinv(x)));
    } else if let Some(x) = r.fuzzy.get(rep) {
        let (s, t) = (carrier_name(&r, x.source()), carrier_name(&r, x.target()));
        let Some(crate::dsl::Item::FuzzyRep(def)) = doc.get(rep) else { unreachable!() };
        push_carriers(&mut result, &s, &t);
        if result.get(&def.lattice).is_none() {
            result.push(poset_item(&def.lattice, &r.posets[&def.lattice]));
        }
        result.push(fuzzy_item(&flip_name(rep), &flip_name(&t), &flip_name(&s), &def.lattice, &fuzzy_pinv(x)));
    } else {
        return Err(Failure::Usage(format!("no representation named `{rep}`")));
    }
    write!(out, "{}", render(&result)).map_err(io)
}

fn quantale_for(r: &Resolved, doc: &Document, lattice: &str, name: Option<&str>) -> Result<Quantale, Failure> {
    if let Some(n) = name {
        return r
            .quantales
            .get(n)
            .cloned()
            .ok_or_else(|| Failure::Usage(format!("no quantale named `{n}`")));
    }
    let declared = doc.items.iter().find_map(|i| match i {
        crate::dsl::Item::Quantale(q) if q.lattice == lattice => Some(q.name.clone()),
        _ => None,
    });
    if let Some(n) = declared {
        return Ok(r.quantales[&n].clone());
    }
    let l = &r.lattices[lattice];
    if !l.is_distributive() {
        return Err(Failure::Usage(format!("`{lattice}` is not distributive; pass --quantale")));
    }
    Ok(meet_quantale((**l).clone()))
}

fn cmd_compose(
    out: &mut dyn Write,
    file: &Path,
    reps: &[String],
    quantale: Option<&str>,
    normalize: bool,
) -> Result<(), Failure> {
    let [a, b] = reps else {
        return Err(Failure::Usage("--reps takes exactly two names".into()));
    };
    let (doc, r) = load_file(file, normalize)?;
    let name = format!("{a}.{b}");
    let item = if let (Some(x), Some(y)) = (r.reps.get(a), r.reps.get(b)) {
        let z = x.compose(y).map_err(|e| Failure::Invariant(e.to_string()))?;
        rep_item(&name, &carrier_name(&r, z.source()), &carrier_name(&r, z.target()), &z)
    } else if let (Some(x), Some(y)) = (r.fuzzy.get(a), r.fuzzy.get(b)) {
        let Some(crate::dsl::Item::FuzzyRep(def)) = doc.get(a) else { unreachable!() };
        let q = quantale_for(&r, &doc, &def.lattice, quantale)?;
        let z = compose_fuzzy(x, y, &q).map_err(|e| Failure::Invariant(e.to_string()))?;
        fuzzy_item(&name, &carrier_name(&r, z.source()), &carrier_name(&r, z.target()), &def.lattice, &z)
    } else {
        return Err(Failure::Usage(format!("`{a}` and `{b}` are not two representations of one kind")));
    };
    write!(out, "{}", render_item(&item)).map_err(io)
}

fn cmd_laws(
    out: &mut dyn Write,
    suite: &str,
    seed: u64,
    cases: usize,
    max_size: usize,
    json: bool,
    mutate_pinv: bool,
) -> Result<(), Failure> {
    let suite = Suite::parse(suite).ok_or_else(|| Failure::Usage(format!("unknown suite `{suite}`")))?;
    let cfg = GeneratorConfig {
        seed,
        cases,
        max_size,
        ..GeneratorConfig::default()
    };
    let report = run_suite(suite, &cfg, &LawCtx { mutate_pinv });
    if json {
        writeln!(out, "{}", report.to_json()).map_err(io)?;
    } else {
        write!(out, "{}", report.to_text()).map_err(io)?;
    }
    match report.failures() {
        0 => Ok(()),
        n => Err(Failure::Invariant(format!("{n} law checks failed"))),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Parse { file } => {
            let doc = crate::dsl::parse(&read(&file)?)?;
            write!(out, "{}", render(&doc)).map_err(io)
        }
        Command::Check {
            file,
            object,
            normalize,
            law,
            mutate_pinv,
        } => cmd_check(out, &file, object.as_deref(), normalize, law.as_deref(), mutate_pinv),
        Command::Dual { file, object, iterate } => cmd_dual(out, &file, &object, iterate),
        Command::Pinv { file, rep, normalize } => cmd_pinv(out, &file, &rep, normalize),
        Command::Compose {
            file,
            reps,
            quantale,
            normalize,
        } => cmd_compose(out, &file, &reps, quantale.as_deref(), normalize),
        Command::Laws {
            suite,
            seed,
            cases,
            max_size,
            json,
            mutate_pinv,
        } => cmd_laws(out, &suite, seed, cases, max_size, json, mutate_pinv),
        Command::Demo { which, n } => match which {
            DemoKind::Segments => {
                let report = demo_segments(n).map_err(|e| Failure::Usage(e.to_string()))?;
                write!(out, "{report}").map_err(io)
            }
            DemoKind::Duals => write!(out, "{}", render_gallery(&demo_dual_gallery())).map_err(io),
        },
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}
