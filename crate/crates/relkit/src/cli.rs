//! The `relkit` command line.
//!
//! Exit codes: 0 when everything validates or the checked property holds,
//! 1 on a law violation or a negative verdict, 2 on malformed input or any
//! other error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{
    check_algebra_object, check_opalgebra_object, coincidence_check, comparison, em_category, identity_opalgebra,
    kleisli, monad_as_algebra, monad_as_opalgebra, resolution_from_em, resolution_from_kleisli, GradingPool,
};
use crate::corpus;
use crate::dual::{co_em, co_kleisli, coresolution_from_co_em, coresolution_from_co_kleisli, RelativeComonad};
use crate::error::{Budget, Certified, Error, Result};
use crate::formal::{absolute_check, check_weighted_colimit, check_weighted_limit, density_check, is_fully_faithful, CylinderCheck};
use crate::json::{to_json, Emitter, Entry, Item, Kind, Workspace};
use crate::relmonad::{
    compose_adjunctions, enumerate_monad_morphisms, enumerate_monads, induced_monad, pushforward_monad, to_loose_monad,
    to_monoid_form, PresentationKind, RelativeMonad,
};

#[derive(Debug, Parser)]
#[command(name = "relkit", version, about = "Finite enriched category theory and relative monads")]
pub struct Cli {
    /// Directory or file of JSON objects; the built-in corpus when omitted.
    #[arg(long, global = true)]
    pub workspace: Option<PathBuf>,
    /// Enumeration budget in candidates (default 1000000).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate every object of the workspace or of the given paths.
    Validate { paths: Vec<PathBuf> },
    /// Kleisli category, its opalgebra and the Kleisli resolution.
    Kleisli { monad: String },
    /// Eilenberg-Moore category, its algebra and the EM resolution.
    Em { monad: String },
    /// Co-Kleisli category of a relative comonad.
    Cokleisli { comonad: String },
    /// Co-Eilenberg-Moore category of a relative comonad.
    Coem { comonad: String },
    /// Comparison functor from the Kleisli to the EM category.
    Compare { monad: String },
    /// Monad induced by a relative adjunction.
    Induce {
        adjunction: String,
        /// Name for the induced monad.
        #[arg(long)]
        name: Option<String>,
    },
    /// Composite of an inner adjunction with an outer one.
    Compose {
        inner: String,
        outer: String,
        /// `l'` with `l' ; j` the outer left leg.
        #[arg(long)]
        lprime: String,
    },
    /// Pushforward of a monad along an outer adjunction.
    Pushforward {
        monad: String,
        outer: String,
        #[arg(long)]
        lprime: String,
    },
    /// Change the presentation of an adjunction or of a monad.
    Translate {
        name: String,
        #[arg(long, value_enum)]
        to: Option<Target>,
        /// Shorthand for `--to monoid-form`.
        #[arg(long)]
        monoid_form: bool,
    },
    /// Dual of a named object, or of every object in a file.
    Dualize { target: String },
    /// Bounded check of an (op)algebra-object universal property.
    Certify(CertifyArgs),
    /// Formal checks on functors and cylinders.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Exhaustive enumeration of monads or monad morphisms.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateCmd,
    },
    /// Write the built-in corpus as one JSON file per object.
    #[command(hide = true)]
    ExportCorpus { dir: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Target {
    HomIso,
    UniversalArrow,
    UnitCounit,
    Couniversal,
    MonoidForm,
    LooseMonad,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Candidate {
    /// The Kleisli opalgebra or the EM algebra.
    Universal,
    /// `(t, dag)` itself.
    Monad,
    /// `1_A` with some opalgebra structure (trivial monads).
    Identity,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "object")]
pub struct Which {
    #[arg(long)]
    opalgebra_object: bool,
    #[arg(long)]
    algebra_object: bool,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    monad: String,
    #[command(flatten)]
    which: Which,
    #[arg(long, value_enum, default_value = "universal")]
    candidate: Candidate,
}

#[derive(Debug, Args)]
pub struct Cylinder {
    /// Weight `p : Y -|-> Z`.
    #[arg(long)]
    weight: String,
    /// Diagram `f : Y -> X`.
    #[arg(long)]
    diagram: String,
    /// Candidate `c : Z -> X`.
    #[arg(long)]
    candidate: String,
    /// Cylinder form `p => X(f, c)`.
    #[arg(long)]
    cylinder: String,
}

#[derive(Debug, Subcommand)]
pub enum CheckCmd {
    Colimit(Cylinder),
    Limit(Cylinder),
    Dense { functor: String },
    Ff { functor: String },
    Absolute {
        #[arg(long)]
        root: String,
        #[command(flatten)]
        cyl: Cylinder,
    },
    /// Whether `l` presents the same Kleisli category as the monad.
    Coincidence { monad: String, l: String },
}

#[derive(Debug, Subcommand)]
pub enum EnumerateCmd {
    /// Relative monads on a root.
    Monads {
        root: String,
        /// Keep only monads with every `t(x) <= N`.
        #[arg(long)]
        max_t: Option<usize>,
    },
    /// Monad morphisms between two monads on the same root.
    Morphisms { source: String, target: String },
}

/// What a command produced.
pub struct Outcome {
    pub code: i32,
    pub json: String,
}

impl Outcome {
    fn ok(json: String) -> Outcome {
        Outcome { code: 0, json }
    }

    fn verdict(holds: bool, json: String) -> Outcome {
        Outcome { code: if holds { 0 } else { 1 }, json }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::LawViolation(_) => 1,
        _ => 2,
    }
}

fn load(cli: &Cli) -> Result<Workspace> {
    let mut ws = match &cli.workspace {
        Some(p) => Workspace::load(p)?,
        None => corpus_workspace()?,
    };
    if let Some(b) = cli.budget {
        ws.budget = Some(Budget(b as u128));
    }
    Ok(ws)
}

pub fn corpus_workspace() -> Result<Workspace> {
    let mut ws = Workspace::new();
    for e in corpus::entries() {
        ws.insert(e)?;
    }
    Ok(ws)
}

/// Looked-up inputs must validate before they are used.
fn monad(ws: &Workspace, n: &str) -> Result<RelativeMonad> {
    let m = ws.monad(n)?;
    m.validate().into_result()?;
    Ok(m)
}

fn comonad(ws: &Workspace, n: &str) -> Result<RelativeComonad> {
    let d = ws.comonad(n)?;
    d.validate().into_result()?;
    Ok(d)
}

fn adjunction(ws: &Workspace, n: &str) -> Result<crate::relmonad::RelativeAdjunction> {
    let a = ws.adjunction(n)?;
    a.validate().into_result()?;
    Ok(a)
}

fn bundle(em: Emitter) -> String {
    to_json(&em.into_bundle())
}

fn cylinder_json(c: &CylinderCheck) -> serde_json::Value {
    json!({ "verdict": c.verdict, "failure": c.failure, "comparisons": c.comparisons.len() })
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    if let Command::ExportCorpus { dir } = &cli.command {
        export_corpus(dir)?;
        return Ok(Outcome::ok(String::new()));
    }
    if let Command::Validate { paths } = &cli.command {
        let ws = if paths.is_empty() {
            load(cli)?
        } else {
            let mut ws = Workspace::new();
            for p in paths {
                ws.load_into(p)?;
            }
            ws
        };
        let reports = ws.validate_all();
        let ok = reports.iter().all(|r| r.is_ok());
        let failing: Vec<_> = reports.iter().filter(|r| !r.is_ok()).collect();
        let out = json!({ "ok": ok, "checked": reports.len(), "failures": failing });
        return Ok(Outcome::verdict(ok, to_json(&out)));
    }
    let ws = load(cli)?;
    let budget = ws.budget();
    let mut em = Emitter::new();
    match &cli.command {
        Command::Validate { .. } | Command::ExportCorpus { .. } => unreachable!(),
        Command::Kleisli { monad: n } => {
            let t = monad(&ws, n)?;
            let (kl, res) = resolution_from_kleisli(&t)?;
            em.category(&kl.cat);
            em.functor(&kl.k);
            em.form(&kl.opext);
            em.adjunction(&res, PresentationKind::HomIso);
            Ok(Outcome::ok(bundle(em)))
        }
        Command::Em { monad: n } => {
            let t = monad(&ws, n)?;
            let (e, res) = resolution_from_em(&t, budget)?;
            em.category(&e.cat);
            em.functor(&e.u);
            em.form(&e.ext);
            em.adjunction(&res, PresentationKind::HomIso);
            Ok(Outcome::ok(bundle(em)))
        }
        Command::Cokleisli { comonad: n } => {
            let d = comonad(&ws, n)?;
            let ck = co_kleisli(&d)?;
            em.category(&ck.cat);
            em.functor(&ck.cok);
            em.form(&ck.form);
            em.coadjunction(&coresolution_from_co_kleisli(&d)?);
            Ok(Outcome::ok(bundle(em)))
        }
        Command::Coem { comonad: n } => {
            let d = comonad(&ws, n)?;
            let ce = co_em(&d, budget)?;
            em.category(&ce.cat);
            em.functor(&ce.cou);
            em.form(&ce.form);
            em.coadjunction(&coresolution_from_co_em(&d, budget)?);
            Ok(Outcome::ok(bundle(em)))
        }
        Command::Compare { monad: n } => {
            let t = monad(&ws, n)?;
            let (i, ok) = comparison(&t, budget)?;
            if !ok {
                return Err(Error::LawViolation(format!("comparison triangles for {} do not commute", t.name)));
            }
            em.functor(&i);
            Ok(Outcome::ok(bundle(em)))
        }
        Command::Induce { adjunction: n, name } => {
            let mut m = induced_monad(&adjunction(&ws, n)?)?;
            if let Some(name) = name {
                m.name = name.clone();
            }
            em.monad(&m);
            Ok(Outcome::ok(bundle(em)))
        }
        Command::Compose { inner, outer, lprime } => {
            let c = compose_adjunctions(&adjunction(&ws, inner)?, &adjunction(&ws, outer)?, &ws.functor(lprime)?)?;
            c.validate().into_result()?;
            em.adjunction(&c, PresentationKind::HomIso);
            Ok(Outcome::ok(bundle(em)))
        }
        Command::Pushforward { monad: n, outer, lprime } => {
            let t = monad(&ws, n)?;
            let outer = adjunction(&ws, outer)?;
            let (m, tau) = pushforward_monad(&outer, &ws.functor(lprime)?, &t)?;
            m.validate().into_result()?;
            let src = induced_monad(&outer)?;
            tau.validate(&src, &m).into_result()?;
            em.monad_morphism(&tau, &src, &m);
            Ok(Outcome::ok(bundle(em)))
        }
        Command::Translate { name, to, monoid_form } => {
            let to = match (to, monoid_form) {
                (_, true) => Target::MonoidForm,
                (Some(t), false) => *t,
                (None, false) => return Err(Error::malformed("translate needs --to or --monoid-form")),
            };
            let kind = match to {
                Target::HomIso => Some(PresentationKind::HomIso),
                Target::UniversalArrow => Some(PresentationKind::UniversalArrow),
                Target::UnitCounit => Some(PresentationKind::UnitCounit),
                Target::Couniversal => Some(PresentationKind::Couniversal),
                Target::MonoidForm | Target::LooseMonad => None,
            };
            match kind {
                Some(k) => {
                    em.adjunction(&adjunction(&ws, name)?, k);
                }
                None => {
                    let t = monad(&ws, name)?;
                    if matches!(to, Target::MonoidForm) {
                        let mf = to_monoid_form(&t)?;
                        mf.validate().into_result()?;
                        em.functor(&mf.t);
                        em.form(&mf.monoid.mult);
                        em.form(&mf.monoid.unit);
                    } else {
                        let lm = to_loose_monad(&t)?;
                        lm.validate().into_result()?;
                        em.form(&lm.mult);
                        em.form(&lm.unit);
                    }
                }
            }
            Ok(Outcome::ok(bundle(em)))
        }
        Command::Dualize { target } => {
            let p = Path::new(target);
            if p.is_file() {
                let src = Workspace::load(p)?;
                for e in &src.entries {
                    em.entry(&e.dual()?);
                }
            } else {
                em.entry(&ws.find(target)?.dual()?);
            }
            Ok(Outcome::ok(bundle(em)))
        }
        Command::Certify(args) => {
            let t = monad(&ws, &args.monad)?;
            let verdict = if args.which.opalgebra_object {
                let cand = match args.candidate {
                    Candidate::Universal => Some(kleisli(&t)?.opalgebra()),
                    Candidate::Monad => Some(monad_as_opalgebra(&t)?),
                    Candidate::Identity => identity_opalgebra(&t, budget)?,
                };
                match cand {
                    Some(c) => check_opalgebra_object(&t, &c, &GradingPool::for_monad(&t, &[c.a.cod.clone()])?, budget)?,
                    None => Certified::Refuted { budget: budget.0, reason: "the candidate carries no opalgebra structure".into() },
                }
            } else {
                let cand = match args.candidate {
                    Candidate::Universal => em_category(&t, budget)?.algebra(),
                    Candidate::Monad => monad_as_algebra(&t)?,
                    Candidate::Identity => return Err(Error::malformed("--candidate identity applies to opalgebra objects")),
                };
                check_algebra_object(&t, &cand, &GradingPool::for_monad(&t, &[cand.e.dom.clone()])?, budget)?
            };
            Ok(Outcome::verdict(verdict.holds(), to_json(&verdict)))
        }
        Command::Check { what } => {
            let (holds, out) = match what {
                CheckCmd::Colimit(c) | CheckCmd::Limit(c) => {
                    let (p, f, k) = (ws.distributor(&c.weight)?, ws.functor(&c.diagram)?, ws.functor(&c.candidate)?);
                    let phi = match ws.get(Kind::Form, &c.cylinder) {
                        Some(Entry::Form(phi)) => phi.clone(),
                        _ => return Err(Error::malformed(format!("missing reference: form {}", c.cylinder))),
                    };
                    let r = if matches!(what, CheckCmd::Colimit(_)) {
                        check_weighted_colimit(&p, &f, &k, &phi, budget)?
                    } else {
                        check_weighted_limit(&p, &f, &k, &phi, budget)?
                    };
                    (r.verdict, cylinder_json(&r))
                }
                CheckCmd::Absolute { root, cyl } => {
                    let (j, p, f, k) =
                        (ws.functor(root)?, ws.distributor(&cyl.weight)?, ws.functor(&cyl.diagram)?, ws.functor(&cyl.candidate)?);
                    let phi = match ws.get(Kind::Form, &cyl.cylinder) {
                        Some(Entry::Form(phi)) => phi.clone(),
                        _ => return Err(Error::malformed(format!("missing reference: form {}", cyl.cylinder))),
                    };
                    let r = absolute_check(&j, &p, &f, &k, &phi)?;
                    (r.verdict, cylinder_json(&r))
                }
                CheckCmd::Dense { functor } => {
                    let r = density_check(&ws.functor(functor)?, budget)?;
                    (r.verdict, cylinder_json(&r))
                }
                CheckCmd::Ff { functor } => {
                    let v = is_fully_faithful(&ws.functor(functor)?);
                    (v, json!({ "verdict": v }))
                }
                CheckCmd::Coincidence { monad: n, l } => {
                    let v = coincidence_check(&monad(&ws, n)?, &ws.functor(l)?, budget)?;
                    (v, json!({ "verdict": v }))
                }
            };
            Ok(Outcome::verdict(holds, to_json(&out)))
        }
        Command::Enumerate { what } => {
            let count = match what {
                EnumerateCmd::Monads { root, max_t } => {
                    let j = ws.functor(root)?;
                    let keep = |t: &[usize]| max_t.map_or(true, |m| t.iter().all(|&y| y <= m));
                    let ms = enumerate_monads(&j, keep, budget)?;
                    for m in &ms {
                        em.monad(m);
                    }
                    ms.len()
                }
                EnumerateCmd::Morphisms { source, target } => {
                    let (s, t) = (monad(&ws, source)?, monad(&ws, target)?);
                    let ms = enumerate_monad_morphisms(&s, &t, budget)?;
                    for (k, m) in ms.iter().enumerate() {
                        let mut m = m.clone();
                        m.name = format!("{}_{}_{k}", s.name, t.name);
                        em.monad_morphism(&m, &s, &t);
                    }
                    ms.len()
                }
            };
            Ok(Outcome::ok(to_json(&Enumeration { count, budget: budget.0, listing: em.into_bundle() })))
        }
    }
}

#[derive(Serialize)]
struct Enumeration {
    count: usize,
    budget: u128,
    listing: Item,
}

fn file_stem(kind: Kind, name: &str) -> String {
    let clean: String = name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' }).collect();
    format!("{}.{clean}.json", kind.as_str())
}

/// One file per object, named `<kind>.<name>.json`.
pub fn export_corpus(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::malformed(format!("{}: {e}", dir.display())))?;
    let ws = corpus_workspace()?;
    let mut em = Emitter::new();
    for e in &ws.entries {
        em.entry(e);
    }
    for item in em.into_items() {
        let (kind, name) = item_key(&item);
        let path = dir.join(file_stem(kind, &name));
        std::fs::write(&path, to_json(&item)).map_err(|e| Error::malformed(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn item_key(item: &Item) -> (Kind, String) {
    match item {
        Item::Base { name, .. } => (Kind::Base, name.clone()),
        Item::Category { name, .. } => (Kind::Category, name.clone()),
        Item::Functor { name, .. } => (Kind::Functor, name.clone()),
        Item::Distributor { name, .. } => (Kind::Distributor, name.clone()),
        Item::Form { name, .. } => (Kind::Form, name.clone()),
        Item::Monad { name, .. } => (Kind::Monad, name.clone()),
        Item::Comonad { name, .. } => (Kind::Comonad, name.clone()),
        Item::Adjunction { name, .. } => (Kind::Adjunction, name.clone()),
        Item::Coadjunction { name, .. } => (Kind::Coadjunction, name.clone()),
        Item::MonadMorphism { name, .. } => (Kind::MonadMorphism, name.clone()),
        Item::Config { .. } | Item::Bundle { .. } => unreachable!("not emitted per object"),
    }
}

/// Parses arguments, runs, prints, and returns the exit code.
/// Parses and runs one command without touching stdout; usage errors come
/// back as `MalformedTables` with clap's message.
pub fn run_args(args: impl IntoIterator<Item = String>) -> Result<Outcome> {
    let cli = Cli::try_parse_from(args).map_err(|e| Error::malformed(e.to_string()))?;
    execute(&cli)
}

pub fn main_with(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(p) => std::fs::write(p, &out.json).map_err(|e| e.to_string()),
                None => std::io::stdout().write_all(out.json.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            let report = json!({ "error": e.to_string(), "exit": exit_code(&e) });
            print!("{}", to_json(&report));
            exit_code(&e)
        }
    }
}
