use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monoidlab::catalog::{lookup, Ambient, Backend, CatalogEntry, PresentedMonoid, REGISTRY};
use monoidlab::conditions::{exit_code, replay, run_condition, Bounds, Report};
use monoidlab::ideals::{enumerate_ideals, render_hull, Monoid};
use monoidlab::ktheory::k_descriptor;
use monoidlab::oracles::oracle_by_name;
use monoidlab::semilattice::{boundary_report, truncation, FiniteSemilattice, DEFAULT_BOUND};
use monoidlab::words::{decide_equal_rr, RrVerdict};
use monoidlab::{with_backend, Error};

const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(name = "monoidlab", version, about = "Word problems, constructible ideals and condition checkers for monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Args, Clone)]
struct Common {
    /// Catalog name, e.g. nat2, numerical:1, braid:3, pres:FILE, raam:FILE
    #[arg(long)]
    semigroup: Option<String>,
    /// Ambient group: native, fractions, or an oracle such as free:2, metabelian:2, thompson
    #[arg(long, alias = "group")]
    ambient: Option<String>,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Defaults to 2*depth+2
    #[arg(long)]
    max_word_len: Option<usize>,
    #[arg(long, default_value_t = monoidlab::catalog::DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, default_value_t = 3)]
    family_size: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

impl Common {
    fn bounds(&self) -> Result<Bounds, Error> {
        if self.depth == 0 || self.budget == 0 || self.family_size == 0 || self.max_word_len == Some(0) {
            return Err(Error::Invalid("bounds must be positive".into()));
        }
        let mut b = Bounds::with_depth(self.depth);
        if let Some(l) = self.max_word_len {
            b.max_word_len = l;
        }
        b.budget = self.budget;
        b.family_size = self.family_size;
        Ok(b)
    }

    fn entry(&self) -> Result<CatalogEntry, Error> {
        let name = self.semigroup.as_deref().ok_or_else(|| Error::Invalid("--semigroup is required".into()))?;
        let mut entry = lookup(name)?;
        if let Backend::Presented(pm) = &mut entry.backend {
            *pm = PresentedMonoid::new(pm.pres.clone(), self.budget);
        }
        Ok(entry)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Word problem in a semigroup or ambient group
    Word {
        #[command(subcommand)]
        op: WordOp,
    },
    /// Constructible right ideals
    Ideals {
        #[command(subcommand)]
        op: IdealsOp,
    },
    /// Run a condition checker
    Check {
        #[arg(value_parser = ["independence", "toeplitz", "quasi-lattice", "reversibility", "reversibility-left", "reversibility-right", "boundary-eq", "pure-infinite", "g0"])]
        condition: String,
        #[command(flatten)]
        common: Common,
        /// g = p q^-1 for toeplitz and quasi-lattice
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
    },
    /// Characters, maximal characters and Omega of a truncated ideal semilattice
    Boundary {
        #[command(flatten)]
        common: Common,
        /// Read a semilattice dump instead of truncating a catalog entry
        #[arg(long)]
        dump: Option<String>,
    },
    /// K-theory index set
    Ktheory {
        #[command(flatten)]
        common: Common,
        /// Synthetic vertex orbit counts for graph products, comma separated
        #[arg(long, value_delimiter = ',')]
        orbit_sizes: Option<Vec<usize>>,
    },
    /// Built-in examples
    Catalog {
        #[command(subcommand)]
        op: CatalogOp,
    },
    /// Re-verify the certificates in a structured report file
    Replay { file: String },
    /// Seeded property suite
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum WordOp {
    Eq {
        u: String,
        v: String,
        #[command(flatten)]
        common: Common,
    },
    Reduce {
        w: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum IdealsOp {
    Enumerate {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum CatalogOp {
    List,
    Show { name: String },
}

struct Output {
    text: String,
    code: u8,
}

fn out(text: String) -> Output {
    Output { text, code: 0 }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(o) => {
            print!("{}", o.text);
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Internal(_)) { EXIT_INTERNAL } else { EXIT_USAGE })
        }
    }
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::Word { op: WordOp::Eq { u, v, common } } => word_eq(&u, &v, &common),
        Command::Word { op: WordOp::Reduce { w, common } } => word_reduce(&w, &common),
        Command::Ideals { op: IdealsOp::Enumerate { common } } => ideals(&common),
        Command::Check { condition, common, p, q } => {
            let entry = common.entry()?;
            let pq = match (&p, &q) {
                (Some(p), Some(q)) => Some((p.as_str(), q.as_str())),
                (None, None) => None,
                _ => return Err(Error::Invalid("--p and --q go together".into())),
            };
            let report = run_condition(&condition, &entry, common.ambient.as_deref(), &common.bounds()?, pq)?;
            Ok(reports(&[report], common.format))
        }
        Command::Boundary { common, dump } => boundary(&common, dump.as_deref()),
        Command::Ktheory { common, orbit_sizes } => {
            let entry = common.entry()?;
            if let Some(a) = &common.ambient {
                Ambient::resolve(a, &entry)?;
            }
            let d = k_descriptor(&entry, &common.bounds()?, orbit_sizes.as_deref())?;
            Ok(out(match common.format {
                Format::Human => d.to_human(),
                Format::Structured => json(&d),
            }))
        }
        Command::Catalog { op: CatalogOp::List } => {
            Ok(out(REGISTRY.iter().map(|(n, s)| format!("{n:<18} {s}\n")).collect()))
        }
        Command::Catalog { op: CatalogOp::Show { name } } => catalog_show(&name),
        Command::Replay { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Error::Invalid(format!("cannot read {file}: {e}")))?;
            let list: Vec<Report> = match serde_json::from_str::<Vec<Report>>(&text) {
                Ok(l) => l,
                Err(_) => vec![Report::from_json(&text)?],
            };
            let mut text = String::new();
            let mut ok = true;
            for r in &list {
                let good = replay(r)?;
                ok &= good;
                text.push_str(&format!(
                    "{} {} for {}: {}\n",
                    if good { "REPLAYED" } else { "MISMATCH" },
                    r.condition,
                    r.semigroup,
                    r.status.as_str()
                ));
            }
            Ok(Output { text, code: if ok { 0 } else { EXIT_INTERNAL } })
        }
        Command::Selftest { seed, format } => {
            let results = monoidlab::selftest::run_selftest(seed);
            let ok = results.iter().all(|r| r.passed());
            let text = match format {
                Format::Human => results
                    .iter()
                    .map(|r| {
                        let verdict = if r.passed() { "PASS" } else { "FAIL" };
                        let why = r.failure.as_deref().map(|f| format!(" ({f})")).unwrap_or_default();
                        format!("{verdict} {} [{} samples]{why}\n", r.name, r.samples)
                    })
                    .collect(),
                Format::Structured => {
                    let v: Vec<serde_json::Value> = results
                        .iter()
                        .map(|r| serde_json::json!({"property": r.name, "samples": r.samples, "failure": r.failure}))
                        .collect();
                    json(&v)
                }
            };
            Ok(Output { text, code: if ok { 0 } else { EXIT_INTERNAL } })
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn reports(list: &[Report], format: Format) -> Output {
    let text = match format {
        Format::Human => list.iter().map(Report::to_human).collect(),
        Format::Structured if list.len() == 1 => format!("{}\n", list[0].to_json()),
        Format::Structured => json(&list),
    };
    Output { text, code: exit_code(list) as u8 }
}

fn word_eq(u: &str, v: &str, common: &Common) -> Result<Output, Error> {
    if common.semigroup.is_none() {
        let name = common.ambient.as_deref().ok_or_else(|| Error::Invalid("--semigroup or --ambient is required".into()))?;
        let g = oracle_by_name(name)?;
        let (a, b) = (g.parse_word(u)?, g.parse_word(v)?);
        return Ok(out(format!("{}\n", if g.eq(&a, &b) { "Equal" } else { "NotEqual" })));
    }
    let entry = common.entry()?;
    if let Backend::Presented(pm) = &entry.backend {
        let (a, b) = (pm.pres.alphabet.parse_monoid(u)?, pm.pres.alphabet.parse_monoid(v)?);
        if pm.pres.completeness_declared {
            return Ok(match decide_equal_rr(&a, &b, &pm.pres, common.budget)? {
                RrVerdict::Equal(path) => out(format!("Equal ({} rewriting steps)\n", path.len())),
                RrVerdict::NotEqualWithinBudget => out("NotEqual\n".into()),
                RrVerdict::BudgetExhausted => Output { text: "Unknown (budget exhausted)\n".into(), code: 3 },
            });
        }
        return Ok(match pm.equal(&a, &b) {
            Some(true) => out("Equal\n".into()),
            Some(false) => out("NotEqual\n".into()),
            None => Output { text: "Unknown (budget exhausted)\n".into(), code: 3 },
        });
    }
    with_backend!(&entry.backend, m => {
        let (a, b) = (m.parse(u)?, m.parse(v)?);
        Ok(out(format!("{}\n", if a == b { "Equal" } else { "NotEqual" })))
    })
}

fn word_reduce(w: &str, common: &Common) -> Result<Output, Error> {
    if common.semigroup.is_none() {
        let name = common.ambient.as_deref().ok_or_else(|| Error::Invalid("--semigroup or --ambient is required".into()))?;
        let g = oracle_by_name(name)?;
        let word = g.parse_word(w)?;
        return Ok(out(format!("{}\n", g.canonical(&word))));
    }
    let entry = common.entry()?;
    with_backend!(&entry.backend, m => {
        let x = m.parse(w)?;
        Ok(out(format!("{}\n", m.render(&x))))
    })
}

fn ideals(common: &Common) -> Result<Output, Error> {
    let entry = common.entry()?;
    let b = common.bounds()?;
    with_backend!(&entry.backend, m => {
        let en = enumerate_ideals(m, b.depth, b.max_word_len, 400)?;
        let rows: Vec<serde_json::Value> = en
            .entries
            .iter()
            .map(|e| {
                let ideal = if e.empty {
                    "empty".to_string()
                } else if let Some(p) = &e.principal {
                    m.render_principal(p)
                } else {
                    m.describe_ideal(&e.chain).unwrap_or_else(|| "non-principal".into())
                };
                serde_json::json!({
                    "id": e.id,
                    "chain": render_hull(m, &e.chain),
                    "ideal": ideal,
                    "exact": e.exact,
                    "unresolved": e.unresolved.iter().map(|c| render_hull(m, c)).collect::<Vec<_>>(),
                })
            })
            .collect();
        Ok(out(match common.format {
            Format::Structured => json(&serde_json::json!({
                "semigroup": entry.name,
                "depth": en.depth,
                "max_word_len": en.sample_len,
                "exact": en.exact,
                "truncated": en.truncated,
                "ideals": rows,
            })),
            Format::Human => {
                let mut s = format!("{} ideals of {} up to depth {}\n", en.entries.len(), entry.name, en.depth);
                for r in &rows {
                    s.push_str(&format!("{:>4} {:<28} {}\n", r["id"], r["chain"].as_str().unwrap_or(""), r["ideal"].as_str().unwrap_or("")));
                }
                if !en.exact {
                    s.push_str(&format!("note: equality decided on words of length <= {}\n", en.sample_len));
                }
                if en.truncated {
                    s.push_str("note: enumeration truncated\n");
                }
                s
            }
        }))
    })
}

fn boundary(common: &Common, dump: Option<&str>) -> Result<Output, Error> {
    let lattice = match dump {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {path}: {e}")))?;
            FiniteSemilattice::parse_dump(&text)?
        }
        None => {
            let entry = common.entry()?;
            let b = common.bounds()?;
            let max_len = common.max_word_len.unwrap_or(6);
            with_backend!(&entry.backend, m => truncation(m, b.depth, max_len, DEFAULT_BOUND))?
        }
    };
    let text = boundary_report(&lattice)?;
    Ok(out(match common.format {
        Format::Human => text,
        Format::Structured => {
            let chars = monoidlab::semilattice::enumerate_characters(&lattice)?;
            let (max, _) = monoidlab::semilattice::max_and_boundary(&lattice)?;
            let omega = monoidlab::semilattice::omega_subspace(&lattice)?;
            let fails = monoidlab::semilattice::chimax_failures(&lattice)?;
            let sets = |cs: &[monoidlab::semilattice::Character]| -> Vec<Vec<usize>> {
                cs.iter().map(|c| c.filter.iter().copied().collect()).collect()
            };
            json(&serde_json::json!({
                "dump": lattice.dump(),
                "characters": sets(&chars),
                "max": sets(&max),
                "boundary": sets(&max),
                "omega": sets(&omega),
                "chimax_zero": fails.is_empty(),
            }))
        }
    }))
}

fn catalog_show(name: &str) -> Result<Output, Error> {
    let e = lookup(name)?;
    let mut s = format!("{}: {}\nambient: {}\nunits: {}\n", e.name, e.summary, e.default_ambient, e.units);
    if let Some(p) = &e.presentation {
        s.push_str("presentation:\n");
        for line in p.serialize().lines() {
            s.push_str(&format!("  {line}\n"));
        }
    }
    with_backend!(&e.backend, m => {
        let gens: Vec<String> = m.generators().iter().map(|g| m.render(g)).collect();
        s.push_str(&format!("generators: {}\n", gens.join(" ")));
    });
    for a in &e.annotations {
        s.push_str(&format!("- {} [{}]", a.fact, a.anchor));
        if let Some((c, st)) = &a.check {
            s.push_str(&format!(" check {c} = {st}"));
        }
        s.push('\n');
    }
    Ok(out(s))
}
