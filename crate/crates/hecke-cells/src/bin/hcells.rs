//! Command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hecke_cells::afun::{afun_checks, check_conjectures, AData, CheckScope};
use hecke_cells::cells::Flavor;
use hecke_cells::coxeter::WordProblem;
use hecke_cells::io::{self, InstanceConfig, Radius, DEFAULT_ELEMENT_CAP};
use hecke_cells::jring::{jring_checks, JRing};
use hecke_cells::kl::{inversion_checks, KLTable};
use hecke_cells::report::Check;
use hecke_cells::symbols::Params;
use hecke_cells::{Error, Result};

const EXIT_CODES: &str = "\
Exit codes:
   0  success
   2  usage error
  10  bad Coxeter matrix          11  bad weights
  12  parse error                 13  i/o error
  20  braid class over --cap-braid
  21  enumeration over the element cap
  22  over --cap-structure, or P15 over --cap-p15 (with --no-p15-fallback)
  30  product leaves the ball     31  needs a finite group
  32  infinite parabolic          33  uncertified ball a-values
  34  argument outside the domain
  40  conjectures or identities not verified
  50  not a valid multiset/symbol 51  t too small
  52  N too small                 53  parity error
  54  b' != 0 for families";

#[derive(Parser)]
#[command(name = "hcells", version, about = "Kazhdan-Lusztig cells, a-function and J ring for weighted Coxeter groups", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Elements with canonical words, lengths, weights and descent sets.
    Group(GroupArgs),
    /// Kazhdan-Lusztig polynomials p_{y,w}.
    Kl(Common),
    /// The coefficients mu^s_{y,w}.
    Mu(Common),
    /// Left, right and two-sided cells.
    Cells(CellsArgs),
    /// a-function, gamma, Delta, n and D.
    Afun(Common),
    /// Structure constants, unit and blocks of J (requires the conjecture check to pass).
    Jring(Common),
    /// Symbols of rank n with their a- and f-values and constructible families.
    Symbols(SymbolArgs),
    /// P1-P15 and the identity suite.
    Check(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct Common {
    /// Type label: A3, B2, G2, H3, F4, A1xA1, I2(5), I2(inf), I2m (with --m), I2inf.
    #[arg(long = "type", conflicts_with = "matrix_file")]
    type_label: Option<String>,
    /// JSON instance file with "matrix" (0 = infinity), optional "generators", "weights", "radius".
    #[arg(long)]
    matrix_file: Option<PathBuf>,
    /// Bond order for --type I2m.
    #[arg(long)]
    m: Option<u32>,
    /// Comma-separated weights: one per generator, a single broadcast value, or a type-specific pair.
    #[arg(long, value_delimiter = ',')]
    weights: Vec<u32>,
    /// Ball radius, or "full".
    #[arg(long)]
    radius: Option<String>,
    /// Cap on the number of group elements for full enumeration.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap_elements: usize,
    /// Cap on the group size for commands that tabulate every product c_x c_y.
    #[arg(long, default_value_t = 1000)]
    cap_structure: usize,
    /// Cap on reduced-word classes when braid closure is used.
    #[arg(long, default_value_t = 100_000)]
    cap_braid: usize,
    /// Cap on the number of P15 quadruples checked literally.
    #[arg(long, default_value_t = CheckScope::default().p15_cap)]
    cap_p15: u64,
    /// Fail with exit 22 past --cap-p15 instead of checking the generator form.
    #[arg(long)]
    no_p15_fallback: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GroupArgs {
    #[command(flatten)]
    common: Common,
    /// Also count the reduced words of each element by braid closure.
    #[arg(long)]
    reduced_words: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Left,
    Right,
    TwoSided,
}

#[derive(Args)]
struct CellsArgs {
    #[command(flatten)]
    common: Common,
    /// Preorder drawn with --format dot.
    #[arg(long, value_enum, default_value_t = FlavorArg::Left)]
    flavor: FlavorArg,
}

#[derive(Args)]
struct SymbolArgs {
    #[arg(long)]
    a: i64,
    #[arg(long)]
    b: i64,
    /// Rank.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<InstanceConfig> {
        let mut cfg = match (&self.type_label, &self.matrix_file) {
            (_, Some(path)) => InstanceConfig::load(path)?,
            (Some(t), None) => {
                let up = t.to_ascii_uppercase();
                let label = match (up.as_str(), self.m) {
                    ("I2M", Some(m)) => format!("I2({m})"),
                    ("I2M", None) => return Err(Error::Parse("--type I2m needs --m".into())),
                    _ => t.clone(),
                };
                InstanceConfig { type_label: Some(label), ..Default::default() }
            }
            (None, None) => return Err(Error::Parse("give --type or --matrix-file".into())),
        };
        if !self.weights.is_empty() {
            cfg.weights = self.weights.clone();
        }
        if let Some(r) = &self.radius {
            cfg.radius = Some(match r.parse::<u32>() {
                Ok(k) => Radius::Ball(k),
                Err(_) => Radius::Word(r.clone()),
            });
        }
        Ok(cfg)
    }

    fn data(&self) -> Result<AData> {
        let g = self.config()?.table(self.cap_elements)?;
        if g.size() > self.cap_structure {
            return Err(Error::ScopeTooLarge(format!(
                "{} elements exceed --cap-structure {} for the full product table",
                g.size(),
                self.cap_structure
            )));
        }
        Ok(AData::build(g))
    }

    fn scope(&self) -> CheckScope {
        CheckScope { p15_cap: self.cap_p15, p15_fallback: !self.no_p15_fallback }
    }

    fn emit(&self, json: impl FnOnce() -> serde_json::Value, text: impl FnOnce() -> String) -> Result<()> {
        write(&self.out, match self.format {
            Format::Json => io::render(&json()),
            Format::Text => text(),
            Format::Dot => return Err(Error::Parse("--format dot is only available for cells".into())),
        })
    }
}

fn write(out: &Option<PathBuf>, body: String) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn lines(checks: &[Check]) -> String {
    checks.iter().map(|c| c.line() + "\n").collect()
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Group(a) => {
            let g = a.common.config()?.table(a.common.cap_elements)?;
            let mut counts = Vec::new();
            if a.reduced_words {
                let mut wp = WordProblem::new(g.system(), a.common.cap_braid);
                for w in g.elements() {
                    counts.push(wp.braid_class(g.word(w))?.len());
                }
            }
            a.common.emit(
                || {
                    let mut v = io::group_json(&g);
                    if !counts.is_empty() {
                        for (row, c) in v["elements"].as_array_mut().unwrap().iter_mut().zip(&counts) {
                            row["reduced_words"] = (*c).into();
                        }
                    }
                    v
                },
                || io::group_text(&g),
            )
        }
        Cmd::Kl(c) => {
            let kl = KLTable::build(c.config()?.table(c.cap_elements)?);
            c.emit(|| io::kl_json(&kl), || {
                let g = kl.table();
                let mut s = String::new();
                for w in g.elements() {
                    for y in kl.hecke().bruhat().lower(w).ones() {
                        s += &format!("p[{}, {}] = {}\n", g.word_string(y), g.word_string(w), kl.p(y, w));
                    }
                }
                s
            })
        }
        Cmd::Mu(c) => {
            let kl = KLTable::build(c.config()?.table(c.cap_elements)?);
            c.emit(|| io::mu_json(&kl), || {
                let v = io::mu_json(&kl);
                v["entries"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|e| format!("mu^{}[{}, {}] = {}\n", e["s"].as_str().unwrap(), e["y"].as_str().unwrap(), e["w"].as_str().unwrap(), e["mu"].as_str().unwrap()))
                    .collect()
            })
        }
        Cmd::Cells(a) => {
            let kl = KLTable::build(a.common.config()?.table(a.common.cap_elements)?);
            let part = hecke_cells::cells::CellPartition::new(&kl);
            let g = kl.table();
            if let Format::Dot = a.common.format {
                let f = match a.flavor {
                    FlavorArg::Left => Flavor::Left,
                    FlavorArg::Right => Flavor::Right,
                    FlavorArg::TwoSided => Flavor::TwoSided,
                };
                return write(&a.common.out, part.to_dot(g, f));
            }
            a.common.emit(|| io::cells_json(&part, g), || io::cells_text(&part, g))
        }
        Cmd::Afun(c) => {
            let ad = c.data()?;
            c.emit(|| io::afun_json(&ad), || io::afun_text(&ad))
        }
        Cmd::Jring(c) => {
            let ad = c.data()?;
            let report = check_conjectures(&ad, &c.scope())?;
            let j = JRing::new(&ad, &report)?;
            c.emit(|| io::jring_json(&j), || {
                let g = ad.table();
                let mut s = String::new();
                for b in j.blocks() {
                    let cell: Vec<String> = b.cell.iter().map(|&x| g.word_string(x)).collect();
                    let unit: Vec<String> = b.unit.coords.iter().map(|(&z, &k)| format!("{k}*t_{}", g.word_string(z))).collect();
                    s += &format!("block {{{}}}: unit {}\n", cell.join(", "), unit.join(" + "));
                }
                s
            })
        }
        Cmd::Check(c) => {
            let ad = c.data()?;
            let report = check_conjectures(&ad, &c.scope())?;
            let mut checks = inversion_checks(ad.kl());
            checks.extend(afun_checks(&ad)?);
            if report.all_pass() && ad.table().is_finite() {
                checks.extend(jring_checks(&JRing::new(&ad, &report)?)?);
            }
            c.emit(
                || {
                    let mut v = io::report_json(&report, ad.table());
                    v["identities"] = serde_json::to_value(&checks).unwrap();
                    v
                },
                || {
                    let mut s: String = report.results.iter().map(|r| r.line() + "\n").collect();
                    s += &format!("P15 mode: {:?}, quadruples: {}\n", report.p15_mode, report.p15_quadruples);
                    s + &lines(&checks)
                },
            )?;
            let failed: Vec<String> =
                report.failures().into_iter().map(String::from).chain(checks.iter().filter(|c| !c.pass).map(|c| c.name.clone())).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Error::ConjecturesUnverified(failed.join("; ")))
            }
        }
        Cmd::Symbols(a) => {
            let params = Params::new(a.a, a.b)?;
            let body = match a.format {
                Format::Json => io::render(&io::symbols_json(params, a.n)?),
                Format::Text => io::symbols_text(params, a.n),
                Format::Dot => return Err(Error::Parse("--format dot is only available for cells".into())),
            };
            write(&a.out, body)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hcells: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
