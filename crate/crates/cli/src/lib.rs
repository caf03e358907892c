//! Command-line front end: build or load channels, evaluate bounds, rebuild
//! the deletion table and the Hamming/Singleton curve, verify certificates.

pub mod spec;
pub mod table;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use combichannel::bounds::{
    caro_wei, deletion_fvy_vector, deletion_thm1_vector, dsl, dsu, edge_only_lower, edge_only_upper, grain_cover_thm4,
    ldl, ldu_iterated, mdl, mdu, motzkin_straus, turan, BoundReport, Direction, LduSteps,
};
use combichannel::io::{load_labeled_channel, save_channel, save_labels};
use combichannel::lp::{fractional_packing, integer_packing, theta_star, CliqueConfig, IntConfig, LpConfig};
use combichannel::rational::{format_rational, int, parse_rational};
use combichannel::{Certificate, CertificateKind, Channel, Rational};

pub use spec::GenSpec;

#[derive(Debug, Parser)]
#[command(
    name = "combichannel",
    version,
    about = "Sphere-packing and sphere-covering bounds for combinatorial channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate bounds on one channel.
    Bounds(BoundsArgs),
    /// Rebuild the single-deletion bound table.
    DeletionTable(TableArgs),
    /// Hamming, Singleton and optimized bounds for the erasure/substitution family.
    Family(FamilyArgs),
    /// Check a certificate against a channel.
    Verify(VerifyArgs),
    /// Write a closed-form cover as a certificate file.
    Cover(CoverArgs),
    /// Write a generated channel to a file.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Generator: deletion:n, grain:n, erasure-sub:q:n:a:b, identity:k, fig1,
    /// random:inputs:outputs[:density], edge-upper-tight:inputs:outputs:s or
    /// edge-lower-tight:inputs:outputs:r.
    #[arg(long)]
    pub gen: Option<String>,
    /// Channel file.
    #[arg(long)]
    pub channel: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, requires = "channel")]
    pub input_labels: Option<PathBuf>,
    #[arg(long, requires = "channel")]
    pub output_labels: Option<PathBuf>,
    /// Seed for randomized generators.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SourceArgs {
    pub fn load(&self) -> Result<(String, Channel)> {
        match (&self.source.gen, &self.source.channel) {
            (Some(g), _) => Ok((g.clone(), g.parse::<GenSpec>()?.build(self.seed)?)),
            (None, Some(p)) => {
                let ch = load_labeled_channel(p, self.input_labels.as_deref(), self.output_labels.as_deref())
                    .with_context(|| format!("loading {}", p.display()))?;
                Ok((p.display().to_string(), ch))
            }
            (None, None) => bail!("one of --gen or --channel is required"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    Mdu,
    Mdl,
    Dsu,
    Dsl,
    Ldu(LduSteps),
    Ldl,
    CaroWei,
    MotzkinStraus,
    Turan,
    EdgeUpper,
    EdgeLower,
    Lp,
    Ilp,
    ThetaStar,
}

impl FromStr for Method {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Method> {
        Ok(match s {
            "mdu" => Method::Mdu,
            "mdl" => Method::Mdl,
            "dsu" => Method::Dsu,
            "dsl" => Method::Dsl,
            "ldl" => Method::Ldl,
            "caro-wei" => Method::CaroWei,
            "motzkin-straus" => Method::MotzkinStraus,
            "turan" => Method::Turan,
            "edge-upper" => Method::EdgeUpper,
            "edge-lower" => Method::EdgeLower,
            "lp" => Method::Lp,
            "ilp" => Method::Ilp,
            "theta-star" => Method::ThetaStar,
            "ldu" => Method::Ldu(LduSteps::Fixed(1)),
            "ldu:fix" => Method::Ldu(LduSteps::Fixpoint { max: 1000 }),
            _ => match s.strip_prefix("ldu:") {
                Some(k) => Method::Ldu(LduSteps::Fixed(k.parse().with_context(|| format!("bad step count in {s:?}"))?)),
                None => bail!("unknown method {s:?}"),
            },
        })
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// `uniform` or a file of nonnegative rationals, one per line.
    #[arg(long, default_value = "uniform")]
    pub t: String,
    /// Comma-separated: mdu, mdl, dsu, dsl, ldu:k, ldu:fix, ldl, caro-wei,
    /// motzkin-straus, turan, edge-upper, edge-lower, lp, ilp, theta-star.
    #[arg(long, value_delimiter = ',', required = true)]
    pub methods: Vec<Method>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Verify and include certificates.
    #[arg(long)]
    pub emit_certificates: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 5)]
    pub n_min: usize,
    #[arg(long, default_value_t = 24)]
    pub n_max: usize,
    /// Largest n for which the exact LP column is computed.
    #[arg(long, default_value_t = 10)]
    pub pstar_cap: usize,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    pub certificate: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CoverKind {
    Thm1,
    Fvy,
    Thm4,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(long, value_enum)]
    pub kind: CoverKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub spec: GenSpec,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub input_labels: Option<PathBuf>,
    #[arg(long)]
    pub output_labels: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Runs one command, writing primary output to `out` and diagnostics to
/// `err`. Returns whether every requested computation succeeded.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Bounds(a) => cmd_bounds(a, out, err),
        Command::DeletionTable(a) => table::cmd_deletion_table(a, out, err),
        Command::Family(a) => table::cmd_family(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Cover(a) => cmd_cover(a, out),
        Command::Gen(a) => cmd_gen(a),
    }
}

fn read_t(source: &str) -> Result<Option<Vec<Rational>>> {
    if source == "uniform" {
        return Ok(None);
    }
    let text = std::fs::read_to_string(source).with_context(|| format!("reading t from {source}"))?;
    text.split_whitespace()
        .map(|tok| parse_rational(tok).with_context(|| format!("{tok:?} is not a rational")))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn t_or_ones(t: &Option<Vec<Rational>>, len: usize) -> Vec<Rational> {
    t.clone().unwrap_or_else(|| vec![int(1); len])
}

pub fn evaluate(a: &Channel, method: &Method, t: &Option<Vec<Rational>>) -> Result<BoundReport> {
    let (nx, ny) = (a.num_inputs(), a.num_outputs());
    let report = match method {
        Method::Mdu => mdu(a, &t_or_ones(t, ny))?,
        Method::Dsu => dsu(a, &t_or_ones(t, ny))?,
        Method::Ldu(steps) => ldu_iterated(a, &t_or_ones(t, ny), *steps)?,
        Method::Mdl => mdl(a, &t_or_ones(t, nx))?,
        Method::Dsl => dsl(a, &t_or_ones(t, nx))?,
        Method::Ldl => ldl(a, &t_or_ones(t, nx))?,
        Method::CaroWei => caro_wei(&a.confusability(), &t_or_ones(t, nx))?,
        Method::MotzkinStraus => motzkin_straus(&a.confusability(), &t_or_ones(t, nx))?,
        Method::Turan => turan(&a.confusability())?,
        Method::EdgeUpper => edge_only_upper(a),
        Method::EdgeLower => edge_only_lower(a),
        Method::Lp => {
            let res = fractional_packing(a, &LpConfig::default())?;
            BoundReport::new("lp", Direction::UpperOnP, res.value)
                .with_certificate(Certificate::from_weights(CertificateKind::Cover, &res.dual))
        }
        Method::Ilp => {
            let res = integer_packing(a, &IntConfig::default())?;
            BoundReport::new("ilp", Direction::LowerOnP, int(res.value as i64))
                .with_param("proved", res.optimality_proved)
                .with_certificate(Certificate::from_index_set(CertificateKind::IntegerPacking, nx, &res.witness))
        }
        Method::ThetaStar => {
            let res = theta_star(&a.confusability(), &CliqueConfig::default())?;
            BoundReport::new("theta-star", Direction::LowerOnKappaStar, res.value)
        }
    };
    Ok(report)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub const BOUNDS_CSV_HEADER: &str = "channel,name,direction,exact,floor,n,iterations,params";

pub fn bounds_csv(rows: &[(String, BoundReport)]) -> String {
    let mut s = String::from(BOUNDS_CSV_HEADER);
    s.push('\n');
    for (channel, r) in rows {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            csv_field(channel),
            csv_field(&r.name),
            r.direction.as_str(),
            format_rational(&r.exact),
            r.floor,
            opt(r.n),
            opt(r.iterations),
            csv_field(&params.join(";"))
        );
    }
    s
}

pub fn bounds_json(rows: &[(String, BoundReport)]) -> String {
    let values: Vec<serde_json::Value> = rows
        .iter()
        .map(|(channel, r)| {
            let mut v = serde_json::to_value(r).expect("report serializes");
            v.as_object_mut().expect("object").insert("channel".into(), channel.clone().into());
            v
        })
        .collect();
    serde_json::to_string_pretty(&values).expect("reports serialize") + "\n"
}

fn write_to(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn cmd_bounds(args: &BoundsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let (name, a) = args.source.load()?;
    let t = read_t(&args.t)?;
    let mut ok = true;
    let mut rows = Vec::new();
    for m in &args.methods {
        match evaluate(&a, m, &t) {
            Ok(mut r) => {
                if args.emit_certificates {
                    if let Some(c) = &r.certificate {
                        if let Err(e) = c.verify(&a) {
                            writeln!(err, "{}: certificate rejected: {e}", r.name)?;
                            ok = false;
                            continue;
                        }
                    }
                } else {
                    r.certificate = None;
                }
                rows.push((name.clone(), r));
            }
            Err(e) => {
                writeln!(err, "{m:?}: {e}")?;
                ok = false;
            }
        }
    }
    if let Some(p) = &args.csv {
        write_to(p, &bounds_csv(&rows))?;
    }
    if let Some(p) = &args.json {
        write_to(p, &bounds_json(&rows))?;
    }
    if args.csv.is_none() && args.json.is_none() {
        out.write_all(bounds_csv(&rows).as_bytes())?;
    }
    Ok(ok)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    let (_, a) = args.source.load()?;
    let cert =
        Certificate::load(&args.certificate).with_context(|| format!("reading {}", args.certificate.display()))?;
    match cert.verify(&a) {
        Ok(v) => {
            writeln!(out, "pass: {:?} certificate of weight {}", cert.kind, format_rational(&v))?;
            Ok(true)
        }
        Err(e) => {
            writeln!(out, "fail: {e}")?;
            Ok(false)
        }
    }
}

fn cmd_cover(args: &CoverArgs, out: &mut dyn Write) -> Result<bool> {
    let z = match args.kind {
        CoverKind::Thm1 => deletion_thm1_vector(args.n)?,
        CoverKind::Fvy => deletion_fvy_vector(args.n)?,
        CoverKind::Thm4 => grain_cover_thm4(args.n)?.0,
    };
    let cert = Certificate::from_weights(CertificateKind::Cover, &z);
    match &args.out {
        Some(p) => cert.save(p)?,
        None => writeln!(out, "{}", cert.to_json())?,
    }
    Ok(true)
}

fn cmd_gen(args: &GenArgs) -> Result<bool> {
    let a = args.spec.build(args.seed)?;
    save_channel(&a, &args.out)?;
    if let Some(p) = &args.input_labels {
        save_labels((0..a.num_inputs()).map(|x| a.input_label(x)), p)?;
    }
    if let Some(p) = &args.output_labels {
        save_labels((0..a.num_outputs()).map(|y| a.output_label(y)), p)?;
    }
    Ok(true)
}
