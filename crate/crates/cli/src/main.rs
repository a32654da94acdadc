use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use koszul_forests::flavor::Flavor;
use koszul_forests::forest::{enumerate_forests, factorize_left_comb, parse_forest, Decoration, Forest};
use koszul_forests::homology::{hochschild_subcomplex, homology, HomologyReport, SignFlip, Subcomplex};
use koszul_forests::linalg::Backend;
use koszul_forests::operad::{dual_annihilator_check, quotient_dims, Presentation, PresentationKind};
use koszul_forests::selftest::{run_all, Scale, Status};
use koszul_forests::series::poincare_check;

#[derive(Parser)]
#[command(name = "koszul-forests", version, about = "Planar-forest operads, their duals, and homology of free algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every forest of one weight.
    Forests {
        #[arg(short, long)]
        weight: usize,
        #[command(flatten)]
        labels: Labels,
        #[command(flatten)]
        out: Output,
    },
    /// Apply one product to two forests.
    Product {
        #[arg(long, value_enum)]
        op: Op,
        left: String,
        right: String,
        #[command(flatten)]
        out: Output,
    },
    /// Split a forest into left-comb factors.
    Factorize {
        forest: String,
        #[command(flatten)]
        out: Output,
    },
    /// Dimensions of a presented operad by arity.
    Dims {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        /// Use the dual presentation.
        #[arg(long)]
        dual: bool,
        #[arg(long, default_value_t = 6)]
        max_arity: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Check that the dual relations span the annihilator of the relations.
    DualCheck {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        /// Presentation to test as the annihilator; defaults to the flavor's dual.
        #[arg(long, value_parser = parse_presentation)]
        against: Option<PresentationKind>,
        #[command(flatten)]
        out: Output,
    },
    /// Homology of the free algebra on D generators, by weight.
    Homology {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[command(flatten)]
        labels: Labels,
        #[arg(long, default_value_t = 5)]
        max_weight: usize,
        #[arg(long, value_enum, default_value_t = BackendArg::Rational)]
        backend: BackendArg,
        #[command(flatten)]
        out: Output,
    },
    /// Homology of the m-only or arrow-only subcomplex.
    Hochschild {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value_t = SubcomplexArg::M)]
        subcomplex: SubcomplexArg,
        #[command(flatten)]
        labels: Labels,
        #[arg(long, default_value_t = 5)]
        max_weight: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Check g(-f(-t)) = t for the generating series of an operad and its dual.
    Poincare {
        #[arg(long, value_enum, required_unless_present = "primal_dims")]
        flavor: Option<FlavorArg>,
        #[arg(long, default_value_t = 7)]
        order: usize,
        /// Explicit dimensions for f, arity 1 first, comma separated.
        #[arg(long, value_delimiter = ',', requires = "dual_dims")]
        primal_dims: Option<Vec<u64>>,
        /// Explicit dimensions for g.
        #[arg(long, value_delimiter = ',', requires = "primal_dims")]
        dual_dims: Option<Vec<u64>>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the full verification suite.
    Selftest {
        /// Cap every size bound at this weight.
        #[arg(long)]
        max_weight: Option<usize>,
        /// Reverse some signs of the differential before checking d² = 0.
        #[arg(long, hide = true, value_parser = parse_flip)]
        inject_sign_flip: Option<SignFlip>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Labels {
    /// Comma-separated decoration labels.
    #[arg(long, conflicts_with = "d")]
    decorations: Option<String>,
    /// Number of decorations, labelled x1..xD.
    #[arg(short = 'D')]
    d: Option<usize>,
}

impl Labels {
    fn resolve(&self) -> Result<Vec<Decoration>, Failure> {
        match (&self.decorations, self.d) {
            (Some(csv), _) => Ok(Decoration::parse_list(csv)?),
            (None, Some(0)) => Err(Failure::Usage("-D must be at least 1".into())),
            (None, Some(d)) => Ok(Decoration::numbered(d)),
            (None, None) => Ok(Decoration::numbered(1)),
        }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Concat,
    Searrow,
    Nearrow,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Searrow,
    Nearrow,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Searrow => Flavor::Searrow,
            FlavorArg::Nearrow => Flavor::Nearrow,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Rational,
    Modp,
}

#[derive(Clone, Copy, ValueEnum)]
enum SubcomplexArg {
    M,
    Arrow,
}

fn parse_presentation(s: &str) -> Result<PresentationKind, String> {
    s.parse().map_err(|e: koszul_forests::Error| e.to_string())
}

fn parse_flip(s: &str) -> Result<SignFlip, String> {
    s.parse().map_err(|e: koszul_forests::Error| e.to_string())
}

enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// A mathematical check failed: exit 1.
    Check(String),
    Io(io::Error),
}

impl From<koszul_forests::Error> for Failure {
    fn from(e: koszul_forests::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn json<T: Serialize>(out: &mut impl Write, value: &T) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn no_csv(verb: &str) -> Failure {
    Failure::Usage(format!("--format csv is not available for {verb}"))
}

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Forests { weight, labels, out: o } => forests(weight, &labels.resolve()?, o.format, out),
        Command::Product { op, left, right, out: o } => {
            let f = parse_forest(&left)?;
            let g = parse_forest(&right)?;
            let p = match op {
                Op::Concat => f.concat(&g),
                Op::Searrow => f.graft_root(&g),
                Op::Nearrow => f.graft_left_leaf(&g),
            };
            match o.format {
                Format::Text => writeln!(out, "{p}")?,
                Format::Json => json(out, &p.to_string())?,
                Format::Csv => return Err(no_csv("product")),
            }
            Ok(())
        }
        Command::Factorize { forest, out: o } => {
            let f = parse_forest(&forest)?;
            let factors: Vec<String> = factorize_left_comb(&f).factors().iter().map(Forest::to_string).collect();
            match o.format {
                Format::Text => {
                    for x in &factors {
                        writeln!(out, "{x}")?;
                    }
                }
                Format::Json => json(out, &factors)?,
                Format::Csv => return Err(no_csv("factorize")),
            }
            Ok(())
        }
        Command::Dims { flavor, dual, max_arity, out: o } => {
            if max_arity == 0 {
                return Err(Failure::Usage("--max-arity must be at least 1".into()));
            }
            let flavor = Flavor::from(flavor);
            let kind = if dual { PresentationKind::dual(flavor) } else { PresentationKind::primal(flavor) };
            let t = quotient_dims(&Presentation::new(kind), max_arity)?;
            match o.format {
                Format::Json => json(out, &t)?,
                Format::Text => {
                    writeln!(out, "{kind}")?;
                    writeln!(out, "{:>3} {:>10} {:>14}", "n", "non-Σ", "Σ")?;
                    for (i, (a, b)) in t.nonsigma.iter().zip(&t.sigma).enumerate() {
                        writeln!(out, "{:>3} {a:>10} {b:>14}", i + 1)?;
                    }
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["n", "nonsigma", "sigma"])?;
                    for (i, (a, b)) in t.nonsigma.iter().zip(&t.sigma).enumerate() {
                        w.write_record([(i + 1).to_string(), a.to_string(), b.to_string()])?;
                    }
                    w.flush()?;
                }
            }
            Ok(())
        }
        Command::DualCheck { flavor, against, out: o } => {
            let flavor = Flavor::from(flavor);
            let p = Presentation::new(PresentationKind::primal(flavor));
            let q = Presentation::new(against.unwrap_or(PresentationKind::dual(flavor)));
            let r = dual_annihilator_check(&p, &q)?;
            match o.format {
                Format::Json => json(out, &r)?,
                Format::Text => {
                    writeln!(out, "relations of {} against {}", r.primal, r.dual)?;
                    writeln!(out, "arity 3: free {}, R {}, annihilator candidate {}", r.free_dim, r.dim_relations, r.dim_annihilator)?;
                    writeln!(out, "symmetrized: {} {} {}", r.sigma.free, r.sigma.relations, r.sigma.annihilator)?;
                    let zeros = r.pairings.iter().filter(|e| e.value == "0").count();
                    writeln!(out, "pairings: {zeros} of {} vanish; pairing rank {}", r.pairings.len(), r.pairing_rank)?;
                    writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" })?;
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["dual", "primal", "value"])?;
                    for e in &r.pairings {
                        w.write_record([e.dual.to_string(), e.primal.to_string(), e.value.clone()])?;
                    }
                    w.flush()?;
                }
            }
            if r.pass {
                Ok(())
            } else {
                Err(Failure::Check(r.failures.first().cloned().unwrap_or_default()))
            }
        }
        Command::Homology { flavor, labels, max_weight, backend, out: o } => {
            let d = labels.resolve()?.len();
            let backend = match backend {
                BackendArg::Rational => Backend::Rational,
                BackendArg::Modp => Backend::ModP,
            };
            let r = homology(flavor.into(), d, max_weight.max(1), backend)?;
            report(&r, o.format, out)
        }
        Command::Hochschild { flavor, subcomplex, labels, max_weight, out: o } => {
            let d = labels.resolve()?.len();
            let which = match subcomplex {
                SubcomplexArg::M => Subcomplex::M,
                SubcomplexArg::Arrow => Subcomplex::Arrow,
            };
            let r = hochschild_subcomplex(flavor.into(), which, d, max_weight.max(1), Backend::Rational)?;
            report(&r, o.format, out)
        }
        Command::Poincare { flavor, order, primal_dims, dual_dims, out: o } => {
            let (f, g) = match (primal_dims, dual_dims, flavor) {
                (Some(f), Some(g), _) => (f, g),
                (_, _, Some(flavor)) => {
                    let flavor = Flavor::from(flavor);
                    let f = quotient_dims(&Presentation::new(PresentationKind::primal(flavor)), order)?;
                    let g = quotient_dims(&Presentation::new(PresentationKind::dual(flavor)), order)?;
                    (f.nonsigma, g.nonsigma)
                }
                _ => return Err(Failure::Usage("give --flavor or both --primal-dims and --dual-dims".into())),
            };
            let r = poincare_check(&f, &g, order)?;
            match o.format {
                Format::Json => json(out, &r)?,
                Format::Text => {
                    writeln!(out, "residual through degree {}: {}", r.order, r.residual.join(" "))?;
                    writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" })?;
                }
                Format::Csv => return Err(no_csv("poincare")),
            }
            match r.first_failure {
                None => Ok(()),
                Some(n) => Err(Failure::Check(format!("coefficient of t^{n} is {}", r.residual[n - 1]))),
            }
        }
        Command::Selftest { max_weight, inject_sign_flip, out: o } => {
            let scale = match max_weight {
                Some(0) => return Err(Failure::Usage("--max-weight must be at least 1".into())),
                Some(w) => Scale::capped(w),
                None => Scale::full(),
            };
            let results = run_all(&scale, inject_sign_flip)?;
            match o.format {
                Format::Json => json(out, &results)?,
                Format::Text => {
                    for r in &results {
                        writeln!(out, "{r}")?;
                    }
                }
                Format::Csv => return Err(no_csv("selftest")),
            }
            let failed: Vec<String> =
                results.iter().filter(|r| r.status == Status::Fail).map(|r| r.id.to_string()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Check(format!("criteria {} failed", failed.join(", "))))
            }
        }
    }
}

fn forests(weight: usize, decorations: &[Decoration], format: Format, out: &mut impl Write) -> Outcome {
    if weight == 0 {
        return Err(Failure::Usage("--weight must be at least 1".into()));
    }
    let list = enumerate_forests(weight, decorations);
    match format {
        Format::Text => {
            for f in &list {
                writeln!(out, "{f}")?;
            }
        }
        Format::Json => json(out, &list.iter().map(Forest::to_string).collect::<Vec<_>>())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["index", "weight", "forest"])?;
            for (i, f) in list.iter().enumerate() {
                w.write_record([i.to_string(), weight.to_string(), f.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn report(r: &HomologyReport, format: Format, out: &mut impl Write) -> Outcome {
    match format {
        Format::Json => json(out, r)?,
        Format::Text => {
            let which = r.subcomplex.map(|s| format!(", {} subcomplex", s.name())).unwrap_or_default();
            writeln!(out, "{} D={}{which}", r.flavor, r.d)?;
            for w in &r.per_weight {
                let hs: Vec<String> = w.dims.iter().map(|x| format!("H{}={}", x.n, x.h)).collect();
                writeln!(out, "w={} {}", w.w, hs.join(" "))?;
            }
            writeln!(out, "H0_total={} max_higher_H={}", r.h0_total, r.max_higher_h)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["w", "n", "ker", "im", "H"])?;
            for row in &r.per_weight {
                for x in &row.dims {
                    w.write_record([row.w, x.n, x.ker, x.im, x.h].map(|v| v.to_string()))?;
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}
