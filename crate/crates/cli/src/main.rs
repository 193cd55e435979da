mod cache;
mod opspec;
mod verify;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use symop::hallalg::{determine_orientation, GeneratorSigns, Hall};
use symop::shuffle::{is_in_s, p_mn, relations_in_window, upsilon_ribbon, word_elem, RibbonReading, ShuffleElem};
use symop::vertexops::{KernelReading, OperatorContext};
use symop::{Orientation, RibbonWord, SymFunc};

use cache::DiskCache;
use opspec::OpSpec;
use verify::{Suite, Verifier};

#[derive(Parser)]
#[command(name = "symop", version, about = "Exact operators on symmetric functions")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Largest degree any command may compute in.
    #[arg(long, global = true, default_value_t = 5)]
    max_degree: usize,
    /// Eigenvalue convention; `auto` determines it once from D_1.
    #[arg(long, global = true, value_enum, default_value_t = OrientationArg::Auto)]
    orientation: OrientationArg,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// JSON file holding computed Macdonald bases.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Extra ratio orders kept when expanding contour integrands.
    #[arg(long, global = true, default_value_t = 2)]
    truncation_margin: usize,
    #[arg(long, global = true, default_value = "mirrored")]
    kernel_reading: KernelReading,
    /// Signs of the `U(m,n)` generators in `apply`.
    #[arg(long, global = true, value_enum, default_value_t = SignsArg::Kernel)]
    generator_signs: SignsArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    Auto,
    Direct,
    Inverted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignsArg {
    Kernel,
    Relations,
}

#[derive(Subcommand)]
enum Command {
    /// Macdonald polynomials of one degree in the power-sum basis.
    Macdonald { degree: usize },
    /// Apply an operator: U(m,n), D(n), Deps(0110), pmul(k), padj(k), word(m1,m2,...) or word-(...).
    Apply {
        op: String,
        /// Symmetric function (text or JSON); read from stdin when absent.
        input: Option<String>,
    },
    /// Run verification suites; exits 0 iff every check passes.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Highest degree checked; defaults to --max-degree.
        dmax: Option<usize>,
    },
    /// Construct and test shuffle-algebra elements.
    Shuffle {
        #[command(subcommand)]
        what: ShuffleCmd,
    },
}

#[derive(Subcommand)]
enum ShuffleCmd {
    /// The word element for z^{m_1} * ... * z^{m_n}.
    Word {
        #[arg(allow_negative_numbers = true, required = true)]
        word: Vec<i32>,
    },
    /// The element P_{m,n}.
    Pmn {
        #[arg(allow_negative_numbers = true)]
        m: i64,
        n: usize,
    },
    /// Image of the ribbon function s_eps on the ray through (m,n), k copies.
    Ribbon {
        #[arg(allow_negative_numbers = true)]
        m: i64,
        n: usize,
        k: usize,
        /// 0/1 word of length k*n - 1; use "" for the empty word.
        eps: String,
        #[arg(long, default_value = "by_n")]
        reading: RibbonReading,
    },
    /// Membership test for an element given in text or JSON form.
    Check { element: String },
    /// Linear relations among length-`len` words with entries in lo..=hi.
    Relations {
        len: usize,
        #[arg(allow_negative_numbers = true)]
        lo: i32,
        #[arg(allow_negative_numbers = true)]
        hi: i32,
        #[arg(allow_negative_numbers = true)]
        total: i32,
    },
}

/// Bad input from the user, reported with exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

struct App {
    config: Config,
    ctx: OperatorContext,
    cache: DiskCache,
}

impl App {
    fn new(config: Config) -> anyhow::Result<Self> {
        let ctx = OperatorContext::new(config.truncation_margin).with_reading(config.kernel_reading);
        let cache = DiskCache::open(config.cache.as_deref(), config.kernel_reading)?;
        Ok(App { config, ctx, cache })
    }

    fn orientation(&self) -> anyhow::Result<Orientation> {
        Ok(match self.config.orientation {
            OrientationArg::Direct => Orientation::Direct,
            OrientationArg::Inverted => Orientation::Inverted,
            OrientationArg::Auto => determine_orientation(&Hall::new(&self.ctx), 2)?,
        })
    }

    fn check_degree(&self, d: i64, what: &str) -> anyhow::Result<()> {
        if d > self.config.max_degree as i64 {
            return Err(symop::Error::Capacity(format!(
                "{what} needs degree {d}, above --max-degree {}",
                self.config.max_degree
            ))
            .into());
        }
        Ok(())
    }

    fn json(&self) -> bool {
        self.config.output == Output::Json
    }

    /// Runs one command, returning whether it succeeded.
    fn run(&self, command: Command, out: &mut String) -> anyhow::Result<bool> {
        match command {
            Command::Macdonald { degree } => self.macdonald(degree, out).map(|_| true),
            Command::Apply { op, input } => self.apply(&op, input, out).map(|_| true),
            Command::Verify { suite, dmax } => self.verify(suite, dmax.unwrap_or(self.config.max_degree), out),
            Command::Shuffle { what } => self.shuffle(what, out).map(|_| true),
        }
    }

    fn macdonald(&self, degree: usize, out: &mut String) -> anyhow::Result<()> {
        self.check_degree(degree as i64, "macdonald")?;
        let o = self.orientation()?;
        let basis = self.cache.memo.basis(&self.ctx, degree, o)?;
        if self.json() {
            let list: Vec<_> =
                basis.iter().map(|(la, f)| json!({"partition": la, "polynomial": f.to_json_value()})).collect();
            let v = json!({"degree": degree, "orientation": o, "basis": list});
            out.push_str(&serde_json::to_string_pretty(&v)?);
            out.push('\n');
        } else {
            for (la, f) in basis.iter() {
                out.push_str(&format!("P_{la} = {f}\n"));
            }
        }
        Ok(())
    }

    fn apply(&self, op: &str, input: Option<String>, out: &mut String) -> anyhow::Result<()> {
        let op: OpSpec = op.parse().map_err(|e: opspec::OpSpecError| usage(e.to_string()))?;
        let text = match input {
            Some(s) => s,
            None => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).context("reading input from stdin")?;
                s
            }
        };
        let f = SymFunc::parse(&text).map_err(|e| usage(format!("input: {e}")))?;
        if let Some(d) = f.degrees().last() {
            self.check_degree(*d as i64, "the input")?;
            self.check_degree(*d as i64 + op.degree_shift(), &op.to_string())?;
        }
        let signs = match self.config.generator_signs {
            SignsArg::Kernel => GeneratorSigns::Kernel,
            SignsArg::Relations => GeneratorSigns::Relations,
        };
        let g = op.apply(&self.ctx, signs, &f)?;
        if self.json() {
            out.push_str(&serde_json::to_string_pretty(&g.to_json_value())?);
        } else {
            out.push_str(&g.to_string());
        }
        out.push('\n');
        Ok(())
    }

    fn verify(&self, suite: Suite, dmax: usize, out: &mut String) -> anyhow::Result<bool> {
        self.check_degree(dmax as i64, "verify")?;
        let orientation = if suite.needs_orientation() { Some(self.orientation()?) } else { None };
        let v = Verifier { ctx: &self.ctx, cache: &self.cache.memo, orientation };
        let report = v.run(suite, dmax)?;
        if self.json() {
            out.push_str(&serde_json::to_string_pretty(&report)?);
            out.push('\n');
        } else {
            if let Some(o) = report.orientation {
                out.push_str(&format!("orientation: {o}\n"));
            }
            for s in &report.suites {
                let word = if s.passed { "PASS" } else { "FAIL" };
                let name = serde_json::to_value(s.suite)?;
                out.push_str(&format!("{word} {} ({}/{} checks pass)\n", name.as_str().unwrap_or("?"), s.total - s.failed, s.total));
                for (k, v) in &s.notes {
                    out.push_str(&format!("  {k}: {v}\n"));
                }
                for c in s.checks.iter().filter(|c| !c.passed()) {
                    out.push_str(&format!("  failed {} {} on degree {}\n", c.check, c.parameters, c.degree));
                }
            }
        }
        Ok(report.passed)
    }

    fn shuffle(&self, what: ShuffleCmd, out: &mut String) -> anyhow::Result<()> {
        let elem = match what {
            ShuffleCmd::Word { word } => word_elem(&word)?,
            ShuffleCmd::Pmn { m, n } => p_mn(m, n)?,
            ShuffleCmd::Ribbon { m, n, k, eps, reading } => {
                let eps: RibbonWord = eps.parse().map_err(|e: symop::Error| usage(e.to_string()))?;
                upsilon_ribbon(m, n, &eps, k, reading)?
            }
            ShuffleCmd::Check { element } => {
                let e = element.trim();
                if e.starts_with('{') {
                    serde_json::from_str::<ShuffleElem>(e).map_err(|x| usage(x.to_string()))?
                } else {
                    e.parse::<ShuffleElem>().map_err(|x| usage(x.to_string()))?
                }
            }
            ShuffleCmd::Relations { len, lo, hi, total } => {
                let (words, rels) = relations_in_window(len, lo, hi, total)?;
                let rels: Vec<Vec<String>> = rels.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
                if self.json() {
                    out.push_str(&serde_json::to_string_pretty(&json!({"words": words, "relations": rels}))?);
                    out.push('\n');
                } else {
                    out.push_str(&format!("{} words, {} relations\n", words.len(), rels.len()));
                    for r in &rels {
                        let terms: Vec<String> = words.iter().zip(r).filter(|(_, c)| c.as_str() != "0").map(|(w, c)| format!("({c}) {w:?}")).collect();
                        out.push_str(&format!("{}\n", terms.join(" + ")));
                    }
                }
                return Ok(());
            }
        };
        let m = is_in_s(&elem)?;
        if self.json() {
            out.push_str(&serde_json::to_string_pretty(&json!({"element": elem, "membership": m}))?);
            out.push('\n');
        } else {
            out.push_str(&format!("{elem}\nin shuffle algebra: {}\n", m.passes()));
            for d in &m.diagnostics {
                out.push_str(&format!("  {d}\n"));
            }
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let app = match App::new(cli.config) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(3);
        }
    };
    let mut out = String::new();
    let result = app.run(cli.command, &mut out);
    print!("{out}");
    io::stdout().flush().ok();
    if let Err(e) = app.cache.save() {
        eprintln!("warning: could not write cache: {e:#}");
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("usage error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
