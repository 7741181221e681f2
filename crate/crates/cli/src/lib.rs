//! Command-line front end. [`run_command`] does all the work so that it can be driven
//! from tests without spawning processes.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use brinseq::compute::{search_shortest_with, SearchOptions};
use brinseq::{
    abstract_tau, apply, behaviourally_congruent, behaviourally_equivalent, compile_table,
    computes_check, evaluate_family, extract, functionally_equivalent,
    instruction_sequence_congruent, parse_family, parse_term, restrict_to_core, simulate,
    structurally_congruent, to_first_canonical, to_second_canonical, use_family, FunctionTable,
    IoConvention, RegisterFamily, Term,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "brinseq",
    version,
    about = "Instruction sequences, their threads, and Boolean registers",
    after_help = "Exit status: 0 on success or a true verdict, 1 on a false verdict \
                  (or no program found), 2 on errors."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Terms, from `-e` first and then from `--file`, in the order given.
#[derive(Args, Debug)]
struct Input {
    /// Term text
    #[arg(
        short = 'e',
        long = "expr",
        value_name = "TEXT",
        allow_hyphen_values = true
    )]
    exprs: Vec<String>,
    /// File holding a term; `-` reads standard input
    #[arg(long = "file", value_name = "PATH")]
    files: Vec<PathBuf>,
}

#[derive(Args, Debug)]
struct FamilyArg {
    /// Register family, e.g. `{in:1=1, aux:1=0}`
    #[arg(long, value_name = "FAMILY", default_value = "{}")]
    family: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a term and print it back
    Parse(Input),
    /// Print a canonical form
    Normalize {
        #[arg(long, value_enum, default_value = "first")]
        form: Form,
        #[command(flatten)]
        input: Input,
    },
    /// Print the extracted thread as recursion equations
    Extract(Input),
    /// Decide a relation between two terms
    Equiv {
        #[arg(long, value_enum, default_value = "behavioural")]
        relation: Relation,
        /// Auxiliary registers for `functional`; inputs and outputs are inferred
        #[arg(long, default_value_t = 0)]
        aux: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Evaluate a register family term
    FamilyEval(Input),
    /// Use a register family on the thread of a term
    Use {
        #[command(flatten)]
        family: FamilyArg,
        #[command(flatten)]
        input: Input,
    },
    /// Apply the thread of a term to a register family
    Apply {
        #[command(flatten)]
        family: FamilyArg,
        #[command(flatten)]
        input: Input,
    },
    /// Abstract from internal steps, after using the family if one is given
    Abstract {
        #[arg(long, value_name = "FAMILY")]
        family: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Run a term on a register family instruction by instruction
    Simulate {
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
        #[command(flatten)]
        family: FamilyArg,
        #[command(flatten)]
        input: Input,
    },
    /// Decide whether a term computes the function in a table file
    Computes {
        #[arg(long, value_name = "PATH")]
        table: PathBuf,
        #[arg(long, default_value_t = 0)]
        aux: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Compile a table file into a program
    CompileTable {
        #[arg(long, value_name = "PATH")]
        table: PathBuf,
    },
    /// Rewrite a program to use only the instructions 0/0, 1/1 and i/i
    RestrictCore {
        /// Auxiliary registers; inputs and outputs are inferred
        #[arg(long)]
        aux: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Find a shortest program computing the function in a table file
    Search {
        #[arg(long, value_name = "PATH")]
        table: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        aux: usize,
        /// Shuffles the order of parallel work; never changes the result
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Form {
    /// Same as `first`
    Isc,
    First,
    Second,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Relation {
    Isc,
    Structural,
    Behavioural,
    Congruence,
    Functional,
}

/// Runs one invocation; returns the exit status, standard output and standard error.
pub fn run_command<I, S>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                (2, String::new(), text)
            } else {
                (0, text, String::new())
            };
        }
    };
    match run(cli.command) {
        Ok((code, mut out)) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            (code, out, String::new())
        }
        Err(e) => (2, String::new(), format!("error: {e:#}\n")),
    }
}

fn read(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin()).context("reading standard input");
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

impl Input {
    fn texts(&self) -> Result<Vec<String>> {
        let mut texts = self.exprs.clone();
        for path in &self.files {
            texts.push(read(path)?);
        }
        Ok(texts)
    }

    fn terms(&self, count: usize) -> Result<Vec<Term>> {
        let texts = self.texts()?;
        if texts.len() != count {
            bail!("expected {count} term(s), got {}", texts.len());
        }
        texts
            .iter()
            .map(|s| parse_term(s.trim()).with_context(|| format!("parsing `{}`", s.trim())))
            .collect()
    }

    fn term(&self) -> Result<Term> {
        Ok(self.terms(1)?.remove(0))
    }
}

fn family(text: &str) -> Result<RegisterFamily> {
    let t = parse_family(text.trim()).with_context(|| format!("parsing `{}`", text.trim()))?;
    Ok(evaluate_family(&t))
}

fn table(path: &PathBuf) -> Result<FunctionTable> {
    read(path)?
        .parse()
        .with_context(|| format!("reading table {}", path.display()))
}

fn verdict(b: bool) -> (i32, String) {
    (i32::from(!b), b.to_string())
}

fn run(command: Command) -> Result<(i32, String)> {
    let out = match command {
        Command::Parse(input) => input.term()?.to_string(),
        Command::Normalize { form, input } => {
            let t = input.term()?;
            match form {
                Form::Isc | Form::First => to_first_canonical(&t).to_term().to_string(),
                Form::Second => to_second_canonical(&t).to_term().to_string(),
            }
        }
        Command::Extract(input) => extract(&input.term()?).to_string(),
        Command::Equiv {
            relation,
            aux,
            input,
        } => {
            let terms = input.terms(2)?;
            let (a, b) = (&terms[0], &terms[1]);
            let holds = match relation {
                Relation::Isc => instruction_sequence_congruent(a, b),
                Relation::Structural => structurally_congruent(a, b),
                Relation::Behavioural => behaviourally_equivalent(a, b),
                Relation::Congruence => behaviourally_congruent(a, b),
                Relation::Functional => {
                    let inferred = IoConvention::infer([a, b])?;
                    let conv = IoConvention::new(inferred.n, inferred.m, inferred.k.max(aux));
                    functionally_equivalent(a, b, &conv)?
                }
            };
            return Ok(verdict(holds));
        }
        Command::FamilyEval(input) => {
            let texts = input.texts()?;
            if texts.len() != 1 {
                bail!("expected 1 family, got {}", texts.len());
            }
            family(&texts[0])?.to_string()
        }
        Command::Use { family: u, input } => {
            use_family(&extract(&input.term()?), &family(&u.family)?)?.to_string()
        }
        Command::Apply { family: u, input } => {
            apply(&extract(&input.term()?), &family(&u.family)?)?.to_string()
        }
        Command::Abstract { family: u, input } => {
            let thread = extract(&input.term()?);
            let thread = match u {
                Some(u) => use_family(&thread, &family(&u)?)?,
                None => thread,
            };
            abstract_tau(&thread).to_string()
        }
        Command::Simulate {
            fuel,
            family: u,
            input,
        } => {
            let (outcome, end) = simulate(&input.term()?, &family(&u.family)?, fuel)?;
            format!("{outcome} {end}")
        }
        Command::Computes {
            table: path,
            aux,
            input,
        } => {
            return Ok(verdict(computes_check(
                &input.term()?,
                &table(&path)?,
                aux,
            )?));
        }
        Command::CompileTable { table: path } => compile_table(&table(&path)?).to_string(),
        Command::RestrictCore { aux, input } => {
            let t = input.term()?;
            let inferred = IoConvention::infer([&t])?;
            let k = aux.unwrap_or(inferred.k).max(inferred.k);
            let conv = IoConvention::new(inferred.n, inferred.m, k);
            restrict_to_core(&t, &conv)?.to_string()
        }
        Command::Search {
            table: path,
            max_len,
            aux,
            seed,
        } => {
            let options = SearchOptions {
                seed,
                ..SearchOptions::default()
            };
            return Ok(
                match search_shortest_with(&table(&path)?, aux, max_len, &options) {
                    Some(t) => (0, t.to_string()),
                    None => (1, format!("none within {max_len} instructions")),
                },
            );
        }
    };
    Ok((0, out))
}
