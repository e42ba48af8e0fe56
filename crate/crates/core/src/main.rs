use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use erdl::{
    dump_json, emit_ddl, fix, load_json, parse, print, render, transform, validate, LocatedModel,
    PluralExceptions, RankDirection, RenderOptions, Severity, TransformError, Validator,
};

const OK: u8 = 0;
const LINT_ERRORS: u8 = 1;
const PARSE_FAILURE: u8 = 2;
const USAGE: u8 = 3;
const INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "erdl",
    version,
    about = "Lint, fix, transform and render ER models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model and print it as canonical ERDL or JSON.
    Parse {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check a model against the notation rules.
    Lint {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_name = "FILE")]
        plural_exceptions: Option<PathBuf>,
        /// Warnings also cause exit code 1.
        #[arg(long)]
        strict: bool,
    },
    /// Repair fixable naming violations; prints the fix report as JSON.
    Fix {
        file: PathBuf,
        /// Overwrite the input instead of writing `<stem>.fixed.<ext>`.
        #[arg(long)]
        in_place: bool,
    },
    /// Map a conforming model to SQL DDL.
    Transform {
        file: PathBuf,
        #[arg(long, value_name = "SCHEMA.SQL")]
        out: PathBuf,
        #[arg(long, value_name = "FILE")]
        schema_json: Option<PathBuf>,
    },
    /// Emit a DOT diagram.
    Render {
        file: PathBuf,
        #[arg(long, value_name = "DIAGRAM.DOT")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Rankdir::LR)]
        rankdir: Rankdir,
        #[arg(long)]
        no_cardinalities: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
#[allow(clippy::upper_case_acronyms)]
enum Rankdir {
    #[value(name = "LR", alias = "lr")]
    LR,
    #[value(name = "TB", alias = "tb")]
    TB,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("erdl: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| fail(USAGE, format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| fail(INTERNAL, format!("cannot write {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<LocatedModel, Failure> {
    let text = read(path)?;
    if is_json(path) {
        load_json(&text)
            .map(LocatedModel::unlocated)
            .map_err(|e| fail(PARSE_FAILURE, format!("{}: {e}", path.display())))
    } else {
        parse(&text, &path.display().to_string()).map_err(|e| fail(PARSE_FAILURE, e.to_string()))
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Parse { file, json } => {
            let located = load(&file)?;
            if json {
                print!("{}", dump_json(&located.model));
            } else {
                print!("{}", print(&located.model));
            }
            Ok(OK)
        }
        Command::Lint {
            file,
            format,
            plural_exceptions,
            strict,
        } => {
            let validator = match plural_exceptions {
                Some(p) => Validator::new(PluralExceptions::from_text(&read(&p)?)),
                None => Validator::default(),
            };
            let located = load(&file)?;
            let diags = validator.validate(&located);
            let fallback = file.display().to_string();
            for d in &diags {
                match format {
                    Format::Text => println!("{}", d.to_text(&fallback)),
                    Format::Jsonl => println!("{}", d.to_json_line()),
                }
            }
            let failing = diags.iter().any(|d| {
                d.severity == Severity::Error || (strict && d.severity == Severity::Warning)
            });
            Ok(if failing { LINT_ERRORS } else { OK })
        }
        Command::Fix { file, in_place } => {
            let located = load(&file)?;
            let (fixed, report) = fix(&located.model);
            let text = if is_json(&file) {
                dump_json(&fixed)
            } else {
                print(&fixed)
            };
            let target = if in_place {
                file.clone()
            } else {
                let ext = file.extension().and_then(|e| e.to_str()).unwrap_or("erdl");
                file.with_extension(format!("fixed.{ext}"))
            };
            write(&target, &text)?;
            eprintln!(
                "erdl: {} rename(s), {} skipped; wrote {}",
                report.renames.len(),
                report.skipped.len(),
                target.display()
            );
            let json =
                serde_json::to_string_pretty(&report).map_err(|e| fail(INTERNAL, e.to_string()))?;
            println!("{json}");
            Ok(OK)
        }
        Command::Transform {
            file,
            out,
            schema_json,
        } => {
            let located = load(&file)?;
            let schema = match transform(&located.model) {
                Ok(s) => s,
                Err(TransformError::Precondition { .. }) => {
                    let fallback = file.display().to_string();
                    for d in validate(&located).iter().filter(|d| d.is_error()) {
                        eprintln!("{}", d.to_text(&fallback));
                    }
                    return Err(fail(LINT_ERRORS, "model has lint errors; not transformed"));
                }
                Err(e) => return Err(fail(LINT_ERRORS, e.to_string())),
            };
            let ddl = emit_ddl(&schema);
            for d in &ddl.deferred {
                eprintln!(
                    "erdl: foreign key {} -> {} deferred to ALTER TABLE (cyclic dependency)",
                    d.relation, d.foreign_key.referenced_relation
                );
            }
            write(&out, &ddl.sql)?;
            if let Some(path) = schema_json {
                write(&path, &schema.to_json())?;
            }
            Ok(OK)
        }
        Command::Render {
            file,
            out,
            rankdir,
            no_cardinalities,
        } => {
            let located = load(&file)?;
            let opts = RenderOptions {
                rank_direction: match rankdir {
                    Rankdir::LR => RankDirection::LeftRight,
                    Rankdir::TB => RankDirection::TopBottom,
                },
                show_cardinalities: !no_cardinalities,
            };
            write(&out, &render(&located.model, &opts))?;
            Ok(OK)
        }
    }
}
