//! The subcommands, as functions from parsed input to a text report and an
//! exit code.

use std::collections::BTreeSet;
use std::fmt::{Display, Write as _};

use relcat_core::categorical::{
    certify_epi, certify_mono, is_epi, is_extremal_epi_with, is_iso, is_mono, ExtremalSearch,
};
use relcat_core::factorization::{enumerate_factorizations, essential_uniqueness};
use relcat_core::predicates::classify;
use relcat_core::verify::{verify_em_axioms, verify_necessary_properties};
use relcat_core::{Budget, ClassSpec, Error, IntRelation, DEFAULT_BUDGET};
use thiserror::Error as ThisError;

use crate::format::{serialize_relation, FormatError, RelationFile};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;

/// Largest `--size-max` accepted without `--allow-large`.
pub const SIZE_MAX_DEFAULT_CAP: usize = 3;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("no relation named `{0}`")]
    UnknownRelation(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: FormatError },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::SearchBudgetExceeded(_) | Error::OracleTooLarge { .. }) => {
                EXIT_LIMIT
            }
            _ => EXIT_USAGE,
        }
    }
}

/// Standard output of a successful run and the exit code to report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub exit: u8,
}

impl Report {
    fn ok(text: String) -> Self {
        Report {
            text,
            exit: EXIT_OK,
        }
    }
}

pub type CliResult = Result<Report, CliError>;

/// The search budget, from `RELCAT_BUDGET` when set.
pub fn budget_from_env() -> Result<Budget, CliError> {
    match std::env::var("RELCAT_BUDGET") {
        Ok(v) => v.trim().parse::<u64>().map(Budget::new).map_err(|_| {
            CliError::Usage(format!(
                "RELCAT_BUDGET must be a nonnegative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(Budget::new(DEFAULT_BUDGET)),
    }
}

fn lookup<'a>(file: &'a RelationFile, name: &str) -> Result<&'a IntRelation, CliError> {
    file.get(name)
        .ok_or_else(|| CliError::UnknownRelation(name.to_string()))
}

fn set_lit<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let inner: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn cmd_classify(file: &RelationFile, name: &str, paranoid: bool) -> CliResult {
    let r = lookup(file, name)?;
    let p = classify(r);
    let mut out = String::new();
    let _ = writeln!(out, "relation {name}");
    let _ = writeln!(out, "dom: {}", r.dom());
    let _ = writeln!(out, "cod: {}", r.cod());
    let _ = writeln!(out, "image: {}", set_lit(&p.image));
    let _ = writeln!(out, "coimage: {}", set_lit(&p.coimage));
    for (a, n) in &p.row_cardinalities {
        let _ = writeln!(out, "row_cardinality {a}: {n}");
    }
    let flags = [
        ("correspondence", p.is_correspondence),
        ("partial_function", p.is_partial_function),
        ("injective", p.is_injective),
        ("surjective", p.is_surjective),
        ("function", p.is_function),
        ("bijective", p.is_bijective),
        ("section", p.is_section),
        ("retraction", p.is_retraction),
    ];
    for (k, v) in flags {
        let _ = writeln!(out, "{k}: {v}");
    }
    let mono = is_mono(r);
    let _ = writeln!(out, "mono: {}", mono.fast_result);
    let epi = is_epi(r);
    let _ = writeln!(out, "epi: {}", epi.fast_result);
    let _ = writeln!(out, "iso: {}", is_iso(r));
    let search = if paranoid {
        ExtremalSearch::paranoid()
    } else {
        ExtremalSearch::default()
    };
    match is_extremal_epi_with(r, search) {
        Ok(v) => {
            let _ = writeln!(out, "extremal_epi: {v}");
        }
        Err(Error::OracleTooLarge { cap, .. }) => {
            let _ = writeln!(out, "extremal_epi: unknown (codomain larger than {cap})");
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Report::ok(out))
}

pub fn cmd_compose(file: &RelationFile, outer: &str, inner: &str) -> CliResult {
    let g = lookup(file, outer)?;
    let f = lookup(file, inner)?;
    let composite = g.after(f)?;
    Ok(Report::ok(serialize_relation(
        &format!("{outer}_after_{inner}"),
        &composite,
    )))
}

pub fn cmd_factor(
    file: &RelationFile,
    name: &str,
    mid_max: usize,
    e_class: &ClassSpec,
    m_class: &ClassSpec,
    budget: &Budget,
) -> CliResult {
    let t = lookup(file, name)?;
    let found = enumerate_factorizations(t, mid_max, e_class, m_class, budget)?;
    let mut unique = true;
    'outer: for (i, a) in found.iter().enumerate() {
        for b in &found[i + 1..] {
            if essential_uniqueness(a, b)?.is_none() {
                unique = false;
                break 'outer;
            }
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "relation {name}");
    let _ = writeln!(out, "e_class: {e_class}");
    let _ = writeln!(out, "m_class: {m_class}");
    let _ = writeln!(out, "mid_max: {mid_max}");
    let _ = writeln!(out, "factorizations: {}", found.len());
    for (i, p) in found.iter().enumerate() {
        let _ = writeln!(
            out,
            "factorization {}: mid={} e={} m={}",
            i + 1,
            p.mid,
            p.e.components()[0],
            p.m
        );
    }
    let _ = writeln!(out, "unique_up_to_iso: {unique}");
    Ok(Report::ok(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Axioms,
    Necessary,
}

#[derive(Debug, Clone)]
pub struct VerifyArgs {
    pub pool: Vec<i64>,
    pub size_max: usize,
    pub arity_max: usize,
    pub e_class: ClassSpec,
    pub m_class: ClassSpec,
    pub mode: VerifyMode,
    pub allow_large: bool,
    pub strict: bool,
}

/// Parses a comma-separated label list; the empty string is the empty pool.
pub fn parse_pool(text: &str) -> Result<Vec<i64>, CliError> {
    let labels: Vec<i64> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Usage(format!("bad pool label `{s}`")))
        })
        .collect::<Result<_, _>>()?;
    let distinct: BTreeSet<i64> = labels.iter().copied().collect();
    if distinct.len() != labels.len() {
        return Err(CliError::Usage("pool labels must be distinct".into()));
    }
    Ok(labels)
}

pub fn cmd_verify_em(args: &VerifyArgs, budget: &Budget) -> CliResult {
    if args.size_max > SIZE_MAX_DEFAULT_CAP && !args.allow_large {
        return Err(CliError::Usage(format!(
            "--size-max {} exceeds {SIZE_MAX_DEFAULT_CAP}; pass --allow-large to proceed",
            args.size_max
        )));
    }
    relcat_core::Carrier::new(args.pool.iter().copied(), args.strict)?;
    let run = match args.mode {
        VerifyMode::Axioms => verify_em_axioms,
        VerifyMode::Necessary => verify_necessary_properties,
    };
    let report = run(
        &args.pool,
        args.size_max,
        args.arity_max,
        &args.e_class,
        &args.m_class,
        budget,
    )?;
    Ok(Report {
        text: report.to_string(),
        exit: if report.all_hold() {
            EXIT_OK
        } else {
            EXIT_FAILED
        },
    })
}

pub fn cmd_oracle(file: &RelationFile, name: &str) -> CliResult {
    let r = lookup(file, name)?;
    let mono = certify_mono(r)?;
    let epi = certify_epi(r)?;
    let mut out = String::new();
    let _ = writeln!(out, "relation {name}");
    let mut agree = true;
    for (kind, v) in [("mono", &mono), ("epi", &epi)] {
        let oracle = v.oracle_result.expect("certified");
        agree &= oracle == v.fast_result;
        let _ = write!(out, "{kind} fast={} oracle={oracle}", v.fast_result);
        if let Some(w) = &v.witness {
            let _ = write!(out, " witness: {w}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "agreement: {agree}");
    Ok(Report {
        text: out,
        exit: if agree { EXIT_OK } else { EXIT_FAILED },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_file;

    const FILE: &str =
        "relation tau1\ndom 2 3\ncod 2 3 5 7 11\npairs\n2 -> 2\n2 -> 3\n3 -> 5\n3 -> 7\nend\n\
                        relation id2\ndom 2\ncod 2\npairs\n2 -> 2\nend\n\
                        relation zero\ndom 4\ncod 2\npairs\nend\n";

    fn file() -> RelationFile {
        parse_file(FILE, true).unwrap()
    }

    #[test]
    fn classify_tau1() {
        let r = cmd_classify(&file(), "tau1", false).unwrap();
        assert_eq!(r.exit, EXIT_OK);
        for line in [
            "image: {2,3,5,7}",
            "coimage: {2,3}",
            "row_cardinality 2: 2",
            "correspondence: true",
            "partial_function: false",
            "injective: true",
            "surjective: false",
            "mono: true",
            "epi: false",
        ] {
            assert!(r.text.lines().any(|l| l == line), "{line}\n{}", r.text);
        }
    }

    #[test]
    fn unknown_relation_is_usage_error() {
        let err = cmd_classify(&file(), "nope", false).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        assert_eq!(
            cmd_oracle(&file(), "nope").unwrap_err().exit_code(),
            EXIT_USAGE
        );
    }

    #[test]
    fn compose_block() {
        let r = cmd_compose(&file(), "tau1", "id2").unwrap_err();
        assert_eq!(r.exit_code(), EXIT_USAGE);
        let f = parse_file("relation a\ndom 2\ncod 3\npairs\n2 -> 3\nend\nrelation b\ndom 3\ncod 5\npairs\n3 -> 5\nend\n", true)
            .unwrap();
        let r = cmd_compose(&f, "b", "a").unwrap();
        assert_eq!(
            r.text,
            "relation b_after_a\ndom 2\ncod 5\npairs\n2 -> 5\nend\n"
        );
    }

    #[test]
    fn oracle_reports() {
        let r = cmd_oracle(&file(), "tau1").unwrap();
        assert_eq!(r.text, "relation tau1\nmono fast=true oracle=true\nepi fast=false oracle=false witness: {2} unreached\nagreement: true\n");
        let r = cmd_oracle(&file(), "zero").unwrap();
        assert!(
            r.text
                .contains("mono fast=false oracle=false witness: {} vs {4}\n"),
            "{}",
            r.text
        );
    }

    #[test]
    fn factor_identity() {
        let r = cmd_factor(
            &file(),
            "id2",
            1,
            &ClassSpec::all(),
            &"iso".parse().unwrap(),
            &Budget::default(),
        )
        .unwrap();
        assert!(r.text.contains("factorizations: 1\n"));
        assert!(r.text.ends_with("unique_up_to_iso: true\n"));
        let tight = cmd_factor(
            &file(),
            "tau1",
            3,
            &ClassSpec::all(),
            &ClassSpec::all(),
            &Budget::new(10),
        );
        assert_eq!(tight.unwrap_err().exit_code(), EXIT_LIMIT);
    }

    #[test]
    fn verify_limits() {
        let mut args = VerifyArgs {
            pool: vec![],
            size_max: 4,
            arity_max: 1,
            e_class: ClassSpec::all(),
            m_class: ClassSpec::all(),
            mode: VerifyMode::Axioms,
            allow_large: false,
            strict: true,
        };
        assert_eq!(
            cmd_verify_em(&args, &Budget::default())
                .unwrap_err()
                .exit_code(),
            EXIT_USAGE
        );
        args.size_max = 2;
        assert_eq!(
            cmd_verify_em(&args, &Budget::default()).unwrap().exit,
            EXIT_OK
        );
        args.pool = vec![1, 2];
        assert_eq!(
            cmd_verify_em(&args, &Budget::default())
                .unwrap_err()
                .exit_code(),
            EXIT_USAGE
        );
    }

    #[test]
    fn pools() {
        assert_eq!(parse_pool("").unwrap(), Vec::<i64>::new());
        assert_eq!(parse_pool("2, 3,5").unwrap(), vec![2, 3, 5]);
        assert!(parse_pool("2,x").is_err());
        assert!(parse_pool("2,2").is_err());
    }
}
