//! The `nlc` command line.
//!
//! Every subcommand writes its data to `out` and diagnostics to `err`.
//! With `--json` the data is a single envelope object. Exit status:
//! 0 ok, 1 domain error, 2 usage error, 3 resource limit, 4 a check failed
//! or the conjecture scan found a certificate.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::bitseq::{BitSeq, PeriodSeq};
use crate::complexity::{
    classify, nlc_finite, nlc_periodic_fast, nlc_periodic_oracle, tight_bound_c0,
};
use crate::enumeration::{aperiodic_count, count_p, count_table, Probability};
use crate::error::{Error, ErrorKind};
use crate::oracle::{
    brute_distribution, verify_counts, verify_properties, verify_structure, Verdict,
};
use crate::representative::{conjecture_scan, family_counterexample, shift_class};
use crate::structgen::generate_p;
use crate::DEFAULT_EXHAUSTIVE_LIMIT;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_CHECK: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "nlc",
    version,
    about = "Nonlinear complexity of periodic binary sequences"
)]
struct Cli {
    /// Wrap the result in a JSON envelope.
    #[arg(long, global = true)]
    json: bool,

    /// Largest n accepted by exhaustive operations.
    #[arg(long, global = true, env = "NLC_EXHAUSTIVE_LIMIT", default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    exhaustive_limit: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
enum Command {
    /// Nonlinear complexity of a word or of its periodic extension.
    #[command(subcommand)]
    Nlc(NlcCommand),
    /// Every (c, d) with the word in B(n, c, d).
    Classify(Bits),
    /// The shift class of a word at level c and its representatives.
    Representative(RepresentativeArgs),
    /// The counterexample family showing c0 is tight.
    Family(Length),
    /// Search maximum-spacing members for a larger-add rotation with the wrong spacing.
    ConjectureScan(ScanArgs),
    /// The threshold c0 and whether it is tight.
    TightBound(Length),
    /// Exact count of shift classes at complexity omega.
    Count(LengthOmega),
    /// Counts for every omega in the formula range.
    CountTable(Length),
    /// One period per shift class at complexity omega.
    Generate(GenerateArgs),
    /// Exhaustive distribution of periodic complexity over shift classes.
    Distribution(Length),
    /// Cross-check formulas and theorems against exhaustive search.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
enum NlcCommand {
    /// Complexity of the finite word.
    Finite(Bits),
    /// Complexity of the infinite repetition, by exhaustive window search.
    Periodic(Bits),
    /// Complexity of the infinite repetition, via the tight bound.
    Fast(Bits),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
enum VerifyCommand {
    /// Formula counts against the exhaustive distribution.
    Counts(Length),
    /// Generated periods against the exhaustive class set.
    Structure(LengthOmega),
    /// Every exhaustive law at size n.
    Properties(Length),
}

#[derive(Debug, Args, Serialize)]
struct Bits {
    /// A word over {0, 1}.
    bits: String,
}

#[derive(Debug, Args, Serialize)]
struct Length {
    n: usize,
}

#[derive(Debug, Args, Serialize)]
struct LengthOmega {
    n: usize,
    omega: usize,
}

#[derive(Debug, Args, Serialize)]
struct RepresentativeArgs {
    bits: String,
    /// Complexity level of the class.
    #[arg(long)]
    c: usize,
}

#[derive(Debug, Args, Serialize)]
struct ScanArgs {
    /// Largest n to scan.
    #[arg(long)]
    max: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Lines,
    Json,
}

#[derive(Debug, Args, Serialize)]
struct GenerateArgs {
    n: usize,
    omega: usize,
    /// Stop after this many periods.
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Lines)]
    format: Format,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Nlc(NlcCommand::Finite(_)) => "nlc finite",
            Command::Nlc(NlcCommand::Periodic(_)) => "nlc periodic",
            Command::Nlc(NlcCommand::Fast(_)) => "nlc fast",
            Command::Classify(_) => "classify",
            Command::Representative(_) => "representative",
            Command::Family(_) => "family",
            Command::ConjectureScan(_) => "conjecture-scan",
            Command::TightBound(_) => "tight-bound",
            Command::Count(_) => "count",
            Command::CountTable(_) => "count-table",
            Command::Generate(_) => "generate",
            Command::Distribution(_) => "distribution",
            Command::Verify(VerifyCommand::Counts(_)) => "verify counts",
            Command::Verify(VerifyCommand::Structure(_)) => "verify structure",
            Command::Verify(VerifyCommand::Properties(_)) => "verify properties",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Error,
    Failed,
    Discovery,
}

#[derive(Serialize)]
struct OutputEnvelope<'a> {
    command: &'a str,
    inputs: &'a RawValue,
    result: Option<&'a RawValue>,
    status: Status,
    error: Option<String>,
}

/// What a subcommand produced: JSON payload, plain text and a status.
struct Outcome {
    json: Box<RawValue>,
    text: String,
    status: Status,
    message: Option<String>,
}

impl Outcome {
    fn ok(value: &impl Serialize, text: String) -> Outcome {
        Outcome {
            json: raw(value),
            text,
            status: Status::Ok,
            message: None,
        }
    }

    /// `passed == false` turns the result into a failed check.
    fn checked(value: &impl Serialize, text: String, passed: bool, what: &str) -> Outcome {
        let mut o = Outcome::ok(value, text);
        if !passed {
            o.status = Status::Failed;
            o.message = Some(format!("verification failed: {what}"));
        }
        o
    }
}

fn raw(value: &impl Serialize) -> Box<RawValue> {
    let text = serde_json::to_string(value).expect("output types serialize");
    RawValue::from_string(text).expect("serde_json emits valid JSON")
}

fn parse_bits(text: &str) -> Result<BitSeq, Error> {
    BitSeq::parse(text)
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(
                e.kind(),
                K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                let _ = write!(out, "{e}");
                return if e.kind() == K::DisplayHelpOnMissingArgumentOrSubcommand {
                    EXIT_USAGE
                } else {
                    EXIT_OK
                };
            }
            let _ = write!(err, "{e}");
            if argv.iter().any(|a| a == "--json") {
                let envelope = OutputEnvelope {
                    command: "",
                    inputs: &raw(&serde_json::Map::new()),
                    result: None,
                    status: Status::Error,
                    error: Some(e.kind().to_string()),
                };
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&envelope).expect("envelope serializes")
                );
            }
            return EXIT_USAGE;
        }
    };
    let inputs = raw(&cli.command);
    let result = dispatch(&cli.command, cli.exhaustive_limit, cli.json, out);
    let (outcome, code) = match result {
        Ok(o) => {
            let code = match o.status {
                Status::Ok => EXIT_OK,
                _ => EXIT_CHECK,
            };
            (Some(o), code)
        }
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::Usage => EXIT_USAGE,
                ErrorKind::Domain => EXIT_DOMAIN,
                ErrorKind::Resource => EXIT_RESOURCE,
            };
            let _ = writeln!(err, "error: {e}");
            if cli.json {
                let envelope = OutputEnvelope {
                    command: cli.command.name(),
                    inputs: &inputs,
                    result: None,
                    status: Status::Error,
                    error: Some(e.to_string()),
                };
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&envelope).expect("envelope serializes")
                );
            }
            (None, code)
        }
    };
    if let Some(o) = outcome {
        if let Some(msg) = &o.message {
            let _ = writeln!(err, "{msg}");
        }
        if cli.json {
            let envelope = OutputEnvelope {
                command: cli.command.name(),
                inputs: &inputs,
                result: Some(&o.json),
                status: o.status,
                error: o.message.clone(),
            };
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string(&envelope).expect("envelope serializes")
            );
        } else {
            let _ = out.write_all(o.text.as_bytes());
        }
    }
    let _ = out.flush();
    code
}

fn dispatch(
    command: &Command,
    limit: usize,
    json: bool,
    out: &mut dyn Write,
) -> Result<Outcome, Error> {
    match command {
        Command::Nlc(NlcCommand::Finite(a)) => {
            let v = nlc_finite(&parse_bits(&a.bits)?);
            Ok(Outcome::ok(&v, format!("{v}\n")))
        }
        Command::Nlc(NlcCommand::Periodic(a)) => {
            let v = nlc_periodic_oracle(&PeriodSeq::repeating(parse_bits(&a.bits)?));
            Ok(Outcome::ok(&v, format!("{v}\n")))
        }
        Command::Nlc(NlcCommand::Fast(a)) => {
            let v = nlc_periodic_fast(&PeriodSeq::repeating(parse_bits(&a.bits)?))?;
            Ok(Outcome::ok(&v, format!("{v}\n")))
        }
        Command::Classify(a) => {
            let records = classify(&parse_bits(&a.bits)?);
            let mut text = String::new();
            for r in &records {
                let _ = writeln!(
                    text,
                    "c={} d={} q={} r={} add={}",
                    r.c, r.d, r.q, r.r, r.add
                );
            }
            Ok(Outcome::ok(&records, text))
        }
        Command::Representative(a) => {
            let report = shift_class(&parse_bits(&a.bits)?, a.c)?;
            let mut text = String::from("# offset\tsequence\td\tadd\trepresentative\n");
            for m in &report.members {
                let role = match (
                    report.representatives.iter().any(|r| r.offset == m.offset),
                    report.unique,
                ) {
                    (true, true) => "unique",
                    (true, false) => "tied",
                    (false, _) => "-",
                };
                let _ = writeln!(
                    text,
                    "{}\t{}\t{}\t{}\t{role}",
                    m.offset, m.seq, m.record.d, m.record.add
                );
            }
            Ok(Outcome::ok(&report, text))
        }
        Command::Family(a) => {
            let family = family_counterexample(a.n)?;
            let check = family.check();
            let mut text = String::from("# role\toffset\tsequence\tc\td\tadd\tclassified_add\n");
            let rows = [
                ("s", 0, &family.s, family.stated_s, check.s),
                ("u", family.u_offset, &family.u, family.stated_u, check.u),
                ("v", family.v_offset, &family.v, family.stated_v, check.v),
            ];
            for (role, offset, seq, st, got) in rows {
                let got = got.map_or("-".to_string(), |r| r.add.to_string());
                let _ = writeln!(
                    text,
                    "{role}\t{offset}\t{seq}\t{}\t{}\t{}\t{got}",
                    st.c, st.d, st.add
                );
            }
            #[derive(Serialize)]
            struct Payload<'a> {
                family: &'a crate::representative::Family,
                check: &'a crate::representative::FamilyCheck,
            }
            Ok(Outcome::checked(
                &Payload {
                    family: &family,
                    check: &check,
                },
                text,
                check.holds,
                "family memberships",
            ))
        }
        Command::ConjectureScan(a) => {
            let found = conjecture_scan(a.max, limit)?;
            let mut text = String::from("# n\tc\tsequence\tb\td2\tadd\tadd_rotated\n");
            for f in &found {
                let _ = writeln!(
                    text,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    f.n, f.c, f.s, f.b, f.d2, f.add_s, f.add_rotated
                );
            }
            let mut o = Outcome::ok(&found, text);
            if !found.is_empty() {
                o.status = Status::Discovery;
                o.message = Some(format!("discovery: {} certificate(s) found", found.len()));
            }
            Ok(o)
        }
        Command::TightBound(a) => {
            let b = tight_bound_c0(a.n)?;
            Ok(Outcome::ok(&b, format!("c0={} tight={}\n", b.c0, b.tight)))
        }
        Command::Count(a) => {
            let breakdown = count_p(a.n, a.omega)?;
            let text =
                serde_json::to_string_pretty(&breakdown).expect("breakdown serializes") + "\n";
            Ok(Outcome::ok(&breakdown, text))
        }
        Command::CountTable(a) => {
            let table = count_table(a.n)?;
            let mut text = String::from("# omega\ttotal\tprobability\tdecimal\n");
            for row in &table {
                let p = &row.probability;
                let _ = writeln!(
                    text,
                    "{}\t{}\t{}\t{}",
                    row.omega, row.total, p.fraction, p.decimal
                );
            }
            Ok(Outcome::ok(&table, text))
        }
        Command::Generate(a) => generate(a, limit, json, out),
        Command::Distribution(a) => {
            let table = brute_distribution(a.n, limit)?;
            let total = aperiodic_count(a.n);
            #[derive(Serialize)]
            struct Row {
                omega: usize,
                classes: u64,
                sequences: u64,
                probability: Probability,
            }
            let rows: Vec<Row> = table
                .rows
                .iter()
                .map(|(&omega, &classes)| {
                    let sequences = classes * a.n as u64;
                    Row {
                        omega,
                        classes,
                        sequences,
                        probability: Probability::new(sequences.into(), total.clone()),
                    }
                })
                .collect();
            let mut text = String::from("# omega\tclasses\tsequences\tprobability\tdecimal\n");
            for r in &rows {
                let _ = writeln!(
                    text,
                    "{}\t{}\t{}\t{}\t{}",
                    r.omega, r.classes, r.sequences, r.probability.fraction, r.probability.decimal
                );
            }
            Ok(Outcome::ok(&rows, text))
        }
        Command::Verify(VerifyCommand::Counts(a)) => {
            let report = verify_counts(a.n, limit)?;
            let mut text = String::from("# omega\tformula\toracle\tverdict\n");
            for r in &report.rows {
                let formula = r
                    .formula
                    .as_ref()
                    .map_or("-".to_string(), |c| c.to_string());
                let verdict = match r.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "FAIL",
                    Verdict::Unverified => "unverified",
                };
                let _ = writeln!(text, "{}\t{formula}\t{}\t{verdict}", r.omega, r.oracle);
            }
            Ok(Outcome::checked(
                &report,
                text,
                report.passed,
                "formula counts",
            ))
        }
        Command::Verify(VerifyCommand::Structure(a)) => {
            let r = verify_structure(a.n, a.omega, limit)?;
            let mut text = String::from("# equal\tgenerated\toracle\tduplicates\tmissing\textra\n");
            let _ = writeln!(
                text,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.equal,
                r.generated,
                r.oracle,
                r.duplicates.len(),
                r.missing.len(),
                r.extra.len()
            );
            for (tag, list) in [
                ("duplicate", &r.duplicates),
                ("missing", &r.missing),
                ("extra", &r.extra),
            ] {
                for s in list.iter() {
                    let _ = writeln!(text, "{tag}\t{s}");
                }
            }
            Ok(Outcome::checked(
                &r,
                text,
                r.equal,
                "generated set differs from oracle",
            ))
        }
        Command::Verify(VerifyCommand::Properties(a)) => {
            let report = verify_properties(a.n, limit)?;
            let mut text = String::from("# law\tchecked\tfailed\tcounterexample\n");
            for l in &report.laws {
                let ce = l.counterexample.as_deref().unwrap_or("-");
                let _ = writeln!(text, "{}\t{}\t{}\t{ce}", l.name, l.checked, l.failed);
            }
            Ok(Outcome::checked(
                &report,
                text,
                report.passed,
                "property suite",
            ))
        }
    }
}

/// Streams periods straight to `out` unless a JSON envelope is needed.
fn generate(
    a: &GenerateArgs,
    limit: usize,
    json: bool,
    out: &mut dyn Write,
) -> Result<Outcome, Error> {
    if a.limit.is_none() && a.n > limit {
        return Err(Error::ResourceLimit {
            what: "n",
            value: a.n,
            limit,
        });
    }
    let stream = generate_p(a.n, a.omega)?.take(a.limit.unwrap_or(usize::MAX));
    if json {
        let periods: Vec<PeriodSeq> = stream.collect();
        return Ok(Outcome::ok(&periods, String::new()));
    }
    let io = |e: std::io::Error| Error::domain(format!("write failed: {e}"));
    match a.format {
        Format::Lines => {
            for p in stream {
                writeln!(out, "{p}").map_err(io)?;
            }
        }
        Format::Json => {
            write!(out, "[").map_err(io)?;
            for (i, p) in stream.enumerate() {
                write!(out, "{}\"{p}\"", if i == 0 { "" } else { "," }).map_err(io)?;
            }
            writeln!(out, "]").map_err(io)?;
        }
    }
    Ok(Outcome {
        json: raw(&()),
        text: String::new(),
        status: Status::Ok,
        message: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("nlc").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn basic_commands() {
        assert_eq!(
            call(&["nlc", "periodic", "10001101000110100010"]),
            (0, "15\n".into(), String::new())
        );
        assert_eq!(call(&["nlc", "finite", "0001"]).1, "3\n");
        assert_eq!(
            call(&["classify", "10001101000110100010"]).1,
            "c=13 d=7 q=2 r=5 add=2\n"
        );
        assert_eq!(call(&["tight-bound", "20"]).1, "c0=13 tight=true\n");
        let (code, text, _) = call(&["count", "16", "12"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["total"], 52);
    }

    #[test]
    fn exit_codes() {
        let (code, out, err) = call(&["count", "16", "11"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(out.is_empty());
        assert!(err.contains("formula inapplicable"));
        assert_eq!(call(&["nlc", "finite", "01x"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["distribution", "25"]).0, EXIT_RESOURCE);
        assert_eq!(call(&["nlc", "fast", "01"]).0, EXIT_DOMAIN);
    }

    #[test]
    fn json_envelope() {
        let (code, text, _) = call(&["--json", "count", "16", "12"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["command"], "count");
        assert_eq!(v["status"], "ok");
        assert_eq!(v["inputs"]["omega"], 12);
        assert_eq!(v["result"]["total"], 52);
        assert_eq!(text.lines().count(), 1);
        let (code, text, _) = call(&["count", "16", "11", "--json"]);
        assert_eq!(code, EXIT_DOMAIN);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["status"], "error");
    }

    #[test]
    fn generate_formats() {
        let (code, text, _) = call(&["generate", "16", "12", "--limit", "3"]);
        assert_eq!(code, 0);
        assert_eq!(text.lines().count(), 3);
        let (_, text, _) = call(&["generate", "16", "12", "--format", "json"]);
        let v: Vec<String> = serde_json::from_str(&text).unwrap();
        assert_eq!(v.len(), 52);
        assert_eq!(call(&["generate", "30", "29"]).0, EXIT_RESOURCE);
        assert_eq!(call(&["generate", "30", "29", "--limit", "2"]).0, 0);
    }
}
