use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use uuniv_cli::{
    records_json, run_decode, run_encode, run_fuzz, run_verify, CertificateRecord, CliError, FUZZ_CODECS,
};

#[derive(Parser)]
#[command(name = "uuniv", version)]
#[command(about = "Uniquely universal codes for open and closed sets, checked at finite depth")]
struct Cli {
    /// Space: cantor, baire, z, omega, omega-x-cantor, reals-dyadic
    #[arg(long, global = true)]
    space: Option<String>,

    /// Codec: nice-tree, z, good-family, saturated, good-filter (fuzz takes its own names)
    #[arg(long, global = true)]
    codec: Option<String>,

    /// Truncation depth or search budget; each command has a default
    #[arg(long, global = true)]
    depth: Option<u64>,

    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Leave elapsed times out so runs compare byte for byte
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the parameter of a described set
    Encode {
        /// Set description, e.g. "0|11" over cantor or "rows: {(2,5)}" over z
        description: String,
    },
    /// Recover a set from a rendered parameter
    Decode {
        /// Parameter text, e.g. "ε,0,1,00,11" for nice-tree or "23, (0)" for z
        parameter: String,
    },
    /// Run a verification suite, a category of suites, or all of them
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Round-trip random descriptions from the seed
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        count: u64,
    },
    /// Run every suite and every fuzz codec and emit the JSON certificate
    Certify {
        /// Write the certificate here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cases per fuzz codec
        #[arg(long, default_value_t = 200)]
        count: u64,
    },
    /// Walk through worked examples
    Demo,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(passed)` or a usage/parse error.
fn run(cli: &Cli) -> Result<bool, CliError> {
    let (space, codec) = (cli.space.as_deref(), cli.codec.as_deref());
    match &cli.command {
        Command::Encode { description } => {
            let out = run_encode(space, codec, description, cli.depth)?;
            emit_text(cli, "encode", description, &out);
            Ok(true)
        }
        Command::Decode { parameter } => {
            let out = run_decode(space, codec, parameter)?;
            emit_text(cli, "decode", parameter, &out);
            Ok(true)
        }
        Command::Verify { suite } => report(cli, run_verify(suite, cli.depth, cli.seed)?),
        Command::Fuzz { count } => {
            let codec = codec.ok_or_else(|| {
                let names: Vec<&str> = FUZZ_CODECS.iter().map(|c| c.0).collect();
                CliError::Usage(format!("fuzz needs --codec, one of {}", names.join(", ")))
            })?;
            report(cli, vec![run_fuzz(codec, *count, cli.depth, cli.seed)?])
        }
        Command::Certify { out, count } => {
            if cli.depth.is_some() {
                return Err(CliError::Usage("certify runs every suite at its default depth; drop --depth".into()));
            }
            let mut records = run_verify("all", None, cli.seed)?;
            for (name, _, _) in FUZZ_CODECS {
                records.push(run_fuzz(name, *count, None, cli.seed)?);
            }
            let passed = records.iter().all(CertificateRecord::passed);
            let text = records_json(&strip(cli, records));
            match out {
                Some(path) => fs::write(path, text)
                    .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(passed)
        }
        Command::Demo => {
            demo();
            Ok(true)
        }
    }
}

fn strip(cli: &Cli, mut records: Vec<CertificateRecord>) -> Vec<CertificateRecord> {
    if cli.no_timing {
        for r in &mut records {
            r.elapsed_ms = None;
        }
    }
    records
}

fn report(cli: &Cli, records: Vec<CertificateRecord>) -> Result<bool, CliError> {
    let passed = records.iter().all(CertificateRecord::passed);
    let records = strip(cli, records);
    if cli.json {
        print!("{}", records_json(&records));
    } else {
        for r in &records {
            println!("{}", r.line());
        }
    }
    Ok(passed)
}

fn emit_text(cli: &Cli, op: &str, input: &str, out: &str) {
    if cli.json {
        let v = json!({
            "op": op,
            "space": cli.space,
            "codec": cli.codec,
            "input": input,
            "output": out.lines().collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&v).expect("json value"));
    } else {
        print!("{out}");
    }
}

fn demo() {
    let show = |title: &str, r: Result<String, CliError>| {
        println!("== {title}");
        match r {
            Ok(s) => print!("{s}"),
            Err(e) => println!("error: {e}"),
        }
        println!();
    };
    show("closed set 0|11 of 2^ω as a nice tree", run_encode(Some("cantor"), None, "0|11", Some(3)));
    show("the nice tree back to its clopen set", run_decode(Some("cantor"), None, "ε,0,1,00,01,11"));
    show("the point (2,5) of Z as a parameter", run_encode(Some("z"), None, "rows: {(2,5)}", None));
    show("the parameter (23, 0⃗) decoded", run_decode(Some("z"), None, "23, (0)"));
    show("the good family of (0,1) in the reals", run_encode(Some("reals-dyadic"), None, "(0,1)", Some(3)));
    show("the good filter of {1,2} in ω", run_encode(Some("omega"), None, "{1,2}", Some(2)));
    println!("== isolation of the empty nice tree");
    match run_verify("nt-isolation", Some(2), 0) {
        Ok(rs) => rs.iter().for_each(|r| println!("{}", r.line())),
        Err(e) => println!("error: {e}"),
    }
}
