//! Command-line front end for `polybox`.

pub mod args;
pub mod commands;
pub mod parse;
pub mod report;

use args::{Cli, Command, OutFormat};
use clap::Parser;
use commands::CliError;
use report::{report_json, Manifest};
use std::ffi::OsString;
use std::io::Write;

/// Flags that only choose where output goes; they are left out of manifests.
const OUTPUT_FLAGS: [&str; 3] = ["--out", "--out-dir", "--jobs"];

/// Run with full argv (program name first), writing to the given streams.
/// Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<String> = args
        .into_iter()
        .map(|a| a.into().to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli.command, &args, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            e.exit_code()
        }
    }
}

fn dispatch(cmd: &Command, args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    if let Command::Replay(r) = cmd {
        let text = std::fs::read_to_string(&r.file).map_err(|e| CliError::Io(format!("{}: {e}", r.file.display())))?;
        let doc: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", r.file.display())))?;
        let m = doc.get("manifest").unwrap_or(&doc);
        let m: Manifest = serde_json::from_value(m.clone())
            .map_err(|e| CliError::Input(format!("{}: not a manifest: {e}", r.file.display())))?;
        if m.argv.first().map(String::as_str) == Some("replay") {
            return Err(CliError::Input("a manifest cannot record a replay".into()));
        }
        let mut argv = vec![args[0].clone()];
        argv.extend(m.argv);
        if let Some(o) = r.out {
            argv.extend(["--out".into(), format_name(o).into()]);
        }
        if let Some(d) = &r.out_dir {
            argv.extend(["--out-dir".into(), d.display().to_string()]);
        }
        if let Some(j) = r.jobs {
            argv.extend(["--jobs".into(), j.to_string()]);
        }
        let cli = Cli::try_parse_from(&argv).map_err(|e| CliError::Input(format!("recorded argv no longer parses: {e}")))?;
        if matches!(cli.command, Command::Replay(_)) {
            return Err(CliError::Input("a manifest cannot record a replay".into()));
        }
        return dispatch(&cli.command, &argv, out);
    }
    let common = cmd.common().expect("non-replay commands have common options");
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Input(format!("--jobs: {e}")))?;
    let outcome = pool.install(|| commands::execute(cmd))?;
    let mut params = outcome.params;
    params.insert("seed".into(), common.seed.into());
    let manifest = Manifest::new(cmd.name(), canonical_argv(&args[1..], common.seed), params);
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match common.out {
        Some(OutFormat::Csv) => out.write_all(outcome.table.to_csv().as_bytes()).map_err(io)?,
        Some(OutFormat::Json) => out.write_all(report_json(&manifest, &outcome.result).as_bytes()).map_err(io)?,
        None => {
            std::fs::create_dir_all(&common.out_dir).map_err(io)?;
            let stem = common.out_dir.join(manifest.file_stem());
            let csv = stem.with_extension("csv");
            let json = stem.with_extension("json");
            std::fs::write(&csv, outcome.table.to_csv()).map_err(io)?;
            std::fs::write(&json, report_json(&manifest, &outcome.result)).map_err(io)?;
            writeln!(out, "{}\n{}", csv.display(), json.display()).map_err(io)?;
        }
    }
    Ok(if outcome.pass { 0 } else { 1 })
}

fn format_name(o: OutFormat) -> &'static str {
    match o {
        OutFormat::Csv => "csv",
        OutFormat::Json => "json",
    }
}

/// The arguments after the program name, without output flags and with the
/// resolved seed made explicit.
pub fn canonical_argv(args: &[String], seed: u64) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = args.iter();
    let mut has_seed = false;
    while let Some(a) = it.next() {
        if OUTPUT_FLAGS.contains(&a.as_str()) {
            it.next();
            continue;
        }
        if OUTPUT_FLAGS.iter().any(|f| a.starts_with(&format!("{f}="))) {
            continue;
        }
        has_seed |= a == "--seed" || a.starts_with("--seed=");
        out.push(a.clone());
    }
    if !has_seed {
        out.extend(["--seed".into(), seed.to_string()]);
    }
    out
}
