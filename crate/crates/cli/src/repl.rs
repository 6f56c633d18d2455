//! Line-oriented interactive front end.

use std::io::{self, BufRead, IsTerminal, Write};

use clap::Parser;

use crate::cli::{Cli, Global};
use crate::commands::{self, CliError};

const HELP: &str = "\
verbs: ord seq bracket conway series diff normalize cmp to-series atomic hyperlog audit exp-check chains
       flags take the form --name value; the rest of the line is the expression
       cmp and conway add/mul take two expressions separated by whitespace
:help  show this text
:quit  leave";

/// Verbs whose expression part holds two operands.
fn binary(verb: &str, rest: &[String]) -> bool {
    verb == "cmp" || (verb == "conway" && matches!(rest.first().map(String::as_str), Some("add" | "mul")))
}

/// Whitespace positions at bracket depth zero.
fn split_points(s: &str) -> Vec<usize> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c.is_whitespace() && depth == 0 => out.push(i),
            _ => {}
        }
    }
    out
}

/// Splits `line` into clap arguments.
fn arguments(line: &str, global: &Global) -> Result<Vec<String>, String> {
    let line = line.trim();
    let (verb, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let mut flags = Vec::new();
    let mut words = Vec::new();
    let mut toks = rest.split_whitespace().peekable();
    while let Some(t) = toks.next() {
        if t.starts_with("--") && t.len() > 2 && !t[2..].starts_with(|c: char| c.is_ascii_digit()) {
            flags.push(t.to_string());
            if !matches!(t, "--json") {
                if let Some(v) = toks.next() {
                    flags.push(v.to_string());
                }
            }
        } else {
            words.push(t);
        }
    }
    let mut positional: Vec<String> = Vec::new();
    // subcommand words such as `conway add` come before the expression
    if verb == "conway" {
        if let Some(op) = words.first() {
            positional.push(op.to_string());
            words.remove(0);
        }
    }
    let expr = words.join(" ");
    if binary(verb, &positional) {
        let (a, b) = split_pair(verb, &expr)?;
        positional.push(a);
        positional.push(b);
    } else if !expr.is_empty() {
        positional.push(expr);
    }
    let mut args = vec!["hyperion".to_string()];
    if global.json {
        args.push("--json".into());
    }
    args.extend(["--seed".into(), global.seed.to_string()]);
    args.extend(["--samples".into(), global.samples.to_string()]);
    args.extend(["--precision".into(), global.precision.to_string()]);
    if let Some(g) = global.depth_guard {
        args.extend(["--depth-guard".into(), g.to_string()]);
    }
    args.push(verb.to_string());
    args.extend(flags);
    // `--` keeps operands such as `-1/2` from reading as flags
    args.push("--".into());
    args.extend(positional);
    Ok(args)
}

/// Finds the split of `expr` into two operands that both parse.
fn split_pair(verb: &str, expr: &str) -> Result<(String, String), String> {
    let parses = |s: &str| -> bool {
        if verb == "cmp" {
            s.parse::<hyperion_core::hypercalc::Term>().is_ok()
        } else {
            s.starts_with('(') && s.parse::<hyperion_core::SignSeq>().is_ok()
                || hyperion_core::parse_rational(s).is_ok()
                || s.parse::<hyperion_core::Ordinal>().is_ok()
        }
    };
    for i in split_points(expr) {
        let (a, b) = (expr[..i].trim(), expr[i..].trim());
        if !a.is_empty() && !b.is_empty() && parses(a) && parses(b) {
            return Ok((a.to_string(), b.to_string()));
        }
    }
    Err(format!("could not split `{expr}` into two operands"))
}

/// Runs one line and renders the outcome.
pub fn eval_line(line: &str, global: &Global) -> Result<String, CliError> {
    let args = arguments(line, global).map_err(CliError::Parse)?;
    let cli = Cli::try_parse_from(&args).map_err(|e| {
        let msg = e.to_string();
        let first = msg.lines().next().unwrap_or_default();
        CliError::Parse(first.trim_start_matches("error: ").to_string())
    })?;
    if let crate::cli::Command::Repl = cli.command {
        return Err(CliError::Domain("already in the repl".into()));
    }
    let out = commands::run(&cli.global, &cli.command)?;
    Ok(if cli.global.json { out.json.to_string() } else { out.text })
}

pub fn run(global: &Global) -> io::Result<()> {
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let mut out = io::stdout();
    let mut lines = stdin.lock().lines();
    loop {
        if interactive {
            write!(out, "hyperion> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next().transpose()? else { break };
        let line = line.trim();
        match line {
            "" => continue,
            ":quit" | ":q" => break,
            ":help" | ":h" => writeln!(out, "{HELP}")?,
            _ => match eval_line(line, global) {
                Ok(s) => writeln!(out, "{s}")?,
                Err(e) if global.json => writeln!(out, "{}", e.to_json())?,
                Err(e) => writeln!(out, "{e}")?,
            },
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn global() -> Global {
        Cli::try_parse_from(["hyperion", "repl"]).unwrap().global
    }

    #[test]
    fn splits_at_top_level() {
        assert_eq!(split_points("L[w](x y) x"), vec![9]);
        let (a, b) = split_pair("cmp", "L[w](x) + 1 L[1](x)").unwrap();
        assert_eq!((a.as_str(), b.as_str()), ("L[w](x) + 1", "L[1](x)"));
    }

    #[test]
    fn flags_are_extracted() {
        let args = arguments("diff --order 2 x^3", &global()).unwrap();
        let tail: Vec<&str> = args.iter().rev().take(5).rev().map(String::as_str).collect();
        assert_eq!(tail, ["diff", "--order", "2", "--", "x^3"]);
    }

    #[test]
    fn lines_evaluate() {
        let g = global();
        assert_eq!(eval_line("ord w + 1 + w", &g).unwrap(), "w*2");
        assert_eq!(eval_line("cmp L[w](x) L[1](x)", &g).unwrap(), "Less");
        assert!(matches!(eval_line("ord w +", &g), Err(CliError::Parse(_))));
    }
}
