//! `tal`: command-line access to formula evaluation, automata classification,
//! transformer compilation and dataset generation.
//!
//! Output is JSON unless `--format text` is given. Exit status: 0 success,
//! 1 negative verdict of a check, 2 usage or input error, 3 resource limit.

mod args;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

use args::{Cli, Command, OutputFormat};
use tal_core::algebra::{
    is_aperiodic, is_definite, is_locally_r_trivial, transition_semigroup_with_budget,
    DEFAULT_ELEMENT_BUDGET,
};
use tal_core::attention::{FpFormat, Mask, TransformerModel};
use tal_core::automata::{ltl_to_dfa, minimize, Dfa};
use tal_core::classifier::{classify_formula, classify_language};
use tal_core::compiler::{compile, mask_census, verify_compiled, CompileParams};
use tal_core::datagen::{benchmark, benchmarks, generate_split, write_dataset, Dataset, Manifest};
use tal_core::logic::{evaluate, expand_bounded, parse_formula, rewrite_with_mod, EvalPoint, Formula};
use tal_core::suites::{run_suite, SuiteOptions, SUITE_NAMES};
use tal_core::{Alphabet, Error};

const BUDGET_VAR: &str = "TAL_ELEMENT_BUDGET";

/// What a command produced: a JSON payload, its text rendering, and whether a
/// check came out negative.
struct Outcome {
    json: Value,
    text: String,
    negative: bool,
}

impl Outcome {
    fn ok(json: Value, text: impl Into<String>) -> Self {
        Outcome {
            json,
            text: text.into(),
            negative: false,
        }
    }

    fn check(json: Value, text: impl Into<String>, negative: bool) -> Self {
        Outcome {
            json,
            text: text.into(),
            negative,
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli.command) {
        Ok(out) => {
            match cli.format {
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("valid JSON")),
                OutputFormat::Text => println!("{}", out.text.trim_end()),
            }
            ExitCode::from(u8::from(out.negative))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let resource = e.chain().any(|c| c.downcast_ref::<Error>().is_some_and(Error::is_resource));
            ExitCode::from(if resource { 3 } else { 2 })
        }
    }
}

fn element_budget() -> anyhow::Result<usize> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{BUDGET_VAR} must be a positive integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_ELEMENT_BUDGET),
    }
}

/// `ab` (one token per character) or `a,b` / `a b` (explicit tokens).
fn parse_alphabet(spec: &str) -> anyhow::Result<Alphabet> {
    let alphabet = if spec.contains(',') || spec.contains(char::is_whitespace) {
        Alphabet::new(spec.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()))
    } else {
        Alphabet::from_chars(spec)
    };
    Ok(alphabet?)
}

/// Without `--alphabet`, the alphabet is the formula's atoms plus, when all
/// of them are single characters, the characters of the input string.
fn alphabet_for(spec: Option<&str>, formula_src: &str, string: Option<&str>) -> anyhow::Result<Alphabet> {
    if let Some(spec) = spec {
        return parse_alphabet(spec);
    }
    let mut tokens: Vec<String> = atom_candidates(formula_src);
    if let Some(s) = string {
        if tokens.iter().all(|t| t.chars().count() == 1) && !s.contains(char::is_whitespace) {
            tokens.extend(s.chars().map(String::from));
        } else {
            tokens.extend(s.split_whitespace().map(String::from));
        }
    }
    tokens.sort();
    tokens.dedup();
    if tokens.is_empty() {
        tokens.push("a".into());
    }
    Ok(Alphabet::new(tokens)?)
}

/// Identifiers in formula source that are not keywords.
fn atom_candidates(src: &str) -> Vec<String> {
    const KEYWORDS: [&str; 8] = ["true", "false", "Y", "Ystar", "P", "S", "U", "MOD"];
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in src.chars().chain(std::iter::once(' ')) {
        if c.is_alphanumeric() || c == '_' {
            cur.push(c);
        } else if !cur.is_empty() {
            let word = std::mem::take(&mut cur);
            if !KEYWORDS.contains(&word.as_str()) && !word.starts_with(|d: char| d.is_ascii_digit()) {
                out.push(word);
            }
        }
    }
    out
}

fn formula_and_alphabet(src: &str, alphabet: Option<&str>, string: Option<&str>) -> anyhow::Result<(Formula, Alphabet)> {
    let alphabet = alphabet_for(alphabet, src, string)?;
    let f = parse_formula(src, &alphabet).with_context(|| format!("parsing `{src}`"))?;
    Ok((f, alphabet))
}

fn load_dfa(path: &Path) -> anyhow::Result<Dfa> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let loaded = Dfa::from_json_str(&text).with_context(|| format!("loading {}", path.display()))?;
    Ok(loaded.dfa)
}

fn write_or_return(out: Option<&Path>, payload: &Value) -> anyhow::Result<()> {
    if let Some(path) = out {
        fs::write(path, serde_json::to_string_pretty(payload)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn parse_lengths(spec: &str) -> anyhow::Result<Vec<usize>> {
    let parse = |s: &str| s.trim().parse::<usize>().with_context(|| format!("bad length `{s}`"));
    if let Some((a, b)) = spec.split_once("..") {
        let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
        if a > b {
            bail!("empty length range {spec}");
        }
        Ok((a..=b).collect())
    } else {
        spec.split(',').map(parse).collect()
    }
}

fn run(cmd: &Command) -> anyhow::Result<Outcome> {
    Ok(match cmd {
        Command::Eval { formula, string, alphabet, position } => {
            let (f, alphabet) = formula_and_alphabet(formula, alphabet.as_deref(), Some(string))?;
            let w = alphabet.parse_word(string)?;
            match position {
                None => {
                    let acc = evaluate(&f, &alphabet, EvalPoint::end(&w));
                    Outcome::ok(json!({ "accepts": acc }), if acc { "accept" } else { "reject" })
                }
                Some(n) => {
                    let holds = evaluate(&f, &alphabet, EvalPoint::new(&w, *n)?);
                    Outcome::ok(json!({ "position": n, "holds": holds }), format!("position {n}: {holds}"))
                }
            }
        }
        Command::Depth { formula, alphabet } => {
            let (f, _) = formula_and_alphabet(formula, alphabet.as_deref(), None)?;
            let d = f.operator_depth();
            Outcome::ok(
                json!({ "formula": f.to_string(), "operator_depth": d, "size": f.size() }),
                d.to_string(),
            )
        }
        Command::Expand { formula, alphabet } => {
            let (f, _) = formula_and_alphabet(formula, alphabet.as_deref(), None)?;
            let g = expand_bounded(&f);
            Outcome::ok(json!({ "formula": g.to_string(), "operator_depth": g.operator_depth() }), g.to_string())
        }
        Command::RewriteMod { formula, alphabet, k, m } => {
            let (f, _) = formula_and_alphabet(formula, alphabet.as_deref(), None)?;
            let g = rewrite_with_mod(&f, *k, *m)?;
            Outcome::ok(json!({ "formula": g.to_string(), "k": k, "m": m }), g.to_string())
        }
        Command::ToDfa { formula, alphabet, minimize: min, out } => {
            let (f, alphabet) = formula_and_alphabet(formula, alphabet.as_deref(), None)?;
            let mut d = ltl_to_dfa(&f, &alphabet)?;
            if *min {
                d = minimize(&d);
            }
            let payload = to_json(&d.to_json());
            write_or_return(out.as_deref(), &payload)?;
            Outcome::ok(payload, format!("{} states", d.num_states()))
        }
        Command::DfaMinimize { dfa, out } => {
            let d = minimize(&load_dfa(dfa)?);
            let payload = to_json(&d.to_json());
            write_or_return(out.as_deref(), &payload)?;
            Outcome::ok(payload, format!("{} states", d.num_states()))
        }
        Command::DfaClassify { dfa, benchmark: id } => {
            let d = match (dfa, id) {
                (Some(path), None) => load_dfa(path)?,
                (None, Some(id)) => benchmark(id)?.dfa,
                _ => bail!("pass exactly one of --dfa and --benchmark"),
            };
            let report = classify_language(&d, element_budget()?)?;
            let text = format!(
                "definite: {:?}\nyptl_definable: {:?}\nstar_free: {:?}\nltl_p_definable: {:?}",
                report.definite, report.yptl_definable, report.star_free, report.ltl_p_definable
            );
            Outcome::ok(to_json(&report), text)
        }
        Command::DfaConfig { dfa } => {
            let d = load_dfa(dfa)?;
            let d = if d.is_minimal() { d } else { minimize(&d) };
            match tal_core::algebra::find_forbidden_config(&d, element_budget()?)? {
                Some(w) => {
                    let text = format!("q = {}, q' = {}, u = {}, v = {}, x = {}", w.q, w.q_prime, w.u, w.v, w.x);
                    Outcome::check(json!({ "found": true, "witness": w }), text, true)
                }
                None => Outcome::ok(json!({ "found": false }), "no forbidden configuration"),
            }
        }
        Command::Semigroup { dfa, table } => {
            let d = minimize(&load_dfa(dfa)?);
            let budget = element_budget()?;
            let s = transition_semigroup_with_budget(&d, budget)?;
            let elements: Vec<Value> = (0..s.len())
                .map(|i| json!({ "index": i, "word": s.witness_str(i), "map": s.element(i).image() }))
                .collect();
            let mut payload = json!({
                "states": d.num_states(),
                "size": s.len(),
                "elements": elements,
                "idempotents": s.idempotents(),
                "definite": is_definite(&d, budget)?,
                "locally_r_trivial": is_locally_r_trivial(&s),
                "aperiodic": is_aperiodic(&s),
            });
            if *table {
                payload["table"] = to_json(&s.table());
            }
            Outcome::ok(payload, format!("{} elements, {} idempotents", s.len(), s.idempotents().len()))
        }
        Command::Compile { formula, alphabet, gain, max_len, exponent_bits, mantissa_bits, out } => {
            let (f, alphabet) = formula_and_alphabet(formula, alphabet.as_deref(), None)?;
            let params = CompileParams {
                score_gain: *gain,
                max_len: *max_len,
                fp: FpFormat::new(*exponent_bits, *mantissa_bits)?,
                ..CompileParams::default()
            };
            let model = compile(&f, &alphabet, &params)?;
            let census = mask_census(&model);
            let text = format!(
                "{} layers, d = {}, {} global heads, local heads {:?}, mask requirement {:?}",
                model.layers.len(),
                model.d,
                census.global_heads,
                census.local_heads,
                classify_formula(&f)?
            );
            let payload = to_json(&model);
            match out {
                Some(path) => {
                    write_or_return(Some(path), &payload)?;
                    Outcome::ok(
                        json!({ "out": path, "layers": model.layers.len(), "d": model.d, "census": census,
                                "mask_requirement": classify_formula(&f)? }),
                        text,
                    )
                }
                None => Outcome::ok(payload, text),
            }
        }
        Command::RunModel { model, string } => {
            let m = load_model(model)?;
            let acc = m.run_str(string)?;
            Outcome::ok(json!({ "accepts": acc }), if acc { "accept" } else { "reject" })
        }
        Command::Verify { model, formula, exhaustive_len, spot_len, spot_count, seed } => {
            let m = load_model(model)?;
            let f = parse_formula(formula, &m.alphabet)?;
            let report = verify_compiled(&m, &f, *exhaustive_len, *spot_len, *spot_count, *seed);
            let text = format!(
                "{} strings, {} mismatches, {} errors",
                report.strings_checked,
                report.mismatches.len(),
                report.errors.len()
            );
            let passed = report.passed();
            Outcome::check(to_json(&report), text, !passed)
        }
        Command::GenData { language, lengths, per_length, balance, seed, out } => {
            let lang = benchmark(language)?;
            let lengths = parse_lengths(lengths)?;
            let balance = balance.parse()?;
            let split = generate_split(&lang, &lengths, *per_length, balance, *seed)?;
            let mut manifest = Manifest::new(&lang, *seed, balance, &lengths, *per_length);
            manifest.records = split.records.len();
            manifest.warnings = split.warnings;
            let data = Dataset { manifest, records: split.records };
            write_dataset(&data, out)?;
            let text = format!("wrote {} records to {}", data.records.len(), out.display());
            Outcome::ok(to_json(&data.manifest), text)
        }
        Command::BenchmarkList => {
            let list: Vec<Value> = benchmarks()
                .iter()
                .map(|b| {
                    json!({
                        "id": b.id,
                        "language": b.description,
                        "alphabet": b.alphabet,
                        "formula": b.formula.as_ref().map(Formula::to_string),
                        "fragment_class": b.fragment_class,
                    })
                })
                .collect();
            let text = benchmarks()
                .iter()
                .map(|b| format!("{:<14} {:<16} {}", b.id, b.fragment_class.name(), b.description))
                .collect::<Vec<_>>()
                .join("\n");
            Outcome::ok(Value::Array(list), text)
        }
        Command::TheoremSuite { name, trials, seed } => {
            let opts = SuiteOptions {
                trials: *trials,
                seed: *seed,
                element_budget: element_budget()?,
            };
            let names: Vec<&str> = if name == "all" { SUITE_NAMES.to_vec() } else { vec![name.as_str()] };
            let mut reports = Vec::new();
            let mut text = String::new();
            for n in names {
                let r = run_suite(n, &opts)?;
                for c in &r.checks {
                    text += &format!("[{}] {n}: {} ({})\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                }
                reports.push(r);
            }
            let failed = reports.iter().any(|r| !r.passed);
            let payload = if reports.len() == 1 { to_json(&reports[0]) } else { to_json(&reports) };
            Outcome::check(payload, text, failed)
        }
        Command::Masks { kind, k, len } => {
            let mask = match (kind.as_str(), k) {
                ("global", None) => Mask::Global,
                ("local", Some(k)) if *k >= 1 => Mask::Local(*k),
                ("local", _) => bail!("--kind local needs --k >= 1"),
                ("global", Some(_)) => bail!("--k only applies to local masks"),
                (other, _) => return Err(anyhow!("unknown mask kind `{other}`")),
            };
            let m = mask.materialize(*len);
            let text = m
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<String>())
                .collect::<Vec<_>>()
                .join("\n");
            Outcome::ok(json!({ "mask": mask, "len": len, "matrix": m }), text)
        }
    })
}

fn load_model(path: &Path) -> anyhow::Result<TransformerModel> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    TransformerModel::from_json_str(&text).with_context(|| format!("loading {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_inference() {
        let ab = alphabet_for(None, "P (b & Y a)", Some("aab")).unwrap();
        assert_eq!(ab.tokens(), ["a", "b"]);
        let abc = alphabet_for(None, "Y a", Some("cab")).unwrap();
        assert_eq!(abc.tokens(), ["a", "b", "c"]);
        assert_eq!(alphabet_for(None, "P true", None).unwrap().tokens(), ["a"]);
        assert_eq!(parse_alphabet("x,y").unwrap().tokens(), ["x", "y"]);
        assert_eq!(parse_alphabet("xy").unwrap().tokens(), ["x", "y"]);
    }

    #[test]
    fn keywords_are_not_atoms() {
        assert_eq!(atom_candidates("MOD(2,1) & Ystar a U b S true"), ["a", "b"]);
    }

    #[test]
    fn length_specs() {
        assert_eq!(parse_lengths("2..4").unwrap(), [2, 3, 4]);
        assert_eq!(parse_lengths("1,5").unwrap(), [1, 5]);
        assert!(parse_lengths("4..2").is_err());
    }
}
