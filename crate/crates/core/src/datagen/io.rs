use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{benchmark, Balance, BenchmarkLanguage, DatasetRecord};
use crate::{Alphabet, Error, Result};

pub const GENERATOR_VERSION: &str = concat!("tal-datagen/", env!("CARGO_PKG_VERSION"));

/// First line of every dataset file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(rename = "type")]
    pub kind: String,
    pub language: String,
    pub alphabet: Alphabet,
    pub seed: u64,
    pub generator_version: String,
    pub balance: Balance,
    pub lengths: Vec<usize>,
    pub per_length: usize,
    pub records: usize,
    pub warnings: Vec<String>,
}

impl Manifest {
    pub fn new(
        lang: &BenchmarkLanguage,
        seed: u64,
        balance: Balance,
        lengths: &[usize],
        per_length: usize,
    ) -> Self {
        Manifest {
            kind: "manifest".into(),
            language: lang.id.into(),
            alphabet: lang.alphabet.clone(),
            seed,
            generator_version: GENERATOR_VERSION.into(),
            balance,
            lengths: lengths.to_vec(),
            per_length,
            records: 0,
            warnings: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    pub manifest: Manifest,
    pub records: Vec<DatasetRecord>,
}

fn check_record(lang: &BenchmarkLanguage, r: &DatasetRecord, line: usize) -> Result<()> {
    let invalid = |message: String| Error::Validation { line, message };
    let w = lang
        .alphabet
        .parse_word(&r.s)
        .map_err(|e| invalid(format!("string `{}`: {e}", r.s)))?;
    if w.len() != r.len {
        return Err(invalid(format!("`len` is {} but the string has length {}", r.len, w.len())));
    }
    let expected = u8::from(lang.dfa.accepts(&w));
    if r.label != expected {
        return Err(invalid(format!(
            "label {} for `{}` disagrees with {} (expected {expected})",
            r.label, r.s, lang.id
        )));
    }
    Ok(())
}

/// Writes the manifest and records as JSONL. Every label is rechecked against
/// the registry automaton first, and the manifest's `records` count is set
/// from the data.
pub fn write_dataset(data: &Dataset, path: &Path) -> Result<()> {
    let lang = benchmark(&data.manifest.language)?;
    for (i, r) in data.records.iter().enumerate() {
        check_record(&lang, r, i + 2)?;
    }
    let mut manifest = data.manifest.clone();
    manifest.records = data.records.len();
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer(&mut out, &manifest)?;
    out.write_all(b"\n")?;
    for r in &data.records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a dataset, validating every record against the manifest's language.
/// Errors name the 1-based line.
pub fn read_dataset(path: &Path) -> Result<Dataset> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines().enumerate();
    let (_, first) = lines.next().ok_or(Error::Validation {
        line: 1,
        message: "missing manifest line".into(),
    })?;
    let manifest: Manifest = serde_json::from_str(&first?).map_err(|e| Error::Validation {
        line: 1,
        message: format!("bad manifest: {e}"),
    })?;
    if manifest.kind != "manifest" {
        return Err(Error::Validation {
            line: 1,
            message: format!("expected \"type\":\"manifest\", found `{}`", manifest.kind),
        });
    }
    let lang = benchmark(&manifest.language).map_err(|e| Error::Validation {
        line: 1,
        message: e.to_string(),
    })?;
    let mut records = Vec::new();
    for (i, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let r: DatasetRecord = serde_json::from_str(&line).map_err(|e| Error::Validation {
            line: i + 1,
            message: e.to_string(),
        })?;
        check_record(&lang, &r, i + 1)?;
        records.push(r);
    }
    if records.len() != manifest.records {
        return Err(Error::Validation {
            line: 1,
            message: format!("manifest announces {} records, found {}", manifest.records, records.len()),
        });
    }
    Ok(Dataset { manifest, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::generate_split;

    fn sample(n: usize) -> Dataset {
        let lang = benchmark("subseq-ab").unwrap();
        let lengths: Vec<usize> = (1..=n).collect();
        let split = generate_split(&lang, &lengths, 10, Balance::Balanced, 7).unwrap();
        let mut manifest = Manifest::new(&lang, 7, Balance::Balanced, &lengths, 10);
        manifest.records = split.records.len();
        manifest.warnings = split.warnings;
        Dataset { manifest, records: split.records }
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        let data = sample(100);
        assert_eq!(data.records.len(), 1000);
        write_dataset(&data, &path).unwrap();
        assert_eq!(read_dataset(&path).unwrap(), data);
        let first = std::fs::read_to_string(&path).unwrap();
        let first = first.lines().next().unwrap();
        assert!(first.starts_with(r#"{"type":"manifest""#), "{first}");
    }

    #[test]
    fn corrupted_label_names_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        write_dataset(&sample(3), &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
        let flipped = if lines[3].contains(r#""label":1"#) {
            lines[3].replace(r#""label":1"#, r#""label":0"#)
        } else {
            lines[3].replace(r#""label":0"#, r#""label":1"#)
        };
        lines[3] = flipped;
        std::fs::write(&path, lines.join("\n")).unwrap();
        match read_dataset(&path) {
            Err(Error::Validation { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn write_rejects_bad_label() {
        let dir = tempfile::tempdir().unwrap();
        let mut data = sample(2);
        data.records[0].label ^= 1;
        assert!(matches!(
            write_dataset(&data, &dir.path().join("x.jsonl")),
            Err(Error::Validation { line: 2, .. })
        ));
    }
}
