//! Corpus manifests.
//!
//! A manifest lists one record per document with the fields `path`, `id`,
//! `group`, `subgroup` (optional), `origin` (`real`/`generated`), `year`
//! (optional) and `format` (`plain`/`tagged`). Files ending in `.json` hold
//! a JSON array of such records; anything else is read as TSV with a header
//! line naming the columns. Relative document paths are resolved against
//! the manifest's directory.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sentence::{segment_sentences, Abbreviations};
use super::tagged::parse_tagged;
use super::token::tokenize;
use super::{Corpus, Document, Origin};
use crate::error::{Error, Result};
use crate::tagset::TagMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocFormat {
    Plain,
    Tagged,
}

impl std::str::FromStr for DocFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "plain" => Ok(DocFormat::Plain),
            "tagged" => Ok(DocFormat::Tagged),
            other => Err(Error::validation(format!(
                "unknown document format '{other}' (expected plain or tagged)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Resolved against the manifest's directory once loaded.
    pub path: PathBuf,
    pub id: String,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    pub origin: Origin,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub year: Option<i32>,
    pub format: DocFormat,
}

#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    pub abbreviations: Abbreviations,
    pub tags: TagMap,
}

pub fn load_manifest(path: &Path) -> Result<Corpus> {
    load_manifest_with(path, &LoadOptions::default())
}

pub fn load_manifest_with(path: &Path, options: &LoadOptions) -> Result<Corpus> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Load {
        path: path.to_path_buf(),
        source,
    })?;
    let mut entries = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        parse_json(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: e.line(),
            message: e.to_string(),
        })?
    } else {
        parse_tsv(path, &text)?
    };
    let base = path.parent().unwrap_or(Path::new("."));
    for e in &mut entries {
        e.path = base.join(&e.path);
    }
    let documents = entries
        .par_iter()
        .map(|e| load_entry(e, options))
        .collect::<Result<Vec<_>>>()?;
    Corpus::with_manifest(documents, entries)
}

fn parse_json(text: &str) -> serde_json::Result<Vec<ManifestEntry>> {
    #[derive(Deserialize)]
    struct Raw {
        path: PathBuf,
        id: String,
        group: String,
        #[serde(default)]
        subgroup: Option<String>,
        origin: String,
        #[serde(default)]
        year: Option<i32>,
        format: String,
    }
    let raw: Vec<Raw> = serde_json::from_str(text)?;
    raw.into_iter()
        .map(|r| {
            let origin = r.origin.parse().map_err(serde::de::Error::custom)?;
            let format = r.format.parse().map_err(serde::de::Error::custom)?;
            Ok(ManifestEntry {
                path: r.path,
                id: r.id,
                group: r.group,
                subgroup: r.subgroup.filter(|s| !s.is_empty()),
                origin,
                year: r.year,
                format,
            })
        })
        .collect()
}

fn parse_tsv(path: &Path, text: &str) -> Result<Vec<ManifestEntry>> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let Some((_, header)) = lines.next() else {
        return Ok(Vec::new());
    };
    let columns: Vec<&str> = header.split('\t').map(str::trim).collect();
    let col = |name: &str| columns.iter().position(|c| *c == name);
    let required = ["path", "id", "group", "origin", "format"];
    for name in required {
        if col(name).is_none() {
            return Err(parse_err(1, format!("manifest header lacks column '{name}'")));
        }
    }
    let (ip, ii, ig, io, ifm) = (
        col("path").unwrap(),
        col("id").unwrap(),
        col("group").unwrap(),
        col("origin").unwrap(),
        col("format").unwrap(),
    );
    let (isub, iyear) = (col("subgroup"), col("year"));

    let mut entries = Vec::new();
    for (i, line) in lines {
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != columns.len() {
            return Err(parse_err(
                i + 1,
                format!("expected {} fields, found {}", columns.len(), fields.len()),
            ));
        }
        let opt = |idx: Option<usize>| idx.map(|k| fields[k]).filter(|v| !v.is_empty());
        let year = opt(iyear)
            .map(|y| y.parse::<i32>().map_err(|e| parse_err(i + 1, format!("bad year '{y}': {e}"))))
            .transpose()?;
        entries.push(ManifestEntry {
            path: PathBuf::from(fields[ip]),
            id: fields[ii].to_string(),
            group: fields[ig].to_string(),
            subgroup: opt(isub).map(str::to_string),
            origin: fields[io].parse().map_err(|e: Error| located(path, i + 1, e))?,
            year,
            format: fields[ifm].parse().map_err(|e: Error| located(path, i + 1, e))?,
        });
    }
    Ok(entries)
}

fn located(path: &Path, line: usize, e: Error) -> Error {
    match e {
        Error::Validation(m) => Error::Validation(format!("{}:{line}: {m}", path.display())),
        other => other,
    }
}

fn load_entry(entry: &ManifestEntry, options: &LoadOptions) -> Result<Document> {
    if entry.id.is_empty() || entry.group.is_empty() {
        return Err(Error::validation(format!(
            "manifest entry for {} needs a non-empty id and group",
            entry.path.display()
        )));
    }
    let path = &entry.path;
    let (tokens, sentences) = match entry.format {
        DocFormat::Plain => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Load {
                path: path.clone(),
                source,
            })?;
            let tokens = tokenize(&text);
            let sentences = segment_sentences(&tokens, &options.abbreviations);
            (tokens, sentences)
        }
        DocFormat::Tagged => {
            let t = parse_tagged(path, &options.tags)?;
            (t.tokens, t.sentences)
        }
    };
    Ok(Document {
        id: entry.id.clone(),
        group: entry.group.clone(),
        subgroup: entry.subgroup.clone(),
        origin: entry.origin,
        year: entry.year,
        tokens,
        sentences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn tsv_manifest_with_two_plain_docs() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "a.txt", "We win. We fight.");
        write(dir.path(), "b.txt", "Freedom matters");
        let m = write(
            dir.path(),
            "m.tsv",
            "path\tid\tgroup\tsubgroup\torigin\tyear\tformat\n\
             a.txt\tdocA\tReagan\tA\treal\t1982\tplain\n\
             b.txt\tdocB\tReagan-GPT\t\tgenerated\t\tplain\n",
        );
        let c = load_manifest(&m).unwrap();
        let ids: Vec<_> = c.documents().iter().map(|d| d.id.as_str()).collect();
        assert_eq!(ids, ["docA", "docB"]);
        assert_eq!(c.documents()[0].sentences.len(), 2);
        assert_eq!(c.documents()[0].year, Some(1982));
        assert_eq!(c.documents()[1].subgroup, None);
        assert_eq!(c.documents()[1].origin, Origin::Generated);
        assert_eq!(c.manifest().len(), 2);
    }

    #[test]
    fn json_manifest() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "a.vrt", "We\tPRON\twe\nwin\tVERB\twin\n");
        let m = write(
            dir.path(),
            "m.json",
            r#"[{"path":"a.vrt","id":"x","group":"g","origin":"real","format":"tagged"}]"#,
        );
        let c = load_manifest(&m).unwrap();
        assert_eq!(c.documents()[0].tokens.len(), 2);
        assert!(c.is_annotated());
    }

    #[test]
    fn missing_file_names_path() {
        let dir = tempfile::tempdir().unwrap();
        let m = write(
            dir.path(),
            "m.tsv",
            "path\tid\tgroup\torigin\tformat\nnope.txt\tx\tg\treal\tplain\n",
        );
        match load_manifest(&m) {
            Err(Error::Load { path, .. }) => assert!(path.ends_with("nope.txt")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_id_and_unknown_format() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "a.txt", "x");
        let dup = write(
            dir.path(),
            "dup.tsv",
            "path\tid\tgroup\torigin\tformat\na.txt\tx\tg\treal\tplain\na.txt\tx\tg\treal\tplain\n",
        );
        assert!(matches!(load_manifest(&dup), Err(Error::Validation(_))));
        let bad = write(
            dir.path(),
            "bad.tsv",
            "path\tid\tgroup\torigin\tformat\na.txt\tx\tg\treal\thtml\n",
        );
        let err = load_manifest(&bad).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        assert!(err.to_string().contains("unknown document format"), "{err}");
        let bad_json = write(
            dir.path(),
            "bad.json",
            r#"[{"path":"a.txt","id":"x","group":"g","origin":"real","format":"docx"}]"#,
        );
        assert!(load_manifest(&bad_json).is_err());
    }
}
