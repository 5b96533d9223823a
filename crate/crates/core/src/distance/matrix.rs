use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::labbe::{labbe_distance_named, Profile, RatioPolicy};
use crate::corpus::{Corpus, Document};
use crate::error::{Error, Result};
use crate::specificity::TermUnit;

/// Symmetric matrix of pairwise distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    pub d: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    /// Validates shape, symmetry, zero diagonal, `[0, 1]` range and unique
    /// labels.
    pub fn new(labels: Vec<String>, d: Vec<Vec<f64>>) -> Result<Self> {
        let m = DistanceMatrix { labels, d };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        if self.d.len() != n || self.d.iter().any(|r| r.len() != n) {
            return Err(Error::validation(format!("distance matrix must be {n} x {n}")));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &self.labels {
            if l.is_empty() || !seen.insert(l) {
                return Err(Error::validation(format!("matrix labels must be unique and non-empty ('{l}')")));
            }
        }
        for i in 0..n {
            if self.d[i][i] != 0.0 {
                return Err(Error::validation(format!("diagonal entry for '{}' is not zero", self.labels[i])));
            }
            for j in 0..n {
                let v = self.d[i][j];
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::validation(format!(
                        "distance {v} between '{}' and '{}' is outside [0, 1]",
                        self.labels[i], self.labels[j]
                    )));
                }
                if v != self.d[j][i] {
                    return Err(Error::validation(format!(
                        "matrix is not symmetric at ('{}', '{}')",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == a)?;
        let j = self.labels.iter().position(|l| l == b)?;
        Some(self.d[i][j])
    }

    /// Header row `label<TAB>l1<TAB>l2...`, then one row per label; values
    /// with 6 decimals.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("label");
        for l in &self.labels {
            s.push('\t');
            s.push_str(l);
        }
        s.push('\n');
        for (l, row) in self.labels.iter().zip(&self.d) {
            s.push_str(l);
            for v in row {
                let _ = write!(s, "\t{v:.6}");
            }
            s.push('\n');
        }
        s
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::validation("empty matrix file"))?;
        let labels: Vec<String> = header.split('\t').skip(1).map(|s| s.trim().to_string()).collect();
        let mut d = Vec::with_capacity(labels.len());
        for (i, line) in lines.enumerate() {
            let mut fields = line.split('\t');
            let label = fields.next().unwrap_or("").trim();
            if labels.get(i).map(String::as_str) != Some(label) {
                return Err(Error::validation(format!(
                    "row {} is labeled '{label}' but the header expects '{}'",
                    i + 1,
                    labels.get(i).map_or("<none>", String::as_str)
                )));
            }
            let row = fields
                .map(|f| {
                    f.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::validation(format!("bad distance '{f}' in row '{label}': {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            d.push(row);
        }
        DistanceMatrix::new(labels, d)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("matrix serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: DistanceMatrix = serde_json::from_str(text)?;
        m.validate()?;
        Ok(m)
    }

    /// Reads TSV, or JSON when the path ends in `.json`.
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Load {
            path: path.to_path_buf(),
            source,
        })?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
            DistanceMatrix::from_json(&text)
        } else {
            DistanceMatrix::from_tsv(&text)
        }
    }
}

/// Term profile of a pooled document set.
pub fn profile_of(docs: &[&Document], unit: TermUnit) -> Result<Profile> {
    let mut p = Profile::new();
    for d in docs {
        for t in &d.tokens {
            p.add(unit.term(t)?.into_owned());
        }
    }
    Ok(p)
}

/// Pairwise distances between the groups of `corpus` under `group_by`,
/// labels sorted. A pair breaking the length-ratio rule is an error naming
/// the pair unless `policy.enforce` is false.
pub fn distance_matrix(corpus: &Corpus, group_by: &[&str], unit: TermUnit, policy: RatioPolicy) -> Result<DistanceMatrix> {
    let groups = corpus.group_by(group_by)?;
    if groups.len() < 2 {
        return Err(Error::validation(format!(
            "distance matrix needs at least two groups, found {}",
            groups.len()
        )));
    }
    let labels: Vec<String> = groups.iter().map(|g| g.label.clone()).collect();
    let profiles = groups
        .par_iter()
        .map(|g| profile_of(&g.docs, unit))
        .collect::<Result<Vec<_>>>()?;
    let n = labels.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let values = pairs
        .par_iter()
        .map(|&(i, j)| labbe_distance_named(&profiles[i], &labels[i], &profiles[j], &labels[j], policy))
        .collect::<Result<Vec<_>>>()?;
    let mut d = vec![vec![0.0; n]; n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        d[i][j] = v;
        d[j][i] = v;
    }
    DistanceMatrix::new(labels, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Abbreviations, Origin};

    fn doc(id: &str, group: &str, text: &str) -> Document {
        Document::from_text(id, group, Origin::Real, text, &Abbreviations::default())
    }

    #[test]
    fn identical_groups_are_at_zero() {
        let c = Corpus::from_documents(vec![
            doc("a", "X", "we build the nation ."),
            doc("b", "Y", "We build the nation ."),
        ])
        .unwrap();
        let m = distance_matrix(&c, &["group"], TermUnit::Surface, RatioPolicy::default()).unwrap();
        assert_eq!(m.labels, ["X", "Y"]);
        assert_eq!(m.d[0][1], 0.0);
    }

    #[test]
    fn ratio_violation_names_pair() {
        let c = Corpus::from_documents(vec![doc("a", "Short", "a"), doc("b", "Long", &"a b ".repeat(10))]).unwrap();
        let err = distance_matrix(&c, &["group"], TermUnit::Surface, RatioPolicy::default()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("Short") && msg.contains("Long"), "{msg}");
        let lax = RatioPolicy { enforce: false, ..Default::default() };
        assert!(distance_matrix(&c, &["group"], TermUnit::Surface, lax).is_ok());
    }

    #[test]
    fn needs_two_groups() {
        let c = Corpus::from_documents(vec![doc("a", "X", "a")]).unwrap();
        assert!(distance_matrix(&c, &["group"], TermUnit::Surface, RatioPolicy::default()).is_err());
    }

    #[test]
    fn tsv_and_json_round_trip() {
        let m = DistanceMatrix::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0.0, 0.25, 0.5], vec![0.25, 0.0, 0.125], vec![0.5, 0.125, 0.0]],
        )
        .unwrap();
        assert_eq!(DistanceMatrix::from_tsv(&m.to_tsv()).unwrap(), m);
        assert_eq!(DistanceMatrix::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn invalid_matrices() {
        let l = vec!["a".to_string(), "b".to_string()];
        assert!(DistanceMatrix::new(l.clone(), vec![vec![0.0, 0.1], vec![0.2, 0.0]]).is_err());
        assert!(DistanceMatrix::new(l.clone(), vec![vec![0.1, 0.1], vec![0.1, 0.0]]).is_err());
        assert!(DistanceMatrix::new(l.clone(), vec![vec![0.0, 1.5], vec![1.5, 0.0]]).is_err());
        assert!(DistanceMatrix::new(l, vec![vec![0.0]]).is_err());
        assert!(DistanceMatrix::from_tsv("label\ta\tb\nb\t0\t0\na\t0\t0\n").is_err());
    }
}
