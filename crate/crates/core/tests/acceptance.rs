//! Acceptance checks. Prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero when any check fails.
//!
//! Set `STYLOMETER_SOTU_MANIFEST` to a manifest of annotated State of the
//! Union addresses (groups named after the presidents, subgroups `A`/`B`)
//! to run the replication check; it reports `SKIP` otherwise.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use stylometer::corpus::{corpus_summary, load_manifest, Abbreviations, Corpus, Document, Origin, Partition};
use stylometer::distance::{distance_matrix, labbe_distance, neighbor_joining_raw, Profile, RatioPolicy};
use stylometer::lexstats::{stat_report, ttr_segmented, mattr_sliding, StatOptions};
use stylometer::specificity::{score_terms, z_score, TermUnit};
use stylometer::stattests::{normal_cdf, two_proportion_test, welch_t_test};

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn profile(words: &[&str]) -> Profile {
    let mut p = Profile::new();
    for w in words {
        p.add(*w);
    }
    p
}

fn labbe_axioms() -> Check {
    let start = Instant::now();
    let policy = RatioPolicy {
        max_ratio: f64::INFINITY,
        enforce: false,
    };
    let d = |a: &Profile, b: &Profile| labbe_distance(a, b, policy).map_err(|e| e.to_string());

    let hand = d(&profile(&["a", "a", "b"]), &profile(&["a", "b", "b", "c", "c", "c"]))?;
    ensure(hand == 0.5, || format!("hand example gave {hand}"))?;

    let mut rng = StdRng::seed_from_u64(7);
    let vocab: Vec<String> = (0..40).map(|i| format!("w{i}")).collect();
    for trial in 0..300 {
        let draw = |rng: &mut StdRng, n: usize, lo: usize, hi: usize| -> Vec<String> {
            (0..n).map(|_| vocab[rng.gen_range(lo..hi)].clone()).collect()
        };
        let na = rng.gen_range(1..300);
        let nb = rng.gen_range(1..300);
        let a_words = draw(&mut rng, na, 0, 40);
        let b_words = draw(&mut rng, nb, 0, 40);
        let a = profile(&a_words.iter().map(String::as_str).collect::<Vec<_>>());
        let b = profile(&b_words.iter().map(String::as_str).collect::<Vec<_>>());

        let self_d = d(&a, &a)?;
        ensure(self_d == 0.0, || format!("trial {trial}: D(A,A) = {self_d}"))?;

        let ab = d(&a, &b)?;
        let ba = d(&b, &a)?;
        ensure((ab - ba).abs() <= 1e-12, || format!("trial {trial}: asymmetric {ab} vs {ba}"))?;

        let bb = b.merged(&b);
        let abb = d(&a, &bb)?;
        ensure((ab - abb).abs() <= 1e-12, || format!("trial {trial}: D(A,B)={ab}, D(A,B+B)={abb}"))?;

        let left = draw(&mut rng, na, 0, 20);
        let right = draw(&mut rng, na, 20, 40);
        let disjoint = d(
            &profile(&left.iter().map(String::as_str).collect::<Vec<_>>()),
            &profile(&right.iter().map(String::as_str).collect::<Vec<_>>()),
        )?;
        ensure(disjoint == 1.0, || format!("trial {trial}: disjoint texts gave {disjoint}"))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("300 random pairs plus hand example, {took:.2?}"))
}

/// Binomial standard score recomputed from raw token lists.
fn brute_z(target: &[&str], reference: &[&str], term: &str) -> Option<f64> {
    let tf0 = target.iter().filter(|w| **w == term).count() as f64;
    let tf1 = reference.iter().filter(|w| **w == term).count() as f64;
    let n0 = target.len() as f64;
    let n = n0 + reference.len() as f64;
    let p = (tf0 + tf1) / n;
    if p == 0.0 || p == 1.0 {
        return None;
    }
    let mean = n0 * p;
    let var = n0 * p * (1.0 - p);
    Some((tf0 - mean) / var.sqrt())
}

fn z_oracle() -> Check {
    let abbr = Abbreviations::default();
    let mut rng = StdRng::seed_from_u64(11);
    let letters: Vec<char> = "abcdefghij".chars().collect();
    let mut compared = 0usize;
    for trial in 0..200 {
        let vocab_size = rng.gen_range(1..40);
        let vocab: BTreeSet<String> = (0..vocab_size)
            .map(|_| (0..rng.gen_range(1..5)).map(|_| *letters.choose(&mut rng).unwrap()).collect())
            .collect();
        let vocab: Vec<String> = vocab.into_iter().collect();
        let n_docs = rng.gen_range(2..7);
        let budget = rng.gen_range(n_docs..=10_000);
        let mut docs = Vec::new();
        let mut words: Vec<Vec<String>> = Vec::new();
        for i in 0..n_docs {
            let len = rng.gen_range(1..=(budget / n_docs).max(1));
            let w: Vec<String> = (0..len).map(|_| vocab.choose(&mut rng).unwrap().clone()).collect();
            docs.push(Document::from_text(format!("d{i}"), "g", Origin::Real, &w.join(" "), &abbr));
            words.push(w);
        }
        let split = rng.gen_range(1..n_docs);
        let corpus = Corpus::from_documents(docs).map_err(|e| e.to_string())?;
        let p0: Vec<String> = (0..split).map(|i| format!("d{i}")).collect();
        let p1: Vec<String> = (split..n_docs).map(|i| format!("d{i}")).collect();
        let partition = Partition::new(&corpus, p0, p1).map_err(|e| e.to_string())?;
        let (scores, n0, n1) = score_terms(&corpus, &partition, TermUnit::Surface).map_err(|e| e.to_string())?;

        let target: Vec<&str> = words[..split].iter().flatten().map(String::as_str).collect();
        let reference: Vec<&str> = words[split..].iter().flatten().map(String::as_str).collect();
        ensure(n0 as usize == target.len() && n1 as usize == reference.len(), || {
            format!("trial {trial}: sizes {n0}/{n1} vs {}/{}", target.len(), reference.len())
        })?;
        let seen: BTreeSet<&str> = target.iter().chain(&reference).copied().collect();
        let scored: BTreeSet<&str> = scores.iter().map(|s| s.term.as_str()).collect();
        ensure(seen == scored, || format!("trial {trial}: vocabulary mismatch"))?;
        for s in &scores {
            let want = brute_z(&target, &reference, &s.term);
            let ok = match (s.z, want) {
                (None, None) => true,
                (Some(a), Some(b)) => (a - b).abs() <= 1e-10 * b.abs().max(1.0),
                _ => false,
            };
            ensure(ok, || format!("trial {trial}, term '{}': {:?} vs {want:?}", s.term, s.z))?;
            compared += 1;
        }
    }

    for _ in 0..1000 {
        let (a, b) = (rng.gen_range(1..50u64), rng.gen_range(51..500u64));
        let (m0, m1) = (rng.gen_range(1..40u64), rng.gen_range(1..40u64));
        let z = z_score(a * m0, b * m0, a * m1, b * m1);
        ensure(z == Some(0.0), || format!("proportional use a={a} b={b} m0={m0} m1={m1} gave {z:?}"))?;
    }

    for _ in 0..1000 {
        let n0 = rng.gen_range(2..3000u64);
        let n1 = rng.gen_range(2..3000u64);
        let tf0 = rng.gen_range(0..n0);
        let tf1 = rng.gen_range(1..n1);
        let k = rng.gen_range(2..50u64);
        let base = z_score(tf0, n0, tf1, n1).ok_or("undefined base score")?;
        let scaled = z_score(k * tf0, k * n0, k * tf1, k * n1).ok_or("undefined scaled score")?;
        let want = (k as f64).sqrt() * base;
        ensure((scaled - want).abs() <= 1e-9 * want.abs().max(1.0), || {
            format!("scaling by {k}: {scaled} vs {want}")
        })?;
    }
    Ok(format!("{compared} term scores over 200 partitions, proportional and scaling cases"))
}

/// Random binary tree grown by splitting edges; only leaves carry labels.
struct GenTree {
    labels: Vec<String>,
    edges: Vec<(usize, usize, f64)>,
    nodes: usize,
}

impl GenTree {
    fn random(rng: &mut StdRng, leaves: usize) -> GenTree {
        let mut w = || rng.gen_range(0.1..2.0);
        // node 0 is the center; 1..=3 are leaves
        let mut edges = vec![(0, 1, w()), (0, 2, w()), (0, 3, w())];
        let mut leaf_nodes = vec![1, 2, 3];
        let mut nodes = 4;
        while leaf_nodes.len() < leaves {
            let idx = rng.gen_range(0..edges.len());
            let (a, b, _) = edges[idx];
            let mid = nodes;
            let leaf = nodes + 1;
            nodes += 2;
            edges[idx] = (a, mid, rng.gen_range(0.1..2.0));
            edges.push((mid, b, rng.gen_range(0.1..2.0)));
            edges.push((mid, leaf, rng.gen_range(0.1..2.0)));
            leaf_nodes.push(leaf);
        }
        let mut labels = vec![String::new(); nodes];
        let mut order: Vec<usize> = (0..leaf_nodes.len()).collect();
        order.shuffle(rng);
        for (i, &node) in leaf_nodes.iter().enumerate() {
            labels[node] = format!("t{}", order[i]);
        }
        GenTree { labels, edges, nodes }
    }

    fn is_leaf(&self, n: usize) -> bool {
        !self.labels[n].is_empty()
    }

    fn neighbors(&self, n: usize) -> Vec<(usize, f64)> {
        self.edges
            .iter()
            .filter_map(|&(a, b, l)| if a == n { Some((b, l)) } else if b == n { Some((a, l)) } else { None })
            .collect()
    }

    fn distances(&self, from: usize) -> Vec<f64> {
        let mut dist = vec![f64::NAN; self.nodes];
        dist[from] = 0.0;
        let mut stack = vec![from];
        while let Some(n) = stack.pop() {
            for (m, l) in self.neighbors(n) {
                if dist[m].is_nan() {
                    dist[m] = dist[n] + l;
                    stack.push(m);
                }
            }
        }
        dist
    }

    fn leaves(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.nodes).filter(|&n| self.is_leaf(n)).collect();
        v.sort_by(|a, b| self.labels[*a].cmp(&self.labels[*b]));
        v
    }

    fn splits(&self) -> BTreeSet<BTreeSet<String>> {
        let smallest = self.labels[self.leaves()[0]].clone();
        let total = self.leaves().len();
        let mut out = BTreeSet::new();
        for &(a, b, _) in &self.edges {
            // leaves reachable from b without crossing back to a
            let mut side = BTreeSet::new();
            let mut seen = vec![false; self.nodes];
            seen[a] = true;
            seen[b] = true;
            let mut stack = vec![b];
            while let Some(n) = stack.pop() {
                if self.is_leaf(n) {
                    side.insert(self.labels[n].clone());
                }
                for (m, _) in self.neighbors(n) {
                    if !seen[m] {
                        seen[m] = true;
                        stack.push(m);
                    }
                }
            }
            if side.len() < 2 || total - side.len() < 2 {
                continue;
            }
            if side.contains(&smallest) {
                let all: BTreeSet<String> = self.leaves().iter().map(|&n| self.labels[n].clone()).collect();
                side = all.difference(&side).cloned().collect();
            }
            out.insert(side);
        }
        out
    }
}

fn nj_recovery() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(3);
    for trial in 0..100 {
        let n = rng.gen_range(4..=8);
        let g = GenTree::random(&mut rng, n);
        let leaves = g.leaves();
        let labels: Vec<String> = leaves.iter().map(|&l| g.labels[l].clone()).collect();
        let d: Vec<Vec<f64>> = leaves
            .iter()
            .map(|&l| {
                let from = g.distances(l);
                leaves.iter().map(|&m| from[m]).collect()
            })
            .collect();
        // the generator's matrix is only symmetric up to rounding
        let d: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i <= j { d[i][j] } else { d[j][i] }).collect())
            .collect();
        let tree = neighbor_joining_raw(&labels, &d).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(tree.splits() == g.splits(), || {
            format!("trial {trial}: splits {:?} vs {:?}", tree.splits(), g.splits())
        })?;
        let (got_labels, got) = tree.path_lengths();
        ensure(got_labels == labels, || format!("trial {trial}: leaf labels differ"))?;
        for i in 0..n {
            for j in 0..n {
                ensure((got[i][j] - d[i][j]).abs() <= 1e-9, || {
                    format!("trial {trial}: path {}-{} is {} not {}", labels[i], labels[j], got[i][j], d[i][j])
                })?;
            }
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(5), || format!("took {took:?}"))?;
    Ok(format!("100 random tree metrics, {took:.2?}"))
}

fn golden() -> Check {
    let bad = common::golden_mismatches();
    if bad.is_empty() {
        Ok("7 commands and the report bundle, two runs each at 1 and 4 threads".into())
    } else {
        Err(bad.join("; "))
    }
}

/// `Φ(x)` from the all-positive series
/// `erf(x) = 2/√π · e^{−x²} · Σ 2^n x^{2n+1} / (1·3·…·(2n+1))`.
fn oracle_cdf(z: f64) -> f64 {
    let x = z.abs() / std::f64::consts::SQRT_2;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= 2.0 * x * x / (2.0 * n + 1.0);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    let erf = 2.0 / std::f64::consts::PI.sqrt() * (-x * x).exp() * sum;
    if z >= 0.0 {
        0.5 * (1.0 + erf)
    } else {
        0.5 * (1.0 - erf)
    }
}

fn stat_tests() -> Check {
    let r = two_proportion_test(10, 100, 20, 100, 0.01).map_err(|e| e.to_string())?;
    ensure((r.statistic + 1.9803).abs() <= 1e-3, || format!("z = {}", r.statistic))?;
    ensure(!r.significant, || format!("p = {} flagged significant", r.p_value))?;

    let w = welch_t_test(&[4.0, 5.0], &[4.0, 5.0, 6.0], 0.01).map_err(|e| e.to_string())?;
    ensure((w.statistic + 0.6547).abs() <= 1e-3, || format!("t = {}", w.statistic))?;

    let mut worst = 0.0f64;
    let mut z = -6.0;
    while z <= 6.0 + 1e-12 {
        let diff = (normal_cdf(z) - oracle_cdf(z)).abs();
        worst = worst.max(diff);
        ensure(diff <= 1e-7, || format!("Φ({z}) = {} vs {}", normal_cdf(z), oracle_cdf(z)))?;
        z += 0.001;
    }
    Ok(format!(
        "z = {:.4}, p = {:.4}; t = {:.4}; max |ΔΦ| = {worst:.1e}",
        r.statistic, r.p_value, w.statistic
    ))
}

/// Distinct letter-only word for each index.
fn word(mut i: usize) -> String {
    let mut s = String::new();
    loop {
        s.push((b'a' + (i % 26) as u8) as char);
        i /= 26;
        if i == 0 {
            return s;
        }
    }
}

fn stream_doc(words: &[String]) -> Document {
    Document::from_text("s", "g", Origin::Real, &words.join(" "), &Abbreviations::default())
}

fn ttr_bounds() -> Check {
    let mut rng = StdRng::seed_from_u64(5);
    for trial in 0..1000 {
        let vocab = rng.gen_range(1..60);
        let len = rng.gen_range(1..400);
        let window = rng.gen_range(1..=len);
        let words: Vec<String> = (0..len).map(|_| word(rng.gen_range(0..vocab))).collect();
        let doc = stream_doc(&words);
        let lo = 1.0 / window as f64;
        for (name, v) in [
            ("segmented", ttr_segmented(&[&doc], window)),
            ("sliding", mattr_sliding(&[&doc], window)),
        ] {
            let v = v.map_err(|e| format!("trial {trial}: {e}"))?;
            ensure(v >= lo - 1e-15 && v <= 1.0, || {
                format!("trial {trial}: {name} TTR {v} outside [{lo}, 1] (window {window})")
            })?;
        }
    }
    let distinct: Vec<String> = (0..500).map(word).collect();
    let doc = stream_doc(&distinct);
    for window in [1, 7, 100, 500] {
        let s = ttr_segmented(&[&doc], window).map_err(|e| e.to_string())?;
        let m = mattr_sliding(&[&doc], window).map_err(|e| e.to_string())?;
        ensure(s == 1.0 && m == 1.0, || format!("distinct stream, window {window}: {s}, {m}"))?;
    }
    let constant = stream_doc(&vec!["a".to_string(); 301]);
    let s = ttr_segmented(&[&constant], 2).map_err(|e| e.to_string())?;
    let m = mattr_sliding(&[&constant], 2).map_err(|e| e.to_string())?;
    ensure(s == 0.5 && m == 0.5, || format!("constant stream: {s}, {m}"))?;
    Ok("1000 random streams, distinct and constant streams".into())
}

const TABLE1: &[(&str, usize, usize)] = &[
    ("Reagan", 37_004, 3_514),
    ("Clinton", 67_445, 4_000),
    ("Bush", 45_818, 3_641),
    ("Obama", 61_034, 4_013),
    ("Trump", 25_776, 3_323),
    ("Biden", 20_418, 2_461),
];

/// Word length, big-word ratio, segmented TTR, mean sentence length.
const TABLE4: &[(&str, f64, f64, f64, f64)] = &[
    ("Reagan", 4.55, 0.293, 0.347, 21.04),
    ("Clinton", 4.34, 0.268, 0.303, 21.33),
    ("Bush", 4.50, 0.301, 0.329, 20.08),
    ("Obama", 4.31, 0.259, 0.323, 19.76),
];

const SAME_PRESIDENT: &[(&str, f64)] = &[("Reagan", 0.21), ("Clinton", 0.197), ("Bush", 0.191), ("Obama", 0.179)];

fn replication(path: &str) -> Check {
    let corpus = load_manifest(std::path::Path::new(path)).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    let mut checked = 0usize;

    let summary: BTreeMap<String, _> = corpus_summary(&corpus, &["group"])
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|r| (r.group.clone(), r))
        .collect();
    for &(group, tokens, types) in TABLE1 {
        let Some(r) = summary.get(group) else { continue };
        for (what, got, want) in [("tokens", r.tokens, tokens), ("types", r.types, types)] {
            checked += 1;
            let rel = (got as f64 - want as f64).abs() / want as f64;
            if rel > 0.02 {
                problems.push(format!("{group} {what} {got} vs {want}"));
            }
        }
    }

    let groups = corpus.group_by(&["group"]).map_err(|e| e.to_string())?;
    for &(group, wl, bw, ttr, msl) in TABLE4 {
        let Some(g) = groups.iter().find(|g| g.label == group) else { continue };
        let r = stat_report(group, &g.docs, &StatOptions::default()).map_err(|e| e.to_string())?;
        let got_ttr = r.ttr_segmented.unwrap_or(f64::NAN);
        for (what, got, want) in [
            ("word length", r.word_length_mean, wl),
            ("BW", r.big_word_ratio, bw),
            ("TTR", got_ttr, ttr),
            ("MSL", r.msl, msl),
        ] {
            checked += 1;
            // NaN fails this comparison too
            if !((got - want).abs() <= 0.05 * want) {
                problems.push(format!("{group} {what} {got:.4} vs {want}"));
            }
        }
    }

    let policy = RatioPolicy::default();
    let unit = TermUnit::default_for(&corpus);
    let m = distance_matrix(&corpus, &["group", "subgroup"], unit, policy).map_err(|e| e.to_string())?;
    for &(group, want) in SAME_PRESIDENT {
        let (a, b) = (format!("{group}-A"), format!("{group}-B"));
        let Some(got) = m.get(&a, &b) else { continue };
        checked += 1;
        if (got - want).abs() > 0.03 {
            problems.push(format!("{a}/{b} distance {got:.3} vs {want}"));
        }
    }

    if checked == 0 {
        return Err("no group in the manifest matches the reference tables".into());
    }
    if problems.is_empty() {
        Ok(format!("{checked} reference values within tolerance"))
    } else {
        Err(format!("{} of {checked} values off: {}", problems.len(), problems.join("; ")))
    }
}

fn main() {
    let checks: Vec<(&str, fn() -> Check)> = vec![
        ("labbe distance axioms", labbe_axioms),
        ("z-score oracle equivalence", z_oracle),
        ("neighbor joining exact recovery", nj_recovery),
        ("golden outputs on the fixture corpus", golden),
        ("statistical tests", stat_tests),
        ("TTR bounds", ttr_bounds),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    match std::env::var("STYLOMETER_SOTU_MANIFEST") {
        Ok(path) if !path.is_empty() => match replication(&path) {
            Ok(detail) => println!("PASS replication on real addresses: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL replication on real addresses: {why}");
            }
        },
        _ => println!("SKIP replication on real addresses: STYLOMETER_SOTU_MANIFEST not set"),
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
