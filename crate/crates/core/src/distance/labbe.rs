use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Default upper bound on the ratio between the longer and shorter text.
pub const DEFAULT_MAX_RATIO: f64 = 8.0;

/// Term counts of one text.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Profile {
    counts: BTreeMap<String, u64>,
    total: u64,
}

impl Profile {
    pub fn new() -> Self {
        Profile::default()
    }

    pub fn add(&mut self, term: impl Into<String>) {
        *self.counts.entry(term.into()).or_default() += 1;
        self.total += 1;
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn count(&self, term: &str) -> u64 {
        self.counts.get(term).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Concatenation of two texts.
    pub fn merged(&self, other: &Profile) -> Profile {
        let mut p = self.clone();
        for (t, c) in other.terms() {
            *p.counts.entry(t.to_string()).or_default() += c;
        }
        p.total += other.total;
        p
    }
}

impl<S: Into<String>> FromIterator<S> for Profile {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut p = Profile::new();
        for t in iter {
            p.add(t);
        }
        p
    }
}

/// What to do when two texts differ in length by more than `max_ratio`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioPolicy {
    pub max_ratio: f64,
    /// Refuse (`true`) or only warn (`false`).
    pub enforce: bool,
}

impl Default for RatioPolicy {
    fn default() -> Self {
        RatioPolicy {
            max_ratio: DEFAULT_MAX_RATIO,
            enforce: true,
        }
    }
}

/// Labbé intertextual distance between two texts.
///
/// With `A` the shorter text, the counts of `B` are scaled to the length of
/// `A` and `D = Σ |tf_A − tf_B·n_A/n_B| / (2·n_A)` over the union
/// vocabulary. The result lies in `[0, 1]` and does not depend on argument
/// order.
pub fn labbe_distance(a: &Profile, b: &Profile, policy: RatioPolicy) -> Result<f64> {
    labbe_distance_named(a, "A", b, "B", policy)
}

pub(crate) fn labbe_distance_named(
    a: &Profile,
    a_name: &str,
    b: &Profile,
    b_name: &str,
    policy: RatioPolicy,
) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::validation("intertextual distance needs two non-empty texts"));
    }
    let ((short, short_name), (long, long_name)) = if a.total <= b.total {
        ((a, a_name), (b, b_name))
    } else {
        ((b, b_name), (a, a_name))
    };
    let ratio = long.total as f64 / short.total as f64;
    if ratio > policy.max_ratio {
        if policy.enforce {
            return Err(Error::RatioExceeded {
                shorter: short_name.to_string(),
                longer: long_name.to_string(),
                ratio,
                max_ratio: policy.max_ratio,
            });
        }
        log::warn!(
            "length ratio {ratio:.3} between '{long_name}' and '{short_name}' exceeds {}",
            policy.max_ratio
        );
    }
    let n_short = short.total as f64;
    let n_long = long.total as f64;
    let scaled = |tf: u64| (tf as f64 * n_short) / n_long;

    // merge-walk both sorted vocabularies so the summation order is fixed
    let mut sum = 0.0;
    let mut it_s = short.counts.iter().peekable();
    let mut it_l = long.counts.iter().peekable();
    loop {
        let term = match (it_s.peek(), it_l.peek()) {
            (None, None) => break,
            (Some((ks, _)), None) => (*ks).clone(),
            (None, Some((kl, _))) => (*kl).clone(),
            (Some((ks, _)), Some((kl, _))) => std::cmp::min(*ks, *kl).clone(),
        };
        let ts = if it_s.peek().is_some_and(|(k, _)| **k == term) {
            *it_s.next().unwrap().1
        } else {
            0
        };
        let tl = if it_l.peek().is_some_and(|(k, _)| **k == term) {
            *it_l.next().unwrap().1
        } else {
            0
        };
        sum += (ts as f64 - scaled(tl)).abs();
    }
    Ok((sum / (2.0 * n_short)).clamp(0.0, 1.0))
}
