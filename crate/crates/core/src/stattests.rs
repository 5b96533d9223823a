//! Two-proportion z-test and Welch's t-test, both two-sided.
//!
//! The normal CDF uses the Maclaurin series of `erf` near the origin and a
//! Lentz continued fraction for `erfc` in the tails; the Student t CDF goes
//! through the regularized incomplete beta function.

use serde::Serialize;

use crate::error::{Error, Result};

/// Significance level used unless a caller overrides it.
pub const DEFAULT_ALPHA: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TestKind {
    TwoProportion,
    WelchT,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub significant: bool,
    pub test: TestKind,
    /// Welch–Satterthwaite degrees of freedom (t-test only).
    pub df: Option<f64>,
}

impl TestResult {
    fn new(test: TestKind, statistic: f64, p_value: f64, alpha: f64, df: Option<f64>) -> Self {
        let p_value = p_value.clamp(0.0, 1.0);
        TestResult {
            statistic,
            p_value,
            alpha,
            significant: p_value < alpha,
            test,
            df,
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::validation(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

const SQRT_PI: f64 = 1.772_453_850_905_516;

fn erf_series(x: f64) -> f64 {
    // erf(x) = 2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1))
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= -x2 / n;
        let add = term / (2.0 * n + 1.0);
        sum += add;
        if add.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    2.0 / SQRT_PI * sum
}

fn erfc_continued_fraction(x: f64) -> f64 {
    // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    // evaluated with the modified Lentz algorithm, x > 0.
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = k as f64 / 2.0;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / SQRT_PI / f
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < 2.0 {
        1.0 - erf_series(x)
    } else {
        erfc_continued_fraction(x)
    }
}

/// Standard normal cumulative distribution function.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// Two-sided tail probability of a standard normal statistic.
pub fn normal_two_sided_p(z: f64) -> f64 {
    erfc(z.abs() / std::f64::consts::SQRT_2)
}

/// Natural log of the gamma function (Lanczos, g = 7, n = 9).
pub fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = COEF[0];
    let t = x + G + 0.5;
    for (i, c) in COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..1000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-15 {
            break;
        }
    }
    h
}

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

/// Two-sided tail probability of a Student t statistic with `df` degrees
/// of freedom.
pub fn student_t_two_sided_p(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return 0.0;
    }
    incomplete_beta(df / 2.0, 0.5, df / (df + t * t))
}

/// Student t cumulative distribution function.
pub fn student_t_cdf(t: f64, df: f64) -> f64 {
    let tail = 0.5 * student_t_two_sided_p(t, df);
    if t >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Two-sided pooled two-proportion z-test of `x1/n1` against `x2/n2`.
pub fn two_proportion_test(x1: u64, n1: u64, x2: u64, n2: u64, alpha: f64) -> Result<TestResult> {
    check_alpha(alpha)?;
    if n1 == 0 || n2 == 0 {
        return Err(Error::validation("proportion test needs positive trial counts"));
    }
    if x1 > n1 || x2 > n2 {
        return Err(Error::validation("successes cannot exceed trials"));
    }
    let (x1f, n1f, x2f, n2f) = (x1 as f64, n1 as f64, x2 as f64, n2 as f64);
    let pooled = (x1f + x2f) / (n1f + n2f);
    if pooled <= 0.0 || pooled >= 1.0 {
        return Err(Error::UndefinedTest(format!(
            "pooled proportion is {pooled}; the test needs it strictly inside (0, 1)"
        )));
    }
    let se = (pooled * (1.0 - pooled) * (1.0 / n1f + 1.0 / n2f)).sqrt();
    let z = (x1f / n1f - x2f / n2f) / se;
    Ok(TestResult::new(TestKind::TwoProportion, z, normal_two_sided_p(z), alpha, None))
}

fn mean_var(s: &[f64]) -> (f64, f64) {
    let n = s.len() as f64;
    let m = s.iter().sum::<f64>() / n;
    let v = s.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, v)
}

/// Two-sided Welch t-test (unequal variances).
pub fn welch_t_test(sample1: &[f64], sample2: &[f64], alpha: f64) -> Result<TestResult> {
    check_alpha(alpha)?;
    if sample1.len() < 2 || sample2.len() < 2 {
        return Err(Error::UndefinedTest(format!(
            "t-test needs at least two values per sample (got {} and {})",
            sample1.len(),
            sample2.len()
        )));
    }
    if sample1.iter().chain(sample2).any(|v| !v.is_finite()) {
        return Err(Error::validation("t-test samples must be finite"));
    }
    let (m1, v1) = mean_var(sample1);
    let (m2, v2) = mean_var(sample2);
    let (k1, k2) = (sample1.len() as f64, sample2.len() as f64);
    let (a, b) = (v1 / k1, v2 / k2);
    let se2 = a + b;
    if se2 == 0.0 {
        if m1 == m2 {
            return Err(Error::UndefinedTest("both samples are constant and equal".into()));
        }
        let t = if m1 > m2 { f64::INFINITY } else { f64::NEG_INFINITY };
        return Ok(TestResult::new(TestKind::WelchT, t, 0.0, alpha, None));
    }
    let t = (m1 - m2) / se2.sqrt();
    let df = se2 * se2 / (a * a / (k1 - 1.0) + b * b / (k2 - 1.0));
    Ok(TestResult::new(TestKind::WelchT, t, student_t_two_sided_p(t, df), alpha, Some(df)))
}
