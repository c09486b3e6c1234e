//! Small statistical helpers shared by the experiment operations and the
//! test suites: sample moments, Kolmogorov–Smirnov distances, and the
//! histogram overlap coefficient.

/// Sample mean and its standard error (`s/√n`, with the n−1 variance).
///
/// Returns `(NaN, NaN)` for an empty slice and `(mean, 0)` for one sample.
pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Standard error of a Bernoulli proportion `p` estimated from `n` samples.
pub fn proportion_stderr(p: f64, n: u64) -> f64 {
    if n == 0 {
        return f64::NAN;
    }
    (p * (1.0 - p) / n as f64).sqrt()
}

/// One-sample Kolmogorov–Smirnov statistic against a continuous CDF.
pub fn ks_one_sample<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("KS samples must not be NaN"));
    let n = sorted.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        sup = sup.max((f - i as f64 / n).abs());
        sup = sup.max((f - (i + 1) as f64 / n).abs());
    }
    sup
}

/// Two-sample Kolmogorov–Smirnov statistic (sup distance between empirical
/// CDFs).
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.partial_cmp(y).expect("KS samples must not be NaN"));
    b.sort_by(|x, y| x.partial_cmp(y).expect("KS samples must not be NaN"));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut sup = 0.0f64;
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        if x <= y {
            i += 1;
        }
        if y <= x {
            j += 1;
        }
        sup = sup.max((i as f64 / na - j as f64 / nb).abs());
    }
    sup
}

/// Asymptotic coefficient for the 1% KS significance level.
pub const KS_COEFF_1PCT: f64 = 1.628;

/// 1% critical value for the one-sample KS statistic at sample size `n`.
pub fn ks_critical_1pct(n: usize) -> f64 {
    KS_COEFF_1PCT / (n as f64).sqrt()
}

/// 1% critical value for the two-sample KS statistic.
pub fn ks_critical_1pct_two_sample(n: usize, m: usize) -> f64 {
    KS_COEFF_1PCT * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

/// Overlap coefficient of two binned distributions: `Σ min(p0_i, p1_i)`
/// where each count vector is normalised by its own total.
///
/// 1 means the histograms coincide; 0 means disjoint support.
pub fn overlap_coefficient(counts0: &[u64], counts1: &[u64]) -> f64 {
    assert_eq!(counts0.len(), counts1.len(), "bin grids must match");
    let n0: u64 = counts0.iter().sum();
    let n1: u64 = counts1.iter().sum();
    if n0 == 0 || n1 == 0 {
        return f64::NAN;
    }
    counts0
        .iter()
        .zip(counts1)
        .map(|(&c0, &c1)| (c0 as f64 / n0 as f64).min(c1 as f64 / n1 as f64))
        .sum()
}
