//! Small descriptive-statistics toolkit: moments, rank correlation and
//! least-squares line fits.

use serde::{Deserialize, Serialize};

pub fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

/// Sample standard deviation (n - 1 denominator); zero for a single value.
pub fn std_dev(xs: &[f64]) -> Option<f64> {
    let m = mean(xs)?;
    if xs.len() < 2 {
        return Some(0.0);
    }
    let ss: f64 = xs.iter().map(|x| (x - m).powi(2)).sum();
    Some((ss / (xs.len() - 1) as f64).sqrt())
}

/// Central moments of a distribution: mean, variance, and excess kurtosis
/// (population definitions).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub excess_kurtosis: Option<f64>,
}

impl Moments {
    pub fn of(xs: &[f64]) -> Option<Self> {
        Self::of_mixture(&[xs])
    }

    /// Moments of the equal-weight mixture of several empirical
    /// distributions, i.e. of their averaged histogram.
    pub fn of_mixture(parts: &[&[f64]]) -> Option<Self> {
        let parts: Vec<&[f64]> = parts.iter().copied().filter(|p| !p.is_empty()).collect();
        if parts.is_empty() {
            return None;
        }
        let w = 1.0 / parts.len() as f64;
        let avg = |f: &dyn Fn(f64) -> f64| -> f64 {
            parts
                .iter()
                .map(|p| w * p.iter().map(|&x| f(x)).sum::<f64>() / p.len() as f64)
                .sum()
        };
        let m = avg(&|x| x);
        let m2 = avg(&|x| (x - m).powi(2));
        let m4 = avg(&|x| (x - m).powi(4));
        let excess_kurtosis = (m2 > 0.0).then(|| m4 / (m2 * m2) - 3.0);
        Some(Self {
            mean: m,
            variance: m2,
            excess_kurtosis,
        })
    }
}

/// Pearson product-moment correlation; `None` when either side has zero
/// variance or fewer than two points.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len());
    if xs.len() < 2 {
        return None;
    }
    let mx = mean(xs)?;
    let my = mean(ys)?;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    (sxx > 0.0 && syy > 0.0).then(|| sxy / (sxx * syy).sqrt())
}

/// Ranks starting at 1, ties sharing their average rank.
pub fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && xs[idx[end]] == xs[idx[start]] {
            end += 1;
        }
        let r = 0.5 * ((start + 1) + end) as f64;
        for &i in &idx[start..end] {
            out[i] = r;
        }
        start = end;
    }
    out
}

/// Spearman rank correlation (Pearson on average ranks).
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    pearson(&ranks(xs), &ranks(ys))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares `y = slope * x + intercept`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Option<LineFit> {
    assert_eq!(xs.len(), ys.len());
    if xs.len() < 2 {
        return None;
    }
    let mx = mean(xs)?;
    let my = mean(ys)?;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Some(LineFit {
        slope,
        intercept,
        r_squared,
    })
}

/// Least squares on `(ln x, ln y)`.
pub fn fit_log_log(points: &[(f64, f64)]) -> Option<LineFit> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    fit_line(&xs, &ys)
}

/// Equal-width histogram on `[lo, hi]`; the last bin is closed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<f64>,
}

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Self {
        assert!(bins >= 1 && hi > lo, "histogram needs hi > lo and at least one bin");
        Self {
            lo,
            hi,
            counts: vec![0.0; bins],
        }
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.bins() as f64
    }

    pub fn center(&self, b: usize) -> f64 {
        self.lo + (b as f64 + 0.5) * self.width()
    }

    /// Bin of `x`, or `None` outside `[lo, hi]`.
    pub fn bin_of(&self, x: f64) -> Option<usize> {
        if !(self.lo..=self.hi).contains(&x) {
            return None;
        }
        let b = ((x - self.lo) / self.width()).floor() as usize;
        Some(b.min(self.bins() - 1))
    }

    pub fn add(&mut self, x: f64) {
        if let Some(b) = self.bin_of(x) {
            self.counts[b] += 1.0;
        }
    }

    pub fn total(&self) -> f64 {
        self.counts.iter().sum()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let t = self.total();
        self.counts
            .iter()
            .map(|&c| if t > 0.0 { c / t } else { 0.0 })
            .collect()
    }

    /// Bin-wise mean of histograms sharing the same binning.
    pub fn mean_of(hists: &[Histogram]) -> Option<Histogram> {
        let first = hists.first()?;
        let mut out = Histogram::new(first.lo, first.hi, first.bins());
        for h in hists {
            assert!(h.lo == first.lo && h.hi == first.hi && h.bins() == first.bins());
            for (o, c) in out.counts.iter_mut().zip(&h.counts) {
                *o += c / hists.len() as f64;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spearman_of_reciprocal_is_minus_one() {
        let l: Vec<f64> = (1..=12).map(|i| i as f64 * 0.7).collect();
        let k: Vec<f64> = l.iter().map(|x| 1.0 / x).collect();
        assert!((spearman(&l, &k).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_variance_has_no_correlation() {
        let x = [1.0, 2.0, 3.0];
        assert!(pearson(&x, &[5.0, 5.0, 5.0]).is_none());
        assert!(spearman(&[5.0, 5.0, 5.0], &x).is_none());
    }

    #[test]
    fn tied_ranks_are_averaged() {
        assert_eq!(ranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
    }

    #[test]
    fn line_fit_exact() {
        let f = fit_line(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        let f = fit_log_log(&[(1.0, 1.0), (2.0, 0.25), (4.0, 0.0625)]).unwrap();
        assert!((f.slope + 2.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_like_and_two_point_kurtosis() {
        // symmetric two-point distribution: kurtosis 1, excess -2
        let m = Moments::of(&[-1.0, 1.0, -1.0, 1.0]).unwrap();
        assert!((m.excess_kurtosis.unwrap() + 2.0).abs() < 1e-12);
        assert!(Moments::of(&[2.0, 2.0]).unwrap().excess_kurtosis.is_none());
    }

    #[test]
    fn mixture_moments_weight_parts_equally() {
        let a = [0.0, 0.0, 0.0, 0.0];
        let b = [4.0];
        let m = Moments::of_mixture(&[&a, &b]).unwrap();
        assert!((m.mean - 2.0).abs() < 1e-12);
        assert!((m.variance - 4.0).abs() < 1e-12);
    }

    #[test]
    fn histogram_binning() {
        let mut h = Histogram::new(-12.5, 12.5, 5);
        for x in [-10.0, -5.0, 0.0, 5.0, 10.0, 12.5, 99.0] {
            h.add(x);
        }
        assert_eq!(h.counts, vec![1.0, 1.0, 1.0, 1.0, 2.0]);
        assert_eq!(h.center(0), -10.0);
        let avg = Histogram::mean_of(&[h.clone(), Histogram::new(-12.5, 12.5, 5)]).unwrap();
        assert_eq!(avg.counts[4], 1.0);
    }
}
