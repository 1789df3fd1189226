use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_BINS: usize = 50;

/// Equal-width histogram over `[lo, hi]`; the last bin is closed on the right.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.bins() as f64
    }

    pub fn edges(&self, bin: usize) -> (f64, f64) {
        let w = self.width();
        let left = self.lo + w * bin as f64;
        let right = if bin + 1 == self.bins() { self.hi } else { self.lo + w * (bin + 1) as f64 };
        (left, right)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn histogram(values: &[f64], bins: usize) -> Result<Histogram> {
    if values.is_empty() || bins == 0 {
        return Err(Error::InvalidArgument(
            "histogram needs at least one value and one bin".into(),
        ));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut counts = vec![0u64; bins];
    let span = hi - lo;
    for &v in values {
        let bin = if span > 0.0 {
            (((v - lo) / span * bins as f64) as usize).min(bins - 1)
        } else {
            0
        };
        counts[bin] += 1;
    }
    Ok(Histogram { lo, hi, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binning() {
        let h = histogram(&[0.0, 0.1, 0.5, 0.99, 1.0], 2).unwrap();
        assert_eq!(h.counts, vec![2, 3]);
        assert_eq!(h.edges(0), (0.0, 0.5));
        assert_eq!(h.edges(1), (0.5, 1.0));
        assert_eq!(h.total(), 5);
    }

    #[test]
    fn constant_sample_lands_in_first_bin() {
        let h = histogram(&[2.0; 4], 3).unwrap();
        assert_eq!(h.counts, vec![4, 0, 0]);
    }

    #[test]
    fn rejects_empty() {
        assert!(histogram(&[], 3).is_err());
        assert!(histogram(&[1.0], 0).is_err());
    }
}
