use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{prime_sweep, KummerAngle, PrimeGauss};

/// `I1 = [1/2, 1]`, `I2 = [-1/2, 1/2)`, `I3 = [-1, -1/2)`; a tie joins the higher interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KummerInterval {
    I1,
    I2,
    I3,
}

impl KummerInterval {
    pub fn of(cos: f64) -> KummerInterval {
        if cos >= 0.5 {
            KummerInterval::I1
        } else if cos >= -0.5 {
            KummerInterval::I2
        } else {
            KummerInterval::I3
        }
    }

    pub fn index(self) -> usize {
        match self {
            KummerInterval::I1 => 0,
            KummerInterval::I2 => 1,
            KummerInterval::I3 => 2,
        }
    }

    pub fn label(self) -> &'static str {
        ["I1", "I2", "I3"][self.index()]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KummerHistogram {
    pub x: u64,
    pub counts: [u64; 3],
    pub frequencies: [f64; 3],
    pub angles: Vec<KummerAngle>,
}

impl KummerHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Mean of `cos(2 pi theta_p)`.
    pub fn mean_cos(&self) -> f64 {
        self.angles.iter().map(|a| a.cos2pitheta).sum::<f64>() / self.angles.len().max(1) as f64
    }
}

pub fn kummer_histogram(x: u64) -> Result<KummerHistogram> {
    if x < 7 {
        return Err(Error::InvalidArgument(format!("Kummer histogram needs X >= 7, got {x}")));
    }
    kummer_histogram_from_sweep(x, &prime_sweep(x)?)
}

/// Histogram over the entries of an ascending sweep with `p <= x`.
pub fn kummer_histogram_from_sweep(x: u64, sweep: &[PrimeGauss]) -> Result<KummerHistogram> {
    if x < 7 {
        return Err(Error::InvalidArgument(format!("Kummer histogram needs X >= 7, got {x}")));
    }
    let mut counts = [0u64; 3];
    let mut angles = Vec::new();
    for r in sweep.iter().take_while(|r| r.p <= x) {
        let a = KummerAngle::from_value(r.p, r.value);
        counts[KummerInterval::of(a.cos2pitheta).index()] += 1;
        angles.push(a);
    }
    let total = counts.iter().sum::<u64>().max(1) as f64;
    let frequencies = counts.map(|c| c as f64 / total);
    Ok(KummerHistogram { x, counts, frequencies, angles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::sp_direct;

    #[test]
    fn ties_go_up() {
        assert_eq!(KummerInterval::of(0.5), KummerInterval::I1);
        assert_eq!(KummerInterval::of(-0.5), KummerInterval::I2);
        assert_eq!(KummerInterval::of(-0.500_000_1), KummerInterval::I3);
        assert_eq!(KummerInterval::of(1.0), KummerInterval::I1);
    }

    #[test]
    fn single_prime_at_seven() {
        let h = kummer_histogram(7).unwrap();
        assert_eq!(h.counts, [1, 0, 0]);
        assert!((h.angles[0].cos2pitheta - 0.896).abs() < 1e-3);
        assert!(kummer_histogram(6).is_err());
    }

    #[test]
    fn kummer_ordering_at_500() {
        let h = kummer_histogram(500).unwrap();
        assert!(h.counts[0] > h.counts[1] && h.counts[1] > h.counts[2], "{:?}", h.counts);
        // the cosines are S_p / (2 sqrt p)
        for a in &h.angles {
            let sp = sp_direct(a.p).0;
            assert!((sp / (2.0 * (a.p as f64).sqrt()) - a.cos2pitheta).abs() < 1e-12);
        }
    }
}
