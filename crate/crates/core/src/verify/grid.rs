use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::poly::{format_rational, serde_str, Rational};

/// Sample points in the half-open interval `(lo, hi]`: the dyadic points
/// `lo + k/2^m` inside it, with `m >= 6` the least giving `min_samples`
/// points, plus `hi` itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TGrid {
    #[serde(with = "serde_str")]
    pub lo: Rational,
    #[serde(with = "serde_str")]
    pub hi: Rational,
    #[serde(skip)]
    pub samples: Vec<Rational>,
    pub step_exponent: u32,
}

/// Default minimum sample count.
pub const MIN_SAMPLES: usize = 64;

impl TGrid {
    pub fn dyadic(lo: Rational, hi: Rational, min_samples: usize) -> TGrid {
        assert!(lo < hi, "empty grid interval");
        let mut m = 6;
        loop {
            let step = Rational::new(BigInt::one(), BigInt::one() << m);
            let mut samples = Vec::new();
            let mut t = &lo + &step;
            while t < hi {
                samples.push(t.clone());
                t += &step;
            }
            samples.push(hi.clone());
            if samples.len() >= min_samples {
                return TGrid { lo, hi, samples, step_exponent: m };
            }
            m += 1;
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn describe(&self) -> String {
        format!(
            "({}, {}] step 2^-{} ({} samples)",
            format_rational(&self.lo),
            format_rational(&self.hi),
            self.step_exponent,
            self.samples.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn five_quarters_grid() {
        let g = TGrid::dyadic(rat(1, 1), rat(5, 4), MIN_SAMPLES);
        assert_eq!(g.step_exponent, 8);
        assert_eq!(g.len(), 64);
        assert_eq!(g.samples[0], rat(257, 256));
        assert_eq!(g.samples.last(), Some(&rat(5, 4)));
        assert!(g.samples.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn irrational_right_end() {
        let hi = rat(1_225_270, 1_000_000);
        let g = TGrid::dyadic(rat(1, 1), hi.clone(), MIN_SAMPLES);
        assert_eq!(g.step_exponent, 9);
        assert_eq!(g.len(), 116);
        assert_eq!(g.samples.last(), Some(&hi));
        assert!(g.samples.iter().all(|t| t > &rat(1, 1) && t <= &hi));
    }
}
