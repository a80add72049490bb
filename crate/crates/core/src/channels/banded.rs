use serde::{Deserialize, Serialize};

use crate::scalar::Real;
use crate::tensor::ComplexMatrix;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bandedness<T> {
    pub ratio: T,
    /// Set when the matrix has no weight at all; `ratio` is then 0.
    pub zero: bool,
}

/// Index distance on a ring of `n` sites.
pub fn torus_distance(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j) % n;
    d.min(n - d)
}

/// Fraction of `Σ|M_ij|²` carried by entries with torus distance `≤ w`.
pub fn bandedness<T: Real>(m: &ComplexMatrix<T>, w: usize) -> Result<Bandedness<T>> {
    let n = m.square_dim()?;
    if w >= n {
        return Err(Error::OutOfRange {
            name: "band width",
            value: w as f64,
            allowed: "0 <= w < N",
        });
    }
    let mut inside = T::zero();
    let mut total = T::zero();
    for i in 0..n {
        for j in 0..n {
            let a = m[(i, j)].norm_sqr();
            total += a;
            if torus_distance(i, j, n) <= w {
                inside += a;
            }
        }
    }
    if total <= T::zero() {
        return Ok(Bandedness {
            ratio: T::zero(),
            zero: true,
        });
    }
    Ok(Bandedness {
        ratio: inside / total,
        zero: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c, cre};
    use proptest::prelude::*;

    #[test]
    fn diagonal_is_fully_banded() {
        let d = ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0), c(0.5, 0.5)]);
        let b = bandedness(&d, 0).unwrap();
        assert_eq!(b.ratio, 1.0);
        assert!(!b.zero);
    }

    #[test]
    fn all_ones() {
        let m = ComplexMatrix::from_fn(8, 8, |_, _| cre(1.0f64));
        assert!((bandedness(&m, 1).unwrap().ratio - 3.0 / 8.0).abs() < 1e-15);
        assert!((bandedness(&m, 4 - 1).unwrap().ratio - 7.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn corner_entries_are_near_the_diagonal() {
        let mut m = ComplexMatrix::<f64>::zeros(8, 8);
        m[(0, 7)] = cre(1.0);
        assert_eq!(bandedness(&m, 1).unwrap().ratio, 1.0);
        assert_eq!(bandedness(&m, 0).unwrap().ratio, 0.0);
    }

    #[test]
    fn zero_and_invalid() {
        let b = bandedness(&ComplexMatrix::<f64>::zeros(4, 4), 1).unwrap();
        assert!(b.zero && b.ratio == 0.0);
        assert!(bandedness(&ComplexMatrix::<f64>::identity(4), 4).is_err());
        assert!(bandedness(&ComplexMatrix::<f64>::zeros(2, 3), 0).is_err());
    }

    proptest! {
        #[test]
        fn ratio_in_unit_interval_and_monotone(
            entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 64),
        ) {
            let m = ComplexMatrix::from_row_major(8, 8, entries.iter().map(|&(a, b)| c(a, b)).collect()).unwrap();
            let mut last = 0.0;
            for w in 0..8 {
                let r = bandedness(&m, w).unwrap().ratio;
                prop_assert!((0.0..=1.0 + 1e-12).contains(&r));
                prop_assert!(r >= last - 1e-12);
                last = r;
            }
            prop_assert!((last - 1.0).abs() < 1e-12);
        }
    }
}
