//! The skew cube inequality and log-log slope fits.

use std::ops::Add;

use crate::error::{Error, Result};

pub const MAX_CUBE_DIM: usize = 13;

/// Vertex `v` of a `D`-cube is a bitmask; edges flip one bit, diagonals flip
/// all of them. Sums are of squared lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewCubeReport<T> {
    pub dim: usize,
    pub edge_sum: T,
    pub diagonal_sum: T,
    pub min_diagonal: T,
    pub max_edge: T,
}

impl<T: PartialOrd> SkewCubeReport<T> {
    /// Sum of squared diagonals at most the sum of squared edges.
    pub fn holds(&self) -> bool {
        self.diagonal_sum <= self.edge_sum
    }
}

impl SkewCubeReport<u128> {
    /// `min diagonal ≤ √D · max edge`, squared.
    pub fn diagonal_bound_holds(&self) -> bool {
        self.min_diagonal <= self.dim as u128 * self.max_edge
    }
}

fn check<T, F>(dim: usize, mut sq: F, zero: T) -> Result<SkewCubeReport<T>>
where
    T: Copy + PartialOrd + Add<Output = T>,
    F: FnMut(usize, usize) -> Result<T>,
{
    if dim > MAX_CUBE_DIM {
        return Err(Error::CapExceeded(format!(
            "cube dimension {dim} exceeds {MAX_CUBE_DIM}"
        )));
    }
    let n = 1usize << dim;
    let full = n - 1;
    let mut report = SkewCubeReport {
        dim,
        edge_sum: zero,
        diagonal_sum: zero,
        min_diagonal: zero,
        max_edge: zero,
    };
    let mut first_diagonal = true;
    for v in 0..n {
        for k in 0..dim {
            if v >> k & 1 == 0 {
                let d = sq(v, v | 1 << k)?;
                report.edge_sum = report.edge_sum + d;
                if d > report.max_edge {
                    report.max_edge = d;
                }
            }
        }
        if v < v ^ full {
            let d = sq(v, v ^ full)?;
            report.diagonal_sum = report.diagonal_sum + d;
            if first_diagonal || d < report.min_diagonal {
                report.min_diagonal = d;
                first_diagonal = false;
            }
        }
    }
    Ok(report)
}

/// Exact check from integer squared distances between vertices.
pub fn skew_cube_check_exact<F>(dim: usize, mut sq: F) -> Result<SkewCubeReport<u128>>
where
    F: FnMut(usize, usize) -> Result<u64>,
{
    check(dim, |i, j| sq(i, j).map(u128::from), 0)
}

/// Check for `2^D` points in Euclidean space, indexed by vertex bitmask.
pub fn skew_cube_check_points(points: &[Vec<f64>]) -> Result<SkewCubeReport<f64>> {
    if !points.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwo(points.len()));
    }
    let dim = points.len().trailing_zeros() as usize;
    check(
        dim,
        |i, j| Ok(points[i].iter().zip(&points[j]).map(|(a, b)| (a - b) * (a - b)).sum()),
        0.0,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square residual in log space.
    pub residual: f64,
    pub samples: usize,
}

/// Least-squares slope of `log distance` against `log length`.
pub fn compression_fit(samples: &[(f64, f64)]) -> Result<FitReport> {
    if samples.len() < 10 {
        return Err(Error::Degenerate(format!(
            "{} samples, need at least 10",
            samples.len()
        )));
    }
    if let Some(&(l, d)) = samples
        .iter()
        .find(|&&(l, d)| l.is_nan() || d.is_nan() || l <= 1.0 || d <= 0.0)
    {
        return Err(Error::Degenerate(format!(
            "sample ({l}, {d}) needs length > 1 and distance > 0"
        )));
    }
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    if samples.iter().all(|s| s.0 == samples[0].0) {
        return Err(Error::Degenerate("all lengths are equal".into()));
    }
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(FitReport {
        slope,
        intercept,
        residual: (sse / n).sqrt(),
        samples: samples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_square_is_tight() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        let r = skew_cube_check_points(&pts).unwrap();
        assert_eq!((r.edge_sum, r.diagonal_sum), (4.0, 4.0));
        assert!(r.holds());
    }

    #[test]
    fn equal_points() {
        let r = skew_cube_check_points(&vec![vec![2.0]; 8]).unwrap();
        assert_eq!((r.edge_sum, r.diagonal_sum), (0.0, 0.0));
        assert!(r.holds());
        assert_eq!(
            skew_cube_check_points(&vec![vec![0.0]; 6]).unwrap_err(),
            Error::NotPowerOfTwo(6)
        );
    }

    #[test]
    fn random_points_in_dimension_five() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let dim = rng.gen_range(1..=6);
            let pts: Vec<Vec<f64>> = (0..1 << dim)
                .map(|_| (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            assert!(skew_cube_check_points(&pts).unwrap().holds());
        }
    }

    #[test]
    fn exact_counts_edges_and_diagonals() {
        let mut edges = 0;
        let r = skew_cube_check_exact(4, |i, j| {
            edges += 1;
            Ok((i ^ j).count_ones() as u64)
        })
        .unwrap();
        assert_eq!(edges, 4 * 8 + 8);
        assert_eq!(r.edge_sum, 32);
        assert_eq!(r.diagonal_sum, 8 * 4);
        assert_eq!((r.min_diagonal, r.max_edge), (4, 1));
        assert!(r.holds() && r.diagonal_bound_holds());
    }

    #[test]
    fn fits() {
        let lin: Vec<(f64, f64)> = (2..30).map(|l| (l as f64, l as f64)).collect();
        assert!((compression_fit(&lin).unwrap().slope - 1.0).abs() < 1e-9);
        let root: Vec<(f64, f64)> = (2..30).map(|l| (l as f64, (l as f64).sqrt())).collect();
        let r = compression_fit(&root).unwrap();
        assert!((r.slope - 0.5).abs() < 1e-9);
        assert!(r.residual < 1e-9);
        assert!(compression_fit(&lin[..5]).is_err());
        assert!(compression_fit(&[(3.0, 2.0); 12]).is_err());
        let mut with_one = lin.clone();
        with_one.push((1.0, 1.0));
        assert!(compression_fit(&with_one).is_err());
    }
}
