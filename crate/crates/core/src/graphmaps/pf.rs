use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PfError {
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("matrix is reducible")]
    Reducible,
    #[error("power iteration did not reach tolerance after {0} steps")]
    NoConvergence(usize),
}

/// Perron–Frobenius eigenvalue with a certified enclosure and the
/// positive right eigenvector normalized to sum one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PfData {
    pub lambda: f64,
    pub lo: f64,
    pub hi: f64,
    pub lengths: Vec<f64>,
    pub iterations: usize,
}

impl PfData {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

const MAX_ITERATIONS: usize = 200_000;

fn is_irreducible(m: &[Vec<u64>]) -> bool {
    let n = m.len();
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                let w = if forward { m[i][j] } else { m[j][i] };
                if w > 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

/// Power iteration on `M + I`, which is primitive when `M` is irreducible.
/// For a positive vector `v` the ratios `(Av)_i / v_i` bracket the
/// Perron root (Collatz–Wielandt); iteration stops once the bracket is
/// narrower than `tol`. The bracket is widened by a few ulps to absorb
/// rounding.
pub fn pf_data(m: &[Vec<u64>], tol: f64) -> Result<PfData, PfError> {
    let n = m.len();
    if n == 0 || m.iter().all(|r| r.iter().all(|&x| x == 0)) {
        return Err(PfError::ZeroMatrix);
    }
    if !is_irreducible(m) {
        return Err(PfError::Reducible);
    }
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| m[i][j] as f64 + if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut v = vec![1.0 / n as f64; n];
    for it in 1..=MAX_ITERATIONS {
        let av: Vec<f64> = a.iter().map(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum()).collect();
        let ratios = av.iter().zip(&v).map(|(x, y)| x / y);
        let (lo, hi) = ratios.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r), hi.max(r)));
        let sum: f64 = av.iter().sum();
        v = av.into_iter().map(|x| x / sum).collect();
        let slack = 8.0 * f64::EPSILON * hi;
        let (lo, hi) = (lo - 1.0 - slack, hi - 1.0 + slack);
        if hi - lo <= tol {
            return Ok(PfData { lambda: 0.5 * (lo + hi), lo, hi, lengths: v, iterations: it });
        }
    }
    Err(PfError::NoConvergence(MAX_ITERATIONS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_root() {
        let pf = pf_data(&[vec![1, 1], vec![1, 0]], 1e-12).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(pf.lo <= phi && phi <= pf.hi, "{pf:?}");
        assert!((pf.lengths[0] / pf.lengths[1] - phi).abs() < 1e-9);
    }

    #[test]
    fn permutation_and_scalar() {
        let p = pf_data(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]], 1e-12).unwrap();
        assert!(p.lo <= 1.0 && 1.0 <= p.hi && p.width() < 1e-12);
        let s = pf_data(&[vec![3]], 1e-12).unwrap();
        assert!((s.lambda - 3.0).abs() < 1e-12);
    }

    #[test]
    fn failures() {
        assert_eq!(pf_data(&[vec![0, 0], vec![0, 0]], 1e-9), Err(PfError::ZeroMatrix));
        assert_eq!(pf_data(&[vec![1, 0], vec![2, 1]], 1e-9), Err(PfError::Reducible));
        assert_eq!(pf_data(&[], 1e-9), Err(PfError::ZeroMatrix));
    }

    #[test]
    fn eigen_equation_holds() {
        let m = vec![vec![2, 1, 0], vec![0, 1, 1], vec![1, 1, 1]];
        let pf = pf_data(&m, 1e-12).unwrap();
        for i in 0..3 {
            let mv: f64 = (0..3).map(|j| m[i][j] as f64 * pf.lengths[j]).sum();
            assert!((mv - pf.lambda * pf.lengths[i]).abs() < 1e-9);
        }
    }
}
