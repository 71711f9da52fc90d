//! Random inputs and independent numerical oracles for unit tests.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::qcore::{DenseOperator, DensityMatrix, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ginibre(rng: &mut impl Rng, d: usize) -> DMatrix<C64> {
    DMatrix::from_fn(d, d, |_, _| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
}

pub fn random_hermitian(rng: &mut impl Rng, d: usize) -> DenseOperator {
    let g = ginibre(rng, d);
    DenseOperator::hermitian((&g + g.adjoint()) * C64::new(0.5, 0.0)).unwrap()
}

/// Haar-ish unitary from the QR factorization of a Ginibre matrix.
pub fn random_unitary(rng: &mut impl Rng, d: usize) -> DenseOperator {
    let qr = ginibre(rng, d).qr();
    DenseOperator::unitary(qr.q()).unwrap()
}

/// Full-rank random state `G G^† / Tr`.
pub fn random_density(rng: &mut impl Rng, d: usize) -> DensityMatrix {
    let g = ginibre(rng, d);
    let m = &g * g.adjoint();
    let tr = m.trace();
    DensityMatrix::new(m / tr).unwrap()
}

/// Cyclic Jacobi eigenvalues of a real symmetric matrix, ascending.
pub fn jacobi_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let mut a = a.clone();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Truncated Taylor series of `exp(-i H t)`.
pub fn taylor_exp(h: &DMatrix<C64>, t: f64, terms: usize) -> DMatrix<C64> {
    let d = h.nrows();
    let step = h * C64::new(0.0, -t);
    let mut term = DMatrix::<C64>::identity(d, d);
    let mut sum = term.clone();
    for k in 1..terms {
        term = &term * &step / C64::new(k as f64, 0.0);
        sum += &term;
    }
    sum
}

pub fn real_part(m: &DMatrix<C64>) -> DMatrix<f64> {
    m.map(|z| z.re)
}
