//! Random generators and independent oracles shared by the integration
//! suites. Nothing here calls into the solver under test.

#![allow(dead_code)]

use nalgebra::DMatrix;
use perron::matcore::{NonNegMatrix, Permutation, RealMatrix};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[0, 10]`, each kept with probability `density`.
pub fn random_nonneg(rng: &mut TestRng, n: usize, density: f64) -> NonNegMatrix {
    let data = (0..n * n)
        .map(|_| {
            if rng.random_bool(density) {
                rng.random_range(0.0..=10.0)
            } else {
                0.0
            }
        })
        .collect();
    NonNegMatrix::new(n, data).unwrap()
}

/// Random nonnegative matrix made irreducible by planting a random
/// Hamiltonian cycle with entries in `[0.5, 10]`.
pub fn random_irreducible(rng: &mut TestRng, n: usize, density: f64) -> NonNegMatrix {
    let base = random_nonneg(rng, n, density);
    let mut data = base.as_real().as_slice().to_vec();
    if n >= 2 {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for w in 0..n {
            let (i, j) = (order[w], order[(w + 1) % n]);
            data[i * n + j] = rng.random_range(0.5..=10.0);
        }
    }
    NonNegMatrix::new(n, data).unwrap()
}

pub fn random_permutation(rng: &mut TestRng, n: usize) -> Permutation {
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    Permutation::new(map).unwrap()
}

/// Block upper triangular matrix with irreducible diagonal blocks of the
/// given sizes, hidden by a random symmetric permutation.
pub struct Planted {
    pub matrix: NonNegMatrix,
    pub block_sizes: Vec<usize>,
}

pub fn random_block_sizes(rng: &mut TestRng, n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.random_range(1..=left.min(4));
        sizes.push(s);
        left -= s;
    }
    sizes
}

pub fn planted_reducible(rng: &mut TestRng, sizes: &[usize], upper_density: f64) -> Planted {
    let n: usize = sizes.iter().sum();
    let mut owner = Vec::with_capacity(n);
    for (b, &s) in sizes.iter().enumerate() {
        owner.extend(std::iter::repeat_n(b, s));
    }
    let mut x = vec![0.0; n * n];
    let mut start = 0;
    for &s in sizes {
        // 1x1 blocks may be zero; larger ones get a cycle.
        let block = random_irreducible(rng, s, 0.5);
        for i in 0..s {
            for j in 0..s {
                x[(start + i) * n + start + j] = block.get(i, j);
            }
        }
        start += s;
    }
    for i in 0..n {
        for j in 0..n {
            if owner[i] < owner[j] && rng.random_bool(upper_density) {
                x[i * n + j] = rng.random_range(0.0..=10.0);
            }
        }
    }
    // A[sigma(i)][sigma(j)] = X[i][j]
    let sigma = random_permutation(rng, n);
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[sigma.apply(i) * n + sigma.apply(j)] = x[i * n + j];
        }
    }
    Planted {
        matrix: NonNegMatrix::new(n, a).unwrap(),
        block_sizes: sizes.to_vec(),
    }
}

// ---------------------------------------------------------------- oracles

fn to_dmatrix(a: &RealMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.n(), a.n(), a.as_slice())
}

/// Spectral radius as the largest modulus among all (complex) eigenvalues
/// from a real Schur decomposition.
///
/// A nilpotent pattern has spectrum {0} exactly; the dense eigensolver
/// smears its defective zero eigenvalue into a cluster of size about
/// `eps^(1/n)`, so that case is answered from the pattern instead.
pub fn eigen_radius(a: &NonNegMatrix) -> f64 {
    if pattern_nilpotent(a) {
        return 0.0;
    }
    to_dmatrix(a.as_real())
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// The boolean pattern of `a` raised to the n-th power is zero, i.e. the
/// directed graph of `a` has no cycle.
pub fn pattern_nilpotent(a: &NonNegMatrix) -> bool {
    let n = a.n();
    let base: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j) > 0.0).collect())
        .collect();
    let mut p = base.clone();
    for _ in 1..n {
        p = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).any(|k| p[i][k] && base[k][j]))
                    .collect()
            })
            .collect();
    }
    p.iter().all(|row| row.iter().all(|&x| !x))
}

/// Largest real root of the characteristic polynomial (n <= 3), which is
/// the Perron root of a nonnegative matrix.
pub fn charpoly_root(a: &NonNegMatrix) -> f64 {
    let g = |i, j| a.get(i, j);
    match a.n() {
        1 => g(0, 0),
        2 => {
            let tr = g(0, 0) + g(1, 1);
            let disc = (g(0, 0) - g(1, 1)).powi(2) + 4.0 * g(0, 1) * g(1, 0);
            (tr + disc.sqrt()) / 2.0
        }
        3 => {
            let c1 = g(0, 0) + g(1, 1) + g(2, 2);
            let c2 = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) + g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0)
                + g(1, 1) * g(2, 2)
                - g(1, 2) * g(2, 1);
            let c3 = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
                - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
            let p = |x: f64| ((x - c1) * x + c2) * x - c3;
            let upper = max_col_sum(a) + 1.0;
            // p is increasing right of its largest critical point; the
            // largest root lies there unless p is already positive at it.
            let disc = c1 * c1 - 3.0 * c2;
            let mut lo = if disc >= 0.0 {
                let xp = (c1 + disc.sqrt()) / 3.0;
                let xm = (c1 - disc.sqrt()) / 3.0;
                if p(xp) <= 0.0 {
                    xp
                } else {
                    xm.min(-upper)
                }
            } else {
                -upper
            };
            if p(lo) == 0.0 {
                return lo;
            }
            let mut hi = upper;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if p(mid) > 0.0 {
                    hi = mid
                } else {
                    lo = mid
                }
            }
            0.5 * (lo + hi)
        }
        _ => panic!("closed form only for n <= 3"),
    }
}

pub fn max_col_sum(a: &NonNegMatrix) -> f64 {
    let n = a.n();
    (0..n)
        .map(|j| (0..n).map(|i| a.get(i, j)).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Strong connectivity by transitive closure (Warshall).
pub fn strongly_connected(a: &NonNegMatrix) -> bool {
    let n = a.n();
    if n == 1 {
        return true;
    }
    let mut r: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j) > 0.0).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                let via = r[k].clone();
                for (rij, &kj) in r[i].iter_mut().zip(&via) {
                    *rij |= kj;
                }
            }
        }
    }
    r.iter().all(|row| row.iter().all(|&b| b))
}

/// Collatz–Wielandt midpoint of an irreducible matrix from a long power
/// iteration on `A + sI` with `s` = half the largest row sum. Runs up to
/// `max_iter` steps and stops once the bounds stop moving.
pub fn collatz_wielandt_oracle(a: &NonNegMatrix, max_iter: usize) -> f64 {
    let n = a.n();
    if n == 1 {
        return a.get(0, 0);
    }
    let shift = 0.5
        * (0..n)
            .map(|i| a.row(i).iter().sum::<f64>())
            .fold(0.0, f64::max);
    let mut x = vec![1.0; n];
    let (mut lo, mut hi) = (0.0_f64, f64::INFINITY);
    let mut stale = 0;
    for _ in 0..max_iter {
        let y: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| a.get(i, j) * x[j]).sum::<f64>())
            .collect();
        let ratios = y.iter().zip(&x).map(|(yi, xi)| yi / xi);
        let (qmin, qmax) = ratios.fold((f64::INFINITY, 0.0_f64), |(a, b), q| (a.min(q), b.max(q)));
        if qmin > lo || qmax < hi {
            stale = 0;
        } else {
            stale += 1;
        }
        lo = lo.max(qmin);
        hi = hi.min(qmax);
        if stale > 1000 {
            break;
        }
        let m = y
            .iter()
            .zip(&x)
            .map(|(yi, xi)| yi + shift * xi)
            .fold(0.0, f64::max);
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = (yi + shift * *xi) / m;
        }
    }
    0.5 * (lo + hi)
}
