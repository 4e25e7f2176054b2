//! Independent reference implementations used to cross-check the library.
#![allow(dead_code, clippy::needless_range_loop)]

use std::sync::Arc;

use mukai_lattice::pseudoheight::{Degree, ExtDegreeTable};
use mukai_lattice::{IntLattice, K3Model, LatticeVector, MukaiVector, Signature};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return i128::from(m[0][0]);
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * i128::from(m[0][j]) * cofactor_det(&minor)
        })
        .sum()
}

/// Signature by congruence diagonalization over Q.
pub fn ldl_signature(m: &[Vec<i64>]) -> Signature {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let mut diag = Vec::new();
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k ← e_k + e_j gives a nonzero diagonal entry 2a_kj
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                diag.push(BigRational::zero());
                k += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
        }
        for i in k + 1..n {
            a[k][i] = BigRational::zero();
        }
        diag.push(p);
        k += 1;
    }
    Signature::new(
        diag.iter().filter(|d| d.is_positive()).count(),
        diag.iter().filter(|d| d.is_negative()).count(),
        diag.iter().filter(|d| d.is_zero()).count(),
    )
}

/// Pseudoheight by enumerating all 2ⁿ − 1 chains.
pub fn brute_pseudoheight(t: &ExtDegreeTable) -> Degree {
    let n = t.n();
    let mut best = Degree::Infinite;
    for mask in 1u32..(1 << n) {
        let chain: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let mut total = Degree::Finite(0);
        for w in chain.windows(2) {
            total = total + t.plain(w[0], w[1]);
        }
        total = total + t.serre(*chain.last().unwrap(), chain[0]);
        best = best.min(total.offset(-(chain.len() as i64 - 1)));
    }
    best
}

pub fn random_degree<R: Rng>(rng: &mut R, lo: i64, hi: i64, inf_prob: f64) -> Degree {
    if rng.gen_bool(inf_prob) {
        Degree::Infinite
    } else {
        Degree::Finite(rng.gen_range(lo..=hi))
    }
}

/// Entries in `{0..5, ∞}`.
pub fn random_table<R: Rng>(rng: &mut R, n: usize) -> ExtDegreeTable {
    let mut t = ExtDegreeTable::new(n, rng.gen_range(0..=6));
    for j in 0..n {
        for i in 0..j {
            t.set_plain(i, j, random_degree(rng, 0, 5, 0.15));
        }
        for i in 0..=j {
            t.set_serre(j, i, random_degree(rng, 0, 5, 0.15));
        }
    }
    t
}

/// Even Picard lattice of rank ≤ 2 with entries in [−10, 10] and some
/// vector of positive square.
pub fn random_model<R: Rng>(rng: &mut R) -> Arc<K3Model> {
    loop {
        let rho = rng.gen_range(1..=2usize);
        let mut g = vec![vec![0i64; rho]; rho];
        for i in 0..rho {
            g[i][i] = 2 * rng.gen_range(-5..=5);
            for j in i + 1..rho {
                let x = rng.gen_range(-10..=10);
                g[i][j] = x;
                g[j][i] = x;
            }
        }
        let rows: Vec<&[i64]> = g.iter().map(Vec::as_slice).collect();
        let pic = IntLattice::from_i64(&rows, &[]);
        let pol = small_vectors(rho).into_iter().find(|v| pic.square(v).unwrap() > BigInt::zero());
        if let Some(pol) = pol {
            return Arc::new(K3Model::new("random", pic, pol).expect("even lattice with positive class"));
        }
    }
}

fn small_vectors(rho: usize) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    for a in -2i64..=2 {
        if rho == 1 {
            out.push(LatticeVector::from_i64(&[a]));
        } else {
            for b in -2i64..=2 {
                out.push(LatticeVector::from_i64(&[a, b]));
            }
        }
    }
    out
}

pub fn random_class<R: Rng>(rng: &mut R, rho: usize) -> String {
    let coords: Vec<String> = (0..rho).map(|i| format!("{}*e{}", rng.gen_range(0..=3), i + 1)).collect();
    let sign = if rng.gen_bool(0.5) { "-" } else { "" };
    format!("{sign}({})", coords.join("+"))
}

/// A random generator token: shift, a line bundle tensor, or a twist by a line bundle.
pub fn random_token<R: Rng>(rng: &mut R, rho: usize) -> String {
    match rng.gen_range(0..4) {
        0 => "shift".into(),
        1 => format!("lb:{}", random_class(rng, rho)),
        2 => "tw:O".into(),
        _ => format!("tw:O({})", random_class(rng, rho)),
    }
}

/// Checks `MᵀGM = G` directly on integer rows.
pub fn preserves_form(m: &[Vec<BigInt>], g: &[Vec<BigInt>]) -> bool {
    let n = g.len();
    for i in 0..n {
        for j in 0..n {
            let mut s = BigInt::zero();
            for k in 0..n {
                for l in 0..n {
                    s += &m[k][i] * &g[k][l] * &m[l][j];
                }
            }
            if s != g[i][j] {
                return false;
            }
        }
    }
    true
}

pub fn mv(r: i64, c: &[i64], s: i64) -> MukaiVector {
    MukaiVector::from_i64(r, c, s)
}

/// Mukai lattice arithmetic on `(r, c, s)` with plain `i64` entries, written
/// straight from the formulas for the pairing, twists and line bundles.
pub struct MukaiOracle {
    pub pic: Vec<Vec<i64>>,
}

pub type Mv = (i64, Vec<i64>, i64);

impl MukaiOracle {
    fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        (0..a.len()).map(|i| (0..b.len()).map(|j| a[i] * self.pic[i][j] * b[j]).sum::<i64>()).sum()
    }

    pub fn pair(&self, v: &Mv, w: &Mv) -> i64 {
        self.dot(&v.1, &w.1) - v.0 * w.2 - w.0 * v.2
    }

    pub fn line_bundle(&self, c: &[i64]) -> Mv {
        (1, c.to_vec(), self.dot(c, c) / 2 + 1)
    }

    /// `w ↦ w + (v, w) v`
    pub fn twist(&self, v: &Mv, w: &Mv) -> Mv {
        let k = self.pair(v, w);
        (w.0 + k * v.0, w.1.iter().zip(&v.1).map(|(a, b)| a + k * b).collect(), w.2 + k * v.2)
    }

    /// Multiplication by `exp(c)`.
    pub fn tensor(&self, c: &[i64], w: &Mv) -> Mv {
        let (r, ref d, s) = *w;
        (r, d.iter().zip(c).map(|(x, y)| x + r * y).collect(), s + self.dot(c, d) + r * self.dot(c, c) / 2)
    }

    pub fn shift(&self, w: &Mv) -> Mv {
        (-w.0, w.1.iter().map(|x| -x).collect(), -w.2)
    }
}
