use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// Result of [`smith_normal_form`]: `left · M · right = diag`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
    /// Inverse of `right`, maintained alongside it.
    pub right_inverse: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries d₁ | d₂ | …
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.diag.rows().min(self.diag.cols()))
            .map(|i| self.diag[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form of an arbitrary integer matrix by unimodular row and
/// column operations. Invariant factors are nonnegative and divide in order.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (nr, nc) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut left = IntMatrix::identity(nr);
    let mut right = IntMatrix::identity(nc);
    let mut right_inv = IntMatrix::identity(nc);

    // column operations are mirrored on `right` and inversely on `right_inv`
    let col_add = |s: &mut IntMatrix, r: &mut IntMatrix, ri: &mut IntMatrix, target: usize, src: usize, k: &BigInt| {
        s.add_col_multiple(target, src, k);
        r.add_col_multiple(target, src, k);
        ri.add_row_multiple(src, target, &-k);
    };
    let col_swap = |s: &mut IntMatrix, r: &mut IntMatrix, ri: &mut IntMatrix, a: usize, b: usize| {
        s.swap_cols(a, b);
        r.swap_cols(a, b);
        ri.swap_rows(a, b);
    };

    for t in 0..nr.min(nc) {
        let Some((pi, pj)) = min_abs_entry(&s, (t..nr).flat_map(|i| (t..nc).map(move |j| (i, j)))) else {
            break;
        };
        s.swap_rows(t, pi);
        left.swap_rows(t, pi);
        col_swap(&mut s, &mut right, &mut right_inv, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if !s[(i, t)].is_zero() {
                    let q = s[(i, t)].div_floor(&s[(t, t)]);
                    s.add_row_multiple(i, t, &-&q);
                    left.add_row_multiple(i, t, &-&q);
                    dirty |= !s[(i, t)].is_zero();
                }
            }
            for j in t + 1..nc {
                if !s[(t, j)].is_zero() {
                    let q = s[(t, j)].div_floor(&s[(t, t)]);
                    col_add(&mut s, &mut right, &mut right_inv, j, t, &-&q);
                    dirty |= !s[(t, j)].is_zero();
                }
            }
            if dirty {
                let cross = (t..nr).map(|i| (i, t)).chain((t + 1..nc).map(|j| (t, j)));
                let (pi, pj) = min_abs_entry(&s, cross).expect("pivot row/column is nonzero");
                if pi != t {
                    s.swap_rows(t, pi);
                    left.swap_rows(t, pi);
                }
                if pj != t {
                    col_swap(&mut s, &mut right, &mut right_inv, t, pj);
                }
                continue;
            }
            // pivot must divide the remaining block
            let offender = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !(&s[(i, j)] % &s[(t, t)]).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            left.negate_row(t);
        }
    }
    SmithForm { left, diag: s, right, right_inverse: right_inv }
}

fn min_abs_entry(s: &IntMatrix, positions: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    positions
        .filter(|&(i, j)| !s[(i, j)].is_zero())
        .min_by(|&a, &b| s[a].abs().cmp(&s[b].abs()))
}

/// Row-style Hermite normal form: the nonzero rows of an echelon basis of the
/// row span, with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Two matrices have the same row lattice iff their Hermite
/// normal forms agree.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut r = 0;
    for col in 0..nc {
        if r == nr {
            break;
        }
        while let Some(p) = (r..nr).filter(|&i| !a[(i, col)].is_zero()).min_by_key(|&i| a[(i, col)].abs()) {
            a.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..nr {
                if !a[(i, col)].is_zero() {
                    let q = a[(i, col)].div_floor(&a[(r, col)]);
                    a.add_row_multiple(i, r, &-q);
                    clean &= a[(i, col)].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if a[(r, col)].is_zero() {
            continue;
        }
        if a[(r, col)].is_negative() {
            a.negate_row(r);
        }
        for i in 0..r {
            let q = a[(i, col)].div_floor(&a[(r, col)]);
            a.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    if r == 0 {
        return IntMatrix::zeros(0, nc);
    }
    IntMatrix::from_rows((0..r).map(|i| a.row(i).to_vec()).collect()).expect("rows have equal length")
}
