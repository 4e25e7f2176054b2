//! Integer solutions of `4d² + 6de = t`, the square of a difference
//! `dD + eE` of first Chern classes in the Picard lattice `(4, 3; 3, 0)`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Solutions sorted by `(d, e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallSolutions {
    pub target: i64,
    pub pairs: Vec<(i64, i64)>,
    /// Set for `t = 0`, where `d = 0` allows every `e`; only `(0, 0)` is listed.
    pub degenerate: bool,
}

impl WallSolutions {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl fmt::Display for WallSolutions {
    /// `∅` or `{(d, e), …}`; degenerate sets carry a note.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("∅");
        }
        let items: Vec<String> = self.pairs.iter().map(|(d, e)| format!("({d}, {e})")).collect();
        write!(f, "{{{}}}", items.join(", "))?;
        if self.degenerate {
            f.write_str(" (degenerate: d=0 ⇒ any e)")?;
        }
        Ok(())
    }
}

/// Solves `4d² + 6de = target` by enumerating divisors `d` of `target/2`:
/// `d(2d + 3e) = target/2` forces `e = (target/(2d) − 2d)/3`.
pub fn solve_wall_equation(target: i64) -> WallSolutions {
    if target == 0 {
        return WallSolutions { target, pairs: vec![(0, 0)], degenerate: true };
    }
    if target % 2 != 0 {
        return WallSolutions { target, pairs: Vec::new(), degenerate: false };
    }
    let half = i128::from(target / 2);
    let mut pairs = Vec::new();
    for d in divisors(half.unsigned_abs()) {
        for d in [d as i128, -(d as i128)] {
            let rest = half / d - 2 * d;
            if rest % 3 == 0 {
                let e = rest / 3;
                // the values fit because |d| ≤ |target| and |e| ≤ |target|
                pairs.push((d as i64, e as i64));
            }
        }
    }
    pairs.sort_unstable();
    WallSolutions { target, pairs, degenerate: false }
}

/// Positive divisors of `n > 0`.
fn divisors(n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut k = 1u128;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            if k * k != n {
                out.push(n / k);
            }
        }
        k += 1;
    }
    out
}
