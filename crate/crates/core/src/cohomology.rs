//! Cohomology of cyclic groups `Z/m` acting trivially on abelian coefficient groups.
//!
//! For trivial action the standard periodic resolution gives
//! `H⁰ = A`, `H^odd = A[m]` and `H^even>0 = A/mA`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_k`, optionally plus one copy of the units of an
/// algebraically closed field of characteristic zero (divisible, with
/// `m`-torsion `Z/m` for every `m`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianGroupModel {
    free_rank: u32,
    torsion: Vec<u64>,
    divisible_units: bool,
}

impl AbelianGroupModel {
    /// `torsion` must already be in invariant-factor form: each entry at
    /// least 2, each dividing the next.
    pub fn new(free_rank: u32, torsion: Vec<u64>, divisible_units: bool) -> Result<Self> {
        for (i, &d) in torsion.iter().enumerate() {
            if d < 2 {
                return Err(Error::BadInvariantFactor(d));
            }
            if i > 0 && d % torsion[i - 1] != 0 {
                return Err(Error::BadInvariantFactor(d));
            }
        }
        Ok(AbelianGroupModel { free_rank, torsion, divisible_units })
    }

    /// Canonical model of `Z^r ⊕ ⨁ Z/dᵢ` for arbitrary cyclic orders; orders 0
    /// count as free summands and orders 1 vanish.
    pub fn from_cyclic(free_rank: u32, orders: &[u64], divisible_units: bool) -> Self {
        let free_rank = free_rank + orders.iter().filter(|&&d| d == 0).count() as u32;
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &d in orders.iter().filter(|&&d| d >= 2) {
            for (p, pk) in prime_power_factors(d) {
                by_prime.entry(p).or_default().push(pk);
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            // largest powers go into the last (largest) invariant factor
            for (k, pk) in powers.iter().enumerate() {
                factors[len - 1 - k] *= pk;
            }
        }
        AbelianGroupModel { free_rank, torsion: factors, divisible_units }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn integers() -> Self {
        AbelianGroupModel { free_rank: 1, ..Self::default() }
    }

    pub fn free(rank: u32) -> Self {
        AbelianGroupModel { free_rank: rank, ..Self::default() }
    }

    pub fn cyclic(d: u64) -> Self {
        Self::from_cyclic(0, &[d], false)
    }

    /// The multiplicative group of an algebraically closed field of characteristic 0.
    pub fn field_units() -> Self {
        AbelianGroupModel { divisible_units: true, ..Self::default() }
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn divisible_units(&self) -> bool {
        self.divisible_units
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty() && !self.divisible_units
    }

    /// Order of a finite group, `None` if infinite.
    pub fn order(&self) -> Option<u64> {
        if self.free_rank > 0 || self.divisible_units {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    /// Direct sum. Only one copy of the field units is representable.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.divisible_units && other.divisible_units {
            return Err(Error::Parse {
                input: format!("{self} + {other}"),
                reason: "at most one copy of the field units is modeled".into(),
            });
        }
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        Ok(Self::from_cyclic(
            self.free_rank + other.free_rank,
            &orders,
            self.divisible_units || other.divisible_units,
        ))
    }

    /// The `m`-torsion subgroup `A[m]`.
    pub fn m_torsion(&self, m: i64) -> Result<Self> {
        let m = check_modulus(m, 1)?;
        let mut orders: Vec<u64> = self.torsion.iter().map(|&d| d.gcd(&m)).collect();
        if self.divisible_units {
            orders.push(m);
        }
        Ok(Self::from_cyclic(0, &orders, false))
    }

    /// The quotient `A/mA`.
    pub fn mod_m_quotient(&self, m: i64) -> Result<Self> {
        let m = check_modulus(m, 1)?;
        let mut orders: Vec<u64> = self.torsion.iter().map(|&d| d.gcd(&m)).collect();
        orders.extend(std::iter::repeat_n(m, self.free_rank as usize));
        Ok(Self::from_cyclic(0, &orders, false))
    }
}

fn check_modulus(m: i64, min: i64) -> Result<u64> {
    if m < min {
        return Err(Error::BadModulus { min, got: m });
    }
    Ok(m as u64)
}

fn prime_power_factors(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pk = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pk *= p;
            }
            out.push((p, pk));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// `Hⁿ(Z/m, A)` for the trivial action.
pub fn cyclic_cohomology(m: i64, n: u32, coeff: &AbelianGroupModel) -> Result<AbelianGroupModel> {
    check_modulus(m, 2)?;
    match n {
        0 => Ok(coeff.clone()),
        n if n % 2 == 1 => coeff.m_torsion(m),
        _ => coeff.mod_m_quotient(m),
    }
}

impl fmt::Display for AbelianGroupModel {
    /// Invariant-factor form, e.g. `Cx + Z^2 + Z/2 + Z/6`; the trivial group is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.divisible_units {
            parts.push("Cx".to_string());
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for AbelianGroupModel {
    type Err = Error;

    /// Sums of `Cx` (also `C^x`, `C×`, `k×`), `Z`, `Z^r`, `Z/d` and `0`,
    /// separated by `+`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: String| Error::Parse { input: s.to_string(), reason };
        let mut acc = AbelianGroupModel::trivial();
        for raw in s.split('+') {
            let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            let piece = match term.as_str() {
                "" => return Err(err("empty summand".into())),
                "0" => AbelianGroupModel::trivial(),
                "Cx" | "C^x" | "C×" | "C^×" | "kx" | "k×" | "k^×" => AbelianGroupModel::field_units(),
                "Z" => AbelianGroupModel::integers(),
                t => {
                    if let Some(r) = t.strip_prefix("Z^") {
                        AbelianGroupModel::free(r.parse().map_err(|_| err(format!("bad rank `{r}`")))?)
                    } else if let Some(d) = t.strip_prefix("Z/") {
                        let d: u64 = d.parse().map_err(|_| err(format!("bad order `{d}`")))?;
                        if d == 0 {
                            return Err(err("Z/0 is not allowed; write Z".into()));
                        }
                        AbelianGroupModel::cyclic(d)
                    } else {
                        return Err(err(format!("unknown summand `{t}`")));
                    }
                }
            };
            acc = acc.direct_sum(&piece)?;
        }
        Ok(acc)
    }
}
