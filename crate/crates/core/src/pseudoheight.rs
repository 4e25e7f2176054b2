//! Pseudoheight of an exceptional collection from its Ext-degree data.
//!
//! For objects `E₁,…,Eₙ` the pseudoheight is the minimum over increasing
//! chains `a₀ < a₁ < ⋯ < a_p` of
//! `e(a₀,a₁) + ⋯ + e(a_{p−1},a_p) + e_S(a_p,a₀) − p`,
//! where `e` is the minimal nonvanishing Ext degree and `e_S` the same
//! degree measured against the inverse Serre functor.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer or `+∞`. Infinity absorbs addition and is larger than every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    Finite(i64),
    Infinite,
}

impl Degree {
    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(v) => Some(v),
            Degree::Infinite => None,
        }
    }

    /// Adds an integer offset; infinity stays infinite.
    pub fn offset(self, k: i64) -> Degree {
        match self {
            Degree::Finite(v) => Degree::Finite(v + k),
            Degree::Infinite => Degree::Infinite,
        }
    }
}

impl From<i64> for Degree {
    fn from(v: i64) -> Self {
        Degree::Finite(v)
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::Infinite,
        }
    }
}

impl PartialEq<i64> for Degree {
    fn eq(&self, other: &i64) -> bool {
        *self == Degree::Finite(*other)
    }
}

impl PartialOrd<i64> for Degree {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Degree::Finite(*other)))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(v) => write!(f, "{v}"),
            Degree::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(v) => s.serialize_i64(*v),
            Degree::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Degree::Finite(v)),
            Raw::Text(t) if matches!(t.as_str(), "inf" | "+inf" | "∞" | "+∞") => Ok(Degree::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("expected an integer or \"inf\", got {t:?}"))),
        }
    }
}

/// Ext-degree data of `n` objects. Indices are 0-based here and 1-based in JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtDegreeTable {
    n: usize,
    rel_dim: u32,
    /// `plain[i][j] = e(Eᵢ, Eⱼ)`, meaningful for `i < j`.
    plain: Vec<Vec<Degree>>,
    /// `serre[j][i] = e(Eⱼ, S⁻¹Eᵢ)`, meaningful for `i ≤ j`.
    serre: Vec<Vec<Degree>>,
}

impl ExtDegreeTable {
    /// A table with every entry `+∞`.
    pub fn new(n: usize, rel_dim: u32) -> Self {
        ExtDegreeTable {
            n,
            rel_dim,
            plain: vec![vec![Degree::Infinite; n]; n],
            serre: vec![vec![Degree::Infinite; n]; n],
        }
    }

    /// Every `e` equal to `plain` and every `e_S` equal to `serre`.
    pub fn uniform(n: usize, rel_dim: u32, plain: Degree, serre: Degree) -> Self {
        let mut t = Self::new(n, rel_dim);
        for j in 0..n {
            for i in 0..j {
                t.plain[i][j] = plain;
            }
            for i in 0..=j {
                t.serre[j][i] = serre;
            }
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rel_dim(&self) -> u32 {
        self.rel_dim
    }

    /// `e(Eᵢ, Eⱼ)` for `i < j`.
    pub fn plain(&self, i: usize, j: usize) -> Degree {
        assert!(i < j && j < self.n, "plain entry ({i}, {j}) out of range");
        self.plain[i][j]
    }

    /// `e(Eⱼ, S⁻¹Eᵢ)` for `i ≤ j`.
    pub fn serre(&self, j: usize, i: usize) -> Degree {
        assert!(i <= j && j < self.n, "serre entry ({j}, {i}) out of range");
        self.serre[j][i]
    }

    pub fn set_plain(&mut self, i: usize, j: usize, d: Degree) {
        assert!(i < j && j < self.n, "plain entry ({i}, {j}) out of range");
        self.plain[i][j] = d;
    }

    pub fn set_serre(&mut self, j: usize, i: usize, d: Degree) {
        assert!(i <= j && j < self.n, "serre entry ({j}, {i}) out of range");
        self.serre[j][i] = d;
    }

    /// Checks the bounds satisfied by a collection of sheaves:
    /// `e ≥ 0` and `e_S ≥ rel_dim`.
    pub fn validate_sheaf_mode(&self) -> Result<()> {
        for j in 0..self.n {
            for i in 0..j {
                if self.plain[i][j] < 0 {
                    return Err(Error::MalformedTable(format!(
                        "e_plain[{},{}] = {} is negative",
                        i + 1,
                        j + 1,
                        self.plain[i][j]
                    )));
                }
            }
            for i in 0..=j {
                if self.serre[j][i] < i64::from(self.rel_dim) {
                    return Err(Error::MalformedTable(format!(
                        "e_serre[{},{}] = {} is below rel_dim {}",
                        j + 1,
                        i + 1,
                        self.serre[j][i],
                        self.rel_dim
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: ExtDegreeTableJson =
            serde_json::from_str(text).map_err(|e| Error::MalformedTable(e.to_string()))?;
        raw.to_table()
    }

    pub fn to_json(&self) -> ExtDegreeTableJson {
        let mut e_plain = BTreeMap::new();
        let mut e_serre = BTreeMap::new();
        for j in 0..self.n {
            for i in 0..j {
                e_plain.insert(format!("{},{}", i + 1, j + 1), self.plain[i][j]);
            }
            for i in 0..=j {
                e_serre.insert(format!("{},{}", j + 1, i + 1), self.serre[j][i]);
            }
        }
        ExtDegreeTableJson { n: self.n, rel_dim: self.rel_dim, e_plain, e_serre }
    }
}

/// `{"n":2, "rel_dim":3, "e_plain":{"1,2":0}, "e_serre":{"1,1":3,"2,2":3,"2,1":3}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtDegreeTableJson {
    pub n: usize,
    pub rel_dim: u32,
    pub e_plain: BTreeMap<String, Degree>,
    pub e_serre: BTreeMap<String, Degree>,
}

impl ExtDegreeTableJson {
    /// Every entry must be present exactly once; keys are 1-based `"i,j"`.
    pub fn to_table(&self) -> Result<ExtDegreeTable> {
        let mut t = ExtDegreeTable::new(self.n, self.rel_dim);
        let mut seen_plain = vec![vec![false; self.n]; self.n];
        for (key, &d) in &self.e_plain {
            let (i, j) = parse_key("e_plain", key, self.n)?;
            if i >= j {
                return Err(Error::MalformedTable(format!("e_plain key \"{key}\" needs i < j")));
            }
            t.plain[i][j] = d;
            seen_plain[i][j] = true;
        }
        let mut seen_serre = vec![vec![false; self.n]; self.n];
        for (key, &d) in &self.e_serre {
            let (j, i) = parse_key("e_serre", key, self.n)?;
            if i > j {
                return Err(Error::MalformedTable(format!("e_serre key \"{key}\" needs j ≥ i")));
            }
            t.serre[j][i] = d;
            seen_serre[j][i] = true;
        }
        for j in 0..self.n {
            if let Some(i) = (0..j).find(|&i| !seen_plain[i][j]) {
                return Err(Error::MalformedTable(format!("e_plain is missing \"{},{}\"", i + 1, j + 1)));
            }
            if let Some(i) = (0..=j).find(|&i| !seen_serre[j][i]) {
                return Err(Error::MalformedTable(format!("e_serre is missing \"{},{}\"", j + 1, i + 1)));
            }
        }
        Ok(t)
    }
}

fn parse_key(field: &str, key: &str, n: usize) -> Result<(usize, usize)> {
    let bad = || Error::MalformedTable(format!("{field} key \"{key}\" is not \"a,b\" with 1 ≤ a,b ≤ {n}"));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b == 0 || a > n || b > n {
        return Err(bad());
    }
    Ok((a - 1, b - 1))
}

/// Minimum over chains, by a shortest-path pass for each chain start.
pub fn pseudoheight(t: &ExtDegreeTable) -> Degree {
    let n = t.n;
    let mut best = Degree::Infinite;
    let mut dist = vec![Degree::Infinite; n];
    for a0 in 0..n {
        // dist[j]: least value of Σ (e − 1) over chains a0 → ⋯ → j
        dist[a0] = Degree::Finite(0);
        for j in a0 + 1..n {
            dist[j] = (a0..j).map(|i| dist[i] + t.plain[i][j].offset(-1)).min().unwrap_or(Degree::Infinite);
        }
        for (d, row) in dist[a0..].iter().zip(&t.serre[a0..]) {
            best = best.min(*d + row[a0]);
        }
    }
    best
}

/// What the pseudoheight says about restriction of Hochschild cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectednessVerdict {
    /// Restriction is an isomorphism in degrees `i ≤ iso_range_max`.
    pub iso_range_max: Degree,
    /// Restriction is injective in this degree.
    pub injection_at: Degree,
    /// `rel_dim ≥ n + 1`, which for sheaves forces an isomorphism on `HH⁰`.
    pub connected_by_criterion: bool,
}

pub fn connectedness_verdict(ph: Degree, rel_dim: u32, n: usize) -> ConnectednessVerdict {
    ConnectednessVerdict {
        iso_range_max: ph.offset(-2),
        injection_at: ph.offset(-1),
        connected_by_criterion: rel_dim as usize > n,
    }
}
