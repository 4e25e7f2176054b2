//! Polarized K3 models and their algebraic Mukai lattice `H⁰ ⊕ Pic ⊕ H⁴`.
//!
//! A Mukai vector `(r, c, s)` pairs with `(r', c', s')` as `c·c' − r·s' − r'·s`,
//! and `χ(E, F) = −(v(E), v(F))`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{parse_class, IntLattice, LatticeJson, LatticeVector, VectorJson};
use crate::matrix::IntMatrix;

/// A Mukai vector `(rank, c₁, s)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MukaiVector {
    pub r: BigInt,
    pub c1: LatticeVector,
    pub s: BigInt,
}

impl MukaiVector {
    pub fn new(r: BigInt, c1: LatticeVector, s: BigInt) -> Self {
        MukaiVector { r, c1, s }
    }

    pub fn from_i64(r: i64, c1: &[i64], s: i64) -> Self {
        MukaiVector { r: r.into(), c1: LatticeVector::from_i64(c1), s: s.into() }
    }

    /// Coordinates in the basis `(H⁰ unit, Picard basis, point class)`.
    pub fn coords(&self) -> Vec<BigInt> {
        let mut v = Vec::with_capacity(self.c1.len() + 2);
        v.push(self.r.clone());
        v.extend_from_slice(self.c1.coords());
        v.push(self.s.clone());
        v
    }

    pub fn from_coords(coords: &[BigInt]) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::RankMismatch { expected: 2, actual: coords.len() });
        }
        let n = coords.len();
        Ok(MukaiVector {
            r: coords[0].clone(),
            c1: LatticeVector::new(coords[1..n - 1].to_vec()),
            s: coords[n - 1].clone(),
        })
    }

    pub fn neg(&self) -> Self {
        MukaiVector { r: -&self.r, c1: -&self.c1, s: -&self.s }
    }

    pub fn add(&self, other: &Self) -> Self {
        MukaiVector { r: &self.r + &other.r, c1: &self.c1 + &other.c1, s: &self.s + &other.s }
    }
}

/// JSON form `{"r": 2, "c1": {"D": -1, "E": -1}, "s": 3}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MukaiVectorJson {
    pub r: i64,
    pub c1: VectorJson,
    pub s: i64,
}

/// A K3 surface reduced to its numerical data: an even Picard lattice, a
/// polarization, and any spherical classes registered by name.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct K3Model {
    name: String,
    picard: IntLattice,
    polarization: LatticeVector,
    spherical: BTreeMap<String, MukaiVector>,
}

impl K3Model {
    pub fn new(name: impl Into<String>, picard: IntLattice, polarization: LatticeVector) -> Result<Self> {
        if let Some(i) = (0..picard.rank()).find(|&i| picard.gram()[(i, i)].is_odd()) {
            return Err(Error::OddPicard(i));
        }
        let sq = picard.square(&polarization)?;
        if !sq.is_positive() {
            return Err(Error::NonPositivePolarization(sq.to_string()));
        }
        Ok(K3Model { name: name.into(), picard, polarization, spherical: BTreeMap::new() })
    }

    /// Registers a named spherical class, usable as `tw:<name>` in words.
    pub fn with_spherical(mut self, name: impl Into<String>, v: MukaiVector) -> Result<Self> {
        let sq = self.mukai_pairing(&v, &v)?;
        if sq != BigInt::from(-2) {
            return Err(Error::NotSpherical { vector: self.format_vector(&v), square: sq.to_string() });
        }
        self.spherical.insert(name.into(), v);
        Ok(self)
    }

    /// Branch K3 of a quartic double solid: Picard rank 1, `A² = 4`.
    pub fn quartic_branch() -> Self {
        let pic = IntLattice::from_i64(&[&[4]], &["A"]);
        K3Model::new("quartic_branch", pic, LatticeVector::from_i64(&[1])).expect("valid bundled model")
    }

    /// GM K3 surface: Picard rank 1, `B² = 10`, with `v(U) = (2, −B, 3)`.
    pub fn gm_surface() -> Self {
        let pic = IntLattice::from_i64(&[&[10]], &["B"]);
        K3Model::new("gm_surface", pic, LatticeVector::from_i64(&[1]))
            .and_then(|m| m.with_spherical("U", MukaiVector::from_i64(2, &[-1], 3)))
            .expect("valid bundled model")
    }

    /// Quartic containing a line: Picard `(4, 3; 3, 0)` in the basis `D, E`,
    /// with `v(U) = (2, −D−E, 3)`.
    pub fn quartic_with_line() -> Self {
        let pic = IntLattice::from_i64(&[&[4, 3], &[3, 0]], &["D", "E"]);
        K3Model::new("quartic_with_line", pic, LatticeVector::from_i64(&[1, 0]))
            .and_then(|m| m.with_spherical("U", MukaiVector::from_i64(2, &[-1, -1], 3)))
            .expect("valid bundled model")
    }

    pub const BUNDLED: [&'static str; 3] = ["quartic_branch", "gm_surface", "quartic_with_line"];

    pub fn bundled(name: &str) -> Result<Self> {
        match name {
            "quartic_branch" => Ok(Self::quartic_branch()),
            "gm_surface" => Ok(Self::gm_surface()),
            "quartic_with_line" => Ok(Self::quartic_with_line()),
            _ => Err(Error::UnknownModel(name.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn picard(&self) -> &IntLattice {
        &self.picard
    }

    pub fn polarization(&self) -> &LatticeVector {
        &self.polarization
    }

    pub fn picard_rank(&self) -> usize {
        self.picard.rank()
    }

    pub fn spherical_class(&self, name: &str) -> Option<&MukaiVector> {
        self.spherical.get(name)
    }

    pub fn spherical_classes(&self) -> &BTreeMap<String, MukaiVector> {
        &self.spherical
    }

    pub fn check_vector(&self, v: &MukaiVector) -> Result<()> {
        self.picard.check_vector(&v.c1)
    }

    /// `c·c' − r·s' − r'·s`.
    pub fn mukai_pairing(&self, v: &MukaiVector, w: &MukaiVector) -> Result<BigInt> {
        let cc = self.picard.pairing(&v.c1, &w.c1)?;
        Ok(cc - &v.r * &w.s - &w.r * &v.s)
    }

    pub fn mukai_square(&self, v: &MukaiVector) -> Result<BigInt> {
        self.mukai_pairing(v, v)
    }

    /// Mukai pairings of a list of vectors.
    pub fn gram_matrix(&self, vs: &[MukaiVector]) -> Result<IntMatrix> {
        let mut g = IntMatrix::zeros(vs.len(), vs.len());
        for (i, v) in vs.iter().enumerate() {
            for (j, w) in vs.iter().enumerate() {
                g[(i, j)] = self.mukai_pairing(v, w)?;
            }
        }
        Ok(g)
    }

    /// `χ(v, w) = −(v, w)`.
    pub fn euler_characteristic(&self, v: &MukaiVector, w: &MukaiVector) -> Result<BigInt> {
        Ok(-self.mukai_pairing(v, w)?)
    }

    /// `v(O(c)) = (1, c, c²/2 + 1)`.
    pub fn line_bundle_vector(&self, c1: &LatticeVector) -> Result<MukaiVector> {
        let sq = self.picard.square(c1)?;
        if sq.is_odd() {
            return Err(Error::OddSquare(sq.to_string()));
        }
        Ok(MukaiVector { r: BigInt::one(), c1: c1.clone(), s: sq / 2 + 1 })
    }

    /// `v(O) = (1, 0, 1)`.
    pub fn structure_sheaf(&self) -> MukaiVector {
        MukaiVector { r: BigInt::one(), c1: LatticeVector::zero(self.picard_rank()), s: BigInt::one() }
    }

    /// `v(O_x) = (0, 0, 1)`.
    pub fn point_class(&self) -> MukaiVector {
        MukaiVector { r: BigInt::zero(), c1: LatticeVector::zero(self.picard_rank()), s: BigInt::one() }
    }

    /// `μ_A(v) = A·c₁ / (A²·r)`.
    pub fn slope(&self, a: &LatticeVector, v: &MukaiVector) -> Result<BigRational> {
        if v.r.is_zero() {
            return Err(Error::SlopeUndefined("rank is zero"));
        }
        let a2 = self.picard.square(a)?;
        if a2.is_zero() {
            return Err(Error::SlopeUndefined("polarization class has square zero"));
        }
        let ac = self.picard.pairing(a, &v.c1)?;
        Ok(BigRational::new(ac, a2 * &v.r))
    }

    /// Rank `2 + ρ` lattice in the basis `(r, Picard basis, s)`.
    pub fn algebraic_mukai_lattice(&self) -> IntLattice {
        let rho = self.picard_rank();
        let n = rho + 2;
        let mut g = IntMatrix::zeros(n, n);
        g[(0, n - 1)] = BigInt::from(-1);
        g[(n - 1, 0)] = BigInt::from(-1);
        for i in 0..rho {
            for j in 0..rho {
                g[(i + 1, j + 1)] = self.picard.gram()[(i, j)].clone();
            }
        }
        let mut labels = vec!["r".to_string()];
        labels.extend(self.picard.labels().iter().cloned());
        labels.push("s".to_string());
        IntLattice::with_labels(g, labels).expect("mukai gram is symmetric")
    }

    /// `(r, class, s)`, e.g. `(-3, 3D-E, -3)`.
    pub fn format_vector(&self, v: &MukaiVector) -> String {
        format!("({}, {}, {})", v.r, self.picard.format(&v.c1), v.s)
    }

    /// Accepts `O`, `O(<class>)`, a registered spherical name such as `U`,
    /// a tuple `(r, <class>, s)`, a full coordinate tuple `(r, c₁…, s)`, or
    /// the JSON form.
    pub fn parse_vector(&self, text: &str) -> Result<MukaiVector> {
        let t = text.trim();
        let err = |reason: &str| Error::Parse { input: text.to_string(), reason: reason.to_string() };
        if t.starts_with('{') {
            let j: MukaiVectorJson = serde_json::from_str(t).map_err(|e| err(&e.to_string()))?;
            return self.vector_from_json(&j);
        }
        if t == "O" {
            return Ok(self.structure_sheaf());
        }
        if let Some(v) = self.spherical.get(t) {
            return Ok(v.clone());
        }
        if let Some(inner) = t.strip_prefix("O(").and_then(|s| s.strip_suffix(')')) {
            let c = parse_class(inner, self.picard.labels())?;
            return self.line_bundle_vector(&c);
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| err("expected `(r, c1, s)`"))?;
        let parts = split_top_level(inner);
        let int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| err(&format!("`{}` is not an integer", s.trim())));
        let rho = self.picard_rank();
        if parts.len() == rho + 2 && parts.iter().all(|p| p.trim().parse::<BigInt>().is_ok()) {
            let coords = parts.iter().map(|p| int(p)).collect::<Result<Vec<_>>>()?;
            return MukaiVector::from_coords(&coords);
        }
        if parts.len() != 3 {
            return Err(err(&format!("expected 3 or {} components", rho + 2)));
        }
        let c1 = parse_class(parts[1], self.picard.labels())?;
        Ok(MukaiVector { r: int(parts[0])?, c1, s: int(parts[2])? })
    }

    pub fn vector_from_json(&self, j: &MukaiVectorJson) -> Result<MukaiVector> {
        Ok(MukaiVector { r: j.r.into(), c1: j.c1.resolve(self.picard.labels())?, s: j.s.into() })
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl fmt::Display for K3Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (Picard {})", self.name, self.picard.gram())
    }
}

/// JSON model: `{"name": ..., "picard": <lattice>, "polarization": <vector>,
/// "spherical": {"U": <mukai vector>}}`; `spherical` is optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3ModelJson {
    pub name: String,
    pub picard: LatticeJson,
    pub polarization: VectorJson,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub spherical: BTreeMap<String, MukaiVectorJson>,
}

impl K3ModelJson {
    pub fn to_model(&self) -> Result<K3Model> {
        let picard = self.picard.to_lattice()?;
        let pol = self.polarization.resolve(picard.labels())?;
        let mut model = K3Model::new(self.name.clone(), picard, pol)?;
        for (name, v) in &self.spherical {
            let v = model.vector_from_json(v)?;
            model = model.with_spherical(name.clone(), v)?;
        }
        Ok(model)
    }
}
