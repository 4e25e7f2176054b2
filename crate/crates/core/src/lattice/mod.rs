//! Integer lattices with symmetric bilinear forms.
//!
//! An [`IntLattice`] is a free abelian group of finite rank with an integer
//! Gram matrix and a name for each basis vector. Everything here is exact:
//! determinants use Bareiss elimination, signatures come from the sign pattern
//! of the characteristic polynomial, and sublattice operations go through the
//! Smith normal form.

mod json;
mod normal_form;
mod notation;
mod sublattice;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{ints, IntMatrix};

pub use json::{LatticeJson, VectorJson};
pub use normal_form::{hermite_normal_form, smith_normal_form, SmithForm};
pub use notation::{format_class, parse_class, parse_vector};
pub use sublattice::{integer_kernel, SublatticeSpan};

/// A coordinate vector with respect to the basis of some lattice.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector { coords: ints(coords) }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector { coords: vec![BigInt::zero(); rank] }
    }

    /// The `i`-th standard basis vector.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.coords[i] = BigInt::one();
        v
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LatticeVector { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    /// gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// The vector divided by its content; the zero vector is returned unchanged.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LatticeVector { coords: self.coords.iter().map(|c| c / &g).collect() }
    }

    /// True if the vector is nonzero and not a proper multiple of another lattice vector.
    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        LatticeVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect() }
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl From<Vec<BigInt>> for LatticeVector {
    fn from(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Counts of positive, negative and zero eigenvalue directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub null: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, null: usize) -> Self {
        Signature { positive, negative, null }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative + self.null
    }

    pub fn is_positive_definite(&self) -> bool {
        self.negative == 0 && self.null == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.null)
    }
}

/// A free abelian group of finite rank with a symmetric integer Gram matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntLattice {
    gram: IntMatrix,
    labels: Vec<String>,
}

impl IntLattice {
    /// Lattice with default labels `e1..en`.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        let labels = (1..=gram.rows()).map(|i| format!("e{i}")).collect();
        Self::with_labels(gram, labels)
    }

    pub fn with_labels(gram: IntMatrix, labels: Vec<String>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if let Some((i, j)) = gram.first_asymmetry() {
            return Err(Error::NotSymmetric(i, j));
        }
        if labels.len() != gram.rows() {
            return Err(Error::LabelCount { labels: labels.len(), rank: gram.rows() });
        }
        Ok(IntLattice { gram, labels })
    }

    /// Shorthand for tests and bundled models. Panics on invalid input.
    pub fn from_i64(gram: &[&[i64]], labels: &[&str]) -> Self {
        let gram = IntMatrix::from_i64(gram);
        let labels = if labels.is_empty() {
            (1..=gram.rows()).map(|i| format!("e{i}")).collect()
        } else {
            labels.iter().map(|s| s.to_string()).collect()
        };
        Self::with_labels(gram, labels).expect("invalid lattice literal")
    }

    /// The orthogonal sum of diagonal entries, e.g. `diagonal(&[2, 2])` for A₁⊕².
    pub fn diagonal(entries: &[i64]) -> Self {
        Self::new(IntMatrix::diagonal(&ints(entries))).expect("diagonal gram is symmetric")
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        LatticeVector::basis(self.rank(), i)
    }

    pub fn check_vector(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), actual: v.len() });
        }
        Ok(())
    }

    /// `uᵀ · gram · v`.
    pub fn pairing(&self, u: &LatticeVector, v: &LatticeVector) -> Result<BigInt> {
        self.check_vector(u)?;
        self.check_vector(v)?;
        let gv = self.gram.mul_vec(v.coords())?;
        Ok(u.coords().iter().zip(&gv).map(|(a, b)| a * b).sum())
    }

    pub fn square(&self, v: &LatticeVector) -> Result<BigInt> {
        self.pairing(v, v)
    }

    /// Signed determinant of the Gram matrix.
    pub fn determinant(&self) -> BigInt {
        self.gram.determinant().expect("gram is square")
    }

    /// Signed determinant, also called the discriminant.
    pub fn discriminant(&self) -> BigInt {
        self.determinant()
    }

    pub fn abs_discriminant(&self) -> BigInt {
        self.determinant().abs()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// True if every vector has even square.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// Inertia of the Gram matrix.
    ///
    /// The characteristic polynomial of a real symmetric matrix has only real
    /// roots, so Descartes' rule of signs counts the positive roots exactly.
    /// The multiplicity of the root 0 is the index of the lowest nonzero
    /// coefficient.
    pub fn signature(&self) -> Signature {
        let n = self.rank();
        let coeffs = self.gram.characteristic_polynomial().expect("gram is square");
        let null = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(n);
        let signs: Vec<bool> = coeffs[null..].iter().filter(|c| !c.is_zero()).map(Signed::is_positive).collect();
        let positive = signs.windows(2).filter(|w| w[0] != w[1]).count();
        Signature { positive, negative: n - positive - null, null }
    }

    /// The lattice with Gram `Bᵀ · gram · B`; the columns of `basis` are the
    /// new basis vectors in old coordinates.
    pub fn change_of_basis(&self, basis: &IntMatrix, labels: Option<Vec<String>>) -> Result<IntLattice> {
        if basis.rows() != self.rank() || basis.cols() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "basis matrix is {}x{}, lattice rank {}",
                basis.rows(),
                basis.cols(),
                self.rank()
            )));
        }
        let gram = &(&basis.transpose() * &self.gram) * basis;
        let labels = labels.unwrap_or_else(|| self.labels.clone());
        IntLattice::with_labels(gram, labels)
    }

    /// Primitive generators of the dual cone `{v : (v, g) ≥ 0 for both g}` of a
    /// rank 2 cone.
    ///
    /// The `i`-th output ray is the facet of the dual cone cut out by `gens[i]`:
    /// it pairs to zero with `gens[i]` and positively with the other generator.
    pub fn dual_cone_rank2(&self, gens: [&LatticeVector; 2]) -> Result<[LatticeVector; 2]> {
        if self.rank() != 2 {
            return Err(Error::WrongRank { expected: 2, actual: self.rank() });
        }
        for g in gens {
            self.check_vector(g)?;
        }
        let ray = |zero_on: &LatticeVector, positive_on: &LatticeVector| -> Result<LatticeVector> {
            let form = self.gram.mul_vec(zero_on.coords())?;
            let w = LatticeVector::new(vec![-form[1].clone(), form[0].clone()]).primitive();
            if w.is_zero() {
                return Err(Error::DependentGenerators);
            }
            let p = self.pairing(&w, positive_on)?;
            if p.is_zero() {
                return Err(Error::DependentGenerators);
            }
            Ok(if p.is_negative() { -&w } else { w })
        };
        Ok([ray(gens[0], gens[1])?, ray(gens[1], gens[0])?])
    }

    /// Parses a class expression such as `3D-E` against this lattice's labels.
    pub fn class(&self, expr: &str) -> Result<LatticeVector> {
        parse_class(expr, &self.labels)
    }

    /// Formats a vector as a class expression such as `3D-E`.
    pub fn format(&self, v: &LatticeVector) -> String {
        format_class(v, &self.labels)
    }
}

impl fmt::Debug for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntLattice[{}] {}", self.labels.join(","), self.gram)
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gram)
    }
}
