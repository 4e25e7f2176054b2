//! Cohomological actions of autoequivalences on the algebraic Mukai lattice.
//!
//! An action is recorded as an integer matrix on the coordinates
//! `(r, c₁…, s)` plus a single sign for the transcendental part. Spherical
//! twists act by reflections, tensoring with a line bundle multiplies by its
//! Chern character, and the shift `[1]` acts by `−1` everywhere.
//!
//! Composition follows functional notation: `f.compose(&g)` is `f ∘ g`, so
//! `g` is applied first. Words are applied right to left for the same reason.

use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, parse_class, LatticeVector, SublatticeSpan};
use crate::matrix::IntMatrix;
use crate::mukai::{K3Model, MukaiVector};

/// Action on the transcendental lattice, which is always `±1` here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs { Sign::Plus } else { Sign::Minus }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// An isometry of the algebraic Mukai lattice of a model, with a sign on the
/// transcendental part. Construction checks `Mᵀ·G·M = G` and `|det M| = 1`.
#[derive(Clone, Debug)]
pub struct MukaiIsometry {
    model: Arc<K3Model>,
    matrix: IntMatrix,
    sign: Sign,
}

impl PartialEq for MukaiIsometry {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.sign == other.sign && same_model(&self.model, &other.model)
    }
}

impl Eq for MukaiIsometry {}

fn same_model(a: &Arc<K3Model>, b: &Arc<K3Model>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl MukaiIsometry {
    pub fn from_matrix(model: Arc<K3Model>, matrix: IntMatrix, sign: Sign) -> Result<Self> {
        let lattice = model.algebraic_mukai_lattice();
        let g = lattice.gram();
        if matrix.rows() != g.rows() || matrix.cols() != g.cols() {
            return Err(Error::DimensionMismatch(format!(
                "isometry matrix is {}x{}, Mukai lattice has rank {}",
                matrix.rows(),
                matrix.cols(),
                g.rows()
            )));
        }
        if &(&matrix.transpose() * g) * &matrix != *g {
            return Err(Error::NotIsometry);
        }
        let det = matrix.determinant()?;
        if det != BigInt::from(1) && det != BigInt::from(-1) {
            return Err(Error::NotUnimodular);
        }
        Ok(MukaiIsometry { model, matrix, sign })
    }

    pub fn identity(model: Arc<K3Model>) -> Self {
        let n = model.picard_rank() + 2;
        MukaiIsometry { model, matrix: IntMatrix::identity(n), sign: Sign::Plus }
    }

    /// The reflection `w ↦ w + v·(v, w)` in a class with `(v, v) = −2`.
    pub fn spherical_twist(model: Arc<K3Model>, v: &MukaiVector) -> Result<Self> {
        model.check_vector(v)?;
        let sq = model.mukai_square(v)?;
        if sq != BigInt::from(-2) {
            return Err(Error::NotSpherical { vector: model.format_vector(v), square: sq.to_string() });
        }
        let g = model.algebraic_mukai_lattice().gram().clone();
        // I + v·vᵀ·G
        let col = IntMatrix::from_columns(&[v.coords()])?;
        let outer = &(&col * &col.transpose()) * &g;
        let reflection = IntMatrix::identity(g.rows()).sub(&outer.scale(&BigInt::from(-1)))?;
        Self::from_matrix(model, reflection, Sign::Plus)
    }

    /// Multiplication by `ch(O(c))`: `(r, c, s) ↦ (r, c + r·c₁, s + c·c₁ + r·c₁²/2)`.
    pub fn tensor_line_bundle(model: Arc<K3Model>, c1: &LatticeVector) -> Result<Self> {
        let pic = model.picard();
        let half_sq = model.line_bundle_vector(c1)?.s - 1;
        let n = model.picard_rank() + 2;
        let images = (0..n)
            .map(|i| {
                let e = MukaiVector::from_coords(&LatticeVector::basis(n, i).into_coords())?;
                let c = &e.c1 + &c1.scale(&e.r);
                let s = &e.s + pic.pairing(&e.c1, c1)? + &e.r * &half_sq;
                Ok(MukaiVector { r: e.r.clone(), c1: c, s }.coords())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrix(model, IntMatrix::from_columns(&images)?, Sign::Plus)
    }

    /// The shift `[1]` (equivalently `[−1]`): `−1` on everything.
    pub fn shift(model: Arc<K3Model>) -> Self {
        let n = model.picard_rank() + 2;
        let matrix = IntMatrix::identity(n).scale(&BigInt::from(-1));
        MukaiIsometry { model, matrix, sign: Sign::Minus }
    }

    pub fn model(&self) -> &Arc<K3Model> {
        &self.model
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn transcendental_sign(&self) -> Sign {
        self.sign
    }

    fn check_model(&self, other: &Self) -> Result<()> {
        if !same_model(&self.model, &other.model) {
            return Err(Error::ModelMismatch(self.model.name().into(), other.model.name().into()));
        }
        Ok(())
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_model(other)?;
        Ok(MukaiIsometry {
            model: self.model.clone(),
            matrix: &self.matrix * &other.matrix,
            sign: self.sign * other.sign,
        })
    }

    pub fn inverse(&self) -> Self {
        let matrix = self.matrix.inverse().expect("isometries are unimodular");
        MukaiIsometry { model: self.model.clone(), matrix, sign: self.sign }
    }

    /// `by⁻¹ ∘ self ∘ by`.
    pub fn conjugate(&self, by: &Self) -> Result<Self> {
        by.inverse().compose(&self.compose(by)?)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(self.model.clone()), |acc, _| acc.compose(self).expect("same model"))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Matrix-level check: `M² = I`. Signs always square to `+1`.
    pub fn is_involution(&self) -> bool {
        (&self.matrix * &self.matrix).is_identity()
    }

    pub fn apply(&self, v: &MukaiVector) -> Result<MukaiVector> {
        self.model.check_vector(v)?;
        MukaiVector::from_coords(&self.matrix.mul_vec(&v.coords())?)
    }

    fn eigenlattice(&self, eigenvalue: i64) -> Result<SublatticeSpan> {
        if !self.is_involution() {
            return Err(Error::NotInvolution);
        }
        let n = self.matrix.rows();
        let shifted = self.matrix.sub(&IntMatrix::identity(n).scale(&BigInt::from(eigenvalue)))?;
        SublatticeSpan::new(self.model.algebraic_mukai_lattice(), integer_kernel(&shifted))
    }

    /// Primitive sublattice fixed by an involution.
    pub fn invariant_sublattice(&self) -> Result<SublatticeSpan> {
        self.eigenlattice(1)
    }

    /// Primitive sublattice on which an involution acts by `−1`.
    pub fn anti_invariant_sublattice(&self) -> Result<SublatticeSpan> {
        self.eigenlattice(-1)
    }
}

impl fmt::Display for MukaiIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [transcendental {}]", self.matrix, self.sign)
    }
}

/// A single letter of an autoequivalence word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Shift,
    Twist(MukaiVector),
    Tensor(LatticeVector),
}

impl Generator {
    /// Parses `shift`, `tw:<mukai vector>` (`tw:O`, `tw:U`, `tw:O(-D)`,
    /// `tw:(2,-D-E,3)`) or `lb:<class>`.
    pub fn parse(model: &K3Model, token: &str) -> Result<Self> {
        if token == "shift" {
            return Ok(Generator::Shift);
        }
        if let Some(rest) = token.strip_prefix("tw:") {
            return Ok(Generator::Twist(model.parse_vector(rest)?));
        }
        if let Some(rest) = token.strip_prefix("lb:") {
            return Ok(Generator::Tensor(parse_class(rest, model.picard().labels())?));
        }
        Err(Error::UnknownToken(token.to_string()))
    }

    pub fn action(&self, model: Arc<K3Model>) -> Result<MukaiIsometry> {
        match self {
            Generator::Shift => Ok(MukaiIsometry::shift(model)),
            Generator::Twist(v) => MukaiIsometry::spherical_twist(model, v),
            Generator::Tensor(c) => MukaiIsometry::tensor_line_bundle(model, c),
        }
    }
}

/// Splits a word on whitespace outside parentheses.
pub fn tokenize_word(word: &str) -> Vec<&str> {
    let mut tokens = Vec::new();
    let mut depth = 0i32;
    let mut start: Option<usize> = None;
    for (i, c) in word.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if let Some(s) = start.take() {
                tokens.push(&word[s..i]);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(&word[s..]);
    }
    tokens
}

/// Composes the listed generators right to left: `[a, b, c]` is `a ∘ b ∘ c`.
pub fn build_named<S: AsRef<str>>(model: Arc<K3Model>, tokens: &[S]) -> Result<MukaiIsometry> {
    let mut acc = MukaiIsometry::identity(model.clone());
    for t in tokens {
        let g = Generator::parse(&model, t.as_ref())?.action(model.clone())?;
        acc = acc.compose(&g)?;
    }
    Ok(acc)
}

/// Parses and composes a whitespace-separated word.
pub fn build_word(model: Arc<K3Model>, word: &str) -> Result<MukaiIsometry> {
    build_named(model, &tokenize_word(word))
}
